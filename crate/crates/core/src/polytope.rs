//! V- and H-representations of the b-parking-function polytope, its edge
//! graph and tangent cones.

use std::collections::HashMap;
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::Result;
use crate::linalg::Rational;
use crate::parking::{BVector, Int, Point, VertexDescriptor};
use crate::subset::Subset;

/// A facet-defining inequality.
///
/// `Lower(i)` is `x_i >= 1`. `Upper(I)` is `sum_{i in I} x_i <= rhs(|I|)`,
/// the sum of the `|I|` largest partial sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetDescriptor {
    Lower(usize),
    Upper(Subset),
}

impl FacetDescriptor {
    /// Right-hand side; 1 for lower facets.
    pub fn rhs(&self, b: &BVector) -> Int {
        match self {
            FacetDescriptor::Lower(_) => Int::one(),
            FacetDescriptor::Upper(set) => upper_rhs(b, set.len()),
        }
    }

    /// Nonnegative exactly when `x` satisfies the inequality; zero when tight.
    pub fn slack(&self, b: &BVector, x: &[Int]) -> Int {
        match self {
            FacetDescriptor::Lower(i) => &x[*i] - Int::one(),
            FacetDescriptor::Upper(set) => {
                upper_rhs(b, set.len()) - set.iter().map(|i| &x[i]).sum::<Int>()
            }
        }
    }

    pub fn slack_rational(&self, b: &BVector, x: &[Rational]) -> Rational {
        match self {
            FacetDescriptor::Lower(i) => &x[*i] - Rational::one(),
            FacetDescriptor::Upper(set) => {
                Rational::from_integer(upper_rhs(b, set.len()))
                    - set.iter().map(|i| &x[i]).sum::<Rational>()
            }
        }
    }

    /// Normal vector of the supporting hyperplane (unoriented).
    pub fn normal(&self, n: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); n];
        match self {
            FacetDescriptor::Lower(i) => v[*i] = Int::one(),
            FacetDescriptor::Upper(set) => {
                for i in set.iter() {
                    v[i] = Int::one();
                }
            }
        }
        v
    }

    fn sort_key(&self) -> (u8, Subset) {
        match self {
            FacetDescriptor::Lower(i) => (0, Subset::singleton(*i)),
            FacetDescriptor::Upper(set) => (1, *set),
        }
    }
}

impl Ord for FacetDescriptor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for FacetDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FacetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetDescriptor::Lower(i) => write!(f, "L{}", i + 1),
            FacetDescriptor::Upper(set) => write!(f, "U{set}"),
        }
    }
}

/// `S_n + S_{n-1} + .. + S_{n-m+1}`.
pub fn upper_rhs(b: &BVector, m: usize) -> Int {
    let n = b.n();
    (n - m + 1..=n).map(|i| b.partial_sum(i)).sum()
}

/// Cardinalities carrying an upper facet. `|I| = n - 1` is redundant when
/// `b_1 = 1`.
pub fn upper_facet_sizes(b: &BVector) -> Vec<usize> {
    let n = b.n();
    (1..=n)
        .filter(|&m| !(b.is_classical() && m + 1 == n))
        .collect()
}

/// The minimal inequality description: lower facets by index, then upper
/// facets by `(|I|, lexicographic I)`.
pub fn facets(b: &BVector) -> Vec<FacetDescriptor> {
    let n = b.n();
    let mut out: Vec<FacetDescriptor> = (0..n).map(FacetDescriptor::Lower).collect();
    for m in upper_facet_sizes(b) {
        out.extend(Subset::k_subsets(n, m).into_iter().map(FacetDescriptor::Upper));
    }
    out
}

pub fn facet_count(b: &BVector) -> Int {
    let n = b.n();
    let uppers: Int = upper_facet_sizes(b)
        .into_iter()
        .map(|m| binomial(Int::from(n), Int::from(m)))
        .sum();
    uppers + Int::from(n)
}

/// Number of vertices, `sum_k n!/k!` over the admissible `k`.
pub fn vertex_count(b: &BVector) -> Int {
    let n = b.n();
    (b.min_ones()..=n)
        .map(|k| {
            let kk = Int::from(k);
            binomial(Int::from(n), kk) * factorial(n - k)
        })
        .sum()
}

pub fn factorial(m: usize) -> Int {
    (1..=m).map(Int::from).product()
}

/// All vertices `pi(y_k)`, sorted lexicographically by coordinates.
pub fn vertices(b: &BVector) -> Vec<VertexDescriptor> {
    let n = b.n();
    let mut out = Vec::new();
    for k in b.min_ones()..=n {
        arrangements(n, n - k, &mut Vec::new(), &mut vec![false; n], &mut |tail| {
            let mut perm: Vec<usize> = (0..n).filter(|p| !tail.contains(p)).collect();
            perm.extend_from_slice(tail);
            out.push(VertexDescriptor::new(b, k, &perm).expect("valid permutation"));
        });
    }
    out.sort_by_cached_key(|v| v.point(b));
    out
}

/// Checked variant of [`vertices`] for callers that want the budget guard.
pub fn vertices_within(b: &BVector, budget: &Budget) -> Result<Vec<VertexDescriptor>> {
    budget.check_vertices("vertex enumeration", &vertex_count(b))?;
    Ok(vertices(b))
}

fn arrangements(
    n: usize,
    len: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == len {
        emit(current);
        return;
    }
    for p in 0..n {
        if !used[p] {
            used[p] = true;
            current.push(p);
            arrangements(n, len, current, used, emit);
            current.pop();
            used[p] = false;
        }
    }
}

/// Exact membership test for a rational point.
///
/// Upper right-hand sides depend only on `|I|`, so it is enough to bound
/// the sum of the `m` largest coordinates for each `m`.
pub fn contains(b: &BVector, x: &[Rational]) -> Result<bool> {
    b.check_len(x.len())?;
    if x.iter().any(|c| *c < Rational::one()) {
        return Ok(false);
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, c| c.cmp(a));
    let mut acc = Rational::zero();
    for (m, c) in sorted.iter().enumerate() {
        acc += c;
        if acc > Rational::from_integer(upper_rhs(b, m + 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn contains_point(b: &BVector, x: &Point) -> Result<bool> {
    let q: Vec<Rational> = x.0.iter().cloned().map(Rational::from_integer).collect();
    contains(b, &q)
}

/// The `n` facets through a vertex, sorted in facet order.
pub fn facets_containing_vertex(
    b: &BVector,
    v: &VertexDescriptor,
) -> Result<Vec<FacetDescriptor>> {
    v.check(b)?;
    let n = b.n();
    let perm = v.perm();
    let k = v.k();
    let upper = |from: usize| {
        // U_j with I_j = {j, .., n}, carried along by the permutation
        FacetDescriptor::Upper(Subset::from_indices(perm[from - 1..].iter().copied()))
    };
    let mut out = Vec::with_capacity(n);
    if b.is_classical() && k == 1 {
        out.push(FacetDescriptor::Lower(perm[0]));
        out.push(upper(1));
        out.extend((3..=n).map(upper));
    } else {
        out.extend(perm[..k].iter().map(|&p| FacetDescriptor::Lower(p)));
        out.extend((k + 1..=n).map(upper));
    }
    out.sort();
    Ok(out)
}

/// Label of an edge, oriented from the vertex it was computed at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// A unit coordinate is raised: difference `amount * e_position`.
    Raise { position: usize, amount: Int },
    /// A coordinate drops to 1: difference `-amount * e_position`.
    Drop { position: usize, amount: Int },
    /// Two consecutive partial sums trade places: difference
    /// `amount * (e_a - e_b)`.
    Swap { a: usize, b: usize, amount: Int },
}

impl EdgeLabel {
    pub fn difference(&self, n: usize) -> Vec<Int> {
        let mut d = vec![Int::zero(); n];
        match self {
            EdgeLabel::Raise { position, amount } => d[*position] = amount.clone(),
            EdgeLabel::Drop { position, amount } => d[*position] = -amount.clone(),
            EdgeLabel::Swap { a, b, amount } => {
                d[*a] = amount.clone();
                d[*b] = -amount.clone();
            }
        }
        d
    }

    pub fn reversed(&self) -> EdgeLabel {
        match self.clone() {
            EdgeLabel::Raise { position, amount } => EdgeLabel::Drop { position, amount },
            EdgeLabel::Drop { position, amount } => EdgeLabel::Raise { position, amount },
            EdgeLabel::Swap { a, b, amount } => EdgeLabel::Swap { a: b, b: a, amount },
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Raise { position, amount } => write!(f, "raise({}, {amount})", position + 1),
            EdgeLabel::Drop { position, amount } => write!(f, "drop({}, {amount})", position + 1),
            EdgeLabel::Swap { a, b, amount } => write!(f, "swap({}, {}, {amount})", a + 1, b + 1),
        }
    }
}

/// The `n` neighbors of a vertex with their edge labels, sorted by the
/// neighbor's coordinates.
pub fn neighbors(
    b: &BVector,
    v: &VertexDescriptor,
) -> Result<Vec<(VertexDescriptor, EdgeLabel)>> {
    v.check(b)?;
    let n = b.n();
    let k = v.k();
    let x = v.point(b);
    let mut labels = Vec::with_capacity(n);
    let first_swap = if b.is_classical() && k == 1 {
        // S_1 = 1 behaves as a tail entry
        let lowest_tail = v.position_of(2);
        labels.push(EdgeLabel::Drop {
            position: lowest_tail,
            amount: b.entry(2).clone(),
        });
        2
    } else {
        for p in v.unit_positions() {
            labels.push(EdgeLabel::Raise {
                position: p,
                amount: b.partial_sum(k) - Int::one(),
            });
        }
        if k < n {
            labels.push(EdgeLabel::Drop {
                position: v.position_of(k + 1),
                amount: b.partial_sum(k + 1) - Int::one(),
            });
        }
        k + 2
    };
    let perm = v.perm();
    for j in first_swap..=n {
        labels.push(EdgeLabel::Swap {
            a: perm[j - 2],
            b: perm[j - 1],
            amount: b.entry(j).clone(),
        });
    }
    let mut out: Vec<(VertexDescriptor, EdgeLabel)> = labels
        .into_iter()
        .map(|label| {
            let d = label.difference(n);
            let w = Point(x.0.iter().zip(&d).map(|(a, c)| a + c).collect());
            let desc = VertexDescriptor::from_point(b, &w)
                .unwrap_or_else(|| panic!("neighbor {w} of {x} is not a vertex"));
            (desc, label)
        })
        .collect();
    out.sort_by_cached_key(|(w, _)| w.point(b));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Oriented from `u` to `v`.
    pub label: EdgeLabel,
}

/// The 1-skeleton on canonical vertex descriptors.
#[derive(Clone, Debug)]
pub struct EdgeGraph {
    pub vertices: Vec<VertexDescriptor>,
    pub points: Vec<Point>,
    pub adjacency: Vec<Vec<usize>>,
    pub edges: Vec<Edge>,
}

impl EdgeGraph {
    pub fn index_of(&self, x: &Point) -> Option<usize> {
        self.points.binary_search(x).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

pub fn edge_graph(b: &BVector, budget: &Budget) -> Result<EdgeGraph> {
    let verts = vertices_within(b, budget)?;
    let points: Vec<Point> = verts.iter().map(|v| v.point(b)).collect();
    let index: HashMap<&VertexDescriptor, usize> =
        verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adjacency = vec![Vec::new(); verts.len()];
    let mut edges = Vec::new();
    for (u, v) in verts.iter().enumerate() {
        for (w, label) in neighbors(b, v)? {
            let t = index[&w];
            adjacency[u].push(t);
            if u < t {
                edges.push(Edge { u, v: t, label });
            }
        }
        adjacency[u].sort_unstable();
    }
    Ok(EdgeGraph {
        vertices: verts,
        points,
        adjacency,
        edges,
    })
}

/// Generators of the tangent cone at `v`, one per incident edge, in the
/// order: raised units, the dropped entry, then consecutive swaps.
pub fn tangent_cone_generators(b: &BVector, v: &VertexDescriptor) -> Result<Vec<Vec<Int>>> {
    v.check(b)?;
    let n = b.n();
    let k = v.k();
    let perm = v.perm();
    let unit = |p: usize, sign: i64| {
        let mut e = vec![Int::zero(); n];
        e[p] = Int::from(sign);
        e
    };
    let diff = |p: usize, q: usize| {
        let mut e = vec![Int::zero(); n];
        e[p] = Int::one();
        e[q] = -Int::one();
        e
    };
    let mut out = Vec::with_capacity(n);
    if b.is_classical() && k == 1 {
        out.extend((2..=n).map(|j| diff(perm[j - 2], perm[j - 1])));
        out.push(unit(perm[1], -1));
    } else if k == n {
        out.extend((0..n).map(|p| unit(p, 1)));
    } else {
        out.extend(perm[..k].iter().map(|&p| unit(p, 1)));
        out.push(unit(perm[k], -1));
        out.extend((k + 2..=n).map(|j| diff(perm[j - 2], perm[j - 1])));
    }
    Ok(out)
}
