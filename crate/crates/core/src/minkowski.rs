//! The lifted polytope in the hyperplane `x_1 + .. + x_{n+1} = B`, its
//! generalized-permutahedron structure, and its expansion as a signed
//! Minkowski sum of coordinate simplices.

use num_integer::binomial;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::error::Result;
use crate::parking::{BVector, Int, Point};
use crate::polytope::{edge_graph, vertices};
use crate::subset::Subset;

/// A point of the hyperplane `sum = B` in dimension `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedPoint(pub Vec<Int>);

/// Appends the slack coordinate `B - sum(x)`.
pub fn lift(b: &BVector, x: &Point) -> Result<LiftedPoint> {
    b.check_len(x.len())?;
    let mut coords = x.0.clone();
    coords.push(b.sum_of_partial_sums() - x.0.iter().sum::<Int>());
    Ok(LiftedPoint(coords))
}

/// Reads a lifted difference as `c (e_i - e_j)` with `c > 0`.
pub fn as_root_multiple(d: &[Int]) -> Option<(usize, usize, Int)> {
    let support: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
    match support[..] {
        [p, q] if (&d[p] + &d[q]).is_zero() => {
            if d[p].is_positive() {
                Some((p, q, d[p].clone()))
            } else {
                Some((q, p, d[q].clone()))
            }
        }
        _ => None,
    }
}

/// Per-edge outcome of the generalized-permutahedron check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedEdge {
    pub from: LiftedPoint,
    pub to: LiftedPoint,
    /// `(i, j, c)` with `to - from = c (e_i - e_j)`, when it has that shape.
    pub direction: Option<(usize, usize, Int)>,
}

pub fn lifted_edges(b: &BVector, budget: &Budget) -> Result<Vec<LiftedEdge>> {
    let g = edge_graph(b, budget)?;
    g.edges
        .iter()
        .map(|e| {
            let from = lift(b, &g.points[e.u])?;
            let to = lift(b, &g.points[e.v])?;
            let d: Vec<Int> = to.0.iter().zip(&from.0).map(|(a, c)| a - c).collect();
            Ok(LiftedEdge {
                direction: as_root_multiple(&d),
                from,
                to,
            })
        })
        .collect()
}

/// True when every lifted edge is parallel to some `e_i - e_j`.
pub fn certify_generalized_permutahedron(b: &BVector, budget: &Budget) -> Result<bool> {
    Ok(lifted_edges(b, budget)?
        .iter()
        .all(|e| e.direction.is_some()))
}

/// The coefficients `z_I` (of the generalized permutahedron) and `y_I` (of
/// the signed Minkowski sum). Both depend only on `|I|` and on whether `I`
/// holds the apex `n`, so they are stored by that signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZYParameters {
    n: usize,
    /// `z[s][a]` for `|I| = s` and `a = 1` when the apex is in `I`.
    z: Vec<[Int; 2]>,
    y: Vec<[Int; 2]>,
}

impl ZYParameters {
    pub fn n(&self) -> usize {
        self.n
    }

    fn signature(&self, set: Subset) -> (usize, usize) {
        (set.len(), usize::from(set.contains(self.n)))
    }

    pub fn z(&self, set: Subset) -> Int {
        let (s, a) = self.signature(set);
        self.z[s][a].clone()
    }

    pub fn y(&self, set: Subset) -> Int {
        let (s, a) = self.signature(set);
        self.y[s][a].clone()
    }

    /// Every subset of `[n+1]` with a nonzero `y`, in subset order.
    pub fn nonzero_y(&self) -> Vec<(Subset, Int)> {
        let mut out: Vec<(Subset, Int)> = Subset::full(self.n + 1)
            .subsets()
            .map(|s| (s, self.y(s)))
            .filter(|(_, y)| !y.is_zero())
            .collect();
        out.sort();
        out
    }

    pub fn is_y_positive(&self) -> bool {
        self.y.iter().flatten().all(|c| !c.is_negative())
    }

    /// The nonzero `y` values by signature: `(size, holds apex, y)`.
    pub fn y_signatures(&self) -> Vec<(usize, bool, Int)> {
        let mut out = Vec::new();
        for (s, pair) in self.y.iter().enumerate() {
            for (a, c) in pair.iter().enumerate() {
                if !c.is_zero() {
                    out.push((s, a == 1, c.clone()));
                }
            }
        }
        out
    }
}

/// `z_I = |I|` without the apex, `S_1 + .. + S_{|I|-1}` with it. `y` is
/// left zero; see [`zy_parameters`].
fn z_table(b: &BVector) -> Vec<[Int; 2]> {
    let n = b.n();
    (0..=n + 1)
        .map(|s| {
            let without = Int::from(s);
            let with = if s == 0 {
                Int::zero()
            } else {
                (1..s).map(|i| b.partial_sum(i)).sum()
            };
            [without, with]
        })
        .collect()
}

/// The closed-form `y_I`: 1 on singletons of `[n]`, 0 on `{apex}` and on
/// larger sets missing the apex, `b_1 - 1` on `{i, apex}`, and
/// `sum_j (-1)^{|I|+j-1} C(|I|-3, j) b_{j+2}` for larger sets with the apex.
fn y_table(b: &BVector) -> Vec<[Int; 2]> {
    let n = b.n();
    (0..=n + 1)
        .map(|s| {
            let without = if s == 1 { Int::from(1) } else { Int::zero() };
            let with = match s {
                0 | 1 => Int::zero(),
                2 => b.entry(1) - Int::from(1),
                _ => (0..=s - 3)
                    .map(|j| {
                        let term = binomial(Int::from(s - 3), Int::from(j)) * b.entry(j + 2);
                        if (s + j - 1) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum(),
            };
            [without, with]
        })
        .collect()
}

pub fn zy_parameters(b: &BVector) -> ZYParameters {
    ZYParameters {
        n: b.n(),
        z: z_table(b),
        y: y_table(b),
    }
}

/// `y_I = sum_{J in I} (-1)^{|I - J|} z_J`, evaluated subset by subset.
pub fn y_by_inclusion_exclusion(z: impl Fn(Subset) -> Int, set: Subset) -> Int {
    set.subsets()
        .filter(|j| !j.is_empty())
        .map(|j| {
            let v = z(j);
            if (set.len() - j.len()).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// `z_I = sum_{J in I} y_J`.
pub fn z_by_summation(y: impl Fn(Subset) -> Int, set: Subset) -> Int {
    set.subsets().map(y).sum()
}

/// Outcome of the support-function comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub checked: usize,
    pub passed: usize,
    /// First direction where the two sides differ.
    pub failure: Option<Vec<Int>>,
}

impl SupportReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.checked
    }
}

/// For each `w`, compares `h(w) + sum_{y_I < 0} |y_I| max_I w` with
/// `sum_{y_I > 0} y_I max_I w`, where `h` is the support function of the
/// lifted polytope.
pub fn verify_signed_minkowski(
    b: &BVector,
    directions: &[Vec<Int>],
    budget: &Budget,
) -> Result<SupportReport> {
    let n = b.n();
    budget.check_vertices("lifted vertices", &crate::polytope::vertex_count(b))?;
    let lifted: Vec<LiftedPoint> = vertices(b)
        .iter()
        .map(|v| lift(b, &v.point(b)))
        .collect::<Result<_>>()?;
    let params = zy_parameters(b);
    let terms = params.nonzero_y();
    let mut report = SupportReport {
        checked: 0,
        passed: 0,
        failure: None,
    };
    for w in directions {
        if w.len() != n + 1 {
            return Err(crate::Error::DimensionMismatch {
                expected: n + 1,
                found: w.len(),
            });
        }
        let support = lifted
            .iter()
            .map(|p| p.0.iter().zip(w).map(|(a, c)| a * c).sum::<Int>())
            .max()
            .expect("at least one vertex");
        let mut positive = Int::zero();
        let mut negative = support;
        for (set, y) in &terms {
            let top = set.iter().map(|i| &w[i]).max().expect("nonempty").clone();
            if y.is_positive() {
                positive += y * top;
            } else {
                negative += -y * top;
            }
        }
        report.checked += 1;
        if positive == negative {
            report.passed += 1;
        } else if report.failure.is_none() {
            report.failure = Some(w.clone());
        }
    }
    Ok(report)
}

/// `count` integer vectors in `[-9, 9]^dim` from a seeded generator.
pub fn random_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<Int>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect())
        .collect()
}
