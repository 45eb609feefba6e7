//! The polytope shifted by `-1` as a polymatroid: its rank function, greedy
//! optimization, diameters and circuit walks.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::parking::{BVector, Int, Point, VertexDescriptor};
use crate::polytope::{contains_point, facets, vertex_count, vertices};

/// `f(I) = -|I| + sum_j min(|I|, j) b_{n-j+1}`, which depends only on `|I|`.
pub fn f_value(b: &BVector, m: usize) -> Result<Int> {
    let n = b.n();
    if m > n {
        return Err(Error::OutOfRange {
            what: "cardinality",
            value: m,
            max: n,
        });
    }
    let sum: Int = (1..=n).map(|j| Int::from(m.min(j)) * b.entry(n - j + 1)).sum();
    Ok(sum - Int::from(m))
}

/// `g(0), .., g(n)` with `g(m) = f(I)` for any `|I| = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityProfile {
    pub g: Vec<Int>,
}

impl CardinalityProfile {
    pub fn new(b: &BVector) -> Self {
        CardinalityProfile {
            g: (0..=b.n()).map(|m| f_value(b, m).expect("in range")).collect(),
        }
    }

    pub fn differences(&self) -> Vec<Int> {
        self.g.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.differences().iter().all(|d| !d.is_negative())
    }

    /// A cardinality-only set function is submodular exactly when its
    /// increments do not grow.
    pub fn is_submodular(&self) -> bool {
        self.differences().windows(2).all(|w| w[1] <= w[0])
    }
}

pub fn check_submodular_nondecreasing(b: &BVector) -> bool {
    let p = CardinalityProfile::new(b);
    p.g[0].is_zero() && p.is_nondecreasing() && p.is_submodular()
}

/// Maximizes `<w, y>` over the polymatroid by the greedy rule: visit
/// coordinates by decreasing weight (ties by index) and give the `r`-th one
/// `g(r) - g(r-1)` while its weight is positive.
pub fn greedy_maximize(b: &BVector, w: &[Rational]) -> Result<(Point, Rational)> {
    let n = b.n();
    b.check_len(w.len())?;
    let profile = CardinalityProfile::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j].cmp(&w[i]).then(i.cmp(&j)));
    let mut y = vec![Int::zero(); n];
    let mut value = Rational::zero();
    for (r, &i) in order.iter().enumerate() {
        if !w[i].is_positive() {
            break;
        }
        y[i] = &profile.g[r + 1] - &profile.g[r];
        value += &w[i] * Rational::from_integer(y[i].clone());
    }
    Ok((Point(y), value))
}

/// Best value of `<w, v - 1>` over the vertices, by scanning them all.
pub fn brute_force_maximum(b: &BVector, w: &[Rational], budget: &Budget) -> Result<Rational> {
    b.check_len(w.len())?;
    budget.check_vertices("vertex scan", &vertex_count(b))?;
    Ok(vertices(b)
        .iter()
        .map(|v| {
            v.point(b)
                .0
                .iter()
                .zip(w)
                .map(|(x, c)| c * Rational::from_integer(x - Int::one()))
                .sum::<Rational>()
        })
        .max()
        .expect("nonempty"))
}

/// `min(2n, n(n-1)/2 + 1)` when `b_1 >= 2`, `min(2(n-1), n(n-1)/2)` when
/// `b_1 = 1`.
pub fn combinatorial_diameter(b: &BVector) -> usize {
    let n = b.n();
    let pairs = n * (n - 1) / 2;
    if b.is_classical() {
        (2 * (n - 1)).min(pairs)
    } else {
        (2 * n).min(pairs + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircuitVector {
    /// `e_index` or `-e_index`.
    Axis { index: usize, positive: bool },
    /// `e_plus - e_minus`.
    Difference { plus: usize, minus: usize },
}

impl CircuitVector {
    pub fn direction(&self, n: usize) -> Vec<Int> {
        let mut d = vec![Int::zero(); n];
        match *self {
            CircuitVector::Axis { index, positive } => {
                d[index] = if positive { Int::one() } else { -Int::one() }
            }
            CircuitVector::Difference { plus, minus } => {
                d[plus] = Int::one();
                d[minus] = -Int::one();
            }
        }
        d
    }

    /// The circuit a difference vector is a positive multiple of.
    pub fn from_direction(d: &[Int]) -> Option<(CircuitVector, Int)> {
        let support: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_zero()).collect();
        match support[..] {
            [i] => Some((
                CircuitVector::Axis {
                    index: i,
                    positive: d[i].is_positive(),
                },
                d[i].abs(),
            )),
            [i, j] if (&d[i] + &d[j]).is_zero() => {
                let (plus, minus) = if d[i].is_positive() { (i, j) } else { (j, i) };
                Some((CircuitVector::Difference { plus, minus }, d[plus].clone()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for CircuitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CircuitVector::Axis { index, positive } => {
                write!(f, "{}e{}", if positive { "+" } else { "-" }, index + 1)
            }
            CircuitVector::Difference { plus, minus } => write!(f, "e{}-e{}", plus + 1, minus + 1),
        }
    }
}

/// `+-e_i` for every `i`, then `e_i - e_j` for every ordered pair.
pub fn circuits(n: usize) -> Vec<CircuitVector> {
    let mut out = Vec::with_capacity(n * (n + 1));
    for index in 0..n {
        out.push(CircuitVector::Axis {
            index,
            positive: true,
        });
        out.push(CircuitVector::Axis {
            index,
            positive: false,
        });
    }
    for plus in 0..n {
        for minus in 0..n {
            if plus != minus {
                out.push(CircuitVector::Difference { plus, minus });
            }
        }
    }
    out
}

/// Largest `t >= 0` with `x + t d` inside the polytope, by a ratio test
/// over all facets. `None` when the ray never leaves (impossible for a
/// nonzero direction, as the polytope is bounded).
pub fn max_step(b: &BVector, x: &[Rational], d: &[Int]) -> Result<Option<Rational>> {
    b.check_len(x.len())?;
    b.check_len(d.len())?;
    let n = b.n();
    let mut best: Option<Rational> = None;
    for facet in facets(b) {
        // slack decreases at rate <normal, d> for upper facets and at rate
        // -d_i for lower facets
        let normal = facet.normal(n);
        let along: Int = normal.iter().zip(d).map(|(a, c)| a * c).sum();
        let rate = match facet {
            crate::polytope::FacetDescriptor::Lower(_) => -along,
            crate::polytope::FacetDescriptor::Upper(_) => along,
        };
        if rate.is_positive() {
            let t = facet.slack_rational(b, x) / Rational::from_integer(rate);
            if best.as_ref().is_none_or(|c| t < *c) {
                best = Some(t);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub circuit: CircuitVector,
    pub length: Int,
    pub arrival: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitWalk {
    pub start: VertexDescriptor,
    pub end: VertexDescriptor,
    pub steps: Vec<WalkStep>,
}

impl CircuitWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A walk from `from` to `to` taking maximal integral steps along `+-e_i`
/// and `e_i - e_j`. The largest values of the target that both endpoints
/// share are moved into place by swaps, largest first; then entries drop to
/// 1 or rise to their target values. At most `n - min(k_from, k_to)` steps.
pub fn circuit_walk(
    b: &BVector,
    from: &VertexDescriptor,
    to: &VertexDescriptor,
) -> Result<CircuitWalk> {
    from.check(b)?;
    to.check(b)?;
    let n = b.n();
    let target = to.point(b);
    let mut x = from.point(b);
    let mut steps = Vec::new();
    let shared = from.k().max(to.k());

    let mut take = |x: &mut Point, circuit: CircuitVector| -> Result<()> {
        let d = circuit.direction(n);
        let q: Vec<Rational> = x.0.iter().cloned().map(Rational::from_integer).collect();
        let t = max_step(b, &q, &d)?.ok_or(Error::Disconnected)?;
        if !t.is_integer() || !t.is_positive() {
            return Err(Error::NotAVertex(format!(
                "step {circuit} from {x} has length {t}"
            )));
        }
        let length = t.to_integer();
        for (c, dc) in x.0.iter_mut().zip(&d) {
            *c += &length * dc;
        }
        steps.push(WalkStep {
            circuit,
            length,
            arrival: x.clone(),
        });
        Ok(())
    };

    for j in (shared + 1..=n).rev() {
        let value = b.partial_sum(j);
        let p = to.position_of(j);
        let q = x.0.iter().position(|c| *c == value).expect("shared value");
        if p != q {
            take(&mut x, CircuitVector::Difference { plus: p, minus: q })?;
        }
    }
    if from.k() < to.k() {
        for p in 0..n {
            if !x.0[p].is_one() && target.0[p].is_one() {
                take(
                    &mut x,
                    CircuitVector::Axis {
                        index: p,
                        positive: false,
                    },
                )?;
            }
        }
    } else {
        for j in (to.k() + 1..=shared).rev() {
            take(
                &mut x,
                CircuitVector::Axis {
                    index: to.position_of(j),
                    positive: true,
                },
            )?;
        }
    }
    if x != target {
        return Err(Error::NotAVertex(format!("walk ended at {x}, not {target}")));
    }
    Ok(CircuitWalk {
        start: from.clone(),
        end: to.clone(),
        steps,
    })
}

/// Checks that every arrival is feasible and that one more unit along the
/// step's circuit leaves the polytope.
pub fn walk_is_maximal_and_feasible(b: &BVector, walk: &CircuitWalk) -> Result<bool> {
    let n = b.n();
    for step in &walk.steps {
        if !contains_point(b, &step.arrival)? {
            return Ok(false);
        }
        let d = step.circuit.direction(n);
        let beyond = Point(step.arrival.0.iter().zip(&d).map(|(a, c)| a + c).collect());
        if contains_point(b, &beyond)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which vertex pairs to walk between.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSample {
    All,
    Seeded { seed: u64, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDiameterReport {
    /// Longest walk produced over the sampled pairs.
    pub measured: usize,
    pub pairs: usize,
    /// `n - min k`: `n` when `b_1 >= 2`, `n - 1` when `b_1 = 1`.
    pub bound: usize,
    /// The alternative assignment of the two bounds (`n` for `b_1 = 1`,
    /// `n - 1` for `b_1 >= 2`), reported for comparison.
    pub swapped_bound: usize,
    pub combinatorial: usize,
    pub all_steps_maximal: bool,
}

pub fn circuit_diameter_upper(
    b: &BVector,
    sample: PairSample,
    budget: &Budget,
) -> Result<CircuitDiameterReport> {
    let n = b.n();
    let count = vertex_count(b);
    budget.check_vertices("vertex enumeration", &count)?;
    let verts = vertices(b);
    let pairs: Vec<(usize, usize)> = match sample {
        PairSample::All => {
            budget.check_cells("vertex pairs", &(&count * &count))?;
            (0..verts.len())
                .flat_map(|i| (0..verts.len()).map(move |j| (i, j)))
                .collect()
        }
        PairSample::Seeded { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..verts.len()), rng.gen_range(0..verts.len())))
                .collect()
        }
    };
    let mut measured = 0;
    let mut all_steps_maximal = true;
    for &(i, j) in &pairs {
        let walk = circuit_walk(b, &verts[i], &verts[j])?;
        measured = measured.max(walk.len());
        all_steps_maximal &= walk_is_maximal_and_feasible(b, &walk)?;
    }
    let (bound, swapped_bound) = if b.is_classical() {
        (n - 1, n)
    } else {
        (n, n - 1)
    };
    Ok(CircuitDiameterReport {
        measured,
        pairs: pairs.len(),
        bound,
        swapped_bound,
        combinatorial: combinatorial_diameter(b),
        all_steps_maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> BVector {
        BVector::new(v.iter().copied()).unwrap()
    }

    fn vd(b: &BVector, v: &[i64]) -> VertexDescriptor {
        VertexDescriptor::from_point(b, &Point::from_i64s(v)).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn profiles() {
        assert_eq!(CardinalityProfile::new(&bv(&[1, 2, 3])).g, ints(&[0, 5, 7, 7]));
        assert_eq!(CardinalityProfile::new(&bv(&[2, 3, 4])).g, ints(&[0, 8, 12, 13]));
        assert_eq!(CardinalityProfile::new(&bv(&[1, 2, 3])).differences(), ints(&[5, 2, 0]));
        assert!(check_submodular_nondecreasing(&bv(&[7])));
        assert!(f_value(&bv(&[1, 2]), 3).is_err());
    }

    #[test]
    fn greedy_examples() {
        let (y, value) = greedy_maximize(&bv(&[1, 2, 3]), &q(&[5, 2, 1])).unwrap();
        assert_eq!(y, Point::from_i64s(&[5, 2, 0]));
        assert_eq!(value, Rational::from_integer(29.into()));
        let (y, value) = greedy_maximize(&bv(&[1, 2, 3]), &q(&[-1, 0, -3])).unwrap();
        assert_eq!(y, Point::from_i64s(&[0, 0, 0]));
        assert!(value.is_zero());
        let (_, value) = greedy_maximize(&bv(&[2, 3, 4]), &q(&[1, 1, 1])).unwrap();
        assert_eq!(value, Rational::from_integer(13.into()));
    }

    #[test]
    fn diameters() {
        assert_eq!(combinatorial_diameter(&bv(&[1, 2, 3])), 3);
        assert_eq!(combinatorial_diameter(&bv(&[2, 3, 4])), 4);
        assert_eq!(combinatorial_diameter(&bv(&[2, 1, 1, 1, 1, 1])), 12);
    }

    #[test]
    fn circuit_list() {
        assert_eq!(circuits(2).len(), 6);
        assert_eq!(circuits(1).len(), 2);
        let (c, len) = CircuitVector::from_direction(&ints(&[0, -3, 3])).unwrap();
        assert_eq!(c, CircuitVector::Difference { plus: 2, minus: 1 });
        assert_eq!(len, Int::from(3));
    }

    #[test]
    fn walk_examples() {
        let b = bv(&[2, 3, 4]);
        let w = circuit_walk(&b, &vd(&b, &[2, 5, 9]), &vd(&b, &[9, 5, 2])).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.steps[0].length, Int::from(7));
        let w = circuit_walk(&b, &vd(&b, &[2, 5, 9]), &vd(&b, &[2, 5, 9])).unwrap();
        assert!(w.is_empty());
        let w = circuit_walk(&b, &vd(&b, &[1, 1, 1]), &vd(&b, &[2, 5, 9])).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w
            .steps
            .iter()
            .all(|s| matches!(s.circuit, CircuitVector::Axis { positive: true, .. })));
        assert!(walk_is_maximal_and_feasible(&b, &w).unwrap());
    }

    #[test]
    fn walk_bounds_hold_for_all_pairs() {
        for b in [bv(&[1, 2, 3]), bv(&[2, 3, 4]), bv(&[1, 1, 1, 1]), bv(&[3, 1, 2, 2])] {
            let verts = vertices(&b);
            for u in &verts {
                for v in &verts {
                    let w = circuit_walk(&b, u, v).unwrap();
                    assert!(w.len() <= b.n() - u.k().min(v.k()));
                    assert!(walk_is_maximal_and_feasible(&b, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn circuit_diameter_values() {
        let budget = Budget::default();
        let r = circuit_diameter_upper(&bv(&[2, 3, 4]), PairSample::All, &budget).unwrap();
        assert_eq!((r.measured, r.bound, r.combinatorial), (3, 3, 4));
        let r = circuit_diameter_upper(&bv(&[1, 2, 3]), PairSample::All, &budget).unwrap();
        assert_eq!((r.measured, r.bound), (2, 2));
        let r = circuit_diameter_upper(&bv(&[2]), PairSample::All, &budget).unwrap();
        assert_eq!(r.measured, 1);
        let r = circuit_diameter_upper(
            &bv(&[2, 3, 4]),
            PairSample::Seeded { seed: 3, count: 20 },
            &budget,
        )
        .unwrap();
        assert_eq!(r.pairs, 20);
    }

    #[test]
    fn ratio_test() {
        let b = bv(&[1, 2, 3]);
        let t = max_step(&b, &q(&[1, 1, 1]), &ints(&[1, 0, 0])).unwrap();
        assert_eq!(t, Some(Rational::from_integer(5.into())));
    }
}
