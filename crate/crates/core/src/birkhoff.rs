//! The relaxed assignment and partition systems whose linear projection is
//! the polytope, with a brute-force check of that projection on small
//! instances.
//!
//! Variables `x_ij` (car `i`, spot `j`) are stored row-major. Spot `j` is
//! the value `j + 1`. The systems are
//!
//! ```text
//! sum_j x_ij = 1                    for every car i
//! sum_{j <= S_k} sum_i x_ij >= k    for every k
//! x >= 0
//! ```
//!
//! with `S_n` spots. Cluster weights `1 / b_t` on the spots in
//! `(S_{t-1}, S_t]` sum to exactly these prefix constraints, so they do not
//! appear separately.

use std::collections::BTreeSet;

use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{solve, Rational};
use crate::parking::{BVector, Int, Point};
use crate::polytope;
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    fn value(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, c)| a * c).sum()
    }
}

/// `equalities` hold with `=`, `inequalities` with `>=`; every variable is
/// nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub cars: usize,
    pub spots: usize,
    /// `S_1, .., S_n`: the prefix cut after which `k` cars must be parked.
    pub cuts: Vec<usize>,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

impl LinearSystem {
    pub fn num_vars(&self) -> usize {
        self.cars * self.spots
    }

    pub fn var(&self, car: usize, spot: usize) -> usize {
        car * self.spots + spot
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|c| *c >= Rational::zero())
            && self.equalities.iter().all(|c| c.value(x) == c.rhs)
            && self.inequalities.iter().all(|c| c.value(x) >= c.rhs)
    }
}

fn build(cars: usize, spots: usize, cuts: Vec<usize>) -> LinearSystem {
    let vars = cars * spots;
    let one = Rational::one();
    let equalities = (0..cars)
        .map(|i| {
            let mut coeffs = vec![Rational::zero(); vars];
            for j in 0..spots {
                coeffs[i * spots + j] = one.clone();
            }
            Constraint {
                coeffs,
                rhs: one.clone(),
            }
        })
        .collect();
    let inequalities = cuts
        .iter()
        .enumerate()
        .map(|(k, &cut)| {
            let mut coeffs = vec![Rational::zero(); vars];
            for i in 0..cars {
                for j in 0..cut {
                    coeffs[i * spots + j] = one.clone();
                }
            }
            Constraint {
                coeffs,
                rhs: Rational::from_integer(Int::from(k + 1)),
            }
        })
        .collect();
    LinearSystem {
        cars,
        spots,
        cuts,
        equalities,
        inequalities,
    }
}

/// `n` cars, `n` spots, prefix cuts `1, .., n`.
pub fn build_relaxed_birkhoff(n: usize) -> LinearSystem {
    build(n, n, (1..=n).collect())
}

/// `n` cars, `S_n` spots, prefix cuts `S_1, .., S_n`.
pub fn build_relaxed_partition(b: &BVector, budget: &Budget) -> Result<LinearSystem> {
    let n = b.n();
    let top = b.partial_sum(n);
    budget.check_cells("partition system variables", &(&top * Int::from(n)))?;
    let cuts = (1..=n)
        .map(|k| b.partial_sum(k).to_usize().expect("checked against budget"))
        .collect::<Vec<_>>();
    Ok(build(n, cuts[n - 1], cuts))
}

/// Coordinate `i` is `sum_j (j + 1) x_ij`, summed over all spots.
pub fn project(system: &LinearSystem, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != system.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: system.num_vars(),
            found: x.len(),
        });
    }
    Ok((0..system.cars)
        .map(|i| {
            (0..system.spots)
                .map(|j| Rational::from_integer(Int::from(j + 1)) * &x[system.var(i, j)])
                .sum()
        })
        .collect())
}

/// All feasible 0/1 points. A 0/1 point meets the row equalities exactly
/// when each car has one spot, so candidates are the `spots^cars`
/// assignments.
pub fn zero_one_feasible_points(
    system: &LinearSystem,
    budget: &Budget,
) -> Result<Vec<Vec<Rational>>> {
    let count = Int::from(system.spots).pow(system.cars as u32);
    budget.check_cells("0/1 assignments", &count)?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; system.cars];
    loop {
        let mut x = vec![Rational::zero(); system.num_vars()];
        for (i, &j) in choice.iter().enumerate() {
            x[system.var(i, j)] = Rational::one();
        }
        if system.is_feasible(&x) {
            out.push(x);
        }
        let Some(i) = (0..system.cars).rev().find(|&i| choice[i] + 1 < system.spots) else {
            break;
        };
        choice[i] += 1;
        for c in choice[i + 1..].iter_mut() {
            *c = 0;
        }
    }
    Ok(out)
}

/// Number of (tight set, support) pairs examined by
/// [`basic_feasible_solutions`].
pub fn basic_solution_search_size(system: &LinearSystem) -> Int {
    let vars = Int::from(system.num_vars());
    let m = system.inequalities.len();
    (0..=m)
        .map(|t| {
            let supports: Int = (system.cars..=(system.cars + t).min(system.num_vars()))
                .map(|u| binomial(vars.clone(), Int::from(u)))
                .sum();
            binomial(Int::from(m), Int::from(t)) * supports
        })
        .sum()
}

/// Every vertex of the system. A feasible point is a vertex exactly when
/// its tight constraints, restricted to its support, have full column
/// rank; so for every set `T` of prefix constraints and every support `U`
/// with `|U| <= cars + |T|`, the equalities and `T` are solved on `U` and
/// the unique solution, if any, kept when feasible.
pub fn basic_feasible_solutions(
    system: &LinearSystem,
    budget: &Budget,
) -> Result<Vec<Vec<Rational>>> {
    budget.check_cells("square subsystems", &basic_solution_search_size(system))?;
    let vars = system.num_vars();
    if vars > 63 {
        return Err(Error::BudgetExceeded {
            what: "square subsystems",
            required: format!("{vars} variables"),
            limit: 63,
        });
    }
    let m = system.inequalities.len();
    let row_masks: Vec<Subset> = (0..system.cars)
        .map(|i| Subset::from_indices((0..system.spots).map(|j| system.var(i, j))))
        .collect();
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for tight in Subset::full(m).subsets() {
        let rows: Vec<&Constraint> = system
            .equalities
            .iter()
            .chain(tight.iter().map(|k| &system.inequalities[k]))
            .collect();
        for size in system.cars..=(system.cars + tight.len()).min(vars) {
            for support in Subset::k_subsets(vars, size) {
                if row_masks.iter().any(|r| r.is_disjoint(support)) {
                    continue;
                }
                let cols = support.to_vec();
                let a: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|c| cols.iter().map(|&v| c.coeffs[v].clone()).collect())
                    .collect();
                let rhs: Vec<Rational> = rows.iter().map(|c| c.rhs.clone()).collect();
                let Some(sol) = solve(&a, &rhs) else { continue };
                let mut x = vec![Rational::zero(); vars];
                for (&v, val) in cols.iter().zip(sol) {
                    x[v] = val;
                }
                if system.is_feasible(&x) {
                    found.insert(x);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Outcome of the projection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionReport {
    pub zero_one_points: usize,
    pub parking_functions: usize,
    /// The 0/1 points project exactly onto the parking functions.
    pub projections_match: bool,
    pub basic_solutions: usize,
    /// A basic feasible solution with a fractional entry, if any.
    pub fractional_basic_solution: Option<Vec<Rational>>,
    /// Every vertex of the polytope is the image of a feasible 0/1 point.
    pub vertices_covered: bool,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.projections_match && self.fractional_basic_solution.is_none() && self.vertices_covered
    }
}

fn is_parking_for_cuts(point: &[Int], cuts: &[usize]) -> bool {
    let mut sorted = point.to_vec();
    sorted.sort();
    sorted
        .iter()
        .zip(cuts)
        .all(|(v, &c)| *v >= Int::one() && *v <= Int::from(c))
}

fn all_parking_for_cuts(cuts: &[usize]) -> Vec<Point> {
    let n = cuts.len();
    let top = cuts[n - 1];
    let mut out = Vec::new();
    let mut current = vec![1usize; n];
    loop {
        let p: Vec<Int> = current.iter().map(|&v| Int::from(v)).collect();
        if is_parking_for_cuts(&p, cuts) {
            out.push(Point(p));
        }
        let Some(i) = (0..n).rev().find(|&i| current[i] < top) else {
            break;
        };
        current[i] += 1;
        for c in current[i + 1..].iter_mut() {
            *c = 1;
        }
    }
    out
}

/// Projects every feasible 0/1 point and every vertex of the system and
/// compares with the parking functions and vertices of the polytope.
pub fn verify_projection(system: &LinearSystem, budget: &Budget) -> Result<ProjectionReport> {
    let zero_one = zero_one_feasible_points(system, budget)?;
    let mut images = BTreeSet::new();
    for x in &zero_one {
        let p = project(system, x)?;
        images.insert(Point(p.into_iter().map(|c| c.to_integer()).collect()));
    }
    budget.check_cells(
        "parking-function scan",
        &Int::from(system.spots).pow(system.cars as u32),
    )?;
    let parking: BTreeSet<Point> = all_parking_for_cuts(&system.cuts).into_iter().collect();

    let basic = basic_feasible_solutions(system, budget)?;
    let fractional_basic_solution = basic
        .iter()
        .find(|x| x.iter().any(|c| !c.is_zero() && !c.is_one()))
        .cloned();

    let entries: Vec<i64> = std::iter::once(system.cuts[0] as i64)
        .chain(system.cuts.windows(2).map(|w| (w[1] - w[0]) as i64))
        .collect();
    let vertices_covered = match BVector::new(entries) {
        Ok(b) => polytope::vertices(&b)
            .iter()
            .all(|v| images.contains(&v.point(&b))),
        // a single car with one spot: the polytope is the point 1
        Err(_) => images.contains(&Point::from_i64s(&[1])),
    };
    Ok(ProjectionReport {
        zero_one_points: zero_one.len(),
        parking_functions: parking.len(),
        projections_match: images == parking,
        basic_solutions: basic.len(),
        fractional_basic_solution,
        vertices_covered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn system_shapes() {
        let s = build_relaxed_birkhoff(2);
        assert_eq!((s.num_vars(), s.equalities.len(), s.inequalities.len()), (4, 2, 2));
        let s = build_relaxed_birkhoff(3);
        assert_eq!((s.num_vars(), s.equalities.len(), s.inequalities.len()), (9, 3, 3));
        let s = build_relaxed_birkhoff(1);
        assert!(s.is_feasible(&qs(&[1])));
        assert!(!s.is_feasible(&qs(&[0])));

        let budget = Budget::default();
        let b = BVector::new([1, 2]).unwrap();
        let s = build_relaxed_partition(&b, &budget).unwrap();
        assert_eq!(s.num_vars(), 6);
        assert_eq!(s.cuts, vec![1, 3]);
        assert_eq!(s.inequalities[0].coeffs, qs(&[1, 0, 0, 1, 0, 0]));
        assert_eq!(s.inequalities[1].rhs, q(2));
        let b = BVector::new([2, 3, 4]).unwrap();
        let s = build_relaxed_partition(&b, &budget).unwrap();
        assert_eq!((s.num_vars(), s.cuts.clone()), (27, vec![2, 5, 9]));
        let ones = BVector::new([1, 1, 1]).unwrap();
        assert_eq!(build_relaxed_partition(&ones, &budget).unwrap(), build_relaxed_birkhoff(3));
    }

    #[test]
    fn projections() {
        let s = build_relaxed_birkhoff(2);
        assert_eq!(project(&s, &qs(&[1, 0, 0, 1])).unwrap(), qs(&[1, 2]));
        let half = Rational::new(1.into(), 2.into());
        let p = project(&s, &vec![half; 4]).unwrap();
        assert_eq!(p, vec![Rational::new(3.into(), 2.into()); 2]);
        assert_eq!(project(&build_relaxed_birkhoff(1), &qs(&[1])).unwrap(), qs(&[1]));
        assert!(project(&s, &qs(&[1])).is_err());
    }

    #[test]
    fn two_cars() {
        let budget = Budget::default();
        let s = build_relaxed_birkhoff(2);
        assert!(!s.is_feasible(&qs(&[0, 1, 0, 1])));
        let images: BTreeSet<Vec<Rational>> = zero_one_feasible_points(&s, &budget)
            .unwrap()
            .iter()
            .map(|x| project(&s, x).unwrap())
            .collect();
        let expect: BTreeSet<Vec<Rational>> =
            [qs(&[1, 1]), qs(&[1, 2]), qs(&[2, 1])].into_iter().collect();
        assert_eq!(images, expect);
        let basic = basic_feasible_solutions(&s, &budget).unwrap();
        assert!(basic.iter().flatten().all(|c| c.is_zero() || c.is_one()));
        assert_eq!(basic.len(), 3);
        let report = verify_projection(&s, &budget).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn one_car() {
        let report = verify_projection(&build_relaxed_birkhoff(1), &Budget::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.parking_functions, 1);
    }
}
