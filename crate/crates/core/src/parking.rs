//! b-vectors, b-parking functions and the canonical vertex points `y_k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};

pub type Int = BigInt;

/// The defining vector `b = (b_1, .., b_n)` of positive integers together
/// with its partial sums `S_i = b_1 + .. + b_i`.
///
/// Accessors taking an index use the 1-based numbering of the math
/// (`entry(1) == b_1`, `partial_sum(0) == 0`). Coordinates of points are
/// 0-based everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BVector {
    entries: Vec<Int>,
    prefix_sums: Vec<Int>,
}

impl BVector {
    pub fn new<T: Into<Int>>(entries: impl IntoIterator<Item = T>) -> Result<Self> {
        let entries: Vec<Int> = entries.into_iter().map(Into::into).collect();
        if entries.is_empty() {
            return Err(Error::InvalidBVector("need at least one entry".into()));
        }
        if let Some(bad) = entries.iter().find(|b| !b.is_positive()) {
            return Err(Error::InvalidBVector(format!("entry {bad} is not positive")));
        }
        if entries.len() == 1 && entries[0].is_one() {
            return Err(Error::DegenerateBVector);
        }
        if entries.len() > 63 {
            return Err(Error::InvalidBVector("at most 63 entries are supported".into()));
        }
        let mut prefix_sums = Vec::with_capacity(entries.len());
        let mut acc = Int::zero();
        for b in &entries {
            acc += b;
            prefix_sums.push(acc.clone());
        }
        Ok(BVector {
            entries,
            prefix_sums,
        })
    }

    /// Parses the comma-separated text form, e.g. `"1,2,3"`.
    pub fn parse(csv: &str) -> Result<Self> {
        csv.parse()
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    /// `b_j` for `1 <= j <= n`.
    pub fn entry(&self, j: usize) -> &Int {
        &self.entries[j - 1]
    }

    pub fn prefix_sums(&self) -> &[Int] {
        &self.prefix_sums
    }

    /// `S_i` for `0 <= i <= n`, with `S_0 = 0`.
    pub fn partial_sum(&self, i: usize) -> Int {
        if i == 0 {
            Int::zero()
        } else {
            self.prefix_sums[i - 1].clone()
        }
    }

    /// `B = S_1 + .. + S_n`, the coordinate sum of every lifted point.
    pub fn sum_of_partial_sums(&self) -> Int {
        self.prefix_sums.iter().sum()
    }

    /// `b_1 = 1`: the polytope has the combinatorics of the classical
    /// parking-function polytope and `y_0 = y_1`.
    pub fn is_classical(&self) -> bool {
        self.entries[0].is_one()
    }

    /// Smallest number of unit coordinates a vertex can have.
    pub fn min_ones(&self) -> usize {
        usize::from(self.is_classical())
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: len,
            })
        }
    }
}

impl FromStr for BVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_int_csv(s)?;
        BVector::new(entries)
    }
}

impl fmt::Display for BVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated list of integers.
pub fn parse_int_csv(s: &str) -> Result<Vec<Int>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<Int>()
                .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
        })
        .collect()
}

/// An integer point of `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Int>);

impl Point {
    pub fn from_i64s(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether `beta` is a b-parking function: every coordinate is at least 1
/// and the nondecreasing rearrangement satisfies `beta'_i <= S_i`.
pub fn is_parking_function(beta: &Point, b: &BVector) -> Result<bool> {
    b.check_len(beta.len())?;
    if beta.0.iter().any(|x| *x < Int::one()) {
        return Ok(false);
    }
    let mut sorted = beta.0.clone();
    sorted.sort();
    Ok(sorted.iter().zip(b.prefix_sums()).all(|(x, s)| x <= s))
}

/// Every b-parking function, in lexicographic order.
///
/// The scan covers the box `[1, S_n]^n`, whose size is checked against
/// `budget.max_cells`.
pub fn enumerate_parking_functions(b: &BVector, budget: &Budget) -> Result<Vec<Point>> {
    let n = b.n();
    let top = b.partial_sum(n);
    budget.check_cells("parking-function scan", &num_traits::pow(top.clone(), n))?;
    let sums: Vec<i64> = b
        .prefix_sums()
        .iter()
        .map(|s| s.to_i64().expect("bounded by the cell budget"))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    // at_most[i] = number of assigned coordinates <= S_{i+1}
    let mut at_most = vec![0usize; n];
    scan(&sums, &mut current, &mut at_most, &mut out);
    Ok(out)
}

fn scan(sums: &[i64], current: &mut Vec<i64>, at_most: &mut [usize], out: &mut Vec<Point>) {
    let n = sums.len();
    if current.len() == n {
        out.push(Point::from_i64s(current));
        return;
    }
    let remaining = n - current.len() - 1;
    for value in 1..=sums[n - 1] {
        for (i, s) in sums.iter().enumerate() {
            if value <= *s {
                at_most[i] += 1;
            }
        }
        // unassigned coordinates can still all be 1
        if at_most.iter().enumerate().all(|(i, &c)| c + remaining > i) {
            current.push(value);
            scan(sums, current, at_most, out);
            current.pop();
        }
        for (i, s) in sums.iter().enumerate() {
            if value <= *s {
                at_most[i] -= 1;
            }
        }
    }
}

/// `y_k = (1, .., 1, S_{k+1}, .., S_n)` with `k` leading ones.
pub fn y_point(b: &BVector, k: usize) -> Result<Point> {
    let n = b.n();
    if k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            max: n,
        });
    }
    Ok(Point(
        (1..=n)
            .map(|j| if j <= k { Int::one() } else { b.partial_sum(j) })
            .collect(),
    ))
}

/// A vertex `pi(y_k)` in canonical form.
///
/// `tail[t]` is the coordinate holding `S_{k+1+t}`; the remaining `k`
/// coordinates hold 1. For `b_1 = 1` the vertices `pi(y_0) = pi(y_1)` are
/// stored with `k = 1`, so two descriptors are equal exactly when they
/// realize the same point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexDescriptor {
    n: usize,
    k: usize,
    tail: Vec<usize>,
}

impl VertexDescriptor {
    /// The vertex `pi(y_k)`, where `perm[j - 1]` is the coordinate that
    /// receives the `j`-th entry of `y_k`.
    pub fn new(b: &BVector, k: usize, perm: &[usize]) -> Result<Self> {
        let n = b.n();
        b.check_len(perm.len())?;
        if k > n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k,
                max: n,
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidBVector(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
        }
        let k = k.max(b.min_ones());
        Ok(VertexDescriptor {
            n,
            k,
            tail: perm[k..].to_vec(),
        })
    }

    /// Recognizes a vertex from its coordinates.
    pub fn from_point(b: &BVector, x: &Point) -> Option<Self> {
        let n = b.n();
        if x.len() != n {
            return None;
        }
        let k = x.0.iter().filter(|c| c.is_one()).count();
        if k < b.min_ones() {
            return None;
        }
        let mut tail = vec![usize::MAX; n - k];
        for (pos, c) in x.0.iter().enumerate() {
            if c.is_one() {
                continue;
            }
            let j = b.prefix_sums()[k..].iter().position(|s| s == c)?;
            if tail[j] != usize::MAX {
                return None;
            }
            tail[j] = pos;
        }
        Some(VertexDescriptor { n, k, tail })
    }

    /// The canonical `y_k` itself.
    pub fn identity(b: &BVector, k: usize) -> Result<Self> {
        let perm: Vec<usize> = (0..b.n()).collect();
        VertexDescriptor::new(b, k, &perm)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of unit coordinates (canonical `k`).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    /// Coordinate holding `S_j` for `k < j <= n`.
    pub fn position_of(&self, j: usize) -> usize {
        self.tail[j - self.k - 1]
    }

    /// Coordinates holding the value 1, ascending.
    pub fn unit_positions(&self) -> Vec<usize> {
        let mut taken = vec![false; self.n];
        for &p in &self.tail {
            taken[p] = true;
        }
        (0..self.n).filter(|&p| !taken[p]).collect()
    }

    /// A full permutation realizing this vertex: unit coordinates first
    /// (ascending), then the tail.
    pub fn perm(&self) -> Vec<usize> {
        let mut perm = self.unit_positions();
        perm.extend_from_slice(&self.tail);
        perm
    }

    pub fn point(&self, b: &BVector) -> Point {
        let mut coords = vec![Int::one(); self.n];
        for (t, &p) in self.tail.iter().enumerate() {
            coords[p] = b.partial_sum(self.k + 1 + t);
        }
        Point(coords)
    }

    pub(crate) fn check(&self, b: &BVector) -> Result<()> {
        if self.n != b.n() || self.k < b.min_ones() {
            return Err(Error::NotAVertex(format!("{self:?}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> BVector {
        BVector::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert_eq!(BVector::new([1]), Err(Error::DegenerateBVector));
        assert!(BVector::new([0, 1]).is_err());
        assert!(BVector::new(Vec::<i64>::new()).is_err());
        let b = bv(&[2, 3, 4]);
        assert_eq!(b.prefix_sums(), &[2.into(), 5.into(), 9.into()]);
        assert_eq!(b.sum_of_partial_sums(), Int::from(16));
        assert_eq!(b.partial_sum(0), Int::zero());
        assert_eq!("1, 2,3".parse::<BVector>().unwrap(), bv(&[1, 2, 3]));
        assert!(BVector::parse("1,x").is_err());
    }

    #[test]
    fn parking_function_examples() {
        let b = bv(&[1, 2, 3]);
        assert!(is_parking_function(&Point::from_i64s(&[1, 3, 6]), &b).unwrap());
        assert!(!is_parking_function(&Point::from_i64s(&[2, 2, 2]), &b).unwrap());
        assert!(is_parking_function(&Point::from_i64s(&[1, 1, 1]), &b).unwrap());
        assert!(!is_parking_function(&Point::from_i64s(&[0, 1, 1]), &b).unwrap());
        assert!(matches!(
            is_parking_function(&Point::from_i64s(&[1, 1]), &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let budget = Budget::default();
        assert_eq!(
            enumerate_parking_functions(&bv(&[1, 1, 1]), &budget)
                .unwrap()
                .len(),
            16
        );
        assert_eq!(
            enumerate_parking_functions(&bv(&[2]), &budget).unwrap(),
            vec![Point::from_i64s(&[1]), Point::from_i64s(&[2])]
        );
        // exhaustive scan of [1,3]^2 by hand
        assert_eq!(
            enumerate_parking_functions(&bv(&[1, 2]), &budget).unwrap(),
            vec![
                Point::from_i64s(&[1, 1]),
                Point::from_i64s(&[1, 2]),
                Point::from_i64s(&[1, 3]),
                Point::from_i64s(&[2, 1]),
                Point::from_i64s(&[3, 1]),
            ]
        );
        let tiny = Budget {
            max_vertices: 10,
            max_cells: 10,
        };
        assert!(matches!(
            enumerate_parking_functions(&bv(&[1, 2, 3]), &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn y_points() {
        assert_eq!(y_point(&bv(&[2, 3, 4]), 1).unwrap(), Point::from_i64s(&[1, 5, 9]));
        let b = bv(&[1, 2, 3]);
        assert_eq!(y_point(&b, 0).unwrap(), Point::from_i64s(&[1, 3, 6]));
        assert_eq!(y_point(&b, 0).unwrap(), y_point(&b, 1).unwrap());
        assert_eq!(y_point(&b, 3).unwrap(), Point::from_i64s(&[1, 1, 1]));
        assert!(y_point(&b, 4).is_err());
    }

    #[test]
    fn descriptors_are_canonical() {
        let b = bv(&[1, 2, 3]);
        let a = VertexDescriptor::new(&b, 0, &[2, 1, 0]).unwrap();
        let c = VertexDescriptor::new(&b, 1, &[2, 1, 0]).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.point(&b), Point::from_i64s(&[6, 3, 1]));
        // same point from two different permutations of y_3
        let d = VertexDescriptor::new(&b, 3, &[0, 1, 2]).unwrap();
        let e = VertexDescriptor::new(&b, 3, &[2, 0, 1]).unwrap();
        assert_eq!(d, e);
        let back = VertexDescriptor::from_point(&b, &Point::from_i64s(&[6, 3, 1])).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.perm(), vec![2, 1, 0]);
        assert!(VertexDescriptor::from_point(&b, &Point::from_i64s(&[2, 2, 2])).is_none());
        assert!(VertexDescriptor::from_point(&b, &Point::from_i64s(&[3, 3, 1])).is_none());
        let stello = bv(&[2, 3, 4]);
        assert!(VertexDescriptor::from_point(&stello, &Point::from_i64s(&[2, 5, 9])).is_some());
        assert!(VertexDescriptor::new(&b, 1, &[0, 0, 1]).is_err());
    }
}
