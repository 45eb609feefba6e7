//! Face numbers: Eulerian polynomials, vertex posets and their descents,
//! the h-polynomial and the f-vector.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::parking::{BVector, Int, VertexDescriptor};
use crate::polytope::{factorial, vertices};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `z^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<Int>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<Int>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::monomial(Int::one(), 0)
    }

    pub fn monomial(c: Int, degree: usize) -> Self {
        let mut coeffs = vec![Int::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Int) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// The polynomial `p(z + 1)`.
    pub fn translate_by_one(&self) -> Self {
        let d = self.coeffs.len();
        let mut out = vec![Int::zero(); d];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += c * binomial(Int::from(i), Int::from(k));
            }
        }
        IntPolynomial::new(out)
    }

    pub fn eval(&self, z: &Int) -> Int {
        self.coeffs
            .iter()
            .rev()
            .fold(Int::zero(), |acc, c| acc * z + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, c) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * c;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if *c < Int::zero() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// `A_k(z)`, counting permutations of `[k]` by descents.
pub fn eulerian(k: usize) -> IntPolynomial {
    let mut row = vec![Int::one()];
    for m in 1..=k {
        let mut next = vec![Int::zero(); m];
        for (i, slot) in next.iter_mut().enumerate() {
            if i < row.len() {
                *slot += Int::from(i + 1) * &row[i];
            }
            if i >= 1 && i - 1 < row.len() {
                *slot += Int::from(m - i) * &row[i - 1];
            }
        }
        row = next;
    }
    IntPolynomial::new(row)
}

/// `1 + z * sum_{k=1}^{n} C(n,k) A_k(z)`.
pub fn binomial_eulerian(n: usize) -> IntPolynomial {
    let mut sum = IntPolynomial::zero();
    for k in 1..=n {
        sum = &sum + &eulerian(k).scale(&binomial(Int::from(n), Int::from(k)));
    }
    &IntPolynomial::one() + &sum.shift(1)
}

/// A poset on `{0, .., n}` given by its cover relations; element `n` plays
/// the role of the extra point attached to the vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPoset {
    pub ground_size: usize,
    /// `(i, j)` means `i` is covered by `j`.
    pub covers: Vec<(usize, usize)>,
}

impl VertexPoset {
    pub fn apex(&self) -> usize {
        self.ground_size - 1
    }

    /// True when the covers generate a partial order (no directed cycle).
    pub fn is_acyclic(&self) -> bool {
        let m = self.ground_size;
        let mut indegree = vec![0usize; m];
        for &(_, j) in &self.covers {
            indegree[j] += 1;
        }
        let mut stack: Vec<usize> = (0..m).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for &(a, c) in &self.covers {
                if a == i {
                    indegree[c] -= 1;
                    if indegree[c] == 0 {
                        stack.push(c);
                    }
                }
            }
        }
        seen == m
    }
}

/// The poset read off the tangent cone at `v`.
pub fn vertex_poset(b: &BVector, v: &VertexDescriptor) -> Result<VertexPoset> {
    v.check(b)?;
    let n = b.n();
    let k = v.k();
    let perm = v.perm();
    let apex = n;
    let mut covers = Vec::with_capacity(n);
    if b.is_classical() && k == 1 {
        covers.extend((2..=n).map(|j| (perm[j - 2], perm[j - 1])));
        covers.push((apex, perm[1]));
    } else {
        covers.extend(perm[..k].iter().map(|&p| (p, apex)));
        if k < n {
            covers.push((apex, perm[k]));
        }
        covers.extend((k + 2..=n).map(|j| (perm[j - 2], perm[j - 1])));
    }
    covers.sort_unstable();
    Ok(VertexPoset {
        ground_size: n + 1,
        covers,
    })
}

/// Number of covers `i < j` (in the poset) with `i > j` as integers.
pub fn descents(q: &VertexPoset) -> usize {
    q.covers.iter().filter(|(i, j)| i > j).count()
}

/// Closed form: the binomial Eulerian polynomial, minus `n z A_{n-1}(z)`
/// when `b_1 = 1`.
pub fn h_polynomial(b: &BVector) -> IntPolynomial {
    let n = b.n();
    let full = binomial_eulerian(n);
    if b.is_classical() {
        &full - &eulerian(n - 1).scale(&Int::from(n)).shift(1)
    } else {
        full
    }
}

/// `sum_v z^{des(Q_v)}` over all vertices.
pub fn h_polynomial_by_descents(b: &BVector) -> IntPolynomial {
    let mut counts = vec![Int::zero(); b.n() + 1];
    for v in vertices(b) {
        let q = vertex_poset(b, &v).expect("enumerated vertex");
        counts[descents(&q)] += 1;
    }
    IntPolynomial::new(counts)
}

/// Stirling numbers of the second kind.
pub fn stirling2(m: usize, k: usize) -> Int {
    let mut row = vec![Int::one()];
    for i in 1..=m {
        let mut next = vec![Int::zero(); i + 1];
        for j in 1..=i {
            if j < row.len() {
                next[j] += Int::from(j) * &row[j];
            }
            next[j] += &row[j - 1];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// `(f_0, .., f_n)` by the Stirling-number sums; `f_n = 1`.
pub fn f_vector(b: &BVector) -> Vec<Int> {
    let n = b.n();
    (0..=n)
        .map(|k| {
            (0..=n - k)
                .filter(|&j| !(b.is_classical() && j == 1))
                .map(|j| {
                    binomial(Int::from(n), Int::from(j))
                        * factorial(n - k - j)
                        * stirling2(n - j + 1, n - k - j + 1)
                })
                .sum()
        })
        .collect()
}

/// `f(t) = h(t + 1)`, padded to length `n + 1`.
pub fn f_from_h(h: &IntPolynomial, n: usize) -> Vec<Int> {
    let f = h.translate_by_one();
    (0..=n).map(|i| f.coeff(i)).collect()
}

/// `sum_i (-1)^i f_i`.
pub fn euler_characteristic(f: &[Int]) -> Int {
    f.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::Point;

    fn bv(v: &[i64]) -> BVector {
        BVector::new(v.iter().copied()).unwrap()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                q.insert(slot, k - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn eulerian_matches_descent_count() {
        for k in 0..=7 {
            let mut counts = vec![0i64; k.max(1)];
            for p in permutations(k) {
                counts[p.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
            }
            assert_eq!(eulerian(k), poly(&counts), "k = {k}");
        }
        assert_eq!(eulerian(3), poly(&[1, 4, 1]));
    }

    #[test]
    fn binomial_eulerian_small() {
        assert_eq!(binomial_eulerian(1), poly(&[1, 1]));
        assert_eq!(binomial_eulerian(2), poly(&[1, 3, 1]));
        assert_eq!(binomial_eulerian(3), poly(&[1, 7, 7, 1]));
    }

    #[test]
    fn poset_shapes() {
        let b = bv(&[2, 3, 4]);
        let q = vertex_poset(&b, &VertexDescriptor::identity(&b, 3).unwrap()).unwrap();
        assert_eq!(q.covers, vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(descents(&q), 0);
        let q = vertex_poset(&b, &VertexDescriptor::identity(&b, 0).unwrap()).unwrap();
        assert_eq!(q.covers, vec![(0, 1), (1, 2), (3, 0)]);
        assert_eq!(descents(&q), 1);

        let b = bv(&[1, 2, 3]);
        let q = vertex_poset(&b, &VertexDescriptor::identity(&b, 1).unwrap()).unwrap();
        assert_eq!(q.covers, vec![(0, 1), (1, 2), (3, 1)]);
        let v = VertexDescriptor::from_point(&b, &Point::from_i64s(&[6, 3, 1])).unwrap();
        let q = vertex_poset(&b, &v).unwrap();
        assert_eq!(q.covers, vec![(1, 0), (2, 1), (3, 1)]);
        assert_eq!(descents(&q), 3);
        assert!(q.is_acyclic());
    }

    #[test]
    fn h_routes() {
        assert_eq!(h_polynomial(&bv(&[2, 3, 4])), poly(&[1, 7, 7, 1]));
        assert_eq!(h_polynomial(&bv(&[1, 2, 3])), poly(&[1, 4, 4, 1]));
        assert_eq!(h_polynomial(&bv(&[2])), poly(&[1, 1]));
        for b in [bv(&[1, 2, 3]), bv(&[2, 3, 4]), bv(&[1, 1, 1, 1]), bv(&[3, 1, 2, 1])] {
            assert_eq!(h_polynomial(&b), h_polynomial_by_descents(&b), "{b}");
        }
        assert_eq!(h_polynomial(&bv(&[1, 5, 7])), h_polynomial(&bv(&[1, 1, 1])));
    }

    #[test]
    fn f_routes() {
        assert_eq!(f_vector(&bv(&[2, 3, 4])), ints(&[16, 24, 10, 1]));
        assert_eq!(f_vector(&bv(&[1, 2, 3])), ints(&[10, 15, 7, 1]));
        assert_eq!(f_vector(&bv(&[2])), ints(&[2, 1]));
        for b in [bv(&[1, 2, 3]), bv(&[2, 3, 4]), bv(&[1, 1, 1, 1, 1]), bv(&[2, 2, 2, 2])] {
            let f = f_vector(&b);
            assert_eq!(f, f_from_h(&h_polynomial(&b), b.n()));
            assert_eq!(euler_characteristic(&f), Int::one());
        }
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = poly(&[1, 4, 4, 1]);
        assert_eq!(p.translate_by_one(), poly(&[10, 15, 7, 1]));
        assert_eq!(p.eval(&Int::from(1)), Int::from(10));
        assert!(p.is_palindromic());
        assert_eq!(&(&p * &poly(&[1, 1])) - &p, p.shift(1));
        assert_eq!(poly(&[1, -2, 0, 3]).to_string(), "1 - 2z + 3z^3");
        assert_eq!(poly(&[0, 0]).degree(), None);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), Int::from(7));
        assert_eq!(stirling2(5, 3), Int::from(25));
        assert_eq!(stirling2(0, 0), Int::one());
        assert_eq!(stirling2(3, 0), Int::zero());
    }
}
