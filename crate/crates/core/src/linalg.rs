//! Exact Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int_row(row: &[BigInt]) -> Vec<Rational> {
    row.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Reduces `rows` in place to row echelon form and returns the rank.
fn echelon(rows: &mut [Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m)
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| int_row(r)).collect();
    echelon(&mut m)
}

/// Dimension of the affine hull of `points` (-1 for the empty set).
pub fn affine_dimension(points: &[Vec<BigInt>]) -> isize {
    let Some(base) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank_int(&diffs) as isize
}

/// Solves `a x = rhs` when it has exactly one solution: `a` must have full
/// column rank (it may have more rows than columns) and the system must be
/// consistent. Returns `None` otherwise.
pub fn solve(a: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    // full column rank puts the pivots on the diagonal; an inconsistent
    // system adds one more pivot in the last column
    let rank = echelon(&mut m);
    if rank != cols || (0..cols).any(|i| !m[i][i].is_one()) {
        return None;
    }
    Some(m.into_iter().take(cols).map(|row| row[cols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_triangular_and_dependent() {
        assert_eq!(rank_int(&ints(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]])), 3);
        assert_eq!(rank_int(&ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_int(&[]), 0);
    }

    #[test]
    fn affine_dimension_of_segment_and_triangle() {
        assert_eq!(affine_dimension(&ints(&[&[1, 1], &[3, 3], &[5, 5]])), 1);
        assert_eq!(affine_dimension(&ints(&[&[0, 0], &[1, 0], &[0, 1]])), 2);
        assert_eq!(affine_dimension(&ints(&[&[4, 4]])), 0);
        assert_eq!(affine_dimension(&[]), -1);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&singular, &[q(1), q(2)]).is_none());
        let tall = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        assert_eq!(solve(&tall, &[q(1), q(2), q(3)]).unwrap(), vec![q(1), q(2)]);
        assert!(solve(&tall, &[q(1), q(2), q(4)]).is_none());
        let wide = vec![vec![q(1), q(1)]];
        assert!(solve(&wide, &[q(1)]).is_none());
    }
}
