//! Fraction-free (Bareiss) row echelon rank over `Z` and `Z[i]`.
//!
//! Rows over `Q(i)` are first scaled by the lcm of their denominators.
//! Scaling a row by a nonzero constant never changes the rank, and after
//! that every entry produced by the elimination is a minor of the integer
//! matrix, so each division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::grat::{GInt, GRat};

trait ExactDomain: Clone {
    fn vanishes(&self) -> bool;
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    /// `(a*b - c*d) / e`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero_elem() -> Self {
        Zero::zero()
    }

    fn one_elem() -> Self {
        One::one()
    }

    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self {
        let num = a * b - c * d;
        if e.is_one() {
            num
        } else {
            debug_assert!(Zero::is_zero(&(&num % e)));
            num / e
        }
    }
}

impl ExactDomain for GInt {
    fn vanishes(&self) -> bool {
        GInt::is_zero(self)
    }

    fn zero_elem() -> Self {
        GInt {
            re: Zero::zero(),
            im: Zero::zero(),
        }
    }

    fn one_elem() -> Self {
        GInt::one()
    }

    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Self {
        let num = a.mul(b).sub(&c.mul(d));
        if Zero::is_zero(&e.im) && e.re.is_one() {
            num
        } else {
            num.div_exact(e)
        }
    }
}

fn bareiss_rank<T: ExactDomain>(mut m: Vec<Vec<T>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = T::one_elem();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].vanishes()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = T::cross_div(pivot, &row[j], &lead, &pivot_row[j], &prev);
            }
            row[col] = T::zero_elem();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

fn row_denominator_lcm(row: &[GRat]) -> BigInt {
    row.iter().fold(<BigInt as One>::one(), |acc, x| {
        acc.lcm(x.re().denom()).lcm(x.im().denom())
    })
}

/// Exact rank of a matrix with Gaussian-rational entries.
pub fn matrix_rank(rows: &[Vec<GRat>]) -> usize {
    let live: Vec<&Vec<GRat>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if live.is_empty() {
        return 0;
    }
    let real = live.iter().all(|r| r.iter().all(GRat::is_real));
    if real {
        let m = live
            .iter()
            .map(|r| {
                let l = row_denominator_lcm(r);
                r.iter()
                    .map(|x| x.re().numer() * (&l / x.re().denom()))
                    .collect()
            })
            .collect();
        rank_integer_rows(m)
    } else {
        let m = live
            .iter()
            .map(|r| {
                let l = row_denominator_lcm(r);
                r.iter()
                    .map(|x| GInt {
                        re: x.re().numer() * (&l / x.re().denom()),
                        im: x.im().numer() * (&l / x.im().denom()),
                    })
                    .collect()
            })
            .collect();
        bareiss_rank::<GInt>(m)
    }
}

/// Exact rank of an integer matrix.
pub fn rank_integer_rows(rows: Vec<Vec<BigInt>>) -> usize {
    bareiss_rank(rows)
}
