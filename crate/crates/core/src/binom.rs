//! Exact binomial coefficients and Macaulay representations.
//!
//! Every positive integer `A` has a unique `n`-th Macaulay representation
//!
//! ```text
//! A = C(a_n, n) + C(a_{n-1}, n-1) + ... + C(a_δ, δ),   a_n > ... > a_δ ≥ δ ≥ 1
//! ```
//!
//! found greedily. The three index shifts on that representation are
//!
//! * [`BinomTable::lower`]: `A_<n>  = Σ C(a_j - 1, j)`
//! * [`BinomTable::minus`]: `A^-<n> = Σ C(a_j - 1, j - 1)`
//! * [`BinomTable::upper`]: `A^<n>  = Σ C(a_j + 1, j + 1)`
//!
//! all evaluated with the convention `C(a, b) = 0` whenever `a < b` or
//! `b = 0`. The table itself is Pascal-correct (`C(a, 0) = 1`); the
//! convention lives in [`BinomTable::binom`] only.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};

pub const DEFAULT_BOUND: u32 = 256;

static GLOBAL: OnceLock<BinomTable> = OnceLock::new();

/// Build-once, read-many cache of `C(a, b)` for `0 ≤ b ≤ a ≤ bound`.
#[derive(Debug, Clone)]
pub struct BinomTable {
    bound: u32,
    rows: Vec<Vec<BigUint>>,
}

impl BinomTable {
    pub fn new(bound: u32) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(bound as usize + 1);
        rows.push(vec![BigUint::from(1u32)]);
        for a in 1..=bound as usize {
            let prev = &rows[a - 1];
            let mut row = Vec::with_capacity(a + 1);
            row.push(BigUint::from(1u32));
            for b in 1..a {
                row.push(&prev[b - 1] + &prev[b]);
            }
            row.push(BigUint::from(1u32));
            rows.push(row);
        }
        Self { bound, rows }
    }

    /// Shared table, built on first use with [`DEFAULT_BOUND`] unless
    /// [`BinomTable::set_global_bound`] ran first.
    pub fn global() -> &'static BinomTable {
        GLOBAL.get_or_init(|| BinomTable::new(DEFAULT_BOUND))
    }

    /// Fixes the bound of the shared table. Fails once the table exists
    /// with a different bound.
    pub fn set_global_bound(bound: u32) -> Result<()> {
        let table = GLOBAL.get_or_init(|| BinomTable::new(bound));
        if table.bound != bound {
            return Err(domain(format!("binomial table already built with bound {}", table.bound)));
        }
        Ok(())
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Pascal-triangle value, `C(a, 0) = 1` and `C(a, b) = 0` for `b > a`.
    pub fn pascal(&self, a: u64, b: u64) -> Result<BigUint> {
        if b > a {
            return Ok(BigUint::zero());
        }
        if a <= self.bound as u64 {
            return Ok(self.rows[a as usize][b as usize].clone());
        }
        // Past the table: exact product formula, allowed while the shorter
        // side fits in the table so the work stays bounded.
        let k = b.min(a - b);
        if k > self.bound as u64 {
            return Err(Error::Capacity {
                a,
                b,
                bound: self.bound,
            });
        }
        let mut v = BigUint::from(1u32);
        for i in 0..k {
            v = v * BigUint::from(a - i) / BigUint::from(i + 1);
        }
        Ok(v)
    }

    fn pascal_ref(&self, a: u32, b: u32) -> &BigUint {
        &self.rows[a as usize][b as usize]
    }

    /// Binomial coefficient under the representation convention:
    /// zero when `b = 0` or `a < b`.
    pub fn binom(&self, a: u64, b: u64) -> Result<BigUint> {
        if b == 0 || a < b {
            return Ok(BigUint::zero());
        }
        self.pascal(a, b)
    }

    /// Greedy `level`-th Macaulay representation of a positive integer.
    pub fn macaulay_rep(&self, value: &BigUint, level: u32) -> Result<MacaulayRep> {
        if value.is_zero() {
            return Err(domain("Macaulay representation needs a positive integer"));
        }
        if level == 0 {
            return Err(domain("Macaulay level must be positive"));
        }
        if level > self.bound {
            return Err(Error::Capacity {
                a: level as u64,
                b: level as u64,
                bound: self.bound,
            });
        }
        let mut rest = value.clone();
        let mut terms = Vec::new();
        let mut j = level;
        while !rest.is_zero() {
            if j == 0 {
                // unreachable for a correct greedy step: C(j, j) = 1 always fits
                return Err(domain("Macaulay greedy ran past level 1"));
            }
            if j == 1 {
                // C(a, 1) = a, so the last term takes whatever is left
                let top = u32::try_from(&rest).map_err(|_| Error::Overflow(rest.to_string()))?;
                terms.push(MacaulayTerm { top, index: 1 });
                break;
            }
            let top = self.largest_top(&rest, j)?;
            rest -= self.pascal(u64::from(top), u64::from(j))?;
            terms.push(MacaulayTerm { top, index: j });
            j -= 1;
        }
        Ok(MacaulayRep { level, terms })
    }

    /// Largest `a ≥ j` with `C(a, j) ≤ rest`; requires `rest ≥ 1`.
    fn largest_top(&self, rest: &BigUint, j: u32) -> Result<u32> {
        let bound = self.bound;
        // C(bound + 1, j) is still computable from the last row.
        let past_end = self.pascal_ref(bound, j) + self.pascal_ref(bound, j - 1);
        if past_end <= *rest {
            return self.largest_top_beyond(rest, j);
        }
        // C(·, j) is strictly increasing on [j, bound] for j ≥ 1.
        let (mut lo, mut hi) = (j, bound);
        if self.pascal_ref(hi, j) <= rest {
            return Ok(hi);
        }
        // invariant: C(lo, j) ≤ rest < C(hi, j)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.pascal_ref(mid, j) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Same search past the table, with directly computed coefficients.
    fn largest_top_beyond(&self, rest: &BigUint, j: u32) -> Result<u32> {
        let c = |a: u64| self.pascal(a, u64::from(j));
        let mut lo = u64::from(self.bound) + 1;
        let mut hi = lo * 2;
        while c(hi)? <= *rest {
            lo = hi;
            hi *= 2;
            if hi > u64::from(u32::MAX) {
                return Err(Error::Overflow(rest.to_string()));
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if c(mid)? <= *rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo as u32)
    }

    fn shifted_sum(
        &self,
        value: &BigUint,
        level: u32,
        shift: impl Fn(u32, u32) -> (i64, i64),
    ) -> Result<BigUint> {
        if value.is_zero() {
            return Ok(BigUint::zero());
        }
        let rep = self.macaulay_rep(value, level)?;
        let mut sum = BigUint::zero();
        for t in &rep.terms {
            let (a, b) = shift(t.top, t.index);
            // a < 0 or b < 0 only arise when b = 0 would already zero the term
            if a < 0 || b <= 0 {
                continue;
            }
            sum += self.binom(a as u64, b as u64)?;
        }
        Ok(sum)
    }

    /// `A_<n>`: top indices decremented.
    pub fn lower(&self, value: &BigUint, level: u32) -> Result<BigUint> {
        self.shifted_sum(value, level, |a, j| (a as i64 - 1, j as i64))
    }

    /// `A^-<n>`: top and lower indices decremented.
    pub fn minus(&self, value: &BigUint, level: u32) -> Result<BigUint> {
        self.shifted_sum(value, level, |a, j| (a as i64 - 1, j as i64 - 1))
    }

    /// `A^<n>`: top and lower indices incremented.
    pub fn upper(&self, value: &BigUint, level: u32) -> Result<BigUint> {
        self.shifted_sum(value, level, |a, j| (a as i64 + 1, j as i64 + 1))
    }
}

/// One summand `C(top, index)` of a Macaulay representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MacaulayTerm {
    pub top: u32,
    pub index: u32,
}

/// The `level`-th Macaulay representation of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MacaulayRep {
    level: u32,
    terms: Vec<MacaulayTerm>,
}

impl MacaulayRep {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Terms in descending index order, starting at `level`.
    pub fn terms(&self) -> &[MacaulayTerm] {
        &self.terms
    }

    /// Smallest retained index δ.
    pub fn delta(&self) -> u32 {
        self.terms.last().map(|t| t.index).unwrap_or(self.level)
    }

    pub fn value(&self, table: &BinomTable) -> Result<BigUint> {
        let mut sum = BigUint::zero();
        for t in &self.terms {
            sum += table.pascal(t.top as u64, t.index as u64)?;
        }
        Ok(sum)
    }

    /// Checks strict decrease of tops, contiguous indices and `top ≥ index`.
    pub fn is_well_formed(&self) -> bool {
        let mut expected = self.level;
        let mut prev_top = u32::MAX;
        for t in &self.terms {
            if t.index != expected || t.index == 0 || t.top < t.index || t.top >= prev_top {
                return false;
            }
            prev_top = t.top;
            expected = expected.wrapping_sub(1);
        }
        !self.terms.is_empty()
    }
}

impl fmt::Display for MacaulayRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "C({},{})", t.top, t.index)?;
        }
        Ok(())
    }
}

pub(crate) fn to_u64(v: &BigUint) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::Overflow(v.to_string()))
}

/// Binomial from the shared table, zero for `b = 0` or `a < b`.
pub fn binom(a: u64, b: u64) -> Result<BigUint> {
    BinomTable::global().binom(a, b)
}

pub fn macaulay_rep(value: u64, level: u32) -> Result<MacaulayRep> {
    BinomTable::global().macaulay_rep(&BigUint::from(value), level)
}

/// `value_<level>` on machine integers.
pub fn op_lower(value: u64, level: u32) -> Result<u64> {
    to_u64(&BinomTable::global().lower(&BigUint::from(value), level)?)
}

/// `value^-<level>` on machine integers.
pub fn op_minus(value: u64, level: u32) -> Result<u64> {
    to_u64(&BinomTable::global().minus(&BigUint::from(value), level)?)
}

/// `value^<level>` on machine integers.
pub fn op_upper(value: u64, level: u32) -> Result<u64> {
    to_u64(&BinomTable::global().upper(&BigUint::from(value), level)?)
}

/// A split `A + B = C(m+k, k) - 1` where `A^-<m> + B_<k>` missed its target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftIdentityCounterexample {
    pub m: u32,
    pub k: u32,
    pub a: u64,
    pub b: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShiftIdentityReport {
    pub m_max: u32,
    pub k_max: u32,
    pub checks: u64,
    pub counterexamples: Vec<ShiftIdentityCounterexample>,
}

impl ShiftIdentityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Exhaustively checks `A^-<m> + B_<k> = C(m+k-1, k) - 1` over every split
/// `A + B = C(m+k, k) - 1`, for `1 ≤ m ≤ m_max`, `1 ≤ k ≤ k_max`.
pub fn verify_shift_identity(m_max: u32, k_max: u32) -> Result<ShiftIdentityReport> {
    if m_max == 0 || k_max == 0 {
        return Err(domain("m_max and k_max must be positive"));
    }
    let table = BinomTable::global();
    let mut report = ShiftIdentityReport {
        m_max,
        k_max,
        ..Default::default()
    };
    for m in 1..=m_max {
        for k in 1..=k_max {
            let total = to_u64(&table.pascal((m + k) as u64, k as u64)?)? - 1;
            let rhs = to_u64(&table.pascal((m + k - 1) as u64, k as u64)?)? - 1;
            for a in 0..=total {
                let b = total - a;
                let lhs = op_minus(a, m)? + op_lower(b, k)?;
                report.checks += 1;
                if lhs != rhs {
                    report.counterexamples.push(ShiftIdentityCounterexample {
                        m,
                        k,
                        a,
                        b,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(value: u64, level: u32) -> Vec<(u32, u32)> {
        macaulay_rep(value, level)
            .unwrap()
            .terms()
            .iter()
            .map(|t| (t.top, t.index))
            .collect()
    }

    #[test]
    fn convention_zeroes_bottom_and_overflowing_index() {
        assert_eq!(binom(5, 0).unwrap(), BigUint::zero());
        assert_eq!(binom(3, 5).unwrap(), BigUint::zero());
        assert_eq!(binom(6, 3).unwrap(), BigUint::from(20u32));
        let t = BinomTable::global();
        assert_eq!(t.pascal(5, 0).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn capacity_is_reported() {
        let t = BinomTable::new(10);
        // past the table, short sides are computed directly
        assert_eq!(t.binom(11, 2).unwrap(), BigUint::from(55u32));
        assert_eq!(t.binom(40, 38).unwrap(), BigUint::from(780u32));
        assert!(matches!(t.binom(30, 15), Err(Error::Capacity { .. })));
        // level 1 never needs the table
        assert_eq!(t.macaulay_rep(&BigUint::from(500u32), 1).unwrap().to_string(), "C(500,1)");
        // past the table at level 2: C(11,2) = 55, C(12,2) = 66
        assert_eq!(t.macaulay_rep(&BigUint::from(60u32), 2).unwrap().to_string(), "C(11,2)+C(5,1)");
        assert_eq!(t.macaulay_rep(&BigUint::from(54u32), 2).unwrap().terms()[0].top, 10);
        // levels beyond the table are refused
        assert!(matches!(t.macaulay_rep(&BigUint::from(5u32), 11), Err(Error::Capacity { .. })));
        assert!(matches!(t.macaulay_rep(&BigUint::from(u64::MAX), 1), Err(Error::Overflow(_))));
    }

    #[test]
    fn large_values_stay_exact() {
        let t = BinomTable::global();
        let c = t.pascal(256, 128).unwrap();
        assert!(c.bits() > 250);
        let rep = t.macaulay_rep(&c, 128).unwrap();
        assert_eq!(rep.terms(), &[MacaulayTerm { top: 256, index: 128 }]);
    }

    #[test]
    fn representation_examples() {
        assert_eq!(rep(8, 3), vec![(4, 3), (3, 2), (1, 1)]);
        assert_eq!(rep(1, 1), vec![(1, 1)]);
        assert_eq!(rep(13, 5), vec![(6, 5), (5, 4), (3, 3), (2, 2)]);
        assert_eq!(macaulay_rep(8, 3).unwrap().to_string(), "C(4,3)+C(3,2)+C(1,1)");
    }

    #[test]
    fn zero_is_rejected_by_rep_but_accepted_by_ops() {
        assert!(matches!(macaulay_rep(0, 3), Err(Error::Domain(_))));
        assert!(macaulay_rep(3, 0).is_err());
        for n in 1..6 {
            assert_eq!(op_lower(0, n).unwrap(), 0);
            assert_eq!(op_minus(0, n).unwrap(), 0);
            assert_eq!(op_upper(0, n).unwrap(), 0);
        }
    }

    #[test]
    fn lower_examples() {
        assert_eq!(op_lower(3, 2).unwrap(), 1);
        for m in 1..50 {
            assert_eq!(op_lower(m, 1).unwrap(), m - 1);
        }
    }

    #[test]
    fn minus_examples() {
        assert_eq!(op_minus(8, 3).unwrap(), 5);
        assert_eq!(op_minus(9, 3).unwrap(), 5);
        // 5 = C(3,2)+C(2,1)
        assert_eq!(op_minus(5, 2).unwrap(), 2);
        assert_eq!(op_minus(13, 5).unwrap(), 11);
    }

    #[test]
    fn upper_examples() {
        assert_eq!(op_upper(2, 2).unwrap(), 2);
        assert_eq!(op_upper(2, 1).unwrap(), 3);
    }

    #[test]
    fn shift_identity_boundary_cases() {
        // m = 2, k = 2, A = 2, B = 3
        assert_eq!(op_minus(2, 2).unwrap() + op_lower(3, 2).unwrap(), 2);
        // m = 1: A^-<1> is always zero and B ≤ k gives B_<k> = 0
        for k in 1..8u32 {
            for b in 0..=k as u64 {
                assert_eq!(op_lower(b, k).unwrap(), 0);
            }
        }
        // k = 1, A = 0, B = m
        for m in 1..10u32 {
            assert_eq!(op_minus(0, m).unwrap() + op_lower(m as u64, 1).unwrap(), m as u64 - 1);
        }
    }

    #[test]
    fn shift_identity_small_range() {
        let r = verify_shift_identity(4, 4).unwrap();
        assert!(r.holds(), "{:?}", r.counterexamples);
        assert!(r.checks > 100);
        assert!(verify_shift_identity(0, 3).is_err());
    }

    #[test]
    fn well_formedness() {
        let r = macaulay_rep(300, 4).unwrap();
        assert!(r.is_well_formed());
        assert_eq!(r.value(BinomTable::global()).unwrap(), BigUint::from(300u32));
        assert!(r.delta() >= 1);
    }
}
