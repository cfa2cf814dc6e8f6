//! Canonical forms `N(n; a, b)`, the descent of dimension bounds, gap
//! intervals `J_k`, and the plane propagation rule.
//!
//! For `n + 1 ≤ N < C(n+2, 2)` the `n`-th Macaulay representation of `N`
//! has the shape
//!
//! ```text
//! N(n; a, b) = C(n+1, n) + ... + C(n-a+1, n-a) + b,   0 ≤ b ≤ n - a - 1
//! ```
//!
//! whose closed form is `(a+1)(n+1) - a(a+1)/2 + b`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::binom::{macaulay_rep, op_minus, op_upper};
use crate::error::{domain, Result};

/// The triple `(n, a, b)` standing for `N(n; a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NabForm {
    n: u64,
    a: u64,
    b: u64,
}

impl NabForm {
    /// Requires `n ≥ 1`, `a ≤ n - 1` and `b ≤ n - a - 1`.
    pub fn new(n: u64, a: u64, b: u64) -> Result<Self> {
        if n == 0 || a >= n || b > n - a - 1 {
            return Err(domain(format!(
                "N({n};{a},{b}) is not admissible: need n ≥ 1 and b ≤ n-a-1"
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn value(&self) -> u64 {
        nab_closed_form(self.n, self.a, self.b)
    }
}

impl fmt::Display for NabForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({};{},{})", self.n, self.a, self.b)
    }
}

fn nab_closed_form(n: u64, a: u64, b: u64) -> u64 {
    (a + 1) * (n + 1) - a * (a + 1) / 2 + b
}

pub fn nab_value(form: &NabForm) -> u64 {
    form.value()
}

/// Inverse of [`nab_value`] at level `n`; `None` outside `[n+1, C(n+2,2))`.
pub fn nab_decompose(value: u64, n: u64) -> Option<NabForm> {
    if n == 0 || value < n + 1 || value >= (n + 2) * (n + 1) / 2 {
        return None;
    }
    // N(n; a, 0) is increasing in a; take the last one not above `value`.
    let mut a = 0;
    while a + 1 < n && nab_closed_form(n, a + 1, 0) <= value {
        a += 1;
    }
    let b = value - nab_closed_form(n, a, 0);
    NabForm::new(n, a, b).ok()
}

/// `N(n;a,b)^-<n>` expressed at level `n - 1`.
pub fn nab_minus(form: &NabForm) -> Result<NabForm> {
    let NabForm { n, a, b } = *form;
    let slack = n - a - b;
    if slack >= 2 {
        NabForm::new(n - 1, a, b)
    } else if slack == 1 && b >= 1 {
        NabForm::new(n - 1, a, b - 1)
    } else {
        Err(domain(format!(
            "{form} has n-a-b = {slack} with b = {b}; no level n-1 form applies"
        )))
    }
}

/// Lower bounds `D_m` for the span of a general `m`-plane, `a+1 ≤ m ≤ n-1`,
/// for a nondegenerate map into `P^N(n;a,b)`.
pub fn dim_prop_bounds(form: &NabForm) -> BTreeMap<u64, u64> {
    let NabForm { n, a, b } = *form;
    (a + 1..n)
        .map(|m| {
            let bound = if m > a + b {
                nab_closed_form(m, a, b)
            } else {
                nab_closed_form(m, a, m - a - 1)
            };
            (m, bound)
        })
        .collect()
}

/// `J_k = [kn+k, (k+1)n - (k²+1)]`, nonempty exactly when `n > k(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapInterval {
    pub n: u64,
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
}

impl GapInterval {
    pub fn new(n: u64, k: u64) -> Option<Self> {
        if k == 0 || n <= k * (k + 1) {
            return None;
        }
        Some(Self {
            n,
            k,
            lo: k * n + k,
            hi: (k + 1) * n - (k * k + 1),
        })
    }

    pub fn contains(&self, value: u64) -> bool {
        self.lo <= value && value <= self.hi
    }
}

impl fmt::Display for GapInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J_{}=[{},{}]", self.k, self.lo, self.hi)
    }
}

/// Where a comparison interval comes from. `I_k` is the conjectured range;
/// only `I_1`, `I_2`, `I_3` are established results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConjecturalCited,
}

/// `I_k = [kn+1, (k+1)n - k(k+1)/2 - 1]`, defined when `k(k+1)/2 < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComparisonInterval {
    pub n: u64,
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
    pub provenance: Provenance,
}

impl ComparisonInterval {
    pub fn new(n: u64, k: u64) -> Option<Self> {
        if k == 0 || k * (k + 1) / 2 >= n {
            return None;
        }
        Some(Self {
            n,
            k,
            lo: k * n + 1,
            hi: (k + 1) * n - k * (k + 1) / 2 - 1,
            provenance: Provenance::ConjecturalCited,
        })
    }
}

impl fmt::Display for ComparisonInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}=[{},{}] (conjectural, cited)", self.k, self.lo, self.hi)
    }
}

/// All nonempty `J_k`, ascending in `k`.
pub fn gap_intervals(n: u64) -> Vec<GapInterval> {
    (1..).map_while(|k| GapInterval::new(n, k)).collect()
}

/// All defined `I_k`, ascending in `k`.
pub fn comparison_intervals(n: u64) -> Vec<ComparisonInterval> {
    (1..).map_while(|k| ComparisonInterval::new(n, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GapVerdict {
    InGap { k: u64 },
    NotInGap,
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapVerdict::InGap { k } => write!(f, "in-gap k={k}"),
            GapVerdict::NotInGap => f.write_str("not-in-gap"),
        }
    }
}

pub fn classify_gap(n: u64, target: u64) -> GapVerdict {
    gap_intervals(n)
        .into_iter()
        .find(|j| j.contains(target))
        .map(|j| GapVerdict::InGap { k: j.k })
        .unwrap_or(GapVerdict::NotInGap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapCase {
    /// `b ≤ n1 - a - 1`
    I,
    /// `n1 - a ≤ b`
    II,
}

/// Arithmetic of the two-orthogonal-subspaces contradiction for one `(n, a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapArgumentReport {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub n1: u64,
    pub n2: u64,
    pub case: GapCase,
    pub d_n1: u64,
    pub d_n2: u64,
    pub sum: u64,
    /// The closed-form value of `D_n1 + D_n2` for the selected case.
    pub closed_form: u64,
    pub n_prime: u64,
    pub verdict: bool,
}

impl GapArgumentReport {
    pub fn closed_form_matches(&self) -> bool {
        self.sum == self.closed_form
    }
}

/// Whether `a(a+1)/2 ≤ b ≤ n - (a²+5a+6)/2`.
pub fn gap_argument_admissible(n: u64, a: u64, b: u64) -> bool {
    2 * b >= a * (a + 1) && 2 * b + a * a + 5 * a + 6 <= 2 * n
}

pub fn verify_gap_argument(n: u64, a: u64, b: u64) -> Result<GapArgumentReport> {
    if !gap_argument_admissible(n, a, b) {
        return Err(domain(format!(
            "(n,a,b)=({n},{a},{b}) violates a(a+1)/2 ≤ b ≤ n-(a²+5a+6)/2"
        )));
    }
    let form = NabForm::new(n, a, b)?;
    let n1 = (n - 1) / 2;
    let n2 = if n % 2 == 1 { n1 } else { n1 + 1 };
    debug_assert_eq!(n1 + n2 + 1, n);
    let case = if b + a < n1 { GapCase::I } else { GapCase::II };
    let bounds = dim_prop_bounds(&form);
    let lookup = |m: u64| {
        bounds
            .get(&m)
            .copied()
            .ok_or_else(|| domain(format!("no dimension bound at m={m} for {form}")))
    };
    let d_n1 = lookup(n1)?;
    let d_n2 = lookup(n2)?;
    let closed_form = match case {
        GapCase::I => (a + 1) * (n + 1 - a) + 2 * b,
        GapCase::II => (a + 2) * n - (a * a + 2 * a + 2),
    };
    let n_prime = form.value();
    Ok(GapArgumentReport {
        n,
        a,
        b,
        n1,
        n2,
        case,
        d_n1,
        d_n2,
        sum: d_n1 + d_n2,
        closed_form,
        n_prime,
        verdict: d_n1 + d_n2 >= n_prime,
    })
}

/// Every `(a, b)` admissible for the gap argument at level `n`.
pub fn gap_argument_inputs(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..n).flat_map(move |a| {
        let lo = a * (a + 1) / 2;
        (lo..n).filter_map(move |b| gap_argument_admissible(n, a, b).then_some((a, b)))
    })
}

/// Which special case of the one-step propagation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlaneCase {
    /// `ℓ' ≤ ℓ - 1`: the image already sits in an `ℓ'`-plane.
    Degenerate,
    /// `ℓ ≤ ℓ' ≤ 2ℓ - 1`: every step adds exactly one dimension.
    Linear,
}

pub fn plane_case(ell: u64, ell_prime: u64) -> Option<PlaneCase> {
    if ell_prime < ell {
        Some(PlaneCase::Degenerate)
    } else if ell_prime < 2 * ell {
        Some(PlaneCase::Linear)
    } else {
        None
    }
}

/// If `ℓ`-planes go to `ℓ'`-planes then `(ℓ+1)`-planes go to planes of
/// this dimension: `(ℓ'+1)^<ℓ> - 1`.
pub fn plane_step(ell: u64, ell_prime: u64) -> Result<u64> {
    if ell == 0 {
        return Err(domain("plane dimension ℓ must be positive"));
    }
    Ok(op_upper(ell_prime + 1, level(ell)?)? - 1)
}

/// `steps` iterations of [`plane_step`] starting at `(ℓ, ℓ')`.
pub fn plane_chain(ell: u64, ell_prime: u64, steps: u64) -> Result<u64> {
    let mut cur = ell_prime;
    for i in 0..steps {
        cur = plane_step(ell + i, cur)?;
    }
    Ok(cur)
}

/// Closed form `Σ C(λ_j + steps, j + steps) - 1` over the `ℓ`-th Macaulay
/// representation `Σ C(λ_j, j)` of `ℓ' + 1`.
pub fn plane_chain_closed_form(ell: u64, ell_prime: u64, steps: u64) -> Result<u64> {
    let rep = macaulay_rep(ell_prime + 1, level(ell)?)?;
    let table = crate::binom::BinomTable::global();
    let mut sum = num_bigint::BigUint::from(0u32);
    for t in rep.terms() {
        sum += table.binom(t.top as u64 + steps, t.index as u64 + steps)?;
    }
    Ok(crate::binom::to_u64(&sum)? - 1)
}

fn level(ell: u64) -> Result<u32> {
    u32::try_from(ell).map_err(|_| domain(format!("level {ell} too large")))
}

/// One application of `^-<n>` on a raw integer, as a cross-check for
/// [`nab_minus`].
pub fn raw_minus(value: u64, n: u64) -> Result<u64> {
    op_minus(value, level(n)?)
}
