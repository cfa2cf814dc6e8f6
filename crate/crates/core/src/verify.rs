//! Batch verification suites.
//!
//! Each suite returns per-case records and a summary. Randomized suites
//! derive every generator from `(seed, case)` substreams and collect
//! parallel results in case order, so reports depend only on the config.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::{op_minus, verify_shift_identity, ShiftIdentityCounterexample};
use crate::error::{domain, Result};
use crate::gap::{classify_gap, gap_argument_inputs, verify_gap_argument, GapCase, GapVerdict};
use crate::hermitian::{orthogonality_certificate, sharpness_map};
use crate::poly::{
    green_sample, homogeneous_dim, image_span_dim, monomial_basis, random_hyperplane,
    verify_restriction_theorem, GRat, Hyperplane, Poly, PolySubspace,
};
use crate::rng::{substream2, Rng};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub seed: Option<u64>,
    pub checks: u64,
    pub violations: u64,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport<R> {
    pub summary: Summary,
    pub records: Vec<R>,
}

pub type Lemma3Report = SuiteReport<ShiftIdentityCounterexample>;

/// Exhaustive shift identity; records are the counterexamples.
pub fn lemma3(m_max: u32, k_max: u32) -> Result<Lemma3Report> {
    let r = verify_shift_identity(m_max, k_max)?;
    Ok(SuiteReport {
        summary: Summary {
            suite: "lemma3",
            seed: None,
            checks: r.checks,
            violations: r.counterexamples.len() as u64,
        },
        records: r.counterexamples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceKind {
    MonomialSubset,
    LexSegment,
    RandomSpan,
}

#[derive(Debug, Clone)]
pub struct GreenConfig {
    /// Projective dimensions `n` (so `n + 1` variables).
    pub dims: Vec<u32>,
    pub degrees: Vec<u32>,
    pub subspaces: u32,
    pub hyperplanes: u32,
    pub seed: u64,
}

impl Default for GreenConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3],
            degrees: vec![2, 3],
            subspaces: 200,
            hyperplanes: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenCase {
    pub n: u32,
    pub d: u32,
    pub index: u32,
    pub kind: SubspaceKind,
    pub rank: u64,
    pub c: u64,
    pub bound: u64,
    pub min_c_h: u64,
    pub holds: bool,
}

fn random_coeff(rng: &mut Rng) -> GRat {
    GRat::from_int(rng.gen_range(-9i64..=9))
}

/// Generators of a random subspace of `H_{d,n}`. The kind cycles with the
/// index.
fn random_subspace(rng: &mut Rng, n_vars: usize, d: u32, index: u32) -> (SubspaceKind, Vec<Poly>) {
    let basis = monomial_basis(n_vars, d);
    let dim = basis.len();
    match index % 3 {
        0 => {
            let keep = rng.gen_range(0.0..1.0);
            let polys = basis
                .into_iter()
                .filter(|_| rng.gen_bool(keep))
                .map(|m| Poly::term(m, GRat::one()))
                .collect();
            (SubspaceKind::MonomialSubset, polys)
        }
        1 => {
            let len = rng.gen_range(0..=dim);
            let polys = basis.into_iter().take(len).map(|m| Poly::term(m, GRat::one())).collect();
            (SubspaceKind::LexSegment, polys)
        }
        _ => {
            let count = rng.gen_range(1..=dim);
            let polys = (0..count)
                .map(|_| {
                    let support = rng.gen_range(1..=dim.min(6));
                    let mut p = Poly::zero(n_vars);
                    for m in basis.choose_multiple(rng, support) {
                        p.add_term(m.clone(), random_coeff(rng));
                    }
                    p
                })
                .collect();
            (SubspaceKind::RandomSpan, polys)
        }
    }
}

fn pair_stream(n: u32, d: u32) -> u64 {
    (u64::from(n) << 16) | u64::from(d)
}

pub fn green(cfg: &GreenConfig) -> Result<SuiteReport<GreenCase>> {
    if cfg.hyperplanes == 0 {
        return Err(domain("need at least one hyperplane per subspace"));
    }
    if cfg.dims.contains(&0) || cfg.degrees.contains(&0) {
        return Err(domain("n and d must be positive"));
    }
    let jobs: Vec<(u32, u32, u32)> = cfg
        .dims
        .iter()
        .flat_map(|&n| cfg.degrees.iter().map(move |&d| (n, d)))
        .flat_map(|(n, d)| (0..cfg.subspaces).map(move |i| (n, d, i)))
        .collect();
    let records = jobs
        .into_par_iter()
        .map(|(n, d, i)| {
            let n_vars = n as usize + 1;
            let stream = pair_stream(n, d);
            let mut rng = substream2(cfg.seed, stream, 2 * u64::from(i));
            let (kind, polys) = random_subspace(&mut rng, n_vars, d, i);
            let w = PolySubspace::new(n_vars, d, polys)?;
            let mut hrng = substream2(cfg.seed, stream, 2 * u64::from(i) + 1);
            let hs: Vec<Hyperplane> = (0..cfg.hyperplanes)
                .map(|_| random_hyperplane(&mut hrng, n_vars))
                .collect();
            let s = green_sample(&w, &hs)?;
            Ok(GreenCase {
                n,
                d,
                index: i,
                kind,
                rank: homogeneous_dim(n_vars, d)? - s.c,
                c: s.c,
                bound: s.bound,
                min_c_h: s.min_c_h,
                holds: s.holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        summary: Summary {
            suite: "green",
            seed: Some(cfg.seed),
            checks: records.len() as u64,
            violations: records.iter().filter(|r| !r.holds).count() as u64,
        },
        records,
    })
}

#[derive(Debug, Clone)]
pub struct RestrictionConfig {
    /// Veronese maps for `1 ≤ n ≤ max_n`, `1 ≤ d ≤ max_degree`.
    pub max_n: u32,
    pub max_degree: u32,
    /// Random maps per `(n, d)`, for `n, d ≤ 3`.
    pub random_maps: u32,
    pub trials: u32,
    pub seed: u64,
}

impl Default for RestrictionConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            max_degree: 4,
            random_maps: 5,
            trials: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Veronese,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionCase {
    pub n: u32,
    pub d: u32,
    pub kind: MapKind,
    pub index: u32,
    pub components: usize,
    pub span_dim: u64,
    pub bound: u64,
    pub max: i64,
    /// For Veronese maps: `C(n-1+d, d) - 1`, which must equal both the
    /// bound and the sampled maximum.
    pub expected: Option<u64>,
    pub holds: bool,
}

const RANDOM_MAP_LIMIT: u32 = 3;

fn random_map(rng: &mut Rng, n_vars: usize, d: u32) -> Vec<Poly> {
    let basis = monomial_basis(n_vars, d);
    let count = rng.gen_range(2..=basis.len() + 1);
    let mut comps: Vec<Poly> = (0..count)
        .map(|_| {
            let mut p = Poly::zero(n_vars);
            let support = rng.gen_range(1..=3);
            for m in basis.choose_multiple(rng, support) {
                p.add_term(m.clone(), random_coeff(rng));
            }
            p
        })
        .collect();
    if comps.iter().all(Poly::is_zero) {
        comps[0] = Poly::term(basis[0].clone(), GRat::one());
    }
    comps
}

pub fn restriction(cfg: &RestrictionConfig) -> Result<SuiteReport<RestrictionCase>> {
    let mut jobs = Vec::new();
    for n in 1..=cfg.max_n {
        for d in 1..=cfg.max_degree {
            jobs.push((n, d, MapKind::Veronese, 0));
        }
    }
    for n in 1..=cfg.max_n.min(RANDOM_MAP_LIMIT) {
        for d in 1..=cfg.max_degree.min(RANDOM_MAP_LIMIT) {
            for i in 0..cfg.random_maps {
                jobs.push((n, d, MapKind::Random, i));
            }
        }
    }
    let records = jobs
        .into_par_iter()
        .enumerate()
        .map(|(job, (n, d, kind, index))| {
            let n_vars = n as usize + 1;
            let (comps, expected) = match kind {
                MapKind::Veronese => {
                    let comps: Vec<Poly> = monomial_basis(n_vars, d)
                        .into_iter()
                        .map(|m| Poly::term(m, GRat::one()))
                        .collect();
                    (comps, Some(homogeneous_dim(n_vars - 1, d)? - 1))
                }
                MapKind::Random => {
                    let mut rng = substream2(cfg.seed, pair_stream(n, d), u64::from(index));
                    (random_map(&mut rng, n_vars, d), None)
                }
            };
            // hyperplanes for each case come from their own seed
            let trial_seed = cfg.seed ^ ((job as u64 + 1) << 40);
            let r = verify_restriction_theorem(&comps, cfg.trials, trial_seed)?;
            let holds = r.holds
                && expected.is_none_or(|e| r.bound == e && r.max == e as i64);
            Ok(RestrictionCase {
                n,
                d,
                kind,
                index,
                components: comps.len(),
                span_dim: r.span_dim,
                bound: r.bound,
                max: r.max,
                expected,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        summary: Summary {
            suite: "restriction",
            seed: Some(cfg.seed),
            checks: records.len() as u64,
            violations: records.iter().filter(|r| !r.holds).count() as u64,
        },
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapArgumentViolation {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub sum: u64,
    pub closed_form: u64,
    pub n_prime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapArgumentSuite {
    pub summary: Summary,
    pub case_i: u64,
    pub case_ii: u64,
    pub records: Vec<GapArgumentViolation>,
}

/// Every admissible `(n, a, b)` with `n ≤ max_n`. A violation is a false
/// verdict or a sum that disagrees with the case's closed form.
pub fn gap_argument(max_n: u64) -> Result<GapArgumentSuite> {
    let mut suite = GapArgumentSuite {
        summary: Summary {
            suite: "gap-argument",
            seed: None,
            checks: 0,
            violations: 0,
        },
        case_i: 0,
        case_ii: 0,
        records: Vec::new(),
    };
    for n in 1..=max_n {
        for (a, b) in gap_argument_inputs(n) {
            let r = verify_gap_argument(n, a, b)?;
            suite.summary.checks += 1;
            match r.case {
                GapCase::I => suite.case_i += 1,
                GapCase::II => suite.case_ii += 1,
            }
            if !r.verdict || !r.closed_form_matches() {
                suite.records.push(GapArgumentViolation {
                    n,
                    a,
                    b,
                    sum: r.sum,
                    closed_form: r.closed_form,
                    n_prime: r.n_prime,
                });
            }
        }
    }
    suite.summary.violations = suite.records.len() as u64;
    Ok(suite)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessCase {
    pub k: u64,
    pub n: u64,
    pub components: u64,
    pub rank: u64,
    pub orthogonal: bool,
    pub quotient_matches: bool,
    pub span_dim: u64,
    /// Verdict at `kn + k`, expected `in-gap k`.
    pub at_lower_end: GapVerdict,
    /// Verdict at `kn + k - 1`, expected `not-in-gap`.
    pub below: GapVerdict,
    pub holds: bool,
}

/// `Σ_{j<k} z_j² w̃_j²` in the `2(n+1)` certificate variables.
fn sharpness_quotient(k: usize, n: usize) -> Poly {
    let vars = 2 * (n + 1);
    let mut q = Poly::zero(vars);
    for j in 0..k {
        let mut e = vec![0; vars];
        e[j] = 2;
        e[n + 1 + j] = 2;
        q = q.add(&Poly::monomial(e));
    }
    q
}

pub fn sharpness_case(k: u64, n: u64) -> Result<SharpnessCase> {
    let f = sharpness_map(k as usize, n as usize)?;
    let expected = k * n + k;
    let components = f.components().len() as u64;
    let rank = PolySubspace::from_polys(f.components().to_vec())?.rank() as u64;
    let cert = orthogonality_certificate(&f)?;
    let quotient_matches = cert.quotient.as_ref() == Some(&sharpness_quotient(k as usize, n as usize));
    let span_dim = image_span_dim(f.components())?;
    let at_lower_end = classify_gap(n, expected);
    let below = classify_gap(n, expected - 1);
    let holds = components == expected
        && rank == expected
        && cert.orthogonal
        && quotient_matches
        && span_dim == expected - 1
        && at_lower_end == GapVerdict::InGap { k }
        && below == GapVerdict::NotInGap;
    Ok(SharpnessCase {
        k,
        n,
        components,
        rank,
        orthogonal: cert.orthogonal,
        quotient_matches,
        span_dim,
        at_lower_end,
        below,
        holds,
    })
}

/// All `1 ≤ k ≤ max_k`, `k(k+1) < n ≤ max_n`.
pub fn sharpness(max_k: u64, max_n: u64) -> Result<SuiteReport<SharpnessCase>> {
    let jobs: Vec<(u64, u64)> = (1..=max_k)
        .flat_map(|k| (k * (k + 1) + 1..=max_n).map(move |n| (k, n)))
        .collect();
    let records = jobs
        .into_par_iter()
        .map(|(k, n)| sharpness_case(k, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        summary: Summary {
            suite: "sharpness",
            seed: None,
            checks: records.len() as u64,
            violations: records.iter().filter(|r| !r.holds).count() as u64,
        },
        records,
    })
}

/// `N^-<n>` for the span dimension of a full degree-`d` monomial map on
/// `P^n`.
pub fn veronese_bound(n: u32, d: u32) -> Result<u64> {
    op_minus(homogeneous_dim(n as usize + 1, d)? - 1, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_green_run_is_clean_and_deterministic() {
        let cfg = GreenConfig {
            dims: vec![2],
            degrees: vec![2],
            subspaces: 12,
            hyperplanes: 5,
            seed: 3,
        };
        let a = green(&cfg).unwrap();
        assert_eq!(a.summary.checks, 12);
        assert!(a.summary.passed());
        assert_eq!(a, green(&cfg).unwrap());
        let kinds: Vec<_> = a.records.iter().take(3).map(|r| r.kind).collect();
        assert_eq!(kinds, [SubspaceKind::MonomialSubset, SubspaceKind::LexSegment, SubspaceKind::RandomSpan]);
    }

    #[test]
    fn restriction_small() {
        let cfg = RestrictionConfig {
            max_n: 2,
            max_degree: 2,
            random_maps: 2,
            trials: 4,
            seed: 1,
        };
        let r = restriction(&cfg).unwrap();
        assert_eq!(r.summary.checks, 4 + 8);
        assert!(r.summary.passed(), "{:?}", r.records);
        let v22 = r.records.iter().find(|c| c.n == 2 && c.d == 2).unwrap();
        assert_eq!((v22.span_dim, v22.bound, v22.max), (5, 2, 2));
    }

    #[test]
    fn gap_argument_covers_both_cases() {
        let s = gap_argument(20).unwrap();
        assert!(s.summary.passed());
        assert!(s.case_i > 0 && s.case_ii > 0);
        assert_eq!(s.case_i + s.case_ii, s.summary.checks);
    }

    #[test]
    fn sharpness_small() {
        let s = sharpness(2, 8).unwrap();
        // k=1: n=3..8, k=2: n=7..8
        assert_eq!(s.summary.checks, 8);
        assert!(s.summary.passed(), "{:?}", s.records);
    }

    #[test]
    fn lemma3_small() {
        let r = lemma3(3, 3).unwrap();
        assert!(r.summary.passed());
        assert!(r.summary.checks > 0);
    }

    #[test]
    fn veronese_bound_values() {
        assert_eq!(veronese_bound(2, 2).unwrap(), 2);
        assert_eq!(veronese_bound(2, 1).unwrap(), 1);
    }
}
