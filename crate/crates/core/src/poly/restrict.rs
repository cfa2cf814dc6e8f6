//! Hyperplane restriction of polynomial subspaces and of rational maps.
//!
//! A hyperplane `Σ c_j z_j = 0` is parametrised by eliminating its pivot
//! coordinate, `z_p = -(1/c_p) Σ_{j≠p} c_j z_j`, so a restricted polynomial
//! lives in the remaining `n` coordinates with their original order.
//!
//! "General hyperplane" claims are checked on seeded random samples: the
//! minimum over samples for codimension bounds, the maximum for span bounds.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{GRat, Monomial, Poly, PolySubspace};
use crate::binom::{op_lower, op_minus};
use crate::error::{domain, Error, Result};
use crate::rng::{substream, Rng};

/// Inclusive range of the integer coefficients of sampled hyperplanes.
pub const HYPERPLANE_COEFF_RANGE: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    coeffs: Vec<GRat>,
    pivot: usize,
}

impl Hyperplane {
    /// Uses the first nonzero coefficient as pivot.
    pub fn new(coeffs: Vec<GRat>) -> Result<Self> {
        let pivot = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPivot)?;
        Ok(Self { coeffs, pivot })
    }

    pub fn with_pivot(coeffs: Vec<GRat>, pivot: usize) -> Result<Self> {
        match coeffs.get(pivot) {
            Some(c) if !c.is_zero() => Ok(Self { coeffs, pivot }),
            Some(_) => Err(Error::ZeroPivot),
            None => Err(Error::LengthMismatch {
                expected: pivot + 1,
                found: coeffs.len(),
            }),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| GRat::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GRat] {
        &self.coeffs
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn n_vars(&self) -> usize {
        self.coeffs.len()
    }

    /// The pivot coordinate as a linear form in the other coordinates.
    fn pivot_substitute(&self) -> Poly {
        let m = self.coeffs.len() - 1;
        let scale = -&self.coeffs[self.pivot].inv();
        let mut lin = Poly::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j == self.pivot || c.is_zero() {
                continue;
            }
            let k = if j < self.pivot { j } else { j - 1 };
            lin.add_term(Monomial::var(m, k), c * &scale);
        }
        lin
    }
}

/// Uniform integer coefficients in `[-9, 9]`, resampled while all zero.
pub fn random_hyperplane(rng: &mut Rng, n_vars: usize) -> Hyperplane {
    loop {
        let coeffs: Vec<i64> = (0..n_vars)
            .map(|_| rng.gen_range(-HYPERPLANE_COEFF_RANGE..=HYPERPLANE_COEFF_RANGE))
            .collect();
        if let Ok(h) = Hyperplane::from_ints(&coeffs) {
            return h;
        }
    }
}

struct Substitution {
    powers: Vec<Poly>,
}

impl Substitution {
    fn new(h: &Hyperplane, max_power: u32) -> Self {
        let lin = h.pivot_substitute();
        let mut powers = vec![Poly::constant(lin.n_vars(), GRat::one())];
        for e in 1..=max_power as usize {
            let next = powers[e - 1].mul(&lin);
            powers.push(next);
        }
        Self { powers }
    }

    fn apply(&self, p: &Poly, pivot: usize) -> Poly {
        let m = p.n_vars() - 1;
        let mut out = Poly::zero(m);
        for (mono, c) in p.terms() {
            let mut rest = mono.exps().to_vec();
            let e = rest.remove(pivot);
            let part = self.powers[e as usize].mul_monomial(&Monomial::new(rest), c);
            for (t, k) in part.terms() {
                out.add_term(t.clone(), k.clone());
            }
        }
        out
    }
}

/// Restriction of `p` to `h`, as a polynomial in the `n_vars - 1`
/// non-pivot coordinates.
pub fn restrict(p: &Poly, h: &Hyperplane) -> Result<Poly> {
    Ok(restrict_all(std::slice::from_ref(p), h)?.remove(0))
}

pub fn restrict_all(polys: &[Poly], h: &Hyperplane) -> Result<Vec<Poly>> {
    for p in polys {
        if p.n_vars() != h.n_vars() {
            return Err(Error::VariableCount {
                expected: h.n_vars(),
                found: p.n_vars(),
            });
        }
    }
    if h.coeffs[h.pivot].is_zero() {
        return Err(Error::ZeroPivot);
    }
    if h.n_vars() < 2 {
        return Err(domain("cannot restrict polynomials in fewer than 2 variables"));
    }
    let max_power = polys
        .iter()
        .filter_map(|p| p.degree_in(h.pivot))
        .max()
        .unwrap_or(0);
    let sub = Substitution::new(h, max_power);
    Ok(polys.iter().map(|p| sub.apply(p, h.pivot)).collect())
}

fn restricted_subspace(w: &PolySubspace, h: &Hyperplane) -> Result<PolySubspace> {
    let restricted = restrict_all(w.basis(), h)?;
    PolySubspace::new(w.n_vars() - 1, w.degree(), restricted)
}

/// One hyperplane's comparison of `c_H` against `c_<d>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenRecord {
    pub c: u64,
    pub c_h: u64,
    pub bound: u64,
    pub holds: bool,
}

fn check_green_shape(w: &PolySubspace) -> Result<u32> {
    if w.n_vars() < 2 {
        return Err(domain("need at least 2 homogeneous coordinates"));
    }
    if w.degree() == 0 {
        return Err(domain("degree must be positive"));
    }
    Ok(w.degree())
}

/// Codimension of `W` and of its restriction to `h`, against `c_<d>`. Only a
/// general hyperplane is guaranteed to satisfy the bound.
pub fn verify_green(w: &PolySubspace, h: &Hyperplane) -> Result<GreenRecord> {
    let d = check_green_shape(w)?;
    let c = w.codim()?;
    let c_h = restricted_subspace(w, h)?.codim()?;
    let bound = op_lower(c, d)?;
    Ok(GreenRecord {
        c,
        c_h,
        bound,
        holds: c_h <= bound,
    })
}

/// `c_H` over a batch of hyperplanes; the bound is asserted on the minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenSample {
    pub c: u64,
    pub bound: u64,
    pub c_h: Vec<u64>,
    pub min_c_h: u64,
    pub holds: bool,
}

pub fn green_sample(w: &PolySubspace, hyperplanes: &[Hyperplane]) -> Result<GreenSample> {
    let d = check_green_shape(w)?;
    if hyperplanes.is_empty() {
        return Err(domain("need at least one hyperplane"));
    }
    let c = w.codim()?;
    let bound = op_lower(c, d)?;
    let c_h = hyperplanes
        .iter()
        .map(|h| restricted_subspace(w, h)?.codim())
        .collect::<Result<Vec<_>>>()?;
    let min_c_h = *c_h.iter().min().expect("nonempty");
    Ok(GreenSample {
        c,
        bound,
        c_h,
        min_c_h,
        holds: min_c_h <= bound,
    })
}

/// Projective dimension of the span of the components: `rank - 1`.
pub fn image_span_dim(components: &[Poly]) -> Result<u64> {
    let w = PolySubspace::from_polys(components.to_vec())?;
    match w.rank() {
        0 => Err(domain("all components vanish")),
        r => Ok(r as u64 - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    /// `n` for a map from `P^n`.
    pub n: u64,
    pub degree: u32,
    /// Span dimension `N` of the full image.
    pub span_dim: u64,
    /// `N^-<n>`.
    pub bound: u64,
    /// Restricted span dimension per sampled hyperplane; `-1` if the
    /// restriction vanishes identically.
    pub per_trial: Vec<i64>,
    pub max: i64,
    pub holds: bool,
}

/// Samples `trials` hyperplanes and checks that the best restricted span
/// reaches `N^-<n>`.
pub fn verify_restriction_theorem(
    components: &[Poly],
    trials: u32,
    seed: u64,
) -> Result<RestrictionReport> {
    if trials == 0 {
        return Err(domain("trials must be positive"));
    }
    let w = PolySubspace::from_polys(components.to_vec())?;
    if w.n_vars() < 2 {
        return Err(domain("source must be at least P^1"));
    }
    let n = w.n_vars() as u64 - 1;
    let span_dim = image_span_dim(components)?;
    let bound = op_minus(span_dim, n as u32)?;
    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let h = random_hyperplane(&mut substream(seed, t), w.n_vars());
            Ok(restricted_subspace(&w, &h)?.rank() as i64 - 1)
        })
        .collect::<Result<Vec<i64>>>()?;
    let max = *per_trial.iter().max().expect("trials > 0");
    Ok(RestrictionReport {
        n,
        degree: w.degree(),
        span_dim,
        bound,
        per_trial,
        max,
        holds: max >= bound as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial_basis;

    fn p(n_vars: usize, terms: &[(i64, &[u32])]) -> Poly {
        Poly::from_terms(n_vars, terms.iter().map(|(c, e)| (GRat::from_int(*c), e.to_vec()))).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let h = Hyperplane::from_ints(&[1, 0]).unwrap();
        assert!(restrict(&p(2, &[(1, &[2, 0])]), &h).unwrap().is_zero());

        let h = Hyperplane::from_ints(&[1, -1]).unwrap();
        assert_eq!(restrict(&p(2, &[(1, &[1, 1])]), &h).unwrap(), p(1, &[(1, &[2])]));

        let h = Hyperplane::from_ints(&[1, 1, 1]).unwrap();
        let f = p(3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]);
        assert_eq!(
            restrict(&f, &h).unwrap(),
            p(2, &[(1, &[2, 0]), (3, &[1, 1]), (1, &[0, 2])])
        );
    }

    #[test]
    fn pivot_in_the_middle() {
        // z1 = 2 z0 + z2 on 2z0 - z1 + z2 = 0; z1^2 -> 4z0^2 + 4z0z2 + z2^2
        let h = Hyperplane::with_pivot(
            vec![GRat::from_int(2), GRat::from_int(-1), GRat::from_int(1)],
            1,
        )
        .unwrap();
        let f = p(3, &[(1, &[0, 2, 0])]);
        assert_eq!(
            restrict(&f, &h).unwrap(),
            p(2, &[(4, &[2, 0]), (4, &[1, 1]), (1, &[0, 2])])
        );
    }

    #[test]
    fn zero_pivot_is_rejected() {
        assert_eq!(Hyperplane::from_ints(&[0, 0]), Err(Error::ZeroPivot));
        assert_eq!(
            Hyperplane::with_pivot(vec![GRat::zero(), GRat::one()], 0),
            Err(Error::ZeroPivot)
        );
    }

    #[test]
    fn green_full_space() {
        let full: Vec<Poly> = monomial_basis(3, 2).into_iter().map(|m| Poly::term(m, GRat::one())).collect();
        let w = PolySubspace::new(3, 2, full).unwrap();
        let h = Hyperplane::from_ints(&[2, -3, 5]).unwrap();
        let r = verify_green(&w, &h).unwrap();
        assert_eq!((r.c, r.c_h, r.bound, r.holds), (0, 0, 0, true));
    }

    #[test]
    fn green_codimension_one_restricts_onto() {
        // omit z2^d: c = 1, 1_<d> = 0, so general restriction is surjective
        for d in 1..4 {
            let basis: Vec<Poly> = monomial_basis(3, d)
                .into_iter()
                .filter(|m| m.exps() != [0, 0, d])
                .map(|m| Poly::term(m, GRat::one()))
                .collect();
            let w = PolySubspace::new(3, d, basis).unwrap();
            let hs: Vec<_> = (0..5).map(|t| random_hyperplane(&mut substream(11, t), 3)).collect();
            let s = green_sample(&w, &hs).unwrap();
            assert_eq!((s.c, s.bound, s.min_c_h), (1, 0, 0));
        }
    }

    #[test]
    fn image_span_examples() {
        let f = vec![
            p(2, &[(1, &[2, 0])]),
            p(2, &[(1, &[1, 1])]),
            p(2, &[(1, &[0, 2])]),
            p(2, &[(1, &[2, 0]), (1, &[0, 2])]),
        ];
        assert_eq!(image_span_dim(&f).unwrap(), 2);
        assert!(image_span_dim(&[Poly::zero(2)]).is_err());
    }

    #[test]
    fn restriction_bound_small_cases() {
        let veronese: Vec<Poly> = monomial_basis(3, 2).into_iter().map(|m| Poly::term(m, GRat::one())).collect();
        let r = verify_restriction_theorem(&veronese, 5, 1).unwrap();
        assert_eq!((r.span_dim, r.bound, r.max), (5, 2, 2));
        assert!(r.holds);

        let linear: Vec<Poly> = (0..3).map(|i| Poly::var(3, i)).collect();
        let r = verify_restriction_theorem(&linear, 5, 1).unwrap();
        assert_eq!((r.span_dim, r.bound, r.max), (2, 1, 1));
    }
}
