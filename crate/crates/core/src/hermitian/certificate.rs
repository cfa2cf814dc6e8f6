//! Exact orthogonality certificates for rational maps.
//!
//! With `N` source coordinates, introduce independent variables `w̃` for the
//! conjugates of a second point and work in `2N` variables
//! `(z_0..z_{N-1}, w̃_0..w̃_{N-1})`:
//!
//! ```text
//! P(z, w̃) = Σ_j ε'_j f_j(z) · conj(f_j)(w̃)     target pairing of f(z), f(w)
//! Q(z, w̃) = Σ_i ε_i z_i w̃_i                    source pairing of z, w
//! ```
//!
//! The map is orthogonal iff `Q | P`. For `r + s ≥ 2`, `Q` is irreducible
//! and linear in `w̃_p` with leading coefficient `ε_p z_p`, so divisibility
//! is decided by the pseudo-remainder of `P` by `Q` in `w̃_p`.

use serde::Serialize;

use super::{pairing, sample_orthogonal_pair, SignedMap};
use crate::error::{domain, Error, Result};
use crate::poly::{GRat, Monomial, Poly};
use crate::rng::substream;

const WITNESS_ATTEMPTS: u64 = 256;
const WITNESS_SEED: u64 = 0x5eed;

/// A pair `z ⊥ w` whose images are not orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub z: Vec<GRat>,
    pub w: Vec<GRat>,
    /// `⟨f(z), f(w)⟩`, nonzero.
    pub image_pairing: GRat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthCertificate {
    pub orthogonal: bool,
    /// Source coordinate whose `w̃` variable was eliminated.
    pub pivot: usize,
    /// `P / Q` in the `2N` variables `(z, w̃)` when orthogonal.
    pub quotient: Option<Poly>,
    /// Present when not orthogonal (found by seeded sampling).
    pub witness: Option<Witness>,
}

/// Flat record of a certificate, polynomials in text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub orthogonal: bool,
    pub pivot: usize,
    pub quotient: Option<String>,
    pub witness_z: Option<Vec<String>>,
    pub witness_w: Option<Vec<String>>,
    pub witness_pairing: Option<String>,
}

fn texts(v: &[GRat]) -> Vec<String> {
    v.iter().map(GRat::to_string).collect()
}

impl OrthCertificate {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            orthogonal: self.orthogonal,
            pivot: self.pivot,
            quotient: self.quotient.as_ref().map(crate::poly::text::format_poly),
            witness_z: self.witness.as_ref().map(|w| texts(&w.z)),
            witness_w: self.witness.as_ref().map(|w| texts(&w.w)),
            witness_pairing: self.witness.as_ref().map(|w| w.image_pairing.to_string()),
        }
    }
}

/// `(P, Q)` in `2N` variables.
pub fn pairing_polys(f: &SignedMap) -> (Poly, Poly) {
    let n = f.source().n_coords();
    let total = 2 * n;
    let target = f.target();
    let mut p = Poly::zero(total);
    for (j, comp) in f.components().iter().enumerate() {
        let eps = target.weight(j);
        if eps == 0 || comp.is_zero() {
            continue;
        }
        let prod = comp.embed(total, 0).mul(&comp.conj_coeffs().embed(total, n));
        p = if eps > 0 { p.add(&prod) } else { p.sub(&prod) };
    }
    let source = f.source();
    let mut q = Poly::zero(total);
    for i in source.nondegenerate_coords() {
        let mut e = vec![0; total];
        e[i] = 1;
        e[n + i] = 1;
        q.add_term(Monomial::new(e), GRat::from_int(source.weight(i)));
    }
    (p, q)
}

/// Pseudo-division of `p` by `q`, where `q` has degree 1 in `var`:
/// `lc^e · p = cofactor · q + remainder` with `deg_var(remainder) = 0`.
fn pseudo_divide_linear(p: &Poly, q: &Poly, var: usize) -> (Poly, Poly, u32) {
    debug_assert_eq!(q.degree_in(var), Some(1));
    let n = p.n_vars();
    let lc = q.coeff_in(var, 1);
    let mut rem = p.clone();
    let mut cofactor = Poly::zero(n);
    let mut steps = 0;
    while let Some(e) = rem.degree_in(var).filter(|&e| e >= 1) {
        let top = rem.coeff_in(var, e);
        let mut shift = vec![0; n];
        shift[var] = e - 1;
        let t = top.mul_monomial(&Monomial::new(shift), &GRat::one());
        rem = lc.mul(&rem).sub(&t.mul(q));
        cofactor = lc.mul(&cofactor).add(&t);
        steps += 1;
    }
    (cofactor, rem, steps)
}

/// Divides by the monomial `c · x^m` exactly; `None` if some term is not
/// divisible.
fn divide_by_monomial(p: &Poly, m: &Monomial, c: &GRat) -> Option<Poly> {
    let inv = c.inv();
    let mut out = Poly::zero(p.n_vars());
    for (t, k) in p.terms() {
        let exps: Option<Vec<u32>> = t
            .exps()
            .iter()
            .zip(m.exps())
            .map(|(&a, &b)| a.checked_sub(b))
            .collect();
        out.add_term(Monomial::new(exps?), k * &inv);
    }
    Some(out)
}

/// Certificate using the first nondegenerate source coordinate as pivot.
pub fn orthogonality_certificate(f: &SignedMap) -> Result<OrthCertificate> {
    orthogonality_certificate_with_pivot(f, 0)
}

pub fn orthogonality_certificate_with_pivot(f: &SignedMap, pivot: usize) -> Result<OrthCertificate> {
    let source = f.source();
    if source.r + source.s < 2 {
        return Err(Error::Unsupported(format!(
            "source signature {source} has fewer than 2 nondegenerate coordinates"
        )));
    }
    if source.weight(pivot) == 0 {
        return Err(domain(format!("pivot {pivot} is not a nondegenerate coordinate")));
    }
    let n = source.n_coords();
    let (p, q) = pairing_polys(f);
    let var = n + pivot;
    let (cofactor, rem, steps) = pseudo_divide_linear(&p, &q, var);
    if !rem.is_zero() {
        return Ok(OrthCertificate {
            orthogonal: false,
            pivot,
            quotient: None,
            witness: find_witness(f, pivot)?,
        });
    }
    // lc = ε_p z_p, so lc^steps is a monomial
    let mut e = vec![0; 2 * n];
    e[pivot] = steps;
    let lc_pow = GRat::from_int(source.weight(pivot).pow(steps));
    let quotient = divide_by_monomial(&cofactor, &Monomial::new(e), &lc_pow)
        .filter(|quot| quot.mul(&q) == p)
        .ok_or_else(|| domain("pseudo-remainder vanished but exact division failed"))?;
    Ok(OrthCertificate {
        orthogonal: true,
        pivot,
        quotient: Some(quotient),
        witness: None,
    })
}

fn find_witness(f: &SignedMap, pivot: usize) -> Result<Option<Witness>> {
    let source = f.source();
    let target = f.target();
    for attempt in 0..WITNESS_ATTEMPTS {
        let (z, w) = sample_orthogonal_pair(&source, pivot, &mut substream(WITNESS_SEED, attempt))?;
        let image_pairing = pairing(&f.eval(&z)?, &f.eval(&w)?, &target)?;
        if !image_pairing.is_zero() {
            return Ok(Some(Witness { z, w, image_pairing }));
        }
    }
    Ok(None)
}
