//! Indefinite Hermitian forms, generalized balls, and rational maps between
//! their projectivizations.
//!
//! Coordinates are 0-based: under signature `(r, s, t)` the first `r`
//! coordinates carry weight `+1`, the next `s` weight `-1`, the last `t`
//! weight `0`.

mod certificate;
mod construct;
pub mod mapfile;

use std::fmt;

use rand::Rng as _;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poly::{sign, GRat, Poly};
use crate::rng::Rng;

pub use certificate::{
    orthogonality_certificate, orthogonality_certificate_with_pivot, pairing_polys,
    CertificateSummary, OrthCertificate, Witness,
};
pub use construct::{null_prolongation, sharpness_map, span_obstruction_check, ObstructionRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize, t: usize) -> Result<Self> {
        if r + s + t == 0 {
            return Err(domain("signature (0,0,0) has no coordinates"));
        }
        Ok(Self { r, s, t })
    }

    pub fn n_coords(&self) -> usize {
        self.r + self.s + self.t
    }

    /// Dimension of the projectivization.
    pub fn proj_dim(&self) -> usize {
        self.n_coords() - 1
    }

    /// Weight of coordinate `i`: `1`, `-1` or `0`.
    pub fn weight(&self, i: usize) -> i64 {
        if i < self.r {
            1
        } else if i < self.r + self.s {
            -1
        } else {
            0
        }
    }

    /// Coordinates with nonzero weight.
    pub fn nondegenerate_coords(&self) -> std::ops::Range<usize> {
        0..self.r + self.s
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

/// Homogeneous coordinates of a point; never all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint(Vec<GRat>);

impl ProjPoint {
    pub fn new(coords: Vec<GRat>) -> Result<Self> {
        if coords.iter().all(GRat::is_zero) {
            return Err(domain("the zero vector is not a projective point"));
        }
        Ok(Self(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| GRat::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[GRat] {
        &self.0
    }
}

/// `⟨z, w⟩ = Σ ε_i z_i conj(w_i)` on raw coordinate vectors.
pub fn pairing(z: &[GRat], w: &[GRat], sig: &Signature) -> Result<GRat> {
    let n = sig.n_coords();
    for v in [z, w] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut sum = GRat::zero();
    for i in sig.nondegenerate_coords() {
        let t = &z[i] * &w[i].conj();
        sum = if sig.weight(i) > 0 { &sum + &t } else { &sum - &t };
    }
    Ok(sum)
}

pub fn inner_product(z: &ProjPoint, w: &ProjPoint, sig: &Signature) -> Result<GRat> {
    pairing(&z.0, &w.0, sig)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    Positive,
    Negative,
    Null,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Positive => "positive",
            PointKind::Negative => "negative",
            PointKind::Null => "null",
        })
    }
}

pub fn classify_point(z: &ProjPoint, sig: &Signature) -> Result<PointKind> {
    let norm = inner_product(z, z, sig)?;
    debug_assert!(norm.is_real());
    Ok(match sign(norm.re()) {
        std::cmp::Ordering::Greater => PointKind::Positive,
        std::cmp::Ordering::Less => PointKind::Negative,
        std::cmp::Ordering::Equal => PointKind::Null,
    })
}

/// A rational map `P^{r,s,t} ⇢ P^{r',s',t'}` given by homogeneous
/// components ordered as the target blocks: `r'` positive, `s'` negative,
/// `t'` null.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMap {
    source: Signature,
    target: Signature,
    degree: u32,
    components: Vec<Poly>,
}

impl SignedMap {
    pub fn new(source: Signature, target: Signature, degree: u32, components: Vec<Poly>) -> Result<Self> {
        if components.len() != target.n_coords() {
            return Err(Error::LengthMismatch {
                expected: target.n_coords(),
                found: components.len(),
            });
        }
        for p in &components {
            if p.n_vars() != source.n_coords() {
                return Err(Error::VariableCount {
                    expected: source.n_coords(),
                    found: p.n_vars(),
                });
            }
            p.check_homogeneous(degree)?;
        }
        Ok(Self {
            source,
            target,
            degree,
            components,
        })
    }

    /// Identity map of `P^{r,s,t}`.
    pub fn identity(sig: Signature) -> Self {
        let n = sig.n_coords();
        let comps = (0..n).map(|i| Poly::var(n, i)).collect();
        Self::new(sig, sig, 1, comps).expect("identity is well formed")
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn positive(&self) -> &[Poly] {
        &self.components[..self.target.r]
    }

    pub fn negative(&self) -> &[Poly] {
        &self.components[self.target.r..self.target.r + self.target.s]
    }

    pub fn null(&self) -> &[Poly] {
        &self.components[self.target.r + self.target.s..]
    }

    pub fn eval(&self, z: &[GRat]) -> Result<Vec<GRat>> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }
}

fn small_gaussian(rng: &mut Rng) -> GRat {
    let re = rng.gen_range(-5i64..=5);
    let im = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    &GRat::from_ints(re, im) / &GRat::from_int(den)
}

/// A random pair `z ⊥ w` under `sig`: `z` has small Gaussian-rational
/// entries with `z[pivot] ≠ 0`, `w` is free except for the pivot entry,
/// which is solved from `⟨z, w⟩ = 0`.
pub fn sample_orthogonal_pair(sig: &Signature, pivot: usize, rng: &mut Rng) -> Result<(Vec<GRat>, Vec<GRat>)> {
    if sig.weight(pivot) == 0 {
        return Err(domain(format!("pivot {pivot} is a null coordinate")));
    }
    let n = sig.n_coords();
    let mut z: Vec<GRat> = (0..n).map(|_| small_gaussian(rng)).collect();
    while z[pivot].is_zero() {
        z[pivot] = small_gaussian(rng);
    }
    let mut w: Vec<GRat> = (0..n).map(|_| small_gaussian(rng)).collect();
    w[pivot] = GRat::zero();
    // ε_p z_p conj(w_p) = -Σ_{i≠p} ε_i z_i conj(w_i)
    let rest = pairing(&z, &w, sig)?;
    let lead = &z[pivot] * &GRat::from_int(sig.weight(pivot));
    w[pivot] = (&(-&rest) / &lead).conj();
    debug_assert!(pairing(&z, &w, sig)?.is_zero());
    Ok((z, w))
}
