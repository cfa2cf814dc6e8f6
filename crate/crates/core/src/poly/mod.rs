//! Sparse multivariate polynomials over `Q(i)` and linear algebra on
//! fixed-degree slices of the polynomial ring.

mod grat;
mod rank;
mod restrict;
pub mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::binom::{to_u64, BinomTable};
use crate::error::{Error, Result};

pub use grat::{sign, GInt, GRat};
pub use rank::{matrix_rank, rank_integer_rows};
pub use restrict::{
    green_sample, image_span_dim, random_hyperplane, restrict, restrict_all,
    verify_green, verify_restriction_theorem, GreenRecord, GreenSample, Hyperplane,
    RestrictionReport,
};

/// Exponent vector over homogeneous coordinates `z_0, ..., z_n`.
///
/// Ordered graded-lexicographically: higher total degree is greater, ties
/// broken by the exponent of `z_0`, then `z_1`, and so on. So `z_0^d` is
/// the largest monomial of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n_vars` variables, largest first.
pub fn monomial_basis(n_vars: usize, d: u32) -> Vec<Monomial> {
    fn go(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n_vars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    go(&mut Vec::with_capacity(n_vars), d, n_vars, &mut out);
    out
}

/// `dim H_{d,n} = C(n+d, d)` for `n + 1` variables.
pub fn homogeneous_dim(n_vars: usize, d: u32) -> Result<u64> {
    if n_vars == 0 {
        return Ok(u64::from(d == 0));
    }
    let table = BinomTable::global();
    let c: BigUint = table.pascal((n_vars as u64 - 1) + d as u64, d as u64)?;
    to_u64(&c)
}

/// Sparse polynomial with exact Gaussian-rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<Monomial, GRat>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: GRat) -> Self {
        Self::term(Monomial::one(n_vars), c)
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(n_vars, i), GRat::one())
    }

    pub fn monomial(exps: Vec<u32>) -> Self {
        Self::term(Monomial(exps), GRat::one())
    }

    pub fn term(m: Monomial, c: GRat) -> Self {
        let mut p = Self::zero(m.n_vars());
        p.add_term(m, c);
        p
    }

    /// Builds from `(coefficient, exponents)` pairs; duplicates are summed.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (GRat, Vec<u32>)>) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (c, e) in terms {
            if e.len() != n_vars {
                return Err(Error::VariableCount {
                    expected: n_vars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> GRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: GRat) {
        debug_assert_eq!(m.n_vars(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Checks homogeneity of degree `d`; the zero polynomial qualifies.
    pub fn check_homogeneous(&self, d: u32) -> Result<()> {
        if self.terms.keys().all(|m| m.degree() == d) {
            Ok(())
        } else {
            Err(Error::MixedDegrees { expected: d })
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&GRat::from_int(-1))
    }

    pub fn scale(&self, k: &GRat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &GRat) -> Poly {
        let mut r = Poly::zero(self.n_vars);
        if k.is_zero() {
            return r;
        }
        // multiplication by a monomial is order preserving, so no collisions
        for (t, c) in &self.terms {
            r.terms.insert(t.mul(m), c * k);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::constant(self.n_vars, GRat::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Conjugates every coefficient.
    pub fn conj_coeffs(&self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Re-indexes into `total` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, total: usize, offset: usize) -> Poly {
        assert!(offset + self.n_vars <= total);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; total];
                e[offset..offset + self.n_vars].copy_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        Poly {
            n_vars: total,
            terms,
        }
    }

    /// Sets every variable outside `keep` to zero (variable count unchanged).
    pub fn restrict_to_coordinates(&self, keep: &[usize]) -> Poly {
        let mut mask = vec![false; self.n_vars];
        for &i in keep {
            mask[i] = true;
        }
        Poly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0.iter().zip(&mask).all(|(&e, &k)| k || e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[GRat]) -> Result<GRat> {
        if point.len() != self.n_vars {
            return Err(Error::LengthMismatch {
                expected: self.n_vars,
                found: point.len(),
            });
        }
        let mut sum = GRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            sum = &sum + &t;
        }
        Ok(sum)
    }

    /// Highest power of variable `v` that occurs, or `None` for zero.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    /// Coefficient of `x_v^e`, as a polynomial in the remaining variables
    /// (variable `v` kept with exponent zero).
    pub fn coeff_in(&self, v: usize, e: u32) -> Poly {
        let mut r = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            if m.0[v] == e {
                let mut k = m.clone();
                k.0[v] = 0;
                r.terms.insert(k, c.clone());
            }
        }
        r
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c == GRat::one() && m.degree() > 0 {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// A finite spanning list inside `H_{d,n}`; members need not be independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySubspace {
    n_vars: usize,
    degree: u32,
    basis: Vec<Poly>,
}

impl PolySubspace {
    pub fn new(n_vars: usize, degree: u32, basis: Vec<Poly>) -> Result<Self> {
        for p in &basis {
            if p.n_vars() != n_vars {
                return Err(Error::VariableCount {
                    expected: n_vars,
                    found: p.n_vars(),
                });
            }
            p.check_homogeneous(degree)?;
        }
        Ok(Self {
            n_vars,
            degree,
            basis,
        })
    }

    /// Infers variable count and degree from the first nonzero member.
    pub fn from_polys(basis: Vec<Poly>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| crate::error::domain("empty polynomial list"))?;
        let n_vars = first.n_vars();
        let degree = basis
            .iter()
            .find_map(Poly::total_degree)
            .ok_or_else(|| crate::error::domain("all polynomials are zero"))?;
        Self::new(n_vars, degree, basis)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> Result<u64> {
        homogeneous_dim(self.n_vars, self.degree)
    }

    /// Coefficient matrix against [`monomial_basis`]; one row per member.
    pub fn coefficient_matrix(&self) -> Vec<Vec<GRat>> {
        let cols = monomial_basis(self.n_vars, self.degree);
        let index: std::collections::HashMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        self.basis
            .iter()
            .map(|p| {
                let mut row = vec![GRat::zero(); cols.len()];
                for (m, c) in p.terms() {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.coefficient_matrix())
    }

    /// Codimension `dim H_{d,n} - rank`.
    pub fn codim(&self) -> Result<u64> {
        Ok(self.ambient_dim()? - self.rank() as u64)
    }
}

pub fn subspace_rank(w: &PolySubspace) -> usize {
    w.rank()
}
