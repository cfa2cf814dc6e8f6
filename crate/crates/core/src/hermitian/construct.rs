//! Explicit maps: the sharpness family, null prolongations, and the
//! orthogonal-span obstruction check.

use serde::Serialize;

use super::{Signature, SignedMap};
use crate::error::{domain, Error, Result};
use crate::poly::{image_span_dim, Poly};

/// Cubic map `P^{k,n+1-k} ⇢ P^{k², k(n-k+1)}` with components
/// `z_i² z_j`: positive for `i, j < k`, negative for `i < k ≤ j ≤ n`.
///
/// Its target pairing factors as `(Σ_{i<k} z_i² w̃_i²) · Q`, and its
/// `kn + k` components are distinct monomials, so the image spans the
/// whole target `P^{kn+k-1}`.
pub fn sharpness_map(k: usize, n: usize) -> Result<SignedMap> {
    if k == 0 || k > n {
        return Err(domain(format!("sharpness map needs 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let vars = n + 1;
    let cube = |i: usize, j: usize| {
        let mut e = vec![0; vars];
        e[i] += 2;
        e[j] += 1;
        Poly::monomial(e)
    };
    let mut comps = Vec::with_capacity(k * vars);
    for i in 0..k {
        for j in 0..k {
            comps.push(cube(i, j));
        }
    }
    for i in 0..k {
        for j in k..vars {
            comps.push(cube(i, j));
        }
    }
    SignedMap::new(
        Signature::new(k, vars - k, 0)?,
        Signature::new(k * k, k * (n - k + 1), 0)?,
        3,
        comps,
    )
}

/// `[ψf_1, …, ψf_r', φ, ψf_{r'+1}, …, ψf_{r'+s'}, φ]` into
/// `P^{r'+1, s'+1}`. The two `φ` slots cancel in the target pairing.
pub fn null_prolongation(f: &SignedMap, psi: &Poly, phi: &Poly) -> Result<SignedMap> {
    let target = f.target();
    if target.t != 0 {
        return Err(domain("null prolongation needs a map with t' = 0"));
    }
    let n = f.source().n_coords();
    for p in [psi, phi] {
        if p.n_vars() != n {
            return Err(Error::VariableCount {
                expected: n,
                found: p.n_vars(),
            });
        }
    }
    let psi_deg = psi
        .total_degree()
        .filter(|_| psi.is_homogeneous())
        .ok_or_else(|| domain("ψ must be a nonzero homogeneous polynomial"))?;
    let degree = psi_deg + f.degree();
    phi.check_homogeneous(degree)
        .map_err(|_| domain(format!("deg φ must equal deg ψ + d = {degree}")))?;

    let mut comps = Vec::with_capacity(f.components().len() + 2);
    comps.extend(f.positive().iter().map(|c| psi.mul(c)));
    comps.push(phi.clone());
    comps.extend(f.negative().iter().map(|c| psi.mul(c)));
    comps.push(phi.clone());
    SignedMap::new(
        f.source(),
        Signature::new(target.r + 1, target.s + 1, 0)?,
        degree,
        comps,
    )
}

/// Span dimensions of `f(E)` and `f(E^⊥)` for a coordinate subspace `E`,
/// against `dim P^{r',s'} - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub e: Vec<usize>,
    pub e_perp: Vec<usize>,
    pub dim_e: Option<u64>,
    pub dim_e_perp: Option<u64>,
    pub bound: i64,
    /// One of the restrictions vanishes identically.
    pub degenerate: bool,
    /// `None` when degenerate.
    pub holds: Option<bool>,
}

/// `e` lists source coordinates spanning `E`; `E^⊥` is spanned by the
/// remaining coordinates together with every null coordinate.
pub fn span_obstruction_check(f: &SignedMap, e: &[usize]) -> Result<ObstructionRecord> {
    let target = f.target();
    if target.t != 0 {
        return Err(domain("span obstruction needs a nondegenerate target (t' = 0)"));
    }
    let source = f.source();
    let n = source.n_coords();
    let mut e: Vec<usize> = e.to_vec();
    e.sort_unstable();
    e.dedup();
    if e.is_empty() || e.iter().any(|&i| i >= n) {
        return Err(domain(format!("E must be a nonempty set of coordinates below {n}")));
    }
    let e_perp: Vec<usize> = (0..n)
        .filter(|i| !e.contains(i) || source.weight(*i) == 0)
        .collect();
    if e_perp.is_empty() {
        return Err(domain("E^⊥ is empty"));
    }
    let span = |keep: &[usize]| -> Option<u64> {
        let restricted: Vec<Poly> = f
            .components()
            .iter()
            .map(|c| c.restrict_to_coordinates(keep))
            .collect();
        image_span_dim(&restricted).ok()
    };
    let dim_e = span(&e);
    let dim_e_perp = span(&e_perp);
    let bound = (target.r + target.s) as i64 - 2;
    let holds = match (dim_e, dim_e_perp) {
        (Some(a), Some(b)) => Some((a + b) as i64 <= bound),
        _ => None,
    };
    Ok(ObstructionRecord {
        e,
        e_perp,
        dim_e,
        dim_e_perp,
        bound,
        degenerate: holds.is_none(),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::orthogonality_certificate;
    use crate::poly::{GRat, PolySubspace};

    #[test]
    fn sharpness_blocks() {
        let f = sharpness_map(1, 2).unwrap();
        assert_eq!(f.positive(), &[Poly::monomial(vec![3, 0, 0])]);
        assert_eq!(
            f.negative(),
            &[Poly::monomial(vec![2, 1, 0]), Poly::monomial(vec![2, 0, 1])]
        );
        assert_eq!(f.target(), Signature::new(1, 2, 0).unwrap());

        let f = sharpness_map(2, 3).unwrap();
        assert_eq!(f.components().len(), 8);
        assert_eq!(f.target(), Signature::new(4, 4, 0).unwrap());
        assert_eq!(f.target().proj_dim(), 7);
        assert_eq!(image_span_dim(f.components()).unwrap(), 7);
        assert!(sharpness_map(3, 2).is_err());
        assert!(sharpness_map(0, 2).is_err());
    }

    #[test]
    fn sharpness_quotient() {
        for (k, n) in [(1, 2), (2, 3), (2, 6), (3, 5)] {
            let f = sharpness_map(k, n).unwrap();
            let c = orthogonality_certificate(&f).unwrap();
            let vars = 2 * (n + 1);
            let mut expected = Poly::zero(vars);
            for j in 0..k {
                let mut e = vec![0; vars];
                e[j] = 2;
                e[n + 1 + j] = 2;
                expected = expected.add(&Poly::monomial(e));
            }
            assert_eq!(c.quotient.unwrap(), expected, "k={k} n={n}");
        }
    }

    #[test]
    fn prolongation_of_identity() {
        let s = Signature::new(1, 1, 0).unwrap();
        let id = SignedMap::identity(s);
        let psi = Poly::var(2, 0);
        let phi = Poly::monomial(vec![2, 0]);
        let g = null_prolongation(&id, &psi, &phi).unwrap();
        assert_eq!(
            g.components(),
            &[
                Poly::monomial(vec![2, 0]),
                Poly::monomial(vec![2, 0]),
                Poly::monomial(vec![1, 1]),
                Poly::monomial(vec![2, 0]),
            ]
        );
        assert_eq!(g.target(), Signature::new(2, 2, 0).unwrap());
        // the φ slots cancel: P_g = ψψ̃ · P_id
        let (pg, _) = crate::hermitian::pairing_polys(&g);
        let (pid, _) = crate::hermitian::pairing_polys(&id);
        let psipsi = Poly::monomial(vec![1, 0, 1, 0]);
        assert_eq!(pg, psipsi.mul(&pid));
        assert!(orthogonality_certificate(&g).unwrap().orthogonal);
    }

    #[test]
    fn prolongation_of_sharpness_map() {
        let f = sharpness_map(1, 2).unwrap();
        let g = null_prolongation(&f, &Poly::var(3, 1), &Poly::monomial(vec![1, 1, 2])).unwrap();
        assert_eq!(g.components().len(), 5);
        assert_eq!(g.degree(), 4);
        assert!(orthogonality_certificate(&g).unwrap().orthogonal);
        // constant ψ is allowed
        let g = null_prolongation(&f, &Poly::constant(3, GRat::from_int(2)), &Poly::monomial(vec![0, 0, 3])).unwrap();
        assert!(orthogonality_certificate(&g).unwrap().orthogonal);
        // φ = 0 is a degenerate but valid prolongation
        let g = null_prolongation(&f, &Poly::var(3, 0), &Poly::zero(3)).unwrap();
        assert!(orthogonality_certificate(&g).unwrap().orthogonal);
        assert!(null_prolongation(&f, &Poly::var(3, 0), &Poly::monomial(vec![3, 0, 0])).is_err());
        assert!(null_prolongation(&f, &Poly::zero(3), &Poly::monomial(vec![3, 0, 0])).is_err());
    }

    #[test]
    fn prolongation_keeps_non_orthogonal_verdict() {
        let s = Signature::new(1, 1, 0).unwrap();
        let f = SignedMap::new(s, Signature::new(2, 0, 0).unwrap(), 1, vec![Poly::var(2, 0), Poly::var(2, 1)]).unwrap();
        assert!(!orthogonality_certificate(&f).unwrap().orthogonal);
        let g = null_prolongation(&f, &Poly::var(2, 1), &Poly::monomial(vec![1, 1])).unwrap();
        assert!(!orthogonality_certificate(&g).unwrap().orthogonal);
    }

    #[test]
    fn obstruction_examples() {
        let id = SignedMap::identity(Signature::new(1, 1, 0).unwrap());
        let r = span_obstruction_check(&id, &[0]).unwrap();
        assert_eq!((r.dim_e, r.dim_e_perp, r.bound, r.holds), (Some(0), Some(0), 0, Some(true)));

        let f = sharpness_map(2, 3).unwrap();
        let r = span_obstruction_check(&f, &[0, 1]).unwrap();
        assert_eq!(r.e_perp, vec![2, 3]);
        assert_eq!(r.dim_e, Some(3));
        assert_eq!(r.dim_e_perp, None);
        assert!(r.degenerate);

        assert!(span_obstruction_check(&f, &[]).is_err());
        assert!(span_obstruction_check(&f, &[0, 1, 2, 3]).is_err());
        assert!(span_obstruction_check(&f, &[9]).is_err());
    }

    #[test]
    fn obstruction_holds_for_nondegenerate_orthogonal_maps() {
        // ψ = z0 + z1 + z2 keeps both restrictions alive
        let f = sharpness_map(1, 2).unwrap();
        let psi = Poly::var(3, 0).add(&Poly::var(3, 1)).add(&Poly::var(3, 2));
        let phi = Poly::monomial(vec![0, 2, 2]);
        let g = null_prolongation(&f, &psi, &phi).unwrap();
        assert!(orthogonality_certificate(&g).unwrap().orthogonal);
        let id = SignedMap::identity(Signature::new(2, 2, 0).unwrap());
        for map in [&g, &id] {
            for e in [vec![0], vec![1], vec![0, 1], vec![1, 2]] {
                if e.iter().any(|&i| i >= map.source().n_coords()) {
                    continue;
                }
                let r = span_obstruction_check(map, &e).unwrap();
                if let Some(h) = r.holds {
                    assert!(h, "{r:?}");
                }
            }
        }
        let w = PolySubspace::from_polys(g.components().to_vec()).unwrap();
        assert!(w.rank() >= 3);
    }
}
