//! Homomorphisms between the local presentations: modular fixed points,
//! inflation, restriction, gluing, and transport of ideals into strata.

use super::local::{cohomology, present_rloc, var_name, LocalRing};
use super::space::{apply, canonicalize, dot, Coordinate, Elab, Subspace};
use crate::error::{Error, Result};
use crate::field::{self, Mat};
use crate::homotopy::two_prime;
use crate::ring::{eliminate_polys, GradedRing, Ideal, Poly, RingHom, Variable};
use std::sync::Arc;

/// `Ψ^K: R′_E(H) → R′_{E/K}(H/K)` for `K ≤ H`.
pub fn psi_hom(e: &Elab, h: &Subspace, k: &Subspace) -> Result<(LocalRing, LocalRing, RingHom)> {
    if !k.is_subspace_of(h) {
        return Err(Error::domain("K must be contained in H"));
    }
    let src = present_rloc(e, h)?;
    let tgt = present_rloc(&e.quotient(k), &h.join(e.killed()))?;
    let nt = tgt.coords.len();
    let images = src
        .coords
        .iter()
        .map(|c| match tgt.position(c) {
            Some(i) => Poly::var(nt, i),
            None => Poly::zero(nt),
        })
        .collect();
    let hom = RingHom::new(src.ring.clone(), tgt.ring.clone(), images)?;
    Ok((src, tgt, hom))
}

/// The section `R′_{E/K}(H/K) → R′_E(H)` of [`psi_hom`].
pub fn inflation_hom(e: &Elab, h: &Subspace, k: &Subspace) -> Result<RingHom> {
    let src = present_rloc(&e.quotient(k), &h.join(e.killed()))?;
    let tgt = present_rloc(e, h)?;
    let n = tgt.coords.len();
    let images = src.coords.iter().map(|c| Poly::var(n, tgt.position(c).expect("coordinate of E"))).collect();
    RingHom::new(src.ring.clone(), tgt.ring.clone(), images)
}

/// Restriction `H•(E″) → H•(E′)` along `α: E′ → E″`, given as a matrix from
/// the ambient space of `small` to that of `big`.
pub fn res_hom_along(big: &Elab, small: &Elab, alpha: &Mat) -> Result<RingHom> {
    let p = big.prime();
    if alpha.rows != big.ambient() || alpha.cols != small.ambient() {
        return Err(Error::domain("restriction matrix has the wrong shape"));
    }
    for v in small.killed().rows() {
        if !big.killed().contains(&apply(alpha, v, p)) {
            return Err(Error::domain("restriction map is not well defined on the quotient"));
        }
    }
    let src = cohomology(big)?;
    let tgt = cohomology(small)?;
    let images = src
        .coords
        .iter()
        .map(|c| {
            let pulled: Vec<u32> = (0..alpha.cols)
                .map(|j| (0..alpha.rows).fold(0, |acc, i| field::add(acc, field::mul(c.functional[i], alpha.get(i, j), p), p)))
                .collect();
            tgt.zeta_of(&pulled)
        })
        .collect();
    RingHom::new(src.ring.clone(), tgt.ring.clone(), images)
}

/// Restriction to a subgroup `S ≤ E`, with `S / killed` modelled as
/// `F_p^d` on a basis chosen from the echelon rows of `S`.
pub fn res_hom(e: &Elab, s: &Subspace) -> Result<(Elab, Mat, RingHom)> {
    if !e.killed().is_subspace_of(s) {
        return Err(Error::domain("S must be a subgroup of E"));
    }
    let basis = s.complement_of(e.killed());
    let d = basis.len();
    let mut alpha = Mat::zeros(e.ambient(), d);
    for (j, v) in basis.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            alpha.set(i, j, x);
        }
    }
    let small = Elab::new(e.prime(), d)?;
    let hom = res_hom_along(e, &small, &alpha)?;
    Ok((small, alpha, hom))
}

/// The two localized presentations compared by the gluing isomorphism.
#[derive(Clone, Debug)]
pub struct GlueIso {
    /// `R′_E(H)` with `S(H, K)` inverted.
    pub left: Arc<GradedRing>,
    /// `R′_E(K)` with `T(H, K)` inverted.
    pub right: Arc<GradedRing>,
    pub to_right: RingHom,
    pub to_left: RingHom,
}

/// Both localizations share one generator set (`zp_N·zm_N = 1` wherever both
/// occur); the dictionary is the identity on names and is checked in both
/// directions against the relations.
pub fn glue_iso(e: &Elab, h: &Subspace, k: &Subspace) -> Result<GlueIso> {
    let p = e.prime();
    let rh = present_rloc(e, h)?;
    let rk = present_rloc(e, k)?;
    let tp = two_prime(p);
    let mut vars = Vec::new();
    let mut pairs = Vec::new();
    for (i, c) in rh.coords.iter().enumerate() {
        let (ph, pk) = (rh.plus[i], rk.plus[i]);
        if ph || pk {
            vars.push(Variable::new(var_name(c, true, p), tp));
        }
        if !ph || !pk {
            vars.push(Variable::new(var_name(c, false, p), -tp));
        }
        if ph != pk {
            pairs.push((vars.len() - 2, vars.len() - 1));
        }
    }
    let n = vars.len();
    let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
    let inverses: Vec<Poly> = pairs
        .iter()
        .map(|&(a, b)| Poly::var(n, a).mul(&Poly::var(n, b), p).sub(&Poly::constant(n, 1, p), p))
        .collect();
    let embed = |lr: &LocalRing| -> Vec<Poly> {
        let map: Vec<usize> = (0..lr.coords.len())
            .map(|i| names.iter().position(|x| *x == lr.var_name(i)).expect("shared generator"))
            .collect();
        lr.ring.relations().iter().map(|r| r.embed(&map, n)).chain(inverses.iter().cloned()).collect()
    };
    let left = GradedRing::new(p, vars.clone(), embed(&rh))?;
    let right = GradedRing::new(p, vars, embed(&rk))?;
    let id: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    let to_right = RingHom::new(left.clone(), right.clone(), id.clone())?;
    let to_left = RingHom::new(right.clone(), left.clone(), id)?;
    Ok(GlueIso { left, right, to_right, to_left })
}

/// Transport an ideal `I` of `H•(E)` to the stratum of `H`: the ideal
/// `J = Ψ^H(Q^{-1}⟨Q′(I)⟩)` of `H•(E/H)`, with `V(J)` the part of the
/// closure of `Z(I)` lying over `H`.
pub fn closure_ideal(e: &Elab, h: &Subspace, i: &Ideal) -> Result<Ideal> {
    let p = e.prime();
    let coh = cohomology(e)?;
    if !i.ring().same_presentation(&coh.ring) {
        return Err(Error::domain("ideal does not live in the cohomology of E"));
    }
    let h = h.join(e.killed());
    let quotient = e.quotient(&h);
    let target = cohomology(&quotient)?;
    // Variables y (dual basis of E/H), t (its complement in the dual of E),
    // then one inverse w_N per coordinate not divided by H.
    let ys = h.annihilator().rows().to_vec();
    let ts = e.killed().annihilator().complement_of(&h.annihilator());
    let basis: Vec<Vec<u32>> = ys.iter().chain(&ts).cloned().collect();
    let (ny, nt) = (ys.len(), ts.len());
    let off: Vec<&Coordinate> = coh.coords.iter().filter(|c| !c.divides(&h)).collect();
    let n = ny + nt + off.len();
    let linear = |f: &[u32]| -> Poly {
        let mut m = Mat::zeros(e.ambient(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            for (r, &x) in b.iter().enumerate() {
                m.set(r, j, x);
            }
        }
        let sol = field::solve(&m, f, p).expect("functional in the dual of E");
        sol.particular
            .iter()
            .enumerate()
            .fold(Poly::zero(n), |acc, (j, &c)| acc.add(&Poly::var(n, j).scale(c, p), p))
    };
    let images: Vec<Poly> = coh.coords.iter().map(|c| linear(&c.functional)).collect();
    let mut gens: Vec<Poly> = i.generators().iter().map(|g| g.substitute(&images, n, p)).collect();
    for (k, c) in off.iter().enumerate() {
        let w = Poly::var(n, ny + nt + k);
        gens.push(linear(&c.functional).mul(&w, p).sub(&Poly::constant(n, 1, p), p));
    }
    let mut mask = vec![false; n];
    mask[ny..ny + nt].fill(true);
    let kept = eliminate_polys(&gens, &mask, p);
    let yvars: Vec<usize> = ys
        .iter()
        .map(|f| target.position(&Coordinate { functional: f.clone() }).expect("canonical echelon row"))
        .collect();
    let m = target.coords.len();
    let to_target: Vec<Poly> = (0..n)
        .map(|j| if j < ny { Poly::var(m, yvars[j]) } else { Poly::zero(m) })
        .collect();
    let out: Vec<Poly> = kept.iter().map(|g| g.substitute(&to_target, m, p)).collect();
    target.ring.ideal(out)
}

/// The ideal of `H•(E)` of linear forms vanishing at `v`: the rational
/// point attached to the cyclic subgroup generated by `v`.
pub fn rational_point(e: &Elab, v: &[u32]) -> Result<Ideal> {
    let p = e.prime();
    if e.killed().contains(v) {
        return Err(Error::domain("point must be nonzero in E"));
    }
    let coh = cohomology(e)?;
    let gens = coh
        .coords
        .iter()
        .filter(|c| dot(&c.functional, v, p) == 0)
        .map(|c| coh.generator(c).unwrap())
        .collect();
    coh.ring.ideal(gens)
}

/// The functional attached to a coordinate name.
pub fn parse_label(e: &Elab, label: &str) -> Option<Coordinate> {
    e.coordinates().into_iter().find(|c| c.label(e.prime()) == label)
}

/// Canonical representative of the line through `v`.
pub fn projective_point(v: &[u32], p: u32) -> Option<Vec<u32>> {
    canonicalize(v, p).map(|(c, _)| c)
}
