//! The presentations `R′_E(H)`: generators `ζ+_N` for `H ≤ N` and `ζ-_N`
//! otherwise, with the relation families obtained from the master relation.

use super::space::{canonicalize, Coordinate, Elab, Subspace};
use crate::error::{Error, Result};
use crate::field;
use crate::homotopy::two_prime;
use crate::ring::{GradedRing, Order, Poly, Variable};
use std::sync::Arc;

/// `R′_E(H)` together with the bookkeeping needed to address generators.
#[derive(Clone, Debug)]
pub struct LocalRing {
    pub elab: Elab,
    pub h: Subspace,
    pub coords: Vec<Coordinate>,
    /// `plus[i]`: the generator for `coords[i]` is `ζ+` (else `ζ-`).
    pub plus: Vec<bool>,
    pub ring: Arc<GradedRing>,
}

impl LocalRing {
    pub fn var_name(&self, i: usize) -> String {
        var_name(&self.coords[i], self.plus[i], self.elab.prime())
    }

    pub fn position(&self, c: &Coordinate) -> Option<usize> {
        self.coords.iter().position(|x| x == c)
    }

    /// The generator for coordinate `c`, if `c` is a coordinate of `E`.
    pub fn generator(&self, c: &Coordinate) -> Option<Poly> {
        self.position(c).map(|i| Poly::var(self.coords.len(), i))
    }

    /// `ζ+_π` for an arbitrary (not necessarily canonical) functional,
    /// with scalars folded in: `ζ+_{λπ} = λ ζ+_π`. Only valid in the
    /// cohomology presentation (`H` trivial in `E`).
    pub fn zeta_of(&self, functional: &[u32]) -> Poly {
        let p = self.elab.prime();
        let n = self.coords.len();
        match canonicalize(functional, p) {
            None => Poly::zero(n),
            Some((c, lambda)) => {
                let i = self.position(&Coordinate { functional: c }).expect("functional vanishes on the killed subspace");
                let lambda = if self.plus[i] { lambda } else { field::inv(lambda, p) };
                Poly::var(n, i).scale(lambda, p)
            }
        }
    }
}

pub fn var_name(c: &Coordinate, plus: bool, p: u32) -> String {
    format!("{}_{}", if plus { "zp" } else { "zm" }, c.label(p))
}

/// Present `R′_E(H)`. `h` must contain the killed subspace of `e`.
pub fn present_rloc(e: &Elab, h: &Subspace) -> Result<LocalRing> {
    let p = e.prime();
    if !e.killed().is_subspace_of(h) || h.ambient() != e.ambient() {
        return Err(Error::domain("H must be a subgroup of E"));
    }
    let coords = e.coordinates();
    let plus: Vec<bool> = coords.iter().map(|c| c.divides(h)).collect();
    let tp = two_prime(p);
    let vars: Vec<Variable> = coords
        .iter()
        .zip(&plus)
        .map(|(c, &pl)| Variable::new(var_name(c, pl, p), if pl { tp } else { -tp }))
        .collect();
    let n = coords.len();
    let mut relations: Vec<Poly> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for lambda2 in 1..p {
                let f1 = &coords[i].functional;
                let f2: Vec<u32> = coords[j].functional.iter().map(|&x| field::mul(x, lambda2, p)).collect();
                let f3: Vec<u32> = f1.iter().zip(&f2).map(|(&a, &b)| field::neg(field::add(a, b, p), p)).collect();
                let (c3, lambda3) = canonicalize(&f3, p).expect("distinct kernels");
                let k = coords.iter().position(|c| c.functional == c3).expect("coordinate of E");
                let triple = [(i, 1u32), (j, lambda2), (k, lambda3)];
                let rel = instantiate(&triple, &plus, n, p).monic(&Order::Grevlex, p);
                if !relations.contains(&rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let ring = GradedRing::new(p, vars, relations)?;
    Ok(LocalRing { elab: e.clone(), h: h.clone(), coords, plus, ring })
}

/// The relation for coordinates `π_t = λ_t π̂_t` with `Σ π_t = 0`, using
/// `ζ+_π = λ ζ+_π̂` and `ζ-_π = λ^{-1} ζ-_π̂`.
fn instantiate(triple: &[(usize, u32); 3], plus: &[bool], n: usize, p: u32) -> Poly {
    let var = |t: usize| Poly::var(n, triple[t].0);
    let lam = |t: usize| triple[t].1;
    let inv = |t: usize| field::inv(lam(t), p);
    let divided: Vec<usize> = (0..3).filter(|&t| plus[triple[t].0]).collect();
    match divided.len() {
        3 => (0..3).fold(Poly::zero(n), |acc, t| acc.add(&var(t).scale(lam(t), p), p)),
        1 => {
            let c = divided[0];
            let (a, b) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let cubic = var(a).mul(&var(b), p).mul(&var(c), p);
            let coef = field::mul(field::mul(inv(a), inv(b), p), lam(c), p);
            var(a).scale(inv(a), p).add(&var(b).scale(inv(b), p), p).add(&cubic.scale(coef, p), p)
        }
        0 => {
            let pair = |s: usize, t: usize| var(s).mul(&var(t), p).scale(field::mul(inv(s), inv(t), p), p);
            pair(0, 1).add(&pair(1, 2), p).add(&pair(0, 2), p)
        }
        _ => unreachable!("H divides two coordinates of a triple only if it divides the third"),
    }
}

/// The cohomology presentation `R′_E(1) = H•(E)` modulo nilpotents.
pub fn cohomology(e: &Elab) -> Result<LocalRing> {
    present_rloc(e, e.killed())
}
