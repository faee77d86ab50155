//! The multigraded ring generated by `a_N` (degree `(0, 1_N)`) and `b_N`
//! (degree `(-2′, 1_N)`) subject to the master relations, and its
//! monomial counts per multidegree.

use super::space::{canonicalize, Coordinate, Elab};
use crate::error::Result;
use crate::field;
use crate::homotopy::two_prime;
use crate::ring::{mono_divides, GradedRing, Mono, Order, Poly, Variable};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Rall {
    pub elab: Elab,
    pub coords: Vec<Coordinate>,
    /// Variables `a_N` at `2i`, `b_N` at `2i + 1`.
    pub ring: Arc<GradedRing>,
    leads: Vec<Mono>,
}

pub fn rall(e: &Elab) -> Result<Rall> {
    let p = e.prime();
    let coords = e.coordinates();
    let m = coords.len();
    let n = 2 * m;
    let tp = two_prime(p);
    let mut vars = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        let mut twist = vec![0; m];
        twist[i] = 1;
        vars.push(Variable { name: format!("a_{}", c.label(p)), degree: 0, twist: Some(twist.clone()) });
        vars.push(Variable { name: format!("b_{}", c.label(p)), degree: -tp, twist: Some(twist) });
    }
    let a = |i: usize| Poly::var(n, 2 * i);
    let b = |i: usize| Poly::var(n, 2 * i + 1);
    let mut relations: Vec<Poly> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for l2 in 1..p {
                let f1 = &coords[i].functional;
                let f3: Vec<u32> = f1
                    .iter()
                    .zip(&coords[j].functional)
                    .map(|(&x, &y)| field::neg(field::add(x, field::mul(y, l2, p), p), p))
                    .collect();
                let (c3, l3) = canonicalize(&f3, p).expect("distinct kernels");
                let k = coords.iter().position(|c| c.functional == c3).expect("coordinate");
                // a_{λπ} = a_π and b_{λπ} = λ^{-1} b_π; the sum is scaled by λ1λ2λ3.
                let t = [(i, 1u32), (j, l2), (k, l3)];
                let mut rel = Poly::zero(n);
                for s in 0..3 {
                    let mut term = a(t[s].0).scale(t[s].1, p);
                    for (u, &(idx, _)) in t.iter().enumerate() {
                        if u != s {
                            term = term.mul(&b(idx), p);
                        }
                    }
                    rel = rel.add(&term, p);
                }
                let rel = rel.monic(&Order::Grevlex, p);
                if !relations.contains(&rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let ring = GradedRing::new(p, vars, relations)?;
    let leads = ring
        .zero_ideal()
        .groebner()
        .iter()
        .filter_map(|g| g.leading(&Order::Grevlex).map(|(m, _)| m.clone()))
        .collect();
    Ok(Rall { elab: e.clone(), coords, ring, leads })
}

impl Rall {
    /// Dimension of the degree-`(s, q)` piece: standard monomials
    /// `Π a_N^{q_N - β_N} b_N^{β_N}` with `-2′ Σ β = s`.
    pub fn dimension(&self, s: i32, q: &[u32]) -> usize {
        let tp = two_prime(self.elab.prime());
        if s > 0 || s % tp != 0 {
            return 0;
        }
        let total = (-s / tp) as u32;
        let m = self.coords.len();
        let mut count = 0;
        let mut beta = vec![0u32; m];
        loop {
            if beta.iter().sum::<u32>() == total {
                let mut mono = vec![0u16; 2 * m];
                for i in 0..m {
                    mono[2 * i] = (q[i] - beta[i]) as u16;
                    mono[2 * i + 1] = beta[i] as u16;
                }
                if !self.leads.iter().any(|l| mono_divides(l, &mono)) {
                    count += 1;
                }
            }
            // Odometer over 0 ≤ β_i ≤ q_i.
            let mut i = 0;
            while i < m && beta[i] == q[i] {
                beta[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            beta[i] += 1;
        }
        count
    }
}
