//! Finitely presented graded-commutative algebras over `F_p` in the
//! commutative (even-degree) regime, homogeneous ideals and homomorphisms.

use super::groebner::{groebner, is_unit_ideal, normal_form};
use super::poly::{Order, Poly};
use crate::error::{Error, Result};
use crate::field;
use serde::Serialize;
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    /// Shift degree.
    pub degree: i32,
    /// Optional twist multidegree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<i32>>,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Variable { name: name.into(), degree, twist: None }
    }
}

/// `k[x_1..x_n] / relations`.
#[derive(Debug)]
pub struct GradedRing {
    p: u32,
    vars: Vec<Variable>,
    names: Vec<String>,
    relations: Vec<Poly>,
    relation_gb: OnceLock<Vec<Poly>>,
}

impl GradedRing {
    /// Checked constructor: distinct names, prime `p`, even degrees for odd
    /// `p`, homogeneous relations.
    pub fn new(p: u32, vars: Vec<Variable>, relations: Vec<Poly>) -> Result<Arc<Self>> {
        if !field::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate variable name {n}")));
            }
        }
        if p != 2 {
            if let Some(v) = vars.iter().find(|v| v.degree % 2 != 0) {
                return Err(Error::Unsupported(format!(
                    "variable {} has odd degree {}; only the commutative regime is supported",
                    v.name, v.degree
                )));
            }
        }
        let ring = GradedRing { p, vars, names, relations: Vec::new(), relation_gb: OnceLock::new() };
        let weights = ring.degrees();
        for r in &relations {
            if r.nvars() != ring.nvars() {
                return Err(Error::domain("relation over the wrong number of variables"));
            }
            if !r.is_homogeneous(&weights) {
                return Err(Error::domain(format!("relation {} is not homogeneous", r.display(&ring.names))));
            }
            if let Some(tw) = ring.twist_weights() {
                for w in tw {
                    if !r.is_homogeneous(&w) {
                        return Err(Error::domain(format!("relation {} is not twist-homogeneous", r.display(&ring.names))));
                    }
                }
            }
        }
        Ok(Arc::new(GradedRing { relations, ..ring }))
    }

    pub fn polynomial(p: u32, vars: Vec<Variable>) -> Result<Arc<Self>> {
        GradedRing::new(p, vars, Vec::new())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    fn twist_weights(&self) -> Option<Vec<Vec<i32>>> {
        let len = self.vars.first()?.twist.as_ref()?.len();
        if self.vars.iter().any(|v| v.twist.as_ref().map(|t| t.len()) != Some(len)) {
            return None;
        }
        Some((0..len).map(|k| self.vars.iter().map(|v| v.twist.as_ref().unwrap()[k]).collect()).collect())
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        self.index(name)
            .map(|i| Poly::var(self.nvars(), i))
            .ok_or_else(|| Error::domain(format!("no variable named {name}")))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.nvars(), 1, self.p)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        Poly::parse(text, &self.names, self.p)
    }

    pub fn display(&self, f: &Poly) -> String {
        f.display(&self.names)
    }

    fn relation_basis(&self) -> &[Poly] {
        self.relation_gb.get_or_init(|| groebner(&self.relations, &Order::Grevlex, self.p))
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, f: &Poly) -> Poly {
        normal_form(f, self.relation_basis(), &Order::Grevlex, self.p)
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn ideal(self: &Arc<Self>, gens: Vec<Poly>) -> Result<Ideal> {
        let weights = self.degrees();
        for g in &gens {
            if g.nvars() != self.nvars() {
                return Err(Error::domain("generator over the wrong number of variables"));
            }
            if !g.is_homogeneous(&weights) {
                return Err(Error::domain(format!("generator {} is not homogeneous", self.display(g))));
            }
        }
        Ok(Ideal::unchecked(self.clone(), gens))
    }

    pub fn parse_ideal(self: &Arc<Self>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| self.parse(g)).collect::<Result<Vec<_>>>()?;
        self.ideal(polys)
    }

    /// The ideal generated by all variables.
    pub fn irrelevant_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::unchecked(self.clone(), (0..self.nvars()).map(|i| Poly::var(self.nvars(), i)).collect())
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::unchecked(self.clone(), Vec::new())
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::unchecked(self.clone(), vec![self.one()])
    }

    /// Structural equality of presentations.
    pub fn same_presentation(&self, other: &GradedRing) -> bool {
        self.p == other.p && self.vars == other.vars && self.relations == other.relations
    }
}

/// Ideal `I` of a quotient ring, represented by generators; Gröbner data
/// covers `I + relations` and is computed once.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<GradedRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub(crate) fn unchecked(ring: Arc<GradedRing>, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    fn all_gens(&self) -> Vec<Poly> {
        self.ring.relations.iter().chain(&self.gens).cloned().collect()
    }

    /// Reduced Gröbner basis of `I + relations` under grevlex.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner(&self.all_gens(), &Order::Grevlex, self.ring.p))
    }

    /// Generators of `I` modulo relations, as a reduced basis with the
    /// relation-only elements removed.
    pub fn reduced_generators(&self) -> Vec<Poly> {
        self.groebner().iter().filter(|g| !self.ring.is_zero(g)).cloned().collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, self.groebner(), &Order::Grevlex, self.ring.p)
    }

    pub fn member(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    pub fn ideal_eq(&self, other: &Ideal) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn is_unit(&self) -> bool {
        is_unit_ideal(self.groebner())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.ring.is_zero(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ideal::unchecked(self.ring.clone(), gens)
    }

    pub fn display(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.display(g)).collect()
    }

    /// `I : f^∞`, via `I + (1 - t f)` with `t` eliminated.
    pub fn saturate(&self, f: &Poly) -> Ideal {
        let (n, p) = (self.ring.nvars(), self.ring.p);
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Poly> = self.all_gens().iter().map(|g| g.embed(&map, n + 1)).collect();
        let tf = Poly::var(n + 1, n).mul(&f.embed(&map, n + 1), p);
        gens.push(Poly::constant(n + 1, 1, p).sub(&tf, p));
        let mut mask = vec![false; n + 1];
        mask[n] = true;
        let kept = eliminate_polys(&gens, &mask, p);
        let back: Vec<Poly> = kept.iter().map(|g| drop_trailing(g, n, p)).collect();
        Ideal::unchecked(self.ring.clone(), back)
    }

    /// `I ∩ k[other variables]`, returned as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let mut mask = vec![false; self.ring.nvars()];
        for &v in vars {
            mask[v] = true;
        }
        let kept = eliminate_polys(&self.all_gens(), &mask, self.ring.p);
        Ideal::unchecked(self.ring.clone(), kept)
    }

    /// Move the generators into `target` by variable name; every variable
    /// occurring in a generator must exist there.
    pub fn transfer(&self, target: &Arc<GradedRing>) -> Result<Ideal> {
        let map = name_map(&self.ring, target)?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                for v in g.support() {
                    if map[v].is_none() {
                        return Err(Error::domain(format!("variable {} missing in target ring", self.ring.names[v])));
                    }
                }
                let m: Vec<usize> = map.iter().map(|x| x.unwrap_or(0)).collect();
                Ok(g.embed(&m, target.nvars()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::unchecked(target.clone(), gens))
    }
}

fn name_map(from: &GradedRing, to: &GradedRing) -> Result<Vec<Option<usize>>> {
    if from.p != to.p {
        return Err(Error::domain("rings over different primes"));
    }
    Ok(from.names.iter().map(|n| to.index(n)).collect())
}

/// Elements of a Gröbner basis under the elimination order that avoid the masked variables.
pub(crate) fn eliminate_polys(gens: &[Poly], mask: &[bool], p: u32) -> Vec<Poly> {
    let gb = groebner(gens, &Order::Eliminate(mask.to_vec()), p);
    gb.into_iter().filter(|g| g.support().iter().all(|&v| !mask[v])).collect()
}

/// Drop variables with index `>= n` (which must not occur).
fn drop_trailing(f: &Poly, n: usize, p: u32) -> Poly {
    Poly::from_terms(n, f.terms().map(|(m, &c)| (m[..n].to_vec(), c)), p)
}

/// A homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Poly>,
}

impl RingHom {
    /// Checked: every source relation maps to zero in the target.
    pub fn new(source: Arc<GradedRing>, target: Arc<GradedRing>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.nvars() || images.iter().any(|f| f.nvars() != target.nvars()) {
            return Err(Error::domain("one image per source variable required"));
        }
        if source.p != target.p {
            return Err(Error::domain("rings over different primes"));
        }
        let h = RingHom { source, target, images };
        for r in &h.source.relations {
            if !h.target.is_zero(&h.apply(r)) {
                return Err(Error::Verification(format!(
                    "relation {} does not map to zero",
                    h.source.display(r)
                )));
            }
        }
        Ok(h)
    }

    /// Build from `name -> expression` pairs; missing variables map to 0.
    pub fn from_strings(source: Arc<GradedRing>, target: Arc<GradedRing>, images: &[(&str, &str)]) -> Result<Self> {
        let mut imgs = vec![target.zero(); source.nvars()];
        for (name, expr) in images {
            let i = source.index(name).ok_or_else(|| Error::domain(format!("no variable named {name}")))?;
            imgs[i] = target.parse(expr)?;
        }
        RingHom::new(source, target, imgs)
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        f.substitute(&self.images, self.target.nvars(), self.source.p)
    }

    pub fn compose(&self, then: &RingHom) -> Result<RingHom> {
        let images = self.images.iter().map(|f| then.apply(f)).collect();
        RingHom::new(self.source.clone(), then.target.clone(), images)
    }

    /// Image ideal generated by `φ(I)`.
    pub fn push(&self, i: &Ideal) -> Ideal {
        Ideal::unchecked(self.target.clone(), i.gens.iter().map(|g| self.apply(g)).collect())
    }

    /// `φ^{-1}(J)`, by eliminating the target variables from the graph ideal.
    pub fn contract(&self, j: &Ideal) -> Ideal {
        let (nt, ns, p) = (self.target.nvars(), self.source.nvars(), self.source.p);
        let n = nt + ns;
        let tmap: Vec<usize> = (0..nt).collect();
        let mut gens: Vec<Poly> = j.all_gens().iter().map(|g| g.embed(&tmap, n)).collect();
        for (i, f) in self.images.iter().enumerate() {
            gens.push(Poly::var(n, nt + i).sub(&f.embed(&tmap, n), p));
        }
        let mut mask = vec![false; n];
        mask[..nt].fill(true);
        let kept = eliminate_polys(&gens, &mask, p);
        let back = kept
            .iter()
            .map(|g| Poly::from_terms(ns, g.terms().map(|(m, &c)| (m[nt..].to_vec(), c)), p))
            .collect();
        Ideal::unchecked(self.source.clone(), back)
    }
}
