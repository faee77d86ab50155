//! The category of elementary abelian `p`-sections `(H, K)` of a finite
//! group, its reduced quotients, maximal objects and maximal spans.
//!
//! A morphism `(H,K) → (H',K')` is an element `g` with
//! `H^g ∩ K' ≤ K^g ≤ H^g ≤ H'` and `K' ≤ H^g`, that is `K' ≤ K^g ≤ H^g ≤ H'`;
//! composition is multiplication in `G`, so `g` followed by `h` is `g·h`.
//!
//! The extra condition `K' ≤ H^g` is what makes the restriction step
//! commute with modular fixed points (`Res ∘ Ψ^{K'} ≅ Ψ^{H^g ∩ K'} ∘ Res`
//! needs `H^g ∩ K' = K'`). Without it `C_8` would have a morphism
//! `(C_2, C_2) → (C_8, C_4)` whose induced map sends `M(C_2)` to `M(C_4)`.

use crate::error::{Error, Result};
use crate::group::{subgroups, FiniteGroup, Subgroup};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionObject {
    pub h: Subgroup,
    pub k: Subgroup,
    /// `log_p |H/K|`.
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SectionMorphism {
    pub source: usize,
    pub target: usize,
    pub g: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Every valid element is its own morphism.
    Raw,
    /// Classes under `g ~ g·x` for `x ∈ Z(G)·H'` (`H'` the target's top group).
    CenterTarget,
    /// Classes of morphisms inducing the same map of spectrum skeletons.
    Full,
}

impl std::str::FromStr for Reduction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Reduction::Raw),
            "center_target" | "center-target" => Ok(Reduction::CenterTarget),
            "full" => Ok(Reduction::Full),
            _ => Err(Error::parse(0, format!("unknown reduction `{s}`"))),
        }
    }
}

/// A span `x1 ← middle → x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpanRelation {
    pub middle: usize,
    pub left: SectionMorphism,
    pub right: SectionMorphism,
    pub nondegenerate: bool,
}

#[derive(Debug)]
pub struct SectionCategory {
    group: Arc<FiniteGroup>,
    p: u32,
    objects: Vec<SectionObject>,
    /// `conj[x][g]`: the object `(H^g, K^g)`.
    conj: Vec<Vec<usize>>,
    /// `Z(G)·H` for the top group of every object.
    right_action: Vec<Subgroup>,
}

fn is_power_of(n: usize, p: usize) -> bool {
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

impl SectionCategory {
    pub fn new(group: Arc<FiniteGroup>, p: u32) -> Result<Self> {
        if !crate::field::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let g = &group;
        let psubs: Vec<Subgroup> = subgroups(g)?.into_iter().filter(|s| is_power_of(s.order(), p as usize)).collect();
        let mut objects = Vec::new();
        for h in &psubs {
            for k in psubs.iter().filter(|k| k.is_subgroup_of(h)) {
                if !g.is_normal_in(k, h) {
                    continue;
                }
                let elementary = h.elements().iter().all(|&x| {
                    k.contains(g.pow(x, p as u64))
                        && h.elements().iter().all(|&y| k.contains(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))))
                });
                if elementary {
                    let mut rank = 0;
                    let mut q = h.order() / k.order();
                    while q > 1 {
                        q /= p as usize;
                        rank += 1;
                    }
                    objects.push(SectionObject { h: h.clone(), k: k.clone(), rank });
                }
            }
        }
        objects.sort();
        let conj = objects
            .iter()
            .map(|o| {
                (0..g.order())
                    .map(|x| {
                        let (h, k) = (g.conjugate(&o.h, x), g.conjugate(&o.k, x));
                        objects.iter().position(|y| y.h == h && y.k == k).expect("conjugate section")
                    })
                    .collect()
            })
            .collect();
        let z = g.center();
        let right_action = objects.iter().map(|o| g.join(&z, &o.h)).collect();
        Ok(SectionCategory { group, p, objects, conj, right_action })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn objects(&self) -> &[SectionObject] {
        &self.objects
    }

    pub fn object(&self, x: usize) -> &SectionObject {
        &self.objects[x]
    }

    pub fn index_of(&self, h: &Subgroup, k: &Subgroup) -> Option<usize> {
        self.objects.iter().position(|o| &o.h == h && &o.k == k)
    }

    /// `(H^g, K^g)`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.conj[x][g]
    }

    pub fn label(&self, x: usize) -> String {
        let o = &self.objects[x];
        format!("({},{})", o.h.label(&self.group), o.k.label(&self.group))
    }

    pub fn is_morphism(&self, x: usize, y: usize, g: usize) -> bool {
        let xg = &self.objects[self.conj[x][g]];
        let t = &self.objects[y];
        xg.h.is_subgroup_of(&t.h) && t.k.is_subgroup_of(&xg.k)
    }

    pub fn raw_homs(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.is_morphism(x, y, g)).collect()
    }

    pub fn identity(&self, x: usize) -> SectionMorphism {
        SectionMorphism { source: x, target: x, g: 0 }
    }

    pub fn morphism(&self, x: usize, y: usize, g: usize) -> Result<SectionMorphism> {
        if !self.is_morphism(x, y, g) {
            return Err(Error::domain(format!(
                "{} is not a morphism {} -> {}",
                self.group.name(g),
                self.label(x),
                self.label(y)
            )));
        }
        Ok(SectionMorphism { source: x, target: y, g })
    }

    /// `m` followed by `n`.
    pub fn compose(&self, m: &SectionMorphism, n: &SectionMorphism) -> Result<SectionMorphism> {
        if m.target != n.source {
            return Err(Error::domain("morphisms are not composable"));
        }
        self.morphism(m.source, n.target, self.group.mul(m.g, n.g))
    }

    pub fn is_iso(&self, m: &SectionMorphism) -> bool {
        self.conj[m.source][m.g] == m.target
    }

    /// Class representative under the right `Z(G)·H'` action: the least element of `g·(Z(G)·H')`.
    pub fn center_target_rep(&self, m: &SectionMorphism) -> SectionMorphism {
        let g = &self.group;
        let rep = self.right_action[m.target].elements().iter().map(|&x| g.mul(m.g, x)).min().unwrap();
        SectionMorphism { g: rep, ..*m }
    }

    /// Equality of morphism classes. `Full` is decided by comparing the
    /// induced maps on rational-level skeletons.
    pub fn same_class(&self, a: &SectionMorphism, b: &SectionMorphism, reduction: Reduction) -> Result<bool> {
        if a.source != b.source || a.target != b.target {
            return Ok(false);
        }
        Ok(match reduction {
            Reduction::Raw => a.g == b.g,
            Reduction::CenterTarget => self.center_target_rep(a) == self.center_target_rep(b),
            Reduction::Full => {
                self.center_target_rep(a) == self.center_target_rep(b)
                    || crate::spectrum::same_induced_map(self, a, b)?
            }
        })
    }

    /// Representatives of the morphism classes `x → y`.
    pub fn homs(&self, x: usize, y: usize, reduction: Reduction) -> Result<Vec<SectionMorphism>> {
        let raw: Vec<SectionMorphism> =
            self.raw_homs(x, y).into_iter().map(|g| SectionMorphism { source: x, target: y, g }).collect();
        match reduction {
            Reduction::Raw => Ok(raw),
            _ => {
                let ct: BTreeSet<SectionMorphism> = raw.iter().map(|m| self.center_target_rep(m)).collect();
                if reduction == Reduction::CenterTarget {
                    return Ok(ct.into_iter().collect());
                }
                let mut out: Vec<SectionMorphism> = Vec::new();
                for m in ct {
                    let mut new = true;
                    for r in &out {
                        if self.same_class(r, &m, Reduction::Full)? {
                            new = false;
                            break;
                        }
                    }
                    if new {
                        out.push(m);
                    }
                }
                Ok(out)
            }
        }
    }

    /// `m = c ; b ; a` with `c: (H,K) → (H, H∩ᵍK')` and
    /// `b: (H, H∩ᵍK') → (ᵍH', ᵍK')` given by 1, and `a: (ᵍH', ᵍK') → (H', K')` given by `g`.
    pub fn factorize(&self, m: &SectionMorphism) -> Result<[SectionMorphism; 3]> {
        let g = &self.group;
        let x = &self.objects[m.source];
        let ginv = g.inv(m.g);
        let gy = self.conj[m.target][ginv];
        let kbar = x.h.intersect(&self.objects[gy].k);
        let mid = self.index_of(&x.h, &kbar).ok_or_else(|| Error::domain("intermediate section missing"))?;
        let c = self.morphism(m.source, mid, 0)?;
        let b = self.morphism(mid, gy, 0)?;
        let a = self.morphism(gy, m.target, m.g)?;
        Ok([c, b, a])
    }

    /// `x ≤ y` iff some morphism `x → y` exists.
    pub fn preceq(&self, x: usize, y: usize) -> bool {
        (0..self.group.order()).any(|g| self.is_morphism(x, y, g))
    }

    /// Least object index in the conjugacy class of `x`.
    pub fn conjugacy_rep(&self, x: usize) -> usize {
        *self.conj[x].iter().min().unwrap()
    }

    /// Maximal objects of the preorder, one per conjugacy class.
    pub fn maxel(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut out = BTreeSet::new();
        for x in 0..n {
            let maximal = (0..n).all(|y| !self.preceq(x, y) || self.preceq(y, x));
            if maximal {
                out.insert(self.conjugacy_rep(x));
            }
        }
        out.into_iter().collect()
    }

    pub fn is_ei(&self, reduction: Reduction) -> Result<bool> {
        for x in 0..self.objects.len() {
            for m in self.homs(x, x, reduction)? {
                if !self.is_iso(&m) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Is `h: y → y'` followed by some legs equal to the legs of `s`?
    fn factors_through(&self, s: &SpanRelation, y2: usize, h: usize) -> bool {
        let g = &self.group;
        let hinv = g.inv(h);
        self.is_morphism(y2, s.left.target, g.mul(hinv, s.left.g))
            && self.is_morphism(y2, s.right.target, g.mul(hinv, s.right.g))
    }

    fn is_maximal_span(&self, s: &SpanRelation) -> bool {
        for y2 in 0..self.objects.len() {
            for h in self.raw_homs(s.middle, y2) {
                let m = SectionMorphism { source: s.middle, target: y2, g: h };
                if !self.is_iso(&m) && self.factors_through(s, y2, h) {
                    return false;
                }
            }
        }
        true
    }

    fn spans_isomorphic(&self, a: &SpanRelation, b: &SpanRelation, reduction: Reduction) -> Result<bool> {
        let g = &self.group;
        for h in 0..g.order() {
            if self.conj[a.middle][h] != b.middle {
                continue;
            }
            let iso = SectionMorphism { source: a.middle, target: b.middle, g: h };
            let l = self.compose(&iso, &b.left)?;
            let r = self.compose(&iso, &b.right)?;
            if self.same_class(&l, &a.left, reduction)? && self.same_class(&r, &a.right, reduction)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Maximal spans between maximal objects, up to isomorphism (and up to
    /// swapping the legs of loops), with degenerate identity spans removed.
    pub fn maximal_relations(&self, reduction: Reduction) -> Result<Vec<SpanRelation>> {
        let maxel = self.maxel();
        let reps: BTreeSet<usize> = (0..self.objects.len()).map(|x| self.conjugacy_rep(x)).collect();
        let mut out = Vec::new();
        for (i, &x1) in maxel.iter().enumerate() {
            for &x2 in &maxel[i..] {
                let mut found: Vec<SpanRelation> = Vec::new();
                for &y in &reps {
                    for f1 in self.homs(y, x1, reduction)? {
                        for f2 in self.homs(y, x2, reduction)? {
                            let s = SpanRelation { middle: y, left: f1, right: f2, nondegenerate: true };
                            if !self.is_maximal_span(&s) {
                                continue;
                            }
                            let mut known = false;
                            for t in &found {
                                let rev = SpanRelation { left: t.right, right: t.left, ..*t };
                                if self.spans_isomorphic(&s, t, reduction)?
                                    || (x1 == x2 && self.spans_isomorphic(&s, &rev, reduction)?)
                                {
                                    known = true;
                                    break;
                                }
                            }
                            if !known {
                                found.push(s);
                            }
                        }
                    }
                }
                for mut s in found {
                    if x1 == x2 {
                        let id = SpanRelation {
                            middle: x1,
                            left: self.identity(x1),
                            right: self.identity(x1),
                            nondegenerate: false,
                        };
                        s.nondegenerate = !self.spans_isomorphic(&s, &id, reduction)?;
                    }
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    /// Hasse diagram of the object preorder on conjugacy classes, in DOT.
    pub fn poset_dot(&self) -> String {
        let reps: Vec<usize> = {
            let s: BTreeSet<usize> = (0..self.objects.len()).map(|x| self.conjugacy_rep(x)).collect();
            s.into_iter().collect()
        };
        let below = |a: usize, b: usize| a != b && self.preceq(a, b) && !self.preceq(b, a);
        let mut out = String::from("digraph sections {\n  rankdir=BT;\n");
        for &x in &reps {
            let _ = writeln!(out, "  s{x} [label=\"{}\"];", self.label(x));
        }
        for &a in &reps {
            for &b in &reps {
                if below(a, b) && !reps.iter().any(|&c| below(a, c) && below(c, b)) {
                    let _ = writeln!(out, "  s{a} -> s{b};");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// The diagram of maximal objects and nondegenerate maximal relations, in DOT.
    pub fn relations_dot(&self, relations: &[SpanRelation]) -> String {
        let mut out = String::from("digraph relations {\n");
        for x in self.maxel() {
            let _ = writeln!(out, "  s{x} [label=\"{}\", shape=box];", self.label(x));
        }
        for (i, r) in relations.iter().filter(|r| r.nondegenerate).enumerate() {
            let _ = writeln!(out, "  r{i} [label=\"{}\", shape=ellipse];", self.label(r.middle));
            let g = &self.group;
            let _ = writeln!(out, "  r{i} -> s{} [label=\"{}\"];", r.left.target, g.name(r.left.g));
            let _ = writeln!(out, "  r{i} -> s{} [label=\"{}\"];", r.right.target, g.name(r.right.g));
        }
        out.push_str("}\n");
        out
    }
}
