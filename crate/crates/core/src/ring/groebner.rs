//! Buchberger's algorithm with the product and chain criteria.

use super::poly::{coprime, mono_div, mono_divides, mono_lcm, mono_mul, Mono, Order, Poly};
use crate::field;
use std::collections::{BTreeMap, BTreeSet};

/// Sort key whose lexicographic order is the monomial order.
fn key(order: &Order, m: &[u16]) -> Vec<i32> {
    let mut k = Vec::with_capacity(m.len() + 2);
    if let Order::Eliminate(mask) = order {
        k.push(m.iter().zip(mask).filter(|(_, &b)| b).map(|(&e, _)| e as i32).sum());
    }
    k.push(m.iter().map(|&e| e as i32).sum());
    k.extend(m.iter().rev().map(|&e| -(e as i32)));
    k
}

/// Monic polynomial with terms in descending order.
#[derive(Clone, Debug)]
struct Elem {
    terms: Vec<(Mono, u32)>,
}

impl Elem {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }
}

struct Ctx<'a> {
    order: &'a Order,
    p: u32,
}

impl Ctx<'_> {
    fn sorted(&self, f: &Poly) -> Vec<(Mono, u32)> {
        let mut t: Vec<(Mono, u32)> = f.terms().map(|(m, &c)| (m.clone(), c)).collect();
        t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        t
    }

    fn monic(&self, mut terms: Vec<(Mono, u32)>) -> Elem {
        let iv = field::inv(terms[0].1, self.p);
        for t in &mut terms {
            t.1 = field::mul(t.1, iv, self.p);
        }
        Elem { terms }
    }

    /// Fully reduce `terms` modulo `basis`; returns descending terms.
    fn reduce(&self, terms: Vec<(Mono, u32)>, basis: &[Elem]) -> Vec<(Mono, u32)> {
        let p = self.p;
        let mut work: BTreeMap<Vec<i32>, (Mono, u32)> =
            terms.into_iter().map(|(m, c)| (key(self.order, &m), (m, c))).collect();
        let mut out = Vec::new();
        while let Some((_, (m, c))) = work.pop_last() {
            match basis.iter().find(|g| mono_divides(g.lm(), &m)) {
                Some(g) => {
                    let q = mono_div(&m, g.lm());
                    for (gm, gc) in &g.terms[1..] {
                        let nm = mono_mul(gm, &q);
                        let k = key(self.order, &nm);
                        let delta = field::neg(field::mul(c, *gc, p), p);
                        match work.get_mut(&k) {
                            Some(e) => {
                                e.1 = field::add(e.1, delta, p);
                                if e.1 == 0 {
                                    work.remove(&k);
                                }
                            }
                            None => {
                                work.insert(k, (nm, delta));
                            }
                        }
                    }
                }
                None => out.push((m, c)),
            }
        }
        out
    }

    fn spoly(&self, f: &Elem, g: &Elem) -> Vec<(Mono, u32)> {
        let p = self.p;
        let l = mono_lcm(f.lm(), g.lm());
        let (qf, qg) = (mono_div(&l, f.lm()), mono_div(&l, g.lm()));
        let mut acc: BTreeMap<Vec<i32>, (Mono, u32)> = BTreeMap::new();
        let mut push = |m: Mono, c: u32| {
            let k = key(self.order, &m);
            let e = acc.entry(k).or_insert((m, 0));
            e.1 = field::add(e.1, c, p);
        };
        for (m, c) in &f.terms[1..] {
            push(mono_mul(m, &qf), *c);
        }
        for (m, c) in &g.terms[1..] {
            push(mono_mul(m, &qg), field::neg(*c, p));
        }
        acc.into_values().rev().filter(|(_, c)| *c != 0).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[Poly], order: &Order, p: u32) -> Vec<Poly> {
    let Some(nvars) = gens.first().map(|g| g.nvars()) else {
        return Vec::new();
    };
    let ctx = Ctx { order, p };
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: BTreeSet<(u32, Vec<i32>, usize, usize)> = BTreeSet::new();
    let mut live: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |r: Vec<(Mono, u32)>,
                   basis: &mut Vec<Elem>,
                   pending: &mut BTreeSet<(u32, Vec<i32>, usize, usize)>,
                   live: &mut BTreeSet<(usize, usize)>| {
        let e = ctx.monic(r);
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let l = mono_lcm(g.lm(), e.lm());
            pending.insert((l.iter().map(|&x| x as u32).sum(), key(order, &l), i, j));
            live.insert((i, j));
        }
        basis.push(e);
    };

    for g in gens {
        let r = ctx.reduce(ctx.sorted(g), &basis);
        if !r.is_empty() {
            add(r, &mut basis, &mut pending, &mut live);
        }
    }
    while let Some(pair) = pending.pop_first() {
        let (_, _, i, j) = pair;
        live.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if coprime(fi.lm(), fj.lm()) {
            continue;
        }
        let l = mono_lcm(fi.lm(), fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(basis[k].lm(), &l)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = ctx.spoly(fi, fj);
        if s.is_empty() {
            continue;
        }
        let r = ctx.reduce(s, &basis);
        if !r.is_empty() {
            add(r, &mut basis, &mut pending, &mut live);
        }
    }
    // minimalize, then interreduce
    let mut minimal: Vec<Elem> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && mono_divides(h.lm(), g.lm()) && (h.lm() != g.lm() || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Elem> = minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, e)| e.clone()).collect();
        let lead = minimal[i].terms[0].clone();
        let tail = ctx.reduce(minimal[i].terms[1..].to_vec(), &others);
        let mut terms = vec![lead];
        terms.extend(tail);
        reduced.push(Poly::from_terms(nvars, terms, p));
    }
    reduced.sort_by(|a, b| {
        let (la, lb) = (a.leading(order).unwrap().0.clone(), b.leading(order).unwrap().0.clone());
        order.cmp(&la, &lb)
    });
    reduced
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form(f: &Poly, gb: &[Poly], order: &Order, p: u32) -> Poly {
    let ctx = Ctx { order, p };
    let basis: Vec<Elem> = gb.iter().filter(|g| !g.is_zero()).map(|g| ctx.monic(ctx.sorted(g))).collect();
    Poly::from_terms(f.nvars(), ctx.reduce(ctx.sorted(f), &basis), p)
}

/// Is `1` in the ideal spanned by a reduced basis?
pub fn is_unit_ideal(gb: &[Poly]) -> bool {
    gb.iter().any(|g| g.len() == 1 && g.terms().all(|(m, _)| m.iter().all(|&e| e == 0)))
}
