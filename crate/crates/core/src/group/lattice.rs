//! Subgroup lattice and p-group invariants.

use super::{FiniteGroup, GroupHom, Subgroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

pub fn subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroups_capped(g, DEFAULT_ORDER_CAP)
}

/// All subgroups, each once, sorted by (order, elements).
///
/// Seeds with the cyclic subgroups and joins with cyclic subgroups until
/// nothing new appears.
pub fn subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::Resource(format!("group order {} exceeds cap {cap}", g.order())));
    }
    let mut cyc_gens: Vec<(usize, Subgroup)> = Vec::new();
    for x in 0..g.order() {
        let c = g.generate(&[x]);
        if !cyc_gens.iter().any(|(_, d)| d == &c) {
            cyc_gens.push((x, c));
        }
    }
    let mut all: BTreeSet<Subgroup> = cyc_gens.iter().map(|(_, c)| c.clone()).collect();
    let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let base = s.small_generators(g);
            for (x, c) in &cyc_gens {
                if c.is_subgroup_of(s) {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(*x);
                let j = g.generate(&gens);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(all.into_iter().collect())
}

/// Normal subgroups of index `p`, sorted.
pub fn index_p_normals(g: &FiniteGroup, p: u32) -> Result<Vec<Subgroup>> {
    if !crate::field::is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if g.order() % p as usize != 0 {
        return Ok(Vec::new());
    }
    let target = g.order() / p as usize;
    Ok(subgroups(g)?
        .into_iter()
        .filter(|h| h.order() == target && g.is_normal(h))
        .collect())
}

/// Normalizer, Weyl group `N_G(H)/H` and the projection from the normalizer.
#[derive(Clone, Debug)]
pub struct Weyl {
    pub normalizer: Subgroup,
    pub group: Arc<FiniteGroup>,
    pub projection: GroupHom,
}

pub fn weyl(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Weyl> {
    let normalizer = g.normalizer(h);
    let (ng, incl) = g.subgroup_as_group(&normalizer);
    let h_in_ng = Subgroup::from_elements(
        h.elements().iter().map(|&x| incl.map.iter().position(|&y| y == x).unwrap()).collect(),
    );
    let (w, proj) = ng.quotient(&h_in_ng)?;
    Ok(Weyl { normalizer, group: w, projection: proj })
}

/// Frattini subgroup of a p-group: the intersection of its index-p normals.
pub fn frattini(g: &FiniteGroup) -> Result<Subgroup> {
    let n = g.order();
    if n == 1 {
        return Ok(g.trivial_subgroup());
    }
    let p = (2..=n as u32).find(|&d| n % d as usize == 0).unwrap();
    if !g.is_p_group(p) {
        return Err(Error::domain("Frattini subgroup requested for a group that is not a p-group"));
    }
    let normals = index_p_normals(g, p)?;
    Ok(normals.iter().fold(g.full_subgroup(), |acc, n| acc.intersect(n)))
}

/// Isomorphism test by generator-image search; intended for order ≤ 16.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let prof = |g: &FiniteGroup| {
        let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        v.sort_unstable();
        v
    };
    if prof(a) != prof(b) || a.is_abelian() != b.is_abelian() {
        return false;
    }
    let gens = a.full_subgroup().small_generators(a);
    let mut images = Vec::new();
    search(a, b, &gens, &mut images)
}

fn search(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return extend_to_iso(a, b, gens, images);
    }
    let want = a.element_order(gens[images.len()]);
    for y in 0..b.order() {
        if b.element_order(y) != want {
            continue;
        }
        images.push(y);
        if search(a, b, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn extend_to_iso(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (g, &im) in gens.iter().zip(images) {
            let y = a.mul(x, *g);
            let my = b.mul(map[x], im);
            if map[y] == usize::MAX {
                map[y] = my;
                frontier.push(y);
            } else if map[y] != my {
                return false;
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == usize::MAX || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}
