//! Finite groups stored as Cayley tables.
//!
//! Element `0` is always the identity. Subgroups are sorted element sets
//! and carry no back-pointer; every operation takes the ambient group
//! explicitly.

mod build;
mod lattice;

pub use build::{GroupSpec, PermGenerator};
pub use lattice::{are_isomorphic, frattini, index_p_normals, subgroups, subgroups_capped, weyl, Weyl};

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Default cap on |G| for subgroup enumeration.
pub const DEFAULT_ORDER_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
    generators: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// Build from a full multiplication table, checking the group axioms.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::domain("empty multiplication table"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::domain(format!("row {i} has length {} instead of {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::domain(format!("entry {x} out of range in row {i}")));
                }
                flat.push(x as u32);
            }
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(Error::domain("name list length differs from order"));
            }
        }
        Self::from_flat(n, flat, names)
    }

    pub(crate) fn from_flat(n: usize, flat: Vec<u32>, names: Option<Vec<String>>) -> Result<Self> {
        for i in 0..n {
            if flat[i] as usize != i || flat[i * n] as usize != i {
                return Err(Error::domain("element 0 is not the identity"));
            }
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let r = flat[i * n + j] as usize;
                let c = flat[j * n + i] as usize;
                if row[r] || col[c] {
                    return Err(Error::domain(format!("row or column {i} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let mut inverses = vec![0u32; n];
        for i in 0..n {
            inverses[i] = (0..n).find(|&j| flat[i * n + j] == 0).unwrap() as u32;
        }
        let g = FiniteGroup { order: n, table: flat, inverses, names, generators: None };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::domain(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::domain(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn with_generators(mut self, gens: Vec<usize>) -> Self {
        self.generators = Some(gens);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(ns) => ns[a].clone(),
            None => format!("g{a}"),
        }
    }

    /// Look up an element by its label (or `g<index>` when unnamed).
    pub fn find(&self, label: &str) -> Option<usize> {
        (0..self.order).find(|&i| self.name(i) == label)
    }

    pub fn generator_witness(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Two groups with identical tables are interchangeable.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order;
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }

    pub fn is_elementary_abelian(&self, p: u32) -> bool {
        self.is_abelian() && (1..self.order).all(|a| self.element_order(a) == p as usize)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: set.into_iter().collect() }
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a.small_generators(self).into_iter().chain(b.small_generators(self)).collect();
        self.generate(&gens)
    }

    pub fn center(&self) -> Subgroup {
        let els = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup { elements: els }
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut els: Vec<usize> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        els.sort_unstable();
        Subgroup { elements: els }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let els = (0..self.order).filter(|&g| &self.conjugate(h, g) == h).collect();
        Subgroup { elements: els }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|g| &self.conjugate(h, g) == h)
    }

    /// Is `k` normal in `h` (both subgroups of `self`)?
    pub fn is_normal_in(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.is_subgroup_of(h) && h.elements.iter().all(|&g| &self.conjugate(k, g) == k)
    }

    /// The subgroup as a group in its own right, with the inclusion.
    pub fn subgroup_as_group(self: &Arc<Self>, h: &Subgroup) -> (Arc<FiniteGroup>, GroupHom) {
        let els = &h.elements;
        let n = els.len();
        let pos = |x: usize| els.binary_search(&x).expect("subgroup not closed");
        let mut flat = Vec::with_capacity(n * n);
        for &a in els {
            for &b in els {
                flat.push(pos(self.mul(a, b)) as u32);
            }
        }
        let names = Some(els.iter().map(|&x| self.name(x)).collect());
        let sub = Arc::new(FiniteGroup::from_flat(n, flat, names).expect("subgroup table is a group"));
        let hom = GroupHom { source: sub.clone(), target: self.clone(), map: els.clone() };
        (sub, hom)
    }

    /// `G/N` with cosets ordered by their smallest element.
    pub fn quotient(self: &Arc<Self>, nsub: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        if !self.is_normal(nsub) {
            return Err(Error::domain("quotient by a subgroup that is not normal"));
        }
        let n = self.order;
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in &nsub.elements {
                coset_of[self.mul(g, x)] = idx;
            }
        }
        let m = reps.len();
        let mut flat = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                flat.push(coset_of[self.mul(a, b)] as u32);
            }
        }
        let names = Some(reps.iter().map(|&r| format!("{}N", self.name(r))).collect());
        let q = Arc::new(FiniteGroup::from_flat(m, flat, names)?);
        let hom = GroupHom { source: self.clone(), target: q.clone(), map: coset_of };
        Ok((q, hom))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.len().cmp(&other.elements.len()).then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// Trusts the caller that `elements` is a subgroup; sorts and dedups.
    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    /// Checked constructor.
    pub fn new(g: &FiniteGroup, elements: Vec<usize>) -> Result<Self> {
        let s = Subgroup::from_elements(elements);
        if !s.contains(0) {
            return Err(Error::domain("subgroup must contain the identity"));
        }
        for &a in &s.elements {
            if a >= g.order() || !s.contains(g.inv(a)) {
                return Err(Error::domain("subset not closed under inverses"));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::domain("subset not closed under multiplication"));
                }
            }
        }
        Ok(s)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    /// A short generating set found greedily in element order.
    pub fn small_generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = g.trivial_subgroup();
        for &x in &self.elements {
            if !cur.contains(x) {
                gens.push(x);
                cur = g.generate(&gens);
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Label like `<r2,s>`, or `1` for the trivial subgroup.
    pub fn label(&self, g: &FiniteGroup) -> String {
        if self.is_trivial() {
            return "1".into();
        }
        let names: Vec<String> = self.small_generators(g).iter().map(|&x| g.name(x)).collect();
        format!("<{}>", names.join(","))
    }
}

/// A group homomorphism given by its values on element indices.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::domain("map has wrong length or out-of-range values"));
        }
        if map[0] != 0 {
            return Err(Error::domain("identity not sent to identity"));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::domain(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_elements((0..self.source.order()).filter(|&x| self.map[x] == 0).collect())
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn compose(&self, then: &GroupHom) -> GroupHom {
        GroupHom {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&x| then.map[x]).collect(),
        }
    }
}
