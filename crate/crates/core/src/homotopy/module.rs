//! Permutation modules: a finite G-set with its linearization.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use std::sync::Arc;

/// One orbit of the basis G-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// `k(X)` for a finite G-set `X = {0..dim}`; `action[g*dim + x] = g·x`.
#[derive(Clone, Debug)]
pub struct PermModule {
    group: Arc<FiniteGroup>,
    dim: usize,
    action: Vec<u32>,
}

impl PermModule {
    pub fn from_action(group: Arc<FiniteGroup>, dim: usize, action: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if action.len() != n * dim {
            return Err(Error::domain("action table has the wrong size"));
        }
        let m = PermModule { group, dim, action };
        for x in 0..dim {
            if m.act(0, x) != x {
                return Err(Error::domain("identity does not act trivially"));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = m.group.mul(g, h);
                for x in 0..dim {
                    if m.act(gh, x) != m.act(g, m.act(h, x)) {
                        return Err(Error::domain("action is not a homomorphism"));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        PermModule { group, dim: 0, action: Vec::new() }
    }

    /// The trivial module `k`.
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        PermModule { group, dim: 1, action: vec![0; n] }
    }

    /// `k(G/H)`, cosets `xH` ordered by their smallest element.
    pub fn cosets(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut count = 0;
        for x in 0..n {
            if coset_of[x] == usize::MAX {
                for &y in h.elements() {
                    coset_of[group.mul(x, y)] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&z| z == c).unwrap()).collect();
        let mut action = vec![0u32; n * count];
        for g in 0..n {
            for (c, &r) in reps.iter().enumerate() {
                action[g * count + c] = coset_of[group.mul(g, r)] as u32;
            }
        }
        PermModule { group, dim: count, action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.dim + x] as usize
    }

    /// Basis of `self ⊗ other` is `(a, b) ↦ a * other.dim + b`, diagonal action.
    pub fn tensor(&self, other: &PermModule) -> PermModule {
        let n = self.group.order();
        let (d1, d2) = (self.dim, other.dim);
        let mut action = vec![0u32; n * d1 * d2];
        for g in 0..n {
            for a in 0..d1 {
                let ga = self.act(g, a);
                for b in 0..d2 {
                    action[g * d1 * d2 + a * d2 + b] = (ga * d2 + other.act(g, b)) as u32;
                }
            }
        }
        PermModule { group: self.group.clone(), dim: d1 * d2, action }
    }

    pub fn direct_sum(group: Arc<FiniteGroup>, parts: &[&PermModule]) -> PermModule {
        let n = group.order();
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let mut action = vec![0u32; n * dim];
        let mut off = 0;
        for m in parts {
            for g in 0..n {
                for x in 0..m.dim {
                    action[g * dim + off + x] = (off + m.act(g, x)) as u32;
                }
            }
            off += m.dim;
        }
        PermModule { group, dim, action }
    }

    /// Orbit decomposition, orbits listed by smallest member.
    pub fn orbits(&self) -> Vec<Orbit> {
        let n = self.group.order();
        let mut seen = vec![false; self.dim];
        let mut out = Vec::new();
        for x in 0..self.dim {
            if seen[x] {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.act(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            let stab = Subgroup::from_elements((0..n).filter(|&g| self.act(g, x) == x).collect());
            out.push(Orbit { representative: x, members, stabilizer: stab });
        }
        out
    }

    /// Smallest member of each orbit, ascending.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.orbits().into_iter().map(|o| o.representative).collect()
    }

    /// Basis points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.dim).filter(|&x| h.elements().iter().all(|&g| self.act(g, x) == x)).collect()
    }

    pub fn is_equivariant(&self, target: &PermModule, m: &crate::field::Mat) -> bool {
        let n = self.group.order();
        if m.rows != target.dim || m.cols != self.dim {
            return false;
        }
        for g in 1..n {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    if m.get(r, c) != m.get(target.act(g, r), self.act(g, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Same G-set viewed through a homomorphism `f: K → G`.
    pub fn pullback(&self, f: &GroupHom) -> PermModule {
        let n = f.source.order();
        let mut action = vec![0u32; n * self.dim];
        for k in 0..n {
            for x in 0..self.dim {
                action[k * self.dim + x] = self.act(f.apply(k), x) as u32;
            }
        }
        PermModule { group: f.source.clone(), dim: self.dim, action }
    }

    /// Restrict to the points `keep` (which must be a union of orbits of the
    /// acting group `group`), with `lift[w]` a preimage in `self.group`.
    pub(crate) fn restrict_points(&self, group: Arc<FiniteGroup>, keep: &[usize], lift: &[usize]) -> PermModule {
        let n = group.order();
        let pos = |x: usize| keep.binary_search(&x).expect("point set is not stable");
        let mut action = vec![0u32; n * keep.len()];
        for w in 0..n {
            for (i, &x) in keep.iter().enumerate() {
                action[w * keep.len() + i] = pos(self.act(lift[w], x)) as u32;
            }
        }
        PermModule { group, dim: keep.len(), action }
    }
}
