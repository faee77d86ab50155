//! Coordinates on an elementary abelian section `H/K`.

use crate::error::{Error, Result};
use crate::field::Mat;
use crate::group::{FiniteGroup, Subgroup};
use crate::twisted::{all_vectors, Subspace};
use std::sync::Arc;

/// `H/K ≅ F_p^r` on a greedy basis: `h_i` is the least element of `H`
/// outside `⟨K, h_1, …, h_{i-1}⟩`.
#[derive(Clone, Debug)]
pub struct SectionModel {
    group: Arc<FiniteGroup>,
    p: u32,
    pub h: Subgroup,
    pub k: Subgroup,
    pub basis: Vec<usize>,
    /// `coords[x]` for `x ∈ H`, indexed by element.
    coords: Vec<Option<Vec<u32>>>,
}

impl SectionModel {
    pub fn new(group: Arc<FiniteGroup>, p: u32, h: &Subgroup, k: &Subgroup) -> Result<Self> {
        if !group.is_normal_in(k, h) {
            return Err(Error::domain("K must be normal in H"));
        }
        let mut basis = Vec::new();
        let mut cur = k.clone();
        for &x in h.elements() {
            if !cur.contains(x) {
                basis.push(x);
                let gens: Vec<usize> = k.elements().iter().copied().chain(basis.iter().copied()).collect();
                cur = group.generate(&gens);
            }
        }
        let r = basis.len();
        if h.order() != k.order() * (p as usize).pow(r as u32) {
            return Err(Error::domain("H/K is not elementary abelian"));
        }
        let mut coords = vec![None; group.order()];
        for v in all_vectors(p, r) {
            let mut x = 0;
            for (i, &c) in v.iter().enumerate() {
                x = group.mul(x, group.pow(basis[i], c as u64));
            }
            for &kk in k.elements() {
                coords[group.mul(x, kk)] = Some(v.clone());
            }
        }
        Ok(SectionModel { group, p, h: h.clone(), k: k.clone(), basis, coords })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x ∈ H` modulo `K`.
    pub fn vec(&self, x: usize) -> Option<&[u32]> {
        self.coords.get(x).and_then(|c| c.as_deref())
    }

    /// `L/K` for `K ≤ L ≤ H`.
    pub fn subspace_of(&self, l: &Subgroup) -> Result<Subspace> {
        if !self.k.is_subgroup_of(l) || !l.is_subgroup_of(&self.h) {
            return Err(Error::domain("subgroup is not between K and H"));
        }
        let rows: Vec<Vec<u32>> = l.elements().iter().map(|&x| self.vec(x).unwrap().to_vec()).collect();
        Ok(Subspace::span(self.p, self.rank(), &rows))
    }

    /// The preimage of `s` in `H`.
    pub fn subgroup_of(&self, s: &Subspace) -> Subgroup {
        Subgroup::from_elements(self.h.elements().iter().copied().filter(|&x| s.contains(self.vec(x).unwrap())).collect())
    }

    /// Matrix of `x ↦ x^g` on the basis of this section, into `target`,
    /// together with the image of `K^g`; `None` when `H^g` is not
    /// contained in the target's top group.
    pub fn conjugation_matrix(&self, target: &SectionModel, g: usize) -> Option<(Mat, Subspace)> {
        let mut m = Mat::zeros(target.rank(), self.rank());
        for (j, &b) in self.basis.iter().enumerate() {
            let v = target.vec(self.group.conj(b, g))?;
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let kappa: Vec<Vec<u32>> =
            self.k.elements().iter().map(|&x| target.vec(self.group.conj(x, g)).map(|v| v.to_vec())).collect::<Option<_>>()?;
        Some((m, Subspace::span(self.p, target.rank(), &kappa)))
    }
}
