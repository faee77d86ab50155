//! Modular fixed points `Ψ^H`, restriction and inflation on complexes and maps.

use super::complex::{ChainMap, PermComplex};
use crate::error::{Error, Result};
use crate::field::Mat;
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use std::sync::Arc;

/// `Ψ^H: K(G) → K(G/H)` for a normal p-subgroup `H`: keep the `H`-fixed
/// basis points, take submatrices of all differentials and maps.
#[derive(Clone, Debug)]
pub struct Psi {
    h: Subgroup,
    quotient: Arc<FiniteGroup>,
    projection: GroupHom,
    lift: Vec<usize>,
}

impl Psi {
    pub fn new(group: &Arc<FiniteGroup>, h: &Subgroup, p: u32) -> Result<Self> {
        if !group.is_normal(h) {
            return Err(Error::domain(
                "modular fixed points need a normal subgroup; restrict to its normalizer first",
            ));
        }
        if !h.order().is_power_of(p) {
            return Err(Error::domain("modular fixed points need a p-subgroup"));
        }
        let (quotient, projection) = group.quotient(h)?;
        let lift = (0..quotient.order())
            .map(|w| (0..group.order()).find(|&g| projection.apply(g) == w).expect("surjective"))
            .collect();
        Ok(Psi { h: h.clone(), quotient, projection, lift })
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    fn fixed(&self, c: &PermComplex, n: i32) -> Vec<usize> {
        c.module_or_zero(n).fixed_points(&self.h)
    }

    pub fn complex(&self, c: &PermComplex) -> PermComplex {
        let keeps: Vec<Vec<usize>> = (c.lo()..=c.hi()).map(|n| self.fixed(c, n)).collect();
        let modules = (c.lo()..=c.hi())
            .zip(&keeps)
            .map(|(n, keep)| c.module_or_zero(n).restrict_points(self.quotient.clone(), keep, &self.lift))
            .collect();
        let diffs = (c.lo() + 1..=c.hi())
            .map(|n| submatrix(&c.d(n), &keeps[(n - 1 - c.lo()) as usize], &keeps[(n - c.lo()) as usize]))
            .collect();
        PermComplex::new(self.quotient.clone(), c.prime(), c.lo(), modules, diffs)
            .expect("fixed points of a complex of p-permutation modules")
    }

    pub fn map(&self, f: &ChainMap) -> ChainMap {
        let (src, tgt, s) = (f.source(), f.target(), f.shift());
        let comps = (src.lo()..=src.hi())
            .map(|n| submatrix(&f.comp(n), &self.fixed(tgt, n - s), &self.fixed(src, n)))
            .collect();
        ChainMap::new(Arc::new(self.complex(src)), Arc::new(self.complex(tgt)), s, comps)
            .expect("fixed points of a chain map")
    }
}

trait PowerOf {
    fn is_power_of(self, p: u32) -> bool;
}

impl PowerOf for usize {
    fn is_power_of(mut self, p: u32) -> bool {
        while self > 1 && self % p as usize == 0 {
            self /= p as usize;
        }
        self == 1
    }
}

fn submatrix(m: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.set(i, j, m.get(r, c));
        }
    }
    out
}

/// Pullback along a group homomorphism `f: K → G`: restriction when `f` is
/// an inclusion, inflation when it is a projection.
#[derive(Clone, Debug)]
pub struct Pullback {
    hom: GroupHom,
}

impl Pullback {
    pub fn new(hom: GroupHom) -> Self {
        Pullback { hom }
    }

    /// `Res^G_H`.
    pub fn restriction(group: &Arc<FiniteGroup>, h: &Subgroup) -> Self {
        Pullback { hom: group.subgroup_as_group(h).1 }
    }

    pub fn source_group(&self) -> &Arc<FiniteGroup> {
        &self.hom.source
    }

    pub fn complex(&self, c: &PermComplex) -> PermComplex {
        let modules = (c.lo()..=c.hi()).map(|n| c.module_or_zero(n).pullback(&self.hom)).collect();
        let diffs = (c.lo() + 1..=c.hi()).map(|n| c.d(n)).collect();
        PermComplex::new(self.hom.source.clone(), c.prime(), c.lo(), modules, diffs).expect("pullback of a complex")
    }

    pub fn map(&self, f: &ChainMap) -> ChainMap {
        let src = f.source();
        let comps = (src.lo()..=src.hi()).map(|n| f.comp(n)).collect();
        ChainMap::new(Arc::new(self.complex(src)), Arc::new(self.complex(f.target())), f.shift(), comps)
            .expect("pullback of a chain map")
    }
}

/// `Ψ^H(C)` over `G/H`.
pub fn psi(c: &PermComplex, h: &Subgroup) -> Result<PermComplex> {
    Ok(Psi::new(c.group(), h, c.prime())?.complex(c))
}

/// `Res^G_H(C)` over `H`.
pub fn res(c: &PermComplex, h: &Subgroup) -> PermComplex {
    Pullback::restriction(c.group(), h).complex(c)
}

/// Inflate a complex over `G/N` to `G` along `projection: G → G/N`.
pub fn inflate(c: &PermComplex, projection: &GroupHom) -> Result<PermComplex> {
    if !projection.target.same_table(c.group()) || !projection.is_surjective() {
        return Err(Error::domain("inflation needs a surjection onto the complex's group"));
    }
    Ok(Pullback::new(projection.clone()).complex(c))
}
