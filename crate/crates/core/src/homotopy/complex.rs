//! Bounded complexes of permutation modules and equivariant chain maps.
//!
//! Conventions: differentials lower degree by one. `C[s]` has
//! `C[s]_n = C_{n-s}` with the differential left unchanged, so a map
//! `f: C → D[s]` is a family `f_n: C_n → D_{n-s}` with `d f = f d`.
//! Tensor products use `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.

use super::module::PermModule;
use crate::error::{Error, Result};
use crate::field::{self, Mat};
use crate::group::FiniteGroup;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct PermComplex {
    group: Arc<FiniteGroup>,
    p: u32,
    lo: i32,
    modules: Vec<PermModule>,
    /// `diffs[k]` is `d_{lo+k+1}: C_{lo+k+1} → C_{lo+k}`.
    diffs: Vec<Mat>,
}

impl PermComplex {
    /// Checked constructor: `d∘d = 0` and every differential is equivariant.
    pub fn new(group: Arc<FiniteGroup>, p: u32, lo: i32, modules: Vec<PermModule>, diffs: Vec<Mat>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::domain("a complex needs at least one module slot"));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::domain("need one differential between consecutive modules"));
        }
        for m in &modules {
            if !m.group().same_table(&group) {
                return Err(Error::domain("module over a different group"));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&modules[k + 1], &modules[k]);
            if d.rows != tgt.dim() || d.cols != src.dim() {
                return Err(Error::domain(format!("differential {} has the wrong shape", lo + k as i32 + 1)));
            }
            if !src.is_equivariant(tgt, d) {
                return Err(Error::domain(format!("differential {} is not equivariant", lo + k as i32 + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k], p).is_zero() {
                return Err(Error::domain(format!("d∘d ≠ 0 at degree {}", lo + k as i32 + 1)));
            }
        }
        Ok(PermComplex { group, p, lo, modules, diffs })
    }

    pub fn zero(group: Arc<FiniteGroup>, p: u32) -> Self {
        PermComplex { modules: vec![PermModule::zero(group.clone())], group, p, lo: 0, diffs: vec![] }
    }

    /// The unit `1 = k` in degree zero.
    pub fn unit(group: Arc<FiniteGroup>, p: u32) -> Self {
        PermComplex { modules: vec![PermModule::trivial(group.clone())], group, p, lo: 0, diffs: vec![] }
    }

    /// A single module concentrated in degree `n`.
    pub fn concentrated(module: PermModule, p: u32, n: i32) -> Self {
        PermComplex { group: module.group().clone(), p, lo: n, modules: vec![module], diffs: vec![] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.modules.len() as i32 - 1
    }

    pub fn module(&self, n: i32) -> Option<&PermModule> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.modules[(n - self.lo) as usize])
        }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.module(n).map_or(0, |m| m.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.modules.iter().map(|m| m.dim()).sum()
    }

    /// `d_n: C_n → C_{n-1}` (a zero matrix of the right shape outside the range).
    pub fn d(&self, n: i32) -> Mat {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            Mat::zeros(self.dim(n - 1), self.dim(n))
        }
    }

    pub(crate) fn module_or_zero(&self, n: i32) -> PermModule {
        self.module(n).cloned().unwrap_or_else(|| PermModule::zero(self.group.clone()))
    }

    /// Every degree in the range has a zero module.
    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.dim() == 0)
    }

    /// `C[s]`, same modules and differentials.
    pub fn shift(&self, s: i32) -> PermComplex {
        let mut c = self.clone();
        c.lo += s;
        c
    }

    fn same_ring(&self, other: &PermComplex) -> Result<()> {
        if !self.group.same_table(&other.group) || self.p != other.p {
            return Err(Error::domain("complexes over different groups or primes"));
        }
        Ok(())
    }

    /// Total tensor product with diagonal action.
    pub fn tensor(&self, other: &PermComplex) -> PermComplex {
        assert!(self.same_ring(other).is_ok(), "tensor of complexes over different groups");
        let layout = TensorLayout::new(self, other);
        let p = self.p;
        let mut modules = Vec::new();
        for n in layout.lo..=layout.hi {
            let parts: Vec<PermModule> = layout
                .blocks(n)
                .iter()
                .map(|&(i, _)| self.module_or_zero(i).tensor(&other.module_or_zero(n - i)))
                .collect();
            let refs: Vec<&PermModule> = parts.iter().collect();
            modules.push(PermModule::direct_sum(self.group.clone(), &refs));
        }
        let mut diffs = Vec::new();
        for n in layout.lo + 1..=layout.hi {
            let mut d = Mat::zeros(layout.dim(n - 1), layout.dim(n));
            for &(i, off) in layout.blocks(n) {
                let j = n - i;
                let (ci, dj) = (self.dim(i), other.dim(j));
                // d_C ⊗ 1 into block (i-1, j)
                if let Some(off2) = layout.offset(n - 1, i - 1) {
                    let dc = self.d(i);
                    for a in 0..ci {
                        for a2 in 0..dc.rows {
                            let v = dc.get(a2, a);
                            if v == 0 {
                                continue;
                            }
                            for b in 0..dj {
                                d.set(off2 + a2 * dj + b, off + a * dj + b, v);
                            }
                        }
                    }
                }
                // (-1)^i 1 ⊗ d_D into block (i, j-1)
                if let Some(off2) = layout.offset(n - 1, i) {
                    let dd = other.d(j);
                    let dj2 = dd.rows;
                    for a in 0..ci {
                        for b in 0..dj {
                            for b2 in 0..dj2 {
                                let mut v = dd.get(b2, b);
                                if v == 0 {
                                    continue;
                                }
                                if i.rem_euclid(2) == 1 {
                                    v = field::neg(v, p);
                                }
                                d.set(off2 + a * dj2 + b2, off + a * dj + b, v);
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        PermComplex { group: self.group.clone(), p, lo: layout.lo, modules, diffs }
    }

    /// Degreewise dual: `(C^∨)_n = (C_{-n})^*` with differential
    /// `(-1)^{n+1} d_{1-n}^T`; permutation modules are self-dual.
    pub fn dual(&self) -> PermComplex {
        let p = self.p;
        let lo = -self.hi();
        let modules: Vec<PermModule> = (lo..=-self.lo).map(|n| self.module_or_zero(-n)).collect();
        let diffs = (lo + 1..=-self.lo)
            .map(|n| {
                let t = self.d(1 - n).transpose();
                if (n + 1).rem_euclid(2) == 1 { t.scale(p - 1, p) } else { t }
            })
            .collect();
        PermComplex { group: self.group.clone(), p, lo, modules, diffs }
    }

    /// `C ⊕ D` degreewise.
    pub fn direct_sum(&self, other: &PermComplex) -> PermComplex {
        assert!(self.same_ring(other).is_ok());
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let modules = (lo..=hi)
            .map(|n| PermModule::direct_sum(self.group.clone(), &[&self.module_or_zero(n), &other.module_or_zero(n)]))
            .collect();
        let diffs = (lo + 1..=hi).map(|n| block_diag(&self.d(n), &other.d(n))).collect();
        PermComplex { group: self.group.clone(), p: self.p, lo, modules, diffs }
    }

    pub fn identity(self: &Arc<Self>) -> ChainMap {
        let comps = (self.lo..=self.hi()).map(|n| Mat::identity(self.dim(n))).collect();
        ChainMap { source: self.clone(), target: self.clone(), shift: 0, lo: self.lo, comps }
    }

    /// Complex data as JSON: degrees, orbit stabilizers and row-major matrices.
    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = (self.lo..=self.hi())
            .map(|n| {
                let m = self.module(n).unwrap();
                let orbits: Vec<Value> = m
                    .orbits()
                    .iter()
                    .map(|o| json!({"representative": o.representative, "stabilizer": o.stabilizer.elements()}))
                    .collect();
                json!({"degree": n, "dim": m.dim(), "orbits": orbits})
            })
            .collect();
        let diffs: Vec<Value> = (self.lo + 1..=self.hi())
            .map(|n| {
                let d = self.d(n);
                json!({"from": n, "rows": d.rows, "cols": d.cols, "entries": d.data})
            })
            .collect();
        json!({"prime": self.p, "group_order": self.group.order(), "modules": degrees, "differentials": diffs})
    }
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            m.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows {
        for c in 0..b.cols {
            m.set(a.rows + r, a.cols + c, b.get(r, c));
        }
    }
    m
}

/// Position of the block `C_i ⊗ D_{n-i}` inside `(C⊗D)_n`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub lo: i32,
    pub hi: i32,
    per_degree: Vec<Vec<(i32, usize)>>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new(c: &PermComplex, d: &PermComplex) -> Self {
        let (lo, hi) = (c.lo() + d.lo(), c.hi() + d.hi());
        let mut per_degree = Vec::new();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let mut blocks = Vec::new();
            let mut off = 0;
            for i in c.lo()..=c.hi() {
                let j = n - i;
                if j < d.lo() || j > d.hi() {
                    continue;
                }
                blocks.push((i, off));
                off += c.dim(i) * d.dim(j);
            }
            per_degree.push(blocks);
            dims.push(off);
        }
        TensorLayout { lo, hi, per_degree, dims }
    }

    pub fn blocks(&self, n: i32) -> &[(i32, usize)] {
        if n < self.lo || n > self.hi {
            &[]
        } else {
            &self.per_degree[(n - self.lo) as usize]
        }
    }

    pub fn offset(&self, n: i32, i: i32) -> Option<usize> {
        self.blocks(n).iter().find(|&&(b, _)| b == i).map(|&(_, o)| o)
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi { 0 } else { self.dims[(n - self.lo) as usize] }
    }
}

/// Pure tensor `x ⊗ y` of `x ∈ C_i`, `y ∈ D_j` as a vector of `(C⊗D)_{i+j}`.
pub fn tensor_vectors(c: &PermComplex, d: &PermComplex, i: i32, x: &[u32], j: i32, y: &[u32]) -> Vec<u32> {
    let layout = TensorLayout::new(c, d);
    let p = c.prime();
    let mut v = vec![0u32; layout.dim(i + j)];
    let Some(off) = layout.offset(i + j, i) else { return v };
    let dj = d.dim(j);
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            if yb != 0 {
                v[off + a * dj + b] = field::mul(xa, yb, p);
            }
        }
    }
    v
}

/// Equivariant chain map `f: C → D[shift]`, components `f_n: C_n → D_{n-shift}`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<PermComplex>,
    target: Arc<PermComplex>,
    shift: i32,
    lo: i32,
    comps: Vec<Mat>,
}

impl ChainMap {
    /// Checked constructor; `comps[k]` is the component in source degree `source.lo()+k`.
    pub fn new(source: Arc<PermComplex>, target: Arc<PermComplex>, shift: i32, comps: Vec<Mat>) -> Result<Self> {
        source.same_ring(&target)?;
        let lo = source.lo();
        if comps.len() != source.modules.len() {
            return Err(Error::domain("one component per source degree required"));
        }
        let f = ChainMap { source, target, shift, lo, comps };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let (c, d, p) = (&self.source, &self.target, self.source.p);
        for n in c.lo()..=c.hi() {
            let m = self.comp(n);
            if m.rows != d.dim(n - self.shift) || m.cols != c.dim(n) {
                return Err(Error::domain(format!("component {n} has the wrong shape")));
            }
            if !c.module_or_zero(n).is_equivariant(&d.module_or_zero(n - self.shift), &m) {
                return Err(Error::domain(format!("component {n} is not equivariant")));
            }
        }
        for n in c.lo()..=c.hi() + 1 {
            let lhs = d.d(n - self.shift).mul(&self.comp(n), p);
            let rhs = self.comp(n - 1).mul(&c.d(n), p);
            if lhs != rhs {
                return Err(Error::domain(format!("not a chain map at source degree {n}")));
            }
        }
        Ok(())
    }

    /// A map `1 → D[s]` given by an invariant cycle `v ∈ D_{-s}`.
    pub fn from_unit(target: Arc<PermComplex>, shift: i32, v: Vec<u32>) -> Result<Self> {
        let unit = Arc::new(PermComplex::unit(target.group.clone(), target.p));
        let m = Mat { rows: v.len(), cols: 1, data: v };
        ChainMap::new(unit, target, shift, vec![m])
    }

    pub fn zero(source: Arc<PermComplex>, target: Arc<PermComplex>, shift: i32) -> Self {
        let comps = (source.lo()..=source.hi())
            .map(|n| Mat::zeros(target.dim(n - shift), source.dim(n)))
            .collect();
        ChainMap { lo: source.lo(), source, target, shift, comps }
    }

    pub fn source(&self) -> &Arc<PermComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermComplex> {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn comp(&self, n: i32) -> Mat {
        if n >= self.lo && n < self.lo + self.comps.len() as i32 {
            self.comps[(n - self.lo) as usize].clone()
        } else {
            Mat::zeros(self.target.dim(n - self.shift), self.source.dim(n))
        }
    }

    /// For maps out of the unit: the image of `1`.
    pub fn unit_vector(&self) -> Vec<u32> {
        self.comp(0).column(0)
    }

    fn combine(&self, other: &ChainMap, op: impl Fn(&Mat, &Mat) -> Mat) -> Result<ChainMap> {
        if self.shift != other.shift
            || !Arc::ptr_eq(&self.source, &other.source) && self.source.total_dim() != other.source.total_dim()
        {
            return Err(Error::domain("maps with different shapes"));
        }
        let comps = (self.source.lo()..=self.source.hi()).map(|n| op(&self.comp(n), &other.comp(n))).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), shift: self.shift, lo: self.lo, comps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        let p = self.source.p;
        self.combine(other, |a, b| a.add(b, p))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        let p = self.source.p;
        self.combine(other, |a, b| a.sub(b, p))
    }

    pub fn scale(&self, c: u32) -> ChainMap {
        let p = self.source.p;
        let comps = self.comps.iter().map(|m| m.scale(c % p, p)).collect();
        ChainMap { comps, ..self.clone() }
    }

    /// `then ∘ self`; shifts add.
    pub fn then(&self, then: &ChainMap) -> Result<ChainMap> {
        if self.target.total_dim() != then.source.total_dim() {
            return Err(Error::domain("composition of incompatible maps"));
        }
        let p = self.source.p;
        let comps = (self.source.lo()..=self.source.hi())
            .map(|n| then.comp(n - self.shift).mul(&self.comp(n), p))
            .collect();
        let f = ChainMap {
            source: self.source.clone(),
            target: then.target.clone(),
            shift: self.shift + then.shift,
            lo: self.lo,
            comps,
        };
        f.validate()?;
        Ok(f)
    }

    /// The same data as a degree-preserving map `C → D[shift]`.
    pub fn unshifted(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: Arc::new(self.target.shift(self.shift)),
            shift: 0,
            lo: self.lo,
            comps: self.comps.clone(),
        }
    }

    /// `f ⊗ g` for maps out of the unit: `1 → (X⊗Y)[s+t]`, `1 ↦ f(1) ⊗ g(1)`.
    pub fn tensor_points(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source.total_dim() != 1 || other.source.total_dim() != 1 {
            return Err(Error::domain("tensor_points expects maps out of the unit"));
        }
        let (x, y) = (&self.target, &other.target);
        let v = tensor_vectors(x, y, -self.shift, &self.unit_vector(), -other.shift, &other.unit_vector());
        ChainMap::from_unit(Arc::new(x.tensor(y)), self.shift + other.shift, v)
    }

    /// Mapping cone of `f: C → D[s]`: `cone_n = C_{n-1} ⊕ D[s]_n` with
    /// differential `(c, x) ↦ (-dc, f c + dx)`.
    pub fn cone(&self) -> PermComplex {
        let f = self.unshifted();
        let (c, d, p) = (&f.source, &f.target, f.source.p);
        let lo = (c.lo() + 1).min(d.lo());
        let hi = (c.hi() + 1).max(d.hi());
        let modules = (lo..=hi)
            .map(|n| PermModule::direct_sum(c.group.clone(), &[&c.module_or_zero(n - 1), &d.module_or_zero(n)]))
            .collect();
        let diffs = (lo + 1..=hi)
            .map(|n| {
                let (c1, c2) = (c.dim(n - 1), c.dim(n - 2));
                let (d1, d2) = (d.dim(n), d.dim(n - 1));
                let mut m = Mat::zeros(c2 + d2, c1 + d1);
                let dc = c.d(n - 1);
                for r in 0..c2 {
                    for k in 0..c1 {
                        m.set(r, k, field::neg(dc.get(r, k), p));
                    }
                }
                let fc = f.comp(n - 1);
                for r in 0..d2 {
                    for k in 0..c1 {
                        m.set(c2 + r, k, fc.get(r, k));
                    }
                }
                let dd = d.d(n);
                for r in 0..d2 {
                    for k in 0..d1 {
                        m.set(c2 + r, c1 + k, dd.get(r, k));
                    }
                }
                m
            })
            .collect();
        PermComplex::new(c.group.clone(), p, lo, modules, diffs).expect("cone of a chain map is a complex")
    }
}

/// Coevaluation `1 → C ⊗ C^∨`, `1 ↦ Σ e_b ⊗ e_b^*`.
pub fn coevaluation(c: &PermComplex) -> Result<ChainMap> {
    let dual = c.dual();
    let t = c.tensor(&dual);
    let layout = TensorLayout::new(c, &dual);
    let mut v = vec![0u32; layout.dim(0)];
    for &(i, off) in layout.blocks(0) {
        let di = c.dim(i);
        for b in 0..di {
            v[off + b * di + b] = 1;
        }
    }
    ChainMap::from_unit(Arc::new(t), 0, v)
}

/// The symmetry `x⊗y ↦ (-1)^{|x||y|} y⊗x` on `C ⊗ C`.
pub fn switch_map(c: &Arc<PermComplex>) -> Result<ChainMap> {
    let t = Arc::new(c.tensor(c));
    let layout = TensorLayout::new(c, c);
    let p = c.prime();
    let comps = (t.lo()..=t.hi())
        .map(|n| {
            let dim = layout.dim(n);
            let mut m = Mat::zeros(dim, dim);
            for &(i, off) in layout.blocks(n) {
                let j = n - i;
                let off2 = layout.offset(n, j).expect("symmetric layout");
                let (di, dj) = (c.dim(i), c.dim(j));
                let sign = if (i * j).rem_euclid(2) == 1 { p - 1 } else { 1 % p };
                for a in 0..di {
                    for b in 0..dj {
                        m.set(off2 + b * di + a, off + a * dj + b, sign);
                    }
                }
            }
            m
        })
        .collect();
    ChainMap::new(t.clone(), t, 0, comps)
}
