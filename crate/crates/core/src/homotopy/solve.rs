//! Equivariant linear systems: null-homotopies, contractibility, hom
//! dimensions and the search for comparison isomorphisms.
//!
//! Unknowns are equivariant maps between permutation modules, parametrized
//! by the G-orbits on pairs of basis points. An equation `Σ L·X·R = F`
//! between equivariant maps only needs checking on one column per source
//! orbit, and within that column on one row per orbit of the column's
//! stabilizer.

use super::complex::{ChainMap, PermComplex};
use super::module::PermModule;
use crate::field::{self, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

struct Block {
    src: PermModule,
    tgt: PermModule,
    /// Orbit index of the pair `(y, x)`, stored at `y * src.dim + x`.
    orbit_of: Vec<u32>,
    norbits: usize,
    offset: usize,
}

impl Block {
    fn new(src: PermModule, tgt: PermModule, offset: usize) -> Self {
        let (ds, dt) = (src.dim(), tgt.dim());
        let n = src.group().order();
        let mut orbit_of = vec![u32::MAX; ds * dt];
        let mut norbits = 0;
        for y in 0..dt {
            for x in 0..ds {
                if orbit_of[y * ds + x] != u32::MAX {
                    continue;
                }
                for g in 0..n {
                    orbit_of[tgt.act(g, y) * ds + src.act(g, x)] = norbits as u32;
                }
                norbits += 1;
            }
        }
        Block { src, tgt, orbit_of, norbits, offset }
    }

    fn matrix(&self, x: &[u32]) -> Mat {
        let (ds, dt) = (self.src.dim(), self.tgt.dim());
        let mut m = Mat::zeros(dt, ds);
        for (i, &o) in self.orbit_of.iter().enumerate() {
            m.data[i] = x[self.offset + o as usize];
        }
        m
    }
}

/// A term `L · X_block · R`; `None` stands for an identity factor.
pub(crate) struct Term<'a> {
    pub left: Option<&'a Mat>,
    pub block: usize,
    pub right: Option<&'a Mat>,
    pub coeff: u32,
}

pub(crate) struct System {
    p: u32,
    blocks: Vec<Block>,
    nvars: usize,
    rows: Vec<Vec<(usize, u32)>>,
    rhs: Vec<u32>,
    inconsistent: bool,
}

impl System {
    pub fn new(p: u32) -> Self {
        System { p, blocks: vec![], nvars: 0, rows: vec![], rhs: vec![], inconsistent: false }
    }

    pub fn add_block(&mut self, src: PermModule, tgt: PermModule) -> usize {
        let b = Block::new(src, tgt, self.nvars);
        self.nvars += b.norbits;
        self.blocks.push(b);
        self.blocks.len() - 1
    }

    /// Impose `Σ terms = f`, an equation between equivariant maps `col_mod → row_mod`.
    pub fn add_equation(&mut self, terms: &[Term], f: &Mat, row_mod: &PermModule, col_mod: &PermModule) {
        let p = self.p;
        let n = row_mod.group().order();
        for c in col_mod.orbit_representatives() {
            let stab: Vec<usize> = (0..n).filter(|&g| col_mod.act(g, c) == c).collect();
            let mut seen = vec![false; row_mod.dim()];
            let mut reps = Vec::new();
            for r in 0..row_mod.dim() {
                if !seen[r] {
                    reps.push(r);
                    for &g in &stab {
                        seen[row_mod.act(g, r)] = true;
                    }
                }
            }
            // coefficient rows for this column, indexed like `reps`
            let mut coeffs: Vec<std::collections::BTreeMap<usize, u32>> = vec![Default::default(); reps.len()];
            for t in terms {
                let b = &self.blocks[t.block];
                let ds = b.src.dim();
                let rcol: Vec<(usize, u32)> = match t.right {
                    Some(r) => (0..r.rows).map(|x| (x, r.get(x, c))).filter(|&(_, v)| v != 0).collect(),
                    None => vec![(c, 1)],
                };
                for &(x, rv) in &rcol {
                    for y in 0..b.tgt.dim() {
                        let var = b.offset + b.orbit_of[y * ds + x] as usize;
                        for (k, &r) in reps.iter().enumerate() {
                            let lv = match t.left {
                                Some(l) => l.get(r, y),
                                None => u32::from(r == y),
                            };
                            if lv == 0 {
                                continue;
                            }
                            let add = field::mul(field::mul(lv, rv, p), t.coeff % p, p);
                            let e = coeffs[k].entry(var).or_insert(0);
                            *e = field::add(*e, add, p);
                        }
                    }
                }
            }
            for (k, &r) in reps.iter().enumerate() {
                let row: Vec<(usize, u32)> = coeffs[k].iter().filter(|(_, &v)| v != 0).map(|(&i, &v)| (i, v)).collect();
                let rhs = f.get(r, c) % p;
                if row.is_empty() {
                    if rhs != 0 {
                        self.inconsistent = true;
                    }
                    continue;
                }
                self.rows.push(row);
                self.rhs.push(rhs);
            }
        }
    }

    pub fn solve(&self) -> Option<field::Solution> {
        if self.inconsistent {
            return None;
        }
        let mut a = Mat::zeros(self.rows.len(), self.nvars);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                a.set(i, j, v);
            }
        }
        field::solve(&a, &self.rhs, self.p)
    }

    pub fn block_matrix(&self, b: usize, x: &[u32]) -> Mat {
        self.blocks[b].matrix(x)
    }
}

/// Components `h_n: C_n → D_{n-s+1}` of a homotopy for `f: C → D[s]`,
/// indexed by source degree from `C.lo()`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub lo: i32,
    pub comps: Vec<Mat>,
}

impl Homotopy {
    pub fn comp(&self, n: i32, rows: usize, cols: usize) -> Mat {
        if n >= self.lo && n < self.lo + self.comps.len() as i32 {
            self.comps[(n - self.lo) as usize].clone()
        } else {
            Mat::zeros(rows, cols)
        }
    }
}

/// Check `f_n = d h_n + h_{n-1} d` in every degree, and that `h` is equivariant.
pub fn verify_homotopy(f: &ChainMap, h: &Homotopy) -> bool {
    let (c, d, s) = (f.source(), f.target(), f.shift());
    let p = c.prime();
    let hc = |n: i32| h.comp(n, d.dim(n - s + 1), c.dim(n));
    for n in c.lo()..=c.hi() {
        let m = hc(n);
        if m.rows != d.dim(n - s + 1) || m.cols != c.dim(n) {
            return false;
        }
        if !c.module_or_zero(n).is_equivariant(&d.module_or_zero(n - s + 1), &m) {
            return false;
        }
        let rhs = d.d(n - s + 1).mul(&m, p).add(&hc(n - 1).mul(&c.d(n), p), p);
        if rhs != f.comp(n) {
            return false;
        }
    }
    true
}

/// Solve for an equivariant null-homotopy of `f`.
pub fn null_homotopy(f: &ChainMap) -> Option<Homotopy> {
    let (c, d, s) = (f.source().clone(), f.target().clone(), f.shift());
    let p = c.prime();
    let mut sys = System::new(p);
    let degrees: Vec<i32> = (c.lo()..=c.hi()).collect();
    let blocks: Vec<usize> = degrees
        .iter()
        .map(|&n| sys.add_block(c.module_or_zero(n), d.module_or_zero(n - s + 1)))
        .collect();
    let block_of = |n: i32| if n >= c.lo() && n <= c.hi() { Some(blocks[(n - c.lo()) as usize]) } else { None };
    let diffs_d: Vec<Mat> = degrees.iter().map(|&n| d.d(n - s + 1)).collect();
    let diffs_c: Vec<Mat> = degrees.iter().map(|&n| c.d(n)).collect();
    for (k, &n) in degrees.iter().enumerate() {
        let mut terms = vec![Term { left: Some(&diffs_d[k]), block: blocks[k], right: None, coeff: 1 }];
        if let Some(b) = block_of(n - 1) {
            terms.push(Term { left: None, block: b, right: Some(&diffs_c[k]), coeff: 1 });
        }
        sys.add_equation(&terms, &f.comp(n), &d.module_or_zero(n - s), &c.module_or_zero(n));
    }
    let sol = sys.solve()?;
    let comps = blocks.iter().map(|&b| sys.block_matrix(b, &sol.particular)).collect();
    Some(Homotopy { lo: c.lo(), comps })
}

pub fn is_null_homotopic(f: &ChainMap) -> bool {
    null_homotopy(f).is_some()
}

/// `f ≃ g` as maps with the same source, target and shift.
pub fn homotopic(f: &ChainMap, g: &ChainMap) -> bool {
    match f.sub(g) {
        Ok(h) => is_null_homotopic(&h),
        Err(_) => false,
    }
}

/// `id_C ≃ 0`.
pub fn is_contractible(c: &Arc<PermComplex>) -> bool {
    c.is_zero() || is_null_homotopic(&c.identity())
}

/// `dim Hom_{K(G)}(1, C[s])`: invariant cycles in `C_{-s}` modulo boundaries
/// of invariants from `C_{-s+1}`.
pub fn hom_dim(c: &PermComplex, s: i32) -> usize {
    let p = c.prime();
    let orbit_sums = |n: i32| -> Mat {
        let m = c.module_or_zero(n);
        let orbits = m.orbits();
        let mut s = Mat::zeros(m.dim(), orbits.len());
        for (j, o) in orbits.iter().enumerate() {
            for &x in &o.members {
                s.set(x, j, 1);
            }
        }
        s
    };
    let n = -s;
    let sn = orbit_sums(n);
    let cycles_rank = c.d(n).mul(&sn, p).rank(p);
    let boundaries = c.d(n + 1).mul(&orbit_sums(n + 1), p).rank(p);
    sn.cols - cycles_rank - boundaries
}

/// Basis of `Hom_{K(G)}(1, C[s])` as invariant cycles, reduced modulo boundaries.
pub fn hom_basis(c: &Arc<PermComplex>, s: i32) -> Vec<ChainMap> {
    let p = c.prime();
    let n = -s;
    let m = c.module_or_zero(n);
    let orbits = m.orbits();
    let mut sums = Mat::zeros(m.dim(), orbits.len());
    for (j, o) in orbits.iter().enumerate() {
        for &x in &o.members {
            sums.set(x, j, 1);
        }
    }
    let cyc = field::kernel(&c.d(n).mul(&sums, p), p);
    let up = c.module_or_zero(n + 1);
    let mut boundary_vecs: Vec<Vec<u32>> = Vec::new();
    for o in up.orbits() {
        let mut v = vec![0u32; up.dim()];
        for &x in &o.members {
            v[x] = 1;
        }
        let bv = c.d(n + 1).mul(&Mat { rows: v.len(), cols: 1, data: v }, p).data;
        boundary_vecs.push(bv);
    }
    let mut out = Vec::new();
    let mut span = boundary_vecs;
    let base_rank = rank_of(&span, m.dim(), p);
    let mut cur = base_rank;
    for k in cyc {
        let v = sums.mul(&Mat { rows: k.len(), cols: 1, data: k }, p).data;
        span.push(v.clone());
        let r = rank_of(&span, m.dim(), p);
        if r > cur {
            cur = r;
            out.push(ChainMap::from_unit(c.clone(), s, v).expect("invariant cycle"));
        } else {
            span.pop();
        }
    }
    out
}

fn rank_of(vs: &[Vec<u32>], dim: usize, p: u32) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut m = Mat::zeros(vs.len(), dim);
    for (i, v) in vs.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m.rank(p)
}

/// Search for a homotopy equivalence `φ: X → Y` with `φ∘f_i ≃ g_i` for
/// every pair of maps `f_i: 1 → X[s_i]`, `g_i: 1 → Y[s_i]`. Candidates are
/// the particular solution of the linear system followed by seeded random
/// members of the solution space; each is accepted only once its cone is
/// checked contractible.
pub fn find_compatible_iso(
    x: &Arc<PermComplex>,
    y: &Arc<PermComplex>,
    pairs: &[(ChainMap, ChainMap)],
    seed: u64,
    attempts: usize,
) -> Option<ChainMap> {
    let p = x.prime();
    let mut sys = System::new(p);
    let lo = x.lo();
    let phi: Vec<usize> = (x.lo()..=x.hi()).map(|n| sys.add_block(x.module_or_zero(n), y.module_or_zero(n))).collect();
    let phi_of = |n: i32| if n >= x.lo() && n <= x.hi() { Some(phi[(n - lo) as usize]) } else { None };
    let dx: Vec<Mat> = (x.lo()..=x.hi() + 1).map(|n| x.d(n)).collect();
    let dy: Vec<Mat> = (x.lo()..=x.hi() + 1).map(|n| y.d(n)).collect();
    // chain condition d_Y φ_n = φ_{n-1} d_X
    for n in x.lo()..=x.hi() + 1 {
        let k = (n - lo) as usize;
        let mut terms = Vec::new();
        if let Some(b) = phi_of(n) {
            terms.push(Term { left: Some(&dy[k]), block: b, right: None, coeff: 1 });
        }
        if let Some(b) = phi_of(n - 1) {
            terms.push(Term { left: None, block: b, right: Some(&dx[k]), coeff: p - 1 });
        }
        let (rm, cm) = (y.module_or_zero(n - 1), x.module_or_zero(n));
        sys.add_equation(&terms, &Mat::zeros(rm.dim(), cm.dim()), &rm, &cm);
    }
    let unit = PermModule::trivial(x.group().clone());
    let fs: Vec<Mat> = pairs.iter().map(|(f, _)| f.comp(0)).collect();
    let dys: Vec<Mat> = pairs.iter().map(|(_, g)| y.d(1 - g.shift())).collect();
    for (i, (f, g)) in pairs.iter().enumerate() {
        let s = f.shift();
        assert_eq!(s, g.shift(), "paired maps must have equal shifts");
        let h = sys.add_block(unit.clone(), y.module_or_zero(1 - s));
        let mut terms = vec![Term { left: Some(&dys[i]), block: h, right: None, coeff: p - 1 }];
        if let Some(b) = phi_of(-s) {
            terms.push(Term { left: None, block: b, right: Some(&fs[i]), coeff: 1 });
        }
        sys.add_equation(&terms, &g.comp(0), &y.module_or_zero(-s), &unit);
    }
    let sol = sys.solve()?;
    let build = |v: &[u32]| -> Option<ChainMap> {
        let comps = phi.iter().map(|&b| sys.block_matrix(b, v)).collect();
        let f = ChainMap::new(x.clone(), y.clone(), 0, comps).ok()?;
        if is_contractible(&Arc::new(f.cone())) { Some(f) } else { None }
    };
    if let Some(f) = build(&sol.particular) {
        return Some(f);
    }
    if sol.kernel.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut v = sol.particular.clone();
        for k in &sol.kernel {
            let c: u32 = rng.gen_range(0..p);
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(k) {
                    *a = field::add(*a, field::mul(c, b, p), p);
                }
            }
        }
        if let Some(f) = build(&v) {
            return Some(f);
        }
    }
    None
}
