//! The invertible complexes `u_π` attached to coordinates `π: G ↠ C_p`,
//! their maps `a`, `b`, `c`, and twisted units `1(q) = ⊗ u_N^{q_N}`.

use super::complex::{ChainMap, PermComplex};
use super::module::PermModule;
use super::solve::hom_dim;
use crate::error::{Error, Result};
use crate::field::{self, Mat};
use crate::group::{FiniteGroup, Subgroup};
use std::sync::Arc;

/// `2′`: 1 for `p = 2`, 2 otherwise.
pub fn two_prime(p: u32) -> i32 {
    if p == 2 { 1 } else { 2 }
}

/// An additive surjection `π: G → Z/p`, stored as its values.
#[derive(Clone, Debug)]
pub struct GroupCoordinate {
    group: Arc<FiniteGroup>,
    p: u32,
    values: Vec<u32>,
}

impl GroupCoordinate {
    pub fn new(group: Arc<FiniteGroup>, p: u32, values: Vec<u32>) -> Result<Self> {
        if !field::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let n = group.order();
        if values.len() != n {
            return Err(Error::domain("one value per group element required"));
        }
        for a in 0..n {
            for b in 0..n {
                if values[group.mul(a, b)] != field::add(values[a] % p, values[b] % p, p) {
                    return Err(Error::domain("coordinate is not a homomorphism"));
                }
            }
        }
        if values.iter().all(|&v| v % p == 0) {
            return Err(Error::domain("coordinate is not surjective"));
        }
        Ok(GroupCoordinate { group, p, values })
    }

    /// The coordinate with kernel `n` taking the value 1 on `anchor`
    /// (by default the smallest element outside `n`).
    pub fn from_kernel(group: Arc<FiniteGroup>, n: &Subgroup, p: u32, anchor: Option<usize>) -> Result<Self> {
        if !group.is_normal(n) || group.order() != n.order() * p as usize {
            return Err(Error::domain("kernel must be a normal subgroup of index p"));
        }
        let t = match anchor {
            Some(t) if !n.contains(t) => t,
            Some(_) => return Err(Error::domain("anchor lies in the kernel")),
            None => (0..group.order()).find(|&x| !n.contains(x)).expect("proper subgroup"),
        };
        let mut values = vec![u32::MAX; group.order()];
        let mut coset = n.elements().to_vec();
        for j in 0..p {
            for &x in &coset {
                values[x] = j;
            }
            coset = coset.iter().map(|&x| group.mul(x, t)).collect();
        }
        GroupCoordinate::new(group, p, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn value(&self, g: usize) -> u32 {
        self.values[g]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_elements((0..self.values.len()).filter(|&g| self.values[g] == 0).collect())
    }

    /// `λπ` for `λ ∈ F_p^×`.
    pub fn scaled(&self, lambda: u32) -> GroupCoordinate {
        let values = self.values.iter().map(|&v| field::mul(v, lambda, self.p)).collect();
        GroupCoordinate { group: self.group.clone(), p: self.p, values }
    }

    /// `k(G/N)` with basis `e_j` (the coset where `π = j`), `g·e_j = e_{j+π(g)}`.
    pub fn coset_module(&self) -> PermModule {
        let (n, p) = (self.group.order(), self.p as usize);
        let mut action = vec![0u32; n * p];
        for g in 0..n {
            for j in 0..p {
                action[g * p + j] = ((j + self.values[g] as usize) % p) as u32;
            }
        }
        PermModule::from_action(self.group.clone(), p, action).expect("translation action")
    }
}

/// `τ(e_j) = e_{j+1} - e_j` on `k(C_p)`.
pub fn tau(p: u32) -> Mat {
    let n = p as usize;
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        m.set((j + 1) % n, j, 1);
        m.set(j, j, p - 1);
    }
    m
}

fn epsilon(p: u32) -> Mat {
    Mat { rows: 1, cols: p as usize, data: vec![1; p as usize] }
}

fn eta(p: u32) -> Vec<u32> {
    vec![1; p as usize]
}

/// `u_π` together with `a: 1 → u`, `b: 1 → u[-2′]` and, for odd `p`, `c: 1 → u[-1]`.
#[derive(Clone, Debug)]
pub struct UnitComplex {
    pub coordinate: GroupCoordinate,
    pub complex: Arc<PermComplex>,
    pub a: ChainMap,
    pub b: ChainMap,
    pub c: Option<ChainMap>,
}

/// `u_π = (k(G/N) → k)` for `p = 2` and `(k(G/N) --τ--> k(G/N) --ε--> k)` for odd `p`.
pub fn build_u(pi: &GroupCoordinate) -> UnitComplex {
    let (g, p) = (pi.group.clone(), pi.p);
    let kgn = pi.coset_module();
    let (modules, diffs) = if p == 2 {
        (vec![PermModule::trivial(g.clone()), kgn], vec![epsilon(p)])
    } else {
        (vec![PermModule::trivial(g.clone()), kgn.clone(), kgn], vec![epsilon(p), tau(p)])
    };
    let u = Arc::new(PermComplex::new(g, p, 0, modules, diffs).expect("u is a complex"));
    let a = ChainMap::from_unit(u.clone(), 0, vec![1]).expect("a is a chain map");
    let b = ChainMap::from_unit(u.clone(), -two_prime(p), eta(p)).expect("b is a chain map");
    let c = (p != 2).then(|| ChainMap::from_unit(u.clone(), -1, eta(p)).expect("c is a chain map"));
    UnitComplex { coordinate: pi.clone(), complex: u, a, b, c }
}

/// The comparison `Λ: u_π → u_{λπ}`: identity in degree 0, `e_j ↦ e′_{λj}` in
/// degree 1 and `e_j ↦ Σ_{i<λ} e′_{λj+i}` in degree 2. It satisfies
/// `Λ∘a_π = a_{λπ}` and `Λ∘b_π = λ·b_{λπ}`.
pub fn scalar_change(u: &UnitComplex, lambda: u32) -> Result<(UnitComplex, ChainMap)> {
    let p = u.coordinate.p;
    let lambda = lambda % p;
    if lambda == 0 {
        return Err(Error::domain("scalar must be nonzero"));
    }
    let target = build_u(&u.coordinate.scaled(lambda));
    let n = p as usize;
    let l = lambda as usize;
    let mut comps = vec![Mat::identity(1)];
    let mut d1 = Mat::zeros(n, n);
    for j in 0..n {
        d1.set(l * j % n, j, 1);
    }
    comps.push(d1);
    if p != 2 {
        let mut d2 = Mat::zeros(n, n);
        for j in 0..n {
            for i in 0..l {
                let r = (l * j + i) % n;
                d2.set(r, j, field::add(d2.get(r, j), 1, p));
            }
        }
        comps.push(d2);
    }
    let map = ChainMap::new(u.complex.clone(), target.complex.clone(), 0, comps)?;
    Ok((target, map))
}

/// The complex `k ← k(G/N) ← ⋯ ← k(G/N)` with `d_1 = ε`, `d_{2i} = τ`,
/// `d_{2i+1} = τ^{p-1}` (i ≥ 1) and top degree `2′q`; homotopy equivalent to `u_π^{⊗q}`.
pub fn power_complex(pi: &GroupCoordinate, q: u32) -> PermComplex {
    let (g, p) = (pi.group.clone(), pi.p);
    let top = two_prime(p) * q as i32;
    let kgn = pi.coset_module();
    let mut modules = vec![PermModule::trivial(g.clone())];
    let mut diffs = Vec::new();
    let t = tau(p);
    let mut tp = Mat::identity(p as usize);
    for _ in 0..p - 1 {
        tp = tp.mul(&t, p);
    }
    for k in 1..=top {
        modules.push(kgn.clone());
        diffs.push(match k {
            1 => epsilon(p),
            k if k % 2 == 0 => t.clone(),
            _ => tp.clone(),
        });
    }
    PermComplex::new(g, p, 0, modules, diffs).expect("power complex")
}

/// `1(q) = ⊗_i u_{π_i}^{⊗ q_i}` (the unit when all `q_i = 0`).
pub fn twisted_unit(group: &Arc<FiniteGroup>, p: u32, coords: &[GroupCoordinate], q: &[u32]) -> PermComplex {
    let mut out = PermComplex::unit(group.clone(), p);
    for (pi, &k) in coords.iter().zip(q) {
        let u = build_u(pi);
        for _ in 0..k {
            out = out.tensor(&u.complex);
        }
    }
    out
}

/// `dim Hom(1, 1(q)[s])`.
pub fn twisted_hom_dim(group: &Arc<FiniteGroup>, p: u32, coords: &[GroupCoordinate], q: &[u32], s: i32) -> usize {
    hom_dim(&twisted_unit(group, p, coords, q), s)
}

/// Canonical coordinates for every index-`p` normal subgroup of `G`, in the
/// order of [`crate::group::index_p_normals`].
pub fn all_coordinates(group: &Arc<FiniteGroup>, p: u32) -> Result<Vec<GroupCoordinate>> {
    crate::group::index_p_normals(group, p)?
        .iter()
        .map(|n| GroupCoordinate::from_kernel(group.clone(), n, p, None))
        .collect()
}

/// The map `a1⊗b2⊗b3 + b1⊗a2⊗b3 + b1⊗b2⊗a3: 1 → (u1⊗u2⊗u3)[-2·2′]` for
/// coordinates with `π1 + π2 + π3 = 0`, and the explicit null-homotopy
/// `m = Σ e_{i1} ⊗ e_{i2} ⊗ e_{-i1-i2}` placed (with sign +1) in every
/// tensor block of degree `2·2′ + 1`.
#[derive(Clone, Debug)]
pub struct MasterRelation {
    pub units: [UnitComplex; 3],
    pub map: ChainMap,
    pub witness: super::solve::Homotopy,
}

pub fn master_relation(pi1: &GroupCoordinate, pi2: &GroupCoordinate) -> Result<MasterRelation> {
    let (g, p) = (pi1.group.clone(), pi1.p);
    let v3: Vec<u32> = (0..g.order())
        .map(|x| field::neg(field::add(pi1.value(x), pi2.value(x), p), p))
        .collect();
    let pi3 = GroupCoordinate::new(g, p, v3)?;
    let units = [build_u(pi1), build_u(pi2), build_u(&pi3)];
    let t3 = |x: &ChainMap, y: &ChainMap, z: &ChainMap| -> Result<ChainMap> { x.tensor_points(y)?.tensor_points(z) };
    let [u1, u2, u3] = &units;
    let map = t3(&u1.a, &u2.b, &u3.b)?
        .add(&t3(&u1.b, &u2.a, &u3.b)?)?
        .add(&t3(&u1.b, &u2.b, &u3.a)?)?;

    let x = map.target().clone();
    let tp = two_prime(p);
    let deg = 2 * tp + 1;
    let pp = p as usize;
    let inner = u1.complex.tensor(&u2.complex);
    let outer_layout = super::complex::TensorLayout::new(&inner, &u3.complex);
    let inner_layout = super::complex::TensorLayout::new(&u1.complex, &u2.complex);
    let mut w = vec![0u32; x.dim(deg)];
    for &(ij, oo) in outer_layout.blocks(deg) {
        let k = deg - ij;
        for &(i, oi) in inner_layout.blocks(ij) {
            let j = ij - i;
            if [i, j, k].iter().any(|&e| e == 0) {
                continue;
            }
            let d2 = u2.complex.dim(j);
            let d3 = u3.complex.dim(k);
            for i1 in 0..pp {
                for i2 in 0..pp {
                    let i3 = (2 * pp - i1 - i2) % pp;
                    w[oo + (oi + i1 * d2 + i2) * d3 + i3] = 1;
                }
            }
        }
    }
    let unit_lo = map.source().lo();
    let witness = super::solve::Homotopy { lo: unit_lo, comps: vec![Mat { rows: w.len(), cols: 1, data: w }] };
    Ok(MasterRelation { units, map, witness })
}
