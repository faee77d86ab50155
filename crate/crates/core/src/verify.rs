//! Self-checks that run the homotopy oracles against the formulas the rest
//! of the crate relies on. Each suite returns one [`Check`] per case.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::homotopy::{
    all_coordinates, build_u, coevaluation, find_compatible_iso, is_contractible, is_null_homotopic, master_relation,
    twisted_hom_dim, verify_homotopy, ChainMap, GroupCoordinate, PermComplex, Psi, Pullback, UnitComplex,
};
use crate::twisted::{group_coordinate, rall, Elab};
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Units,
    Master,
    Functors,
    Hilbert,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Units, Suite::Master, Suite::Functors, Suite::Hilbert];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Units => "units",
            Suite::Master => "master",
            Suite::Functors => "functors",
            Suite::Hilbert => "hilbert",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite `{s}` (expected units, master, functors or hilbert)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Run one suite; `seed` drives the random search for comparison maps.
pub fn run(suite: Suite, seed: u64) -> Result<Report> {
    let checks = match suite {
        Suite::Units => units()?,
        Suite::Master => master()?,
        Suite::Functors => functors(seed)?,
        Suite::Hilbert => hilbert()?,
    };
    Ok(Report { suite: suite.name().into(), checks })
}

fn check(name: impl Into<String>, passed: bool) -> Check {
    Check { name: name.into(), passed }
}

fn groups_for_units() -> Result<Vec<(&'static str, Arc<FiniteGroup>, u32)>> {
    Ok(vec![
        ("C2", Arc::new(FiniteGroup::cyclic(2)?), 2),
        ("C3", Arc::new(FiniteGroup::cyclic(3)?), 3),
        ("C2xC2", Arc::new(FiniteGroup::elementary_abelian(2, 2)?), 2),
        ("C3xC3", Arc::new(FiniteGroup::elementary_abelian(3, 2)?), 3),
    ])
}

/// `u_π` is invertible: the coevaluation `1 → u ⊗ u^∨` has contractible
/// cone. Over `C_p`, `cone(a) ⊗ cone(b)` is contractible while neither
/// factor is.
fn units() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g, p) in groups_for_units()? {
        for pi in all_coordinates(&g, p)? {
            let u = build_u(&pi);
            let co = coevaluation(&u.complex)?;
            let label = pi.kernel().label(&g);
            out.push(check(format!("{name}: cone(coev) of u_{label} is contractible"), is_contractible(&Arc::new(co.cone()))));
        }
    }
    for p in [2u32, 3] {
        let g = Arc::new(FiniteGroup::cyclic(p as usize)?);
        let u = build_u(&all_coordinates(&g, p)?[0]);
        let (ca, cb) = (u.a.cone(), u.b.cone());
        let ok = !is_contractible(&Arc::new(ca.clone()))
            && !is_contractible(&Arc::new(cb.clone()))
            && is_contractible(&Arc::new(ca.tensor(&cb)));
        out.push(check(format!("C{p}: cone(a) ⊗ cone(b) vanishes"), ok));
    }
    Ok(out)
}

/// `a_1 b_2 b_3 + b_1 a_2 b_3 + b_1 b_2 a_3` is null-homotopic, with the
/// explicit homotopy accepted, for every pair of coordinates with distinct
/// kernels over `C_p × C_p`.
fn master() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let g = Arc::new(FiniteGroup::elementary_abelian(p, 2)?);
        let coords = all_coordinates(&g, p)?;
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                for lambda in 1..p {
                    let pi2 = coords[j].scaled(lambda);
                    let m = master_relation(&coords[i], &pi2)?;
                    let ok = verify_homotopy(&m.map, &m.witness) && is_null_homotopic(&m.map);
                    let (n1, n2) = (coords[i].kernel().label(&g), coords[j].kernel().label(&g));
                    out.push(check(format!("C{p}xC{p}: master relation for ({n1}, {lambda}·{n2})"), ok));
                }
            }
        }
    }
    Ok(out)
}

fn image(n: &Subgroup, f: impl Fn(usize) -> usize) -> Subgroup {
    Subgroup::from_elements(n.elements().iter().map(|&x| f(x)).collect())
}

/// `(X, a, b) ≅ (Y, a′, b′)` by a homotopy equivalence compatible with both maps.
fn matches(x: &PermComplex, y: &Arc<PermComplex>, pairs: &[(ChainMap, ChainMap)], seed: u64) -> bool {
    find_compatible_iso(&Arc::new(x.clone()), y, pairs, seed, 20).is_some()
}

/// `Ψ^H` and `Res_H` of `(u_N, a_N, b_N)` for every subgroup `H` and every
/// index-2 subgroup `N` of the Klein four group:
///
/// * `Ψ^H(u_N) = u_{N/H}` with `a`, `b` preserved when `H ≤ N`, and
///   `Ψ^H(u_N) ≅ 1` with `a ↦ 1`, `b ↦ 0` otherwise;
/// * `Res_H(u_N) ≅ 1[2′]` with `a ↦ 0`, `b ↦ 1` when `H ≤ N`, and
///   `Res_H(u_N) = u_{H∩N}` with `a`, `b` preserved otherwise.
fn functors(seed: u64) -> Result<Vec<Check>> {
    let p = 2;
    let e = Arc::new(FiniteGroup::elementary_abelian(p, 2)?);
    let subs = crate::group::subgroups(&e)?;
    let mut out = Vec::new();
    for pi in all_coordinates(&e, p)? {
        let u = build_u(&pi);
        let n = pi.kernel();
        for h in &subs {
            let name = format!("H={} N={}", h.label(&e), n.label(&e));
            let inside = h.is_subgroup_of(&n);

            let ps = Psi::new(&e, h, p)?;
            let x = ps.complex(&u.complex);
            let (a, b) = (ps.map(&u.a), ps.map(&u.b));
            let psi_ok = if inside {
                let nbar = image(&n, |g| ps.projection().apply(g));
                let small = build_u(&GroupCoordinate::from_kernel(ps.quotient().clone(), &nbar, p, None)?);
                matches(&x, &small.complex, &[(a, small.a.clone()), (b, small.b.clone())], seed)
            } else {
                let one = Arc::new(PermComplex::unit(ps.quotient().clone(), p));
                let unit = ChainMap::from_unit(one.clone(), 0, vec![1])?;
                x.total_dim() == 1 && matches(&x, &one, &[(a, unit)], seed) && is_null_homotopic(&b)
            };
            out.push(check(format!("Psi^H u_N ({name})"), psi_ok));

            let (hg, inc) = e.subgroup_as_group(h);
            let r = Pullback::new(inc.clone());
            let z = r.complex(&u.complex);
            let (a, b) = (r.map(&u.a), r.map(&u.b));
            let res_ok = if inside {
                let target = Arc::new(PermComplex::unit(hg.clone(), p).shift(1));
                let zero = ChainMap::from_unit(target.clone(), 0, vec![])?;
                let one = ChainMap::from_unit(target.clone(), -1, vec![1])?;
                is_null_homotopic(&a) && matches(&z, &target, &[(a, zero), (b, one)], seed)
            } else {
                let values = (0..hg.order()).map(|x| pi.value(inc.apply(x))).collect();
                let small: UnitComplex = build_u(&GroupCoordinate::new(hg.clone(), p, values)?);
                matches(&z, &small.complex, &[(a, small.a.clone()), (b, small.b.clone())], seed)
            };
            out.push(check(format!("Res_H u_N ({name})"), res_ok));
        }
    }
    Ok(out)
}

/// `dim Hom(1, 1(q)[s])` from the homotopy solver against monomial counts:
/// `k[a, b]` over `C2` for `|s| ≤ 6`, `q ≤ 4`, and the presentation by
/// `a_N`, `b_N` and the master relations over `C2 × C2` for total twist ≤ 3,
/// `|s| ≤ 4`.
fn hilbert() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = Arc::new(FiniteGroup::cyclic(2)?);
    let e = Elab::new(2, 1)?;
    let coords: Vec<GroupCoordinate> = e.coordinates().iter().map(|c| group_coordinate(&g, 2, c)).collect::<Result<_>>()?;
    for q in 0..=4u32 {
        for s in -6..=6 {
            let monomials = usize::from(s <= 0 && -s <= q as i32);
            let ok = twisted_hom_dim(&g, 2, &coords, &[q], s) == monomials;
            out.push(check(format!("C2 q={q} s={s}: {monomials}"), ok));
        }
    }
    let g = Arc::new(FiniteGroup::elementary_abelian(2, 2)?);
    let e = Elab::new(2, 2)?;
    let coords: Vec<GroupCoordinate> = e.coordinates().iter().map(|c| group_coordinate(&g, 2, c)).collect::<Result<_>>()?;
    let ring = rall(&e)?;
    for q0 in 0..=3u32 {
        for q1 in 0..=3 - q0 {
            for q2 in 0..=3 - q0 - q1 {
                let q = [q0, q1, q2];
                for s in -4..=4 {
                    let count = ring.dimension(s, &q);
                    let ok = twisted_hom_dim(&g, 2, &coords, &q, s) == count;
                    out.push(check(format!("C2xC2 q={q:?} s={s}: {count}"), ok));
                }
            }
        }
    }
    Ok(out)
}
