//! Groups shared by the integration suites.
#![allow(dead_code)]

use permtt::group::{FiniteGroup, Subgroup};
use std::sync::Arc;

fn table_group(n: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(table, None).unwrap()
}

/// `C4 ⋊ C4` with the generator of the right factor inverting the left one.
pub fn c4_semi_c4() -> FiniteGroup {
    table_group(16, |a, b| {
        let (i, j, k, l) = (a % 4, a / 4, b % 4, b / 4);
        let k = if j % 2 == 1 { (4 - k) % 4 } else { k };
        (i + k) % 4 + 4 * ((j + l) % 4)
    })
}

/// `C2² ⋊ C4` with `C4` swapping the two coordinates.
pub fn klein_semi_c4() -> FiniteGroup {
    table_group(16, |a, b| {
        let (v, j, w, l) = (a % 4, a / 4, b % 4, b / 4);
        let w = if j % 2 == 1 { (w >> 1) | ((w & 1) << 1) } else { w };
        (v ^ w) + 4 * ((j + l) % 4)
    })
}

/// The Pauli group `C4 ∘ D8`.
pub fn pauli() -> FiniteGroup {
    let g = Arc::new(FiniteGroup::product(&[FiniteGroup::cyclic(4).unwrap(), FiniteGroup::dihedral(8).unwrap()]).unwrap());
    let d8c2 = FiniteGroup::product(&[FiniteGroup::dihedral(8).unwrap(), FiniteGroup::cyclic(2).unwrap()]).unwrap();
    let center = g.center();
    for &z in center.elements() {
        if z == 0 || g.element_order(z) != 2 {
            continue;
        }
        let (q, _) = g.quotient(&g.generate(&[z])).unwrap();
        if !q.is_abelian() && !permtt::group::are_isomorphic(&q, &d8c2) {
            return (*q).clone();
        }
    }
    unreachable!("C4 x D8 has a central quotient isomorphic to the Pauli group")
}

fn prod(fs: &[FiniteGroup]) -> FiniteGroup {
    FiniteGroup::product(fs).unwrap()
}

fn c(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).unwrap()
}

/// Every group of order 16 plus the smaller ones we use, paired with the
/// primes worth looking at.
pub fn zoo() -> Vec<(&'static str, FiniteGroup, Vec<u32>)> {
    vec![
        ("1", c(1), vec![2]),
        ("c2", c(2), vec![2]),
        ("c3", c(3), vec![3]),
        ("c4", c(4), vec![2]),
        ("klein", FiniteGroup::elementary_abelian(2, 2).unwrap(), vec![2]),
        ("c5", c(5), vec![5]),
        ("c6", c(6), vec![2, 3]),
        ("s3", FiniteGroup::dihedral(6).unwrap(), vec![2, 3]),
        ("c8", c(8), vec![2]),
        ("c4xc2", prod(&[c(4), c(2)]), vec![2]),
        ("c2^3", FiniteGroup::elementary_abelian(2, 3).unwrap(), vec![2]),
        ("d8", FiniteGroup::dihedral(8).unwrap(), vec![2]),
        ("q8", FiniteGroup::quaternion(), vec![2]),
        ("c9", c(9), vec![3]),
        ("c3xc3", FiniteGroup::elementary_abelian(3, 2).unwrap(), vec![3]),
        ("d10", FiniteGroup::dihedral(10).unwrap(), vec![2, 5]),
        ("d12", FiniteGroup::dihedral(12).unwrap(), vec![2, 3]),
        ("c16", c(16), vec![2]),
        ("c8xc2", prod(&[c(8), c(2)]), vec![2]),
        ("c4xc4", prod(&[c(4), c(4)]), vec![2]),
        ("c4xc2xc2", prod(&[c(4), c(2), c(2)]), vec![2]),
        ("d16", FiniteGroup::dihedral(16).unwrap(), vec![2]),
        ("q16", FiniteGroup::metacyclic(8, 7, 4).unwrap(), vec![2]),
        ("sd16", FiniteGroup::metacyclic(8, 3, 0).unwrap(), vec![2]),
        ("m16", FiniteGroup::metacyclic(8, 5, 0).unwrap(), vec![2]),
        ("d8xc2", prod(&[FiniteGroup::dihedral(8).unwrap(), c(2)]), vec![2]),
        ("q8xc2", prod(&[FiniteGroup::quaternion(), c(2)]), vec![2]),
        ("c4:c4", c4_semi_c4(), vec![2]),
        ("c2^2:c4", klein_semi_c4(), vec![2]),
        ("pauli", pauli(), vec![2]),
    ]
}

/// The zoo as `(name, group, p)` triples.
pub fn zoo_pairs() -> Vec<(String, Arc<FiniteGroup>, u32)> {
    zoo()
        .into_iter()
        .flat_map(|(name, g, ps)| {
            let g = Arc::new(g);
            ps.into_iter().map(move |p| (format!("{name}@{p}"), g.clone(), p))
        })
        .collect()
}

pub fn find(g: &FiniteGroup, label: &str) -> usize {
    g.find(label).unwrap_or_else(|| panic!("no element {label}"))
}

pub fn sub(g: &FiniteGroup, labels: &[&str]) -> Subgroup {
    let gens: Vec<usize> = labels.iter().map(|l| find(g, l)).collect();
    g.generate(&gens)
}
