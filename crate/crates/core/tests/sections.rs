mod common;

use common::{find, sub, zoo_pairs};
use permtt::group::{FiniteGroup, Subgroup};
use permtt::sections::*;
use permtt::spectrum::same_induced_map;
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

fn category(g: FiniteGroup, p: u32) -> SectionCategory {
    SectionCategory::new(Arc::new(g), p).unwrap()
}

/// Subgroups by scanning every subset (orders ≤ 8 only).
fn brute_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    (0u32..1 << n)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&a| s.iter().all(|&b| s.contains(&g.mul(a, b)))))
        .collect()
}

/// Sections via explicit coset arithmetic.
fn brute_sections(g: &FiniteGroup, p: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let subs: Vec<Vec<usize>> = brute_subgroups(g)
        .into_iter()
        .filter(|s| {
            let mut n = s.len();
            while n % p == 0 {
                n /= p;
            }
            n == 1
        })
        .collect();
    let mut out = BTreeSet::new();
    for h in &subs {
        for k in subs.iter().filter(|k| k.iter().all(|x| h.contains(x))) {
            let normal = h.iter().all(|&x| k.iter().all(|&y| k.contains(&g.conj(y, x))));
            if !normal {
                continue;
            }
            let coset = |x: usize| -> Vec<usize> {
                let mut c: Vec<usize> = k.iter().map(|&y| g.mul(x, y)).collect();
                c.sort();
                c
            };
            let cosets: BTreeSet<Vec<usize>> = h.iter().map(|&x| coset(x)).collect();
            let elementary = cosets.iter().all(|a| {
                let power = coset(g.pow(a[0], p as u64));
                power == coset(0) && cosets.iter().all(|b| coset(g.mul(a[0], b[0])) == coset(g.mul(b[0], a[0])))
            });
            if elementary {
                out.insert((h.clone(), k.clone()));
            }
        }
    }
    out
}

#[test]
fn objects_match_brute_force() {
    for (name, g, p) in zoo_pairs().into_iter().filter(|(_, g, _)| g.order() <= 8) {
        let cat = SectionCategory::new(g.clone(), p).unwrap();
        let got: BTreeSet<(Vec<usize>, Vec<usize>)> =
            cat.objects().iter().map(|o| (o.h.elements().to_vec(), o.k.elements().to_vec())).collect();
        assert_eq!(got, brute_sections(&g, p as usize), "{name}");
        assert_eq!(got.len(), cat.objects().len(), "{name}: duplicate objects");
    }
}

#[test]
fn object_counts() {
    assert_eq!(category(FiniteGroup::cyclic(4).unwrap(), 2).objects().len(), 5);
    assert_eq!(category(FiniteGroup::cyclic(9).unwrap(), 3).objects().len(), 5);
    assert_eq!(category(FiniteGroup::elementary_abelian(2, 2).unwrap(), 2).objects().len(), 12);
    assert_eq!(category(FiniteGroup::cyclic(1).unwrap(), 2).objects().len(), 1);
    let ranks: Vec<usize> = category(FiniteGroup::cyclic(4).unwrap(), 2).objects().iter().map(|o| o.rank).collect();
    assert_eq!(ranks.iter().filter(|&&r| r == 1).count(), 2);
}

#[test]
fn morphisms_match_the_containment_conditions() {
    for (name, g, p) in zoo_pairs().into_iter().filter(|(_, g, _)| g.order() <= 8) {
        let cat = SectionCategory::new(g.clone(), p).unwrap();
        for (x, a) in cat.objects().iter().enumerate() {
            for (y, b) in cat.objects().iter().enumerate() {
                for t in 0..g.order() {
                    let hg: BTreeSet<usize> = a.h.elements().iter().map(|&e| g.conj(e, t)).collect();
                    let kg: BTreeSet<usize> = a.k.elements().iter().map(|&e| g.conj(e, t)).collect();
                    let expect = b.k.elements().iter().all(|e| kg.contains(e))
                        && hg.iter().all(|e| b.h.contains(*e))
                        && hg.iter().filter(|e| b.k.contains(**e)).all(|e| kg.contains(e));
                    assert_eq!(cat.is_morphism(x, y, t), expect, "{name} {x}->{y} by {t}");
                }
            }
        }
    }
}

fn d8() -> SectionCategory {
    category(FiniteGroup::dihedral(8).unwrap(), 2)
}

fn obj(cat: &SectionCategory, h: &[&str], k: &[&str]) -> usize {
    let g = cat.group();
    cat.index_of(&sub(g, h), &sub(g, k)).unwrap()
}

#[test]
fn d8_maximal_objects_and_relations() {
    let cat = d8();
    let labels: BTreeSet<String> = cat.maxel().iter().map(|&x| cat.label(x)).collect();
    let want: BTreeSet<String> = [
        obj(&cat, &["r2", "s"], &[]),
        obj(&cat, &["r2", "rs"], &[]),
        obj(&cat, &["r", "s"], &["r2"]),
    ]
    .iter()
    .map(|&x| cat.label(x))
    .collect();
    assert_eq!(labels, want);
    let rels = cat.maximal_relations(Reduction::CenterTarget).unwrap();
    let nondeg: Vec<&SpanRelation> = rels.iter().filter(|r| r.nondegenerate).collect();
    assert_eq!(nondeg.len(), 5);
    let loops = nondeg.iter().filter(|r| r.left.target == r.right.target).count();
    assert_eq!(loops, 2);
    assert!(cat.is_ei(Reduction::CenterTarget).unwrap());
}

#[test]
fn d8_loops_are_the_identity_and_r() {
    let cat = d8();
    let g = cat.group().clone();
    let k = obj(&cat, &["r2", "s"], &[]);
    let homs = cat.homs(k, k, Reduction::CenterTarget).unwrap();
    let elems: BTreeSet<String> = homs.iter().map(|m| g.name(m.g)).collect();
    assert_eq!(homs.len(), 2);
    assert!(elems.contains("1"));
    let other = homs.iter().find(|m| m.g != 0).unwrap();
    let r = find(&g, "r");
    assert!(cat.same_class(other, &cat.morphism(k, k, r).unwrap(), Reduction::CenterTarget).unwrap());
    assert_eq!(cat.homs(k, k, Reduction::Raw).unwrap().len(), 8);
}

#[test]
fn inclusion_of_quotients_is_a_morphism() {
    for (name, g, p) in zoo_pairs().into_iter().filter(|(_, g, _)| g.order() <= 8) {
        let cat = SectionCategory::new(g.clone(), p).unwrap();
        for (x, a) in cat.objects().iter().enumerate() {
            for (y, b) in cat.objects().iter().enumerate() {
                if a.h == b.h && b.k.is_subgroup_of(&a.k) {
                    let homs = cat.homs(x, y, Reduction::CenterTarget).unwrap();
                    assert!(homs.iter().any(|m| m.g == 0), "{name}: {} -> {}", cat.label(x), cat.label(y));
                }
            }
        }
    }
}

#[test]
fn identities_are_always_present() {
    let cat = d8();
    for x in 0..cat.objects().len() {
        for red in [Reduction::Raw, Reduction::CenterTarget, Reduction::Full] {
            let homs = cat.homs(x, x, red).unwrap();
            let id = cat.identity(x);
            assert!(homs.iter().any(|m| cat.same_class(m, &id, red).unwrap()));
        }
    }
}

#[test]
fn factorization_examples() {
    let cat = d8();
    let g = cat.group().clone();
    let k = obj(&cat, &["r2", "s"], &[]);
    let c2 = obj(&cat, &["s"], &[]);
    for x in [k, c2] {
        let id = cat.identity(x);
        assert_eq!(cat.factorize(&id).unwrap(), [id, id, id]);
    }
    let incl = cat.morphism(c2, k, 0).unwrap();
    assert_eq!(cat.factorize(&incl).unwrap(), [cat.identity(c2), incl, cat.identity(k)]);
    let r = cat.morphism(k, k, find(&g, "r")).unwrap();
    assert_eq!(cat.factorize(&r).unwrap(), [cat.identity(k), cat.identity(k), r]);
}

#[test]
fn cyclic_groups() {
    for (n, p, len) in [(4, 2, 2), (8, 2, 3), (16, 2, 4), (9, 3, 2), (27, 3, 3), (25, 5, 2)] {
        let cat = category(FiniteGroup::cyclic(n).unwrap(), p);
        let maxel = cat.maxel();
        assert_eq!(maxel.len(), len, "C{n}");
        assert!(maxel.iter().all(|&x| cat.object(x).rank == 1));
        let rels = cat.maximal_relations(Reduction::CenterTarget).unwrap();
        let nondeg: Vec<&SpanRelation> = rels.iter().filter(|r| r.nondegenerate).collect();
        assert_eq!(nondeg.len(), len - 1, "C{n}");
        for r in nondeg {
            let m = cat.object(r.middle);
            assert_eq!((m.rank, m.h == m.k), (0, true));
            assert_ne!(r.left.target, r.right.target);
        }
    }
    let c4 = category(FiniteGroup::cyclic(4).unwrap(), 2);
    let rels = c4.maximal_relations(Reduction::CenterTarget).unwrap();
    let rel = rels.iter().find(|r| r.nondegenerate).unwrap();
    let h1 = sub(c4.group(), &["a2"]);
    assert_eq!(rel.middle, c4.index_of(&h1, &h1).unwrap());
}

#[test]
fn elementary_abelian_groups_have_one_maximal_object() {
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
        let cat = category(FiniteGroup::elementary_abelian(p, r).unwrap(), p);
        let maxel = cat.maxel();
        assert_eq!(maxel.len(), 1);
        let top = cat.object(maxel[0]);
        assert_eq!((top.h.order(), top.k.order()), (cat.group().order(), 1));
        let rels = cat.maximal_relations(Reduction::CenterTarget).unwrap();
        assert!(rels.iter().all(|r| !r.nondegenerate), "p={p} r={r}");
    }
}

#[test]
fn quaternion_maximal_objects() {
    let cat = category(FiniteGroup::quaternion(), 2);
    let maxel: Vec<(usize, usize)> = cat.maxel().iter().map(|&x| (cat.object(x).h.order(), cat.object(x).k.order())).collect();
    assert_eq!(maxel, [(2, 1), (8, 2)]);
    assert!(cat.is_ei(Reduction::Raw).unwrap());
}

#[test]
fn ei_and_factorization_over_the_zoo() {
    for (name, g, p) in zoo_pairs() {
        let cat = SectionCategory::new(g.clone(), p).unwrap();
        assert!(cat.is_ei(Reduction::CenterTarget).unwrap(), "{name}");
        let n = cat.objects().len();
        for x in 0..n {
            for y in 0..n {
                for t in cat.raw_homs(x, y) {
                    let m = cat.morphism(x, y, t).unwrap();
                    assert!(cat.object(x).rank <= cat.object(y).rank, "{name}");
                    let [c, b, a] = cat.factorize(&m).unwrap();
                    assert_eq!(c.g, 0);
                    assert_eq!(b.g, 0);
                    assert_eq!(cat.object(c.source).h, cat.object(c.target).h);
                    let back = cat.compose(&cat.compose(&c, &b).unwrap(), &a).unwrap();
                    assert_eq!(back, m, "{name}");
                }
            }
        }
    }
}

/// Every `(category, valid morphism)` of the zoo, flattened for sampling.
fn morphism_pool() -> &'static Vec<(Arc<SectionCategory>, SectionMorphism)> {
    static POOL: OnceLock<Vec<(Arc<SectionCategory>, SectionMorphism)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (_, g, p) in zoo_pairs().into_iter().filter(|(_, g, _)| g.order() <= 8 || g.order() == 16) {
            let cat = Arc::new(SectionCategory::new(g, p).unwrap());
            for x in 0..cat.objects().len() {
                for y in 0..cat.objects().len() {
                    for t in cat.raw_homs(x, y) {
                        out.push((cat.clone(), SectionMorphism { source: x, target: y, g: t }));
                    }
                }
            }
        }
        out
    })
}

fn right_factor(cat: &SectionCategory, m: &SectionMorphism, pick: usize) -> usize {
    let g = cat.group();
    let zh: Subgroup = g.join(&g.center(), &cat.object(m.target).h);
    zh.elements()[pick % zh.order()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sampled_morphisms_are_sound(i in any::<prop::sample::Index>(), pick in 0usize..64) {
        let pool = morphism_pool();
        let (cat, m) = &pool[i.index(pool.len())];
        prop_assert!(cat.object(m.source).rank <= cat.object(m.target).rank);
        let [c, b, a] = cat.factorize(m).unwrap();
        prop_assert_eq!(cat.compose(&cat.compose(&c, &b).unwrap(), &a).unwrap(), *m);
        // Right translation by Z(G)·H′ stays a morphism with the same action on points.
        let x = right_factor(cat, m, pick);
        let moved = SectionMorphism { g: cat.group().mul(m.g, x), ..*m };
        prop_assert!(cat.is_morphism(m.source, m.target, moved.g));
        prop_assert!(cat.same_class(m, &moved, Reduction::CenterTarget).unwrap());
        prop_assert!(same_induced_map(cat, m, &moved).unwrap());
    }

    #[test]
    fn composition_stays_in_the_category(i in any::<prop::sample::Index>(), j in 0usize..1000) {
        let pool = morphism_pool();
        let (cat, m) = &pool[i.index(pool.len())];
        let next: Vec<usize> = (0..cat.objects().len()).filter(|&y| cat.preceq(m.target, y)).collect();
        let y = next[j % next.len()];
        let homs = cat.raw_homs(m.target, y);
        let n = cat.morphism(m.target, y, homs[j % homs.len()]).unwrap();
        let mn = cat.compose(m, &n).unwrap();
        prop_assert!(cat.is_morphism(mn.source, mn.target, mn.g));
    }
}

#[test]
fn full_reduction_is_coarser() {
    for (name, g, p) in zoo_pairs().into_iter().filter(|(_, g, _)| g.order() <= 8) {
        let cat = SectionCategory::new(g.clone(), p).unwrap();
        for x in 0..cat.objects().len() {
            for y in 0..cat.objects().len() {
                let raw = cat.homs(x, y, Reduction::Raw).unwrap().len();
                let ct = cat.homs(x, y, Reduction::CenterTarget).unwrap().len();
                let full = cat.homs(x, y, Reduction::Full).unwrap().len();
                assert!(raw >= ct && ct >= full, "{name}");
            }
        }
    }
}

#[test]
fn reduction_names_parse() {
    assert_eq!("raw".parse::<Reduction>().unwrap(), Reduction::Raw);
    assert_eq!("center-target".parse::<Reduction>().unwrap(), Reduction::CenterTarget);
    assert_eq!("full".parse::<Reduction>().unwrap(), Reduction::Full);
    assert!("nope".parse::<Reduction>().is_err());
}

#[test]
fn dot_exports_mention_every_maximal_object() {
    let cat = d8();
    let rels = cat.maximal_relations(Reduction::CenterTarget).unwrap();
    let dot = cat.relations_dot(&rels);
    assert_eq!(dot.matches("shape=box").count(), 3);
    assert_eq!(dot.matches("shape=ellipse").count(), 5);
    assert!(cat.poset_dot().starts_with("digraph sections"));
}
