mod common;

use common::{sub, zoo_pairs};
use permtt::field::Mat;
use permtt::group::FiniteGroup;
use permtt::ring::Poly;
use permtt::sections::{Reduction, SectionCategory, SectionMorphism};
use permtt::spectrum::*;
use permtt::twisted::{closure_ideal, cohomology, Coordinate, Elab, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

fn ea(p: u32, r: usize, level: Level) -> Skeleton {
    Skeleton::new(p, r, level, DEFAULT_RANK_CAP).unwrap()
}

fn glued(g: FiniteGroup, p: u32) -> (SectionCategory, GluedSkeleton) {
    let cat = SectionCategory::new(Arc::new(g), p).unwrap();
    let gl = glue_category(&cat, Level::Rational, DEFAULT_RANK_CAP, Reduction::CenterTarget).unwrap();
    (cat, gl)
}

fn at(sk: &Skeleton, label: &str) -> usize {
    sk.find_label(label).unwrap_or_else(|| panic!("no point {label}"))
}

fn edges_by_label(sk: &Skeleton) -> BTreeSet<(String, String)> {
    sk.covering_edges().into_iter().map(|(a, b)| (sk.label(a), sk.label(b))).collect()
}

#[test]
fn cyclic_of_prime_order_is_a_v() {
    for p in [2, 3, 5] {
        let start = Instant::now();
        let sk = ea(p, 1, Level::Rational);
        let labels: Vec<String> = (0..sk.len()).map(|i| sk.label(i)).collect();
        assert_eq!(labels, ["M(1)", "M(E)", "eta(1)"]);
        let eta = at(&sk, "eta(1)");
        assert_eq!(sk.closure(eta).len(), 3);
        assert_eq!(sk.closed_points().len(), 2);
        let (_, gl) = glued(FiniteGroup::cyclic(p as usize).unwrap(), p);
        assert_eq!(gl.len(), 3);
        assert_eq!(gl.covering_edges().len(), 2);
        assert!(start.elapsed() < Duration::from_secs(5));
    }
}

#[test]
fn klein_four_rational_skeleton() {
    let sk = ea(2, 2, Level::Rational);
    assert_eq!(sk.len(), 13);
    let kinds: Vec<PointKind> = sk.points().iter().map(|p| p.kind).collect();
    assert_eq!(kinds.iter().filter(|&&k| k == PointKind::GenericFamily).count(), 1);
    assert_eq!(kinds.iter().filter(|&&k| k == PointKind::VeryClosed).count(), 5);
    let mut want = BTreeSet::new();
    for n in ["<01>", "<10>", "<11>"] {
        want.insert(("eta(1)".to_string(), format!("eta({n})")));
        want.insert(("eta(1)".to_string(), format!("pt({n})")));
        want.insert((format!("eta({n})"), format!("M({n})")));
        want.insert((format!("eta({n})"), "M(E)".to_string()));
        want.insert((format!("pt({n})"), format!("M({n})")));
        want.insert((format!("pt({n})"), "M(1)".to_string()));
    }
    want.insert(("eta(1)".into(), "fam(1;E)".into()));
    want.insert(("fam(1;E)".into(), "M(1)".into()));
    want.insert(("fam(1;E)".into(), "M(E)".into()));
    assert_eq!(edges_by_label(&sk), want);
    for n in ["<01>", "<10>", "<11>"] {
        let closure: BTreeSet<String> = sk.closure(at(&sk, &format!("pt({n})"))).into_iter().map(|j| sk.label(j)).collect();
        let want: BTreeSet<String> = [format!("M({n})"), format!("pt({n})"), "M(1)".into()].into();
        assert_eq!(closure, want);
    }
    let (_, gl) = glued(FiniteGroup::elementary_abelian(2, 2).unwrap(), 2);
    assert_eq!(gl.len(), 13);
    assert_eq!(gl.covering_edges().len(), sk.covering_edges().len());
}

/// Stratum generics specialize to exactly the points of larger strata,
/// rational points to `M(line)` and `M(1)` only.
#[test]
fn specialization_matches_the_geometry() {
    for (p, r) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
        let sk = ea(p, r, Level::Rational);
        for (i, a) in sk.points().iter().enumerate() {
            for (j, b) in sk.points().iter().enumerate() {
                if i == j {
                    continue;
                }
                match a.kind {
                    PointKind::StratumGeneric => {
                        let want = a.stratum.is_subspace_of(&b.stratum) && !(b.stratum == a.stratum && b.kind == PointKind::StratumGeneric);
                        assert_eq!(sk.specializes(i, j), want, "{} -> {}", sk.label(i), sk.label(j));
                    }
                    PointKind::Rational if a.stratum.dim() == 0 => {
                        let want = b.kind == PointKind::VeryClosed && (b.stratum.dim() == 0 || b.stratum == a.top);
                        assert_eq!(sk.specializes(i, j), want, "{} -> {}", sk.label(i), sk.label(j));
                    }
                    PointKind::GenericFamily => {
                        let want = b.kind == PointKind::VeryClosed && (b.stratum == a.stratum || b.stratum == a.top);
                        assert_eq!(sk.specializes(i, j), want);
                    }
                    PointKind::VeryClosed => assert!(!sk.specializes(i, j)),
                    _ => {}
                }
            }
        }
    }
}

/// The order at very closed points agrees with `closure_ideal` directly.
#[test]
fn order_agrees_with_closure_ideals() {
    for (p, r) in [(2, 2), (3, 2), (2, 3)] {
        let sk = ea(p, r, Level::Rational);
        let e = Elab::new(p, r).unwrap();
        for (i, a) in sk.points().iter().enumerate() {
            if a.stratum.dim() != 0 || a.kind == PointKind::GenericFamily {
                continue;
            }
            for (j, b) in sk.points().iter().enumerate() {
                if b.kind != PointKind::VeryClosed || i == j {
                    continue;
                }
                let reaches = !closure_ideal(&e, &b.stratum, &a.ideal).unwrap().is_unit();
                assert_eq!(sk.specializes(i, j), reaches, "{} -> {}", sk.label(i), sk.label(j));
            }
        }
    }
}

/// Generic points pair up consecutive `M(H_i)`, which form a path.
#[test]
fn cyclic_p_groups_give_zigzags() {
    for (p, n) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        let start = Instant::now();
        let (_, gl) = glued(FiniteGroup::cyclic((p as usize).pow(n)).unwrap(), p);
        let n = n as usize;
        assert_eq!(gl.len(), 2 * n + 1, "C{p}^{n}");
        assert!(gl.is_partial_order());
        let closed = gl.closed_points();
        let generics = gl.generic_points();
        assert_eq!((closed.len(), generics.len()), (n + 1, n));
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &g in &generics {
            let up: Vec<usize> = gl.closure(g).into_iter().filter(|&j| j != g).collect();
            assert_eq!(up.len(), 2);
            assert!(up.iter().all(|j| closed.contains(j)));
            for j in up {
                *degree.entry(j).or_default() += 1;
            }
        }
        let ends = degree.values().filter(|&&d| d == 1).count();
        assert_eq!(degree.len(), n + 1);
        assert_eq!(ends, 2);
        assert!(start.elapsed() < Duration::from_secs(5));
        let (cat, gl) = glued(FiniteGroup::cyclic((p as usize).pow(n as u32)).unwrap(), p);
        assert_eq!(dimension(&cat, &gl).sectional_rank, 1);
        assert_eq!(components(&gl).len(), n);
    }
}

#[test]
fn dihedral_eight() {
    let start = Instant::now();
    let (cat, gl) = glued(FiniteGroup::dihedral(8).unwrap(), 2);
    assert_eq!(cat.maxel().len(), 3);
    assert_eq!(gl.relations.iter().filter(|r| r.nondegenerate).count(), 5);
    assert_eq!(components(&gl).len(), 3);
    assert_eq!(gl.generic_points().len(), 3);
    assert_eq!(gl.count_kind(PointKind::VeryClosed), 8);
    let dim = dimension(&cat, &gl);
    assert_eq!((dim.sectional_rank, dim.longest_chain), (2, 2));
    let profile = gl.glue_profile();
    assert_eq!((profile.green_green, profile.brown_green, profile.brown_brown), (1, 2, 0));
    assert!(gl.is_partial_order());
    // Each (K,1)-type component is folded by its loop: two of its three
    // rational points are glued, the third is fixed.
    for c in 0..2 {
        let comp = &gl.components[c];
        assert_eq!(comp.skeleton.rank(), 2);
        let greens: BTreeSet<usize> =
            (0..comp.skeleton.len()).filter(|&i| comp.color(i) == Some(Color::Green)).map(|i| gl.class_of(c, i)).collect();
        assert_eq!(greens.len(), 2, "{}", comp.label);
    }
    assert!(start.elapsed() < Duration::from_secs(60));
}

#[test]
fn quaternion_dimensions() {
    let (cat, gl) = glued(FiniteGroup::quaternion(), 2);
    let dim = dimension(&cat, &gl);
    assert_eq!(dim.sectional_rank, 2);
    assert_eq!(dim.longest_chain, 2);
    assert_eq!(dim.p_rank, 1);
    assert_eq!(dim.open_dimension, 1);
    assert_eq!(components(&gl).len(), 2);
}

#[test]
fn elementary_abelian_dimensions() {
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
        let (cat, gl) = glued(FiniteGroup::elementary_abelian(p, r as u32).unwrap(), p);
        let dim = dimension(&cat, &gl);
        assert_eq!((dim.sectional_rank, dim.longest_chain, dim.p_rank, dim.open_dimension), (r, r, r, r), "p={p} r={r}");
    }
}

fn section_models(g: &Arc<FiniteGroup>, h: &[&str], k: &[&str]) -> SectionModel {
    SectionModel::new(g.clone(), 2, &sub(g, h), &sub(g, k)).unwrap()
}

#[test]
fn maps_of_skeletons() {
    let g = Arc::new(FiniteGroup::elementary_abelian(2, 2).unwrap());
    let top = section_models(&g, &["01", "10"], &[]);
    let n0 = section_models(&g, &["10"], &[]);
    let big = ea(2, 2, Level::Rational);
    let small = ea(2, 1, Level::Rational);
    let mut tgt = big.clone();
    let id = induced_map(&top, &big, &top, &mut tgt, 0).unwrap();
    assert_eq!(id, (0..big.len()).collect::<Vec<_>>());
    assert_eq!(tgt.len(), big.len());
    let f = induced_map(&n0, &small, &top, &mut tgt, 0).unwrap();
    let line = top.subspace_of(&sub(&g, &["10"])).unwrap();
    let name = subspace_label(&line);
    assert_eq!(tgt.label(f[at(&small, "eta(1)")]), format!("pt({name})"));
    assert_eq!(tgt.label(f[at(&small, "M(1)")]), "M(1)");
    assert_eq!(tgt.label(f[at(&small, "M(E)")]), format!("M({name})"));
}

#[test]
fn induced_maps_are_functorial_on_d8() {
    let cat = SectionCategory::new(Arc::new(FiniteGroup::dihedral(8).unwrap()), 2).unwrap();
    let n = cat.objects().len();
    let models: Vec<SectionModel> =
        cat.objects().iter().map(|o| SectionModel::new(cat.group().clone(), 2, &o.h, &o.k).unwrap()).collect();
    let mut sks: Vec<Skeleton> = models.iter().map(|m| ea(2, m.rank(), Level::Rational)).collect();
    let map = |m: &SectionMorphism, sks: &mut Vec<Skeleton>| -> Vec<usize> {
        let src = sks[m.source].clone();
        induced_map(&models[m.source], &src, &models[m.target], &mut sks[m.target], m.g).unwrap()
    };
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            for m in cat.homs(x, y, Reduction::CenterTarget).unwrap() {
                let [c, b, a] = cat.factorize(&m).unwrap();
                let fm = map(&m, &mut sks);
                let (fc, fb, fa) = (map(&c, &mut sks), map(&b, &mut sks), map(&a, &mut sks));
                let composite: Vec<usize> = fc.iter().map(|&i| fa[fb[i]]).collect();
                assert_eq!(fm, composite, "{} -> {}", cat.label(x), cat.label(y));
                for z in 0..n {
                    for m2 in cat.homs(y, z, Reduction::CenterTarget).unwrap() {
                        let fm = map(&m, &mut sks);
                        let f2 = map(&m2, &mut sks);
                        let both = map(&cat.compose(&m, &m2).unwrap(), &mut sks);
                        let via: Vec<usize> = fm.iter().map(|&i| f2[i]).collect();
                        assert_eq!(both, via);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

fn shape(gl: &GluedSkeleton) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let labels = gl.points.iter().map(|p| p.label.clone()).collect();
    let edges = gl.covering_edges().into_iter().map(|(a, b)| (gl.points[a].label.clone(), gl.points[b].label.clone())).collect();
    (labels, edges)
}

#[test]
fn gluing_does_not_depend_on_the_reduction() {
    for (name, g, p) in zoo_pairs() {
        let cat = SectionCategory::new(g, p).unwrap();
        let ct = glue_category(&cat, Level::Rational, DEFAULT_RANK_CAP, Reduction::CenterTarget).unwrap();
        let raw = glue_category(&cat, Level::Rational, DEFAULT_RANK_CAP, Reduction::Raw).unwrap();
        assert_eq!(ct.len(), raw.len(), "{name}");
        assert_eq!(shape(&ct), shape(&raw), "{name}");
        assert!(ct.is_partial_order(), "{name}");
        let labels: BTreeSet<&String> = ct.points.iter().map(|p| &p.label).collect();
        assert_eq!(labels.len(), ct.len(), "{name}: labels are not unique");
    }
}

#[test]
fn folding_the_klein_four_group() {
    let sk = ea(2, 2, Level::Rational);
    let id = fold(&sk, &Mat::identity(2)).unwrap();
    assert_eq!(id.len(), sk.len());
    let swap = Mat { rows: 2, cols: 2, data: vec![0, 1, 1, 0] };
    let f = fold(&sk, &swap).unwrap();
    assert_eq!(f.len(), 10);
    let comp = &f.components[0];
    let same = |a: &str, b: &str| f.class_of(0, at(&comp.skeleton, a)) == f.class_of(0, at(&comp.skeleton, b));
    assert!(same("M(<01>)", "M(<10>)"));
    assert!(same("pt(<01>)", "pt(<10>)"));
    assert!(same("eta(<01>)", "eta(<10>)"));
    assert!(!same("pt(<11>)", "pt(<01>)"));
    // The folded P¹ keeps a doubled point over {0,1} and one over ∞, each a
    // green/brown pair; glued classes never mix colors.
    for pt in &f.points {
        let colors: BTreeSet<Option<Color>> = pt.members.iter().map(|&(c, i)| f.components[c].color(i)).collect();
        assert_eq!(colors.len(), 1, "{}", pt.label);
    }
    let doubled = f.points.iter().filter(|p| p.members.len() == 2 && p.kind != PointKind::VeryClosed).count();
    assert_eq!(doubled, 2);
    assert!(fold(&sk, &Mat { rows: 2, cols: 2, data: vec![1, 1, 1, 1] }).is_err());
}

fn coordinate(f: &[u32]) -> Coordinate {
    Coordinate { functional: f.to_vec() }
}

#[test]
fn frattini_covers() {
    let klein = ea(2, 2, Level::Rational);
    assert!(frattini_cover_check(&klein, &[coordinate(&[1, 0]), coordinate(&[0, 1])]).unwrap());
    assert!(frattini_cover_check(&klein, &[coordinate(&[1, 1]), coordinate(&[0, 1])]).unwrap());
    assert!(frattini_cover_check(&klein, &[coordinate(&[1, 0])]).is_err());
    let c2 = ea(2, 1, Level::Rational);
    assert!(frattini_cover_check(&c2, &[coordinate(&[1])]).unwrap());
    let rank3 = ea(2, 3, Level::Rational);
    let fs = Elab::new(2, 3).unwrap().coordinates();
    for a in &fs {
        for b in &fs {
            for c in &fs {
                let span = Subspace::span(2, 3, &[a.functional.clone(), b.functional.clone(), c.functional.clone()]);
                if span.dim() == 3 {
                    assert!(frattini_cover_check(&rank3, &[a.clone(), b.clone(), c.clone()]).unwrap());
                }
            }
        }
    }
}

#[test]
fn generic_and_closed_points_of_elementary_abelian_skeletons() {
    for (p, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        for level in [Level::Strata, Level::Rational] {
            let sk = ea(p, r, level);
            let generic = sk.generic_points();
            assert_eq!(generic.len(), 1, "p={p} r={r}");
            assert_eq!(sk.label(generic[0]), if r == 0 { "M(1)" } else { "eta(1)" });
            assert!((0..sk.len()).all(|j| j == generic[0] || sk.specializes(generic[0], j)));
            let closed: BTreeSet<usize> = sk.closed_points().into_iter().collect();
            let very: BTreeSet<usize> = (0..sk.len()).filter(|&i| sk.points()[i].kind == PointKind::VeryClosed).collect();
            assert_eq!(closed, very);
            for i in 0..sk.len() {
                if !very.contains(&i) {
                    assert!(very.iter().any(|&j| sk.specializes(i, j)), "{}", sk.label(i));
                }
            }
        }
    }
    assert!(Skeleton::new(2, 4, Level::Strata, DEFAULT_RANK_CAP).is_err());
}

#[test]
fn point_counts() {
    for (p, r, strata, rational) in [(2, 2, 9, 13), (3, 2, 11, 16), (2, 3, 31, 74), (3, 3, 55, 147)] {
        assert_eq!(ea(p, r, Level::Strata).len(), strata);
        assert_eq!(ea(p, r, Level::Rational).len(), rational);
    }
}

#[test]
fn json_round_trip_and_determinism() {
    let (_, a) = glued(FiniteGroup::dihedral(8).unwrap(), 2);
    let (_, b) = glued(FiniteGroup::dihedral(8).unwrap(), 2);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_dot(), b.to_dot());
    let parsed = parse_json(&a.to_json()).unwrap();
    assert_eq!(parsed, a.to_json_value());
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), a.to_json());
    assert_eq!(parsed.provenance.components.len(), 3);
    assert!(parse_json("{\"points\": 3}").is_err());
    let dot = a.to_dot();
    assert!(dot.contains("green") && dot.contains("brown"));
}

/// Is the degree-`d` polynomial `c[0] + c[1] t + … + c[d] t^d` irreducible over `F_p`?
fn irreducible(c: &[u32], p: u32) -> bool {
    let d = c.len() - 1;
    for k in 1..=d / 2 {
        let total = (p as usize).pow(k as u32);
        for n in 0..total {
            // monic divisor t^k + Σ q_i t^i
            let mut q: Vec<u32> = (0..k).map(|i| (n / (p as usize).pow(i as u32) % p as usize) as u32).collect();
            q.push(1);
            let mut rem = c.to_vec();
            for shift in (0..=d - k).rev() {
                let lead = rem[shift + k];
                for (i, &qi) in q.iter().enumerate() {
                    rem[shift + i] = (rem[shift + i] + p * p - lead * qi % p) % p;
                }
            }
            if rem.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Closed points of the rank-2 cohomological open cut out by irreducible
/// binary forms lie on no proper subgroup stratum.
#[test]
fn off_image_closed_points_miss_every_proper_stratum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (p, degrees) in [(2u32, 2..=5usize), (3, 2..=3)] {
        let e = Elab::new(p, 2).unwrap();
        let coh = cohomology(&e).unwrap();
        let (x, y) = (coh.zeta_of(&[1, 0]), coh.zeta_of(&[0, 1]));
        let mut found = 0;
        while found < 20 {
            let d = rng.gen_range(degrees.clone());
            let mut c: Vec<u32> = (0..=d).map(|_| rng.gen_range(0..p)).collect();
            c[d] = 1;
            if !irreducible(&c, p) {
                continue;
            }
            let mut f = Poly::zero(x.nvars());
            for (i, &ci) in c.iter().enumerate() {
                let term = x.pow(i as u32, p).mul(&y.pow((d - i) as u32, p), p).scale(ci, p);
                f = f.add(&term, p);
            }
            let ideal = coh.ring.ideal(vec![f]).unwrap();
            for h in e.subgroups().into_iter().filter(|h| h.dim() == 1) {
                assert!(closure_ideal(&e, &h, &ideal).unwrap().is_unit(), "p={p} c={c:?}");
            }
            assert!(!closure_ideal(&e, &e.full(), &ideal).unwrap().is_unit());
            found += 1;
        }
    }
}

#[test]
fn larger_groups_glue_to_partial_orders() {
    let mut sizes = HashMap::new();
    for (name, g, p) in [
        ("c4xc4", FiniteGroup::product(&[FiniteGroup::cyclic(4).unwrap(), FiniteGroup::cyclic(4).unwrap()]).unwrap(), 2),
        ("d16", FiniteGroup::dihedral(16).unwrap(), 2),
        ("c2^3", FiniteGroup::elementary_abelian(2, 3).unwrap(), 2),
    ] {
        let (cat, gl) = glued(g, p);
        assert!(gl.is_partial_order());
        let dim = dimension(&cat, &gl);
        assert_eq!(dim.longest_chain, dim.sectional_rank, "{name}");
        sizes.insert(name, gl.len());
    }
    assert_eq!(sizes["c4xc4"], 49);
    assert_eq!(sizes["d16"], 37);
    assert_eq!(sizes["c2^3"], 74);
}
