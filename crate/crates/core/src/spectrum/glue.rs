//! Skeletons of `Spc K(G)` for a general finite group, glued from the
//! elementary abelian skeletons of its maximal sections.

use super::model::SectionModel;
use super::skeleton::{map_point, subspace_label, Level, PointKind, Skeleton};
use crate::error::{Error, Result};
use crate::field::Mat;
use crate::group::FiniteGroup;
use crate::sections::{Reduction, SectionCategory, SectionMorphism, SpanRelation};
use crate::twisted::{cohomology, Coordinate, Elab, Subspace};
use std::collections::HashMap;
use std::sync::Arc;

/// One elementary abelian skeleton entering a gluing.
#[derive(Clone, Debug)]
pub struct Component {
    /// Index of the section object, when the component comes from a group.
    pub object: Option<usize>,
    pub label: String,
    pub model: Option<SectionModel>,
    pub skeleton: Skeleton,
}

impl Component {
    fn name(&self, s: &Subspace) -> String {
        match &self.model {
            Some(m) => m.subgroup_of(s).label(m.group()),
            None => subspace_label(s),
        }
    }

    /// The section `(H, L)` of point `i`, with `L` the preimage of its stratum.
    pub fn section(&self, i: usize) -> (String, String) {
        let s = &self.skeleton.points()[i].stratum;
        let top = Subspace::full(self.skeleton.prime(), self.skeleton.rank());
        (self.name(&top), self.name(s))
    }

    /// Is the preimage of the stratum of point `i` trivial in `G`?
    pub fn stratum_is_trivial(&self, i: usize) -> bool {
        let s = &self.skeleton.points()[i].stratum;
        match &self.model {
            Some(m) => m.subgroup_of(s).is_trivial(),
            None => s.dim() == 0,
        }
    }

    /// Green for rational points of the section's cohomological open,
    /// brown for generic points of its nontrivial strata.
    pub fn color(&self, i: usize) -> Option<Color> {
        let pt = &self.skeleton.points()[i];
        match pt.kind {
            PointKind::Rational if pt.stratum.dim() == 0 => Some(Color::Green),
            PointKind::StratumGeneric if pt.stratum.dim() > 0 => Some(Color::Brown),
            _ => None,
        }
    }

    /// The generic point: `η(1)`, or `M(1)` in rank 0.
    pub fn generic_point(&self) -> usize {
        let pts = self.skeleton.points();
        (0..pts.len())
            .find(|&i| pts[i].kind == PointKind::StratumGeneric && pts[i].stratum.dim() == 0)
            .unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Color {
    Green,
    Brown,
}

/// Identifications between different components, by color.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct GlueProfile {
    pub green_green: usize,
    pub brown_green: usize,
    pub brown_brown: usize,
}

#[derive(Clone, Debug)]
pub struct GluedPoint {
    pub kind: PointKind,
    pub label: String,
    pub section: (String, String),
    /// The stratum is the trivial subgroup of `G`: the point lies in the cohomological open.
    pub in_open: bool,
    /// The stratum is trivial in the section the point was first seen in.
    pub local_open: bool,
    pub ideal: Vec<String>,
    /// `(component, point)` pairs identified into this point, in order.
    pub members: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct GluedSkeleton {
    pub prime: u32,
    pub components: Vec<Component>,
    pub points: Vec<GluedPoint>,
    pub relations: Vec<SpanRelation>,
    below: Vec<Vec<bool>>,
    class: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl GluedSkeleton {
    /// The quotient of the disjoint union of `components` by the given
    /// identifications, ordered by the transitive closure of the images
    /// of the component orders.
    pub fn quotient(
        prime: u32,
        components: Vec<Component>,
        pairs: &[((usize, usize), (usize, usize))],
        relations: Vec<SpanRelation>,
    ) -> Self {
        let offsets: Vec<usize> = components
            .iter()
            .scan(0, |acc, c| {
                let o = *acc;
                *acc += c.skeleton.len();
                Some(o)
            })
            .collect();
        let total: usize = components.iter().map(|c| c.skeleton.len()).sum();
        let mut parent: Vec<usize> = (0..total).collect();
        for &((c1, i1), (c2, i2)) in pairs {
            let (a, b) = (find(&mut parent, offsets[c1] + i1), find(&mut parent, offsets[c2] + i2));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let multi = components.len() > 1;
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut points: Vec<GluedPoint> = Vec::new();
        let mut class = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            let mut row = Vec::new();
            for i in 0..comp.skeleton.len() {
                let root = find(&mut parent, offsets[c] + i);
                let id = *ids.entry(root).or_insert_with(|| {
                    let pt = &comp.skeleton.points()[i];
                    let local = pt.label(&|s| comp.name(s));
                    let label = if multi && pt.kind != PointKind::VeryClosed {
                        format!("{}:{local}", comp.label)
                    } else {
                        local
                    };
                    points.push(GluedPoint {
                        kind: pt.kind,
                        label,
                        section: comp.section(i),
                        in_open: comp.stratum_is_trivial(i),
                        local_open: pt.stratum.dim() == 0,
                        ideal: pt.ideal.display(),
                        members: Vec::new(),
                    });
                    points.len() - 1
                });
                points[id].members.push((c, i));
                row.push(id);
            }
            class.push(row);
        }
        let n = points.len();
        let mut below = vec![vec![false; n]; n];
        for (c, comp) in components.iter().enumerate() {
            for i in 0..comp.skeleton.len() {
                for j in 0..comp.skeleton.len() {
                    if comp.skeleton.specializes(i, j) && class[c][i] != class[c][j] {
                        below[class[c][i]][class[c][j]] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if below[i][k] {
                    for j in 0..n {
                        if below[k][j] && i != j {
                            below[i][j] = true;
                        }
                    }
                }
            }
        }
        GluedSkeleton { prime, components, points, relations, below, class }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn specializes(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    pub fn closure(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j == i || self.below[i][j]).collect()
    }

    /// The glued point of point `i` of component `c`.
    pub fn class_of(&self, c: usize, i: usize) -> usize {
        self.class[c][i]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == label)
    }

    /// Antisymmetry of the glued order (transitivity holds by construction).
    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| !(self.below[i][j] && self.below[j][i])))
    }

    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        super::skeleton::covering_edges(&self.below)
    }

    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.below[i][j])).collect()
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.below[i].iter().any(|&b| b)).collect()
    }

    pub fn count_kind(&self, kind: PointKind) -> usize {
        self.points.iter().filter(|p| p.kind == kind).count()
    }

    /// Length of the longest chain among the points selected by `keep`.
    pub fn longest_chain(&self, keep: impl Fn(&GluedPoint) -> bool) -> usize {
        let n = self.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn depth(g: &GluedSkeleton, i: usize, keep: &dyn Fn(&GluedPoint) -> bool, memo: &mut [Option<usize>]) -> usize {
            if let Some(d) = memo[i] {
                return d;
            }
            let d = (0..g.len())
                .filter(|&j| g.below[i][j] && keep(&g.points[j]))
                .map(|j| 1 + depth(g, j, keep, memo))
                .max()
                .unwrap_or(0);
            memo[i] = Some(d);
            d
        }
        (0..n).filter(|&i| keep(&self.points[i])).map(|i| depth(self, i, &keep, &mut memo)).max().unwrap_or(0)
    }

    /// Glued points whose members come from at least two components,
    /// classified by the colors the components give them.
    pub fn glue_profile(&self) -> GlueProfile {
        let mut out = GlueProfile::default();
        for p in &self.points {
            let mut seen: Vec<(usize, Option<Color>)> = p.members.iter().map(|&(c, i)| (c, self.components[c].color(i))).collect();
            seen.sort();
            seen.dedup_by_key(|x| x.0);
            if seen.len() < 2 {
                continue;
            }
            let greens = seen.iter().filter(|x| x.1 == Some(Color::Green)).count();
            let browns = seen.iter().filter(|x| x.1 == Some(Color::Brown)).count();
            if greens >= 2 {
                out.green_green += 1;
            } else if greens == 1 && browns >= 1 {
                out.brown_green += 1;
            } else if browns >= 2 {
                out.brown_brown += 1;
            }
        }
        out
    }

    /// One generic point per component, in component order.
    pub fn component_generics(&self) -> Vec<usize> {
        self.components.iter().enumerate().map(|(c, comp)| self.class[c][comp.generic_point()]).collect()
    }
}

/// Point indices of `tgt` hit by every point of `src` under the morphism `g`.
pub fn induced_map(
    src_model: &SectionModel,
    src: &Skeleton,
    tgt_model: &SectionModel,
    tgt: &mut Skeleton,
    g: usize,
) -> Result<Vec<usize>> {
    let (alpha, kappa) = src_model
        .conjugation_matrix(tgt_model, g)
        .ok_or_else(|| Error::domain("element does not map the source section into the target"))?;
    (0..src.len()).map(|i| map_point(src, i, tgt, &alpha, &kappa)).collect()
}

/// Cached models and skeletons of the objects of a section category.
struct Models<'a> {
    cat: &'a SectionCategory,
    level: Level,
    rank_cap: usize,
    models: HashMap<usize, SectionModel>,
    skeletons: HashMap<usize, Skeleton>,
}

impl<'a> Models<'a> {
    fn new(cat: &'a SectionCategory, level: Level, rank_cap: usize) -> Self {
        Models { cat, level, rank_cap, models: HashMap::new(), skeletons: HashMap::new() }
    }

    fn model(&mut self, x: usize) -> Result<SectionModel> {
        if let Some(m) = self.models.get(&x) {
            return Ok(m.clone());
        }
        let o = self.cat.object(x);
        let m = SectionModel::new(self.cat.group().clone(), self.cat.prime(), &o.h, &o.k)?;
        self.models.insert(x, m.clone());
        Ok(m)
    }

    fn skeleton(&mut self, rank: usize) -> Result<Skeleton> {
        if let Some(s) = self.skeletons.get(&rank) {
            return Ok(s.clone());
        }
        let s = Skeleton::new(self.cat.prime(), rank, self.level, self.rank_cap)?;
        self.skeletons.insert(rank, s.clone());
        Ok(s)
    }
}

/// Do two morphisms with the same ends induce the same map of rational-level skeletons?
pub fn same_induced_map(cat: &SectionCategory, a: &SectionMorphism, b: &SectionMorphism) -> Result<bool> {
    if a.source != b.source || a.target != b.target {
        return Ok(false);
    }
    let mut models = Models::new(cat, Level::Rational, super::skeleton::DEFAULT_RANK_CAP);
    let (ms, mt) = (models.model(a.source)?, models.model(a.target)?);
    let src = models.skeleton(ms.rank())?;
    let mut tgt = models.skeleton(mt.rank())?;
    let fa = induced_map(&ms, &src, &mt, &mut tgt, a.g)?;
    let fb = induced_map(&ms, &src, &mt, &mut tgt, b.g)?;
    Ok(fa == fb)
}

/// The skeleton of `Spc K(G)`: skeletons of the maximal sections glued
/// along the images of the maximal relations.
pub fn glue(group: &Arc<FiniteGroup>, p: u32, level: Level, rank_cap: usize, reduction: Reduction) -> Result<GluedSkeleton> {
    let cat = SectionCategory::new(group.clone(), p)?;
    glue_category(&cat, level, rank_cap, reduction)
}

pub fn glue_category(cat: &SectionCategory, level: Level, rank_cap: usize, reduction: Reduction) -> Result<GluedSkeleton> {
    let maxel = cat.maxel();
    for &x in &maxel {
        let r = cat.object(x).rank;
        if r > rank_cap {
            return Err(Error::Resource(format!("section {} has rank {r} above the rank cap {rank_cap}", cat.label(x))));
        }
    }
    let relations = cat.maximal_relations(reduction)?;
    let mut models = Models::new(cat, level, rank_cap);
    let mut components = Vec::new();
    for &x in &maxel {
        let model = models.model(x)?;
        let skeleton = models.skeleton(model.rank())?;
        components.push(Component { object: Some(x), label: cat.label(x), model: Some(model), skeleton });
    }
    let mut pairs = Vec::new();
    for rel in &relations {
        let my = models.model(rel.middle)?;
        let sy = models.skeleton(my.rank())?;
        let c1 = maxel.iter().position(|&x| x == rel.left.target).expect("relation leg ends at a maximal object");
        let c2 = maxel.iter().position(|&x| x == rel.right.target).expect("relation leg ends at a maximal object");
        let m1 = components[c1].model.clone().unwrap();
        let f1 = induced_map(&my, &sy, &m1, &mut components[c1].skeleton, rel.left.g)?;
        let m2 = components[c2].model.clone().unwrap();
        let f2 = induced_map(&my, &sy, &m2, &mut components[c2].skeleton, rel.right.g)?;
        pairs.extend(f1.into_iter().zip(f2).map(|(i, j)| ((c1, i), (c2, j))));
    }
    Ok(GluedSkeleton::quotient(cat.prime(), components, &pairs, relations))
}

/// Irreducible components: each maximal section class with its generic point.
pub fn components(glued: &GluedSkeleton) -> Vec<(String, usize)> {
    glued.components.iter().map(|c| c.label.clone()).zip(glued.component_generics()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DimensionReport {
    /// Largest rank of an elementary abelian section.
    pub sectional_rank: usize,
    /// Longest chain of the glued skeleton.
    pub longest_chain: usize,
    /// Largest rank of an elementary abelian subgroup.
    pub p_rank: usize,
    /// Longest chain inside the cohomological open (stratum of the trivial subgroup).
    pub open_dimension: usize,
}

pub fn dimension(cat: &SectionCategory, glued: &GluedSkeleton) -> DimensionReport {
    let sectional_rank = cat.maxel().iter().map(|&x| cat.object(x).rank).max().unwrap_or(0);
    let p_rank = cat.objects().iter().filter(|o| o.k.is_trivial()).map(|o| o.rank).max().unwrap_or(0);
    DimensionReport {
        sectional_rank,
        longest_chain: glued.longest_chain(|_| true),
        p_rank,
        open_dimension: glued.longest_chain(|p| p.in_open),
    }
}

/// The quotient of an elementary abelian skeleton by the action of an
/// invertible matrix.
pub fn fold(skeleton: &Skeleton, a: &Mat) -> Result<GluedSkeleton> {
    let p = skeleton.prime();
    let r = skeleton.rank();
    if a.rows != r || a.cols != r || a.rank(p) != r {
        return Err(Error::domain("fold needs an invertible square matrix of the skeleton's rank"));
    }
    let src = skeleton.clone();
    let mut tgt = skeleton.clone();
    let zero = Subspace::zero(p, r);
    let mut pairs = Vec::new();
    for i in 0..src.len() {
        let j = map_point(&src, i, &mut tgt, a, &zero)?;
        pairs.push(((0, i), (0, j)));
    }
    let comp = Component { object: None, label: "E".into(), model: None, skeleton: tgt };
    Ok(GluedSkeleton::quotient(p, vec![comp], &pairs, Vec::new()))
}

/// Does point `i` avoid `b_N`? Exactly when its stratum lies in `N`.
pub fn avoids_b(skeleton: &Skeleton, i: usize, n: &Coordinate) -> bool {
    n.divides(&skeleton.points()[i].stratum)
}

/// Does point `i` avoid `a_N`? When its stratum is not in `N`, or it is and
/// `ζ_{N/S}` is not in its prime (family tokens avoid every `ζ`).
pub fn avoids_a(skeleton: &Skeleton, i: usize, n: &Coordinate) -> Result<bool> {
    let pt = &skeleton.points()[i];
    if !n.divides(&pt.stratum) {
        return Ok(true);
    }
    if pt.kind == PointKind::GenericFamily {
        return Ok(true);
    }
    let coh = cohomology(&skeleton.elab().quotient(&pt.stratum))?;
    let zeta = coh.generator(n).expect("coordinate of the quotient");
    let ideal = pt.ideal.transfer(&coh.ring)?;
    Ok(!ideal.member(&zeta))
}

/// For a family of coordinates whose kernels meet trivially: every named
/// point outside all `b_{N_i}` is outside every `b_N`, and every point
/// avoids `a_N` or `b_N` for each `N`.
pub fn frattini_cover_check(skeleton: &Skeleton, family: &[Coordinate]) -> Result<bool> {
    let p = skeleton.prime();
    let r = skeleton.rank();
    let meet = family.iter().fold(Subspace::full(p, r), |acc, c| acc.intersect(&c.kernel(p)));
    if meet.dim() != 0 {
        return Err(Error::domain("the kernels of the family do not meet trivially"));
    }
    let all = Elab::new(p, r)?.coordinates();
    for i in 0..skeleton.len() {
        let in_family = family.iter().all(|n| avoids_b(skeleton, i, n));
        if in_family && !all.iter().all(|n| avoids_b(skeleton, i, n)) {
            return Ok(false);
        }
        for n in &all {
            if !avoids_b(skeleton, i, n) && !avoids_a(skeleton, i, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
