//! Named points of `Spc K(E)` for `E = F_p^r` and their specialization order.

use crate::error::{Error, Result};
use crate::field::Mat;
use crate::ring::Ideal;
use crate::twisted::{closure_ideal, cohomology, rational_point, res_hom_along, Elab, Subspace};
use serde::Serialize;
use std::collections::HashMap;

/// Default cap on the rank of elementary abelian skeletons.
pub const DEFAULT_RANK_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointKind {
    VeryClosed,
    StratumGeneric,
    Rational,
    GenericFamily,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Strata,
    Rational,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strata" => Ok(Level::Strata),
            "rational" => Ok(Level::Rational),
            _ => Err(Error::parse(0, format!("unknown level `{s}`"))),
        }
    }
}

/// A point in the stratum of `stratum`, given by a homogeneous prime of
/// `H•(E/stratum)`.
///
/// A `Custom` point with `top ≠ stratum` is the generic point of the
/// linear subvariety cut out by the coordinates vanishing on `top`.
///
/// A `GenericFamily` point stands for the closed points of `V(ideal)` that
/// lie on no proper linear subvariety; they specialize exactly to
/// `M(stratum)` and `M(top)`. For rational points `top` is the line
/// through the point; otherwise it equals `stratum`.
#[derive(Clone, Debug)]
pub struct Point {
    pub stratum: Subspace,
    pub ideal: Ideal,
    pub kind: PointKind,
    pub top: Subspace,
}

impl Point {
    /// A label with subgroups rendered by `name`.
    pub fn label(&self, name: &dyn Fn(&Subspace) -> String) -> String {
        let s = name(&self.stratum);
        match self.kind {
            PointKind::VeryClosed => format!("M({s})"),
            PointKind::StratumGeneric => format!("eta({s})"),
            PointKind::Rational if self.stratum.dim() == 0 => format!("pt({})", name(&self.top)),
            PointKind::Rational => format!("pt({};{s})", name(&self.top)),
            PointKind::GenericFamily => format!("fam({s};{})", name(&self.top)),
            PointKind::Custom if self.top != self.stratum && self.stratum.dim() == 0 => format!("lin({})", name(&self.top)),
            PointKind::Custom if self.top != self.stratum => format!("lin({};{s})", name(&self.top)),
            PointKind::Custom => format!("V({})@{s}", self.ideal.display().join(",")),
        }
    }
}

/// `1`, `E`, or the echelon rows of a subspace.
pub fn subspace_label(s: &Subspace) -> String {
    let p = s.prime();
    if s.dim() == 0 {
        return "1".into();
    }
    if s.dim() == s.ambient() {
        return "E".into();
    }
    let sep = if p > 10 { "_" } else { "" };
    let rows: Vec<String> = s
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
        .collect();
    format!("<{}>", rows.join(","))
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    elab: Elab,
    points: Vec<Point>,
    /// `below[i][j]`: `j ≠ i` lies in the closure of `i`.
    below: Vec<Vec<bool>>,
    closures: HashMap<(usize, Subspace), Ideal>,
}

/// The prime of `H•(e)` generated by the coordinates vanishing on `a`.
pub fn linear_point(e: &Elab, a: &Subspace) -> Result<Ideal> {
    let coh = cohomology(e)?;
    let gens = coh.coords.iter().filter(|c| c.divides(a)).map(|c| coh.generator(c).unwrap()).collect();
    coh.ring.ideal(gens)
}

fn lines_over(p: u32, r: usize, s: &Subspace) -> Vec<Subspace> {
    Subspace::all(p, r).into_iter().filter(|c| c.dim() == s.dim() + 1 && s.is_subspace_of(c)).collect()
}

impl Skeleton {
    /// Points `M(S)`, `η(S)` for every stratum and, at rational level, every
    /// rational point, the generic point of every rational linear
    /// subvariety of positive dimension, and one family token of each
    /// stratum of dimension ≥ 1.
    pub fn new(p: u32, r: usize, level: Level, rank_cap: usize) -> Result<Self> {
        if r > rank_cap {
            return Err(Error::Resource(format!("rank {r} exceeds the rank cap {rank_cap}")));
        }
        let elab = Elab::new(p, r)?;
        let strata = elab.subgroups();
        let mut points = Vec::new();
        for s in &strata {
            let ring = cohomology(&elab.quotient(s))?.ring;
            points.push(Point { stratum: s.clone(), ideal: ring.irrelevant_ideal(), kind: PointKind::VeryClosed, top: s.clone() });
        }
        for s in strata.iter().filter(|s| s.dim() < r) {
            let ring = cohomology(&elab.quotient(s))?.ring;
            points.push(Point { stratum: s.clone(), ideal: ring.zero_ideal(), kind: PointKind::StratumGeneric, top: s.clone() });
        }
        if level == Level::Rational {
            for s in strata.iter().filter(|s| s.dim() + 2 <= r) {
                let quotient = elab.quotient(s);
                for c in lines_over(p, r, s) {
                    let v = c.complement_of(s).remove(0);
                    let ideal = rational_point(&quotient, &v)?;
                    points.push(Point { stratum: s.clone(), ideal, kind: PointKind::Rational, top: c });
                }
            }
            for s in strata.iter().filter(|s| s.dim() + 3 <= r) {
                let quotient = elab.quotient(s);
                for a in strata.iter().filter(|a| s.is_subspace_of(a) && a.dim() >= s.dim() + 2 && a.dim() < r) {
                    let ideal = linear_point(&quotient, a)?;
                    points.push(Point { stratum: s.clone(), ideal, kind: PointKind::Custom, top: a.clone() });
                }
            }
            for s in strata.iter().filter(|s| s.dim() + 2 <= r) {
                let ring = cohomology(&elab.quotient(s))?.ring;
                points.push(Point {
                    stratum: s.clone(),
                    ideal: ring.zero_ideal(),
                    kind: PointKind::GenericFamily,
                    top: elab.full(),
                });
            }
        }
        let mut sk = Skeleton { elab, points: Vec::new(), below: Vec::new(), closures: HashMap::new() };
        for pt in points {
            sk.add_point(pt)?;
        }
        Ok(sk)
    }

    pub fn prime(&self) -> u32 {
        self.elab.prime()
    }

    pub fn rank(&self) -> usize {
        self.elab.ambient()
    }

    pub fn elab(&self) -> &Elab {
        &self.elab
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Is `j` in the closure of `i` (and different from it)?
    pub fn specializes(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    /// `closure(i)`, including `i`.
    pub fn closure(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| j == i || self.below[i][j]).collect()
    }

    pub fn label(&self, i: usize) -> String {
        self.points[i].label(&subspace_label)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.label(i) == label)
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.below
    }

    /// The part of the closure of point `i` over `h`, as an ideal of `H•(E/h)`.
    pub fn closure_in(&mut self, i: usize, h: &Subspace) -> Result<Ideal> {
        let key = (i, h.clone());
        if let Some(j) = self.closures.get(&key) {
            return Ok(j.clone());
        }
        let pt = &self.points[i];
        let j = closure_ideal(&self.elab.quotient(&pt.stratum), h, &pt.ideal)?;
        self.closures.insert(key, j.clone());
        Ok(j)
    }

    fn compute_specializes(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Ok(false);
        }
        let (pa, pb) = (&self.points[a], &self.points[b]);
        if !pa.stratum.is_subspace_of(&pb.stratum) {
            return Ok(false);
        }
        match pa.kind {
            PointKind::VeryClosed => Ok(false),
            PointKind::StratumGeneric => Ok(true),
            PointKind::GenericFamily => {
                Ok(pb.kind == PointKind::VeryClosed && (pb.stratum == pa.stratum || pb.stratum == pa.top))
            }
            PointKind::Rational | PointKind::Custom => {
                let h = pb.stratum.clone();
                let j = self.closure_in(a, &h)?;
                let target = &self.points[b].ideal;
                Ok(target.contains(&j.transfer(target.ring())?))
            }
        }
    }

    /// Insert a point and compute its relations to every existing point.
    pub fn add_point(&mut self, pt: Point) -> Result<usize> {
        let n = self.points.len();
        self.points.push(pt);
        for row in &mut self.below {
            row.push(false);
        }
        self.below.push(vec![false; n + 1]);
        for j in 0..n {
            self.below[n][j] = self.compute_specializes(n, j)?;
            self.below[j][n] = self.compute_specializes(j, n)?;
        }
        Ok(n)
    }

    /// The index of a point equal to `pt`, if present.
    pub fn find(&self, pt: &Point) -> Option<usize> {
        let family = pt.kind == PointKind::GenericFamily;
        self.points.iter().position(|q| {
            q.stratum == pt.stratum
                && (q.kind == PointKind::GenericFamily) == family
                && (!family || q.top == pt.top)
                && q.ideal.ring().same_presentation(pt.ideal.ring())
                && q.ideal.ideal_eq(&pt.ideal.transfer(q.ideal.ring()).expect("same presentation"))
        })
    }

    /// Points with nothing below them.
    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.below[i][j])).collect()
    }

    /// Points with nothing in their closure but themselves.
    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.below[i].iter().any(|&b| b)).collect()
    }

    /// Covering relations `(i, j)`: `j` in the closure of `i` with nothing in between.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        covering_edges(&self.below)
    }
}

pub(crate) fn covering_edges(below: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = below.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Image of point `i` of `src` under the map induced by `alpha`, adding it
/// to `tgt` if it is not already there.
///
/// `alpha` (`r_tgt × r_src`) is only required to be linear modulo `kappa`:
/// a stratum `S` goes to `alpha(S) + kappa`, and the induced maps
/// `F_p^{r_src}/S → F_p^{r_tgt}/(alpha(S) + kappa)` must be injective.
pub fn map_point(src: &Skeleton, i: usize, tgt: &mut Skeleton, alpha: &Mat, kappa: &Subspace) -> Result<usize> {
    if alpha.rows != tgt.rank() || alpha.cols != src.rank() {
        return Err(Error::domain("matrix shape does not match the skeletons"));
    }
    let pt = &src.points[i];
    let stratum = pt.stratum.image(alpha).join(kappa);
    let small = src.elab.quotient(&pt.stratum);
    let big = tgt.elab.quotient(&stratum);
    let res = res_hom_along(&big, &small, alpha)?;
    let ideal = res.contract(&pt.ideal.transfer(res.target())?);
    let mut image = Point { stratum: stratum.clone(), ideal, kind: pt.kind, top: pt.top.image(alpha).join(kappa) };
    if let Some(j) = tgt.find(&image) {
        return Ok(j);
    }
    if pt.kind != PointKind::GenericFamily {
        image.kind = classify(&big, &image.ideal, tgt.rank(), &stratum, &mut image.top)?;
    }
    tgt.add_point(image)
}

fn classify(big: &Elab, ideal: &Ideal, r: usize, stratum: &Subspace, top: &mut Subspace) -> Result<PointKind> {
    if ideal.is_zero() {
        *top = stratum.clone();
        return Ok(PointKind::StratumGeneric);
    }
    if ideal.contains(&ideal.ring().irrelevant_ideal()) {
        *top = stratum.clone();
        return Ok(PointKind::VeryClosed);
    }
    for c in lines_over(big.prime(), r, stratum) {
        let v = c.complement_of(stratum).remove(0);
        if rational_point(big, &v)?.ideal_eq(&ideal.transfer(&cohomology(big)?.ring)?) {
            *top = c;
            return Ok(PointKind::Rational);
        }
    }
    for a in big.subgroups().into_iter().filter(|a| stratum.is_subspace_of(a) && a != stratum) {
        if linear_point(big, &a)?.ideal_eq(&ideal.transfer(&cohomology(big)?.ring)?) {
            *top = a;
            return Ok(PointKind::Custom);
        }
    }
    *top = stratum.clone();
    Ok(PointKind::Custom)
}
