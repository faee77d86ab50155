//! Elementary abelian groups as `F_p^r` (optionally modulo a killed
//! subspace), their subspaces and coordinates.

use crate::error::{Error, Result};
use crate::field::{self, Mat};
use std::collections::BTreeSet;

pub fn dot(f: &[u32], v: &[u32], p: u32) -> u32 {
    f.iter().zip(v).fold(0, |acc, (&a, &b)| field::add(acc, field::mul(a, b, p), p))
}

/// Split a nonzero vector as `λ · f` with `f` canonical (first nonzero entry 1).
pub fn canonicalize(v: &[u32], p: u32) -> Option<(Vec<u32>, u32)> {
    let lead = *v.iter().find(|&&x| x % p != 0)? % p;
    let inv = field::inv(lead, p);
    Some((v.iter().map(|&x| field::mul(x % p, inv, p)).collect(), lead))
}

/// The `λ` with `other = λ · pi`, if the two are proportional.
pub fn scalar_of(pi: &[u32], other: &[u32], p: u32) -> Option<u32> {
    let (c1, l1) = canonicalize(pi, p)?;
    let (c2, l2) = canonicalize(other, p)?;
    (c1 == c2).then(|| field::mul(l2, field::inv(l1, p), p))
}

/// A subspace of `F_p^r`, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    r: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, r: usize) -> Self {
        Subspace { p, r, rows: Vec::new() }
    }

    pub fn full(p: u32, r: usize) -> Self {
        let rows = (0..r).map(|i| unit(r, i)).collect();
        Subspace { p, r, rows }
    }

    pub fn span(p: u32, r: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(p, r);
        }
        let mut m = Mat::from_rows(vectors, r);
        let rank = field::row_reduce(&mut m, p).len();
        let rows = (0..rank).map(|i| m.data[i * r..(i + 1) * r].to_vec()).collect();
        Subspace { p, r, rows }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis; every row is canonical.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut all = self.rows.clone();
        all.push(v.to_vec());
        Subspace::span(self.p, self.r, &all).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let all: Vec<Vec<u32>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span(self.p, self.r, &all)
    }

    /// `{f : f·v = 0 for all v}`, as a subspace of the dual.
    pub fn annihilator(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.p, self.r);
        }
        let m = Mat::from_rows(&self.rows, self.r);
        Subspace::span(self.p, self.r, &field::kernel(&m, self.p))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().join(&other.annihilator()).annihilator()
    }

    /// Image under `a` (an `r' × r` matrix acting on columns).
    pub fn image(&self, a: &Mat) -> Subspace {
        let vs: Vec<Vec<u32>> = self.rows.iter().map(|v| apply(a, v, self.p)).collect();
        Subspace::span(self.p, a.rows, &vs)
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coefficients(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|row| v[pivot(row)]).collect())
    }

    /// Rows extending a basis of `sub` to a basis of `self`, chosen greedily
    /// from the echelon basis of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for row in &self.rows {
            if !acc.contains(row) {
                acc = acc.join(&Subspace::span(self.p, self.r, std::slice::from_ref(row)));
                out.push(row.clone());
            }
        }
        out
    }

    /// Every subspace of `F_p^r`, ordered by dimension and then echelon form.
    pub fn all(p: u32, r: usize) -> Vec<Subspace> {
        let vectors = all_vectors(p, r);
        let mut seen = BTreeSet::new();
        let mut frontier = vec![Subspace::zero(p, r)];
        seen.insert(Subspace::zero(p, r));
        while let Some(s) = frontier.pop() {
            for v in &vectors {
                if !s.contains(v) {
                    let mut rows = s.rows.clone();
                    rows.push(v.clone());
                    let t = Subspace::span(p, r, &rows);
                    if seen.insert(t.clone()) {
                        frontier.push(t);
                    }
                }
            }
        }
        let mut out: Vec<Subspace> = seen.into_iter().collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rows.cmp(&b.rows)));
        out
    }
}

fn unit(r: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

fn pivot(row: &[u32]) -> usize {
    row.iter().position(|&x| x != 0).expect("nonzero row")
}

pub(crate) fn apply(a: &Mat, v: &[u32], p: u32) -> Vec<u32> {
    (0..a.rows).map(|i| (0..a.cols).fold(0, |acc, j| field::add(acc, field::mul(a.get(i, j), v[j], p), p))).collect()
}

/// All vectors of `F_p^r` in the order `Σ v_t p^t`.
pub fn all_vectors(p: u32, r: usize) -> Vec<Vec<u32>> {
    let n = (p as usize).pow(r as u32);
    (0..n)
        .map(|mut x| {
            (0..r)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        })
        .collect()
}

/// A canonical coordinate: a functional with first nonzero entry 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinate {
    pub functional: Vec<u32>,
}

impl Coordinate {
    /// Digit string used in variable names (`zp_<label>`).
    pub fn label(&self, p: u32) -> String {
        let sep = if p > 10 { "_" } else { "" };
        self.functional.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep)
    }

    /// The kernel `N`, as a subspace.
    pub fn kernel(&self, p: u32) -> Subspace {
        Subspace::span(p, self.functional.len(), std::slice::from_ref(&self.functional)).annihilator()
    }

    /// `H ≤ N`.
    pub fn divides(&self, h: &Subspace) -> bool {
        h.rows().iter().all(|v| dot(&self.functional, v, h.prime()) == 0)
    }
}

/// `E = F_p^r / killed`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elab {
    p: u32,
    r: usize,
    killed: Subspace,
}

impl Elab {
    pub fn new(p: u32, r: usize) -> Result<Self> {
        if !field::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Elab { p, r, killed: Subspace::zero(p, r) })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.r
    }

    pub fn killed(&self) -> &Subspace {
        &self.killed
    }

    /// The trivial subgroup of `E`, as a subspace of the ambient space.
    pub fn trivial(&self) -> Subspace {
        self.killed.clone()
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.p, self.r)
    }

    pub fn rank(&self) -> usize {
        self.r - self.killed.dim()
    }

    /// `E / H`; `h` is joined with the already killed subspace.
    pub fn quotient(&self, h: &Subspace) -> Elab {
        Elab { p: self.p, r: self.r, killed: self.killed.join(h) }
    }

    /// Subgroups of `E`: ambient subspaces containing the killed one.
    pub fn subgroups(&self) -> Vec<Subspace> {
        Subspace::all(self.p, self.r).into_iter().filter(|s| self.killed.is_subspace_of(s)).collect()
    }

    /// One canonical coordinate per index-`p` subgroup, sorted.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut out: Vec<Coordinate> = all_vectors(self.p, self.r)
            .into_iter()
            .filter(|f| canonicalize(f, self.p).is_some_and(|(c, l)| l == 1 && &c == f))
            .map(|functional| Coordinate { functional })
            .filter(|c| c.divides(&self.killed))
            .collect();
        out.sort();
        out
    }

    /// Canonical basis of the dual of `E`.
    pub fn dual_basis(&self) -> Vec<Coordinate> {
        self.killed.annihilator().rows().iter().map(|f| Coordinate { functional: f.clone() }).collect()
    }
}
