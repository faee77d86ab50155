//! Constructors and the JSON/short-form group descriptions.

use super::FiniteGroup;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A permutation given as a list of cycles on points `1..=degree`.
pub type PermGenerator = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Dihedral { order: usize },
    Quaternion,
    ElementaryAbelian { p: u32, rank: u32 },
    Product { factors: Vec<GroupSpec> },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Perm { degree: usize, generators: Vec<PermGenerator> },
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let order_hint = self.order_hint();
        if let Some(n) = order_hint {
            if n > cap {
                return Err(Error::Resource(format!("group order {n} exceeds cap {cap}")));
            }
        }
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral { order } => FiniteGroup::dihedral(*order),
            GroupSpec::Quaternion => Ok(FiniteGroup::quaternion()),
            GroupSpec::ElementaryAbelian { p, rank } => FiniteGroup::elementary_abelian(*p, *rank),
            GroupSpec::Product { factors } => {
                let gs = factors.iter().map(|f| f.build(cap)).collect::<Result<Vec<_>>>()?;
                FiniteGroup::product(&gs)
            }
            GroupSpec::Table { table, names } => FiniteGroup::from_table(table.clone(), names.clone()),
            GroupSpec::Perm { degree, generators } => FiniteGroup::from_permutations(*degree, generators, cap),
        }
    }

    fn order_hint(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic { n } => Some(*n),
            GroupSpec::Dihedral { order } => Some(*order),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::ElementaryAbelian { p, rank } => (*p as usize).checked_pow(*rank),
            GroupSpec::Product { factors } => factors
                .iter()
                .map(|f| f.order_hint())
                .try_fold(1usize, |acc, x| x.and_then(|x| acc.checked_mul(x)))
                .or(Some(usize::MAX)),
            GroupSpec::Table { table, .. } => Some(table.len()),
            GroupSpec::Perm { .. } => None,
        }
    }

    /// Parse the JSON form; errors carry the byte offset of the failure.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let offset = line_col_to_offset(text, e.line(), e.column());
            Error::parse(offset, e.to_string())
        })
    }

    /// Parse short forms: `cyclic:4`, `dihedral:8`, `quaternion`,
    /// `ea:2:2`, products joined by `*`, or a JSON object.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return Self::from_json(t);
        }
        let mut factors = Vec::new();
        let mut offset = 0;
        for part in text.split('*') {
            factors.push(parse_atom(part, offset)?);
            offset += part.len() + 1;
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(GroupSpec::Product { factors })
        }
    }
}

fn line_col_to_offset(text: &str, line: usize, col: usize) -> usize {
    let mut off = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return off + col.saturating_sub(1);
        }
        off += l.len() + 1;
    }
    off
}

fn parse_atom(part: &str, offset: usize) -> Result<GroupSpec> {
    let lead = part.len() - part.trim_start().len();
    let atom = part.trim();
    let pos = offset + lead;
    let fields: Vec<&str> = atom.split(':').collect();
    let num = |i: usize| -> Result<u64> {
        let f = fields.get(i).ok_or_else(|| Error::parse(pos + atom.len(), format!("missing parameter in `{atom}`")))?;
        let at = pos + fields[..i].iter().map(|s| s.len() + 1).sum::<usize>();
        f.parse::<u64>().map_err(|_| Error::parse(at, format!("expected a number, found `{f}`")))
    };
    let arity = |n: usize| -> Result<()> {
        if fields.len() != n {
            return Err(Error::parse(pos, format!("`{}` takes {} parameter(s)", fields[0], n - 1)));
        }
        Ok(())
    };
    match fields[0] {
        "cyclic" | "c" => {
            arity(2)?;
            Ok(GroupSpec::Cyclic { n: num(1)? as usize })
        }
        "dihedral" | "d" => {
            arity(2)?;
            Ok(GroupSpec::Dihedral { order: num(1)? as usize })
        }
        "quaternion" | "q8" => {
            arity(1)?;
            Ok(GroupSpec::Quaternion)
        }
        "ea" | "elementary_abelian" => {
            arity(3)?;
            Ok(GroupSpec::ElementaryAbelian { p: num(1)? as u32, rank: num(2)? as u32 })
        }
        other => Err(Error::parse(pos, format!("unknown group kind `{other}`"))),
    }
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("cyclic group of order 0"));
        }
        let flat = (0..n).flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32)).collect();
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a{i}"),
            })
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        Ok(FiniteGroup::from_flat(n, flat, Some(names))?.with_generators(gens))
    }

    /// Dihedral group of the given order `2n`, with `r^i s^j` at index `i + n j`.
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 4 || order % 2 != 0 {
            return Err(Error::domain(format!("dihedral group needs an even order ≥ 4, got {order}")));
        }
        let n = order / 2;
        let g = Self::metacyclic_named(n, n - 1, 0, "r", "s")?;
        Ok(g.with_generators(vec![1, n]))
    }

    /// Groups `⟨r, x | r^m, x r x⁻¹ = r^s, x² = r^t⟩` of order `2m`.
    /// Covers dihedral, generalized quaternion, semidihedral and modular groups.
    pub fn metacyclic(m: usize, s: usize, t: usize) -> Result<Self> {
        Self::metacyclic_named(m, s, t, "r", "x")
    }

    fn metacyclic_named(m: usize, s: usize, t: usize, rn: &str, xn: &str) -> Result<Self> {
        let n = 2 * m;
        let idx = |i: usize, j: usize| i % m + m * j;
        let mut flat = vec![0u32; n * n];
        for a in 0..m {
            for b in 0..2 {
                for c in 0..m {
                    for d in 0..2 {
                        let cs = if b == 1 { c * s % m } else { c };
                        let (i, j) = if b + d == 2 { (a + cs + t, 0) } else { (a + cs, b + d) };
                        flat[idx(a, b) * n + idx(c, d)] = idx(i, j) as u32;
                    }
                }
            }
        }
        let names = (0..n)
            .map(|k| {
                let (i, j) = (k % m, k / m);
                let r = match i {
                    0 => String::new(),
                    1 => rn.to_string(),
                    _ => format!("{rn}{i}"),
                };
                match (r.is_empty(), j) {
                    (true, 0) => "1".to_string(),
                    (_, 0) => r,
                    (_, _) => format!("{r}{xn}"),
                }
            })
            .collect();
        FiniteGroup::from_flat(n, flat, Some(names))
    }

    /// Quaternion group with elements `1,-1,i,-i,j,-j,k,-k`.
    pub fn quaternion() -> Self {
        // unit index u in {1,i,j,k} = 0..4, sign bit; element = 2u + sign.
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut flat = vec![0u32; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, neg) = unit_mul(a / 2, b / 2);
                let sign = (a % 2) ^ (b % 2) ^ (neg as usize);
                flat[a * 8 + b] = (2 * u + sign) as u32;
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::from_flat(8, flat, Some(names)).expect("Q8 table").with_generators(vec![2, 4])
    }

    /// `(Z/p)^rank`; element index is `Σ v_t p^t`, named by its digit string.
    pub fn elementary_abelian(p: u32, rank: u32) -> Result<Self> {
        if !crate::field::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let p = p as usize;
        let n = p.checked_pow(rank).ok_or_else(|| Error::Resource("group too large".into()))?;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..rank)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let from_digits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                flat[a * n + b] = from_digits(&s) as u32;
            }
        }
        let sep = if p > 10 { "." } else { "" };
        let names = (0..n)
            .map(|x| digits(x).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep))
            .map(|s| if s.is_empty() { "1".to_string() } else { s })
            .collect();
        let gens = (0..rank).map(|t| p.pow(t)).collect();
        Ok(FiniteGroup::from_flat(n, flat, Some(names))?.with_generators(gens))
    }

    /// Direct product; the first factor is the most significant digit.
    pub fn product(factors: &[FiniteGroup]) -> Result<Self> {
        if factors.is_empty() {
            return FiniteGroup::cyclic(1);
        }
        let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let n: usize = orders.iter().product();
        let split = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                v[i] = x % orders[i];
                x /= orders[i];
            }
            v
        };
        let join = |v: &[usize]| v.iter().zip(&orders).fold(0, |acc, (&d, &o)| acc * o + d);
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            let va = split(a);
            for b in 0..n {
                let vb = split(b);
                let prod: Vec<usize> = (0..factors.len()).map(|i| factors[i].mul(va[i], vb[i])).collect();
                flat[a * n + b] = join(&prod) as u32;
            }
        }
        let names = (0..n)
            .map(|x| {
                let parts: Vec<String> = split(x).iter().enumerate().map(|(i, &e)| factors[i].name(e)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        FiniteGroup::from_flat(n, flat, Some(names))
    }

    /// Permutation group generated by cycle lists on `1..=degree`.
    /// Products compose left to right: `(a*b)(x) = b(a(x))`.
    pub fn from_permutations(degree: usize, generators: &[PermGenerator], cap: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for (gi, cycles) in generators.iter().enumerate() {
            let mut img: Vec<usize> = (0..degree).collect();
            let mut seen = BTreeSet::new();
            for cyc in cycles {
                for &pt in cyc {
                    if pt == 0 || pt > degree {
                        return Err(Error::domain(format!("generator {gi}: point {pt} outside 1..={degree}")));
                    }
                    if !seen.insert(pt) {
                        return Err(Error::domain(format!("generator {gi}: point {pt} repeated")));
                    }
                }
                for w in 0..cyc.len() {
                    img[cyc[w] - 1] = cyc[(w + 1) % cyc.len()] - 1;
                }
            }
            gens.push(img);
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
                if all.insert(y.clone()) {
                    if all.len() > cap {
                        return Err(Error::Resource(format!("permutation group exceeds order cap {cap}")));
                    }
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = all.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let mut flat = vec![0u32; n * n];
        for (a, ea) in elems.iter().enumerate() {
            for (b, eb) in elems.iter().enumerate() {
                let c: Vec<usize> = ea.iter().map(|&i| eb[i]).collect();
                flat[a * n + b] = index[&c] as u32;
            }
        }
        let names = elems.iter().map(|e| cycle_notation(e)).collect();
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup::from_flat(n, flat, Some(names))?.with_generators(gen_idx))
    }
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    if out.is_empty() { "()".into() } else { out }
}
