//! Sparse polynomials over `F_p` with a fixed number of variables.

use crate::error::{Error, Result};
use crate::field;
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

pub type Mono = Vec<u16>;

pub fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `b / a`, assuming `a | b`.
pub fn mono_div(b: &[u16], a: &[u16]) -> Mono {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_degree(a: &[u16]) -> u32 {
    a.iter().map(|&e| e as u32).sum()
}

pub fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Degree-reverse-lexicographic order on total degree, optionally refined
/// into an elimination order by first comparing the degree in a block of
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Grevlex,
    Eliminate(Vec<bool>),
}

impl Order {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        if let Order::Eliminate(mask) = self {
            let w = |m: &[u16]| -> u32 { m.iter().zip(mask).filter(|(_, &k)| k).map(|(&e, _)| e as u32).sum() };
            match w(a).cmp(&w(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match mono_degree(a).cmp(&mono_degree(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }
}

/// A polynomial as a map from exponent vectors to nonzero residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, u32>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: u32, p: u32) -> Self {
        let mut f = Poly::zero(nvars);
        f.add_term(vec![0; nvars], c, p);
        f
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly { nvars, terms: BTreeMap::from([(m, 1)]) }
    }

    pub fn monomial(m: Mono, c: u32, p: u32) -> Self {
        let mut f = Poly::zero(m.len());
        f.add_term(m, c, p);
        f
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, u32)>, p: u32) -> Self {
        let mut f = Poly::zero(nvars);
        for (m, c) in terms {
            f.add_term(m, c, p);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &u32)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u16]) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: u32, p: u32) {
        debug_assert_eq!(m.len(), self.nvars);
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let v = field::add(*o.get(), c, p);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, p: u32) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, p);
        }
        out
    }

    pub fn sub(&self, other: &Poly, p: u32) -> Poly {
        self.add(&other.scale(p - 1, p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Poly {
        let c = c % p;
        if c == 0 {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, &v)| (m.clone(), field::mul(v, c, p))).collect() }
    }

    pub fn mul(&self, other: &Poly, p: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                out.add_term(mono_mul(a, b), field::mul(x, y, p), p);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &[u16], c: u32, p: u32) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(a, &x)| (mono_mul(a, m), field::mul(x, c, p))), p)
    }

    pub fn pow(&self, e: u32, p: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, 1, p);
        for _ in 0..e {
            out = out.mul(self, p);
        }
        out
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &Order) -> Option<(&Mono, u32)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(m, &c)| (m, c))
    }

    /// Substitute `images[i]` (polynomials in `target_nvars` variables) for variable `i`.
    pub fn substitute(&self, images: &[Poly], target_nvars: usize, p: u32) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut out = Poly::zero(target_nvars);
        let mut cache: BTreeMap<(usize, u16), Poly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c, p);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32, p)).clone();
                t = t.mul(&pw, p);
            }
            out = out.add(&t, p);
        }
        out
    }

    /// Reindex variables: variable `i` becomes `map[i]` in a ring of `nvars` variables.
    pub fn embed(&self, map: &[usize], nvars: usize) -> Poly {
        let terms = self.terms.iter().map(|(m, &c)| {
            let mut n = vec![0u16; nvars];
            for (i, &e) in m.iter().enumerate() {
                n[map[i]] += e;
            }
            (n, c)
        });
        Poly { nvars, terms: terms.collect() }
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m[i] > 0)).collect()
    }

    /// Set of values `Σ e_i w_i` over the terms.
    pub fn weighted_degrees(&self, weights: &[i32]) -> Vec<i32> {
        let mut ds: Vec<i32> =
            self.terms.keys().map(|m| m.iter().zip(weights).map(|(&e, &w)| e as i32 * w).sum()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self, weights: &[i32]) -> bool {
        self.weighted_degrees(weights).len() <= 1
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self, order: &Order, p: u32) -> Poly {
        match self.leading(order) {
            Some((_, c)) => self.scale(field::inv(c, p), p),
            None => self.clone(),
        }
    }

    /// Print with the given variable names, terms in descending grevlex order.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Mono, &u32)> = self.terms.iter().collect();
        terms.sort_by(|a, b| Order::Grevlex.cmp(b.0, a.0));
        let parts: Vec<String> = terms
            .iter()
            .map(|(m, &c)| {
                let mut factors: Vec<String> = Vec::new();
                for (i, &e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(names[i].clone()),
                        _ => factors.push(format!("{}^{e}", names[i])),
                    }
                }
                if factors.is_empty() {
                    c.to_string()
                } else if c == 1 {
                    factors.join("*")
                } else {
                    format!("{c}*{}", factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parse `term (('+'|'-') term)*`, `term = factor ('*' factor)*`,
    /// `factor = integer | name ['^' integer]`.
    pub fn parse(text: &str, names: &[String], p: u32) -> Result<Poly> {
        Parser { s: text.as_bytes(), pos: 0, names, p }.poly()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [String],
    p: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| Err(Error::parse(start, "integer out of range")))
    }

    fn poly(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut out = Poly::zero(n);
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t = t.scale(self.p - 1, self.p);
            }
            out = out.add(&t, self.p);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut t = Poly::constant(n, 1, self.p);
        loop {
            let f = self.factor()?;
            t = t.mul(&f, self.p);
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(n, (v % self.p as u64) as u32, self.p))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let Some(i) = self.names.iter().position(|x| x == name) else {
                    return Err(Error::parse(start, format!("unknown variable '{name}'")));
                };
                let mut e = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.integer()?;
                    if e > u16::MAX as u64 {
                        return self.err("exponent too large");
                    }
                }
                let mut m = vec![0u16; n];
                m[i] = e as u16;
                Ok(Poly::monomial(m, 1, self.p))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}
