//! Prime-field arithmetic and dense linear algebra over F_p.

/// Residues are stored as `u32` in `0..p`.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p { s - p } else { s }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b { a - b } else { a + p - b }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 { 0 } else { p - a }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `0..p`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Dense row-major matrix over F_p. `rows` is the target dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let o = &mut out[i * other.cols..(i + 1) * other.cols];
                for (j, &b) in row.iter().enumerate() {
                    if b != 0 {
                        o[j] = (o[j] + a as u64 * b as u64) % p as u64;
                    }
                }
            }
        }
        Mat { rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u32).collect() }
    }

    pub fn add(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, p)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32, p: u32) -> Mat {
        let data = self.data.iter().map(|&a| mul(a, c, p)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn rank(&self, p: u32) -> usize {
        let mut m = self.clone();
        row_reduce(&mut m, p).len()
    }
}

/// Gauss-Jordan elimination in place. Returns pivot columns in order.
pub fn row_reduce(m: &mut Mat, p: u32) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let iv = inv(m.data[r * cols + c], p);
        for j in c..cols {
            m.data[r * cols + j] = mul(m.data[r * cols + j], iv, p);
        }
        let pivot_row: Vec<u32> = m.data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.data[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = pivot_row[j];
                if v != 0 {
                    let x = &mut m.data[i * cols + j];
                    *x = sub(*x, mul(f, v, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solution set of `a x = b`: one particular solution plus a kernel basis.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

/// Solve `a x = b`. Returns `None` when inconsistent.
pub fn solve(a: &Mat, b: &[u32], p: u32) -> Option<Solution> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Mat::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        aug.data[i * (n + 1)..i * (n + 1) + n].copy_from_slice(&a.data[i * n..(i + 1) * n]);
        aug.data[i * (n + 1) + n] = b[i] % p;
    }
    let pivots = row_reduce(&mut aug, p);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.data[r * (n + 1) + n];
    }
    let kernel = kernel_from_rref(&aug, &pivots, n, p);
    Some(Solution { particular: x, kernel })
}

fn kernel_from_rref(m: &Mat, pivots: &[usize], n: usize, p: u32) -> Vec<Vec<u32>> {
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = neg(m.data[r * m.cols + free], p);
        }
        basis.push(v);
    }
    basis
}

/// Basis of the null space of `a`.
pub fn kernel(a: &Mat, p: u32) -> Vec<Vec<u32>> {
    let mut m = a.clone();
    let pivots = row_reduce(&mut m, p);
    kernel_from_rref(&m, &pivots, a.cols, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_small_primes() {
        for p in [2u32, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn solve_and_kernel() {
        let p = 3;
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 1]], 3);
        let s = solve(&a, &[1, 2], p).unwrap();
        let ax = a.mul(&Mat { rows: 3, cols: 1, data: s.particular.clone() }, p);
        assert_eq!(ax.data, vec![1, 2]);
        assert_eq!(s.kernel.len(), 1);
        let k = Mat { rows: 3, cols: 1, data: s.kernel[0].clone() };
        assert!(a.mul(&k, p).is_zero());
    }

    #[test]
    fn inconsistent_system() {
        let a = Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2);
        assert!(solve(&a, &[0, 1], 2).is_none());
    }
}
