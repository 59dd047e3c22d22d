//! Dense matrices over the prime field F_p.

use std::fmt;

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // extended euclid; p prime and a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible mod p");
    (s0.rem_euclid(p as i128)) as u64
}

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        assert!(p >= 2);
        FpMatrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        FpMatrix { p, rows: r, cols: c, entries }
    }

    /// Entrywise reduction of an integer matrix.
    pub fn from_int_matrix(a: &crate::matrix::IntMatrix, p: u64) -> Self {
        use num_traits::ToPrimitive;
        let pb = num_bigint::BigInt::from(p);
        FpMatrix::from_fn(p, a.rows(), a.cols(), |i, j| {
            let r = a.get(i, j) % &pb;
            let r = if r < num_bigint::BigInt::from(0) { r + &pb } else { r };
            r.to_u64().unwrap()
        })
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, entries }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        FpMatrix::from_fn(p, n, n, |i, j| u64::from(i == j))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows);
        let p = self.p as u128;
        FpMatrix::from_fn(self.p, self.rows, other.cols, |i, j| {
            let mut acc: u128 = 0;
            for k in 0..self.cols {
                acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % p;
            }
            acc as u64
        })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u128;
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for (j, &vj) in v.iter().enumerate() {
                    acc = (acc + self.get(i, j) as u128 * vj as u128) % p;
                }
                acc as u64
            })
            .collect()
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            for j in 0..m.cols {
                let t = m.get(r, j);
                m.set(r, j, m.get(pr, j));
                m.set(pr, j, t);
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, mulp(m.get(r, j), inv, p));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = subp(m.get(i, j), mulp(f, m.get(r, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as columns of the returned matrix.
    pub fn kernel(&self) -> FpMatrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = FpMatrix::zero(self.p, self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = rref.get(r, fc);
                if v != 0 {
                    k.set(pc, idx, self.p - v);
                }
            }
        }
        k
    }

    /// One solution x of self * x = b, or None if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let aug = FpMatrix::from_fn(self.p, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                b[i] % self.p
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rref.get(r, self.cols);
        }
        Some(x)
    }
}

pub fn fp_rank(a: &FpMatrix) -> usize {
    a.rank()
}

/// Reduce an integer vector into [0, p) coordinatewise.
pub fn reduce_vec(v: &[num_bigint::BigInt], p: u64) -> Vec<u64> {
    use num_traits::{Signed, ToPrimitive};
    let m = num_bigint::BigInt::from(p);
    v.iter()
        .map(|x| {
            let r = x % &m;
            let r = if r.is_negative() { r + &m } else { r };
            r.to_u64().expect("residue fits")
        })
        .collect()
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn subp(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}) {}x{} [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
