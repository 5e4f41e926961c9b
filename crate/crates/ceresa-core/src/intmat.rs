//! Dense integer matrices, Smith normal form, and integer linear solving.
//!
//! The Smith normal form drives everything lattice-theoretic in this crate:
//! membership of a vector in the column span of an integer matrix, minimal
//! torsion orders, saturated kernels, and the certificates returned by the
//! flux classifier.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_bigint_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().cloned().collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row a += q * row b
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(a, c) + q * self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// col a += q * col b
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, a) + q * self.get(r, b);
            self.set(r, a, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// Smith normal form `U * M * V = S` with `U`, `V` unimodular and `S`
/// diagonal with nonnegative entries `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The diagonal entries, one per `min(rows, cols)` slot (zeros included).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Computes the Smith normal form of `m`, always picking the nonzero entry
/// of smallest absolute value in the remaining submatrix as pivot.
pub fn snf(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let k = rows.min(cols);
    let mut t = 0;
    while t < k {
        // Smallest nonzero entry in S[t.., t..] becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if s.get(r, c).is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pr, pc)) => s.get(r, c).abs() < s.get(pr, pc).abs(),
                };
                if better {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else {
            break; // remaining submatrix is zero
        };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        // Clear row and column t. Truncated-quotient reduction shrinks the
        // pivot toward the gcd; restart pivot selection whenever a smaller
        // residue appears.
        let mut dirty = false;
        for r in t + 1..rows {
            if s.get(r, t).is_zero() {
                continue;
            }
            let q = -(s.get(r, t) / s.get(t, t));
            s.add_row(r, t, &q);
            u.add_row(r, t, &q);
            if !s.get(r, t).is_zero() {
                dirty = true;
            }
        }
        for c in t + 1..cols {
            if s.get(t, c).is_zero() {
                continue;
            }
            let q = -(s.get(t, c) / s.get(t, t));
            s.add_col(c, t, &q);
            v.add_col(c, t, &q);
            if !s.get(t, c).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // a strictly smaller nonzero residue exists; re-pivot
        }

        // Divisibility: the pivot must divide every remaining entry. If it
        // does not, fold the offending row into row t and redo the slot.
        let mut fixed = true;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if !s.get(r, c).mod_floor(s.get(t, t)).is_zero() {
                    s.add_row(t, r, &BigInt::one());
                    u.add_row(t, r, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    Snf { u, s, v }
}

/// Solves `A x = b` over the integers. Returns `None` when no integer
/// solution exists. Picks the particular solution with all free
/// coordinates zero.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve");
    let Snf { u, s, v } = snf(a);
    let c = u.mul_vec(b);
    let k = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < k && !s.get(i, i).is_zero() {
            let (q, r) = c[i].div_rem(s.get(i, i));
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    Some(v.mul_vec(&y))
}

/// Basis of the saturated integer kernel of `A`: the columns of `V`
/// whose Smith diagonal slot is zero or absent. Because `V` is unimodular
/// the basis is primitive (the kernel lattice is saturated in `Z^cols`).
pub fn kernel_saturated(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = snf(a);
    let rank = d.rank();
    (rank..a.cols()).map(|j| d.v.col(j)).collect()
}
