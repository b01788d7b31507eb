//! Dense exact-rational matrices: elimination, kernels, and LDL^T
//! positive-semidefiniteness certification.
//!
//! Everything here is deterministic: pivots are always the first nonzero
//! candidate, so identical inputs produce identical bases and witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, Rat};

/// Dense matrix over the rationals, row-major. Zero-sized dimensions are
/// allowed (empty boundary operators produce 1x0 and 0x1 matrices).
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        QMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        QMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn check_symmetric(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSymmetric { row: self.rows, col: self.cols });
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| rat_to_f64(&self[(i, j)])).collect()).collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(r, j)].clone();
                    m[(r, j)] = tmp;
                }
            }
            let inv = m[(r, c)].clone();
            for j in 0..m.cols {
                let v = &m[(r, j)] / &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                        m[(i, j)] = v;
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

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let mut rows = Vec::with_capacity(pivots.len());
        for i in 0..pivots.len() {
            rows.push(r.row(i));
        }
        QMatrix::from_rows_with_cols(rows, self.cols)
    }

    fn from_rows_with_cols(rows: Vec<Vec<Rat>>, cols: usize) -> QMatrix {
        if rows.is_empty() {
            QMatrix::zeros(0, cols)
        } else {
            QMatrix::from_rows(rows)
        }
    }

    /// Rows spanning `{ v : self · v^T = 0 }` (the right kernel, presented
    /// as row vectors of length `cols`).
    pub fn kernel_rows(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(ri, fc)].clone();
            }
            rows.push(v);
        }
        QMatrix::from_rows_with_cols(rows, self.cols)
    }

    /// Rows spanning `{ w : w · self = 0 }` (vectors of length `rows`).
    pub fn left_kernel_rows(&self) -> QMatrix {
        self.transpose().kernel_rows()
    }

    /// True if the row spaces of `self` and `other` coincide.
    pub fn same_row_space(&self, other: &QMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let ra = self.rank();
        let rb = other.rank();
        ra == rb && self.vstack(other).rank() == ra
    }

    /// Gram-Schmidt on the rows without normalization; each output row is
    /// scaled to a primitive integer vector with positive leading entry.
    /// Rows must be linearly independent.
    pub fn orthogonalize_rows(&self) -> QMatrix {
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut v = self.row(i);
            for prev in &out {
                let num = dot(&v, prev);
                if num.is_zero() {
                    continue;
                }
                let den = dot(prev, prev);
                let f = num / den;
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= &f * p;
                }
            }
            assert!(v.iter().any(|x| !x.is_zero()), "dependent rows in orthogonalize_rows");
            out.push(primitive_vec(&v));
        }
        QMatrix::from_rows_with_cols(out, self.cols)
    }

    /// Largest absolute value among all entries.
    pub fn max_abs(&self) -> Rat {
        let mut best = Rat::zero();
        for x in &self.data {
            let a = x.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Gershgorin-style upper bound on the spectrum of a symmetric matrix:
    /// the maximum absolute row sum. Always at least the top eigenvalue.
    pub fn row_sum_bound(&self) -> Rat {
        let mut best = Rat::zero();
        for i in 0..self.rows {
            let mut s = Rat::zero();
            for j in 0..self.cols {
                s += self[(i, j)].abs();
            }
            if s > best {
                best = s;
            }
        }
        best
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Clears denominators and divides by the content; fixes the sign so the
/// first nonzero entry is positive. The result spans the same line.
pub fn primitive_vec(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|n| !n.is_zero())
        .map(|n| if n.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    let div = gcd * sign;
    ints.into_iter().map(|n| Rat::from_integer(n / &div)).collect()
}

/// Outcome of the exact PSD check.
///
/// `Pass` carries a unit lower-triangular `l` and nonnegative diagonal `d`
/// with `S = l · diag(d) · l^T` exactly. `Fail` carries a rational witness
/// `v` with `v^T S v < 0`.
#[derive(Debug, Clone)]
pub enum PsdOutcome {
    Pass { l: QMatrix, d: Vec<Rat> },
    Fail { witness: Vec<Rat> },
}

impl PsdOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, PsdOutcome::Pass { .. })
    }
}

/// Exact LDL^T positive-semidefiniteness check.
///
/// Pivots are taken in order. A zero pivot whose residual row is entirely
/// zero is recorded with `d = 0`; a zero pivot with a nonzero off-diagonal
/// residual entry is impossible for a PSD matrix, and a negative-value
/// witness is constructed from the offending 2x2 subproblem.
pub fn psd_check_exact(s: &QMatrix) -> Result<PsdOutcome> {
    s.check_symmetric()?;
    let n = s.rows();
    let mut w = s.clone(); // residual; only the trailing block stays meaningful
    let mut l = QMatrix::identity(n);
    let mut d = Vec::with_capacity(n);
    for j in 0..n {
        let pivot = w[(j, j)].clone();
        if pivot.is_negative() {
            let mut tail = vec![Rat::zero(); n - j];
            tail[0] = Rat::one();
            return Ok(PsdOutcome::Fail { witness: lift_witness(&l, j, &tail) });
        }
        if pivot.is_zero() {
            if let Some(i) = ((j + 1)..n).find(|&i| !w[(j, i)].is_zero()) {
                // Residual [[0, a], [a, c]] with a != 0: choose x with
                // 2ax + c = -1.
                let a = w[(j, i)].clone();
                let c = w[(i, i)].clone();
                let x = -(c + Rat::one()) / (Rat::from_integer(2.into()) * a);
                let mut tail = vec![Rat::zero(); n - j];
                tail[0] = x;
                tail[i - j] = Rat::one();
                return Ok(PsdOutcome::Fail { witness: lift_witness(&l, j, &tail) });
            }
            d.push(Rat::zero());
            continue;
        }
        d.push(pivot.clone());
        for i in (j + 1)..n {
            let f = &w[(i, j)] / &pivot;
            l[(i, j)] = f;
        }
        for r in (j + 1)..n {
            if l[(r, j)].is_zero() {
                continue;
            }
            for c in r..n {
                let upd = &l[(r, j)] * &w[(j, c)];
                let v = &w[(r, c)] - &upd;
                w[(r, c)] = v.clone();
                if c != r {
                    w[(c, r)] = v;
                }
            }
        }
    }
    Ok(PsdOutcome::Pass { l, d })
}

/// Given `S = L (D ⊕ R) L^T` after `j` elimination steps and a witness `t`
/// for the residual block `R`, solves `L^T v = (0, t)` so that
/// `v^T S v = t^T R t`.
fn lift_witness(l: &QMatrix, j: usize, tail: &[Rat]) -> Vec<Rat> {
    let n = l.rows();
    let mut u = vec![Rat::zero(); n];
    u[j..].clone_from_slice(tail);
    // Back substitution on the unit upper-triangular L^T.
    let mut v = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = u[i].clone();
        for k in (i + 1)..n {
            acc -= &l[(k, i)] * &v[k];
        }
        v[i] = acc;
    }
    v
}

/// Quadratic form `v^T S v`, for checking witnesses.
pub fn quadratic_form(s: &QMatrix, v: &[Rat]) -> Rat {
    assert_eq!(s.rows(), v.len());
    let mut total = Rat::zero();
    for i in 0..s.rows() {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..s.cols() {
            if !v[j].is_zero() {
                total += &(&v[i] * &s[(i, j)]) * &v[j];
            }
        }
    }
    total
}

/// Reassembles `L diag(d) L^T`; used to validate PASS outcomes.
pub fn ldl_reconstruct(l: &QMatrix, d: &[Rat]) -> QMatrix {
    let n = l.rows();
    assert_eq!(d.len(), n);
    let mut dd = QMatrix::zeros(n, n);
    for (i, di) in d.iter().enumerate() {
        dd[(i, i)] = di.clone();
    }
    l.mul(&dd).mul(&l.transpose())
}
