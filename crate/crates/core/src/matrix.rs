//! Dense integer matrices with arbitrary-precision entries and Smith normal form.
//!
//! Desk-scale exact linear algebra: the matrices coming out of cellular chain
//! complexes here are at most a few thousand entries wide, so a dense
//! representation with `BigInt` entries and classical row/column reduction is
//! the right trade-off. Correctness is checked, not assumed: the decomposition
//! carries both transforms and their inverses so `S = U·M·V` and unimodularity
//! are verifiable by exact multiplication.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
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

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        let idx = r * self.cols + c;
        self.data[idx] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = a * b;
                        out.add_to(i, j, &v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, v) in other.data.iter().enumerate() {
            out.data[i] -= v;
        }
        out
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, v) in other.data.iter().enumerate() {
            out.data[i] += v;
        }
        out
    }

    pub fn neg(&self) -> IntMat {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = -std::mem::take(v);
        }
        out
    }

    /// Apply to an integer column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `sel` gathered into a new matrix.
    pub fn select_cols(&self, sel: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(self.rows, sel.len());
        for (jj, &j) in sel.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `sel` gathered into a new matrix.
    pub fn select_rows(&self, sel: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(sel.len(), self.cols);
        for (ii, &i) in sel.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    /// row(dst) += q * row(src)
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.add_to(dst, j, &v);
        }
    }

    /// col(dst) += q * col(src)
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.add_to(i, dst, &v);
        }
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith decomposition `S = U · M · V` with `S` diagonal, `d_1 | d_2 | ...`,
/// and `U`, `V` unimodular. The inverses are tracked during reduction so
/// callers can change basis in both directions without re-solving.
pub struct SmithDecomposition {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal invariant factors (nonzero entries of `S`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Exact verification of the decomposition contract.
    pub fn verify(&self, m: &IntMat) -> bool {
        self.u.mul(m).mul(&self.v) == self.s
            && self.u.mul(&self.u_inv).is_identity()
            && self.v.mul(&self.v_inv).is_identity()
    }
}

/// Smith normal form by classical pivoting on the minimal nonzero entry.
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut b = m.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Elementary operations applied to b are mirrored on u/v, with the
    // inverse operation applied on the opposite side of u_inv/v_inv.
    macro_rules! rswap {
        ($a:expr, $b:expr) => {{
            b.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! cswap {
        ($a:expr, $b:expr) => {{
            b.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! radd {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            b.row_op($dst, $src, &q);
            u.row_op($dst, $src, &q);
            u_inv.col_op($src, $dst, &(-&q));
        }};
    }
    macro_rules! cadd {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            b.col_op($dst, $src, &q);
            v.col_op($dst, $src, &q);
            v_inv.row_op($src, $dst, &(-&q));
        }};
    }

    let mut k = 0;
    while k < rows.min(cols) {
        // Minimal-absolute-value nonzero pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !b.get(i, j).is_zero()
                    && pivot.is_none_or(|(pi, pj)| b.get(i, j).abs() < b.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        rswap!(k, pi);
        cswap!(k, pj);
        if b.get(k, k).is_negative() {
            b.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }

        loop {
            // Clear below and to the right of the pivot; a nonzero remainder
            // becomes the new (smaller) pivot on the next pass.
            let mut dirty = false;
            for i in k + 1..rows {
                if !b.get(i, k).is_zero() {
                    let q = b.get(i, k).div_floor(b.get(k, k));
                    radd!(i, k, -q);
                    if !b.get(i, k).is_zero() {
                        rswap!(i, k);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !b.get(k, j).is_zero() {
                    let q = b.get(k, j).div_floor(b.get(k, k));
                    cadd!(j, k, -q);
                    if !b.get(k, j).is_zero() {
                        cswap!(j, k);
                        dirty = true;
                    }
                }
            }
            if dirty {
                if b.get(k, k).is_negative() {
                    b.negate_row(k);
                    u.negate_row(k);
                    u_inv.negate_col(k);
                }
                continue;
            }
            // Divisibility sweep: fold a non-divisible entry into the pivot row.
            let d = b.get(k, k).clone();
            let mut offending = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(b.get(i, j) % &d).is_zero() {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => {
                    radd!(k, i, BigInt::one());
                }
                None => break,
            }
        }
        k += 1;
    }

    SmithDecomposition {
        rank: k,
        s: b,
        u,
        v,
        u_inv,
        v_inv,
    }
}

/// Integer basis of the kernel of `m` (columns of the returned matrix).
pub fn kernel_basis(snf: &SmithDecomposition) -> IntMat {
    let cols = snf.v.cols();
    let sel: Vec<usize> = (snf.rank..cols).collect();
    snf.v.select_cols(&sel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_roundtrip(rows: &[Vec<i64>]) -> SmithDecomposition {
        let m = IntMat::from_rows(rows);
        let d = smith_normal_form(&m);
        assert!(d.verify(&m), "S = UMV or unimodularity failed for {m:?}");
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s.get(i, j).is_zero());
                }
            }
        }
        let f = d.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {f:?}");
        }
        d
    }

    #[test]
    fn identity_matrix_is_fixed() {
        let d = snf_roundtrip(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(d.rank, 2);
        assert!(d.u.is_identity());
        assert!(d.v.is_identity());
    }

    #[test]
    fn zero_matrix() {
        let d = snf_roundtrip(&[vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(d.rank, 0);
        assert!(d.s.is_zero());
    }

    #[test]
    fn worked_two_by_two() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8.
        let d = snf_roundtrip(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(d.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular_and_torsion() {
        let d = snf_roundtrip(&[vec![2, 0, 0], vec![0, 3, 0]]);
        assert_eq!(d.rank, 2);
        assert_eq!(d.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn kernel_is_exact() {
        let m = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let d = smith_normal_form(&m);
        assert!(d.verify(&m));
        let ker = kernel_basis(&d);
        assert_eq!(ker.cols(), 2);
        assert!(m.mul(&ker).is_zero());
    }

    #[test]
    fn larger_random_shape() {
        let d = snf_roundtrip(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        assert_eq!(
            d.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(21)]
        );
    }
}
