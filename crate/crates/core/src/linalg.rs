//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; there is no floating
//! point and no modular shortcut. Matrices with a zero dimension are legal
//! inputs for every routine and produce the obvious empty or identity results.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix has {found} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    Product(usize, usize, usize, usize),
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from explicit rows. `cols` is needed so that a matrix
    /// with no rows still knows its width.
    pub fn from_row_vecs(cols: usize, rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: i,
                    found: row.len(),
                    expected: cols,
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: out,
        }
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> Self {
        let picked: Vec<usize> = cols.into_iter().collect();
        let mut entries = Vec::with_capacity(self.rows * picked.len());
        for r in 0..self.rows {
            for &c in &picked {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: picked.len(),
            entries,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Product(self.rows, self.cols, other.rows, other.cols));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> Mul<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Product(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.get(k, j);
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Product(self.rows, self.cols, v.len(), 1));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }
}

impl<T> Mul for &Matrix<T>
where
    T: Clone + Zero + for<'a> Mul<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    type Output = Matrix<T>;

    /// Panics on a dimension mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_row_vecs(cols, rows).expect("ragged integer matrix literal")
    }

    fn row_axpy(&mut self, target: usize, q: &BigInt, source: usize) {
        // row[target] -= q * row[source]
        for c in 0..self.cols {
            let delta = q * &self.entries[source * self.cols + c];
            self.entries[target * self.cols + c] -= delta;
        }
    }

    fn col_axpy(&mut self, target: usize, q: &BigInt, source: usize) {
        // col[target] -= q * col[source]
        for r in 0..self.rows {
            let delta = q * &self.entries[r * self.cols + source];
            self.entries[r * self.cols + target] -= delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }

    /// Determinant by Bareiss fraction-free elimination. `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Some(BigInt::zero());
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Some(sign * m.get(n - 1, n - 1))
    }

    /// Rank by fraction-free Gaussian elimination (no Smith form involved).
    pub fn rank(&self) -> usize {
        fraction_free_rank(self.clone())
    }
}

fn fraction_free_rank(mut m: IntMatrix) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        for r in rank + 1..m.rows {
            for j in c + 1..m.cols {
                let v = (m.get(r, j) * m.get(rank, c) - m.get(r, c) * m.get(rank, j)) / &prev;
                m.set(r, j, v);
            }
            m.set(r, c, BigInt::zero());
        }
        prev = m.get(rank, c).clone();
        rank += 1;
    }
    rank
}

/// Rank over the rationals. Each row is scaled by the lcm of its
/// denominators and the integer matrix is eliminated fraction-free.
pub fn rational_rank(a: &RatMatrix) -> usize {
    let mut rows = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let lcm = a.row(r).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(a.row(r).iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
    }
    let m = IntMatrix::from_row_vecs(a.cols(), rows).expect("shape preserved");
    fraction_free_rank(m)
}

/// `left * input * right = diagonal`, with `left`, `right` unimodular and the
/// diagonal a nonnegative divisibility chain followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal_entries().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smallest nonzero |entry| in the lower-right block starting at `(t, t)`;
/// ties go to the lowest (row, col).
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let v = d.get(r, c);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((r, c, a));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = min_pivot(&d, t) else {
                // remaining block is zero
                return finish(u, d, v);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = d.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(&pivot);
                d.row_axpy(i, &q, t);
                u.row_axpy(i, &q, t);
                remainder |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(&pivot);
                d.col_axpy(j, &q, t);
                v.col_axpy(j, &q, t);
                remainder |= !d.get(t, j).is_zero();
            }
            if remainder {
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, &minus_one, i);
                    u.row_axpy(t, &minus_one, i);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(left: IntMatrix, diagonal: IntMatrix, right: IntMatrix) -> SmithForm {
    SmithForm { left, diagonal, right }
}

/// Invariants of `Z^rows / (column span of A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    /// Invariant factors `> 1`, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
}

pub fn cokernel_invariants(a: &IntMatrix) -> CokernelInvariants {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal_entries();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    CokernelInvariants {
        free_rank: a.rows() - rank,
        invariant_factors: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
    }
}

/// Basis of the lattice `{v : A v = 0}`, one vector per column, in column
/// Hermite form. The result has `A.cols()` rows and zero columns when the
/// kernel is trivial.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let raw = snf.right.select_columns(rank..a.cols());
    hermite_basis(&raw)
}

/// Basis of the lattice spanned by the columns of `generators`, returned as
/// columns in Hermite normal form: leading entries positive, entries in the
/// same coordinate of earlier basis vectors reduced into `[0, pivot)`.
pub fn hermite_basis(generators: &IntMatrix) -> IntMatrix {
    let dim = generators.rows();
    let mut rows = generators.transpose();
    let mut pivot_row = 0;
    for c in 0..dim {
        if pivot_row == rows.rows() {
            break;
        }
        loop {
            let best = (pivot_row..rows.rows())
                .filter(|&r| !rows.get(r, c).is_zero())
                .min_by(|&a, &b| rows.get(a, c).abs().cmp(&rows.get(b, c).abs()));
            let Some(p) = best else { break };
            rows.swap_rows(pivot_row, p);
            let pivot = rows.get(pivot_row, c).clone();
            let mut clean = true;
            for r in pivot_row + 1..rows.rows() {
                if rows.get(r, c).is_zero() {
                    continue;
                }
                let q = rows.get(r, c).div_floor(&pivot);
                rows.row_axpy(r, &q, pivot_row);
                clean &= rows.get(r, c).is_zero();
            }
            if clean {
                break;
            }
        }
        if pivot_row < rows.rows() && !rows.get(pivot_row, c).is_zero() {
            if rows.get(pivot_row, c).is_negative() {
                rows.negate_row(pivot_row);
            }
            let pivot = rows.get(pivot_row, c).clone();
            for r in 0..pivot_row {
                let q = rows.get(r, c).div_floor(&pivot);
                if !q.is_zero() {
                    rows.row_axpy(r, &q, pivot_row);
                }
            }
            pivot_row += 1;
        }
    }
    let basis: Vec<Vec<BigInt>> = (0..pivot_row).map(|r| rows.row(r).to_vec()).collect();
    IntMatrix::from_row_vecs(dim, basis)
        .expect("rows have generator dimension")
        .transpose()
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows() {
        return None;
    }
    let snf = smith_normal_form(a);
    let ub = snf.left.mul_vec(b).ok()?;
    let diag = snf.diagonal_entries();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, target) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                if !target.is_multiple_of(d) {
                    return None;
                }
                y[i] = target / d;
            }
            _ => {
                if !target.is_zero() {
                    return None;
                }
            }
        }
    }
    snf.right.mul_vec(&y).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.left * a) * &snf.right, snf.diagonal);
        assert_eq!(snf.left.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.right.determinant().unwrap().abs(), BigInt::one());
        snf
    }

    #[test]
    fn one_by_one() {
        let snf = check_smith(&IntMatrix::from_rows(1, &[[2]]));
        assert_eq!(snf.diagonal, IntMatrix::from_rows(1, &[[2]]));
        assert_eq!(snf.left, IntMatrix::identity(1));
        assert_eq!(snf.right, IntMatrix::identity(1));
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check_smith(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_hand_elimination() {
        // gcd of entries is 2, |det| = 8, so diag(2, 4).
        let snf = check_smith(&IntMatrix::from_rows(2, &[[2, 4], [6, 8]]));
        assert_eq!(snf.diagonal_entries(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn negative_and_nondivisible_entries() {
        let snf = check_smith(&IntMatrix::from_rows(2, &[[-2, 0], [0, 3]]));
        assert_eq!(snf.diagonal_entries(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn empty_dimensions() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zeros(r, c);
            let snf = check_smith(&a);
            assert_eq!(snf.rank(), 0);
            let coker = cokernel_invariants(&a);
            assert_eq!(coker.free_rank, r);
            assert!(coker.invariant_factors.is_empty());
            let ker = integer_kernel_basis(&a);
            assert_eq!((ker.rows(), ker.cols()), (c, c));
        }
    }

    #[test]
    fn cokernel_examples() {
        let two = cokernel_invariants(&IntMatrix::from_rows(1, &[[2]]));
        assert_eq!(two.free_rank, 0);
        assert_eq!(two.invariant_factors, vec![BigInt::from(2)]);

        let diag = cokernel_invariants(&IntMatrix::from_rows(1, &[[1], [1]]));
        assert_eq!(diag.free_rank, 1);
        assert!(diag.invariant_factors.is_empty());

        let steiner = IntMatrix::from_rows(3, &[[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0], [0, 0, 1]]);
        let c = cokernel_invariants(&steiner);
        assert_eq!(c.free_rank, 3);
        assert!(c.invariant_factors.is_empty());
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel_basis(&IntMatrix::from_rows(2, &[[-3, 1]]));
        assert_eq!(k, IntMatrix::from_rows(1, &[[1], [3]]));

        let k = integer_kernel_basis(&IntMatrix::identity(3));
        assert_eq!((k.rows(), k.cols()), (3, 0));

        let a = IntMatrix::from_rows(3, &[[1, 1, 1]]);
        let k = integer_kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        // saturated: the basis itself has trivial cokernel torsion
        assert!(cokernel_invariants(&k).invariant_factors.is_empty());
    }

    #[test]
    fn rational_rank_examples() {
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let id = RatMatrix::identity(2);
        assert_eq!(rational_rank(&id), 2);
        assert_eq!(rational_rank(&RatMatrix::zeros(3, 2)), 0);
        let m = RatMatrix::from_row_vecs(2, vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]).unwrap();
        assert_eq!(rational_rank(&m), 1);
        let m = RatMatrix::from_row_vecs(2, vec![vec![q(1, 2), q(1, 3)], vec![q(3, 1), q(2, 1)]]).unwrap();
        assert_eq!(rational_rank(&m), 1);
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let g = IntMatrix::from_rows(2, &[[4, 6], [2, 4]]);
        // columns (4,2) and (6,4) span {(a,b) : ...}; HNF is unique
        let h1 = hermite_basis(&g);
        let h2 = hermite_basis(&IntMatrix::from_rows(3, &[[6, 4, 10], [4, 2, 6]]));
        assert_eq!(h1, h2);
        assert_eq!(h1, IntMatrix::from_rows(2, &[[2, 0], [0, 2]]));
    }

    #[test]
    fn solve_integer_detects_divisibility() {
        let a = IntMatrix::from_rows(1, &[[2]]);
        assert_eq!(solve_integer(&a, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
        assert_eq!(solve_integer(&a, &[BigInt::from(3)]), None);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = IntMatrix::from_rows(3, &[[2, -1, 0], [1, 3, 4], [0, 5, -2]]);
        // 2(3*-2 - 4*5) - (-1)(1*-2 - 0) + 0 = 2(-26) + (-2) = -54
        assert_eq!(a.determinant(), Some(BigInt::from(-54)));
    }
}
