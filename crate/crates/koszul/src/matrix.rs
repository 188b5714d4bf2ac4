//! Dense exact matrices with reduced row echelon form, kernels and solvers.

use crate::error::KoszulError;
use crate::field::{FieldSpec, Scalar};
use std::fmt;

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix { rows: r, cols: c, field, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    /// Column vector from coordinates.
    pub fn col_vec(field: FieldSpec, v: &[Scalar]) -> Matrix {
        Matrix { rows: v.len(), cols: 1, field, entries: v.to_vec() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply to a coordinate vector (length = cols), returning length-rows coords.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply shape mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    /// Kronecker product under row-major index flattening:
    /// `(a (x) b)[(i1*b.rows+i2), (j1*b.cols+j2)] = a[i1,j1] * b[i2,j2]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Overwrite a block with `block`, top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Add `block` into the submatrix with top-left corner at (r0, c0).
    pub fn accumulate(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = self.get(r0 + i, c0 + j).add(block.get(i, j));
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
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

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, entries }
    }

    /// Block-diagonal stacking.
    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form with strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // deterministic pivoting: first nonzero entry in the column
            let mut piv = None;
            for i in r..m.rows {
                if !m.get(i, c).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
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

    /// RREF basis (rows) of the right kernel `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = r.get(ri, f).neg();
            }
            rows.push(v);
        }
        // rows are already in RREF up to ordering of free columns
        let m = Matrix::from_rows(self.field, rows);
        if m.rows == 0 {
            Matrix::zero(self.field, 0, self.cols)
        } else {
            m.rref().0
        }
    }

    /// Solve `self * x = rhs` (rhs a column vector). `None` if inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        let sols = self.solve_matrix(&Matrix::col_vec(self.field, rhs))?;
        Some(sols.col(0))
    }

    /// Solve `self * X = Rhs` column by column with one elimination pass.
    /// `None` if any column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.field, self.cols, rhs.cols);
        for (ri, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(ri, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Matrix, KoszulError> {
        assert_eq!(self.rows, self.cols);
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
            .filter(|_| self.rank() == self.rows)
            .ok_or_else(|| KoszulError::Validation("matrix is not invertible".into()))
    }
}

/// Kronecker product of coordinate vectors, consistent with `Matrix::kron`.
pub fn vec_kron(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() { field.zero() } else { x.mul(y) });
        }
    }
    out
}

/// Standard basis vector.
pub fn unit_vec(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(Q, 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zero(Q, 2, 4);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // [[2,4],[1,2]] -> [[1,2],[0,0]], pivots [0]
        let m = Matrix::from_i64_rows(Q, &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64_rows(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_gf2() {
        // [[1,1]] over GF(2): kernel = span{(1,1)}; oracle: enumerate all 4 vectors
        let f = FieldSpec::PrimeField(2);
        let m = Matrix::from_i64_rows(f, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, Matrix::from_i64_rows(f, &[&[1, 1]]));
        let mut solutions = 0;
        for a in 0..2i64 {
            for b in 0..2i64 {
                let v = vec![f.from_i64(a), f.from_i64(b)];
                if m.apply(&v).iter().all(|x| x.is_zero()) {
                    solutions += 1;
                }
            }
        }
        assert_eq!(solutions, 2); // dim 1 over GF(2)
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(Q, 3);
        let b: Vec<Scalar> = [1, -2, 5].iter().map(|&x| Q.from_i64(x)).collect();
        assert_eq!(id.solve(&b).unwrap(), b);
        // inconsistent
        let m = Matrix::from_i64_rows(Q, &[&[1, 1], &[1, 1]]);
        let rhs = vec![Q.from_i64(0), Q.from_i64(1)];
        assert!(m.solve(&rhs).is_none());
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().rows, m.cols);
    }

    #[test]
    fn kron_flattening() {
        let a = Matrix::from_i64_rows(Q, &[&[1, 2]]);
        let b = Matrix::from_i64_rows(Q, &[&[3], &[4]]);
        let k = a.kron(&b);
        assert_eq!(k.rows, 2);
        assert_eq!(k.cols, 2);
        let va = [Q.from_i64(5), Q.from_i64(7)];
        let vb = [Q.from_i64(2)];
        let kv = vec_kron(Q, &va, &vb);
        assert_eq!(k.apply(&kv), a.kron(&b).apply(&kv));
    }
}
