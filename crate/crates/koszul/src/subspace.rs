//! Subspaces in canonical (RREF) form. Equality of subspaces is entrywise
//! equality of canonical bases, which keeps every higher-level verdict
//! deterministic.

use crate::error::KoszulError;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use rand::Rng;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub field: FieldSpec,
    /// Rows are basis vectors, in RREF with strictly increasing pivots.
    pub basis: Matrix,
}

impl Subspace {
    pub fn from_span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        let m = Matrix::from_rows(field, vectors.to_vec());
        assert_eq!(m.cols, ambient_dim);
        Subspace::from_matrix_rows(&m)
    }

    /// Span of the rows of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..m.cols).collect();
        Subspace { ambient_dim: m.cols, field: m.field, basis: r.submatrix(&keep, &all) }
    }

    /// Span of the columns of `m`.
    pub fn from_matrix_cols(m: &Matrix) -> Subspace {
        Subspace::from_matrix_rows(&m.transpose())
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, field, basis: Matrix::zero(field, 0, ambient_dim) }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, field, basis: Matrix::identity(field, ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.row(i)
    }

    /// Exact membership test, no tolerance anywhere.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        // reduce v against the RREF basis
        let mut w = v.to_vec();
        for i in 0..self.basis.rows {
            let pivot = (0..self.ambient_dim)
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("zero row in canonical basis");
            if !w[pivot].is_zero() {
                let f = w[pivot].clone();
                for j in 0..self.ambient_dim {
                    w[j] = w[j].sub(&f.mul(self.basis.get(i, j)));
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.basis_vector(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, KoszulError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(KoszulError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(Subspace::from_matrix_rows(&self.basis.vstack(&other.basis)))
    }

    /// Intersection: solve `u A = v B` over pairs (u, v) and push forward.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, KoszulError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(KoszulError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let p = self.dim();
        if p == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        // columns: ambient coordinates; unknowns (u, v)
        let system = self.basis.transpose().hstack(&other.basis.transpose().neg());
        let ker = system.kernel_basis();
        let mut vectors = Vec::new();
        for i in 0..ker.rows {
            let u: Vec<Scalar> = ker.row(i)[..p].to_vec();
            vectors.push(self.basis.transpose().apply(&u));
        }
        Ok(Subspace::from_span(self.field, self.ambient_dim, &vectors))
    }

    /// Coordinates indexing a direct complement (the non-pivot coordinates).
    pub fn complement_coords(&self) -> Vec<usize> {
        let pivots: std::collections::HashSet<usize> = (0..self.basis.rows)
            .map(|i| {
                (0..self.ambient_dim)
                    .find(|&j| !self.basis.get(i, j).is_zero())
                    .expect("zero row in canonical basis")
            })
            .collect();
        (0..self.ambient_dim).filter(|j| !pivots.contains(j)).collect()
    }

    /// Projection to quotient coordinates (indexed by `complement_coords`) and
    /// a section back. `proj * sec = id` and `ker(proj) = self`.
    pub fn quotient_maps(&self) -> (Matrix, Matrix) {
        let free = self.complement_coords();
        let q = free.len();
        let mut proj = Matrix::zero(self.field, q, self.ambient_dim);
        let mut sec = Matrix::zero(self.field, self.ambient_dim, q);
        for (t, &j) in free.iter().enumerate() {
            proj.set(t, j, self.field.one());
            sec.set(j, t, self.field.one());
        }
        // pivot coordinate e_p == -sum_j c_j e_j modulo the subspace
        for i in 0..self.basis.rows {
            let pivot = (0..self.ambient_dim)
                .find(|&j| !self.basis.get(i, j).is_zero())
                .unwrap();
            for (t, &j) in free.iter().enumerate() {
                let c = self.basis.get(i, j);
                if !c.is_zero() {
                    proj.set(t, pivot, c.neg());
                }
            }
        }
        (proj, sec)
    }

    /// Deterministic pseudo-random vector in the subspace.
    pub fn random_vector<R: Rng>(&self, rng: &mut R) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.ambient_dim];
        for i in 0..self.basis.rows {
            let c = match self.field {
                FieldSpec::Rationals => self.field.from_i64(rng.gen_range(-9..=9)),
                FieldSpec::PrimeField(p) => self.field.from_i64(rng.gen_range(0..p) as i64),
            };
            for j in 0..self.ambient_dim {
                v[j] = v[j].add(&c.mul(self.basis.get(i, j)));
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn intersect_trivial_cases() {
        let full = Subspace::full(Q, 3);
        let b = Subspace::from_span(Q, 3, &[unit_vec(Q, 3, 0), unit_vec(Q, 3, 2)]);
        assert_eq!(full.intersect(&b).unwrap(), b);
        // two distinct lines in k^2 meet in 0
        let l1 = Subspace::from_span(Q, 2, &[vec![Q.from_i64(1), Q.from_i64(0)]]);
        let l2 = Subspace::from_span(Q, 2, &[vec![Q.from_i64(1), Q.from_i64(1)]]);
        assert_eq!(l1.intersect(&l2).unwrap(), Subspace::zero(Q, 2));
    }

    #[test]
    fn intersect_planes() {
        // span{e1,e2} ^ span{e2,e3} = span{e2} in k^3 (hand membership system)
        let a = Subspace::from_span(Q, 3, &[unit_vec(Q, 3, 0), unit_vec(Q, 3, 1)]);
        let b = Subspace::from_span(Q, 3, &[unit_vec(Q, 3, 1), unit_vec(Q, 3, 2)]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::from_span(Q, 3, &[unit_vec(Q, 3, 1)]));
    }

    #[test]
    fn complement_of_diagonal_line() {
        // complement of span{(1,1)} in Q^2 is coordinate {1}
        let l = Subspace::from_span(Q, 2, &[vec![Q.from_i64(1), Q.from_i64(1)]]);
        assert_eq!(l.complement_coords(), vec![1]);
    }

    #[test]
    fn quotient_maps_laws() {
        let l = Subspace::from_span(Q, 3, &[vec![Q.from_i64(1), Q.from_i64(2), Q.from_i64(3)]]);
        let (proj, sec) = l.quotient_maps();
        assert_eq!(proj.mul(&sec), Matrix::identity(Q, 2));
        // kernel of proj is the subspace
        let ker = proj.kernel_basis();
        assert_eq!(Subspace::from_matrix_rows(&ker), l);
    }

    #[test]
    fn dim_formula() {
        let a = Subspace::from_span(Q, 4, &[unit_vec(Q, 4, 0), unit_vec(Q, 4, 1)]);
        let b = Subspace::from_span(
            Q,
            4,
            &[
                vec![Q.from_i64(1), Q.from_i64(1), Q.from_i64(0), Q.from_i64(0)],
                unit_vec(Q, 4, 3),
            ],
        );
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
    }
}
