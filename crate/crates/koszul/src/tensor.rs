//! Tensor powers of a bimodule over the base ring, with explicit matrices
//! translating between plain tensor coordinates, the canonical quotient
//! coordinates of each power, and concatenations of powers.

use crate::algebra::{tensor_over_s, Bimodule, FiniteAlgebra, TensorSpace};
use crate::error::KoszulError;
use crate::field::FieldSpec;
use crate::matrix::{unit_vec, vec_kron, Matrix};
use crate::subspace::Subspace;
use std::sync::Arc;

/// Cached tensor powers `M, M (x)_S M, ...` of a bimodule, built once up to a
/// degree bound. Power `n` is the quotient of `pow(n-1) (x)_k M` by the
/// middle-slide relations, so its coordinates refer to that construction.
pub struct TensorAlgebra {
    pub algebra: Arc<FiniteAlgebra>,
    pub module: Arc<Bimodule>,
    pub deg_max: usize,
    /// `pow[n]` is M^{(x)_S n}; `pow[0]` is the regular bimodule S.
    pub pow: Vec<Arc<Bimodule>>,
    /// `steps[n]` (n >= 2) is the quotient presenting `pow[n]` from
    /// `pow[n-1] (x)_k M`.
    pub steps: Vec<Option<TensorSpace>>,
    /// Plain coordinates -> power coordinates, `M^{(x)_k n} -> pow[n]`.
    pub proj_plain: Vec<Matrix>,
    /// A section of `proj_plain`, choosing plain representatives.
    pub sec_plain: Vec<Matrix>,
}

impl TensorAlgebra {
    pub fn new(module: &Arc<Bimodule>, deg_max: usize) -> Result<TensorAlgebra, KoszulError> {
        let algebra = module.algebra.clone();
        let field = algebra.field;
        let m = module.dim;
        let mut pow: Vec<Arc<Bimodule>> = vec![Arc::new(Bimodule::regular(&algebra)), module.clone()];
        let mut steps: Vec<Option<TensorSpace>> = vec![None, None];
        let mut proj_plain = vec![Matrix::identity(field, 1), Matrix::identity(field, m)];
        let mut sec_plain = proj_plain.clone();
        for n in 2..=deg_max {
            let t = tensor_over_s(&pow[n - 1], module)?;
            // plain maps: route through the previous power's plain maps
            let proj = t.projection.mul(&proj_plain[n - 1].kron(&Matrix::identity(field, m)));
            let sec = sec_plain[n - 1].kron(&Matrix::identity(field, m)).mul(&t.section);
            pow.push(t.bimodule.clone());
            proj_plain.push(proj);
            sec_plain.push(sec);
            steps.push(Some(t));
        }
        Ok(TensorAlgebra { algebra, module: module.clone(), deg_max, pow, steps, proj_plain, sec_plain })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    pub fn dim(&self, n: usize) -> usize {
        self.pow[n].dim
    }

    /// Concatenation `pow(i) (x)_k pow(j) -> pow(i+j)` (row-major pair index).
    /// Well defined on representatives because the plain projection already
    /// quotients by all middle slides.
    pub fn concat(&self, i: usize, j: usize) -> Matrix {
        assert!(i + j <= self.deg_max);
        let field = self.field();
        if i == 0 {
            // left action of S on pow(j)
            let target = &self.pow[j];
            let mut m = Matrix::zero(field, target.dim, self.algebra.dim * target.dim);
            for s in 0..self.algebra.dim {
                for x in 0..target.dim {
                    let out = target.left[s].apply(&unit_vec(field, target.dim, x));
                    for k in 0..target.dim {
                        m.set(k, s * target.dim + x, out[k].clone());
                    }
                }
            }
            return m;
        }
        if j == 0 {
            let source = &self.pow[i];
            let mut m = Matrix::zero(field, source.dim, source.dim * self.algebra.dim);
            for x in 0..source.dim {
                for s in 0..self.algebra.dim {
                    let out = source.right[s].apply(&unit_vec(field, source.dim, x));
                    for k in 0..source.dim {
                        m.set(k, x * self.algebra.dim + s, out[k].clone());
                    }
                }
            }
            return m;
        }
        self.proj_plain[i + j].mul(&self.sec_plain[i].kron(&self.sec_plain[j]))
    }

    /// The tensor product `pow(i) (x)_S pow(j)` together with the induced
    /// isomorphism onto `pow(i+j)` and its inverse.
    pub fn split(&self, i: usize, j: usize) -> Result<(TensorSpace, Matrix, Matrix), KoszulError> {
        let t = tensor_over_s(&self.pow[i], &self.pow[j])?;
        let forward = self.concat(i, j).mul(&t.section);
        let inverse = forward.inverse().map_err(|_| {
            KoszulError::Validation(format!(
                "pow({i}) (x)_S pow({j}) -> pow({}) is not invertible",
                i + j
            ))
        })?;
        Ok((t, forward, inverse))
    }

    /// The subspace `pow(i) . R . pow(j)` of `pow(i + 2 + j)`, for a
    /// relation space `R` given in `pow(2)` coordinates.
    pub fn embed_middle(&self, i: usize, r: &Subspace, j: usize) -> Subspace {
        assert_eq!(r.ambient_dim, self.dim(2));
        let field = self.field();
        let n = i + 2 + j;
        assert!(n <= self.deg_max);
        let left = self.concat(i, 2); // pow(i) (x) pow(2) -> pow(i+2)
        let right = self.concat(i + 2, j);
        let mut vectors = Vec::new();
        for a in 0..self.dim(i) {
            let ea = unit_vec(field, self.dim(i), a);
            for b in 0..r.dim() {
                let mid = left.apply(&vec_kron(field, &ea, &r.basis_vector(b)));
                for c in 0..self.dim(j) {
                    let ec = unit_vec(field, self.dim(j), c);
                    vectors.push(right.apply(&vec_kron(field, &mid, &ec)));
                }
            }
        }
        Subspace::from_span(field, self.dim(n), &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Bimodule;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn z2() -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::group_algebra(Q, &[vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn free_module(s: &Arc<FiniteAlgebra>, v_dim: usize) -> Arc<Bimodule> {
        // plain twist braiding s (x) v -> v (x) s
        let field = s.field;
        let mut psi = Matrix::zero(field, v_dim * s.dim, s.dim * v_dim);
        for si in 0..s.dim {
            for v in 0..v_dim {
                psi.set(v * s.dim + si, si * v_dim + v, field.one());
            }
        }
        Arc::new(Bimodule::free_right_from_braiding(s, v_dim, &psi))
    }

    #[test]
    fn power_dims_over_group_algebra() {
        // dim (V (x) S)^{(x)_S n} = dim V^n * dim S
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 4).unwrap();
        assert_eq!(t.dim(0), 2);
        assert_eq!(t.dim(1), 4);
        assert_eq!(t.dim(2), 8);
        assert_eq!(t.dim(3), 16);
        assert_eq!(t.dim(4), 32);
    }

    #[test]
    fn plain_maps_split() {
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(
                t.proj_plain[n].mul(&t.sec_plain[n]),
                Matrix::identity(Q, t.dim(n))
            );
        }
    }

    #[test]
    fn concat_associative() {
        // concat(1, 2) . (id (x) concat(1,1)) == concat(2, 1) . (concat(1,1) (x) id)
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 3).unwrap();
        let c11 = t.concat(1, 1);
        let lhs = t.concat(1, 2).mul(&Matrix::identity(Q, t.dim(1)).kron(&c11));
        let rhs = t.concat(2, 1).mul(&c11.kron(&Matrix::identity(Q, t.dim(1))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_concat_is_action() {
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 2).unwrap();
        // 1 (x) x concatenates to x
        let c = t.concat(0, 1);
        for x in 0..t.dim(1) {
            let v = vec_kron(Q, &s.unit, &unit_vec(Q, t.dim(1), x));
            assert_eq!(c.apply(&v), unit_vec(Q, t.dim(1), x));
        }
    }

    #[test]
    fn split_inverts_concat() {
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 4).unwrap();
        for (i, j) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let (ts, fwd, inv) = t.split(i, j).unwrap();
            assert_eq!(ts.quotient_dim, t.dim(i + j));
            assert_eq!(fwd.mul(&inv), Matrix::identity(Q, t.dim(i + j)));
        }
    }

    #[test]
    fn embed_middle_full_relations() {
        // with R = all of pow(2), the embedding is everything in each degree
        let s = z2();
        let m = free_module(&s, 2);
        let t = TensorAlgebra::new(&m, 4).unwrap();
        let r = Subspace::full(Q, t.dim(2));
        assert_eq!(t.embed_middle(0, &r, 0).dim(), t.dim(2));
        assert_eq!(t.embed_middle(1, &r, 0).dim(), t.dim(3));
        assert_eq!(t.embed_middle(0, &r, 1).dim(), t.dim(3));
        assert_eq!(t.embed_middle(1, &r, 1).dim(), t.dim(4));
    }
}
