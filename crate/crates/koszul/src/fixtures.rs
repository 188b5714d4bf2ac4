//! Canonical presentations and deformation data shared by the unit tests,
//! the runnable examples, and the bundled corpus files.

use crate::algebra::{Bimodule, FiniteAlgebra};
use crate::entwine::{smash_presentation, Braiding};
use crate::error::KoszulError;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::quadratic::QuadraticPresentation;
use crate::subspace::Subspace;
use std::sync::Arc;

/// The group algebra of Z/2 = {1, g}.
pub fn z2_group_algebra(field: FieldSpec) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::group_algebra(field, &[vec![0, 1], vec![1, 0]]).unwrap())
}

/// k[eps]/(eps^2), the smallest selfinjective nonsemisimple base ring.
pub fn dual_numbers(field: FieldSpec) -> Arc<FiniteAlgebra> {
    let o = || field.one();
    let z = || field.zero();
    let mult = vec![
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![z(), o()], vec![z(), z()]],
    ];
    Arc::new(FiniteAlgebra::new(field, 2, mult, vec![o(), z()]).unwrap())
}

/// Upper-triangular 2x2 matrices, basis {e11, e22, e12}: not selfinjective.
pub fn upper_triangular2(field: FieldSpec) -> Arc<FiniteAlgebra> {
    let o = || field.one();
    let z = || field.zero();
    let zero3 = || vec![z(), z(), z()];
    // e11*e11 = e11, e22*e22 = e22, e11*e12 = e12, e12*e22 = e12
    let mult = vec![
        vec![vec![o(), z(), z()], zero3(), vec![z(), z(), o()]],
        vec![zero3(), vec![z(), o(), z()], zero3()],
        vec![zero3(), vec![z(), z(), o()], zero3()],
    ];
    Arc::new(FiniteAlgebra::new(field, 3, mult, vec![o(), o(), z()]).unwrap())
}

/// The free bimodule of rank `v_dim` over the base field viewed as a
/// one-dimensional algebra.
pub fn free_module_over_field(field: FieldSpec, v_dim: usize) -> Arc<Bimodule> {
    let base = Arc::new(FiniteAlgebra::base_field(field));
    let psi = Matrix::identity(field, v_dim);
    Arc::new(Bimodule::free_right_from_braiding(&base, v_dim, &psi))
}

/// Commutator span {e_a (x) e_b - e_b (x) e_a : a < b} inside V (x) V.
pub fn commutator_relations(field: FieldSpec, v_dim: usize) -> Subspace {
    let mut vectors = Vec::new();
    for a in 0..v_dim {
        for b in a + 1..v_dim {
            let mut v = vec![field.zero(); v_dim * v_dim];
            v[a * v_dim + b] = field.one();
            v[b * v_dim + a] = field.one().neg();
            vectors.push(v);
        }
    }
    Subspace::from_span(field, v_dim * v_dim, &vectors)
}

/// The polynomial ring in `n_vars` variables as a quadratic presentation
/// over the base field.
pub fn polynomial_presentation(
    field: FieldSpec,
    n_vars: usize,
    deg_max: usize,
) -> Result<QuadraticPresentation, KoszulError> {
    let module = free_module_over_field(field, n_vars);
    let rel = commutator_relations(field, n_vars);
    let plain: Vec<Vec<Scalar>> = (0..rel.dim()).map(|i| rel.basis_vector(i)).collect();
    QuadraticPresentation::relations_from_plain(&module, &plain, deg_max)
}

/// Z/2 acting on a 2-dimensional space by -1: the sign-action braiding.
pub fn sign_action_braiding(field: FieldSpec) -> Braiding {
    let s = z2_group_algebra(field);
    let id = Matrix::identity(field, 2);
    let neg = id.neg();
    Braiding::from_group_action(&s, &[id, neg])
}

/// Z/2 over GF(2) acting unipotently by [[1,1],[0,1]].
pub fn unipotent_gf2_braiding() -> Braiding {
    let field = FieldSpec::prime_field(2).unwrap();
    let s = z2_group_algebra(field);
    let id = Matrix::identity(field, 2);
    let u = Matrix::from_i64_rows(field, &[&[1, 1], &[0, 1]]);
    Braiding::from_group_action(&s, &[id, u])
}

/// The quadratic presentation of k[x,y] # kZ/2 (or its GF(2) unipotent
/// analogue) from a braiding: relations (x y - y x) (x) S.
pub fn smash_commutator_presentation(
    braiding: &Braiding,
    deg_max: usize,
) -> Result<QuadraticPresentation, KoszulError> {
    let rel = commutator_relations(braiding.field(), braiding.v_dim);
    smash_presentation(braiding, &rel, deg_max)
}

/// A distinguished free generator of the relation bimodule of a smash
/// commutator presentation: the class of (x (x) 1)(y (x) 1) - (y (x) 1)(x (x) 1),
/// expressed in the relation-basis coordinates.
pub fn smash_commutator_generator(pres: &QuadraticPresentation) -> Vec<Scalar> {
    let field = pres.field();
    let s = pres.tensor.algebra.dim;
    let v = pres.tensor.module.dim / s;
    let m = pres.tensor.module.dim;
    // plain (V (x) S) (x) (V (x) S) vector for x(x)1 (x) y(x)1 - y(x)1 (x) x(x)1
    let mut plain = vec![field.zero(); m * m];
    let idx = |a: usize, s1: usize, b: usize, s2: usize| (a * s + s1) * m + b * s + s2;
    plain[idx(0, 0, 1, 0)] = field.one();
    plain[idx(1, 0, 0, 0)] = field.one().neg();
    assert!(v >= 2);
    let in_pow2 = pres.tensor.proj_plain[2].apply(&plain);
    let incl = pres.relations.basis.transpose();
    incl.solve(&in_pow2).expect("commutator class lies in the relation space")
}

/// Deformation data for the enveloping algebra of sl2: V = span{e, f, h},
/// commutator relations, phi the Lie bracket, theta = 0. Char(k) must not be 2.
pub fn sl2_deformation(
    field: FieldSpec,
    deg_max: usize,
) -> Result<(QuadraticPresentation, Matrix, Matrix), KoszulError> {
    let pres = polynomial_presentation(field, 3, deg_max)?;
    let phi = bracket_phi(field, &pres, &sl2_bracket(field));
    let theta = Matrix::zero(field, 1, pres.relations.dim());
    Ok((pres, phi, theta))
}

/// Like `sl2_deformation` but with a bracket that fails the Jacobi
/// identity ([e,f] = e instead of h); the deformation is not flat.
pub fn sl2_broken_deformation(
    field: FieldSpec,
    deg_max: usize,
) -> Result<(QuadraticPresentation, Matrix, Matrix), KoszulError> {
    let pres = polynomial_presentation(field, 3, deg_max)?;
    let mut br = sl2_bracket(field);
    let e = vec![field.one(), field.zero(), field.zero()];
    br[0][1] = e.clone();
    br[1][0] = e.iter().map(|c| c.neg()).collect();
    let phi = bracket_phi(field, &pres, &br);
    let theta = Matrix::zero(field, 1, pres.relations.dim());
    Ok((pres, phi, theta))
}

/// Structure constants of sl2 on the ordered basis (e, f, h).
fn sl2_bracket(field: FieldSpec) -> Vec<Vec<Vec<Scalar>>> {
    let z3 = || vec![field.zero(); 3];
    let mut br = vec![vec![z3(); 3]; 3];
    let mut set = |a: usize, b: usize, v: Vec<Scalar>| {
        br[a][b] = v.clone();
        br[b][a] = v.iter().map(|c| c.neg()).collect();
    };
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f
    set(0, 1, vec![field.zero(), field.zero(), field.one()]);
    set(2, 0, vec![field.from_i64(2), field.zero(), field.zero()]);
    set(2, 1, vec![field.zero(), field.from_i64(-2), field.zero()]);
    br
}

/// phi on the commutator span determined by a bracket table:
/// phi(e_a (x) e_b - e_b (x) e_a) = br[a][b].
fn bracket_phi(
    field: FieldSpec,
    pres: &QuadraticPresentation,
    br: &[Vec<Vec<Scalar>>],
) -> Matrix {
    let v = pres.tensor.module.dim;
    let rdim = pres.relations.dim();
    let half = field.from_i64(2).inv();
    let mut phi = Matrix::zero(field, v, rdim);
    for i in 0..rdim {
        let w = pres.relations.basis_vector(i); // plain coords: base ring is k
        for a in 0..v {
            for b in 0..v {
                let c = &w[a * v + b];
                if c.is_zero() {
                    continue;
                }
                for k in 0..v {
                    let cur = phi.get(k, i).add(&c.mul(&half).mul(&br[a][b][k]));
                    phi.set(k, i, cur);
                }
            }
        }
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{graded_pieces, is_koszul};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn polynomial_dims() {
        let pres = polynomial_presentation(Q, 3, 4).unwrap();
        let g = graded_pieces(&pres, 4).unwrap();
        assert_eq!((0..=4).map(|n| g.dim(n)).collect::<Vec<_>>(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn smash_commutator_is_koszul() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 4).unwrap();
        assert!(is_koszul(&pres, 4).unwrap().pass);
        let g = graded_pieces(&pres, 4).unwrap();
        assert_eq!((0..=4).map(|n| g.dim(n)).collect::<Vec<_>>(), vec![2, 4, 6, 8, 10]);
    }

    #[test]
    fn commutator_generator_freely_generates() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 4).unwrap();
        let r0 = smash_commutator_generator(&pres);
        let rb = pres.tensor.pow[2].restrict(&pres.relations).unwrap();
        // right multiplication by S out of r0 spans the whole relation space
        let mut cols = Matrix::zero(Q, rb.dim, rb.algebra.dim);
        for s in 0..rb.algebra.dim {
            let img = rb.right[s].apply(&r0);
            for k in 0..rb.dim {
                cols.set(k, s, img[k].clone());
            }
        }
        assert_eq!(cols.rank(), rb.dim);
    }

    #[test]
    fn unipotent_braiding_valid() {
        let b = unipotent_gf2_braiding();
        assert!(b.check().is_valid());
    }
}
