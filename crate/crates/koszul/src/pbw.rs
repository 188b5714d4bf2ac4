//! Flatness checkers for filtered deformations of quadratic algebras over
//! the base ring.
//!
//! Two checkers are provided. Mode A deforms the relations by a map into S
//! only and predicts flatness from bimodule-linearity of that map (under a
//! depth-2 precondition on the relation overlaps). Mode B handles smash-type
//! presentations deformed by a pair of maps into M and S, and evaluates three
//! overlap-space conditions. Both predictions are cross-checked by an
//! independent filtered-dimension oracle that truncates the deformed ideal
//! directly. The module also builds the splitting maps behind the depth-2
//! bimodule resolution, verifies their homotopy identity, and assembles the
//! resolution itself.

use crate::algebra::{
    compute_section, push_matrix_eq, push_sylvester_eq, right_action_map, tensor_over_s, Bimodule,
    Side, TensorSpace,
};
use crate::entwine::braiding_from_bimodule;
use crate::error::KoszulError;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{unit_vec, vec_kron, Matrix};
use crate::quadratic::{graded_pieces, ChainComplex, GradedAlgebra, QuadraticPresentation, Strand};
use crate::subspace::Subspace;
use std::sync::Arc;

/// The overlap space `R (x)_S M  ∩  M (x)_S R` inside the third tensor
/// power, with coordinates on both sides of the intersection.
pub struct OverlapSpace {
    /// The intersection as a subspace of pow(3).
    pub space: Subspace,
    /// `R (x)_S M` coordinates -> pow(3).
    pub left_embed: Matrix,
    /// `M (x)_S R` coordinates -> pow(3).
    pub right_embed: Matrix,
    /// Overlap basis expressed in `R (x)_S M` coordinates (columns).
    pub left_coords: Matrix,
    /// Overlap basis expressed in `M (x)_S R` coordinates (columns).
    pub right_coords: Matrix,
    pub ts_left: TensorSpace,
    pub ts_right: TensorSpace,
}

pub fn overlap_space(pres: &QuadraticPresentation) -> Result<OverlapSpace, KoszulError> {
    assert!(pres.deg_max() >= 3, "need tensor powers up to degree 3");
    let field = pres.field();
    let tensor = &pres.tensor;
    let m = tensor.module.dim;
    let incl_r = pres.relations.basis.transpose();
    let r_bimod = Arc::new(tensor.pow[2].restrict(&pres.relations)?);
    let ts_left = tensor_over_s(&r_bimod, &tensor.module)?;
    let ts_right = tensor_over_s(&tensor.module, &r_bimod)?;
    let left_embed = tensor
        .concat(2, 1)
        .mul(&incl_r.kron(&Matrix::identity(field, m)))
        .mul(&ts_left.section);
    let right_embed = tensor
        .concat(1, 2)
        .mul(&Matrix::identity(field, m).kron(&incl_r))
        .mul(&ts_right.section);
    let space = Subspace::from_matrix_cols(&left_embed)
        .intersect(&Subspace::from_matrix_cols(&right_embed))?;
    let w = space.basis.transpose(); // pow(3)-dim x overlap-dim
    let left_coords = left_embed
        .solve_matrix(&w)
        .ok_or_else(|| KoszulError::Validation("overlap coordinate solve failed".into()))?;
    let right_coords = right_embed
        .solve_matrix(&w)
        .ok_or_else(|| KoszulError::Validation("overlap coordinate solve failed".into()))?;
    Ok(OverlapSpace { space, left_embed, right_embed, left_coords, right_coords, ts_left, ts_right })
}

/// Verdict of the mode-A checker: relations deformed by `theta : R -> S`.
#[derive(Debug)]
pub struct ModeAVerdict {
    /// Does `M (x)_S R ∩ R (x)_S M = 0` hold?
    pub precondition_pdim2: bool,
    /// A nonzero overlap vector in pow(3) coordinates if not.
    pub precondition_witness: Option<Vec<Scalar>>,
    /// Does theta commute with both S-actions?
    pub theta_bimodule: bool,
    /// First failing (side, basis element of S, basis element of R).
    pub theta_witness: Option<(Side, usize, usize)>,
    pub predicted_pbw: bool,
}

/// Mode A: `U = T_S(M)/(r - theta(r))` is flat iff theta is an S-bimodule
/// morphism, provided the depth-2 overlap precondition holds.
pub fn check_pbw_a(
    pres: &QuadraticPresentation,
    theta: &Matrix,
) -> Result<ModeAVerdict, KoszulError> {
    let s_dim = pres.tensor.algebra.dim;
    let rdim = pres.relations.dim();
    if theta.rows != s_dim || theta.cols != rdim {
        return Err(KoszulError::DimMismatch(format!(
            "theta must be {s_dim} x {rdim}, got {} x {}",
            theta.rows, theta.cols
        )));
    }
    let overlap = overlap_space(pres)?;
    let precondition_pdim2 = overlap.space.dim() == 0;
    let precondition_witness =
        if precondition_pdim2 { None } else { Some(overlap.space.basis_vector(0)) };
    let r_bimod = pres.tensor.pow[2].restrict(&pres.relations)?;
    let regular = Bimodule::regular(&pres.tensor.algebra);
    let theta_witness = linearity_witness(theta, &r_bimod, &regular);
    let theta_bimodule = theta_witness.is_none();
    Ok(ModeAVerdict {
        predicted_pbw: precondition_pdim2 && theta_bimodule,
        precondition_pdim2,
        precondition_witness,
        theta_bimodule,
        theta_witness,
    })
}

/// First (side, s, source column) where `map` fails to intertwine the
/// S-actions of `src` and `tgt`.
fn linearity_witness(map: &Matrix, src: &Bimodule, tgt: &Bimodule) -> Option<(Side, usize, usize)> {
    for si in 0..src.algebra.dim {
        for (side, a, b) in [
            (Side::Left, &src.left[si], &tgt.left[si]),
            (Side::Right, &src.right[si], &tgt.right[si]),
        ] {
            let lhs = map.mul(a);
            let rhs = b.mul(map);
            if lhs != rhs {
                let col = (0..map.cols)
                    .find(|&c| (0..lhs.rows).any(|r| lhs.get(r, c) != rhs.get(r, c)))
                    .unwrap();
                return Some((side, si, col));
            }
        }
    }
    None
}

/// Verdict of the mode-B checker on a smash-type presentation.
#[derive(Debug)]
pub struct ModeBVerdict {
    /// `(phi (x)_S id - id (x)_S phi)` maps the overlap space into R.
    pub condition_i: bool,
    /// `phi(phi (x)_S id - id (x)_S phi) = -(theta (x)_S id - id (x)_S theta)`.
    pub condition_ii: bool,
    /// `theta(id (x)_S phi - phi (x)_S id) = 0`.
    pub condition_iii: bool,
    /// First failing overlap-basis index per condition.
    pub witness_i: Option<usize>,
    pub witness_ii: Option<usize>,
    pub witness_iii: Option<usize>,
    pub overlap_dim: usize,
    pub predicted_pbw: bool,
}

/// Mode B: deform a smash-type presentation by `phi : R -> M` and
/// `theta : R -> S`. Both maps must be S-bimodule morphisms (the braided
/// equivariance law); flatness is predicted by three conditions evaluated on
/// the overlap space.
pub fn check_pbw_b(
    pres: &QuadraticPresentation,
    phi: &Matrix,
    theta: &Matrix,
) -> Result<ModeBVerdict, KoszulError> {
    let field = pres.field();
    let tensor = &pres.tensor;
    let s_dim = tensor.algebra.dim;
    let m_dim = tensor.module.dim;
    let rdim = pres.relations.dim();
    if phi.rows != m_dim || phi.cols != rdim || theta.rows != s_dim || theta.cols != rdim {
        return Err(KoszulError::DimMismatch("phi must be dim M x dim R, theta dim S x dim R".into()));
    }
    require_smash_type(pres)?;
    let r_bimod = pres.tensor.pow[2].restrict(&pres.relations)?;
    let regular = Bimodule::regular(&tensor.algebra);
    if let Some((_, s, r)) = linearity_witness(phi, &r_bimod, &tensor.module) {
        return Err(KoszulError::EquivarianceFailed(s, r));
    }
    if let Some((_, s, r)) = linearity_witness(theta, &r_bimod, &regular) {
        return Err(KoszulError::EquivarianceFailed(s, r));
    }
    let overlap = overlap_space(pres)?;
    let n = overlap.space.dim();
    let eye_m = Matrix::identity(field, m_dim);
    let incl_r = pres.relations.basis.transpose();
    // phi and theta applied to the left or right relation factor, landing in
    // pow(2) and pow(1) respectively
    let phi_left = tensor.concat(1, 1).mul(&phi.kron(&eye_m)).mul(&overlap.ts_left.section);
    let phi_right = tensor.concat(1, 1).mul(&eye_m.kron(phi)).mul(&overlap.ts_right.section);
    let th_left = tensor.concat(0, 1).mul(&theta.kron(&eye_m)).mul(&overlap.ts_left.section);
    let th_right = tensor.concat(1, 0).mul(&eye_m.kron(theta)).mul(&overlap.ts_right.section);
    // d1 = (phi (x)_S id - id (x)_S phi) on the overlap basis, in pow(2)
    let d1 = phi_left.mul(&overlap.left_coords).sub(&phi_right.mul(&overlap.right_coords));
    let witness_i =
        (0..n).find(|&c| !pres.relations.contains(&d1.col(c)));
    let condition_i = witness_i.is_none();
    let (condition_ii, condition_iii, witness_ii, witness_iii) = if condition_i {
        let c = incl_r
            .solve_matrix(&d1)
            .ok_or_else(|| KoszulError::Validation("relation coordinate solve failed".into()))?;
        // (ii): phi(d1) + (theta (x)_S id - id (x)_S theta) = 0
        let lhs2 = phi
            .mul(&c)
            .add(&th_left.mul(&overlap.left_coords))
            .sub(&th_right.mul(&overlap.right_coords));
        let w2 = (0..n).find(|&j| (0..lhs2.rows).any(|i| !lhs2.get(i, j).is_zero()));
        // (iii): theta applied to -(d1), which is (id (x)_S phi - phi (x)_S id)
        let lhs3 = theta.mul(&c.neg());
        let w3 = (0..n).find(|&j| (0..lhs3.rows).any(|i| !lhs3.get(i, j).is_zero()));
        (w2.is_none(), w3.is_none(), w2, w3)
    } else {
        // phi cannot be applied to the defect, so (ii)/(iii) are unevaluable;
        // the prediction is already negative
        (false, false, None, None)
    };
    Ok(ModeBVerdict {
        predicted_pbw: condition_i && condition_ii && condition_iii,
        condition_i,
        condition_ii,
        condition_iii,
        witness_i,
        witness_ii,
        witness_iii,
        overlap_dim: n,
    })
}

/// Mode B only applies to presentations whose relation bimodule has the
/// product shape `R_0 (x) S` in braided coordinates.
fn require_smash_type(pres: &QuadraticPresentation) -> Result<(), KoszulError> {
    let field = pres.field();
    let tensor = &pres.tensor;
    let braiding =
        braiding_from_bimodule(&tensor.module, 0, 64).map_err(|_| KoszulError::NotSmashType)?;
    let s = tensor.algebra.dim;
    let v = braiding.v_dim;
    // collapse pow(2) into V (x) V (x) S coordinates
    let kappa = Matrix::identity(field, v * v)
        .kron(&tensor.algebra.mult_matrix())
        .mul(&Matrix::identity(field, v).kron(&braiding.psi).kron(&Matrix::identity(field, s)))
        .mul(&tensor.sec_plain[2]);
    let images: Vec<Vec<Scalar>> =
        (0..pres.relations.dim()).map(|i| kappa.apply(&pres.relations.basis_vector(i))).collect();
    let w = Subspace::from_span(field, v * v * s, &images);
    // contract away the S leg to get the candidate generator space in V (x) V
    let mut slices = Vec::new();
    for img in &images {
        for j in 0..s {
            slices.push((0..v * v).map(|ab| img[ab * s + j].clone()).collect::<Vec<_>>());
        }
    }
    let r0 = Subspace::from_span(field, v * v, &slices);
    if w.dim() != r0.dim() * s {
        return Err(KoszulError::NotSmashType);
    }
    for i in 0..r0.dim() {
        let base = r0.basis_vector(i);
        for j in 0..s {
            let mut vec = vec![field.zero(); v * v * s];
            for ab in 0..v * v {
                vec[ab * s + j] = base[ab].clone();
            }
            if !w.contains(&vec) {
                return Err(KoszulError::NotSmashType);
            }
        }
    }
    Ok(())
}

/// Filtered dimension table of the deformed algebra, computed by truncating
/// the deformation ideal with generator sandwiches up to saturation degree.
#[derive(Debug, Clone)]
pub struct FilteredDims {
    pub n_max: usize,
    pub n_sat: usize,
    /// dim F_k for k = 0..=n_max (from the deeper saturation pass).
    pub dims: Vec<usize>,
    /// Per k: did the two saturation passes agree?
    pub stabilized: Vec<bool>,
    /// dim B_k of the associated graded algebra, for reference.
    pub graded_dims: Vec<usize>,
}

/// Ground-truth engine: truncate the ideal `(r - phi(r) - theta(r))` by
/// spanning all sandwiches `x . g . y` up to total degree `n_sat` (and once
/// more at `n_sat + 1` to flag stabilization), then read off
/// `dim F_k = dim T^{<=k} - dim(W ∩ T^{<=k})`.
pub fn oracle_filtered_dims(
    pres: &QuadraticPresentation,
    phi: &Matrix,
    theta: &Matrix,
    n_max: usize,
    n_sat: usize,
) -> Result<FilteredDims, KoszulError> {
    let n_sat = n_sat.max(n_max);
    if pres.deg_max() < n_sat + 1 {
        return Err(KoszulError::Validation(format!(
            "presentation holds tensor powers up to {}, saturation needs {}",
            pres.deg_max(),
            n_sat + 1
        )));
    }
    let tensor = &pres.tensor;
    let s_dim = tensor.algebra.dim;
    let m_dim = tensor.module.dim;
    let rdim = pres.relations.dim();
    if phi.rows != m_dim || phi.cols != rdim || theta.rows != s_dim || theta.cols != rdim {
        return Err(KoszulError::DimMismatch("phi must be dim M x dim R, theta dim S x dim R".into()));
    }
    let graded = graded_pieces(pres, n_max)?;
    let graded_dims: Vec<usize> = (0..=n_max).map(|k| graded.dim(k)).collect();
    let cumulative: Vec<usize> = (0..=n_max)
        .map(|k| (0..=k).map(|d| tensor.dim(d)).sum())
        .collect();
    if phi.is_zero() && theta.is_zero() {
        // homogeneous ideal: F_k is exactly the truncated graded algebra
        let mut dims = Vec::new();
        let mut acc = 0;
        for k in 0..=n_max {
            acc += graded_dims[k];
            dims.push(acc);
        }
        return Ok(FilteredDims {
            n_max,
            n_sat,
            dims,
            stabilized: vec![true; n_max + 1],
            graded_dims,
        });
    }
    let w1 = ideal_truncation_dims(pres, phi, theta, n_sat, n_max);
    let w2 = ideal_truncation_dims(pres, phi, theta, n_sat + 1, n_max);
    let mut dims = Vec::with_capacity(n_max + 1);
    let mut stabilized = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        assert!(w2[k] >= w1[k], "ideal truncation must grow with the saturation degree");
        dims.push(cumulative[k] - w2[k]);
        stabilized.push(w1[k] == w2[k]);
    }
    assert!(dims[0] <= s_dim, "F_0 is a quotient of S");
    let mut prev = 0;
    for k in 0..=n_max {
        assert!(
            dims[k] - prev <= graded_dims[k],
            "filtered layer exceeds the graded dimension at degree {k}"
        );
        prev = dims[k];
    }
    Ok(FilteredDims { n_max, n_sat, dims, stabilized, graded_dims })
}

/// `dim(W(np) ∩ T^{<=k})` for k = 0..=n_max, where W(np) is the span of all
/// generator sandwiches of total degree <= np.
fn ideal_truncation_dims(
    pres: &QuadraticPresentation,
    phi: &Matrix,
    theta: &Matrix,
    np: usize,
    n_max: usize,
) -> Vec<usize> {
    let field = pres.field();
    let tensor = &pres.tensor;
    let rdim = pres.relations.dim();
    let incl_r = pres.relations.basis.transpose();
    let mut offsets = vec![0usize];
    for d in 0..=np {
        offsets.push(offsets[d] + tensor.dim(d));
    }
    let total = offsets[np + 1];
    // generator components by degree: g = iota(r) - phi(r) - theta(r)
    let comps = [theta.neg(), phi.neg(), incl_r];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..=np.saturating_sub(2) {
        for j in 0..=np - 2 - i {
            let left: Vec<Matrix> = (0..3).map(|d| tensor.concat(i, d)).collect();
            let right: Vec<Matrix> = (0..3).map(|d| tensor.concat(i + d, j)).collect();
            for a in 0..rdim {
                let gs: Vec<Vec<Scalar>> = (0..3).map(|d| comps[d].col(a)).collect();
                for x in 0..tensor.dim(i) {
                    let ex = unit_vec(field, tensor.dim(i), x);
                    for y in 0..tensor.dim(j) {
                        let ey = unit_vec(field, tensor.dim(j), y);
                        let mut row = vec![field.zero(); total];
                        for d in 0..3 {
                            if gs[d].iter().all(|c| c.is_zero()) {
                                continue;
                            }
                            let mid = left[d].apply(&vec_kron(field, &ex, &gs[d]));
                            let out = right[d].apply(&vec_kron(field, &mid, &ey));
                            let off = offsets[i + d + j];
                            for (k, c) in out.into_iter().enumerate() {
                                row[off + k] = row[off + k].add(&c);
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    let w = Subspace::from_span(field, total, &rows);
    let basis = &w.basis; // RREF rows
    (0..=n_max)
        .map(|k| {
            let tail_cols: Vec<usize> = (offsets[k + 1]..total).collect();
            let all_rows: Vec<usize> = (0..basis.rows).collect();
            w.dim() - basis.submatrix(&all_rows, &tail_cols).rank()
        })
        .collect()
}

#[derive(Debug)]
pub struct OracleVerdict {
    pub filtered: FilteredDims,
    pub all_stabilized: bool,
    /// Every filtered layer matches the graded dimension, with all degrees
    /// stabilized.
    pub pbw: bool,
}

pub fn is_pbw_up_to(
    pres: &QuadraticPresentation,
    phi: &Matrix,
    theta: &Matrix,
    n_max: usize,
    n_sat: usize,
) -> Result<OracleVerdict, KoszulError> {
    let filtered = oracle_filtered_dims(pres, phi, theta, n_max, n_sat)?;
    let all_stabilized = filtered.stabilized.iter().all(|&b| b);
    let mut layers_match = true;
    let mut prev = 0;
    for k in 0..=n_max {
        if filtered.dims[k] - prev != filtered.graded_dims[k] {
            layers_match = false;
        }
        prev = filtered.dims[k];
    }
    Ok(OracleVerdict { pbw: layers_match && all_stabilized, all_stabilized, filtered })
}

/// The mode-A deformation determined by a free generator `r0` of the
/// relation bimodule and an element `e` of S: `theta(r0 . s) = e . s`.
pub fn theta_from_free_generator(
    pres: &QuadraticPresentation,
    r0: &[Scalar],
    e: &[Scalar],
) -> Result<Matrix, KoszulError> {
    let field = pres.field();
    let s = &pres.tensor.algebra;
    let r_bimod = pres.tensor.pow[2].restrict(&pres.relations)?;
    let rdim = r_bimod.dim;
    if rdim != s.dim {
        return Err(KoszulError::SigmaDimMismatch(rdim, s.dim));
    }
    let mut rmul = Matrix::zero(field, rdim, s.dim);
    for si in 0..s.dim {
        let img = r_bimod.right[si].apply(r0);
        for k in 0..rdim {
            rmul.set(k, si, img[k].clone());
        }
    }
    let inv = rmul
        .inverse()
        .map_err(|_| KoszulError::Validation("r0 does not generate R freely on the right".into()))?;
    Ok(s.left_mult_matrix(e).mul(&inv))
}

// ---------------------------------------------------------------------------
// Splitting maps and the depth-2 bimodule resolution
// ---------------------------------------------------------------------------

/// The three columns of the depth-2 double complex: the relation strand, the
/// generator strand, and the base strand.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Col {
    Rel,
    Gen,
    Base,
}

impl Col {
    fn deg(self) -> usize {
        match self {
            Col::Rel => 2,
            Col::Gen => 1,
            Col::Base => 0,
        }
    }
}

/// All the data needed to write down the depth-2 bimodule resolution in
/// fixed coordinates: graded pieces of B, right-module splittings, the
/// section maps, and per-degree cell bookkeeping.
pub struct SplittingMaps {
    pub graded: GradedAlgebra,
    /// Right-linear splitting `M -> M (x) S` of the action.
    pub rho_m: Matrix,
    /// Right-linear splitting `B_2 -> B_2 (x) S` of the action.
    pub rho_b2: Matrix,
    /// Right-linear retraction `pow(2) -> R` of the inclusion.
    pub xi: Matrix,
    /// Section `pow(2) -> M (x) M` of the plain projection, built from rho_m.
    pub zeta: Matrix,
    /// `R -> M (x) M (x) S`: zeta followed by splitting the middle factor.
    pub alpha: Matrix,
    field: FieldSpec,
    s_dim: usize,
    m_dim: usize,
    deg_max: usize,
    /// sec_plain[2] restricted to R.
    s2i: Matrix,
    /// zeta restricted to R.
    zi: Matrix,
    mult_s: Matrix,
    ts_r: Vec<TensorSpace>,
    ts_m: Vec<TensorSpace>,
    lact_b: Vec<Matrix>,
    lact_r: Vec<Matrix>,
    lact_g: Vec<Matrix>,
    ra_b: Vec<Matrix>,
}

/// Left action of S on a bimodule as a single matrix `S (x) X -> X`.
fn left_action_matrix(bm: &Bimodule) -> Matrix {
    let field = bm.field();
    let s = bm.algebra.dim;
    let mut m = Matrix::zero(field, bm.dim, s * bm.dim);
    for si in 0..s {
        for x in 0..bm.dim {
            let out = bm.left[si].apply(&unit_vec(field, bm.dim, x));
            for k in 0..bm.dim {
                m.set(k, si * bm.dim + x, out[k].clone());
            }
        }
    }
    m
}

pub fn splitting_maps(
    pres: &QuadraticPresentation,
    deg_max: usize,
) -> Result<SplittingMaps, KoszulError> {
    assert!(deg_max >= 2 && deg_max <= pres.deg_max());
    let field = pres.field();
    let tensor = &pres.tensor;
    let s_dim = tensor.algebra.dim;
    let m_dim = tensor.module.dim;
    let graded = graded_pieces(pres, deg_max)?;
    let rho_m = compute_section(&tensor.module).map_err(|_| KoszulError::SplittingMissing)?;
    let rho_b2 = compute_section(&graded.piece[2]).map_err(|_| KoszulError::SplittingMissing)?;
    let r_bimod = Arc::new(tensor.pow[2].restrict(&pres.relations)?);
    let rdim = r_bimod.dim;
    let incl_r = pres.relations.basis.transpose();
    let d2 = tensor.dim(2);
    // xi: right-linear retraction of the inclusion R -> pow(2)
    let xi = {
        let mut lhs_rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        push_matrix_eq(
            &mut lhs_rows,
            &mut rhs,
            &Matrix::identity(field, rdim),
            Some(&incl_r),
            rdim,
            d2,
            &Matrix::identity(field, rdim),
        );
        for si in 0..s_dim {
            push_sylvester_eq(
                &mut lhs_rows,
                &mut rhs,
                &tensor.pow[2].right[si],
                &r_bimod.right[si],
                rdim,
                d2,
            );
        }
        let system = Matrix::from_rows(field, lhs_rows);
        let sol = system.solve(&rhs).ok_or(KoszulError::SplittingMissing)?;
        let mut xi = Matrix::zero(field, rdim, d2);
        for i in 0..rdim {
            for j in 0..d2 {
                xi.set(i, j, sol[i * d2 + j].clone());
            }
        }
        xi
    };
    let lact_m = left_action_matrix(&tensor.module);
    let eye_m = Matrix::identity(field, m_dim);
    let zeta = eye_m
        .kron(&lact_m)
        .mul(&rho_m.kron(&eye_m))
        .mul(&tensor.sec_plain[2]);
    debug_assert_eq!(tensor.proj_plain[2].mul(&zeta), Matrix::identity(field, d2));
    let zi = zeta.mul(&incl_r);
    let s2i = tensor.sec_plain[2].mul(&incl_r);
    let alpha = eye_m.kron(&rho_m).mul(&zi);
    let mut ts_r = Vec::new();
    let mut ts_m = Vec::new();
    let mut lact_r = Vec::new();
    let mut lact_g = Vec::new();
    for q in 0..=deg_max {
        if q + 2 <= deg_max {
            let t = tensor_over_s(&r_bimod, &graded.piece[q])?;
            lact_r.push(left_action_matrix(&t.bimodule));
            ts_r.push(t);
        }
        if q + 1 <= deg_max {
            let t = tensor_over_s(&tensor.module, &graded.piece[q])?;
            lact_g.push(left_action_matrix(&t.bimodule));
            ts_m.push(t);
        }
    }
    let lact_b = (0..=deg_max).map(|q| left_action_matrix(&graded.piece[q])).collect();
    let ra_b = (0..=deg_max).map(|p| right_action_map(&graded.piece[p])).collect();
    Ok(SplittingMaps {
        mult_s: tensor.algebra.mult_matrix(),
        graded,
        rho_m,
        rho_b2,
        xi,
        zeta,
        alpha,
        field,
        s_dim,
        m_dim,
        deg_max,
        s2i,
        zi,
        ts_r,
        ts_m,
        lact_b,
        lact_r,
        lact_g,
        ra_b,
    })
}

impl SplittingMaps {
    fn b(&self, p: usize) -> usize {
        self.graded.dim(p)
    }

    fn spow(&self, m: usize) -> usize {
        self.s_dim.pow(m as u32)
    }

    fn nq(&self, col: Col, q: usize) -> usize {
        match col {
            Col::Rel => self.ts_r[q].quotient_dim,
            Col::Gen => self.ts_m[q].quotient_dim,
            Col::Base => self.b(q),
        }
    }

    fn cells(&self, t: usize, col: Col) -> Vec<(usize, usize)> {
        let deg = col.deg();
        if t < deg {
            return Vec::new();
        }
        (0..=t - deg).map(|p| (p, t - deg - p)).collect()
    }

    fn comp_dim(&self, t: usize, m: usize, col: Col) -> usize {
        self.cells(t, col).iter().map(|&(p, q)| self.b(p) * self.spow(m) * self.nq(col, q)).sum()
    }

    fn offsets(&self, t: usize, m: usize, col: Col) -> Vec<usize> {
        let mut off = vec![0usize];
        for &(p, q) in &self.cells(t, col) {
            off.push(off.last().unwrap() + self.b(p) * self.spow(m) * self.nq(col, q));
        }
        off
    }

    fn eye(&self, n: usize) -> Matrix {
        Matrix::identity(self.field, n)
    }

    /// Bar differential on the `col` column, bar level m -> m - 1; all terms
    /// preserve the (p, q) cell.
    fn bar_del(&self, t: usize, m: usize, col: Col) -> Matrix {
        assert!(m >= 1);
        let src_off = self.offsets(t, m, col);
        let tgt_off = self.offsets(t, m - 1, col);
        let mut out =
            Matrix::zero(self.field, self.comp_dim(t, m - 1, col), self.comp_dim(t, m, col));
        for (ci, &(p, q)) in self.cells(t, col).iter().enumerate() {
            let nq = self.nq(col, q);
            let lact = match col {
                Col::Rel => &self.lact_r[q],
                Col::Gen => &self.lact_g[q],
                Col::Base => &self.lact_b[q],
            };
            let mut d = self.ra_b[p].kron(&self.eye(self.spow(m - 1) * nq));
            for k in 1..m {
                let block = self
                    .eye(self.b(p) * self.spow(k - 1))
                    .kron(&self.mult_s)
                    .kron(&self.eye(self.spow(m - 1 - k) * nq));
                d = if k % 2 == 1 { d.sub(&block) } else { d.add(&block) };
            }
            let last = self.eye(self.b(p) * self.spow(m - 1)).kron(lact);
            d = if m % 2 == 1 { d.sub(&last) } else { d.add(&last) };
            out.paste(tgt_off[ci], src_off[ci], &d);
        }
        out
    }

    /// The comparison map from the relation column into the generator column
    /// at bar level 0: split one factor off each relation, push its S-part
    /// left or its second factor right.
    pub fn rel_to_gen_base(&self, t: usize) -> Matrix {
        let src_off = self.offsets(t, 0, Col::Rel);
        let tgt_off = self.offsets(t, 0, Col::Gen);
        let mut out =
            Matrix::zero(self.field, self.comp_dim(t, 0, Col::Gen), self.comp_dim(t, 0, Col::Rel));
        for (ci, &(p, q)) in self.cells(t, Col::Rel).iter().enumerate() {
            let src = self.eye(self.b(p)).kron(&self.ts_r[q].section);
            // first factor's module part joins the left leg: cell (p+1, q)
            let a = self
                .eye(self.b(p + 1))
                .kron(&self.ts_m[q].projection)
                .mul(&self.graded.mult(p, 1).kron(&self.eye(self.m_dim * self.b(q))))
                .mul(&self.eye(self.b(p)).kron(&self.zi).kron(&self.eye(self.b(q))))
                .mul(&src);
            out.accumulate(tgt_off[p + 1], src_off[ci], &a);
            // second factor joins the right leg: cell (p, q+1)
            let core = self.ts_m[q + 1]
                .projection
                .mul(&self.eye(self.m_dim).kron(&self.graded.mult(1, q)))
                .mul(&self.s2i.kron(&self.eye(self.b(q))));
            let b = self.eye(self.b(p)).kron(&core).mul(&src);
            out.accumulate(tgt_off[p], src_off[ci], &b);
        }
        out
    }

    /// The comparison map from the generator column into `B (x) B` at bar
    /// level 0: split the generator and absorb it left, minus absorbing it
    /// right.
    pub fn gen_to_out_base(&self, t: usize) -> Matrix {
        let src_off = self.offsets(t, 0, Col::Gen);
        let tgt_off = self.offsets(t, 0, Col::Base);
        let mut out =
            Matrix::zero(self.field, self.comp_dim(t, 0, Col::Base), self.comp_dim(t, 0, Col::Gen));
        for (ci, &(p, q)) in self.cells(t, Col::Gen).iter().enumerate() {
            let src = self.eye(self.b(p)).kron(&self.ts_m[q].section);
            let core = self
                .eye(self.m_dim)
                .kron(&self.lact_b[q])
                .mul(&self.rho_m.kron(&self.eye(self.b(q))));
            let a = self
                .graded
                .mult(p, 1)
                .kron(&self.eye(self.b(q)))
                .mul(&self.eye(self.b(p)).kron(&core))
                .mul(&src);
            out.accumulate(tgt_off[p + 1], src_off[ci], &a);
            let b = self.eye(self.b(p)).kron(&self.graded.mult(1, q)).mul(&src);
            out.accumulate(tgt_off[p], src_off[ci], &b.neg());
        }
        out
    }

    /// The base homotopy `B (x) R (x)_S B -> B (x) S (x) B` built from the
    /// splittings.
    pub fn homotopy_base(&self, t: usize) -> Matrix {
        let s = self.s_dim;
        let src_off = self.offsets(t, 0, Col::Rel);
        let tgt_off = self.offsets(t, 1, Col::Base);
        let mut out =
            Matrix::zero(self.field, self.comp_dim(t, 1, Col::Base), self.comp_dim(t, 0, Col::Rel));
        // cores on a bare relation: R -> B_2 (x) S (x) S and R -> M (x) S (x) M
        let c_i = self
            .graded
            .mult(1, 1)
            .kron(&self.eye(s * s))
            .mul(&self.eye(self.m_dim).kron(&self.rho_m).kron(&self.eye(s)))
            .mul(&self.alpha);
        let c_ii = self
            .rho_b2
            .kron(&self.eye(s))
            .mul(&self.graded.mult(1, 1).kron(&self.eye(s)))
            .mul(&self.alpha);
        let core2 = c_ii.sub(&c_i);
        let c_iii = self.rho_m.kron(&self.eye(self.m_dim)).mul(&self.zi);
        for (ci, &(p, q)) in self.cells(t, Col::Rel).iter().enumerate() {
            let src = self.eye(self.b(p)).kron(&self.ts_r[q].section);
            // cell (p+2, q)
            let e1 = self
                .eye(self.b(p + 2) * s)
                .kron(&self.lact_b[q])
                .mul(&self.graded.mult(p, 2).kron(&self.eye(s * s * self.b(q))))
                .mul(&self.eye(self.b(p)).kron(&core2).kron(&self.eye(self.b(q))))
                .mul(&src);
            out.accumulate(tgt_off[p + 2], src_off[ci], &e1);
            // cell (p+1, q+1)
            let e2 = self
                .eye(self.b(p + 1) * s)
                .kron(&self.graded.mult(1, q))
                .mul(&self.graded.mult(p, 1).kron(&self.eye(s * self.m_dim * self.b(q))))
                .mul(&self.eye(self.b(p)).kron(&c_iii).kron(&self.eye(self.b(q))))
                .mul(&src);
            out.accumulate(tgt_off[p + 1], src_off[ci], &e2.neg());
        }
        out
    }

    /// Exact matrix identity: merging the base homotopy equals the composite
    /// of the two comparison maps, in every internal degree up to the bound.
    pub fn homotopy_identity_holds(&self, t_max: usize) -> bool {
        (2..=t_max.min(self.deg_max)).all(|t| {
            let lhs = self.bar_del(t, 1, Col::Base).mul(&self.homotopy_base(t));
            let rhs = self.gen_to_out_base(t).mul(&self.rel_to_gen_base(t));
            lhs == rhs
        })
    }
}

/// Convenience wrapper: build the splitting maps and check the homotopy
/// identity in all internal degrees up to `deg_max`.
pub fn verify_homotopy_identity(
    pres: &QuadraticPresentation,
    deg_max: usize,
) -> Result<bool, KoszulError> {
    let maps = splitting_maps(pres, deg_max)?;
    Ok(maps.homotopy_identity_holds(deg_max))
}

fn solve_against(a: &Matrix, rhs: &Matrix, t: usize) -> Result<Matrix, KoszulError> {
    if rhs.cols == 0 {
        return Ok(Matrix::zero(a.field, a.cols, 0));
    }
    if a.rows == 0 || a.cols == 0 {
        if rhs.is_zero() {
            return Ok(Matrix::zero(a.field, a.cols, rhs.cols));
        }
        return Err(KoszulError::HomotopySolveFailed(t));
    }
    a.solve_matrix(rhs).ok_or(KoszulError::HomotopySolveFailed(t))
}

/// The depth-2 bimodule resolution of B: per internal degree, a strand with
/// position 0 the algebra itself, position 1 the free cover `B (x) B`, and
/// position n+1 the three-column component with the relation, generator and
/// base strands at bar levels n-2, n-1, n. The higher comparison maps and
/// homotopies are found by exact linear solving against the bar
/// differentials.
pub fn build_p_complex_pdim2(
    pres: &QuadraticPresentation,
    hom_depth: usize,
    deg_max: usize,
) -> Result<ChainComplex, KoszulError> {
    assert!(hom_depth >= 2);
    if overlap_space(pres)?.space.dim() != 0 {
        return Err(KoszulError::Pdim2PreconditionFailed);
    }
    let maps = splitting_maps(pres, deg_max)?;
    let field = pres.field();
    let mut strands = Vec::new();
    for t in 0..=deg_max {
        let bar_rel: Vec<Matrix> = (1..=hom_depth.saturating_sub(2))
            .map(|m| maps.bar_del(t, m, Col::Rel))
            .collect();
        let bar_gen: Vec<Matrix> =
            (1..hom_depth).map(|m| maps.bar_del(t, m, Col::Gen)).collect();
        let bar_base: Vec<Matrix> =
            (1..=hom_depth).map(|m| maps.bar_del(t, m, Col::Base)).collect();
        // lifted comparison maps and homotopies, level by level
        let mut th2 = vec![maps.rel_to_gen_base(t)];
        for m in 1..=hom_depth - 2 {
            th2.push(solve_against(&bar_gen[m - 1], &th2[m - 1].mul(&bar_rel[m - 1]), t)?);
        }
        let mut th1 = vec![maps.gen_to_out_base(t)];
        for m in 1..hom_depth {
            th1.push(solve_against(&bar_base[m - 1], &th1[m - 1].mul(&bar_gen[m - 1]), t)?);
        }
        let mut h = vec![maps.homotopy_base(t)];
        for m in 1..=hom_depth - 2 {
            let rhs = th1[m].mul(&th2[m]).sub(&h[m - 1].mul(&bar_rel[m - 1]));
            h.push(solve_against(&bar_base[m], &rhs, t)?);
        }
        // strand layout
        let mut dims = vec![maps.graded.dim(t), maps.comp_dim(t, 0, Col::Base)];
        for n in 1..=hom_depth {
            let d = if n == 1 {
                maps.comp_dim(t, 0, Col::Gen) + maps.comp_dim(t, 1, Col::Base)
            } else {
                maps.comp_dim(t, n - 2, Col::Rel)
                    + maps.comp_dim(t, n - 1, Col::Gen)
                    + maps.comp_dim(t, n, Col::Base)
            };
            dims.push(d);
        }
        let mut diffs = Vec::new();
        // augmentation: multiply the two legs
        let mut aug = Matrix::zero(field, dims[0], dims[1]);
        let off0 = maps.offsets(t, 0, Col::Base);
        for (ci, &(p, q)) in maps.cells(t, Col::Base).iter().enumerate() {
            aug.paste(0, off0[ci], &maps.graded.mult(p, q));
        }
        diffs.push(aug);
        let mut d1 = Matrix::zero(field, dims[1], dims[2]);
        d1.paste(0, 0, &th1[0]);
        d1.paste(0, maps.comp_dim(t, 0, Col::Gen), &bar_base[0]);
        diffs.push(d1);
        for n in 2..=hom_depth {
            let src_g = maps.comp_dim(t, n - 2, Col::Rel);
            let src_b = src_g + maps.comp_dim(t, n - 1, Col::Gen);
            let (tgt_g, tgt_b) = if n == 2 {
                (0, maps.comp_dim(t, 0, Col::Gen))
            } else {
                let tg = maps.comp_dim(t, n - 3, Col::Rel);
                (tg, tg + maps.comp_dim(t, n - 2, Col::Gen))
            };
            let mut d = Matrix::zero(field, dims[n], dims[n + 1]);
            if n >= 3 {
                d.paste(0, 0, &bar_rel[n - 3]);
            }
            d.paste(tgt_g, 0, &th2[n - 2]);
            d.paste(tgt_b, 0, &h[n - 2].neg());
            d.paste(tgt_g, src_g, &bar_gen[n - 2].neg());
            d.paste(tgt_b, src_g, &th1[n - 1]);
            d.paste(tgt_b, src_b, &bar_base[n - 1]);
            diffs.push(d);
        }
        strands.push(Strand { internal_degree: t, dims, diffs });
    }
    Ok(ChainComplex { strands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwine::exact_below_top;
    use crate::fixtures::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn weyl_theta(_pres: &QuadraticPresentation) -> Matrix {
        // theta(x (x) y - y (x) x) = 1 over the base field
        Matrix::from_i64_rows(Q, &[&[1]])
    }

    #[test]
    fn overlap_vanishes_for_two_variables() {
        let pres = polynomial_presentation(Q, 2, 4).unwrap();
        assert_eq!(overlap_space(&pres).unwrap().space.dim(), 0);
    }

    #[test]
    fn overlap_nonzero_for_three_variables() {
        let pres = polynomial_presentation(Q, 3, 4).unwrap();
        // the triple-wedge survives: dimension 1
        assert_eq!(overlap_space(&pres).unwrap().space.dim(), 1);
    }

    #[test]
    fn mode_a_weyl_algebra_flat() {
        let pres = polynomial_presentation(Q, 2, 6).unwrap();
        let theta = weyl_theta(&pres);
        let verdict = check_pbw_a(&pres, &theta).unwrap();
        assert!(verdict.precondition_pdim2);
        assert!(verdict.theta_bimodule);
        assert!(verdict.predicted_pbw);
        let oracle = is_pbw_up_to(&pres, &Matrix::zero(Q, 2, 1), &theta, 4, 5).unwrap();
        assert!(oracle.pbw);
        assert_eq!(oracle.filtered.dims, vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn mode_a_central_element_flat_over_group_algebra() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 6).unwrap();
        let r0 = smash_commutator_generator(&pres);
        let s = pres.tensor.algebra.clone();
        let e = vec![Q.one(), Q.one()]; // 1 + g, central
        let theta = theta_from_free_generator(&pres, &r0, &e).unwrap();
        let verdict = check_pbw_a(&pres, &theta).unwrap();
        assert!(verdict.predicted_pbw, "{verdict:?}");
        let phi0 = Matrix::zero(Q, pres.tensor.module.dim, pres.relations.dim());
        let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
        assert!(oracle.pbw);
        // filtered layers 2(k+1)
        let mut prev = 0;
        for k in 0..=4 {
            assert_eq!(oracle.filtered.dims[k] - prev, 2 * (k + 1));
            prev = oracle.filtered.dims[k];
        }
        assert_eq!(s.dim, 2);
    }

    #[test]
    fn mode_a_noncentral_theta_refuted() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 6).unwrap();
        // theta hitting a single relation basis vector is not right-linear
        let mut theta = Matrix::zero(Q, 2, pres.relations.dim());
        theta.set(0, 0, Q.one());
        let verdict = check_pbw_a(&pres, &theta).unwrap();
        assert!(!verdict.theta_bimodule);
        assert!(verdict.theta_witness.is_some());
        assert!(!verdict.predicted_pbw);
        let phi0 = Matrix::zero(Q, pres.tensor.module.dim, pres.relations.dim());
        let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
        assert!(!oracle.pbw);
        // the ideal eats into degree <= 1: F_1 < dim S + dim M
        assert!(oracle.filtered.dims[1] < 2 + 4);
    }

    #[test]
    fn mode_a_unipotent_char2_flat() {
        let b = unipotent_gf2_braiding();
        let f2 = b.field();
        let pres = smash_commutator_presentation(&b, 6).unwrap();
        let r0 = smash_commutator_generator(&pres);
        let e = vec![f2.one(), f2.zero()]; // 1 is central
        let theta = theta_from_free_generator(&pres, &r0, &e).unwrap();
        let verdict = check_pbw_a(&pres, &theta).unwrap();
        assert!(verdict.predicted_pbw);
        let phi0 = Matrix::zero(f2, pres.tensor.module.dim, pres.relations.dim());
        let oracle = is_pbw_up_to(&pres, &phi0, &theta, 4, 5).unwrap();
        assert!(oracle.pbw);
    }

    #[test]
    fn oracle_zero_deformation_is_graded() {
        let pres = polynomial_presentation(Q, 2, 6).unwrap();
        let f = oracle_filtered_dims(&pres, &Matrix::zero(Q, 2, 1), &Matrix::zero(Q, 1, 1), 4, 5)
            .unwrap();
        assert_eq!(f.dims, vec![1, 3, 6, 10, 15]);
        assert!(f.stabilized.iter().all(|&b| b));
    }

    #[test]
    fn oracle_invariants_on_seeded_deformations() {
        // the monotonicity and layer-bound assertions run inside the oracle
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut theta = Matrix::zero(Q, 2, pres.relations.dim());
            for i in 0..2 {
                for j in 0..pres.relations.dim() {
                    theta.set(i, j, Q.from_i64(rng.gen_range(-2..=2)));
                }
            }
            let phi0 = Matrix::zero(Q, pres.tensor.module.dim, pres.relations.dim());
            let f = oracle_filtered_dims(&pres, &phi0, &theta, 3, 3).unwrap();
            for k in 1..f.dims.len() {
                assert!(f.dims[k] >= f.dims[k - 1]);
            }
        }
    }

    #[test]
    fn mode_b_enveloping_algebra_flat() {
        let (pres, phi, theta) = sl2_deformation(Q, 5).unwrap();
        let verdict = check_pbw_b(&pres, &phi, &theta).unwrap();
        assert!(verdict.condition_i && verdict.condition_ii && verdict.condition_iii);
        assert!(verdict.predicted_pbw);
        let oracle = is_pbw_up_to(&pres, &phi, &theta, 4, 4).unwrap();
        assert!(oracle.pbw);
        // dim F_k = C(k+3, 3)
        assert_eq!(oracle.filtered.dims, vec![1, 4, 10, 20, 35]);
    }

    #[test]
    fn mode_b_broken_bracket_refuted() {
        let (pres, phi, theta) = sl2_broken_deformation(Q, 5).unwrap();
        let verdict = check_pbw_b(&pres, &phi, &theta).unwrap();
        assert!(!verdict.predicted_pbw);
        let oracle = is_pbw_up_to(&pres, &phi, &theta, 4, 4).unwrap();
        assert!(!oracle.pbw);
    }

    #[test]
    fn mode_b_agrees_with_mode_a_for_zero_phi() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 6).unwrap();
        let r0 = smash_commutator_generator(&pres);
        let theta = theta_from_free_generator(&pres, &r0, &[Q.one(), Q.one()]).unwrap();
        let phi0 = Matrix::zero(Q, pres.tensor.module.dim, pres.relations.dim());
        let a = check_pbw_a(&pres, &theta).unwrap();
        let b_verdict = check_pbw_b(&pres, &phi0, &theta).unwrap();
        assert_eq!(a.predicted_pbw, b_verdict.predicted_pbw);
        assert!(b_verdict.predicted_pbw);
    }

    #[test]
    fn mode_b_rejects_non_free_module() {
        let field = Q;
        let s = dual_numbers(field);
        // one-dimensional module with eps acting as zero: not free over S
        let zero = Matrix::zero(field, 1, 1);
        let one = Matrix::identity(field, 1);
        let m = Arc::new(
            Bimodule::new(s.clone(), 1, vec![one.clone(), zero.clone()], vec![one, zero]).unwrap(),
        );
        let pres = QuadraticPresentation::new(&m, Subspace::zero(field, 1), 3).unwrap();
        let phi = Matrix::zero(field, 1, 0);
        let theta = Matrix::zero(field, 2, 0);
        match check_pbw_b(&pres, &phi, &theta) {
            Err(KoszulError::NotSmashType) => {}
            other => panic!("expected NotSmashType, got {other:?}"),
        }
    }

    #[test]
    fn mode_b_equivariance_violation_is_an_error() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 6).unwrap();
        let mut theta = Matrix::zero(Q, 2, pres.relations.dim());
        theta.set(0, 0, Q.one());
        let phi0 = Matrix::zero(Q, pres.tensor.module.dim, pres.relations.dim());
        match check_pbw_b(&pres, &phi0, &theta) {
            Err(KoszulError::EquivarianceFailed(_, _)) => {}
            other => panic!("expected EquivarianceFailed, got {other:?}"),
        }
    }

    #[test]
    fn retraction_and_section_laws() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 4).unwrap();
        let maps = splitting_maps(&pres, 4).unwrap();
        let incl = pres.relations.basis.transpose();
        assert_eq!(maps.xi.mul(&incl), Matrix::identity(Q, pres.relations.dim()));
        assert_eq!(
            pres.tensor.proj_plain[2].mul(&maps.zeta),
            Matrix::identity(Q, pres.tensor.dim(2))
        );
    }

    #[test]
    fn homotopy_identity_classical() {
        let pres = polynomial_presentation(Q, 2, 4).unwrap();
        assert!(verify_homotopy_identity(&pres, 4).unwrap());
    }

    #[test]
    fn homotopy_identity_over_group_algebra() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 4).unwrap();
        assert!(verify_homotopy_identity(&pres, 4).unwrap());
    }

    #[test]
    fn p_complex_classical_exact() {
        let pres = polynomial_presentation(Q, 2, 4).unwrap();
        let complex = build_p_complex_pdim2(&pres, 4, 4).unwrap();
        assert!(complex.d_squared_is_zero());
        assert_eq!(exact_below_top(&complex), None);
    }

    #[test]
    fn p_complex_over_group_algebra_exact() {
        let b = sign_action_braiding(Q);
        let pres = smash_commutator_presentation(&b, 4).unwrap();
        let complex = build_p_complex_pdim2(&pres, 3, 4).unwrap();
        assert!(complex.d_squared_is_zero());
        assert_eq!(exact_below_top(&complex), None);
    }

    #[test]
    fn p_complex_rejects_three_variables() {
        let pres = polynomial_presentation(Q, 3, 4).unwrap();
        match build_p_complex_pdim2(&pres, 3, 4) {
            Err(KoszulError::Pdim2PreconditionFailed) => {}
            Err(other) => panic!("expected Pdim2PreconditionFailed, got {other:?}"),
            Ok(_) => panic!("expected Pdim2PreconditionFailed, got a complex"),
        }
    }
}
