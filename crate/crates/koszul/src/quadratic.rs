//! Quadratic quotients B = T_S(M)/(R): graded pieces, Koszul generator
//! spaces, the one-sided Koszul resolution, the bimodule complex, and
//! bounded-degree Koszulity certification by exact rank counting.

use crate::algebra::{is_projective, tensor_over_s, Bimodule, Side};
use crate::error::KoszulError;
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::tensor::TensorAlgebra;
use std::sync::Arc;

/// A quadratic presentation: the bimodule of generators together with a
/// relation sub-bimodule of its second tensor power, plus the cached tensor
/// powers up to the construction-time degree bound.
pub struct QuadraticPresentation {
    pub tensor: Arc<TensorAlgebra>,
    /// Relations, in the canonical coordinates of `tensor.pow[2]`.
    pub relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(
        module: &Arc<Bimodule>,
        relations: Subspace,
        deg_max: usize,
    ) -> Result<QuadraticPresentation, KoszulError> {
        let tensor = Arc::new(TensorAlgebra::new(module, deg_max.max(2))?);
        if relations.ambient_dim != tensor.dim(2) {
            return Err(KoszulError::AmbientMismatch(relations.ambient_dim, tensor.dim(2)));
        }
        tensor.pow[2]
            .is_sub_bimodule(&relations)
            .map_err(|(s, r)| KoszulError::RNotSubbimodule(s, r))?;
        Ok(QuadraticPresentation { tensor, relations })
    }

    /// Relation span given by vectors in plain `M (x)_k M` coordinates.
    pub fn relations_from_plain(
        module: &Arc<Bimodule>,
        plain_vectors: &[Vec<crate::field::Scalar>],
        deg_max: usize,
    ) -> Result<QuadraticPresentation, KoszulError> {
        let tensor = TensorAlgebra::new(module, 2)?;
        let projected: Vec<_> = plain_vectors
            .iter()
            .map(|v| tensor.proj_plain[2].apply(v))
            .collect();
        // close under both actions so a generating set may be given
        let mut span = Subspace::from_span(module.field(), tensor.dim(2), &projected);
        loop {
            let mut grown = span.clone();
            for s in 0..module.algebra.dim {
                for i in 0..span.dim() {
                    let v = span.basis_vector(i);
                    grown = grown
                        .sum(&Subspace::from_span(
                            module.field(),
                            tensor.dim(2),
                            &[tensor.pow[2].left[s].apply(&v), tensor.pow[2].right[s].apply(&v)],
                        ))
                        .unwrap();
                }
            }
            if grown.dim() == span.dim() {
                break;
            }
            span = grown;
        }
        QuadraticPresentation::new(module, span, deg_max)
    }

    pub fn field(&self) -> FieldSpec {
        self.tensor.field()
    }

    pub fn deg_max(&self) -> usize {
        self.tensor.deg_max
    }

    /// Koszul generator spaces `K_0 = S, K_1 = M`, and for n >= 2 the
    /// intersection of all middle placements of the relations.
    pub fn koszul_generators(&self, n_max: usize) -> Result<Vec<Subspace>, KoszulError> {
        let field = self.field();
        let mut ks = vec![
            Subspace::full(field, self.tensor.dim(0)),
            Subspace::full(field, self.tensor.dim(1)),
        ];
        for n in 2..=n_max {
            let mut k = self.tensor.embed_middle(0, &self.relations, n - 2);
            for i in 1..=n - 2 {
                k = k.intersect(&self.tensor.embed_middle(i, &self.relations, n - 2 - i))?;
            }
            ks.push(k);
        }
        Ok(ks)
    }

    /// K_n as a bimodule in its own basis coordinates, with the inclusion
    /// matrix into pow(n).
    pub fn k_bimodule(&self, k: &Subspace, n: usize) -> Result<(Arc<Bimodule>, Matrix), KoszulError> {
        let incl = k.basis.transpose();
        let bm = self.tensor.pow[n].restrict(k)?;
        Ok((Arc::new(bm), incl))
    }

    /// Decomposition `pow(n) -> pow(n-1) (x)_k M` (plain representatives).
    pub fn right_decomp(&self, n: usize) -> Result<Matrix, KoszulError> {
        assert!(n >= 1);
        if n >= 2 {
            Ok(self.tensor.steps[n].as_ref().unwrap().section.clone())
        } else {
            let (t, _, inv) = self.tensor.split(0, 1)?;
            Ok(t.section.mul(&inv))
        }
    }

    /// Decomposition `pow(n) -> M (x)_k pow(n-1)` (plain representatives).
    pub fn left_decomp(&self, n: usize) -> Result<Matrix, KoszulError> {
        assert!(n >= 1);
        let (t, _, inv) = self.tensor.split(1, n - 1)?;
        Ok(t.section.mul(&inv))
    }
}

/// The graded quotient algebra: per-degree ideal components, bases of the
/// quotient pieces, and the induced multiplication.
pub struct GradedAlgebra {
    pub tensor: Arc<TensorAlgebra>,
    pub n_max: usize,
    /// `ideal[n]` is the degree-n component of the two-sided ideal (R).
    pub ideal: Vec<Subspace>,
    /// `proj[n] : pow(n) -> B_n`, `sec[n]` a section.
    pub proj: Vec<Matrix>,
    pub sec: Vec<Matrix>,
    pub piece: Vec<Arc<Bimodule>>,
}

impl GradedAlgebra {
    pub fn dim(&self, n: usize) -> usize {
        self.piece[n].dim
    }

    /// Multiplication `B_i (x)_k B_j -> B_{i+j}` in quotient coordinates.
    pub fn mult(&self, i: usize, j: usize) -> Matrix {
        self.proj[i + j]
            .mul(&self.tensor.concat(i, j))
            .mul(&self.sec[i].kron(&self.sec[j]))
    }
}

pub fn graded_pieces(pres: &QuadraticPresentation, n_max: usize) -> Result<GradedAlgebra, KoszulError> {
    let tensor = pres.tensor.clone();
    let field = pres.field();
    let mut ideal = vec![
        Subspace::zero(field, tensor.dim(0)),
        Subspace::zero(field, tensor.dim(1)),
    ];
    for n in 2..=n_max {
        let mut i_n = tensor.embed_middle(0, &pres.relations, n - 2);
        for i in 1..=n - 2 {
            i_n = i_n.sum(&tensor.embed_middle(i, &pres.relations, n - 2 - i))?;
        }
        ideal.push(i_n);
    }
    let mut proj = Vec::new();
    let mut sec = Vec::new();
    let mut piece = Vec::new();
    for n in 0..=n_max {
        let (p, s) = ideal[n].quotient_maps();
        let pw = &tensor.pow[n];
        let left = (0..tensor.algebra.dim).map(|si| p.mul(&pw.left[si]).mul(&s)).collect();
        let right = (0..tensor.algebra.dim).map(|si| p.mul(&pw.right[si]).mul(&s)).collect();
        piece.push(Arc::new(Bimodule::new_unchecked(tensor.algebra.clone(), p.rows, left, right)));
        proj.push(p);
        sec.push(s);
    }
    Ok(GradedAlgebra { tensor, n_max, ideal, proj, sec, piece })
}

/// One internal-degree strand of a complex. Position 0 is the rightmost
/// module; `diffs[i]` maps position i+1 to position i.
pub struct Strand {
    pub internal_degree: usize,
    pub dims: Vec<usize>,
    pub diffs: Vec<Matrix>,
}

impl Strand {
    pub fn d_squared_is_zero(&self) -> bool {
        self.diffs
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Homology dimension at each position, by rank counting.
    pub fn homology_dims(&self) -> Vec<usize> {
        let rank_in: Vec<usize> = self.diffs.iter().map(|d| d.rank()).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = if i >= 1 { rank_in[i - 1] } else { 0 };
                let inc = if i < rank_in.len() { rank_in[i] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.homology_dims().iter().all(|&h| h == 0)
    }
}

pub struct ChainComplex {
    pub strands: Vec<Strand>,
}

impl ChainComplex {
    pub fn d_squared_is_zero(&self) -> bool {
        self.strands.iter().all(|s| s.d_squared_is_zero())
    }

    /// First (internal degree, position) with nonzero homology, if any.
    pub fn first_homology(&self) -> Option<(usize, usize)> {
        for s in &self.strands {
            if let Some(pos) = s.homology_dims().iter().position(|&h| h != 0) {
                return Some((s.internal_degree, pos));
            }
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.first_homology().is_none()
    }
}

/// The one-sided resolution `... -> K_n (x)_S B -> ... -> B -> S -> 0`,
/// assembled per internal degree up to `deg_max`. Position 0 is the
/// augmentation target S (concentrated in internal degree 0), position i+1
/// holds `(K_i (x)_S B)` in that internal degree.
pub fn koszul_resolution(
    pres: &QuadraticPresentation,
    graded: &GradedAlgebra,
    ks: &[Subspace],
    deg_max: usize,
) -> Result<ChainComplex, KoszulError> {
    let field = pres.field();
    let s_dim = pres.tensor.algebra.dim;
    let m_dim = pres.tensor.dim(1);
    // K_i data shared across strands
    let kdata: Vec<(Arc<Bimodule>, Matrix)> = (0..ks.len())
        .map(|i| pres.k_bimodule(&ks[i], i))
        .collect::<Result<_, _>>()?;
    let mut strands = Vec::new();
    for t in 0..=deg_max {
        let mut dims = vec![if t == 0 { s_dim } else { 0 }];
        let mut diffs: Vec<Matrix> = Vec::new();
        // spaces C_i = K_i (x)_S B_{t-i}
        let mut spaces = Vec::new();
        for i in 0..=t.min(ks.len() - 1) {
            let c = tensor_over_s(&kdata[i].0, &graded.piece[t - i])?;
            dims.push(c.quotient_dim);
            spaces.push(c);
        }
        // augmentation: C_0 = S (x)_S B_t -> S_t
        let aug = if t == 0 {
            // s (x) s' -> s s' : collapse via the multiplication of S
            let mult_s = pres.tensor.algebra.mult_matrix();
            mult_s.mul(&spaces[0].section)
        } else {
            Matrix::zero(field, 0, spaces[0].quotient_dim)
        };
        diffs.push(aug);
        // d : C_i -> C_{i-1}, x_1..x_i (x) b -> x_1..x_{i-1} (x) x_i b
        for i in 1..spaces.len() {
            let j = t - i;
            let (_, incl_i) = &kdata[i];
            // K_i -> pow(i-1) (x) M plain
            let lift = pres.right_decomp(i)?.mul(incl_i);
            let pow_prev = pres.tensor.dim(i - 1);
            let step = Matrix::identity(field, pow_prev)
                .kron(&graded.mult(1, j))
                .mul(&lift.kron(&Matrix::identity(field, graded.dim(j))));
            // land in U = pow(i-1) (x)_S B_{j+1}
            let u = tensor_over_s(&pres.tensor.pow[i - 1], &graded.piece[j + 1])?;
            let mapped = u.projection.mul(&step).mul(&spaces[i].section);
            // express through the inclusion K_{i-1} (x)_S B -> pow(i-1) (x)_S B
            let iota = u
                .projection
                .mul(&kdata[i - 1].1.kron(&Matrix::identity(field, graded.dim(j + 1))))
                .mul(&spaces[i - 1].section);
            let d = iota
                .solve_matrix(&mapped)
                .ok_or(KoszulError::HomotopySolveFailed(i))?;
            diffs.push(d);
        }
        let _ = m_dim;
        strands.push(Strand { internal_degree: t, dims, diffs });
    }
    Ok(ChainComplex { strands })
}

/// A triple tensor `B_p (x)_S X (x)_S B_q` with translation to and from
/// plain `B_p (x) X (x) B_q` coordinates.
struct Triple {
    dim: usize,
    sec_plain: Matrix,
    proj_plain: Matrix,
}

fn triple(
    graded: &GradedAlgebra,
    p: usize,
    middle: &Arc<Bimodule>,
    q: usize,
) -> Result<Triple, KoszulError> {
    let field = graded.tensor.field();
    let t1 = tensor_over_s(&graded.piece[p], middle)?;
    let t2 = tensor_over_s(&t1.bimodule, &graded.piece[q])?;
    let iq = Matrix::identity(field, graded.dim(q));
    Ok(Triple {
        dim: t2.quotient_dim,
        sec_plain: t1.section.kron(&iq).mul(&t2.section),
        proj_plain: t2.projection.mul(&t1.projection.kron(&iq)),
    })
}

/// The bimodule complex `... -> B (x)_S K_n (x)_S B -> ... -> B (x)_S B -> B -> 0`
/// per internal degree <= deg_max. Position 0 is B itself; position n+1 is
/// the degree-t part of `B (x)_S K_n (x)_S B`, a direct sum over (p, q) with
/// p + n + q = t, blocks ordered by increasing p.
pub fn bimodule_complex(
    pres: &QuadraticPresentation,
    graded: &GradedAlgebra,
    ks: &[Subspace],
    deg_max: usize,
) -> Result<ChainComplex, KoszulError> {
    let field = pres.field();
    let kdata: Vec<(Arc<Bimodule>, Matrix)> = (0..ks.len())
        .map(|i| pres.k_bimodule(&ks[i], i))
        .collect::<Result<_, _>>()?;
    let pow_bimods: Vec<Arc<Bimodule>> = pres.tensor.pow.clone();
    let mut strands = Vec::new();
    for t in 0..=deg_max {
        // triples[n][p] = B_p (x)_S K_n (x)_S B_{t-n-p}
        let n_top = t.min(ks.len() - 1);
        let mut triples: Vec<Vec<Triple>> = Vec::new();
        for n in 0..=n_top {
            let mut row = Vec::new();
            for p in 0..=t - n {
                row.push(triple(graded, p, &kdata[n].0, t - n - p)?);
            }
            triples.push(row);
        }
        let mut dims = vec![graded.dim(t)];
        for n in 0..=n_top {
            dims.push(triples[n].iter().map(|tr| tr.dim).sum());
        }
        let mut diffs = Vec::new();
        // augmentation: b1 (x) s (x) b2 -> b1 s b2
        {
            let total: usize = triples[0].iter().map(|tr| tr.dim).sum();
            let mut aug = Matrix::zero(field, graded.dim(t), total);
            let mut col0 = 0;
            for (p, tr) in triples[0].iter().enumerate() {
                let q = t - p;
                let iq = Matrix::identity(field, graded.dim(q));
                let collapse = graded
                    .mult(p, q)
                    .mul(&graded.mult(p, 0).kron(&iq))
                    .mul(&tr.sec_plain);
                aug.paste(0, col0, &collapse);
                col0 += tr.dim;
            }
            diffs.push(aug);
        }
        // d : position n+1 -> position n
        for n in 1..=n_top {
            let src_total: usize = triples[n].iter().map(|tr| tr.dim).sum();
            let tgt_total: usize = triples[n - 1].iter().map(|tr| tr.dim).sum();
            let tgt_offsets: Vec<usize> = triples[n - 1]
                .iter()
                .scan(0, |acc, tr| {
                    let o = *acc;
                    *acc += tr.dim;
                    Some(o)
                })
                .collect();
            let mut d = Matrix::zero(field, tgt_total, src_total);
            let mut col0 = 0;
            for (p, tr) in triples[n].iter().enumerate() {
                let q = t - n - p;
                let ip = Matrix::identity(field, graded.dim(p));
                let iq = Matrix::identity(field, graded.dim(q));
                let incl_n = &kdata[n].1;
                // term 1: multiply the first factor of x into b1
                {
                    let left = pres.left_decomp(n)?.mul(incl_n);
                    let plain = graded
                        .mult(p, 1)
                        .kron(&Matrix::identity(field, pres.tensor.dim(n - 1) * graded.dim(q)))
                        .mul(&ip.kron(&left).kron(&iq))
                        .mul(&tr.sec_plain);
                    let u = triple(graded, p + 1, &pow_bimods[n - 1], q)?;
                    let mapped = u.proj_plain.mul(&plain);
                    let tgt = &triples[n - 1][p + 1];
                    let iota = u
                        .proj_plain
                        .mul(
                            &Matrix::identity(field, graded.dim(p + 1))
                                .kron(&kdata[n - 1].1)
                                .kron(&iq),
                        )
                        .mul(&tgt.sec_plain);
                    let block = iota
                        .solve_matrix(&mapped)
                        .ok_or(KoszulError::HomotopySolveFailed(n))?;
                    d.accumulate(tgt_offsets[p + 1], col0, &block);
                }
                // term 2, sign (-1)^n: multiply the last factor of x into b2
                {
                    let right = pres.right_decomp(n)?.mul(incl_n);
                    let plain = Matrix::identity(field, graded.dim(p) * pres.tensor.dim(n - 1))
                        .kron(&graded.mult(1, q))
                        .mul(&ip.kron(&right).kron(&iq))
                        .mul(&tr.sec_plain);
                    let u = triple(graded, p, &pow_bimods[n - 1], q + 1)?;
                    let mapped = u.proj_plain.mul(&plain);
                    let tgt = &triples[n - 1][p];
                    let iota = u
                        .proj_plain
                        .mul(
                            &ip.kron(&kdata[n - 1].1)
                                .kron(&Matrix::identity(field, graded.dim(q + 1))),
                        )
                        .mul(&tgt.sec_plain);
                    let mut block = iota
                        .solve_matrix(&mapped)
                        .ok_or(KoszulError::HomotopySolveFailed(n))?;
                    if n % 2 == 1 {
                        block = block.neg();
                    }
                    d.accumulate(tgt_offsets[p], col0, &block);
                }
                col0 += tr.dim;
            }
            diffs.push(d);
        }
        strands.push(Strand { internal_degree: t, dims, diffs });
    }
    Ok(ChainComplex { strands })
}

/// Bounded-degree Koszulity certificate.
pub struct KoszulCertificate {
    pub deg_max: usize,
    /// First degree whose graded piece fails two-sided projectivity.
    pub projectivity_failure: Option<usize>,
    /// First (internal degree, position) with nonzero homology.
    pub exactness_failure: Option<(usize, usize)>,
    pub pass: bool,
}

pub fn is_koszul(pres: &QuadraticPresentation, deg_max: usize) -> Result<KoszulCertificate, KoszulError> {
    let graded = graded_pieces(pres, deg_max)?;
    let ks = pres.koszul_generators(deg_max)?;
    let mut projectivity_failure = None;
    for i in 1..=deg_max {
        if !is_projective(&graded.piece[i], Side::Right) || !is_projective(&graded.piece[i], Side::Left) {
            projectivity_failure = Some(i);
            break;
        }
    }
    let complex = koszul_resolution(pres, &graded, &ks, deg_max)?;
    let exactness_failure = if complex.d_squared_is_zero() {
        complex.first_homology()
    } else {
        Some((0, 0))
    };
    let pass = projectivity_failure.is_none() && exactness_failure.is_none();
    Ok(KoszulCertificate { deg_max, projectivity_failure, exactness_failure, pass })
}
