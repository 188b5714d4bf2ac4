//! Plain-text presentation files: a base algebra, a bimodule (explicit or
//! braided), quadratic relations, optional deformation data, and bounds.
//!
//! The format is line-oriented so a presentation can be written by hand:
//! `#` starts a comment, keywords introduce each section, and matrix blocks
//! follow their keyword as rows of whitespace-separated scalars (`a/b`
//! rationals over Q, integer residues over GF(p)). Row counts are
//! determined by the declared dimensions. See docs/format.md for the
//! grammar.

use crate::algebra::{Bimodule, FiniteAlgebra};
use crate::entwine::Braiding;
use crate::error::KoszulError;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::quadratic::QuadraticPresentation;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum ModuleSpec {
    /// Free right module `V (x) S` with the braiding `psi : S (x) V -> V (x) S`.
    Braided { v_dim: usize, psi: Matrix },
    /// Explicit action matrices, one per basis element of S.
    Bimodule { dim: usize, left: Vec<Matrix>, right: Vec<Matrix> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub deg_max: usize,
    pub n_max: usize,
    pub n_sat: usize,
    pub seed: u64,
    pub trial_budget: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { deg_max: 5, n_max: 4, n_sat: 6, seed: 0, trial_budget: 64 }
    }
}

/// The raw, validated-for-shape content of a presentation file. Algebraic
/// laws (associativity, sub-bimodule property, braiding axioms) are checked
/// by `build`, not by the parser.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub s_dim: usize,
    pub unit: Vec<Scalar>,
    /// `s_dim * s_dim` rows; row `i * s_dim + j` holds the coordinates of
    /// `basis_i * basis_j`.
    pub mult: Vec<Vec<Scalar>>,
    pub module: ModuleSpec,
    /// Relation spanning vectors in plain `M (x) M` coordinates.
    pub relations: Vec<Vec<Scalar>>,
    /// `dim M x (number of relation rows)`.
    pub phi: Option<Matrix>,
    /// `s_dim x (number of relation rows)`.
    pub theta: Option<Matrix>,
    pub sigma_auto: bool,
    pub bounds: Bounds,
}

impl PresentationFile {
    pub fn module_dim(&self) -> usize {
        match &self.module {
            ModuleSpec::Braided { v_dim, .. } => v_dim * self.s_dim,
            ModuleSpec::Bimodule { dim, .. } => *dim,
        }
    }
}

/// Everything the checkers need, constructed from a file: the presentation
/// at the requested truncation degree, the deformation maps converted to
/// relation-basis coordinates, and the braiding when one was declared.
pub struct BuiltPresentation {
    pub algebra: Arc<FiniteAlgebra>,
    pub module: Arc<Bimodule>,
    pub braiding: Option<Braiding>,
    pub pres: QuadraticPresentation,
    pub phi: Option<Matrix>,
    pub theta: Option<Matrix>,
    pub sigma_auto: bool,
    pub bounds: Bounds,
}

struct Parser<'a> {
    field: FieldSpec,
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let out = self.lines.get(self.pos).copied();
        self.pos += 1;
        out
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str), KoszulError> {
        self.next_line()
            .ok_or_else(|| KoszulError::Parse(format!("unexpected end of file, expected {what}")))
    }

    fn scalar_row(&mut self, cols: usize, what: &str) -> Result<Vec<Scalar>, KoszulError> {
        let (ln, line) = self.expect_line(what)?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(KoszulError::Parse(format!(
                "line {ln}: {what} expects {cols} entries, found {}",
                toks.len()
            )));
        }
        toks.iter()
            .map(|t| {
                self.field
                    .parse_scalar(t)
                    .map_err(|e| KoszulError::Parse(format!("line {ln}: {e}")))
            })
            .collect()
    }

    fn matrix(&mut self, rows: usize, cols: usize, what: &str) -> Result<Matrix, KoszulError> {
        let data = (0..rows)
            .map(|_| self.scalar_row(cols, what))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(self.field, data))
    }
}

impl<'a> Parser<'a> {
    fn expect_keyword(&mut self, kw: &str) -> Result<(), KoszulError> {
        let (ln, line) = self.expect_line(kw)?;
        if line != kw {
            return Err(KoszulError::Parse(format!("line {ln}: expected `{kw}`, found `{line}`")));
        }
        Ok(())
    }
}

fn parse_count(tok: &str, ln: usize, what: &str) -> Result<usize, KoszulError> {
    tok.parse()
        .map_err(|_| KoszulError::Parse(format!("line {ln}: bad {what} `{tok}`")))
}

pub fn parse_str(text: &str) -> Result<PresentationFile, KoszulError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (ln, first) = *lines
        .first()
        .ok_or_else(|| KoszulError::Parse("empty presentation file".into()))?;
    let field = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["field", "Q"] => FieldSpec::Rationals,
        ["field", gf] if gf.starts_with("GF(") && gf.ends_with(')') => {
            let p: u64 = gf[3..gf.len() - 1]
                .parse()
                .map_err(|_| KoszulError::Parse(format!("line {ln}: bad field `{gf}`")))?;
            FieldSpec::prime_field(p)
                .map_err(|e| KoszulError::Parse(format!("line {ln}: {e}")))?
        }
        _ => {
            return Err(KoszulError::Parse(format!(
                "line {ln}: expected `field Q` or `field GF(p)`, found `{first}`"
            )))
        }
    };
    let mut p = Parser { field, lines, pos: 1 };
    let mut s_dim = None;
    let mut unit = None;
    let mut mult = None;
    let mut module = None;
    let mut relations: Option<Vec<Vec<Scalar>>> = None;
    let mut phi = None;
    let mut theta = None;
    let mut sigma_auto = false;
    let mut bounds = Bounds::default();
    while let Some((ln, line)) = p.next_line() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["algebra", "dim", d] => s_dim = Some(parse_count(d, ln, "algebra dim")?),
            ["unit"] => {
                let d = s_dim
                    .ok_or_else(|| KoszulError::Parse(format!("line {ln}: unit before algebra dim")))?;
                unit = Some(p.scalar_row(d, "unit")?);
            }
            ["mult"] => {
                let d = s_dim
                    .ok_or_else(|| KoszulError::Parse(format!("line {ln}: mult before algebra dim")))?;
                let mut rows = Vec::new();
                for _ in 0..d * d {
                    rows.push(p.scalar_row(d, "mult row")?);
                }
                mult = Some(rows);
            }
            ["module", "braided", "vdim", v] => {
                let d = s_dim.ok_or_else(|| {
                    KoszulError::Parse(format!("line {ln}: module before algebra dim"))
                })?;
                let v = parse_count(v, ln, "vdim")?;
                p.expect_keyword("psi")?;
                let psi = p.matrix(v * d, d * v, "psi row")?;
                module = Some(ModuleSpec::Braided { v_dim: v, psi });
            }
            ["module", "bimodule", "dim", m] => {
                let d = s_dim.ok_or_else(|| {
                    KoszulError::Parse(format!("line {ln}: module before algebra dim"))
                })?;
                let m = parse_count(m, ln, "module dim")?;
                p.expect_keyword("left")?;
                let left = (0..d)
                    .map(|_| p.matrix(m, m, "left action row"))
                    .collect::<Result<Vec<_>, _>>()?;
                p.expect_keyword("right")?;
                let right = (0..d)
                    .map(|_| p.matrix(m, m, "right action row"))
                    .collect::<Result<Vec<_>, _>>()?;
                module = Some(ModuleSpec::Bimodule { dim: m, left, right });
            }
            ["relations", n] => {
                let md = match &module {
                    Some(ModuleSpec::Braided { v_dim, .. }) => v_dim * s_dim.unwrap(),
                    Some(ModuleSpec::Bimodule { dim, .. }) => *dim,
                    None => {
                        return Err(KoszulError::Parse(format!(
                            "line {ln}: relations before module"
                        )))
                    }
                };
                let n = parse_count(n, ln, "relation count")?;
                let mut rows = Vec::new();
                for _ in 0..n {
                    rows.push(p.scalar_row(md * md, "relation row")?);
                }
                relations = Some(rows);
            }
            ["phi"] => {
                let (md, r) = deform_shape(&module, &relations, s_dim, ln)?;
                phi = Some(p.matrix(md, r, "phi row")?);
            }
            ["theta"] => {
                let (_, r) = deform_shape(&module, &relations, s_dim, ln)?;
                theta = Some(p.matrix(s_dim.unwrap(), r, "theta row")?);
            }
            ["sigma", "auto"] => sigma_auto = true,
            ["deg_max", n] => bounds.deg_max = parse_count(n, ln, "deg_max")?,
            ["n_max", n] => bounds.n_max = parse_count(n, ln, "n_max")?,
            ["n_sat", n] => bounds.n_sat = parse_count(n, ln, "n_sat")?,
            ["trial_budget", n] => bounds.trial_budget = parse_count(n, ln, "trial_budget")?,
            ["seed", n] => {
                bounds.seed = n
                    .parse()
                    .map_err(|_| KoszulError::Parse(format!("line {ln}: bad seed `{n}`")))?
            }
            _ => return Err(KoszulError::Parse(format!("line {ln}: unrecognized `{line}`"))),
        }
    }
    let s_dim = s_dim.ok_or_else(|| KoszulError::Parse("missing `algebra dim`".into()))?;
    let unit = unit.ok_or_else(|| KoszulError::Parse("missing `unit`".into()))?;
    let mult = mult.ok_or_else(|| KoszulError::Parse("missing `mult`".into()))?;
    let module = module.ok_or_else(|| KoszulError::Parse("missing `module`".into()))?;
    let relations = relations.unwrap_or_default();
    Ok(PresentationFile {
        field,
        s_dim,
        unit,
        mult,
        module,
        relations,
        phi,
        theta,
        sigma_auto,
        bounds,
    })
}

fn deform_shape(
    module: &Option<ModuleSpec>,
    relations: &Option<Vec<Vec<Scalar>>>,
    s_dim: Option<usize>,
    ln: usize,
) -> Result<(usize, usize), KoszulError> {
    let md = match module {
        Some(ModuleSpec::Braided { v_dim, .. }) => v_dim * s_dim.unwrap(),
        Some(ModuleSpec::Bimodule { dim, .. }) => *dim,
        None => return Err(KoszulError::Parse(format!("line {ln}: deformation before module"))),
    };
    let r = relations
        .as_ref()
        .ok_or_else(|| KoszulError::Parse(format!("line {ln}: deformation before relations")))?
        .len();
    Ok((md, r))
}

pub fn parse(path: &std::path::Path) -> Result<PresentationFile, KoszulError> {
    parse_str(&std::fs::read_to_string(path)?)
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for i in 0..m.rows {
        let row: Vec<String> = (0..m.cols).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn write_scalar_row(out: &mut String, row: &[Scalar]) {
    let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
    out.push_str(&row.join(" "));
    out.push('\n');
}

pub fn serialize(pf: &PresentationFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", pf.field));
    out.push_str(&format!("algebra dim {}\n", pf.s_dim));
    out.push_str("unit\n");
    write_scalar_row(&mut out, &pf.unit);
    out.push_str("mult\n");
    for row in &pf.mult {
        write_scalar_row(&mut out, row);
    }
    match &pf.module {
        ModuleSpec::Braided { v_dim, psi } => {
            out.push_str(&format!("module braided vdim {v_dim}\npsi\n"));
            write_matrix(&mut out, psi);
        }
        ModuleSpec::Bimodule { dim, left, right } => {
            out.push_str(&format!("module bimodule dim {dim}\nleft\n"));
            for m in left {
                write_matrix(&mut out, m);
            }
            out.push_str("right\n");
            for m in right {
                write_matrix(&mut out, m);
            }
        }
    }
    out.push_str(&format!("relations {}\n", pf.relations.len()));
    for row in &pf.relations {
        write_scalar_row(&mut out, row);
    }
    if let Some(phi) = &pf.phi {
        out.push_str("phi\n");
        write_matrix(&mut out, phi);
    }
    if let Some(theta) = &pf.theta {
        out.push_str("theta\n");
        write_matrix(&mut out, theta);
    }
    if pf.sigma_auto {
        out.push_str("sigma auto\n");
    }
    let b = pf.bounds;
    out.push_str(&format!(
        "deg_max {}\nn_max {}\nn_sat {}\nseed {}\ntrial_budget {}\n",
        b.deg_max, b.n_max, b.n_sat, b.seed, b.trial_budget
    ));
    out
}

impl PresentationFile {
    /// Validate the algebraic content and assemble the working objects,
    /// truncating tensor powers at `deg_max`.
    pub fn build(&self, deg_max: usize) -> Result<BuiltPresentation, KoszulError> {
        let field = self.field;
        if self.unit.len() != self.s_dim || self.mult.len() != self.s_dim * self.s_dim {
            return Err(KoszulError::Validation("algebra block shape".into()));
        }
        let mut mult = vec![vec![Vec::new(); self.s_dim]; self.s_dim];
        for i in 0..self.s_dim {
            for j in 0..self.s_dim {
                mult[i][j] = self.mult[i * self.s_dim + j].clone();
            }
        }
        let algebra = Arc::new(FiniteAlgebra::new(field, self.s_dim, mult, self.unit.clone())?);
        let (module, braiding) = match &self.module {
            ModuleSpec::Braided { v_dim, psi } => {
                let b = Braiding::new(algebra.clone(), *v_dim, psi.clone())?;
                (b.module(), Some(b))
            }
            ModuleSpec::Bimodule { dim, left, right } => (
                Arc::new(Bimodule::new(algebra.clone(), *dim, left.clone(), right.clone())?),
                None,
            ),
        };
        let m_dim = module.dim;
        for (i, row) in self.relations.iter().enumerate() {
            if row.len() != m_dim * m_dim {
                return Err(KoszulError::Validation(format!(
                    "relation {i} has {} coordinates, ambient is {}",
                    row.len(),
                    m_dim * m_dim
                )));
            }
        }
        let pres = QuadraticPresentation::relations_from_plain(&module, &self.relations, deg_max)?;
        // convert phi/theta from declared-row coordinates to relation-basis
        // coordinates: solve map . coords(rows) = declared columns
        let coords = if self.phi.is_some() || self.theta.is_some() {
            let nrel = self.relations.len();
            let pow2 = pres.tensor.dim(2);
            let mut projected = Matrix::zero(field, pow2, nrel);
            for (c, row) in self.relations.iter().enumerate() {
                let v = pres.tensor.proj_plain[2].apply(row);
                for (r, x) in v.into_iter().enumerate() {
                    projected.set(r, c, x);
                }
            }
            let basis = pres.relations.basis.transpose();
            let c = basis
                .solve_matrix(&projected)
                .expect("projected rows lie in their own span");
            if c.rank() != pres.relations.dim() {
                return Err(KoszulError::Validation(
                    "deformation data needs relation rows spanning the full relation space \
                     (closed under the S-actions); add the missing rows"
                        .into(),
                ));
            }
            Some(c)
        } else {
            None
        };
        let convert = |m: &Matrix, name: &str| -> Result<Matrix, KoszulError> {
            let c = coords.as_ref().unwrap();
            c.transpose()
                .solve_matrix(&m.transpose())
                .map(|x| x.transpose())
                .ok_or_else(|| {
                    KoszulError::Validation(format!(
                        "{name} is inconsistent on linearly dependent relation rows"
                    ))
                })
        };
        let phi = match &self.phi {
            Some(m) => Some(convert(m, "phi")?),
            None => None,
        };
        let theta = match &self.theta {
            Some(m) => Some(convert(m, "theta")?),
            None => None,
        };
        Ok(BuiltPresentation {
            algebra,
            module,
            braiding,
            pres,
            phi,
            theta,
            sigma_auto: self.sigma_auto,
            bounds: self.bounds,
        })
    }
}
