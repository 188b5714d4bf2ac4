//! Batch command-line interface: parse a presentation file, run a verdict
//! pipeline, print a report.
//!
//! Exit codes: 0 = all checks pass, 1 = some check failed, 2 = undecided
//! (search budget exhausted or saturation not stabilized), 3 = input error.

use crate::entwine::exact_below_top;
use crate::error::KoszulError;
use crate::field::Scalar;
use crate::gorenstein::{build_u_e, check_gorenstein, extract_sigma};
use crate::matrix::Matrix;
use crate::pbw::{
    build_p_complex_pdim2, check_pbw_a, check_pbw_b, is_pbw_up_to, overlap_space,
    verify_homotopy_identity,
};
use crate::presentation::{parse_str, Bounds, BuiltPresentation, PresentationFile};
use crate::quadratic::{bimodule_complex, graded_pieces, is_koszul, koszul_resolution, ChainComplex};
use crate::report::{Status, VerdictReport};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "koszul", version, about = "Exact checks for quadratic algebras over a base ring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct Common {
    /// Presentation file.
    pub file: PathBuf,
    /// Truncation degree for graded pieces and resolutions.
    #[arg(long)]
    pub deg_max: Option<usize>,
    /// Top filtration degree reported by the oracle.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Ideal saturation degree for the oracle.
    #[arg(long)]
    pub n_sat: Option<usize>,
    /// Seed for randomized searches.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trial budget for randomized searches.
    #[arg(long)]
    pub trial_budget: Option<usize>,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Suppress the text report on stdout.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate the base algebra, the module actions, and relation closure.
    CheckAlgebra(Common),
    /// Validate the braiding axioms of a braided presentation.
    CheckBraiding(Common),
    /// Certify the Koszul property up to the truncation degree.
    CheckKoszul(Common),
    /// Mode-A flatness check (deformation by a map into S), with oracle.
    CheckPbwA(Common),
    /// Mode-B flatness check (smash-type, maps into M and S), with oracle.
    CheckPbwB(Common),
    /// Filtered dimension table of the deformed algebra.
    Oracle(Common),
    /// Build the resolutions and certify d.d = 0 and exactness.
    Resolution(Common),
    /// Bounded Gorenstein certificate.
    Gorenstein {
        #[command(flatten)]
        common: Common,
        /// Claimed injective dimension.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Gorenstein shift parameter.
        #[arg(long, default_value_t = 2)]
        l: i64,
    },
    /// Extract a free relation generator, the twist, and the admissible
    /// deformation constants; check each resulting deformation.
    DeformSigma(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::CheckAlgebra(c)
            | Command::CheckBraiding(c)
            | Command::CheckKoszul(c)
            | Command::CheckPbwA(c)
            | Command::CheckPbwB(c)
            | Command::Oracle(c)
            | Command::Resolution(c)
            | Command::DeformSigma(c) => c,
            Command::Gorenstein { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebra(_) => "check-algebra",
            Command::CheckBraiding(_) => "check-braiding",
            Command::CheckKoszul(_) => "check-koszul",
            Command::CheckPbwA(_) => "check-pbw-a",
            Command::CheckPbwB(_) => "check-pbw-b",
            Command::Oracle(_) => "oracle",
            Command::Resolution(_) => "resolution",
            Command::Gorenstein { .. } => "gorenstein",
            Command::DeformSigma(_) => "deform-sigma",
        }
    }
}

fn effective_bounds(file: &PresentationFile, c: &Common) -> Bounds {
    let b = file.bounds;
    Bounds {
        deg_max: c.deg_max.unwrap_or(b.deg_max),
        n_max: c.n_max.unwrap_or(b.n_max),
        n_sat: c.n_sat.unwrap_or(b.n_sat),
        seed: c.seed.unwrap_or(b.seed),
        trial_budget: c.trial_budget.unwrap_or(b.trial_budget),
    }
}

fn vec_str(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn zero_phi(built: &BuiltPresentation) -> Matrix {
    Matrix::zero(built.pres.field(), built.module.dim, built.pres.relations.dim())
}

fn zero_theta(built: &BuiltPresentation) -> Matrix {
    Matrix::zero(built.pres.field(), built.algebra.dim, built.pres.relations.dim())
}

fn complex_checks(report: &mut VerdictReport, name: &str, complex: &ChainComplex) {
    report.pass_fail(
        &format!("{name}-d-squared"),
        complex.d_squared_is_zero(),
        Some("composite differential is nonzero".into()),
    );
    let failure = exact_below_top(complex);
    report.pass_fail(
        &format!("{name}-exact"),
        failure.is_none(),
        failure.map(|(t, p)| format!("homology at internal degree {t}, position {p}")),
    );
}

/// Run one command against already-loaded file bytes. Returns the report,
/// or an input error.
pub fn run(command: &Command, input: &[u8]) -> Result<VerdictReport, KoszulError> {
    let text = std::str::from_utf8(input)
        .map_err(|_| KoszulError::Parse("input is not valid UTF-8".into()))?;
    let file = parse_str(text)?;
    let c = command.common();
    let bounds = effective_bounds(&file, c);
    let mut report = VerdictReport::new(command.name(), input, bounds.seed);
    match command {
        Command::CheckAlgebra(_) => match file.build(2) {
            Ok(_) => {
                report.pass_fail("algebra-and-module-valid", true, None);
                report.pass_fail("relations-closed", true, None);
            }
            Err(e) => report.pass_fail("algebra-and-module-valid", false, Some(e.to_string())),
        },
        Command::CheckBraiding(_) => {
            let built = file.build(2)?;
            let b = built
                .braiding
                .ok_or_else(|| KoszulError::Validation("file declares no braiding".into()))?;
            let check = b.check();
            report.pass_fail(
                "braiding-unit-law",
                check.unit_failure.is_none(),
                check.unit_failure.map(|v| format!("generator {v}")),
            );
            report.pass_fail(
                "braiding-multiplicative",
                check.mult_failure.is_none(),
                check.mult_failure.map(|(a, b, v)| format!("basis triple ({a},{b},{v})")),
            );
            report.pass_fail("braiding-bijective", check.bijective, None);
        }
        Command::CheckKoszul(_) => {
            let built = file.build(bounds.deg_max)?;
            let cert = is_koszul(&built.pres, bounds.deg_max)?;
            report.pass_fail(
                "graded-pieces-projective",
                cert.projectivity_failure.is_none(),
                cert.projectivity_failure.map(|d| format!("degree {d}")),
            );
            report.pass_fail(
                "koszul-resolution-exact",
                cert.exactness_failure.is_none(),
                cert.exactness_failure.map(|(t, p)| format!("degree {t}, position {p}")),
            );
            let graded = graded_pieces(&built.pres, bounds.deg_max)?;
            report.table(
                "graded dimensions",
                vec![(
                    "dim B_k".into(),
                    (0..=bounds.deg_max).map(|k| graded.dim(k) as i64).collect(),
                )],
            );
        }
        Command::CheckPbwA(_) => {
            let built = file.build(bounds.deg_max.max(bounds.n_sat + 1).max(3))?;
            let theta = built.theta.clone().unwrap_or_else(|| zero_theta(&built));
            let verdict = check_pbw_a(&built.pres, &theta)?;
            report.pass_fail(
                "pdim2-precondition",
                verdict.precondition_pdim2,
                verdict.precondition_witness.as_deref().map(vec_str),
            );
            report.pass_fail(
                "theta-bimodule-map",
                verdict.theta_bimodule,
                verdict
                    .theta_witness
                    .map(|(side, s, r)| format!("{side:?} action, basis s={s}, relation {r}")),
            );
            oracle_agreement(&mut report, &built, &zero_phi(&built), &theta, verdict.predicted_pbw, &bounds)?;
        }
        Command::CheckPbwB(_) => {
            let built = file.build(bounds.deg_max.max(bounds.n_sat + 1).max(3))?;
            let phi = built.phi.clone().unwrap_or_else(|| zero_phi(&built));
            let theta = built.theta.clone().unwrap_or_else(|| zero_theta(&built));
            let verdict = check_pbw_b(&built.pres, &phi, &theta)?;
            let witness = |w: Option<usize>| w.map(|i| format!("overlap basis vector {i}"));
            report.pass_fail("overlap-into-relations", verdict.condition_i, witness(verdict.witness_i));
            report.pass_fail("phi-defect-matches-theta", verdict.condition_ii, witness(verdict.witness_ii));
            report.pass_fail("theta-kills-defect", verdict.condition_iii, witness(verdict.witness_iii));
            oracle_agreement(&mut report, &built, &phi, &theta, verdict.predicted_pbw, &bounds)?;
        }
        Command::Oracle(_) => {
            let built = file.build(bounds.n_sat + 1)?;
            let phi = built.phi.clone().unwrap_or_else(|| zero_phi(&built));
            let theta = built.theta.clone().unwrap_or_else(|| zero_theta(&built));
            let oracle = is_pbw_up_to(&built.pres, &phi, &theta, bounds.n_max, bounds.n_sat)?;
            oracle_tables(&mut report, &oracle);
            report.check(
                "saturation-stabilized",
                if oracle.all_stabilized { Status::Pass } else { Status::Undecided },
                None,
            );
            report.pass_fail(
                "filtered-layers-match-graded",
                oracle.pbw,
                Some("deformation is not flat at this truncation".into()),
            );
        }
        Command::Resolution(_) => {
            let built = file.build(bounds.deg_max)?;
            let graded = graded_pieces(&built.pres, bounds.deg_max)?;
            let ks = built.pres.koszul_generators(bounds.deg_max)?;
            complex_checks(
                &mut report,
                "koszul-resolution",
                &koszul_resolution(&built.pres, &graded, &ks, bounds.deg_max)?,
            );
            complex_checks(
                &mut report,
                "bimodule-resolution",
                &bimodule_complex(&built.pres, &graded, &ks, bounds.deg_max)?,
            );
            if overlap_space(&built.pres)?.space.dim() == 0 {
                // The lifted differentials grow quickly with degree; certify
                // the depth-2 resolution on a bounded window.
                let deg = bounds.deg_max.clamp(2, 4);
                let p = build_p_complex_pdim2(&built.pres, deg, deg)?;
                complex_checks(&mut report, "pdim2-resolution", &p);
                report.pass_fail(
                    "homotopy-identity",
                    verify_homotopy_identity(&built.pres, deg)?,
                    Some("base homotopy does not merge to the comparison composite".into()),
                );
            }
        }
        Command::Gorenstein { d, l, .. } => {
            let hi = bounds.deg_max as i64 - *d as i64 - 1;
            let window = ((-(bounds.deg_max as i64)).min(-l), hi.max(-l));
            let cert = check_gorenstein(&built_at(&file, bounds.deg_max)?.pres, *d, *l, window, bounds.seed, bounds.trial_budget)?;
            report.pass_fail("base-ring-selfinjective", cert.selfinjective, None);
            report.pass_fail(
                "ext-vanishing-outside-d",
                cert.vanishing.0 && cert.vanishing.1,
                Some("nonzero cohomology away from the claimed dimension".into()),
            );
            for (name, iso) in [("ext-d-matches-dual-right", &cert.iso.0), ("ext-d-matches-dual-left", &cert.iso.1)] {
                report.check(
                    name,
                    match iso {
                        crate::algebra::IsoSearch::Found(_) => Status::Pass,
                        crate::algebra::IsoSearch::Undecided => Status::Undecided,
                        crate::algebra::IsoSearch::Impossible => Status::Fail,
                    },
                    None,
                );
            }
            let rows = cert
                .ext_table
                .dims
                .iter()
                .enumerate()
                .map(|(i, row)| (format!("Ext^{i}"), row.iter().map(|&x| x as i64).collect()))
                .collect();
            report.table(
                &format!("ext dimensions, internal degrees {}..={}", window.0, window.1),
                rows,
            );
        }
        Command::DeformSigma(_) => {
            let built = file.build(bounds.deg_max.max(bounds.n_sat + 1).max(3))?;
            match extract_sigma(&built.pres, bounds.seed, bounds.trial_budget) {
                Err(KoszulError::NoFreeGenerator) => {
                    report.check("free-generator", Status::Undecided, None);
                }
                Err(e) => return Err(e),
                Ok(data) => {
                    report.pass_fail("free-generator", true, None);
                    report.pass_fail("sigma-automorphism", true, None);
                    report.check(
                        "sigma",
                        Status::Pass,
                        Some(format!(
                            "r0 = {}, e-space dimension {}",
                            vec_str(&data.r0),
                            data.e_space.dim()
                        )),
                    );
                    for i in 0..data.e_space.dim() {
                        let e = data.e_space.basis_vector(i);
                        let v = build_u_e(&built.pres, &data, &e, bounds.n_max, bounds.n_sat)?;
                        let ok = v.checker.predicted_pbw && v.oracle.pbw;
                        report.pass_fail(
                            &format!("deformation-flat-e{i}"),
                            ok,
                            Some(format!("e = {}", vec_str(&e))),
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

fn built_at(file: &PresentationFile, deg: usize) -> Result<BuiltPresentation, KoszulError> {
    file.build(deg)
}

fn oracle_tables(report: &mut VerdictReport, oracle: &crate::pbw::OracleVerdict) {
    let f = &oracle.filtered;
    let mut deltas = Vec::new();
    let mut prev = 0i64;
    for &d in &f.dims {
        deltas.push(d as i64 - prev);
        prev = d as i64;
    }
    report.table(
        "filtered dimensions",
        vec![
            ("dim F_k".into(), f.dims.iter().map(|&x| x as i64).collect()),
            ("layer F_k/F_k-1".into(), deltas),
            ("dim B_k".into(), f.graded_dims.iter().map(|&x| x as i64).collect()),
        ],
    );
}

fn oracle_agreement(
    report: &mut VerdictReport,
    built: &BuiltPresentation,
    phi: &Matrix,
    theta: &Matrix,
    predicted: bool,
    bounds: &Bounds,
) -> Result<(), KoszulError> {
    let oracle = is_pbw_up_to(&built.pres, phi, theta, bounds.n_max, bounds.n_sat)?;
    oracle_tables(report, &oracle);
    report.check(
        "saturation-stabilized",
        if oracle.all_stabilized { Status::Pass } else { Status::Undecided },
        None,
    );
    report.pass_fail(
        "prediction-matches-oracle",
        predicted == oracle.pbw,
        Some(format!("checker predicts {predicted}, oracle reports {}", oracle.pbw)),
    );
    report.pass_fail("flat", predicted, Some("structural conditions fail".into()));
    Ok(())
}

/// Full entry point used by the binary: load, run, print, return the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version printing
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let c = cli.command.common();
    let input = match std::fs::read(&c.file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", c.file.display());
            return 3;
        }
    };
    let started = std::time::Instant::now();
    match run(&cli.command, &input) {
        Ok(report) => {
            if !c.quiet {
                print!("{}", report.render_text());
            }
            eprintln!("completed in {:.1?}", started.elapsed());
            if let Some(path) = &c.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write report: {e}");
                    return 3;
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}
