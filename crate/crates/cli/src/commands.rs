//! Subcommands. Each returns an [`Outcome`]: text for stdout and an exit
//! code (0 all checks pass, 1 a check failed). Input and usage problems are
//! [`CliError`]s and map to exit code 2.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::exactlin::Rational;
use leibniz_core::extensions::{
    build_semidirect, check_cocycle_conditions, lie_family_extension, normalize_to_ln,
    paper_family_extension, BuildMode, CocycleReport, ExtensionError,
};
use leibniz_core::families::{
    abelian, companion_of_power, dieudonne, heisenberg, kronecker, l_n, paper_presentation, s1,
    s2, s2_normalized, PolynomialQ,
};
use leibniz_core::mapspaces::{
    antiderivation_space, basis_maps, basis_pairs, biderivation_space, check_automorphism,
    derivation_space, AutomorphismCheck,
};
use leibniz_core::racks::{
    check_rack_axioms, compare_tangent, gl_commutator_algebra, ln_identification,
    tangent_algebra, AxiomResult, SmoothRack, TangentTensor,
};
use leibniz_core::{LeibnizAlgebra, Matrix, Subspace};
use serde_json::{json, Value};
use thiserror::Error;

use crate::format::{
    matrix_rows, parse_extension, parse_matrix, parse_rational, parse_tensor, serialize_extension,
    serialize_tensor, vector_strings, FormatError,
};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            exit_code: 0,
        }
    }

    fn report(report: Report) -> Self {
        let exit_code = if report.passed() { 0 } else { 1 };
        Self {
            stdout: report.render(),
            exit_code,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "leibniz", version, about = "Exact computations with Leibniz algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the structure tensor of a named algebra.
    Family(FamilyArgs),
    /// Identities, series, centers and Leibniz kernel of an algebra.
    Analyze { file: PathBuf },
    /// Derivation space.
    Der { file: PathBuf },
    /// Anti-derivation space.
    Ader { file: PathBuf },
    /// Biderivation space.
    Bider { file: PathBuf },
    /// Check whether a matrix is an automorphism.
    AutCheck { file: PathBuf, matrix: PathBuf },
    /// Write extension data for one of the closed-form families.
    ExtFamily(ExtFamilyArgs),
    /// Evaluate the cocycle conditions (L1)-(L7) on extension data.
    ExtCheck { file: PathBuf },
    /// Build the extension algebra.
    ExtBuild {
        file: PathBuf,
        /// Build even when cocycle conditions fail.
        #[arg(long)]
        unchecked: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an algebra to L_n and report the change of basis.
    Normalize {
        file: PathBuf,
        /// Where to write the transported tensor.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check rack axioms and the tangent algebra of a smooth rack.
    RackCheck(RackArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    S1,
    S2,
    S2n,
    Ln,
    Abelian,
    Heisenberg,
    Kronecker,
    Dieudonne,
    PaperPresentation,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    pub name: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Monic polynomial, comma-separated coefficients in ascending degree.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Power of `--poly` whose companion matrix is used.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExtFamilyName {
    /// Fiber S2 (normalized), l_x = α_x E11, r_y = β_y E12.
    Paper,
    /// Fiber S1, l_x = α_x E11 + β_x E12, r = -l.
    Lie,
}

#[derive(Args, Debug)]
pub struct ExtFamilyArgs {
    pub name: ExtFamilyName,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantName {
    Paper,
    Corrected,
    Conj,
}

#[derive(Args, Debug)]
pub struct RackArgs {
    #[arg(long, value_enum)]
    pub variant: VariantName,
    /// Dimension of the rack; for `conj` a perfect square k*k.
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_tensor(path: &Path) -> Result<(LeibnizAlgebra, String), CliError> {
    let text = read(path)?;
    let l = parse_tensor(&text).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((l, text))
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
        })
        .collect()
}

fn require(flag: &str, v: Option<usize>) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Runs a parsed command. `argv` is echoed into reports.
pub fn run(cli: Cli, argv: &[String]) -> Result<Outcome, CliError> {
    let echo = argv.to_vec();
    match cli.command {
        Command::Family(args) => family(args),
        Command::Analyze { file } => analyze(&file, echo),
        Command::Der { file } => map_space(&file, echo, MapKind::Der),
        Command::Ader { file } => map_space(&file, echo, MapKind::Ader),
        Command::Bider { file } => map_space(&file, echo, MapKind::Bider),
        Command::AutCheck { file, matrix } => aut_check(&file, &matrix, echo),
        Command::ExtFamily(args) => ext_family(args),
        Command::ExtCheck { file } => ext_check(&file, echo),
        Command::ExtBuild {
            file,
            unchecked,
            out,
        } => ext_build(&file, unchecked, out.as_deref(), echo),
        Command::Normalize { file, out } => normalize(&file, out.as_deref(), echo),
        Command::RackCheck(args) => rack_check(args, echo),
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

pub fn build_family(args: &FamilyArgs) -> Result<LeibnizAlgebra, CliError> {
    let params = |flag: &str, v: &Option<String>| parse_list(flag, v.as_deref().unwrap_or(""));
    let l = match args.name {
        FamilyName::S1 => s1(),
        FamilyName::S2 => s2(),
        FamilyName::S2n => s2_normalized(),
        FamilyName::Ln => l_n(require("n", args.n)?).map_err(usage)?,
        FamilyName::Abelian => abelian(require("n", args.n)?),
        FamilyName::Kronecker => kronecker(require("n", args.n)?).map_err(usage)?,
        FamilyName::Dieudonne => dieudonne(require("n", args.n)?).map_err(usage)?,
        FamilyName::Heisenberg => {
            let a = match &args.poly {
                Some(p) => {
                    let f = PolynomialQ::monic(parse_list("poly", p)?).map_err(usage)?;
                    companion_of_power(&f, args.k.unwrap_or(1))
                        .map_err(usage)?
                        .matrix()
                        .clone()
                }
                None => Matrix::zeros(require("n", args.n)?, require("n", args.n)?),
            };
            heisenberg(&a).map_err(usage)?
        }
        FamilyName::PaperPresentation => {
            let n = require("n", args.n)?;
            paper_presentation(n, &params("alpha", &args.alpha)?, &params("beta", &args.beta)?)
                .map_err(usage)?
        }
    };
    Ok(l)
}

fn family(args: FamilyArgs) -> Result<Outcome, CliError> {
    let l = build_family(&args)?;
    emit(serialize_tensor(&l), args.out.as_deref())
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

fn triple(w: Option<(usize, usize, usize)>) -> Value {
    w.map_or(Value::Null, |(i, j, k)| json!([i, j, k]))
}

fn analyze(path: &Path, echo: Vec<String>) -> Result<Outcome, CliError> {
    let (l, text) = load_tensor(path)?;
    let left = l.check_left_leibniz();
    let mut report = Report::new(echo, &[&text]);
    report.check("left_leibniz", left.is_none());
    report.set(
        "results",
        json!({
            "dim": l.dim(),
            "left_leibniz": { "holds": left.is_none(), "witness": triple(left) },
            "right_leibniz": triple(l.check_right_leibniz()),
            "is_lie": l.is_lie(),
            "is_symmetric": l.is_symmetric(),
            "derived_series_dims": dims(&l.derived_series()),
            "lower_central_series_dims": dims(&l.lower_central_series()),
            "solvability_step": l.solvability_step(),
            "nilpotency_step": l.nilpotency_step(),
            "leibniz_kernel_dim": l.leibniz_kernel().dim(),
            "left_center_dim": l.left_center().dim(),
            "right_center_dim": l.right_center().dim(),
            "center_dim": l.center().dim(),
        }),
    );
    Ok(Outcome::report(report))
}

#[derive(Clone, Copy)]
enum MapKind {
    Der,
    Ader,
    Bider,
}

fn map_space(path: &Path, echo: Vec<String>, kind: MapKind) -> Result<Outcome, CliError> {
    let (l, text) = load_tensor(path)?;
    let n = l.dim();
    let (space, basis): (Subspace, Vec<Value>) = match kind {
        MapKind::Der | MapKind::Ader => {
            let space = if matches!(kind, MapKind::Der) {
                derivation_space(&l)
            } else {
                antiderivation_space(&l)
            };
            let basis = basis_maps(&space, n)
                .iter()
                .map(|d| json!(matrix_rows(d.matrix())))
                .collect();
            (space, basis)
        }
        MapKind::Bider => {
            let space = biderivation_space(&l);
            let basis = basis_pairs(&space, n)
                .iter()
                .map(|p| json!({ "d": matrix_rows(p.d.matrix()), "anti": matrix_rows(p.anti.matrix()) }))
                .collect();
            (space, basis)
        }
    };
    let mut report = Report::new(echo, &[&text]);
    report.set("results", json!({ "dim": space.dim(), "basis": basis }));
    Ok(Outcome::report(report))
}

fn aut_check(path: &Path, matrix: &Path, echo: Vec<String>) -> Result<Outcome, CliError> {
    let (l, text) = load_tensor(path)?;
    let mtext = read(matrix)?;
    let p = parse_matrix(&mtext).map_err(|source| CliError::Format {
        path: matrix.to_path_buf(),
        source,
    })?;
    let verdict = check_automorphism(&l, &p).map_err(usage)?;
    let mut report = Report::new(echo, &[&text, &mtext]);
    report.check("automorphism", verdict == AutomorphismCheck::Holds);
    let results = match verdict {
        AutomorphismCheck::Holds => json!({ "verdict": "holds", "witness": null }),
        AutomorphismCheck::Singular => json!({ "verdict": "singular", "witness": null }),
        AutomorphismCheck::Fails(i, j) => json!({ "verdict": "fails", "witness": [i, j] }),
    };
    report.set("results", results);
    Ok(Outcome::report(report))
}

fn ext_family(args: ExtFamilyArgs) -> Result<Outcome, CliError> {
    let alpha = parse_list("alpha", &args.alpha)?;
    let beta = parse_list("beta", &args.beta)?;
    let e = match args.name {
        ExtFamilyName::Paper => paper_family_extension(alpha.len() + 2, &alpha, &beta),
        ExtFamilyName::Lie => lie_family_extension(&alpha, &beta),
    }
    .map_err(usage)?;
    emit(serialize_extension(&e), args.out.as_deref())
}

fn load_extension(
    path: &Path,
) -> Result<(leibniz_core::extensions::ExtensionData, String), CliError> {
    let text = read(path)?;
    let e = parse_extension(&text).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((e, text))
}

fn cocycle_json(report: &CocycleReport) -> Value {
    Value::Array(
        report
            .results
            .iter()
            .map(|r| {
                let witness = r.violation.as_ref().map_or(Value::Null, |v| {
                    let args: serde_json::Map<String, Value> = r
                        .condition
                        .arguments()
                        .iter()
                        .zip(&v.args)
                        .map(|(name, i)| (name.to_string(), json!(i)))
                        .collect();
                    json!({ "args": args, "lhs": vector_strings(&v.lhs), "rhs": vector_strings(&v.rhs) })
                });
                json!({ "condition": r.condition.to_string(), "passed": r.passed(), "witness": witness })
            })
            .collect(),
    )
}

fn ext_check(path: &Path, echo: Vec<String>) -> Result<Outcome, CliError> {
    let (e, text) = load_extension(path)?;
    let cocycle = check_cocycle_conditions(&e);
    let mut report = Report::new(echo, &[&text]);
    for r in &cocycle.results {
        report.check(&r.condition.to_string(), r.passed());
    }
    report.set("results", json!({ "conditions": cocycle_json(&cocycle) }));
    Ok(Outcome::report(report))
}

fn ext_build(
    path: &Path,
    unchecked: bool,
    out: Option<&Path>,
    echo: Vec<String>,
) -> Result<Outcome, CliError> {
    let (e, text) = load_extension(path)?;
    let mode = if unchecked {
        BuildMode::Unchecked
    } else {
        BuildMode::Checked
    };
    match build_semidirect(&e, mode) {
        Ok(l) => emit(serialize_tensor(&l), out),
        Err(ExtensionError::CocycleFailed(cocycle)) => {
            let mut report = Report::new(echo, &[&text]);
            for r in &cocycle.results {
                report.check(&r.condition.to_string(), r.passed());
            }
            report.set("results", json!({ "conditions": cocycle_json(&cocycle) }));
            Ok(Outcome::report(report))
        }
        Err(other) => Err(usage(other)),
    }
}

fn normalize(path: &Path, out: Option<&Path>, echo: Vec<String>) -> Result<Outcome, CliError> {
    let (l, text) = load_tensor(path)?;
    let mut report = Report::new(echo, &[&text]);
    match normalize_to_ln(&l) {
        Ok(norm) => {
            report.check("normalized", true);
            report.set(
                "results",
                json!({
                    "p": matrix_rows(&norm.p),
                    "adaptation": matrix_rows(&norm.adaptation),
                    "stages": norm.stages.iter().map(matrix_rows).collect::<Vec<_>>(),
                    "alpha": vector_strings(&norm.alpha),
                    "beta": vector_strings(&norm.beta),
                }),
            );
            if let Some(out) = out {
                write(out, &serialize_tensor(&norm.normalized))?;
            }
        }
        Err(ExtensionError::OutOfScope(reason)) => {
            report.check("normalized", false);
            report.set("results", json!({ "reason": reason }));
        }
        Err(other) => return Err(usage(other)),
    }
    Ok(Outcome::report(report))
}

fn axiom_json(a: &AxiomResult) -> Value {
    let witness = a.witness.as_ref().map_or(Value::Null, |w| {
        json!({ "inputs": w.inputs, "lhs": w.lhs, "rhs": w.rhs })
    });
    json!({ "passed": a.passed, "max_residual": a.max_residual, "witness": witness })
}

fn tangent_json(t: &TangentTensor, tol: f64) -> Value {
    let n = t.dim();
    let mut records = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let result: serde_json::Map<String, Value> = (0..n)
                .filter(|&k| t.get(i, j, k).abs() > tol)
                .map(|k| (k.to_string(), json!(t.get(i, j, k))))
                .collect();
            if !result.is_empty() {
                records.push(json!({ "left": i, "right": j, "result": result }));
            }
        }
    }
    json!({ "dim": n, "error_bound": t.error_bound(), "brackets": records })
}

fn rack_check(args: RackArgs, echo: Vec<String>) -> Result<Outcome, CliError> {
    if !(args.h > 0.0) || !(args.tol > 0.0) {
        return Err(CliError::Usage("--h and --tol must be positive".into()));
    }
    let (rack, target, identification) = match args.variant {
        VariantName::Paper | VariantName::Corrected => {
            let rack = if args.variant == VariantName::Paper {
                SmoothRack::paper_ln(args.dim)
            } else {
                SmoothRack::corrected_ln(args.dim)
            }
            .map_err(usage)?;
            let target = l_n(args.dim).map_err(usage)?;
            (rack, target, ln_identification(args.dim))
        }
        VariantName::Conj => {
            let k = (1..=args.dim).find(|k| k * k == args.dim).ok_or_else(|| {
                CliError::Usage(format!("--dim {} is not a perfect square", args.dim))
            })?;
            let rack = SmoothRack::conj(k).map_err(usage)?;
            (rack, gl_commutator_algebra(k), (0..args.dim).collect())
        }
    };
    let axioms = check_rack_axioms(&rack, args.samples, args.seed, args.tol).map_err(usage)?;
    let tangent = tangent_algebra(&rack, args.h).map_err(usage)?;
    let cmp = compare_tangent(&tangent, &target, &identification, args.tol).map_err(usage)?;
    let half = tangent_algebra(&rack, args.h / 2.0).map_err(usage)?;
    let cmp_half = compare_tangent(&half, &target, &identification, args.tol).map_err(usage)?;

    let mut report = Report::new(echo, &[]);
    report.check("autodistributivity", axioms.autodistributivity.passed);
    report.check("left_bijectivity", axioms.left_bijectivity.passed);
    report.check("unit_left", axioms.unit_left.passed);
    report.check("unit_right", axioms.unit_right.passed);
    if args.variant == VariantName::Conj {
        report.check("idempotence", axioms.idempotence.passed);
    }
    report.check("tangent_matches", cmp.passed);
    report.set(
        "results",
        json!({
            "axioms": {
                "autodistributivity": axiom_json(&axioms.autodistributivity),
                "left_bijectivity": axiom_json(&axioms.left_bijectivity),
                "unit_left": axiom_json(&axioms.unit_left),
                "unit_right": axiom_json(&axioms.unit_right),
                "idempotence": axiom_json(&axioms.idempotence),
            },
            "tangent": tangent_json(&tangent, args.tol),
            "comparison": {
                "target": target.labels(),
                "identification": identification,
                "max_deviation": cmp.max_deviation,
                "argmax": [cmp.argmax.0, cmp.argmax.1, cmp.argmax.2],
                "tol": cmp.tol,
                "passed": cmp.passed,
                "max_deviation_half_step": cmp_half.max_deviation,
            },
        }),
    );
    Ok(Outcome::report(report))
}
