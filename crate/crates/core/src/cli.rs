//! Command-line surface: argument parsing, the sweep engine and report
//! serialization. The `ybsys` binary is a thin wrapper around [`run`].
//!
//! Every subcommand produces a [`RunReport`]. Its `residuals` list holds the
//! largest residual per checked identity together with the tolerance it was
//! held to; the process exits with [`ExitStatus::RelationFailure`] when any
//! asserted identity misses its tolerance.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::berry::{berry_report, BerryReport, Method};
use crate::braid::{build_braidset, check_es2_relations, compare_with_printed};
use crate::dynamics::{hamiltonian, hamiltonian_from_r, spectrum, su2_report, DriveParams, Level};
use crate::entanglement::{
    full_report, one_vs_rest_closed_form, pair_concurrence_closed_form, tangle_closed_form, EntanglementReport,
};
use crate::error::Error;
use crate::linalg::frobenius_distance;
use crate::states::{apply_r, basis_state, closed_form_image, BasisLabel};
use crate::yangbaxter::{unitarity_residual, ybe_residual, RParams, SpectralParam, System};

/// Header of the sweep CSV.
pub const SWEEP_HEADER: &str =
    "theta,tau_measured,tau_closed,c_pair_measured,c_pair_closed,c2_one_rest_measured,c2_one_rest_closed,max_residual";

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    RelationFailure = 1,
    Usage = 2,
    Numerical = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Override the tolerance of every checked identity.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Seed for random sampling (ybe, verify-algebra).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Read angle arguments in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "ybsys", version, about = "Three-qubit Yang-Baxter system: checks and reports")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Braid relations and unitarity over sampled angles.
    VerifyAlgebra(VerifyArgs),
    /// Yang-Baxter residuals for random unit-circle spectral parameters.
    Ybe(YbeArgs),
    /// Entanglement of R̆(θ, φ)|klm⟩.
    Entangle(EntangleArgs),
    /// Entanglement curves over a θ grid.
    Sweep(SweepArgs),
    /// Spectrum, eigenstates and ladder algebra of the driven Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Berry phases of the adiabatic φ loop.
    Berry(BerryArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyAlgebra(_) => "verify-algebra",
            Command::Ybe(_) => "ybe",
            Command::Entangle(_) => "entangle",
            Command::Sweep(_) => "sweep",
            Command::Spectrum(_) => "spectrum",
            Command::Berry(_) => "berry",
        }
    }
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 17)]
    pub phi_samples: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct YbeArgs {
    /// Number of random (x, y) pairs.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Number of φ values, evenly spaced over [0, 2π).
    #[arg(long, default_value_t = 5)]
    pub phi_values: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct EntangleArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Basis label such as 000 or 101.
    #[arg(long, default_value = "000")]
    pub input: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Tangle,
    PairConcurrence,
    OneVsRestSq,
    Eigenvalues,
    Berry,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_min: f64,
    #[arg(long, default_value_t = PI, allow_negative_numbers = true)]
    pub theta_max: f64,
    #[arg(long, default_value_t = 25)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value = "000")]
    pub input: String,
    /// Quantities to include in JSON rows; the CSV columns are fixed.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Quantity::Tangle, Quantity::PairConcurrence, Quantity::OneVsRestSq])]
    pub quantities: Vec<Quantity>,
    /// φ samples for the Berry phases when `berry` is requested.
    #[arg(long, default_value_t = 1000)]
    pub berry_steps: usize,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub phi_dot: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Analytic,
    Wilson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelArg {
    All,
    Zero,
    Minus,
    Plus,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct BerryArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = LevelArg::All)]
    pub level: LevelArg,
}

/// Largest residual of one identity, and whether it gates the exit status.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualSummary {
    pub name: String,
    pub max_residual: f64,
    pub tol: f64,
    pub asserted: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub residuals: Vec<ResidualSummary>,
    /// All asserted residuals within tolerance.
    pub pass: bool,
}

/// Failure of a command before a report could be produced.
#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Usage,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Numerical,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::InvalidBasisLabel(_) | Error::OffUnitCircle { .. } => {
                CliError::usage(e.to_string())
            }
            _ => CliError::numerical(e.to_string()),
        }
    }
}

/// Collects residuals, keeping the maximum per name.
struct Residuals {
    tol_override: Option<f64>,
    entries: Vec<ResidualSummary>,
}

impl Residuals {
    fn new(tol_override: Option<f64>) -> Self {
        Self {
            tol_override,
            entries: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, residual: f64, default_tol: f64, asserted: bool) {
        let tol = self.tol_override.unwrap_or(default_tol);
        match self.entries.iter_mut().find(|e| e.name == name) {
            Some(e) => e.max_residual = e.max_residual.max(residual),
            None => self.entries.push(ResidualSummary {
                name: name.to_string(),
                max_residual: residual,
                tol,
                asserted,
                pass: true,
            }),
        }
    }

    fn finish(mut self, command: &str, parameters: Value, results: Value) -> Result<RunReport, CliError> {
        for e in &mut self.entries {
            if !e.max_residual.is_finite() {
                return Err(CliError::numerical(format!("residual {} is not finite", e.name)));
            }
            e.pass = e.max_residual <= e.tol;
        }
        let pass = self.entries.iter().filter(|e| e.asserted).all(|e| e.pass);
        Ok(RunReport {
            command: command.to_string(),
            parameters,
            results,
            residuals: self.entries,
            pass,
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// `true` when no number in `v` was replaced by `null` (non-finite floats
/// serialize as `null`; reports never carry `null` otherwise).
fn all_finite(v: &Value) -> bool {
    match v {
        Value::Null => false,
        Value::Array(a) => a.iter().all(all_finite),
        Value::Object(o) => o.values().all(all_finite),
        _ => true,
    }
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn finite_arg(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{name} must be finite")))
    }
}

fn parse_label(s: &str) -> Result<BasisLabel, CliError> {
    s.parse().map_err(CliError::from)
}

fn parameters<T: Serialize>(g: &GlobalArgs, args: &T) -> Value {
    json!({ "global": to_value(g), "args": to_value(args) })
}

pub fn cmd_verify_algebra(g: &GlobalArgs, args: &VerifyArgs) -> Result<RunReport, CliError> {
    if args.phi_samples == 0 {
        return Err(CliError::usage("--phi-samples must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut res = Residuals::new(g.tol);
    let relation_tol = g.tol.unwrap_or(1e-10);
    let mut samples = Vec::new();
    for _ in 0..args.phi_samples {
        let phi = rng.gen_range(0.0..TAU);
        let theta = rng.gen_range(0.0..PI);
        let report = check_es2_relations(&build_braidset(phi), relation_tol);
        for c in &report.checks {
            res.record(c.name, c.residual, 1e-10, c.asserted);
        }
        let p = RParams::new(theta, phi);
        res.record("unitarity_two_qubit", unitarity_residual(System::TwoQubit, p), 1e-12, true);
        res.record("unitarity_three_qubit", unitarity_residual(System::ThreeQubit, p), 1e-12, true);
        samples.push(json!({ "phi": phi, "theta": theta, "relations": to_value(&report) }));
    }
    let printed = compare_with_printed(&build_braidset(0.0), 1e-12);
    let results = json!({ "samples": samples, "printed_comparison_phi0": to_value(&printed) });
    res.finish("verify-algebra", parameters(g, args), results)
}

pub fn cmd_ybe(g: &GlobalArgs, args: &YbeArgs) -> Result<RunReport, CliError> {
    if args.samples == 0 || args.phi_values == 0 {
        return Err(CliError::usage("--samples and --phi-values must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut res = Residuals::new(g.tol);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let x = SpectralParam::from_arg(rng.gen_range(-PI..PI));
        // stay clear of x + 1/x = 0, where the spectral form is singular
        if (x.value() + x.value().inv()).norm() > 1e-3 {
            return x;
        }
    };
    let mut rows = Vec::new();
    for j in 0..args.phi_values {
        let phi = TAU * j as f64 / args.phi_values as f64;
        for _ in 0..args.samples {
            let (x, y) = (draw(&mut rng), draw(&mut rng));
            if (x.compose(y).value() + x.compose(y).value().inv()).norm() <= 1e-3 {
                continue;
            }
            let r2 = ybe_residual(System::TwoQubit, x, y, phi)?;
            let r3 = ybe_residual(System::ThreeQubit, x, y, phi)?;
            res.record("ybe_two_qubit", r2, 1e-10, true);
            res.record("ybe_three_qubit", r3, 1e-10, false);
            rows.push(json!({
                "phi": phi,
                "x_arg": x.value().arg(),
                "y_arg": y.value().arg(),
                "two_qubit": r2,
                "three_qubit": r3,
            }));
        }
    }
    res.finish("ybe", parameters(g, args), json!({ "samples": rows }))
}

fn record_entanglement(res: &mut Residuals, r: &EntanglementReport, theta: f64) {
    let c = pair_concurrence_closed_form(theta);
    let o = one_vs_rest_closed_form(theta);
    res.record("tangle", (r.tau_abc - tangle_closed_form(theta)).abs(), 1e-9, true);
    for m in [r.c_ab, r.c_bc, r.c_ac] {
        res.record("pair_concurrence", (m - c).abs(), 1e-9, true);
    }
    for m in [r.c2_a_bc, r.c2_b_ac, r.c2_c_ab] {
        res.record("one_vs_rest_sq", (m - o).abs(), 1e-9, true);
    }
    res.record("monogamy", r.monogamy_residual, 1e-8, true);
}

pub fn cmd_entangle(g: &GlobalArgs, args: &EntangleArgs) -> Result<RunReport, CliError> {
    let theta = angle(finite_arg("theta", args.theta)?, g.degrees);
    let phi = angle(finite_arg("phi", args.phi)?, g.degrees);
    let label = parse_label(&args.input)?;
    let p = RParams::new(theta, phi);
    let state = apply_r(p, &basis_state(label))?;
    let report = full_report(&state)?;
    let mut res = Residuals::new(g.tol);
    record_entanglement(&mut res, &report, theta);
    res.record(
        "closed_form_image",
        state.amplitudes().distance(&closed_form_image(label, p)),
        1e-12,
        true,
    );
    let amplitudes: Vec<[f64; 2]> = state.amplitudes().as_slice().iter().map(|z| [z.re, z.im]).collect();
    let results = json!({
        "theta": theta,
        "phi": phi,
        "input": label.to_string(),
        "amplitudes": amplitudes,
        "measured": to_value(&report),
        "closed_form": {
            "tau": tangle_closed_form(theta),
            "pair_concurrence": pair_concurrence_closed_form(theta),
            "one_vs_rest_sq": one_vs_rest_closed_form(theta),
        },
    });
    res.finish("entangle", parameters(g, args), results)
}

/// One θ row of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub tau_measured: f64,
    pub tau_closed: f64,
    pub c_pair_measured: f64,
    pub c_pair_closed: f64,
    pub c2_one_rest_measured: f64,
    pub c2_one_rest_closed: f64,
    /// Over τ, all three pair concurrences and all three one-vs-rest values.
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub berry: Option<Vec<BerryReport>>,
    #[serde(skip)]
    pub report: Option<EntanglementReport>,
}

/// Validated sweep request.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSpec {
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub phi: f64,
    pub input: String,
    pub quantities: Vec<Quantity>,
    pub berry_steps: usize,
}

impl SweepSpec {
    pub fn new(args: &SweepArgs, degrees: bool) -> Result<Self, CliError> {
        let theta_min = angle(finite_arg("theta-min", args.theta_min)?, degrees);
        let theta_max = angle(finite_arg("theta-max", args.theta_max)?, degrees);
        if theta_min > theta_max {
            return Err(CliError::usage("--theta-min must not exceed --theta-max"));
        }
        if args.steps < 2 {
            return Err(CliError::usage("--steps must be at least 2"));
        }
        let label = parse_label(&args.input)?;
        Ok(Self {
            theta_min,
            theta_max,
            steps: args.steps,
            phi: angle(finite_arg("phi", args.phi)?, degrees),
            input: label.to_string(),
            quantities: args.quantities.clone(),
            berry_steps: args.berry_steps,
        })
    }

    pub fn thetas(&self) -> Vec<f64> {
        let span = self.theta_max - self.theta_min;
        (0..self.steps)
            .map(|k| self.theta_min + span * k as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

fn sweep_row(spec: &SweepSpec, theta: f64) -> Result<SweepRow, CliError> {
    let label = parse_label(&spec.input)?;
    let state = apply_r(RParams::new(theta, spec.phi), &basis_state(label))?;
    let r = full_report(&state)?;
    let (tau_c, c_c, o_c) = (
        tangle_closed_form(theta),
        pair_concurrence_closed_form(theta),
        one_vs_rest_closed_form(theta),
    );
    let max_residual = [
        (r.tau_abc - tau_c).abs(),
        (r.c_ab - c_c).abs(),
        (r.c_bc - c_c).abs(),
        (r.c_ac - c_c).abs(),
        (r.c2_a_bc - o_c).abs(),
        (r.c2_b_ac - o_c).abs(),
        (r.c2_c_ab - o_c).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let eigenvalues = if spec.quantities.contains(&Quantity::Eigenvalues) {
        Some(spectrum(&DriveParams::unit(theta, spec.phi))?.eigenvalues)
    } else {
        None
    };
    let berry = if spec.quantities.contains(&Quantity::Berry) {
        Some(
            [Level::Minus, Level::Plus]
                .into_iter()
                .map(|l| berry_report(theta, l, Method::Analytic, spec.berry_steps))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    Ok(SweepRow {
        theta,
        tau_measured: r.tau_abc,
        tau_closed: tau_c,
        c_pair_measured: r.c_ab,
        c_pair_closed: c_c,
        c2_one_rest_measured: r.c2_a_bc,
        c2_one_rest_closed: o_c,
        max_residual,
        eigenvalues,
        berry,
        report: Some(r),
    })
}

/// Rows in θ order, computed on the rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    spec.thetas().into_par_iter().map(|t| sweep_row(spec, t)).collect()
}

/// 17 significant digits, locale-free.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            r.theta,
            r.tau_measured,
            r.tau_closed,
            r.c_pair_measured,
            r.c_pair_closed,
            r.c2_one_rest_measured,
            r.c2_one_rest_closed,
            r.max_residual,
        ]
        .map(fmt_f64);
        writeln!(out, "{}", cells.join(",")).expect("write to String");
    }
    out
}

pub fn cmd_sweep(g: &GlobalArgs, args: &SweepArgs) -> Result<(RunReport, Vec<SweepRow>), CliError> {
    let spec = SweepSpec::new(args, g.degrees)?;
    let rows = run_sweep(&spec)?;
    let mut res = Residuals::new(g.tol);
    for row in &rows {
        record_entanglement(&mut res, row.report.as_ref().expect("filled by sweep_row"), row.theta);
    }
    let results = json!({ "spec": to_value(&spec), "rows": to_value(&rows) });
    let report = res.finish("sweep", parameters(g, args), results)?;
    Ok((report, rows))
}

pub fn cmd_spectrum(g: &GlobalArgs, args: &SpectrumArgs) -> Result<RunReport, CliError> {
    let d = DriveParams::new(
        angle(finite_arg("theta", args.theta)?, g.degrees),
        angle(finite_arg("phi", args.phi)?, g.degrees),
        args.phi_dot,
        args.hbar,
    )?;
    let s = spectrum(&d)?;
    let su2 = su2_report(&d)?;
    let fd = frobenius_distance(&hamiltonian(&d), &hamiltonian_from_r(&d, 1e-5)?)?;
    let mut res = Residuals::new(g.tol);
    res.record("closed_form_spectrum", s.closed_form_match, 1e-10, true);
    for f in &s.fixtures {
        res.record("fixture_eigen_equation", f.residual, 1e-10, true);
        // the printed energies of two fixtures are exchanged; report only
        res.record("fixture_printed_energy", f.printed_residual, 1e-10, false);
    }
    if let Some(lp) = s.level_projectors {
        res.record("level_projector", lp.zero.max(lp.minus).max(lp.plus), 1e-8, true);
    }
    res.record("finite_difference", fd, 1e-6, true);
    res.record("su2_ladder_squares", su2.i_plus_squared.max(su2.i_minus_squared), 1e-12, true);
    res.record("su2_plus_minus_commutator", su2.plus_minus_commutator, 1e-12, true);
    res.record("su2_decomposition", su2.decomposition, 1e-10, true);
    // measured [I₃, I±] = ±3I±; reported against the unit ladder scale
    res.record(
        "su2_three_ladder_commutator",
        su2.three_plus_commutator.max(su2.three_minus_commutator),
        1e-12,
        false,
    );
    res.record("su2_i3_squared_global", su2.i3_squared_global, 1e-12, false);
    res.record("su2_i3_squared_on_span", su2.i3_squared_on_span, 1e-12, false);
    let results = json!({ "spectrum": to_value(&s), "su2": to_value(&su2) });
    res.finish("spectrum", parameters(g, args), results)
}

pub fn cmd_berry(g: &GlobalArgs, args: &BerryArgs) -> Result<RunReport, CliError> {
    let theta = angle(finite_arg("theta", args.theta)?, g.degrees);
    let method = match args.method {
        MethodArg::Analytic => Method::Analytic,
        MethodArg::Wilson => Method::Wilson,
    };
    let levels: Vec<Level> = match args.level {
        LevelArg::All => vec![Level::Minus, Level::Plus, Level::Zero],
        LevelArg::Zero => vec![Level::Zero],
        LevelArg::Minus => vec![Level::Minus],
        LevelArg::Plus => vec![Level::Plus],
    };
    let tol = match method {
        Method::Analytic => 1e-5,
        Method::Wilson => 1e-4,
    };
    let reports: Vec<BerryReport> = levels
        .par_iter()
        .map(|&l| berry_report(theta, l, method, args.steps))
        .collect::<Result<_, _>>()?;
    let mut res = Residuals::new(g.tol);
    for r in &reports {
        for x in &r.residuals {
            res.record("berry_phase", *x, tol, true);
        }
    }
    res.finish("berry", parameters(g, args), json!({ "levels": to_value(&reports) }))
}

/// What a command writes, and the status the process should exit with.
pub struct Outcome {
    pub body: String,
    pub status: ExitStatus,
}

/// Runs a parsed command. The body is JSON unless `--format csv` is given
/// to `sweep`, which then emits the CSV table.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::usage("--tol must be a finite non-negative number"));
        }
    }
    let (report, csv) = match &cli.command {
        Command::VerifyAlgebra(a) => (cmd_verify_algebra(g, a)?, None),
        Command::Ybe(a) => (cmd_ybe(g, a)?, None),
        Command::Entangle(a) => (cmd_entangle(g, a)?, None),
        Command::Sweep(a) => {
            let (report, rows) = cmd_sweep(g, a)?;
            (report, Some(sweep_csv(&rows)))
        }
        Command::Spectrum(a) => (cmd_spectrum(g, a)?, None),
        Command::Berry(a) => (cmd_berry(g, a)?, None),
    };
    let value = to_value(&report);
    if !all_finite(&value) {
        return Err(CliError::numerical("report contains non-finite numbers"));
    }
    let status = if report.pass {
        ExitStatus::Ok
    } else {
        ExitStatus::RelationFailure
    };
    let body = match (g.format, csv) {
        (Format::Csv, Some(csv)) => csv,
        (Format::Csv, None) => {
            return Err(CliError::usage(format!("--format csv is only available for sweep, not {}", cli.command.name())))
        }
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
    };
    Ok(Outcome { body, status })
}

/// Parses `args`, runs the command, writes the output, and returns the exit
/// status. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Ok };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.status;
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: cannot write output: {msg}");
        return ExitStatus::Usage;
    }
    outcome.status
}
