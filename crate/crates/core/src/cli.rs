//! Command-line front end: `eval`, `scan-werner`, `optimize`, `regions`,
//! `sample` and `lhv-check`.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

use std::f64::consts::TAU;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde::de::DeserializeOwned;

use crate::algebra::{make_werner, SettingPair, UnitVector3};
use crate::correlations::{classify, correlation, xy_quantities, Bound, HierarchyReport, Region, XYPoint, DEFAULT_TOL};
use crate::error::Error;
use crate::models::{model_correlation, verify_locality_condition};
use crate::optimizer::{maximize, survey_state, Objective, OptimizeConfig, OptimizeResult};
use crate::random;
use crate::sampler::{empirical_xy, EmpiricalXy};
use crate::schema::{ModelSpec, SettingsSpec, StateSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "qlocality", version, about = "Two-qubit locality and realism inequality toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate X, Y and every bound for a state at fixed settings.
    Eval(EvalArgs),
    /// Sweep the Werner family and flag which bounds optimized settings violate.
    ScanWerner(ScanArgs),
    /// Maximize an objective over both setting pairs.
    Optimize(OptimizeArgs),
    /// Emit the region boundaries of the X-Y plane and achievable points.
    Regions(RegionsArgs),
    /// Monte Carlo estimate of X and Y with error-aware verdicts.
    Sample(SampleArgs),
    /// Check a common-cause model against a state's statistics.
    LhvCheck(LhvArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub settings: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SearchArgs {
    fn config(&self) -> OptimizeConfig {
        OptimizeConfig { restarts: self.restarts, max_iters: self.max_iters, seed: self.seed, ..OptimizeConfig::default() }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Objective::SumOfSquares)]
    pub objective: Objective,
    /// CSV destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, value_enum, default_value_t = Objective::SumOfSquares)]
    pub objective: Objective,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RegionsArgs {
    /// Vertices per circle.
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    /// Random product-state points to add.
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub settings: PathBuf,
    /// Shots per setting combination.
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV destination for the raw counts.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LhvArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub settings: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

/// 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn report_table(r: &HierarchyReport) -> String {
    let mut s = format!("X  {}\nY  {}\n", fmt17(r.xy.x_val), fmt17(r.xy.y_val));
    s.push_str("bound               limit  achieved                 margin                   satisfied\n");
    for b in Bound::ALL {
        let c = r.check(b);
        s.push_str(&format!(
            "{:<19} {:<6} {:<24} {:<24} {}\n",
            bound_name(b),
            c.limit,
            fmt17(c.achieved),
            fmt17(c.margin),
            c.satisfied
        ));
    }
    s.push_str(&format!("region  {}\nhidden_qunonlocality  {}\n", r.region.label(), r.hidden_qunonlocality));
    s
}

pub fn bound_name(b: Bound) -> &'static str {
    match b {
        Bound::QuantumMechanics => "quantum_mechanics",
        Bound::Realism => "realism",
        Bound::Locality => "locality",
        Bound::QuantumLocality => "quantum_locality",
    }
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let rho = load_json::<StateSpec>(&args.state)?.to_density_matrix()?;
    let (pa, pb) = load_json::<SettingsSpec>(&args.settings)?.to_pairs()?;
    let report = classify(xy_quantities(&rho, &pa, &pb)?, args.tol);
    emit(out, &if args.json { to_json(&report) } else { report_table(&report) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub x: f64,
    pub max_value: f64,
    pub violates_qm: bool,
    pub violates_realism: bool,
    pub violates_locality: bool,
    pub violates_quantum_locality: bool,
    /// Positive partial transpose, i.e. separable.
    pub ppt: bool,
}

pub const SCAN_HEADER: &str =
    "x,max_value,violates_qm,violates_realism,violates_locality,violates_quantum_locality,ppt";

impl ScanRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt17(self.x),
            fmt17(self.max_value),
            self.violates_qm,
            self.violates_realism,
            self.violates_locality,
            self.violates_quantum_locality,
            self.ppt
        )
    }
}

pub fn scan_werner(steps: usize, obj: Objective, config: &OptimizeConfig) -> CliResult<Vec<ScanRow>> {
    if steps < 2 {
        return Err(CliError::Validation(format!("--steps must be at least 2 (got {steps})")));
    }
    (0..steps)
        .map(|k| {
            let x = if k + 1 == steps { 1.0 } else { k as f64 / (steps - 1) as f64 };
            let s = survey_state(&make_werner(x)?, config)?;
            Ok(ScanRow {
                x,
                max_value: s.max_for(obj),
                violates_qm: s.violates_quantum_mechanics,
                violates_realism: s.violates_realism,
                violates_locality: s.violates_locality,
                violates_quantum_locality: s.violates_quantum_locality,
                ppt: s.ppt,
            })
        })
        .collect()
}

pub fn cmd_scan_werner(args: &ScanArgs, out: &mut dyn Write) -> CliResult<()> {
    let config = args.search.config();
    config.validate()?;
    let rows = scan_werner(args.steps, args.objective, &config)?;
    let mut csv = String::from(SCAN_HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    if let Some(path) = &args.out {
        write_file(path, &csv)?;
    }
    if args.json {
        emit(out, &to_json(&rows))
    } else if args.out.is_none() {
        emit(out, &csv)
    } else {
        let mut s = format!("objective {}\n{:<8} {:<24} qm    rt    lt    lqt   ppt\n", args.objective.name(), "x", "max");
        for r in &rows {
            s.push_str(&format!(
                "{:<8.4} {:<24} {:<5} {:<5} {:<5} {:<5} {}\n",
                r.x,
                fmt17(r.max_value),
                r.violates_qm,
                r.violates_realism,
                r.violates_locality,
                r.violates_quantum_locality,
                r.ppt
            ));
        }
        emit(out, &s)
    }
}

pub fn cmd_optimize(args: &OptimizeArgs, out: &mut dyn Write) -> CliResult<()> {
    let rho = load_json::<StateSpec>(&args.state)?.to_density_matrix()?;
    let r: OptimizeResult = maximize(&rho, args.objective, &args.search.config())?;
    if args.json {
        return emit(out, &to_json(&r));
    }
    let v = |a: [f64; 3]| format!("[{}, {}, {}]", fmt17(a[0]), fmt17(a[1]), fmt17(a[2]));
    emit(
        out,
        &format!(
            "objective    {}\nbest_value   {}\nX            {}\nY            {}\na            {}\na_perp       {}\nb            {}\nb_perp       {}\nevaluations  {}\nconverged    {}\n",
            args.objective.name(),
            fmt17(r.best_value),
            fmt17(r.xy.x_val),
            fmt17(r.xy.y_val),
            v(r.settings_a[0]),
            v(r.settings_a[1]),
            v(r.settings_b[0]),
            v(r.settings_b[1]),
            r.evaluations,
            r.converged
        ),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub name: String,
    pub bound: Bound,
    /// Closed: the last vertex repeats the first.
    pub points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AchievablePoint {
    pub x: f64,
    pub y: f64,
    pub region: Region,
    pub source: String,
    pub state: StateSpec,
    pub settings: SettingsSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionsDocument {
    pub boundaries: Vec<Polyline>,
    pub points: Vec<AchievablePoint>,
}

fn circle(name: &str, bound: Bound, radius: f64, n: usize) -> Polyline {
    let mut points: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            [radius * t.cos(), radius * t.sin()]
        })
        .collect();
    points.push(points[0]);
    Polyline { name: name.into(), bound, points }
}

/// Coplanar sweep with an opposite-handed pair on B: for the singlet
/// `X = -2 sin t`, `Y = -2 cos t`, tracing the whole radius-2 circle.
pub fn sweep_settings(theta: f64) -> (SettingPair, SettingPair) {
    let (s, c) = theta.sin_cos();
    let pa = SettingPair::new(UnitVector3::x_axis(), UnitVector3::y_axis()).expect("axes");
    let b = UnitVector3::normalized([c, s, 0.0]).expect("unit");
    let bp = UnitVector3::normalized([s, -c, 0.0]).expect("unit");
    (pa, SettingPair::new(b, bp).expect("orthogonal"))
}

pub fn regions_document(resolution: usize, points: usize, seed: u64) -> CliResult<RegionsDocument> {
    if resolution < 8 {
        return Err(CliError::Validation(format!("--resolution must be at least 8 (got {resolution})")));
    }
    let square = Polyline {
        name: "realism_square".into(),
        bound: Bound::Realism,
        points: vec![[2.0, 2.0], [-2.0, 2.0], [-2.0, -2.0], [2.0, -2.0], [2.0, 2.0]],
    };
    let diamond = Polyline {
        name: "locality_diamond".into(),
        bound: Bound::Locality,
        points: vec![[2.0, 0.0], [0.0, 2.0], [-2.0, 0.0], [0.0, -2.0], [2.0, 0.0]],
    };
    let boundaries = vec![
        circle("quantum_circle", Bound::QuantumMechanics, 2.0, resolution),
        square,
        diamond,
        circle("quantum_locality_circle", Bound::QuantumLocality, 1.0, resolution),
    ];

    let mut out = Vec::new();
    let mut push = |source: &str, spec: StateSpec, pa: &SettingPair, pb: &SettingPair| -> CliResult<()> {
        let rho = spec.to_density_matrix()?;
        let xy = xy_quantities(&rho, pa, pb)?;
        out.push(AchievablePoint {
            x: xy.x_val,
            y: xy.y_val,
            region: classify(xy, DEFAULT_TOL).region,
            source: source.into(),
            state: spec,
            settings: SettingsSpec::from_pairs(pa, pb),
        });
        Ok(())
    };
    for k in 0..resolution {
        let (pa, pb) = sweep_settings(TAU * k as f64 / resolution as f64);
        push("singlet_sweep", StateSpec::Singlet, &pa, &pb)?;
    }
    let per_werner = (resolution / 4).max(2);
    for x in [0.25, 0.5, 0.75] {
        for k in 0..per_werner {
            let (pa, pb) = sweep_settings(TAU * k as f64 / per_werner as f64);
            push("werner_sweep", StateSpec::Werner { x }, &pa, &pb)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let spec = StateSpec::Product {
            bloch_a: random::bloch_vector(&mut rng),
            bloch_b: random::bloch_vector(&mut rng),
        };
        let (pa, pb) = (random::setting_pair(&mut rng), random::setting_pair(&mut rng));
        push("random_product", spec, &pa, &pb)?;
    }
    Ok(RegionsDocument { boundaries, points: out })
}

pub fn cmd_regions(args: &RegionsArgs, out: &mut dyn Write) -> CliResult<()> {
    let doc = regions_document(args.resolution, args.points, args.seed)?;
    let text = to_json(&doc);
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            if args.json {
                emit(out, &to_json(&serde_json::json!({
                    "out": path.display().to_string(),
                    "boundaries": doc.boundaries.len(),
                    "points": doc.points.len(),
                })))
            } else {
                emit(out, &format!(
                    "wrote {} boundaries and {} points to {}\n",
                    doc.boundaries.len(),
                    doc.points.len(),
                    path.display()
                ))
            }
        }
        None => emit(out, &text),
    }
}

/// Error-aware status of one bound for a noisy estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Violated,
    NotViolated,
    Inconclusive,
}

/// Significance, in standard errors, required for a verdict.
pub const SIGMA_LEVEL: f64 = 5.0;

pub fn verdict(value: f64, limit: f64, se: f64) -> Verdict {
    let excess = value - limit;
    if excess > SIGMA_LEVEL * se {
        Verdict::Violated
    } else if -excess > SIGMA_LEVEL * se {
        Verdict::NotViolated
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound: Bound,
    pub limit: f64,
    pub estimate: f64,
    pub standard_error: f64,
    /// `(estimate - limit) / standard_error`.
    pub sigmas: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub shots_per_setting: u64,
    pub seed: u64,
    pub x: f64,
    pub y: f64,
    pub se_x: f64,
    pub se_y: f64,
    /// Classification of the point estimate, ignoring errors.
    pub estimate_classification: HierarchyReport,
    pub bounds: Vec<BoundVerdict>,
    /// `violated`, `no_violation` or `inconclusive`.
    pub overall: String,
    pub violated: Vec<Bound>,
}

pub fn sample_report(est: &EmpiricalXy, shots: u64, seed: u64) -> SampleReport {
    let xy = est.xy;
    let bounds: Vec<BoundVerdict> = Bound::ALL
        .into_iter()
        .map(|b| {
            let se = match b {
                Bound::QuantumMechanics | Bound::QuantumLocality => est.se_sum_of_squares(),
                Bound::Realism => est.se_x.max(est.se_y),
                Bound::Locality => est.se_pm(),
            };
            let value = b.achieved(&xy);
            BoundVerdict {
                bound: b,
                limit: b.limit(),
                estimate: value,
                standard_error: se,
                sigmas: if se > 0.0 { (value - b.limit()) / se } else { f64::NAN },
                verdict: verdict(value, b.limit(), se),
            }
        })
        .collect();
    let violated: Vec<Bound> = bounds.iter().filter(|v| v.verdict == Verdict::Violated).map(|v| v.bound).collect();
    let overall = if !violated.is_empty() {
        "violated"
    } else if bounds.iter().any(|v| v.verdict == Verdict::Inconclusive) {
        "inconclusive"
    } else {
        "no_violation"
    };
    SampleReport {
        shots_per_setting: shots,
        seed,
        x: xy.x_val,
        y: xy.y_val,
        se_x: est.se_x,
        se_y: est.se_y,
        estimate_classification: classify(xy, DEFAULT_TOL),
        bounds,
        overall: overall.into(),
        violated,
    }
}

pub fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> CliResult<()> {
    let rho = load_json::<StateSpec>(&args.state)?.to_density_matrix()?;
    let (pa, pb) = load_json::<SettingsSpec>(&args.settings)?.to_pairs()?;
    if args.shots == 0 {
        return Err(CliError::Validation("--shots must be at least 1".into()));
    }
    let est = empirical_xy(&rho, &pa, &pb, args.shots, args.seed)?;
    if let Some(path) = &args.out {
        let labels = ["a,b", "a,b_perp", "a_perp,b", "a_perp,b_perp"];
        let mut csv = String::from("combination,stream,pp,pm,mp,mm,n,correlation,standard_error\n");
        for (k, (label, run)) in labels.iter().zip(&est.runs).enumerate() {
            let c = run.flat_counts();
            csv.push_str(&format!(
                "\"{label}\",{k},{},{},{},{},{},{},{}\n",
                c[0],
                c[1],
                c[2],
                c[3],
                run.n,
                fmt17(run.empirical_correlation),
                fmt17(run.standard_error)
            ));
        }
        write_file(path, &csv)?;
    }
    let report = sample_report(&est, args.shots, args.seed);
    if args.json {
        return emit(out, &to_json(&report));
    }
    let mut s = format!(
        "X  {} +- {}\nY  {} +- {}\n",
        fmt17(report.x),
        fmt17(report.se_x),
        fmt17(report.y),
        fmt17(report.se_y)
    );
    for v in &report.bounds {
        s.push_str(&format!(
            "{:<19} estimate {:<24} limit {:<4} {:?}\n",
            bound_name(v.bound),
            fmt17(v.estimate),
            v.limit,
            v.verdict
        ));
    }
    s.push_str(&format!("overall  {}\n", report.overall));
    emit(out, &s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LhvReport {
    /// Largest joint-probability deviation over the four combinations.
    pub joint_deviation: f64,
    /// Largest `|E_model - E_state|` over the four combinations.
    pub correlation_deviation: f64,
    pub tol: f64,
    pub pass: bool,
    pub model_xy: XYPoint,
    pub state_xy: XYPoint,
    pub model_region: Region,
    pub state_region: Region,
}

pub fn cmd_lhv_check(args: &LhvArgs, out: &mut dyn Write) -> CliResult<()> {
    let model = load_json::<ModelSpec>(&args.model)?.to_model()?;
    let rho = load_json::<StateSpec>(&args.state)?.to_density_matrix()?;
    let settings = load_json::<SettingsSpec>(&args.settings)?;
    let (pa, pb) = settings.to_pairs()?;
    let combos = settings.combinations()?;
    let verdict = verify_locality_condition(&model, &rho, &combos, args.tol)?;
    let mut correlation_deviation = 0.0f64;
    for &(a, b) in &combos {
        let d = (model_correlation(&model, a, b)? - correlation(&rho, a, b)?).abs();
        correlation_deviation = correlation_deviation.max(d);
    }
    let model_xy = crate::correlations::xy_from_correlator(&pa, &pb, |a, b| model_correlation(&model, a, b))?;
    let state_xy = xy_quantities(&rho, &pa, &pb)?;
    let report = LhvReport {
        joint_deviation: verdict.max_deviation,
        correlation_deviation,
        tol: args.tol,
        pass: verdict.holds && correlation_deviation <= args.tol,
        model_xy,
        state_xy,
        model_region: classify(model_xy, DEFAULT_TOL).region,
        state_region: classify(state_xy, DEFAULT_TOL).region,
    };
    if args.json {
        return emit(out, &to_json(&report));
    }
    emit(
        out,
        &format!(
            "joint_deviation        {}\ncorrelation_deviation  {}\ntol                    {}\nmodel region           {}\nstate region           {}\nresult                 {}\n",
            fmt17(report.joint_deviation),
            fmt17(report.correlation_deviation),
            report.tol,
            report.model_region.label(),
            report.state_region.label(),
            if report.pass { "pass" } else { "fail" }
        ),
    )
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::ScanWerner(a) => cmd_scan_werner(a, out),
        Command::Optimize(a) => cmd_optimize(a, out),
        Command::Regions(a) => cmd_regions(a, out),
        Command::Sample(a) => cmd_sample(a, out),
        Command::LhvCheck(a) => cmd_lhv_check(a, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_singlet;

    #[test]
    fn verdict_levels() {
        assert_eq!(verdict(4.0, 1.0, 0.1), Verdict::Violated);
        assert_eq!(verdict(0.5, 1.0, 0.01), Verdict::NotViolated);
        assert_eq!(verdict(1.02, 1.0, 0.01), Verdict::Inconclusive);
        assert_eq!(verdict(1.0, 1.0, 0.0), Verdict::Inconclusive);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt17(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn diamond_vertices_and_inner_circle() {
        let doc = regions_document(16, 4, 1).unwrap();
        let diamond = doc.boundaries.iter().find(|p| p.bound == Bound::Locality).unwrap();
        assert_eq!(&diamond.points[..4], &[[2.0, 0.0], [0.0, 2.0], [-2.0, 0.0], [0.0, -2.0]]);
        let inner = doc.boundaries.iter().find(|p| p.bound == Bound::QuantumLocality).unwrap();
        for p in &inner.points {
            assert!(p[0].abs() + p[1].abs() <= 2.0);
        }
        for line in &doc.boundaries {
            assert_eq!(line.points.first(), line.points.last());
        }
        assert!(regions_document(7, 0, 0).is_err());
    }

    #[test]
    fn singlet_sweep_lies_on_outer_circle() {
        let rho = make_singlet();
        for k in 0..32 {
            let (pa, pb) = sweep_settings(TAU * k as f64 / 32.0);
            let xy = xy_quantities(&rho, &pa, &pb).unwrap();
            assert!((xy.sum_of_squares() - 4.0).abs() < 1e-12);
        }
    }
}
