//! Operator surface: configuration ingestion, command execution, report files.
//!
//! Commands are plain library functions so the thin binary, the examples and
//! the integration tests all drive the same code. Reports are JSON; trial
//! streams and distribution tables in CSV form carry reals as scientific
//! decimals with 17 significant digits, which round-trip `f64` exactly, so
//! identical seed and config reproduce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::TOL;
use crate::lhv::{best_lhv_fit, max_deterministic_chsh, model_distribution, LhvModel, ScanResult};
use crate::protocol::{
    exact_distribution, Experiment, JointDistribution, ProtocolError, SmHypothesis, TrialInputs,
    TrialRecord,
};
use crate::spacetime::{
    build_schedule, feasibility_check, regions_spacelike, validate_budget, BudgetReport,
    FeasibilityParams, Schedule, TimingBudget,
};
use crate::stats::{
    chsh, estimate, marginals, no_signalling_audit, ChshReport, Estimate, NoSignallingReport,
};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("infeasible budget: constraint `{constraint}` failed ({detail})")]
    Infeasible { constraint: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn config(field: &str, message: impl ToString) -> Self {
        Self::Config {
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => EXIT_CONFIG,
            CliError::Infeasible { .. } => EXIT_INFEASIBLE,
            _ => 1,
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(err: ProtocolError) -> Self {
        match err {
            ProtocolError::InfeasibleBudget { constraint, detail } => {
                CliError::Infeasible { constraint, detail }
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Output format of the distribution table; reports are always JSON and the
/// trial stream is always CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_out_dir")]
    pub dir: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_out_dir(),
            format: OutputFormat::default(),
        }
    }
}

/// The `[feasibility]` config section: discrimination-experiment parameters
/// plus the ratio that quantifies "much smaller than".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilitySection {
    pub m_source: f64,
    pub m_probe: f64,
    pub d: f64,
    pub d_prime: f64,
    pub t_geom: f64,
    pub dx_source: f64,
    pub dx_probe: f64,
    pub dv_source: f64,
    pub dv_probe: f64,
    #[serde(default = "default_margin")]
    pub margin: f64,
}

fn default_margin() -> f64 {
    100.0
}

impl FeasibilitySection {
    pub fn params(&self) -> FeasibilityParams {
        FeasibilityParams {
            m_source: self.m_source,
            m_probe: self.m_probe,
            d: self.d,
            d_prime: self.d_prime,
            t_geom: self.t_geom,
            dx_source: self.dx_source,
            dx_probe: self.dx_probe,
            dv_source: self.dv_source,
            dv_probe: self.dv_probe,
        }
    }

    fn from_params(params: FeasibilityParams, margin: f64) -> Self {
        Self {
            m_source: params.m_source,
            m_probe: params.m_probe,
            d: params.d,
            d_prime: params.d_prime,
            t_geom: params.t_geom,
            dx_source: params.dx_source,
            dx_probe: params.dx_probe,
            dv_source: params.dv_source,
            dv_probe: params.dv_probe,
            margin,
        }
    }
}

/// Run configuration, loaded from a TOML file with nested sections; every
/// field has a built-in default except the seed, which sampling commands
/// require explicitly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_hypothesis")]
    pub hypothesis: SmHypothesis,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "TimingBudget::reference")]
    pub budget: TimingBudget,
    #[serde(default = "default_feasibility")]
    pub feasibility: Option<FeasibilitySection>,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_hypothesis() -> SmHypothesis {
    SmHypothesis::BornReduce
}

fn default_trials() -> u64 {
    100_000
}

fn default_feasibility() -> Option<FeasibilitySection> {
    Some(FeasibilitySection::from_params(
        FeasibilityParams::reference(),
        default_margin(),
    ))
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            hypothesis: default_hypothesis(),
            trials: default_trials(),
            seed: None,
            budget: TimingBudget::reference(),
            feasibility: default_feasibility(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::config("config", e))
    }
}

/// What a command produced: files on disk plus a one-line summary.
#[derive(Debug, Clone)]
pub struct CmdOutput {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

fn prepare_out_dir(config: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&config.output.dir)?;
    Ok(())
}

/// 17-significant-digit scientific decimal; round-trips any f64 exactly.
fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

// ── Distribution table files ─────────────────────────────────────────────

pub fn write_distribution(
    dir: &Path,
    format: OutputFormat,
    dist: &JointDistribution,
) -> Result<PathBuf, CliError> {
    match format {
        OutputFormat::Json => {
            let path = dir.join("distribution.json");
            write_json(&path, dist)?;
            Ok(path)
        }
        OutputFormat::Csv => {
            let path = dir.join("distribution.csv");
            let mut text = String::from("alpha,alpha_prime,beta,beta_prime,a,b,s,p\n");
            for inputs in TrialInputs::all() {
                for outcome in 0..8u8 {
                    let (a, b, s) = (outcome & 1, (outcome >> 1) & 1, (outcome >> 2) & 1);
                    writeln!(
                        text,
                        "{},{},{},{},{a},{b},{s},{}",
                        inputs.alpha,
                        inputs.alpha_prime,
                        inputs.beta,
                        inputs.beta_prime,
                        fmt_real(dist.get(a, b, s, inputs))
                    )
                    .expect("writing to a String cannot fail");
                }
            }
            fs::write(&path, text)?;
            Ok(path)
        }
    }
}

/// Re-ingest a distribution table written by [`write_distribution`]; the
/// format is chosen by file extension.
pub fn read_distribution(path: &Path) -> Result<JointDistribution, CliError> {
    let text = fs::read_to_string(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        return serde_json::from_str(&text)
            .map_err(|e| CliError::Internal(format!("bad distribution file: {e}")));
    }
    let mut dist = JointDistribution::zeros();
    for (lineno, line) in text.lines().enumerate().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(CliError::Internal(format!(
                "bad distribution row at line {}",
                lineno + 1
            )));
        }
        let bit = |i: usize| -> Result<u8, CliError> {
            fields[i]
                .parse::<u8>()
                .map_err(|e| CliError::Internal(format!("line {}: {e}", lineno + 1)))
        };
        let inputs = TrialInputs::new(bit(0)?, bit(1)?, bit(2)?, bit(3)?);
        let p: f64 = fields[7]
            .parse()
            .map_err(|e| CliError::Internal(format!("line {}: {e}", lineno + 1)))?;
        dist.add(bit(4)?, bit(5)?, bit(6)?, inputs, p);
    }
    Ok(dist)
}

fn write_trials_csv(path: &Path, records: &[TrialRecord]) -> Result<(), CliError> {
    let mut text = String::from("alpha,alpha_prime,beta,beta_prime,a,b,s,t_a,t_s,t_b\n");
    for r in records {
        writeln!(
            text,
            "{},{},{},{},{},{},{},{},{},{}",
            r.inputs.alpha,
            r.inputs.alpha_prime,
            r.inputs.beta,
            r.inputs.beta_prime,
            r.a,
            r.b,
            r.s,
            fmt_real(r.times.alice_outcome),
            fmt_real(r.times.geometry_outcome),
            fmt_real(r.times.path_outcome)
        )
        .expect("writing to a String cannot fail");
    }
    fs::write(path, text)?;
    Ok(())
}

// ── Commands ─────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactReport {
    pub hypothesis: SmHypothesis,
    pub chsh: ChshReport,
    pub no_signalling: NoSignallingReport,
}

/// Exact joint distribution, CHSH report on the (α′ = 1, β′ = 1) slice of
/// P_AS, and a no-signalling audit.
pub fn cmd_exact(config: &RunConfig) -> Result<CmdOutput, CliError> {
    prepare_out_dir(config)?;
    let dist = exact_distribution(config.hypothesis);
    dist.validate()?;
    let dist_path = write_distribution(&config.output.dir, config.output.format, &dist)?;

    let slice = marginals(&dist).p_as.slice(1, 1);
    let report = ExactReport {
        hypothesis: config.hypothesis,
        chsh: chsh(&slice),
        no_signalling: no_signalling_audit(&dist, TOL),
    };
    let chsh_path = config.output.dir.join("chsh.json");
    write_json(&chsh_path, &report.chsh)?;
    let audit_path = config.output.dir.join("no_signalling.json");
    write_json(&audit_path, &report.no_signalling)?;
    let report_path = config.output.dir.join("exact.json");
    write_json(&report_path, &report)?;

    Ok(CmdOutput {
        files: vec![dist_path, chsh_path, audit_path, report_path],
        summary: format!(
            "exact: I_CHSH = {:.15}, verdict {:?}, no-signalling pass = {}",
            report.chsh.i_chsh, report.chsh.verdict, report.no_signalling.passed
        ),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleReport {
    pub hypothesis: SmHypothesis,
    pub seed: u64,
    pub trials: u64,
    pub estimate: Estimate,
}

/// Seeded Monte Carlo run: per-trial CSV plus the estimated CHSH report.
pub fn cmd_sample(config: &RunConfig) -> Result<CmdOutput, CliError> {
    let seed = config
        .seed
        .ok_or_else(|| CliError::config("seed", "sampling requires an explicit seed"))?;
    if config.trials == 0 {
        return Err(CliError::config("trials", "sampling requires trials > 0"));
    }
    let experiment = Experiment::new(&config.budget, config.hypothesis)?;
    prepare_out_dir(config)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = experiment.sample_trials(config.trials as usize, &mut rng);
    let trials_path = config.output.dir.join("trials.csv");
    write_trials_csv(&trials_path, &records)?;

    let est = estimate(&records).map_err(|e| CliError::Internal(e.to_string()))?;
    let report = SampleReport {
        hypothesis: config.hypothesis,
        seed,
        trials: config.trials,
        estimate: est,
    };
    let est_path = config.output.dir.join("estimate.json");
    write_json(&est_path, &report)?;

    Ok(CmdOutput {
        files: vec![trials_path, est_path],
        summary: format!(
            "sample: {} trials, Î = {:.6} ± {:.6}, verdict {:?}",
            report.trials,
            report.estimate.report.i_chsh,
            report.estimate.report.ci_halfwidth,
            report.estimate.report.verdict
        ),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub budget: TimingBudget,
    pub validation: BudgetReport,
    pub schedule: Schedule,
    pub wings_spacelike: bool,
    pub geometry_window_spacelike: bool,
}

/// Event times t0..t6 and spacelike verdicts; an infeasible budget fails
/// with the violated constraint named.
pub fn cmd_schedule(config: &RunConfig) -> Result<CmdOutput, CliError> {
    let validation = validate_budget(&config.budget);
    if let Some(failure) = validation.first_failure() {
        return Err(CliError::Infeasible {
            constraint: failure.name.clone(),
            detail: failure.detail.clone(),
        });
    }
    let schedule = build_schedule(&config.budget).map_err(|e| CliError::Internal(e.to_string()))?;
    prepare_out_dir(config)?;
    let report = ScheduleReport {
        budget: config.budget,
        validation,
        wings_spacelike: regions_spacelike(&schedule.region_alice, &schedule.region_bob),
        geometry_window_spacelike: regions_spacelike(&schedule.region_alice, &schedule.region_geom),
        schedule,
    };
    let path = config.output.dir.join("schedule.json");
    write_json(&path, &report)?;
    Ok(CmdOutput {
        files: vec![path],
        summary: format!(
            "schedule: t0..t6 = {:?}, wings spacelike = {}",
            report.schedule.times, report.wings_spacelike
        ),
    })
}

/// Newtonian feasibility inequalities with the computed coupling K.
pub fn cmd_feasibility(config: &RunConfig) -> Result<CmdOutput, CliError> {
    let section = config
        .feasibility
        .as_ref()
        .ok_or_else(|| CliError::config("feasibility", "section required for this command"))?;
    let report = feasibility_check(&section.params(), section.margin)
        .map_err(|e| CliError::config("feasibility", e))?;
    prepare_out_dir(config)?;
    let path = config.output.dir.join("feasibility.json");
    write_json(&path, &report)?;
    Ok(CmdOutput {
        files: vec![path],
        summary: format!(
            "feasibility: K = {:.6e} kg·m, margin {}, pass = {}",
            report.coupling, report.margin, report.passed
        ),
    })
}

/// Exhaustive classical ceiling over the 16 deterministic strategies.
pub fn cmd_lhv_bound(config: &RunConfig) -> Result<CmdOutput, CliError> {
    prepare_out_dir(config)?;
    let scan: ScanResult = max_deterministic_chsh();
    let path = config.output.dir.join("lhv_bound.json");
    write_json(&path, &scan)?;
    Ok(CmdOutput {
        files: vec![path],
        summary: format!(
            "lhv-bound: max I = {}, min I = {}, {} + {} extremal strategies",
            scan.max_i,
            scan.min_i,
            scan.argmax.len(),
            scan.argmin.len()
        ),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LhvFitReport {
    pub tv_distance: f64,
    pub fitted_chsh: ChshReport,
    pub model: LhvModel,
}

/// Closest classical mixture to the exact quantum (α′ = 1, β′ = 1) slice.
pub fn cmd_lhv_fit(config: &RunConfig) -> Result<CmdOutput, CliError> {
    prepare_out_dir(config)?;
    let target = marginals(&exact_distribution(config.hypothesis))
        .p_as
        .slice(1, 1);
    let fit = best_lhv_fit(&target).map_err(|e| CliError::Internal(e.to_string()))?;
    let report = LhvFitReport {
        tv_distance: fit.tv_distance,
        fitted_chsh: chsh(&model_distribution(&fit.model)),
        model: fit.model,
    };
    let path = config.output.dir.join("lhv_fit.json");
    write_json(&path, &report)?;
    Ok(CmdOutput {
        files: vec![path],
        summary: format!(
            "lhv-fit: distance {:.9} from the quantum table, fitted I = {:.6}",
            report.tv_distance, report.fitted_chsh.i_chsh
        ),
    })
}
