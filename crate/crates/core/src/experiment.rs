//! Command implementations behind the `massbound` binary.
//!
//! Every command returns a value (or writes a file) so it can be driven
//! from tests as well as from the command line. Failures carry the process
//! exit code: 1 for bad input, 2 for numerical failure. `check-perturb`
//! exits 3 when a perturbation cannot be certified.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{f_alpha, linspace, stepped_grid, sweep, window_edge, Admissibility, SweepResult};
use crate::error::Error;
use crate::estimation::{alpha_progression, estimate_from_modal};
use crate::fixtures::ReferenceSystem;
use crate::formats::{csv_number, DeltaFile, ModalFile, SystemFile};
use crate::linalg::sym_eigen;
use crate::modal::{solve_pencil, MassStiffnessSystem, ModalData};
use crate::svg::render_sweep;

pub use crate::report::{cmd_reproduce, ReproduceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;

/// Number of intervals in the default alpha grid.
pub const DEFAULT_GRID_INTERVALS: usize = 600;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Input(_) | CommandError::Io { .. } => EXIT_INPUT,
            CommandError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPositiveDefinite { .. } | Error::NoConvergence { .. } => CommandError::Numerical(e),
            other => CommandError::Input(other.to_string()),
        }
    }
}

pub type CommandResult<T> = std::result::Result<T, CommandError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Full matrices are available; validity is computed.
    Oracle,
    /// Only eigenvector pairs are available; validity is unknown.
    #[default]
    Blind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Options for [`cmd_sweep`].
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    /// Pairs used for the mass estimate; all pairs in the file by default.
    pub k: Option<usize>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub alpha_step: Option<f64>,
    pub format: OutputFormat,
    pub plot: Option<PathBuf>,
    pub mode: Mode,
    /// System file; required in oracle mode.
    pub system: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> CommandResult<()> {
        if self.k == Some(0) {
            return Err(CommandError::Input("k must be at least 1".into()));
        }
        if let Some(step) = self.alpha_step {
            if !(step > 0.0) {
                return Err(CommandError::Input(format!("alpha step must be positive, got {step}")));
            }
        }
        if let (Some(lo), Some(hi)) = (self.alpha_min, self.alpha_max) {
            if !(lo < hi) {
                return Err(CommandError::Input(format!("alpha range is empty: [{lo}, {hi}]")));
            }
        }
        if self.mode == Mode::Oracle && self.system.is_none() {
            return Err(CommandError::Input("oracle mode needs --system".into()));
        }
        Ok(())
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CommandResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CommandError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CommandError::Input(format!("{}: parse error: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CommandResult<()> {
    fs::write(path, text).map_err(|source| CommandError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn load_system(path: &Path) -> CommandResult<MassStiffnessSystem> {
    Ok(read_json::<SystemFile>(path)?.to_system()?)
}

pub fn load_modal(path: &Path) -> CommandResult<ModalData> {
    Ok(read_json::<ModalFile>(path)?.to_modal()?)
}

/// Writes one of the reference systems as an explicit-matrix system file.
pub fn cmd_gen(name: &str, out: &Path) -> CommandResult<SystemFile> {
    let which: ReferenceSystem = name
        .parse()
        .map_err(|_| CommandError::Input(format!("unknown system {name:?} (expected M1 or M2)")))?;
    let file = SystemFile::from_system(&which.system());
    write_text(out, &to_json(&file))?;
    Ok(file)
}

/// Solves the pencil in `system` and keeps the first `k` pairs.
pub fn cmd_modal(system: &Path, k: Option<usize>) -> CommandResult<ModalFile> {
    let sys = load_system(system)?;
    let modal = solve_pencil(&sys)?;
    let k = k.unwrap_or(modal.k());
    if k == 0 || k > modal.k() {
        return Err(CommandError::Input(format!("k = {k} outside 1..={}", modal.k())));
    }
    Ok(ModalFile::from_modal(&modal.truncate(k)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    #[serde(rename = "F_alpha")]
    pub f_alpha: f64,
    pub valid: &'static str,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub mode: Mode,
    pub k: usize,
    pub recommended_alpha: f64,
    pub f_at_recommended_alpha: f64,
    /// Least mass eigenvalue, oracle mode only.
    pub reference_w1: Option<f64>,
    pub window_edge: Option<f64>,
    pub result: SweepResult,
}

#[derive(Serialize)]
struct SweepJson {
    mode: Mode,
    k: usize,
    recommended_alpha: f64,
    f_at_recommended_alpha: f64,
    reference_w1: Option<f64>,
    window_edge: Option<f64>,
    best: Option<SweepRow>,
    samples: Vec<SweepRow>,
}

impl SweepReport {
    pub fn rows(&self) -> Vec<SweepRow> {
        self.result
            .samples
            .iter()
            .map(|s| SweepRow {
                alpha: s.alpha,
                f_alpha: s.value,
                valid: s.validity.as_str(),
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,F_alpha,valid\n");
        for s in &self.result.samples {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_number(s.alpha),
                csv_number(s.value),
                s.validity.as_str()
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        to_json(&SweepJson {
            mode: self.mode,
            k: self.k,
            recommended_alpha: self.recommended_alpha,
            f_at_recommended_alpha: self.f_at_recommended_alpha,
            reference_w1: self.reference_w1,
            window_edge: self.window_edge,
            best: self.result.best.map(|b| SweepRow {
                alpha: b.alpha,
                f_alpha: b.value,
                valid: b.validity.as_str(),
            }),
            samples: self.rows(),
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn svg(&self, title: &str) -> String {
        render_sweep(&self.result.samples, self.reference_w1, title)
    }
}

/// Evaluates `F(alpha)` from the first modal pair over an alpha grid.
///
/// Default grids: `[0, 2.4 * alpha_rec]` in blind mode and
/// `[0, 1.5 * (w1 + w2) / 2]` in oracle mode, each split into
/// [`DEFAULT_GRID_INTERVALS`] steps. Explicit bounds or step override the
/// defaults. With `cfg.plot` set the SVG is written there.
pub fn cmd_sweep(modal_path: &Path, cfg: &RunConfig) -> CommandResult<SweepReport> {
    cfg.validate()?;
    let modal = load_modal(modal_path)?;
    sweep_modal(&modal, cfg)
}

pub fn sweep_modal(modal: &ModalData, cfg: &RunConfig) -> CommandResult<SweepReport> {
    cfg.validate()?;
    let k = cfg.k.unwrap_or(modal.k());
    if k > modal.k() {
        return Err(CommandError::Input(format!(
            "k = {k} but the modal data holds {} pairs",
            modal.k()
        )));
    }
    let estimate = estimate_from_modal(modal, k)?;
    let g1 = modal.left_vector(0);
    let v1 = modal.right_vector(0);

    let spectrum = match (cfg.mode, &cfg.system) {
        (Mode::Oracle, Some(path)) => {
            let sys = load_system(path)?;
            check_consistency(&sys, modal)?;
            Some(sym_eigen(sys.mass())?.values)
        }
        _ => None,
    };
    let edge = spectrum.as_deref().and_then(window_edge);

    let (default_lo, default_hi) = match (spectrum.as_deref(), edge) {
        (Some(_), Some(e)) => (0.0, 1.5 * e),
        (Some(s), None) => (0.0, 2.0 * s[0].abs().max(1.0)),
        _ => (0.0, 2.4 * estimate.recommended_alpha),
    };
    let lo = cfg.alpha_min.unwrap_or(default_lo);
    let hi = cfg.alpha_max.unwrap_or(default_hi);
    if !(lo < hi) {
        return Err(CommandError::Input(format!("empty alpha grid [{lo}, {hi}]")));
    }
    let grid = match cfg.alpha_step {
        Some(step) => stepped_grid(lo, hi, step)?,
        None => linspace(lo, hi, DEFAULT_GRID_INTERVALS + 1),
    };

    let result = sweep(&g1, &v1, &grid, spectrum.as_deref())?;
    let report = SweepReport {
        mode: cfg.mode,
        k,
        recommended_alpha: estimate.recommended_alpha,
        f_at_recommended_alpha: f_alpha(&g1, &v1, estimate.recommended_alpha)?,
        reference_w1: spectrum.as_ref().map(|s| s[0]),
        window_edge: edge,
        result,
    };
    if let Some(plot) = &cfg.plot {
        let title = format!("F(alpha) from {} pair(s), {:?} mode", k, cfg.mode).to_lowercase();
        write_text(plot, &report.svg(&title))?;
    }
    Ok(report)
}

/// Oracle mode only: the modal file must belong to the system file.
fn check_consistency(sys: &MassStiffnessSystem, modal: &ModalData) -> CommandResult<()> {
    if sys.dim() != modal.n() {
        return Err(CommandError::Input(format!(
            "system has {} degrees of freedom, modal data {}",
            sys.dim(),
            modal.n()
        )));
    }
    let mv = sys.mass().matmul(modal.right())?;
    let residual = mv.max_abs_diff(modal.left());
    let scale = sys.mass().frobenius_norm() * modal.right().max_abs();
    if !(residual <= 1e-8 * scale.max(1.0)) {
        return Err(CommandError::Input(format!(
            "modal data does not match the system: |G - M V| = {residual:e}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateLevel {
    pub k: usize,
    pub rho: f64,
    pub recommended_alpha: f64,
    pub f_at_recommended_alpha: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub k: usize,
    pub rho: f64,
    pub recommended_alpha: f64,
    pub f_at_recommended_alpha: f64,
    pub m_prime: Vec<Vec<f64>>,
    /// The same quantities for every truncation level available.
    pub progression: Vec<EstimateLevel>,
}

/// Mass estimate from the first `k` pairs plus the progression over all
/// available levels.
pub fn cmd_estimate(modal_path: &Path, k: Option<usize>) -> CommandResult<EstimateReport> {
    let modal = load_modal(modal_path)?;
    let k = k.unwrap_or(modal.k());
    if k == 0 || k > modal.k() {
        return Err(CommandError::Input(format!("k = {k} outside 1..={}", modal.k())));
    }
    let g1 = modal.left_vector(0);
    let v1 = modal.right_vector(0);
    let progression = alpha_progression(&modal)?
        .into_iter()
        .map(|e| {
            Ok(EstimateLevel {
                k: e.k,
                rho: e.rho,
                recommended_alpha: e.recommended_alpha,
                f_at_recommended_alpha: f_alpha(&g1, &v1, e.recommended_alpha)?,
            })
        })
        .collect::<CommandResult<Vec<_>>>()?;
    let est = estimate_from_modal(&modal, k)?;
    Ok(EstimateReport {
        k,
        rho: est.rho,
        recommended_alpha: est.recommended_alpha,
        f_at_recommended_alpha: f_alpha(&g1, &v1, est.recommended_alpha)?,
        m_prime: est.m_prime.to_rows(),
        progression,
    })
}

/// Weyl admissibility of the mass perturbation in `delta` given a certified
/// lower bound on the least mass eigenvalue.
pub fn cmd_check_perturb(bound: f64, delta: &Path) -> CommandResult<Admissibility> {
    if !bound.is_finite() {
        return Err(CommandError::Input(format!("bound must be finite, got {bound}")));
    }
    let dm = read_json::<DeltaFile>(delta)?.to_matrix()?;
    Ok(crate::bounds::admissible_perturbation(bound, &dm)?)
}

pub fn verdict_line(a: &Admissibility) -> String {
    if a.admissible {
        format!("admissible (margin {})", a.margin)
    } else {
        format!("not certified (margin {})", a.margin)
    }
}

/// Exit code for a perturbation verdict.
pub fn verdict_exit_code(a: &Admissibility) -> i32 {
    if a.admissible {
        EXIT_OK
    } else {
        EXIT_NOT_CERTIFIED
    }
}
