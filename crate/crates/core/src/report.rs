//! Reproduction report for the two reference chains.
//!
//! For each system the bound is evaluated with the shift recommended from
//! `k = 1, 3, 5` eigenvector pairs, and the maximum of `F` over the
//! validity window is found by a fixed grid sweep. The three-pair results
//! are compared against the published reference values.

use serde::Serialize;

use crate::bounds::{f_alpha, linspace, sweep, validity_window, window_edge};
use crate::error::Result;
use crate::estimation::alpha_progression;
use crate::experiment::{CommandResult, DEFAULT_GRID_INTERVALS};
use crate::fixtures::ReferenceSystem;
use crate::linalg::sym_eigen;
use crate::modal::solve_pencil;

/// Allowed distance to a reference value for a recipe to count as a match.
pub const REFERENCE_TOLERANCE: f64 = 0.5;

/// Truncation levels reported per system.
pub const REPORT_LEVELS: [usize; 3] = [1, 3, 5];

/// Pair count the reference values were obtained with.
pub const REFERENCE_LEVEL: usize = 3;

const ALPHA_SELECTION_NOTE: &str = "The reference values do not state how alpha was chosen. \
Two recipes are compared: alpha = rho(G V+)/2 from the first three pairs, and the maximum of \
F(alpha) over the validity window found by grid sweep (independent of k, since F only uses the \
first pair). A system passes when either recipe is within the tolerance.";

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub k: usize,
    pub rho: f64,
    pub recommended_alpha: f64,
    pub f_at_recommended_alpha: f64,
    pub recommended_alpha_valid: bool,
    /// `|w2 - alpha| - |w1 - alpha|`; negative outside the window.
    pub window_margin: f64,
    /// `(w1 + w2)/2 - alpha`.
    pub gap_to_window_edge: f64,
    /// `w1 - F(alpha)`.
    pub gap_to_true_w1: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_points: usize,
    pub best_alpha: Option<f64>,
    pub best_value: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub k: usize,
    pub reference_value: f64,
    pub tolerance: f64,
    pub recommended_alpha_bound: f64,
    pub recommended_alpha_diff: f64,
    pub recommended_alpha_pass: bool,
    pub sweep_max_bound: Option<f64>,
    pub sweep_max_diff: Option<f64>,
    pub sweep_max_pass: bool,
    /// Level (any k) whose recommended-alpha bound is closest to the
    /// reference value.
    pub nearest_level: usize,
    pub nearest_level_bound: f64,
    pub status: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemReport {
    pub name: &'static str,
    pub masses: Vec<f64>,
    pub springs: Vec<f64>,
    pub pencil_eigenvalues: Vec<f64>,
    pub mass_eigenvalues: Vec<f64>,
    pub true_w1: f64,
    pub true_w2: f64,
    pub window_edge: f64,
    pub sweep: SweepSummary,
    pub levels: Vec<LevelReport>,
    /// Recommended-alpha bound for every k from 1 to n.
    pub progression: Vec<LevelReport>,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceReport {
    pub tolerance: f64,
    pub alpha_selection_note: &'static str,
    pub systems: Vec<SystemReport>,
    /// `PASS` when every system matches its reference value, otherwise
    /// `DOCUMENTED` (both recipes recorded for the mismatching systems).
    pub overall: &'static str,
}

impl ReproduceReport {
    pub fn system(&self, name: &str) -> Option<&SystemReport> {
        self.systems.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        crate::experiment::to_json(self)
    }
}

pub fn reproduce_system(which: ReferenceSystem) -> Result<SystemReport> {
    let sys = which.system();
    let modal = solve_pencil(&sys)?;
    let mass_spec = sym_eigen(sys.mass())?.values;
    let (w1, w2) = (mass_spec[0], mass_spec[1]);
    let edge = window_edge(&mass_spec).expect("five mass eigenvalues");
    let g1 = modal.left_vector(0);
    let v1 = modal.right_vector(0);

    let progression = alpha_progression(&modal)?
        .into_iter()
        .map(|est| {
            let alpha = est.recommended_alpha;
            let value = f_alpha(&g1, &v1, alpha)?;
            let window = validity_window(&mass_spec, alpha)?;
            Ok(LevelReport {
                k: est.k,
                rho: est.rho,
                recommended_alpha: alpha,
                f_at_recommended_alpha: value,
                recommended_alpha_valid: window.valid,
                window_margin: window.margin,
                gap_to_window_edge: edge - alpha,
                gap_to_true_w1: w1 - value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let levels: Vec<LevelReport> = progression
        .iter()
        .filter(|l| REPORT_LEVELS.contains(&l.k))
        .cloned()
        .collect();

    let grid_max = 1.5 * edge;
    let grid = linspace(0.0, grid_max, DEFAULT_GRID_INTERVALS + 1);
    let swept = sweep(&g1, &v1, &grid, Some(&mass_spec))?;
    let summary = SweepSummary {
        grid_min: 0.0,
        grid_max,
        grid_points: grid.len(),
        best_alpha: swept.best.map(|b| b.alpha),
        best_value: swept.best.map(|b| b.value),
    };

    let reference = which.published_bound_k3();
    let at_ref = &progression[REFERENCE_LEVEL - 1];
    let rec_diff = (at_ref.f_at_recommended_alpha - reference).abs();
    let sweep_diff = summary.best_value.map(|v| (v - reference).abs());
    let rec_pass = rec_diff <= REFERENCE_TOLERANCE;
    let sweep_pass = sweep_diff.is_some_and(|d| d <= REFERENCE_TOLERANCE);
    let nearest = progression
        .iter()
        .min_by(|a, b| {
            (a.f_at_recommended_alpha - reference)
                .abs()
                .total_cmp(&(b.f_at_recommended_alpha - reference).abs())
        })
        .expect("at least one level");

    Ok(SystemReport {
        name: which.name(),
        masses: which.masses().to_vec(),
        springs: crate::fixtures::SPRINGS.to_vec(),
        pencil_eigenvalues: modal.eigenvalues().to_vec(),
        mass_eigenvalues: mass_spec.clone(),
        true_w1: w1,
        true_w2: w2,
        window_edge: edge,
        sweep: summary.clone(),
        comparison: Comparison {
            k: REFERENCE_LEVEL,
            reference_value: reference,
            tolerance: REFERENCE_TOLERANCE,
            recommended_alpha_bound: at_ref.f_at_recommended_alpha,
            recommended_alpha_diff: rec_diff,
            recommended_alpha_pass: rec_pass,
            sweep_max_bound: summary.best_value,
            sweep_max_diff: sweep_diff,
            sweep_max_pass: sweep_pass,
            nearest_level: nearest.k,
            nearest_level_bound: nearest.f_at_recommended_alpha,
            status: if rec_pass || sweep_pass { "PASS" } else { "FAIL" },
        },
        levels,
        progression,
    })
}

/// Runs both reference systems. Deterministic: fixed grids, no randomness.
pub fn cmd_reproduce() -> CommandResult<ReproduceReport> {
    let systems = ReferenceSystem::ALL
        .iter()
        .map(|&s| reproduce_system(s))
        .collect::<Result<Vec<_>>>()?;
    let overall = if systems.iter().all(|s| s.comparison.status == "PASS") {
        "PASS"
    } else {
        "DOCUMENTED"
    };
    Ok(ReproduceReport {
        tolerance: REFERENCE_TOLERANCE,
        alpha_selection_note: ALPHA_SELECTION_NOTE,
        systems,
        overall,
    })
}
