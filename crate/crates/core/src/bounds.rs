//! Lower bounds on the least mass eigenvalue `w1` from the first left/right
//! eigenvector pair, and Weyl-based admissibility of mass perturbations.
//!
//! For any `x` with `<x, v1> > 0` and any shift `alpha` closer to `w1` than
//! to every other mass eigenvalue,
//!
//! ```text
//! w1 >= alpha - |x| |g1 - alpha v1| / <x, v1>
//! ```
//!
//! Taking `x = v1` gives the sharpest form, `F(alpha) = alpha - |g1 - alpha v1| / |v1|`.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, sub_scaled, sym_eigen, SymmetricMatrix};

/// Whether a shift lies inside the certified window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid,
    /// No spectrum was available to check the window.
    Unknown,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::Valid => "true",
            Validity::Invalid => "false",
            Validity::Unknown => "unknown",
        }
    }

    pub fn is_valid(self) -> bool {
        self == Validity::Valid
    }
}

/// One sample of `F(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEvaluation {
    pub alpha: f64,
    pub value: f64,
    pub validity: Validity,
    /// `|w2 - alpha| - |w1 - alpha|` when a spectrum was supplied.
    pub window_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Samples in grid (ascending alpha) order.
    pub samples: Vec<BoundEvaluation>,
    /// Valid sample with the largest value; smallest alpha wins ties.
    pub best: Option<BoundEvaluation>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub valid: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    /// `lambda_1(dM) + L`; positive iff admissible.
    pub margin: f64,
    pub least_delta_eigenvalue: f64,
}

fn check_len(a: &[f64], b: &[f64], context: &'static str) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            context,
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// `alpha - |x| |g1 - alpha v1| / <x, v1>`, for `<x, v1> > 0`.
pub fn f_alpha_general(x: &[f64], g1: &[f64], v1: &[f64], alpha: f64) -> Result<f64> {
    check_len(v1, x, "f_alpha_general x")?;
    check_len(v1, g1, "f_alpha_general g1")?;
    let x_norm = norm(x);
    if x_norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let inner = dot(x, v1);
    if !(inner > 0.0) {
        return Err(Error::NonPositiveInnerProduct { inner });
    }
    Ok(alpha - x_norm * norm(&sub_scaled(g1, alpha, v1)) / inner)
}

/// `F(alpha) = alpha - |g1 - alpha v1| / |v1|`.
pub fn f_alpha(g1: &[f64], v1: &[f64], alpha: f64) -> Result<f64> {
    check_len(v1, g1, "f_alpha g1")?;
    let v_norm = norm(v1);
    if v_norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(alpha - norm(&sub_scaled(g1, alpha, v1)) / v_norm)
}

/// The bound is certified when `alpha` is strictly closer to `w1` than to
/// every other eigenvalue. `mass_spectrum[0]` is taken as `w1`.
///
/// A one-entry spectrum has no competitor, so every shift is valid with an
/// infinite margin.
pub fn validity_window(mass_spectrum: &[f64], alpha: f64) -> Result<Window> {
    let (&w1, rest) = mass_spectrum.split_first().ok_or(Error::Empty)?;
    let d1 = (w1 - alpha).abs();
    let Some(&w2) = rest.first() else {
        return Ok(Window {
            valid: true,
            margin: f64::INFINITY,
        });
    };
    let valid = rest.iter().all(|w| d1 < (w - alpha).abs());
    Ok(Window {
        valid,
        margin: (w2 - alpha).abs() - d1,
    })
}

/// `(w1 + w2) / 2`, the upper edge of the validity window for an ascending
/// spectrum.
pub fn window_edge(mass_spectrum: &[f64]) -> Option<f64> {
    match mass_spectrum {
        [w1, w2, ..] => Some(0.5 * (w1 + w2)),
        _ => None,
    }
}

/// Evaluates `F` on every grid point. With a spectrum (true or estimated)
/// each sample is classified against the window; without one validity is
/// [`Validity::Unknown`] and there is no best sample.
pub fn sweep(
    g1: &[f64],
    v1: &[f64],
    alpha_grid: &[f64],
    spectrum: Option<&[f64]>,
) -> Result<SweepResult> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidInput("empty alpha grid".into()));
    }
    if alpha_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("alpha grid must be strictly ascending".into()));
    }
    let mut samples = Vec::with_capacity(alpha_grid.len());
    for &alpha in alpha_grid {
        let value = f_alpha(g1, v1, alpha)?;
        let (validity, window_margin) = match spectrum {
            Some(s) => {
                let w = validity_window(s, alpha)?;
                let validity = if w.valid {
                    Validity::Valid
                } else {
                    Validity::Invalid
                };
                (validity, Some(w.margin))
            }
            None => (Validity::Unknown, None),
        };
        samples.push(BoundEvaluation {
            alpha,
            value,
            validity,
            window_margin,
        });
    }
    let best = samples
        .iter()
        .filter(|s| s.validity.is_valid())
        .fold(None::<BoundEvaluation>, |best, s| match best {
            Some(b) if b.value >= s.value => Some(b),
            _ => Some(*s),
        });
    Ok(SweepResult { samples, best })
}

/// `count` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}

/// `start, start + step, ...` up to `end` (inclusive within a small slack).
pub fn stepped_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(start < end) || !start.is_finite() || !end.is_finite() {
        return Err(Error::InvalidInput(format!(
            "alpha grid needs min < max and step > 0 (got {start}, {end}, {step})"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

/// Eigenvalues `1 / (w_i - alpha)` of `(M - alpha I)^-1`.
pub fn shift_invert_spectrum(mass_spectrum: &[f64], alpha: f64) -> Result<Vec<f64>> {
    let scale = mass_spectrum.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    mass_spectrum
        .iter()
        .enumerate()
        .map(|(index, &w)| {
            let d = w - alpha;
            if d == 0.0 || d.abs() < 1e-12 * scale {
                Err(Error::SingularShift {
                    index,
                    value: w,
                    alpha,
                })
            } else {
                Ok(1.0 / d)
            }
        })
        .collect()
}

/// Given a certified lower bound `L <= w1(M)`, `dM` is admissible when
/// `lambda_1(dM) > -L`; Weyl's inequality then gives
/// `lambda_1(M + dM) >= w1(M) + lambda_1(dM) > 0`.
///
/// A negative verdict only means the bound cannot certify `dM`.
pub fn admissible_perturbation(lower_bound_w1: f64, delta_mass: &SymmetricMatrix) -> Result<Admissibility> {
    let least = sym_eigen(delta_mass)?.min();
    let margin = least + lower_bound_w1;
    Ok(Admissibility {
        admissible: margin > 0.0,
        margin,
        least_delta_eigenvalue: least,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1_DIAG: [f64; 5] = [15.0, 21.0, 24.0, 27.0, 30.0];

    #[test]
    fn general_bound_exact_eigenvector() {
        let v = [0.6, 0.8, 0.0];
        let g: Vec<f64> = v.iter().map(|x| 15.0 * x).collect();
        assert_eq!(f_alpha_general(&v, &g, &v, 15.0).unwrap(), 15.0);
    }

    #[test]
    fn general_bound_rejects_bad_x() {
        let v = [1.0, 0.0];
        let g = [2.0, 0.0];
        assert!(matches!(
            f_alpha_general(&[0.0, 1.0], &g, &v, 1.0),
            Err(Error::NonPositiveInnerProduct { .. })
        ));
        assert!(matches!(
            f_alpha_general(&[-1.0, 1.0], &g, &v, 1.0),
            Err(Error::NonPositiveInnerProduct { .. })
        ));
        assert!(matches!(
            f_alpha_general(&[0.0, 0.0], &g, &v, 1.0),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn f_alpha_aligned_case_is_flat() {
        let v = [0.3, -0.4, 1.2];
        let w1 = 7.5;
        let g: Vec<f64> = v.iter().map(|x| w1 * x).collect();
        assert_eq!(f_alpha(&g, &v, w1).unwrap(), w1);
        for alpha in [7.5, 8.0, 10.0, 100.0] {
            let f = f_alpha(&g, &v, alpha).unwrap();
            assert!((f - w1).abs() <= 1e-12 * w1, "{alpha}: {f}");
        }
        assert!(matches!(f_alpha(&g, &[0.0; 3], 1.0), Err(Error::ZeroVector)));
    }

    #[test]
    fn window_examples() {
        let w = validity_window(&M1_DIAG, 17.0).unwrap();
        assert!(w.valid);
        assert_eq!(w.margin, 2.0);
        let tie = validity_window(&M1_DIAG, 18.0).unwrap();
        assert!(!tie.valid);
        assert_eq!(tie.margin, 0.0);
        for alpha in [-10.0, 0.0, 5.0, 5.0e3] {
            assert!(!validity_window(&[4.0, 4.0, 9.0], alpha).unwrap().valid);
        }
        assert!(validity_window(&[3.0], 100.0).unwrap().valid);
        assert!(validity_window(&[], 1.0).is_err());
    }

    #[test]
    fn window_checks_every_eigenvalue() {
        // unsorted input: w1 = 10 competes with 9 as well as 20
        assert!(!validity_window(&[10.0, 20.0, 9.0], 9.4).unwrap().valid);
        assert!(validity_window(&[10.0, 20.0, 9.0], 12.0).unwrap().valid);
    }

    #[test]
    fn sweep_aligned_best_is_smallest_alpha_at_w1() {
        let v = [1.0, 2.0];
        let w1 = 5.0;
        let g: Vec<f64> = v.iter().map(|x| w1 * x).collect();
        let grid = linspace(0.0, 10.0, 101);
        let res = sweep(&g, &v, &grid, Some(&[5.0, 9.0])).unwrap();
        let best = res.best.unwrap();
        assert_eq!(best.alpha, 5.0);
        assert_eq!(best.value, 5.0);
        assert_eq!(res.samples.len(), 101);
        assert!(res.samples.iter().all(|s| s.validity != Validity::Unknown));
    }

    #[test]
    fn sweep_without_spectrum_is_unknown() {
        let res = sweep(&[1.0], &[1.0], &[0.0, 1.0, 2.0], None).unwrap();
        assert!(res.best.is_none());
        assert!(res.samples.iter().all(|s| s.validity == Validity::Unknown));
        assert!(res.samples.iter().all(|s| s.window_margin.is_none()));
    }

    #[test]
    fn sweep_empty_window() {
        let res = sweep(&[1.0, 0.0], &[1.0, 0.0], &linspace(-5.0, 5.0, 11), Some(&[1.0, 1.0])).unwrap();
        assert!(res.best.is_none());
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        assert!(sweep(&[1.0], &[1.0], &[], None).is_err());
        assert!(sweep(&[1.0], &[1.0], &[1.0, 1.0], None).is_err());
        assert!(sweep(&[1.0], &[1.0], &[2.0, 1.0], None).is_err());
    }

    #[test]
    fn grids() {
        let g = stepped_grid(0.0, 30.0, 0.1).unwrap();
        assert_eq!(g.len(), 301);
        assert!((g[300] - 30.0).abs() < 1e-12);
        assert!(stepped_grid(1.0, 0.0, 0.1).is_err());
        assert!(stepped_grid(0.0, 1.0, 0.0).is_err());
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn shift_invert_examples() {
        assert_eq!(shift_invert_spectrum(&[1.0, 2.0], 0.0).unwrap(), vec![1.0, 0.5]);
        assert_eq!(shift_invert_spectrum(&[15.0, 21.0], 14.0).unwrap(), vec![1.0, 1.0 / 7.0]);
        assert!(matches!(
            shift_invert_spectrum(&[15.0, 21.0], 15.0),
            Err(Error::SingularShift { index: 0, .. })
        ));
        assert!(shift_invert_spectrum(&[0.0], 0.0).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let dm = SymmetricMatrix::diagonal(&[-10.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let a = admissible_perturbation(15.0, &dm).unwrap();
        assert!(a.admissible);
        assert_eq!(a.margin, 5.0);

        let dm = SymmetricMatrix::diagonal(&[-15.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let a = admissible_perturbation(15.0, &dm).unwrap();
        assert!(!a.admissible);
        assert_eq!(a.margin, 0.0);

        let dm = SymmetricMatrix::identity(5).unwrap().scaled(-6.0);
        let a = admissible_perturbation(6.8, &dm).unwrap();
        assert!(a.admissible);
        assert!((a.margin - 0.8).abs() < 1e-12);
    }
}
