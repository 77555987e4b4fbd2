use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quadrature::{DecayClass, QuadratureBudget};
use crate::transforms::{
    forward_integral, profile_coefficients, reconstruct_series, CoefficientSequence, ConstantChoice, FunctionClass,
    PeriodicProfile, Scaling, Synthesizer, TransformKind,
};
use crate::{Error, Result};

/// Multiples of the printed constant tried by the calibrator.
const FACTORS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const INDICES: u32 = 3;
const RECONSTRUCTION_X: [f64; 3] = [0.5, 1.0, 2.0];
const RECONSTRUCTION_TERMS: usize = 8;
/// Factors differ by 2, so a loose acceptance is plenty.
const ACCEPTED_ERROR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationCandidate {
    pub scaling: Scaling,
    /// Multiple of the printed coefficient constant.
    pub factor: f64,
    pub residual: f64,
}

/// Which argument scaling and coefficient constant make the forward
/// transform of a profile-generated function agree with its closed-form
/// coefficients. Constants are reported at `n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult {
    pub kind: TransformKind,
    pub printed_constant: f64,
    pub fitted_constant: f64,
    pub fitted_factor: f64,
    pub scaling_choice: Scaling,
    /// `max_n |a_n(numeric) − a_n(fitted)| / max_n |a_n(fitted)|`.
    pub residual_at_fit: f64,
    pub candidates: Vec<CalibrationCandidate>,
    pub printed_reconstruction_prefactor: f64,
    pub reconstruction_prefactor: f64,
    /// Worst relative error of the self-consistent reconstruction.
    pub reconstruction_residual: f64,
    /// Worst relative error with the printed constant and prefactor.
    pub printed_reconstruction_residual: f64,
}

fn calibration_profile() -> PeriodicProfile {
    PeriodicProfile::trig(alloc::vec![1.0, 0.0, 0.25], Vec::new()).expect("valid profile")
}

fn class_for(kind: TransformKind, scaling: Scaling) -> FunctionClass {
    match kind {
        TransformKind::Nicholson => FunctionClass::Oscillatory {
            phase_rate: if scaling == Scaling::TwoX { 2.0 } else { 1.0 },
        },
        TransformKind::Re => FunctionClass::Decaying(DecayClass::Algebraic { power: 2.0, period: Some(PI) }),
        TransformKind::Im => FunctionClass::Decaying(DecayClass::Algebraic { power: 3.0, period: Some(PI) }),
    }
}

fn reconstruction_error(
    kind: TransformKind,
    profile: &PeriodicProfile,
    choice: ConstantChoice,
    scaling: Scaling,
    budget: &QuadratureBudget,
) -> Result<f64> {
    let values = (1..=RECONSTRUCTION_TERMS as u32)
        .map(|n| profile_coefficients(kind, profile, n, choice, budget).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let a = CoefficientSequence::new(values, 0.0)?;
    let synth = Synthesizer::new(kind, profile, scaling, budget)?;
    let mut worst = 0.0_f64;
    for &x in &RECONSTRUCTION_X {
        let f = synth.eval(x)?;
        let r = reconstruct_series(kind, &a, x, choice, budget)?;
        worst = worst.max((r.value - f).abs() / f.abs().max(1e-300));
    }
    Ok(worst)
}

/// Fits the coefficient constant and argument scaling for `kind` on the
/// profile `sin u + ¼ sin 3u`, over the printed constant times
/// `{¼, ½, 1, 2, 4}` and both scalings (only `2x` for `Im`).
///
/// Fails with [`Error::NotConverged`] when no scaling yields converged
/// forward integrals.
pub fn calibrate_normalization(kind: TransformKind, budget: &QuadratureBudget) -> Result<CalibrationResult> {
    let profile = calibration_profile();
    let scalings: &[Scaling] = match kind {
        TransformKind::Im => &[Scaling::TwoX],
        _ => &[Scaling::TwoX, Scaling::X],
    };
    let sine_integral = |n: u32| PI * profile.sine_coefficients().and_then(|s| s.get(n as usize - 1)).copied().unwrap_or(0.0);
    let mut candidates = Vec::new();
    for &scaling in scalings {
        let synth = Synthesizer::new(kind, &profile, scaling, budget)?;
        let estimates = (1..=INDICES)
            .map(|n| forward_integral(kind, |x: f64| synth.eval(x), n, class_for(kind, scaling), budget))
            .collect::<Result<Vec<_>>>();
        let Ok(estimates) = estimates else { continue };
        // near-zero coefficients cannot meet a relative tolerance; judge every
        // error against the largest coefficient instead
        let largest = estimates.iter().fold(0.0_f64, |m, e| m.max(e.value.abs()));
        if estimates.iter().any(|e| !(e.error_estimate <= ACCEPTED_ERROR * largest)) {
            continue;
        }
        let numeric: Vec<f64> = estimates.iter().map(|e| e.value).collect();
        for &factor in &FACTORS {
            let predicted: Vec<f64> =
                (1..=INDICES).map(|n| factor * kind.printed_coefficient_constant(n) * sine_integral(n)).collect();
            let scale = predicted.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            let residual = numeric.iter().zip(&predicted).map(|(a, p)| (a - p).abs()).fold(0.0, f64::max) / scale;
            candidates.push(CalibrationCandidate { scaling, factor, residual });
        }
    }
    let best = candidates
        .iter()
        .copied()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .ok_or(Error::NotConverged { what: "normalization calibration", value: f64::NAN, error: f64::INFINITY })?;
    let printed_scaling = if kind == TransformKind::Im { Scaling::TwoX } else { Scaling::X };
    Ok(CalibrationResult {
        kind,
        printed_constant: kind.printed_coefficient_constant(1),
        fitted_constant: best.factor * kind.printed_coefficient_constant(1),
        fitted_factor: best.factor,
        scaling_choice: best.scaling,
        residual_at_fit: best.residual,
        candidates,
        printed_reconstruction_prefactor: kind.printed_reconstruction_prefactor(1),
        reconstruction_prefactor: kind.reconstruction_prefactor(1),
        reconstruction_residual: reconstruction_error(kind, &profile, ConstantChoice::Calibrated, Scaling::TwoX, budget)?,
        printed_reconstruction_residual: reconstruction_error(kind, &profile, ConstantChoice::Printed, printed_scaling, budget)?,
    })
}
