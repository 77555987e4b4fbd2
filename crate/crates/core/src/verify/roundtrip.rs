// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{IdentityParams, IdentityReport};
use crate::quadrature::QuadratureBudget;
use crate::transforms::{
    inverse_coefficients, profile_sequence, reconstruct_series, forward_series, CoefficientSequence,
    ConstantChoice, PeriodicProfile, Scaling, Synthesizer, TransformKind,
};

const ROUNDTRIP_TOLERANCE: f64 = 1e-3;

/// `δ_{m,1}`, `δ_{m,2}` and `(2^{-m})_{m≤8}`, the last truncated (its
/// declared tail is zero, so the recovered coefficients are exact targets).
pub fn roundtrip_sequences() -> Vec<(&'static str, CoefficientSequence)> {
    let geometric = (1..=8).map(|m| 0.5_f64.powi(m)).collect();
    alloc::vec![
        ("delta-1", CoefficientSequence::unit(1, 4).expect("valid")),
        ("delta-2", CoefficientSequence::unit(2, 4).expect("valid")),
        ("geometric-half", CoefficientSequence::new(geometric, 0.0).expect("valid")),
    ]
}

/// `sin u`, `sin 2u`, `sin u + ¼ sin 3u`.
pub fn roundtrip_profiles() -> Vec<(&'static str, PeriodicProfile)> {
    alloc::vec![
        ("sin-u", PeriodicProfile::sine(1)),
        ("sin-2u", PeriodicProfile::sine(2)),
        ("sin-u+quarter-sin-3u", PeriodicProfile::trig(alloc::vec![1.0, 0.0, 0.25], Vec::new()).expect("valid")),
    ]
}

/// Sequence → forward series → inversion, for `n = 1..=n_max`. A row passes
/// when the recovered coefficient is within `1e-3` and its integral converged.
pub fn inverse_roundtrip(
    kind: TransformKind,
    label: &'static str,
    a: &CoefficientSequence,
    n_max: u32,
    budget: &QuadratureBudget,
) -> Vec<IdentityReport> {
    (1..=n_max)
        .map(|n| {
            let params = IdentityParams { n, kind: Some(kind), label: Some(label), ..Default::default() };
            let est = inverse_coefficients(kind, |x: f64| Ok(forward_series(kind, a, x, 0.0)?.value), n, budget);
            match est {
                Ok(est) => {
                    let target = a.get(n);
                    let mut r = IdentityReport::compare("inverse-roundtrip", params, est.value, target, ROUNDTRIP_TOLERANCE, est.evaluations);
                    r.rel_residual = r.abs_residual;
                    r.passed = r.abs_residual <= ROUNDTRIP_TOLERANCE && est.converged;
                    if !est.converged {
                        r.reason = Some(format!("integral not converged (estimate {:.3e})", est.error_estimate));
                    }
                    r
                }
                Err(e) => IdentityReport::failure("inverse-roundtrip", params, ROUNDTRIP_TOLERANCE, e),
            }
        })
        .collect()
}

/// Profile → coefficients → reconstruction with `terms` terms, compared with
/// the synthesised function at each `x`; passes within `1e-3 (1 + |f|)`.
pub fn profile_roundtrip(
    kind: TransformKind,
    label: &'static str,
    profile: &PeriodicProfile,
    xs: &[f64],
    terms: u32,
    budget: &QuadratureBudget,
) -> Vec<IdentityReport> {
    let setup = profile_sequence(kind, profile, terms as usize, budget)
        .and_then(|a| Synthesizer::new(kind, profile, Scaling::TwoX, budget).map(|s| (a, s)));
    xs.iter()
        .map(|&x| {
            let params = IdentityParams { x, terms, kind: Some(kind), label: Some(label), ..Default::default() };
            let outcome = setup.as_ref().map_err(|e| e.clone()).and_then(|(a, s)| {
                let f = s.eval(x)?;
                let r = reconstruct_series(kind, a, x, ConstantChoice::Calibrated, budget)?;
                Ok((r, f))
            });
            match outcome {
                Ok((r, f)) => {
                    let mut rep = IdentityReport::compare("profile-roundtrip", params, r.value, f, ROUNDTRIP_TOLERANCE, r.terms);
                    rep.rel_residual = rep.abs_residual / (1.0 + f.abs());
                    rep.passed = rep.rel_residual <= ROUNDTRIP_TOLERANCE;
                    if !rep.passed {
                        rep.reason = Some("reconstruction differs from the synthesized function".to_string());
                    }
                    rep
                }
                Err(e) => IdentityReport::failure("profile-roundtrip", params, ROUNDTRIP_TOLERANCE, e),
            }
        })
        .collect()
}
