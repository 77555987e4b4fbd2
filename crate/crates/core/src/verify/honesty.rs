// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::{E, LN_2, PI};

use crate::quadrature::{
    integrate_decaying, integrate_finite, integrate_oscillatory_improper, DecayClass, QuadratureBudget,
};
use crate::specfun::j0_fast;
use crate::Result;

/// One closed-form integral: the estimate against the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HonestyOutcome {
    pub name: &'static str,
    pub exact: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub true_error: f64,
    /// `true_error ≤ 10 · error_estimate` (or below rounding level).
    pub honest: bool,
}

type Case = (&'static str, f64, fn(&QuadratureBudget) -> Result<crate::quadrature::IntegralEstimate>);

fn ok(v: f64) -> Result<f64> {
    Ok(v)
}

fn cases() -> Vec<Case> {
    alloc::vec![
        ("x^5 on [0,1]", 1.0 / 6.0, |b| integrate_finite(|x: f64| ok(x.powi(5)), 0.0, 1.0, b)),
        ("sin on [0,pi]", 2.0, |b| integrate_finite(|x: f64| ok(x.sin()), 0.0, PI, b)),
        ("ln x on [0,1]", -1.0, |b| integrate_finite(|x: f64| ok(x.ln()), 0.0, 1.0, b)),
        ("x^-1/2 on [0,1]", 2.0, |b| integrate_finite(|x: f64| ok(1.0 / x.sqrt()), 0.0, 1.0, b)),
        ("x^-1/3 on [0,1]", 1.5, |b| integrate_finite(|x: f64| ok(x.powf(-1.0 / 3.0)), 0.0, 1.0, b)),
        ("sqrt(x) ln x on [0,1]", -4.0 / 9.0, |b| integrate_finite(|x: f64| ok(x.sqrt() * x.ln()), 0.0, 1.0, b)),
        ("e^x on [0,1]", E - 1.0, |b| integrate_finite(|x: f64| ok(x.exp()), 0.0, 1.0, b)),
        ("cos^2(10x) on [0,2pi]", PI, |b| integrate_finite(|x: f64| ok((10.0 * x).cos().powi(2)), 0.0, 2.0 * PI, b)),
        ("runge on [0,1]", 5f64.atan() / 5.0, |b| integrate_finite(|x: f64| ok(1.0 / (1.0 + 25.0 * x * x)), 0.0, 1.0, b)),
        ("|x-1| on [0,2]", 1.0, |b| integrate_finite(|x: f64| ok((x - 1.0).abs()), 0.0, 2.0, b)),
        ("1/(1+x) on [0,1]", LN_2, |b| integrate_finite(|x: f64| ok(1.0 / (1.0 + x)), 0.0, 1.0, b)),
        ("e^-x on [0,inf)", 1.0, |b| {
            integrate_decaying(|x: f64| ok((-x).exp()), 0.0, DecayClass::Exponential { rate: 1.0 }, b)
        }),
        ("x^2 e^-x on [0,inf)", 2.0, |b| {
            integrate_decaying(|x: f64| ok(x * x * (-x).exp()), 0.0, DecayClass::Exponential { rate: 1.0 }, b)
        }),
        ("e^-2x cos 3x on [0,inf)", 2.0 / 13.0, |b| {
            integrate_decaying(|x: f64| ok((-2.0 * x).exp() * (3.0 * x).cos()), 0.0, DecayClass::Exponential { rate: 2.0 }, b)
        }),
        ("x e^-x^2 on [0,inf)", 0.5, |b| {
            integrate_decaying(|x: f64| ok(x * (-x * x).exp()), 0.0, DecayClass::Exponential { rate: 1.0 }, b)
        }),
        ("1/(1+x^2) on [0,inf)", 0.5 * PI, |b| {
            integrate_decaying(|x: f64| ok(1.0 / (1.0 + x * x)), 0.0, DecayClass::Algebraic { power: 2.0, period: None }, b)
        }),
        ("x^-2 on [1,inf)", 1.0, |b| {
            integrate_decaying(|x: f64| ok(1.0 / (x * x)), 1.0, DecayClass::Algebraic { power: 2.0, period: None }, b)
        }),
        ("cos x/(1+x^2) on [0,inf)", 0.5 * PI / E, |b| {
            integrate_decaying(
                |x: f64| ok(x.cos() / (1.0 + x * x)),
                0.0,
                DecayClass::Algebraic { power: 2.0, period: Some(2.0 * PI) },
                b,
            )
        }),
        ("sin^2 x/x^2 on [0,inf)", 0.5 * PI, |b| {
            integrate_decaying(
                |x: f64| ok(if x == 0.0 { 1.0 } else { (x.sin() / x).powi(2) }),
                0.0,
                DecayClass::Algebraic { power: 2.0, period: Some(PI) },
                b,
            )
        }),
        ("sin x/x on [0,inf)", 0.5 * PI, |b| {
            integrate_oscillatory_improper(|x: f64| ok(if x == 0.0 { 1.0 } else { x.sin() / x }), 0.0, 1.0, b)
        }),
        ("sin x/sqrt x on [0,inf)", (0.5 * PI).sqrt(), |b| {
            integrate_oscillatory_improper(|x: f64| ok(x.sin() / x.sqrt()), 0.0, 1.0, b)
        }),
        ("J0 on [0,inf)", 1.0, |b| integrate_oscillatory_improper(|x: f64| ok(j0_fast(x)), 0.0, 1.0, b)),
    ]
}

/// Runs the closed-form library under `budget`. Integrations that fail
/// outright count as dishonest.
pub fn honesty_library(budget: &QuadratureBudget) -> Vec<HonestyOutcome> {
    cases()
        .into_iter()
        .map(|(name, exact, run)| match run(budget) {
            Ok(est) => {
                let true_error = (est.value - exact).abs();
                let floor = 8.0 * f64::EPSILON * exact.abs();
                HonestyOutcome {
                    name,
                    exact,
                    value: est.value,
                    error_estimate: est.error_estimate,
                    true_error,
                    honest: true_error <= 10.0 * est.error_estimate || true_error <= floor,
                }
            }
            Err(_) => HonestyOutcome {
                name,
                exact,
                value: f64::NAN,
                error_estimate: f64::NAN,
                true_error: f64::NAN,
                honest: false,
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_is_large_enough() {
        assert!(cases().len() >= 20);
    }
}
