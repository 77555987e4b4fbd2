// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{KernelKind, KernelPoint, Method};
use crate::quadrature::{
    integrate_decaying, integrate_finite, integrate_oscillatory_improper, DecayClass,
    IntegralEstimate, QuadratureBudget, Regime,
};
use crate::specfun::{
    bessel_j_imag_order, cyl_bessel, mod_bessel_k_imag_order, struve, CylKind, StruveKind,
};
use crate::specfun::{j0_fast, y0_fast, y_from_j};
use crate::{Error, Result};

/// A direct forward-kernel value with the imaginary part that the exact
/// kernel does not have.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectValue {
    pub value: f64,
    /// Imaginary residue of the complex computation; zero in exact arithmetic.
    pub imaginary_residue: f64,
}

pub fn forward_kernel(kind: KernelKind, p: KernelPoint, method: Method) -> Result<f64> {
    forward_kernel_with(kind, p, method, &QuadratureBudget::default())
}

pub fn forward_kernel_with(
    kind: KernelKind,
    p: KernelPoint,
    method: Method,
    budget: &QuadratureBudget,
) -> Result<f64> {
    KernelPoint::new(p.n, p.x)?.require_forward()?;
    match method {
        Method::Direct => direct_value(kind, p).map(|d| d.value),
        Method::Integral => match kind {
            KernelKind::Nicholson => nicholson_integral(p, budget),
            KernelKind::ReSquare => re_square_integral(p, budget),
            KernelKind::ImSquare => im_square_integral(p, budget),
            _ => Err(Error::InvalidInput("forward_kernel needs a forward kernel kind")),
        },
    }
}

/// Direct evaluation from `J_{iτ}(x)`, `τ = n/2`.
///
/// With `c = cosh πτ`, `s = sinh πτ` the connection formula gives
/// `J² + Y² = 2(c|J|² − Re J²)/s²`, a sum of two terms of like sign, whereas
/// squaring `Y` directly cancels by a factor of order `e^{πτ}`.
pub fn direct_value(kind: KernelKind, p: KernelPoint) -> Result<DirectValue> {
    KernelPoint::new(p.n, p.x)?.require_forward()?;
    let tau = p.order();
    let j = bessel_j_imag_order(tau, p.x)?;
    match kind {
        KernelKind::Nicholson => {
            let c = (PI * tau).cosh();
            let s = (PI * tau).sinh();
            let j_sq = j * j;
            let value = 2.0 * (c * j.norm_sqr() - j_sq.re) / (s * s);
            let y = y_from_j(tau, j);
            let naive = j_sq + y * y;
            Ok(DirectValue { value, imaginary_residue: naive.im })
        }
        KernelKind::ReSquare | KernelKind::ImSquare => {
            // J_{-iτ} evaluated on its own, not as a conjugate, so the residue
            // measures the conjugation symmetry of the evaluator
            let jm = bessel_j_imag_order(-tau, p.x)?;
            let (a, b) = (j * j, jm * jm);
            let (sum, diff) = ((a + b) * 0.5, (a - b) * Complex64::new(0.0, -0.5));
            Ok(match kind {
                KernelKind::ReSquare => DirectValue { value: sum.re, imaginary_residue: sum.im },
                _ => DirectValue { value: diff.re, imaginary_residue: diff.im },
            })
        }
        _ => Err(Error::InvalidInput("direct evaluation needs a forward kernel kind")),
    }
}

/// `(8/π²) ∫₀^∞ K0(2x sinh t) cos(nt) dt`.
fn nicholson_integral(p: KernelPoint, budget: &QuadratureBudget) -> Result<f64> {
    let (x, n) = (p.x, p.n as f64);
    let f = |t: f64| -> Result<f64> {
        let z = 2.0 * x * t.sinh();
        if z > 700.0 {
            return Ok(0.0);
        }
        Ok(cyl_bessel(CylKind::K0, z)? * (n * t).cos())
    };
    let est = integrate_decaying(f, 0.0, DecayClass::Exponential { rate: 1.0 }, budget)?;
    Ok(8.0 / (PI * PI) * est.require("Nicholson integral")?)
}

/// `(8/π²) cosh(πn/2) ∫₀^∞ K_{in}(t) (t² + 4x²)^{-1/2} dt`, the representation
/// through the discrete Kontorovich–Lebedev kernel.
pub fn nicholson_via_k_imag(p: KernelPoint, budget: &QuadratureBudget) -> Result<f64> {
    KernelPoint::new(p.n, p.x)?.require_forward()?;
    let (x, n) = (p.x, p.n);
    let weight = |t: f64| 1.0 / (t * t + 4.0 * x * x).sqrt();
    let k = |t: f64| -> Result<f64> {
        if t > 700.0 {
            return Ok(0.0);
        }
        mod_bessel_k_imag_order(n, t)
    };
    // (0, 1] through t = e^{-v}: the log-periodic oscillation at the origin
    // becomes an ordinary exponentially damped one
    let near = integrate_decaying(
        |v: f64| {
            let t = (-v).exp();
            Ok(k(t)? * weight(t) * t)
        },
        0.0,
        DecayClass::Exponential { rate: 1.0 },
        budget,
    )?;
    let far = integrate_decaying(
        |t: f64| Ok(k(t)? * weight(t)),
        1.0,
        DecayClass::Exponential { rate: 1.0 },
        budget,
    )?;
    let total = near.require("K_{in} integral near 0")? + far.require("K_{in} integral")?;
    Ok(8.0 / (PI * PI) * (0.5 * PI * n as f64).cosh() * total)
}

/// `Re[J²] = cosh(πn/2) (2/π) ∫₀^∞ cos(nt) H0(2x cosh t) dt`, split as
/// `H0 = K0 + Y0` so the Struve part decays and the `Y0` part is handled as an
/// oscillatory tail.
fn re_square_integral(p: KernelPoint, budget: &QuadratureBudget) -> Result<f64> {
    let (x, n) = (p.x, p.n as f64);
    let k_part = integrate_decaying(
        |t: f64| Ok(struve(StruveKind::K0, 2.0 * x * t.cosh())? * (n * t).cos()),
        0.0,
        DecayClass::Exponential { rate: 1.0 },
        budget,
    )?
    .require("Struve K0 cosine integral")?;
    let y_part = cosine_bessel_integral(CosineWeight::Y0, n, x, budget)?.require("Y0 cosine integral")?;
    Ok((0.5 * PI * n).cosh() * FRAC_2_PI * (k_part + y_part))
}

/// `Im[J²] = −sinh(πn/2) (2/π) ∫₀^∞ cos(nt) J0(2x cosh t) dt`.
fn im_square_integral(p: KernelPoint, budget: &QuadratureBudget) -> Result<f64> {
    let (x, n) = (p.x, p.n as f64);
    let j_part = cosine_bessel_integral(CosineWeight::J0, n, x, budget)?.require("J0 cosine integral")?;
    Ok(-(0.5 * PI * n).sinh() * FRAC_2_PI * j_part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CosineWeight {
    J0,
    Y0,
}

/// `∫₀^∞ cos(νt) Z0(2x cosh t) dt` for `Z0 = J0` or `Y0`.
///
/// Up to `s = 2x cosh t ≈ 30` (aligned to a zero of the asymptotic phase) the
/// integral is taken in `t`; beyond it the variable is changed to `s`, where
/// the integrand `Z0(s) cos(ν acosh(s/2x)) / √(s² − 4x²)` oscillates with unit
/// frequency and is summed by half-period extrapolation.
pub(crate) fn cosine_bessel_integral(
    weight: CosineWeight,
    nu: f64,
    x: f64,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate> {
    if !(x > 0.0) {
        return Err(Error::Domain { function: "cosine Bessel integral", value: x });
    }
    let z = match weight {
        CosineWeight::J0 => j0_fast,
        CosineWeight::Y0 => y0_fast,
    };
    let two_x = 2.0 * x;
    let start = (two_x * 1.0_f64.cosh()).max(30.0);
    // next zero of cos(s − π/4) at or after `start`
    let k = ((start - 3.0 * FRAC_PI_4) / PI).ceil();
    let s0 = 3.0 * FRAC_PI_4 + k * PI;
    let t0 = (s0 / two_x).acosh();
    let head = integrate_finite(
        |t: f64| Ok(z(two_x * t.cosh()) * (nu * t).cos()),
        0.0,
        t0,
        &budget.scaled(0.1),
    )?;
    let tail = integrate_oscillatory_improper(
        |s: f64| {
            let r = s / two_x;
            Ok(z(s) * (nu * r.acosh()).cos() / (s * s - two_x * two_x).sqrt())
        },
        s0,
        1.0,
        budget,
    )?;
    let value = head.value + tail.value;
    let error_estimate = head.error_estimate + tail.error_estimate;
    Ok(IntegralEstimate {
        value,
        error_estimate,
        evaluations: head.evaluations + tail.evaluations,
        // head and tail can cancel; accuracy is relative to the larger part
        converged: error_estimate <= budget.tolerance(value.abs().max(head.value.abs()).max(tail.value.abs())),
        regime: Regime::OscillatoryImproper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_nicholson_is_positive_and_real() {
        for n in 1..=6 {
            for &x in &[0.1, 1.0, 10.0, 100.0] {
                let d = direct_value(KernelKind::Nicholson, KernelPoint { n, x }).unwrap();
                assert!(d.value > 0.0);
                assert!(d.imaginary_residue.abs() <= 1e-12 * (1.0 + d.value.abs()), "{n} {x} {d:?}");
            }
        }
    }

    #[test]
    fn large_argument_nicholson_tends_to_two_over_pi_x() {
        let x = 500.0;
        let d = direct_value(KernelKind::Nicholson, KernelPoint { n: 2, x }).unwrap();
        assert!((d.value * PI * x / 2.0 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn integral_routes_agree_at_one_point() {
        let p = KernelPoint { n: 1, x: 1.0 };
        for kind in [KernelKind::Nicholson, KernelKind::ReSquare, KernelKind::ImSquare] {
            let a = forward_kernel(kind, p, Method::Direct).unwrap();
            let b = forward_kernel(kind, p, Method::Integral).unwrap();
            assert!((a - b).abs() <= 1e-8 * (1.0 + a.abs()), "{kind:?}: {a} vs {b}");
        }
    }

    #[test]
    fn non_forward_kinds_are_rejected() {
        let p = KernelPoint { n: 1, x: 1.0 };
        assert!(forward_kernel(KernelKind::Phi, p, Method::Integral).is_err());
        assert!(forward_kernel(KernelKind::Nicholson, KernelPoint { n: 0, x: 1.0 }, Method::Direct).is_err());
    }
}
