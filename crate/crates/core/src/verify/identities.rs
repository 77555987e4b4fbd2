//! Closed-form identities, each checked by evaluating the integral side by
//! quadrature and the other side from its formula.

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::string::ToString;
use core::f64::consts::PI;

use super::{IdentityParams, IdentityReport, OrderConvention};
use crate::kernels::{cosine_bessel_integral, direct_value, CosineWeight, KernelKind, KernelPoint};
use crate::quadrature::{
    integrate_decaying, integrate_finite, integrate_oscillatory_improper, DecayClass, IntegralEstimate,
    QuadratureBudget,
};
use crate::specfun::{
    bessel_j_imag_order, bessel_y_imag_order, j0_fast, k0_bracket, lommel_s, mod_bessel_k_imag_order,
};
use crate::{Error, Result};

/// The registered identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `∫₀^∞ x J0(2x cosh u) [J² + Y²](x) dx = 2 sin(nu) / (π sinh 2u sinh(πn/2))`.
    J0Nicholson,
    /// `∫₀^∞ x S_{-1,0}(2x cosh u) Re[J²](x) dx = π sin(nu) / (sinh 2u sinh(πn/2))`.
    LommelReSquare,
    /// `∫₀^∞ [x K0(2x cosh u) − 1/(π cosh u)] Im[J²](x) dx = sin(nu) / (π sinh 2u cosh(πn/2))`.
    StruveImSquare,
    /// `∫₀^∞ x K0(2x cosh u) J0(2x cosh t) dx = 1 / (2π cosh t (cosh t + cosh u))`.
    StruveJ0Product,
    /// `(4/π) ∫₀^∞ cos(nt) Y0(2x cosh t) dt = |J_{iν}(x)|² − |Y_{iν}(x)|²`.
    Y0CosineModulus,
    /// `∫₀^∞ K_{in}(2x sinh t) dt = π² [J² + Y²](x) / (8 cosh(πn/2))`.
    KImagSinh,
    /// `(1/sinh(πn/2)) ∫₀^∞ Im[J²](x) dx = −1 / (2 cosh(πn/2))`.
    ImSquareMellin,
    /// `Σ_{k≤N} sin(kt) sin(ku) = ¼[D_N(u − t) − D_N(u + t)]`, `D_N` the Dirichlet kernel.
    DirichletSum,
    /// `∫₀^π sin(nu) sin(mu) du = (π/2) δ_{nm}`.
    SineOrthogonality,
    /// `∫₀^∞ cos(nt) / (cosh t (cosh t + cosh u)) dt = π / (2 cosh(πn/2) cosh u) − 2π sin(nu) / (sinh(πn) sinh 2u)`.
    CoshCosineChain,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::J0Nicholson,
        IdentityId::LommelReSquare,
        IdentityId::StruveImSquare,
        IdentityId::StruveJ0Product,
        IdentityId::Y0CosineModulus,
        IdentityId::KImagSinh,
        IdentityId::ImSquareMellin,
        IdentityId::DirichletSum,
        IdentityId::SineOrthogonality,
        IdentityId::CoshCosineChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::J0Nicholson => "j0-nicholson",
            IdentityId::LommelReSquare => "lommel-re-square",
            IdentityId::StruveImSquare => "struve-im-square",
            IdentityId::StruveJ0Product => "struve-j0-product",
            IdentityId::Y0CosineModulus => "y0-cosine-modulus",
            IdentityId::KImagSinh => "k-imag-sinh",
            IdentityId::ImSquareMellin => "im-square-mellin",
            IdentityId::DirichletSum => "dirichlet-sum",
            IdentityId::SineOrthogonality => "sine-orthogonality",
            IdentityId::CoshCosineChain => "cosh-cosine-chain",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.name() == name)
    }

    /// Registered relative tolerance (absolute when the closed form is zero).
    pub fn tolerance(self) -> f64 {
        match self {
            IdentityId::J0Nicholson => 1e-4,
            IdentityId::StruveJ0Product => 1e-10,
            IdentityId::KImagSinh => 1e-8,
            IdentityId::DirichletSum | IdentityId::SineOrthogonality => 1e-12,
            _ => 1e-6,
        }
    }
}

/// `sin(nu) / sinh(2u)`, with its limit `n/2` at `u = 0` and exact zeros
/// where `nu` is a multiple of `π` (instead of rounding noise that would
/// defeat a relative comparison).
fn sine_over_sinh(n: f64, u: f64) -> f64 {
    if u == 0.0 {
        return 0.5 * n;
    }
    let turns = n * u / PI;
    if (turns - turns.round()).abs() < 1e-12 {
        return 0.0;
    }
    (n * u).sin() / (2.0 * u).sinh()
}

fn kernel(kind: KernelKind, n: u32, x: f64) -> Result<f64> {
    Ok(direct_value(kind, KernelPoint { n, x })?.value)
}

/// `|J_{iτ}(x)|² − |Y_{iτ}(x)|²`.
fn modulus_difference(tau: f64, x: f64) -> Result<f64> {
    Ok(bessel_j_imag_order(tau, x)?.norm_sqr() - bessel_y_imag_order(tau, x)?.norm_sqr())
}

fn integral_side(id: IdentityId, p: &IdentityParams, budget: &QuadratureBudget) -> Result<IntegralEstimate> {
    let n = p.n;
    let nf = n as f64;
    let cu = p.u.cosh();
    match id {
        IdentityId::J0Nicholson => integrate_oscillatory_improper(
            |x: f64| Ok(x * j0_fast(2.0 * x * cu) * kernel(KernelKind::Nicholson, n, x)?),
            0.0,
            2.0 * cu,
            budget,
        ),
        IdentityId::LommelReSquare => integrate_decaying(
            |x: f64| Ok(x * lommel_s(2.0 * x * cu)? * kernel(KernelKind::ReSquare, n, x)?),
            0.0,
            DecayClass::Algebraic { power: 2.0, period: Some(PI) },
            budget,
        ),
        IdentityId::StruveImSquare => integrate_decaying(
            |x: f64| Ok(k0_bracket(x, cu)? * kernel(KernelKind::ImSquare, n, x)?),
            0.0,
            DecayClass::Algebraic { power: 3.0, period: Some(PI) },
            budget,
        ),
        IdentityId::StruveJ0Product => {
            let ct = p.t.cosh();
            // x K0(2x cosh u) = bracket + 1/(π cosh u)
            integrate_oscillatory_improper(
                |x: f64| Ok((k0_bracket(x, cu)? + 1.0 / (PI * cu)) * j0_fast(2.0 * x * ct)),
                0.0,
                2.0 * ct,
                budget,
            )
        }
        IdentityId::Y0CosineModulus => {
            let mut est = cosine_bessel_integral(CosineWeight::Y0, nf, p.x, budget)?;
            est.value *= 4.0 / PI;
            est.error_estimate *= 4.0 / PI;
            Ok(est)
        }
        IdentityId::KImagSinh => {
            let x = p.x;
            // t = e^{-v} on (0, 1], where K_{in} oscillates in log t
            let head = integrate_decaying(
                |v: f64| {
                    let t = (-v).exp();
                    Ok(mod_bessel_k_imag_order(n, 2.0 * x * t.sinh())? * t)
                },
                0.0,
                DecayClass::Exponential { rate: 1.0 },
                budget,
            )?;
            let tail = integrate_decaying(
                |t: f64| mod_bessel_k_imag_order(n, 2.0 * x * t.sinh()),
                1.0,
                DecayClass::Exponential { rate: 2.0 * x * 1f64.cosh() },
                budget,
            )?;
            Ok(IntegralEstimate {
                value: head.value + tail.value,
                error_estimate: head.error_estimate + tail.error_estimate,
                evaluations: head.evaluations + tail.evaluations,
                converged: head.converged && tail.converged,
                regime: head.regime,
            })
        }
        IdentityId::ImSquareMellin => {
            let w = 1.0 / (0.5 * PI * nf).sinh();
            let mut est = integrate_oscillatory_improper(|x: f64| kernel(KernelKind::ImSquare, n, x), 0.0, 2.0, budget)?;
            est.value *= w;
            est.error_estimate *= w;
            Ok(est)
        }
        IdentityId::SineOrthogonality => {
            let mf = p.m as f64;
            integrate_finite(|u: f64| Ok((nf * u).sin() * (mf * u).sin()), 0.0, PI, budget)
        }
        IdentityId::CoshCosineChain => integrate_decaying(
            |t: f64| {
                let ct = t.cosh();
                Ok((nf * t).cos() / (ct * (ct + cu)))
            },
            0.0,
            DecayClass::Exponential { rate: 2.0 },
            budget,
        ),
        IdentityId::DirichletSum => {
            let value = (1..=p.terms).map(|k| (k as f64 * p.t).sin() * (k as f64 * p.u).sin()).sum();
            Ok(IntegralEstimate {
                value,
                error_estimate: 0.0,
                evaluations: p.terms as usize,
                converged: true,
                regime: crate::quadrature::Regime::Finite,
            })
        }
    }
}

fn dirichlet_kernel(terms: u32, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    if s.abs() < 1e-300 {
        (2 * terms + 1) as f64
    } else {
        ((terms as f64 + 0.5) * theta).sin() / s
    }
}

fn closed_side(id: IdentityId, p: &IdentityParams) -> Result<f64> {
    let nf = p.n as f64;
    let u = p.u;
    let sh = |a: f64| (PI * a).sinh();
    let ch = |a: f64| (PI * a).cosh();
    Ok(match id {
        IdentityId::J0Nicholson => 2.0 * sine_over_sinh(nf, u) / (PI * sh(0.5 * nf)),
        IdentityId::LommelReSquare => PI * sine_over_sinh(nf, u) / sh(0.5 * nf),
        IdentityId::StruveImSquare => sine_over_sinh(nf, u) / (PI * ch(0.5 * nf)),
        IdentityId::StruveJ0Product => {
            let ct = p.t.cosh();
            1.0 / (2.0 * PI * ct * (ct + u.cosh()))
        }
        IdentityId::Y0CosineModulus => {
            let tau = match p.convention {
                OrderConvention::Matched => nf,
                OrderConvention::Halved => 0.5 * nf,
            };
            modulus_difference(tau, p.x)?
        }
        IdentityId::KImagSinh => PI * PI * kernel(KernelKind::Nicholson, p.n, p.x)? / (8.0 * ch(0.5 * nf)),
        IdentityId::ImSquareMellin => -0.5 / ch(0.5 * nf),
        IdentityId::DirichletSum => {
            0.25 * (dirichlet_kernel(p.terms, p.u - p.t) - dirichlet_kernel(p.terms, p.u + p.t))
        }
        IdentityId::SineOrthogonality => {
            if p.n == p.m {
                0.5 * PI
            } else {
                0.0
            }
        }
        IdentityId::CoshCosineChain => {
            PI / (2.0 * ch(0.5 * nf) * u.cosh()) - 2.0 * PI * sine_over_sinh(nf, u) / sh(nf)
        }
    })
}

fn validate(id: IdentityId, p: &IdentityParams) -> Result<()> {
    let in_range = |v: f64| (0.0..=PI).contains(&v);
    if p.n == 0 || p.n > 20 {
        return Err(Error::InvalidInput("identity index n must lie in 1..=20"));
    }
    if !in_range(p.u) || !in_range(p.t) {
        return Err(Error::InvalidInput("identity angles must lie in [0, π]"));
    }
    match id {
        IdentityId::Y0CosineModulus | IdentityId::KImagSinh if !(p.x > 0.0 && p.x <= 1e3) => {
            Err(Error::InvalidInput("identity argument x must lie in (0, 1e3]"))
        }
        IdentityId::SineOrthogonality if p.m == 0 => Err(Error::InvalidInput("second index m must be positive")),
        IdentityId::DirichletSum if p.terms == 0 => Err(Error::InvalidInput("Dirichlet sum needs at least one term")),
        _ => Ok(()),
    }
}

/// Evaluates both sides of `id` at `params`. Failures are recorded in the
/// report (`passed = false` with a reason) rather than returned.
pub fn check_identity(id: IdentityId, params: &IdentityParams, budget: &QuadratureBudget) -> IdentityReport {
    let tolerance = id.tolerance();
    // no point integrating far below the identity's own tolerance
    let budget = QuadratureBudget { rel_tol: budget.rel_tol.max(0.01 * tolerance), ..*budget };
    let outcome = validate(id, params)
        .and_then(|_| closed_side(id, params))
        .and_then(|rhs| integral_side(id, params, &budget).map(|est| (est, rhs)));
    match outcome {
        Ok((est, rhs)) => {
            let mut report = IdentityReport::compare(id.name(), *params, est.value, rhs, tolerance, est.evaluations);
            // an unconverged integral still decides the verdict if its own
            // error estimate is inside the tolerance
            let scale = if rhs == 0.0 { 1.0 } else { rhs.abs() };
            if !est.converged && est.error_estimate > tolerance * scale {
                report.passed = false;
                report.reason = Some("quadrature did not meet its budget".to_string());
            }
            report
        }
        Err(e) => IdentityReport::failure(id.name(), *params, tolerance, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, u: f64) -> IdentityParams {
        IdentityParams { n, u, ..IdentityParams::default() }
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::from_name(id.name()), Some(id));
        }
    }

    #[test]
    fn orthogonality_and_dirichlet() {
        let b = QuadratureBudget::default();
        let r = check_identity(IdentityId::SineOrthogonality, &IdentityParams { n: 1, m: 1, ..Default::default() }, &b);
        assert!(r.passed && (r.lhs - 0.5 * PI).abs() < 1e-13, "{r:?}");
        let r = check_identity(IdentityId::SineOrthogonality, &IdentityParams { n: 1, m: 2, ..Default::default() }, &b);
        assert!(r.passed && r.rhs == 0.0, "{r:?}");
        let p = IdentityParams { terms: 1, u: 0.5 * PI, t: 0.5 * PI, ..Default::default() };
        let r = check_identity(IdentityId::DirichletSum, &p, &b);
        assert!(r.passed && (r.rhs - 1.0).abs() < 1e-15, "{r:?}");
    }

    #[test]
    fn chain_holds() {
        let b = QuadratureBudget::default();
        for &u in &[0.0, 0.4, 2.0] {
            let r = check_identity(IdentityId::CoshCosineChain, &params(2, u), &b);
            assert!(r.passed && r.rel_residual < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn invalid_parameters_are_reported() {
        let r = check_identity(IdentityId::KImagSinh, &IdentityParams { x: -1.0, ..Default::default() }, &QuadratureBudget::default());
        assert!(!r.passed && r.reason.is_some());
    }
}
