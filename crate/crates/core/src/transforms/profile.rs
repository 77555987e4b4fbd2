//! Functions generated by a periodic profile `ψ`, their forward coefficients
//! in closed form, and the series that reconstructs them.

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use super::{CoefficientSequence, TransformKind};
use crate::kernels::{InversionKernel, MomentExpansion, MOMENT_SWITCH};
use crate::quadrature::{integrate_finite, IntegralEstimate, QuadratureBudget};
use crate::specfun::{j0_fast, k0_bracket, lommel_estimate, AccuracyTarget};
use crate::{Error, Result};

/// Samples used by the Lipschitz spot check.
const LIPSCHITZ_SAMPLES: usize = 512;

#[derive(Clone)]
enum ProfileShape {
    /// `ψ(u) = Σ b_k sin(ku) + Σ a_k cos(ku)`, `k ≥ 1`.
    Trig { sines: Vec<f64>, cosines: Vec<f64> },
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A `2π`-periodic Lipschitz profile `ψ` with a declared Lipschitz constant.
#[derive(Clone)]
pub struct PeriodicProfile {
    shape: ProfileShape,
    lipschitz: f64,
}

impl fmt::Debug for PeriodicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            ProfileShape::Trig { sines, cosines } => f
                .debug_struct("PeriodicProfile")
                .field("sines", sines)
                .field("cosines", cosines)
                .field("lipschitz", &self.lipschitz)
                .finish(),
            ProfileShape::Function(_) => {
                f.debug_struct("PeriodicProfile").field("lipschitz", &self.lipschitz).finish_non_exhaustive()
            }
        }
    }
}

impl PeriodicProfile {
    /// A trigonometric polynomial; `sines[k-1]` multiplies `sin(ku)`.
    /// The Lipschitz constant `Σ k(|a_k| + |b_k|)` is exact enough to need no check.
    pub fn trig(sines: Vec<f64>, cosines: Vec<f64>) -> Result<Self> {
        if sines.iter().chain(cosines.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("profile coefficients must be finite"));
        }
        let lip = |c: &[f64]| c.iter().enumerate().map(|(k, v)| (k + 1) as f64 * v.abs()).sum::<f64>();
        let lipschitz = lip(&sines) + lip(&cosines);
        Ok(PeriodicProfile { shape: ProfileShape::Trig { sines, cosines }, lipschitz })
    }

    /// `ψ(u) = sin(u)`.
    pub fn sine(k: usize) -> Self {
        let mut sines = alloc::vec![0.0; k];
        sines[k - 1] = 1.0;
        Self::trig(sines, Vec::new()).expect("finite coefficients")
    }

    /// An arbitrary profile on `[-π, π]`, extended periodically. The declared
    /// constant is spot-checked on a uniform grid.
    pub fn function<F>(psi: F, lipschitz: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lipschitz >= 0.0) || !lipschitz.is_finite() {
            return Err(Error::InvalidInput("Lipschitz constant must be finite and nonnegative"));
        }
        let profile = PeriodicProfile { shape: ProfileShape::Function(Arc::new(psi)), lipschitz };
        if !profile.spot_check_lipschitz() {
            return Err(Error::InvalidInput("profile violates its declared Lipschitz constant"));
        }
        Ok(profile)
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz
    }

    /// Sine coefficients of a trigonometric profile.
    pub fn sine_coefficients(&self) -> Option<&[f64]> {
        match &self.shape {
            ProfileShape::Trig { sines, .. } => Some(sines),
            ProfileShape::Function(_) => None,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match &self.shape {
            ProfileShape::Trig { sines, cosines } => {
                let s: f64 = sines.iter().enumerate().map(|(k, b)| b * ((k + 1) as f64 * u).sin()).sum();
                let c: f64 = cosines.iter().enumerate().map(|(k, a)| a * ((k + 1) as f64 * u).cos()).sum();
                s + c
            }
            ProfileShape::Function(psi) => psi(reduce(u)),
        }
    }

    /// `ψ(u) − ψ(−u)`; only this part reaches the transforms.
    pub fn odd_difference(&self, u: f64) -> f64 {
        self.eval(u) - self.eval(-u)
    }

    /// True when no pair of neighbouring grid points violates the declared
    /// Lipschitz constant.
    pub fn spot_check_lipschitz(&self) -> bool {
        let h = 2.0 * PI / LIPSCHITZ_SAMPLES as f64;
        let mut prev = self.eval(-PI);
        for i in 1..=LIPSCHITZ_SAMPLES {
            let v = self.eval(-PI + i as f64 * h);
            if !v.is_finite() || (v - prev).abs() > self.lipschitz * h * (1.0 + 1e-9) + 1e-14 {
                return false;
            }
            prev = v;
        }
        true
    }
}

/// Maps `u` into `[-π, π]`.
fn reduce(u: f64) -> f64 {
    if (-PI..=PI).contains(&u) {
        return u;
    }
    let period = 2.0 * PI;
    let shifted = u + PI;
    shifted - period * (shifted / period).floor() - PI
}

/// Argument scaling inside the synthesising integral: `2x cosh u` (the
/// scaling under which the inversion closes) or `x cosh u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scaling {
    TwoX,
    X,
}

impl Scaling {
    fn factor(self) -> f64 {
        match self {
            Scaling::TwoX => 2.0,
            Scaling::X => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scaling::TwoX => "2x",
            Scaling::X => "x",
        }
    }
}

/// The function generated by a profile:
///
/// * Nicholson: `x ∫_{-π}^{π} J0(2x cosh u) ψ(u) sinh(2u) du`,
/// * Re: the same with the Lommel function `S_{-1,0}`,
/// * Im: `∫_{-π}^{π} [x K0(2x cosh u) − 1/(π cosh u)] ψ(u) sinh(2u) du`
///   with the Struve `K0`.
///
/// [`Scaling::X`] replaces `2x cosh u` by `x cosh u`; it is meaningful for
/// the first two only.
pub fn synthesize_function(
    kind: TransformKind,
    profile: &PeriodicProfile,
    x: f64,
    scaling: Scaling,
    budget: &QuadratureBudget,
) -> Result<f64> {
    Synthesizer::new(kind, profile, scaling, budget)?.eval(x)
}

/// A profile-generated function with its large-`x` expansion precomputed.
#[derive(Debug, Clone)]
pub struct Synthesizer {
    kind: TransformKind,
    profile: PeriodicProfile,
    sigma: f64,
    budget: QuadratureBudget,
    expansion: Option<MomentExpansion>,
}

impl Synthesizer {
    pub fn new(
        kind: TransformKind,
        profile: &PeriodicProfile,
        scaling: Scaling,
        budget: &QuadratureBudget,
    ) -> Result<Self> {
        if kind == TransformKind::Im && scaling == Scaling::X {
            return Err(Error::InvalidInput("the Struve bracket is only defined with 2x scaling"));
        }
        budget.validate()?;
        let expansion = match kind {
            TransformKind::Nicholson => None,
            _ => {
                let p = profile.clone();
                Some(MomentExpansion::new(
                    move |u: f64| Ok((2.0 * u).sinh() * p.odd_difference(u)),
                    &QuadratureBudget { rel_tol: budget.rel_tol.min(1e-12), abs_tol: 1e-12, ..*budget },
                )?)
            }
        };
        Ok(Synthesizer { kind, profile: profile.clone(), sigma: scaling.factor(), budget: *budget, expansion })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain { function: "synthesized function", value: x });
        }
        let sigma = self.sigma;
        // With `x' = σx/2` the integral is `(2/σ)` times its 2x-scaled value at `x'`.
        let xs = 0.5 * sigma * x;
        let p = &self.profile;
        let g = |u: f64| (2.0 * u).sinh() * p.odd_difference(u);
        match self.kind {
            TransformKind::Nicholson => {
                let mut budget = self.budget;
                budget.max_subdivisions = budget.max_subdivisions.max((40.0 * xs) as usize);
                let est = integrate_finite(|u: f64| Ok(j0_fast(sigma * x * u.cosh()) * g(u)), 0.0, PI, &budget)?;
                Ok(x * est.require("synthesized Nicholson profile")?)
            }
            TransformKind::Re => {
                if let (Some(e), true) = (&self.expansion, xs >= MOMENT_SWITCH) {
                    return Ok(2.0 / sigma * e.lommel(xs)?.0);
                }
                let max_terms = AccuracyTarget::default().max_terms;
                let est = integrate_finite(
                    |u: f64| Ok(lommel_estimate(sigma * x * u.cosh(), max_terms)?.0 * g(u)),
                    0.0,
                    PI,
                    &self.budget,
                )?;
                Ok(x * est.require("synthesized Lommel profile")?)
            }
            TransformKind::Im => {
                if let (Some(e), true) = (&self.expansion, x >= MOMENT_SWITCH) {
                    return Ok(e.struve_bracket(x)?.0);
                }
                let est = integrate_finite(|u: f64| Ok(k0_bracket(x, u.cosh())? * g(u)), 0.0, PI, &self.budget)?;
                est.require("synthesized Struve profile")
            }
        }
    }
}

/// Which normalisation constant to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantChoice {
    /// The self-consistent constant that closes the round trip.
    Calibrated,
    /// The constant as printed in the source theory.
    Printed,
}

/// `a_n = k_n ∫_{-π}^{π} ψ(u) sin(nu) du`, the forward coefficients of the
/// profile-generated function.
pub fn profile_coefficients(
    kind: TransformKind,
    profile: &PeriodicProfile,
    n: u32,
    choice: ConstantChoice,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate> {
    if n == 0 {
        return Err(Error::DegenerateOrder);
    }
    let nf = n as f64;
    let mut est = integrate_finite(|u: f64| Ok(profile.eval(u) * (nf * u).sin()), -PI, PI, budget)?;
    let k = match choice {
        ConstantChoice::Calibrated => kind.coefficient_constant(n),
        ConstantChoice::Printed => kind.printed_coefficient_constant(n),
    };
    est.value *= k;
    est.error_estimate *= k;
    Ok(est)
}

/// `a_1 … a_N` for a trigonometric profile. The declared tail is zero when
/// the profile's degree is at most `N`; other profiles have no computable
/// `ℓ₁` tail and are rejected.
pub fn profile_sequence(
    kind: TransformKind,
    profile: &PeriodicProfile,
    len: usize,
    budget: &QuadratureBudget,
) -> Result<CoefficientSequence> {
    match profile.sine_coefficients() {
        Some(s) if s.len() <= len => {}
        _ => return Err(Error::InvalidInput("coefficient tail of this profile is not bounded")),
    }
    let values = (1..=len as u32)
        .map(|n| profile_coefficients(kind, profile, n, ConstantChoice::Calibrated, budget).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    CoefficientSequence::new(values, 0.0)
}

/// A partial sum of the reconstruction series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    /// `S_N(x)` with all stored coefficients.
    pub value: f64,
    /// `|S_N − S_{⌈N/2⌉}|`, a convergence diagnostic (not a bound).
    pub cauchy_difference: f64,
    pub terms: usize,
}

/// `S_N(x) = Σ_{n≤N} r_n K_n(x) a_n` with the inversion kernels `Φ_n`, `Ψ_n`
/// or `Ω_n` and reconstruction prefactors `r_n` picked by `choice`.
pub fn reconstruct_series(
    kind: TransformKind,
    a: &CoefficientSequence,
    x: f64,
    choice: ConstantChoice,
    budget: &QuadratureBudget,
) -> Result<Reconstruction> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain { function: "reconstruction", value: x });
    }
    let terms = a.len();
    let half = terms.div_ceil(2);
    let mut value = 0.0;
    let mut half_value = 0.0;
    for n in 1..=terms as u32 {
        let an = a.get(n);
        if an == 0.0 {
            continue;
        }
        let r = match choice {
            ConstantChoice::Calibrated => kind.reconstruction_prefactor(n),
            ConstantChoice::Printed => kind.printed_reconstruction_prefactor(n),
        };
        let kernel = InversionKernel::new(kind.inversion_kernel(), n, budget)?;
        let term = r * kernel.eval(x)? * an;
        value += term;
        if (n as usize) <= half {
            half_value += term;
        }
    }
    Ok(Reconstruction { value, cauchy_difference: (value - half_value).abs(), terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_coefficients_match_closed_form() {
        let b = QuadratureBudget::default();
        let p = PeriodicProfile::trig(alloc::vec![1.0, 0.0, 0.25], alloc::vec![0.5]).unwrap();
        for kind in TransformKind::ALL {
            for n in 1..=4 {
                let want = kind.coefficient_constant(n) * PI * p.sine_coefficients().unwrap().get(n as usize - 1).copied().unwrap_or(0.0);
                let got = profile_coefficients(kind, &p, n, ConstantChoice::Calibrated, &b).unwrap().value;
                assert!((got - want).abs() < 1e-12, "{kind:?} {n}");
            }
        }
    }

    #[test]
    fn periodic_extension() {
        let p = PeriodicProfile::function(|u: f64| u.abs(), 1.0).unwrap();
        assert!((p.eval(2.0 * PI + 0.5) - 0.5).abs() < 1e-12);
        assert!((p.eval(-3.0 * PI + 0.25) - (PI - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_violation_is_caught() {
        assert!(PeriodicProfile::function(|u: f64| (3.0 * u).sin(), 1.0).is_err());
        assert!(PeriodicProfile::function(|u: f64| (3.0 * u).sin(), 3.0).is_ok());
    }

    #[test]
    fn x_scaling_is_a_dilation() {
        let b = QuadratureBudget::default();
        let p = PeriodicProfile::sine(1);
        for kind in [TransformKind::Nicholson, TransformKind::Re] {
            for &x in &[0.6, 3.0, 50.0] {
                let a = synthesize_function(kind, &p, x, Scaling::X, &b).unwrap();
                let c = synthesize_function(kind, &p, 0.5 * x, Scaling::TwoX, &b).unwrap();
                assert!((a - 2.0 * c).abs() < 1e-9 * (1.0 + a.abs()), "{kind:?} {x}: {a} {c}");
            }
        }
    }

    #[test]
    fn expansion_matches_quadrature_at_switch() {
        let b = QuadratureBudget::default();
        let p = PeriodicProfile::trig(alloc::vec![1.0, 0.0, 0.25], Vec::new()).unwrap();
        for kind in [TransformKind::Re, TransformKind::Im] {
            let s = Synthesizer::new(kind, &p, Scaling::TwoX, &b).unwrap();
            let near = s.eval(MOMENT_SWITCH * (1.0 - 1e-12)).unwrap();
            let at = s.eval(MOMENT_SWITCH).unwrap();
            assert!((near - at).abs() < 1e-9 * at.abs().max(1e-6), "{kind:?}: {near} {at}");
        }
    }
}
