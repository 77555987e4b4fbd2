//! The three discrete index transforms, their inversions, and the
//! profile-based function class on which the inversions are reconstructions.
//!
//! Normalisations live on [`TransformKind`]. Where the printed constants of
//! the underlying theory do not close a round trip, the self-consistent value
//! is used and the printed one is kept alongside (`printed_*` methods) so the
//! calibration report can show both.

mod profile;

pub use profile::{
    profile_coefficients, profile_sequence, reconstruct_series, synthesize_function,
    ConstantChoice, PeriodicProfile, Reconstruction, Scaling, Synthesizer,
};

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::kernels::{direct_value, nicholson_bound_constant, InversionKernel, KernelKind, KernelPoint, MAX_INDEX};
use crate::quadrature::{
    integrate_decaying, integrate_oscillatory_improper, DecayClass, IntegralEstimate, QuadratureBudget,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// Kernel `J² + Y²`, inverted with `Φ_n`.
    Nicholson,
    /// Kernel `Re[J²] / cosh(πn/2)`, inverted with `Ψ_n`.
    Re,
    /// Kernel `Im[J²] / sinh(πn/2)`, inverted with `Ω_n`.
    Im,
}

impl TransformKind {
    pub const ALL: [TransformKind; 3] = [TransformKind::Nicholson, TransformKind::Re, TransformKind::Im];

    pub fn forward_kernel(self) -> KernelKind {
        match self {
            TransformKind::Nicholson => KernelKind::Nicholson,
            TransformKind::Re => KernelKind::ReSquare,
            TransformKind::Im => KernelKind::ImSquare,
        }
    }

    pub fn inversion_kernel(self) -> KernelKind {
        self.forward_kernel().paired()
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Nicholson => "nicholson",
            TransformKind::Re => "re",
            TransformKind::Im => "im",
        }
    }

    /// The weight `w_n` in `f = Σ a_n w_n K_n(x)`.
    pub fn weight(self, n: u32) -> f64 {
        let h = 0.5 * PI * n as f64;
        match self {
            TransformKind::Nicholson => 1.0,
            TransformKind::Re => 1.0 / h.cosh(),
            TransformKind::Im => 1.0 / h.sinh(),
        }
    }

    /// `c_n` in `a_n = c_n ∫ inversion_kernel · f`.
    ///
    /// For `Re` this is four times the printed `sinh(πn)/π²`: the Lommel
    /// integral `∫ x S_{-1,0}(2x cosh u) Re[J²] dx` evaluates numerically to a
    /// quarter of its printed closed form, uniformly in `u` and `n`.
    pub fn inversion_prefactor(self, n: u32) -> f64 {
        let nf = n as f64;
        match self {
            TransformKind::Nicholson => (0.5 * PI * nf).sinh(),
            TransformKind::Re => 4.0 * (PI * nf).sinh() / (PI * PI),
            TransformKind::Im => (PI * nf).sinh(),
        }
    }

    /// The printed inversion prefactor.
    pub fn printed_inversion_prefactor(self, n: u32) -> f64 {
        match self {
            TransformKind::Re => 0.25 * self.inversion_prefactor(n),
            _ => self.inversion_prefactor(n),
        }
    }

    /// Prefactor `r_n` of the reconstruction `f = Σ r_n K_n(x) a_n`.
    ///
    /// Substituting the profile coefficients into the series and summing the
    /// sine series shows that `r_n` must equal the inversion prefactor.
    pub fn reconstruction_prefactor(self, n: u32) -> f64 {
        self.inversion_prefactor(n)
    }

    /// The printed reconstruction prefactor: `sinh(πn)/(2π²)` for `Re`
    /// (reproducing `f/8`) and `½ sinh(πn)` for `Im` (reproducing `f/2`).
    pub fn printed_reconstruction_prefactor(self, n: u32) -> f64 {
        match self {
            TransformKind::Nicholson => self.inversion_prefactor(n),
            TransformKind::Re => 0.125 * self.inversion_prefactor(n),
            TransformKind::Im => 0.5 * self.inversion_prefactor(n),
        }
    }

    /// `k_n` in `a_n = k_n ∫_{-π}^{π} ψ(u) sin(nu) du` for a profile-generated `f`.
    pub fn coefficient_constant(self, n: u32) -> f64 {
        let nf = n as f64;
        match self {
            TransformKind::Nicholson => 2.0 / (PI * (0.5 * PI * nf).sinh()),
            TransformKind::Re => 0.5 * PI / (PI * nf).sinh(),
            TransformKind::Im => 2.0 / (PI * (PI * nf).sinh()),
        }
    }

    /// The printed coefficient constant; twice [`Self::coefficient_constant`]
    /// for `Re`.
    pub fn printed_coefficient_constant(self, n: u32) -> f64 {
        match self {
            TransformKind::Re => PI / (PI * n as f64).sinh(),
            _ => self.coefficient_constant(n),
        }
    }

    /// Weighted forward kernel `w_n K_n(x)` by direct evaluation.
    pub fn weighted_kernel(self, n: u32, x: f64) -> Result<f64> {
        Ok(self.weight(n) * direct_value(self.forward_kernel(), KernelPoint::new(n, x)?)?.value)
    }

    /// Upper bound for `|w_n K_n(x)|` valid for every `n ≥ n_min`.
    pub fn weighted_kernel_bound(self, n_min: u32, x: f64) -> Result<f64> {
        let n = n_min.max(1) as f64;
        Ok(match self {
            TransformKind::Nicholson => nicholson_bound_constant(1)? * x.powf(-0.25),
            TransformKind::Re | TransformKind::Im => 2.0 * (2.0 * x).exp() / (PI * n),
        })
    }
}

/// A finite section `a_1 … a_N` of an `ℓ₁` sequence and a bound on the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    values: Vec<f64>,
    declared_tail_bound: f64,
}

impl CoefficientSequence {
    /// `values[0]` is `a_1`. `declared_tail_bound` bounds `Σ_{n>N} |a_n|`.
    pub fn new(values: Vec<f64>, declared_tail_bound: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("coefficients must be finite"));
        }
        if !(declared_tail_bound >= 0.0) || !declared_tail_bound.is_finite() {
            return Err(Error::InvalidInput("tail bound must be finite and nonnegative"));
        }
        if values.len() > MAX_INDEX as usize {
            return Err(Error::Unsupported { function: "coefficient count", value: values.len() as f64 });
        }
        Ok(CoefficientSequence { values, declared_tail_bound })
    }

    /// `a_n = δ_{n,m}` on `1..=len`.
    pub fn unit(m: u32, len: usize) -> Result<Self> {
        let mut values = alloc::vec![0.0; len.max(m as usize)];
        values[m as usize - 1] = 1.0;
        Self::new(values, 0.0)
    }

    /// `a_n = r^n` for `n ≤ len`, with the exact geometric tail as the bound.
    pub fn geometric(r: f64, len: usize) -> Result<Self> {
        if !(r.abs() < 1.0) {
            return Err(Error::InvalidInput("geometric ratio must be below one in magnitude"));
        }
        let values = (1..=len as i32).map(|n| r.powi(n)).collect();
        let tail = r.abs().powi(len as i32 + 1) / (1.0 - r.abs());
        Self::new(values, tail)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a_n` for `n ≥ 1`; zero past the stored section.
    pub fn get(&self, n: u32) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.values.get(n as usize - 1).copied().unwrap_or(0.0)
    }

    pub fn declared_tail_bound(&self) -> f64 {
        self.declared_tail_bound
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() + self.declared_tail_bound
    }
}

/// A forward-series value and the bound on the neglected terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// `f(x) = Σ a_n w_n K_n(x)` over the stored terms, with the neglected terms
/// bounded by `declared_tail_bound · sup_{n>N} |w_n K_n(x)|`.
///
/// Fails with [`Error::TailBoundExceeded`] when that bound is above
/// `tail_tolerance`.
pub fn forward_series(
    kind: TransformKind,
    a: &CoefficientSequence,
    x: f64,
    tail_tolerance: f64,
) -> Result<SeriesValue> {
    if !(x > 0.0) {
        return Err(Error::Domain { function: "forward series", value: x });
    }
    let mut value = 0.0;
    for (i, &an) in a.values().iter().enumerate() {
        if an != 0.0 {
            value += an * kind.weighted_kernel(i as u32 + 1, x)?;
        }
    }
    let tail_bound = if a.declared_tail_bound() == 0.0 {
        0.0
    } else {
        a.declared_tail_bound() * kind.weighted_kernel_bound(a.len() as u32 + 1, x)?
    };
    if tail_bound > tail_tolerance {
        return Err(Error::TailBoundExceeded { bound: tail_bound, tolerance: tail_tolerance });
    }
    Ok(SeriesValue { value, tail_bound })
}

/// How `f` makes `∫₀^∞ kernel · f` converge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionClass {
    /// The product is absolutely integrable with the given tail.
    Decaying(DecayClass),
    /// The product converges only in the improper sense, oscillating with
    /// the given angular rate.
    Oscillatory { phase_rate: f64 },
}

fn integrate_class<F>(g: F, class: FunctionClass, budget: &QuadratureBudget) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    match class {
        FunctionClass::Decaying(decay) => integrate_decaying(g, 0.0, decay, budget),
        FunctionClass::Oscillatory { phase_rate } => integrate_oscillatory_improper(g, 0.0, phase_rate, budget),
    }
}

fn scaled(mut est: IntegralEstimate, factor: f64) -> IntegralEstimate {
    est.value *= factor;
    est.error_estimate *= factor.abs();
    est
}

/// `a_n = w_n ∫₀^∞ K_n(x) f(x) dx`.
pub fn forward_integral<F>(
    kind: TransformKind,
    mut f: F,
    n: u32,
    class: FunctionClass,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    KernelPoint::new(n, 1.0)?;
    let kernel = kind.forward_kernel();
    let est = integrate_class(
        |x: f64| Ok(direct_value(kernel, KernelPoint { n, x })?.value * f(x)?),
        class,
        budget,
    )?;
    Ok(scaled(est, kind.weight(n)))
}

/// The convergence regime of `∫ inversion_kernel · f` when `f` is a forward
/// series of the same kind: improper for the Nicholson transform, algebraic
/// (`x^{-2}` resp. `x^{-3}`, oscillating with period `π`) for the others.
pub fn inversion_class(kind: TransformKind) -> FunctionClass {
    match kind {
        TransformKind::Nicholson => FunctionClass::Oscillatory { phase_rate: 2.0 },
        TransformKind::Re => FunctionClass::Decaying(DecayClass::Algebraic { power: 2.0, period: Some(PI) }),
        TransformKind::Im => FunctionClass::Decaying(DecayClass::Algebraic { power: 3.0, period: Some(PI) }),
    }
}

/// `a_n = c_n ∫₀^∞ (Φ_n | Ψ_n | Ω_n)(x) f(x) dx`.
pub fn inverse_coefficients<F>(
    kind: TransformKind,
    mut f: F,
    n: u32,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let kernel = InversionKernel::new(kind.inversion_kernel(), n, budget)?;
    let est = integrate_class(|x: f64| Ok(kernel.eval(x)? * f(x)?), inversion_class(kind), budget)?;
    Ok(scaled(est, kind.inversion_prefactor(n)))
}
