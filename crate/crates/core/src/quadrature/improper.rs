// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use super::adaptive::integrate_with_mass;
use super::{accelerate_sequence, richardson_doubling, IntegralEstimate, QuadratureBudget, Regime};
use crate::{Error, Result};

/// Caller-declared decay of an absolutely integrable tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// `|f(t)|` is eventually dominated by `C e^{-rate t}`.
    Exponential { rate: f64 },
    /// `|f(t)|` is eventually dominated by `C t^{-power}` with `power > 1`.
    /// If `f` also oscillates with the given period, block ends are placed
    /// on multiples of it.
    Algebraic { power: f64, period: Option<f64> },
}

/// Doubling blocks cannot usefully go beyond this many.
const MAX_DOUBLINGS: usize = 48;

/// `∫_a^∞ f` for an absolutely convergent integrand.
///
/// Exponential tails are accumulated in blocks of length `1/rate` until a
/// ratio-based bound on the remainder falls below the budget. Algebraic tails
/// use blocks whose ends double, so the truncation error behaves like a sum
/// of powers of the cut-off and is removed by [`richardson_doubling`].
pub fn integrate_decaying<F>(
    mut f: F,
    a: f64,
    decay: DecayClass,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    budget.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidInput("decaying integration needs a finite lower limit"));
    }
    match decay {
        DecayClass::Exponential { rate } if rate > 0.0 && rate.is_finite() => {
            exponential_tail(&mut f, a, 1.0 / rate, budget)
        }
        DecayClass::Algebraic { power, period } if power > 1.0 => {
            if matches!(period, Some(p) if !(p > 0.0 && p.is_finite())) {
                return Err(Error::InvalidInput("oscillation period must be positive"));
            }
            algebraic_tail(&mut f, a, power, period, budget)
        }
        _ => Err(Error::InvalidInput("decay class needs a positive rate or a power above one")),
    }
}

fn exponential_tail<F>(f: &mut F, a: f64, block: f64, budget: &QuadratureBudget) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inner = budget.scaled(0.1);
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut masses: Vec<f64> = Vec::new();
    for k in 0..budget.max_tail_blocks {
        let lo = a + k as f64 * block;
        let (est, mass) = integrate_with_mass(&mut *f, lo, lo + block, &inner)?;
        value += est.value;
        error += est.error_estimate;
        evaluations += est.evaluations;
        masses.push(mass);
        let n = masses.len();
        if mass == 0.0 && n >= 3 && masses[n - 2] == 0.0 {
            // the integrand has underflowed for good
            return Ok(done(value, error, evaluations, budget, Regime::Decaying));
        }
        if n >= 3 {
            let r1 = masses[n - 1] / masses[n - 2];
            let r2 = masses[n - 2] / masses[n - 3];
            let r = r1.max(r2);
            if r < 0.9 {
                let tail = masses[n - 1] * r / (1.0 - r);
                if tail <= 0.05 * budget.tolerance(value) {
                    return Ok(done(value, error + tail, evaluations, budget, Regime::Decaying));
                }
            }
        }
    }
    Err(Error::DecayNotDetected { blocks: budget.max_tail_blocks })
}

fn algebraic_tail<F>(
    f: &mut F,
    a: f64,
    power: f64,
    period: Option<f64>,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inner = budget.scaled(0.01);
    let align = |x: f64| match period {
        Some(p) => (x / p).ceil() * p,
        None => x,
    };
    let mut end = align((2.0 * a.abs()).max(a + 1.0).max(1.0));
    let (first, _) = integrate_with_mass(&mut *f, a, end, &inner)?;
    let mut value = first.value;
    let mut error = first.error_estimate;
    let mut evaluations = first.evaluations;
    let mut partial = alloc::vec![value];
    let mut masses: Vec<f64> = Vec::new();
    let mut previous_limit: Option<f64> = None;
    // best extrapolated (value, error) so far, reported if the integrand's
    // domain ends before the tolerance is met
    let mut best: Option<(f64, f64)> = None;
    let shrink = 2.0_f64.powf(1.0 - power);
    let blocks = budget.max_tail_blocks.min(MAX_DOUBLINGS);
    for _ in 0..blocks {
        let next = 2.0 * end;
        let (est, mass) = match integrate_blocks(&mut *f, end, next, period, &inner) {
            Ok(r) => r,
            Err(Error::Domain { .. }) if best.is_some() => {
                let (v, e) = best.unwrap_or_default();
                return Ok(done(v, e, evaluations, budget, Regime::Decaying));
            }
            Err(e) => return Err(e),
        };
        end = next;
        value += est.value;
        error += est.error_estimate;
        evaluations += est.evaluations;
        partial.push(value);
        masses.push(mass);
        let tol = budget.tolerance(value);
        // the remainder past `end` is at most the latest block scaled by the
        // declared power law
        let raw_tail = mass * shrink / (1.0 - shrink);
        if raw_tail + error <= tol {
            return Ok(done(value, error + raw_tail, evaluations, budget, Regime::Decaying));
        }
        if partial.len() >= 4 {
            let acc = richardson_doubling(&partial[1..], power - 1.0)?;
            if !acc.breakdown {
                if let Some(prev) = previous_limit {
                    let total_err = acc.error_estimate.max((acc.limit - prev).abs()) + error;
                    if best.is_none_or(|(_, e)| total_err < e) {
                        best = Some((acc.limit, total_err));
                    }
                    if total_err <= tol {
                        return Ok(done(acc.limit, total_err, evaluations, budget, Regime::Decaying));
                    }
                }
                previous_limit = Some(acc.limit);
            }
        }
        let n = masses.len();
        if n >= 4 && masses[n - 1] > masses[n - 2] && masses[n - 2] > masses[n - 3] && masses[n - 3] > masses[n - 4] {
            return Err(Error::DecayNotDetected { blocks: n });
        }
    }
    Err(Error::DecayNotDetected { blocks })
}

/// Integrates `[lo, hi]` in pieces no longer than 64 oscillation periods so
/// that long doubling blocks do not starve the adaptive splitter.
fn integrate_blocks<F>(
    f: &mut F,
    lo: f64,
    hi: f64,
    period: Option<f64>,
    budget: &QuadratureBudget,
) -> Result<(IntegralEstimate, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let pieces = match period {
        Some(p) => (((hi - lo) / (64.0 * p)).ceil() as usize).max(1),
        None => 1,
    };
    let width = (hi - lo) / pieces as f64;
    let mut total = IntegralEstimate {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
        regime: Regime::Finite,
    };
    let mut mass = 0.0;
    for i in 0..pieces {
        let a = lo + i as f64 * width;
        let b = if i + 1 == pieces { hi } else { a + width };
        let (est, m) = integrate_with_mass(&mut *f, a, b, budget)?;
        total.value += est.value;
        total.error_estimate += est.error_estimate;
        total.evaluations += est.evaluations;
        total.converged &= est.converged;
        mass += m;
    }
    Ok((total, mass))
}

/// Sub-integrals that missed their own (tighter) tolerance still contribute
/// their error estimates to `error`, so convergence is judged on the total.
fn done(
    value: f64,
    error: f64,
    evaluations: usize,
    budget: &QuadratureBudget,
    regime: Regime,
) -> IntegralEstimate {
    IntegralEstimate {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= budget.tolerance(value),
        regime,
    }
}

/// `∫_a^∞ f` for an integrand that converges only through oscillation.
///
/// `[a, ∞)` is cut into half-periods `π / phase_rate`; each block is
/// integrated with [`super::integrate_finite`] and the running block sums are
/// extrapolated with [`accelerate_sequence`]. The value is accepted once two
/// consecutive extrapolations agree within the budget.
pub fn integrate_oscillatory_improper<F>(
    mut f: F,
    a: f64,
    phase_rate: f64,
    budget: &QuadratureBudget,
) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    budget.validate()?;
    if !a.is_finite() || !(phase_rate > 0.0 && phase_rate.is_finite()) {
        return Err(Error::InvalidInput("oscillatory integration needs finite a and positive phase rate"));
    }
    const MIN_BLOCKS: usize = 8;
    const WINDOW: usize = 24;
    let half_period = core::f64::consts::PI / phase_rate;
    let inner = budget.scaled(0.01);
    let mut value = 0.0;
    let mut block_error = 0.0;
    let mut evaluations = 0;
    let mut partial: Vec<f64> = Vec::new();
    let mut masses: Vec<f64> = Vec::new();
    let mut limits: Vec<f64> = Vec::new();
    let mut quiet_blocks = 0;
    for k in 0..budget.max_tail_blocks {
        let lo = a + k as f64 * half_period;
        let (est, mass) = integrate_with_mass(&mut f, lo, lo + half_period, &inner)?;
        value += est.value;
        block_error += est.error_estimate;
        evaluations += est.evaluations;
        partial.push(value);
        masses.push(mass);
        let tol = budget.tolerance(value);

        // an absolutely convergent integrand may simply die out
        if mass <= 0.1 * tol {
            quiet_blocks += 1;
            if quiet_blocks >= 3 && block_error <= tol {
                return Ok(done(value, block_error + mass, evaluations, budget, Regime::OscillatoryImproper));
            }
        } else {
            quiet_blocks = 0;
        }

        if partial.len() < MIN_BLOCKS {
            continue;
        }
        // the epsilon algorithm happily "sums" divergent oscillations, so only
        // trust it while the block amplitudes are shrinking
        let n = masses.len();
        if masses[n - 1] >= masses[n - 1 - MIN_BLOCKS / 2] {
            limits.clear();
            continue;
        }
        let window = &partial[partial.len().saturating_sub(WINDOW)..];
        let acc = accelerate_sequence(window)?;
        if acc.breakdown {
            continue;
        }
        limits.push(acc.limit);
        let n = limits.len();
        if n >= 3 {
            let drift = (limits[n - 1] - limits[n - 2]).abs().max((limits[n - 1] - limits[n - 3]).abs());
            let err = drift.max(acc.error_estimate) + block_error;
            if err <= tol {
                return Ok(done(acc.limit, err, evaluations, budget, Regime::OscillatoryImproper));
            }
        }
    }
    Err(Error::AccelerationDivergence { blocks: budget.max_tail_blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn exponential() {
        let b = QuadratureBudget::default();
        let r = integrate_decaying(|t| Ok((-t).exp()), 0.0, DecayClass::Exponential { rate: 1.0 }, &b).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 1.0).abs() <= r.error_estimate.max(1e-12), "{r:?}");
    }

    #[test]
    fn algebraic() {
        let b = QuadratureBudget::default();
        let decay = DecayClass::Algebraic { power: 2.0, period: None };
        let r = integrate_decaying(|t| Ok(1.0 / (1.0 + t * t)), 0.0, decay, &b).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-9 && r.converged, "{r:?}");
    }

    #[test]
    fn algebraic_with_oscillation() {
        // ∫₀^∞ (1 + cos 2t)/(1 + t²) dt = (π/2)(1 + e^{-2})
        let b = QuadratureBudget::default();
        let decay = DecayClass::Algebraic { power: 2.0, period: Some(PI) };
        let f = |t: f64| Ok((1.0 + (2.0 * t).cos()) / (1.0 + t * t));
        let r = integrate_decaying(f, 0.0, decay, &b).unwrap();
        let exact = 0.5 * PI * (1.0 + (-2.0_f64).exp());
        assert!((r.value - exact).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn sine_integral() {
        let b = QuadratureBudget::default();
        let f = |t: f64| Ok(if t == 0.0 { 1.0 } else { t.sin() / t });
        let r = integrate_oscillatory_improper(f, 0.0, 1.0, &b).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-9 && r.converged, "{r:?}");
        assert_eq!(r.regime, Regime::OscillatoryImproper);
    }

    #[test]
    fn non_decaying_is_detected() {
        let b = QuadratureBudget::new(1e-10, 1e-13, 50, 60).unwrap();
        let r = integrate_decaying(Ok, 0.0, DecayClass::Exponential { rate: 1.0 }, &b);
        assert!(matches!(r, Err(Error::DecayNotDetected { .. })));
        let r = integrate_oscillatory_improper(|t: f64| Ok(t * t.sin()), 0.0, 1.0, &b);
        assert!(r.is_err());
    }
}
