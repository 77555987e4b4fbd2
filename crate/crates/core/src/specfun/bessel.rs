//! Integer-order cylinder functions `J0`, `Y0`, `K0`, `K1` of real argument.

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI};


use super::{AccuracyTarget, EULER_GAMMA};
use crate::dd::Dd;
use crate::{Error, Result};

/// Which cylinder function [`cyl_bessel`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CylKind {
    J0,
    Y0,
    K0,
    K1,
}

/// Below this argument `J0`/`Y0` use the double-double ascending series.
const SERIES_LIMIT: f64 = 20.0;
const DD_EPS: f64 = 1e-31;

pub fn cyl_bessel(kind: CylKind, x: f64) -> Result<f64> {
    let target = AccuracyTarget::default();
    match kind {
        CylKind::J0 => {
            if x.is_nan() || x < 0.0 {
                return Err(Error::Domain { function: "J0", value: x });
            }
            let (v, err) = j0_estimate(x, &target)?;
            target.check("J0", v, err)
        }
        CylKind::Y0 => {
            if !(x > 0.0) {
                return Err(Error::Domain { function: "Y0", value: x });
            }
            let (v, err) = y0_estimate(x, &target)?;
            target.check("Y0", v, err)
        }
        CylKind::K0 | CylKind::K1 => {
            if !(x > 0.0) || x.is_infinite() {
                let function = if kind == CylKind::K0 { "K0" } else { "K1" };
                return Err(Error::Domain { function, value: x });
            }
            Ok(k_integer(kind == CylKind::K1, x))
        }
    }
}

/// `J0` with no accuracy bookkeeping, for hot inner loops on `x >= 0`.
pub(crate) fn j0_fast(x: f64) -> f64 {
    j0_estimate(x, &AccuracyTarget::default()).map(|(v, _)| v).unwrap_or(f64::NAN)
}

/// `Y0` with no accuracy bookkeeping, for hot inner loops on `x > 0`.
pub(crate) fn y0_fast(x: f64) -> f64 {
    y0_estimate(x, &AccuracyTarget::default()).map(|(v, _)| v).unwrap_or(f64::NAN)
}

/// Hankel asymptotic sums `P(ν, x)` and `Q(ν, x)` for real `μ = 4ν²`.
///
/// Returns `(P, Q, error)`; the sums are truncated at their smallest term,
/// which is also the error estimate.
pub(crate) fn hankel_pq(mu: f64, x: f64, max_terms: usize) -> (f64, f64, f64) {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev_abs = 1.0_f64;
    let mut min_abs = f64::INFINITY;
    let mut max_abs = 1.0_f64;
    for k in 1..=max_terms {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (8.0 * k as f64 * x);
        let abs = term.abs();
        if abs < 1e-17 {
            min_abs = abs;
            break;
        }
        if abs > prev_abs && odd * odd > mu.abs() {
            // past the smallest term: the expansion starts to diverge
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        min_abs = min_abs.min(abs);
        max_abs = max_abs.max(abs);
        prev_abs = abs;
    }
    (p, q, min_abs.max(4.0 * f64::EPSILON * max_abs))
}

/// `(cos(x - π/4), sin(x - π/4))` without forming `x - π/4`.
pub(crate) fn shifted_phase(x: f64) -> (f64, f64) {
    let (s, c) = (x.sin(), x.cos());
    ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
}

/// Double-double series `Σ (-q)^k/(k!)²` and the companion sums needed by
/// `Y0`: returns `(J0, Σ H_k r_k, Σ|r_k|, Σ H_k |r_k|)` with `r_k` the J0 terms.
fn j0_series(x: f64, max_terms: usize) -> Result<(Dd, Dd, f64, f64)> {
    let q = Dd::product(x, x).mul_f64(0.25);
    let mut r = Dd::ONE;
    let mut j0 = Dd::ONE;
    let mut harmonic = Dd::ZERO;
    let mut hsum = Dd::ZERO;
    let mut abs_sum = 1.0;
    let mut habs_sum = 0.0;
    for k in 1..=max_terms {
        let kf = k as f64;
        r = -(r * q).div_f64(kf * kf);
        harmonic = harmonic + Dd::ONE.div_f64(kf);
        j0 = j0 + r;
        let hr = harmonic * r;
        hsum = hsum + hr;
        let ra = r.hi.abs();
        abs_sum += ra;
        habs_sum += hr.hi.abs();
        if ra < 1e-34 * abs_sum {
            return Ok((j0, hsum, abs_sum, habs_sum));
        }
    }
    Err(Error::AccuracyFailure { function: "J0 series", estimate: f64::INFINITY })
}

fn j0_estimate(x: f64, target: &AccuracyTarget) -> Result<(f64, f64)> {
    if x < SERIES_LIMIT {
        let (j0, _, abs_sum, _) = j0_series(x, target.max_terms)?;
        let v = j0.to_f64();
        Ok((v, DD_EPS * abs_sum + f64::EPSILON * v.abs()))
    } else {
        let (p, q, err) = hankel_pq(0.0, x, target.max_terms);
        let (c, s) = shifted_phase(x);
        let amp = (FRAC_2_PI / x).sqrt();
        Ok((amp * (p * c - q * s), amp * (err + 2.0 * f64::EPSILON * (p.abs() + q.abs()))))
    }
}

fn y0_estimate(x: f64, target: &AccuracyTarget) -> Result<(f64, f64)> {
    if x < SERIES_LIMIT {
        let (j0, hsum, abs_sum, habs_sum) = j0_series(x, target.max_terms)?;
        let log_term = (0.5 * x).ln() + EULER_GAMMA;
        let j0 = j0.to_f64();
        let c = -hsum.to_f64();
        let v = FRAC_2_PI * (log_term * j0 + c);
        let err = FRAC_2_PI
            * (DD_EPS * (habs_sum + log_term.abs() * abs_sum)
                + 4.0 * f64::EPSILON * ((log_term * j0).abs() + c.abs()));
        Ok((v, err))
    } else {
        let (p, q, err) = hankel_pq(0.0, x, target.max_terms);
        let (c, s) = shifted_phase(x);
        let amp = (FRAC_2_PI / x).sqrt();
        Ok((amp * (p * s + q * c), amp * (err + 2.0 * f64::EPSILON * (p.abs() + q.abs()))))
    }
}

/// `K0` or `K1` from `∫₀^∞ e^{-x cosh u} cosh(ku) du` by the trapezoidal rule,
/// which converges geometrically for this analytic, doubly decaying integrand.
fn k_integer(order_one: bool, x: f64) -> f64 {
    const STEP: f64 = 0.2;
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let u = k as f64 * STEP;
        let half = (0.5 * u).sinh();
        let exponent = 2.0 * x * half * half;
        if exponent > 60.0 || k > 4000 {
            break;
        }
        let w = (-exponent).exp();
        sum += if order_one { w * u.cosh() } else { w };
        k += 1;
    }
    STEP * sum * (-x).exp()
}

/// `sup_{u>0} |√u Z(u)|` for `Z = J0` or `Y0`.
///
/// `u (J0² + Y0²)` increases monotonically to `2/π`, so the supremum is at
/// most `√(2/π)`; a scan of `(0, 200]` confirms no interior value exceeds it.
pub fn sup_sqrt_abs(kind: CylKind) -> Result<f64> {
    if !matches!(kind, CylKind::J0 | CylKind::Y0) {
        return Err(Error::InvalidInput("sup_sqrt_abs is defined for J0 and Y0"));
    }
    let mut best = FRAC_2_PI.sqrt();
    let mut u = 1e-3;
    while u <= 200.0 {
        let v = cyl_bessel(kind, u)?;
        best = best.max(u.sqrt() * v.abs());
        u += 5e-3;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from standard tables (Abramowitz & Stegun / DLMF).
    #[test]
    fn tabulated_values() {
        assert_eq!(cyl_bessel(CylKind::J0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(cyl_bessel(CylKind::J0, 1.0).unwrap(), 0.765_197_686_557_966_6, max_relative = 1e-14);
        assert_relative_eq!(cyl_bessel(CylKind::J0, 10.0).unwrap(), -0.245_935_764_451_348_3, max_relative = 1e-13);
        assert_relative_eq!(cyl_bessel(CylKind::Y0, 1.0).unwrap(), 0.088_256_964_215_676_96, max_relative = 1e-13);
        assert_relative_eq!(cyl_bessel(CylKind::Y0, 10.0).unwrap(), 0.055_671_167_283_599_39, max_relative = 1e-12);
        assert_relative_eq!(cyl_bessel(CylKind::K0, 1.0).unwrap(), 0.421_024_438_240_708_3, max_relative = 1e-14);
        assert_relative_eq!(cyl_bessel(CylKind::K1, 1.0).unwrap(), 0.601_907_230_197_234_6, max_relative = 1e-14);
        assert_relative_eq!(cyl_bessel(CylKind::K0, 0.001).unwrap(), 7.023_688_800_562_381, max_relative = 1e-12);
        assert_relative_eq!(cyl_bessel(CylKind::K0, 50.0).unwrap(), 3.410_167_749_789_496e-23, max_relative = 1e-12);
    }

    #[test]
    fn series_and_asymptotic_agree_at_switch() {
        let target = AccuracyTarget::default();
        for &x in &[18.0, 20.0, 22.0, 25.0] {
            let (s, _, _, _) = j0_series(x, 400).unwrap();
            let (p, q, _) = hankel_pq(0.0, x, 400);
            let (c, sn) = shifted_phase(x);
            let h = (FRAC_2_PI / x).sqrt() * (p * c - q * sn);
            assert!((s.to_f64() - h).abs() < 1e-14, "x = {x}");
            let (y, _) = y0_estimate(x, &target).unwrap();
            let yh = (FRAC_2_PI / x).sqrt() * (p * sn + q * c);
            if x < SERIES_LIMIT {
                assert!((y - yh).abs() < 1e-14, "x = {x}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(cyl_bessel(CylKind::Y0, 0.0).is_err());
        assert!(cyl_bessel(CylKind::K0, -1.0).is_err());
        assert!(cyl_bessel(CylKind::K1, 0.0).is_err());
        assert!(cyl_bessel(CylKind::J0, -1.0).is_err());
    }

    #[test]
    fn sup_is_the_asymptotic_limit() {
        let s = sup_sqrt_abs(CylKind::Y0).unwrap();
        assert_relative_eq!(s, FRAC_2_PI.sqrt(), max_relative = 1e-15);
    }
}
