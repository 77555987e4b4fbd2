//! Struve `H0` and the Struve function of the second kind `K0 = H0 - Y0`.

use core::f64::consts::{FRAC_2_PI, PI};


use super::bessel::y0_fast;
use super::AccuracyTarget;
use crate::dd::Dd;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StruveKind {
    /// `H0(x)`.
    H0,
    /// `K0(x) = H0(x) - Y0(x) = (2/π) ∫₀^∞ e^{-x sinh t} dt`.
    K0,
}

/// Beyond this the asymptotic series for `K0` is accurate to ~`1e-16`.
const ASYMPTOTIC_FROM: f64 = 40.0;

pub fn struve(kind: StruveKind, x: f64) -> Result<f64> {
    let target = AccuracyTarget::default();
    let name = match kind {
        StruveKind::H0 => "H0",
        StruveKind::K0 => "Struve K0",
    };
    match kind {
        StruveKind::H0 if x.is_nan() || x < 0.0 => {
            return Err(Error::Domain { function: name, value: x })
        }
        StruveKind::K0 if !(x > 0.0) => return Err(Error::Domain { function: name, value: x }),
        _ => {}
    }
    if x.is_infinite() {
        return Err(Error::Domain { function: name, value: x });
    }
    let (v, err) = estimate(kind, x, target.max_terms)?;
    target.check(name, v, err)
}

pub(crate) fn estimate(kind: StruveKind, x: f64, max_terms: usize) -> Result<(f64, f64)> {
    if x >= ASYMPTOTIC_FROM {
        let (k, kerr) = k0_asymptotic(x);
        return Ok(match kind {
            StruveKind::K0 => (k, kerr),
            StruveKind::H0 => {
                let y = y0_fast(x);
                (k + y, kerr + 4.0 * f64::EPSILON * y.abs())
            }
        });
    }
    let (h, herr) = h0_series(x, max_terms)?;
    Ok(match kind {
        StruveKind::H0 => (h, herr),
        StruveKind::K0 => {
            let y = y0_fast(x);
            (h - y, herr + 4.0 * f64::EPSILON * (h.abs() + y.abs()))
        }
    })
}

/// `H0(x) = Σ (-1)^k (x/2)^{2k+1} / Γ(k+3/2)²`, in double-double.
fn h0_series(x: f64, max_terms: usize) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    let q = Dd::product(x, x).mul_f64(0.25);
    let mut term = Dd::from_f64(0.5 * x);
    let mut sum = term;
    let mut abs_sum = term.hi.abs();
    for k in 1..=max_terms {
        let a = k as f64 + 0.5;
        term = -(term * q) / Dd::product(a, a);
        sum = sum + term;
        abs_sum += term.hi.abs();
        if term.hi.abs() < 1e-34 * abs_sum {
            // Γ(3/2)² = π/4
            let scale = 4.0 / PI;
            let v = scale * sum.to_f64();
            return Ok((v, scale * 1e-31 * abs_sum + f64::EPSILON * v.abs()));
        }
    }
    Err(Error::AccuracyFailure { function: "H0 series", estimate: f64::INFINITY })
}

/// `x K0(2xc) − 1/(πc)` for `x ≥ 0`, `c ≥ 1`, without the cancellation of
/// forming the difference once `2xc` is large.
pub(crate) fn k0_bracket(x: f64, c: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(-1.0 / (PI * c));
    }
    let z = 2.0 * x * c;
    if z >= ASYMPTOTIC_FROM {
        // x (2/π) Σ_{k≥1} (-1)^k ((2k-1)!!)² / z^{2k+1}
        let inv_sq = 1.0 / (z * z);
        let mut term = -inv_sq / z;
        let mut sum = term;
        let mut k = 2.0;
        loop {
            let odd = 2.0 * k - 1.0;
            let next = -term * odd * odd * inv_sq;
            if next.abs() >= term.abs() || next.abs() < 1e-18 * sum.abs() {
                return Ok(x * FRAC_2_PI * sum);
            }
            term = next;
            sum += term;
            k += 1.0;
        }
    }
    let (k, _) = estimate(StruveKind::K0, z, AccuracyTarget::default().max_terms)?;
    Ok(x * k - 1.0 / (PI * c))
}

/// `K0(x) ~ (2/π) Σ (-1)^k ((2k-1)!!)² / x^{2k+1}`, truncated at the smallest term.
fn k0_asymptotic(x: f64) -> (f64, f64) {
    let inv_sq = 1.0 / (x * x);
    let mut term = 1.0 / x;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = -term * odd * odd * inv_sq;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * sum.abs() {
            let err = next.abs() + 2.0 * f64::EPSILON * sum.abs();
            return (FRAC_2_PI * sum, FRAC_2_PI * err);
        }
        term = next;
        sum += term;
        k += 1.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{cyl_bessel, CylKind};
    use approx::assert_relative_eq;

    /// `(2/π)∫₀^∞ e^{-x sinh t} dt` by a plain trapezoid on `t = e^v`, an
    /// integration route that shares nothing with the series.
    fn k0_by_quadrature(x: f64) -> f64 {
        let h = 0.01;
        let mut sum = 0.0;
        let mut v = -40.0_f64;
        while v < 6.0 {
            let t = v.exp();
            let e = x * t.sinh();
            if e < 750.0 {
                sum += (-e).exp() * t;
            }
            v += h;
        }
        FRAC_2_PI * h * sum
    }

    #[test]
    fn second_kind_matches_integral() {
        for &x in &[0.05, 0.5, 1.0, 3.0, 10.0, 25.0, 39.0, 41.0, 80.0] {
            let k = struve(StruveKind::K0, x).unwrap();
            assert_relative_eq!(k, k0_by_quadrature(x), max_relative = 1e-11);
        }
    }

    #[test]
    fn h0_is_k0_plus_y0() {
        for &x in &[0.5, 7.0, 30.0, 60.0] {
            let h = struve(StruveKind::H0, x).unwrap();
            let y = cyl_bessel(CylKind::Y0, x).unwrap();
            assert!((h - (k0_by_quadrature(x) + y)).abs() < 1e-12 * (1.0 + h.abs()));
        }
    }

    #[test]
    fn routes_agree_at_switch() {
        let (s, _) = h0_series(ASYMPTOTIC_FROM, 400).unwrap();
        let (a, _) = k0_asymptotic(ASYMPTOTIC_FROM);
        let y = cyl_bessel(CylKind::Y0, ASYMPTOTIC_FROM).unwrap();
        assert!((s - (a + y)).abs() < 1e-13);
    }

    #[test]
    fn small_argument() {
        // H0(x) ≈ 2x/π for small x
        assert_relative_eq!(struve(StruveKind::H0, 1e-8).unwrap(), 2e-8 / PI, max_relative = 1e-12);
        assert_eq!(struve(StruveKind::H0, 0.0).unwrap(), 0.0);
        assert!(struve(StruveKind::K0, 0.0).is_err());
    }
}
