//! Bessel functions of purely imaginary order: `J_{iτ}(x)`, `Y_{iτ}(x)` and
//! the real-valued `K_{in}(t)`.

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use super::bessel::{hankel_pq, shifted_phase};
use super::{recip_gamma_one_plus_i, AccuracyTarget};
use crate::dd::{Dd, DdComplex};
use crate::{Error, Result};

/// Largest `|τ|` accepted by the imaginary-order routines.
pub const MAX_IMAG_ORDER: f64 = 20.0;
/// Arguments at or above this try the Hankel expansion first.
const HANKEL_FROM: f64 = 25.0;
/// The double-double series is trusted up to this argument.
const SERIES_UP_TO: f64 = 50.0;

/// `J_{iτ}(x)` for real `τ` and `x > 0`.
pub fn bessel_j_imag_order(tau: f64, x: f64) -> Result<Complex64> {
    bessel_j_imag_order_with(tau, x, &AccuracyTarget::default())
}

pub fn bessel_j_imag_order_with(tau: f64, x: f64, target: &AccuracyTarget) -> Result<Complex64> {
    let (v, err) = j_imag_estimate(tau, x, target)?;
    let norm = v.norm();
    if v.re.is_finite() && v.im.is_finite() && target.accepts(norm, err) {
        Ok(v)
    } else {
        Err(Error::AccuracyFailure { function: "J_{iτ}", estimate: err })
    }
}

pub(crate) fn j_imag_estimate(
    tau: f64,
    x: f64,
    target: &AccuracyTarget,
) -> Result<(Complex64, f64)> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain { function: "J_{iτ}", value: x });
    }
    if !(tau.abs() <= MAX_IMAG_ORDER) {
        return Err(Error::Unsupported { function: "J_{iτ}", value: tau });
    }
    if x >= HANKEL_FROM {
        let (v, err) = j_imag_hankel(tau, x, target.max_terms);
        if target.accepts(v.norm(), err) || x > SERIES_UP_TO {
            return Ok((v, err));
        }
    }
    j_imag_series(tau, x, target.max_terms)
}

/// Ascending series `(x/2)^{iτ}/Γ(1+iτ) Σ (-x²/4)^k / (k! (1+iτ)_k)`, summed
/// in double-double so the `e^x` cancellation costs nothing at these sizes.
fn j_imag_series(tau: f64, x: f64, max_terms: usize) -> Result<(Complex64, f64)> {
    let q = Dd::product(x, x).mul_f64(0.25);
    let tau_sq = Dd::product(tau, tau);
    let mut c = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    let mut abs_sum = 1.0;
    let mut converged = false;
    for k in 1..=max_terms {
        let kf = k as f64;
        // -q / (k (k + iτ)) = -q (k - iτ) / (k (k² + τ²))
        let denom = (Dd::from_f64(kf * kf) + tau_sq).mul_f64(kf);
        let scale = q / denom;
        let w = DdComplex::new(-scale.mul_f64(kf), scale.mul_f64(tau));
        c = c * w;
        sum = sum + c;
        let size = c.norm_f64();
        abs_sum += size;
        if size < 1e-34 * abs_sum {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::AccuracyFailure { function: "J_{iτ} series", estimate: f64::INFINITY });
    }
    let phase = tau * (0.5 * x).ln();
    let prefactor = Complex64::new(phase.cos(), phase.sin()) * recip_gamma_one_plus_i(tau);
    let s = Complex64::new(sum.re.to_f64(), sum.im.to_f64());
    let v = prefactor * s;
    let err = prefactor.norm() * 1e-31 * abs_sum + 8.0 * f64::EPSILON * (1.0 + tau.abs()) * v.norm();
    Ok((v, err))
}

/// Hankel expansion with complex phase `ω = x - π/4 - iτπ/2`.
fn j_imag_hankel(tau: f64, x: f64, max_terms: usize) -> (Complex64, f64) {
    let (p, q, err) = hankel_pq(-4.0 * tau * tau, x, max_terms);
    let (ca, sa) = shifted_phase(x);
    let b = 0.5 * PI * tau;
    let (ch, sh) = (b.cosh(), b.sinh());
    let cos_w = Complex64::new(ca * ch, sa * sh);
    let sin_w = Complex64::new(sa * ch, -ca * sh);
    let amp = (FRAC_2_PI / x).sqrt();
    let v = (cos_w * p - sin_w * q) * amp;
    let scale = amp * ch;
    (v, scale * (err + 4.0 * f64::EPSILON * (p.abs() + q.abs())))
}

/// `Y_{iτ}(x) = [J_{iτ}(x) cos(iπτ) - J_{-iτ}(x)] / sin(iπτ)`.
pub fn bessel_y_imag_order(tau: f64, x: f64) -> Result<Complex64> {
    bessel_y_imag_order_with(tau, x, &AccuracyTarget::default())
}

pub fn bessel_y_imag_order_with(tau: f64, x: f64, target: &AccuracyTarget) -> Result<Complex64> {
    if tau == 0.0 {
        return Err(Error::DegenerateOrder);
    }
    let j = bessel_j_imag_order_with(tau, x, target)?;
    Ok(y_from_j(tau, j))
}

/// Applies the connection formula given `J_{iτ}(x)` for real `x`, where
/// `J_{-iτ}(x)` is its conjugate.
pub(crate) fn y_from_j(tau: f64, j: Complex64) -> Complex64 {
    let c = (PI * tau).cosh();
    let s = (PI * tau).sinh();
    // (J c - conj J) / (i s)
    let num = j * c - j.conj();
    Complex64::new(num.im / s, -num.re / s)
}

/// `K_{in}(t) = ∫₀^∞ e^{-t cosh u} cos(nu) du` for `1 <= n <= 20`, `t > 0`.
pub fn mod_bessel_k_imag_order(n: u32, t: f64) -> Result<f64> {
    mod_bessel_k_imag_order_with(n, t, &AccuracyTarget::default())
}

pub fn mod_bessel_k_imag_order_with(n: u32, t: f64, target: &AccuracyTarget) -> Result<f64> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(Error::Domain { function: "K_{in}", value: t });
    }
    if n > 20 {
        return Err(Error::Unsupported { function: "K_{in}", value: n as f64 });
    }
    let (v, err) = k_imag_trapezoid(n as f64, t);
    if target.accepts(v, err) {
        return Ok(v);
    }
    // the cosine integral cancels like e^{nπ/2} for small t; the series for
    // -π Im I_{in}(t) / sinh(nπ) does not
    let (vs, errs) = k_imag_series(n as f64, t, target.max_terms)?;
    if errs < err {
        target.check("K_{in}", vs, errs)
    } else {
        target.check("K_{in}", v, err)
    }
}

/// Trapezoidal rule on the even, analytic integrand; the step shrinks with
/// `n` so the strip-width error `e^{nd - 2πd/h}` stays below `1e-17`.
pub(crate) fn k_imag_trapezoid(nu: f64, t: f64) -> (f64, f64) {
    let step = (9.24 / (3.04 * nu + 42.0)).min(0.2);
    let mut sum = 0.5;
    let mut abs_sum = 0.5;
    let mut k = 1;
    loop {
        let u = k as f64 * step;
        let half = (0.5 * u).sinh();
        let exponent = 2.0 * t * half * half;
        if exponent > 60.0 || k > 20_000 {
            break;
        }
        let w = (-exponent).exp();
        sum += w * (nu * u).cos();
        abs_sum += w;
        k += 1;
    }
    let scale = step * (-t).exp();
    let v = scale * sum;
    (v, scale * (4.0 * f64::EPSILON * abs_sum * (k as f64).sqrt() + 1e-17 * abs_sum))
}

fn k_imag_series(nu: f64, t: f64, max_terms: usize) -> Result<(f64, f64)> {
    let q = t * t * 0.25;
    let mut c = Complex64::new(1.0, 0.0);
    let mut sum = c;
    let mut abs_sum = 1.0;
    for k in 1..=max_terms {
        let kf = k as f64;
        c = c * q / Complex64::new(kf * kf, kf * nu);
        sum += c;
        abs_sum += c.norm();
        if c.norm() < 1e-18 * abs_sum {
            let phase = nu * (0.5 * t).ln();
            let prefactor = Complex64::new(phase.cos(), phase.sin()) * recip_gamma_one_plus_i(nu);
            let i_val = prefactor * sum;
            let s = (PI * nu).sinh();
            let v = -PI * i_val.im / s;
            let err = PI * prefactor.norm() * abs_sum * 8.0 * f64::EPSILON * (1.0 + nu) / s;
            return Ok((v, err));
        }
    }
    Err(Error::AccuracyFailure { function: "K_{in} series", estimate: f64::INFINITY })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{cyl_bessel, CylKind};
    use approx::assert_relative_eq;

    #[test]
    fn zero_order_reduces_to_j0() {
        let j = bessel_j_imag_order(0.0, 1.0).unwrap();
        assert_relative_eq!(j.re, 0.765_197_686_557_966_6, max_relative = 1e-14);
        assert!(j.im.abs() < 1e-16);
        let j = bessel_j_imag_order(0.0, 30.0).unwrap();
        assert_relative_eq!(j.re, cyl_bessel(CylKind::J0, 30.0).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn conjugation_symmetry() {
        for &(tau, x) in &[(0.5, 1.0), (3.0, 7.0), (10.0, 40.0), (2.5, 0.01)] {
            let a = bessel_j_imag_order(tau, x).unwrap();
            let b = bessel_j_imag_order(-tau, x).unwrap();
            assert!((a - b.conj()).norm() <= 1e-13 * a.norm(), "τ={tau} x={x}");
        }
        let y = bessel_y_imag_order(0.5, 1.0).unwrap();
        let ym = bessel_y_imag_order(-0.5, 1.0).unwrap();
        assert!((y.conj() - ym).norm() < 1e-13 * y.norm());
    }

    #[test]
    fn series_and_hankel_overlap() {
        for &tau in &[0.5, 1.5, 3.0, 6.0, 10.0] {
            for &x in &[26.0, 32.0, 45.0] {
                let (s, _) = j_imag_series(tau, x, 400).unwrap();
                let (h, herr) = j_imag_hankel(tau, x, 400);
                let scale = s.norm();
                if herr < 1e-13 * scale {
                    assert!((s - h).norm() < 1e-12 * scale, "τ={tau} x={x}: {s} vs {h}");
                }
            }
        }
    }

    #[test]
    fn y_degenerate_order() {
        assert_eq!(bessel_y_imag_order(0.0, 1.0), Err(Error::DegenerateOrder));
    }

    #[test]
    fn k_imag_zero_order_is_k0() {
        for &t in &[0.01, 0.5, 1.0, 4.0, 30.0] {
            let (v, _) = k_imag_trapezoid(0.0, t);
            assert_relative_eq!(v, cyl_bessel(CylKind::K0, t).unwrap(), max_relative = 1e-13);
        }
    }

    #[test]
    fn k_imag_routes_agree() {
        for n in 1..=4 {
            for &t in &[0.01, 0.3, 1.0, 2.0] {
                let (a, _) = k_imag_trapezoid(n as f64, t);
                let (b, _) = k_imag_series(n as f64, t, 400).unwrap();
                let scale = (-(PI * n as f64) / 2.0).exp();
                assert!((a - b).abs() < 1e-12 * scale, "n={n} t={t}: {a} {b}");
            }
        }
    }

    #[test]
    fn k_imag_domain() {
        assert!(mod_bessel_k_imag_order(1, 0.0).is_err());
        assert!(mod_bessel_k_imag_order(21, 1.0).is_err());
    }
}
