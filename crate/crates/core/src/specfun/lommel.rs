//! Lommel function `S_{-1,0}(z)`, the particular solution of
//! `z² w'' + z w' + z² w = 1` that behaves like `z^{-2}` at infinity.

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_2_PI, PI};


use super::bessel::{j0_fast, y0_fast};
use super::{AccuracyTarget, EULER_GAMMA};
use crate::dd::Dd;
use crate::{Error, Result};

const ASYMPTOTIC_FROM: f64 = 40.0;

pub fn lommel_s(z: f64) -> Result<f64> {
    lommel_s_with(z, &AccuracyTarget::default())
}

pub fn lommel_s_with(z: f64, target: &AccuracyTarget) -> Result<f64> {
    if !(z > 0.0) || z.is_infinite() {
        return Err(Error::Domain { function: "S_{-1,0}", value: z });
    }
    let (v, err) = estimate(z, target.max_terms)?;
    target.check("S_{-1,0}", v, err)
}

pub(crate) fn estimate(z: f64, max_terms: usize) -> Result<(f64, f64)> {
    if z >= ASYMPTOTIC_FROM {
        Ok(asymptotic(z))
    } else {
        variation_of_parameters(z, max_terms)
    }
}

/// `S ~ z^{-2} Σ (-1)^k (2^k k!)² z^{-2k}`, truncated at the smallest term.
fn asymptotic(z: f64) -> (f64, f64) {
    let inv_sq = 1.0 / (z * z);
    let mut term = inv_sq;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        let next = -term * 4.0 * k * k * inv_sq;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * sum.abs() {
            return (sum, next.abs() + 2.0 * f64::EPSILON * sum.abs());
        }
        term = next;
        sum += term;
        k += 1.0;
    }
}

/// Variation of parameters with the two tail integrals in closed form:
///
/// `S = (π/2) [J0 F_Y - Y0 F_J]`,
/// `F_J = -L - A`, `F_Y = π/6 - L²/π - (2/π)(L A + B)`,
///
/// where `L = ln(z/2) + γ`, `q = z²/4`,
/// `A = Σ_{k≥1} (-q)^k / (2k (k!)²)` and
/// `B = Σ_{k≥1} (-q)^k / (2k (k!)²) · (-1/(2k) - H_k)`.
fn variation_of_parameters(z: f64, max_terms: usize) -> Result<(f64, f64)> {
    let q = Dd::product(z, z).mul_f64(0.25);
    let mut r = Dd::ONE;
    let mut harmonic = Dd::ZERO;
    let mut a = Dd::ZERO;
    let mut b = Dd::ZERO;
    let mut abs_sum = 0.0;
    let mut converged = false;
    for k in 1..=max_terms {
        let kf = k as f64;
        r = -(r * q).div_f64(kf * kf);
        harmonic = harmonic + Dd::ONE.div_f64(kf);
        let t = r.div_f64(2.0 * kf);
        a = a + t;
        b = b - t * (harmonic + Dd::ONE.div_f64(2.0 * kf));
        let size = t.hi.abs() * (1.0 + harmonic.hi);
        abs_sum += size;
        if size < 1e-34 * abs_sum {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::AccuracyFailure { function: "S_{-1,0} series", estimate: f64::INFINITY });
    }
    let l = (0.5 * z).ln() + EULER_GAMMA;
    let (a, b) = (a.to_f64(), b.to_f64());
    let f_j = -l - a;
    let f_y = PI / 6.0 - l * l / PI - FRAC_2_PI * (l * a + b);
    let (j0, y0) = (j0_fast(z), y0_fast(z));
    let p1 = j0 * f_y;
    let p2 = y0 * f_j;
    let v = 0.5 * PI * (p1 - p2);
    let tails = 1e-31 * abs_sum * (1.0 + l.abs()) * (j0.abs() + y0.abs());
    let err = 0.5 * PI * (8.0 * f64::EPSILON * (p1.abs() + p2.abs()) + tails);
    Ok((v, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn satisfies_the_inhomogeneous_equation() {
        // five-point differences on z² w'' + z w' + z² w = 1
        for &z in &[0.3_f64, 1.0, 4.0, 12.0, 20.0, 25.0, 39.0, 45.0] {
            let h = 1e-2 * z.min(1.0);
            let w = |x: f64| lommel_s(x).unwrap();
            let (wm2, wm, w0, wp, wp2) = (w(z - 2.0 * h), w(z - h), w(z), w(z + h), w(z + 2.0 * h));
            let d2 = (-wp2 + 16.0 * wp - 30.0 * w0 + 16.0 * wm - wm2) / (12.0 * h * h);
            let d1 = (-wp2 + 8.0 * wp - 8.0 * wm + wm2) / (12.0 * h);
            let lhs = z * z * d2 + z * d1 + z * z * w0;
            assert!((lhs - 1.0).abs() < 1e-6, "z={z}: {lhs}");
        }
    }

    #[test]
    fn routes_agree_at_switch() {
        for &z in &[38.0, 40.0, 44.0] {
            let (s, _) = variation_of_parameters(z, 400).unwrap();
            let (a, _) = asymptotic(z);
            assert_relative_eq!(s, a, max_relative = 1e-11);
        }
    }

    #[test]
    fn large_argument_limit() {
        let z = 50.0;
        let s = lommel_s(z).unwrap();
        // z² S = 1 - 4/z² + O(z^{-4})
        assert!((z * z * s - 1.0).abs() < 2e-3);
        assert!((z * z * s - (1.0 - 4.0 / (z * z))).abs() < 1e-4);
    }

    #[test]
    fn small_argument_behaviour() {
        // S_{-1,0}(z) = ½ ln²z + O(ln z)
        let small = 1e-8_f64;
        let s = lommel_s(small).unwrap();
        let lead = 0.5 * small.ln().powi(2);
        assert!((s / lead - 1.0).abs() < 0.1, "{s} vs {lead}");
    }
}
