//! Scalar special functions behind every kernel.
//!
//! Each routine carries its own error estimate and refuses to return a value
//! that misses its [`AccuracyTarget`]. Cancellation-prone ascending series are
//! summed in double-double arithmetic; large arguments switch to Hankel-type
//! asymptotic expansions truncated at their smallest term.

mod bessel;
mod gamma;
mod imag_order;
mod lommel;
mod struve;

pub use bessel::{cyl_bessel, sup_sqrt_abs, CylKind};
pub use gamma::{gamma_complex, gamma_real};
pub use imag_order::{
    bessel_j_imag_order, bessel_j_imag_order_with, bessel_y_imag_order,
    bessel_y_imag_order_with, mod_bessel_k_imag_order, mod_bessel_k_imag_order_with,
};
pub use lommel::{lommel_s, lommel_s_with};
pub use struve::{struve, StruveKind};

pub(crate) use bessel::{j0_fast, y0_fast};
pub(crate) use gamma::recip_gamma_one_plus_i;
pub(crate) use imag_order::y_from_j;
pub(crate) use lommel::estimate as lommel_estimate;
pub(crate) use struve::k0_bracket;

/// A complex value such as `J_{iτ}(x)`.
pub type ComplexValue = num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Accuracy contract for a special-function evaluation.
///
/// A result is accepted when its estimated error is at most
/// `max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyTarget {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for AccuracyTarget {
    fn default() -> Self {
        AccuracyTarget { rel_tol: 1e-12, abs_tol: 1e-14, max_terms: 400 }
    }
}

impl AccuracyTarget {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0 && max_terms >= 1) {
            return Err(crate::Error::InvalidInput(
                "accuracy target needs positive tolerances and at least one term",
            ));
        }
        Ok(AccuracyTarget { rel_tol, abs_tol, max_terms })
    }

    pub(crate) fn accepts(&self, value: f64, estimate: f64) -> bool {
        estimate.is_finite() && estimate <= self.abs_tol.max(self.rel_tol * value.abs())
    }

    pub(crate) fn check(
        &self,
        function: &'static str,
        value: f64,
        estimate: f64,
    ) -> crate::Result<f64> {
        if value.is_finite() && self.accepts(value, estimate) {
            Ok(value)
        } else {
            Err(crate::Error::AccuracyFailure { function, estimate })
        }
    }
}
