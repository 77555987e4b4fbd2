//! Numerical integration in the three regimes the transforms need:
//! finite intervals, absolutely convergent tails and oscillatory tails that
//! converge only in the improper sense.
//!
//! Integrands are fallible (`FnMut(f64) -> Result<f64>`) so that a special
//! function refusing to meet its accuracy target aborts the integral instead
//! of polluting it.

mod acceleration;
mod adaptive;
mod improper;

pub use acceleration::{accelerate_sequence, richardson_doubling, Acceleration};
pub use adaptive::integrate_finite;
pub use improper::{integrate_decaying, integrate_oscillatory_improper, DecayClass};

use crate::{Error, Result};

/// Tolerances and work limits shared by every integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureBudget {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Interval splits allowed in one adaptive integration.
    pub max_subdivisions: usize,
    /// Blocks allowed on a semi-infinite tail.
    pub max_tail_blocks: usize,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        QuadratureBudget { rel_tol: 1e-10, abs_tol: 1e-13, max_subdivisions: 400, max_tail_blocks: 400 }
    }
}

impl QuadratureBudget {
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        max_subdivisions: usize,
        max_tail_blocks: usize,
    ) -> Result<Self> {
        let budget = QuadratureBudget { rel_tol, abs_tol, max_subdivisions, max_tail_blocks };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0)
            || self.max_subdivisions == 0
            || self.max_tail_blocks == 0
        {
            return Err(Error::InvalidInput(
                "quadrature budget needs positive tolerances and nonzero limits",
            ));
        }
        Ok(())
    }

    /// The same budget with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        QuadratureBudget { rel_tol: self.rel_tol * factor, abs_tol: self.abs_tol * factor, ..*self }
    }

    pub(crate) fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// How an integral converges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Finite,
    Decaying,
    OscillatoryImproper,
}

/// The result of an integration together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// True when `error_estimate` met the budget.
    pub converged: bool,
    pub regime: Regime,
}

impl IntegralEstimate {
    /// The value, or a non-convergence error.
    pub fn require(self, what: &'static str) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged { what, value: self.value, error: self.error_estimate })
        }
    }
}

pub(crate) fn checked(value: f64, at: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteIntegrand { at })
    }
}
