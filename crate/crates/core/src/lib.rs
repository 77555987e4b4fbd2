//! Discrete index transforms whose kernels are squares of Bessel functions of
//! imaginary order, together with their inversion operators and a numerical
//! ledger that checks the closed-form identities those inversions rest on.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is pure: the same
//! inputs always produce bit-identical outputs.
//!
//! Layout:
//!
//! * [`specfun`]: scalar special functions (complex gamma, `J0/Y0/K0/K1`,
//!   `J_{iτ}`, `Y_{iτ}`, `K_{in}`, Struve `H0`/`K0`, Lommel `S_{-1,0}`).
//! * [`quadrature`]: finite, decaying and oscillatory-improper integration with
//!   sequence acceleration.
//! * [`kernels`]: the three forward kernels and three inversion kernels.
//! * [`transforms`]: forward series/integrals, inversions and reconstructions.
//! * [`verify`]: identity checks, bound sweeps, round trips and calibration.
#![no_std]
// `!(x > 0.0)` deliberately rejects NaN; quadrature nodes are kept at full published precision
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod dd;
pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
