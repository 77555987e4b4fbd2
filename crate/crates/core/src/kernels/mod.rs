//! Transform kernels: the three forward kernels built from `J_{in/2}` and
//! `Y_{in/2}`, and the three inversion kernels `Φ_n`, `Ψ_n`, `Ω_n`.
//!
//! Every forward kernel has a direct evaluation (complex arithmetic on
//! `J_{in/2}`) and at least one independent integral representation; the
//! inversion kernels are finite integrals over `u ∈ [0, π]` that switch to
//! an asymptotic moment expansion once the special function inside them is
//! in its asymptotic regime for every `u`.

mod bounds;
mod forward;
mod inversion;

pub use bounds::{
    kernel_bound_report, nicholson_bound_constant, BoundCheck, BoundId, LEBEDEV_A,
};
pub use forward::{forward_kernel, forward_kernel_with, nicholson_via_k_imag, DirectValue, direct_value};
pub(crate) use forward::{cosine_bessel_integral, CosineWeight};
pub use inversion::{omega_kernel, phi_kernel, psi_kernel, InversionKernel, MomentExpansion, MOMENT_SWITCH};

use crate::{Error, Result};

/// Largest index accepted by the kernels.
pub const MAX_INDEX: u32 = 20;
/// Largest argument accepted by the forward kernels.
pub const MAX_ARGUMENT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `J²_{in/2}(x) + Y²_{in/2}(x)`.
    Nicholson,
    /// `Re[J²_{in/2}(x)]`.
    ReSquare,
    /// `Im[J²_{in/2}(x)]`.
    ImSquare,
    /// `Φ_n`, inverting the Nicholson transform.
    Phi,
    /// `Ψ_n`, inverting the `Re` transform.
    Psi,
    /// `Ω_n`, inverting the `Im` transform.
    Omega,
}

impl KernelKind {
    pub const ALL: [KernelKind; 6] = [
        KernelKind::Nicholson,
        KernelKind::ReSquare,
        KernelKind::ImSquare,
        KernelKind::Phi,
        KernelKind::Psi,
        KernelKind::Omega,
    ];

    pub fn is_forward(self) -> bool {
        matches!(self, KernelKind::Nicholson | KernelKind::ReSquare | KernelKind::ImSquare)
    }

    /// The forward kernel paired with an inversion kernel, and vice versa.
    pub fn paired(self) -> KernelKind {
        match self {
            KernelKind::Nicholson => KernelKind::Phi,
            KernelKind::ReSquare => KernelKind::Psi,
            KernelKind::ImSquare => KernelKind::Omega,
            KernelKind::Phi => KernelKind::Nicholson,
            KernelKind::Psi => KernelKind::ReSquare,
            KernelKind::Omega => KernelKind::ImSquare,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Nicholson => "nicholson",
            KernelKind::ReSquare => "re-square",
            KernelKind::ImSquare => "im-square",
            KernelKind::Phi => "phi",
            KernelKind::Psi => "psi",
            KernelKind::Omega => "omega",
        }
    }
}

/// How a forward kernel is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Complex arithmetic on `J_{in/2}` and the connection formula for `Y`.
    Direct,
    /// Integral representation: the Nicholson integral over `K0`, the Struve
    /// `H0` cosine integral, or the `J0` cosine integral respectively.
    Integral,
}

/// A kernel evaluation point `(n, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub n: u32,
    pub x: f64,
}

impl KernelPoint {
    pub fn new(n: u32, x: f64) -> Result<Self> {
        if n == 0 || n > MAX_INDEX {
            return Err(Error::Unsupported { function: "kernel index", value: n as f64 });
        }
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain { function: "kernel argument", value: x });
        }
        Ok(KernelPoint { n, x })
    }

    /// The imaginary order `τ = n/2` of the forward kernels.
    pub fn order(&self) -> f64 {
        0.5 * self.n as f64
    }

    pub(crate) fn require_forward(&self) -> Result<()> {
        if !(self.x > 0.0) || self.x > MAX_ARGUMENT {
            return Err(Error::Domain { function: "forward kernel", value: self.x });
        }
        Ok(())
    }
}
