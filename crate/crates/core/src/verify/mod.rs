//! The identity ledger: one executable check per closed-form identity and
//! printed bound, round trips through every transform/inversion pair, the
//! normalisation calibrator, and an honesty audit of the quadrature error
//! estimates.
//!
//! Failures are data: every check returns an [`IdentityReport`], never an
//! error, so a suite always runs to completion.

mod calibration;
mod honesty;
mod identities;
mod roundtrip;

pub use calibration::{calibrate_normalization, CalibrationCandidate, CalibrationResult};
pub use honesty::{honesty_library, HonestyOutcome};
pub use identities::{check_identity, IdentityId};
pub use roundtrip::{inverse_roundtrip, profile_roundtrip, roundtrip_profiles, roundtrip_sequences};

// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::kernels::{kernel_bound_report, KernelKind, KernelPoint};
use crate::quadrature::QuadratureBudget;
use crate::transforms::TransformKind;

/// Which `|J_{iν}|² − |Y_{iν}|²` pairing the cosine–`Y0` identity is tested
/// with: `cos(nt)` against order `in` as printed, or against order `in/2` as
/// it is applied to the real-square kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderConvention {
    #[default]
    Matched,
    Halved,
}

impl OrderConvention {
    pub fn name(self) -> &'static str {
        match self {
            OrderConvention::Matched => "order-in",
            OrderConvention::Halved => "order-in/2",
        }
    }
}

/// Parameters of one check. Fields a check does not use keep their defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityParams {
    pub n: u32,
    pub m: u32,
    pub u: f64,
    pub t: f64,
    pub x: f64,
    /// Number of terms (Dirichlet sums, reconstructions).
    pub terms: u32,
    pub convention: OrderConvention,
    pub kind: Option<TransformKind>,
    /// Name of the test sequence or profile in round trips.
    pub label: Option<&'static str>,
}

impl Default for IdentityParams {
    fn default() -> Self {
        IdentityParams {
            n: 1,
            m: 1,
            u: 0.0,
            t: 0.0,
            x: 1.0,
            terms: 1,
            convention: OrderConvention::Matched,
            kind: None,
            label: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity_id: &'static str,
    pub params: IdentityParams,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub evaluations: usize,
    pub reason: Option<String>,
}

impl IdentityReport {
    /// Relative comparison, falling back to absolute when `rhs` is zero.
    pub(crate) fn compare(
        identity_id: &'static str,
        params: IdentityParams,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        evaluations: usize,
    ) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let rel_residual = if rhs == 0.0 { abs_residual } else { abs_residual / rhs.abs() };
        IdentityReport {
            identity_id,
            params,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            passed: lhs.is_finite() && rel_residual <= tolerance,
            evaluations,
            reason: None,
        }
    }

    pub(crate) fn failure(
        identity_id: &'static str,
        params: IdentityParams,
        tolerance: f64,
        error: crate::Error,
    ) -> Self {
        IdentityReport {
            identity_id,
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            tolerance,
            passed: false,
            evaluations: 0,
            reason: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Bounds,
    Roundtrips,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::Roundtrips => "roundtrips",
            Suite::All => "all",
        }
    }
}

/// Grids for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Identities use `n = 1..=n_max`.
    pub n_max: u32,
    /// Angles for the `sin(nu)/sinh(2u)` identities; `u = 0` is added as the limit case.
    pub u_values: Vec<f64>,
    /// Angles `u`, `t` for the Struve–`J0` product.
    pub product_angles: Vec<f64>,
    /// Arguments for the cosine–`Y0` and `K_{in}` identities.
    pub x_values: Vec<f64>,
    pub bound_n_max: u32,
    pub bound_x: Vec<f64>,
    /// Round-trip indices `n = 1..=roundtrip_n_max`.
    pub roundtrip_n_max: u32,
    pub roundtrip_x: Vec<f64>,
    pub roundtrip_terms: u32,
    pub budget: QuadratureBudget,
    /// Round trips only need `1e-3`, so they default to a looser budget.
    pub roundtrip_budget: QuadratureBudget,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_max: 3,
            u_values: alloc::vec![PI / 6.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0],
            product_angles: alloc::vec![0.0, PI / 4.0, PI / 2.0],
            x_values: alloc::vec![1.0, 2.0],
            bound_n_max: 6,
            bound_x: log_grid(1e-2, 1e2, 24),
            roundtrip_n_max: 4,
            roundtrip_x: alloc::vec![0.5, 1.0, 2.0, 5.0],
            roundtrip_terms: 8,
            budget: QuadratureBudget { rel_tol: 1e-12, abs_tol: 1e-14, max_subdivisions: 800, max_tail_blocks: 600 },
            roundtrip_budget: QuadratureBudget { rel_tol: 1e-8, abs_tol: 1e-10, ..QuadratureBudget::default() },
        }
    }
}

/// `count` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return alloc::vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect()
}

fn identity_reports(grid: &GridSpec) -> Vec<IdentityReport> {
    let b = &grid.budget;
    let mut out = Vec::new();
    let ns = 1..=grid.n_max;
    let angled = [IdentityId::J0Nicholson, IdentityId::LommelReSquare, IdentityId::StruveImSquare, IdentityId::CoshCosineChain];
    for id in angled {
        for n in ns.clone() {
            for &u in core::iter::once(&0.0).chain(grid.u_values.iter()) {
                out.push(check_identity(id, &IdentityParams { n, u, ..Default::default() }, b));
            }
        }
    }
    for &u in &grid.product_angles {
        for &t in &grid.product_angles {
            out.push(check_identity(IdentityId::StruveJ0Product, &IdentityParams { u, t, ..Default::default() }, b));
        }
    }
    for n in 1..=grid.n_max.min(2) {
        for &x in &grid.x_values {
            for convention in [OrderConvention::Matched, OrderConvention::Halved] {
                let p = IdentityParams { n, x, convention, ..Default::default() };
                out.push(check_identity(IdentityId::Y0CosineModulus, &p, b));
            }
            out.push(check_identity(IdentityId::KImagSinh, &IdentityParams { n, x, ..Default::default() }, b));
        }
    }
    for n in ns.clone() {
        out.push(check_identity(IdentityId::ImSquareMellin, &IdentityParams { n, ..Default::default() }, b));
    }
    for terms in [1, 4, 8] {
        for &u in &grid.u_values {
            let p = IdentityParams { terms, u, t: grid.u_values[0], ..Default::default() };
            out.push(check_identity(IdentityId::DirichletSum, &p, b));
        }
    }
    for n in ns.clone() {
        for m in ns.clone() {
            out.push(check_identity(IdentityId::SineOrthogonality, &IdentityParams { n, m, ..Default::default() }, b));
        }
    }
    out
}

/// Every printed bound on the `(n ≤ bound_n_max) × bound_x` grid.
pub fn bound_reports(grid: &GridSpec) -> Vec<IdentityReport> {
    let mut points = Vec::new();
    for n in 1..=grid.bound_n_max {
        for &x in &grid.bound_x {
            points.push(KernelPoint { n, x });
        }
    }
    let mut out = Vec::new();
    for kind in [KernelKind::Nicholson, KernelKind::ReSquare, KernelKind::ImSquare] {
        for row in kernel_bound_report(kind, &points) {
            let params = IdentityParams { n: row.point.n, x: row.point.x, ..Default::default() };
            let excess = (row.kernel_value.abs() - row.bound_value).max(0.0);
            out.push(IdentityReport {
                identity_id: row.bound.name(),
                params,
                lhs: row.kernel_value,
                rhs: row.bound_value,
                abs_residual: excess,
                rel_residual: if row.bound_value > 0.0 { excess / row.bound_value } else { excess },
                tolerance: 1e-9,
                passed: row.ok,
                evaluations: 1,
                reason: if row.ok { None } else { Some("bound violated or kernel not evaluable".to_string()) },
            });
        }
    }
    out
}

/// Both round-trip families for every transform.
pub fn roundtrip_reports(grid: &GridSpec) -> Vec<IdentityReport> {
    let b = &grid.roundtrip_budget;
    let mut out = Vec::new();
    for kind in TransformKind::ALL {
        for (label, seq) in roundtrip_sequences() {
            out.extend(inverse_roundtrip(kind, label, &seq, grid.roundtrip_n_max, b));
        }
    }
    for kind in TransformKind::ALL {
        for (label, profile) in roundtrip_profiles() {
            out.extend(profile_roundtrip(kind, label, &profile, &grid.roundtrip_x, grid.roundtrip_terms, b));
        }
    }
    out
}

/// Runs a suite in a fixed order.
pub fn run_suite(suite: Suite, grid: &GridSpec) -> Vec<IdentityReport> {
    match suite {
        Suite::Identities => identity_reports(grid),
        Suite::Bounds => bound_reports(grid),
        Suite::Roundtrips => roundtrip_reports(grid),
        Suite::All => {
            let mut out = identity_reports(grid);
            out.extend(bound_reports(grid));
            out.extend(roundtrip_reports(grid));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-2, 1e2, 24);
        assert_eq!(g.len(), 24);
        assert!((g[0] - 1e-2).abs() < 1e-15 && (g[23] - 1e2).abs() < 1e-12);
    }

    #[test]
    fn zero_rhs_compares_absolutely() {
        let r = IdentityReport::compare("x", IdentityParams::default(), 1e-13, 0.0, 1e-12, 0);
        assert!(r.passed);
    }
}
