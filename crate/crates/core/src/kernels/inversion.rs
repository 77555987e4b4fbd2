// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, PI};

use super::{KernelKind, KernelPoint};
use crate::quadrature::{integrate_finite, QuadratureBudget};
use crate::specfun::{j0_fast, k0_bracket, lommel_estimate, AccuracyTarget};
use crate::{Error, Result};

/// From this `x` on, `2x cosh u ≥ 40` for every `u`, and the Lommel and
/// Struve factors are replaced by their asymptotic series integrated term by
/// term.
pub const MOMENT_SWITCH: f64 = 20.0;
const MOMENT_COUNT: usize = 64;

/// Moments `m_j = ∫₀^π g(u) cosh^{-j}(u) du` of a weight `g`, and the large-`x`
/// expansions of the Lommel- and Struve-weighted integrals built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentExpansion {
    moments: Vec<f64>,
}

impl MomentExpansion {
    pub fn new<G>(mut g: G, budget: &QuadratureBudget) -> Result<Self>
    where
        G: FnMut(f64) -> Result<f64>,
    {
        let mut moments = Vec::with_capacity(MOMENT_COUNT);
        for j in 0..MOMENT_COUNT {
            let est = integrate_finite(|u: f64| Ok(g(u)? * u.cosh().powi(-(j as i32))), 0.0, PI, budget)?;
            moments.push(est.require("weight moment")?);
        }
        Ok(MomentExpansion { moments })
    }

    pub fn moment(&self, j: usize) -> f64 {
        self.moments[j]
    }

    /// `x ∫₀^π S_{-1,0}(2x cosh u) g(u) du`, from
    /// `S(z) ~ Σ (-1)^k (2^k k!)² z^{-2k-2}`. Returns `(value, truncation error)`.
    pub fn lommel(&self, x: f64) -> Result<(f64, f64)> {
        self.require_large(x)?;
        // c_k = (k!)² / x^{2k}; term = (-1)^k c_k m_{2k+2} / (4x)
        let inv_sq = 1.0 / (x * x);
        let mut c = 1.0;
        let mut sum = self.moments[2];
        let mut k = 1;
        while 2 * k + 2 < MOMENT_COUNT {
            let next = c * (k * k) as f64 * inv_sq;
            if next >= c || next < 1e-18 {
                c = next;
                break;
            }
            c = next;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * c * self.moments[2 * k + 2];
            k += 1;
        }
        let scale = 0.25 / x;
        let err = scale * (c * self.moments[2].abs() + 4.0 * f64::EPSILON * sum.abs());
        Ok((scale * sum, err))
    }

    /// `∫₀^π [x K0(2x cosh u) − 1/(π cosh u)] g(u) du` for the Struve `K0`,
    /// from `K0(z) ~ (2/π) Σ (-1)^k ((2k-1)!!)² z^{-2k-1}` without its `k = 0` term.
    pub fn struve_bracket(&self, x: f64) -> Result<(f64, f64)> {
        self.require_large(x)?;
        // d_k = ((2k-1)!!)² / (4x²)^k; term = (2/π)(-1)^k d_k m_{2k+1} / 2
        let inv = 0.25 / (x * x);
        let mut d = 1.0;
        let mut sum = 0.0;
        let mut k = 1;
        while 2 * k + 1 < MOMENT_COUNT {
            let odd = (2 * k - 1) as f64;
            let next = d * odd * odd * inv;
            if (k > 1 && next >= d) || next < 1e-18 {
                d = next;
                break;
            }
            d = next;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * d * self.moments[2 * k + 1];
            k += 1;
        }
        let scale = FRAC_2_PI * 0.5;
        let err = scale * (d * self.moments[3].abs() + 4.0 * f64::EPSILON * sum.abs());
        Ok((scale * sum, err))
    }

    fn require_large(&self, x: f64) -> Result<()> {
        if x < MOMENT_SWITCH {
            return Err(Error::Domain { function: "moment expansion", value: x });
        }
        Ok(())
    }
}

/// An inversion kernel `Φ_n`, `Ψ_n` or `Ω_n` with everything that does not
/// depend on `x` precomputed. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionKernel {
    kind: KernelKind,
    n: u32,
    budget: QuadratureBudget,
    expansion: Option<MomentExpansion>,
}

impl InversionKernel {
    pub fn new(kind: KernelKind, n: u32, budget: &QuadratureBudget) -> Result<Self> {
        KernelPoint::new(n, 0.0)?;
        let kind = if kind.is_forward() { kind.paired() } else { kind };
        let nf = n as f64;
        let expansion = match kind {
            KernelKind::Psi | KernelKind::Omega => Some(MomentExpansion::new(
                |u: f64| Ok((2.0 * u).sinh() * (nf * u).sin()),
                &moment_budget(budget),
            )?),
            _ => None,
        };
        Ok(InversionKernel { kind, n, budget: *budget, expansion })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain { function: "inversion kernel", value: x });
        }
        let n = self.n as f64;
        let weight = move |u: f64| (2.0 * u).sinh() * (n * u).sin();
        match self.kind {
            KernelKind::Phi => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                // roughly 2x(cosh π − 1)/π half-oscillations need resolving
                let mut budget = self.budget;
                budget.max_subdivisions = budget.max_subdivisions.max((40.0 * x) as usize);
                let est = integrate_finite(
                    |u: f64| Ok(j0_fast(2.0 * x * u.cosh()) * weight(u)),
                    0.0,
                    PI,
                    &budget,
                )?;
                Ok(x * est.require("Φ_n quadrature")?)
            }
            KernelKind::Psi => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                if let (Some(e), true) = (&self.expansion, x >= MOMENT_SWITCH) {
                    return Ok(e.lommel(x)?.0);
                }
                let max_terms = AccuracyTarget::default().max_terms;
                let est = integrate_finite(
                    |u: f64| Ok(lommel_estimate(2.0 * x * u.cosh(), max_terms)?.0 * weight(u)),
                    0.0,
                    PI,
                    &self.budget,
                )?;
                Ok(x * est.require("Ψ_n quadrature")?)
            }
            KernelKind::Omega => {
                if let (Some(e), true) = (&self.expansion, x >= MOMENT_SWITCH) {
                    return Ok(e.struve_bracket(x)?.0);
                }
                let est = integrate_finite(
                    |u: f64| Ok(k0_bracket(x, u.cosh())? * weight(u)),
                    0.0,
                    PI,
                    &self.budget,
                )?;
                est.require("Ω_n quadrature")
            }
            _ => Err(Error::InvalidInput("not an inversion kernel")),
        }
    }
}

/// Moments are computed once and reused for every `x`, so they get a tighter
/// relative tolerance; the absolute floor reflects rounding in an integrand
/// of size `sinh 2π`.
pub(crate) fn moment_budget(budget: &QuadratureBudget) -> QuadratureBudget {
    QuadratureBudget { rel_tol: budget.rel_tol.min(1e-12), abs_tol: 1e-12, ..*budget }
}

fn single(kind: KernelKind, p: KernelPoint) -> Result<f64> {
    KernelPoint::new(p.n, p.x)?;
    InversionKernel::new(kind, p.n, &QuadratureBudget::default())?.eval(p.x)
}

/// `Φ_n(x) = x ∫₀^π J0(2x cosh u) sinh(2u) sin(nu) du`.
pub fn phi_kernel(p: KernelPoint) -> Result<f64> {
    single(KernelKind::Phi, p)
}

/// `Ψ_n(x) = x ∫₀^π S_{-1,0}(2x cosh u) sinh(2u) sin(nu) du`.
pub fn psi_kernel(p: KernelPoint) -> Result<f64> {
    single(KernelKind::Psi, p)
}

/// `Ω_n(x) = ∫₀^π [x K0(2x cosh u) − 1/(π cosh u)] sinh(2u) sin(nu) du` with the
/// Struve `K0`.
pub fn omega_kernel(p: KernelPoint) -> Result<f64> {
    single(KernelKind::Omega, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(phi_kernel(KernelPoint { n: 3, x: 0.0 }).unwrap(), 0.0);
        assert_eq!(psi_kernel(KernelPoint { n: 3, x: 0.0 }).unwrap(), 0.0);
        // −(2/π) ∫₀^π sinh u sin(nu) du = −(2/π)(−1)^{n+1} n sinh π/(1+n²)
        for n in 1..=4_u32 {
            let nf = n as f64;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let exact = -FRAC_2_PI * sign * nf * PI.sinh() / (1.0 + nf * nf);
            let v = omega_kernel(KernelPoint { n, x: 0.0 }).unwrap();
            assert!((v - exact).abs() < 1e-10 * exact.abs(), "{n}: {v} {exact}");
        }
    }

    #[test]
    fn expansions_match_quadrature_at_switch() {
        let budget = QuadratureBudget::default();
        for kind in [KernelKind::Psi, KernelKind::Omega] {
            for n in [1, 4] {
                let k = InversionKernel::new(kind, n, &budget).unwrap();
                let e = k.expansion.as_ref().unwrap();
                let x = MOMENT_SWITCH;
                let asym = match kind {
                    KernelKind::Psi => e.lommel(x).unwrap().0,
                    _ => e.struve_bracket(x).unwrap().0,
                };
                let direct = match kind {
                    KernelKind::Psi => {
                        x * integrate_finite(
                            |u: f64| Ok(lommel_estimate(2.0 * x * u.cosh(), 400)?.0 * (2.0 * u).sinh() * (n as f64 * u).sin()),
                            0.0,
                            PI,
                            &budget,
                        )
                        .unwrap()
                        .value
                    }
                    _ => integrate_finite(
                        |u: f64| Ok(k0_bracket(x, u.cosh())? * (2.0 * u).sinh() * (n as f64 * u).sin()),
                        0.0,
                        PI,
                        &budget,
                    )
                    .unwrap()
                    .value,
                };
                assert!((asym - direct).abs() <= 1e-9 * direct.abs(), "{kind:?} {n}: {asym} {direct}");
            }
        }
    }

    #[test]
    fn omega_decays_like_inverse_square() {
        let k = InversionKernel::new(KernelKind::Omega, 2, &QuadratureBudget::default()).unwrap();
        let a = k.eval(50.0).unwrap() * 2500.0;
        let b = k.eval(100.0).unwrap() * 10000.0;
        assert!((a - b).abs() < 1e-3 * a.abs());
    }
}
