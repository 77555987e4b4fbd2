use std::f64::consts::PI;

use proptest::prelude::*;
use sqbessel_core::kernels::{forward_kernel, kernel_bound_report, KernelKind, KernelPoint, Method};
use sqbessel_core::quadrature::{accelerate_sequence, integrate_finite, QuadratureBudget};
use sqbessel_core::specfun::{bessel_j_imag_order, gamma_complex, lommel_s};
use sqbessel_core::transforms::{
    forward_series, profile_coefficients, CoefficientSequence, ConstantChoice, PeriodicProfile, TransformKind,
};
use sqbessel_core::Complex64;

fn kind_strategy() -> impl Strategy<Value = TransformKind> {
    prop_oneof![Just(TransformKind::Nicholson), Just(TransformKind::Re), Just(TransformKind::Im)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(re in 0.5..5.0_f64, im in -5.0..5.0_f64) {
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{lhs} {rhs}");
    }

    #[test]
    fn forward_kernels_agree_across_representations(n in 1_u32..=8, x in 0.05..20.0_f64) {
        let p = KernelPoint { n, x };
        // |Re J²|, |Im J²| ≤ |J|², so scale the comparison by |J|²
        let scale = bessel_j_imag_order(0.5 * n as f64, x).unwrap().norm_sqr();
        for kind in [KernelKind::Nicholson, KernelKind::ReSquare, KernelKind::ImSquare] {
            let d = forward_kernel(kind, p, Method::Direct).unwrap();
            let i = forward_kernel(kind, p, Method::Integral).unwrap();
            let reference = if kind == KernelKind::Nicholson { d.abs() } else { scale };
            prop_assert!((d - i).abs() <= 1e-8 * reference, "{kind:?} n={n} x={x}: {d} {i}");
        }
    }

    #[test]
    fn nicholson_kernel_is_positive(n in 1_u32..=20, x in 1e-3..1e3_f64) {
        let v = forward_kernel(KernelKind::Nicholson, KernelPoint { n, x }, Method::Direct).unwrap();
        prop_assert!(v > 0.0);
    }

    #[test]
    fn printed_bounds_hold(n in 1_u32..=6, x in 1e-2..1e2_f64) {
        for kind in [KernelKind::Nicholson, KernelKind::ReSquare, KernelKind::ImSquare] {
            for row in kernel_bound_report(kind, &[KernelPoint { n, x }]) {
                prop_assert!(row.ok, "{kind:?} n={n} x={x}: {} > {}", row.kernel_value, row.bound_value);
            }
        }
    }

    #[test]
    fn forward_series_is_linear(
        kind in kind_strategy(),
        a in prop::collection::vec(-1.0..1.0_f64, 1..8),
        b in prop::collection::vec(-1.0..1.0_f64, 1..8),
        alpha in -3.0..3.0_f64,
        x in 0.1..50.0_f64,
    ) {
        let len = a.len().max(b.len());
        let pad = |v: &[f64]| { let mut v = v.to_vec(); v.resize(len, 0.0); v };
        let (a, b) = (pad(&a), pad(&b));
        let combo: Vec<f64> = a.iter().zip(&b).map(|(p, q)| alpha * p + q).collect();
        let f = |v: Vec<f64>| forward_series(kind, &CoefficientSequence::new(v, 0.0).unwrap(), x, 0.0).unwrap().value;
        let lhs = f(combo);
        let rhs = alpha * f(a.clone()) + f(b.clone());
        let scale: f64 = (1..=len as u32).map(|n| kind.weighted_kernel(n, x).unwrap().abs()).sum::<f64>() * (alpha.abs() + 1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-13 * scale.max(1e-300), "{lhs} {rhs}");
    }

    #[test]
    fn profile_coefficients_pick_out_one_mode(kind in kind_strategy(), k in 1_usize..=6, n in 1_u32..=6) {
        let est = profile_coefficients(kind, &PeriodicProfile::sine(k), n, ConstantChoice::Calibrated, &QuadratureBudget::default()).unwrap();
        let expected = if n as usize == k { PI * kind.coefficient_constant(n) } else { 0.0 };
        prop_assert!((est.value - expected).abs() <= 1e-10 * kind.coefficient_constant(n) * PI);
    }

    #[test]
    fn finite_quadrature_is_exact_on_cubics(c in prop::array::uniform4(-5.0..5.0_f64), a in -3.0..0.0_f64, b in 0.1..3.0_f64) {
        let poly = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        let antideriv = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
        let est = integrate_finite(|x: f64| Ok(poly(x)), a, b, &QuadratureBudget::default()).unwrap();
        let exact = antideriv(b) - antideriv(a);
        let scale = c.iter().map(|v| v.abs()).sum::<f64>() * 3f64.powi(4) * (b - a);
        prop_assert!((est.value - exact).abs() <= 1e-13 * scale);
        prop_assert!(est.converged);
    }

    #[test]
    fn acceleration_is_exact_on_geometric_sums(r in prop_oneof![-0.9..-0.05_f64, 0.05..0.9_f64], c in 0.1..10.0_f64) {
        let sums: Vec<f64> = (1..=6).map(|k| c * (1.0 - r.powi(k)) / (1.0 - r)).collect();
        let acc = accelerate_sequence(&sums).unwrap();
        let limit = c / (1.0 - r);
        prop_assert!((acc.limit - limit).abs() <= 1e-10 * limit.abs(), "{acc:?} {limit}");
    }

    #[test]
    fn lommel_function_solves_its_equation(z in 0.5..60.0_f64) {
        let h = 1e-2 * z.min(1.0);
        let w = |x: f64| lommel_s(x).unwrap();
        let (wm2, wm, w0, wp, wp2) = (w(z - 2.0 * h), w(z - h), w(z), w(z + h), w(z + 2.0 * h));
        let d2 = (-wp2 + 16.0 * wp - 30.0 * w0 + 16.0 * wm - wm2) / (12.0 * h * h);
        let d1 = (-wp2 + 8.0 * wp - 8.0 * wm + wm2) / (12.0 * h);
        let residual = z * z * d2 + z * d1 + z * z * w0 - 1.0;
        prop_assert!(residual.abs() <= 1e-6, "z={z}: {residual}");
    }
}
