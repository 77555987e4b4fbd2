//! Acceptance run: one PASS/FAIL line per criterion, each at its stated
//! tolerance. Criteria run in parallel; lines are printed in order. The
//! process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use sqbessel_core::kernels::{forward_kernel, KernelKind, KernelPoint, Method};
use sqbessel_core::quadrature::QuadratureBudget;
use sqbessel_core::specfun::lommel_s;
use sqbessel_core::transforms::{profile_coefficients, ConstantChoice, PeriodicProfile, Scaling, TransformKind};
use sqbessel_core::verify::{
    bound_reports, calibrate_normalization, check_identity, honesty_library, inverse_roundtrip, profile_roundtrip,
    roundtrip_profiles, roundtrip_sequences, GridSpec, IdentityId, IdentityParams, IdentityReport,
};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

const ANGLES: [f64; 4] = [PI / 6.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0];

fn summarize(reports: &[IdentityReport]) -> (usize, String) {
    let failed: Vec<&IdentityReport> = reports.iter().filter(|r| !r.passed).collect();
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let mut detail = format!("{}/{} passed, worst rel {:.2e}", reports.len() - failed.len(), reports.len(), worst);
    if let Some(r) = failed.first() {
        detail.push_str(&format!(
            "; first failure {} n={} u={:.4}: lhs {:.10e} rhs {:.10e}{}",
            r.identity_id,
            r.params.n,
            r.params.u,
            r.lhs,
            r.rhs,
            r.reason.as_ref().map(|s| format!(" ({s})")).unwrap_or_default()
        ));
    }
    (failed.len(), detail)
}

fn angle_grid(id: IdentityId) -> Vec<IdentityReport> {
    let budget = GridSpec::default().budget;
    let mut out = Vec::new();
    for n in 1..=3 {
        for u in ANGLES {
            out.push(check_identity(id, &IdentityParams { n, u, ..Default::default() }, &budget));
        }
    }
    out
}

fn kernel_cross_representation() -> Verdict {
    let start = Instant::now();
    let mut worst = (0.0_f64, String::new());
    let mut errors = 0;
    for kind in [KernelKind::Nicholson, KernelKind::ReSquare, KernelKind::ImSquare] {
        for n in 1..=6 {
            for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
                let p = KernelPoint { n, x };
                match (forward_kernel(kind, p, Method::Direct), forward_kernel(kind, p, Method::Integral)) {
                    (Ok(d), Ok(i)) => {
                        let rel = (d - i).abs() / d.abs();
                        if rel > worst.0 {
                            worst = (rel, format!("{} n={n} x={x}", kind.name()));
                        }
                    }
                    _ => errors += 1,
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        errors == 0 && worst.0 <= 1e-8 && elapsed <= Duration::from_secs(120),
        format!("worst rel {:.2e} at {}, {errors} evaluation errors, {:.1?}", worst.0, worst.1, elapsed),
    )
}

fn j0_nicholson_identity() -> Verdict {
    let reports = angle_grid(IdentityId::J0Nicholson);
    let (failed, detail) = summarize(&reports);
    let reference = check_identity(
        IdentityId::J0Nicholson,
        &IdentityParams { n: 1, u: PI / 4.0, ..Default::default() },
        &GridSpec::default().budget,
    );
    let reference_ok = (reference.rhs - 0.08500).abs() < 5e-6;
    verdict(failed == 0 && reference_ok, format!("{detail}; rhs(1, π/4) = {:.6}", reference.rhs))
}

fn lommel_and_struve_identities() -> Verdict {
    let budget = GridSpec::default().budget;
    let mut reports = angle_grid(IdentityId::LommelReSquare);
    reports.extend(angle_grid(IdentityId::StruveImSquare));
    let (failed, detail) = summarize(&reports);
    // the u → 0 limits
    let mut limits = Vec::new();
    for n in 1..=3_u32 {
        let nf = n as f64;
        let at_zero = IdentityParams { n, u: 0.0, ..Default::default() };
        let lommel = check_identity(IdentityId::LommelReSquare, &at_zero, &budget);
        let struve = check_identity(IdentityId::StruveImSquare, &at_zero, &budget);
        let lommel_limit = 0.5 * nf * PI / (0.5 * PI * nf).sinh();
        let struve_limit = nf / (2.0 * PI * (0.5 * PI * nf).cosh());
        limits.push((lommel.lhs - lommel_limit).abs() <= 1e-6 * lommel_limit);
        limits.push((struve.lhs - struve_limit).abs() <= 1e-6 * struve_limit);
        if n == 1 {
            println!(
                "    limit u→0, n=1: lommel lhs {:.10e} vs {:.10e} (ratio {:.8}); struve lhs {:.10e} vs {:.10e}",
                lommel.lhs,
                lommel_limit,
                lommel.lhs / lommel_limit,
                struve.lhs,
                struve_limit
            );
        }
    }
    let limits_ok = limits.iter().all(|&b| b);
    verdict(failed == 0 && limits_ok, format!("{detail}; u→0 limits matched: {limits_ok}"))
}

fn struve_j0_product_identity() -> Verdict {
    let budget = GridSpec::default().budget;
    let angles = [0.0, PI / 4.0, PI / 2.0];
    let mut reports = Vec::new();
    for u in angles {
        for t in angles {
            reports.push(check_identity(IdentityId::StruveJ0Product, &IdentityParams { u, t, ..Default::default() }, &budget));
        }
    }
    let (failed, detail) = summarize(&reports);
    let origin = reports[0].lhs;
    let origin_ok = (origin - 1.0 / (4.0 * PI)).abs() <= 1e-10 / (4.0 * PI);
    verdict(failed == 0 && origin_ok, format!("{detail}; value at origin {origin:.12e}"))
}

fn mellin_value() -> Verdict {
    let budget = GridSpec::default().budget;
    let reports: Vec<IdentityReport> = (1..=3)
        .map(|n| check_identity(IdentityId::ImSquareMellin, &IdentityParams { n, ..Default::default() }, &budget))
        .collect();
    let (failed, detail) = summarize(&reports);
    let n1 = reports[0].lhs;
    verdict(failed == 0 && (n1 + 0.19927).abs() < 5e-6, format!("{detail}; n=1 value {n1:.6}"))
}

fn kernel_bounds() -> Verdict {
    let reports = bound_reports(&GridSpec::default());
    let violations = reports.iter().filter(|r| !r.passed).count();
    verdict(violations == 0, format!("{violations} violations in {} checks", reports.len()))
}

fn roundtrip_coefficients() -> Verdict {
    let budget = GridSpec::default().roundtrip_budget;
    let mut reports = Vec::new();
    for kind in TransformKind::ALL {
        for (label, seq) in roundtrip_sequences() {
            reports.extend(inverse_roundtrip(kind, label, &seq, 4, &budget));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let worst = reports.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
    verdict(failed == 0, format!("{}/{} recovered, worst abs error {worst:.2e}", reports.len() - failed, reports.len()))
}

fn roundtrip_profiles_criterion() -> Verdict {
    let budget = GridSpec::default().roundtrip_budget;
    let xs = [0.5, 1.0, 2.0, 5.0];
    let mut reports = Vec::new();
    for kind in TransformKind::ALL {
        for (label, profile) in roundtrip_profiles() {
            reports.extend(profile_roundtrip(kind, label, &profile, &xs, 8, &budget));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let single = PeriodicProfile::sine(1);
    let b = QuadratureBudget::default();
    let a1 = |kind| profile_coefficients(kind, &single, 1, ConstantChoice::Calibrated, &b).map(|e| e.value).unwrap_or(f64::NAN);
    let nich = a1(TransformKind::Nicholson);
    let im = a1(TransformKind::Im);
    let single_ok = (nich - 2.0 / (PI / 2.0).sinh()).abs() <= 1e-10 * nich.abs() && (im - 2.0 / PI.sinh()).abs() <= 1e-10 * im.abs();
    verdict(
        failed == 0 && single_ok,
        format!(
            "{}/{} within 1e-3, worst rel {worst:.2e}; single mode a1: nicholson {nich:.12}, im {im:.12}",
            reports.len() - failed,
            reports.len()
        ),
    )
}

fn normalization_calibration() -> Verdict {
    let budget = QuadratureBudget::new(1e-9, 1e-10, 800, 600).expect("valid budget");
    let (nich, re) = match (
        calibrate_normalization(TransformKind::Nicholson, &budget),
        calibrate_normalization(TransformKind::Re, &budget),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return verdict(false, format!("calibration failed: {:?} {:?}", a.err(), b.err())),
    };
    let expected = 2.0 * PI / PI.sinh();
    let scaling_ok = nich.scaling_choice == Scaling::TwoX && re.scaling_choice == Scaling::TwoX;
    let constant_ok = (re.fitted_constant - expected).abs() <= 1e-6 * expected;
    let residual_ok = nich.reconstruction_residual <= 1e-4 && re.reconstruction_residual <= 1e-4;
    verdict(
        scaling_ok && constant_ok && residual_ok,
        format!(
            "scaling {}/{} (2x expected); re constant at n=1: fitted {:.10} (factor {} of printed {:.10}), expected 2π/sinh π = {:.10}; \
             round-trip residual {:.1e}/{:.1e} (printed prefactors: {:.1e}/{:.1e})",
            nich.scaling_choice.name(),
            re.scaling_choice.name(),
            re.fitted_constant,
            re.fitted_factor,
            re.printed_constant,
            expected,
            nich.reconstruction_residual,
            re.reconstruction_residual,
            nich.printed_reconstruction_residual,
            re.printed_reconstruction_residual,
        ),
    )
}

fn lommel_function() -> Verdict {
    let w = |z: f64| lommel_s(z).unwrap_or(f64::NAN);
    let mut worst = 0.0_f64;
    for z in [1.0_f64, 5.0, 20.0] {
        let h = 1e-2 * z.min(1.0);
        let (wm2, wm, w0, wp, wp2) = (w(z - 2.0 * h), w(z - h), w(z), w(z + h), w(z + 2.0 * h));
        let d2 = (-wp2 + 16.0 * wp - 30.0 * w0 + 16.0 * wm - wm2) / (12.0 * h * h);
        let d1 = (-wp2 + 8.0 * wp - 8.0 * wm + wm2) / (12.0 * h);
        let residual = (z * z * d2 + z * d1 + z * z * w0 - 1.0).abs();
        worst = worst.max(if residual.is_nan() { f64::INFINITY } else { residual });
    }
    let limit = 2500.0 * w(50.0);
    verdict(
        worst <= 1e-6 && (limit - 1.0).abs() <= 5e-2,
        format!("worst equation residual {worst:.2e}; z²S(z) at 50 = {limit:.6}"),
    )
}

fn quadrature_honesty() -> Verdict {
    let outcomes = honesty_library(&QuadratureBudget::default());
    let honest = outcomes.iter().filter(|o| o.honest).count();
    let share = honest as f64 / outcomes.len() as f64;
    let dishonest: Vec<&str> = outcomes.iter().filter(|o| !o.honest).map(|o| o.name).collect();
    verdict(share >= 0.95, format!("{honest}/{} honest ({:.0}%) {dishonest:?}", outcomes.len(), 100.0 * share))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("kernel cross-representation", kernel_cross_representation),
        ("j0 nicholson identity", j0_nicholson_identity),
        ("lommel and struve square identities", lommel_and_struve_identities),
        ("struve j0 product identity", struve_j0_product_identity),
        ("im-square mellin value", mellin_value),
        ("kernel bounds", kernel_bounds),
        ("coefficient round trip", roundtrip_coefficients),
        ("profile round trip", roundtrip_profiles_criterion),
        ("normalization calibration", normalization_calibration),
        ("lommel function", lommel_function),
        ("quadrature honesty", quadrature_honesty),
    ];
    let results: Vec<(Verdict, Duration)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let v = f();
                    (v, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failures = 0;
    for (i, ((name, _), (v, t))) in criteria.iter().zip(&results).enumerate() {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!v.passed);
        println!("criterion {:>2} {tag} {name} [{:.1?}]: {}", i + 1, t, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
