//! Acceptance criteria. Runs without the libtest harness so that every
//! `criterion N: PASS|FAIL ...` line is printed; exits nonzero on any failure.

use std::time::{Duration, Instant};

use fueter::constants::gamma_m;
use fueter::cst::{fueter_route_reports, ua_route_reports};
use fueter::extension::{appell_q, gck_polynomial, SliceExtension};
use fueter::fueter::{laplacian_power_route, tau_on_power, LaplacianRoute};
use fueter::kernels::{verify_prop45, Truncation};
use fueter::laurent::LaurentPoly;
use fueter::radon::{cauchy_plane_wave_check, dual_radon_polynomial};
use fueter::report::IdentityReport;
use fueter::scalar::{rat, Rational};
use fueter::sphere::{default_gauss_level, funk_hecke_mc_check, SphereRule};
use fueter::verify::{
    algebra_checks, fueter_power_checks, gck_checks, inverse_laplacian_check, run_suite, unitarity_reports,
    SuiteParams,
};
use fueter::clifford::Paravector;

const SEED: u64 = 42;

fn finish(n: u32, what: &str, reports: &[IdentityReport], elapsed: Duration, budget: Option<Duration>) -> bool {
    let failed: Vec<&IdentityReport> = reports.iter().filter(|r| !r.passed()).collect();
    let worst = reports
        .iter()
        .filter(|r| !r.exact)
        .map(|r| r.residual)
        .fold(0.0f64, f64::max);
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let ok = failed.is_empty() && in_time;
    let budget_text = budget.map(|b| format!(" / {:.0} s", b.as_secs_f64())).unwrap_or_default();
    println!(
        "criterion {n}: {} {what} [{} checks, {} failed, worst numeric residual {worst:.2e}, {:.2} s{budget_text}]",
        if ok { "PASS" } else { "FAIL" },
        reports.len(),
        failed.len(),
        elapsed.as_secs_f64(),
    );
    for r in failed.iter().take(8) {
        println!(
            "    failed: {} (m = {}, k = {}): residual {:.3e}, tolerance {}",
            r.identity,
            r.m,
            r.k,
            r.residual,
            if r.exact { "exact".to_string() } else { format!("{:.0e}", r.tolerance) }
        );
    }
    ok
}

fn criterion_01_algebra_soundness() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    // 250 trials per dimension, 8 identities per trial: 10^4 checks.
    let mut checks = 0;
    for m in 1..=5 {
        let r = algebra_checks(m, 250, SEED).unwrap();
        checks += 250 * r.len();
        reports.extend(r);
    }
    assert_eq!(checks, 10_000);
    finish(1, "algebra: 10^4 randomized exact checks, m <= 5", &reports, t.elapsed(), Some(Duration::from_secs(10)))
}

fn gck_grid() -> (Vec<IdentityReport>, Duration) {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in 2..=5 {
        for k in 0..=8 {
            reports.extend(gck_checks(m, k).unwrap());
        }
    }
    (reports, t.elapsed())
}

fn criterion_02_gck_correctness() -> bool {
    let (all, elapsed) = gck_grid();
    let reports: Vec<IdentityReport> = all
        .into_iter()
        .filter(|r| {
            ["D GCK[x0^k] = 0", "GCK[x0^k] restricts to x0^k", "Bessel form = recursion"].contains(&r.identity.as_str())
        })
        .collect();
    assert_eq!(reports.len(), 4 * 9 * 3);
    finish(2, "GCK: monogenic, restricts to x0^k, Bessel form agrees", &reports, elapsed, Some(Duration::from_secs(5)))
}

fn criterion_03_appell() -> bool {
    let (all, elapsed) = gck_grid();
    let reports: Vec<IdentityReport> = all
        .into_iter()
        .filter(|r| ["Q_k monogenic", "(1/2) Dbar Q_k = k Q_(k-1)", "Q_k(1) = 1 = sum_j T_j^k"].contains(&r.identity.as_str()))
        .collect();
    assert_eq!(reports.len(), 4 * 9 * 3);
    finish(3, "Appell: monogenic, derivative property, Q_k(1) = 1", &reports, elapsed, None)
}

fn criterion_04_fueter_diagram() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    // Odd m: Laplacian route on every power up to 8 and on a mixed polynomial.
    let mixed = LaurentPoly::from_terms([(8, rat(3, 7)), (5, rat(-2, 1)), (4, rat(1, 3)), (1, rat(5, 1)), (0, rat(-1, 2))]);
    for m in [3usize, 5] {
        let g = gamma_m(m as u32).as_rational().unwrap();
        let mut data: Vec<LaurentPoly<Rational>> = (0..=8).map(LaurentPoly::power).collect();
        data.push(mixed.clone());
        for f in data {
            let deg = f.max_exponent().unwrap_or(0) as i64;
            let LaplacianRoute::Polynomial(lap) = laplacian_power_route(m, &f).unwrap() else {
                panic!("polynomial data gives a polynomial");
            };
            let rhs = gck_polynomial(&f.nth_derivative(m as u32 - 1), m).unwrap().to_polynomial().unwrap().scale(&g);
            let diff = lap.sub(&rhs);
            reports.push(IdentityReport::exact(
                "Delta^((m-1)/2) S = gamma_m GCK d^(m-1)",
                m,
                deg,
                diff.is_zero(),
                diff.max_abs_coeff(),
            ));
        }
    }
    // Even m: the power rule with its constant.
    for m in [2usize, 4] {
        for k in 0..=6i64 {
            let l = m as i64 - 1 + k;
            let r = tau_on_power(m, l, 0).unwrap();
            reports.push(IdentityReport::exact("tau_m carries gamma_m", m, l, r.gamma == gamma_m(m as u32), 1.0));
            reports.extend(
                fueter_power_checks(m, l)
                    .unwrap()
                    .into_iter()
                    .filter(|r| r.identity.starts_with("tau_m[x^(m-1+k)]")),
            );
        }
    }
    assert_eq!(reports.len(), 2 * 10 + 2 * 7 * 2);
    finish(4, "Fueter diagram: odd m Laplacian route, even m power rule", &reports, t.elapsed(), None)
}

fn criterion_05_monomials_fixed_n20() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in 1..=5 {
        for k in 1..=6 {
            reports.extend(verify_prop45(m, k, Truncation::Fixed(20), 0.4).unwrap());
        }
    }
    finish(5, "monogenic monomials: exact identities, numeric < 1e-8 at ratio 0.4 with N = 20", &reports, t.elapsed(), None)
}

fn criterion_06_inverse_laplacian() -> bool {
    let t = Instant::now();
    let reports = vec![inverse_laplacian_check(20, SEED).unwrap()];
    finish(6, "m = 3: Delta[x^-1] = -4 conj(x)/|x|^4 at 20 random points", &reports, t.elapsed(), None)
}

fn criterion_07_radon_bridge() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in 1..=4 {
        for k in 0..=6u32 {
            let s = SliceExtension::new(LaurentPoly::<Rational>::power(k as i32), m).to_polynomial().unwrap();
            let img = dual_radon_polynomial(&s);
            let diff = img.sub(&appell_q(m, k));
            reports.push(IdentityReport::exact("R[S[x0^k]] = Q_k", m, k as i64, diff.is_zero(), diff.max_abs_coeff()));
        }
        let rule = SphereRule::gauss(m, default_gauss_level(m));
        let mut y = vec![0.0; m];
        y[0] = 0.25;
        if m > 1 {
            y[1] = -0.15;
        }
        for x0 in [1.0, -1.0, 0.8, -1.6] {
            let x = Paravector::new(x0, y.clone());
            reports.push(cauchy_plane_wave_check(m, &x, &rule, 1e-6).unwrap());
        }
    }
    finish(7, "Radon bridge: R S x0^k = Q_k exactly, Cauchy plane waves < 1e-6", &reports, t.elapsed(), None)
}

fn criterion_08_funk_hecke() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in 1..=4 {
        for j in 0..=6 {
            reports.extend(funk_hecke_mc_check(m, j, 1_000_000, SEED + 100 * m as u64 + j as u64).unwrap());
        }
    }
    finish(8, "Funk-Hecke: exact constants within 5 standard errors of 10^6-sample Monte Carlo", &reports, t.elapsed(), None)
}

fn criterion_09_cst_diagram() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in [2, 3] {
        reports.extend(ua_route_reports(m, 4, 1e-7).unwrap());
        reports.extend(fueter_route_reports(m, 4, 1e-7).unwrap());
    }
    finish(9, "CST routes agree to 1e-7 on h_0..h_3, m = 2, 3, 3 points", &reports, t.elapsed(), Some(Duration::from_secs(60)))
}

fn criterion_10_unitarity() -> bool {
    let t = Instant::now();
    let mut reports = Vec::new();
    for m in [2, 3] {
        reports.extend(unitarity_reports(m, 4, 1e-5).unwrap());
    }
    finish(10, "unitarity: 4x4 Hermite Gram matrices to 1e-5, non-increasing under refinement", &reports, t.elapsed(), None)
}

fn criterion_11_end_to_end() -> bool {
    let t = Instant::now();
    let params = SuiteParams::default();
    let a = run_suite("all", &params).unwrap();
    let b = run_suite("all", &params).unwrap();
    let elapsed = t.elapsed();
    let same = a.to_json(false) == b.to_json(false);
    let mut reports: Vec<IdentityReport> = a.cases.iter().map(|c| c.report.clone()).collect();
    reports.push(IdentityReport::exact("two runs give identical reports", 0, 0, same, 1.0));
    reports.push(IdentityReport::exact("every operation covered", 0, 0, a.missing().is_empty(), a.missing().len() as f64));
    finish(11, "verify all: passes, deterministic, full coverage", &reports, elapsed, Some(Duration::from_secs(300)))
}

fn main() {
    let criteria: [fn() -> bool; 11] = [
        criterion_01_algebra_soundness,
        criterion_02_gck_correctness,
        criterion_03_appell,
        criterion_04_fueter_diagram,
        criterion_05_monomials_fixed_n20,
        criterion_06_inverse_laplacian,
        criterion_07_radon_bridge,
        criterion_08_funk_hecke,
        criterion_09_cst_diagram,
        criterion_10_unitarity,
        criterion_11_end_to_end,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
