//! Verification suites: batteries of identity checks grouped by topic.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::clifford::{CliffordElement, Paravector};
use crate::constants::{gamma_m, gamma_m_odd_closed_form, lambda, sphere_area, ExactConstant};
use crate::cst::{
    axial_cst, classical_cst, fueter_route_reports, hermite_family, slice_cst, slice_cst_fourier, ua_route_reports,
    unitarity_check, DEFAULT_TAYLOR_TOL, UNITARITY_LEVELS,
};
use crate::error::{Error, Result};
use crate::extension::{
    appell_q, appell_q_explicit, appell_t, gck_bessel_form, gck_extension, gck_polynomial, intrinsic_split,
    FactorOrder, SliceExtension,
};
use crate::fueter::{
    laplacian_power_route, lemma41_ab, tau_on_laurent, tau_on_power, FueterOutput, LaplacianRoute,
};
use crate::gauss::GaussPoly;
use crate::kernels::{
    cauchy_kernel, kelvin_evaluate, kelvin_inversion, monogenic_monomial, verify_prop45, Truncation,
};
use crate::laurent::LaurentPoly;
use crate::poly::{finite_difference, paravector_power, CliffordPolynomial, OperatorTag};
use crate::radon::{
    cauchy_plane_wave_check, dual_radon_polynomial, fueter_radon_diagram, monomial_plane_wave_check,
    plane_wave_gck_check, radon_monogenic_check,
};
use crate::report::IdentityReport;
use crate::scalar::{factorial, rat, rational_to_f64, rint, ComplexRational, Rational, C64};
use crate::sphere::{funk_hecke_constants, funk_hecke_mc_check, sphere_integrate, SpherePolynomial, SphereRule};

pub const SUITES: [&str; 6] = ["algebra", "gck", "fueter", "prop45", "radon", "cst"];

/// Every public operation the suites are expected to exercise.
pub const OPERATIONS: [&str; 33] = [
    "geometric_product",
    "clifford_conjugate",
    "hermitian_conjugate",
    "constants",
    "apply_operator",
    "paravector_power",
    "is_monogenic",
    "slice_extension",
    "intrinsic_split",
    "gck_extension",
    "gck_bessel_form",
    "appell_q",
    "cauchy_kernel",
    "kelvin_inversion",
    "monogenic_monomial",
    "verify_prop45",
    "tau_on_power",
    "laplacian_power_route",
    "lemma41_ab",
    "tau_on_laurent",
    "sphere_integrate",
    "funk_hecke_constants",
    "dual_radon",
    "plane_wave_gck_check",
    "cauchy_plane_wave_check",
    "heat_semigroup",
    "classical_cst",
    "slice_cst",
    "axial_cst",
    "fueter_cst",
    "unitarity_check",
    "run_suite",
    "export_object",
];

pub const MAX_DIM: usize = 6;
pub const MAX_DEGREE: u32 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub m: Option<usize>,
    pub max_degree: u32,
    pub seed: u64,
    pub power: Option<i64>,
    pub degree: Option<u32>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            m: None,
            max_degree: 6,
            seed: 42,
            power: None,
            degree: None,
        }
    }
}

impl SuiteParams {
    fn validate(&self) -> Result<()> {
        if let Some(m) = self.m {
            if m == 0 || m > MAX_DIM {
                return Err(Error::InvalidArgument(format!("m must be in 1..={MAX_DIM}, got {m}")));
            }
        }
        let deg = self.degree.unwrap_or(self.max_degree);
        if self.max_degree > MAX_DEGREE || deg > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!("degree must be at most {MAX_DEGREE}")));
        }
        if let Some(p) = self.power {
            if p.abs() > MAX_DEGREE as i64 {
                return Err(Error::InvalidArgument(format!("power must be in -{MAX_DEGREE}..={MAX_DEGREE}")));
            }
        }
        Ok(())
    }

    fn dims(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        match self.m {
            Some(m) => vec![m],
            None => default.collect(),
        }
    }

    fn degrees(&self) -> Vec<u32> {
        match self.degree {
            Some(d) => vec![d],
            None => (0..=self.max_degree).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "max_degree": self.max_degree,
            "seed": self.seed,
            "power": self.power,
            "degree": self.degree,
        })
    }
}

/// One checked identity with its provenance in the suite.
#[derive(Clone, Debug)]
pub struct Case {
    pub suite: &'static str,
    /// Short statement of the identity family the case belongs to.
    pub anchor: &'static str,
    pub ops: Vec<&'static str>,
    pub report: IdentityReport,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub params: SuiteParams,
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.report.passed())
    }

    pub fn covered(&self) -> BTreeSet<&'static str> {
        let mut s: BTreeSet<&'static str> = self.cases.iter().flat_map(|c| c.ops.iter().copied()).collect();
        s.insert("run_suite");
        s
    }

    pub fn missing(&self) -> Vec<&'static str> {
        let c = self.covered();
        OPERATIONS.iter().copied().filter(|o| !c.contains(o)).collect()
    }

    /// Timings are left out unless asked for, so reports are byte-stable.
    pub fn to_json(&self, timings: bool) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let mut v = c.report.to_json();
                v["suite"] = json!(c.suite);
                v["anchor"] = json!(c.anchor);
                if timings {
                    v["elapsed_ms"] = json!(c.elapsed.as_secs_f64() * 1e3);
                }
                v
            })
            .collect();
        let failed = self.cases.iter().filter(|c| !c.report.passed()).count();
        json!({
            "schema": crate::json::SCHEMA_VERSION,
            "kind": "verification",
            "suite": self.suite,
            "params": self.params.to_json(),
            "cases": cases,
            "summary": {"total": self.cases.len(), "failed": failed, "passed": self.passed()},
            "coverage": {"covered": self.covered(), "missing": self.missing()},
        })
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{:<8} {:<54} {:>2} {:>4} {:>11} {:>9}  status\n", "suite", "identity", "m", "k", "residual", "tol"));
        for c in &self.cases {
            let r = &c.report;
            let tol = if r.exact { "exact".to_string() } else { format!("{:.0e}", r.tolerance) };
            s.push_str(&format!(
                "{:<8} {:<54} {:>2} {:>4} {:>11.3e} {:>9}  {}\n",
                c.suite,
                truncate(&r.identity, 54),
                r.m,
                r.k,
                r.residual,
                tol,
                if r.passed() { "ok" } else { "FAIL" }
            ));
        }
        let failed = self.cases.iter().filter(|c| !c.report.passed()).count();
        s.push_str(&format!(
            "{}: {} cases, {} failed\n",
            self.suite,
            self.cases.len(),
            failed
        ));
        s
    }
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        s.chars().take(n - 1).chain(std::iter::once('~')).collect()
    }
}

type Job = Box<dyn Fn() -> Result<Vec<Case>> + Send + Sync>;

fn job<F>(suite: &'static str, anchor: &'static str, ops: &[&'static str], f: F) -> Job
where
    F: Fn() -> Result<Vec<IdentityReport>> + Send + Sync + 'static,
{
    let ops = ops.to_vec();
    Box::new(move || {
        let t = Instant::now();
        let reports = f()?;
        let elapsed = t.elapsed();
        Ok(reports
            .into_iter()
            .map(|report| Case {
                suite,
                anchor,
                ops: ops.clone(),
                report,
                elapsed,
            })
            .collect())
    })
}

/// Runs a named suite (or `all`). Cases run in parallel; the report keeps
/// the declaration order.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    params.validate()?;
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        n if SUITES.contains(&n) => vec![n],
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    let mut jobs = Vec::new();
    for n in names {
        jobs.extend(match n {
            "algebra" => algebra_jobs(params),
            "gck" => gck_jobs(params),
            "fueter" => fueter_jobs(params),
            "prop45" => prop45_jobs(params),
            "radon" => radon_jobs(params),
            _ => cst_jobs(params),
        });
    }
    let results: Vec<Result<Vec<Case>>> = jobs.par_iter().map(|j| j()).collect();
    let mut cases = Vec::new();
    for r in results {
        cases.extend(r?);
    }
    Ok(VerificationReport {
        suite: name.to_string(),
        params: params.clone(),
        cases,
    })
}

// ---------------------------------------------------------------- algebra

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

pub fn random_element(rng: &mut ChaCha8Rng, m: usize) -> CliffordElement<Rational> {
    let mut e = CliffordElement::zero(m);
    for b in 0..(1u32 << m) {
        if rng.random_bool(0.6) {
            e.add_term(crate::clifford::Blade(b), random_rational(rng));
        }
    }
    e
}

fn random_complex_element(rng: &mut ChaCha8Rng, m: usize) -> CliffordElement<ComplexRational> {
    let re = random_element(rng, m);
    let im = random_element(rng, m);
    let mut out = re.map(|q| Complex::new(q.clone(), Rational::zero()));
    for (b, q) in im.terms() {
        out.add_term(*b, Complex::new(Rational::zero(), q.clone()));
    }
    out
}

fn random_paravector(rng: &mut ChaCha8Rng, m: usize) -> Paravector<Rational> {
    Paravector::new(random_rational(rng), (0..m).map(|_| random_rational(rng)).collect())
}

/// Randomized exact checks of the algebra axioms; each report's residual
/// counts the failing trials.
pub fn algebra_checks(m: usize, trials: usize, seed: u64) -> Result<Vec<IdentityReport>> {
    crate::error::check_dim(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64).wrapping_mul(0x9e37_79b9));
    let names = [
        "(ab)c = a(bc)",
        "a(b + c) = ab + ac",
        "conj(ab) = conj(b) conj(a)",
        "rev(ab) = rev(b) rev(a)",
        "(uv)^dagger = v^dagger u^dagger, (u^dagger)^dagger = u",
        "x conj(x) = |x|^2",
        "xy + yx = -2<x,y>",
        "float product agrees with exact (1e-12 rel.)",
    ];
    let mut failures = [0usize; 8];
    for _ in 0..trials {
        let a = random_element(&mut rng, m);
        let b = random_element(&mut rng, m);
        let c = random_element(&mut rng, m);
        let ab = &a * &b;
        failures[0] += usize::from(&ab * &c != &a * &(&b * &c));
        failures[1] += usize::from(&a * &(&b + &c) != &ab + &(&a * &c));
        failures[2] += usize::from(ab.clifford_conjugate() != &b.clifford_conjugate() * &a.clifford_conjugate());
        failures[3] += usize::from(ab.reversion() != &b.reversion() * &a.reversion());
        let u = random_complex_element(&mut rng, m);
        let v = random_complex_element(&mut rng, m);
        let herm = (&u * &v).hermitian_conjugate() == &v.hermitian_conjugate() * &u.hermitian_conjugate()
            && u.hermitian_conjugate().hermitian_conjugate() == u;
        failures[4] += usize::from(!herm);
        let x = random_paravector(&mut rng, m);
        let xx = &x.to_element() * &x.conj().to_element();
        failures[5] += usize::from(xx != CliffordElement::scalar(m, x.norm_sq()));
        let y = random_paravector(&mut rng, m);
        let (xv, yv) = (x.vector_part(), y.vector_part());
        let dot = x.x.iter().zip(&y.x).fold(Rational::zero(), |s, (p, q)| s + p * q);
        failures[6] += usize::from(&(&xv * &yv) + &(&yv * &xv) != CliffordElement::scalar(m, dot * rint(-2)));
        let exact = ab.to_c64();
        let float = &a.to_c64() * &b.to_c64();
        let scale = exact.norm().max(1.0);
        failures[7] += usize::from(exact.distance(&float) > 1e-12 * scale);
    }
    Ok(names
        .iter()
        .zip(failures)
        .map(|(n, f)| {
            IdentityReport::exact(*n, m, trials as i64, f == 0, f as f64)
                .with_note(format!("{trials} random trials, {f} failures"))
        })
        .collect())
}

/// The fixed constants against their closed forms.
pub fn constants_checks(m: usize) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let g = gamma_m(m as u32);
    if m % 2 == 1 {
        let ok = g.as_rational() == Some(gamma_m_odd_closed_form(m as u32));
        out.push(IdentityReport::exact("gamma_m = (-1)^((m-1)/2) (m-1)!!/(m-2)!!", m, 0, ok, 1.0));
    }
    let table: [(usize, &str, ExactConstant, ExactConstant); 5] = [
        (1, "gamma_1 = 1", gamma_m(1), ExactConstant::one()),
        (3, "gamma_3 = -2", gamma_m(3), ExactConstant::integer(-2)),
        (3, "lambda_3 = 4", lambda(3), ExactConstant::integer(4)),
        (3, "sigma_4 = 2 pi^2", sphere_area(4), ExactConstant::new(0, rint(2), 4)),
        (2, "gamma_2 = -i pi / 2", gamma_m(2), ExactConstant::new(3, rat(1, 2), 2)),
    ];
    for (mm, name, got, want) in table {
        if mm == m {
            out.push(IdentityReport::exact(name, m, 0, got == want, 1.0));
        }
    }
    out
}

fn algebra_jobs(p: &SuiteParams) -> Vec<Job> {
    let seed = p.seed;
    let mut jobs = Vec::new();
    for m in p.dims(1..=5) {
        jobs.push(job(
            "algebra",
            "Clifford algebra axioms",
            &["geometric_product", "clifford_conjugate", "hermitian_conjugate"],
            move || algebra_checks(m, 250, seed),
        ));
        jobs.push(job("algebra", "dimension constants", &["constants"], move || Ok(constants_checks(m))));
        jobs.push(job("algebra", "operator identities", &["apply_operator", "paravector_power"], move || {
            operator_checks(m, seed)
        }));
    }
    jobs
}

/// `D Dbar = Dbar D = Laplacian` on random polynomials, the Dirac operator
/// on vector powers, and the paravector power against repeated products.
pub fn operator_checks(m: usize, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(m as u64));
    let mut fails = 0usize;
    let trials = 6;
    for _ in 0..trials {
        let mut p = CliffordPolynomial::zero(m);
        for _ in 0..4 {
            let exps: Vec<u32> = (0..=m).map(|_| rng.random_range(0..=2)).collect();
            let c = random_element(&mut rng, m.min(3)).embed(m)?;
            p.add_term(exps, c);
        }
        let lap = p.apply_operator(OperatorTag::Laplacian);
        let a = p.apply_operator(OperatorTag::ConjugateCauchyRiemann).apply_operator(OperatorTag::CauchyRiemann);
        let b = p.apply_operator(OperatorTag::CauchyRiemann).apply_operator(OperatorTag::ConjugateCauchyRiemann);
        fails += usize::from(a != lap || b != lap);
    }
    let mut out = vec![IdentityReport::exact("D Dbar = Dbar D = Laplacian", m, trials as i64, fails == 0, fails as f64)];
    // d_x x^j = -j x^(j-1) (j even), -(m+j-1) x^(j-1) (j odd)
    let mut dirac_ok = true;
    for j in 1..=6u32 {
        let xj = crate::poly::vector_power::<Rational>(m, j);
        let c = if j % 2 == 0 { j as i64 } else { (m + j as usize - 1) as i64 };
        let expect = crate::poly::vector_power::<Rational>(m, j - 1).scale(&rint(-c));
        dirac_ok &= xj.apply_operator(OperatorTag::Dirac) == expect;
    }
    out.push(IdentityReport::exact("d_x x^j = -c_j x^(j-1)", m, 6, dirac_ok, 1.0));
    let x = random_paravector(&mut rng, m);
    let mut chain = CliffordElement::one(m);
    let mut ok = true;
    for k in 0..=5u32 {
        ok &= paravector_power::<Rational>(m, k).evaluate(&x)? == chain;
        chain = &chain * &x.to_element();
    }
    out.push(IdentityReport::exact("x^k as polynomial = repeated product", m, 5, ok, 1.0));
    Ok(out)
}

// ---------------------------------------------------------------- gck

pub fn gck_checks(m: usize, k: u32) -> Result<Vec<IdentityReport>> {
    let f = LaurentPoly::<Rational>::power(k as i32);
    let g = gck_polynomial(&f, m)?;
    let poly = g.to_polynomial()?;
    let ki = k as i64;
    let mut out = Vec::new();
    let d = poly.apply_operator(OperatorTag::CauchyRiemann);
    out.push(IdentityReport::exact("D GCK[x0^k] = 0", m, ki, d.is_zero(), d.max_abs_coeff()));
    out.push(IdentityReport::exact("GCK[x0^k] restricts to x0^k", m, ki, *g.restriction() == f, 1.0));
    let bessel = gck_bessel_form(&f, m)?;
    out.push(IdentityReport::exact("Bessel form = recursion", m, ki, bessel == g, 1.0));
    let s = SliceExtension::new(f.clone(), m).to_polynomial()?;
    out.push(IdentityReport::exact("S[x0^k] = x^k", m, ki, s == paravector_power(m, k), 1.0));
    let pair = intrinsic_split(&f, k as usize);
    let (r1, r2) = pair.cauchy_riemann_residual();
    let ok = r1.is_zero() && r2.is_zero() && pair.alpha.is_even_in_v() && pair.beta.is_odd_in_v();
    out.push(IdentityReport::exact("intrinsic pair: parity and Cauchy-Riemann", m, ki, ok, 1.0));
    // Appell properties
    let q = appell_q(m, k);
    out.push(IdentityReport::exact("Q_k monogenic", m, ki, q.is_monogenic(), 1.0));
    let deriv = q.apply_operator(OperatorTag::HypercomplexDerivative);
    let expect = if k == 0 {
        CliffordPolynomial::zero(m)
    } else {
        appell_q(m, k - 1).scale(&rint(k as i64))
    };
    let diff = deriv.sub(&expect);
    out.push(IdentityReport::exact("(1/2) Dbar Q_k = k Q_(k-1)", m, ki, diff.is_zero(), diff.max_abs_coeff()));
    let one = Paravector::new(Rational::one(), vec![Rational::zero(); m]);
    let at_one = q.evaluate(&one)? == CliffordElement::one(m);
    let tsum = (0..=k).fold(Rational::zero(), |s, j| s + appell_t(m, k, j)) == Rational::one();
    out.push(IdentityReport::exact("Q_k(1) = 1 = sum_j T_j^k", m, ki, at_one && tsum, 1.0));
    let explicit = appell_q_explicit(m, k, FactorOrder::ParavectorFirst);
    out.push(IdentityReport::exact("Q_k = sum T_j^k x^(k-j) conj(x)^j", m, ki, explicit == q, 1.0));
    Ok(out)
}

/// `D` of the truncated GCK of `x0^-1` is `x^N f_N'`, bounded by `C 2^-N` at ratio 1/2.
pub fn gck_laurent_defect(m: usize, order: usize) -> Result<IdentityReport> {
    let f = LaurentPoly::<f64>::power(-1);
    let series = gck_extension(&f, m, order);
    let defect = series.cauchy_riemann_defect();
    let mut worst: f64 = 0.0;
    for x in crate::kernels::probe_points(m, 0.5) {
        worst = worst.max(defect.evaluate(&x)?.norm());
    }
    let tol = 10.0 * (order as f64 + 2.0) * 0.5f64.powi(order as i32);
    Ok(IdentityReport::numeric("|D GCK_N[1/x0]| <= C 2^-N at ratio 1/2", m, -1, worst, tol)
        .with_note(format!("N = {order}")))
}

/// The exported `Q_k` document parses back to the same polynomial.
pub fn export_round_trip(m: usize, k: u32) -> Result<IdentityReport> {
    use crate::export::{export_document, ExportKind, ExportParams};
    let doc = export_document(ExportKind::Qpoly, ExportParams { m, k: k as i64 })?;
    let back: CliffordPolynomial<Rational> = crate::json::polynomial_from_json(&doc["polynomial"])?;
    Ok(IdentityReport::exact("export(Q_k) parses back to Q_k", m, k as i64, back == appell_q(m, k), 1.0))
}

fn gck_jobs(p: &SuiteParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    for m in p.dims(2..=5) {
        for k in p.degrees() {
            jobs.push(job(
                "gck",
                "generalized CK-extension and Appell polynomials",
                &[
                    "gck_extension",
                    "gck_bessel_form",
                    "slice_extension",
                    "intrinsic_split",
                    "appell_q",
                    "is_monogenic",
                    "apply_operator",
                    "paravector_power",
                ],
                move || gck_checks(m, k),
            ));
        }
        let k = p.degree.unwrap_or(2);
        jobs.push(job("gck", "exported Appell polynomial round trip", &["export_object", "appell_q"], move || {
            Ok(vec![export_round_trip(m, k)?])
        }));
        jobs.push(job("gck", "truncated GCK of Laurent data", &["gck_extension"], move || {
            Ok(vec![gck_laurent_defect(m, 30)?])
        }));
    }
    jobs
}

// ---------------------------------------------------------------- fueter

pub fn fueter_power_checks(m: usize, l: i64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let r = tau_on_power(m, l, 0)?;
    if l >= 0 {
        let zero = r.body == FueterOutput::Zero;
        let expect_zero = l <= m as i64 - 2;
        out.push(
            IdentityReport::exact("tau_m[x^l] = 0 iff 0 <= l <= m-2", m, l, zero == expect_zero, 1.0)
                .with_note(format!("branch {}", r.branch.as_str())),
        );
        if let FueterOutput::Polynomial(body) = &r.body {
            out.push(IdentityReport::exact("tau_m[x^l] monogenic", m, l, body.is_monogenic(), 1.0));
            let k = (l - m as i64 + 1) as u32;
            let c = Rational::from_integer(factorial(l as u64)) / Rational::from_integer(factorial(k as u64));
            let q = appell_q(m, k).scale(&c);
            let diff = body.sub(&q);
            out.push(IdentityReport::exact(
                "tau_m[x^(m-1+k)] = gamma_m (m-1+k)!/k! Q_k",
                m,
                l,
                diff.is_zero(),
                diff.max_abs_coeff(),
            ));
        }
        if m % 2 == 1 {
            let f = LaurentPoly::power(l as i32);
            let LaplacianRoute::Polynomial(lap) = laplacian_power_route(m, &f)? else {
                return Err(Error::Unsupported("polynomial route expected".into()));
            };
            let (g, body) = r.exact_polynomial().ok_or_else(|| Error::Unsupported("exact output expected".into()))?;
            let g = g.as_rational().ok_or_else(|| Error::Unsupported("gamma_m not rational".into()))?;
            let diff = lap.sub(&body.scale(&g));
            out.push(IdentityReport::exact(
                "Delta^((m-1)/2) S[x0^l] = gamma_m GCK[d^(m-1) x0^l]",
                m,
                l,
                diff.is_zero(),
                diff.max_abs_coeff(),
            ));
            let cf = lemma41_ab(m, &intrinsic_split(&f, l as usize))?;
            let ok = match (cf.polynomial_body(), cf.prefactor.as_rational()) {
                (Some(b), Some(c)) => b.scale(&c) == lap,
                _ => false,
            };
            out.push(IdentityReport::exact("pointwise (A, B) formula = Laplacian route", m, l, ok, 1.0));
        }
    } else {
        // Closed form i^(1-m) sgn(-x0)^(m-1) P^(l) against the truncated series.
        let cf = r.closed_form().ok_or_else(|| Error::Unsupported("closed form expected".into()))?;
        let f = LaurentPoly::<Rational>::power(l as i32);
        let mut worst: f64 = 0.0;
        let mut max_n = 0;
        for x in crate::kernels::probe_points(m, 0.5) {
            let d = f.nth_derivative(m as u32 - 1);
            let n = Truncation::default().order(&d, m, x.x0, x.radius())?;
            max_n = max_n.max(n);
            let series = tau_on_laurent(m, &f, n)?;
            worst = worst.max(series.evaluate(&x)?.distance(&cf.evaluate(&x)?));
        }
        out.push(
            IdentityReport::numeric("tau_m[x^-k] = i^(1-m) sgn(-x0)^(m-1) P^(-k)", m, l, worst, 1e-8)
                .with_note(format!("ratio 1/2, N = {max_n}")),
        );
        let p = monogenic_monomial(m, l)?.closed_form;
        out.push(IdentityReport::exact("D P^(-k) = 0 (axial Cauchy-Riemann system)", m, l, p.is_monogenic(), 1.0));
    }
    Ok(out)
}

/// `Delta[x^-1] = -4 conj(x)/|x|^4` in `m = 3` at random points.
pub fn inverse_laplacian_check(points: usize, seed: u64) -> Result<IdentityReport> {
    let LaplacianRoute::ClosedForm(cf) = laplacian_power_route(3, &LaurentPoly::power(-1))? else {
        return Err(Error::Unsupported("closed form expected".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let x = Paravector::new(
            rng.random_range(-2.0..2.0),
            (0..3).map(|_| rng.random_range(-2.0..2.0)).collect(),
        );
        let rho = x.norm_sq();
        if rho < 1e-2 {
            continue;
        }
        let expect = x.conj().to_element().map(|v| C64::new(-4.0 * v / (rho * rho), 0.0));
        worst = worst.max(cf.evaluate(&x)?.distance(&expect));
    }
    Ok(IdentityReport::numeric("Delta[x^-1] = -4 conj(x)/|x|^4", 3, -1, worst, 1e-8)
        .with_note(format!("{points} random points")))
}

/// Kernels: `E` and Kelvin inversion preserve monogenicity; `I[I[f]] = f`.
pub fn kernel_checks(m: usize) -> Result<Vec<IdentityReport>> {
    let e = cauchy_kernel(m)?;
    let mut out = Vec::new();
    let x = Paravector::new(1.0, (0..m).map(|j| if j % 2 == 0 { 0.3 } else { -0.2 }).collect());
    let de = finite_difference(OperatorTag::CauchyRiemann, |y| e.evaluate(y), &x, 1e-5)?.norm();
    out.push(IdentityReport::numeric("D E = 0 (finite differences)", m, 0, de, 1e-6));
    let q = appell_q(m, 2).map_scalars(rational_to_f64);
    let iq = |y: &Paravector<f64>| kelvin_evaluate(|z| q.evaluate_c64(z), y);
    let di = finite_difference(OperatorTag::CauchyRiemann, iq, &x, 1e-5)?.norm();
    out.push(IdentityReport::numeric("D I[Q_2] = 0 (finite differences)", m, 2, di, 1e-6));
    let twice = kelvin_evaluate(iq, &x)?.distance(&q.evaluate_c64(&x)?);
    out.push(IdentityReport::numeric("I[I[Q_2]] = Q_2", m, 2, twice, 1e-10));
    let ie = kelvin_inversion(&crate::kernels::AxialClosedForm {
        prefactor: ExactConstant::one(),
        ..e.clone()
    });
    let one = ie.evaluate(&x)?.distance(&CliffordElement::one(m));
    out.push(IdentityReport::numeric("I[sigma E] = 1", m, 0, one, 1e-12));
    Ok(out)
}

fn fueter_jobs(p: &SuiteParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let powers: Vec<i64> = match p.power {
        Some(l) => vec![l],
        None => (-3..=p.max_degree as i64).collect(),
    };
    for m in p.dims(1..=5) {
        for &l in &powers {
            if l < 0 && m == 1 {
                continue;
            }
            let mut ops = vec!["tau_on_power", "tau_on_laurent", "appell_q"];
            if m % 2 == 1 && l >= 0 {
                ops.extend(["laplacian_power_route", "lemma41_ab", "intrinsic_split"]);
            }
            if l < 0 {
                ops.extend(["monogenic_monomial", "cauchy_kernel", "kelvin_inversion"]);
            }
            jobs.push(job("fueter", "Fueter-Sce-Qian map on powers", &ops, move || fueter_power_checks(m, l)));
        }
        jobs.push(job("fueter", "Cauchy kernel and Kelvin inversion", &["cauchy_kernel", "kelvin_inversion"], move || {
            kernel_checks(m)
        }));
    }
    if p.m.is_none() || p.m == Some(3) {
        let seed = p.seed;
        jobs.push(job("fueter", "Laplacian of the inverse", &["laplacian_power_route"], move || {
            Ok(vec![inverse_laplacian_check(20, seed)?])
        }));
    }
    jobs
}

// ---------------------------------------------------------------- monogenic monomials

fn prop45_jobs(p: &SuiteParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let ks: Vec<u32> = match p.degree {
        Some(d) => vec![d.max(1)],
        None => (1..=p.max_degree.clamp(1, 6)).collect(),
    };
    for m in p.dims(1..=5) {
        for &k in &ks {
            jobs.push(job(
                "prop45",
                "monogenic monomials via GCK and Appell polynomials",
                &["verify_prop45", "monogenic_monomial", "kelvin_inversion", "cauchy_kernel"],
                move || verify_prop45(m, k, Truncation::default(), 0.4),
            ));
        }
    }
    jobs
}

// ---------------------------------------------------------------- radon

/// Exact sphere integrals: `int 1 = sigma_m`, `int w_1 = 0`,
/// `int <x,w>^2 = sigma_m |x|^2 / m` (coefficient check).
pub fn sphere_checks(m: usize) -> Result<Vec<IdentityReport>> {
    let rule = SphereRule::exact(m);
    let mut one = SpherePolynomial::new(m);
    one.add_term(vec![0; m], CliffordElement::one(m));
    let mut w1 = SpherePolynomial::new(m);
    let mut e = vec![0; m];
    e[0] = 1;
    w1.add_term(e, CliffordElement::one(m));
    let ok1 = match sphere_integrate(&one, &rule)? {
        crate::sphere::SphereIntegral::Exact { area, average } => {
            area == sphere_area(m as u32) && average == CliffordElement::one(m)
        }
        _ => false,
    };
    let ok2 = match sphere_integrate(&w1, &rule)? {
        crate::sphere::SphereIntegral::Exact { average, .. } => average.is_zero(),
        _ => false,
    };
    let (c0, _) = funk_hecke_constants(m, 2)?;
    let ok3 = c0 == sphere_area(m as u32).scale(&rat(1, m as i64));
    let mut out = vec![
        IdentityReport::exact("int 1 dS = sigma_m, int w_1 dS = 0", m, 0, ok1 && ok2, 1.0),
        IdentityReport::exact("int <x,w>^2 dS = sigma_m |x|^2 / m", m, 2, ok3, 1.0),
    ];
    for j in (1..=5).step_by(2) {
        let (c0, _) = funk_hecke_constants(m, j)?;
        let (_, c1) = funk_hecke_constants(m, j - 1)?;
        out.push(IdentityReport::exact("C0 = 0 for odd j, C1 = 0 for even j", m, j as i64, c0.is_zero() && c1.is_zero(), 1.0));
    }
    let rule = SphereRule::gauss(m, 8);
    let area: f64 = rule.nodes()?.iter().map(|(_, w)| w).sum();
    out.push(IdentityReport::numeric(
        "product Gauss rule reproduces sigma_m",
        m,
        0,
        (area - sphere_area(m as u32).to_c64().re).abs(),
        1e-11,
    ));
    Ok(out)
}

pub fn radon_exact_checks(m: usize, k: u32) -> Result<Vec<IdentityReport>> {
    let f = LaurentPoly::<Rational>::power(k as i32);
    let mut out = vec![plane_wave_gck_check(&f, m, &SphereRule::exact(m), None)?];
    let img = dual_radon_polynomial(&SliceExtension::new(f.clone(), m).to_polynomial()?);
    out.push(IdentityReport::exact("R[S[x0^k]] = Q_k", m, k as i64, img == appell_q(m, k), 1.0));
    out.push(radon_monogenic_check(&f, m)?);
    out.extend(fueter_radon_diagram(&f, m)?);
    Ok(out)
}

pub fn radon_numeric_checks(m: usize, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let rule = SphereRule::gauss(m, crate::sphere::default_gauss_level(m));
    let mut xs = vec![0.0; m];
    xs[0] = 0.2;
    if m > 1 {
        xs[1] = 0.1;
    }
    for x0 in [1.0, -1.0] {
        let x = Paravector::new(x0, xs.clone());
        out.push(cauchy_plane_wave_check(m, &x, &rule, 1e-6)?);
        for k in 1..=3 {
            out.push(monomial_plane_wave_check(m, k, &x, &rule, 1e-8)?);
        }
    }
    let mut y = vec![0.0; m];
    y[0] = 0.3;
    if m > 1 {
        y[1] = 0.4;
    }
    let x = Paravector::new(1.0, y);
    let f = LaurentPoly::power(3);
    out.push(plane_wave_gck_check(&f, m, &SphereRule::gauss(m, 4), Some(&x))?);
    out.push(plane_wave_gck_check(&f, m, &SphereRule::monte_carlo(m, 100_000, seed), Some(&x))?);
    Ok(out)
}

/// The checks behind `radon-check`: the exact rule runs the symbolic
/// identities, numeric rules the plane-wave quadratures at a fixed point.
pub fn radon_rule_checks(m: usize, k: u32, rule: &SphereRule) -> Result<Vec<IdentityReport>> {
    if rule.is_exact() {
        return radon_exact_checks(m, k);
    }
    let mut y = vec![0.0; m];
    y[0] = 0.3;
    if m > 1 {
        y[1] = 0.4;
    }
    let x = Paravector::new(1.0, y);
    let mut out = vec![plane_wave_gck_check(&LaurentPoly::power(k as i32), m, rule, Some(&x))?];
    if !matches!(rule.kind, crate::sphere::SphereRuleKind::MonteCarlo { .. }) {
        out.push(cauchy_plane_wave_check(m, &x, rule, 1e-6)?);
        if k >= 1 {
            out.push(monomial_plane_wave_check(m, k, &x, rule, 1e-8)?);
        }
    }
    Ok(out)
}

fn radon_jobs(p: &SuiteParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let seed = p.seed;
    for m in p.dims(1..=4) {
        jobs.push(job("radon", "sphere integration", &["sphere_integrate", "funk_hecke_constants"], move || {
            sphere_checks(m)
        }));
        for k in p.degrees() {
            jobs.push(job(
                "radon",
                "plane-wave decomposition of GCK",
                &["dual_radon", "plane_wave_gck_check", "slice_extension", "gck_extension"],
                move || radon_exact_checks(m, k),
            ));
        }
        jobs.push(job(
            "radon",
            "plane-wave decomposition of kernels",
            &["cauchy_plane_wave_check", "plane_wave_gck_check", "monogenic_monomial"],
            move || radon_numeric_checks(m, seed),
        ));
        let jmax = p.max_degree.min(6);
        jobs.push(job("radon", "Funk-Hecke constants", &["funk_hecke_constants"], move || {
            let mut out = Vec::new();
            for j in 0..=jmax {
                out.extend(funk_hecke_mc_check(m, j, 100_000, seed.wrapping_add(j as u64))?);
            }
            Ok(out)
        }));
    }
    jobs
}

// ---------------------------------------------------------------- cst

/// Heat flow: closed form vs Gauss-Hermite quadrature on random data, and
/// commutation with `d/dx` up to five derivatives.
pub fn heat_checks(seed: u64, count: usize) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut comm: f64 = 0.0;
    for _ in 0..count {
        let deg = rng.random_range(0..=6);
        let coeffs = (0..=deg)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let f = GaussPoly::new(
            rng.random_range(0.3..1.5),
            C64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)),
            coeffs,
        )?;
        let h = f.heat();
        for x in [-1.1, 0.0, 0.6, 1.9] {
            let q = f.heat_by_quadrature(x, 100)?;
            worst = worst.max((h.evaluate(C64::new(x, 0.0)) - q).norm());
        }
        for k in 1..=5 {
            comm = comm.max(f.nth_derivative(k).heat().distance(&h.nth_derivative(k)));
        }
    }
    let g = GaussPoly::gaussian(0.5)?;
    let z = C64::new(0.4, -0.9);
    let oracle = (classical_cst(&g, z) - (-z * z / 4.0).exp() / 2f64.sqrt()).norm();
    Ok(vec![
        IdentityReport::numeric("heat = Gaussian convolution (quadrature)", 1, count as i64, worst, 1e-10),
        IdentityReport::numeric("heat d^k = d^k heat, k <= 5", 1, 5, comm, 1e-10),
        IdentityReport::numeric("U[e^(-y^2/2)](z) = e^(-z^2/4)/sqrt 2", 1, 0, oracle, 1e-14),
    ])
}

/// Slice CST: central-`i` evaluation vs the frequency-side integral; parity in `r`.
pub fn slice_cst_checks(family: usize) -> Result<Vec<IdentityReport>> {
    let mut four: f64 = 0.0;
    let mut parity: f64 = 0.0;
    let mut m1: f64 = 0.0;
    for f in hermite_family(family) {
        for (x0, r) in [(0.7, 0.5), (-0.4, 0.8), (1.2, 0.3)] {
            let a = slice_cst(&f, x0, r)?;
            let b = slice_cst_fourier(&f, x0, r, 48);
            four = four.max((a.alpha - b.alpha).norm().max((a.beta - b.beta).norm()));
            let neg = crate::cst::SliceValue::from_entire(&f.heat(), x0, -r);
            parity = parity.max((neg.alpha - a.alpha).norm().max((neg.beta + a.beta).norm()));
            // m = 1: U_a equals U_s.
            let x = Paravector::new(x0, vec![r]);
            let ua = axial_cst(&f, 1, &x, DEFAULT_TAYLOR_TOL)?;
            m1 = m1.max(ua.value.distance(&a.to_element(Some(&[1.0]), 1)));
        }
    }
    Ok(vec![
        IdentityReport::numeric("U_s central-i form = frequency-side form", 1, family as i64, four, 1e-8),
        IdentityReport::numeric("U_s: alpha even, beta odd in r", 1, family as i64, parity, 1e-10),
        IdentityReport::numeric("m = 1: U_a = U_s", 1, family as i64, m1, 1e-9),
    ])
}

pub fn unitarity_reports(m: usize, family: usize, tol: f64) -> Result<Vec<IdentityReport>> {
    let u = unitarity_check(&hermite_family(family), m, &UNITARITY_LEVELS)?;
    let levels: Vec<String> = u
        .levels
        .iter()
        .zip(&u.residuals)
        .map(|((p, n), r)| format!("{p}x{n}: {r:.2e}"))
        .collect();
    let report = IdentityReport::numeric("<f, g> = <U_s f, U_s g> (Hermite Gram matrix)", m, family as i64, u.residual(), tol)
        .with_note(levels.join(", "));
    let converged = u.residuals.windows(2).all(|w| w[1] <= w[0].max(tol * 1e-2));
    let conv = IdentityReport::exact(
        "Gram residual does not grow under refinement",
        m,
        family as i64,
        converged,
        u.residual(),
    );
    Ok(vec![report, conv])
}

fn cst_jobs(p: &SuiteParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    let seed = p.seed;
    jobs.push(job("cst", "heat semigroup", &["heat_semigroup", "classical_cst"], move || heat_checks(seed, 12)));
    jobs.push(job("cst", "slice coherent state transform", &["slice_cst", "axial_cst"], || slice_cst_checks(4)));
    for m in p.dims(2..=3) {
        jobs.push(job("cst", "axial transform routes", &["axial_cst", "dual_radon", "slice_cst"], move || {
            ua_route_reports(m, 4, 1e-7)
        }));
        jobs.push(job("cst", "Fueter transform routes", &["fueter_cst", "axial_cst"], move || {
            fueter_route_reports(m, 4, 1e-7)
        }));
        jobs.push(job("cst", "unitarity of the slice transform", &["unitarity_check"], move || {
            unitarity_reports(m, 4, 1e-5)
        }));
    }
    jobs
}

/// Like `run_suite` but the suite name is validated first, for CLI messages.
pub fn is_suite(name: &str) -> bool {
    name == "all" || SUITES.contains(&name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_small() {
        for r in algebra_checks(3, 20, 1).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        for m in 1..=3 {
            for r in constants_checks(m) {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn gck_single_degree() {
        let p = SuiteParams {
            m: Some(4),
            degree: Some(0),
            ..Default::default()
        };
        let r = run_suite("gck", &p).unwrap();
        assert!(r.passed(), "{}", r.table());
    }

    #[test]
    fn fueter_m2_power1() {
        let p = SuiteParams {
            m: Some(2),
            power: Some(1),
            ..Default::default()
        };
        let r = run_suite("fueter", &p).unwrap();
        assert!(r.passed(), "{}", r.table());
        let p0 = SuiteParams {
            power: Some(0),
            ..p
        };
        let r = run_suite("fueter", &p0).unwrap();
        assert!(r.cases.iter().any(|c| c.report.note.as_deref() == Some("branch kernel")));
    }

    #[test]
    fn unknown_suite_and_bounds() {
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
        let p = SuiteParams {
            m: Some(7),
            ..Default::default()
        };
        assert!(run_suite("gck", &p).is_err());
    }
}
