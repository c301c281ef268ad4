//! `fsq`: run verification suites and export artifacts.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fueter::cst::{fueter_route_reports, hermite_family, ua_route_reports, unitarity_check, UNITARITY_LEVELS};
use fueter::export::{export_document, ExportKind, ExportParams};
use fueter::fueter::{tau_on_laurent, tau_on_power};
use fueter::json::{document, laurent_from_json, to_canonical_string};
use fueter::report::IdentityReport;
use fueter::scalar::Rational;
use fueter::sphere::SphereRule;
use fueter::verify::{fueter_power_checks, radon_rule_checks, run_suite, SuiteParams};

/// Default output directory when `--out` is not given.
const OUT_DIR_VAR: &str = "FSQ_OUT_DIR";

#[derive(Parser)]
#[command(name = "fsq", version, about = "Verify identities of the Fueter-Sce-Qian map and export artifacts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: algebra, gck, fueter, prop45, radon, cst or all.
    Verify {
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        power: Option<i64>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-case wall times (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Write a canonical JSON artifact: Qpoly, monomialP, cauchyE or fueter_power.
    Export {
        kind: String,
        #[arg(long)]
        m: usize,
        /// Degree, order or power, depending on the kind.
        #[arg(long, visible_alias = "order", visible_alias = "power", allow_hyphen_values = true, default_value_t = 0)]
        k: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the Fueter-Sce-Qian map to a power or to Laurent data read from a file.
    Fueter {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "laurent")]
        power: Option<i64>,
        #[arg(long, conflicts_with = "power")]
        laurent: Option<PathBuf>,
        /// Series order kept for negative powers.
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plane-wave checks of the dual Radon transform with a chosen sphere rule.
    RadonCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        degree: u32,
        /// exact, gauss:L or mc:N:SEED
        #[arg(long, default_value = "exact")]
        rule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherent state transform checks.
    CstCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        which: Which,
        /// hermite:K uses the first K Hermite functions.
        #[arg(long, default_value = "hermite:4")]
        family: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Unitarity,
    UaRoutes,
    FueterRoutes,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `--out`, else `$FSQ_OUT_DIR/<default>`, else stdout (`None`).
fn resolve_out(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    let path = out.or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))?;
    Some(if path.is_dir() { path.join(default_name) } else { path })
}

fn emit(doc: &Value, out: Option<&Path>) -> Result<()> {
    let text = to_canonical_string(doc);
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reports_doc(kind: &str, reports: &[IdentityReport], extra: Value) -> (Value, bool) {
    let passed = reports.iter().all(IdentityReport::passed);
    let mut v = extra;
    v["cases"] = reports.iter().map(IdentityReport::to_json).collect();
    v["passed"] = json!(passed);
    (document(kind, v), passed)
}

fn parse_family(s: &str) -> Result<usize> {
    let k = s
        .strip_prefix("hermite:")
        .and_then(|k| k.parse::<usize>().ok())
        .with_context(|| format!("family must be hermite:K, got {s:?}"))?;
    if !(1..=8).contains(&k) {
        bail!("family size must be in 1..=8");
    }
    Ok(k)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            m,
            max_degree,
            seed,
            power,
            degree,
            out,
            timings,
        } => {
            let params = SuiteParams {
                m,
                max_degree,
                seed,
                power,
                degree,
            };
            let report = run_suite(&suite, &params)?;
            let doc = report.to_json(timings);
            match resolve_out(out, &format!("verify_{suite}.json")) {
                Some(p) => {
                    emit(&doc, Some(&p))?;
                    print!("{}", report.table());
                }
                None => {
                    eprint!("{}", report.table());
                    emit(&doc, None)?;
                }
            }
            Ok(report.passed())
        }
        Command::Export { kind, m, k, out } => {
            let kind: ExportKind = kind.parse()?;
            let params = ExportParams { m, k };
            let doc = export_document(kind, params)?;
            let out = resolve_out(out, &fueter::export::default_file_name(kind, params));
            emit(&doc, out.as_deref())?;
            Ok(true)
        }
        Command::Fueter {
            m,
            power,
            laurent,
            order,
            out,
        } => {
            let (result, reports) = match (power, laurent) {
                (Some(l), _) => (tau_on_power(m, l, order)?, fueter_power_checks(m, l)?),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                    let f = laurent_from_json::<Rational>(&v)?;
                    let r = tau_on_laurent(m, &f, order)?;
                    let mut reports = Vec::new();
                    if let Some((_, p)) = r.exact_polynomial() {
                        reports.push(IdentityReport::exact("tau_m[f] monogenic", m, order as i64, p.is_monogenic(), 1.0));
                    }
                    (r, reports)
                }
                (None, None) => bail!("give --power or --laurent"),
            };
            let (doc, passed) = reports_doc(
                "fueter",
                &reports,
                json!({"result": fueter::export::fueter_result_to_json(&result)}),
            );
            let name = match power {
                Some(l) => format!("fueter_m{m}_l{l}.json"),
                None => format!("fueter_m{m}_laurent.json"),
            };
            emit(&doc, resolve_out(out, &name).as_deref())?;
            Ok(passed)
        }
        Command::RadonCheck { m, degree, rule, out } => {
            let parsed = SphereRule::parse(m, &rule)?;
            let reports = radon_rule_checks(m, degree, &parsed)?;
            let (doc, passed) = reports_doc("radon-check", &reports, json!({"m": m, "degree": degree, "rule": parsed.label()}));
            emit(&doc, resolve_out(out, &format!("radon_m{m}_k{degree}.json")).as_deref())?;
            Ok(passed)
        }
        Command::CstCheck {
            m,
            which,
            family,
            tol,
            out,
        } => {
            let k = parse_family(&family)?;
            let (doc, passed, name) = match which {
                Which::Unitarity => {
                    let tol = tol.unwrap_or(1e-5);
                    let u = unitarity_check(&hermite_family(k), m, &UNITARITY_LEVELS)?;
                    let gram = |g: &Vec<Vec<fueter::scalar::C64>>| -> Value {
                        g.iter().map(|row| row.iter().map(|z| json!([z.re, z.im])).collect::<Value>()).collect()
                    };
                    let passed = u.passed(tol);
                    let doc = document(
                        "cst-check",
                        json!({
                            "which": "unitarity",
                            "m": m,
                            "family": family,
                            "lhs": gram(&u.lhs),
                            "rhs": gram(u.rhs.last().expect("at least one level")),
                            "residual": u.residual(),
                            "residuals": u.residuals,
                            "quad_levels": u.levels.iter().map(|(p, n)| json!({"panels": p, "points": n})).collect::<Value>(),
                            "tolerance": tol,
                            "passed": passed,
                        }),
                    );
                    (doc, passed, "unitarity")
                }
                Which::UaRoutes | Which::FueterRoutes => {
                    let tol = tol.unwrap_or(1e-7);
                    let (reports, label) = if matches!(which, Which::UaRoutes) {
                        (ua_route_reports(m, k, tol)?, "ua-routes")
                    } else {
                        (fueter_route_reports(m, k, tol)?, "fueter-routes")
                    };
                    let (doc, passed) =
                        reports_doc("cst-check", &reports, json!({"which": label, "m": m, "family": family, "tolerance": tol}));
                    (doc, passed, label)
                }
            };
            emit(&doc, resolve_out(out, &format!("cst_{name}_m{m}.json")).as_deref())?;
            Ok(passed)
        }
    }
}
