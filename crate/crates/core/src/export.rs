//! Writing canonical JSON artifacts to disk.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extension::appell_q;
use crate::fueter::{tau_on_power, FueterOutput, FueterResult};
use crate::json::{constant_to_json, document, polynomial_to_json, to_canonical_string};
use crate::kernels::{cauchy_kernel, monogenic_monomial, AxialClosedForm, Domain};
use crate::radial::RadialExpr;
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Qpoly,
    MonomialP,
    CauchyE,
    FueterPower,
}

impl ExportKind {
    pub const ALL: [ExportKind; 4] = [
        ExportKind::Qpoly,
        ExportKind::MonomialP,
        ExportKind::CauchyE,
        ExportKind::FueterPower,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExportKind::Qpoly => "Qpoly",
            ExportKind::MonomialP => "monomialP",
            ExportKind::CauchyE => "cauchyE",
            ExportKind::FueterPower => "fueter_power",
        }
    }
}

impl fmt::Display for ExportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExportKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExportKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown export kind {s:?}; expected Qpoly, monomialP, cauchyE or fueter_power"))
            })
    }
}

/// `k` is the degree for `Qpoly`, the order for `monomialP` and the power
/// for `fueter_power`; `cauchyE` ignores it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExportParams {
    pub m: usize,
    pub k: i64,
}

pub fn radial_to_json(e: &RadialExpr<Rational>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(mono, c)| {
            json!({"x0": mono.x0, "r": mono.r, "rho_halves": mono.rho_halves, "c": format_rational(c)})
        })
        .collect();
    json!({"terms": terms, "text": e.to_string()})
}

/// Descriptor `prefactor * sgn(+-x_0)^p * (A + w B)` with `rho = x_0^2 + r^2`.
pub fn closed_form_to_json(f: &AxialClosedForm) -> Value {
    let domain = match f.domain {
        Domain::Everywhere => "everywhere",
        Domain::PuncturedOrigin => "x != 0",
        Domain::OffHyperplane => "x0 != 0",
    };
    json!({
        "m": f.dim,
        "prefactor": constant_to_json(&f.prefactor),
        "sign": {"power": f.sign.power, "argument": if f.sign.negated { "-x0" } else { "x0" }},
        "A": radial_to_json(&f.a),
        "B": radial_to_json(&f.b),
        "domain": domain,
    })
}

pub fn fueter_result_to_json(r: &FueterResult) -> Value {
    let mut v = json!({
        "m": r.m,
        "power": r.power,
        "branch": r.branch.as_str(),
        "gamma": constant_to_json(&r.gamma),
    });
    match &r.body {
        FueterOutput::Zero => v["body"] = json!({"zero": true}),
        FueterOutput::Polynomial(p) => v["body"] = polynomial_to_json(p),
        FueterOutput::Series(s) => v["body"] = crate::json::axial_series_to_json(s),
    }
    if let Some((g, p)) = r.exact_polynomial() {
        if let Some(g) = g.as_rational() {
            v["value"] = polynomial_to_json(&p.scale(&g));
        }
    }
    if let Some(cf) = r.closed_form() {
        v["closed_form"] = closed_form_to_json(&cf);
    }
    v
}

/// The JSON document for an export, without touching the filesystem.
pub fn export_document(kind: ExportKind, p: ExportParams) -> Result<Value> {
    let payload = match kind {
        ExportKind::Qpoly => {
            let k = u32::try_from(p.k).map_err(|_| Error::InvalidArgument(format!("degree must be >= 0, got {}", p.k)))?;
            crate::error::check_dim(p.m)?;
            json!({"m": p.m, "k": k, "polynomial": polynomial_to_json(&appell_q(p.m, k))})
        }
        ExportKind::MonomialP => {
            let mm = monogenic_monomial(p.m, p.k)?;
            let mut v = json!({"m": p.m, "order": p.k, "closed_form": closed_form_to_json(&mm.closed_form)});
            if let Some((c, poly)) = mm.polynomial() {
                v["constant"] = constant_to_json(&c);
                v["polynomial"] = polynomial_to_json(&poly);
            }
            v
        }
        ExportKind::CauchyE => json!({"m": p.m, "closed_form": closed_form_to_json(&cauchy_kernel(p.m)?)}),
        ExportKind::FueterPower => fueter_result_to_json(&tau_on_power(p.m, p.k, 0)?),
    };
    Ok(document(kind.as_str(), payload))
}

/// Writes the canonical document to `path`; a directory gets a default file name.
pub fn export_object(kind: ExportKind, p: ExportParams, path: &Path) -> Result<PathBuf> {
    let doc = export_document(kind, p)?;
    let target = if path.is_dir() {
        path.join(default_file_name(kind, p))
    } else {
        path.to_path_buf()
    };
    std::fs::write(&target, to_canonical_string(&doc)).map_err(|e| Error::Io {
        path: target.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(target)
}

pub fn default_file_name(kind: ExportKind, p: ExportParams) -> String {
    match kind {
        ExportKind::CauchyE => format!("{kind}_m{}.json", p.m),
        _ => format!("{kind}_m{}_k{}.json", p.m, p.k),
    }
}
