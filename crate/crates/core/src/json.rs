//! Canonical JSON for the algebraic objects.
//!
//! Keys are sorted (serde_json's default map is ordered), rationals are
//! written as `"p/q"` strings and term lists follow the internal sorted order,
//! so equal objects serialize to equal bytes.

use num_complex::Complex;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::clifford::{Blade, CliffordElement};
use crate::constants::ExactConstant;
use crate::error::{Error, Result};
use crate::extension::AxialSeries;
use crate::laurent::LaurentPoly;
use crate::poly::CliffordPolynomial;
use crate::scalar::{format_rational, parse_rational, ComplexRational, Rational, Scalar, C64};

pub const SCHEMA_VERSION: u64 = 1;

/// Scalars with a JSON form as a `(re, im)` pair.
pub trait JsonScalar: Scalar {
    fn to_json_parts(&self) -> (Value, Value);
    fn from_json_parts(re: &Value, im: Option<&Value>) -> Result<Self>;
}

fn parse_q(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

fn parse_f(v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Parse(format!("expected a number, got {v}")))
}

impl JsonScalar for Rational {
    fn to_json_parts(&self) -> (Value, Value) {
        (json!(format_rational(self)), json!("0"))
    }

    fn from_json_parts(re: &Value, im: Option<&Value>) -> Result<Self> {
        if let Some(im) = im {
            if !parse_q(im)?.is_zero() {
                return Err(Error::Parse("complex coefficient in a real element".into()));
            }
        }
        parse_q(re)
    }
}

impl JsonScalar for ComplexRational {
    fn to_json_parts(&self) -> (Value, Value) {
        (json!(format_rational(&self.re)), json!(format_rational(&self.im)))
    }

    fn from_json_parts(re: &Value, im: Option<&Value>) -> Result<Self> {
        Ok(Complex::new(parse_q(re)?, im.map(parse_q).transpose()?.unwrap_or_else(Rational::zero)))
    }
}

impl JsonScalar for f64 {
    fn to_json_parts(&self) -> (Value, Value) {
        (json!(self), json!(0.0))
    }

    fn from_json_parts(re: &Value, _im: Option<&Value>) -> Result<Self> {
        parse_f(re)
    }
}

impl JsonScalar for C64 {
    fn to_json_parts(&self) -> (Value, Value) {
        (json!(self.re), json!(self.im))
    }

    fn from_json_parts(re: &Value, im: Option<&Value>) -> Result<Self> {
        Ok(C64::new(parse_f(re)?, im.map(parse_f).transpose()?.unwrap_or(0.0)))
    }
}

pub fn element_to_json<S: JsonScalar>(e: &CliffordElement<S>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(b, c)| {
            let (re, im) = c.to_json_parts();
            json!({"blade": b.indices(), "re": re, "im": im})
        })
        .collect();
    json!({"m": e.dim(), "terms": terms})
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("expected a nonnegative integer, got {v}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

pub fn element_from_json<S: JsonScalar>(v: &Value) -> Result<CliffordElement<S>> {
    let m = as_usize(field(v, "m")?)?;
    let mut terms = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let idx: Vec<usize> = as_array(field(t, "blade")?, "blade")?
            .iter()
            .map(as_usize)
            .collect::<Result<_>>()?;
        terms.push((Blade::from_indices(&idx, m)?, S::from_json_parts(field(t, "re")?, t.get("im"))?));
    }
    CliffordElement::try_from_terms(m, terms)
}

pub fn polynomial_to_json<S: JsonScalar>(p: &CliffordPolynomial<S>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"exps": e, "coeff": element_to_json(c)}))
        .collect();
    json!({"m": p.dim(), "terms": terms})
}

pub fn polynomial_from_json<S: JsonScalar>(v: &Value) -> Result<CliffordPolynomial<S>> {
    let m = as_usize(field(v, "m")?)?;
    let mut terms = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let exps: Vec<u32> = as_array(field(t, "exps")?, "exps")?
            .iter()
            .map(|x| as_usize(x).map(|n| n as u32))
            .collect::<Result<_>>()?;
        terms.push((exps, element_from_json(field(t, "coeff")?)?));
    }
    CliffordPolynomial::try_from_terms(m, terms)
}

/// `{"terms": [{"n": exponent, "c": coefficient}]}`.
pub fn laurent_to_json<S: JsonScalar>(f: &LaurentPoly<S>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(n, c)| {
            let (re, im) = c.to_json_parts();
            let mut t = Map::new();
            t.insert("n".into(), json!(n));
            t.insert("c".into(), re);
            if !S::EXACT || im != json!("0") {
                t.insert("im".into(), im);
            }
            Value::Object(t)
        })
        .collect();
    json!({"terms": terms})
}

pub fn laurent_from_json<S: JsonScalar>(v: &Value) -> Result<LaurentPoly<S>> {
    let mut out = LaurentPoly::zero();
    for t in as_array(field(v, "terms")?, "terms")? {
        let n = field(t, "n")?
            .as_i64()
            .and_then(|n| i32::try_from(n).ok())
            .ok_or_else(|| Error::Parse("exponent must be a 32-bit integer".into()))?;
        out.add_term(n, S::from_json_parts(field(t, "c")?, t.get("im"))?);
    }
    Ok(out)
}

pub fn axial_series_to_json<S: JsonScalar>(s: &AxialSeries<S>) -> Value {
    let coeffs: Vec<Value> = s.coeffs().iter().map(laurent_to_json).collect();
    json!({"m": s.dim(), "N": s.order(), "exact": s.is_exact(), "coeffs": coeffs})
}

pub fn axial_series_from_json<S: JsonScalar>(v: &Value) -> Result<AxialSeries<S>> {
    let m = as_usize(field(v, "m")?)?;
    let exact = field(v, "exact")?
        .as_bool()
        .ok_or_else(|| Error::Parse("exact must be a boolean".into()))?;
    let coeffs = as_array(field(v, "coeffs")?, "coeffs")?
        .iter()
        .map(laurent_from_json)
        .collect::<Result<Vec<_>>>()?;
    let n = as_usize(field(v, "N")?)?;
    if coeffs.len() != n + 1 {
        return Err(Error::Parse(format!("N = {n} but {} coefficients", coeffs.len())));
    }
    Ok(AxialSeries::new(m, coeffs, exact))
}

/// `{"phase": q, "coeff": "p/q", "pi_halves": n, "text": ..., "value": [re, im]}`
/// for `i^q coeff pi^(n/2)`.
pub fn constant_to_json(c: &ExactConstant) -> Value {
    let v = c.to_c64();
    json!({
        "phase": c.phase(),
        "coeff": format_rational(c.magnitude()),
        "pi_halves": c.pi_halves(),
        "text": c.to_string(),
        "value": [v.re, v.im],
    })
}

/// Wraps a payload with the schema version and a kind tag.
pub fn document(kind: &str, payload: Value) -> Value {
    let mut doc = match payload {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    doc.insert("schema".into(), json!(SCHEMA_VERSION));
    doc.insert("kind".into(), json!(kind));
    Value::Object(doc)
}

/// Pretty-printed with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
