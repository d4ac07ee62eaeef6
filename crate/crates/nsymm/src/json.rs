//! JSON encodings of the public value types.
//!
//! - composition: array of positive integers, `[1,2,3]`;
//! - polynomial: list of `{"word": ..., "coeff": "<decimal>"}` where a word
//!   is an array of indices for `NSymm` and an array of `[tag, index]`
//!   pairs (tag `"X"`/`"Y"`) for `2NSymm`; coefficients are decimal strings
//!   so arbitrary precision survives;
//! - quasisymmetric element: list of `{"composition": ..., "coeff": ...}`;
//! - curve: `{"host", "ray_weight": [num, den] | null, "terms": [poly...]}`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::curves::{Curve, RayWeight};
use crate::ncpoly::{Host, Int, Letter, NcPoly, Tag, Word};
use crate::qsymm::QElem;
use crate::series::{Series1, Series2};
use crate::words::Composition;
use crate::zlattice::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonError(pub String);

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed JSON value: {}", self.0)
    }
}

impl std::error::Error for JsonError {}

fn err<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError(msg.into()))
}

pub fn composition_to_json(c: &Composition) -> Value {
    Value::Array(c.parts().iter().map(|&p| json!(p)).collect())
}

pub fn composition_from_json(v: &Value) -> Result<Composition, JsonError> {
    let arr = v.as_array().ok_or_else(|| JsonError("composition must be an array".into()))?;
    let mut parts = Vec::with_capacity(arr.len());
    for p in arr {
        match p.as_u64() {
            Some(n) if n >= 1 && n <= u32::MAX as u64 => parts.push(n as u32),
            _ => return err(format!("bad composition part {p}")),
        }
    }
    Ok(Composition::new(parts))
}

fn word_to_json(host: Host, w: &Word) -> Value {
    match host {
        Host::NSymm => Value::Array(w.0.iter().map(|l| json!(l.index)).collect()),
        Host::TwoNSymm => Value::Array(
            w.0.iter()
                .map(|l| json!([l.tag.symbol().to_string(), l.index]))
                .collect(),
        ),
    }
}

fn letter_from_json(v: &Value) -> Result<Letter, JsonError> {
    // Either a bare index (Z) or a [tag, index] pair.
    if let Some(n) = v.as_u64() {
        if n >= 1 {
            return Ok(Letter::z(n as u32));
        }
        return err("letter index must be >= 1");
    }
    let pair = v.as_array().filter(|a| a.len() == 2);
    let Some(pair) = pair else {
        return err(format!("bad letter {v}"));
    };
    let tag = match pair[0].as_str().map(|s| s.to_ascii_uppercase()) {
        Some(s) if s == "X" => Tag::X,
        Some(s) if s == "Y" => Tag::Y,
        Some(s) if s == "Z" => Tag::Z,
        _ => return err(format!("bad letter tag {}", pair[0])),
    };
    match pair[1].as_u64() {
        Some(n) if n >= 1 => Ok(Letter { index: n as u32, tag }),
        _ => err(format!("bad letter index {}", pair[1])),
    }
}

pub fn poly_to_json(p: &NcPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(w, c)| json!({"word": word_to_json(p.host(), w), "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<NcPoly, JsonError> {
    let arr = v.as_array().ok_or_else(|| JsonError("polynomial must be an array".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    let mut host = None;
    for item in arr {
        let word_v = item.get("word").ok_or_else(|| JsonError("term without word".into()))?;
        let coeff_v = item.get("coeff").ok_or_else(|| JsonError("term without coeff".into()))?;
        let letters_v = word_v
            .as_array()
            .ok_or_else(|| JsonError("word must be an array".into()))?;
        let mut letters = Vec::with_capacity(letters_v.len());
        for lv in letters_v {
            let l = letter_from_json(lv)?;
            let tag_host = if l.tag == Tag::Z { Host::NSymm } else { Host::TwoNSymm };
            match host {
                None => host = Some(tag_host),
                Some(h) if h == tag_host => {}
                Some(h) => return err(format!("mixed alphabets: {h} and {tag_host}")),
            }
            letters.push(l);
        }
        let coeff_s = coeff_v
            .as_str()
            .map(|s| s.to_string())
            .or_else(|| coeff_v.as_i64().map(|n| n.to_string()))
            .ok_or_else(|| JsonError(format!("bad coefficient {coeff_v}")))?;
        let coeff = Int::from_str(&coeff_s).map_err(|_| JsonError(format!("bad integer {coeff_s:?}")))?;
        terms.push((Word(letters), coeff));
    }
    Ok(NcPoly::from_terms(host.unwrap_or(Host::NSymm), terms))
}

pub fn qelem_to_json(q: &QElem) -> Value {
    Value::Array(
        q.terms()
            .map(|(c, v)| json!({"composition": composition_to_json(c), "coeff": v.to_string()}))
            .collect(),
    )
}

pub fn qelem_from_json(v: &Value) -> Result<QElem, JsonError> {
    let arr = v.as_array().ok_or_else(|| JsonError("quasisymmetric element must be an array".into()))?;
    let mut q = QElem::zero();
    for item in arr {
        let comp = composition_from_json(
            item.get("composition").ok_or_else(|| JsonError("term without composition".into()))?,
        )?;
        let coeff_v = item.get("coeff").ok_or_else(|| JsonError("term without coeff".into()))?;
        let coeff_s = coeff_v
            .as_str()
            .map(|s| s.to_string())
            .or_else(|| coeff_v.as_i64().map(|n| n.to_string()))
            .ok_or_else(|| JsonError(format!("bad coefficient {coeff_v}")))?;
        let coeff = Int::from_str(&coeff_s).map_err(|_| JsonError(format!("bad integer {coeff_s:?}")))?;
        q.add_term(comp, coeff);
    }
    Ok(q)
}

pub fn curve_to_json(c: &Curve) -> Value {
    let host = match c.host() {
        Host::NSymm => "NSymm",
        Host::TwoNSymm => "2NSymm",
    };
    let rw = match c.ray_weight() {
        Some(w) => json!([w.num, w.den]),
        None => Value::Null,
    };
    let terms: Vec<Value> = (1..=c.bound()).map(|i| poly_to_json(&c.term(i))).collect();
    json!({"host": host, "ray_weight": rw, "terms": terms})
}

pub fn curve_from_json(v: &Value) -> Result<Curve, JsonError> {
    let host = match v.get("host").and_then(Value::as_str) {
        Some("NSymm") => Host::NSymm,
        Some("2NSymm") => Host::TwoNSymm,
        other => return err(format!("bad host {other:?}")),
    };
    let rw = match v.get("ray_weight") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) if a.len() == 2 => {
            let num = a[0].as_u64().filter(|&n| n >= 1);
            let den = a[1].as_u64().filter(|&n| n >= 1);
            match (num, den) {
                (Some(n), Some(d)) => Some(RayWeight::new(n as u32, d as u32)),
                _ => return err("bad ray_weight entries"),
            }
        }
        Some(other) => return err(format!("bad ray_weight {other}")),
    };
    let terms_v = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError("curve without terms".into()))?;
    let mut terms = Vec::with_capacity(terms_v.len());
    for tv in terms_v {
        let mut p = poly_from_json(tv)?;
        // Constants parse with a default host; coerce them.
        if p.is_zero() || p.num_terms() == p.terms().filter(|(w, _)| w.is_empty()).count() {
            p = NcPoly::from_terms(host, p.terms().map(|(w, c)| (w.clone(), c.clone())));
        }
        if p.host() != host {
            return err("curve term in wrong host");
        }
        terms.push(p);
    }
    Ok(Curve::new(host, terms, rw))
}

/// `{"bound": T, "coeffs": [{"deg": i, "poly": ...}, ...]}`, nonzero
/// degrees only.
pub fn series1_to_json(s: &Series1) -> Value {
    let coeffs: Vec<Value> = (1..=s.bound())
        .filter(|&i| !s.coeff(i).is_zero())
        .map(|i| json!({"deg": i, "poly": poly_to_json(s.coeff(i))}))
        .collect();
    json!({"bound": s.bound(), "coeffs": coeffs})
}

/// Two-variable variant: degrees are `[i, j]` pairs.
pub fn series2_to_json(s: &Series2) -> Value {
    let coeffs: Vec<Value> = s
        .support()
        .filter(|((i, j), _)| (*i, *j) != (0, 0))
        .map(|((i, j), poly)| json!({"deg": [i, j], "poly": poly_to_json(poly)}))
        .collect();
    json!({"bound": s.bound(), "coeffs": coeffs})
}

fn series_host(v: &Value) -> Result<Host, JsonError> {
    // The host is implicit in the stored words; constants default to NSymm.
    for item in v.get("coeffs").and_then(Value::as_array).into_iter().flatten() {
        if let Some(p) = item.get("poly") {
            let poly = poly_from_json(p)?;
            if poly.terms().any(|(w, _)| !w.is_empty()) {
                return Ok(poly.host());
            }
        }
    }
    Ok(Host::NSymm)
}

pub fn series1_from_json(v: &Value) -> Result<Series1, JsonError> {
    let bound = v
        .get("bound")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError("series without bound".into()))? as u32;
    let host = series_host(v)?;
    let mut s = Series1::one(host, bound);
    for item in v.get("coeffs").and_then(Value::as_array).into_iter().flatten() {
        let deg = item
            .get("deg")
            .and_then(Value::as_u64)
            .ok_or_else(|| JsonError("coefficient without deg".into()))? as u32;
        if deg == 0 || deg > bound {
            return err(format!("degree {deg} out of range"));
        }
        let poly = poly_from_json(item.get("poly").ok_or_else(|| JsonError("coefficient without poly".into()))?)?;
        s.set_coeff(deg, coerce_host(poly, host)?);
    }
    Ok(s)
}

pub fn series2_from_json(v: &Value) -> Result<Series2, JsonError> {
    let bound = v
        .get("bound")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError("series without bound".into()))? as u32;
    let host = series_host(v)?;
    let mut s = Series2::one(host, bound);
    for item in v.get("coeffs").and_then(Value::as_array).into_iter().flatten() {
        let deg = item
            .get("deg")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| JsonError("coefficient without [i,j] deg".into()))?;
        let (i, j) = match (deg[0].as_u64(), deg[1].as_u64()) {
            (Some(i), Some(j)) => (i as u32, j as u32),
            _ => return err("bad bidegree"),
        };
        if i + j == 0 || i + j > bound {
            return err(format!("bidegree ({i},{j}) out of range"));
        }
        let poly = poly_from_json(item.get("poly").ok_or_else(|| JsonError("coefficient without poly".into()))?)?;
        s.set_coeff(i, j, coerce_host(poly, host)?);
    }
    Ok(s)
}

fn coerce_host(p: NcPoly, host: Host) -> Result<NcPoly, JsonError> {
    if p.host() == host {
        return Ok(p);
    }
    if p.terms().all(|(w, _)| w.is_empty()) {
        return Ok(NcPoly::from_terms(host, p.terms().map(|(w, c)| (w.clone(), c.clone()))));
    }
    err("mixed hosts across series coefficients")
}

/// Row-major array of decimal strings.
pub fn matrix_to_json(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": rows})
}
