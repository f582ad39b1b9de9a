//! JSON and CSV encodings. Every number is an exact rational string such as
//! `"-3/2"`; unbounded interval ends use `"-inf"` and `"inf"`.

use serde_json::{json, Value};

use crate::distributions::{BoundaryMeasure, DistributionBundle};
use crate::error::{Error, Result};
use crate::interval_sets::{Extended, Interval, IntervalSet, Space};
use crate::measures::{Dtm, MeasureNode};
use crate::pwl_functions::PwlFunction;
use crate::scalar::Scalar;

fn malformed(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    Value::String(x.to_wire())
}

/// Accepts `"p/q"`, decimal strings and JSON integers.
pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(malformed("a rational string", v)),
    };
    S::parse_wire(&text).ok_or(Error::InvalidRational(text))
}

fn array<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a [Value]> {
    match v.as_array() {
        Some(items) if items.len() == len => Ok(items),
        _ => Err(malformed(what, v)),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn end_to_json<S: Scalar>(e: &Extended<S>) -> Value {
    match e {
        Extended::NegInf => json!("-inf"),
        Extended::PosInf => json!("inf"),
        Extended::Finite(x) => scalar_to_json(x),
    }
}

fn end_from_json<S: Scalar>(v: &Value) -> Result<Extended<S>> {
    match v.as_str() {
        Some("-inf") | Some("\u{2212}inf") => Ok(Extended::NegInf),
        Some("inf") | Some("+inf") => Ok(Extended::PosInf),
        _ => scalar_from_json(v).map(Extended::Finite),
    }
}

/// `["lo", "hi", lo_open, hi_open]`.
pub fn interval_to_json<S: Scalar>(i: &Interval<S>) -> Value {
    json!([end_to_json(i.lo()), end_to_json(i.hi()), i.lo_open(), i.hi_open()])
}

pub fn interval_from_json<S: Scalar>(v: &Value) -> Result<Interval<S>> {
    let items = array(v, 4, "[lo, hi, lo_open, hi_open]")?;
    let flag = |x: &Value| x.as_bool().ok_or_else(|| malformed("a boolean", x));
    Interval::new(end_from_json(&items[0])?, end_from_json(&items[1])?, flag(&items[2])?, flag(&items[3])?)
}

pub fn interval_set_to_json<S: Scalar>(set: &IntervalSet<S>) -> Value {
    Value::Array(set.parts().iter().map(interval_to_json).collect())
}

/// A list of intervals (their union), or a single interval array.
pub fn interval_set_from_json<S: Scalar>(v: &Value) -> Result<IntervalSet<S>> {
    let items = v.as_array().ok_or_else(|| malformed("a list of intervals", v))?;
    if items.len() == 4 && items[2].is_boolean() {
        return Ok(interval_from_json(v)?.into());
    }
    let parts = items.iter().map(interval_from_json).collect::<Result<Vec<_>>>()?;
    Ok(IntervalSet::from_parts(parts))
}

/// `"line"` or `{"compact": ["a", "b"]}`.
pub fn space_to_json<S: Scalar>(space: &Space<S>) -> Value {
    match space {
        Space::Line => json!("line"),
        Space::Compact { a, b } => json!({ "compact": [scalar_to_json(a), scalar_to_json(b)] }),
    }
}

pub fn space_from_json<S: Scalar>(v: &Value) -> Result<Space<S>> {
    if v.as_str() == Some("line") {
        return Ok(Space::Line);
    }
    let ends = array(field(v, "compact").map_err(|_| malformed("\"line\" or {\"compact\": [a, b]}", v))?, 2, "[a, b]")?;
    Space::compact(scalar_from_json(&ends[0])?, scalar_from_json(&ends[1])?)
}

/// `{"space": ..., "breakpoints": [["x", "y"], ...]}`.
pub fn pwl_to_json<S: Scalar>(f: &PwlFunction<S>) -> Value {
    let nodes: Vec<Value> = f.nodes().iter().map(|(x, y)| json!([scalar_to_json(x), scalar_to_json(y)])).collect();
    json!({ "space": space_to_json(f.space()), "breakpoints": nodes })
}

/// Parses a function; a missing `"space"` defaults to `fallback`.
pub fn pwl_from_json<S: Scalar>(v: &Value, fallback: &Space<S>) -> Result<PwlFunction<S>> {
    let space = match v.get("space") {
        Some(s) => space_from_json(s)?,
        None => fallback.clone(),
    };
    let raw = field(v, "breakpoints")?.as_array().ok_or_else(|| malformed("a list of breakpoints", v))?;
    let nodes = raw
        .iter()
        .map(|p| {
            let xy = array(p, 2, "[x, y]")?;
            Ok((scalar_from_json(&xy[0])?, scalar_from_json(&xy[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    PwlFunction::new(space, nodes)
}

fn node_to_json<S: Scalar>(node: &MeasureNode<S>) -> Value {
    match node {
        MeasureNode::SimpleContains { lo, hi } => {
            json!({"kind": "simple", "D": [scalar_to_json(lo), scalar_to_json(hi)]})
        }
        MeasureNode::Dirac(x) => json!({"kind": "dirac", "x": scalar_to_json(x)}),
        MeasureNode::LebesgueOn { lo, hi } => {
            json!({"kind": "lebesgue", "I": [scalar_to_json(lo), scalar_to_json(hi)]})
        }
        MeasureNode::Combo(terms) => {
            let terms: Vec<Value> = terms.iter().map(|(c, n)| json!([scalar_to_json(c), node_to_json(n)])).collect();
            json!({"kind": "combo", "terms": terms})
        }
    }
}

pub fn dtm_to_json<S: Scalar>(mu: &Dtm<S>) -> Value {
    node_to_json(mu.node())
}

fn pair<S: Scalar>(v: &Value, key: &str) -> Result<(S, S)> {
    let ends = array(field(v, key)?, 2, "[lo, hi]")?;
    Ok((scalar_from_json(&ends[0])?, scalar_from_json(&ends[1])?))
}

/// `{"kind":"simple","D":[..]}`, `{"kind":"dirac","x":..}`,
/// `{"kind":"lebesgue","I":[..]}`, `{"kind":"combo","terms":[[c, {..}], ..]}`.
pub fn dtm_from_json<S: Scalar>(v: &Value, space: &Space<S>) -> Result<Dtm<S>> {
    let kind = field(v, "kind")?.as_str().ok_or_else(|| malformed("a measure kind", v))?;
    match kind {
        "simple" => {
            let (lo, hi) = pair(v, "D")?;
            Dtm::simple(space.clone(), lo, hi)
        }
        "dirac" => Dtm::dirac(space.clone(), scalar_from_json(field(v, "x")?)?),
        "lebesgue" => {
            let (lo, hi) = pair(v, "I")?;
            Dtm::lebesgue(space.clone(), lo, hi)
        }
        "combo" => {
            let raw = field(v, "terms")?.as_array().ok_or_else(|| malformed("a list of terms", v))?;
            let terms = raw
                .iter()
                .map(|t| {
                    let ct = array(t, 2, "[coefficient, measure]")?;
                    Ok((scalar_from_json(&ct[0])?, dtm_from_json(&ct[1], space)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Dtm::combo(space.clone(), terms)
        }
        other => Err(Error::InvalidMeasure(format!("unknown kind {other:?}"))),
    }
}

/// `{"atoms": [["loc", "mass"], ...], "density": [["lo", "hi", "value"], ...]}`.
pub fn boundary_measure_to_json<S: Scalar>(m: &BoundaryMeasure<S>) -> Value {
    let atoms: Vec<Value> = m.atoms().iter().map(|(x, c)| json!([scalar_to_json(x), scalar_to_json(c)])).collect();
    let density: Vec<Value> = m
        .density()
        .iter()
        .map(|(lo, hi, v)| json!([scalar_to_json(lo), scalar_to_json(hi), scalar_to_json(v)]))
        .collect();
    json!({ "atoms": atoms, "density": density })
}

pub fn boundary_measure_from_json<S: Scalar>(v: &Value) -> Result<BoundaryMeasure<S>> {
    let list = |key: &str| -> Result<Vec<Value>> {
        Ok(field(v, key)?.as_array().ok_or_else(|| malformed("a list", v))?.clone())
    };
    let atoms = list("atoms")?
        .iter()
        .map(|a| {
            let xy = array(a, 2, "[loc, mass]")?;
            Ok((scalar_from_json(&xy[0])?, scalar_from_json(&xy[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    let density = list("density")?
        .iter()
        .map(|d| {
            let t = array(d, 3, "[lo, hi, value]")?;
            Ok((scalar_from_json(&t[0])?, scalar_from_json(&t[1])?, scalar_from_json(&t[2])?))
        })
        .collect::<Result<Vec<_>>>()?;
    BoundaryMeasure::new(atoms, density)
}

/// Table of the four distribution functions at all breakpoints and segment
/// midpoints, header `t,L1,L2,R1,R2`.
pub fn bundle_csv<S: Scalar>(bundle: &DistributionBundle<S>) -> String {
    let mut out = String::from("t,L1,L2,R1,R2\n");
    for row in bundle.table() {
        let cells: Vec<String> = row.iter().map(Scalar::to_wire).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
