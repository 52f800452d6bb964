//! The JSON document format and the reports emitted by the CLI.
//!
//! A data document is canonical when: points are sorted by location
//! (numeric coordinates ascending, then named labels, "inf" last), table
//! entries by (γ, ℓ, p), all fractions are reduced with γ ∈ [0,1), zero
//! multiplicities are absent, and "delta" is present exactly when
//! `delta_valid` is true.  The serializer always emits canonical form with
//! two-space indentation, LF line endings and a trailing newline, so
//! serialize ∘ parse ∘ serialize = serialize.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde_json::{json, Map, Value};

use crate::angle::parse_canonical;
use crate::error::{Error, Result};
use crate::invariants::{FiniteLabel, HodgeTable, ModuleData, PointLocation};
use crate::katz::{KatzChain, StepAction};
use crate::oracle::VerifyReport;

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

/// Parses a data document, with field-path diagnostics on every error.
pub fn parse_data(text: &str) -> Result<ModuleData> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
    let obj = as_object(&value, "document")?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "points" | "h" | "delta" | "delta_valid") {
            return Err(Error::Parse(format!("unknown document key '{key}'")));
        }
    }

    let points_value = obj
        .get("points")
        .ok_or_else(|| Error::Parse("missing 'points'".into()))?;
    let Some(points_list) = points_value.as_array() else {
        return Err(Error::Parse("'points' must be an array".into()));
    };
    let mut points: BTreeMap<PointLocation, HodgeTable> = BTreeMap::new();
    for (i, pv) in points_list.iter().enumerate() {
        let ctx = format!("points[{i}]");
        let pobj = as_object(pv, &ctx)?;
        for key in pobj.keys() {
            if !matches!(key.as_str(), "location" | "nu") {
                return Err(Error::Parse(format!("{ctx}: unknown key '{key}'")));
            }
        }
        let loc_str = pobj
            .get("location")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("{ctx}.location must be a string")))?;
        let location = parse_location(loc_str)
            .map_err(|e| Error::Parse(format!("{ctx}.location: {e}")))?;
        if points.contains_key(&location) {
            return Err(Error::Parse(format!(
                "{ctx}.location: duplicate point '{location}'"
            )));
        }
        let nu = pobj
            .get("nu")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("{ctx}.nu must be an array")))?;
        let mut table = HodgeTable::new();
        let mut seen = std::collections::BTreeSet::new();
        for (j, ev) in nu.iter().enumerate() {
            let ectx = format!("{ctx}.nu[{j}]");
            let eobj = as_object(ev, &ectx)?;
            for key in eobj.keys() {
                if !matches!(key.as_str(), "gamma" | "ell" | "p" | "mult") {
                    return Err(Error::Parse(format!("{ectx}: unknown key '{key}'")));
                }
            }
            let gamma_str = eobj
                .get("gamma")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("{ectx}.gamma must be a string")))?;
            let gamma = parse_canonical(gamma_str)
                .map_err(|e| Error::Parse(format!("{ectx}.gamma: {e}")))?;
            let ell = eobj
                .get("ell")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("{ectx}.ell must be a nonnegative integer")))?;
            let ell = u32::try_from(ell)
                .map_err(|_| Error::Parse(format!("{ectx}.ell out of range")))?;
            let p = eobj
                .get("p")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse(format!("{ectx}.p must be an integer")))?;
            let p = i32::try_from(p).map_err(|_| Error::Parse(format!("{ectx}.p out of range")))?;
            let mult = eobj
                .get("mult")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse(format!("{ectx}.mult must be an integer")))?;
            if mult < 0 {
                return Err(Error::Parse(format!(
                    "{ectx}.mult: negative multiplicity {mult}"
                )));
            }
            if !seen.insert((gamma, ell, p)) {
                return Err(Error::Parse(format!(
                    "{ectx}: duplicate entry (gamma={gamma}, ell={ell}, p={p})"
                )));
            }
            table.add(gamma, ell, p, mult as u64);
        }
        points.insert(location, table);
    }

    let h = parse_degree_map(obj, "h")?
        .into_iter()
        .map(|(p, v)| {
            if v < 0 {
                Err(Error::Parse(format!("h[{p}]: negative value {v}")))
            } else {
                Ok((p, v as u64))
            }
        })
        .collect::<Result<BTreeMap<i32, u64>>>()?;
    let delta_valid = obj
        .get("delta_valid")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Parse("missing or non-boolean 'delta_valid'".into()))?;
    let delta = if obj.contains_key("delta") && delta_valid {
        parse_degree_map(obj, "delta")?
    } else {
        BTreeMap::new()
    };

    ModuleData::new(points, h, delta, delta_valid)
        .map_err(|e| Error::Parse(format!("invalid module data: {e}")))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{ctx} must be an object")))
}

fn parse_degree_map(obj: &Map<String, Value>, key: &str) -> Result<BTreeMap<i32, i64>> {
    let Some(v) = obj.get(key) else {
        if key == "h" {
            return Err(Error::Parse("missing 'h'".into()));
        }
        return Ok(BTreeMap::new());
    };
    let map = as_object(v, key)?;
    let mut out = BTreeMap::new();
    for (k, val) in map {
        let p: i32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("{key}: key '{k}' is not an integer")))?;
        let value = val
            .as_i64()
            .ok_or_else(|| Error::Parse(format!("{key}[{k}] must be an integer")))?;
        if out.insert(p, value).is_some() {
            return Err(Error::Parse(format!("{key}: duplicate key '{k}'")));
        }
    }
    Ok(out)
}

/// Parses a location token: "inf", an integer, a fraction a/b, or a
/// decimal; numeric forms are normalized to exact rationals so that equal
/// coordinates collide regardless of spelling.
pub fn parse_location(s: &str) -> Result<PointLocation> {
    let s = s.trim();
    if s == "inf" {
        return Ok(PointLocation::Infinity);
    }
    if s.is_empty() {
        return Err(Error::Parse("empty location".into()));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(PointLocation::Finite(FiniteLabel::Coordinate(
            Ratio::from_integer(n),
        )));
    }
    if let Some((a, b)) = s.split_once('/') {
        if let (Ok(a), Ok(b)) = (a.trim().parse::<i64>(), b.trim().parse::<i64>()) {
            if b == 0 {
                return Err(Error::Parse(format!("zero denominator in location '{s}'")));
            }
            return Ok(PointLocation::Finite(FiniteLabel::Coordinate(Ratio::new(
                a, b,
            ))));
        }
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        if let (Ok(i), Ok(f)) = (int.parse::<i64>(), frac.parse::<u64>()) {
            let scale = 10i64.pow(frac.len() as u32);
            let frac_part = Ratio::new(f as i64, scale);
            let value = if neg {
                Ratio::from_integer(i) - frac_part
            } else {
                Ratio::from_integer(i) + frac_part
            };
            return Ok(PointLocation::Finite(FiniteLabel::Coordinate(value)));
        }
    }
    // opaque label; only distinctness matters
    Ok(PointLocation::Finite(FiniteLabel::Name(s.to_string())))
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

fn degree_map_json<T: Copy + Into<Value>>(map: &BTreeMap<i32, T>) -> Value {
    let mut out = Map::new();
    for (p, v) in map {
        out.insert(p.to_string(), (*v).into());
    }
    Value::Object(out)
}

fn data_json(data: &ModuleData) -> Value {
    let mut points = Vec::new();
    for (loc, table) in data.points() {
        let nu: Vec<Value> = table
            .iter()
            .map(|((g, ell, p), m)| {
                json!({
                    "gamma": g.to_string(),
                    "ell": ell,
                    "p": p,
                    "mult": m,
                })
            })
            .collect();
        points.push(json!({
            "location": loc.to_string(),
            "nu": nu,
        }));
    }
    let mut doc = Map::new();
    doc.insert("points".into(), Value::Array(points));
    doc.insert("h".into(), degree_map_json(data.h()));
    if data.delta_valid() {
        doc.insert("delta".into(), degree_map_json(data.delta()));
    }
    doc.insert("delta_valid".into(), json!(data.delta_valid()));
    Value::Object(doc)
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    s.push('\n');
    s
}

/// Canonical document text for the data.
pub fn serialize_data(data: &ModuleData) -> String {
    render(&data_json(data))
}

/// The data with every Hodge index shifted so the smallest populated p is
/// zero (the filtration is defined up to a shift; this is the presentation
/// convenience only).
pub fn anchor_p(data: &ModuleData) -> ModuleData {
    let Some(min_p) = data.h().keys().next().copied() else {
        return data.clone();
    };
    if min_p == 0 {
        return data.clone();
    }
    let shift = -min_p;
    let points = data
        .points()
        .iter()
        .map(|(loc, t)| (loc.clone(), t.shift_p(shift)))
        .collect();
    let h = data.h().iter().map(|(p, m)| (p + shift, *m)).collect();
    let delta = data.delta().iter().map(|(p, d)| (p + shift, *d)).collect();
    ModuleData::new(points, h, delta, data.delta_valid())
        .expect("anchoring preserves validity")
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// Report of the `check` command: rank consistency everywhere, plus
/// nonnegativity of the H¹ package when the degrees are available.
pub fn check_report(data: &ModuleData) -> (Value, bool) {
    let violations = data.check_rank_consistency();
    let rank_entries: Vec<Value> = violations
        .iter()
        .map(|v| {
            json!({
                "location": v.location.to_string(),
                "p": v.p,
                "table_total": v.table_total,
                "expected": v.expected,
            })
        })
        .collect();
    let mut h1_entries = Vec::new();
    if data.delta_valid() && violations.is_empty() {
        if let Err(e) = data.h1_affine_map().and_then(|_| data.h1_min_map()) {
            h1_entries.push(json!(e.to_string()));
        }
    }
    let clean = rank_entries.is_empty() && h1_entries.is_empty();
    let report = json!({
        "status": if clean { "clean" } else { "violations" },
        "rank": data.rank(),
        "rank_consistency": rank_entries,
        "h1": h1_entries,
    });
    (report, clean)
}

/// Chain document: rank trace, per-step parameters and the h/δ snapshots
/// (δ only where valid), plus the full final data.
pub fn chain_json(chain: &KatzChain) -> Value {
    let steps: Vec<Value> = chain
        .steps()
        .iter()
        .map(|step| {
            let mut obj = Map::new();
            match &step.action {
                StepAction::Twist(tw) => {
                    obj.insert("action".into(), json!("twist"));
                    let mut exps = Map::new();
                    for (label, e) in tw.exponents() {
                        exps.insert(label.to_string(), json!(e.to_string()));
                    }
                    obj.insert("exponents".into(), Value::Object(exps));
                }
                StepAction::Convolve(g0) => {
                    obj.insert("action".into(), json!("convolve"));
                    obj.insert("gamma0".into(), json!(g0.gamma0().to_string()));
                }
            }
            obj.insert("rank".into(), json!(step.after.rank()));
            obj.insert("h".into(), degree_map_json(step.after.h()));
            if step.after.delta_valid() {
                obj.insert("delta".into(), degree_map_json(step.after.delta()));
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "rank_trace": chain.rank_trace(),
        "initial": data_json(chain.initial()),
        "steps": steps,
        "final": data_json(chain.final_data()),
    })
}

pub fn serialize_chain(chain: &KatzChain) -> String {
    render(&chain_json(chain))
}

/// Verification report document.
pub fn verify_json(report: &VerifyReport) -> Value {
    let stages: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "stage": e.stage,
                "description": e.description,
                "rank": e.rank,
                "mismatches": e.mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "clean": report.is_clean(),
        "stages": stages,
        "downgraded": report.downgraded,
    })
}

pub fn serialize_verify(report: &VerifyReport) -> String {
    render(&verify_json(report))
}

pub fn serialize_check(data: &ModuleData) -> (String, bool) {
    let (v, clean) = check_report(data);
    (render(&v), clean)
}
