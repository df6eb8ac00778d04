//! Report values and their text rendering. Both output formats are built
//! from the same `serde_json::Value`, so they carry identical data.

use serde_json::{json, Map, Value};

use crate::detector::{CRBound, FlatDimVerdict, LoewyBound, Outcome};
use crate::frobenius::{TorCell, TorProfile};
use crate::homological::{BettiTable, HomologyModule, ModulePresentation};
use crate::invariants::RingInvariants;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

pub fn matrix(m: &PolyMatrix) -> Value {
    json!(m.to_strings())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

pub fn presentation(m: &ModulePresentation) -> Value {
    json!({ "rank": m.rank(), "shifts": m.shifts(), "relations": matrix(m.relations()) })
}

pub fn ring(r: &QuotientRing, inv: &RingInvariants) -> Value {
    json!({
        "characteristic": r.characteristic(),
        "variables": r.ambient().vars(),
        "ideal": polys(r.ideal()),
        "groebner_basis": polys(r.ideal_basis()),
        "dim": inv.dim,
        "depth": inv.depth,
        "multiplicity": inv.multiplicity,
        "cohen_macaulay": inv.is_cohen_macaulay,
        "regular": inv.is_regular,
        "hilbert_numerator": inv.hilbert.numerator,
        "hilbert_offset": inv.hilbert.offset,
    })
}

/// One array per homological degree, of `[internal degree, count]` pairs.
pub fn betti(b: &BettiTable) -> Value {
    let rows: Vec<Value> = b.rows().into_iter().map(|(_, row)| json!(row.into_iter().map(|(j, c)| [j, c as i64]).collect::<Vec<_>>())).collect();
    json!({ "totals": b.totals(), "graded": rows })
}

pub fn tor_cell(c: &TorCell) -> Value {
    let mut m = Map::new();
    m.insert("i".into(), json!(c.i));
    m.insert("e".into(), json!(c.e));
    m.insert("zero".into(), json!(c.is_zero));
    if let Some(d) = c.k_dimension {
        m.insert("k_dimension".into(), json!(d));
    }
    if let Some(why) = &c.unavailable {
        m.insert("unavailable".into(), json!(why));
    }
    if c.is_zero == Some(false) {
        if let Some(p) = &c.presentation {
            m.insert("presentation".into(), presentation(p));
        }
        if let Some(z) = &c.cycles {
            m.insert("cycles".into(), matrix(z));
        }
        if let Some(d) = &c.incoming {
            m.insert("incoming".into(), matrix(d));
        }
        if let Some(d) = &c.outgoing {
            m.insert("outgoing".into(), matrix(d));
        }
    }
    Value::Object(m)
}

pub fn tor_profile(p: &TorProfile) -> Value {
    json!(p.cells().map(tor_cell).collect::<Vec<_>>())
}

pub fn homology_module(h: &HomologyModule) -> Value {
    json!({
        "degree": h.degree(),
        "zero": h.is_zero(),
        "k_dimension": h.k_dimension(),
        "generator_degrees": h.generator_degrees(),
        "cycles": matrix(h.cycles()),
        "presentation": presentation(h.presentation()),
    })
}

pub fn verdict(v: &FlatDimVerdict) -> Value {
    let mut m = Map::new();
    m.insert("outcome".into(), json!(v.outcome.kind()));
    match &v.outcome {
        Outcome::Finite { bound, certificate } => {
            m.insert("bound".into(), json!(bound));
            m.insert(
                "certificate".into(),
                json!({
                    "route": certificate.route.as_str(),
                    "cohen_macaulay": certificate.cohen_macaulay,
                    "e": certificate.e,
                    "window": certificate.window.map(|(a, b)| [a, b]),
                    "justification": certificate.justification,
                }),
            );
        }
        Outcome::Infinite { witness } => {
            let mut w = Map::new();
            w.insert("i".into(), json!(witness.i));
            w.insert("e".into(), json!(witness.e));
            if let Some(b) = witness.betti {
                w.insert("betti".into(), json!(b));
            }
            if let Some(c) = &witness.cell {
                w.insert("tor".into(), tor_cell(c));
            }
            m.insert("witness".into(), Value::Object(w));
        }
        Outcome::Inconclusive { reason } => {
            m.insert("reason".into(), json!(reason));
        }
    }
    if let Some(s) = v.s {
        m.insert("sup_homology".into(), json!(s));
    }
    if let (Some(t), Some(d)) = (v.t, v.window_length) {
        m.insert("window".into(), json!([t, t + d as i64]));
    }
    if !v.e_list.is_empty() {
        m.insert("e_list".into(), json!(v.e_list));
    }
    if let Some(e) = v.e_bound {
        m.insert("e_bound".into(), json!(e));
    }
    if let Some(d) = v.depth {
        m.insert("depth".into(), json!(d));
    }
    if let Some(b) = &v.betti {
        m.insert("betti".into(), betti(b));
    }
    if let Some(o) = &v.oracle {
        m.insert("oracle".into(), verdict(o));
    }
    Value::Object(m)
}

pub fn loewy_bound(b: &LoewyBound) -> Value {
    json!({
        "lower": b.lower,
        "upper": b.upper,
        "truncation": b.truncation,
        "exact": b.exact,
        "regular_sequence": b.regular_sequence,
        "justification": b.justification,
    })
}

pub fn cr_bound(c: &CRBound) -> Value {
    json!({
        "value": c.value,
        "route": c.route.as_str(),
        "witness": polys(&c.witness),
        "colength": c.colength,
        "tried": c.tried,
        "bounds": loewy_bound(&c.bounds),
    })
}

/// Builds the report skeleton shared by every command.
pub struct Report {
    root: Map<String, Value>,
}

impl Report {
    pub fn new(command: Value) -> Self {
        let mut root = Map::new();
        root.insert("command".into(), command);
        Report { root }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.root.insert(key.into(), v);
    }

    pub fn value(self) -> Value {
        Value::Object(self.root)
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline_array(items: &[Value]) -> Option<String> {
    let parts: Option<Vec<String>> = items.iter().map(|v| scalar(v).or_else(|| v.as_array().and_then(|a| inline_array(a)))).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

/// Rows of scalars, rendered as an aligned table.
fn table(items: &[Value]) -> Option<Vec<String>> {
    let rows: Option<Vec<Vec<String>>> = items.iter().map(|r| r.as_array().and_then(|r| r.iter().map(scalar).collect())).collect();
    let rows = rows?;
    if rows.is_empty() || rows.iter().all(Vec::is_empty) {
        return None;
    }
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..width).map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0)).collect();
    Some(
        rows.iter()
            .map(|r| r.iter().enumerate().map(|(j, s)| format!("{s:>w$}", w = col_w[j])).collect::<Vec<_>>().join("  ").trim_end().to_string())
            .collect(),
    )
}

fn render_object(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let key_w = m.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in m {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k:<key_w$}  {s}\n"));
            continue;
        }
        match v {
            Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
                out.push_str(&format!("{pad}{k:<key_w$}  {}\n", inline_array(items).unwrap()));
            }
            Value::Array(items) => {
                if let Some(rows) = table(items) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for r in rows {
                        out.push_str(&format!("{pad}  {r}\n"));
                    }
                } else if let Some(s) = inline_array(items) {
                    out.push_str(&format!("{pad}{k:<key_w$}  {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for (idx, item) in items.iter().enumerate() {
                        out.push_str(&format!("{pad}  [{idx}]\n"));
                        render_value(item, indent + 4, out);
                    }
                }
            }
            Value::Object(inner) if inner.is_empty() => out.push_str(&format!("{pad}{k:<key_w$}  {{}}\n")),
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_object(inner, indent + 2, out);
            }
            _ => unreachable!(),
        }
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(m) => render_object(m, indent, out),
        other => {
            let s = scalar(other).or_else(|| other.as_array().and_then(|a| inline_array(a))).unwrap_or_default();
            out.push_str(&format!("{}{s}\n", " ".repeat(indent)));
        }
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_value(v, 0, &mut out);
    out
}

pub fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}
