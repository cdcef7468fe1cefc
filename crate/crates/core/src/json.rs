//! JSON forms of the value types. Every number is an exact string such as
//! `"-3/2"`; documents produced by the CLI carry `"schema": 1`.

use serde_json::{json, Map, Value};

use crate::hwmod::{pbw_label, pbw_level, Quasipolynomial, VermaElem};
use crate::liealg::{DiffOp, SpanProbe};
use crate::scalars::Scalar;
use crate::tensor::{ProbeReport, TensorElem};
use crate::umod::{OmegaSpec, Poly};

pub const SCHEMA: u32 = 1;

/// `{"schema": 1, "command": .., "result": ..}`.
pub fn document(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "result": result })
}

pub fn scalar(s: &Scalar) -> Value {
    let monomials: Vec<Value> = s
        .terms()
        .map(|(m, c)| {
            let exps: Map<String, Value> = m.factors().map(|(v, e)| (v.name().to_string(), json!(e))).collect();
            json!({ "coeff": c.to_string(), "exps": exps })
        })
        .collect();
    json!({ "monomials": monomials, "text": s.to_string() })
}

pub fn diffop(op: &DiffOp) -> Value {
    let terms: Vec<Value> =
        op.terms().rev().map(|(b, c)| json!({ "m": b.m.to_vec(), "n": b.n.to_vec(), "coeff": scalar(c) })).collect();
    json!({
        "rank": op.rank(),
        "extended": op.ctx().is_central(),
        "terms": terms,
        "central": scalar(op.central_coeff()),
        "text": op.to_string(),
    })
}

pub fn poly(p: &Poly) -> Value {
    let monomials: Vec<Value> =
        p.terms().rev().map(|(e, c)| json!({ "exps": e.to_vec(), "coeff": scalar(c) })).collect();
    json!({ "nvars": p.nvars(), "monomials": monomials, "text": p.to_string() })
}

pub fn omega_spec(s: &OmegaSpec) -> Value {
    let mut v = json!({
        "family": s.family().to_string(),
        "rank": s.rank(),
        "lambda": s.lambda().iter().map(scalar).collect::<Vec<_>>(),
        "text": s.to_string(),
    });
    match s.beta_sign() {
        Some(sign) => {
            v["eps"] = json!(s.eps());
            v["beta_sign"] = json!(sign);
        }
        None => {
            v["alpha"] = scalar(s.alpha());
            v["beta"] = scalar(s.beta());
        }
    }
    v
}

/// `{spec, monomials}`.
pub fn poly_vec(spec: &OmegaSpec, p: &Poly) -> Value {
    let mut v = poly(p);
    v["spec"] = omega_spec(spec);
    v
}

pub fn quasipolynomial(q: &Quasipolynomial, c: Option<&Scalar>) -> Value {
    let terms: Vec<Value> = q.terms().iter().map(|(p, a)| json!({ "poly": poly(p), "exponent": scalar(a) })).collect();
    let mut v = json!({ "terms": terms, "text": q.to_string() });
    if let Some(c) = c {
        v["c"] = scalar(c);
    }
    v
}

pub fn verma(v: &VermaElem) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .iter()
        .map(|(p, c)| {
            let factors: Vec<Value> = p.iter().map(|&(j, n)| json!({ "m": -(j as i64), "n": n })).collect();
            json!({ "pbw": factors, "level": pbw_level(p), "label": pbw_label(p), "coeff": scalar(c) })
        })
        .collect();
    json!({ "terms": terms, "text": v.to_string() })
}

pub fn tensor(w: &TensorElem) -> Value {
    let mut keys: Vec<_> = w.terms().iter().collect();
    keys.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then_with(|| a.0 .1.cmp(&b.0 .1)));
    let terms: Vec<Value> =
        keys.into_iter().map(|((j, p), c)| json!({ "x": j, "pbw": pbw_label(p), "coeff": scalar(c) })).collect();
    json!({ "terms": terms, "text": w.to_string() })
}

pub fn probe_report(r: &ProbeReport, seed: Option<u64>) -> Value {
    let mut v = json!({
        "verdict": r.verdict.to_string(),
        "bounds": { "deg": r.bounds.degree, "m": r.bounds.m_max, "n": r.bounds.n_max },
        "space_dim": r.space_dim,
        "seeds_checked": r.seeds_checked,
        "seed": seed,
        "closure_dim": r.closure_dim,
    });
    if let Some(s) = &r.failing_seed {
        v["failing_seed"] = json!(s.to_string());
    }
    if let Some(w) = &r.witness {
        v["witness"] = json!(w.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    }
    v
}

pub fn span_probe(r: &SpanProbe) -> Value {
    let names = |bs: &[crate::liealg::Basis]| -> Vec<String> { bs.iter().map(basis_text).collect() };
    json!({
        "reached": names(&r.reached),
        "missing": names(&r.missing),
        "span_dim": r.span_dim,
        "central_reached": r.central_reached,
        "rounds": r.rounds,
        "saturated": r.saturated,
    })
}

pub(crate) fn basis_text(b: &crate::liealg::Basis) -> String {
    let l = b.label();
    if l.is_empty() {
        "1".into()
    } else {
        l
    }
}
