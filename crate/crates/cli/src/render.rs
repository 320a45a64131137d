//! Human and JSON renderings shared by the commands.

use leavitt_core::field::FieldVector;
use leavitt_core::linalg::{ElementOrder, K0Presentation};
use leavitt_core::{Graph, LieVerdict, Reason, Witness};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Integers that fit in an `i64` become JSON numbers, larger ones strings.
pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn tuple(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn field_vector(v: &FieldVector) -> Value {
    match v {
        FieldVector::Rational(_) => json!({ "characteristic": 0, "entries": v.entries() }),
        FieldVector::Modular { modulus, residues } => json!({
            "characteristic": modulus,
            "entries": residues.iter().map(|r| r.residue()).collect::<Vec<_>>(),
        }),
    }
}

pub fn order(o: &ElementOrder) -> Value {
    match o {
        ElementOrder::Finite(n) => int(n),
        ElementOrder::Infinite => json!("infinite"),
    }
}

pub fn witness(g: &Graph, w: &Witness) -> Value {
    let l = |v: &leavitt_core::VertexId| g.vertex_label(*v).to_string();
    let mut out = match w {
        Witness::UnreachedSink { from, sink } => {
            json!({ "kind": "unreached-sink", "from": l(from), "sink": l(sink) })
        }
        Witness::UnreachedCycleVertex { from, vertex } => {
            json!({ "kind": "unreached-cycle-vertex", "from": l(from), "vertex": l(vertex) })
        }
        Witness::CycleWithoutExit { cycle } => json!({
            "kind": "cycle-without-exit",
            "edges": cycle.edges.iter().map(|&e| g.edge(e).label.clone()).collect::<Vec<_>>(),
        }),
        Witness::NoCycle => json!({ "kind": "no-cycle" }),
    };
    out["description"] = json!(w.describe(g));
    out
}

pub fn witnesses(g: &Graph, ws: &[Witness]) -> Value {
    Value::Array(ws.iter().map(|w| witness(g, w)).collect())
}

fn reason(g: &Graph, r: &Reason) -> Value {
    let mut out = match r {
        Reason::AlgebraNotSimple { witnesses: ws } => {
            json!({ "kind": "algebra-not-simple", "witnesses": witnesses(g, ws) })
        }
        Reason::NotPurelyInfiniteSimple { witnesses: ws } => {
            json!({ "kind": "not-purely-infinite-simple", "witnesses": witnesses(g, ws) })
        }
        Reason::Commutative => json!({ "kind": "commutative" }),
        Reason::OnesInSpan { coefficients } => {
            json!({ "kind": "ones-in-span", "coefficients": field_vector(coefficients) })
        }
        Reason::OnesOutsideSpan { certificate } => json!({
            "kind": "ones-outside-span",
            "rank": certificate.rank,
            "augmented_rank": certificate.augmented_rank,
            "separator": field_vector(&certificate.separator),
        }),
        Reason::CharDividesSize { d } => json!({ "kind": "char-divides-size", "d": d }),
        Reason::ClosedForm {
            n,
            d,
            divides_n_minus_1,
            divides_d,
        } => json!({
            "kind": "closed-form",
            "n": n,
            "d": d,
            "divides_n_minus_1": divides_n_minus_1,
            "divides_d": divides_d,
        }),
        Reason::UnitClassOrder { order: o } => {
            json!({ "kind": "unit-class-order", "order": order(o) })
        }
        Reason::UnitClassDivisibility { p, divisible } => {
            json!({ "kind": "unit-class-divisibility", "p": p, "divisible": divisible })
        }
    };
    out["description"] = json!(r.describe(Some(g)));
    out
}

pub fn verdict(g: &Graph, v: &LieVerdict) -> Value {
    json!({
        "status": v.status.to_string(),
        "route": v.route.to_string(),
        "characteristic": v.field.characteristic(),
        "reason": reason(g, &v.reason),
    })
}

pub fn verdict_line(g: &Graph, v: &LieVerdict) -> String {
    format!(
        "{} [{} route] {}",
        v.status,
        v.route,
        v.reason.describe(Some(g))
    )
}

pub fn presentation(p: &K0Presentation) -> Value {
    json!({
        "group": p.group_string(),
        "invariant_factors": ints(&p.nontrivial_factors()),
        "unit_class": ints(&p.nontrivial_class()),
        "free_rank": p.free_rank(),
        "torsion_order": int(&p.torsion_order()),
    })
}

pub fn presentation_line(p: &K0Presentation) -> String {
    format!(
        "{}, unit class {}",
        p.group_string(),
        tuple(&p.nontrivial_class())
    )
}

pub fn graph_summary(g: &Graph) -> Value {
    let labels = |vs: Vec<leavitt_core::VertexId>| -> Vec<String> {
        vs.into_iter()
            .map(|v| g.vertex_label(v).to_string())
            .collect()
    };
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "sinks": labels(g.sinks()),
        "regular": labels(g.vertices().filter(|&v| g.is_regular(v)).collect()),
    })
}

pub fn graph_summary_line(g: &Graph) -> String {
    let names = |vs: Vec<leavitt_core::VertexId>| -> String {
        if vs.is_empty() {
            "none".to_string()
        } else {
            vs.into_iter()
                .map(|v| g.vertex_label(v).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    format!(
        "graph: {} vertices, {} edges; sinks: {}; regular: {}",
        g.vertex_count(),
        g.edge_count(),
        names(g.sinks()),
        names(g.vertices().filter(|&v| g.is_regular(v)).collect())
    )
}

pub fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}
