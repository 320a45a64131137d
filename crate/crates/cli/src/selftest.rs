//! Regression suite over the worked examples.

use leavitt_core::linalg::smith_normal_form;
use leavitt_core::{
    family, leavitt_closed_form, lie_simplicity, lie_simplicity_via_k0, matrix_lie_simplicity,
    parse_graph, Family, FieldSpec, Status,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::render::{emit, SCHEMA_VERSION};
use crate::{Common, EXIT_INCONSISTENT, EXIT_OK};

fn ch(c: u64) -> FieldSpec {
    FieldSpec::new(c).expect("fixed characteristics are valid")
}

fn fam(f: Family) -> leavitt_core::Graph {
    family(f).expect("fixed family parameters are valid")
}

fn want(simple: bool) -> Status {
    if simple {
        Status::Simple
    } else {
        Status::NotSimple
    }
}

fn checks() -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let e4 = fam(Family::Example4);
    let b: Vec<Vec<BigInt>> = [[0, 1, 0, 0], [1, -1, 0, 1], [0, 1, 0, 0], [0, 0, 1, -1]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    out.push(("four-vertex example: B-vectors", e4.b_vectors() == b));
    out.push((
        "four-vertex example: simple at 0, 2, 3, 5, 7, 11, 13",
        [0, 2, 3, 5, 7, 11, 13]
            .iter()
            .all(|&c| lie_simplicity(&e4, ch(c)).status == Status::Simple),
    ));
    let ps = fam(Family::PrimeSet(6));
    out.push((
        "prime_set(6): not simple exactly at 2 and 3",
        [0, 2, 3, 5, 7]
            .iter()
            .all(|&c| lie_simplicity(&ps, ch(c)).status == want(c != 2 && c != 3)),
    ));
    out.push((
        "rose(3) over char 0 is not simple",
        lie_simplicity(&fam(Family::Rose(3)), ch(0)).status == Status::NotSimple,
    ));
    let mut closed = true;
    for n in 2..=8u64 {
        for d in 1..=5u64 {
            for c in [0u64, 2, 3, 5, 7] {
                let w = want(c != 0 && (n - 1) % c == 0 && d % c != 0);
                let rose = fam(Family::Rose(n));
                closed &= leavitt_closed_form(n, d, ch(c)).map(|v| v.status) == Ok(w);
                closed &= matrix_lie_simplicity(&rose, d, ch(c)).map(|v| v.status) == Ok(w);
                if d >= 2 {
                    closed &= lie_simplicity(&fam(Family::MatrixRose { n, d }), ch(c)).status == w;
                }
            }
        }
    }
    out.push(("matrices over Leavitt algebras: closed form", closed));
    let mut tv = true;
    for u in [2u64, 3] {
        for v in [2u64, 3] {
            for p in [2u64, 3] {
                let g = fam(Family::TwoVertex { u, v, p });
                let diag = smith_normal_form(&g.m_matrix()).diagonal();
                tv &= diag == vec![BigInt::from(u), BigInt::from(p * u * (v - 1))];
                tv &= lie_simplicity(&g, ch(p)).status == Status::Simple;
                tv &= lie_simplicity_via_k0(&g, ch(p)).status == Status::Simple;
            }
        }
    }
    out.push(("two-vertex family: Smith form and verdict at p", tv));
    let point = parse_graph("vertex v").expect("fixed text parses");
    let sinks = parse_graph("vertex a\nvertex b").expect("fixed text parses");
    out.push((
        "gates: point not simple, rose(1) and two sinks inapplicable",
        lie_simplicity(&point, ch(0)).status == Status::NotSimple
            && lie_simplicity(&fam(Family::Rose(1)), ch(2)).status == Status::Inapplicable
            && lie_simplicity(&sinks, ch(3)).status == Status::Inapplicable,
    ));
    out.push((
        "line(d): simple iff char does not divide d",
        (2..=6u64).all(|d| {
            [0u64, 2, 3, 5, 7].iter().all(|&c| {
                lie_simplicity(&fam(Family::Line(d)), ch(c)).status == want(c == 0 || d % c != 0)
            })
        }),
    ));
    out
}

pub fn run(common: &Common) -> Result<u8, String> {
    let results = checks();
    let passed = results.iter().filter(|(_, ok)| *ok).count();
    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "selftest",
            "checks": results.iter().map(|(name, ok)| json!({ "name": name, "pass": ok })).collect::<Vec<_>>(),
            "passed": passed,
            "total": results.len(),
        }));
    } else {
        for (name, ok) in &results {
            println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        }
        println!("{passed}/{} checks passed", results.len());
    }
    Ok(if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    })
}
