use std::collections::BTreeSet;

use leavitt_core::cohn::{verify_witness, CohnAlgebra, CohnElement};
use leavitt_core::field::{
    parse_rational, FieldVector, Gf, PrimeField, Rational, Rationals, Scalar,
};
use leavitt_core::linalg::{
    class_order, is_p_divisible, non_membership_certificate, smith_normal_form,
};
use leavitt_core::{
    is_purely_infinite_simple, is_simple_lpa, kp_consistency, lie, lie_simplicity,
    lie_simplicity_via_k0, serialize_graph, vertex_combination_in_commutator, Family, FieldSpec,
    Graph, Status,
};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::json;

use crate::input::load_graph;
use crate::render::{self, emit, SCHEMA_VERSION};
use crate::{Common, EXIT_INAPPLICABLE, EXIT_INCONSISTENT, EXIT_OK};

type CmdResult = Result<u8, String>;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(echo: &str, input: &str, chars: &[FieldSpec], common: &Common) -> CmdResult {
    let g = load_graph(input)?;
    let simple = is_simple_lpa(&g);
    let pis = is_purely_infinite_simple(&g);
    let b = g.b_vectors();

    let mut rows = Vec::new();
    let mut all_inapplicable = true;
    for &f in chars {
        let span = lie_simplicity(&g, f);
        all_inapplicable &= span.status == Status::Inapplicable;
        let k0 = pis.verdict.then(|| lie_simplicity_via_k0(&g, f));
        rows.push((f, span, k0));
    }

    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "graph": render::graph_summary(&g),
            "b_vectors": g.vertices().zip(&b).map(|(v, bv)| json!({
                "vertex": g.vertex_label(v),
                "b": render::ints(bv),
            })).collect::<Vec<_>>(),
            "simple_algebra": { "verdict": simple.verdict, "witnesses": render::witnesses(&g, &simple.witnesses) },
            "purely_infinite_simple": { "verdict": pis.verdict, "witnesses": render::witnesses(&g, &pis.witnesses) },
            "verdicts": rows.iter().map(|(f, span, k0)| {
                let mut row = json!({
                    "characteristic": f.characteristic(),
                    "span": render::verdict(&g, span),
                });
                if let Some(k0) = k0 {
                    row["k0"] = render::verdict(&g, k0);
                    row["routes_agree"] = json!(k0.status == span.status);
                }
                row
            }).collect::<Vec<_>>(),
        }));
    } else {
        println!("command: {echo}");
        println!("{}", render::graph_summary_line(&g));
        println!("B-vectors:");
        for (v, bv) in g.vertices().zip(&b) {
            println!("  B[{}] = {}", g.vertex_label(v), render::tuple(bv));
        }
        println!("simple path algebra: {}", yes_no(simple.verdict));
        for w in &simple.witnesses {
            println!("  witness: {}", w.describe(&g));
        }
        println!("purely infinite simple: {}", yes_no(pis.verdict));
        for w in &pis.witnesses {
            println!("  witness: {}", w.describe(&g));
        }
        println!("Lie algebra [L, L]:");
        for (f, span, k0) in &rows {
            println!("  char {}: {}", f, render::verdict_line(&g, span));
            if let Some(k0) = k0 {
                let flag = if k0.status == span.status {
                    "AGREE"
                } else {
                    "DISAGREE"
                };
                println!("  char {}: {} ({flag})", f, render::verdict_line(&g, k0));
            }
        }
    }
    Ok(if all_inapplicable && !chars.is_empty() {
        EXIT_INAPPLICABLE
    } else {
        EXIT_OK
    })
}

const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

pub fn k0(echo: &str, input: &str, extra: &[FieldSpec], common: &Common) -> CmdResult {
    let g = load_graph(input)?;
    let m = g.m_matrix();
    let snf = smith_normal_form(&m);
    let pres = lie::k0_presentation(&g);
    let order = class_order(&pres);
    let primes: BTreeSet<u64> = SMALL_PRIMES
        .iter()
        .copied()
        .chain(extra.iter().map(|f| f.characteristic()).filter(|&p| p != 0))
        .collect();
    let divisibility: Vec<(u64, bool)> = primes
        .iter()
        .map(|&p| (p, is_p_divisible(&pres, p)))
        .collect();

    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "graph": render::graph_summary(&g),
            "m_matrix": m.to_rows().iter().map(|r| render::ints(r)).collect::<Vec<_>>(),
            "smith_diagonal": render::ints(&snf.diagonal()),
            "k0": render::presentation(&pres),
            "unit_class_order": render::order(&order),
            "p_divisible": divisibility.iter().map(|(p, d)| json!({ "p": p, "divisible": d })).collect::<Vec<_>>(),
        }));
    } else {
        println!("command: {echo}");
        println!("{}", render::graph_summary_line(&g));
        println!("M_E = I - A^t = {m}");
        println!("Smith diagonal: {}", render::tuple(&snf.diagonal()));
        println!("K0 = {}", pres.group_string());
        println!(
            "invariant factors: {}",
            render::tuple(&pres.nontrivial_factors())
        );
        println!("unit class: {}", render::tuple(&pres.nontrivial_class()));
        println!("unit class order: {order}");
        for (p, d) in &divisibility {
            println!("  {p}-divisible: {}", yes_no(*d));
        }
    }
    Ok(EXIT_OK)
}

fn commutator_terms<S: Scalar>(g: &Graph, t: &[S]) -> Vec<(S, String)> {
    // −t_i · [e, e*] for every edge e leaving v_i
    let mut out = Vec::new();
    for v in g.vertices() {
        if t[v.0].is_zero() {
            continue;
        }
        for &e in g.out_edges(v) {
            let l = &g.edge(e).label;
            out.push((-t[v.0].clone(), format!("[{l}, {l}^*]")));
        }
    }
    out
}

struct WitnessOutput {
    t: FieldVector,
    terms: Vec<(String, String)>,
    commutator_sum: String,
    vertex_combination: String,
    n_correction: String,
    verified: bool,
}

fn run_witness<F: PrimeField>(
    g: &Graph,
    field: F,
    k: Vec<F::Scalar>,
    t: Vec<F::Scalar>,
    wrap: impl Fn(Vec<F::Scalar>) -> FieldVector,
) -> Result<WitnessOutput, String> {
    let alg = CohnAlgebra::new(g, field);
    let check = verify_witness(&alg, &k, &t).map_err(|e| e.to_string())?;
    let render = |x: &CohnElement<F::Scalar>| alg.render(x);
    Ok(WitnessOutput {
        terms: commutator_terms(g, &t)
            .into_iter()
            .map(|(c, s)| (c.to_string(), s))
            .collect(),
        commutator_sum: render(&check.commutator_sum),
        vertex_combination: render(&check.vertex_combination),
        n_correction: render(&check.n_correction),
        verified: check.verified,
        t: wrap(t),
    })
}

pub fn witness(
    echo: &str,
    input: &str,
    coeffs: &[String],
    field: FieldSpec,
    common: &Common,
) -> CmdResult {
    let g = load_graph(input)?;
    let k: Vec<Rational> = coeffs
        .iter()
        .map(|c| parse_rational(c).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if k.len() != g.vertex_count() {
        return Err(format!(
            "expected {} coefficients (one per vertex), got {}",
            g.vertex_count(),
            k.len()
        ));
    }
    let k_field = lie::coefficients_in(field, &k).map_err(|e| e.to_string())?;
    let t = vertex_combination_in_commutator(&g, &k, field).map_err(|e| e.to_string())?;

    let Some(t) = t else {
        return non_membership(echo, &g, &k_field, field, common);
    };
    let out = match (&k_field, t) {
        (FieldVector::Rational(k), FieldVector::Rational(t)) => {
            run_witness(&g, Rationals, k.clone(), t, FieldVector::Rational)?
        }
        (
            FieldVector::Modular {
                modulus,
                residues: k,
            },
            FieldVector::Modular { residues: t, .. },
        ) => {
            let gf = Gf::new(*modulus).map_err(|e| e.to_string())?;
            let modulus = *modulus;
            run_witness(&g, gf, k.clone(), t, move |residues| FieldVector::Modular {
                modulus,
                residues,
            })?
        }
        _ => return Err("field mismatch between coefficients and solution".to_string()),
    };
    let status = if out.verified { "VERIFIED" } else { "FAILED" };
    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "graph": render::graph_summary(&g),
            "characteristic": field.characteristic(),
            "k": render::field_vector(&k_field),
            "membership": true,
            "t": render::field_vector(&out.t),
            "commutator_expression": out.terms.iter().map(|(c, s)| json!({ "coefficient": c, "commutator": s })).collect::<Vec<_>>(),
            "commutator_sum": out.commutator_sum,
            "vertex_combination": out.vertex_combination,
            "n_correction": out.n_correction,
            "verification": status,
        }));
    } else {
        println!("command: {echo}");
        println!("{}", render::graph_summary_line(&g));
        println!("field: characteristic {field}");
        println!("k = {k_field}");
        println!("t = {}", out.t);
        let expr: Vec<String> = out
            .terms
            .iter()
            .map(|(c, s)| format!("{c} * {s}"))
            .collect();
        println!(
            "commutator expression: {}",
            if expr.is_empty() {
                "0".to_string()
            } else {
                expr.join(" + ")
            }
        );
        println!("  evaluates in the Cohn algebra to: {}", out.commutator_sum);
        println!("vertex combination: {}", out.vertex_combination);
        println!("N-correction (sum of t_i y_i): {}", out.n_correction);
        println!("verification: {status}");
    }
    Ok(if out.verified {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    })
}

fn non_membership(
    echo: &str,
    g: &Graph,
    k: &FieldVector,
    field: FieldSpec,
    common: &Common,
) -> CmdResult {
    // Clear denominators so the target is integral, then rescale the
    // separator so that y . k = 1 for the original k.
    let (target, den) = match k {
        FieldVector::Rational(v) => {
            let den = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            let t = v
                .iter()
                .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                .collect();
            (t, den)
        }
        FieldVector::Modular { residues, .. } => (
            residues
                .iter()
                .map(|r| r.residue().into())
                .collect::<Vec<BigInt>>(),
            BigInt::from(1),
        ),
    };
    let mut cert = non_membership_certificate(field, &g.b_vectors(), &target)
        .map_err(|e| e.to_string())?
        .ok_or("inconsistent membership test")?;
    if let FieldVector::Rational(y) = &mut cert.separator {
        for x in y.iter_mut() {
            *x = x.clone() * Rational::from_integer(den.clone());
        }
    }
    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "graph": render::graph_summary(g),
            "characteristic": field.characteristic(),
            "k": render::field_vector(k),
            "membership": false,
            "certificate": {
                "rank": cert.rank,
                "augmented_rank": cert.augmented_rank,
                "separator": render::field_vector(&cert.separator),
            },
        }));
    } else {
        println!("command: {echo}");
        println!("{}", render::graph_summary_line(g));
        println!("field: characteristic {field}");
        println!("k = {k}");
        println!(
            "k is not in the span of the B-vectors, so the combination is not a sum of commutators"
        );
        println!("  rank of B-vectors: {}", cert.rank);
        println!("  rank with k adjoined: {}", cert.augmented_rank);
        println!("  separator y (y . B_i = 0, y . k = 1): {}", cert.separator);
    }
    Ok(EXIT_INAPPLICABLE)
}

pub fn family(name: &str, params: &[u64]) -> CmdResult {
    let fam = Family::from_parts(name, params).map_err(|e| e.to_string())?;
    let g = leavitt_core::family(fam).map_err(|e| e.to_string())?;
    print!("# {fam}\n{}", serialize_graph(&g));
    Ok(EXIT_OK)
}

pub fn kp_check(
    echo: &str,
    first: &str,
    second: &str,
    chars: &[FieldSpec],
    max_group_order: u64,
    common: &Common,
) -> CmdResult {
    let a = load_graph(first)?;
    let b = load_graph(second)?;
    let rep = kp_consistency(&a, &b, chars, max_group_order);
    let iso = match rep.pointed_iso {
        Some(p) => p.to_string(),
        None => "inapplicable".to_string(),
    };
    if common.json {
        emit(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": echo,
            "first": {
                "graph": render::graph_summary(&a),
                "k0": render::presentation(&rep.first),
                "purely_infinite_simple": rep.first_pis_witnesses.is_empty(),
                "witnesses": render::witnesses(&a, &rep.first_pis_witnesses),
            },
            "second": {
                "graph": render::graph_summary(&b),
                "k0": render::presentation(&rep.second),
                "purely_infinite_simple": rep.second_pis_witnesses.is_empty(),
                "witnesses": render::witnesses(&b, &rep.second_pis_witnesses),
            },
            "max_group_order": max_group_order,
            "pointed_iso": iso,
            "verdicts": rep.rows.iter().map(|r| json!({
                "characteristic": r.field.characteristic(),
                "first": render::verdict(&a, &r.first),
                "second": render::verdict(&b, &r.second),
                "agree": r.agree(),
            })).collect::<Vec<_>>(),
            "contradiction": rep.contradiction,
        }));
    } else {
        println!("command: {echo}");
        println!("first:  K0 = {}", render::presentation_line(&rep.first));
        for w in &rep.first_pis_witnesses {
            println!("  not purely infinite simple: {}", w.describe(&a));
        }
        println!("second: K0 = {}", render::presentation_line(&rep.second));
        for w in &rep.second_pis_witnesses {
            println!("  not purely infinite simple: {}", w.describe(&b));
        }
        println!("pointed-iso: {iso} (torsion search bound {max_group_order})");
        for r in &rep.rows {
            println!(
                "  char {}: {} / {} ({})",
                r.field,
                r.first.status,
                r.second.status,
                if r.agree() { "agree" } else { "differ" }
            );
        }
        if rep.contradiction {
            println!("CONTRADICTION: pointed K0 groups are isomorphic but verdicts differ");
        }
    }
    Ok(if rep.contradiction {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    })
}
