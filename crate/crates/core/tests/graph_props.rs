mod common;

use std::collections::BTreeSet;

use common::{random_graph, random_pis_graph, rng};
use leavitt_core::analysis::{cycle_vertices, find_cycle_without_exit, reachability};
use leavitt_core::{
    is_purely_infinite_simple, is_simple_lpa, lie_simplicity, lie_simplicity_via_k0, parse_graph,
    serialize_graph, FieldSpec, Graph, Status, VertexId, Witness,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Warshall closure on the adjacency relation.
fn closure(g: &Graph) -> Vec<Vec<bool>> {
    let m = g.vertex_count();
    let mut r = vec![vec![false; m]; m];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for e in g.edges() {
        r[e.source.0][e.target.0] = true;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Every cycle (closed path with pairwise distinct sources) as a vertex list.
fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn dfs(g: &Graph, start: usize, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for &e in g.out_edges(VertexId(v)) {
            let t = g.target(e).0;
            if t == start {
                out.push(path.clone());
            } else if t > start && !path.contains(&t) {
                path.push(t);
                dfs(g, start, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        dfs(g, s, s, &mut vec![s], &mut out);
    }
    out
}

struct Oracle {
    simple: bool,
    pis: bool,
    cycle_vertices: BTreeSet<usize>,
    has_exitless_cycle: bool,
}

fn oracle(g: &Graph) -> Oracle {
    let m = g.vertex_count();
    let r = closure(g);
    let cycles = all_cycles(g);
    let cycle_vertices: BTreeSet<usize> = cycles.iter().flatten().copied().collect();
    let has_exitless_cycle = cycles
        .iter()
        .any(|c| c.iter().all(|&v| g.out_degree(VertexId(v)) == 1));
    let sinks: Vec<usize> = (0..m).filter(|&v| g.out_degree(VertexId(v)) == 0).collect();
    let reach_all = |targets: &mut dyn Iterator<Item = usize>| {
        let ts: Vec<usize> = targets.collect();
        (0..m).all(|i| ts.iter().all(|&t| r[i][t]))
    };
    let reaches_sinks = reach_all(&mut sinks.iter().copied());
    let reaches_cycles = reach_all(&mut cycle_vertices.iter().copied());
    Oracle {
        simple: reaches_sinks && reaches_cycles && !has_exitless_cycle,
        pis: reaches_cycles && !has_exitless_cycle && !cycles.is_empty(),
        cycle_vertices,
        has_exitless_cycle,
    }
}

fn check_witness(g: &Graph, w: &Witness) {
    let r = closure(g);
    match w {
        Witness::UnreachedSink { from, sink } => {
            assert!(g.is_sink(*sink));
            assert!(!r[from.0][sink.0]);
        }
        Witness::UnreachedCycleVertex { from, vertex } => {
            assert!(cycle_vertices(g).contains(vertex));
            assert!(!r[from.0][vertex.0]);
        }
        Witness::CycleWithoutExit { cycle } => {
            let vs = cycle.vertices(g);
            for (k, &e) in cycle.edges.iter().enumerate() {
                let next = cycle.edges[(k + 1) % cycle.edges.len()];
                assert_eq!(g.target(e), g.source(next));
                assert_eq!(g.out_degree(g.source(e)), 1);
            }
            let distinct: BTreeSet<_> = vs.iter().collect();
            assert_eq!(distinct.len(), vs.len());
        }
        Witness::NoCycle => assert!(cycle_vertices(g).is_empty()),
    }
}

#[test]
fn analysis_matches_brute_force() {
    let mut r = rng(1);
    for _ in 0..600 {
        let density = r.gen_range(0.1..0.7);
        let g = random_graph(&mut r, 6, 3, density);
        let o = oracle(&g);
        let simple = is_simple_lpa(&g);
        let pis = is_purely_infinite_simple(&g);
        assert_eq!(simple.verdict, o.simple, "{}", serialize_graph(&g));
        assert_eq!(pis.verdict, o.pis, "{}", serialize_graph(&g));
        assert_eq!(simple.verdict, simple.witnesses.is_empty());
        assert_eq!(pis.verdict, pis.witnesses.is_empty());
        let cv: BTreeSet<usize> = cycle_vertices(&g).into_iter().map(|v| v.0).collect();
        assert_eq!(cv, o.cycle_vertices);
        assert_eq!(find_cycle_without_exit(&g).is_some(), o.has_exitless_cycle);
        for w in simple.witnesses.iter().chain(&pis.witnesses) {
            check_witness(&g, w);
        }
        let rc = reachability(&g);
        assert_eq!(rc.rows(), closure(&g));
        // purely infinite simple graphs have no sinks and are simple
        if pis.verdict {
            assert!(g.sinks().is_empty());
            assert!(simple.verdict);
        }
    }
}

#[test]
fn serialize_parse_roundtrip() {
    let mut r = rng(2);
    for _ in 0..300 {
        let g = random_graph(&mut r, 6, 3, 0.5);
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(serialize_graph(&back), text);
    }
}

#[test]
fn named_edges_roundtrip() {
    let text = "vertex a\nvertex b\nedge a b 2\nedge-label e b a\nedge a b\nedge-label a_b_9 a a\n";
    let g = parse_graph(text).unwrap();
    let out = serialize_graph(&g);
    assert_eq!(parse_graph(&out).unwrap(), g);
}

fn permuted(g: &Graph, r: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(r);
    g.permute_vertices(&order)
}

#[test]
fn verdicts_ignore_vertex_order() {
    let mut r = rng(3);
    let fields: Vec<FieldSpec> = [0, 2, 3, 5, 7].map(|c| FieldSpec::new(c).unwrap()).to_vec();
    for _ in 0..300 {
        let density = r.gen_range(0.2..0.8);
        let g = random_graph(&mut r, 6, 3, density);
        let h = permuted(&g, &mut r);
        assert_eq!(is_simple_lpa(&g).verdict, is_simple_lpa(&h).verdict);
        assert_eq!(
            is_purely_infinite_simple(&g).verdict,
            is_purely_infinite_simple(&h).verdict
        );
        for &f in &fields {
            assert_eq!(lie_simplicity(&g, f).status, lie_simplicity(&h, f).status);
            assert_eq!(
                lie_simplicity_via_k0(&g, f).status,
                lie_simplicity_via_k0(&h, f).status
            );
        }
    }
}

#[test]
fn routes_agree_on_random_pis_graphs() {
    let mut r = rng(4);
    for _ in 0..300 {
        let g = random_pis_graph(&mut r, 6, 3);
        for c in [0u64, 2, 3, 5, 7, 11] {
            let f = FieldSpec::new(c).unwrap();
            let a = lie_simplicity(&g, f).status;
            let b = lie_simplicity_via_k0(&g, f).status;
            assert_ne!(a, Status::Inapplicable);
            assert_eq!(a, b, "char {c}\n{}", serialize_graph(&g));
        }
    }
}

#[test]
fn verdicts_depend_only_on_characteristic() {
    // same result whether the characteristic is given as a number or parsed
    let mut r = rng(6);
    for _ in 0..100 {
        let g = random_graph(&mut r, 5, 2, 0.5);
        for c in [2u64, 3, 5] {
            let a = lie_simplicity(&g, FieldSpec::Prime(c));
            let b = lie_simplicity(&g, c.to_string().parse().unwrap());
            assert_eq!(a, b);
        }
    }
}
