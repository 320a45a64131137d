//! Reachability, cycles, exits, and the graph conditions for simplicity and
//! purely infinite simplicity of the path algebra.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, VertexId};

/// `reaches(i, j)` iff some path of length ≥ 0 runs from `v_i` to `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityClosure {
    size: usize,
    grid: Vec<bool>,
}

impl ReachabilityClosure {
    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        self.grid[from.0 * self.size + to.0]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.grid
            .chunks(self.size.max(1))
            .map(<[bool]>::to_vec)
            .collect()
    }
}

/// Reflexive-transitive closure of the edge relation, one DFS per vertex.
pub fn reachability(g: &Graph) -> ReachabilityClosure {
    let m = g.vertex_count();
    let mut grid = vec![false; m * m];
    for start in g.vertices() {
        let row = &mut grid[start.0 * m..(start.0 + 1) * m];
        let mut stack = vec![start];
        row[start.0] = true;
        while let Some(v) = stack.pop() {
            for &e in g.out_edges(v) {
                let t = g.target(e);
                if !row[t.0] {
                    row[t.0] = true;
                    stack.push(t);
                }
            }
        }
    }
    ReachabilityClosure { size: m, grid }
}

fn cycle_vertices_with(g: &Graph, reach: &ReachabilityClosure) -> BTreeSet<VertexId> {
    // v lies on a cycle iff some edge v → w comes back: w reaches v.
    g.vertices()
        .filter(|&v| {
            g.out_edges(v)
                .iter()
                .any(|&e| reach.reaches(g.target(e), v))
        })
        .collect()
}

/// Vertices lying on at least one cycle.
pub fn cycle_vertices(g: &Graph) -> BTreeSet<VertexId> {
    cycle_vertices_with(g, &reachability(g))
}

/// A cycle given by its edges; `edges[k]` ends where `edges[k + 1]` starts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }
}

/// A cycle without an exit, if the graph has one.
///
/// Such a cycle lives entirely inside the subgraph of vertices of
/// out-degree exactly 1, where following the unique edge is a function;
/// any cycle of that function is a cycle of `g` with no exit and vice versa.
pub fn find_cycle_without_exit(g: &Graph) -> Option<Cycle> {
    let m = g.vertex_count();
    let next = |v: VertexId| -> Option<(EdgeId, VertexId)> {
        match g.out_edges(v) {
            [e] => Some((*e, g.target(*e))),
            _ => None,
        }
    };
    // 0 = unvisited, 1 = on current walk, 2 = finished
    let mut state = vec![0u8; m];
    for start in g.vertices() {
        if state[start.0] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            if state[v.0] == 2 {
                break;
            }
            if state[v.0] == 1 {
                let pos = walk.iter().position(|&(w, _)| w == v).expect("on walk");
                let cyc: Vec<(VertexId, EdgeId)> = walk[pos..].to_vec();
                // rotate to start at the smallest vertex index
                let k = (0..cyc.len()).min_by_key(|&i| cyc[i].0).expect("nonempty");
                let edges = cyc[k..].iter().chain(&cyc[..k]).map(|&(_, e)| e).collect();
                return Some(Cycle { edges });
            }
            match next(v) {
                Some((e, t)) => {
                    state[v.0] = 1;
                    walk.push((v, e));
                    v = t;
                }
                None => break,
            }
        }
        for &(w, _) in &walk {
            state[w.0] = 2;
        }
        state[v.0] = 2;
    }
    None
}

/// Why a graph condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `from` has no path to the sink `sink`.
    UnreachedSink {
        from: VertexId,
        sink: VertexId,
    },
    /// `from` has no path to `vertex`, which lies on a cycle.
    UnreachedCycleVertex {
        from: VertexId,
        vertex: VertexId,
    },
    CycleWithoutExit {
        cycle: Cycle,
    },
    /// The graph is acyclic.
    NoCycle,
}

impl Witness {
    pub fn describe(&self, g: &Graph) -> String {
        let l = |v: &VertexId| g.vertex_label(*v).to_string();
        match self {
            Witness::UnreachedSink { from, sink } => {
                format!("vertex {} does not reach sink {}", l(from), l(sink))
            }
            Witness::UnreachedCycleVertex { from, vertex } => {
                format!(
                    "vertex {} does not reach cycle vertex {}",
                    l(from),
                    l(vertex)
                )
            }
            Witness::CycleWithoutExit { cycle } => {
                let labels: Vec<&str> = cycle
                    .edges
                    .iter()
                    .map(|&e| g.edge(e).label.as_str())
                    .collect();
                format!("cycle {} has no exit", labels.join(" "))
            }
            Witness::NoCycle => "graph has no cycle".to_string(),
        }
    }
}

/// Verdict on a graph condition; `verdict` is false exactly when
/// `witnesses` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl SimplicityReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        SimplicityReport {
            verdict: witnesses.is_empty(),
            witnesses,
        }
    }
}

impl fmt::Display for SimplicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.verdict { "yes" } else { "no" })
    }
}

fn first_unreached(
    g: &Graph,
    reach: &ReachabilityClosure,
    targets: impl Iterator<Item = VertexId> + Clone,
    witness: impl Fn(VertexId, VertexId) -> Witness,
) -> Option<Witness> {
    g.vertices().find_map(|from| {
        targets
            .clone()
            .find(|&t| !reach.reaches(from, t))
            .map(|t| witness(from, t))
    })
}

/// Every vertex reaches every sink and every cycle, and every cycle has an
/// exit. The result does not depend on the coefficient field.
pub fn is_simple_lpa(g: &Graph) -> SimplicityReport {
    let reach = reachability(g);
    let cycles = cycle_vertices_with(g, &reach);
    let sinks = g.sinks();
    let mut w = Vec::new();
    w.extend(first_unreached(
        g,
        &reach,
        sinks.iter().copied(),
        |from, sink| Witness::UnreachedSink { from, sink },
    ));
    w.extend(first_unreached(
        g,
        &reach,
        cycles.iter().copied(),
        |from, vertex| Witness::UnreachedCycleVertex { from, vertex },
    ));
    w.extend(find_cycle_without_exit(g).map(|cycle| Witness::CycleWithoutExit { cycle }));
    SimplicityReport::from_witnesses(w)
}

/// Every vertex reaches every cycle, every cycle has an exit, and there is
/// at least one cycle.
pub fn is_purely_infinite_simple(g: &Graph) -> SimplicityReport {
    let reach = reachability(g);
    let cycles = cycle_vertices_with(g, &reach);
    let mut w = Vec::new();
    w.extend(first_unreached(
        g,
        &reach,
        cycles.iter().copied(),
        |from, vertex| Witness::UnreachedCycleVertex { from, vertex },
    ));
    w.extend(find_cycle_without_exit(g).map(|cycle| Witness::CycleWithoutExit { cycle }));
    if cycles.is_empty() {
        w.push(Witness::NoCycle);
    }
    SimplicityReport::from_witnesses(w)
}

/// One vertex and no edges: the only graph whose algebra is the field itself.
pub fn is_trivial_lpa(g: &Graph) -> bool {
    g.vertex_count() == 1 && g.edge_count() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, parse_graph, Family};

    fn fam(f: Family) -> Graph {
        family(f).unwrap()
    }

    #[test]
    fn line_reachability_is_upper_triangular() {
        let r = reachability(&fam(Family::Line(3)));
        assert_eq!(
            r.rows(),
            vec![
                vec![true, true, true],
                vec![false, true, true],
                vec![false, false, true]
            ]
        );
        assert_eq!(reachability(&fam(Family::Rose(1))).rows(), vec![vec![true]]);
        assert!(reachability(&fam(Family::Example4))
            .rows()
            .iter()
            .flatten()
            .all(|&b| b));
    }

    #[test]
    fn cycle_vertex_sets() {
        assert!(cycle_vertices(&fam(Family::Line(4))).is_empty());
        assert_eq!(cycle_vertices(&fam(Family::Example4)).len(), 4);
        let mr = cycle_vertices(&fam(Family::MatrixRose { n: 3, d: 4 }));
        assert_eq!(mr.into_iter().collect::<Vec<_>>(), vec![VertexId(1)]);
    }

    #[test]
    fn no_exit_cycles() {
        let c = find_cycle_without_exit(&fam(Family::Rose(1))).unwrap();
        assert_eq!(c.edges, vec![EdgeId(0)]);
        assert!(find_cycle_without_exit(&fam(Family::Rose(2))).is_none());
        assert!(find_cycle_without_exit(&fam(Family::Example4)).is_none());
        // a 3-cycle fed by a tail
        let g = parse_graph(
            "vertex t\nvertex a\nvertex b\nvertex c\nedge t b\nedge a b\nedge b c\nedge c a",
        )
        .unwrap();
        let c = find_cycle_without_exit(&g).unwrap();
        assert_eq!(c.vertices(&g), vec![VertexId(1), VertexId(2), VertexId(3)]);
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple_lpa(&fam(Family::Example4)).verdict);
        let r = is_simple_lpa(&fam(Family::Rose(1)));
        assert!(!r.verdict);
        assert!(matches!(r.witnesses[0], Witness::CycleWithoutExit { .. }));
        let two = parse_graph("vertex a\nvertex b").unwrap();
        let r = is_simple_lpa(&two);
        assert_eq!(
            r.witnesses,
            vec![Witness::UnreachedSink {
                from: VertexId(0),
                sink: VertexId(1)
            }]
        );
        assert!(is_simple_lpa(&fam(Family::Line(5))).verdict);
    }

    #[test]
    fn pis_examples() {
        assert!(is_purely_infinite_simple(&fam(Family::Example4)).verdict);
        let r = is_purely_infinite_simple(&fam(Family::Line(3)));
        assert_eq!(r.witnesses, vec![Witness::NoCycle]);
        for q in 1..10 {
            assert!(is_purely_infinite_simple(&fam(Family::PrimeSet(q))).verdict);
        }
    }

    #[test]
    fn triviality() {
        assert!(is_trivial_lpa(&parse_graph("vertex v").unwrap()));
        assert!(!is_trivial_lpa(&fam(Family::Rose(1))));
        assert!(!is_trivial_lpa(&fam(Family::Line(2))));
    }
}
