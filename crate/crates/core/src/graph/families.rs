use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphBuilder, VertexId};
use crate::error::GraphError;

/// Named graph families. Vertices are labelled `v1, v2, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// One vertex with `n` loops; its algebra is the Leavitt algebra `L(n)`.
    Rose(u64),
    /// `v1 → v2 → … → vd`.
    Line(u64),
    /// `v1 → v2` with `d − 1` parallel edges and `n` loops at `v2`;
    /// its algebra is `M_d(L(n))`.
    MatrixRose { n: u64, d: u64 },
    /// The four-vertex example graph with `q + 1` loops at `v4`.
    PrimeSet(u64),
    /// Two vertices: `puv + 1` loops at `v1`, `u` edges `v1 → v2`,
    /// `pu` edges `v2 → v1`, `1 + u` loops at `v2`.
    TwoVertex { u: u64, v: u64, p: u64 },
    /// The four-vertex graph with loops at `v1`, `v3`, the 2-cycle
    /// `v1 ⇄ v2` and the 3-cycle `v2 → v4 → v3 → v2`.
    Example4,
}

impl Family {
    pub const NAMES: [&'static str; 6] = [
        "rose",
        "line",
        "matrix_rose",
        "prime_set",
        "two_vertex",
        "example4",
    ];

    /// Parses a family name and its integer parameters.
    pub fn from_parts(name: &str, params: &[u64]) -> Result<Family, GraphError> {
        let arity = |k: usize| -> Result<(), GraphError> {
            if params.len() == k {
                Ok(())
            } else {
                Err(GraphError::FamilyParameter {
                    family: name.to_string(),
                    message: format!("expected {k} parameter(s), got {}", params.len()),
                })
            }
        };
        let fam = match name {
            "rose" => {
                arity(1)?;
                Family::Rose(params[0])
            }
            "line" => {
                arity(1)?;
                Family::Line(params[0])
            }
            "matrix_rose" => {
                arity(2)?;
                Family::MatrixRose {
                    n: params[0],
                    d: params[1],
                }
            }
            "prime_set" => {
                arity(1)?;
                Family::PrimeSet(params[0])
            }
            "two_vertex" => {
                arity(3)?;
                Family::TwoVertex {
                    u: params[0],
                    v: params[1],
                    p: params[2],
                }
            }
            "example4" => {
                arity(0)?;
                Family::Example4
            }
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Rose(_) => "rose",
            Family::Line(_) => "line",
            Family::MatrixRose { .. } => "matrix_rose",
            Family::PrimeSet(_) => "prime_set",
            Family::TwoVertex { .. } => "two_vertex",
            Family::Example4 => "example4",
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let fail = |message: &str| {
            Err(GraphError::FamilyParameter {
                family: self.name().to_string(),
                message: message.to_string(),
            })
        };
        match *self {
            Family::Rose(n) if n < 1 => fail("n must be at least 1"),
            Family::Line(d) if d < 1 => fail("d must be at least 1"),
            Family::MatrixRose { n, d } if n < 2 || d < 2 => fail("n and d must be at least 2"),
            Family::PrimeSet(q) if q < 1 => fail("q must be at least 1"),
            Family::TwoVertex { u, v, p } if u < 2 || v < 2 || p < 2 => {
                fail("u, v and p must be at least 2")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Rose(n) => write!(f, "rose({n})"),
            Family::Line(d) => write!(f, "line({d})"),
            Family::MatrixRose { n, d } => write!(f, "matrix_rose({n},{d})"),
            Family::PrimeSet(q) => write!(f, "prime_set({q})"),
            Family::TwoVertex { u, v, p } => write!(f, "two_vertex({u},{v},{p})"),
            Family::Example4 => write!(f, "example4"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    /// Accepts `name` or `name(a,b,…)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))?;
                (name, inner)
            }
            None => (s, ""),
        };
        let params = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| {
                a.trim()
                    .parse::<u64>()
                    .map_err(|_| GraphError::FamilyParameter {
                        family: name.to_string(),
                        message: format!("bad parameter {a:?}"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Family::from_parts(name, &params)
    }
}

fn vertices(b: &mut GraphBuilder, m: u64) -> Vec<VertexId> {
    (1..=m)
        .map(|i| b.add_vertex(&format!("v{i}")).expect("fresh labels"))
        .collect()
}

fn to_count(k: u64, family: &Family) -> Result<usize, GraphError> {
    usize::try_from(k).map_err(|_| GraphError::FamilyParameter {
        family: family.name().to_string(),
        message: "edge count too large".to_string(),
    })
}

/// Instantiates a family as a concrete graph with deterministic labels.
pub fn family(fam: Family) -> Result<Graph, GraphError> {
    fam.validate()?;
    let mut b = GraphBuilder::new();
    let c = |k: u64| to_count(k, &fam);
    match fam {
        Family::Rose(n) => {
            let v = vertices(&mut b, 1);
            b.add_edges(v[0], v[0], c(n)?)?;
        }
        Family::Line(d) => {
            let v = vertices(&mut b, d);
            for w in v.windows(2) {
                b.add_edges(w[0], w[1], 1)?;
            }
        }
        Family::MatrixRose { n, d } => {
            let v = vertices(&mut b, 2);
            b.add_edges(v[0], v[1], c(d - 1)?)?;
            b.add_edges(v[1], v[1], c(n)?)?;
        }
        Family::PrimeSet(_) | Family::Example4 => {
            let v = vertices(&mut b, 4);
            b.add_edges(v[0], v[0], 1)?;
            b.add_edges(v[0], v[1], 1)?;
            b.add_edges(v[1], v[0], 1)?;
            b.add_edges(v[1], v[3], 1)?;
            b.add_edges(v[2], v[2], 1)?;
            b.add_edges(v[2], v[1], 1)?;
            b.add_edges(v[3], v[2], 1)?;
            if let Family::PrimeSet(q) = fam {
                let loops = q
                    .checked_add(1)
                    .ok_or_else(|| GraphError::FamilyParameter {
                        family: fam.name().to_string(),
                        message: "q too large".to_string(),
                    })?;
                b.add_edges(v[3], v[3], c(loops)?)?;
            }
        }
        Family::TwoVertex { u, v: vv, p } => {
            let overflow = || GraphError::FamilyParameter {
                family: fam.name().to_string(),
                message: "parameters too large".to_string(),
            };
            let puv1 = p
                .checked_mul(u)
                .and_then(|x| x.checked_mul(vv))
                .and_then(|x| x.checked_add(1))
                .ok_or_else(overflow)?;
            let pu = p.checked_mul(u).ok_or_else(overflow)?;
            let v = vertices(&mut b, 2);
            b.add_edges(v[0], v[0], c(puv1)?)?;
            b.add_edges(v[0], v[1], c(u)?)?;
            b.add_edges(v[1], v[0], c(pu)?)?;
            b.add_edges(v[1], v[1], c(u + 1)?)?;
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_rose_shape() {
        let g = family(Family::from_parts("matrix_rose", &[3, 2]).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.out_degree(VertexId(0)), 1);
        assert_eq!(g.target(g.out_edges(VertexId(0))[0]), VertexId(1));
        assert!(g
            .out_edges(VertexId(1))
            .iter()
            .all(|&e| g.target(e) == VertexId(1)));
    }

    #[test]
    fn prime_set_loops() {
        let g = family(Family::PrimeSet(6)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let loops = g
            .out_edges(VertexId(3))
            .iter()
            .filter(|&&e| g.target(e) == VertexId(3))
            .count();
        assert_eq!(loops, 7);
        let b4: Vec<i64> = g.b_vectors()[3]
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(b4, vec![0, 0, 1, 6]);
    }

    #[test]
    fn rose_one() {
        let g = family(Family::Rose(1)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
    }

    #[test]
    fn out_of_range() {
        assert!(Family::from_parts("rose", &[0]).is_err());
        assert!(Family::from_parts("matrix_rose", &[1, 2]).is_err());
        assert!(Family::from_parts("two_vertex", &[2, 2, 1]).is_err());
        assert!(Family::from_parts("example4", &[1]).is_err());
        assert!(matches!(
            Family::from_parts("petal", &[]),
            Err(GraphError::UnknownFamily(_))
        ));
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "rose(4)",
            "line(3)",
            "matrix_rose(3,2)",
            "prime_set(6)",
            "two_vertex(2,3,5)",
            "example4",
        ] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
    }
}
