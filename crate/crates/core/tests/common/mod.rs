#![allow(dead_code)]

use leavitt_core::graph::from_adjacency;
use leavitt_core::{is_purely_infinite_simple, is_simple_lpa, Graph, IntMatrix};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("v{i}")).collect()
}

/// Random graph on `1..=max_vertices` vertices; each ordered pair gets an
/// edge multiplicity in `0..=max_mult`, nonzero with probability `density`.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_mult: u64, density: f64) -> Graph {
    let m = rng.gen_range(1..=max_vertices);
    let adj: Vec<Vec<u64>> = (0..m)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(1..=max_mult)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    from_adjacency(&labels(m), &adj).expect("valid adjacency")
}

/// Draws until a purely infinite simple graph turns up.
pub fn random_pis_graph(rng: &mut impl Rng, max_vertices: usize, max_mult: u64) -> Graph {
    loop {
        let density = rng.gen_range(0.3..0.9);
        let g = random_graph(rng, max_vertices, max_mult, density);
        if is_purely_infinite_simple(&g).verdict {
            return g;
        }
    }
}

/// Draws until a graph whose path algebra is simple (and not the field) turns up.
pub fn random_simple_graph(rng: &mut impl Rng, max_vertices: usize, max_mult: u64) -> Graph {
    loop {
        let density = rng.gen_range(0.2..0.8);
        let g = random_graph(rng, max_vertices, max_mult, density);
        if is_simple_lpa(&g).verdict && g.edge_count() > 0 {
            return g;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
