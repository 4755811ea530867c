//! Graph families for exhaustive and randomized checking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, EdgeId, Graph, VertexId};

fn vertex_names(h: usize) -> Vec<VertexId> {
    (1..=h)
        .map(|i| VertexId::new(format!("v{i}")).expect("valid name"))
        .collect()
}

/// Graph on `v1..vh` with `mult[i*h + j]` parallel edges from `v(i+1)` to `v(j+1)`.
pub fn from_multiplicities(h: usize, mult: &[usize]) -> Graph {
    assert_eq!(mult.len(), h * h);
    let vs = vertex_names(h);
    let mut edges = Vec::new();
    for i in 0..h {
        for j in 0..h {
            for k in 1..=mult[i * h + j] {
                edges.push(Edge::new(
                    EdgeId::new(format!("{}__{}__{k}", vs[i], vs[j])).expect("valid name"),
                    vs[i].clone(),
                    vs[j].clone(),
                ));
            }
        }
    }
    Graph::new(vs, edges).expect("generated graph is valid")
}

/// Every graph with `1..=max_vertices` vertices and at most `max_parallel`
/// edges per ordered pair of vertices (loops included), labelled, without
/// identifying isomorphic copies.
pub fn exhaustive(max_vertices: usize, max_parallel: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for h in 1..=max_vertices {
        let slots = h * h;
        let mut mult = vec![0usize; slots];
        loop {
            out.push(from_multiplicities(h, &mult));
            // Odometer increment.
            let mut i = 0;
            while i < slots && mult[i] == max_parallel {
                mult[i] = 0;
                i += 1;
            }
            if i == slots {
                break;
            }
            mult[i] += 1;
        }
    }
    out
}

/// `count` seeded random graphs with `1..=max_vertices` vertices and
/// `0..=max_edges` edges with uniformly chosen endpoints.
pub fn random(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = rng.gen_range(1..=max_vertices);
            let m = rng.gen_range(0..=max_edges);
            let vs = vertex_names(h);
            let edges = (1..=m)
                .map(|k| {
                    Edge::new(
                        EdgeId::new(format!("e{k}")).expect("valid name"),
                        vs[rng.gen_range(0..h)].clone(),
                        vs[rng.gen_range(0..h)].clone(),
                    )
                })
                .collect();
            Graph::new(vs, edges).expect("generated graph is valid")
        })
        .collect()
}
