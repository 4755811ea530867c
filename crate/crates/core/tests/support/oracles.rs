//! Brute-force reference implementations, deliberately independent of the
//! library's own algorithms.
#![allow(dead_code)]

use ibn_core::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Warshall transitive closure with the reflexive diagonal.
pub fn reachability(g: &Graph) -> Vec<Vec<bool>> {
    let h = g.vertex_count();
    let mut r = vec![vec![false; h]; h];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for e in g.edges() {
        let s = g.vertex_index(e.source.as_str()).unwrap();
        let t = g.vertex_index(e.range.as_str()).unwrap();
        r[s][t] = true;
    }
    for k in 0..h {
        for i in 0..h {
            for j in 0..h {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn multiplicity(g: &Graph) -> Vec<Vec<u64>> {
    let h = g.vertex_count();
    let mut a = vec![vec![0u64; h]; h];
    for e in g.edges() {
        let s = g.vertex_index(e.source.as_str()).unwrap();
        let t = g.vertex_index(e.range.as_str()).unwrap();
        a[s][t] += 1;
    }
    a
}

/// Vertex cycles of `g` as vertex lists, each starting at its smallest
/// vertex index, found by trying every ordering of every vertex subset.
pub fn vertex_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn permute(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            permute(rest, prefix, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let h = g.vertex_count();
    let a = multiplicity(g);
    let mut cycles = Vec::new();
    for mask in 1u32..(1 << h) {
        let members: Vec<usize> = (0..h).filter(|&v| mask & (1 << v) != 0).collect();
        let first = members[0];
        let mut rest = members[1..].to_vec();
        let mut orders = Vec::new();
        permute(&mut rest, &mut vec![first], &mut orders);
        for order in orders {
            let closed = (0..order.len()).all(|i| a[order[i]][order[(i + 1) % order.len()]] > 0);
            if closed {
                cycles.push(order);
            }
        }
    }
    cycles
}

/// Number of edge-level simple cycles: each vertex cycle counted once per
/// choice of parallel edge along it.
pub fn simple_cycle_count(g: &Graph) -> u64 {
    let a = multiplicity(g);
    vertex_cycles(g)
        .iter()
        .map(|c| {
            (0..c.len())
                .map(|i| a[c[i]][c[(i + 1) % c.len()]])
                .product::<u64>()
        })
        .sum()
}

/// Whether two distinct edge-level cycles share a vertex, by pairwise comparison.
pub fn some_cycles_intersect(g: &Graph) -> bool {
    let a = multiplicity(g);
    let cycles = vertex_cycles(g);
    // A vertex cycle realized by two parallel-edge choices already gives two
    // distinct cycles through the same vertices.
    if cycles
        .iter()
        .any(|c| (0..c.len()).any(|i| a[c[i]][c[(i + 1) % c.len()]] > 1))
    {
        return true;
    }
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i].iter().any(|v| cycles[j].contains(v)) {
                return true;
            }
        }
    }
    false
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
