//! Simple cycles, their exits, and strongly connected components.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

/// A closed path visiting no vertex twice, stored as edge indices.
///
/// Cycles produced by [`enumerate_simple_cycles`] start at the vertex with the
/// smallest canonical position. Parallel loops are distinct cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: Vec<usize>,
}

impl Cycle {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices visited, starting at the base vertex.
    pub fn vertices(&self, g: &Graph) -> Vec<usize> {
        self.edges.iter().map(|&e| g.source_of(e)).collect()
    }

    pub fn edge_ids(&self, g: &Graph) -> Vec<EdgeId> {
        self.edges.iter().map(|&e| g.edge(e).id.clone()).collect()
    }

    /// Parses and validates an edge sequence, rotating it to canonical form.
    pub fn from_edge_ids<S: AsRef<str>>(g: &Graph, ids: &[S]) -> Result<Self> {
        let edges = ids
            .iter()
            .map(|id| g.require_edge(id.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        validate(g, &edges)?;
        Ok(Self {
            edges: canonical_rotation(g, edges),
        })
    }
}

fn validate(g: &Graph, edges: &[usize]) -> Result<()> {
    if edges.is_empty() {
        return Err(Error::NotACycle("empty edge sequence".into()));
    }
    let n = edges.len();
    for i in 0..n {
        let (e, next) = (edges[i], edges[(i + 1) % n]);
        if g.range_of(e) != g.source_of(next) {
            return Err(Error::NotACycle(format!(
                "`{}` does not end where `{}` starts",
                g.edge(e).id,
                g.edge(next).id
            )));
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    for &e in edges {
        let v = g.source_of(e);
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotACycle(format!(
                "vertex `{}` is revisited",
                g.vertex(v)
            )));
        }
    }
    Ok(())
}

fn canonical_rotation(g: &Graph, mut edges: Vec<usize>) -> Vec<usize> {
    let pos = g.canonical_order().positions();
    if let Some(start) = (0..edges.len()).min_by_key(|&i| pos[g.source_of(edges[i])]) {
        edges.rotate_left(start);
    }
    edges
}

/// Every simple cycle of `g`, each once up to rotation.
///
/// Cycles are grouped by base vertex in canonical order; within a group they
/// appear in depth-first order following edge order. The search is
/// exponential in the worst case, which is fine for the small graphs this
/// library targets.
pub fn enumerate_simple_cycles(g: &Graph) -> Vec<Cycle> {
    let canon = g.canonical_order();
    let pos = canon.positions();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::new();
    for &start in &canon.order {
        on_path[start] = true;
        extend_from(g, &pos, start, start, &mut on_path, &mut path, &mut cycles);
        on_path[start] = false;
    }
    cycles
}

fn extend_from(
    g: &Graph,
    pos: &[usize],
    start: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    for &e in g.out_edges(at) {
        let w = g.range_of(e);
        if w == start {
            let mut edges = path.clone();
            edges.push(e);
            out.push(Cycle { edges });
        } else if pos[w] > pos[start] && !on_path[w] {
            on_path[w] = true;
            path.push(e);
            extend_from(g, pos, start, w, on_path, path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CycleProperties {
    /// Some vertex on the cycle emits an edge that is not part of it.
    pub has_exit: bool,
    /// Every vertex on the cycle receives exactly one edge.
    pub is_source_cycle: bool,
}

pub fn cycle_properties(g: &Graph, c: &Cycle) -> Result<CycleProperties> {
    validate(g, &c.edges)?;
    let vertices = c.vertices(g);
    // Each vertex of a simple cycle emits exactly one cycle edge.
    let has_exit = vertices.iter().any(|&v| g.out_degree(v) > 1);
    let is_source_cycle = vertices.iter().all(|&v| g.in_degree(v) == 1);
    Ok(CycleProperties {
        has_exit,
        is_source_cycle,
    })
}

/// Strongly connected components, each sorted, listed by smallest member.
pub fn strongly_connected_components(g: &Graph) -> Vec<Vec<usize>> {
    // Iterative Tarjan.
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut child)) = work.last_mut() {
            if let Some(&e) = g.out_edges(v).get(*child) {
                *child += 1;
                let w = g.range_of(e);
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}
