//! Graph constructions that preserve the Leavitt path algebra up to
//! isomorphism or Morita equivalence: source elimination, heads, stars, edge
//! subdivision, hereditary collapse, the Cohn cover, and the reduction of a
//! graph to an isomorphic source-free one.
//!
//! New vertices and edges get deterministic names derived from the operation
//! and an ordinal (`v0_h1`, `e0_d2`, ...). A suffix `_2`, `_3`, ... is added
//! if such a name is already taken.

use std::collections::HashSet;

use crate::cycles::strongly_connected_components;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, VertexId};

struct Names {
    taken: HashSet<String>,
}

impl Names {
    fn of(g: &Graph) -> Self {
        let taken = g
            .vertices()
            .iter()
            .map(|v| v.to_string())
            .chain(g.edges().iter().map(|e| e.id.to_string()))
            .collect();
        Self { taken }
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 2;
        while self.taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        self.taken.insert(name.clone());
        name
    }

    fn vertex(&mut self, base: &str) -> VertexId {
        VertexId::new(self.fresh(base)).expect("generated names are tokens")
    }

    fn edge(&mut self, base: &str) -> EdgeId {
        EdgeId::new(self.fresh(base)).expect("generated names are tokens")
    }
}

fn check_count(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::BadCount(n))
    } else {
        Ok(())
    }
}

/// Removes a source and every edge it emits.
pub fn source_eliminate(g: &Graph, v: &str) -> Result<Graph> {
    let i = g.require_vertex(v)?;
    if !g.is_source(i) {
        return Err(Error::NotASource(v.to_string()));
    }
    if g.vertex_count() == 1 {
        return Err(Error::WouldEmptyGraph(v.to_string()));
    }
    let mut keep = vec![true; g.vertex_count()];
    keep[i] = false;
    Ok(g.induced(&keep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationReport {
    /// The source-free form, or a single edgeless vertex when eliminations
    /// would otherwise empty the graph.
    pub result: Graph,
    /// Eliminated sources in order.
    pub eliminated: Vec<VertexId>,
    /// Whether any graph in the sequence, the input and result included,
    /// has an isolated vertex.
    pub isolated_seen: bool,
    /// The first isolated vertex seen and the number of eliminations
    /// performed before it appeared.
    pub first_isolated: Option<(usize, VertexId)>,
}

/// Eliminates sources, smallest canonical position first, until none remain.
pub fn source_free_form(g: &Graph) -> Result<EliminationReport> {
    source_free_form_by(g, |_, sources| sources[0])
}

/// As [`source_free_form`], letting `pick` choose which of the current
/// sources (given in canonical order) to eliminate next.
pub fn source_free_form_by<F>(g: &Graph, mut pick: F) -> Result<EliminationReport>
where
    F: FnMut(&Graph, &[usize]) -> usize,
{
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut current = g.clone();
    let mut eliminated = Vec::new();
    let mut first_isolated = None;
    loop {
        if first_isolated.is_none() {
            if let Some(v) = (0..current.vertex_count()).find(|&v| current.is_isolated(v)) {
                first_isolated = Some((eliminated.len(), current.vertex(v).clone()));
            }
        }
        let sources: Vec<usize> = current
            .canonical_order()
            .order
            .into_iter()
            .filter(|&v| current.is_source(v))
            .collect();
        if sources.is_empty() || current.vertex_count() == 1 {
            break;
        }
        let v = pick(&current, &sources);
        assert!(sources.contains(&v), "picked vertex is not a source");
        let name = current.vertex(v).clone();
        current = source_eliminate(&current, name.as_str())?;
        eliminated.push(name);
    }
    Ok(EliminationReport {
        result: current,
        eliminated,
        isolated_seen: first_isolated.is_some(),
        first_isolated,
    })
}

/// The Cohn cover: a sink copy `v_c` of every regular vertex `v`, and for
/// every edge `e` into a regular vertex a copy `e_c` from `s(e)` to `r(e)_c`.
pub fn cohn_cover(g: &Graph) -> Graph {
    let mut names = Names::of(g);
    let mut vertices = g.vertices().to_vec();
    let mut copy = vec![None; g.vertex_count()];
    for v in g.regular_vertices() {
        let c = names.vertex(&format!("{}_c", g.vertex(v)));
        vertices.push(c.clone());
        copy[v] = Some(c);
    }
    let mut edges = g.edges().to_vec();
    for (e, edge) in g.edges().iter().enumerate() {
        if let Some(target) = &copy[g.range_of(e)] {
            edges.push(Edge::new(
                names.edge(&format!("{}_c", edge.id)),
                edge.source.clone(),
                target.clone(),
            ));
        }
    }
    Graph::new(vertices, edges).expect("cohn cover of a valid graph is valid")
}

/// Adds a head of length `n` ending at `v0`: `v_n → … → v_1 → v0`.
pub fn attach_head(g: &Graph, v0: &str, n: u64) -> Result<Graph> {
    let root = g.vertex(g.require_vertex(v0)?).clone();
    check_count(n)?;
    let mut names = Names::of(g);
    let mut vertices = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    let mut prev = root;
    for i in 1..=n {
        let v = names.vertex(&format!("{v0}_h{i}"));
        let e = names.edge(&format!("{v0}_he{i}"));
        vertices.push(v.clone());
        edges.push(Edge::new(e, v.clone(), prev));
        prev = v;
    }
    Ok(Graph::new(vertices, edges).expect("head attachment is valid"))
}

/// Adds `n` new sources, each with a single edge into `v0`.
pub fn attach_star(g: &Graph, v0: &str, n: u64) -> Result<Graph> {
    let root = g.vertex(g.require_vertex(v0)?).clone();
    check_count(n)?;
    let mut names = Names::of(g);
    let mut vertices = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    for i in 1..=n {
        let v = names.vertex(&format!("{v0}_s{i}"));
        let e = names.edge(&format!("{v0}_se{i}"));
        vertices.push(v.clone());
        edges.push(Edge::new(e, v, root.clone()));
    }
    Ok(Graph::new(vertices, edges).expect("star attachment is valid"))
}

/// Replaces `e0` by a path `s(e0) → v_n → … → v_1 → r(e0)`.
pub fn subdivide_edge(g: &Graph, e0: &str, n: u64) -> Result<Graph> {
    let idx = g.require_edge(e0)?;
    check_count(n)?;
    let old = g.edge(idx).clone();
    let mut names = Names::of(g);
    let mut vertices = g.vertices().to_vec();
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, e)| e.clone())
        .collect();
    let new_vertices: Vec<VertexId> = (1..=n)
        .map(|i| names.vertex(&format!("{e0}_d{i}")))
        .collect();
    vertices.extend(new_vertices.iter().cloned());
    // e_1: v_1 → r(e0); e_i: v_i → v_{i−1}; e_{n+1}: s(e0) → v_n.
    for i in 1..=n as usize {
        let target = if i == 1 {
            old.range.clone()
        } else {
            new_vertices[i - 2].clone()
        };
        edges.push(Edge::new(
            names.edge(&format!("{e0}_s{i}")),
            new_vertices[i - 1].clone(),
            target,
        ));
    }
    edges.push(Edge::new(
        names.edge(&format!("{e0}_s{}", n + 1)),
        old.source,
        new_vertices[n as usize - 1].clone(),
    ));
    Ok(Graph::new(vertices, edges).expect("subdivision is valid"))
}

/// A collapsed graph together with the sources created for crossing paths.
struct Collapse {
    graph: Graph,
    /// `(source, target)` for each crossing path, target named in `graph`.
    sources: Vec<(VertexId, VertexId)>,
}

/// Paths `e_1 … e_n` whose last edge enters `members` and whose earlier
/// edges all stay outside it. Ordered by last edge, then depth-first by
/// extension edges in edge order.
fn crossing_paths(g: &Graph, members: &[bool]) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, members: &[bool], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut p = path.clone();
        p.reverse();
        out.push(p);
        let head = g.source_of(*path.last().expect("nonempty path"));
        for &f in g.in_edges(head) {
            if !members[g.source_of(f)] {
                path.push(f);
                extend(g, members, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if !members[g.source_of(e)] && members[g.range_of(e)] {
            extend(g, members, &mut vec![e], &mut out);
        }
    }
    out
}

fn collapse(g: &Graph, members: &[bool]) -> Result<Collapse> {
    if !members.iter().any(|&m| m) {
        return Err(Error::EmptyGraph);
    }
    if let Some((from, to)) = g.hereditary_violation(members) {
        return Err(Error::NotHereditary {
            from: g.vertex(from).to_string(),
            to: g.vertex(to).to_string(),
        });
    }
    let outside: Vec<bool> = members.iter().map(|&m| !m).collect();
    let rest = g.induced(&outside);
    for comp in strongly_connected_components(&rest) {
        let v = comp[0];
        if comp.len() > 1 || rest.edge_multiplicity(v, v) > 0 {
            return Err(Error::ComplementHasCycle(rest.vertex(v).to_string()));
        }
    }

    let base = g.induced(members);
    let mut names = Names::of(&base);
    let mut vertices = base.vertices().to_vec();
    let mut edges = base.edges().to_vec();
    let mut sources = Vec::new();
    for path in crossing_paths(g, members) {
        let label: Vec<&str> = path.iter().map(|&e| g.edge(e).id.as_str()).collect();
        let label = label.join("__");
        let v = names.vertex(&label);
        let e = names.edge(&format!("{label}_bar"));
        let target = g
            .vertex(g.range_of(*path.last().expect("nonempty path")))
            .clone();
        vertices.push(v.clone());
        edges.push(Edge::new(e, v.clone(), target.clone()));
        sources.push((v, target));
    }
    Ok(Collapse {
        graph: Graph::new(vertices, edges).expect("collapse is valid"),
        sources,
    })
}

/// Keeps the hereditary set `set` with the edges it emits, and adds one new
/// source per path that enters `set` from outside, with a single edge to the
/// path's range. Sources are named by the path's edge ids joined with `__`.
///
/// The part of the graph outside `set` must be acyclic, which keeps the
/// number of such paths finite.
pub fn hereditary_collapse<S: AsRef<str>>(g: &Graph, set: &[S]) -> Result<Graph> {
    let members = g.vertex_set(set)?;
    Ok(collapse(g, &members)?.graph)
}

/// A source-free graph with an isomorphic Leavitt path algebra, when no
/// isolated vertex appears during source elimination; `None` otherwise.
///
/// Collapses onto the vertices of the source-free form, reads each group of
/// new sources at a vertex `v0` as a star, trades it for a head of the same
/// length, and absorbs the head by subdividing the first edge into `v0`.
pub fn source_free_equivalent(g: &Graph) -> Result<Option<Graph>> {
    let report = source_free_form(g)?;
    if report.isolated_seen {
        return Ok(None);
    }
    let members = g.vertex_set(report.result.vertices())?;
    let Collapse { graph, sources } = collapse(g, &members)?;

    let mut targets: Vec<VertexId> = Vec::new();
    for (_, t) in &sources {
        if !targets.contains(t) {
            targets.push(t.clone());
        }
    }
    let mut current = graph;
    for target in targets {
        let star: Vec<usize> = sources
            .iter()
            .filter(|(_, t)| *t == target)
            .map(|(s, _)| {
                current
                    .vertex_index(s.as_str())
                    .expect("star source present")
            })
            .collect();
        let n = star.len() as u64;
        let mut keep = vec![true; current.vertex_count()];
        for &s in &star {
            keep[s] = false;
        }
        let base = current.induced(&keep);
        let v0 = base.vertex_index(target.as_str()).expect("target kept");
        let e0 = *base
            .in_edges(v0)
            .first()
            .expect("every vertex of a source-free graph receives an edge");
        let e0 = base.edge(e0).id.clone();
        current = subdivide_edge(&base, e0.as_str(), n)?;
    }
    debug_assert!(!current.has_sources());
    Ok(Some(current))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn names(g: &Graph) -> Vec<&str> {
        g.vertices().iter().map(VertexId::as_str).collect()
    }

    fn edge_triples(g: &Graph) -> Vec<(String, String, String)> {
        g.edges()
            .iter()
            .map(|e| (e.id.to_string(), e.source.to_string(), e.range.to_string()))
            .collect()
    }

    #[test]
    fn eliminate_single_source() {
        assert_eq!(
            source_eliminate(&fed_path(), "v0").unwrap(),
            double_loop_path()
        );
        let a2 = source_eliminate(&path(3), "v1").unwrap();
        assert_eq!(names(&a2), ["v2", "v3"]);
        assert_eq!(a2.edge_count(), 1);
        assert_eq!(
            source_eliminate(&loops_chain(), "v2"),
            Err(Error::NotASource("v2".into()))
        );
        assert_eq!(
            source_eliminate(&triv(), "v"),
            Err(Error::WouldEmptyGraph("v".into()))
        );
    }

    #[test]
    fn source_free_forms() {
        let r = source_free_form(&fed_path()).unwrap();
        assert_eq!(r.result, double_loop_path());
        assert_eq!(r.eliminated, [VertexId::new("v0").unwrap()]);
        assert!(!r.isolated_seen);

        let r = source_free_form(&path(3)).unwrap();
        assert_eq!(names(&r.result), ["v3"]);
        assert_eq!(r.result.edge_count(), 0);
        assert_eq!(r.eliminated.len(), 2);
        assert!(r.isolated_seen);
        assert_eq!(r.first_isolated, Some((2, VertexId::new("v3").unwrap())));

        let r = source_free_form(&rose(2)).unwrap();
        assert_eq!(
            (r.result, r.eliminated.len(), r.isolated_seen),
            (rose(2), 0, false)
        );
    }

    #[test]
    fn cohn_covers() {
        let g = cohn_cover(&rose(2));
        assert_eq!(names(&g), ["v", "v_c"]);
        assert_eq!(
            edge_triples(&g)[2..],
            [
                ("l1_c".into(), "v".into(), "v_c".into()),
                ("l2_c".into(), "v".into(), "v_c".into())
            ]
        );
        assert_eq!(cohn_cover(&triv()), triv());

        let g = cohn_cover(&loops_chain());
        assert_eq!(names(&g), ["v1", "v2", "v3", "v1_c", "v2_c"]);
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn heads_and_stars() {
        let g = attach_head(&loop_exit(), "v0", 2).unwrap();
        assert_eq!(names(&g), ["v0", "v", "v0_h1", "v0_h2"]);
        assert_eq!(
            edge_triples(&g)[2..],
            [
                ("v0_he1".into(), "v0_h1".into(), "v0".into()),
                ("v0_he2".into(), "v0_h2".into(), "v0_h1".into())
            ]
        );

        let g = attach_head(&triv(), "v", 3).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(source_free_form(&g).unwrap().eliminated.len(), 3);

        let s = attach_star(&triv(), "v", 3).unwrap();
        assert_eq!(s.in_degree(0), 3);
        assert!((1..4).all(|v| s.is_source(v)));

        let h = attach_head(&loops_chain(), "v2", 1).unwrap();
        let s = attach_star(&loops_chain(), "v2", 1).unwrap();
        assert_eq!(h.vertex_count(), s.vertex_count());
        assert_eq!(
            h.edges().last().unwrap().range,
            s.edges().last().unwrap().range
        );

        assert_eq!(
            attach_head(&loops_chain(), "x", 1),
            Err(Error::UnknownVertex("x".into()))
        );
        assert_eq!(
            attach_star(&loops_chain(), "v1", 0),
            Err(Error::BadCount(0))
        );
    }

    #[test]
    fn subdivisions() {
        let g = subdivide_edge(&loop_exit(), "e0", 2).unwrap();
        assert_eq!(names(&g), ["v0", "v", "e0_d1", "e0_d2"]);
        assert_eq!(
            edge_triples(&g),
            [
                ("e".into(), "v0".into(), "v".into()),
                ("e0_s1".into(), "e0_d1".into(), "v0".into()),
                ("e0_s2".into(), "e0_d2".into(), "e0_d1".into()),
                ("e0_s3".into(), "v0".into(), "e0_d2".into()),
            ]
        );

        let g = subdivide_edge(&rose(1), "l1", 1).unwrap();
        assert!(!g.has_sources());
        assert_eq!(g.vertex_count(), 2);

        let g = subdivide_edge(&path(2), "p1", 1).unwrap();
        assert_eq!(source_free_form(&g).unwrap().eliminated.len(), 2);

        assert_eq!(
            subdivide_edge(&loops_chain(), "zz", 1),
            Err(Error::UnknownEdge("zz".into()))
        );
        assert_eq!(
            subdivide_edge(&loops_chain(), "e", 0),
            Err(Error::BadCount(0))
        );
    }

    #[test]
    fn collapse_of_worked_example() {
        let g = hereditary_collapse(&tree_into_loop(), &["v0", "v"]).unwrap();
        assert_eq!(names(&g), ["v0", "v", "e1", "e3__e1", "e2__e1"]);
        assert_eq!(
            edge_triples(&g),
            [
                ("e0".into(), "v0".into(), "v0".into()),
                ("e".into(), "v0".into(), "v".into()),
                ("e1_bar".into(), "e1".into(), "v0".into()),
                ("e3__e1_bar".into(), "e3__e1".into(), "v0".into()),
                ("e2__e1_bar".into(), "e2__e1".into(), "v0".into()),
            ]
        );
        // Same shape as the restriction with a 3-star at v0.
        let restricted =
            Graph::from_names(&["v0", "v"], &[("e0", "v0", "v0"), ("e", "v0", "v")]).unwrap();
        let star = attach_star(&restricted, "v0", 3).unwrap();
        assert_eq!(star.vertex_count(), g.vertex_count());
        assert_eq!(star.in_degree(0), g.in_degree(0));
    }

    #[test]
    fn collapse_edge_cases() {
        let g = loops_chain();
        assert_eq!(hereditary_collapse(&g, &["v1", "v2", "v3"]).unwrap(), g);
        assert_eq!(
            hereditary_collapse(&g, &["v1"]),
            Err(Error::NotHereditary {
                from: "v1".into(),
                to: "v2".into()
            })
        );
        // v1 carries loops outside {v2, v3}.
        assert_eq!(
            hereditary_collapse(&g, &["v2", "v3"]),
            Err(Error::ComplementHasCycle("v1".into()))
        );
        let g = hereditary_collapse(&fed_path(), &["v1", "v2", "v3"]).unwrap();
        assert_eq!(names(&g), ["v1", "v2", "v3", "d"]);
    }

    #[test]
    fn source_free_equivalents() {
        let f = source_free_equivalent(&fed_path()).unwrap().unwrap();
        assert!(!f.has_sources());
        assert_eq!(
            source_free_equivalent(&loops_chain()).unwrap().unwrap(),
            loops_chain()
        );
        assert_eq!(source_free_equivalent(&path(3)).unwrap(), None);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let g = Graph::from_names(&["v", "v_h1"], &[("x", "v_h1", "v")]).unwrap();
        let h = attach_head(&g, "v", 1).unwrap();
        assert_eq!(names(&h), ["v", "v_h1", "v_h1_2"]);
    }
}
