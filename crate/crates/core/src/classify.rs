//! Graphical conditions that each guarantee Invariant Basis Number.
//!
//! None of them is necessary: a graph can have IBN while every rule here
//! declines to fire.

use serde::Serialize;

use crate::cycles::{cycle_properties, enumerate_simple_cycles, strongly_connected_components};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::transforms::source_free_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    IsolatedVertexRule,
    SourceCycleRule,
    DisjointCyclesRule,
    None,
}

/// The first rule that fired, with evidence that can be checked on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum SufficiencyResult {
    /// `vertex` is isolated after `stage` source eliminations.
    IsolatedVertexRule {
        vertex: VertexId,
        stage: usize,
    },
    /// A cycle of the source-free form whose vertices each receive one edge there.
    SourceCycleRule {
        cycle: Vec<EdgeId>,
    },
    /// No vertex lies on two distinct cycles; all simple cycles of the graph.
    DisjointCyclesRule {
        cycles: Vec<Vec<EdgeId>>,
    },
    None,
}

impl SufficiencyResult {
    pub fn rule(&self) -> Rule {
        match self {
            Self::IsolatedVertexRule { .. } => Rule::IsolatedVertexRule,
            Self::SourceCycleRule { .. } => Rule::SourceCycleRule,
            Self::DisjointCyclesRule { .. } => Rule::DisjointCyclesRule,
            Self::None => Rule::None,
        }
    }
}

/// Tries, in order: an isolated vertex during source elimination, a source
/// cycle in the source-free form, and pairwise vertex-disjoint cycles.
pub fn classify_sufficient(g: &Graph) -> Result<SufficiencyResult> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let report = source_free_form(g)?;
    if let Some((stage, vertex)) = report.first_isolated {
        return Ok(SufficiencyResult::IsolatedVertexRule { vertex, stage });
    }
    let sf = &report.result;
    for c in enumerate_simple_cycles(sf) {
        if cycle_properties(sf, &c)?.is_source_cycle {
            return Ok(SufficiencyResult::SourceCycleRule {
                cycle: c.edge_ids(sf),
            });
        }
    }
    if cycles_pairwise_disjoint(g) {
        let cycles = enumerate_simple_cycles(g)
            .iter()
            .map(|c| c.edge_ids(g))
            .collect();
        return Ok(SufficiencyResult::DisjointCyclesRule { cycles });
    }
    Ok(SufficiencyResult::None)
}

/// True iff no vertex lies on two distinct simple cycles.
///
/// Equivalently, every strongly connected component is a loopless single
/// vertex or a single cycle: as many internal edges as vertices, each vertex
/// with one internal edge in and one out.
pub fn cycles_pairwise_disjoint(g: &Graph) -> bool {
    let mut comp_of = vec![0; g.vertex_count()];
    let comps = strongly_connected_components(g);
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut inner_out = vec![0usize; g.vertex_count()];
    let mut inner_in = vec![0usize; g.vertex_count()];
    let mut inner_edges = vec![0usize; comps.len()];
    for e in 0..g.edge_count() {
        let (s, r) = (g.source_of(e), g.range_of(e));
        if comp_of[s] == comp_of[r] {
            inner_out[s] += 1;
            inner_in[r] += 1;
            inner_edges[comp_of[s]] += 1;
        }
    }
    comps.iter().enumerate().all(|(c, members)| {
        if members.len() == 1 && inner_edges[c] == 0 {
            return true;
        }
        inner_edges[c] == members.len()
            && members
                .iter()
                .all(|&v| inner_out[v] == 1 && inner_in[v] == 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn rules_fire_in_priority_order() {
        let r = classify_sufficient(&rose(1)).unwrap();
        assert_eq!(r.rule(), Rule::SourceCycleRule);
        assert_eq!(
            r,
            SufficiencyResult::SourceCycleRule {
                cycle: vec![EdgeId::new("l1").unwrap()]
            }
        );

        let r = classify_sufficient(&path(3)).unwrap();
        assert_eq!(
            r,
            SufficiencyResult::IsolatedVertexRule {
                vertex: VertexId::new("v3").unwrap(),
                stage: 2
            }
        );

        assert_eq!(
            classify_sufficient(&loops_chain()).unwrap(),
            SufficiencyResult::None
        );
        assert_eq!(
            classify_sufficient(&rose(2)).unwrap(),
            SufficiencyResult::None
        );
    }

    #[test]
    fn disjoint_cycles_rule() {
        // Two 1-cycles joined by an edge: the second loop receives two edges,
        // the first is a source cycle.
        let g = Graph::from_names(
            &["a", "b"],
            &[("x", "a", "a"), ("y", "a", "b"), ("w", "b", "b")],
        )
        .unwrap();
        assert_eq!(
            classify_sufficient(&g).unwrap().rule(),
            Rule::SourceCycleRule
        );
        assert!(cycles_pairwise_disjoint(&g));
    }

    #[test]
    fn pairwise_disjointness() {
        assert!(!cycles_pairwise_disjoint(&rose(2)));
        assert!(cycles_pairwise_disjoint(&rose(1)));
        assert!(!cycles_pairwise_disjoint(&loops_chain()));
        assert!(cycles_pairwise_disjoint(&path(4)));
        // Two 2-cycles sharing vertex b.
        let g = Graph::from_names(
            &["a", "b", "c"],
            &[
                ("x", "a", "b"),
                ("y", "b", "a"),
                ("z", "b", "c"),
                ("w", "c", "b"),
            ],
        )
        .unwrap();
        assert!(!cycles_pairwise_disjoint(&g));
    }

    #[test]
    fn empty_graph() {
        let g = Graph::new(vec![], vec![]).unwrap();
        assert_eq!(classify_sufficient(&g), Err(Error::EmptyGraph));
    }
}
