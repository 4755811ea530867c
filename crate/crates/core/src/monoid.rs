//! The graph monoid: the free abelian monoid on the vertices, modulo the
//! relation `v = Σ r(e)` over the edges `e` emitted by each regular vertex `v`.
//!
//! Two elements are equal in the monoid exactly when forward applications of
//! these relations take both to a common element of the free monoid, so
//! equality can be witnessed by two replayable rewrite traces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// An element of the free abelian monoid on the vertices.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonoidVector(BTreeMap<VertexId, BigUint>);

impl MonoidVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `k·Σv` over every vertex of `g`.
    pub fn uniform(g: &Graph, k: impl Into<BigUint>) -> Self {
        let k = k.into();
        let mut x = Self::zero();
        for v in g.vertices() {
            x.set(v.clone(), k.clone());
        }
        x
    }

    pub fn from_pairs<I, S, N>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, N)>,
        S: AsRef<str>,
        N: Into<BigUint>,
    {
        let mut x = Self::zero();
        for (name, k) in pairs {
            let v = VertexId::new(name.as_ref())?;
            let k = x.get(v.as_str()) + k.into();
            x.set(v, k);
        }
        Ok(x)
    }

    pub fn get(&self, v: &str) -> BigUint {
        VertexId::new(v)
            .ok()
            .and_then(|v| self.0.get(&v).cloned())
            .unwrap_or_default()
    }

    pub fn set(&mut self, v: VertexId, k: BigUint) {
        if k.is_zero() {
            self.0.remove(&v);
        } else {
            self.0.insert(v, k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &BigUint)> {
        self.0.iter()
    }

    pub fn total(&self) -> BigUint {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn to_dense(&self, g: &Graph) -> Result<Vec<BigUint>> {
        let mut dense = vec![BigUint::zero(); g.vertex_count()];
        for (v, k) in &self.0 {
            dense[g.require_vertex(v.as_str())?] = k.clone();
        }
        Ok(dense)
    }

    fn from_dense(g: &Graph, dense: &[BigUint]) -> Self {
        let mut x = Self::zero();
        for (i, k) in dense.iter().enumerate() {
            x.set(g.vertex(i).clone(), k.clone());
        }
        x
    }
}

impl fmt::Display for MonoidVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(v, k)| {
                if k.is_one() {
                    v.to_string()
                } else {
                    format!("{k}{v}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Vertices at which relations were applied, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RewriteTrace {
    pub steps: Vec<VertexId>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step to `start`, failing on the first step that is not applicable.
    pub fn replay(&self, g: &Graph, start: &MonoidVector) -> Result<MonoidVector> {
        let mut x = start.to_dense(g)?;
        for v in &self.steps {
            let i = g.require_vertex(v.as_str())?;
            apply_dense(g, &mut x, i)?;
        }
        Ok(MonoidVector::from_dense(g, &x))
    }

    fn from_indices(g: &Graph, steps: impl IntoIterator<Item = usize>) -> Self {
        Self {
            steps: steps.into_iter().map(|i| g.vertex(i).clone()).collect(),
        }
    }
}

fn apply_dense(g: &Graph, x: &mut [BigUint], v: usize) -> Result<()> {
    if !g.is_regular(v) {
        return Err(Error::NotRegular(g.vertex(v).to_string()));
    }
    if x[v].is_zero() {
        return Err(Error::InsufficientCoefficient(g.vertex(v).to_string()));
    }
    x[v] -= 1u32;
    for &e in g.out_edges(v) {
        x[g.range_of(e)] += 1u32;
    }
    Ok(())
}

/// One application of the relation at `v`: `x − v + Σ_{s(e)=v} r(e)`.
pub fn apply_relation(g: &Graph, x: &MonoidVector, v: &str) -> Result<MonoidVector> {
    let i = g.require_vertex(v)?;
    let mut dense = x.to_dense(g)?;
    apply_dense(g, &mut dense, i)?;
    Ok(MonoidVector::from_dense(g, &dense))
}

/// Applies the relation at each regular vertex exactly `counts[v]` times.
///
/// Sweeps the regular vertices in canonical order, applying the relation once
/// at each vertex that still has a remaining count and a positive coefficient.
/// Returns `None` if a full sweep makes no progress while counts remain.
pub fn execute_counts(
    g: &Graph,
    start: &MonoidVector,
    counts: &BTreeMap<VertexId, u64>,
) -> Result<Option<(MonoidVector, RewriteTrace)>> {
    let mut remaining = vec![0u64; g.vertex_count()];
    for (v, &k) in counts {
        let i = g.require_vertex(v.as_str())?;
        if k > 0 && !g.is_regular(i) {
            return Err(Error::NotRegular(v.to_string()));
        }
        remaining[i] = k;
    }
    let regular = g.regular_vertices();
    let mut x = start.to_dense(g)?;
    let mut steps = Vec::new();
    let mut left: u64 = remaining.iter().sum();
    while left > 0 {
        let mut progressed = false;
        for &v in &regular {
            if remaining[v] > 0 && !x[v].is_zero() {
                apply_dense(g, &mut x, v)?;
                remaining[v] -= 1;
                left -= 1;
                steps.push(v);
                progressed = true;
            }
        }
        if !progressed {
            return Ok(None);
        }
    }
    Ok(Some((
        MonoidVector::from_dense(g, &x),
        RewriteTrace::from_indices(g, steps),
    )))
}

/// Limits for forward-closure searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of distinct states kept per side.
    pub max_states: usize,
    /// States whose coefficient sum exceeds this are pruned.
    pub max_coefficient_sum: u64,
}

impl SearchBudget {
    pub const DEFAULT_MAX_STATES: usize = 100_000;

    /// 100 000 states per side and a coefficient-sum cap of `64·h`.
    pub fn for_graph(g: &Graph) -> Self {
        Self {
            max_states: Self::DEFAULT_MAX_STATES,
            max_coefficient_sum: 64 * g.vertex_count() as u64,
        }
    }

    pub fn with_max_states(self, max_states: usize) -> Self {
        Self { max_states, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityOutcome {
    /// Replaying `left` from the first element and `right` from the second
    /// both produce `common`.
    Equal {
        left: RewriteTrace,
        right: RewriteTrace,
        common: MonoidVector,
    },
    /// Inconclusive: no common descendant was found within the budget.
    NotFoundWithinBudget,
}

impl EqualityOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, Self::Equal { .. })
    }
}

/// Breadth-first forward closure, truncated at the budget.
///
/// States are inserted in a fixed order that does not depend on the budget,
/// so a larger budget always explores a superset.
struct Closure<'g> {
    g: &'g Graph,
    regular: Vec<usize>,
    budget: SearchBudget,
    states: Vec<Box<[u32]>>,
    sums: Vec<u64>,
    parent: Vec<Option<(usize, usize)>>,
    index: FxHashMap<Box<[u32]>, usize>,
    next: usize,
}

impl<'g> Closure<'g> {
    fn new(g: &'g Graph, start: Box<[u32]>, budget: SearchBudget) -> Self {
        let sum = start.iter().map(|&k| u64::from(k)).sum();
        let mut index = FxHashMap::default();
        index.insert(start.clone(), 0);
        Self {
            g,
            regular: g.regular_vertices(),
            budget,
            states: vec![start],
            sums: vec![sum],
            parent: vec![None],
            index,
            next: 0,
        }
    }

    fn can_grow(&self) -> bool {
        self.next < self.states.len() && self.states.len() < self.budget.max_states
    }

    /// Expands the next state; returns indices of newly inserted states.
    fn expand_one(&mut self) -> Vec<usize> {
        let at = self.next;
        self.next += 1;
        let mut fresh = Vec::new();
        for &v in &self.regular {
            if self.states[at][v] == 0 {
                continue;
            }
            let out = self.g.out_edges(v);
            let sum = self.sums[at] - 1 + out.len() as u64;
            if sum > self.budget.max_coefficient_sum {
                continue;
            }
            let mut child = self.states[at].clone();
            child[v] -= 1;
            for &e in out {
                child[self.g.range_of(e)] += 1;
            }
            if self.index.contains_key(&child) {
                continue;
            }
            if self.states.len() >= self.budget.max_states {
                break;
            }
            let id = self.states.len();
            self.index.insert(child.clone(), id);
            self.states.push(child);
            self.sums.push(sum);
            self.parent.push(Some((at, v)));
            fresh.push(id);
        }
        fresh
    }

    fn run_to_end(&mut self) {
        while self.can_grow() {
            self.expand_one();
        }
    }

    fn trace_to(&self, mut id: usize) -> RewriteTrace {
        let mut steps = Vec::new();
        while let Some((p, v)) = self.parent[id] {
            steps.push(v);
            id = p;
        }
        steps.reverse();
        RewriteTrace::from_indices(self.g, steps)
    }
}

/// Dense `u32` coefficients, or `None` if some coefficient is too large to
/// search from.
fn to_small(g: &Graph, x: &MonoidVector) -> Result<Option<Box<[u32]>>> {
    let dense = x.to_dense(g)?;
    Ok(dense.iter().map(ToPrimitive::to_u32).collect())
}

fn found(a: &Closure, ia: usize, b: &Closure, ib: usize) -> EqualityOutcome {
    EqualityOutcome::Equal {
        left: a.trace_to(ia),
        right: b.trace_to(ib),
        common: MonoidVector::from_dense(
            a.g,
            &a.states[ia]
                .iter()
                .map(|&k| BigUint::from(k))
                .collect::<Vec<_>>(),
        ),
    }
}

/// Searches for a common forward descendant of `x` and `y`.
///
/// `NotFoundWithinBudget` never proves inequality.
pub fn equal_in_monoid(
    g: &Graph,
    x: &MonoidVector,
    y: &MonoidVector,
    budget: SearchBudget,
) -> Result<EqualityOutcome> {
    let (Some(xs), Some(ys)) = (to_small(g, x)?, to_small(g, y)?) else {
        return Ok(EqualityOutcome::NotFoundWithinBudget);
    };
    let mut a = Closure::new(g, xs, budget);
    let mut b = Closure::new(g, ys, budget);
    if let Some(&ib) = b.index.get(&a.states[0]) {
        return Ok(found(&a, 0, &b, ib));
    }
    while a.can_grow() || b.can_grow() {
        if a.can_grow() {
            for ia in a.expand_one() {
                if let Some(&ib) = b.index.get(&a.states[ia]) {
                    return Ok(found(&a, ia, &b, ib));
                }
            }
        }
        if b.can_grow() {
            for ib in b.expand_one() {
                if let Some(&ia) = a.index.get(&b.states[ib]) {
                    return Ok(found(&a, ia, &b, ib));
                }
            }
        }
    }
    Ok(EqualityOutcome::NotFoundWithinBudget)
}

/// A pair `m > n` with `m·Σv = n·Σv` in the monoid, with the traces proving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub m: u64,
    pub n: u64,
    /// Replayed from `m·Σv`.
    pub left: RewriteTrace,
    /// Replayed from `n·Σv`.
    pub right: RewriteTrace,
    pub common: MonoidVector,
}

/// Looks for `1 ≤ n < m ≤ max_mn` with `m·Σv` and `n·Σv` equal in the monoid,
/// trying `m` in increasing order and, for each `m`, `n` in increasing order.
///
/// Each `k·Σv` closure is built once and shared by every pair it takes part in;
/// the outcome for a pair is the same as running [`equal_in_monoid`] on it.
pub fn ibn_refute_search(
    g: &Graph,
    max_mn: u64,
    budget: SearchBudget,
) -> Result<Option<Refutation>> {
    if max_mn < 2 {
        return Err(Error::BadCount(max_mn));
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut closures: Vec<Closure> = Vec::new();
    for k in 1..=max_mn {
        let Ok(k32) = u32::try_from(k) else {
            break;
        };
        let mut c = Closure::new(g, vec![k32; g.vertex_count()].into(), budget);
        c.run_to_end();
        closures.push(c);
        let m = k;
        let a = &closures[(m - 1) as usize];
        for n in 1..m {
            let b = &closures[(n - 1) as usize];
            let hit =
                (0..a.states.len()).find_map(|ia| b.index.get(&a.states[ia]).map(|&ib| (ia, ib)));
            if let Some((ia, ib)) = hit {
                let EqualityOutcome::Equal {
                    left,
                    right,
                    common,
                } = found(a, ia, b, ib)
                else {
                    unreachable!()
                };
                return Ok(Some(Refutation {
                    m,
                    n,
                    left,
                    right,
                    common,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn mv(pairs: &[(&str, u32)]) -> MonoidVector {
        MonoidVector::from_pairs(pairs.iter().map(|&(v, k)| (v, k))).unwrap()
    }

    #[test]
    fn relation_steps() {
        let g = loops_chain();
        assert_eq!(
            apply_relation(&g, &mv(&[("v1", 1)]), "v1").unwrap(),
            mv(&[("v1", 2), ("v2", 1)])
        );
        assert_eq!(
            apply_relation(&g, &mv(&[("v2", 1)]), "v2").unwrap(),
            mv(&[("v2", 1), ("v3", 1)])
        );
        assert_eq!(
            apply_relation(&g, &mv(&[("v3", 1)]), "v3"),
            Err(Error::NotRegular("v3".into()))
        );
        assert_eq!(
            apply_relation(&g, &mv(&[("v3", 1)]), "v1"),
            Err(Error::InsufficientCoefficient("v1".into()))
        );
    }

    #[test]
    fn zero_coefficients_compare_equal() {
        assert_eq!(mv(&[("v", 0), ("w", 2)]), mv(&[("w", 2)]));
        assert_eq!(mv(&[("w", 2), ("v", 1)]).to_string(), "v + 2w");
    }

    #[test]
    fn greedy_execution() {
        let g = loops_chain();
        let counts: BTreeMap<VertexId, u64> = [
            (VertexId::new("v1").unwrap(), 1),
            (VertexId::new("v2").unwrap(), 1),
        ]
        .into();
        let (x, trace) = execute_counts(&g, &MonoidVector::uniform(&g, 1u32), &counts)
            .unwrap()
            .unwrap();
        assert_eq!(x, MonoidVector::uniform(&g, 2u32));
        assert_eq!(trace.steps, ["v1", "v2"].map(|v| VertexId::new(v).unwrap()));

        let start = mv(&[("v3", 1)]);
        let (x, trace) = execute_counts(&g, &start, &BTreeMap::new())
            .unwrap()
            .unwrap();
        assert_eq!((x, trace.len()), (start.clone(), 0));

        let counts: BTreeMap<VertexId, u64> = [(VertexId::new("v1").unwrap(), 1)].into();
        assert_eq!(execute_counts(&g, &start, &counts).unwrap(), None);

        let counts: BTreeMap<VertexId, u64> = [(VertexId::new("v3").unwrap(), 1)].into();
        assert!(execute_counts(&g, &start, &counts).is_err());
    }

    #[test]
    fn equality_search() {
        let g = loops_chain();
        let budget = SearchBudget::for_graph(&g);
        let one = MonoidVector::uniform(&g, 1u32);
        let two = MonoidVector::uniform(&g, 2u32);
        match equal_in_monoid(&g, &one, &two, budget).unwrap() {
            EqualityOutcome::Equal {
                left,
                right,
                common,
            } => {
                assert_eq!(left.replay(&g, &one).unwrap(), common);
                assert_eq!(right.replay(&g, &two).unwrap(), common);
            }
            other => panic!("expected Equal, got {other:?}"),
        }
        assert_eq!(
            equal_in_monoid(&g, &one, &one, budget).unwrap(),
            EqualityOutcome::Equal {
                left: RewriteTrace::default(),
                right: RewriteTrace::default(),
                common: one.clone()
            }
        );

        let l = rose(1);
        let out = equal_in_monoid(
            &l,
            &mv(&[("v", 1)]),
            &mv(&[("v", 2)]),
            SearchBudget::for_graph(&l),
        )
        .unwrap();
        assert_eq!(out, EqualityOutcome::NotFoundWithinBudget);
    }

    #[test]
    fn refutation_search() {
        let g = loops_chain();
        let r = ibn_refute_search(&g, 4, SearchBudget::for_graph(&g))
            .unwrap()
            .unwrap();
        assert_eq!((r.m, r.n), (2, 1));
        assert_eq!(
            r.left.replay(&g, &MonoidVector::uniform(&g, 2u32)).unwrap(),
            r.common
        );
        assert_eq!(
            r.right
                .replay(&g, &MonoidVector::uniform(&g, 1u32))
                .unwrap(),
            r.common
        );

        let p = path(3);
        assert_eq!(
            ibn_refute_search(&p, 4, SearchBudget::for_graph(&p)).unwrap(),
            None
        );

        let r2 = rose(2);
        let r = ibn_refute_search(&r2, 4, SearchBudget::for_graph(&r2))
            .unwrap()
            .unwrap();
        assert_eq!((r.m, r.n), (2, 1));

        assert_eq!(
            ibn_refute_search(&g, 1, SearchBudget::for_graph(&g)),
            Err(Error::BadCount(1))
        );
    }
}
