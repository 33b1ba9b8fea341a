//! Greedy maximal independent set with a Δ approximation guarantee.
//!
//! Each iteration picks an unexcluded vertex `x`, adds it to `S` and excludes
//! its closed neighbourhood. The snapshot keeps the family `P` of closed
//! neighbourhoods taken so far; `|P| = |S|` and every independent set meets
//! each member of `P` in at most Δ vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::{union_all, Id, IdSet};
use crate::pick::PickPolicy;
use crate::trace::{ensure, Check, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    edges: BTreeSet<IdSet>,
    #[serde(skip)]
    adjacency: BTreeMap<Id, IdSet>,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = IdSet>>(edges: I) -> Result<Self> {
        let edges: BTreeSet<IdSet> = edges.into_iter().collect();
        let mut adjacency: BTreeMap<Id, IdSet> = BTreeMap::new();
        for e in &edges {
            if e.len() != 2 {
                return Err(Error::Invariant("|e| = 2".into()));
            }
            let mut it = e.iter().copied();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            adjacency.entry(a).or_default().insert(b);
            adjacency.entry(b).or_default().insert(a);
        }
        Ok(Graph { edges, adjacency })
    }

    pub fn edges(&self) -> &BTreeSet<IdSet> {
        &self.edges
    }

    pub fn vertices(&self) -> IdSet {
        self.adjacency.keys().copied().collect()
    }

    pub fn neighbors(&self, v: Id) -> IdSet {
        self.adjacency.get(&v).cloned().unwrap_or_default()
    }

    /// `{v} ∪ neighbors v`.
    pub fn closed_neighborhood(&self, v: Id) -> IdSet {
        let mut n = self.neighbors(v);
        n.insert(v);
        n
    }

    pub fn has_edge(&self, a: Id, b: Id) -> bool {
        self.adjacency.get(&a).is_some_and(|n| n.contains(&b))
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.values().map(|n| n.len()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MisState {
    pub chosen: IdSet,
    pub excluded: IdSet,
    /// Witness family of closed neighbourhoods.
    pub partition: BTreeSet<IdSet>,
    /// Largest number of vertices newly excluded in one iteration (r variant).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub picked: Option<Id>,
}

impl MisState {
    pub fn initial(track_r: bool) -> Self {
        MisState {
            chosen: IdSet::new(),
            excluded: IdSet::new(),
            partition: BTreeSet::new(),
            r: track_r.then_some(0),
            picked: None,
        }
    }
}

pub fn is_independent_set(g: &Graph, s: &IdSet) -> bool {
    let v = g.vertices();
    s.is_subset(&v) && s.iter().all(|&a| s.iter().all(|&b| !g.has_edge(a, b)))
}

/// One loop iteration choosing `x ∈ V − X`.
pub fn mis_step(g: &Graph, state: &MisState, x: Id) -> MisState {
    let block = g.closed_neighborhood(x);
    let fresh = block.difference(&state.excluded).count();
    let mut next = state.clone();
    next.chosen.insert(x);
    next.excluded.extend(block.iter().copied());
    next.partition.insert(block);
    next.r = state.r.map(|r| r.max(fresh));
    next.picked = Some(x);
    next
}

#[derive(Debug, Clone)]
pub struct MisRun {
    pub set: IdSet,
    pub r: Option<usize>,
    pub trace: Trace<MisState>,
}

fn run(g: &Graph, policy: PickPolicy, track_r: bool) -> MisRun {
    let vertices = g.vertices();
    let mut picker = policy.picker();
    let mut state = MisState::initial(track_r);
    let mut trace = Trace::new(state.clone());
    while state.excluded != vertices {
        let open: IdSet = vertices.difference(&state.excluded).copied().collect();
        let x = picker.pick(&open).expect("V − X is non-empty");
        state = mis_step(g, &state, x);
        trace.push(state.clone());
    }
    MisRun {
        set: state.chosen,
        r: state.r,
        trace,
    }
}

pub fn greedy_mis(g: &Graph, policy: PickPolicy) -> MisRun {
    run(g, policy, false)
}

/// Same run as [`greedy_mis`], additionally reporting `r` with
/// `|S′| ≤ |S|·r` for every independent `S′`.
pub fn greedy_mis_r(g: &Graph, policy: PickPolicy) -> Result<MisRun> {
    if g.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(run(g, policy, true))
}

/// Functional-correctness part of the invariant.
pub fn check_inv_iv(g: &Graph, s: &MisState) -> Check {
    let v = g.vertices();
    ensure(is_independent_set(g, &s.chosen), "iv E S")?;
    ensure(s.excluded.is_subset(&v), "X ⊆ V")?;
    ensure(
        v.difference(&s.excluded)
            .all(|&a| s.chosen.iter().all(|&b| !g.has_edge(a, b))),
        "∀v₁∈V − X. ∀v₂∈S. {v₁, v₂} ∉ E",
    )?;
    ensure(s.chosen.is_subset(&s.excluded), "S ⊆ X")
}

pub fn check_inv_partition(g: &Graph, s: &MisState) -> Check {
    check_inv_iv(g, s)?;
    let v = g.vertices();
    ensure(union_all(&s.partition) == s.excluded, "⋃ P = X")?;
    ensure(
        s.partition
            .iter()
            .all(|p| v.iter().any(|&x| *p == g.closed_neighborhood(x))),
        "∀p∈P. ∃s∈V. p = {s} ∪ neighbors s",
    )?;
    ensure(s.partition.len() == s.chosen.len(), "|P| = |S|")
}

/// Invariant of the r variant: `inv_iv S X ∧ |X| ≤ |S| * r`.
pub fn check_inv_r(g: &Graph, s: &MisState) -> Check {
    check_inv_iv(g, s)?;
    let r = s.r.unwrap_or(0);
    ensure(s.excluded.len() <= s.chosen.len() * r, "|X| ≤ |S| * r")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::id::ids;
    use crate::trace::{replay_check, Violation};

    fn g(edges: &[[u64; 2]]) -> Graph {
        Graph::new(edges.iter().map(|e| ids(*e))).unwrap()
    }

    fn triangle() -> Graph {
        g(&[[1, 2], [2, 3], [1, 3]])
    }

    #[test]
    fn independence() {
        assert!(is_independent_set(&triangle(), &ids([1])));
        assert!(!is_independent_set(&triangle(), &ids([1, 2])));
        assert!(is_independent_set(&triangle(), &IdSet::new()));
        assert!(!is_independent_set(&triangle(), &ids([9])));
    }

    #[test]
    fn edges_must_have_two_endpoints() {
        assert_eq!(
            Graph::new([ids([1, 2, 3])]),
            Err(Error::Invariant("|e| = 2".into()))
        );
        assert!(Graph::new([ids([4])]).is_err());
    }

    #[test]
    fn path_run() {
        let path = g(&[[1, 2], [2, 3]]);
        assert_eq!(path.max_degree(), 2);
        let run = greedy_mis(&path, PickPolicy::MinId);
        assert_eq!(run.set, ids([1, 3]));
        assert_eq!(run.trace.steps[0].excluded, ids([1, 2]));
        assert!(replay_check(&run.trace, |s| check_inv_partition(&path, s)).ok);
    }

    #[test]
    fn triangle_run() {
        assert_eq!(greedy_mis(&triangle(), PickPolicy::MinId).set, ids([1]));
    }

    #[test]
    fn empty_graph() {
        let e = g(&[]);
        assert_eq!(e.max_degree(), 0);
        let run = greedy_mis(&e, PickPolicy::MinId);
        assert!(run.set.is_empty());
        assert_eq!(greedy_mis_r(&e, PickPolicy::MinId).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn r_variant_examples() {
        let path = g(&[[1, 2], [2, 3]]);
        let run = greedy_mis_r(&path, PickPolicy::MinId).unwrap();
        assert_eq!((run.set.clone(), run.r), (ids([1, 3]), Some(2)));
        assert!(replay_check(&run.trace, |s| check_inv_r(&path, s)).ok);

        let edge = g(&[[1, 2]]);
        let run = greedy_mis_r(&edge, PickPolicy::MinId).unwrap();
        assert_eq!((run.set, run.r), (ids([1]), Some(2)));

        let star = g(&[[1, 2], [1, 3], [1, 4], [1, 5]]);
        let run = greedy_mis_r(&star, PickPolicy::MinId).unwrap();
        assert_eq!((run.set, run.r), (ids([1]), Some(5)));
    }

    #[test]
    fn chosen_outside_excluded_is_flagged() {
        let path = g(&[[1, 2], [2, 3]]);
        let mut s = MisState::initial(false);
        s.chosen.insert(Id(1));
        s.excluded.insert(Id(2));
        assert_eq!(check_inv_partition(&path, &s), Err(Violation("S ⊆ X")));
    }

    #[test]
    fn initial_state_ok() {
        assert_eq!(check_inv_partition(&triangle(), &MisState::initial(false)), Ok(()));
    }
}
