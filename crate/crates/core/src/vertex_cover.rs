//! Greedy k-approximation of minimum vertex cover on rank-k hypergraphs.
//!
//! The loop repeatedly takes an uncovered edge, adds all its vertices to the
//! cover and drops every edge it touches. The picked edges form a matching
//! `M`, recorded in each snapshot, which witnesses `|C| ≤ k·|M| ≤ k·|C′|` for
//! any cover `C′`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::{disjoint, union_all, IdSet};
use crate::pick::PickPolicy;
use crate::trace::{ensure, Check, Trace};

/// An edge is a non-empty vertex set; ordering is lexicographic on the sorted
/// vertex list, which is what `MinId` picks by.
pub type Edge = IdSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    k: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new<I: IntoIterator<Item = Edge>>(k: usize, edges: I) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invariant("k > 0".into()));
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::Invariant("∅ ∉ E".into()));
            }
            if e.len() > k {
                return Err(Error::Invariant("|e| ≤ k".into()));
            }
        }
        Ok(Hypergraph { k, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertices(&self) -> IdSet {
        union_all(&self.edges)
    }
}

/// Loop state. `matching` is the witness for the existential in the invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VcState {
    pub cover: IdSet,
    pub uncovered: BTreeSet<Edge>,
    pub matching: BTreeSet<Edge>,
    pub picked: Option<Edge>,
}

impl VcState {
    pub fn initial(h: &Hypergraph) -> Self {
        VcState {
            cover: IdSet::new(),
            uncovered: h.edges.clone(),
            matching: BTreeSet::new(),
            picked: None,
        }
    }
}

pub fn covers(edges: &BTreeSet<Edge>, cover: &IdSet) -> bool {
    edges.iter().all(|e| !disjoint(e, cover))
}

pub fn is_vertex_cover(h: &Hypergraph, cover: &IdSet) -> bool {
    covers(&h.edges, cover)
}

pub fn is_matching(m: &BTreeSet<Edge>) -> bool {
    let all: Vec<&Edge> = m.iter().collect();
    all.iter()
        .enumerate()
        .all(|(i, a)| all[i + 1..].iter().all(|b| disjoint(a, b)))
}

/// One loop iteration with `picked` as the chosen uncovered edge.
pub fn vc_step(state: &VcState, picked: &Edge) -> VcState {
    let mut cover = state.cover.clone();
    cover.extend(picked.iter().copied());
    let uncovered = state
        .uncovered
        .iter()
        .filter(|e| disjoint(picked, e))
        .cloned()
        .collect();
    let mut matching = state.matching.clone();
    matching.insert(picked.clone());
    VcState {
        cover,
        uncovered,
        matching,
        picked: Some(picked.clone()),
    }
}

#[derive(Debug, Clone)]
pub struct VcRun {
    pub cover: IdSet,
    pub trace: Trace<VcState>,
}

pub fn greedy_vc(h: &Hypergraph, policy: PickPolicy) -> VcRun {
    let mut picker = policy.picker();
    let mut state = VcState::initial(h);
    let mut trace = Trace::new(state.clone());
    while !state.uncovered.is_empty() {
        let e = picker.pick(&state.uncovered).expect("F is non-empty");
        state = vc_step(&state, &e);
        trace.push(state.clone());
    }
    VcRun {
        cover: state.cover,
        trace,
    }
}

/// The strengthened loop invariant together with the matching conjuncts,
/// checked in definition order.
pub fn check_invar_vc(h: &Hypergraph, s: &VcState) -> Check {
    ensure(s.uncovered.is_subset(&h.edges), "F ⊆ E")?;
    check_invar_vc_weak(h, s)
}

/// The invariant without `F ⊆ E`. It is not preserved by the loop body and
/// is kept only to exhibit states it wrongly admits.
pub fn check_invar_vc_weak(h: &Hypergraph, s: &VcState) -> Check {
    let covered: BTreeSet<Edge> = h.edges.difference(&s.uncovered).cloned().collect();
    ensure(covers(&covered, &s.cover), "vc (E − F) C")?;
    ensure(is_matching(&s.matching), "matching M")?;
    ensure(s.matching.is_subset(&h.edges), "M ⊆ E")?;
    ensure(s.cover.len() <= h.k * s.matching.len(), "|C| ≤ k * |M|")?;
    ensure(
        s.matching
            .iter()
            .all(|e| s.uncovered.iter().all(|f| disjoint(e, f))),
        "∀e∈M. ∀f∈F. e ∩ f = ∅",
    )
}
