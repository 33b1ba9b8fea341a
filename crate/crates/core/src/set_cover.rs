//! Weighted greedy set cover with an `H(d*)` guarantee.
//!
//! Subsets are indexed `1..=m`. Each iteration takes the subset of least cost
//! per newly covered element. The snapshot carries the per-element cost map
//! `c`: when subset `i` is taken, every element it newly covers is charged
//! `cost R i`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::{union_all, Id, IdSet};
use crate::rational::Rat;
use crate::trace::{ensure, Check, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetCoverInstance {
    universe: IdSet,
    subsets: Vec<IdSet>,
    weights: Vec<Rat>,
}

impl SetCoverInstance {
    pub fn new(universe: IdSet, subsets: Vec<IdSet>, weights: Vec<Rat>) -> Result<Self> {
        if subsets.is_empty() {
            return Err(Error::Invariant("0 < m".into()));
        }
        if subsets.len() != weights.len() {
            return Err(Error::Invariant("one weight per subset".into()));
        }
        if subsets.iter().any(|s| !s.is_subset(&universe)) {
            return Err(Error::Invariant("S i ⊆ U".into()));
        }
        if union_all(&subsets) != universe {
            return Err(Error::Invariant("union of subsets ≠ U".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Invariant("w(i) > 0".into()));
        }
        Ok(SetCoverInstance {
            universe,
            subsets,
            weights,
        })
    }

    pub fn universe(&self) -> &IdSet {
        &self.universe
    }

    pub fn m(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[IdSet] {
        &self.subsets
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// `S i` (1-based).
    pub fn subset(&self, i: usize) -> &IdSet {
        &self.subsets[i - 1]
    }

    /// `w i` (1-based).
    pub fn weight(&self, i: usize) -> &Rat {
        &self.weights[i - 1]
    }

    /// `d*`, the size of the largest subset.
    pub fn max_subset_size(&self) -> usize {
        self.subsets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// `W C`.
    pub fn total_weight(&self, cover: &BTreeSet<usize>) -> Rat {
        cover.iter().map(|&i| self.weight(i)).sum()
    }

    /// `sc C V`: `C ⊆ {1..m}` and the chosen subsets cover exactly `target`.
    pub fn is_cover_of(&self, cover: &BTreeSet<usize>, target: &IdSet) -> bool {
        cover.iter().all(|&i| (1..=self.m()).contains(&i))
            && union_all(cover.iter().map(|&i| self.subset(i))) == *target
    }

    pub fn is_set_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.is_cover_of(cover, &self.universe)
    }
}

/// `∑_{i=1..n} 1/i`.
pub fn harmonic(n: usize) -> Rat {
    harmonic_range(1, n)
}

/// `∑_{j=lo..hi} 1/j`, zero when `lo > hi`.
pub fn harmonic_range(lo: usize, hi: usize) -> Rat {
    (lo.max(1)..=hi).map(|j| Rat::from(j).recip()).sum()
}

/// Cost per newly covered element. An empty overlap is `Infinite`, which
/// orders above every finite cost.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Cost {
    Finite(Rat),
    Infinite,
}

fn overlap(inst: &SetCoverInstance, remaining: &IdSet, i: usize) -> usize {
    inst.subset(i).intersection(remaining).count()
}

/// `w i / |S i ∩ R|`.
pub fn cost(inst: &SetCoverInstance, remaining: &IdSet, i: usize) -> Result<Cost> {
    if !(1..=inst.m()).contains(&i) {
        return Err(Error::BadIndex { index: i, max: inst.m() });
    }
    Ok(match overlap(inst, remaining, i) {
        0 => Cost::Infinite,
        k => Cost::Finite(inst.weight(i) / &Rat::from(k)),
    })
}

/// Linear scan over `1..=m` keeping the earliest index of least cost among
/// subsets that still cover something. If none do, the scan ends on `m`.
pub fn min_arg_sc(inst: &SetCoverInstance, remaining: &IdSet, m: usize) -> usize {
    let c = |i| cost(inst, remaining, i).expect("index in range");
    let mut j = 1;
    for x in 1..m {
        let cand = x + 1;
        if overlap(inst, remaining, j) == 0
            || (overlap(inst, remaining, cand) != 0 && c(cand) < c(j))
        {
            j = cand;
        }
    }
    j
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScState {
    pub cover: BTreeSet<usize>,
    pub remaining: IdSet,
    /// Witness cost per element, defined on all of `U`.
    pub charge: BTreeMap<Id, Rat>,
    pub picked: Option<usize>,
}

impl ScState {
    pub fn initial(inst: &SetCoverInstance) -> Self {
        ScState {
            cover: BTreeSet::new(),
            remaining: inst.universe.clone(),
            charge: inst.universe.iter().map(|&u| (u, Rat::zero())).collect(),
            picked: None,
        }
    }

    fn charge_of(&self, u: Id) -> Rat {
        self.charge.get(&u).cloned().unwrap_or_else(Rat::zero)
    }
}

/// One loop iteration taking subset `i`.
pub fn sc_step(inst: &SetCoverInstance, state: &ScState, i: usize) -> ScState {
    let mut next = state.clone();
    if let Cost::Finite(per) = cost(inst, &state.remaining, i).expect("index in range") {
        for u in inst.subset(i).intersection(&state.remaining) {
            next.charge.insert(*u, per.clone());
        }
    }
    next.remaining = state.remaining.difference(inst.subset(i)).copied().collect();
    next.cover.insert(i);
    next.picked = Some(i);
    next
}

#[derive(Debug, Clone)]
pub struct ScRun {
    pub cover: BTreeSet<usize>,
    pub charge: BTreeMap<Id, Rat>,
    pub trace: Trace<ScState>,
}

pub fn greedy_sc(inst: &SetCoverInstance) -> ScRun {
    let mut state = ScState::initial(inst);
    let mut trace = Trace::new(state.clone());
    while !state.remaining.is_empty() {
        let i = min_arg_sc(inst, &state.remaining, inst.m());
        state = sc_step(inst, &state, i);
        trace.push(state.clone());
    }
    ScRun {
        cover: state.cover,
        charge: state.charge,
        trace,
    }
}

/// Loop invariant with the explicit cost witness, conjuncts in definition order.
pub fn check_inv_sc(inst: &SetCoverInstance, s: &ScState) -> Check {
    let covered: IdSet = inst.universe.difference(&s.remaining).copied().collect();
    ensure(inst.is_cover_of(&s.cover, &covered), "sc C (U − R)")?;
    ensure(s.remaining.is_subset(&inst.universe), "R ⊆ U")?;
    let charged: Rat = covered.iter().map(|&u| s.charge_of(u)).sum();
    ensure(inst.total_weight(&s.cover) == charged, "W C = (∑s∈U − R. c s)")?;
    ensure(s.charge.values().all(|c| !c.is_negative()), "∀i. 0 ≤ c i")?;
    ensure(
        (1..=inst.m()).all(|k| {
            let sk = inst.subset(k);
            let lhs: Rat = sk.intersection(&covered).map(|&u| s.charge_of(u)).sum();
            let tail = harmonic_range(overlap(inst, &s.remaining, k) + 1, sk.len());
            lhs <= tail * inst.weight(k)
        }),
        "∀k∈{1..m}. (∑s∈S k ∩ (U − R). c s) ≤ (∑j=|S k ∩ R|+1..|S k|. 1 / j) * w k",
    )
}
