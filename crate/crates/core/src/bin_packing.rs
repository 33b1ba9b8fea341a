//! Two-open-bin 3/2-approximation for bin packing.
//!
//! Objects are small (`w ≤ c/2`) or large (`w > c/2`). The loop keeps two open
//! bins `B₁`, `B₂` and two families of closed bins `P₁`, `P₂`. `B₁` is seeded
//! with a large object whenever one is left and then topped up with small
//! objects; a small object that does not fit closes `B₁` and moves to `B₂`.
//! Once no small object is left, every remaining large object gets a bin of
//! its own.
//!
//! Every bin closed into `P₁` is recorded together with the object that
//! overflowed it. That map is the bijection between `P₁` and the objects in
//! `P₂ ∪ ⟦B₂⟧` used by the lower-bound argument.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::id::{union_all, Id, IdSet};
use crate::pick::{PickPolicy, Picker};
use crate::rational::Rat;
use crate::trace::{ensure, Check, Trace};

pub type Bin = IdSet;
pub type Packing = BTreeSet<Bin>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinPackInstance {
    capacity: Rat,
    weights: BTreeMap<Id, Rat>,
}

impl BinPackInstance {
    pub fn new(capacity: Rat, weights: BTreeMap<Id, Rat>) -> Result<Self> {
        if !capacity.is_positive() {
            return Err(Error::Invariant("c > 0".into()));
        }
        if weights.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for w in weights.values() {
            if !w.is_positive() {
                return Err(Error::Invariant("w(u) > 0".into()));
            }
            if *w > capacity {
                return Err(Error::Invariant("w(u) ≤ c".into()));
            }
        }
        Ok(BinPackInstance { capacity, weights })
    }

    pub fn capacity(&self) -> &Rat {
        &self.capacity
    }

    pub fn weights(&self) -> &BTreeMap<Id, Rat> {
        &self.weights
    }

    pub fn objects(&self) -> IdSet {
        self.weights.keys().copied().collect()
    }

    pub fn w(&self, u: Id) -> &Rat {
        &self.weights[&u]
    }

    pub fn is_small(&self, u: Id) -> bool {
        Rat::from_int(2) * self.w(u) <= self.capacity
    }

    pub fn small(&self) -> IdSet {
        self.objects().into_iter().filter(|&u| self.is_small(u)).collect()
    }

    pub fn large(&self) -> IdSet {
        self.objects().into_iter().filter(|&u| !self.is_small(u)).collect()
    }

    /// `W(B)`.
    pub fn bin_weight(&self, bin: &Bin) -> Rat {
        bin.iter().map(|&u| self.w(u)).sum()
    }

    pub fn total_weight(&self) -> Rat {
        self.weights.values().sum()
    }
}

/// `⟦B⟧`: no bin for an empty set.
pub fn bracket(bin: &Bin) -> Packing {
    if bin.is_empty() {
        Packing::new()
    } else {
        [bin.clone()].into_iter().collect()
    }
}

fn singletons(v: &IdSet) -> Packing {
    v.iter().map(|&u| [u].into_iter().collect()).collect()
}

/// `partition_on U P`: non-empty, pairwise disjoint blocks covering `U`.
pub fn is_partition(universe: &IdSet, p: &Packing) -> bool {
    let mut seen = IdSet::new();
    for b in p {
        if b.is_empty() || !b.is_disjoint(&seen) {
            return false;
        }
        seen.extend(b.iter().copied());
    }
    seen == *universe
}

/// `bp P`: a partition of the objects with every bin within capacity.
pub fn is_bp(inst: &BinPackInstance, p: &Packing) -> bool {
    is_partition(&inst.objects(), p) && p.iter().all(|b| inst.bin_weight(b) <= inst.capacity)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpState {
    pub p1: Packing,
    pub p2: Packing,
    pub b1: Bin,
    pub b2: Bin,
    pub unassigned: IdSet,
    /// Bijection witness: bin of `P₁` ↦ the object that overflowed it.
    #[serde(serialize_with = "serialize_overflow")]
    pub overflow: BTreeMap<Bin, Id>,
    pub picked: Option<Id>,
}

fn serialize_overflow<S: Serializer>(map: &BTreeMap<Bin, Id>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        bin: &'a Bin,
        object: Id,
    }
    let mut seq = s.serialize_seq(Some(map.len()))?;
    for (bin, &object) in map {
        seq.serialize_element(&Entry { bin, object })?;
    }
    seq.end()
}

impl BpState {
    pub fn initial(inst: &BinPackInstance) -> Self {
        BpState {
            p1: Packing::new(),
            p2: Packing::new(),
            b1: Bin::new(),
            b2: Bin::new(),
            unassigned: inst.objects(),
            overflow: BTreeMap::new(),
            picked: None,
        }
    }

    /// `P₁ ∪ ⟦B₁⟧`.
    pub fn first_side(&self) -> Packing {
        self.p1.union(&bracket(&self.b1)).cloned().collect()
    }

    /// `P₂ ∪ ⟦B₂⟧`.
    pub fn second_side(&self) -> Packing {
        self.p2.union(&bracket(&self.b2)).cloned().collect()
    }

    /// `P₁ ∪ ⟦B₁⟧ ∪ P₂ ∪ ⟦B₂⟧`.
    pub fn placed_bins(&self) -> Packing {
        self.first_side().union(&self.second_side()).cloned().collect()
    }

    /// `P₁ ∪ ⟦B₁⟧ ∪ P₂ ∪ ⟦B₂⟧ ∪ {{v} | v ∈ V}`.
    pub fn assembled(&self) -> Packing {
        let mut all = self.placed_bins();
        all.extend(singletons(&self.unassigned));
        all
    }
}

/// Chooses the next object: small while `B₁` is open, otherwise large while
/// any are left, otherwise small.
pub fn select(inst: &BinPackInstance, state: &BpState, picker: &mut Picker) -> Result<Id> {
    let (small, large): (IdSet, IdSet) = state
        .unassigned
        .iter()
        .copied()
        .partition(|&u| inst.is_small(u));
    if !state.b1.is_empty() {
        picker.pick(&small)
    } else if !large.is_empty() {
        picker.pick(&large)
    } else {
        picker.pick(&small)
    }
}

/// Places `u` and returns the next state.
pub fn bp_step(inst: &BinPackInstance, state: &BpState, u: Id) -> BpState {
    let mut next = state.clone();
    next.unassigned.remove(&u);
    next.picked = Some(u);
    let wu = inst.w(u);
    if &inst.bin_weight(&state.b1) + wu <= inst.capacity {
        next.b1.insert(u);
    } else {
        if &inst.bin_weight(&state.b2) + wu <= inst.capacity {
            next.b2.insert(u);
        } else {
            next.p2.extend(bracket(&state.b2));
            next.b2 = [u].into_iter().collect();
        }
        if !state.b1.is_empty() {
            next.overflow.insert(state.b1.clone(), u);
        }
        next.p1.extend(bracket(&state.b1));
        next.b1 = Bin::new();
    }
    next
}

#[derive(Debug, Clone)]
pub struct BpRun {
    pub packing: Packing,
    pub trace: Trace<BpState>,
}

pub fn greedy_bp(inst: &BinPackInstance, policy: PickPolicy) -> BpRun {
    let mut picker = policy.picker();
    let mut state = BpState::initial(inst);
    let mut trace = Trace::new(state.clone());
    while state.unassigned.iter().any(|&u| inst.is_small(u)) {
        let u = select(inst, &state, &mut picker).expect("V ∩ S is non-empty");
        state = bp_step(inst, &state, u);
        trace.push(state.clone());
    }
    BpRun {
        packing: state.assembled(),
        trace,
    }
}

/// The invariant consisting of the packing condition alone. It admits states
/// in which an open bin is also listed among the closed ones.
pub fn check_inv1_weak(inst: &BinPackInstance, s: &BpState) -> Check {
    ensure(
        is_bp(inst, &s.assembled()),
        "bp (P₁ ∪ ⟦B₁⟧ ∪ P₂ ∪ ⟦B₂⟧ ∪ {{v} | v ∈ V})",
    )
}

pub fn check_inv1(inst: &BinPackInstance, s: &BpState) -> Check {
    check_inv1_weak(inst, s)?;
    let placed = union_all(&s.placed_bins());
    let rest: IdSet = inst.objects().difference(&s.unassigned).copied().collect();
    ensure(placed == rest, "⋃ (P₁ ∪ ⟦B₁⟧ ∪ P₂ ∪ ⟦B₂⟧) = U − V")?;
    ensure(
        !(s.p1.contains(&s.b1) || s.p2.contains(&s.b1) || bracket(&s.b2).contains(&s.b1)),
        "B₁ ∉ P₁ ∪ P₂ ∪ ⟦B₂⟧",
    )?;
    ensure(
        !(s.p1.contains(&s.b2) || bracket(&s.b1).contains(&s.b2) || s.p2.contains(&s.b2)),
        "B₂ ∉ P₁ ∪ ⟦B₁⟧ ∪ P₂",
    )?;
    ensure(
        s.first_side().is_disjoint(&s.second_side()),
        "(P₁ ∪ ⟦B₁⟧) ∩ (P₂ ∪ ⟦B₂⟧) = ∅",
    )
}

/// Checks the recorded overflow map is a bijection from `P₁` onto
/// `⋃ (P₂ ∪ ⟦B₂⟧)` with `c < W(B) + w(f B)` for every `B ∈ P₁`.
pub fn bijection_holds(inst: &BinPackInstance, s: &BpState) -> bool {
    let domain: Packing = s.overflow.keys().cloned().collect();
    let image: IdSet = s.overflow.values().copied().collect();
    domain == s.p1
        && image.len() == s.overflow.len()
        && image == union_all(&s.second_side())
        && s
            .overflow
            .iter()
            .all(|(b, &u)| inst.bin_weight(b) + inst.w(u) > inst.capacity)
}

pub fn check_inv2(inst: &BinPackInstance, s: &BpState) -> Check {
    check_inv1(inst, s)?;
    let large = inst.large();
    ensure(
        s.unassigned.is_disjoint(&large)
            || s.first_side().iter().all(|b| !b.is_disjoint(&large)),
        "V ∩ L ≠ ∅ ⟶ (∀B∈P₁ ∪ ⟦B₁⟧. B ∩ L ≠ ∅)",
    )?;
    ensure(bijection_holds(inst, s), "bij_exists P₁ (⋃ (P₂ ∪ ⟦B₂⟧))")?;
    ensure(
        2 * s.p2.len() <= union_all(&s.p2).len(),
        "2 * |P₂| ≤ |⋃ P₂|",
    )
}

/// `inv₂` plus `B₂ ⊆ S`.
pub fn check_inv3(inst: &BinPackInstance, s: &BpState) -> Check {
    check_inv2(inst, s)?;
    ensure(s.b2.iter().all(|&u| inst.is_small(u)), "B₂ ⊆ S")
}
