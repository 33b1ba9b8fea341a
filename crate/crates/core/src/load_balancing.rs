//! Greedy list scheduling on identical machines.
//!
//! Jobs are placed one at a time on a least-loaded machine. In input order
//! the makespan is within a factor 2 of optimal; with loads sorted in
//! descending order first, within 3/2.
//!
//! Machines and jobs are 1-based throughout: machine `x ∈ 1..=m`, job
//! `j ∈ 1..=n`.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::trace::{ensure, Check, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadInstance {
    machines: usize,
    loads: Vec<u64>,
}

impl LoadInstance {
    pub fn new(machines: usize, loads: Vec<u64>) -> Result<Self> {
        if machines == 0 {
            return Err(Error::Invariant("0 < m".into()));
        }
        if loads.contains(&0) {
            return Err(Error::Invariant("t(j) > 0".into()));
        }
        Ok(LoadInstance { machines, loads })
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> usize {
        self.loads.len()
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    /// Load of job `j` (1-based).
    pub fn t(&self, j: usize) -> u64 {
        self.loads[j - 1]
    }

    /// The first `j` jobs as an instance of their own.
    pub fn prefix(&self, j: usize) -> LoadInstance {
        LoadInstance {
            machines: self.machines,
            loads: self.loads[..j].to_vec(),
        }
    }

    /// `sorted j`: loads of jobs `1..=j` are non-increasing.
    pub fn is_sorted_prefix(&self, j: usize) -> bool {
        self.loads[..j].windows(2).all(|w| w[0] >= w[1])
    }

    /// `Max₀ (t ` {1..j})`, 0 for `j = 0`.
    pub fn max0_prefix(&self, j: usize) -> u64 {
        self.loads[..j].iter().copied().max().unwrap_or(0)
    }

    pub fn prefix_sum(&self, j: usize) -> u64 {
        self.loads[..j].iter().sum()
    }
}

/// Partial solution for the first `placed` jobs: `assignment[x-1]` holds the
/// jobs on machine `x` and `loads[x-1]` its total load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schedule {
    pub assignment: Vec<BTreeSet<usize>>,
    pub loads: Vec<u64>,
    pub placed: usize,
}

impl Schedule {
    pub fn empty(machines: usize) -> Self {
        Schedule {
            assignment: vec![BTreeSet::new(); machines],
            loads: vec![0; machines],
            placed: 0,
        }
    }

    /// `T x` for machine `x` (1-based).
    pub fn load(&self, x: usize) -> u64 {
        self.loads[x - 1]
    }

    pub fn makespan(&self) -> u64 {
        makespan(&self.loads, self.loads.len())
    }

    /// Builds the schedule for jobs `1..=assign.len()` where job `j` runs on
    /// machine `assign[j-1]`.
    pub fn from_assignment(inst: &LoadInstance, assign: &[usize]) -> Self {
        let mut s = Schedule::empty(inst.machines);
        for &x in assign {
            s = add_job(inst, &s, x);
        }
        s
    }
}

/// Checks the three conjuncts of `lb T A j` in order.
pub fn check_lb(inst: &LoadInstance, s: &Schedule) -> Check {
    let m = inst.machines;
    let well_formed = s.assignment.len() == m && s.loads.len() == m;
    ensure(
        well_formed
            && (0..m).all(|x| (x + 1..m).all(|y| s.assignment[x].is_disjoint(&s.assignment[y]))),
        "A x ∩ A y = ∅",
    )?;
    let all: BTreeSet<usize> = s.assignment.iter().flatten().copied().collect();
    ensure(all == (1..=s.placed).collect(), "⋃ A x = {1..j}")?;
    ensure(
        s.placed <= inst.jobs()
            && (0..m).all(|x| s.assignment[x].iter().map(|&j| inst.t(j)).sum::<u64>() == s.loads[x]),
        "∑y∈A x. t y = T x",
    )
}

pub fn lb_holds(inst: &LoadInstance, s: &Schedule) -> bool {
    check_lb(inst, s).is_ok()
}

/// Least index in `1..=m` of minimum load. Ties keep the earlier index.
pub fn min_arg(loads: &[u64], m: usize) -> usize {
    let mut k = 1;
    for x in 1..m {
        if loads[x] < loads[k - 1] {
            k = x + 1;
        }
    }
    k
}

/// Maximum load over machines `1..=m`.
pub fn makespan(loads: &[u64], m: usize) -> u64 {
    loads[..m].iter().copied().max().expect("m ≥ 1")
}

/// Places job `placed + 1` on machine `x`.
pub fn add_job(inst: &LoadInstance, s: &Schedule, x: usize) -> Schedule {
    let j = s.placed + 1;
    let mut next = s.clone();
    next.assignment[x - 1].insert(j);
    next.loads[x - 1] += inst.t(j);
    next.placed = j;
    next
}

/// Removes the last placed job, giving a partial solution for one job fewer
/// whose makespan is no larger.
pub fn remove_last_job(inst: &LoadInstance, s: &Schedule) -> Schedule {
    let j = s.placed;
    assert!(j > 0, "no job to remove");
    let mut next = s.clone();
    for (x, jobs) in next.assignment.iter_mut().enumerate() {
        if jobs.remove(&j) {
            next.loads[x] -= inst.t(j);
        }
    }
    next.placed = j - 1;
    next
}

#[derive(Debug, Clone)]
pub struct BalanceRun {
    /// Instance in the order the jobs were scheduled.
    pub instance: LoadInstance,
    /// `order[p-1]` is the original index of the job scheduled at position `p`.
    pub order: Vec<usize>,
    pub schedule: Schedule,
    pub trace: Trace<Schedule>,
}

impl BalanceRun {
    /// Job sets per machine in original job numbering.
    pub fn original_assignment(&self) -> Vec<BTreeSet<usize>> {
        self.schedule
            .assignment
            .iter()
            .map(|jobs| jobs.iter().map(|&p| self.order[p - 1]).collect())
            .collect()
    }
}

pub fn greedy_balance(inst: &LoadInstance, presort: bool) -> BalanceRun {
    let mut order: Vec<usize> = (1..=inst.jobs()).collect();
    if presort {
        order.sort_by_key(|&j| Reverse(inst.t(j)));
    }
    let instance = LoadInstance {
        machines: inst.machines,
        loads: order.iter().map(|&j| inst.t(j)).collect(),
    };
    let mut s = Schedule::empty(instance.machines);
    let mut trace = Trace::new(s.clone());
    while s.placed < instance.jobs() {
        let i = min_arg(&s.loads, instance.machines);
        s = add_job(&instance, &s, i);
        trace.push(s.clone());
    }
    BalanceRun {
        instance,
        order,
        schedule: s,
        trace,
    }
}

/// Invariant for input order. `opt_prefix` is the optimum makespan of the
/// first `s.placed` jobs, standing in for the quantifier over all partial
/// solutions.
pub fn check_inv1(inst: &LoadInstance, s: &Schedule, opt_prefix: u64) -> Check {
    check_lb(inst, s)?;
    ensure(s.placed <= inst.jobs(), "j ≤ n")?;
    ensure(
        s.makespan() <= 2 * opt_prefix,
        "makespan T ≤ 2 * makespan T′",
    )
}

/// Invariant for descending order, same convention as [`check_inv1`].
pub fn check_inv2(inst: &LoadInstance, s: &Schedule, opt_prefix: u64) -> Check {
    check_lb(inst, s)?;
    let j = s.placed;
    ensure(j <= inst.jobs(), "j ≤ n")?;
    ensure(
        2 * s.makespan() <= 3 * opt_prefix,
        "makespan T ≤ 3 / 2 * makespan T′",
    )?;
    ensure(
        (j + 1..=inst.machines).all(|x| s.load(x) == 0),
        "∀x > j. T x = 0",
    )?;
    ensure(
        j > inst.machines || s.makespan() == inst.max0_prefix(j),
        "j ≤ m ⟶ makespan T = Max₀ (t ` {1..j})",
    )
}

/// Exact average-load lower bound `(∑ t) / m`.
pub fn average_load(inst: &LoadInstance, j: usize) -> Rat {
    Rat::from(inst.prefix_sum(j)) / Rat::from(inst.machines)
}
