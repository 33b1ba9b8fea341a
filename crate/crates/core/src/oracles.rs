//! Exact optima by exhaustive search, for instances small enough to enumerate.
//!
//! These certify the approximation bounds and stand in for the invariants'
//! quantifiers over all solutions. Each oracle refuses inputs above its
//! [`OracleLimits`] cap. Where several optima exist the witness returned is
//! the first in lexicographic order of the search.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bin_packing::{BinPackInstance, Packing};
use crate::center_selection::{radius, MetricInstance};
use crate::error::{Error, Result};
use crate::id::{Id, IdSet};
use crate::independent_set::{is_independent_set, Graph};
use crate::load_balancing::{LoadInstance, Schedule};
use crate::rational::Rat;
use crate::set_cover::SetCoverInstance;
use crate::vertex_cover::{is_vertex_cover, Hypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleLimits {
    pub cover_vertices: usize,
    pub independent_vertices: usize,
    pub jobs: usize,
    pub machines: usize,
    pub sites: usize,
    pub subsets: usize,
    pub objects: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            cover_vertices: 16,
            independent_vertices: 16,
            jobs: 12,
            machines: 4,
            sites: 12,
            subsets: 16,
            objects: 12,
        }
    }
}

fn cap(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until
/// it returns `true`.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pick_ids(all: &[Id], idx: &[usize]) -> IdSet {
    idx.iter().map(|&i| all[i]).collect()
}

impl OracleLimits {
    /// Minimum vertex cover, searched by increasing size.
    pub fn opt_vertex_cover(&self, h: &Hypergraph) -> Result<(usize, IdSet)> {
        let verts: Vec<Id> = h.vertices().into_iter().collect();
        cap("|V|", verts.len(), self.cover_vertices)?;
        for size in 0..=verts.len() {
            let mut found = None;
            for_each_combination(verts.len(), size, |idx| {
                let c = pick_ids(&verts, idx);
                if is_vertex_cover(h, &c) {
                    found = Some(c);
                    true
                } else {
                    false
                }
            });
            if let Some(c) = found {
                return Ok((size, c));
            }
        }
        unreachable!("V covers every edge")
    }

    /// Maximum independent set, searched by decreasing size.
    pub fn opt_independent_set(&self, g: &Graph) -> Result<(usize, IdSet)> {
        let verts: Vec<Id> = g.vertices().into_iter().collect();
        cap("|V|", verts.len(), self.independent_vertices)?;
        for size in (0..=verts.len()).rev() {
            let mut found = None;
            for_each_combination(verts.len(), size, |idx| {
                let s = pick_ids(&verts, idx);
                if is_independent_set(g, &s) {
                    found = Some(s);
                    true
                } else {
                    false
                }
            });
            if let Some(s) = found {
                return Ok((size, s));
            }
        }
        unreachable!("the empty set is independent")
    }

    /// Minimum makespan over all schedules of jobs `1..=j`.
    pub fn opt_makespan(&self, inst: &LoadInstance, j: usize) -> Result<(u64, Schedule)> {
        cap("n", j, self.jobs)?;
        cap("m", inst.machines(), self.machines)?;
        let m = inst.machines();
        let loads = &inst.loads()[..j];
        let lower = loads
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(loads.iter().sum::<u64>().div_ceil(m as u64));

        struct Search<'a> {
            loads: &'a [u64],
            m: usize,
            lower: u64,
            machine_loads: Vec<u64>,
            assign: Vec<usize>,
            best: u64,
            best_assign: Vec<usize>,
        }

        impl Search<'_> {
            fn dfs(&mut self, job: usize, current: u64) -> bool {
                if current >= self.best {
                    return false;
                }
                if job == self.loads.len() {
                    self.best = current;
                    self.best_assign = self.assign.clone();
                    return self.best == self.lower;
                }
                let mut tried_empty = false;
                for x in 0..self.m {
                    if self.machine_loads[x] == 0 {
                        // empty machines are interchangeable
                        if tried_empty {
                            continue;
                        }
                        tried_empty = true;
                    }
                    self.machine_loads[x] += self.loads[job];
                    self.assign.push(x + 1);
                    let next = current.max(self.machine_loads[x]);
                    let done = self.dfs(job + 1, next);
                    self.assign.pop();
                    self.machine_loads[x] -= self.loads[job];
                    if done {
                        return true;
                    }
                }
                false
            }
        }

        let mut search = Search {
            loads,
            m,
            lower,
            machine_loads: vec![0; m],
            assign: Vec::with_capacity(j),
            best: u64::MAX,
            best_assign: Vec::new(),
        };
        search.dfs(0, 0);
        let schedule = Schedule::from_assignment(inst, &search.best_assign);
        Ok((search.best, schedule))
    }

    /// Optimum makespans of every prefix `0..=n`.
    pub fn prefix_optima(&self, inst: &LoadInstance) -> Result<Vec<u64>> {
        (0..=inst.jobs())
            .map(|j| self.opt_makespan(inst, j).map(|(v, _)| v))
            .collect()
    }

    /// Minimum radius over all `k`-subsets of sites.
    pub fn opt_radius(&self, inst: &MetricInstance, k: usize) -> Result<(Rat, IdSet)> {
        cap("n", inst.n(), self.sites)?;
        if k == 0 || k > inst.n() {
            return Err(Error::BadK { k, n: inst.n() });
        }
        let sites: Vec<Id> = inst.sites().into_iter().collect();
        let mut best: Option<(Rat, IdSet)> = None;
        for_each_combination(sites.len(), k, |idx| {
            let c = pick_ids(&sites, idx);
            let r = radius(inst, &c).expect("k ≥ 1");
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, c));
            }
            false
        });
        Ok(best.expect("at least one subset"))
    }

    /// Radii of every non-empty set of sites.
    pub fn candidate_radii(&self, inst: &MetricInstance) -> Result<BTreeSet<Rat>> {
        cap("n", inst.n(), self.sites)?;
        let sites: Vec<Id> = inst.sites().into_iter().collect();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << sites.len()) {
            let c: IdSet = (0..sites.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sites[i])
                .collect();
            out.insert(radius(inst, &c).expect("non-empty"));
        }
        Ok(out)
    }

    /// Minimum-weight cover by enumerating every index set.
    pub fn opt_set_cover(&self, inst: &SetCoverInstance) -> Result<(Rat, BTreeSet<usize>)> {
        let m = inst.m();
        cap("m", m, self.subsets)?;
        let mut best: Option<(Rat, Vec<usize>)> = None;
        for mask in 0u32..(1 << m) {
            let cover: BTreeSet<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if !inst.is_set_cover(&cover) {
                continue;
            }
            let w = inst.total_weight(&cover);
            let list: Vec<usize> = cover.into_iter().collect();
            let better = match &best {
                None => true,
                Some((bw, bl)) => w < *bw || (w == *bw && list < *bl),
            };
            if better {
                best = Some((w, list));
            }
        }
        let (w, list) = best.expect("all subsets together cover U");
        Ok((w, list.into_iter().collect()))
    }

    /// Minimum-weight cover by branch and bound: branch on the subsets that
    /// contain the least uncovered element.
    pub fn opt_set_cover_bnb(&self, inst: &SetCoverInstance) -> Result<(Rat, BTreeSet<usize>)> {
        cap("m", inst.m(), self.subsets)?;

        fn go(
            inst: &SetCoverInstance,
            remaining: &IdSet,
            chosen: &mut BTreeSet<usize>,
            weight: Rat,
            best: &mut Option<(Rat, BTreeSet<usize>)>,
        ) {
            if best.as_ref().is_some_and(|(b, _)| weight >= *b) {
                return;
            }
            let Some(&u) = remaining.iter().next() else {
                *best = Some((weight, chosen.clone()));
                return;
            };
            for i in 1..=inst.m() {
                if chosen.contains(&i) || !inst.subset(i).contains(&u) {
                    continue;
                }
                let rest: IdSet = remaining.difference(inst.subset(i)).copied().collect();
                chosen.insert(i);
                go(inst, &rest, chosen, &weight + inst.weight(i), best);
                chosen.remove(&i);
            }
        }

        let mut best = None;
        go(inst, inst.universe(), &mut BTreeSet::new(), Rat::zero(), &mut best);
        Ok(best.expect("all subsets together cover U"))
    }

    /// Minimum number of bins by dynamic programming over subsets of objects.
    pub fn opt_bins(&self, inst: &BinPackInstance) -> Result<(usize, Packing)> {
        let objs: Vec<Id> = inst.objects().into_iter().collect();
        let n = objs.len();
        cap("|U|", n, self.objects)?;
        let full = (1usize << n) - 1;
        let mut weight = vec![Rat::zero(); 1 << n];
        for mask in 1..=full {
            let low = mask.trailing_zeros() as usize;
            weight[mask] = &weight[mask & (mask - 1)] + inst.w(objs[low]);
        }
        let fits: Vec<bool> = weight.iter().map(|w| w <= inst.capacity()).collect();

        // Feasible bins within `mask` that contain its lowest object.
        let bins_with_low = |mask: usize| {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut sub = rest;
            let mut out = Vec::new();
            loop {
                if fits[sub | low] {
                    out.push(sub | low);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            out
        };

        let mut dp = vec![usize::MAX; 1 << n];
        dp[0] = 0;
        for mask in 1..=full {
            dp[mask] = bins_with_low(mask)
                .into_iter()
                .map(|b| dp[mask ^ b] + 1)
                .min()
                .expect("a single object always fits");
        }

        let as_bin = |b: usize| -> IdSet { (0..n).filter(|i| b >> i & 1 == 1).map(|i| objs[i]).collect() };
        let mut packing = Packing::new();
        let mut rest = full;
        while rest != 0 {
            let bin = bins_with_low(rest)
                .into_iter()
                .filter(|&b| dp[rest ^ b] + 1 == dp[rest])
                .map(as_bin)
                .min()
                .expect("an optimal choice exists");
            for u in &bin {
                let i = objs.iter().position(|o| o == u).expect("known object");
                rest &= !(1 << i);
            }
            packing.insert(bin);
        }
        Ok((dp[full], packing))
    }
}

pub fn opt_vertex_cover(h: &Hypergraph) -> Result<(usize, IdSet)> {
    OracleLimits::default().opt_vertex_cover(h)
}

pub fn opt_independent_set(g: &Graph) -> Result<(usize, IdSet)> {
    OracleLimits::default().opt_independent_set(g)
}

pub fn opt_makespan(inst: &LoadInstance, j: usize) -> Result<(u64, Schedule)> {
    OracleLimits::default().opt_makespan(inst, j)
}

pub fn opt_radius(inst: &MetricInstance, k: usize) -> Result<(Rat, IdSet)> {
    OracleLimits::default().opt_radius(inst, k)
}

pub fn opt_set_cover(inst: &SetCoverInstance) -> Result<(Rat, BTreeSet<usize>)> {
    OracleLimits::default().opt_set_cover(inst)
}

pub fn opt_bins(inst: &BinPackInstance) -> Result<(usize, Packing)> {
    OracleLimits::default().opt_bins(inst)
}

/// Job sets per machine, for reporting a schedule witness.
pub fn schedule_witness(s: &Schedule) -> BTreeMap<usize, BTreeSet<usize>> {
    s.assignment
        .iter()
        .enumerate()
        .map(|(x, jobs)| (x + 1, jobs.clone()))
        .collect()
}
