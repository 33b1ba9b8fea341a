//! Farthest-point greedy for k-center, a 2-approximation of the optimal radius.
//!
//! Sites are `1..=n` and the metric is an explicit matrix of exact rationals.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::id::{Id, IdSet};
use crate::metric::validate_metric;
use crate::pick::{PickPolicy, Picker};
use crate::rational::Rat;
use crate::trace::{ensure, Check, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricInstance {
    n: usize,
    dist: Vec<Vec<Rat>>,
}

impl MetricInstance {
    pub fn new(dist: Vec<Vec<Rat>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::Invariant("S ≠ ∅".into()));
        }
        validate_metric(&dist, n)?;
        Ok(MetricInstance { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.dist
    }

    pub fn sites(&self) -> IdSet {
        (1..=self.n as u64).map(Id).collect()
    }

    pub fn contains(&self, s: Id) -> bool {
        (1..=self.n as u64).contains(&s.0)
    }

    pub fn dist(&self, a: Id, b: Id) -> &Rat {
        &self.dist[a.0 as usize - 1][b.0 as usize - 1]
    }
}

/// `Min (dist s ` C)`.
pub fn distance(inst: &MetricInstance, centers: &IdSet, s: Id) -> Result<Rat> {
    centers
        .iter()
        .map(|&c| inst.dist(s, c))
        .min()
        .cloned()
        .ok_or(Error::EmptyCenters)
}

/// `Max (distance C ` S)`.
pub fn radius(inst: &MetricInstance, centers: &IdSet) -> Result<Rat> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    Ok(inst
        .sites()
        .into_iter()
        .map(|s| distance(inst, centers, s).expect("non-empty"))
        .max()
        .expect("at least one site"))
}

/// A site attaining the radius of `centers`; `MinId` takes the lowest id.
pub fn furthest_from(inst: &MetricInstance, centers: &IdSet, picker: &mut Picker) -> Result<Id> {
    let r = radius(inst, centers)?;
    let far: IdSet = inst
        .sites()
        .into_iter()
        .filter(|&s| distance(inst, centers, s).expect("non-empty") == r)
        .collect();
    picker.pick(&far)
}

/// Whether all distinct pairs of `centers` are more than `x` apart.
pub fn pairwise_exceeds(inst: &MetricInstance, centers: &IdSet, x: &Rat) -> bool {
    centers
        .iter()
        .all(|&a| centers.iter().all(|&b| a == b || inst.dist(a, b) > x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsState {
    pub centers: IdSet,
    pub picked: Option<Id>,
}

#[derive(Debug, Clone)]
pub struct CsRun {
    pub centers: IdSet,
    pub trace: Trace<CsState>,
}

pub fn greedy_centers(inst: &MetricInstance, k: usize, policy: PickPolicy) -> Result<CsRun> {
    if k == 0 || k > inst.n {
        return Err(Error::BadK { k, n: inst.n });
    }
    let mut picker = policy.picker();
    let first = picker.pick(&inst.sites())?;
    let mut state = CsState {
        centers: [first].into_iter().collect(),
        picked: Some(first),
    };
    let mut trace = Trace::new(state.clone());
    while state.centers.len() < k {
        let s = furthest_from(inst, &state.centers, &mut picker)?;
        state.centers.insert(s);
        state.picked = Some(s);
        trace.push(state.clone());
    }
    Ok(CsRun {
        centers: state.centers,
        trace,
    })
}

/// Loop invariant, with the quantifier over alternative center sets `C′`
/// replaced by the set of their radii.
pub fn check_invar_cs(
    inst: &MetricInstance,
    k: usize,
    centers: &IdSet,
    candidate_radii: &BTreeSet<Rat>,
) -> Check {
    ensure(!centers.is_empty(), "C ≠ ∅")?;
    ensure(centers.len() <= k, "|C| ≤ k")?;
    ensure(centers.iter().all(|&c| inst.contains(c)), "C ⊆ S")?;
    let cover = radius(inst, centers).expect("non-empty");
    ensure(
        candidate_radii.iter().all(|r| {
            let twice = Rat::from_int(2) * r;
            pairwise_exceeds(inst, centers, &twice) || cover <= twice
        }),
        "∀C′. (∀c₁∈C. ∀c₂∈C. c₁ ≠ c₂ ⟶ 2 * radius C′ < dist c₁ c₂) ∨ (∀s∈S. distance C s ≤ 2 * radius C′)",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::id::ids;
    use crate::metric::manhattan_matrix;
    use crate::trace::Violation;

    fn line(points: &[i64]) -> MetricInstance {
        let pts: Vec<(i64, i64)> = points.iter().map(|&x| (x, 0)).collect();
        MetricInstance::new(manhattan_matrix(&pts)).unwrap()
    }

    #[test]
    fn distance_examples() {
        let m = line(&[0, 4, 5]);
        assert_eq!(distance(&m, &ids([1]), Id(3)), Ok(Rat::from_int(5)));
        assert_eq!(distance(&m, &ids([2]), Id(2)), Ok(Rat::zero()));
        assert_eq!(distance(&m, &ids([1, 2]), Id(3)), Ok(Rat::from_int(1)));
        assert_eq!(distance(&m, &IdSet::new(), Id(3)), Err(Error::EmptyCenters));
    }

    #[test]
    fn radius_examples() {
        let m = line(&[0, 4, 5]);
        assert_eq!(radius(&m, &m.sites()), Ok(Rat::zero()));
        assert_eq!(radius(&m, &ids([1])), Ok(Rat::from_int(5)));
        assert_eq!(radius(&m, &ids([1, 3])), Ok(Rat::from_int(1)));
        assert_eq!(radius(&m, &IdSet::new()), Err(Error::EmptyCenters));
    }

    #[test]
    fn furthest_examples() {
        let m = line(&[0, 4, 5]);
        let mut p = PickPolicy::MinId.picker();
        assert_eq!(furthest_from(&m, &ids([1]), &mut p), Ok(Id(3)));
        assert_eq!(furthest_from(&m, &m.sites(), &mut p), Ok(Id(1)));
        let m = line(&[0, 4, 8]);
        assert_eq!(furthest_from(&m, &ids([2]), &mut p), Ok(Id(1)));
    }

    #[test]
    fn greedy_examples() {
        let m = line(&[0, 4, 5]);
        let run = greedy_centers(&m, 2, PickPolicy::MinId).unwrap();
        assert_eq!(run.centers, ids([1, 3]));
        assert_eq!(radius(&m, &run.centers), Ok(Rat::from_int(1)));

        let run = greedy_centers(&m, 3, PickPolicy::Seeded(5)).unwrap();
        assert_eq!(run.centers, m.sites());

        let m = line(&[0, 10]);
        let run = greedy_centers(&m, 1, PickPolicy::MinId).unwrap();
        assert_eq!(run.centers, ids([1]));
        assert_eq!(radius(&m, &run.centers), Ok(Rat::from_int(10)));
    }

    #[test]
    fn bad_k() {
        let m = line(&[0, 1]);
        assert_eq!(
            greedy_centers(&m, 0, PickPolicy::MinId).unwrap_err(),
            Error::BadK { k: 0, n: 2 }
        );
        assert!(greedy_centers(&m, 3, PickPolicy::MinId).is_err());
    }

    #[test]
    fn invariant_on_singleton_and_violation() {
        let m = line(&[0, 4, 5, 20]);
        let radii: BTreeSet<Rat> = [Rat::from_int(2), Rat::from_int(7)].into_iter().collect();
        assert_eq!(check_invar_cs(&m, 2, &ids([2]), &radii), Ok(()));
        // sites at 0 and 4 are exactly 2·2 apart, site 20 is 16 > 4 away
        let r0: BTreeSet<Rat> = [Rat::from_int(2)].into_iter().collect();
        assert!(matches!(check_invar_cs(&m, 3, &ids([1, 2]), &r0), Err(Violation(_))));
        assert_eq!(check_invar_cs(&m, 1, &ids([1, 2]), &r0), Err(Violation("|C| ≤ k")));
        assert_eq!(check_invar_cs(&m, 2, &ids([9]), &r0), Err(Violation("C ⊆ S")));
        assert_eq!(check_invar_cs(&m, 2, &IdSet::new(), &r0), Err(Violation("C ≠ ∅")));
    }
}
