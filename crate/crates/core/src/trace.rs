//! Loop traces and invariant replay.
//!
//! Every solver records a full snapshot of its loop state before the first
//! iteration and after each iteration. An invariant is a function from a
//! snapshot to either `Ok(())` or the label of the first conjunct that fails;
//! [`replay_check`] evaluates it at every recorded point.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// The label of the first invariant conjunct that does not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation(pub &'static str);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

pub type Check = Result<(), Violation>;

/// `Ok(())` when `cond` holds, otherwise the conjunct `label`.
pub fn ensure(cond: bool, label: &'static str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(Violation(label))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace<S> {
    pub init: S,
    pub steps: Vec<S>,
}

impl<S> Trace<S> {
    pub fn new(init: S) -> Self {
        Trace {
            init,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, state: S) {
        self.steps.push(state);
    }

    /// State at loop exit: the last step, or `init` when the loop never ran.
    pub fn final_state(&self) -> &S {
        self.steps.last().unwrap_or(&self.init)
    }

    /// All snapshots in program order, `init` first.
    pub fn points(&self) -> impl Iterator<Item = &S> {
        std::iter::once(&self.init).chain(self.steps.iter())
    }

    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl<S: Serialize> Serialize for Trace<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for s in self.points() {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TracePoint {
    Init,
    Step(usize),
}

impl fmt::Display for TracePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TracePoint::Init => f.write_str("init"),
            TracePoint::Step(i) => write!(f, "step {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub point: TracePoint,
    /// `None` when the invariant held.
    pub violated: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub ok: bool,
    pub points: Vec<PointReport>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&PointReport> {
        self.points.iter().find(|p| p.violated.is_some())
    }
}

/// Evaluates `inv` at init and after every step. Steps are numbered from 1.
pub fn replay_check<S, F>(trace: &Trace<S>, mut inv: F) -> Report
where
    F: FnMut(&S) -> Check,
{
    let points: Vec<PointReport> = trace
        .points()
        .enumerate()
        .map(|(i, s)| PointReport {
            point: if i == 0 {
                TracePoint::Init
            } else {
                TracePoint::Step(i)
            },
            violated: inv(s).err().map(|v| v.0),
        })
        .collect();
    Report {
        ok: points.iter().all(|p| p.violated.is_none()),
        points,
    }
}
