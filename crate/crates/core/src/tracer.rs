//! Backward search for the Baby Monster containing a tangency plane.
//!
//! A candidate plane `T1` (or `T2`) at level `k` is cut out by `du_k = 0`
//! (or `dv_k = 0`). Since `u_k = dX/dD` in the chart, a plane inside a Baby
//! Monster with `du_k = 0` projects to one with `dX = 0` one level down. The
//! descent repeats until the vanishing covector is the uniformizing entry
//! `dF_i` of some level, i.e. the vertical plane of level `i`: then the
//! candidate is `delta(i, k - i)`. It fails if the projected plane is not a
//! critical plane of the lower level, or if the line chosen there does not lie
//! in it.
//!
//! This module does not read plane ledgers from [`crate::tower`]; it shares
//! only the chart selection. Which planes exist at lower levels is decided by
//! tracing those levels themselves.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rules::{validate, RuleViolation};
use crate::tower::chart::CoordRef;
use crate::tower::{
    canonical_charts, coframe_at, membership, ChartLevel, Covector, Delta, PlaneSlot,
};
use crate::word::RvtWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepVerdict {
    Continue,
    Vertical,
    NotAPlane,
    LineNotContained,
    ReachedBase,
}

impl StepVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StepVerdict::Continue => "continue",
            StepVerdict::Vertical => "vertical",
            StepVerdict::NotAPlane => "not_a_plane",
            StepVerdict::LineNotContained => "line_not_contained",
            StepVerdict::ReachedBase => "reached_base",
        }
    }
}

impl fmt::Display for StepVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StepVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// One level of a descent: the covector that vanishes identically on the
/// candidate plane there, and what was concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    pub level: usize,
    pub covector: Covector,
    pub verdict: StepVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum AbsenceReason {
    /// `{d alpha = 0}` is not a critical plane present at `level`.
    NotAPlane { level: usize },
    /// The line chosen at `level` does not lie in the projected plane.
    LineNotContained { level: usize },
    /// The descent ran out of levels without meeting a vertical plane.
    ReachedBase,
}

impl fmt::Display for AbsenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsenceReason::NotAPlane { level } => write!(f, "NotAPlane @{level}"),
            AbsenceReason::LineNotContained { level } => write!(f, "LineNotContained @{level}"),
            AbsenceReason::ReachedBase => f.write_str("ReachedBase"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceOutcome {
    Exists(Delta),
    Absent(AbsenceReason),
}

impl TraceOutcome {
    pub fn delta(&self) -> Option<Delta> {
        match self {
            TraceOutcome::Exists(d) => Some(*d),
            TraceOutcome::Absent(_) => None,
        }
    }

    pub fn exists(&self) -> bool {
        self.delta().is_some()
    }
}

/// `Exists(1,2)` / `Absent(LineNotContained @3)`
impl fmt::Display for TraceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOutcome::Exists(d) => write!(f, "Exists({},{})", d.birth, d.steps),
            TraceOutcome::Absent(r) => write!(f, "Absent({r})"),
        }
    }
}

/// Outcome of a trace together with the full descent log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub word: RvtWord,
    pub slot: PlaneSlot,
    pub steps: Vec<DescentStep>,
    pub outcome: TraceOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error(transparent)]
    Rule(#[from] RuleViolation),
    #[error("the empty word has no critical planes to trace")]
    EmptyWord,
    #[error("only T1 and T2 can be traced; the vertical plane is always delta(k,0)")]
    VerticalSlot,
}

/// Runs the backward method for the plane in `slot` over the top point of
/// `word`.
pub fn trace(word: &RvtWord, slot: PlaneSlot) -> Result<Trace, TraceError> {
    if slot == PlaneSlot::V {
        return Err(TraceError::VerticalSlot);
    }
    if word.is_empty() {
        return Err(TraceError::EmptyWord);
    }
    validate(word)?;
    let mut tracer = Tracer::new(word);
    tracer.fill_presence(word.len() - 1);
    let (steps, outcome) = tracer.descend(word.len(), slot);
    Ok(Trace {
        word: word.clone(),
        slot,
        steps,
        outcome,
    })
}

/// Presence of `T1`/`T2` at every level `1..=k`, as found by the backward
/// method alone.
pub fn tangency_presence(word: &RvtWord) -> Result<Vec<[bool; 2]>, TraceError> {
    validate(word)?;
    let mut tracer = Tracer::new(word);
    tracer.fill_presence(word.len());
    Ok(tracer.presence[1..].to_vec())
}

struct Tracer<'w> {
    word: &'w RvtWord,
    charts: Vec<ChartLevel>,
    /// `presence[i] = [T1 present, T2 present]` at level `i`, filled bottom-up.
    presence: Vec<[bool; 2]>,
}

impl<'w> Tracer<'w> {
    fn new(word: &'w RvtWord) -> Self {
        let charts = canonical_charts(word.letters().iter().map(|&l| membership(l)));
        Self {
            word,
            charts,
            presence: vec![[false, false]],
        }
    }

    fn fill_presence(&mut self, up_to: usize) {
        while self.presence.len() <= up_to {
            let level = self.presence.len();
            let t1 = self.descend(level, PlaneSlot::T1).1.exists();
            let t2 = self.descend(level, PlaneSlot::T2).1.exists();
            self.presence.push([t1, t2]);
        }
    }

    fn present(&self, level: usize, slot: PlaneSlot) -> bool {
        match slot {
            PlaneSlot::V => level >= 1,
            PlaneSlot::T1 => self.presence[level][0],
            PlaneSlot::T2 => self.presence[level][1],
        }
    }

    /// Needs presence filled for all levels below `top`.
    fn descend(&self, top: usize, slot: PlaneSlot) -> (Vec<DescentStep>, TraceOutcome) {
        let mut log = Vec::with_capacity(top);
        let mut level = top;
        let mut coord = coframe_at(&self.charts, top).entry(slot);
        loop {
            if level < top {
                let here = coframe_at(&self.charts, level)
                    .slot_of(coord)
                    .expect("chart numerators come from the coframe below");
                let absent = if !self.present(level, here) {
                    Some((StepVerdict::NotAPlane, AbsenceReason::NotAPlane { level }))
                } else if !membership(self.word.at(level + 1)).contains(here) {
                    Some((
                        StepVerdict::LineNotContained,
                        AbsenceReason::LineNotContained { level },
                    ))
                } else {
                    None
                };
                if let Some((verdict, reason)) = absent {
                    log.push(DescentStep {
                        level,
                        covector: coord.covector(),
                        verdict,
                    });
                    return (log, TraceOutcome::Absent(reason));
                }
                if here == PlaneSlot::V {
                    log.push(DescentStep {
                        level,
                        covector: coord.covector(),
                        verdict: StepVerdict::Vertical,
                    });
                    return (log, TraceOutcome::Exists(Delta::new(level, top - level)));
                }
            }

            let axis = match coord {
                CoordRef::Fiber { level: l, axis } if l == level => axis,
                _ => unreachable!("non-vertical entries are the fiber coordinates of their level"),
            };
            if level == 1 {
                // u1 = dy/dx, v1 = dz/dx: level 0 has no critical planes.
                log.push(DescentStep {
                    level,
                    covector: coord.covector(),
                    verdict: StepVerdict::ReachedBase,
                });
                return (log, TraceOutcome::Absent(AbsenceReason::ReachedBase));
            }
            log.push(DescentStep {
                level,
                covector: coord.covector(),
                verdict: StepVerdict::Continue,
            });
            coord = self.charts[level - 1].numerator_of(axis);
            level -= 1;
        }
    }
}
