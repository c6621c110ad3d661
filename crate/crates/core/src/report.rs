//! Text, JSON and markdown renderings of analyses, traces and the summary
//! tables. Every table here is recomputed from the engines.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::rules::successors_of_letter;
use crate::tower::{
    birth_data, configuration, derived_successors, AnalysisError, Configuration, Delta, PlaneSlot,
    TowerState,
};
use crate::tracer::Trace;
use crate::word::{Letter, LetterSet, RvtWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneEntry {
    pub slot: String,
    pub birth: usize,
    pub steps: usize,
}

/// One level of an analysis, laid out like the worked example tables:
/// coordinates, fiber coordinates, critical planes, code of the point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub level: usize,
    pub letter: String,
    pub code: String,
    pub coordinates: String,
    /// Homogeneous coordinates of the fiber, `[dF : dU : dV]` of the level below.
    pub fiber: String,
    pub uniformizing: String,
    pub chart: Vec<String>,
    pub configuration: Vec<String>,
    pub planes: Vec<PlaneEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub word: String,
    pub dimension: usize,
    pub levels: Vec<ReportRow>,
}

impl AnalysisReport {
    pub fn build(word: &RvtWord) -> Result<Self, AnalysisError> {
        let state = TowerState::from_word(word)?;
        let levels = state
            .reports()
            .into_iter()
            .map(|r| ReportRow {
                level: r.level,
                letter: r.letter.to_string(),
                code: word.prefix(r.level).to_string(),
                coordinates: r.chart.coordinates(),
                fiber: state.coframe(r.level - 1).to_string(),
                uniformizing: r.chart.denominator.covector().to_string(),
                chart: vec![r.chart.u_definition(), r.chart.v_definition()],
                configuration: r
                    .configuration
                    .present()
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                planes: r
                    .planes
                    .iter()
                    .map(|p| PlaneEntry {
                        slot: p.slot.to_string(),
                        birth: p.delta.birth,
                        steps: p.delta.steps,
                    })
                    .collect(),
            })
            .collect();
        Ok(Self {
            word: word.to_string(),
            dimension: state.dim(),
            levels,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "word: {}  (level {}, dim {})",
            self.word,
            self.levels.len(),
            self.dimension
        );
        out.push('\n');
        out.push_str("| level | coordinates | fiber | critical planes | code |\n");
        out.push_str("|---|---|---|---|---|\n");
        for row in &self.levels {
            let planes: Vec<String> = row
                .planes
                .iter()
                .map(|p| format!("{}={}", p.slot, Delta::new(p.birth, p.steps)))
                .collect();
            let _ = writeln!(
                out,
                "| {} | {}; {} | {} | {} | {} |",
                row.level,
                row.coordinates,
                row.chart.join(", "),
                row.fiber,
                planes.join(", "),
                row.code
            );
        }
        out
    }
}

pub fn trace_json(trace: &Trace) -> String {
    serde_json::to_string_pretty(trace).expect("trace serializes")
}

pub fn trace_text(trace: &Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "trace {} {}", trace.word, trace.slot);
    for step in &trace.steps {
        let _ = writeln!(
            out,
            "  level {:<3} {:<6} {}",
            step.level,
            step.covector.to_string(),
            step.verdict
        );
    }
    let path: Vec<String> = trace.steps.iter().map(|s| s.covector.to_string()).collect();
    let _ = writeln!(out, "path: {}", path.join(" -> "));
    let _ = writeln!(out, "outcome: {}", trace.outcome);
    out
}

/// A word ending in each letter, used to read off per-letter rows.
pub fn representative(letter: Letter) -> RvtWord {
    let text = match letter {
        Letter::R => "R",
        Letter::V => "RV",
        Letter::T1 => "RVT1",
        Letter::T2 => "RVL1T2",
        Letter::L1 => "RVL1",
        Letter::L2 => "RVL1L2",
        Letter::L3 => "RVL1L3",
    };
    text.parse().expect("representatives are well formed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorRow {
    pub letter: Letter,
    pub allowed: LetterSet,
    pub forbidden: LetterSet,
}

/// The successor table as derived from critical-plane configurations.
pub fn successor_rows() -> Vec<SuccessorRow> {
    Letter::ALL
        .into_iter()
        .map(|letter| {
            let allowed =
                derived_successors(&representative(letter)).expect("representative is admissible");
            let forbidden = Letter::ALL
                .into_iter()
                .filter(|l| !allowed.contains(*l))
                .collect();
            SuccessorRow {
                letter,
                allowed,
                forbidden,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationRow {
    pub last_letters: Vec<Letter>,
    pub configuration: Configuration,
}

/// Letters grouped by the configuration over a point they end.
pub fn configuration_rows() -> Vec<ConfigurationRow> {
    let mut rows: Vec<ConfigurationRow> = Vec::new();
    for letter in Letter::ALL {
        let conf = configuration(&representative(letter)).expect("representative is admissible");
        match rows.iter_mut().find(|r| r.configuration == conf) {
            Some(row) => row.last_letters.push(letter),
            None => rows.push(ConfigurationRow {
                last_letters: vec![letter],
                configuration: conf,
            }),
        }
    }
    rows
}

/// Parametric word families ending `... L1 T2`, `... L1 L2`, `... L1 L3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyShape {
    /// `λ V T1^m L1 x`, `m >= 0`
    VT1mL1,
    /// `λ L1 T1^m L1 x`, `m >= 1`
    L1T1mL1,
    /// `λ L1 L1 x`
    L1L1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub shape: FamilyShape,
    pub last: Letter,
}

/// Upper end of the `m` range used when instantiating families.
pub const MAX_M: usize = 5;

/// Prefixes substituted for `λ`; instances that break the spelling rules
/// are skipped.
pub const LAMBDAS: [&str; 4] = ["R", "RV", "RVL1", "RRVT1"];

impl Family {
    pub fn all() -> Vec<Family> {
        let mut out = Vec::new();
        for last in [Letter::T2, Letter::L2, Letter::L3] {
            for shape in [FamilyShape::VT1mL1, FamilyShape::L1T1mL1, FamilyShape::L1L1] {
                out.push(Family { shape, last });
            }
        }
        out
    }

    pub fn m_range(&self) -> std::ops::RangeInclusive<usize> {
        match self.shape {
            FamilyShape::VT1mL1 => 0..=MAX_M,
            FamilyShape::L1T1mL1 => 1..=MAX_M,
            FamilyShape::L1L1 => 0..=0,
        }
    }

    pub fn label(&self) -> String {
        match self.shape {
            FamilyShape::VT1mL1 => format!("λ V T1^m L1 {}, m ≥ 0", self.last),
            FamilyShape::L1T1mL1 => format!("λ L1 T1^m L1 {}, m ≥ 1", self.last),
            FamilyShape::L1L1 => format!("λ L1 L1 {}", self.last),
        }
    }

    pub fn word(&self, lambda: &RvtWord, m: usize) -> RvtWord {
        let mut tail = Vec::new();
        match self.shape {
            FamilyShape::VT1mL1 => tail.push(Letter::V),
            FamilyShape::L1T1mL1 | FamilyShape::L1L1 => tail.push(Letter::L1),
        }
        tail.extend(std::iter::repeat_n(Letter::T1, m));
        tail.push(Letter::L1);
        tail.push(self.last);
        lambda.concat(&tail)
    }

    /// All admissible instances over [`LAMBDAS`] and the `m` range.
    pub fn instances(&self) -> Vec<(RvtWord, usize)> {
        let mut out = Vec::new();
        for lambda in LAMBDAS {
            let lambda: RvtWord = lambda.parse().expect("lambda prefixes are well formed");
            for m in self.m_range() {
                let w = self.word(&lambda, m);
                if crate::rules::is_admissible(&w) {
                    out.push((w, m));
                }
            }
        }
        out
    }
}

/// Birth data as a function of the word length `k` and the family
/// parameter `m`: `delta(k - s, s)` with `s = base + per_m * m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirthFormula {
    None,
    Delta {
        base: i64,
        per_m: i64,
    },
    /// Instances disagree; no single formula fits.
    Inconsistent,
}

impl BirthFormula {
    fn steps_expr(base: i64, per_m: i64) -> String {
        let m_part = match per_m {
            0 => String::new(),
            1 => "m".to_string(),
            c => format!("{c}m"),
        };
        match (m_part.is_empty(), base) {
            (true, b) => b.to_string(),
            (false, 0) => m_part,
            (false, b) if b > 0 => format!("{m_part}+{b}"),
            (false, b) => format!("{m_part}{b}"),
        }
    }

    pub fn render(&self) -> String {
        match *self {
            BirthFormula::None => "None".to_string(),
            BirthFormula::Inconsistent => "inconsistent".to_string(),
            BirthFormula::Delta { base, per_m } => {
                let steps = Self::steps_expr(base, per_m);
                let birth = match (per_m, base) {
                    (0, b) => format!("k-{b}"),
                    (1, 0) => "k-m".to_string(),
                    (1, b) => format!("k-m-{b}"),
                    _ => format!("k-({steps})"),
                };
                format!("delta({birth},{steps})")
            }
        }
    }

    /// Fits the formula to `(k, m, birth data)` samples.
    pub fn fit(samples: &[(usize, usize, Option<Delta>)]) -> Self {
        if samples.iter().all(|s| s.2.is_none()) {
            return BirthFormula::None;
        }
        if samples.iter().any(|s| s.2.is_none()) {
            return BirthFormula::Inconsistent;
        }
        let points: Vec<(i64, i64)> = samples
            .iter()
            .map(|&(_, m, d)| (m as i64, d.expect("checked").steps as i64))
            .collect();
        let (m0, s0) = points[0];
        let per_m = points
            .iter()
            .find(|p| p.0 != m0)
            .map_or(0, |&(m1, s1)| (s1 - s0) / (m1 - m0));
        let base = s0 - per_m * m0;
        let fits = samples.iter().all(|&(k, m, d)| {
            let d = d.expect("checked");
            d.steps as i64 == base + per_m * m as i64 && d.birth + d.steps == k
        });
        if fits {
            BirthFormula::Delta { base, per_m }
        } else {
            BirthFormula::Inconsistent
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCaseRow {
    pub family: Family,
    pub instances: usize,
    pub t1: BirthFormula,
    pub t2: BirthFormula,
}

pub fn base_case_rows() -> Vec<BaseCaseRow> {
    Family::all()
        .into_iter()
        .map(|family| {
            let instances = family.instances();
            let sample = |slot: PlaneSlot| -> Vec<(usize, usize, Option<Delta>)> {
                instances
                    .iter()
                    .map(|(w, m)| {
                        (
                            w.len(),
                            *m,
                            birth_data(w, slot).expect("instance is admissible"),
                        )
                    })
                    .collect()
            };
            BaseCaseRow {
                family,
                instances: instances.len(),
                t1: BirthFormula::fit(&sample(PlaneSlot::T1)),
                t2: BirthFormula::fit(&sample(PlaneSlot::T2)),
            }
        })
        .collect()
}

fn or_list<T: ToString>(items: &[T], conj: &str) -> String {
    let names: Vec<String> = items.iter().map(T::to_string).collect();
    match names.len() {
        0 => String::new(),
        1 => names[0].clone(),
        2 => format!("{} {conj} {}", names[0], names[1]),
        n => format!("{}, {conj} {}", names[..n - 1].join(", "), names[n - 1]),
    }
}

fn set_or_empty(set: LetterSet) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        set.to_string()
    }
}

/// Markdown for the spelling rules, the configuration table and the
/// base-case birth data.
pub fn tables_markdown() -> String {
    let mut out = String::new();
    out.push_str("# RVT tables\n\n");
    out.push_str("Generated from the forward prolongation engine.\n\n");

    out.push_str("## Spelling rules\n\n");
    out.push_str("| Letter | Can be followed by | Cannot be followed by |\n");
    out.push_str("|---|---|---|\n");
    for row in successor_rows() {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            row.letter,
            row.allowed,
            set_or_empty(row.forbidden)
        );
    }
    out.push('\n');

    out.push_str("## Critical plane configurations\n\n");
    out.push_str("| Last letter | Critical planes present |\n");
    out.push_str("|---|---|\n");
    for row in configuration_rows() {
        let planes: Vec<PlaneSlot> = row.configuration.present().iter().collect();
        let _ = writeln!(
            out,
            "| {} | {} |",
            or_list(&row.last_letters, "or"),
            or_list(&planes, "and")
        );
    }
    out.push('\n');

    out.push_str("## Birth data for the base cases\n\n");
    let _ = writeln!(
        out,
        "λ ranges over {}; m up to {MAX_M}. Entries are delta(birth,steps) in terms of the word length k.\n",
        LAMBDAS.join(", ")
    );
    out.push_str("| Code of p_k | T1(p_k) | T2(p_k) | instances |\n");
    out.push_str("|---|---|---|---|\n");
    for row in base_case_rows() {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            row.family.label(),
            row.t1.render(),
            row.t2.render(),
            row.instances
        );
    }
    out
}

/// Checks that a derived successor row agrees with the spelling rules.
pub fn successor_row_matches_rules(row: &SuccessorRow) -> bool {
    row.allowed == successors_of_letter(row.letter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_report_rows() {
        let r = AnalysisReport::build(&"RVL1".parse().unwrap()).unwrap();
        assert_eq!(r.levels.len(), 3);
        let top = &r.levels[2];
        assert_eq!(top.chart, ["u3 = du1/dv2", "v3 = du2/dv2"]);
        assert_eq!(top.fiber, "[du1 : du2 : dv2]");
        assert_eq!(top.code, "RVL1");
        let text = r.to_text();
        assert!(text.contains("V=delta(3,0), T1=delta(2,1), T2=delta(1,2)"));
    }

    #[test]
    fn report_json_round_trips() {
        for w in ["R", "RVL1T2", "RVVRVT1L1T2L3L2"] {
            let r = AnalysisReport::build(&w.parse().unwrap()).unwrap();
            let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn successor_rows_match() {
        let rows = successor_rows();
        assert!(rows.iter().all(successor_row_matches_rules));
        let t2 = rows.iter().find(|r| r.letter == Letter::T2).unwrap();
        assert_eq!(t2.allowed.to_string(), "R, V, T2, L3");
    }

    #[test]
    fn configuration_rows_group_letters() {
        let rows = configuration_rows();
        let labels: Vec<String> = rows
            .iter()
            .map(|r| or_list(&r.last_letters, "or"))
            .collect();
        assert_eq!(labels, ["R", "V or T1", "T2", "L1, L2, or L3"]);
        assert_eq!(rows[0].configuration.to_string(), "{V}");
    }

    #[test]
    fn formula_rendering() {
        assert_eq!(
            BirthFormula::Delta { base: 3, per_m: 1 }.render(),
            "delta(k-m-3,m+3)"
        );
        assert_eq!(
            BirthFormula::Delta { base: 3, per_m: 0 }.render(),
            "delta(k-3,3)"
        );
        assert_eq!(BirthFormula::None.render(), "None");
    }

    #[test]
    fn fit_detects_mixed_presence() {
        let s = [(5, 0, None), (6, 1, Some(Delta::new(2, 4)))];
        assert_eq!(BirthFormula::fit(&s), BirthFormula::Inconsistent);
    }

    #[test]
    fn base_case_row_for_l1l1t2() {
        let rows = base_case_rows();
        let row = rows
            .iter()
            .find(|r| r.family.shape == FamilyShape::L1L1 && r.family.last == Letter::T2)
            .unwrap();
        assert_eq!(row.t1, BirthFormula::None);
        assert_eq!(row.t2.render(), "delta(k-3,3)");
    }
}
