//! Forward prolongation along an RVT word.
//!
//! [`TowerState`] walks up the tower one letter at a time. At each level it
//! picks the canonical chart and keeps a ledger of the critical planes over
//! the current point. A fresh vertical plane is born at every level; a plane
//! from the level below survives (prolonged, one step further along its Baby
//! Monster) exactly when the chosen line lies in it.

pub mod chart;
pub mod planes;

use serde::Serialize;
use thiserror::Error;

use crate::rules::{validate, RuleViolation};
use crate::word::{Letter, LetterSet, RvtWord};

pub use chart::{canonical_charts, coframe_at, ChartLevel, Coframe, CoordRef, Covector};
pub use planes::{membership, Configuration, Delta, PlaneRecord, PlaneSlot, SlotSet};

/// Base dimension and distribution rank of the tower over `R^3`.
pub const BASE_DIM: usize = 3;
pub const RANK: usize = 3;

/// `dim M^level = d + level (r - 1)`.
pub fn manifold_dim(level: usize) -> usize {
    BASE_DIM + level * (RANK - 1)
}

/// Critical planes over one point, indexed by slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ledger([Option<Delta>; 3]);

impl Ledger {
    pub fn get(&self, slot: PlaneSlot) -> Option<Delta> {
        self.0[slot.index()]
    }

    fn insert(&mut self, slot: PlaneSlot, delta: Delta) {
        assert!(
            self.0[slot.index()].is_none(),
            "two planes prolonged into slot {slot}"
        );
        self.0[slot.index()] = Some(delta);
    }

    pub fn records(&self) -> impl Iterator<Item = PlaneRecord> + '_ {
        PlaneSlot::ALL
            .into_iter()
            .filter_map(|slot| self.get(slot).map(|delta| PlaneRecord { slot, delta }))
    }

    pub fn occupied(&self) -> SlotSet {
        PlaneSlot::ALL
            .into_iter()
            .filter(|&s| self.get(s).is_some())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{letter} is not admissible at level {level}: no {missing_slot} plane over the point")]
pub struct InadmissibleLetter {
    pub letter: Letter,
    /// The level of the point the line would be drawn over.
    pub level: usize,
    pub missing_slot: PlaneSlot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Rule(#[from] RuleViolation),
    #[error(transparent)]
    Inadmissible(#[from] InadmissibleLetter),
    #[error("the empty word has no critical planes")]
    EmptyWord,
}

/// An admissible prefix with its chart and plane ledgers. Immutable;
/// [`TowerState::extend`] returns a new state.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TowerState {
    word: RvtWord,
    charts: Vec<ChartLevel>,
    /// `ledgers[i]` lists the planes at level `i`; level 0 has none.
    ledgers: Vec<Ledger>,
}

impl TowerState {
    /// The level-0 point.
    pub fn init() -> Self {
        Self {
            word: RvtWord::empty(),
            charts: Vec::new(),
            ledgers: vec![Ledger::default()],
        }
    }

    /// Validates `word` and prolongs along it.
    pub fn from_word(word: &RvtWord) -> Result<Self, AnalysisError> {
        validate(word)?;
        word.letters()
            .iter()
            .try_fold(Self::init(), |state, &l| state.extend(l))
            .map_err(AnalysisError::from)
    }

    pub fn word(&self) -> &RvtWord {
        &self.word
    }

    pub fn level(&self) -> usize {
        self.word.len()
    }

    pub fn dim(&self) -> usize {
        manifold_dim(self.level())
    }

    pub fn charts(&self) -> &[ChartLevel] {
        &self.charts
    }

    pub fn chart(&self, level: usize) -> &ChartLevel {
        &self.charts[level - 1]
    }

    pub fn coframe(&self, level: usize) -> Coframe {
        coframe_at(&self.charts, level)
    }

    pub fn ledger(&self, level: usize) -> &Ledger {
        &self.ledgers[level]
    }

    pub fn top(&self) -> &Ledger {
        self.ledger(self.level())
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.top().occupied())
    }

    /// Draws a line with letter `letter` through the current point.
    pub fn extend(&self, letter: Letter) -> Result<TowerState, InadmissibleLetter> {
        let below_level = self.level();
        let below = self.top();
        let forced = membership(letter);
        if let Some(missing_slot) = forced.iter().find(|&s| below.get(s).is_none()) {
            return Err(InadmissibleLetter {
                letter,
                level: below_level,
                missing_slot,
            });
        }

        let level = below_level + 1;
        let coframe = self.coframe(below_level);
        let chart = ChartLevel::select(level, &coframe, forced)
            .expect("a letter lies in at most two critical planes");

        let mut ledger = Ledger::default();
        ledger.insert(PlaneSlot::V, Delta::new(level, 0));
        for slot in forced.iter() {
            let delta = below.get(slot).expect("checked above");
            let vanishing = coframe.entry(slot);
            let target = if vanishing == chart.numerator_x {
                PlaneSlot::T1
            } else {
                debug_assert_eq!(vanishing, chart.numerator_y);
                PlaneSlot::T2
            };
            ledger.insert(target, delta.prolonged());
        }

        let mut next = self.clone();
        next.word.push(letter);
        next.charts.push(chart);
        next.ledgers.push(ledger);
        Ok(next)
    }

    /// Per-level reports for levels `1..=k`.
    pub fn reports(&self) -> Vec<LevelReport> {
        (1..=self.level())
            .map(|level| {
                let ledger = self.ledger(level);
                LevelReport {
                    level,
                    letter: self.word.at(level),
                    chart: *self.chart(level),
                    configuration: Configuration::new(ledger.occupied()),
                    planes: ledger.records().collect(),
                }
            })
            .collect()
    }
}

/// Everything known about one level of an analyzed word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub letter: Letter,
    #[serde(skip)]
    pub chart: ChartLevel,
    pub configuration: Configuration,
    pub planes: Vec<PlaneRecord>,
}

pub fn analyze(word: &RvtWord) -> Result<Vec<LevelReport>, AnalysisError> {
    Ok(TowerState::from_word(word)?.reports())
}

/// The critical planes over the top point. Needs a nonempty word.
pub fn configuration(word: &RvtWord) -> Result<Configuration, AnalysisError> {
    if word.is_empty() {
        return Err(AnalysisError::EmptyWord);
    }
    Ok(TowerState::from_word(word)?.configuration())
}

/// Letters that can follow `word`, read off the planes over its top point.
/// For the empty word only `R` is possible.
pub fn derived_successors(word: &RvtWord) -> Result<LetterSet, AnalysisError> {
    let state = TowerState::from_word(word)?;
    if state.level() == 0 {
        return Ok(LetterSet::of(&[Letter::R]));
    }
    Ok(state.configuration().admissible_letters())
}

/// Birth data of the plane in `slot` over the top point, if it exists.
pub fn birth_data(word: &RvtWord, slot: PlaneSlot) -> Result<Option<Delta>, AnalysisError> {
    Ok(TowerState::from_word(word)?.top().get(slot))
}
