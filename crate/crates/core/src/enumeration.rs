//! Counting and enumerating admissible words.
//!
//! The automaton has four classes of states, one per row of the
//! configuration table: last letter `R`; `V` or `T1`; `T2`; any `L`. Counts
//! by level come from repeated products with the 4x4 transfer matrix; the
//! streaming enumerator walks the automaton depth-first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::rules::{initial_letters, successors_of_letter};
use crate::word::{Letter, RvtWord};

/// Largest `k_max` accepted by [`verify_counts`].
pub const DEFAULT_VERIFY_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LetterClass {
    R,
    VT1,
    T2,
    L,
}

impl LetterClass {
    pub const ALL: [LetterClass; 4] = [
        LetterClass::R,
        LetterClass::VT1,
        LetterClass::T2,
        LetterClass::L,
    ];

    pub fn of(letter: Letter) -> Self {
        match letter {
            Letter::R => LetterClass::R,
            Letter::V | Letter::T1 => LetterClass::VT1,
            Letter::T2 => LetterClass::T2,
            Letter::L1 | Letter::L2 | Letter::L3 => LetterClass::L,
        }
    }

    /// A letter of this class, used to read its row off the successor table.
    pub fn representative(self) -> Letter {
        match self {
            LetterClass::R => Letter::R,
            LetterClass::VT1 => Letter::V,
            LetterClass::T2 => Letter::T2,
            LetterClass::L => Letter::L1,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// `entries[from][to]` = number of letters of class `to` that may follow a
/// letter of class `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: [[u32; 4]; 4],
}

impl TransferMatrix {
    /// Built by counting the successor table, class by class.
    pub fn from_rules() -> Self {
        let mut entries = [[0u32; 4]; 4];
        for from in LetterClass::ALL {
            for next in successors_of_letter(from.representative()).iter() {
                entries[from.index()][LetterClass::of(next).index()] += 1;
            }
        }
        Self { entries }
    }

    pub fn row_sums(&self) -> [u32; 4] {
        self.entries.map(|row| row.iter().sum())
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        let mut out: [BigUint; 4] = Default::default();
        for (row, count) in self.entries.iter().zip(&v.counts) {
            for (slot, &weight) in out.iter_mut().zip(row) {
                if weight != 0 {
                    *slot += count * weight;
                }
            }
        }
        StateVector { counts: out }
    }
}

/// Number of admissible words of a fixed length, split by the class of the
/// last letter: `(n_R, n_VT1, n_T2, n_L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    pub counts: [BigUint; 4],
}

impl StateVector {
    /// Level 1: only the word `R`.
    pub fn initial() -> Self {
        let mut counts: [BigUint; 4] = Default::default();
        counts[LetterClass::R.index()] = BigUint::one();
        Self { counts }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// State vector at level `k >= 1`.
pub fn state_vector(k: usize) -> StateVector {
    assert!(k >= 1, "state vectors start at level 1");
    let m = TransferMatrix::from_rules();
    (1..k).fold(StateVector::initial(), |v, _| m.apply(&v))
}

/// Number of admissible words of length exactly `k`; `count_words(0) = 1`.
pub fn count_words(k: usize) -> BigUint {
    if k == 0 {
        BigUint::one()
    } else {
        state_vector(k).total()
    }
}

/// Counts for levels `0..=k`, computed in one pass.
pub fn count_words_upto(k: usize) -> Vec<BigUint> {
    let m = TransferMatrix::from_rules();
    let mut out = vec![BigUint::one()];
    let mut v = StateVector::initial();
    for level in 1..=k {
        if level > 1 {
            v = m.apply(&v);
        }
        out.push(v.total());
    }
    out
}

/// Depth-first, lexicographic stream of the admissible words of length `k`
/// that start with a given prefix. Memory is `O(k)`.
#[derive(Debug, Clone)]
pub struct WordStream {
    target: usize,
    current: Vec<Letter>,
    /// Untried letters for each position past the prefix, in reverse order so
    /// `pop` yields the smallest.
    pending: Vec<Vec<Letter>>,
    prefix_len: usize,
    done: bool,
}

impl WordStream {
    fn new(prefix: &RvtWord, target: usize) -> Self {
        let admissible = crate::rules::is_admissible(prefix);
        let mut stream = Self {
            target,
            current: prefix.letters().to_vec(),
            pending: Vec::new(),
            prefix_len: prefix.len(),
            done: !admissible || prefix.len() > target,
        };
        if !stream.done && stream.current.len() < target {
            stream.pending.push(stream.choices());
        }
        stream
    }

    fn choices(&self) -> Vec<Letter> {
        let allowed = match self.current.last() {
            Some(&last) => successors_of_letter(last),
            None => initial_letters(),
        };
        let mut c = allowed.to_vec();
        c.reverse();
        c
    }
}

impl Iterator for WordStream {
    type Item = RvtWord;

    fn next(&mut self) -> Option<RvtWord> {
        if self.done {
            return None;
        }
        if self.pending.is_empty() {
            // prefix already has the target length: a single word
            self.done = true;
            return Some(RvtWord::new(self.current.clone()));
        }
        loop {
            let depth = self.prefix_len + self.pending.len() - 1;
            self.current.truncate(depth);
            match self.pending.last_mut().and_then(Vec::pop) {
                Some(letter) => {
                    self.current.push(letter);
                    if self.current.len() == self.target {
                        return Some(RvtWord::new(self.current.clone()));
                    }
                    let next = self.choices();
                    self.pending.push(next);
                }
                None => {
                    self.pending.pop();
                    if self.pending.is_empty() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// All admissible words of length `k`, in the order `R < V < T1 < T2 < L1 <
/// L2 < L3`.
pub fn enumerate_words(k: usize) -> WordStream {
    WordStream::new(&RvtWord::empty(), k)
}

/// The admissible words of length `k` extending `prefix`. Streams for
/// disjoint prefixes are disjoint; the streams over all admissible prefixes of
/// one length partition [`enumerate_words`].
pub fn enumerate_with_prefix(prefix: &RvtWord, k: usize) -> WordStream {
    WordStream::new(prefix, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub level: usize,
    pub enumerated: u64,
    pub counted: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub levels: Vec<CountCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("k_max = {requested} exceeds the verification bound {bound}")]
    OverBound { requested: usize, bound: usize },
    #[error("level {level}: enumerated {enumerated} words, transfer matrix gives {counted}")]
    Mismatch {
        level: usize,
        enumerated: u64,
        counted: BigUint,
    },
}

/// Compares the stream length with the transfer-matrix count for every
/// `1 <= k <= k_max`.
pub fn verify_counts(k_max: usize) -> Result<CountReport, VerifyError> {
    verify_counts_with_bound(k_max, DEFAULT_VERIFY_BOUND)
}

pub fn verify_counts_with_bound(k_max: usize, bound: usize) -> Result<CountReport, VerifyError> {
    if k_max > bound {
        return Err(VerifyError::OverBound {
            requested: k_max,
            bound,
        });
    }
    let counts = count_words_upto(k_max);
    let mut levels = Vec::with_capacity(k_max);
    for (level, counted) in counts.into_iter().enumerate().skip(1) {
        let enumerated = enumerate_words(level).count() as u64;
        if BigUint::from(enumerated) != counted {
            return Err(VerifyError::Mismatch {
                level,
                enumerated,
                counted,
            });
        }
        levels.push(CountCheck {
            level,
            enumerated,
            counted: counted.to_string(),
        });
    }
    Ok(CountReport { levels })
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.levels {
            writeln!(
                f,
                "k={} enumerated={} counted={} ok",
                c.level, c.enumerated, c.counted
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::validate;

    fn words(k: usize) -> Vec<String> {
        enumerate_words(k).map(|w| w.to_string()).collect()
    }

    #[test]
    fn matrix_rows() {
        let m = TransferMatrix::from_rules();
        assert_eq!(m.row_sums(), [2, 4, 4, 7]);
        assert_eq!(m.entries[LetterClass::L.index()], [1, 2, 1, 3]);
    }

    #[test]
    fn small_counts() {
        let c: Vec<String> = count_words_upto(5).iter().map(|n| n.to_string()).collect();
        assert_eq!(c, ["1", "1", "2", "6", "23", "98"]);
        assert_eq!(count_words(0), BigUint::one());
        assert_eq!(count_words(4), BigUint::from(23u32));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(words(2), ["RR", "RV"]);
        assert_eq!(words(3), ["RRR", "RRV", "RVR", "RVV", "RVT1", "RVL1"]);
        assert_eq!(words(0), [""]);
        for k in 1..7 {
            assert_eq!(
                enumerate_words(k).next().unwrap().to_string(),
                "R".repeat(k)
            );
        }
    }

    #[test]
    fn stream_is_sorted_and_valid() {
        let all: Vec<RvtWord> = enumerate_words(7).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|w| validate(w).is_ok()));
    }

    #[test]
    fn prefixes_partition() {
        let k = 7;
        let full: Vec<RvtWord> = enumerate_words(k).collect();
        let mut joined = Vec::new();
        for prefix in enumerate_words(4) {
            joined.extend(enumerate_with_prefix(&prefix, k));
        }
        assert_eq!(full, joined);
        let bad = crate::word::parse_word("RT1").unwrap();
        assert_eq!(enumerate_with_prefix(&bad, 5).count(), 0);
        let whole = crate::word::parse_word("RVL1").unwrap();
        assert_eq!(enumerate_with_prefix(&whole, 3).count(), 1);
        assert_eq!(enumerate_with_prefix(&whole, 2).count(), 0);
    }

    #[test]
    fn growth_at_least_doubles() {
        let c = count_words_upto(40);
        for k in 1..40 {
            assert!(c[k + 1] >= &c[k] * 2u32);
        }
        // past u64 range well before k = 40
        assert!(c[40] > BigUint::from(u64::MAX));
    }

    #[test]
    fn verify_small() {
        let r = verify_counts(4).unwrap();
        let counts: Vec<u64> = r.levels.iter().map(|c| c.enumerated).collect();
        assert_eq!(counts, [1, 2, 6, 23]);
        assert!(verify_counts(0).unwrap().levels.is_empty());
        assert!(matches!(
            verify_counts(13),
            Err(VerifyError::OverBound { .. })
        ));
    }
}
