//! Spelling rules: which RVT words are realized by points of the tower.
//!
//! 1. every word begins with `R`;
//! 2. `R` is followed by `R` or `V`;
//! 3. `V` and `T1` are followed by `R`, `V`, `T1` or `L1`;
//! 4. `T2` is followed by `R`, `V`, `T2` or `L3`;
//! 5. `L1`, `L2`, `L3` may be followed by anything.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::word::{Letter, LetterSet, RvtWord};

/// The letters allowed immediately after `letter`.
pub fn successors_of_letter(letter: Letter) -> LetterSet {
    use Letter::*;
    match letter {
        R => LetterSet::of(&[R, V]),
        V | T1 => LetterSet::of(&[R, V, T1, L1]),
        T2 => LetterSet::of(&[R, V, T2, L3]),
        L1 | L2 | L3 => LetterSet::FULL,
    }
}

/// Letters allowed at the start of a word.
pub fn initial_letters() -> LetterSet {
    LetterSet::of(&[Letter::R])
}

/// Letters allowed after `prefix`; the empty prefix admits only `R`.
pub fn next_letters(prefix: &RvtWord) -> LetterSet {
    prefix
        .last()
        .map_or_else(initial_letters, successors_of_letter)
}

/// The rule that governs what may follow `letter`.
pub fn rule_for_predecessor(letter: Letter) -> u8 {
    match letter {
        Letter::R => 2,
        Letter::V | Letter::T1 => 3,
        Letter::T2 => 4,
        Letter::L1 | Letter::L2 | Letter::L3 => 5,
    }
}

/// The leftmost broken rule in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
pub struct RuleViolation {
    /// 1-based index of the offending letter.
    pub position: usize,
    pub preceding: Option<Letter>,
    pub offending: Letter,
    #[serde(rename = "rule")]
    pub rule_id: u8,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.preceding {
            None => write!(
                f,
                "rule {} violated at position {}: a word must begin with R, found {}",
                self.rule_id, self.position, self.offending
            ),
            Some(prev) => write!(
                f,
                "rule {} violated at position {}: {} cannot follow {}",
                self.rule_id, self.position, self.offending, prev
            ),
        }
    }
}

/// Checks the spelling rules and reports the leftmost violation. The empty
/// word is valid (the level-0 point).
pub fn validate(word: &RvtWord) -> Result<(), RuleViolation> {
    let letters = word.letters();
    if let Some(&first) = letters.first() {
        if !initial_letters().contains(first) {
            return Err(RuleViolation {
                position: 1,
                preceding: None,
                offending: first,
                rule_id: 1,
            });
        }
    }
    for (idx, pair) in letters.windows(2).enumerate() {
        let (prev, next) = (pair[0], pair[1]);
        if !successors_of_letter(prev).contains(next) {
            return Err(RuleViolation {
                position: idx + 2,
                preceding: Some(prev),
                offending: next,
                rule_id: rule_for_predecessor(prev),
            });
        }
    }
    Ok(())
}

pub fn is_admissible(word: &RvtWord) -> bool {
    validate(word).is_ok()
}

/// A uniformly random walk through the automaton, deterministic per seed.
pub fn random_admissible(len: usize, seed: u64) -> RvtWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = RvtWord::empty();
    for _ in 0..len {
        let choices = next_letters(&word).to_vec();
        let letter = *choices
            .choose(&mut rng)
            .expect("every letter has a successor");
        word.push(letter);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use proptest::prelude::*;
    use Letter::*;

    fn check(s: &str) -> Result<(), RuleViolation> {
        validate(&parse_word(s).unwrap())
    }

    #[test]
    fn successor_table_rows() {
        assert_eq!(successors_of_letter(R), LetterSet::of(&[R, V]));
        assert_eq!(successors_of_letter(T2), LetterSet::of(&[R, V, T2, L3]));
        assert_eq!(successors_of_letter(L2), LetterSet::FULL);
        assert_eq!(successors_of_letter(V), successors_of_letter(T1));
    }

    #[test]
    fn long_admissible_word() {
        assert_eq!(check("RVVRVT1L1T2L3L2"), Ok(()));
        assert_eq!(check(""), Ok(()));
    }

    #[test]
    fn violations_report_position_and_rule() {
        let v = check("VT2T1RT2").unwrap_err();
        assert_eq!((v.position, v.rule_id, v.preceding), (1, 1, None));

        let v = check("RT1").unwrap_err();
        assert_eq!((v.position, v.rule_id), (2, 2));

        let v = check("RVT2").unwrap_err();
        assert_eq!((v.position, v.rule_id, v.offending), (3, 3, T2));

        let v = check("RVL1T2T1").unwrap_err();
        assert_eq!((v.position, v.rule_id, v.preceding), (5, 4, Some(T2)));
    }

    #[test]
    fn random_words_small_lengths() {
        for seed in 0..20 {
            assert_eq!(random_admissible(1, seed).to_string(), "R");
            let two = random_admissible(2, seed).to_string();
            assert!(two == "RR" || two == "RV", "{two}");
        }
        assert_eq!(random_admissible(6, 7), random_admissible(6, 7));
    }

    proptest! {
        #[test]
        fn random_words_validate(len in 1usize..40, seed in any::<u64>()) {
            let w = random_admissible(len, seed);
            prop_assert_eq!(w.len(), len);
            prop_assert_eq!(validate(&w), Ok(()));
        }

        #[test]
        fn corrupting_one_letter_is_caught_there(len in 2usize..20, seed in any::<u64>(), pos in any::<prop::sample::Index>(), pick in any::<prop::sample::Index>()) {
            let w = random_admissible(len, seed);
            let at = pos.index(len);
            let prefix = w.prefix(at);
            let bad: Vec<Letter> = Letter::ALL
                .into_iter()
                .filter(|&l| !next_letters(&prefix).contains(l))
                .collect();
            prop_assume!(!bad.is_empty());
            let mut letters = w.letters().to_vec();
            letters[at] = *pick.get(&bad);
            let v = validate(&RvtWord::new(letters)).unwrap_err();
            prop_assert_eq!(v.position, at + 1);
        }
    }
}
