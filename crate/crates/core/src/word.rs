//! The seven-letter RVT alphabet and words over it.
//!
//! A word `w1 w2 ... wk` records, level by level, which critical plane or
//! distinguished line contains the direction chosen at that level. Its length
//! is the tower level of the point it encodes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One RVT letter. The declaration order is the lexicographic order used by
/// enumeration: `R < V < T1 < T2 < L1 < L2 < L3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    R,
    V,
    T1,
    T2,
    L1,
    L2,
    L3,
}

impl Letter {
    pub const ALL: [Letter; 7] = [
        Letter::R,
        Letter::V,
        Letter::T1,
        Letter::T2,
        Letter::L1,
        Letter::L2,
        Letter::L3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Letter::R => "R",
            Letter::V => "V",
            Letter::T1 => "T1",
            Letter::T2 => "T2",
            Letter::L1 => "L1",
            Letter::L2 => "L2",
            Letter::L3 => "L3",
        }
    }

    /// Position in [`Letter::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    /// Every letter other than `R` is critical.
    pub fn is_critical(self) -> bool {
        self != Letter::R
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Letter {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word = parse_word(s)?;
        match word.letters() {
            [single] => Ok(*single),
            _ => Err(ParseError {
                position: 1,
                reason: ParseErrorReason::NotASingleLetter,
            }),
        }
    }
}

/// A set of letters, stored as a bitmask and iterated in alphabet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LetterSet(u8);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);
    pub const FULL: LetterSet = LetterSet(0b111_1111);

    pub fn of(letters: &[Letter]) -> Self {
        letters.iter().fold(Self::EMPTY, |set, &l| set.with(l))
    }

    pub fn with(self, letter: Letter) -> Self {
        LetterSet(self.0 | (1 << letter.index()))
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 & (1 << letter.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        Letter::ALL.into_iter().filter(move |&l| self.contains(l))
    }

    pub fn to_vec(self) -> Vec<Letter> {
        self.iter().collect()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, |set, l| set.with(l))
    }
}

/// Comma-separated in alphabet order, e.g. `R, V, T2, L3`.
impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Letter::as_str).collect();
        f.write_str(&names.join(", "))
    }
}

/// An RVT word. Parsing only tokenizes; admissibility is checked by
/// [`crate::rules::validate`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RvtWord {
    letters: Vec<Letter>,
}

impl RvtWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Tower level of the encoded point.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Letter at 1-based `level`.
    pub fn at(&self, level: usize) -> Letter {
        self.letters[level - 1]
    }

    /// The first `level` letters.
    pub fn prefix(&self, level: usize) -> RvtWord {
        RvtWord::new(self.letters[..level].to_vec())
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn pushed(&self, letter: Letter) -> RvtWord {
        let mut next = self.clone();
        next.push(letter);
        next
    }

    pub fn concat(&self, tail: &[Letter]) -> RvtWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(tail);
        RvtWord::new(letters)
    }
}

impl From<Vec<Letter>> for RvtWord {
    fn from(letters: Vec<Letter>) -> Self {
        Self::new(letters)
    }
}

impl FromIterator<Letter> for RvtWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for RvtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            f.write_str(letter.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for RvtWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for RvtWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RvtWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorReason {
    UnexpectedCharacter(char),
    /// `T` or `L` followed by something other than a valid subscript.
    BadSubscript {
        head: char,
        found: Option<char>,
    },
    NotASingleLetter,
}

impl fmt::Display for ParseErrorReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorReason::UnexpectedCharacter(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorReason::BadSubscript {
                head,
                found: Some(c),
            } => {
                write!(f, "invalid subscript {c:?} after '{head}'")
            }
            ParseErrorReason::BadSubscript { head, found: None } => {
                write!(f, "'{head}' is missing its subscript")
            }
            ParseErrorReason::NotASingleLetter => f.write_str("expected exactly one letter"),
        }
    }
}

/// Tokenization failure. `position` is the 1-based character offset of the
/// token that could not be read (for a bad subscript, the `T`/`L` itself).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {reason}")]
pub struct ParseError {
    pub position: usize,
    pub reason: ParseErrorReason,
}

/// Greedy left-to-right tokenizer. Case-insensitive; whitespace between
/// tokens is ignored. Does not check the spelling rules.
pub fn parse_word(text: &str) -> Result<RvtWord, ParseError> {
    let mut letters = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((idx, c)) = chars.next() {
        let letter = match c.to_ascii_uppercase() {
            c if c.is_whitespace() => continue,
            'R' => Letter::R,
            'V' => Letter::V,
            head @ ('T' | 'L') => {
                let next = chars.next();
                let sub = next.map(|(_, c)| c);
                let letter = match (head, sub) {
                    ('T', Some('1')) => Some(Letter::T1),
                    ('T', Some('2')) => Some(Letter::T2),
                    ('L', Some('1')) => Some(Letter::L1),
                    ('L', Some('2')) => Some(Letter::L2),
                    ('L', Some('3')) => Some(Letter::L3),
                    _ => None,
                };
                letter.ok_or(ParseError {
                    position: idx + 1,
                    reason: ParseErrorReason::BadSubscript { head, found: sub },
                })?
            }
            _ => {
                return Err(ParseError {
                    position: idx + 1,
                    reason: ParseErrorReason::UnexpectedCharacter(c),
                })
            }
        };
        letters.push(letter);
    }
    Ok(RvtWord::new(letters))
}
