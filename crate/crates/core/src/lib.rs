//! Decide, explain and enumerate RVT codes of points in the Monster (Semple)
//! tower over `R^3`.
//!
//! * [`word`] and [`rules`]: the seven-letter alphabet and the spelling-rule
//!   automaton.
//! * [`tower`]: forward prolongation. Builds the canonical Kumpera-Ruiz chart
//!   for a word and tracks which critical planes sit over each level, together
//!   with the level at which their Baby Monster was born.
//! * [`tracer`]: the backward method. Starting from a candidate tangency plane
//!   at the top level it follows the vanishing covector down the chart until
//!   it hits a vertical plane or a contradiction.
//! * [`enumeration`]: counting (transfer matrix) and streaming enumeration of
//!   admissible words.
//! * [`report`]: text/JSON/markdown rendering shared by the CLI.

pub mod enumeration;
pub mod report;
pub mod rules;
pub mod tower;
pub mod tracer;
pub mod word;

pub use rules::{successors_of_letter, validate, RuleViolation};
pub use tower::{
    analyze, birth_data, configuration, derived_successors, membership, AnalysisError,
    Configuration, Delta, PlaneRecord, PlaneSlot, TowerState,
};

pub use word::{parse_word, Letter, LetterSet, ParseError, RvtWord};
