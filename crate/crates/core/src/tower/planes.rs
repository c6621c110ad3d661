//! Critical planes, their Baby-Monster birth data, and configurations.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::word::Letter;

/// The three critical plane slots of a level, named by which coframe entry
/// vanishes on the plane: `V` by `dF`, `T1` by `du`, `T2` by `dv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneSlot {
    V,
    T1,
    T2,
}

impl PlaneSlot {
    pub const ALL: [PlaneSlot; 3] = [PlaneSlot::V, PlaneSlot::T1, PlaneSlot::T2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PlaneSlot::V => "V",
            PlaneSlot::T1 => "T1",
            PlaneSlot::T2 => "T2",
        }
    }

    pub fn from_letter(letter: Letter) -> Option<PlaneSlot> {
        match letter {
            Letter::V => Some(PlaneSlot::V),
            Letter::T1 => Some(PlaneSlot::T1),
            Letter::T2 => Some(PlaneSlot::T2),
            _ => None,
        }
    }
}

impl fmt::Display for PlaneSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for PlaneSlot {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SlotSet(u8);

impl SlotSet {
    pub const EMPTY: SlotSet = SlotSet(0);

    pub fn of(slots: &[PlaneSlot]) -> Self {
        slots.iter().fold(Self::EMPTY, |s, &p| s.with(p))
    }

    pub fn with(self, slot: PlaneSlot) -> Self {
        SlotSet(self.0 | (1 << slot.index()))
    }

    pub fn contains(self, slot: PlaneSlot) -> bool {
        self.0 & (1 << slot.index()) != 0
    }

    pub fn is_subset(self, other: SlotSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PlaneSlot> {
        PlaneSlot::ALL
            .into_iter()
            .filter(move |&s| self.contains(s))
    }
}

impl FromIterator<PlaneSlot> for SlotSet {
    fn from_iter<I: IntoIterator<Item = PlaneSlot>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, |s, p| s.with(p))
    }
}

impl fmt::Display for SlotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(PlaneSlot::as_str).collect();
        f.write_str(&names.join(", "))
    }
}

/// The critical planes containing a line with the given letter. The
/// distinguished lines are pairwise intersections: `L1 = V ∩ T1`,
/// `L2 = T1 ∩ T2`, `L3 = V ∩ T2`.
pub fn membership(letter: Letter) -> SlotSet {
    use PlaneSlot as P;
    match letter {
        Letter::R => SlotSet::EMPTY,
        Letter::V => SlotSet::of(&[P::V]),
        Letter::T1 => SlotSet::of(&[P::T1]),
        Letter::T2 => SlotSet::of(&[P::T2]),
        Letter::L1 => SlotSet::of(&[P::V, P::T1]),
        Letter::L2 => SlotSet::of(&[P::T1, P::T2]),
        Letter::L3 => SlotSet::of(&[P::V, P::T2]),
    }
}

/// Birth data of a critical plane: the `steps`-th prolongation of the
/// vertical plane of level `birth`. Displays as `delta(birth,steps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Delta {
    pub birth: usize,
    pub steps: usize,
}

impl Delta {
    pub fn new(birth: usize, steps: usize) -> Self {
        Self { birth, steps }
    }

    /// Level at which this plane sits.
    pub fn level(&self) -> usize {
        self.birth + self.steps
    }

    /// One level higher along the same Baby Monster.
    pub fn prolonged(&self) -> Self {
        Self::new(self.birth, self.steps + 1)
    }

    /// Dimension of the Baby Monster fiber containing the plane.
    pub fn baby_monster_dim(&self) -> usize {
        2 + self.steps
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta({},{})", self.birth, self.steps)
    }
}

/// A critical plane present at some level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PlaneRecord {
    pub slot: PlaneSlot,
    #[serde(flatten)]
    pub delta: Delta,
}

/// `T1=delta(2,1)`
impl fmt::Display for PlaneRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.slot, self.delta)
    }
}

/// The critical planes present over a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration(SlotSet);

impl Configuration {
    pub fn new(present: SlotSet) -> Self {
        Self(present)
    }

    pub fn present(&self) -> SlotSet {
        self.0
    }

    pub fn contains(&self, slot: PlaneSlot) -> bool {
        self.0.contains(slot)
    }

    /// Letters whose planes are all present. Every intersection of two
    /// present planes is a line, so this is exactly the admissible next
    /// letters.
    pub fn admissible_letters(&self) -> crate::word::LetterSet {
        Letter::ALL
            .into_iter()
            .filter(|&l| membership(l).is_subset(self.0))
            .collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0)
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_table() {
        assert_eq!(
            membership(Letter::L3),
            SlotSet::of(&[PlaneSlot::V, PlaneSlot::T2])
        );
        assert_eq!(membership(Letter::R), SlotSet::EMPTY);
        assert_eq!(
            membership(Letter::L2),
            SlotSet::of(&[PlaneSlot::T1, PlaneSlot::T2])
        );
        for l in Letter::ALL {
            assert!(membership(l).len() <= 2);
        }
    }

    #[test]
    fn delta_display_and_level() {
        let d = Delta::new(1, 2);
        assert_eq!(d.to_string(), "delta(1,2)");
        assert_eq!(d.prolonged().level(), 4);
        assert_eq!(d.baby_monster_dim(), 4);
        let rec = PlaneRecord {
            slot: PlaneSlot::T1,
            delta: Delta::new(2, 1),
        };
        assert_eq!(rec.to_string(), "T1=delta(2,1)");
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"slot":"T1","birth":2,"steps":1}"#
        );
    }

    #[test]
    fn configuration_admits_lines_only_with_both_planes() {
        let c = Configuration::new(SlotSet::of(&[PlaneSlot::V, PlaneSlot::T2]));
        assert_eq!(c.admissible_letters().to_string(), "R, V, T2, L3");
        assert_eq!(c.to_string(), "{V, T2}");
    }
}
