//! Kumpera-Ruiz chart bookkeeping.
//!
//! Level `i` of the tower carries fiber coordinates `u_i, v_i`. The rank-3
//! distribution at level `i` is coframed by `[dF_i : du_i : dv_i]`, where
//! `F_i` is the uniformizing coordinate chosen when `u_i, v_i` were
//! introduced. Level 0 is coframed by `[dx : dy : dz]`.
//!
//! A chart level records `u_i = dX/dD` and `v_i = dY/dD`, with `{D, X, Y}`
//! the coframe of level `i - 1` and `X` to the left of `Y`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::planes::{PlaneSlot, SlotSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseAxis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberAxis {
    U,
    V,
}

/// A coordinate function on some level of the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordRef {
    Base(BaseAxis),
    Fiber { level: usize, axis: FiberAxis },
}

impl CoordRef {
    pub const X: CoordRef = CoordRef::Base(BaseAxis::X);
    pub const Y: CoordRef = CoordRef::Base(BaseAxis::Y);
    pub const Z: CoordRef = CoordRef::Base(BaseAxis::Z);

    pub fn u(level: usize) -> Self {
        CoordRef::Fiber {
            level,
            axis: FiberAxis::U,
        }
    }

    pub fn v(level: usize) -> Self {
        CoordRef::Fiber {
            level,
            axis: FiberAxis::V,
        }
    }

    /// Lowest level on which the coordinate is defined.
    pub fn level(self) -> usize {
        match self {
            CoordRef::Base(_) => 0,
            CoordRef::Fiber { level, .. } => level,
        }
    }

    /// The differential, e.g. `du3`.
    pub fn covector(self) -> Covector {
        Covector(self)
    }
}

impl fmt::Display for CoordRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordRef::Base(BaseAxis::X) => f.write_str("x"),
            CoordRef::Base(BaseAxis::Y) => f.write_str("y"),
            CoordRef::Base(BaseAxis::Z) => f.write_str("z"),
            CoordRef::Fiber {
                level,
                axis: FiberAxis::U,
            } => write!(f, "u{level}"),
            CoordRef::Fiber {
                level,
                axis: FiberAxis::V,
            } => write!(f, "v{level}"),
        }
    }
}

impl Serialize for CoordRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `d` of a coordinate; displays as `dx`, `du3`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Covector(pub CoordRef);

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl Serialize for Covector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Ordered coframe `[dF : dU : dV]` of one level, indexed by [`PlaneSlot`]:
/// the plane in slot `s` is where the entry at `s.index()` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coframe(pub [CoordRef; 3]);

impl Coframe {
    pub const BASE: Coframe = Coframe([CoordRef::X, CoordRef::Y, CoordRef::Z]);

    pub fn entry(&self, slot: PlaneSlot) -> CoordRef {
        self.0[slot.index()]
    }

    /// The slot whose plane is cut out by `d(coord) = 0`, if `coord` is in
    /// this coframe.
    pub fn slot_of(&self, coord: CoordRef) -> Option<PlaneSlot> {
        PlaneSlot::ALL.into_iter().find(|&s| self.entry(s) == coord)
    }
}

/// `[dx : dy : dz]`
impl fmt::Display for Coframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "[d{a} : d{b} : d{c}]")
    }
}

/// One level of the canonical chart: `u_level = dX/dD`, `v_level = dY/dD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChartLevel {
    pub level: usize,
    /// The uniformizing coordinate `F_level`.
    pub denominator: CoordRef,
    pub numerator_x: CoordRef,
    pub numerator_y: CoordRef,
}

impl ChartLevel {
    /// Chooses the chart for a line in the distribution at `level - 1` whose
    /// letter forces the coframe entries in `forced` to vanish on it. The
    /// denominator is the leftmost entry that is not forced; the other two
    /// keep their coframe order. Returns `None` only if all three entries are
    /// forced, which no letter does.
    pub fn select(level: usize, below: &Coframe, forced: SlotSet) -> Option<ChartLevel> {
        let d = PlaneSlot::ALL.into_iter().find(|s| !forced.contains(*s))?;
        let mut rest = PlaneSlot::ALL.into_iter().filter(|&s| s != d);
        let (x, y) = (rest.next()?, rest.next()?);
        Some(ChartLevel {
            level,
            denominator: below.entry(d),
            numerator_x: below.entry(x),
            numerator_y: below.entry(y),
        })
    }

    pub fn u(&self) -> CoordRef {
        CoordRef::u(self.level)
    }

    pub fn v(&self) -> CoordRef {
        CoordRef::v(self.level)
    }

    /// Coframe of the distribution at this level.
    pub fn coframe(&self) -> Coframe {
        Coframe([self.denominator, self.u(), self.v()])
    }

    /// The numerator of the quotient defining a fiber coordinate of this level.
    pub fn numerator_of(&self, axis: FiberAxis) -> CoordRef {
        match axis {
            FiberAxis::U => self.numerator_x,
            FiberAxis::V => self.numerator_y,
        }
    }

    /// `u3 = du1/dv2`
    pub fn u_definition(&self) -> String {
        format!("{} = d{}/d{}", self.u(), self.numerator_x, self.denominator)
    }

    /// `v3 = du2/dv2`
    pub fn v_definition(&self) -> String {
        format!("{} = d{}/d{}", self.v(), self.numerator_y, self.denominator)
    }

    /// The coordinate list of the level, e.g. `(x, y, z, u1, v1)`.
    pub fn coordinates(&self) -> String {
        let mut names: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        for i in 1..=self.level {
            names.push(format!("u{i}"));
            names.push(format!("v{i}"));
        }
        format!("({})", names.join(", "))
    }
}

/// Coframe of the distribution at `level`, given the chart levels `1..`.
pub fn coframe_at(charts: &[ChartLevel], level: usize) -> Coframe {
    if level == 0 {
        Coframe::BASE
    } else {
        charts[level - 1].coframe()
    }
}

/// The canonical chart along a sequence of letters. Depends only on which
/// planes each letter lies in, never on which planes are present.
pub fn canonical_charts<I>(forced_per_level: I) -> Vec<ChartLevel>
where
    I: IntoIterator<Item = SlotSet>,
{
    let mut charts: Vec<ChartLevel> = Vec::new();
    for forced in forced_per_level {
        let level = charts.len() + 1;
        let below = coframe_at(&charts, level - 1);
        let chart = ChartLevel::select(level, &below, forced)
            .expect("a letter lies in at most two critical planes");
        charts.push(chart);
    }
    charts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_chart_is_fixed() {
        let chart = ChartLevel::select(1, &Coframe::BASE, SlotSet::EMPTY).unwrap();
        assert_eq!(chart.u_definition(), "u1 = dy/dx");
        assert_eq!(chart.v_definition(), "v1 = dz/dx");
        assert_eq!(chart.coframe().to_string(), "[dx : du1 : dv1]");
        assert_eq!(chart.coordinates(), "(x, y, z, u1, v1)");
    }

    #[test]
    fn forced_entries_become_numerators() {
        let below = Coframe([CoordRef::u(1), CoordRef::u(2), CoordRef::v(2)]);
        let forced = SlotSet::of(&[PlaneSlot::V, PlaneSlot::T1]);
        let chart = ChartLevel::select(3, &below, forced).unwrap();
        assert_eq!(chart.u_definition(), "u3 = du1/dv2");
        assert_eq!(chart.v_definition(), "v3 = du2/dv2");
    }

    #[test]
    fn slot_lookup() {
        let cf = Coframe([CoordRef::v(2), CoordRef::u(3), CoordRef::v(3)]);
        assert_eq!(cf.slot_of(CoordRef::v(2)), Some(PlaneSlot::V));
        assert_eq!(cf.slot_of(CoordRef::v(3)), Some(PlaneSlot::T2));
        assert_eq!(cf.slot_of(CoordRef::X), None);
        assert_eq!(CoordRef::u(3).covector().to_string(), "du3");
    }
}
