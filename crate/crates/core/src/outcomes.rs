//! Misère outcomes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::forms::{Arena, FormId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    Left,
    Right,
}

impl Winner {
    pub(crate) fn left_if(cond: bool) -> Winner {
        if cond {
            Winner::Left
        } else {
            Winner::Right
        }
    }

    pub fn flip(self) -> Winner {
        match self {
            Winner::Left => Winner::Right,
            Winner::Right => Winner::Left,
        }
    }
}

/// Winners with Left moving first and with Right moving first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SideOutcome {
    pub left_first: Winner,
    pub right_first: Winner,
}

impl SideOutcome {
    pub fn outcome(self) -> Outcome {
        match (self.left_first, self.right_first) {
            (Winner::Left, Winner::Left) => Outcome::L,
            (Winner::Left, Winner::Right) => Outcome::N,
            (Winner::Right, Winner::Left) => Outcome::P,
            (Winner::Right, Winner::Right) => Outcome::R,
        }
    }

    /// Bit 0: Left wins moving first. Bit 1: Left wins when Right moves first.
    pub fn to_bits(self) -> u8 {
        u8::from(self.left_first == Winner::Left) | (u8::from(self.right_first == Winner::Left) << 1)
    }

    pub fn from_bits(bits: u8) -> SideOutcome {
        SideOutcome {
            left_first: Winner::left_if(bits & 1 != 0),
            right_first: Winner::left_if(bits & 2 != 0),
        }
    }
}

/// The misère recursion. A side that is end-like (no options, or a
/// tombstone) wins moving first; otherwise the mover needs an option that
/// they still win with the opponent to move.
pub fn combine<I, J>(left_end_like: bool, right_end_like: bool, left_options: I, right_options: J) -> SideOutcome
where
    I: IntoIterator<Item = SideOutcome>,
    J: IntoIterator<Item = SideOutcome>,
{
    let left_first = left_end_like || left_options.into_iter().any(|o| o.right_first == Winner::Left);
    let right_first_right =
        right_end_like || right_options.into_iter().any(|o| o.left_first == Winner::Right);
    SideOutcome {
        left_first: Winner::left_if(left_first),
        right_first: Winner::left_if(!right_first_right),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    L,
    N,
    P,
    R,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::L, Outcome::N, Outcome::P, Outcome::R];

    pub fn side(self) -> SideOutcome {
        let (l, r) = match self {
            Outcome::L => (Winner::Left, Winner::Left),
            Outcome::N => (Winner::Left, Winner::Right),
            Outcome::P => (Winner::Right, Winner::Left),
            Outcome::R => (Winner::Right, Winner::Right),
        };
        SideOutcome {
            left_first: l,
            right_first: r,
        }
    }

    /// The outcome of the conjugate.
    pub fn conjugate(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }

    pub fn geq(self, other: Outcome) -> bool {
        outcome_geq(self, other)
    }
}

/// `L > N > R`, `L > P > R`, with `N` and `P` incomparable.
pub fn outcome_geq(a: Outcome, b: Outcome) -> bool {
    let (sa, sb) = (a.side(), b.side());
    let ge = |x: Winner, y: Winner| x == Winner::Left || y == Winner::Right;
    ge(sa.left_first, sb.left_first) && ge(sa.right_first, sb.right_first)
}

impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (outcome_geq(*self, *other), outcome_geq(*other, *self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::L => "L",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::R => "R",
        };
        f.write_str(s)
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" | "l" => Ok(Outcome::L),
            "N" | "n" => Ok(Outcome::N),
            "P" | "p" => Ok(Outcome::P),
            "R" | "r" => Ok(Outcome::R),
            _ => Err(format!("unknown outcome '{s}'")),
        }
    }
}

impl Arena {
    /// Winner when Left moves first.
    pub fn outcome_left(&self, g: FormId) -> Winner {
        self.facts(g).side_outcome().left_first
    }

    /// Winner when Right moves first.
    pub fn outcome_right(&self, g: FormId) -> Winner {
        self.facts(g).side_outcome().right_first
    }

    pub fn side_outcome(&self, g: FormId) -> SideOutcome {
        self.facts(g).side_outcome()
    }

    pub fn outcome(&self, g: FormId) -> Outcome {
        self.facts(g).outcome()
    }

    /// No subposition has outcome P.
    pub fn is_strictly_p_free(&self, g: FormId) -> bool {
        self.facts(g).is_strictly_p_free()
    }
}
