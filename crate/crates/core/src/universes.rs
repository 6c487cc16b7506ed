//! Membership in the dicot, dead-ending and blocking universes.
//!
//! Universes contain ordinary forms only, so every predicate here rejects
//! forms with a tombstone anywhere in their closure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Arena, FormId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UniverseTag {
    /// All ordinary forms.
    M,
    /// Dicot.
    D,
    /// Dead-ending.
    E,
    /// Blocking.
    B,
}

impl fmt::Display for UniverseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UniverseTag::M => "M",
            UniverseTag::D => "D",
            UniverseTag::E => "E",
            UniverseTag::B => "B",
        };
        f.write_str(s)
    }
}

impl FromStr for UniverseTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "m" | "M" => Ok(UniverseTag::M),
            "d" | "D" => Ok(UniverseTag::D),
            "e" | "E" => Ok(UniverseTag::E),
            "b" | "B" => Ok(UniverseTag::B),
            _ => Err(format!("unknown universe '{s}' (expected m, d, e or b)")),
        }
    }
}

impl Arena {
    pub(crate) fn ordinary(&self, g: FormId) -> Result<()> {
        self.check(g)?;
        if self.facts(g).is_augmented() {
            Err(Error::Augmented(g))
        } else {
            Ok(())
        }
    }

    /// Every subposition has options for both players or for neither.
    pub fn is_dicot(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_dicot())
    }

    /// Every end subposition stays an end for that player forever.
    pub fn is_dead_ending(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_dead_ending())
    }

    /// `g` is a Left end and every Right option is a blocked Left end or has
    /// a Left option that is one.
    pub fn is_blocked_left_end(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_blocked_left_end())
    }

    pub fn is_blocked_right_end(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_blocked_right_end())
    }

    /// Every end subposition is blocked.
    pub fn is_blocking(&self, g: FormId) -> Result<bool> {
        self.ordinary(g)?;
        Ok(self.facts(g).is_blocking())
    }

    pub fn is_member(&self, g: FormId, universe: UniverseTag) -> Result<bool> {
        match universe {
            UniverseTag::M => self.ordinary(g).map(|()| true),
            UniverseTag::D => self.is_dicot(g),
            UniverseTag::E => self.is_dead_ending(g),
            UniverseTag::B => self.is_blocking(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicot() {
        let mut a = Arena::new();
        let star = a.star();
        let one = a.integer(1).unwrap();
        assert!(a.is_dicot(FormId::ZERO).unwrap());
        assert!(a.is_dicot(star).unwrap());
        assert!(!a.is_dicot(one).unwrap());
    }

    #[test]
    fn dead_ending() {
        let mut a = Arena::new();
        for n in -5..=5 {
            let k = a.integer(n).unwrap();
            assert!(a.is_dead_ending(k).unwrap(), "{n}");
        }
        let star = a.star();
        assert!(a.is_dead_ending(star).unwrap());
        let g = a.parse("{|{1|1}}").unwrap();
        assert!(!a.is_dead_ending(g).unwrap());
    }

    #[test]
    fn blocked_ends() {
        let mut a = Arena::new();
        assert!(a.is_blocked_left_end(FormId::ZERO).unwrap());
        let g = a.parse("{|0,1}").unwrap();
        assert!(a.is_blocked_left_end(g).unwrap());
        let h = a.parse("{|{1|1}}").unwrap();
        assert!(!a.is_blocked_left_end(h).unwrap());
        assert!(!a.is_blocking(h).unwrap());
        let star = a.star();
        assert!(!a.is_blocked_left_end(star).unwrap());
    }

    #[test]
    fn blocking() {
        let mut a = Arena::new();
        for n in -5..=5 {
            let k = a.integer(n).unwrap();
            assert!(a.is_blocking(k).unwrap(), "{n}");
        }
        let unblocked = a.parse("{|{{{1|{0|1}}|}|}}").unwrap();
        assert!(!a.is_blocking(unblocked).unwrap());
    }

    #[test]
    fn augmented_forms_are_rejected() {
        let mut a = Arena::new();
        let t = a.parse("{#,0|*}").unwrap();
        assert_eq!(a.is_blocking(t), Err(Error::Augmented(t)));
        let deep = a.parse("{{#|}|}").unwrap();
        assert_eq!(a.is_dicot(deep), Err(Error::Augmented(deep)));
        assert!(a.is_member(FormId::ZERO, UniverseTag::M).unwrap());
        assert!(a.is_member(t, UniverseTag::M).is_err());
    }

    #[test]
    fn tags_parse() {
        assert_eq!("b".parse::<UniverseTag>().unwrap(), UniverseTag::B);
        assert!("x".parse::<UniverseTag>().is_err());
    }
}
