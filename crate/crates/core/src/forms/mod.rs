//! Interned augmented game forms.
//!
//! Every form lives in an [`Arena`]; a [`FormId`] is only meaningful for the
//! arena that produced it. Structurally equal forms always share one id.

mod arena;
mod facts;
mod notation;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use arena::{Arena, Checkpoint, DEFAULT_INTEGER_LIMIT};
pub use facts::Facts;

/// Canonical handle of an interned form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormId(pub(crate) u32);

impl FormId {
    /// The empty form `{|}`.
    pub const ZERO: FormId = FormId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> FormId {
        FormId(u32::try_from(index).expect("form index overflows u32"))
    }
}

impl fmt::Debug for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Borrowed view of one interned node. Option slices are sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Form<'a> {
    pub left: &'a [FormId],
    pub right: &'a [FormId],
    pub left_tombstone: bool,
    pub right_tombstone: bool,
}

impl Form<'_> {
    pub fn is_left_end(&self) -> bool {
        self.left.is_empty()
    }

    pub fn is_right_end(&self) -> bool {
        self.right.is_empty()
    }

    pub fn is_left_end_like(&self) -> bool {
        self.left.is_empty() || self.left_tombstone
    }

    pub fn is_right_end_like(&self) -> bool {
        self.right.is_empty() || self.right_tombstone
    }
}
