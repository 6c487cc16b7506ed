use crate::outcomes::{Outcome, SideOutcome, Winner};

/// Per-node summary bits derived once at interning time from the facts of
/// the node's options. Every recursive predicate on forms that only looks at
/// options is stored here, so queries are O(1) after construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Facts(u32);

impl Facts {
    pub(crate) const LEFT_END: u32 = 1 << 0;
    pub(crate) const RIGHT_END: u32 = 1 << 1;
    pub(crate) const LEFT_TOMB: u32 = 1 << 2;
    pub(crate) const RIGHT_TOMB: u32 = 1 << 3;
    /// A tombstone occurs somewhere in the subposition closure.
    pub(crate) const AUGMENTED: u32 = 1 << 4;
    /// Left wins when Left moves first.
    pub(crate) const LEFT_FIRST_LEFT: u32 = 1 << 5;
    /// Left wins when Right moves first.
    pub(crate) const RIGHT_FIRST_LEFT: u32 = 1 << 6;
    pub(crate) const P_FREE: u32 = 1 << 7;
    pub(crate) const DICOT: u32 = 1 << 8;
    /// Every subposition is a Left end.
    pub(crate) const ALL_LEFT_ENDS: u32 = 1 << 9;
    pub(crate) const ALL_RIGHT_ENDS: u32 = 1 << 10;
    pub(crate) const DEAD_ENDING: u32 = 1 << 11;
    pub(crate) const BLOCKED_LEFT_END: u32 = 1 << 12;
    pub(crate) const BLOCKED_RIGHT_END: u32 = 1 << 13;
    /// Some Left option is a blocked Left end.
    pub(crate) const LEFT_OPTION_BLOCKED: u32 = 1 << 14;
    /// Some Right option is a blocked Right end.
    pub(crate) const RIGHT_OPTION_BLOCKED: u32 = 1 << 15;
    pub(crate) const BLOCKING: u32 = 1 << 16;
    pub(crate) const LEFT_STRONG: u32 = 1 << 17;
    pub(crate) const RIGHT_STRONG: u32 = 1 << 18;
    /// Left B-strong, and so is every Right option.
    pub(crate) const LEFT_STRONG_CLOSED: u32 = 1 << 19;
    /// Right B-strong, and so is every Left option.
    pub(crate) const RIGHT_STRONG_CLOSED: u32 = 1 << 20;

    fn has(self, bit: u32) -> bool {
        self.0 & bit != 0
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_left_end(self) -> bool {
        self.has(Self::LEFT_END)
    }

    pub fn is_right_end(self) -> bool {
        self.has(Self::RIGHT_END)
    }

    pub fn left_tombstone(self) -> bool {
        self.has(Self::LEFT_TOMB)
    }

    pub fn right_tombstone(self) -> bool {
        self.has(Self::RIGHT_TOMB)
    }

    pub fn is_left_end_like(self) -> bool {
        self.has(Self::LEFT_END | Self::LEFT_TOMB)
    }

    pub fn is_right_end_like(self) -> bool {
        self.has(Self::RIGHT_END | Self::RIGHT_TOMB)
    }

    pub fn is_augmented(self) -> bool {
        self.has(Self::AUGMENTED)
    }

    pub fn side_outcome(self) -> SideOutcome {
        SideOutcome {
            left_first: Winner::left_if(self.has(Self::LEFT_FIRST_LEFT)),
            right_first: Winner::left_if(self.has(Self::RIGHT_FIRST_LEFT)),
        }
    }

    pub fn outcome(self) -> Outcome {
        self.side_outcome().outcome()
    }

    pub fn is_strictly_p_free(self) -> bool {
        self.has(Self::P_FREE)
    }

    pub fn is_dicot(self) -> bool {
        self.has(Self::DICOT)
    }

    pub fn is_dead_ending(self) -> bool {
        self.has(Self::DEAD_ENDING)
    }

    pub fn is_blocked_left_end(self) -> bool {
        self.has(Self::BLOCKED_LEFT_END)
    }

    pub fn is_blocked_right_end(self) -> bool {
        self.has(Self::BLOCKED_RIGHT_END)
    }

    pub fn is_blocking(self) -> bool {
        self.has(Self::BLOCKING)
    }

    pub fn is_left_b_strong(self) -> bool {
        self.has(Self::LEFT_STRONG)
    }

    pub fn is_right_b_strong(self) -> bool {
        self.has(Self::RIGHT_STRONG)
    }

    /// Derives the facts of `{left | right}` with the given tombstones from
    /// the already-known facts of its options.
    pub(crate) fn derive(left: &[Facts], right: &[Facts], lt: bool, rt: bool) -> Facts {
        let all = |opts: &[Facts], bit: u32| opts.iter().all(|f| f.has(bit));
        let any = |opts: &[Facts], bit: u32| opts.iter().any(|f| f.has(bit));
        let mut bits = 0u32;
        let mut set = |cond: bool, bit: u32| {
            if cond {
                bits |= bit;
            }
        };

        let left_end = left.is_empty();
        let right_end = right.is_empty();
        set(left_end, Self::LEFT_END);
        set(right_end, Self::RIGHT_END);
        set(lt, Self::LEFT_TOMB);
        set(rt, Self::RIGHT_TOMB);
        set(
            lt || rt || any(left, Self::AUGMENTED) || any(right, Self::AUGMENTED),
            Self::AUGMENTED,
        );

        let side = crate::outcomes::combine(
            left_end || lt,
            right_end || rt,
            left.iter().map(|f| f.side_outcome()),
            right.iter().map(|f| f.side_outcome()),
        );
        set(side.left_first == Winner::Left, Self::LEFT_FIRST_LEFT);
        set(side.right_first == Winner::Left, Self::RIGHT_FIRST_LEFT);
        set(
            side.outcome() != Outcome::P && all(left, Self::P_FREE) && all(right, Self::P_FREE),
            Self::P_FREE,
        );

        set(
            left_end == right_end && all(left, Self::DICOT) && all(right, Self::DICOT),
            Self::DICOT,
        );
        let all_left_ends = left_end && all(right, Self::ALL_LEFT_ENDS);
        let all_right_ends = right_end && all(left, Self::ALL_RIGHT_ENDS);
        set(all_left_ends, Self::ALL_LEFT_ENDS);
        set(all_right_ends, Self::ALL_RIGHT_ENDS);
        set(
            (!left_end || all_left_ends)
                && (!right_end || all_right_ends)
                && all(left, Self::DEAD_ENDING)
                && all(right, Self::DEAD_ENDING),
            Self::DEAD_ENDING,
        );

        let blocked_left = left_end
            && right
                .iter()
                .all(|r| r.has(Self::BLOCKED_LEFT_END) || r.has(Self::LEFT_OPTION_BLOCKED));
        let blocked_right = right_end
            && left
                .iter()
                .all(|l| l.has(Self::BLOCKED_RIGHT_END) || l.has(Self::RIGHT_OPTION_BLOCKED));
        set(blocked_left, Self::BLOCKED_LEFT_END);
        set(blocked_right, Self::BLOCKED_RIGHT_END);
        set(any(left, Self::BLOCKED_LEFT_END), Self::LEFT_OPTION_BLOCKED);
        set(any(right, Self::BLOCKED_RIGHT_END), Self::RIGHT_OPTION_BLOCKED);
        set(
            (!left_end || blocked_left)
                && (!right_end || blocked_right)
                && all(left, Self::BLOCKING)
                && all(right, Self::BLOCKING),
            Self::BLOCKING,
        );

        // A Left-win option is one Left wins after moving to it, i.e. with
        // Right to move next.
        let left_strong = left_end
            || left
                .iter()
                .any(|l| l.has(Self::RIGHT_FIRST_LEFT) && l.has(Self::LEFT_STRONG_CLOSED));
        let right_strong = right_end
            || right
                .iter()
                .any(|r| !r.has(Self::LEFT_FIRST_LEFT) && r.has(Self::RIGHT_STRONG_CLOSED));
        set(left_strong, Self::LEFT_STRONG);
        set(right_strong, Self::RIGHT_STRONG);
        set(left_strong && all(right, Self::LEFT_STRONG), Self::LEFT_STRONG_CLOSED);
        set(right_strong && all(left, Self::RIGHT_STRONG), Self::RIGHT_STRONG_CLOSED);

        Facts(bits)
    }
}

impl std::fmt::Debug for Facts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Facts({:#07x})", self.0)
    }
}
