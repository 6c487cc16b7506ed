//! Exhaustive width-bounded enumeration of forms by birthday.

mod search;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::forms::{Arena, Facts, FormId};
use crate::outcomes::Outcome;
use crate::universes::UniverseTag;

pub use search::{counterexample_search_pfree_sum, counterexample_search_symmetric, CounterexampleReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// Strictly P-free.
    PFree,
    Universe(UniverseTag),
    Outcome(Outcome),
    LeftEnd,
    RightEnd,
}

impl Filter {
    /// Hereditary filters are applied while building levels, which prunes
    /// the option pool of later levels.
    pub fn is_hereditary(self) -> bool {
        matches!(self, Filter::PFree | Filter::Universe(_))
    }

    pub fn accepts(self, facts: Facts) -> bool {
        match self {
            Filter::PFree => facts.is_strictly_p_free(),
            Filter::Universe(u) => {
                !facts.is_augmented()
                    && match u {
                        UniverseTag::M => true,
                        UniverseTag::D => facts.is_dicot(),
                        UniverseTag::E => facts.is_dead_ending(),
                        UniverseTag::B => facts.is_blocking(),
                    }
            }
            Filter::Outcome(o) => facts.outcome() == o,
            Filter::LeftEnd => facts.is_left_end(),
            Filter::RightEnd => facts.is_right_end(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub max_birthday: u32,
    /// Cap on the size of each option set.
    pub max_width: usize,
    pub filters: Vec<Filter>,
    /// Also emit every form with a single root tombstone added on either
    /// side. Such variants never serve as options.
    pub allow_tombstones: bool,
    /// Maximum number of forms kept, counting the option pool.
    pub limit: usize,
}

impl Default for EnumSpec {
    fn default() -> Self {
        EnumSpec {
            max_birthday: 3,
            max_width: 2,
            filters: Vec::new(),
            allow_tombstones: false,
            limit: 5_000_000,
        }
    }
}

impl EnumSpec {
    pub fn new(max_birthday: u32, max_width: usize) -> Self {
        EnumSpec {
            max_birthday,
            max_width,
            ..EnumSpec::default()
        }
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filters.push(filter);
        self
    }

    /// Strictly P-free blocking forms.
    pub fn pf_b(max_birthday: u32, max_width: usize) -> Self {
        EnumSpec::new(max_birthday, max_width)
            .with_filter(Filter::PFree)
            .with_filter(Filter::Universe(UniverseTag::B))
    }

    fn hereditary_ok(&self, facts: Facts) -> bool {
        self.filters.iter().filter(|f| f.is_hereditary()).all(|f| f.accepts(facts))
    }

    fn accepts(&self, facts: Facts) -> bool {
        self.filters.iter().all(|f| f.accepts(facts))
    }
}

/// Subsets of `0..n` with at most `max` elements: by size, then
/// lexicographically. Elements are ascending within each subset.
pub fn subsets_up_to(n: usize, max: usize) -> Vec<SmallVec<[usize; 4]>> {
    let mut out = vec![SmallVec::new()];
    let mut current: Vec<SmallVec<[usize; 4]>> = vec![SmallVec::new()];
    for _ in 0..max.min(n) {
        let mut next = Vec::new();
        for s in &current {
            let from = s.last().map_or(0, |&l| l + 1);
            for i in from..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        current = next;
    }
    out
}

/// Calls `f(left, right)` for every pair of subsets of `pool` (each of size
/// at most `width`) in which some option has pool index `>= newest`. Order is
/// left-major over [`subsets_up_to`]. Option slices are in pool order.
pub fn for_each_candidate(pool: &[FormId], newest: usize, width: usize, mut f: impl FnMut(&[FormId], &[FormId])) {
    let subsets = subsets_up_to(pool.len(), width);
    let sets: Vec<SmallVec<[FormId; 4]>> = subsets.iter().map(|s| s.iter().map(|&i| pool[i]).collect()).collect();
    let fresh: Vec<bool> = subsets.iter().map(|s| s.last().is_some_and(|&i| i >= newest)).collect();
    for (li, l) in sets.iter().enumerate() {
        for (ri, r) in sets.iter().enumerate() {
            if fresh[li] || fresh[ri] {
                f(l, r);
            }
        }
    }
}

/// Forms grouped by birthday. `levels[k]` holds the forms of birthday `k`
/// that pass the hereditary filters.
#[derive(Debug, Clone, Default)]
pub struct Levels {
    pub levels: Vec<Vec<FormId>>,
}

impl Levels {
    pub fn all(&self) -> impl Iterator<Item = FormId> + '_ {
        self.levels.iter().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Builds the option pool level by level, applying only hereditary filters.
pub fn build_levels(arena: &mut Arena, spec: &EnumSpec) -> Result<Levels> {
    if spec.max_width == 0 {
        return Err(Error::InvalidArgument("max_width must be positive".into()));
    }
    let mut levels = Levels::default();
    let zero_ok = spec.hereditary_ok(arena.facts(FormId::ZERO));
    levels.levels.push(if zero_ok { vec![FormId::ZERO] } else { vec![] });
    let mut pool: Vec<FormId> = levels.levels[0].clone();
    for _ in 1..=spec.max_birthday {
        let newest = pool.len() - levels.levels.last().map_or(0, Vec::len);
        let mut next = Vec::new();
        let mut overflow = false;
        let mut l_sorted: SmallVec<[FormId; 4]> = SmallVec::new();
        let mut r_sorted: SmallVec<[FormId; 4]> = SmallVec::new();
        for_each_candidate(&pool, newest, spec.max_width, |l, r| {
            if overflow {
                return;
            }
            l_sorted.clear();
            l_sorted.extend_from_slice(l);
            l_sorted.sort_unstable();
            r_sorted.clear();
            r_sorted.extend_from_slice(r);
            r_sorted.sort_unstable();
            let (facts, _) = arena.peek(&l_sorted, &r_sorted, false, false);
            if spec.hereditary_ok(facts) {
                next.push(arena.intern(&l_sorted, &r_sorted, false, false));
                if pool.len() + next.len() > spec.limit {
                    overflow = true;
                }
            }
        });
        if overflow {
            return Err(Error::ResourceLimit {
                limit: spec.limit,
                produced: pool.len() + next.len(),
            });
        }
        pool.extend_from_slice(&next);
        levels.levels.push(next);
    }
    Ok(levels)
}

/// All forms within the bounds that pass every filter, in level order.
pub fn enumerate(arena: &mut Arena, spec: &EnumSpec) -> Result<Vec<FormId>> {
    let levels = build_levels(arena, spec)?;
    let mut out = Vec::new();
    for g in levels.all() {
        if spec.accepts(arena.facts(g)) {
            out.push(g);
        }
        if spec.allow_tombstones {
            let left: SmallVec<[FormId; 4]> = arena.left(g).into();
            let right: SmallVec<[FormId; 4]> = arena.right(g).into();
            for (lt, rt) in [(true, false), (false, true)] {
                let t = arena.intern(&left, &right, lt, rt);
                if spec.accepts(arena.facts(t)) {
                    out.push(t);
                }
            }
        }
        if out.len() > spec.limit {
            return Err(Error::ResourceLimit {
                limit: spec.limit,
                produced: out.len(),
            });
        }
    }
    Ok(out)
}
