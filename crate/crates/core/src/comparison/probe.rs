//! Outcome rows of `c + X` for a fixed closed set of components `c` and every
//! blocking `X = {S | T}` whose option sets are drawn from a given pool.
//!
//! Two left sets `S` that give Left the same winning replies against every
//! component (and agree on emptiness and on the blocked-end test that applies
//! when `T` is empty) produce identical rows, so the table is built per class
//! of left sets and class of right sets rather than per `X`.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::enumeration::subsets_up_to;
use crate::error::Result;
use crate::forms::{Arena, FormId};
use crate::outcomes::{outcome_geq, Outcome, SideOutcome, Winner};

type Bits = Vec<u64>;

struct SideClass {
    bits: Bits,
    empty: bool,
    /// When this side is the whole option set and the other is empty, is the
    /// resulting end blocked?
    end_blocked: bool,
    representative: SmallVec<[FormId; 4]>,
    count: u64,
}

pub struct ProbeTable {
    components: Vec<FormId>,
    index: FxHashMap<FormId, usize>,
    left: Vec<SideClass>,
    right: Vec<SideClass>,
    rows: Vec<Vec<u8>>,
    witnesses: Vec<(usize, usize)>,
    pool_size: u64,
}

fn set_bit(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn get_bit(bits: &Bits, i: usize) -> bool {
    bits[i / 64] & (1 << (i % 64)) != 0
}

fn classes(
    subsets: &[SmallVec<[usize; 4]>],
    options: &[FormId],
    per_option: &[Bits],
    end_ok: &[bool],
) -> Vec<SideClass> {
    let words = per_option.first().map_or(0, Vec::len);
    let mut map: FxHashMap<(Bits, bool, bool), usize> = FxHashMap::default();
    let mut out: Vec<SideClass> = Vec::new();
    for subset in subsets {
        let mut bits = vec![0u64; words];
        for &s in subset {
            for (w, x) in bits.iter_mut().zip(&per_option[s]) {
                *w |= x;
            }
        }
        let empty = subset.is_empty();
        let end_blocked = subset.iter().all(|&s| end_ok[s]);
        let key = (bits, empty, end_blocked);
        match map.get(&key) {
            Some(&i) => out[i].count += 1,
            None => {
                map.insert(key.clone(), out.len());
                out.push(SideClass {
                    bits: key.0,
                    empty,
                    end_blocked,
                    representative: subset.iter().map(|&s| options[s]).collect(),
                    count: 1,
                });
            }
        }
    }
    out
}

impl ProbeTable {
    /// `targets` are the forms to be compared; `options` must be blocking
    /// ordinary forms. The pool is every blocking `{S | T}` with `S, T`
    /// subsets of `options` of size at most `max_width`.
    pub fn build(arena: &mut Arena, targets: &[FormId], options: &[FormId], max_width: usize) -> Result<ProbeTable> {
        for &o in options {
            arena.ordinary(o)?;
        }
        let mut components: Vec<FormId> = Vec::new();
        {
            let mut seen = rustc_hash::FxHashSet::default();
            for &t in targets {
                arena.ordinary(t)?;
                for s in arena.subpositions(t) {
                    if seen.insert(s) {
                        components.push(s);
                    }
                }
            }
        }
        components.sort_by_key(|&c| (arena.rank(c), c));
        let index: FxHashMap<FormId, usize> = components.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = components.len();
        let words = n.div_ceil(64);

        // Left moving to c + s wins with Right next; Right moving to c + t
        // wins with Left next.
        let mut left_wins = vec![vec![0u64; words]; options.len()];
        let mut right_wins = vec![vec![0u64; words]; options.len()];
        let mark = arena.checkpoint();
        for (j, &o) in options.iter().enumerate() {
            for (i, &c) in components.iter().enumerate() {
                let s = arena.sum(c, o);
                let side = arena.side_outcome(s);
                if side.right_first == Winner::Left {
                    set_bit(&mut left_wins[j], i);
                }
                if side.left_first == Winner::Right {
                    set_bit(&mut right_wins[j], i);
                }
            }
        }
        arena.rollback(mark);

        let right_end_ok: Vec<bool> = options
            .iter()
            .map(|&o| {
                let f = arena.facts(o);
                f.is_blocked_right_end() || arena.right(o).iter().any(|&r| arena.facts(r).is_blocked_right_end())
            })
            .collect();
        let left_end_ok: Vec<bool> = options
            .iter()
            .map(|&o| {
                let f = arena.facts(o);
                f.is_blocked_left_end() || arena.left(o).iter().any(|&l| arena.facts(l).is_blocked_left_end())
            })
            .collect();

        let subsets = subsets_up_to(options.len(), max_width);
        let left = classes(&subsets, options, &left_wins, &right_end_ok);
        let right = classes(&subsets, options, &right_wins, &left_end_ok);

        let comp_left: Vec<SmallVec<[usize; 4]>> = components
            .iter()
            .map(|&c| arena.left(c).iter().map(|o| index[o]).collect())
            .collect();
        let comp_right: Vec<SmallVec<[usize; 4]>> = components
            .iter()
            .map(|&c| arena.right(c).iter().map(|o| index[o]).collect())
            .collect();

        let mut rows = Vec::new();
        let mut witnesses = Vec::new();
        let mut seen: FxHashMap<Vec<u8>, usize> = FxHashMap::default();
        let mut pool_size = 0u64;
        let mut row = vec![0u8; n];
        for (li, lc) in left.iter().enumerate() {
            for (ri, rc) in right.iter().enumerate() {
                let blocking = (!lc.empty || rc.end_blocked) && (!rc.empty || lc.end_blocked);
                if !blocking {
                    continue;
                }
                pool_size += lc.count * rc.count;
                for i in 0..n {
                    let lf = (comp_left[i].is_empty() && lc.empty)
                        || get_bit(&lc.bits, i)
                        || comp_left[i].iter().any(|&x| row[x] & 2 != 0);
                    let rr = (comp_right[i].is_empty() && rc.empty)
                        || get_bit(&rc.bits, i)
                        || comp_right[i].iter().any(|&x| row[x] & 1 == 0);
                    row[i] = u8::from(lf) | (u8::from(!rr) << 1);
                }
                if !seen.contains_key(&row) {
                    seen.insert(row.clone(), rows.len());
                    rows.push(row.clone());
                    witnesses.push((li, ri));
                }
            }
        }
        Ok(ProbeTable {
            components,
            index,
            left,
            right,
            rows,
            witnesses,
            pool_size,
        })
    }

    /// Number of distinct forms `X` in the pool.
    pub fn pool_size(&self) -> u64 {
        self.pool_size
    }

    /// Number of distinct outcome rows.
    pub fn distinct_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn class_counts(&self) -> (usize, usize) {
        (self.left.len(), self.right.len())
    }

    pub fn components(&self) -> &[FormId] {
        &self.components
    }

    fn outcome(&self, row: usize, g: usize) -> Outcome {
        SideOutcome::from_bits(self.rows[row][g]).outcome()
    }

    /// First row index whose pool member `X` has `o(g + X) < o(h + X)` or
    /// incomparable. `g` and `h` must be among the targets.
    pub fn refute(&self, g: FormId, h: FormId) -> Option<usize> {
        let (gi, hi) = (self.index[&g], self.index[&h]);
        (0..self.rows.len()).find(|&r| !outcome_geq(self.outcome(r, gi), self.outcome(r, hi)))
    }

    /// Outcomes `(o(g + X), o(h + X))` predicted by the table for row `row`.
    pub fn outcomes(&self, row: usize, g: FormId, h: FormId) -> (Outcome, Outcome) {
        (self.outcome(row, self.index[&g]), self.outcome(row, self.index[&h]))
    }

    /// A concrete pool member producing row `row`.
    pub fn witness(&self, arena: &mut Arena, row: usize) -> Result<FormId> {
        let (li, ri) = self.witnesses[row];
        arena.make(&self.left[li].representative, &self.right[ri].representative, false, false)
    }
}
