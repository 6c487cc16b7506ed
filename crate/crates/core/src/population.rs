//! Dense, topologically ordered form sets with precomputed outcome tables
//! for integer offsets and for pairwise sums.
//!
//! Entries are computed by the same misère recursion as the arena but over
//! table indices, without interning any sum. The arena remains the reference
//! evaluator for spot checks and witness confirmation.

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::forms::{Arena, Facts, FormId};
use crate::outcomes::{Outcome, SideOutcome};
use crate::tipping::{tipping_from, TippingPoints};

/// Side outcome bits (see [`SideOutcome::to_bits`]) plus strict P-freeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Cell(u8);

impl Cell {
    const P_FREE: u8 = 4;

    fn new(side: SideOutcome, p_free: bool) -> Cell {
        Cell(side.to_bits() | if p_free { Self::P_FREE } else { 0 })
    }

    pub fn side(self) -> SideOutcome {
        SideOutcome::from_bits(self.0 & 3)
    }

    pub fn outcome(self) -> Outcome {
        self.side().outcome()
    }

    pub fn p_free(self) -> bool {
        self.0 & Self::P_FREE != 0
    }

    fn left_first_left(self) -> bool {
        self.0 & 1 != 0
    }

    fn right_first_left(self) -> bool {
        self.0 & 2 != 0
    }
}

/// Combines option cells. `left`/`right` iterate over the cells of the
/// node's options.
fn combine_cells(
    left_end_like: bool,
    right_end_like: bool,
    left: impl Iterator<Item = Cell> + Clone,
    right: impl Iterator<Item = Cell> + Clone,
) -> Cell {
    let left_first = left_end_like || left.clone().any(Cell::right_first_left);
    let right_first_right = right_end_like || right.clone().any(|c| !c.left_first_left());
    let side = SideOutcome::from_bits(u8::from(left_first) | (u8::from(!right_first_right) << 1));
    let p_free = side.outcome() != Outcome::P && left.chain(right).all(Cell::p_free);
    Cell::new(side, p_free)
}

pub struct Population {
    forms: Vec<FormId>,
    index: FxHashMap<FormId, u32>,
    facts: Vec<Facts>,
    ranks: Vec<u16>,
    spans: Vec<(u32, u16, u16)>,
    options: Vec<u32>,
    /// `level_start[r]` is the first index of rank `>= r`.
    level_start: Vec<usize>,
    offset_bound: i64,
    offsets: Vec<Cell>,
    tipping: Vec<Option<TippingPoints>>,
}

impl Population {
    /// Closes `roots` under subpositions and orders the result by
    /// `(rank, id)`, so options always precede the forms that use them.
    pub fn new(arena: &Arena, roots: &[FormId]) -> Result<Population> {
        let mut seen: FxHashSet<FormId> = FxHashSet::default();
        let mut stack: Vec<FormId> = Vec::new();
        for &r in roots {
            arena.check(r)?;
            if seen.insert(r) {
                stack.push(r);
            }
        }
        while let Some(g) = stack.pop() {
            for &o in arena.left(g).iter().chain(arena.right(g)) {
                if seen.insert(o) {
                    stack.push(o);
                }
            }
        }
        let mut forms: Vec<FormId> = seen.into_iter().collect();
        forms.sort_unstable_by_key(|&g| (arena.rank(g), g));
        let index: FxHashMap<FormId, u32> = forms.iter().enumerate().map(|(i, &g)| (g, i as u32)).collect();

        let mut spans = Vec::with_capacity(forms.len());
        let mut options = Vec::new();
        for &g in &forms {
            let (l, r) = (arena.left(g), arena.right(g));
            spans.push((options.len() as u32, l.len() as u16, r.len() as u16));
            options.extend(l.iter().chain(r).map(|o| index[o]));
        }
        let facts: Vec<Facts> = forms.iter().map(|&g| arena.facts(g)).collect();
        let ranks: Vec<u16> = forms.iter().map(|&g| arena.rank(g) as u16).collect();
        let max_rank = ranks.last().copied().unwrap_or(0) as usize;
        let level_start = (0..=max_rank + 1)
            .map(|r| ranks.partition_point(|&x| (x as usize) < r))
            .collect();
        let offset_bound = (max_rank as i64 + 1).max(4);

        let mut pop = Population {
            forms,
            index,
            facts,
            ranks,
            spans,
            options,
            level_start,
            offset_bound,
            offsets: Vec::new(),
            tipping: Vec::new(),
        };
        pop.build_offsets();
        pop.tipping = (0..pop.len())
            .map(|i| {
                let bound = u32::from(pop.ranks[i]) + 1;
                tipping_from(bound, |k| pop.offset_cell(i, k).outcome()).ok()
            })
            .collect();
        Ok(pop)
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[FormId] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> FormId {
        self.forms[i]
    }

    pub fn index_of(&self, g: FormId) -> Option<usize> {
        self.index.get(&g).map(|&i| i as usize)
    }

    pub fn left(&self, i: usize) -> &[u32] {
        let (s, l, _) = self.spans[i];
        &self.options[s as usize..s as usize + l as usize]
    }

    pub fn right(&self, i: usize) -> &[u32] {
        let (s, l, r) = self.spans[i];
        let s = s as usize + l as usize;
        &self.options[s..s + r as usize]
    }

    pub fn facts(&self, i: usize) -> Facts {
        self.facts[i]
    }

    pub fn rank(&self, i: usize) -> u32 {
        u32::from(self.ranks[i])
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.last().map_or(0, |&r| u32::from(r))
    }

    /// Number of forms of rank `< r`.
    pub fn prefix_below_rank(&self, r: u32) -> usize {
        self.level_start.get(r as usize).copied().unwrap_or(self.len())
    }

    pub fn outcome(&self, i: usize) -> Outcome {
        self.facts[i].outcome()
    }

    /// Tipping points, if found within `rank + 1`.
    pub fn tipping(&self, i: usize) -> Option<TippingPoints> {
        self.tipping[i]
    }

    pub fn offset_bound(&self) -> i64 {
        self.offset_bound
    }

    /// Cell of `form(i) + k` for `|k| <= offset_bound()`.
    pub fn offset_cell(&self, i: usize, k: i64) -> Cell {
        assert!(k.abs() <= self.offset_bound, "offset {k} outside table");
        let width = 2 * self.offset_bound as usize + 1;
        self.offsets[i * width + (k + self.offset_bound) as usize]
    }

    fn build_offsets(&mut self) {
        let b = self.offset_bound;
        let width = 2 * b as usize + 1;
        let mut cells = vec![Cell::default(); self.len() * width];
        let order: Vec<i64> = (0..=b).chain((1..=b).map(|k| -k)).collect();
        for &k in &order {
            for i in 0..self.len() {
                let at = |j: usize, k: i64| cells[j * width + (k + b) as usize];
                let f = self.facts[i];
                // An integer k > 0 gives Left the extra move to k - 1; k < 0
                // gives Right the move to k + 1.
                let extra_left = (k > 0).then(|| at(i, k - 1));
                let extra_right = (k < 0).then(|| at(i, k + 1));
                let cell = combine_cells(
                    f.is_left_end_like() && k <= 0,
                    f.is_right_end_like() && k >= 0,
                    self.left(i).iter().map(|&o| at(o as usize, k)).chain(extra_left),
                    self.right(i).iter().map(|&o| at(o as usize, k)).chain(extra_right),
                );
                cells[i * width + (k + b) as usize] = cell;
            }
        }
        self.offsets = cells;
    }
}

/// Outcome cells of `form(i) + form(j)` for every `i` and every `j` below a
/// prefix bound `m`. Because the population is ordered by rank and closed
/// under options, the prefix is closed too. Pairs with both indices at or
/// above `m` are evaluated on demand through [`PairScratch`].
pub struct PairTable {
    m: usize,
    cells: Vec<Cell>,
}

/// Per-worker memo for pairs outside the table.
#[derive(Default)]
pub struct PairScratch {
    memo: FxHashMap<(u32, u32), Cell>,
}

impl PairScratch {
    pub fn clear(&mut self) {
        self.memo.clear();
    }
}

impl PairTable {
    pub fn build(pop: &Population, m: usize) -> PairTable {
        let m = m.min(pop.len());
        let n = pop.len();
        let mut cells = vec![Cell::default(); n * m];
        let max_rank = pop.max_rank();
        for r in 0..=max_rank {
            let (lo, hi) = (pop.prefix_below_rank(r), pop.prefix_below_rank(r + 1));
            if lo >= hi || m == 0 {
                continue;
            }
            let (done, rest) = cells.split_at_mut(lo * m);
            let level = &mut rest[..(hi - lo) * m];
            let done: &[Cell] = done;
            level.par_chunks_mut(m).enumerate().for_each(|(off, row)| {
                let i = lo + off;
                let fi = pop.facts(i);
                for j in 0..m {
                    let fj = pop.facts(j);
                    let l_i = pop.left(i).iter().map(|&x| done[x as usize * m + j]);
                    let r_i = pop.right(i).iter().map(|&x| done[x as usize * m + j]);
                    let cell = {
                        let row_ro: &[Cell] = row;
                        let l_j = pop.left(j).iter().map(|&y| row_ro[y as usize]);
                        let r_j = pop.right(j).iter().map(|&y| row_ro[y as usize]);
                        combine_cells(
                            fi.is_left_end_like() && fj.is_left_end_like(),
                            fi.is_right_end_like() && fj.is_right_end_like(),
                            l_i.chain(l_j),
                            r_i.chain(r_j),
                        )
                    };
                    row[j] = cell;
                }
            });
        }
        PairTable { m, cells }
    }

    pub fn prefix(&self) -> usize {
        self.m
    }

    /// Whether `(i, j)` can be answered without recursion.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        i.min(j) < self.m
    }

    /// Cell of `form(i) + form(j)`.
    pub fn cell(&self, pop: &Population, i: usize, j: usize, scratch: &mut PairScratch) -> Cell {
        if j < self.m {
            return self.cells[i * self.m + j];
        }
        if i < self.m {
            return self.cells[j * self.m + i];
        }
        let key = (i.min(j) as u32, i.max(j) as u32);
        if let Some(&c) = scratch.memo.get(&key) {
            return c;
        }
        let (fi, fj) = (pop.facts(i), pop.facts(j));
        let mut left = Vec::with_capacity(8);
        let mut right = Vec::with_capacity(8);
        for &x in pop.left(i) {
            left.push(self.cell(pop, x as usize, j, scratch));
        }
        for &y in pop.left(j) {
            left.push(self.cell(pop, i, y as usize, scratch));
        }
        for &x in pop.right(i) {
            right.push(self.cell(pop, x as usize, j, scratch));
        }
        for &y in pop.right(j) {
            right.push(self.cell(pop, i, y as usize, scratch));
        }
        let c = combine_cells(
            fi.is_left_end_like() && fj.is_left_end_like(),
            fi.is_right_end_like() && fj.is_right_end_like(),
            left.into_iter(),
            right.into_iter(),
        );
        scratch.memo.insert(key, c);
        c
    }
}

/// Checks every population form's facts and offset cells against the
/// arena. Used by tests; returns the first disagreeing form.
pub fn cross_check_offsets(arena: &mut Arena, pop: &Population, max_k: i64) -> Result<Option<(FormId, i64)>> {
    if max_k > pop.offset_bound() {
        return Err(Error::InvalidArgument(format!("offset {max_k} outside table")));
    }
    for i in 0..pop.len() {
        let g = pop.form(i);
        for k in -max_k..=max_k {
            let s = arena.add_integer(g, k)?;
            let f = arena.facts(s);
            let c = pop.offset_cell(i, k);
            if f.side_outcome() != c.side() || f.is_strictly_p_free() != c.p_free() {
                return Ok(Some((g, k)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, EnumSpec};

    #[test]
    fn offsets_and_pairs_match_the_arena() {
        let mut a = Arena::new();
        let forms = enumerate(&mut a, &EnumSpec::new(2, 2)).unwrap();
        let pop = Population::new(&a, &forms).unwrap();
        assert_eq!(pop.len(), forms.len());
        assert_eq!(cross_check_offsets(&mut a, &pop, 3).unwrap(), None);
        let table = PairTable::build(&pop, pop.prefix_below_rank(2));
        let mut scratch = PairScratch::default();
        for i in 0..pop.len() {
            for j in 0..pop.len() {
                let s = a.sum(pop.form(i), pop.form(j));
                let c = table.cell(&pop, i, j, &mut scratch);
                assert_eq!(a.side_outcome(s), c.side());
                assert_eq!(a.is_strictly_p_free(s), c.p_free());
            }
        }
    }

    #[test]
    fn tipping_matches_the_arena() {
        let mut a = Arena::new();
        let g = a.parse("*+*").unwrap();
        let pop = Population::new(&a, &[g]).unwrap();
        let i = pop.index_of(g).unwrap();
        assert_eq!(pop.tipping(i), Some(a.tipping_points(g).unwrap()));
        assert_eq!(pop.len(), 3);
        assert_eq!(pop.form(0), FormId::ZERO);
    }
}
