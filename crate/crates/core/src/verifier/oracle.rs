//! Two interchangeable evaluators for suite clauses: one reads the
//! population tables, the other interns sums in an arena. Suites run on the
//! table evaluator and re-check every failure on the arena evaluator.

use smallvec::SmallVec;

use crate::forms::{Arena, Facts, FormId};
use crate::outcomes::{Outcome, SideOutcome};
use crate::population::{Cell, PairScratch, PairTable, Population};
use crate::tipping::{contiguity_from, Contiguity, TippingPoints};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Probe {
    pub side: SideOutcome,
    pub p_free: bool,
}

impl Probe {
    pub fn outcome(self) -> Outcome {
        self.side.outcome()
    }
}

impl From<Cell> for Probe {
    fn from(c: Cell) -> Probe {
        Probe {
            side: c.side(),
            p_free: c.p_free(),
        }
    }
}

pub(crate) type Options<G> = SmallVec<[G; 4]>;

pub(crate) trait Oracle {
    type G: Copy + PartialEq;

    fn facts(&self, g: Self::G) -> Facts;
    fn left(&self, g: Self::G) -> Options<Self::G>;
    fn right(&self, g: Self::G) -> Options<Self::G>;
    fn rank(&self, g: Self::G) -> u32;
    fn tipping(&mut self, g: Self::G) -> Option<TippingPoints>;
    /// `g + k`.
    fn offset(&mut self, g: Self::G, k: i64) -> Probe;
    /// `g + h`.
    fn pair(&mut self, g: Self::G, h: Self::G) -> Probe;

    fn outcome(&self, g: Self::G) -> Outcome {
        self.facts(g).outcome()
    }

    fn contiguity(&mut self, g: Self::G) -> Option<Contiguity> {
        let tp = self.tipping(g)?;
        let bound = self.rank(g) + 1;
        Some(contiguity_from(bound, tp, |k| self.offset(g, k).outcome()))
    }
}

pub(crate) struct TableOracle<'a> {
    pub pop: &'a Population,
    pub table: &'a PairTable,
    pub scratch: PairScratch,
}

impl Oracle for TableOracle<'_> {
    type G = usize;

    fn facts(&self, g: usize) -> Facts {
        self.pop.facts(g)
    }

    fn left(&self, g: usize) -> Options<usize> {
        self.pop.left(g).iter().map(|&x| x as usize).collect()
    }

    fn right(&self, g: usize) -> Options<usize> {
        self.pop.right(g).iter().map(|&x| x as usize).collect()
    }

    fn rank(&self, g: usize) -> u32 {
        self.pop.rank(g)
    }

    fn tipping(&mut self, g: usize) -> Option<TippingPoints> {
        self.pop.tipping(g)
    }

    fn offset(&mut self, g: usize, k: i64) -> Probe {
        self.pop.offset_cell(g, k).into()
    }

    fn pair(&mut self, g: usize, h: usize) -> Probe {
        self.table.cell(self.pop, g, h, &mut self.scratch).into()
    }
}

pub(crate) struct ArenaOracle<'a> {
    pub arena: &'a mut Arena,
}

impl ArenaOracle<'_> {
    fn probe(&self, g: FormId) -> Probe {
        let f = self.arena.facts(g);
        Probe {
            side: f.side_outcome(),
            p_free: f.is_strictly_p_free(),
        }
    }
}

impl Oracle for ArenaOracle<'_> {
    type G = FormId;

    fn facts(&self, g: FormId) -> Facts {
        self.arena.facts(g)
    }

    fn left(&self, g: FormId) -> Options<FormId> {
        self.arena.left(g).into()
    }

    fn right(&self, g: FormId) -> Options<FormId> {
        self.arena.right(g).into()
    }

    fn rank(&self, g: FormId) -> u32 {
        self.arena.rank(g)
    }

    fn tipping(&mut self, g: FormId) -> Option<TippingPoints> {
        self.arena.tipping_points(g).ok()
    }

    fn offset(&mut self, g: FormId, k: i64) -> Probe {
        let s = self.arena.add_integer(g, k).expect("offset within integer limit");
        self.probe(s)
    }

    fn pair(&mut self, g: FormId, h: FormId) -> Probe {
        let s = self.arena.sum(g, h);
        self.probe(s)
    }
}
