//! Searches for sums of strictly P-free forms with outcome P.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate, EnumSpec, Filter};
use crate::error::{Error, Result};
use crate::forms::{Arena, FormId};
use crate::outcomes::Outcome;
use crate::population::{PairScratch, PairTable, Population};

/// Birthdays above this are not enumerated.
const MAX_ENUMERATED_BIRTHDAY: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub max_total_birthday: u32,
    pub max_width: usize,
    /// Summands were drawn from strictly P-free forms up to this birthday.
    pub enumerated_birthday: u32,
    pub population: usize,
    pub pairs_checked: u64,
    /// Every pair within the bounds was either checked or has a summand of
    /// rank at most 1.
    pub exhaustive: bool,
    pub scope: String,
    /// Pairs `(g, h)` with `o(g + h) = P`, listed once per unordered pair,
    /// the summand of higher population index first.
    pub pairs: Vec<(FormId, FormId)>,
}

fn pf_population(arena: &mut Arena, birthday: u32, width: usize) -> Result<Population> {
    let spec = EnumSpec::new(birthday, width).with_filter(Filter::PFree);
    let forms = enumerate(arena, &spec)?;
    Population::new(arena, &forms)
}

/// All unordered pairs of strictly P-free forms (width-bounded) whose ranks
/// sum to at most `max_total_birthday` and whose sum has outcome P.
///
/// Summands are enumerated up to birthday `min(T - 1, 3)`. A pair with a
/// larger summand has a partner of rank at most 1, which for a P-free form is
/// `0`, `1` or `-1`, and adding an integer preserves P-freeness; such pairs
/// are not re-checked, and the report says so.
pub fn counterexample_search_pfree_sum(arena: &mut Arena, max_total_birthday: u32, max_width: usize) -> Result<CounterexampleReport> {
    let t = max_total_birthday;
    let eb = t.saturating_sub(1).clamp(1, MAX_ENUMERATED_BIRTHDAY);
    let pop = pf_population(arena, eb, max_width)?;
    let m = pop.prefix_below_rank(t / 2 + 1);
    let table = PairTable::build(&pop, m);

    let per_row: Vec<(u64, Vec<(usize, usize)>)> = (0..pop.len())
        .into_par_iter()
        .map_init(PairScratch::default, |scratch, i| {
            let mut checked = 0;
            let mut hits = Vec::new();
            for j in 0..=i.min(m.saturating_sub(1)) {
                if j >= m || pop.rank(i) + pop.rank(j) > t {
                    continue;
                }
                checked += 1;
                if table.cell(&pop, i, j, scratch).outcome() == Outcome::P {
                    hits.push((i, j));
                }
            }
            (checked, hits)
        })
        .collect();

    let pairs_checked = per_row.iter().map(|(c, _)| c).sum();
    let pairs = per_row
        .into_iter()
        .flat_map(|(_, h)| h)
        .map(|(i, j)| (pop.form(i), pop.form(j)))
        .collect();
    let exhaustive = t.saturating_sub(2) <= eb;
    Ok(CounterexampleReport {
        max_total_birthday: t,
        max_width,
        enumerated_birthday: eb,
        population: pop.len(),
        pairs_checked,
        exhaustive,
        scope: format!(
            "strictly P-free forms of birthday <= {eb}, width <= {max_width}; pairs with a summand of \
             birthday > {eb} have a partner in {{0, 1, -1}} and are covered by integer-offset P-freeness"
        ),
        pairs,
    })
}

/// Strictly P-free `g` (width-bounded) with `2 rank(g) <= max_total_birthday`
/// and `o(g + ~g) = P`.
pub fn counterexample_search_symmetric(arena: &mut Arena, max_total_birthday: u32, max_width: usize) -> Result<CounterexampleReport> {
    let t = max_total_birthday;
    let eb = (t / 2).clamp(1, MAX_ENUMERATED_BIRTHDAY);
    let pop = pf_population(arena, eb, max_width)?;
    let m = pop.prefix_below_rank(eb);
    let table = PairTable::build(&pop, m);
    let mut conj = Vec::with_capacity(pop.len());
    for i in 0..pop.len() {
        let c = arena.conjugate(pop.form(i));
        let ci = pop
            .index_of(c)
            .ok_or_else(|| Error::InvalidArgument("population is not closed under conjugation".into()))?;
        conj.push(ci);
    }
    let hits: Vec<usize> = (0..pop.len())
        .into_par_iter()
        .map_init(PairScratch::default, |scratch, i| {
            (2 * pop.rank(i) <= t && table.cell(&pop, i, conj[i], scratch).outcome() == Outcome::P).then_some(i)
        })
        .flatten()
        .collect();
    let pairs_checked = (0..pop.len()).filter(|&i| 2 * pop.rank(i) <= t).count() as u64;
    Ok(CounterexampleReport {
        max_total_birthday: t,
        max_width,
        enumerated_birthday: eb,
        population: pop.len(),
        pairs_checked,
        exhaustive: t / 2 <= eb,
        scope: format!("g + ~g for strictly P-free g of birthday <= {eb}, width <= {max_width}"),
        pairs: hits.into_iter().map(|i| (pop.form(i), pop.form(conj[i]))).collect(),
    })
}
