//! Quantified property suites over enumerated populations.
//!
//! Form clauses run over every population member. Pair clauses run over
//! every ordered pair when the population is small; otherwise over every
//! ordered pair with a summand below the pair-table prefix, every pair
//! involving an injected form, and a seeded sample of the remaining pairs.
//! Every failure is re-evaluated in a fresh arena before it is reported.

mod manifest;
mod oracle;
mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::enumeration::{enumerate, EnumSpec, Filter};
use crate::error::Result;
use crate::forms::{Arena, FormId};
use crate::outcomes::Outcome;
use crate::population::{PairTable, Population};
use crate::universes::UniverseTag;

pub use manifest::{ManifestRow, MANIFEST};
pub use suites::{Clause, Suite};

use oracle::{ArenaOracle, TableOracle};
use suites::{check_form, check_pair, RawFailure, Tally};

const ROW_CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationSpec {
    pub enumeration: EnumSpec,
    /// Extra forms quantified alongside the enumerated ones.
    pub inject: Vec<FormId>,
    /// Populations up to this size get every ordered pair checked.
    pub exhaustive_pairs_up_to: usize,
    pub sampled_pairs: usize,
    pub seed: u64,
    pub failure_cap: usize,
}

impl Default for PopulationSpec {
    fn default() -> Self {
        PopulationSpec {
            enumeration: EnumSpec::pf_b(3, 2),
            inject: Vec::new(),
            exhaustive_pairs_up_to: 4096,
            sampled_pairs: 1_000_000,
            seed: 0x5eed,
            failure_cap: 32,
        }
    }
}

impl PopulationSpec {
    pub fn new(enumeration: EnumSpec) -> Self {
        PopulationSpec {
            enumeration,
            ..PopulationSpec::default()
        }
    }

    pub fn with_inject(mut self, forms: &[FormId]) -> Self {
        self.inject.extend_from_slice(forms);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationSummary {
    pub enumeration: EnumSpec,
    pub injected: Vec<String>,
    /// Forms quantified over: enumerated plus injected.
    pub size: usize,
    /// Size of the closure under options used for evaluation.
    pub closure_size: usize,
    pub max_rank: u32,
    pub pair_scope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub id: String,
    pub statement: String,
    pub fired: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguisherReport {
    pub x: String,
    /// Outcome of the form under test plus `x`.
    pub o_gx: Outcome,
    /// Outcome of the comparison form plus `x`.
    pub o_hx: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub clause: String,
    pub forms: Vec<String>,
    pub offset: Option<i64>,
    pub expected: String,
    pub observed: String,
    /// Whether a standalone re-evaluation reproduced the violation.
    pub confirmed: bool,
    pub distinguisher: Option<DistinguisherReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub population: PopulationSummary,
    pub instances_checked: u64,
    pub clauses: Vec<ClauseReport>,
    pub failures_total: u64,
    /// The first failures found, in deterministic order.
    pub failures: Vec<Witness>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn clause(&self, id: &str) -> Option<&ClauseReport> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

pub struct Verifier<'a> {
    arena: &'a mut Arena,
    spec: PopulationSpec,
    pop: Population,
    table: PairTable,
    injected: Vec<usize>,
    /// Non-injected members in population order.
    rest: Vec<usize>,
    exhaustive: bool,
    distinguisher_pool: Option<Vec<FormId>>,
}

impl<'a> Verifier<'a> {
    pub fn new(arena: &'a mut Arena, spec: PopulationSpec) -> Result<Self> {
        let forms = enumerate(arena, &spec.enumeration)?;
        let mut roots = forms.clone();
        roots.extend_from_slice(&spec.inject);
        let pop = Population::new(arena, &roots)?;

        let mut injected = Vec::new();
        for &g in &spec.inject {
            let i = pop.index_of(g).expect("root in population");
            if !injected.contains(&i) {
                injected.push(i);
            }
        }
        let inj: FxHashSet<usize> = injected.iter().copied().collect();
        let mut rest: Vec<usize> = forms
            .iter()
            .map(|&g| pop.index_of(g).expect("root in population"))
            .filter(|i| !inj.contains(i))
            .collect();
        rest.sort_unstable();
        rest.dedup();

        let members = rest.len() + injected.len();
        let exhaustive = members <= spec.exhaustive_pairs_up_to;
        let m = if exhaustive && pop.len() <= 2 * spec.exhaustive_pairs_up_to {
            pop.len()
        } else {
            pop.prefix_below_rank(pop.max_rank().min(spec.enumeration.max_birthday))
        };
        let table = PairTable::build(&pop, m);
        Ok(Verifier {
            arena,
            spec,
            pop,
            table,
            injected,
            rest,
            exhaustive,
            distinguisher_pool: None,
        })
    }

    pub fn population(&self) -> &Population {
        &self.pop
    }

    /// Quantified forms: injected first, then enumerated in population order.
    pub fn members(&self) -> Vec<FormId> {
        self.injected
            .iter()
            .chain(&self.rest)
            .map(|&i| self.pop.form(i))
            .collect()
    }

    pub fn summary(&self) -> PopulationSummary {
        let m = self.table.prefix();
        let pair_scope = if self.exhaustive {
            "all ordered pairs".to_string()
        } else {
            let rank = if m == 0 { 0 } else { self.pop.rank(m - 1) };
            let injected = if self.injected.is_empty() { "" } else { ", all pairs involving an injected form," };
            format!(
                "all ordered pairs with a summand of rank <= {rank}{injected} and {} seeded samples (seed {}) \
                 of the remaining pairs",
                self.spec.sampled_pairs, self.spec.seed
            )
        };
        PopulationSummary {
            enumeration: self.spec.enumeration.clone(),
            injected: self.spec.inject.iter().map(|&g| self.arena.print(g)).collect(),
            size: self.injected.len() + self.rest.len(),
            closure_size: self.pop.len(),
            max_rank: self.pop.max_rank(),
            pair_scope,
        }
    }

    pub fn run_all(&mut self) -> Result<Vec<SuiteReport>> {
        Suite::ALL.into_iter().map(|s| self.run(s)).collect()
    }

    pub fn run(&mut self, suite: Suite) -> Result<SuiteReport> {
        let n = suite.clauses().len();
        let cap = self.spec.failure_cap;
        let mut t: Tally<usize> = Tally::new(n, cap);
        if suite.has_form_checks() {
            t.merge(self.form_tally(suite));
        }
        if suite.has_pair_checks() {
            t.merge(self.pair_tally(suite));
        }
        let mut witnesses = Vec::new();
        for f in std::mem::take(&mut t.failures) {
            witnesses.push(self.confirm(suite, f)?);
        }
        match suite {
            Suite::Invertibility => self.invertibility(&mut t, &mut witnesses)?,
            Suite::BLemmas => self.integer_invertibility(&mut t, &mut witnesses)?,
            _ => {}
        }
        witnesses.truncate(cap);
        let clauses: Vec<ClauseReport> = suite
            .clauses()
            .iter()
            .zip(&t.counts)
            .map(|(c, &(fired, failed))| ClauseReport {
                id: c.id.to_string(),
                statement: c.statement.to_string(),
                fired,
                failed,
            })
            .collect();
        let failures_total = clauses.iter().map(|c| c.failed).sum();
        Ok(SuiteReport {
            suite,
            population: self.summary(),
            instances_checked: t.instances,
            clauses,
            failures_total,
            failures: witnesses,
            passed: failures_total == 0,
        })
    }

    fn ordered_members(&self) -> Vec<usize> {
        self.injected.iter().chain(&self.rest).copied().collect()
    }

    fn oracle(&self) -> TableOracle<'_> {
        TableOracle {
            pop: &self.pop,
            table: &self.table,
            scratch: Default::default(),
        }
    }

    fn form_tally(&self, suite: Suite) -> Tally<usize> {
        let n = suite.clauses().len();
        let cap = self.spec.failure_cap;
        let members = self.ordered_members();
        let parts: Vec<Tally<usize>> = members
            .par_chunks(ROW_CHUNK)
            .map(|chunk| {
                let mut o = self.oracle();
                let mut t = Tally::new(n, cap);
                for &g in chunk {
                    check_form(suite, &mut o, g, &mut t);
                }
                t
            })
            .collect();
        let mut total = Tally::new(n, cap);
        for p in parts {
            total.merge(p);
        }
        total
    }

    fn pair_tally(&self, suite: Suite) -> Tally<usize> {
        let n = suite.clauses().len();
        let cap = self.spec.failure_cap;
        let mut total = Tally::new(n, cap);
        let mut o = self.oracle();
        for &a in &self.injected {
            for &b in &self.injected {
                check_pair(suite, &mut o, a, b, &mut total);
            }
        }
        for &a in &self.injected {
            for &b in &self.rest {
                check_pair(suite, &mut o, a, b, &mut total);
                check_pair(suite, &mut o, b, a, &mut total);
            }
            o.scratch.clear();
        }

        let m = self.table.prefix();
        let small: Vec<usize> = self.rest.iter().copied().filter(|&i| i < m).collect();
        let parts: Vec<Tally<usize>> = self
            .rest
            .par_chunks(ROW_CHUNK)
            .map(|chunk| {
                let mut o = self.oracle();
                let mut t = Tally::new(n, cap);
                for &g in chunk {
                    let partners = if self.exhaustive || g < m { &self.rest } else { &small };
                    for &h in partners {
                        check_pair(suite, &mut o, g, h, &mut t);
                    }
                    o.scratch.clear();
                }
                t
            })
            .collect();
        for p in parts {
            total.merge(p);
        }

        if !self.exhaustive {
            let big: Vec<usize> = self.rest.iter().copied().filter(|&i| i >= m).collect();
            if !big.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed);
                for s in 0..self.spec.sampled_pairs {
                    let g = big[rng.random_range(0..big.len())];
                    let h = big[rng.random_range(0..big.len())];
                    check_pair(suite, &mut o, g, h, &mut total);
                    if s % 1024 == 1023 {
                        o.scratch.clear();
                    }
                }
            }
        }
        total
    }

    /// Re-runs the failing check on a fresh arena built from printed forms.
    fn confirm(&self, suite: Suite, f: RawFailure<usize>) -> Result<Witness> {
        let printed: Vec<String> = f.forms.iter().map(|&i| self.arena.print(self.pop.form(i))).collect();
        let mut fresh = Arena::with_integer_limit(self.arena.integer_limit());
        let ids = printed.iter().map(|s| fresh.parse(s)).collect::<Result<Vec<_>>>()?;
        let mut t: Tally<FormId> = Tally::new(suite.clauses().len(), 0);
        let mut o = ArenaOracle { arena: &mut fresh };
        match ids.as_slice() {
            [g] => check_form(suite, &mut o, *g, &mut t),
            [g, h] => check_pair(suite, &mut o, *g, *h, &mut t),
            _ => {}
        }
        Ok(Witness {
            clause: suite.clauses()[f.clause].id.to_string(),
            forms: printed,
            offset: f.offset,
            expected: f.expected,
            observed: f.observed,
            confirmed: t.counts[f.clause].1 > 0,
            distinguisher: None,
        })
    }

    /// Integers `0, 1, -1, ..., 4, -4`, then every blocking form of
    /// birthday at most 2 and width at most 2.
    fn pool(&mut self) -> Result<Vec<FormId>> {
        if let Some(p) = &self.distinguisher_pool {
            return Ok(p.clone());
        }
        let mut pool = vec![self.arena.zero()];
        for k in 1..=4 {
            pool.push(self.arena.integer(k)?);
            pool.push(self.arena.integer(-k)?);
        }
        let spec = EnumSpec::new(2, 2).with_filter(Filter::Universe(UniverseTag::B));
        for g in enumerate(self.arena, &spec)? {
            if !pool.contains(&g) {
                pool.push(g);
            }
        }
        self.distinguisher_pool = Some(pool.clone());
        Ok(pool)
    }

    /// First `x` in the pool with `o(s + x) != o(x)`.
    fn distinguish_from_zero(&mut self, s: FormId, pool: &[FormId]) -> Option<DistinguisherReport> {
        pool.iter().find_map(|&x| {
            let sx = self.arena.sum(s, x);
            let (o_gx, o_hx) = (self.arena.outcome(sx), self.arena.outcome(x));
            (o_gx != o_hx).then(|| DistinguisherReport {
                x: self.arena.print(x),
                o_gx,
                o_hx,
            })
        })
    }

    fn invertibility(&mut self, t: &mut Tally<usize>, witnesses: &mut Vec<Witness>) -> Result<()> {
        let cap = self.spec.failure_cap;
        let pool = self.pool()?;
        let zero = self.arena.zero();
        let mark = self.arena.checkpoint();
        for (step, i) in self.ordered_members().into_iter().enumerate() {
            let g = self.pop.form(i);
            t.instances += 1;
            let gbar = self.arena.conjugate(g);
            let s = self.arena.sum(g, gbar);
            t.fire(0);
            if !self.arena.left_b_strong(s)? {
                t.count_failure(0);
                if witnesses.len() < cap {
                    let printed = self.arena.print(g);
                    let mut fresh = Arena::with_integer_limit(self.arena.integer_limit());
                    let h = fresh.parse(&printed)?;
                    let hbar = fresh.conjugate(h);
                    let sh = fresh.sum(h, hbar);
                    witnesses.push(Witness {
                        clause: Suite::Invertibility.clauses()[0].id.to_string(),
                        forms: vec![printed],
                        offset: None,
                        expected: "G+~G Left B-strong".into(),
                        observed: "not Left B-strong".into(),
                        confirmed: !fresh.left_b_strong(sh)?,
                        distinguisher: None,
                    });
                }
            }
            t.fire(1);
            if !self.arena.equiv_b(s, zero)? {
                t.count_failure(1);
                if witnesses.len() < cap {
                    let d = self.distinguish_from_zero(s, &pool);
                    witnesses.push(Witness {
                        clause: Suite::Invertibility.clauses()[1].id.to_string(),
                        forms: vec![self.arena.print(g)],
                        offset: None,
                        expected: "G+~G equivalent to 0".into(),
                        observed: "not equivalent".into(),
                        confirmed: d.is_some(),
                        distinguisher: d,
                    });
                }
            }
            if step % 4096 == 4095 {
                self.arena.rollback(mark);
            }
        }
        self.arena.rollback(mark);
        Ok(())
    }

    fn integer_invertibility(&mut self, t: &mut Tally<usize>, witnesses: &mut Vec<Witness>) -> Result<()> {
        let clause = Suite::BLemmas.clause_index("integers_invertible").expect("clause exists");
        let pool = self.pool()?;
        for n in 1..=4 {
            t.instances += 1;
            t.fire(clause);
            let g = self.arena.integer(n)?;
            if !self.arena.invertible_b(g)? {
                t.count_failure(clause);
                let gbar = self.arena.conjugate(g);
                let s = self.arena.sum(g, gbar);
                let d = self.distinguish_from_zero(s, &pool);
                witnesses.push(Witness {
                    clause: "integers_invertible".into(),
                    forms: vec![self.arena.print(g)],
                    offset: None,
                    expected: "n + -n equivalent to 0".into(),
                    observed: "not equivalent".into(),
                    confirmed: d.is_some(),
                    distinguisher: d,
                });
            }
        }
        Ok(())
    }
}
