use std::hash::{Hash, Hasher};

use hashbrown::HashTable;
use rustc_hash::{FxHashMap, FxHashSet, FxHasher};
use smallvec::SmallVec;

use super::{Facts, Form, FormId};
use crate::error::{Error, Result};

pub const DEFAULT_INTEGER_LIMIT: i64 = 64;

const NO_CONJUGATE: u32 = u32::MAX;

pub(crate) type Opts = SmallVec<[FormId; 8]>;

#[derive(Clone, Copy)]
struct Node {
    start: u32,
    n_left: u32,
    n_right: u32,
}

/// A rollback point returned by [`Arena::checkpoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    forms: u32,
    options: u32,
}

/// Hash-consing store for forms, with eager per-node facts and memo tables
/// for conjugates, sums and comparisons.
#[derive(Clone)]
pub struct Arena {
    nodes: Vec<Node>,
    options: Vec<FormId>,
    hashes: Vec<u64>,
    facts: Vec<Facts>,
    ranks: Vec<u16>,
    table: HashTable<FormId>,
    conjugates: Vec<u32>,
    sums: FxHashMap<(FormId, FormId), FormId>,
    pub(crate) geq_memo: FxHashMap<(FormId, FormId), bool>,
    integer_limit: i64,
}

impl Default for Arena {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for Arena {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Arena").field("forms", &self.nodes.len()).finish()
    }
}

fn content_hash(left: &[FormId], right: &[FormId], lt: bool, rt: bool) -> u64 {
    let mut h = FxHasher::default();
    left.len().hash(&mut h);
    for id in left.iter().chain(right) {
        h.write_u32(id.0);
    }
    h.write_u8(u8::from(lt) | (u8::from(rt) << 1));
    h.finish()
}

impl Arena {
    pub fn new() -> Self {
        Self::with_integer_limit(DEFAULT_INTEGER_LIMIT)
    }

    pub fn with_integer_limit(integer_limit: i64) -> Self {
        let mut arena = Arena {
            nodes: Vec::new(),
            options: Vec::new(),
            hashes: Vec::new(),
            facts: Vec::new(),
            ranks: Vec::new(),
            table: HashTable::new(),
            conjugates: Vec::new(),
            sums: FxHashMap::default(),
            geq_memo: FxHashMap::default(),
            integer_limit,
        };
        let zero = arena.intern(&[], &[], false, false);
        debug_assert_eq!(zero, FormId::ZERO);
        arena
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, g: FormId) -> bool {
        g.index() < self.nodes.len()
    }

    pub fn integer_limit(&self) -> i64 {
        self.integer_limit
    }

    pub(crate) fn check(&self, g: FormId) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::UnknownForm(g))
        }
    }

    pub fn form(&self, g: FormId) -> Form<'_> {
        let facts = self.facts[g.index()];
        Form {
            left: self.left(g),
            right: self.right(g),
            left_tombstone: facts.left_tombstone(),
            right_tombstone: facts.right_tombstone(),
        }
    }

    pub fn left(&self, g: FormId) -> &[FormId] {
        let n = self.nodes[g.index()];
        let s = n.start as usize;
        &self.options[s..s + n.n_left as usize]
    }

    pub fn right(&self, g: FormId) -> &[FormId] {
        let n = self.nodes[g.index()];
        let s = (n.start + n.n_left) as usize;
        &self.options[s..s + n.n_right as usize]
    }

    pub fn facts(&self, g: FormId) -> Facts {
        self.facts[g.index()]
    }

    pub fn rank(&self, g: FormId) -> u32 {
        u32::from(self.ranks[g.index()])
    }

    pub fn is_left_end_like(&self, g: FormId) -> bool {
        self.facts(g).is_left_end_like()
    }

    pub fn is_right_end_like(&self, g: FormId) -> bool {
        self.facts(g).is_right_end_like()
    }

    /// Interns `{left | right}`. Option lists may be unsorted and contain
    /// duplicates.
    pub fn make(&mut self, left: &[FormId], right: &[FormId], lt: bool, rt: bool) -> Result<FormId> {
        for &id in left.iter().chain(right) {
            self.check(id)?;
        }
        let mut l: Opts = left.iter().copied().collect();
        let mut r: Opts = right.iter().copied().collect();
        l.sort_unstable();
        l.dedup();
        r.sort_unstable();
        r.dedup();
        Ok(self.intern(&l, &r, lt, rt))
    }

    /// Facts and rank the node `{left | right}` would have, without interning
    /// it. Options must be valid ids.
    pub fn peek(&self, left: &[FormId], right: &[FormId], lt: bool, rt: bool) -> (Facts, u32) {
        let lf: SmallVec<[Facts; 8]> = left.iter().map(|&id| self.facts(id)).collect();
        let rf: SmallVec<[Facts; 8]> = right.iter().map(|&id| self.facts(id)).collect();
        let rank = left
            .iter()
            .chain(right)
            .map(|&id| self.rank(id) + 1)
            .max()
            .unwrap_or(0);
        (Facts::derive(&lf, &rf, lt, rt), rank)
    }

    /// Interns options that are already sorted, deduplicated and valid.
    pub(crate) fn intern(&mut self, left: &[FormId], right: &[FormId], lt: bool, rt: bool) -> FormId {
        debug_assert!(left.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(right.windows(2).all(|w| w[0] < w[1]));
        let hash = content_hash(left, right, lt, rt);
        let found = {
            let nodes = &self.nodes;
            let options = &self.options;
            let facts = &self.facts;
            self.table.find(hash, |&id| {
                let n = nodes[id.index()];
                let s = n.start as usize;
                let f = facts[id.index()];
                n.n_left as usize == left.len()
                    && n.n_right as usize == right.len()
                    && f.left_tombstone() == lt
                    && f.right_tombstone() == rt
                    && &options[s..s + left.len()] == left
                    && &options[s + left.len()..s + left.len() + right.len()] == right
            })
        };
        if let Some(&id) = found {
            return id;
        }

        let (facts, rank) = self.peek(left, right, lt, rt);
        let id = FormId::from_index(self.nodes.len());
        let start = u32::try_from(self.options.len()).expect("option storage overflows u32");
        self.options.extend_from_slice(left);
        self.options.extend_from_slice(right);
        self.nodes.push(Node {
            start,
            n_left: left.len() as u32,
            n_right: right.len() as u32,
        });
        self.hashes.push(hash);
        self.facts.push(facts);
        self.ranks.push(u16::try_from(rank).expect("rank overflows u16"));
        self.conjugates.push(NO_CONJUGATE);
        let hashes = &self.hashes;
        self.table.insert_unique(hash, id, |&k| hashes[k.index()]);
        id
    }

    pub fn zero(&self) -> FormId {
        FormId::ZERO
    }

    /// `{0|0}`.
    pub fn star(&mut self) -> FormId {
        self.intern(&[FormId::ZERO], &[FormId::ZERO], false, false)
    }

    /// The integer form `n`; negative values are conjugates of positive ones.
    pub fn integer(&mut self, n: i64) -> Result<FormId> {
        if n.unsigned_abs() > self.integer_limit.unsigned_abs() {
            return Err(Error::IntegerLimit {
                value: n,
                limit: self.integer_limit,
            });
        }
        let mut g = FormId::ZERO;
        for _ in 0..n.unsigned_abs() {
            g = if n > 0 {
                self.intern(&[g], &[], false, false)
            } else {
                self.intern(&[], &[g], false, false)
            };
        }
        Ok(g)
    }

    /// Swaps the roles of Left and Right throughout.
    pub fn conjugate(&mut self, g: FormId) -> FormId {
        let cached = self.conjugates[g.index()];
        if cached != NO_CONJUGATE {
            return FormId(cached);
        }
        let left: Opts = self.left(g).iter().copied().collect();
        let right: Opts = self.right(g).iter().copied().collect();
        let facts = self.facts(g);
        let mut new_left: Opts = right.iter().map(|&r| self.conjugate(r)).collect();
        let mut new_right: Opts = left.iter().map(|&l| self.conjugate(l)).collect();
        new_left.sort_unstable();
        new_right.sort_unstable();
        let c = self.intern(&new_left, &new_right, facts.right_tombstone(), facts.left_tombstone());
        self.conjugates[g.index()] = c.0;
        self.conjugates[c.index()] = g.0;
        c
    }

    /// Disjunctive sum. The sum carries a tombstone on a side exactly when
    /// both summands are end-like on that side and at least one carries a
    /// tombstone there.
    pub fn sum(&mut self, g: FormId, h: FormId) -> FormId {
        if g == FormId::ZERO {
            return h;
        }
        if h == FormId::ZERO {
            return g;
        }
        let key = if g <= h { (g, h) } else { (h, g) };
        if let Some(&s) = self.sums.get(&key) {
            return s;
        }
        let (gl, gr): (Opts, Opts) = (self.left(g).into(), self.right(g).into());
        let (hl, hr): (Opts, Opts) = (self.left(h).into(), self.right(h).into());
        let mut left = Opts::new();
        for &x in &gl {
            left.push(self.sum(x, h));
        }
        for &y in &hl {
            left.push(self.sum(g, y));
        }
        let mut right = Opts::new();
        for &x in &gr {
            right.push(self.sum(x, h));
        }
        for &y in &hr {
            right.push(self.sum(g, y));
        }
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let (fg, fh) = (self.facts(g), self.facts(h));
        let lt = fg.is_left_end_like()
            && fh.is_left_end_like()
            && (fg.left_tombstone() || fh.left_tombstone());
        let rt = fg.is_right_end_like()
            && fh.is_right_end_like()
            && (fg.right_tombstone() || fh.right_tombstone());
        let s = self.intern(&left, &right, lt, rt);
        self.sums.insert(key, s);
        s
    }

    pub fn sum_all(&mut self, terms: &[FormId]) -> FormId {
        terms.iter().fold(FormId::ZERO, |acc, &t| self.sum(acc, t))
    }

    /// `g + n` for an integer `n`.
    pub fn add_integer(&mut self, g: FormId, n: i64) -> Result<FormId> {
        let k = self.integer(n)?;
        Ok(self.sum(g, k))
    }

    /// All forms reachable from `g` by any sequence of moves, including `g`,
    /// in ascending id order.
    pub fn subpositions(&self, g: FormId) -> Vec<FormId> {
        let mut seen = FxHashSet::default();
        let mut stack = vec![g];
        seen.insert(g);
        while let Some(x) = stack.pop() {
            for &y in self.left(x).iter().chain(self.right(x)) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<FormId> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn proper_subpositions(&self, g: FormId) -> Vec<FormId> {
        let mut out = self.subpositions(g);
        out.retain(|&x| x != g);
        out
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            forms: self.nodes.len() as u32,
            options: self.options.len() as u32,
        }
    }

    /// Forgets every form interned after `mark`, along with memo entries that
    /// mention them. Ids handed out before `mark` stay valid.
    pub fn rollback(&mut self, mark: Checkpoint) {
        let m = mark.forms;
        if self.nodes.len() as u32 <= m {
            return;
        }
        self.nodes.truncate(m as usize);
        self.options.truncate(mark.options as usize);
        self.hashes.truncate(m as usize);
        self.facts.truncate(m as usize);
        self.ranks.truncate(m as usize);
        self.conjugates.truncate(m as usize);
        for c in &mut self.conjugates {
            if *c != NO_CONJUGATE && *c >= m {
                *c = NO_CONJUGATE;
            }
        }
        self.table.retain(|id| id.0 < m);
        self.sums.retain(|&(a, b), s| a.0 < m && b.0 < m && s.0 < m);
        self.geq_memo.retain(|&(a, b), _| a.0 < m && b.0 < m);
    }

    /// Drops memoized sums and comparisons without touching interned forms.
    pub fn clear_memos(&mut self) {
        self.sums.clear();
        self.geq_memo.clear();
    }
}
