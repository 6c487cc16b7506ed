//! Reference evaluator over explicit game trees. Shares nothing with the
//! arena beyond reading its option lists: no interning, no memoization, no
//! precomputed facts.

#![allow(dead_code)]

use misere_core::{Arena, FormId, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tree {
    pub left: Vec<Tree>,
    pub right: Vec<Tree>,
    pub lt: bool,
    pub rt: bool,
}

impl Tree {
    pub fn zero() -> Tree {
        Tree::new(vec![], vec![], false, false)
    }

    pub fn new(left: Vec<Tree>, right: Vec<Tree>, lt: bool, rt: bool) -> Tree {
        Tree { left, right, lt, rt }
    }

    pub fn integer(n: i64) -> Tree {
        let mut t = Tree::zero();
        for _ in 0..n.unsigned_abs() {
            t = if n > 0 {
                Tree::new(vec![t], vec![], false, false)
            } else {
                Tree::new(vec![], vec![t], false, false)
            };
        }
        t
    }

    pub fn from_arena(a: &Arena, g: FormId) -> Tree {
        let f = a.form(g);
        Tree {
            left: f.left.iter().map(|&x| Tree::from_arena(a, x)).collect(),
            right: f.right.iter().map(|&x| Tree::from_arena(a, x)).collect(),
            lt: f.left_tombstone,
            rt: f.right_tombstone,
        }
    }

    /// Option sets sorted and deduplicated at every level.
    pub fn canonical(&self) -> Tree {
        let side = |v: &[Tree]| {
            let mut out: Vec<Tree> = v.iter().map(Tree::canonical).collect();
            out.sort();
            out.dedup();
            out
        };
        Tree::new(side(&self.left), side(&self.right), self.lt, self.rt)
    }

    pub fn birthday(&self) -> u32 {
        self.left.iter().chain(&self.right).map(|x| x.birthday() + 1).max().unwrap_or(0)
    }

    /// Subpositions, including `self`, as canonical trees.
    pub fn subpositions(&self) -> Vec<Tree> {
        let mut out = vec![self.canonical()];
        for x in self.left.iter().chain(&self.right) {
            out.extend(x.subpositions());
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn build(&self, a: &mut Arena) -> FormId {
        let l: Vec<FormId> = self.left.iter().map(|x| x.build(a)).collect();
        let r: Vec<FormId> = self.right.iter().map(|x| x.build(a)).collect();
        a.make(&l, &r, self.lt, self.rt).unwrap()
    }

    pub fn left_end_like(&self) -> bool {
        self.left.is_empty() || self.lt
    }

    pub fn right_end_like(&self) -> bool {
        self.right.is_empty() || self.rt
    }

    /// Left wins moving first.
    pub fn left_first(&self) -> bool {
        self.left_end_like() || self.left.iter().any(|x| x.left_second())
    }

    /// Left wins when Right moves first.
    pub fn left_second(&self) -> bool {
        !(self.right_end_like() || self.right.iter().any(|x| !x.left_first()))
    }

    pub fn outcome(&self) -> Outcome {
        outcome_of(self.left_first(), self.left_second())
    }

    pub fn p_free(&self) -> bool {
        self.outcome() != Outcome::P && self.left.iter().chain(&self.right).all(Tree::p_free)
    }

    pub fn conjugate(&self) -> Tree {
        Tree {
            left: self.right.iter().map(Tree::conjugate).collect(),
            right: self.left.iter().map(Tree::conjugate).collect(),
            lt: self.rt,
            rt: self.lt,
        }
    }

    pub fn sum(&self, other: &Tree) -> Tree {
        let left = self
            .left
            .iter()
            .map(|x| x.sum(other))
            .chain(other.left.iter().map(|y| self.sum(y)))
            .collect();
        let right = self
            .right
            .iter()
            .map(|x| x.sum(other))
            .chain(other.right.iter().map(|y| self.sum(y)))
            .collect();
        Tree {
            left,
            right,
            lt: self.left_end_like() && other.left_end_like() && (self.lt || other.lt),
            rt: self.right_end_like() && other.right_end_like() && (self.rt || other.rt),
        }
    }
}

pub fn outcome_of(left_first: bool, left_second: bool) -> Outcome {
    match (left_first, left_second) {
        (true, true) => Outcome::L,
        (true, false) => Outcome::N,
        (false, true) => Outcome::P,
        (false, false) => Outcome::R,
    }
}

pub mod strategy {
    use super::Tree;
    use proptest::prelude::*;

    /// Ordinary trees with the given depth and width bounds.
    pub fn ordinary(depth: u32, width: usize) -> BoxedStrategy<Tree> {
        trees(depth, width, false)
    }

    /// Trees that may carry tombstones at any node.
    pub fn augmented(depth: u32, width: usize) -> BoxedStrategy<Tree> {
        trees(depth, width, true)
    }

    fn trees(depth: u32, width: usize, tombs: bool) -> BoxedStrategy<Tree> {
        let flag = move || if tombs { prop::bool::weighted(0.15).boxed() } else { Just(false).boxed() };
        let leaf = (flag(), flag()).prop_map(|(lt, rt)| Tree::new(vec![], vec![], lt, rt));
        leaf.prop_recursive(depth, 64, width as u32, move |inner| {
            (
                prop::collection::vec(inner.clone(), 0..=width),
                prop::collection::vec(inner, 0..=width),
                flag(),
                flag(),
            )
                .prop_map(|(l, r, lt, rt)| Tree::new(l, r, lt, rt))
        })
        .boxed()
    }
}
