//! Tipping points and integer-offset outcome sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Arena, FormId};
use crate::outcomes::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TippingPoints {
    pub ltp: u32,
    pub ntp: u32,
    pub rtp: u32,
}

impl TippingPoints {
    /// Tipping points of the conjugate.
    pub fn conjugate(self) -> TippingPoints {
        TippingPoints {
            ltp: self.rtp,
            ntp: self.ntp,
            rtp: self.ltp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeSequence {
    pub lo: i64,
    pub hi: i64,
    pub outcomes: Vec<Outcome>,
}

impl OutcomeSequence {
    pub fn at(&self, k: i64) -> Option<Outcome> {
        if k < self.lo || k > self.hi {
            return None;
        }
        self.outcomes.get((k - self.lo) as usize).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Contiguity {
    ThreeComponents,
    Violation {
        k: i64,
        expected: Option<Outcome>,
        observed: Outcome,
    },
}

/// Scans `k = 0..=bound` for each defining condition. `outcome_at(k)` must
/// return the outcome of `G + k`.
pub fn tipping_from(bound: u32, mut outcome_at: impl FnMut(i64) -> Outcome) -> std::result::Result<TippingPoints, &'static str> {
    let scan = |pred: &mut dyn FnMut(i64) -> bool| (0..=bound).find(|&k| pred(i64::from(k)));
    let rtp = scan(&mut |k| outcome_at(k) == Outcome::R).ok_or("R")?;
    let ltp = scan(&mut |k| outcome_at(-k) == Outcome::L).ok_or("L")?;
    let ntp = scan(&mut |k| outcome_at(k) == Outcome::N || outcome_at(-k) == Outcome::N).ok_or("N")?;
    Ok(TippingPoints { ltp, ntp, rtp })
}

/// Outcome of `G + k` predicted by the three-component pattern, given the
/// outcome of `G` and its tipping points. `None` when no rule applies or two
/// rules disagree.
pub fn predicted_outcome(o: Outcome, tp: TippingPoints, k: i64) -> Option<Outcome> {
    let (ltp, ntp, rtp) = (i64::from(tp.ltp), i64::from(tp.ntp), i64::from(tp.rtp));
    let rules = [
        (k <= -ltp, Outcome::L),
        (o == Outcome::L && 0 <= k && k < ntp, Outcome::L),
        (o == Outcome::R && -ltp < k && k <= -ntp, Outcome::N),
        (o == Outcome::N && -ltp < k && k < rtp, Outcome::N),
        (o == Outcome::L && ntp <= k && k < rtp, Outcome::N),
        (o == Outcome::R && -ntp < k && k <= 0, Outcome::R),
        (k >= rtp, Outcome::R),
    ];
    let mut matched = rules.iter().filter(|(cond, _)| *cond).map(|&(_, out)| out);
    let first = matched.next()?;
    if matched.all(|x| x == first) {
        Some(first)
    } else {
        None
    }
}

/// Offsets in scan order `0, 1, -1, 2, -2, ...` up to `bound`.
pub fn scan_order(bound: u32) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=i64::from(bound)).flat_map(|k| [k, -k]))
}

/// Checks the window `[-bound, bound]` against [`predicted_outcome`] and
/// reports the first mismatch in [`scan_order`].
pub fn contiguity_from(bound: u32, tp: TippingPoints, mut outcome_at: impl FnMut(i64) -> Outcome) -> Contiguity {
    let o = outcome_at(0);
    for k in scan_order(bound) {
        let observed = outcome_at(k);
        let expected = predicted_outcome(o, tp, k);
        if expected != Some(observed) {
            return Contiguity::Violation { k, expected, observed };
        }
    }
    Contiguity::ThreeComponents
}

impl Arena {
    pub fn tipping_points(&mut self, g: FormId) -> Result<TippingPoints> {
        let bound = self.rank(g) + 1;
        let mut err = None;
        let tp = tipping_from(bound, |k| match self.add_integer(g, k) {
            Ok(s) => self.outcome(s),
            Err(e) => {
                err.get_or_insert(e);
                Outcome::P
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        tp.map_err(|which| Error::TippingNotFound { form: g, which, bound })
    }

    pub fn outcome_sequence(&mut self, g: FormId, lo: i64, hi: i64) -> Result<OutcomeSequence> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty range [{lo}, {hi}]")));
        }
        let mut outcomes = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            let s = self.add_integer(g, k)?;
            outcomes.push(self.outcome(s));
        }
        Ok(OutcomeSequence { lo, hi, outcomes })
    }

    pub fn contiguity_check(&mut self, g: FormId) -> Result<Contiguity> {
        let tp = self.tipping_points(g)?;
        let bound = self.rank(g) + 1;
        let seq = self.outcome_sequence(g, -i64::from(bound), i64::from(bound))?;
        Ok(contiguity_from(bound, tp, |k| seq.at(k).expect("offset inside window")))
    }
}
