//! Clause definitions and per-instance checks.

use std::fmt::Display;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::oracle::Oracle;
use crate::outcomes::{outcome_geq, Outcome, Winner};
use crate::tipping::{Contiguity, TippingPoints};

use Outcome::{L, N, P, R};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    OutcomeStable,
    PfreePlusInteger,
    TippingContiguity,
    TableTechs,
    Table11_14,
    PropertyX,
    FinalPiece,
    PfreeClosure,
    Invertibility,
    BLemmas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub id: &'static str,
    pub statement: &'static str,
}

const fn c(id: &'static str, statement: &'static str) -> Clause {
    Clause { id, statement }
}

const OUTCOME_STABLE: &[Clause] = &[
    c("ll_gives_l", "o(G)=o(H)=L => o(G+H)=L"),
    c("rr_gives_r", "o(G)=o(H)=R => o(G+H)=R"),
    c("ln_left_first_wins", "o(G)=L, o(H)=N => Left wins G+H moving first"),
    c("rn_right_first_wins", "o(G)=R, o(H)=N => Right wins G+H moving first"),
];

const PFREE_PLUS_INTEGER: &[Clause] = &[c("plus_integer_p_free", "G+n strictly P-free for n in [-4, 4]")];

const TIPPING_CONTIGUITY: &[Clause] = &[c(
    "three_components",
    "o(G+k) over [-rank-1, rank+1] follows the L/N/R pattern fixed by o(G) and (ltp, ntp, rtp)",
)];

const TABLE_TECHS: &[Clause] = &[
    c("option_ntp_below_rtp", "every G^L with o(G^L)!=R has ntp(G^L) <= rtp(G)"),
    c("option_ntp_below_ltp", "every G^R with o(G^R)!=L has ntp(G^R) <= ltp(G)"),
    c("left_end_n_has_rtp_one", "G a Left end, o(G)=N => rtp(G)=1"),
    c("right_end_n_has_ltp_one", "G a Right end, o(G)=N => ltp(G)=1"),
    c(
        "n_left_witness",
        "o(G)=N => G Left end-like with rtp(G)=1, or some G^L in L has ntp(G^L)=rtp(G)",
    ),
    c(
        "n_right_witness",
        "o(G)=N => G Right end-like with ltp(G)=1, or some G^R in R has ntp(G^R)=ltp(G)",
    ),
    c("left_end_rtp_is_ntp_plus_one", "G a Left end => rtp(G)=ntp(G)+1"),
    c("right_end_ltp_is_ntp_plus_one", "G a Right end => ltp(G)=ntp(G)+1"),
    c(
        "l_left_witness",
        "o(G)=L, ntp(G)!=rtp(G)-1 => some G^L in L has ntp(G^L)=rtp(G)",
    ),
    c(
        "r_right_witness",
        "o(G)=R, ntp(G)!=ltp(G)-1 => some G^R in R has ntp(G^R)=ltp(G)",
    ),
    c("l_right_options_rtp_bound", "o(G)=L => every G^R has rtp(G^R) >= ntp(G)"),
    c("r_left_options_ltp_bound", "o(G)=R => every G^L has ltp(G^L) >= ntp(G)"),
    c("l_right_option_rtp_equals_ntp", "o(G)=L => some G^R has rtp(G^R)=ntp(G)"),
    c("r_left_option_ltp_equals_ntp", "o(G)=R => some G^L has ltp(G^L)=ntp(G)"),
];

const TABLE_11_14: &[Clause] = &[
    c("ln_ntp_gt_ltp_gives_l", "o(G)=L, o(H)=N, ntp(G)>ltp(H) => o(G+H)=L"),
    c("ln_rtp_lt_ltp_gives_n", "o(G)=L, o(H)=N, rtp(G)<ltp(H) => o(G+H)=N"),
    c("rn_ntp_gt_rtp_gives_r", "o(G)=R, o(H)=N, ntp(G)>rtp(H) => o(G+H)=R"),
    c("rn_ltp_lt_rtp_gives_n", "o(G)=R, o(H)=N, ltp(G)<rtp(H) => o(G+H)=N"),
    c("nn_at_least_n", "o(G)=o(H)=N, rtp(G)>ltp(H) or ltp(G)<rtp(H) => o(G+H)>=N"),
    c("nn_at_most_n", "o(G)=o(H)=N, rtp(G)<ltp(H) or ltp(G)>rtp(H) => o(G+H)<=N"),
    c("lr_ntp_gt_ltp_gives_l", "o(G)=L, o(H)=R, ntp(G)>ltp(H) => o(G+H)=L"),
    c("lr_at_least_n", "o(G)=L, o(H)=R, ntp(G)>ntp(H) or rtp(G)>ltp(H) => o(G+H)>=N"),
    c("lr_gives_n_first", "o(G)=L, o(H)=R, ntp(G)>ntp(H) and rtp(G)<ltp(H) => o(G+H)=N"),
    c("lr_gives_n_second", "o(G)=L, o(H)=R, ntp(G)<ntp(H) and rtp(G)>ltp(H) => o(G+H)=N"),
    c("lr_at_most_n", "o(G)=L, o(H)=R, ntp(G)<ntp(H) or rtp(G)<ltp(H) => o(G+H)<=N"),
    c("lr_rtp_lt_ntp_gives_r", "o(G)=L, o(H)=R, rtp(G)<ntp(H) => o(G+H)=R"),
];

const PROPERTY_X: &[Clause] = &[
    c(
        "left_end_like_pair_gives_n",
        "o(G)=o(H)=N, rtp(G)=ltp(H)=1, G Left end-like, H not => o(G+H)=N",
    ),
    c(
        "right_end_like_pair_gives_n",
        "o(G)=o(H)=N, ltp(G)=rtp(H)=1, H Right end-like, G not => o(G+H)=N",
    ),
];

const FINAL_PIECE: &[Clause] = &[
    c("ln_ntp_eq_ltp_gives_l", "o(G)=L, o(H)=N, ntp(G)=ltp(H) => o(G+H)=L"),
    c("ln_rtp_eq_ltp_gives_n", "o(G)=L, o(H)=N, rtp(G)=ltp(H) => o(G+H)=N"),
    c("rn_ntp_eq_rtp_gives_r", "o(G)=R, o(H)=N, ntp(G)=rtp(H) => o(G+H)=R"),
    c("rn_ltp_eq_rtp_gives_n", "o(G)=R, o(H)=N, ltp(G)=rtp(H) => o(G+H)=N"),
    c("nn_equal_tp_gives_n", "o(G)=o(H)=N, rtp(G)=ltp(H) or ltp(G)=rtp(H) => o(G+H)=N"),
    c("lr_ntp_eq_ltp_gives_l", "o(G)=L, o(H)=R, ntp(G)=ltp(H) => o(G+H)=L"),
    c("lr_equal_gives_n", "o(G)=L, o(H)=R, ntp(G)=ntp(H) or rtp(G)=ltp(H) => o(G+H)=N"),
    c("lr_rtp_eq_ntp_gives_r", "o(G)=L, o(H)=R, rtp(G)=ntp(H) => o(G+H)=R"),
];

const PFREE_CLOSURE: &[Clause] = &[
    c("sum_not_p", "o(G+H) != P"),
    c("sum_p_free", "G+H strictly P-free"),
];

const INVERTIBILITY: &[Clause] = &[
    c("sum_with_conjugate_left_strong", "G+~G is Left B-strong"),
    c("sum_with_conjugate_equiv_zero", "G+~G is equivalent to 0 modulo B"),
];

const B_LEMMAS: &[Clause] = &[
    c("l_plus_left_end_gives_l", "o(G)=L, H a Left end => o(G+H)=L"),
    c("r_plus_right_end_gives_r", "o(G)=R, H a Right end => o(G+H)=R"),
    c("not_r_is_left_strong", "o(G)!=R => G Left B-strong"),
    c("not_l_is_right_strong", "o(G)!=L => G Right B-strong"),
    c("left_end_n_has_ltp_one", "G a Left end, o(G)=N => ltp(G)=1"),
    c("right_end_n_has_rtp_one", "G a Right end, o(G)=N => rtp(G)=1"),
    c(
        "left_end_plus_n_right_first_wins",
        "G a Left end, o(G)=o(H)=N => Right wins G+H moving first",
    ),
    c(
        "right_end_plus_n_left_first_wins",
        "G a Right end, o(G)=o(H)=N => Left wins G+H moving first",
    ),
    c("integers_invertible", "n + -n is equivalent to 0 modulo B for n = 1..4"),
];

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::OutcomeStable,
        Suite::PfreePlusInteger,
        Suite::TippingContiguity,
        Suite::TableTechs,
        Suite::Table11_14,
        Suite::PropertyX,
        Suite::FinalPiece,
        Suite::PfreeClosure,
        Suite::Invertibility,
        Suite::BLemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OutcomeStable => "outcome_stable",
            Suite::PfreePlusInteger => "pfree_plus_integer",
            Suite::TippingContiguity => "tipping_contiguity",
            Suite::TableTechs => "table_techs",
            Suite::Table11_14 => "table_11_14",
            Suite::PropertyX => "property_x",
            Suite::FinalPiece => "final_piece",
            Suite::PfreeClosure => "pfree_closure",
            Suite::Invertibility => "invertibility",
            Suite::BLemmas => "b_lemmas",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn clauses(self) -> &'static [Clause] {
        match self {
            Suite::OutcomeStable => OUTCOME_STABLE,
            Suite::PfreePlusInteger => PFREE_PLUS_INTEGER,
            Suite::TippingContiguity => TIPPING_CONTIGUITY,
            Suite::TableTechs => TABLE_TECHS,
            Suite::Table11_14 => TABLE_11_14,
            Suite::PropertyX => PROPERTY_X,
            Suite::FinalPiece => FINAL_PIECE,
            Suite::PfreeClosure => PFREE_CLOSURE,
            Suite::Invertibility => INVERTIBILITY,
            Suite::BLemmas => B_LEMMAS,
        }
    }

    pub fn clause_index(self, id: &str) -> Option<usize> {
        self.clauses().iter().position(|c| c.id == id)
    }

    pub(crate) fn has_form_checks(self) -> bool {
        matches!(
            self,
            Suite::PfreePlusInteger | Suite::TippingContiguity | Suite::TableTechs | Suite::BLemmas
        )
    }

    pub(crate) fn has_pair_checks(self) -> bool {
        matches!(
            self,
            Suite::OutcomeStable
                | Suite::Table11_14
                | Suite::PropertyX
                | Suite::FinalPiece
                | Suite::PfreeClosure
                | Suite::BLemmas
        )
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RawFailure<G> {
    pub clause: usize,
    pub forms: SmallVec<[G; 2]>,
    pub offset: Option<i64>,
    pub expected: String,
    pub observed: String,
}

/// Per-clause firing and failure counts plus the first failures seen.
#[derive(Debug, Clone)]
pub(crate) struct Tally<G> {
    pub instances: u64,
    pub counts: Vec<(u64, u64)>,
    pub failures: Vec<RawFailure<G>>,
    cap: usize,
}

impl<G: Copy> Tally<G> {
    pub fn new(clauses: usize, cap: usize) -> Self {
        Tally {
            instances: 0,
            counts: vec![(0, 0); clauses],
            failures: Vec::new(),
            cap,
        }
    }

    pub fn fire(&mut self, clause: usize) {
        self.counts[clause].0 += 1;
    }

    pub fn fail(&mut self, clause: usize, forms: &[G], offset: Option<i64>, expected: impl Display, observed: impl Display) {
        self.counts[clause].1 += 1;
        if self.failures.len() < self.cap {
            self.failures.push(RawFailure {
                clause,
                forms: forms.iter().copied().collect(),
                offset,
                expected: expected.to_string(),
                observed: observed.to_string(),
            });
        }
    }

    /// Counts a failure whose witness is kept elsewhere.
    pub fn count_failure(&mut self, clause: usize) {
        self.counts[clause].1 += 1;
    }

    /// Fires `clause` and records a failure unless `observed == expected`.
    fn expect_outcome(&mut self, clause: usize, forms: &[G], expected: Outcome, observed: Outcome) {
        self.fire(clause);
        if observed != expected {
            self.fail(clause, forms, None, format!("o(G+H) = {expected}"), format!("o(G+H) = {observed}"));
        }
    }

    fn expect_at_least_n(&mut self, clause: usize, forms: &[G], observed: Outcome) {
        self.fire(clause);
        if !outcome_geq(observed, N) {
            self.fail(clause, forms, None, "o(G+H) >= N", format!("o(G+H) = {observed}"));
        }
    }

    fn expect_at_most_n(&mut self, clause: usize, forms: &[G], observed: Outcome) {
        self.fire(clause);
        if !outcome_geq(N, observed) {
            self.fail(clause, forms, None, "o(G+H) <= N", format!("o(G+H) = {observed}"));
        }
    }

    pub fn merge(&mut self, other: Tally<G>) {
        self.instances += other.instances;
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            a.0 += b.0;
            a.1 += b.1;
        }
        for f in other.failures {
            if self.failures.len() >= self.cap {
                break;
            }
            self.failures.push(f);
        }
    }
}

fn tp_text(tp: TippingPoints) -> String {
    format!("(ltp, ntp, rtp) = ({}, {}, {})", tp.ltp, tp.ntp, tp.rtp)
}

/// Records a missing tipping point against the suite's first clause.
fn require_tp<O: Oracle>(o: &mut O, g: O::G, forms: &[O::G], t: &mut Tally<O::G>) -> Option<TippingPoints> {
    let tp = o.tipping(g);
    if tp.is_none() {
        t.fire(0);
        t.fail(0, forms, None, "tipping points within rank + 1", "none found");
    }
    tp
}

pub(crate) fn check_form<O: Oracle>(suite: Suite, o: &mut O, g: O::G, t: &mut Tally<O::G>) {
    match suite {
        Suite::PfreePlusInteger => pfree_plus_integer(o, g, t),
        Suite::TippingContiguity => tipping_contiguity(o, g, t),
        Suite::TableTechs => table_techs(o, g, t),
        Suite::BLemmas => b_lemmas_form(o, g, t),
        _ => return,
    }
    t.instances += 1;
}

pub(crate) fn check_pair<O: Oracle>(suite: Suite, o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    match suite {
        Suite::OutcomeStable => outcome_stable(o, g, h, t),
        Suite::Table11_14 => table_11_14(o, g, h, t),
        Suite::PropertyX => property_x(o, g, h, t),
        Suite::FinalPiece => final_piece(o, g, h, t),
        Suite::PfreeClosure => pfree_closure(o, g, h, t),
        Suite::BLemmas => b_lemmas_pair(o, g, h, t),
        _ => return,
    }
    t.instances += 1;
}

fn outcome_stable<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    let (og, oh) = (o.outcome(g), o.outcome(h));
    let forms = [g, h];
    match (og, oh) {
        (L, L) => {
            let s = o.pair(g, h).outcome();
            t.expect_outcome(0, &forms, L, s);
        }
        (R, R) => {
            let s = o.pair(g, h).outcome();
            t.expect_outcome(1, &forms, R, s);
        }
        (L, N) => {
            t.fire(2);
            let s = o.pair(g, h);
            if s.side.left_first != Winner::Left {
                t.fail(2, &forms, None, "Left wins G+H moving first", format!("o(G+H) = {}", s.outcome()));
            }
        }
        (R, N) => {
            t.fire(3);
            let s = o.pair(g, h);
            if s.side.right_first != Winner::Right {
                t.fail(3, &forms, None, "Right wins G+H moving first", format!("o(G+H) = {}", s.outcome()));
            }
        }
        _ => {}
    }
}

fn pfree_plus_integer<O: Oracle>(o: &mut O, g: O::G, t: &mut Tally<O::G>) {
    for k in -4..=4 {
        t.fire(0);
        let p = o.offset(g, k);
        if !p.p_free {
            t.fail(0, &[g], Some(k), "G+k strictly P-free", format!("not P-free, o(G+k) = {}", p.outcome()));
        }
    }
}

fn tipping_contiguity<O: Oracle>(o: &mut O, g: O::G, t: &mut Tally<O::G>) {
    t.fire(0);
    match o.contiguity(g) {
        Some(Contiguity::ThreeComponents) => {}
        Some(Contiguity::Violation { k, expected, observed }) => {
            let exp = expected.map_or_else(|| "a consistent L/N/R pattern".to_string(), |e| format!("o(G+k) = {e}"));
            t.fail(0, &[g], Some(k), exp, format!("o(G+k) = {observed}"));
        }
        None => t.fail(0, &[g], None, "tipping points within rank + 1", "none found"),
    }
}

fn table_techs<O: Oracle>(o: &mut O, g: O::G, t: &mut Tally<O::G>) {
    let Some(tp) = require_tp(o, g, &[g], t) else { return };
    let f = o.facts(g);
    let og = f.outcome();
    let left = o.left(g);
    let right = o.right(g);
    let mut left_tp = Vec::with_capacity(left.len());
    for &x in &left {
        left_tp.push((o.outcome(x), o.tipping(x)));
    }
    let mut right_tp = Vec::with_capacity(right.len());
    for &x in &right {
        right_tp.push((o.outcome(x), o.tipping(x)));
    }
    let missing = |v: &[(Outcome, Option<TippingPoints>)]| v.iter().any(|(_, p)| p.is_none());
    if missing(&left_tp) || missing(&right_tp) {
        t.fire(0);
        t.fail(0, &[g], None, "tipping points of every option", "none found for some option");
        return;
    }
    let lt: Vec<(Outcome, TippingPoints)> = left_tp.into_iter().map(|(x, p)| (x, p.unwrap())).collect();
    let rt: Vec<(Outcome, TippingPoints)> = right_tp.into_iter().map(|(x, p)| (x, p.unwrap())).collect();

    for &(ox, px) in &lt {
        if ox != R {
            t.fire(0);
            if px.ntp > tp.rtp {
                t.fail(0, &[g], None, format!("ntp(G^L) <= rtp(G) = {}", tp.rtp), format!("ntp(G^L) = {}", px.ntp));
            }
        }
    }
    for &(ox, px) in &rt {
        if ox != L {
            t.fire(1);
            if px.ntp > tp.ltp {
                t.fail(1, &[g], None, format!("ntp(G^R) <= ltp(G) = {}", tp.ltp), format!("ntp(G^R) = {}", px.ntp));
            }
        }
    }
    if f.is_left_end() && og == N {
        t.fire(2);
        if tp.rtp != 1 {
            t.fail(2, &[g], None, "rtp(G) = 1", tp_text(tp));
        }
    }
    if f.is_right_end() && og == N {
        t.fire(3);
        if tp.ltp != 1 {
            t.fail(3, &[g], None, "ltp(G) = 1", tp_text(tp));
        }
    }
    if og == N {
        t.fire(4);
        let ok = (f.is_left_end_like() && tp.rtp == 1) || lt.iter().any(|&(ox, px)| ox == L && px.ntp == tp.rtp);
        if !ok {
            t.fail(4, &[g], None, "a Left option in L with ntp = rtp(G), or Left end-like with rtp(G) = 1", tp_text(tp));
        }
        t.fire(5);
        let ok = (f.is_right_end_like() && tp.ltp == 1) || rt.iter().any(|&(ox, px)| ox == R && px.ntp == tp.ltp);
        if !ok {
            t.fail(5, &[g], None, "a Right option in R with ntp = ltp(G), or Right end-like with ltp(G) = 1", tp_text(tp));
        }
    }
    if f.is_left_end() {
        t.fire(6);
        if tp.rtp != tp.ntp + 1 {
            t.fail(6, &[g], None, "rtp(G) = ntp(G) + 1", tp_text(tp));
        }
    }
    if f.is_right_end() {
        t.fire(7);
        if tp.ltp != tp.ntp + 1 {
            t.fail(7, &[g], None, "ltp(G) = ntp(G) + 1", tp_text(tp));
        }
    }
    if og == L {
        if tp.ntp + 1 != tp.rtp {
            t.fire(8);
            if !lt.iter().any(|&(ox, px)| ox == L && px.ntp == tp.rtp) {
                t.fail(8, &[g], None, "a Left option in L with ntp = rtp(G)", tp_text(tp));
            }
        }
        for &(_, px) in &rt {
            t.fire(10);
            if px.rtp < tp.ntp {
                t.fail(10, &[g], None, format!("rtp(G^R) >= ntp(G) = {}", tp.ntp), format!("rtp(G^R) = {}", px.rtp));
            }
        }
        t.fire(12);
        if !rt.iter().any(|&(_, px)| px.rtp == tp.ntp) {
            t.fail(12, &[g], None, "a Right option with rtp = ntp(G)", tp_text(tp));
        }
    }
    if og == R {
        if tp.ntp + 1 != tp.ltp {
            t.fire(9);
            if !rt.iter().any(|&(ox, px)| ox == R && px.ntp == tp.ltp) {
                t.fail(9, &[g], None, "a Right option in R with ntp = ltp(G)", tp_text(tp));
            }
        }
        for &(_, px) in &lt {
            t.fire(11);
            if px.ltp < tp.ntp {
                t.fail(11, &[g], None, format!("ltp(G^L) >= ntp(G) = {}", tp.ntp), format!("ltp(G^L) = {}", px.ltp));
            }
        }
        t.fire(13);
        if !lt.iter().any(|&(_, px)| px.ltp == tp.ntp) {
            t.fail(13, &[g], None, "a Left option with ltp = ntp(G)", tp_text(tp));
        }
    }
}

fn pair_tps<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) -> Option<(TippingPoints, TippingPoints)> {
    let tg = require_tp(o, g, &[g, h], t)?;
    let th = require_tp(o, h, &[g, h], t)?;
    Some((tg, th))
}

fn table_11_14<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    let (og, oh) = (o.outcome(g), o.outcome(h));
    if !matches!((og, oh), (L, N) | (R, N) | (N, N) | (L, R)) {
        return;
    }
    let Some((a, b)) = pair_tps(o, g, h, t) else { return };
    let forms = [g, h];
    let mut s = None;
    let mut sum = |o: &mut O| *s.get_or_insert_with(|| o.pair(g, h).outcome());
    match (og, oh) {
        (L, N) => {
            if a.ntp > b.ltp {
                let x = sum(o);
                t.expect_outcome(0, &forms, L, x);
            }
            if a.rtp < b.ltp {
                let x = sum(o);
                t.expect_outcome(1, &forms, N, x);
            }
        }
        (R, N) => {
            if a.ntp > b.rtp {
                let x = sum(o);
                t.expect_outcome(2, &forms, R, x);
            }
            if a.ltp < b.rtp {
                let x = sum(o);
                t.expect_outcome(3, &forms, N, x);
            }
        }
        (N, N) => {
            if a.rtp > b.ltp || a.ltp < b.rtp {
                let x = sum(o);
                t.expect_at_least_n(4, &forms, x);
            }
            if a.rtp < b.ltp || a.ltp > b.rtp {
                let x = sum(o);
                t.expect_at_most_n(5, &forms, x);
            }
        }
        (L, R) => {
            if a.ntp > b.ltp {
                let x = sum(o);
                t.expect_outcome(6, &forms, L, x);
            }
            if a.ntp > b.ntp || a.rtp > b.ltp {
                let x = sum(o);
                t.expect_at_least_n(7, &forms, x);
            }
            if a.ntp > b.ntp && a.rtp < b.ltp {
                let x = sum(o);
                t.expect_outcome(8, &forms, N, x);
            }
            if a.ntp < b.ntp && a.rtp > b.ltp {
                let x = sum(o);
                t.expect_outcome(9, &forms, N, x);
            }
            if a.ntp < b.ntp || a.rtp < b.ltp {
                let x = sum(o);
                t.expect_at_most_n(10, &forms, x);
            }
            if a.rtp < b.ntp {
                let x = sum(o);
                t.expect_outcome(11, &forms, R, x);
            }
        }
        _ => {}
    }
}

fn property_x<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    if o.outcome(g) != N || o.outcome(h) != N {
        return;
    }
    let Some((a, b)) = pair_tps(o, g, h, t) else { return };
    let (fg, fh) = (o.facts(g), o.facts(h));
    if a.rtp == 1 && b.ltp == 1 && fg.is_left_end_like() && !fh.is_left_end_like() {
        let x = o.pair(g, h).outcome();
        t.expect_outcome(0, &[g, h], N, x);
    }
    if a.ltp == 1 && b.rtp == 1 && fh.is_right_end_like() && !fg.is_right_end_like() {
        let x = o.pair(g, h).outcome();
        t.expect_outcome(1, &[g, h], N, x);
    }
}

fn final_piece<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    let (og, oh) = (o.outcome(g), o.outcome(h));
    if !matches!((og, oh), (L, N) | (R, N) | (N, N) | (L, R)) {
        return;
    }
    let Some((a, b)) = pair_tps(o, g, h, t) else { return };
    let forms = [g, h];
    let mut s = None;
    let mut sum = |o: &mut O| *s.get_or_insert_with(|| o.pair(g, h).outcome());
    match (og, oh) {
        (L, N) => {
            if a.ntp == b.ltp {
                let x = sum(o);
                t.expect_outcome(0, &forms, L, x);
            }
            if a.rtp == b.ltp {
                let x = sum(o);
                t.expect_outcome(1, &forms, N, x);
            }
        }
        (R, N) => {
            if a.ntp == b.rtp {
                let x = sum(o);
                t.expect_outcome(2, &forms, R, x);
            }
            if a.ltp == b.rtp {
                let x = sum(o);
                t.expect_outcome(3, &forms, N, x);
            }
        }
        (N, N) => {
            if a.rtp == b.ltp || a.ltp == b.rtp {
                let x = sum(o);
                t.expect_outcome(4, &forms, N, x);
            }
        }
        (L, R) => {
            if a.ntp == b.ltp {
                let x = sum(o);
                t.expect_outcome(5, &forms, L, x);
            }
            if a.ntp == b.ntp || a.rtp == b.ltp {
                let x = sum(o);
                t.expect_outcome(6, &forms, N, x);
            }
            if a.rtp == b.ntp {
                let x = sum(o);
                t.expect_outcome(7, &forms, R, x);
            }
        }
        _ => {}
    }
}

fn pfree_closure<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    let p = o.pair(g, h);
    t.fire(0);
    if p.outcome() == P {
        t.fail(0, &[g, h], None, "o(G+H) != P", "o(G+H) = P");
    }
    t.fire(1);
    if !p.p_free {
        t.fail(1, &[g, h], None, "G+H strictly P-free", format!("not P-free, o(G+H) = {}", p.outcome()));
    }
}

fn b_lemmas_form<O: Oracle>(o: &mut O, g: O::G, t: &mut Tally<O::G>) {
    let f = o.facts(g);
    let og = f.outcome();
    if og != R {
        t.fire(2);
        if !f.is_left_b_strong() {
            t.fail(2, &[g], None, "Left B-strong", format!("not Left B-strong, o(G) = {og}"));
        }
    }
    if og != L {
        t.fire(3);
        if !f.is_right_b_strong() {
            t.fail(3, &[g], None, "Right B-strong", format!("not Right B-strong, o(G) = {og}"));
        }
    }
    if og == N && (f.is_left_end() || f.is_right_end()) {
        let Some(tp) = o.tipping(g) else {
            t.fire(4);
            t.fail(4, &[g], None, "tipping points within rank + 1", "none found");
            return;
        };
        if f.is_left_end() {
            t.fire(4);
            if tp.ltp != 1 {
                t.fail(4, &[g], None, "ltp(G) = 1", tp_text(tp));
            }
        }
        if f.is_right_end() {
            t.fire(5);
            if tp.rtp != 1 {
                t.fail(5, &[g], None, "rtp(G) = 1", tp_text(tp));
            }
        }
    }
}

fn b_lemmas_pair<O: Oracle>(o: &mut O, g: O::G, h: O::G, t: &mut Tally<O::G>) {
    let (fg, fh) = (o.facts(g), o.facts(h));
    let (og, oh) = (fg.outcome(), fh.outcome());
    let forms = [g, h];
    if og == L && fh.is_left_end() {
        let x = o.pair(g, h).outcome();
        t.expect_outcome(0, &forms, L, x);
    }
    if og == R && fh.is_right_end() {
        let x = o.pair(g, h).outcome();
        t.expect_outcome(1, &forms, R, x);
    }
    if og == N && oh == N {
        if fg.is_left_end() {
            t.fire(6);
            let s = o.pair(g, h);
            if s.side.right_first != Winner::Right {
                t.fail(6, &forms, None, "Right wins G+H moving first", format!("o(G+H) = {}", s.outcome()));
            }
        }
        if fg.is_right_end() {
            t.fire(7);
            let s = o.pair(g, h);
            if s.side.left_first != Winner::Left {
                t.fail(7, &forms, None, "Left wins G+H moving first", format!("o(G+H) = {}", s.outcome()));
            }
        }
    }
}
