//! Row-by-row coverage of the tipping-point summary tables by suite clauses.

use super::suites::Suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifestRow {
    pub suite: Suite,
    pub row: &'static str,
    pub clause: &'static str,
}

const fn row(suite: Suite, row: &'static str, clause: &'static str) -> ManifestRow {
    ManifestRow { suite, row, clause }
}

use Suite::{FinalPiece as F, Table11_14 as S, TableTechs as T};

pub const MANIFEST: &[ManifestRow] = &[
    row(T, "o(G)=L: every G^L in L has ntp(G^L) <= rtp(G)", "option_ntp_below_rtp"),
    row(T, "o(G)=L: every G^R has rtp(G^R) >= ntp(G)", "l_right_options_rtp_bound"),
    row(T, "o(G)=L: some G^R has rtp(G^R) = ntp(G)", "l_right_option_rtp_equals_ntp"),
    row(T, "o(G)=L, ntp(G) != rtp(G)-1: some G^L in L has ntp(G^L) = rtp(G)", "l_left_witness"),
    row(T, "o(G)=N: every G^L in L or N has ntp(G^L) <= rtp(G)", "option_ntp_below_rtp"),
    row(T, "o(G)=N: every G^R in R or N has ntp(G^R) <= ltp(G)", "option_ntp_below_ltp"),
    row(T, "o(G)=N: G Left end-like with rtp(G)=1, or some G^L in L has ntp(G^L) = rtp(G)", "n_left_witness"),
    row(T, "o(G)=N: G Right end-like with ltp(G)=1, or some G^R in R has ntp(G^R) = ltp(G)", "n_right_witness"),
    row(T, "o(G)=N, G a Left end: rtp(G) = 1", "left_end_n_has_rtp_one"),
    row(T, "o(G)=N, G a Right end: ltp(G) = 1", "right_end_n_has_ltp_one"),
    row(T, "o(G)=R: every G^R in R has ntp(G^R) <= ltp(G)", "option_ntp_below_ltp"),
    row(T, "o(G)=R: every G^L has ltp(G^L) >= ntp(G)", "r_left_options_ltp_bound"),
    row(T, "o(G)=R: some G^L has ltp(G^L) = ntp(G)", "r_left_option_ltp_equals_ntp"),
    row(T, "o(G)=R, ntp(G) != ltp(G)-1: some G^R in R has ntp(G^R) = ltp(G)", "r_right_witness"),
    row(T, "G a Left end: rtp(G) = ntp(G)+1", "left_end_rtp_is_ntp_plus_one"),
    row(T, "G a Right end: ltp(G) = ntp(G)+1", "right_end_ltp_is_ntp_plus_one"),
    row(S, "(L, N), ntp(G) > ltp(H): L", "ln_ntp_gt_ltp_gives_l"),
    row(S, "(L, N), rtp(G) < ltp(H): N", "ln_rtp_lt_ltp_gives_n"),
    row(S, "(R, N), ntp(G) > rtp(H): R", "rn_ntp_gt_rtp_gives_r"),
    row(S, "(R, N), ltp(G) < rtp(H): N", "rn_ltp_lt_rtp_gives_n"),
    row(S, "(N, N), rtp(G) > ltp(H) or ltp(G) < rtp(H): at least N", "nn_at_least_n"),
    row(S, "(N, N), rtp(G) < ltp(H) or ltp(G) > rtp(H): at most N", "nn_at_most_n"),
    row(S, "(L, R), ntp(G) > ltp(H): L", "lr_ntp_gt_ltp_gives_l"),
    row(S, "(L, R), ntp(G) > ntp(H) or rtp(G) > ltp(H): at least N", "lr_at_least_n"),
    row(S, "(L, R), ntp(G) > ntp(H) and rtp(G) < ltp(H): N", "lr_gives_n_first"),
    row(S, "(L, R), ntp(G) < ntp(H) and rtp(G) > ltp(H): N", "lr_gives_n_second"),
    row(S, "(L, R), ntp(G) < ntp(H) or rtp(G) < ltp(H): at most N", "lr_at_most_n"),
    row(S, "(L, R), rtp(G) < ntp(H): R", "lr_rtp_lt_ntp_gives_r"),
    row(F, "(L, N), ntp(G) = ltp(H): L", "ln_ntp_eq_ltp_gives_l"),
    row(F, "(L, N), rtp(G) = ltp(H): N", "ln_rtp_eq_ltp_gives_n"),
    row(F, "(R, N), ntp(G) = rtp(H): R", "rn_ntp_eq_rtp_gives_r"),
    row(F, "(R, N), ltp(G) = rtp(H): N", "rn_ltp_eq_rtp_gives_n"),
    row(F, "(N, N), rtp(G) = ltp(H) or ltp(G) = rtp(H): N", "nn_equal_tp_gives_n"),
    row(F, "(L, R), ntp(G) = ltp(H): L", "lr_ntp_eq_ltp_gives_l"),
    row(F, "(L, R), ntp(G) = ntp(H) or rtp(G) = ltp(H): N", "lr_equal_gives_n"),
    row(F, "(L, R), rtp(G) = ntp(H): R", "lr_rtp_eq_ntp_gives_r"),
];
