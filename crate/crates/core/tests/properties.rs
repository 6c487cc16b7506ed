mod common;

use common::strategy::{augmented, ordinary};
use common::Tree;
use misere_core::{enumerate, Arena, EnumSpec, Filter, FormId, Outcome, UniverseTag, Winner};
use proptest::prelude::*;

const UNIVERSES: [UniverseTag; 3] = [UniverseTag::D, UniverseTag::E, UniverseTag::B];

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn conjugate_is_an_involution(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let c = a.conjugate(g);
        prop_assert_eq!(a.conjugate(c), g);
    }

    #[test]
    fn sum_is_commutative_and_associative(x in augmented(2, 2), y in augmented(2, 2), z in augmented(2, 2)) {
        let mut a = Arena::new();
        let (g, h, k) = (x.build(&mut a), y.build(&mut a), z.build(&mut a));
        prop_assert_eq!(a.sum(g, h), a.sum(h, g));
        let gh = a.sum(g, h);
        let hk = a.sum(h, k);
        prop_assert_eq!(a.sum(gh, k), a.sum(g, hk));
    }

    #[test]
    fn zero_is_the_identity(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        prop_assert_eq!(a.sum(g, FormId::ZERO), g);
    }

    #[test]
    fn ranks_add(x in augmented(3, 2), y in augmented(3, 2)) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        let s = a.sum(g, h);
        prop_assert_eq!(a.rank(s), a.rank(g) + a.rank(h));
        prop_assert_eq!(a.rank(g), x.canonical().birthday());
    }

    #[test]
    fn end_like_is_conjunctive(x in augmented(3, 2), y in augmented(3, 2)) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        let s = a.sum(g, h);
        prop_assert_eq!(a.is_left_end_like(s), a.is_left_end_like(g) && a.is_left_end_like(h));
        prop_assert_eq!(a.is_right_end_like(s), a.is_right_end_like(g) && a.is_right_end_like(h));
    }

    #[test]
    fn conjugation_reverses_outcomes(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let c = a.conjugate(g);
        prop_assert_eq!(a.outcome(c), a.outcome(g).conjugate());
    }

    #[test]
    fn conjugation_distributes_over_sums(x in augmented(2, 2), y in augmented(2, 2)) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        let s = a.sum(g, h);
        let (cg, ch) = (a.conjugate(g), a.conjugate(h));
        prop_assert_eq!(a.conjugate(s), a.sum(cg, ch));
    }

    #[test]
    fn tombstones_exclude_losing_first(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let f = a.form(g);
        if f.left_tombstone {
            prop_assert_eq!(a.outcome_left(g), Winner::Left);
        }
        if f.right_tombstone {
            prop_assert_eq!(a.outcome_right(g), Winner::Right);
        }
        prop_assert!(!(f.left_tombstone || f.right_tombstone) || a.outcome(g) != Outcome::P);
    }

    #[test]
    fn symmetric_sums_are_n_or_p(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let c = a.conjugate(g);
        let s = a.sum(g, c);
        prop_assert!(matches!(a.outcome(s), Outcome::N | Outcome::P));
    }

    #[test]
    fn strict_p_freeness_is_absence_of_p_subpositions(t in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let any_p = a.subpositions(g).into_iter().any(|x| a.outcome(x) == Outcome::P);
        prop_assert_eq!(a.is_strictly_p_free(g), !any_p);
    }

    #[test]
    fn tipping_points_swap_under_conjugation(t in ordinary(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let c = a.conjugate(g);
        prop_assert_eq!(a.tipping_points(c).unwrap(), a.tipping_points(g).unwrap().conjugate());
    }

    #[test]
    fn tipping_points_are_stable_under_equivalence(t in ordinary(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        prop_assume!(a.is_blocking(g).unwrap());
        let h = a.parse("1+-1").unwrap();
        let gh = a.sum(g, h);
        prop_assert!(a.equiv_b(g, gh).unwrap());
        prop_assert_eq!(a.tipping_points(g).unwrap(), a.tipping_points(gh).unwrap());
    }

    #[test]
    fn universes_are_hereditary_and_closed(x in ordinary(3, 2), y in ordinary(2, 2)) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        let s = a.sum(g, h);
        let c = a.conjugate(g);
        for u in UNIVERSES {
            let (mg, mh) = (a.is_member(g, u).unwrap(), a.is_member(h, u).unwrap());
            if mg {
                for &o in a.left(g).iter().chain(a.right(g)) {
                    prop_assert!(a.is_member(o, u).unwrap(), "{} option of {} leaves {}", u, a.print(g), a.print(o));
                }
                prop_assert!(a.is_member(c, u).unwrap());
            }
            if mg && mh {
                prop_assert!(a.is_member(s, u).unwrap(), "{} + {} leaves {}", a.print(g), a.print(h), u);
            }
        }
    }

    #[test]
    fn universes_nest(t in ordinary(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        let d = a.is_dicot(g).unwrap();
        let e = a.is_dead_ending(g).unwrap();
        let b = a.is_blocking(g).unwrap();
        prop_assert!(!d || e);
        prop_assert!(!e || b);
    }

    #[test]
    fn integers_are_inverse(n in 1i64..=6, t in ordinary(2, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        prop_assume!(a.is_blocking(g).unwrap());
        let p = a.integer(n).unwrap();
        let m = a.integer(-n).unwrap();
        let s = a.sum_all(&[g, p, m]);
        prop_assert!(a.equiv_b(s, g).unwrap());
    }

    #[test]
    fn left_strength_wins_against_blocked_left_ends(t in ordinary(3, 2)) {
        let mut a = Arena::new();
        let g = t.build(&mut a);
        prop_assume!(a.left_b_strong(g).unwrap());
        let ends = enumerate(&mut a, &EnumSpec::new(2, 2).with_filter(Filter::Universe(UniverseTag::B)).with_filter(Filter::LeftEnd)).unwrap();
        for x in ends {
            let s = a.sum(g, x);
            prop_assert_eq!(a.outcome_left(s), Winner::Left, "{} + {}", a.print(g), a.print(x));
        }
    }

    #[test]
    fn interning_matches_structural_equality(x in augmented(3, 2), y in augmented(3, 2)) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        prop_assert_eq!(g == h, x.canonical() == y.canonical());
        prop_assert_eq!(Tree::from_arena(&a, g).canonical(), x.canonical());
    }

    #[test]
    fn interning_ignores_order_and_repeats(x in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = x.build(&mut a);
        let mut shuffled = x.clone();
        shuffled.left.reverse();
        shuffled.right.reverse();
        shuffled.left.extend(x.left.first().cloned());
        prop_assert_eq!(shuffled.build(&mut a), g);
    }

    #[test]
    fn outcomes_match_the_reference_evaluator(x in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = x.build(&mut a);
        prop_assert_eq!(a.outcome(g), x.outcome());
        prop_assert_eq!(a.is_strictly_p_free(g), x.p_free());
    }

    #[test]
    fn sums_match_the_reference_evaluator(x in augmented(2, 2), y in augmented(2, 2), n in -3i64..=3) {
        let mut a = Arena::new();
        let (g, h) = (x.build(&mut a), y.build(&mut a));
        let s = a.sum(g, h);
        let s = a.add_integer(s, n).unwrap();
        let t = x.sum(&y).sum(&Tree::integer(n));
        prop_assert_eq!(a.outcome(s), t.outcome());
        prop_assert_eq!(Tree::from_arena(&a, s).canonical(), t.canonical());
    }

    #[test]
    fn printing_round_trips(x in augmented(3, 2)) {
        let mut a = Arena::new();
        let g = x.build(&mut a);
        let text = a.print(g);
        prop_assert_eq!(a.parse(&text).unwrap(), g);
    }

    #[test]
    fn small_trees_are_enumerated(x in ordinary(2, 2)) {
        let mut a = Arena::new();
        let forms = enumerate(&mut a, &EnumSpec::new(2, 2)).unwrap();
        let g = x.build(&mut a);
        prop_assert!(forms.contains(&g), "{} missing", a.print(g));
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    let mut a = Arena::new();
    let mut forms = enumerate(&mut a, &EnumSpec::new(2, 4)).unwrap();
    let n = forms.len();
    forms.sort_unstable();
    forms.dedup();
    assert_eq!(forms.len(), n);
    let mut trees: Vec<Tree> = forms.iter().map(|&g| Tree::from_arena(&a, g)).collect();
    trees.sort();
    trees.dedup();
    assert_eq!(trees.len(), n);
}

#[test]
fn filters_agree_with_post_hoc_filtering() {
    let mut a = Arena::new();
    let all = enumerate(&mut a, &EnumSpec::new(2, 4)).unwrap();
    let filters = [
        Filter::PFree,
        Filter::Universe(UniverseTag::D),
        Filter::Universe(UniverseTag::E),
        Filter::Universe(UniverseTag::B),
        Filter::Outcome(Outcome::N),
        Filter::LeftEnd,
        Filter::RightEnd,
    ];
    for f in filters {
        let mut want: Vec<FormId> = all.iter().copied().filter(|&g| f.accepts(a.facts(g))).collect();
        let mut got = enumerate(&mut a, &EnumSpec::new(2, 4).with_filter(f)).unwrap();
        want.sort_unstable();
        got.sort_unstable();
        assert_eq!(got, want, "{f:?}");
    }
}

#[test]
fn counts_grow_with_bounds() {
    let mut a = Arena::new();
    let mut count = |b, w| enumerate(&mut a, &EnumSpec::new(b, w)).unwrap().len();
    let grid: Vec<Vec<usize>> = (0..=2).map(|b| (1..=3).map(|w| count(b, w)).collect()).collect();
    for b in 0..3 {
        for w in 0..3 {
            if b + 1 < 3 {
                assert!(grid[b][w] <= grid[b + 1][w]);
            }
            if w + 1 < 3 {
                assert!(grid[b][w] <= grid[b][w + 1]);
            }
        }
    }
}
