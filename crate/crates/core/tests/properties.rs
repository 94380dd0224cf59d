use std::cmp::Ordering;

use proptest::prelude::*;

use socrank::cli::{parse_ranking, render_ranking, RankingDocument};
use socrank::order::{Coalition, Family, Permutation, PowerRanking, Universe};
use socrank::srs::{
    dual_lex_compare, excellence_depth, lex_compare, plurality, split_plurality, theta, Srs,
    ThetaVector,
};
use socrank::verify::proposition1_failure;

fn ranking_from_levels(n: usize, levels: &[usize]) -> PowerRanking {
    let universe = Universe::new(n).unwrap();
    let mut used: Vec<usize> = levels.to_vec();
    used.sort_unstable();
    used.dedup();
    let classes: Vec<Family> = used
        .iter()
        .map(|&l| {
            (0..levels.len())
                .filter(|&s| levels[s] == l)
                .map(|s| Coalition::from_bits(s as u32))
                .collect()
        })
        .collect();
    PowerRanking::new(universe, classes).unwrap()
}

fn ranking(max_n: usize) -> impl Strategy<Value = PowerRanking> {
    (1..=max_n).prop_flat_map(|n| {
        let m = 1usize << n;
        prop::collection::vec(0..m, m).prop_map(move |levels| ranking_from_levels(n, &levels))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn thetas(len: usize) -> impl Strategy<Value = ThetaVector> {
    prop::collection::vec(0u32..4, len).prop_map(ThetaVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn theta_sums_to_half_the_power_set(r in ranking(5)) {
        let n = r.universe().n();
        for x in 0..n {
            let total: u32 = theta(&r, x).counts().iter().sum();
            prop_assert_eq!(total, 1 << (n - 1));
        }
    }

    #[test]
    fn lex_orders_are_total_preorders(a in thetas(4), b in thetas(4), c in thetas(4)) {
        for cmp in [lex_compare, dual_lex_compare] {
            let ab = cmp(&a, &b).unwrap();
            prop_assert_eq!(ab, cmp(&b, &a).unwrap().reverse());
            let bc = cmp(&b, &c).unwrap();
            if ab != Ordering::Less && bc != Ordering::Less {
                prop_assert_ne!(cmp(&a, &c).unwrap(), Ordering::Less);
            }
            prop_assert_eq!(cmp(&a, &a).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn rule_outputs_are_complete_and_transitive(r in ranking(4)) {
        let n = r.universe().n();
        for srs in Srs::roster() {
            let out = srs.rank(&r);
            for x in 0..n {
                for y in 0..n {
                    prop_assert!(out.weakly_above(x, y) || out.weakly_above(y, x));
                    for z in 0..n {
                        if out.weakly_above(x, y) && out.weakly_above(y, z) {
                            prop_assert!(out.weakly_above(x, z));
                        }
                    }
                }
            }
            prop_assert_eq!(&out, &srs.rank(&r));
        }
    }

    #[test]
    fn permutations_act_as_a_group((r, p, q) in (2usize..=4).prop_flat_map(|n| {
        let m = 1usize << n;
        (
            prop::collection::vec(0..m, m).prop_map(move |l| ranking_from_levels(n, &l)),
            permutation(n),
            permutation(n),
        )
    })) {
        let n = r.universe().n();
        prop_assert_eq!(r.permute(&Permutation::identity(n)), r.clone());
        prop_assert_eq!(r.permute(&p.compose(&q)), r.permute(&q).permute(&p));
        prop_assert_eq!(r.permute(&p).permute(&p.inverse()), r.clone());
    }

    #[test]
    fn neutral_rules_commute_with_permutations((r, p) in (2usize..=4).prop_flat_map(|n| {
        let m = 1usize << n;
        (prop::collection::vec(0..m, m).prop_map(move |l| ranking_from_levels(n, &l)), permutation(n))
    })) {
        let n = r.universe().n();
        for srs in [Srs::Iis, Srs::LexCel, Srs::Plurality, Srs::DualLexCel, Srs::SplitPlurality] {
            let (a, b) = (srs.rank(&r), srs.rank(&r.permute(&p)));
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(a.weakly_above(x, y), b.weakly_above(p.apply(x), p.apply(y)));
                }
            }
        }
    }

    #[test]
    fn file_format_round_trips(r in ranking(4)) {
        let text = render_ranking(&r);
        let doc = parse_ranking(&text).unwrap();
        prop_assert_eq!(doc.to_ranking().unwrap(), r.clone());
        prop_assert_eq!(parse_ranking(&doc.render()).unwrap(), doc.clone());
        prop_assert_eq!(RankingDocument::from_ranking(&r), doc);
    }

    #[test]
    fn split_plurality_reduces_to_plurality_on_small_tops(r in ranking(4)) {
        if r.best().iter().all(|c| c.len() <= 1) {
            prop_assert_eq!(split_plurality(&r), plurality(&r));
        }
    }

    #[test]
    fn positive_depth_means_common_top_member(r in ranking(5)) {
        let common = r.best().intersection_or(r.universe());
        for x in 0..r.universe().n() {
            prop_assert_eq!(excellence_depth(&r, x) >= 1, common.contains(x));
        }
    }

    #[test]
    fn implications_between_the_three_rules(r in ranking(5)) {
        let (l, p, s) = (Srs::LexCel.rank(&r), Srs::Plurality.rank(&r), Srs::Iis.rank(&r));
        let n = r.universe().n();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(proposition1_failure(&l, &p, &s, x, y), None);
            }
        }
    }
}
