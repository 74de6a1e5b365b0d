#![allow(clippy::needless_range_loop)]

mod common;

use lexdm::convolution::{self, RangeMode, Scheme};
use lexdm::crisp;
use lexdm::fuzzy::{self, FuzzyRelation, Transform};
use lexdm::model::{DecisionMatrix, Verdict};
use lexdm::rational::{self, Rational};
use lexdm::relational::{self, CrispRelation};
use num_traits::Zero;
use proptest::prelude::*;

use common::*;

fn digit_rows(max_n: usize, max_m: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n, 1..=max_m)
        .prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0i64..=9, m), n))
}

fn fuzzy_stack(max_n: usize, max_m: usize) -> impl Strategy<Value = Vec<FuzzyRelation>> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(0i64..=10, n), n), m).prop_map(
            |stack| {
                stack
                    .into_iter()
                    .map(|rows| {
                        FuzzyRelation::new(
                            rows.into_iter()
                                .map(|r| r.into_iter().map(|v| rational::ratio(v, 10)).collect())
                                .collect(),
                        )
                        .unwrap()
                    })
                    .collect()
            },
        )
    })
}

fn crisp_stack(max_n: usize, max_m: usize) -> impl Strategy<Value = Vec<CrispRelation>> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(
            prop::collection::vec(prop::collection::vec(any::<bool>(), n), n),
            m,
        )
        .prop_map(|stack| {
            stack
                .into_iter()
                .map(|rows| CrispRelation::new(rows).unwrap())
                .collect()
        })
    })
}

fn matrix(rows: &[Vec<i64>]) -> DecisionMatrix {
    DecisionMatrix::from_integers(rows, 0, 9).unwrap()
}

proptest! {
    #[test]
    fn cascade_matches_digit_oracle(rows in digit_rows(6, 4)) {
        let m = matrix(&rows);
        for i in 0..m.n() {
            for l in 0..m.n() {
                prop_assert_eq!(crisp::lex_compare_at(&m, i, l), oracle_compare(&rows[i], &rows[l]));
            }
        }
    }

    #[test]
    fn cascade_is_antisymmetric(rows in digit_rows(6, 4)) {
        let m = matrix(&rows);
        for i in 0..m.n() {
            for l in 0..m.n() {
                prop_assert_eq!(crisp::lex_compare_at(&m, i, l).mirrored(), crisp::lex_compare_at(&m, l, i));
            }
        }
    }

    #[test]
    fn ranking_tiers_are_sorted_and_complete(rows in digit_rows(8, 3)) {
        let m = matrix(&rows);
        let tiers = crisp::rank_indices(&m);
        let mut seen: Vec<usize> = tiers.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..m.n()).collect::<Vec<_>>());
        for tier in &tiers {
            for &a in tier {
                prop_assert_eq!(m.row(a), m.row(tier[0]));
            }
        }
        for pair in tiers.windows(2) {
            prop_assert_eq!(crisp::lex_compare_at(&m, pair[0][0], pair[1][0]).verdict, Verdict::FirstPreferred);
        }
    }

    #[test]
    fn affine_rescaling_keeps_outcomes(rows in digit_rows(6, 3), a in 1i64..20, b in -50i64..50) {
        let m = matrix(&rows);
        let f = |x: &Rational| x * rational::int(a) + rational::int(b);
        let mut mapped = m.clone();
        for j in 0..m.m() {
            let c = &m.criteria()[j];
            mapped = mapped.map_column(j, (f(&c.scale_min), f(&c.scale_max)), f).unwrap();
        }
        for i in 0..m.n() {
            for l in 0..m.n() {
                prop_assert_eq!(crisp::lex_compare_at(&m, i, l), crisp::lex_compare_at(&mapped, i, l));
            }
        }
    }

    #[test]
    fn mixed_radix_convolution_is_digit_encoding(rows in digit_rows(6, 4)) {
        let m = matrix(&rows);
        let w = convolution::lex_weights(&m, Scheme::MixedRadix, RangeMode::Declared).unwrap();
        prop_assert!(w.satisfies_dominance());
        for (i, row) in rows.iter().enumerate() {
            let code = Rational::from_integer(mixed_radix_code(row).into());
            prop_assert_eq!(convolution::convolve_at(&m, &w, i).unwrap(), code);
        }
    }

    #[test]
    fn observed_mode_still_represents_cascade(rows in digit_rows(6, 3)) {
        let m = matrix(&rows);
        if let Ok(w) = convolution::lex_weights(&m, Scheme::MixedRadix, RangeMode::Observed) {
            let v = convolution::convolve_all(&m, &w).unwrap();
            for i in 0..m.n() {
                for l in 0..m.n() {
                    let strict = v[i] > v[l];
                    prop_assert_eq!(strict, crisp::lex_compare_at(&m, i, l).verdict == Verdict::FirstPreferred);
                }
            }
        }
    }

    #[test]
    fn normalize_keeps_cascade(rows in digit_rows(5, 3), a in 1i64..100) {
        let m = matrix(&rows);
        let zero_column = (0..m.m()).any(|j| m.column(j).all(Zero::is_zero));
        let scaled = convolution::normalize(&m, &rational::int(a));
        prop_assert_eq!(scaled.is_err(), zero_column);
        let Ok(scaled) = scaled else { return Ok(()) };
        for i in 0..m.n() {
            for l in 0..m.n() {
                prop_assert_eq!(crisp::lex_compare_at(&m, i, l), crisp::lex_compare_at(&scaled, i, l));
            }
        }
    }

    #[test]
    fn relation_parts_partition_pairs(stack in crisp_stack(6, 1)) {
        let r = &stack[0];
        let p = relational::derive_parts(r);
        let n = r.size();
        for i in 0..n {
            for l in 0..n {
                let hits = [p.strict[i][l], p.strict[l][i], p.equivalent[i][l], p.incomparable[i][l]];
                prop_assert_eq!(hits.iter().filter(|&&h| h).count(), 1);
                prop_assert_eq!(p.equivalent[i][l], p.equivalent[l][i]);
                prop_assert_eq!(p.incomparable[i][l], p.incomparable[l][i]);
            }
        }
    }

    #[test]
    fn composition_matches_case_chain(stack in crisp_stack(5, 3)) {
        let n = stack[0].size();
        for i in 0..n {
            for l in 0..n {
                let got = relational::lex_compose(&stack, i, l).unwrap();
                prop_assert_eq!(got, oracle_compose(&stack, i, l));
                prop_assert_eq!(got.mirrored(), relational::lex_compose(&stack, l, i).unwrap());
            }
        }
    }

    #[test]
    fn column_relations_reproduce_cascade(rows in digit_rows(6, 4)) {
        let m = matrix(&rows);
        let stack = relational::relations_from_matrix(&m);
        for i in 0..m.n() {
            for l in 0..m.n() {
                prop_assert_eq!(relational::lex_compose(&stack, i, l).unwrap(), crisp::lex_compare_at(&m, i, l));
            }
        }
    }

    #[test]
    fn fuzzy_parts_laws(stack in fuzzy_stack(6, 1)) {
        let r = &stack[0];
        let s = fuzzy::strict_part(r);
        let e = fuzzy::equivalence_part(r);
        let inv = fuzzy::inverse(r);
        for i in 0..r.size() {
            for l in 0..r.size() {
                prop_assert!(s.get(i, l).clone().min(s.get(l, i).clone()).is_zero());
                prop_assert_eq!(e.get(i, l), e.get(l, i));
                prop_assert_eq!(inv.get(i, l), r.get(l, i));
                prop_assert!(e.get(i, l) <= r.get(i, l));
            }
        }
        prop_assert_eq!(&fuzzy::inverse(&inv), r);
    }

    #[test]
    fn fuzzy_cascade_matches_case_chain(stack in fuzzy_stack(5, 3)) {
        let n = stack[0].size();
        for i in 0..n {
            for l in 0..n {
                let got = fuzzy::fuzzy_lex_compare(&stack, i, l).unwrap();
                let (verdict, level, degree) = oracle_fuzzy(&stack, i, l);
                prop_assert_eq!(got.verdict, verdict);
                prop_assert_eq!(got.level, level);
                prop_assert_eq!(&got.degree, &degree);
                let back = fuzzy::fuzzy_lex_compare(&stack, l, i).unwrap();
                prop_assert_eq!(back.verdict, got.verdict.mirrored());
                prop_assert_eq!(back.level, got.level);
            }
        }
    }

    #[test]
    fn base_twelve_convolution_agrees(stack in fuzzy_stack(5, 3)) {
        let n = stack[0].size();
        let s = fuzzy::fuzzy_lex_convolve(&stack, 12).unwrap();
        for i in 0..n {
            for l in 0..n {
                let cascade = fuzzy::fuzzy_lex_compare(&stack, i, l).unwrap().verdict;
                let sign = match s[i][l].cmp(&s[l][i]) {
                    std::cmp::Ordering::Greater => Verdict::FirstPreferred,
                    std::cmp::Ordering::Less => Verdict::SecondPreferred,
                    std::cmp::Ordering::Equal => Verdict::Equivalent,
                };
                prop_assert_eq!(sign, cascade);
            }
        }
    }

    #[test]
    fn scale_theorem_holds(stack in fuzzy_stack(5, 3)) {
        for t in [Transform::Square, Transform::Halve, Transform::Identity] {
            let report = fuzzy::check_scale_theorem(&stack, |x| t.apply(x)).unwrap();
            prop_assert!(report.holds(), "{t}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn fuzzy_ranking_is_consistent_when_it_succeeds(stack in fuzzy_stack(5, 2)) {
        if let Ok(tiers) = fuzzy::fuzzy_lex_rank(&stack) {
            for pair in tiers.windows(2) {
                let o = fuzzy::fuzzy_lex_compare(&stack, pair[0][0], pair[1][0]).unwrap();
                prop_assert_eq!(o.verdict, Verdict::FirstPreferred);
            }
            for tier in &tiers {
                for &a in tier {
                    let o = fuzzy::fuzzy_lex_compare(&stack, tier[0], a).unwrap();
                    prop_assert_eq!(o.verdict, Verdict::Equivalent);
                }
            }
        }
    }
}

#[test]
fn transitive_stacks_never_produce_counterexamples() {
    let mut r = rng(7);
    for _ in 0..300 {
        let n = rand::Rng::gen_range(&mut r, 1..=7);
        let stack: Vec<CrispRelation> = (0..3).map(|_| random_transitive(&mut r, n)).collect();
        let report = relational::verify_composition(&stack).unwrap();
        assert!(report.premises_hold);
        assert!(report.composed_transitive, "{:?}", report.counterexample);
    }
}

#[test]
fn violated_premises_can_break_transitivity() {
    // non-transitive first level lets a cycle through
    let mut r = rng(11);
    let found = (0..2000).any(|_| {
        let stack = vec![random_relation(&mut r, 4, 0.5), random_relation(&mut r, 4, 0.5)];
        let report = relational::verify_composition(&stack).unwrap();
        !report.premises_hold && !report.composed_transitive
    });
    assert!(found);
}
