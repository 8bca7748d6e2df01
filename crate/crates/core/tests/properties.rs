//! Property tests for the test-construction and evaluation invariants.

use proptest::prelude::*;
use teamgame::evaluate::y_hat;
use teamgame::experiments::{blackwell_geq, product, DichotomousExperiment};
use teamgame::game::second_period_rule;
use teamgame::presets;
use teamgame::switching::{build_test, Measure, PlayerAction};
use teamgame::views::{Model, TechnologyViews, View, ViewFamily};

fn act(e: f64) -> PlayerAction {
    PlayerAction { tech: 0, effort: e }
}

/// Random dichotomous experiment on up to six signals.
fn arb_experiment() -> impl Strategy<Value = DichotomousExperiment> {
    (2usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(0.0f64..1.0, n),
            proptest::collection::vec(0.0f64..1.0, n),
        )
            .prop_filter_map("positive mass", move |(a, b)| {
                let sa: f64 = a.iter().sum();
                let sb: f64 = b.iter().sum();
                if sa <= 1e-6 || sb <= 1e-6 {
                    return None;
                }
                let p_null: Vec<f64> = a.iter().map(|x| x / sa).collect();
                let p_alt: Vec<f64> = b.iter().map(|x| x / sb).collect();
                let support = (0..n).map(|i| vec![i as f64]).collect();
                DichotomousExperiment::new(support, p_null, p_alt).ok()
            })
    })
}

fn brute_force_power(p_null: &[f64], p_alt: &[f64], alpha: f64) -> f64 {
    let n = p_null.len();
    let mut best = 0.0f64;
    for mask in 0..(1u32 << n) {
        let mut size = 0.0;
        let mut power = 0.0;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                size += p_null[i];
                power += p_alt[i];
            }
        }
        if size > alpha + 1e-12 {
            continue;
        }
        best = best.max(power);
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let extra = if p_null[j] > 0.0 {
                ((alpha - size) / p_null[j]).clamp(0.0, 1.0) * p_alt[j]
            } else {
                p_alt[j]
            };
            best = best.max(power + extra);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_curves_are_np_optimal_monotone_concave(x in arb_experiment()) {
        let alphas: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let curve = x.power_curve(&alphas);
        prop_assert!((curve[20] - 1.0).abs() <= 1e-12);
        for (i, &alpha) in alphas.iter().enumerate() {
            prop_assert!(curve[i] >= alpha - 1e-12);
            prop_assert!(curve[i] <= 1.0 + 1e-12);
            let oracle = brute_force_power(x.p_null(), x.p_alt(), alpha);
            prop_assert!((curve[i] - oracle).abs() <= 1e-9, "alpha {} curve {} oracle {}", alpha, curve[i], oracle);
            if i > 0 {
                prop_assert!(curve[i] >= curve[i - 1] - 1e-12);
            }
            if i > 1 {
                prop_assert!(curve[i] - curve[i-1] <= curve[i-1] - curve[i-2] + 1e-9);
            }
        }
    }

    #[test]
    fn product_is_commutative_up_to_relabeling(a in arb_experiment(), b in arb_experiment()) {
        let alphas: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let ab = product(&a, &b).power_curve(&alphas);
        let ba = product(&b, &a).power_curve(&alphas);
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn a_product_dominates_its_factors(a in arb_experiment(), b in arb_experiment()) {
        let ab = product(&a, &b);
        prop_assert!(blackwell_geq(&ab, &a, &[], 1e-9).dominates);
        prop_assert!(blackwell_geq(&ab, &b, &[], 1e-9).dominates);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn type_i_error_is_exactly_alpha(
        r in 0.0f64..0.9,
        lambda in 0.2f64..1.0,
        e_a in 0.0f64..1.0,
        e_b in 0.0f64..1.0,
        alpha in 0.0f64..1.0,
    ) {
        let techs = vec![TechnologyViews::new(
            ViewFamily::DiscreteBandit { low_payout: r, high_payout: 1.0, success_slope: lambda },
            1.0,
            0,
        ).unwrap()];
        let own = Model::single(View::Skeptical);
        let rival = Model::single(View::Optimistic);
        let test = build_test(&own, &rival, [act(e_a), act(e_b)], &techs, alpha).unwrap();
        let t1 = test.switch_probability(&techs, Measure::Model(&own)).unwrap();
        prop_assert!((t1 - alpha).abs() <= 1e-12, "type-I {} vs alpha {}", t1, alpha);
        // power never falls below the size
        let power = test.switch_probability(&techs, Measure::Model(&rival)).unwrap();
        prop_assert!(power >= alpha - 1e-12);
    }

    #[test]
    fn switch_probability_monotone_in_efforts(
        r in prop::sample::select(vec![0.0f64, 0.25, 0.5]),
        e_lo in 0.0f64..0.95,
        bump in 0.01f64..0.3,
        e_b in 0.0f64..1.0,
        alpha in prop::sample::select(vec![0.0f64, 0.05, 0.2]),
    ) {
        let e_hi = (e_lo + bump).min(1.0);
        let techs = vec![TechnologyViews::new(
            ViewFamily::DiscreteBandit { low_payout: r, high_payout: 1.0, success_slope: 1.0 },
            1.0,
            0,
        ).unwrap()];
        let own = Model::single(View::Skeptical);
        let rival = Model::single(View::Optimistic);
        let phi = |ea: f64| {
            build_test(&own, &rival, [act(ea), act(e_b)], &techs, alpha)
                .unwrap()
                .switch_probability(&techs, Measure::Model(&rival))
                .unwrap()
        };
        prop_assert!(phi(e_hi) >= phi(e_lo) - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn team_output_is_symmetric_in_composition(
        beta in 0.0f64..6.0,
        alpha in prop::sample::select(vec![0.0f64, 0.05, 0.2]),
        r in prop::sample::select(vec![0.0f64, 0.5]),
    ) {
        let mut cfg = if r > 0.0 { presets::bandit_half(beta) } else { presets::section2(beta) };
        cfg.alpha = alpha;
        let (a, b) = cfg.initial_models.clone();
        let y_ab = y_hat(&cfg).unwrap().0.total;
        let y_ba = y_hat(&cfg.with_models(b, a)).unwrap().0.total;
        prop_assert!((y_ab - y_ba).abs() <= 1e-12);
    }

    #[test]
    fn second_period_rule_ignores_initial_models(
        ia in 0usize..4,
        ib in 0usize..4,
    ) {
        let cfg = presets::bandit_half_two_tech(2.0);
        let models = Model::enumerate(2);
        let base = second_period_rule(&cfg).unwrap();
        let rule = second_period_rule(&cfg.with_models(models[ia].clone(), models[ib].clone())).unwrap();
        prop_assert_eq!(base, rule);
    }

    #[test]
    fn disagreement_never_slows_the_optimist(
        beta in 0.5f64..6.0,
        alpha in prop::sample::select(vec![0.0f64, 0.05]),
    ) {
        // the effort-ordering inequalities hold across the externality range
        let mut cfg = presets::section2(beta);
        cfg.alpha = alpha;
        let rep = teamgame::game::lemma_effort_check(&cfg).unwrap();
        prop_assert!(rep.optimist_ok && rep.skeptic_ok);
        if rep.strict_expected {
            prop_assert!(rep.strict_observed);
        }
    }
}
