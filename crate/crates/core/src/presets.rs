//! Canonical desk-scale configurations used by the test suites and the
//! command-line experiment runner.

use crate::game::{GameConfig, Mode, OwnUtility, PayoffSpec, TabulatedUtility};
use crate::grid::EffortGrid;
use crate::views::{
    Model, NoiseKind, ProcessSpec, ProcessTable, TechnologyViews, TrueProcess, View, ViewFamily,
};

fn bandit_tech(low_payout: f64) -> TechnologyViews {
    TechnologyViews::new(
        ViewFamily::DiscreteBandit {
            low_payout,
            high_payout: 1.0,
            success_slope: 1.0,
        },
        1.0,
        0,
    )
    .expect("valid bandit family")
}

/// One breakthrough technology, an optimist paired with a skeptic, effort
/// cost `2 e^2`, and the optimistic view objectively correct.
pub fn section2(beta: f64) -> GameConfig {
    GameConfig {
        techs: vec![bandit_tech(0.0)],
        process: TrueProcess::from_views(vec![View::Optimistic]),
        initial_models: (
            Model::single(View::Optimistic),
            Model::single(View::Skeptical),
        ),
        payoff: PayoffSpec::new(OwnUtility::Quadratic { cost: 4.0 }, beta),
        alpha: 0.0,
        delta: 1.0,
        mode: Mode::Full,
        assignment: None,
        effort_grid: EffortGrid::new(1.0, 401),
        seed: Some(17),
    }
}

/// Same bandit parameters with a productive skeptical view (`r = 0.5`),
/// which makes the view pair equally falsifiable.
pub fn bandit_half(beta: f64) -> GameConfig {
    let mut cfg = section2(beta);
    cfg.techs = vec![bandit_tech(0.5)];
    cfg
}

/// Two identical breakthrough technologies with horizontally disagreeing
/// players: each is optimistic about her own approach only.
pub fn section2_two_tech(beta: f64) -> GameConfig {
    let mut cfg = section2(beta);
    cfg.techs = vec![bandit_tech(0.0), bandit_tech(0.0)];
    cfg.process = TrueProcess::from_views(vec![View::Optimistic, View::Optimistic]);
    cfg.initial_models = (
        Model::pair(View::Optimistic, View::Skeptical),
        Model::pair(View::Skeptical, View::Optimistic),
    );
    cfg
}

/// Horizontal disagreement over two equally falsifiable bandit technologies.
pub fn bandit_half_two_tech(beta: f64) -> GameConfig {
    let mut cfg = section2_two_tech(beta);
    cfg.techs = vec![bandit_tech(0.5), bandit_tech(0.5)];
    cfg
}

/// Uniform-noise linear technology: optimistic mean slope 1, noise half-width
/// 5, quadratic cost `e^2 / 2`, test size 0.05. The true process has mean
/// `e` with the same uniform noise, tabulated on the effort grid.
///
/// The 875-atom hint puts the output cell width at 0.016, a divisor of the
/// effort step, so view shifts land exactly on output cells and the switch
/// probability is exact on the whole grid.
pub fn example3(beta: f64) -> GameConfig {
    let tech = TechnologyViews::new(
        ViewFamily::UniformLinear {
            mean_slope: 1.0,
            noise_half_width: 5.0,
        },
        4.0,
        875,
    )
    .expect("valid uniform-linear family");
    let grid = EffortGrid::new(4.0, 251);
    let efforts: Vec<f64> = grid.values().collect();
    let table =
        ProcessTable::linear_uniform(&tech, 1.0, &efforts).expect("uniform process table");
    GameConfig {
        techs: vec![tech],
        process: TrueProcess::new(vec![ProcessSpec::Table(table)]),
        initial_models: (
            Model::single(View::Optimistic),
            Model::single(View::Skeptical),
        ),
        payoff: PayoffSpec::new(OwnUtility::Quadratic { cost: 1.0 }, beta),
        alpha: 0.05,
        delta: 1.0,
        mode: Mode::Full,
        assignment: None,
        effort_grid: grid,
        seed: Some(17),
    }
}

/// Linear means (slopes 1 and 0.5) plus symmetric triangular noise. The cell
/// width 0.0125 divides both slope steps on quarter-unit efforts, keeping the
/// falsifiability reflection exact there.
pub fn additive_noise_tech() -> TechnologyViews {
    TechnologyViews::new(
        ViewFamily::AdditiveNoise {
            optimistic_slope: 1.0,
            skeptical_slope: 0.5,
            noise: NoiseKind::Triangular { half_width: 0.5 },
        },
        2.0,
        240,
    )
    .expect("valid additive-noise family")
}

/// Game over the additive-noise technology.
pub fn additive_noise(beta: f64) -> GameConfig {
    GameConfig {
        techs: vec![additive_noise_tech()],
        process: TrueProcess::from_views(vec![View::Optimistic]),
        initial_models: (
            Model::single(View::Optimistic),
            Model::single(View::Skeptical),
        ),
        payoff: PayoffSpec::new(OwnUtility::Quadratic { cost: 1.0 }, beta),
        alpha: 0.05,
        delta: 1.0,
        mode: Mode::Full,
        assignment: None,
        effort_grid: EffortGrid::new(2.0, 81),
        seed: Some(17),
    }
}

/// Horizontal disagreement over two identical uniform-noise technologies.
pub fn example3_two_tech(beta: f64) -> GameConfig {
    let one = example3(beta);
    let tech = one.techs[0].clone();
    let mut cfg = one;
    cfg.techs = vec![tech.clone(), tech];
    cfg.process = TrueProcess::from_views(vec![View::Optimistic, View::Optimistic]);
    cfg.initial_models = (
        Model::pair(View::Optimistic, View::Skeptical),
        Model::pair(View::Skeptical, View::Optimistic),
    );
    cfg
}

fn inverse_info_with_sigma(beta: f64, sigma: f64) -> GameConfig {
    let tech = TechnologyViews::new(
        ViewFamily::InverseInfoLinear {
            baseline: 5.0,
            optimistic_slope: 0.5,
            skeptical_slope: 1.0,
            sigma,
        },
        8.0,
        161,
    )
    .expect("valid inverse-info family");
    let grid = EffortGrid::new(2.0, 81);
    let efforts: Vec<f64> = grid.values().collect();
    let table = TabulatedUtility::exp_quadratic(tech.support(), &efforts, 0.5, 5.0, 1.0);
    GameConfig {
        techs: vec![tech],
        process: TrueProcess::from_views(vec![View::Optimistic]),
        initial_models: (
            Model::single(View::Optimistic),
            Model::single(View::Skeptical),
        ),
        payoff: PayoffSpec::new(OwnUtility::Tabulated(table), beta),
        alpha: 0.05,
        delta: 1.0,
        mode: Mode::Full,
        assignment: None,
        effort_grid: grid,
        seed: Some(17),
    }
}

/// The inverse-informativeness family: Gaussian views whose predictions
/// differ most at zero effort. Output utility is `exp((y - 5) / 2) - e^2 / 2`,
/// tabulated on the grid; the convex output utility keeps the optimistic
/// static optimum above the skeptical one, which a linear output utility
/// cannot do when the skeptical mean slope is the steeper one.
///
/// With unit noise the views are nearly five standard deviations apart, so
/// the switch test is close to perfect and the persuasion margin is flat:
/// equilibrium efforts stay at the static optima. See [`inverse_info_noisy`]
/// for a variant where the margin moves efforts visibly.
pub fn inverse_info(beta: f64) -> GameConfig {
    inverse_info_with_sigma(beta, 1.0)
}

/// Same family with noisier output (`sigma = 3`), which keeps the switch
/// test's power interior: the direction of the persuasion incentive is then
/// visible in equilibrium efforts at grid resolution.
pub fn inverse_info_noisy(beta: f64) -> GameConfig {
    inverse_info_with_sigma(beta, 3.0)
}
