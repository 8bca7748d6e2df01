//! Expected-output and payoff evaluation under the true process, and the
//! team-comparison verifiers.
//!
//! The exact evaluator enumerates the joint first-period outcome classes of
//! both players' switch tests (including boundary randomization mass) and
//! composes the second-period conditional outputs; the Monte-Carlo evaluator
//! draws seeded sample paths in fixed-size chunks with one derived stream per
//! chunk, so results are deterministic for a given seed.

use crate::experiments::check_equal_falsifiability;
use crate::game::{
    first_period_objective, second_period_rule, solve_equilibrium, solve_second_period,
    GameConfig, GameError, Mode, OwnUtility, SecondPeriodRule, StrategyProfile,
};
use crate::grid::EffortGrid;
use crate::switching::{
    build_test, class_masses, combine, mirror, AtomClass, Measure, PlayerAction, SwitchError,
    SwitchTest,
};
use crate::views::{
    validate_assumptions, Model, ProcessSpec, TrueProcess, View, ViewError,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Monte-Carlo paths per derived random stream.
const MC_CHUNK: usize = 1 << 16;
/// Fixed stride between derived stream seeds.
const MC_SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("Monte Carlo evaluation requires a seed")]
    SeedRequired,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    View(#[from] ViewError),
    #[error(transparent)]
    Switch(#[from] SwitchError),
}

/// How a team outcome was computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMethod {
    Exact,
    MonteCarlo {
        paths: usize,
        seed: u64,
        /// Standard error of the total-output estimate.
        std_error: f64,
    },
}

/// Evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalRequest {
    Exact,
    MonteCarlo { paths: usize },
}

/// Expected outputs, switch probabilities, and payoffs of one equilibrium
/// under the true process.
#[derive(Debug, Clone)]
pub struct TeamOutcome {
    pub first_actions: [PlayerAction; 2],
    /// Second-period action if the player keeps her model / switches.
    pub stay_actions: [PlayerAction; 2],
    pub switch_actions: [PlayerAction; 2],
    pub first_output: [f64; 2],
    pub second_output: [f64; 2],
    /// Total expected team output over both periods.
    pub total: f64,
    /// Probability that each player abandons her initial model.
    pub switch_prob: [f64; 2],
    /// Expected two-period objective payoff per player under the true process.
    pub payoffs: [f64; 2],
    pub method: EvalMethod,
}

fn q_mean(cfg: &GameConfig, action: PlayerAction) -> Result<f64, EvalError> {
    Ok(cfg
        .process
        .expected_output(&cfg.techs, action.tech, action.effort)?)
}

fn own_utility_under_q(cfg: &GameConfig, action: PlayerAction) -> Result<f64, EvalError> {
    let pmf = cfg
        .process
        .pmf(&cfg.techs, action.tech, action.effort)?;
    Ok(cfg.payoff.expected_own_utility(
        cfg.techs[action.tech].support(),
        &pmf,
        action.effort,
    ))
}

/// Joint distribution over the four switch events, by exact enumeration of
/// the players' outcome classes under the true process.
fn switch_event_distribution(
    cfg: &GameConfig,
    tests: &[SwitchTest; 2],
    first: &[PlayerAction; 2],
) -> Result<[[f64; 2]; 2], EvalError> {
    // Group each player's output atoms by their class in player A's test;
    // the class in player B's test is the mirror image.
    let mut groups: [Vec<(AtomClass, f64)>; 2] = [Vec::new(), Vec::new()];
    for player in 0..2 {
        let pmf = cfg
            .process
            .pmf(&cfg.techs, first[player].tech, first[player].effort)?;
        let cm = class_masses(tests[0].atom_classes(player), &pmf);
        let mut g = Vec::with_capacity(cm.finite.len() + 2);
        if cm.off > 0.0 {
            g.push((AtomClass::Off, cm.off));
        }
        if cm.inf > 0.0 {
            g.push((AtomClass::Infinite, cm.inf));
        }
        for (r, m) in cm.finite {
            g.push((AtomClass::Finite(r), m));
        }
        groups[player] = g;
    }
    let mut dist = [[0.0f64; 2]; 2];
    for &(ca, wa) in &groups[0] {
        for &(cb, wb) in &groups[1] {
            let w = wa * wb;
            if w <= 0.0 {
                continue;
            }
            let joint_a = combine(ca, cb);
            let pa = tests[0].decide(joint_a);
            let pb = tests[1].decide(mirror(joint_a));
            dist[0][0] += w * (1.0 - pa) * (1.0 - pb);
            dist[0][1] += w * (1.0 - pa) * pb;
            dist[1][0] += w * pa * (1.0 - pb);
            dist[1][1] += w * pa * pb;
        }
    }
    Ok(dist)
}

/// Exact evaluation of one first-period action profile.
pub fn exact_outcome(
    cfg: &GameConfig,
    second: &SecondPeriodRule,
    first: &[PlayerAction; 2],
) -> Result<TeamOutcome, EvalError> {
    let (ma, mb) = (&cfg.initial_models.0, &cfg.initial_models.1);
    let switching_on = ma != mb && cfg.mode != Mode::Unaware;

    let stay = [second[ma], second[mb]];
    let swapped = [second[mb], second[ma]];
    let first_output = [q_mean(cfg, first[0])?, q_mean(cfg, first[1])?];

    let dist = if switching_on {
        let tests = [
            build_test(ma, mb, *first, &cfg.techs, cfg.alpha)?,
            build_test(mb, ma, *first, &cfg.techs, cfg.alpha)?,
        ];
        switch_event_distribution(cfg, &tests, first)?
    } else {
        [[1.0, 0.0], [0.0, 0.0]]
    };
    let switch_prob = [dist[1][0] + dist[1][1], dist[0][1] + dist[1][1]];

    let mut second_output = [0.0f64; 2];
    let mut second_own_u = [0.0f64; 2];
    for (sa, row) in dist.iter().enumerate() {
        for (sb, &w) in row.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let actions = [
                if sa == 1 { swapped[0] } else { stay[0] },
                if sb == 1 { swapped[1] } else { stay[1] },
            ];
            for player in 0..2 {
                second_output[player] += w * q_mean(cfg, actions[player])?;
                second_own_u[player] += w * own_utility_under_q(cfg, actions[player])?;
            }
        }
    }

    let beta = cfg.payoff.externality_slope;
    let payoffs = [
        own_utility_under_q(cfg, first[0])?
            + second_own_u[0]
            + beta * (first_output[1] + second_output[1]),
        own_utility_under_q(cfg, first[1])?
            + second_own_u[1]
            + beta * (first_output[0] + second_output[0]),
    ];

    Ok(TeamOutcome {
        first_actions: *first,
        stay_actions: stay,
        switch_actions: swapped,
        first_output,
        second_output,
        total: first_output[0] + first_output[1] + second_output[0] + second_output[1],
        switch_prob,
        payoffs,
        method: EvalMethod::Exact,
    })
}

/// Cumulative distribution for inverse-transform sampling on a support.
struct Sampler {
    values: Vec<f64>,
    cum: Vec<f64>,
}

impl Sampler {
    fn new(values: &[f64], pmf: &[f64]) -> Sampler {
        let mut cum = Vec::with_capacity(pmf.len());
        let mut acc = 0.0;
        for p in pmf {
            acc += p;
            cum.push(acc);
        }
        Sampler {
            values: values.to_vec(),
            cum,
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, f64) {
        let u: f64 = rng.gen();
        let i = self
            .cum
            .partition_point(|c| *c < u)
            .min(self.values.len() - 1);
        (i, self.values[i])
    }
}

struct McAccumulator {
    total_sum: f64,
    total_sq: f64,
    out: [[f64; 2]; 2],
    switches: [f64; 2],
    payoff: [f64; 2],
    n: usize,
}

impl McAccumulator {
    fn zero() -> McAccumulator {
        McAccumulator {
            total_sum: 0.0,
            total_sq: 0.0,
            out: [[0.0; 2]; 2],
            switches: [0.0; 2],
            payoff: [0.0; 2],
            n: 0,
        }
    }

    fn merge(mut self, other: McAccumulator) -> McAccumulator {
        self.total_sum += other.total_sum;
        self.total_sq += other.total_sq;
        for t in 0..2 {
            for p in 0..2 {
                self.out[t][p] += other.out[t][p];
            }
        }
        for p in 0..2 {
            self.switches[p] += other.switches[p];
            self.payoff[p] += other.payoff[p];
        }
        self.n += other.n;
        self
    }
}

/// Monte-Carlo evaluation with `paths` seeded sample paths.
pub fn mc_outcome(
    cfg: &GameConfig,
    second: &SecondPeriodRule,
    first: &[PlayerAction; 2],
    paths: usize,
    seed: u64,
) -> Result<TeamOutcome, EvalError> {
    let (ma, mb) = (&cfg.initial_models.0, &cfg.initial_models.1);
    let switching_on = ma != mb && cfg.mode != Mode::Unaware;
    let tests = if switching_on {
        Some([
            build_test(ma, mb, *first, &cfg.techs, cfg.alpha)?,
            build_test(mb, ma, *first, &cfg.techs, cfg.alpha)?,
        ])
    } else {
        None
    };

    let stay = [second[ma], second[mb]];
    let swapped = [second[mb], second[ma]];
    let sampler_for = |action: PlayerAction| -> Result<Sampler, EvalError> {
        let pmf = cfg.process.pmf(&cfg.techs, action.tech, action.effort)?;
        Ok(Sampler::new(
            cfg.techs[action.tech].support().values(),
            &pmf,
        ))
    };
    let first_s = [sampler_for(first[0])?, sampler_for(first[1])?];
    let stay_s = [sampler_for(stay[0])?, sampler_for(stay[1])?];
    let switch_s = [sampler_for(swapped[0])?, sampler_for(swapped[1])?];

    let utility = |action: PlayerAction, atom: usize, y: f64| -> f64 {
        match &cfg.payoff.own {
            OwnUtility::Quadratic { cost } => y - 0.5 * cost * action.effort * action.effort,
            OwnUtility::Tabulated(t) => t.value_at(atom, action.effort),
        }
    };

    let n_chunks = paths.div_ceil(MC_CHUNK);
    let beta = cfg.payoff.externality_slope;
    let acc = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng =
                ChaCha12Rng::seed_from_u64(seed.wrapping_add(MC_SEED_STRIDE.wrapping_mul(chunk as u64 + 1)));
            let mut acc = McAccumulator::zero();
            let lo = chunk * MC_CHUNK;
            let hi = (lo + MC_CHUNK).min(paths);
            for _ in lo..hi {
                let (ia, ya) = first_s[0].draw(&mut rng);
                let (ib, yb) = first_s[1].draw(&mut rng);
                let (swa, swb) = match &tests {
                    Some(ts) => (
                        ts[0].apply(&cfg.techs, (ya, yb), &mut rng),
                        ts[1].apply(&cfg.techs, (ya, yb), &mut rng),
                    ),
                    None => (false, false),
                };
                let (a2, (i2a, y2a)) = if swa {
                    (swapped[0], switch_s[0].draw(&mut rng))
                } else {
                    (stay[0], stay_s[0].draw(&mut rng))
                };
                let (b2, (i2b, y2b)) = if swb {
                    (swapped[1], switch_s[1].draw(&mut rng))
                } else {
                    (stay[1], stay_s[1].draw(&mut rng))
                };
                let total = ya + yb + y2a + y2b;
                acc.total_sum += total;
                acc.total_sq += total * total;
                acc.out[0][0] += ya;
                acc.out[0][1] += yb;
                acc.out[1][0] += y2a;
                acc.out[1][1] += y2b;
                acc.switches[0] += swa as u8 as f64;
                acc.switches[1] += swb as u8 as f64;
                acc.payoff[0] +=
                    utility(first[0], ia, ya) + utility(a2, i2a, y2a) + beta * (yb + y2b);
                acc.payoff[1] +=
                    utility(first[1], ib, yb) + utility(b2, i2b, y2b) + beta * (ya + y2a);
                acc.n += 1;
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(McAccumulator::zero(), McAccumulator::merge);

    let n = acc.n as f64;
    let mean_total = acc.total_sum / n;
    let var = (acc.total_sq / n - mean_total * mean_total).max(0.0);
    let std_error = (var / n).sqrt();
    Ok(TeamOutcome {
        first_actions: *first,
        stay_actions: stay,
        switch_actions: swapped,
        first_output: [acc.out[0][0] / n, acc.out[0][1] / n],
        second_output: [acc.out[1][0] / n, acc.out[1][1] / n],
        total: mean_total,
        switch_prob: [acc.switches[0] / n, acc.switches[1] / n],
        payoffs: [acc.payoff[0] / n, acc.payoff[1] / n],
        method: EvalMethod::MonteCarlo {
            paths,
            seed,
            std_error,
        },
    })
}

/// Exact outcomes of every equilibrium in the profile, in profile order.
pub fn exact_outcomes(
    cfg: &GameConfig,
    profile: &StrategyProfile,
) -> Result<Vec<TeamOutcome>, EvalError> {
    profile
        .equilibria
        .iter()
        .map(|eq| exact_outcome(cfg, &profile.second_period, eq))
        .collect()
}

/// Expected team output of the most productive equilibrium in the profile.
///
/// The equilibrium is always selected by exact enumeration; when Monte Carlo
/// is requested the selected equilibrium is then re-evaluated by simulation
/// (a seed must be configured).
pub fn expected_team_output(
    cfg: &GameConfig,
    profile: &StrategyProfile,
    request: EvalRequest,
) -> Result<TeamOutcome, EvalError> {
    let all = exact_outcomes(cfg, profile)?;
    let best = all
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total.partial_cmp(&b.1.total).expect("finite totals"))
        .map(|(i, _)| i)
        .expect("at least one equilibrium");
    match request {
        EvalRequest::Exact => Ok(all.into_iter().nth(best).expect("chosen index")),
        EvalRequest::MonteCarlo { paths } => {
            let seed = cfg.seed.ok_or(EvalError::SeedRequired)?;
            mc_outcome(
                cfg,
                &profile.second_period,
                &profile.equilibria[best],
                paths,
                seed,
            )
        }
    }
}

/// Solve and evaluate: the expected output of the most productive equilibrium.
pub fn y_hat(cfg: &GameConfig) -> Result<(TeamOutcome, StrategyProfile), EvalError> {
    let profile = solve_equilibrium(cfg)?;
    let outcome = expected_team_output(cfg, &profile, EvalRequest::Exact)?;
    Ok((outcome, profile))
}

/// One verdict line of a verification report.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: String,
    pub detail: String,
    /// `None` for informational lines.
    pub pass: Option<bool>,
}

impl CheckLine {
    pub fn check(label: impl Into<String>, detail: impl Into<String>, pass: bool) -> CheckLine {
        CheckLine {
            label: label.into(),
            detail: detail.into(),
            pass: Some(pass),
        }
    }

    pub fn info(label: impl Into<String>, detail: impl Into<String>) -> CheckLine {
        CheckLine {
            label: label.into(),
            detail: detail.into(),
            pass: None,
        }
    }
}

impl std::fmt::Display for CheckLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.pass {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "info",
        };
        write!(f, "[{tag}] {}: {}", self.label, self.detail)
    }
}

/// A solved-and-evaluated team, for tabular output.
#[derive(Debug, Clone)]
pub struct EvaluatedTeam {
    pub model_a: Model,
    pub model_b: Model,
    pub mode: Mode,
    pub q_label: String,
    pub outcome: TeamOutcome,
}

/// Human-readable description of the configured true process.
pub fn q_label(cfg: &GameConfig) -> String {
    (0..cfg.techs.len())
        .map(|k| match cfg.process.spec(k) {
            ProcessSpec::View(v) => v.letter().to_string(),
            ProcessSpec::Table(_) => "Q".to_string(),
        })
        .collect::<Vec<_>>()
        .join("")
}

fn eval_team(cfg: &GameConfig) -> Result<EvaluatedTeam, EvalError> {
    let (outcome, _) = y_hat(cfg)?;
    Ok(EvaluatedTeam {
        model_a: cfg.initial_models.0.clone(),
        model_b: cfg.initial_models.1.clone(),
        mode: cfg.mode,
        q_label: q_label(cfg),
        outcome,
    })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.9}")
}

/// Central difference with one-sided fallbacks at the domain ends.
fn central_diff(f: &mut dyn FnMut(f64) -> Result<f64, EvalError>, x: f64, h: f64, lo: f64, hi: f64)
    -> Result<f64, EvalError> {
    let a = (x - h).max(lo);
    let b = (x + h).min(hi);
    Ok((f(b)? - f(a)?) / (b - a))
}

/// Marginal static utility of the optimistic view at effort `e` (finite
/// difference, step = one grid cell).
pub fn static_marginal_utility(cfg: &GameConfig, view: View, e: f64) -> Result<f64, EvalError> {
    let tech = &cfg.techs[0];
    let mut f = |x: f64| -> Result<f64, EvalError> {
        Ok(cfg
            .payoff
            .expected_own_utility(tech.support(), &tech.pmf(view, x)?, x))
    };
    central_diff(&mut f, e, cfg.effort_grid.step(), 0.0, cfg.effort_grid.bound())
}

/// Marginal (in the optimist's effort) probability that the skeptic's test
/// rejects, evaluated under the optimistic view as the truth.
pub fn switch_prob_marginal(cfg: &GameConfig, e_a: f64, e_b: f64) -> Result<f64, EvalError> {
    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let mut f = |x: f64| -> Result<f64, EvalError> {
        let test = build_test(
            &l,
            &h,
            [
                PlayerAction { tech: 0, effort: x },
                PlayerAction { tech: 0, effort: e_b },
            ],
            &cfg.techs,
            cfg.alpha,
        )?;
        Ok(test.switch_probability(&cfg.techs, Measure::Model(&h))?)
    };
    central_diff(&mut f, e_a, cfg.effort_grid.step(), 0.0, cfg.effort_grid.bound())
}

/// Sufficient-condition report for the strong-externalities comparison.
#[derive(Debug, Clone)]
pub struct Prop3Report {
    /// Subjective externality gain from converting the skeptic.
    pub delta: f64,
    /// Effort at which the true process quadruples the static expected
    /// output; `None` when the bound `b` is too small.
    pub e_hat: Option<f64>,
    /// Largest value of `-dEu/dphi` over the stated effort ranges.
    pub bound_sup: Option<f64>,
    /// `delta > bound_sup` over the whole range (`None` when not computable).
    pub sufficient_met: Option<bool>,
    pub y_disagree: f64,
    pub y_optimists: f64,
    pub realized_better: bool,
}

fn prop3_report(cfg: &GameConfig) -> Result<Prop3Report, EvalError> {
    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let cfg_hl = cfg.with_models(h.clone(), l.clone());
    let second = second_period_rule(&cfg_hl)?;
    let e_h = second[&h].effort;
    let e_l = second[&l].effort;
    let delta = crate::game::conversion_gain(&cfg_hl, 0, &second)?;

    // e_hat solves E_Q[Y | e] = 4 E_Q[Y | e^H]; the mean is monotone under
    // FOSD, so bisection applies.
    let target = 4.0 * cfg.process.expected_output(&cfg.techs, 0, e_h)?;
    let b = cfg.effort_grid.bound();
    let mean_at = |e: f64| cfg.process.expected_output(&cfg.techs, 0, e);
    let e_hat = if mean_at(b)? < target - 1e-12 {
        None
    } else {
        let mut lo = 0.0;
        let mut hi = b;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mean_at(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    };

    let bound_sup = match e_hat {
        None => None,
        Some(ehat) => {
            let step = cfg.effort_grid.step();
            let mut sup = f64::NEG_INFINITY;
            let n_a = (((ehat - e_h) / step).ceil() as usize).max(1);
            let n_b = ((e_l / step).ceil() as usize).max(1);
            for i in 0..=n_a {
                let ea = (e_h + i as f64 * step).min(ehat);
                for j in 0..=n_b {
                    let eb = (j as f64 * step).min(e_l);
                    let du = static_marginal_utility(cfg, View::Optimistic, ea)?;
                    let dphi = switch_prob_marginal(cfg, ea, eb)?;
                    let bound = if dphi.abs() < 1e-14 {
                        f64::INFINITY
                    } else {
                        -du / dphi
                    };
                    sup = sup.max(bound);
                    if j as f64 * step >= e_l {
                        break;
                    }
                }
                if e_h + i as f64 * step >= ehat {
                    break;
                }
            }
            Some(sup)
        }
    };

    let (y_hl, _) = y_hat(&cfg_hl)?;
    let (y_hh, _) = y_hat(&cfg.with_models(h.clone(), h.clone()))?;
    Ok(Prop3Report {
        delta,
        e_hat,
        bound_sup,
        sufficient_met: bound_sup.map(|s| delta > s),
        y_disagree: y_hl.total,
        y_optimists: y_hh.total,
        realized_better: y_hl.total > y_hh.total + 1e-12,
    })
}

/// Benchmark-mode comparison for one true-process state.
#[derive(Debug, Clone)]
pub struct BenchmarkCase {
    pub q: View,
    /// `2 Y_u(H,L) - (Y_u(H,H) + Y_u(L,L))`; zero for unaware players.
    pub unaware_gap: f64,
    pub myopic_lhs: f64,
    pub myopic_rhs: f64,
    /// The myopic inequality points the right way for this `q`.
    pub myopic_direction_ok: bool,
    /// Like-minded team outputs agree across all three modes.
    pub like_minded_modes_identical: bool,
}

#[derive(Debug, Clone)]
pub struct BenchmarkReport {
    pub cases: Vec<BenchmarkCase>,
    pub lines: Vec<CheckLine>,
    pub teams: Vec<EvaluatedTeam>,
}

/// Evaluate the unaware and myopic benchmarks against the full mode on a
/// single-technology configuration, for the true process equal to each view.
pub fn benchmark_modes(cfg: &GameConfig) -> Result<BenchmarkReport, EvalError> {
    if cfg.techs.len() != 1 {
        return Err(GameError::Invalid("benchmark comparison requires one technology".into()).into());
    }
    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let mut lines = Vec::new();
    let mut teams = Vec::new();
    let mut cases = Vec::new();
    for q in [View::Optimistic, View::Skeptical] {
        let base = cfg.with_process(TrueProcess::from_views(vec![q]));
        let mut y = |ma: &Model, mb: &Model, mode: Mode| -> Result<f64, EvalError> {
            let team = eval_team(&base.with_models(ma.clone(), mb.clone()).with_mode(mode))?;
            let total = team.outcome.total;
            teams.push(team);
            Ok(total)
        };
        let yu_hl = y(&h, &l, Mode::Unaware)?;
        let yu_hh = y(&h, &h, Mode::Unaware)?;
        let yu_ll = y(&l, &l, Mode::Unaware)?;
        let unaware_gap = 2.0 * yu_hl - (yu_hh + yu_ll);
        lines.push(CheckLine::check(
            format!("unaware additivity (Q={})", q.letter()),
            format!("2*{} = {} + {} gap {:+.3e}", fmt_f(yu_hl), fmt_f(yu_hh), fmt_f(yu_ll), unaware_gap),
            unaware_gap.abs() <= 1e-12,
        ));

        let yo_hl = y(&h, &l, Mode::Myopic)?;
        let yo_hh = y(&h, &h, Mode::Myopic)?;
        let yo_ll = y(&l, &l, Mode::Myopic)?;
        let (myopic_lhs, myopic_rhs) = (2.0 * yo_hl, yo_hh + yo_ll);
        let myopic_direction_ok = match q {
            View::Optimistic => myopic_lhs >= myopic_rhs - 1e-12,
            View::Skeptical => myopic_lhs <= myopic_rhs + 1e-12,
        };
        lines.push(CheckLine::check(
            format!("myopic direction (Q={})", q.letter()),
            format!(
                "2*Y_o(H,L) = {} {} {} = Y_o(H,H)+Y_o(L,L)",
                fmt_f(myopic_lhs),
                if q == View::Optimistic { ">=" } else { "<=" },
                fmt_f(myopic_rhs)
            ),
            myopic_direction_ok,
        ));

        let mut identical = true;
        for m in [&h, &l] {
            let full = y(m, m, Mode::Full)?;
            let myo = y(m, m, Mode::Myopic)?;
            let una = y(m, m, Mode::Unaware)?;
            if (full - myo).abs() > 1e-12 || (full - una).abs() > 1e-12 {
                identical = false;
            }
        }
        lines.push(CheckLine::check(
            format!("like-minded mode invariance (Q={})", q.letter()),
            "Y(m,m,Q) identical across full/myopic/unaware",
            identical,
        ));
        cases.push(BenchmarkCase {
            q,
            unaware_gap,
            myopic_lhs,
            myopic_rhs,
            myopic_direction_ok,
            like_minded_modes_identical: identical,
        });
    }
    Ok(BenchmarkReport {
        cases,
        lines,
        teams,
    })
}

/// Team-formation comparison for one true-process state.
#[derive(Debug, Clone)]
pub struct FormationCase {
    pub q: View,
    pub y_disagree: f64,
    pub y_optimists: f64,
    pub y_skeptics: f64,
    /// `2 Y(H,L,Q) >= Y(H,H,Q) + Y(L,L,Q)`.
    pub holds: bool,
    pub strict: bool,
}

/// One-technology comparison report: team formation under both true views,
/// the strong-externalities sufficient condition, and the benchmarks.
#[derive(Debug, Clone)]
pub struct OneTechReport {
    /// The skeptical static optimum is zero (premise of the formation
    /// comparison); flagged, not fatal.
    pub premise_skeptic_idle: bool,
    pub formation: Vec<FormationCase>,
    pub prop3: Prop3Report,
    pub benchmark: BenchmarkReport,
    pub lines: Vec<CheckLine>,
    pub teams: Vec<EvaluatedTeam>,
}

pub fn verify_team_comparisons(cfg: &GameConfig) -> Result<OneTechReport, EvalError> {
    if cfg.techs.len() != 1 {
        return Err(GameError::Invalid("one-technology comparison requires one technology".into()).into());
    }
    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let mut lines = Vec::new();
    let mut teams = Vec::new();

    let second = second_period_rule(cfg)?;
    let e_l = second[&l].effort;
    let premise_skeptic_idle = e_l.abs() <= cfg.effort_grid.fine_step();
    if !premise_skeptic_idle {
        lines.push(CheckLine::info(
            "formation premise",
            format!("skeptical static effort {} is not zero; formation comparison may not apply", fmt_f(e_l)),
        ));
    }

    let mut formation = Vec::new();
    for q in [View::Optimistic, View::Skeptical] {
        let base = cfg.with_process(TrueProcess::from_views(vec![q]));
        let t_hl = eval_team(&base.with_models(h.clone(), l.clone()))?;
        let t_hh = eval_team(&base.with_models(h.clone(), h.clone()))?;
        let t_ll = eval_team(&base.with_models(l.clone(), l.clone()))?;
        let (y_hl, y_hh, y_ll) = (t_hl.outcome.total, t_hh.outcome.total, t_ll.outcome.total);
        let lhs = 2.0 * y_hl;
        let rhs = y_hh + y_ll;
        let holds = lhs >= rhs - 1e-12;
        let strict = lhs > rhs + 1e-9;
        let expected_to_hold = q == View::Optimistic;
        lines.push(CheckLine {
            label: format!("team formation (Q={})", q.letter()),
            detail: format!("2*Y(H,L) = {} vs {} = Y(H,H)+Y(L,L)", fmt_f(lhs), fmt_f(rhs)),
            pass: if expected_to_hold { Some(holds) } else { None },
        });
        teams.extend([t_hl, t_hh, t_ll]);
        formation.push(FormationCase {
            q,
            y_disagree: y_hl,
            y_optimists: y_hh,
            y_skeptics: y_ll,
            holds,
            strict,
        });
    }

    let prop3 = prop3_report(cfg)?;
    lines.push(CheckLine::info(
        "strong externalities",
        match (prop3.e_hat, prop3.bound_sup) {
            (Some(eh), Some(bs)) => format!(
                "Delta = {} vs bound sup {} over e_A in [e_H, {}]; sufficient: {}",
                fmt_f(prop3.delta),
                if bs.is_finite() { fmt_f(bs) } else { "inf".into() },
                fmt_f(eh),
                prop3.sufficient_met == Some(true),
            ),
            _ => "e_hat unattainable within the effort bound".into(),
        },
    ));
    if prop3.sufficient_met == Some(true) {
        lines.push(CheckLine::check(
            "strong externalities implication",
            format!(
                "Y(H,L) = {} > {} = Y(H,H)",
                fmt_f(prop3.y_disagree),
                fmt_f(prop3.y_optimists)
            ),
            prop3.realized_better,
        ));
    } else {
        lines.push(CheckLine::info(
            "optimists comparison",
            format!(
                "Y(H,L) = {} vs Y(H,H) = {}",
                fmt_f(prop3.y_disagree),
                fmt_f(prop3.y_optimists)
            ),
        ));
    }

    let benchmark = benchmark_modes(cfg)?;
    lines.extend(benchmark.lines.iter().cloned());
    teams.extend(benchmark.teams.iter().cloned());

    Ok(OneTechReport {
        premise_skeptic_idle,
        formation,
        prop3,
        benchmark,
        lines,
        teams,
    })
}

/// Horizontal-disagreement comparison for a fixed or endogenous technology
/// choice.
#[derive(Debug, Clone)]
pub struct TwoTechCase {
    pub efforts: [f64; 2],
    pub techs: [usize; 2],
    pub e_high: f64,
    /// Both first-period efforts weakly exceed the optimistic static optimum.
    pub efforts_above_static: bool,
    pub y_horizontal: f64,
    pub y_best_like_minded: f64,
    pub holds_vs_all: bool,
    pub strict: bool,
}

/// Average-performance comparison when the two opposing models are equally
/// likely to be correct.
#[derive(Debug, Clone)]
pub struct MixtureCase {
    pub disagree_mean: f64,
    pub like_minded_means: Vec<(String, f64)>,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct TwoTechReport {
    pub equally_falsifiable: bool,
    pub q_equal_across_techs: bool,
    pub fixed: TwoTechCase,
    /// Present only when the views are equally falsifiable.
    pub endogenous: Option<TwoTechCase>,
    pub mixture: Option<MixtureCase>,
    pub lines: Vec<CheckLine>,
    pub teams: Vec<EvaluatedTeam>,
}

fn horizontal_models() -> (Model, Model) {
    (
        Model::pair(View::Optimistic, View::Skeptical),
        Model::pair(View::Skeptical, View::Optimistic),
    )
}

fn two_tech_case(
    cfg: &GameConfig,
    assignment: Option<[usize; 2]>,
    lines: &mut Vec<CheckLine>,
    teams: &mut Vec<EvaluatedTeam>,
    label: &str,
) -> Result<TwoTechCase, EvalError> {
    let (ma, mb) = horizontal_models();
    let cfg_h = cfg.with_models(ma, mb).with_assignment(assignment);
    let team = eval_team(&cfg_h)?;
    let efforts = [
        team.outcome.first_actions[0].effort,
        team.outcome.first_actions[1].effort,
    ];
    let techs_chosen = [
        team.outcome.first_actions[0].tech,
        team.outcome.first_actions[1].tech,
    ];
    let y_horizontal = team.outcome.total;
    teams.push(team);

    let (e_high_action, _) = solve_second_period(
        &Model::pair(View::Optimistic, View::Optimistic),
        &cfg.payoff,
        &cfg.techs,
        &cfg.effort_grid,
    )?;
    let e_high = e_high_action.effort;
    let slack = cfg.effort_grid.fine_step();
    let efforts_above_static = efforts.iter().all(|e| *e >= e_high - slack);
    lines.push(CheckLine::check(
        format!("{label}: efforts above the optimistic static optimum"),
        format!("({}, {}) >= {}", fmt_f(efforts[0]), fmt_f(efforts[1]), fmt_f(e_high)),
        efforts_above_static,
    ));

    // Every like-minded team, over every technology assignment when the
    // horizontal team's assignment was fixed, endogenous otherwise.
    let mut best_like = f64::NEG_INFINITY;
    let assignments: Vec<Option<[usize; 2]>> = if assignment.is_some() {
        vec![
            Some([0, 0]),
            Some([0, 1]),
            Some([1, 0]),
            Some([1, 1]),
        ]
    } else {
        vec![None]
    };
    for m in Model::enumerate(2) {
        for asg in &assignments {
            let team = eval_team(&cfg.with_models(m.clone(), m.clone()).with_assignment(*asg))?;
            best_like = best_like.max(team.outcome.total);
            teams.push(team);
        }
    }
    let holds_vs_all = y_horizontal >= best_like - 1e-12;
    let strict = y_horizontal > best_like + 1e-9;
    lines.push(CheckLine::check(
        format!("{label}: horizontal disagreement vs like-mindedness"),
        format!("Y = {} >= {} = best like-minded", fmt_f(y_horizontal), fmt_f(best_like)),
        holds_vs_all,
    ));
    Ok(TwoTechCase {
        efforts,
        techs: techs_chosen,
        e_high,
        efforts_above_static,
        y_horizontal,
        y_best_like_minded: best_like,
        holds_vs_all,
        strict,
    })
}

pub fn verify_two_tech(cfg: &GameConfig) -> Result<TwoTechReport, EvalError> {
    if cfg.techs.len() != 2 {
        return Err(GameError::Invalid("two-technology comparison requires two technologies".into()).into());
    }
    let mut lines = Vec::new();
    let mut teams = Vec::new();

    // Subsample the base grid so continuous-family shifts stay cell-aligned.
    let stride = ((cfg.effort_grid.len() - 1) / 8).max(1);
    let falsifiability_grid: Vec<f64> = (0..cfg.effort_grid.len())
        .step_by(stride)
        .map(|i| cfg.effort_grid.value(i))
        .collect();
    let equally_falsifiable = cfg
        .techs
        .iter()
        .map(|t| check_equal_falsifiability(t, &falsifiability_grid, 1e-9))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|ok| ok);
    lines.push(CheckLine::info(
        "equal falsifiability",
        format!("{equally_falsifiable}"),
    ));
    let q_equal_across_techs = cfg.process.spec(0) == cfg.process.spec(1);

    let fixed = two_tech_case(cfg, Some([0, 1]), &mut lines, &mut teams, "fixed assignment")?;
    let endogenous = if equally_falsifiable {
        Some(two_tech_case(cfg, None, &mut lines, &mut teams, "endogenous choice")?)
    } else {
        lines.push(CheckLine::info(
            "endogenous choice",
            "not applicable: views are not equally falsifiable",
        ));
        None
    };

    // Mixture comparison: the two opposing models equally likely to be true.
    let mixture = if equally_falsifiable {
        let (ma, mb) = horizontal_models();
        let q_states = [
            TrueProcess::from_views(vec![View::Optimistic, View::Skeptical]),
            TrueProcess::from_views(vec![View::Skeptical, View::Optimistic]),
        ];
        let mut mean_of = |a: &Model, b: &Model| -> Result<f64, EvalError> {
            let mut sum = 0.0;
            for q in &q_states {
                let team = eval_team(&cfg.with_models(a.clone(), b.clone()).with_process(q.clone()))?;
                sum += team.outcome.total;
                teams.push(team);
            }
            Ok(0.5 * sum)
        };
        let disagree_mean = mean_of(&ma, &mb)?;
        let mut like_minded_means = Vec::new();
        let mut holds = true;
        for m in Model::enumerate(2) {
            let mean = mean_of(&m, &m)?;
            if disagree_mean < mean - 1e-12 {
                holds = false;
            }
            like_minded_means.push((m.label(), mean));
        }
        lines.push(CheckLine::check(
            "mixture: equally likely opposing models",
            format!(
                "E_p[Y(horizontal)] = {} vs best like-minded {}",
                fmt_f(disagree_mean),
                fmt_f(
                    like_minded_means
                        .iter()
                        .map(|(_, v)| *v)
                        .fold(f64::NEG_INFINITY, f64::max)
                )
            ),
            holds,
        ));
        Some(MixtureCase {
            disagree_mean,
            like_minded_means,
            holds,
        })
    } else {
        lines.push(CheckLine::info(
            "mixture",
            "not applicable: views are not equally falsifiable",
        ));
        None
    };

    Ok(TwoTechReport {
        equally_falsifiable,
        q_equal_across_techs,
        fixed,
        endogenous,
        mixture,
        lines,
        teams,
    })
}

/// Direction check with reversed informativeness and signed externalities.
#[derive(Debug, Clone)]
pub struct Claim1Report {
    /// Informativeness reversed and externalities negative.
    pub applicable: bool,
    pub informativeness_reversed: bool,
    pub beta: f64,
    pub optimist_effort: f64,
    pub optimist_static: f64,
    /// The first-period effort moves the direction the regime predicts:
    /// above the static optimum for negative externalities, equal for zero,
    /// below for positive.
    pub direction_ok: bool,
    pub lines: Vec<CheckLine>,
}

pub fn verify_claim1_direction(cfg: &GameConfig) -> Result<Claim1Report, EvalError> {
    if cfg.techs.len() != 1 {
        return Err(GameError::Invalid("claim-1 check requires one technology".into()).into());
    }
    let coarse = EffortGrid::new(cfg.effort_grid.bound(), 9);
    let assumptions = validate_assumptions(&cfg.techs, 0, Some(&cfg.process), &cfg.payoff, &coarse)?;
    let reversed = assumptions.informativeness_reversed;
    let beta = cfg.payoff.externality_slope;
    let applicable = reversed && beta < 0.0;

    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let cfg_hl = cfg.with_models(h.clone(), l.clone());
    let profile = solve_equilibrium(&cfg_hl)?;
    let (e_static, _) = solve_second_period(&h, &cfg.payoff, &cfg.techs, &cfg.effort_grid)?;
    let optimist_static = e_static.effort;
    let slack = cfg.effort_grid.fine_step();
    let optimist_effort = if beta > 0.0 {
        profile
            .equilibria
            .iter()
            .map(|eq| eq[0].effort)
            .fold(f64::NEG_INFINITY, f64::max)
    } else {
        profile
            .equilibria
            .iter()
            .map(|eq| eq[0].effort)
            .fold(f64::INFINITY, f64::min)
    };
    let direction_ok = if beta < 0.0 {
        optimist_effort >= optimist_static - slack
    } else if beta > 0.0 {
        optimist_effort <= optimist_static + slack
    } else {
        (optimist_effort - optimist_static).abs() <= slack
    };

    let mut lines = vec![
        CheckLine::info(
            "informativeness",
            if reversed { "reversed (lower effort more informative)" } else { "monotone" }.to_string(),
        ),
        CheckLine::check(
            "first-period direction",
            format!(
                "optimist effort {} vs static {} with externality slope {}",
                fmt_f(optimist_effort),
                fmt_f(optimist_static),
                beta
            ),
            direction_ok,
        ),
    ];
    if !applicable {
        lines.push(CheckLine::info(
            "applicability",
            "reversed-informativeness regime with negative externalities not met; direction reported for the configured regime",
        ));
    }
    Ok(Claim1Report {
        applicable,
        informativeness_reversed: reversed,
        beta,
        optimist_effort,
        optimist_static,
        direction_ok,
        lines,
    })
}

/// Response curves for plotting: rival switch probability and the first
/// period objective as functions of the player's effort.
pub fn response_curves(cfg: &GameConfig) -> Result<Vec<(String, Vec<(f64, f64)>)>, EvalError> {
    let second = second_period_rule(cfg)?;
    let (ma, mb) = (&cfg.initial_models.0, &cfg.initial_models.1);
    let rival_static = second[mb];
    let mut phi_curve = Vec::with_capacity(cfg.effort_grid.len());
    let mut obj_curve = Vec::with_capacity(cfg.effort_grid.len());
    let own_tech = cfg.assignment.map(|a| a[0]).unwrap_or(second[ma].tech);
    for e in cfg.effort_grid.values() {
        let action = PlayerAction {
            tech: own_tech,
            effort: e,
        };
        let test = build_test(mb, ma, [action, rival_static], &cfg.techs, cfg.alpha)?;
        let phi = test.switch_probability(&cfg.techs, Measure::Model(ma))?;
        phi_curve.push((e, phi));
        let v = first_period_objective(cfg, 0, action, rival_static, &second)?;
        obj_curve.push((e, v));
    }
    Ok(vec![
        ("rival_switch_probability".to_string(), phi_curve),
        ("first_period_objective".to_string(), obj_curve),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use approx::assert_abs_diff_eq;

    fn y_of(cfg: &GameConfig) -> f64 {
        y_hat(cfg).unwrap().0.total
    }

    #[test]
    fn section2_exact_outputs() {
        let cfg = presets::section2(2.0);
        let h = Model::single(View::Optimistic);
        let l = Model::single(View::Skeptical);
        // hand enumeration: optimist 0.375 + 0.25, skeptic 0 + 0.375*0.25
        assert_abs_diff_eq!(y_of(&cfg), 0.71875, epsilon = 1e-9);
        assert_abs_diff_eq!(y_of(&cfg.with_models(h.clone(), h.clone())), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(y_of(&cfg.with_models(l.clone(), l)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn section2_outcome_decomposition() {
        let cfg = presets::section2(2.0);
        let (outcome, _) = y_hat(&cfg).unwrap();
        assert_abs_diff_eq!(outcome.first_output[0], 0.375, epsilon = 1e-9);
        assert_abs_diff_eq!(outcome.first_output[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(outcome.second_output[0], 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(outcome.second_output[1], 0.375 * 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(outcome.switch_prob[1], 0.375, epsilon = 1e-9);
        assert_abs_diff_eq!(outcome.switch_prob[0], 0.0, epsilon = 1e-12);
        let sum: f64 = outcome.first_output.iter().sum::<f64>()
            + outcome.second_output.iter().sum::<f64>();
        assert_abs_diff_eq!(outcome.total, sum, epsilon = 1e-12);
    }

    #[test]
    fn strong_externalities_flip_the_optimists_comparison() {
        let h = Model::single(View::Optimistic);
        let weak = presets::section2(2.0);
        assert!(y_of(&weak) < y_of(&weak.with_models(h.clone(), h.clone())));
        let strong = presets::section2(6.0);
        assert_abs_diff_eq!(y_of(&strong), 1.03125, epsilon = 1e-9);
        assert!(y_of(&strong) > y_of(&strong.with_models(h.clone(), h)));
    }

    #[test]
    fn symmetry_of_team_output() {
        for cfg in [presets::section2(2.0), presets::bandit_half(2.0)] {
            let (a, b) = cfg.initial_models.clone();
            let y_ab = y_of(&cfg);
            let y_ba = y_of(&cfg.with_models(b, a));
            assert_abs_diff_eq!(y_ab, y_ba, epsilon = 1e-12);
        }
    }

    #[test]
    fn unaware_mode_is_additive() {
        let cfg = presets::bandit_half(2.0).with_mode(Mode::Unaware);
        let h = Model::single(View::Optimistic);
        let l = Model::single(View::Skeptical);
        let gap = 2.0 * y_of(&cfg)
            - y_of(&cfg.with_models(h.clone(), h))
            - y_of(&cfg.with_models(l.clone(), l));
        assert_abs_diff_eq!(gap, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn monte_carlo_matches_exact() {
        let cfg = presets::section2(2.0);
        let profile = solve_equilibrium(&cfg).unwrap();
        let exact = expected_team_output(&cfg, &profile, EvalRequest::Exact).unwrap();
        let mc = expected_team_output(&cfg, &profile, EvalRequest::MonteCarlo { paths: 200_000 })
            .unwrap();
        let EvalMethod::MonteCarlo { std_error, .. } = mc.method else {
            panic!("expected Monte Carlo method");
        };
        assert!((mc.total - exact.total).abs() <= 4.0 * std_error.max(1e-9));
        // determinism: same seed, same estimate
        let mc2 = expected_team_output(&cfg, &profile, EvalRequest::MonteCarlo { paths: 200_000 })
            .unwrap();
        assert_eq!(mc.total, mc2.total);
    }

    #[test]
    fn monte_carlo_requires_a_seed() {
        let mut cfg = presets::section2(2.0);
        cfg.seed = None;
        let profile = solve_equilibrium(&cfg).unwrap();
        let err = expected_team_output(&cfg, &profile, EvalRequest::MonteCarlo { paths: 1000 });
        assert!(matches!(err, Err(EvalError::SeedRequired)));
    }

    #[test]
    fn one_tech_report_weak_externalities() {
        let rep = verify_team_comparisons(&presets::section2(2.0)).unwrap();
        assert!(rep.premise_skeptic_idle);
        let q_h = &rep.formation[0];
        assert!(q_h.holds && q_h.strict);
        assert_abs_diff_eq!(2.0 * q_h.y_disagree, 1.4375, epsilon = 1e-9);
        assert_abs_diff_eq!(q_h.y_optimists + q_h.y_skeptics, 1.0, epsilon = 1e-9);
        assert!(!rep.prop3.realized_better);
        assert_abs_diff_eq!(rep.prop3.delta, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.prop3.e_hat.unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn one_tech_report_strong_externalities() {
        let rep = verify_team_comparisons(&presets::section2(6.0)).unwrap();
        assert!(rep.prop3.realized_better);
        assert_abs_diff_eq!(rep.prop3.y_disagree, 1.03125, epsilon = 1e-9);
        assert_abs_diff_eq!(rep.prop3.y_optimists, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn prop3_sufficient_condition_implies_the_inequality() {
        // beta = 16 clears the conservative bound sup = 3 on the section-2
        // family (Delta = 16 * 0.25 = 4 > 3).
        let rep = verify_team_comparisons(&presets::section2(16.0)).unwrap();
        assert_eq!(rep.prop3.sufficient_met, Some(true));
        assert!(rep.prop3.realized_better);
    }

    #[test]
    fn finite_differences_match_bandit_closed_forms() {
        let cfg = presets::section2(2.0);
        for e in [0.3, 0.5, 0.8] {
            let du = static_marginal_utility(&cfg, View::Optimistic, e).unwrap();
            assert_abs_diff_eq!(du, 1.0 - 4.0 * e, epsilon = 1e-6);
            let dphi = switch_prob_marginal(&cfg, e, 0.0).unwrap();
            assert_abs_diff_eq!(dphi, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn benchmark_directions_with_active_skeptic() {
        let rep = benchmark_modes(&presets::bandit_half(2.0)).unwrap();
        for case in &rep.cases {
            assert!(case.unaware_gap.abs() <= 1e-12);
            assert!(case.myopic_direction_ok);
            assert!(case.like_minded_modes_identical);
        }
        // strict directions: the skeptic is informative here
        assert!(rep.cases[0].myopic_lhs > rep.cases[0].myopic_rhs + 1e-9);
        assert!(rep.cases[1].myopic_lhs < rep.cases[1].myopic_rhs - 1e-9);
    }

    #[test]
    fn two_tech_report_section2() {
        let rep = verify_two_tech(&presets::section2_two_tech(2.0)).unwrap();
        assert!(!rep.equally_falsifiable); // r = 0
        assert!(rep.q_equal_across_techs);
        assert!(rep.fixed.efforts_above_static);
        assert_abs_diff_eq!(rep.fixed.efforts[0], 0.375, epsilon = 2.5e-4);
        assert_abs_diff_eq!(rep.fixed.efforts[1], 0.375, epsilon = 2.5e-4);
        assert!(rep.fixed.holds_vs_all && rep.fixed.strict);
        assert!(rep.endogenous.is_none());
        assert!(rep.mixture.is_none());
    }

    #[test]
    fn two_tech_report_equally_falsifiable() {
        let rep = verify_two_tech(&presets::bandit_half_two_tech(2.0)).unwrap();
        assert!(rep.equally_falsifiable);
        let endo = rep.endogenous.as_ref().expect("applicable");
        assert!(endo.efforts_above_static);
        assert_eq!(endo.techs, [0, 1]);
        assert!(endo.holds_vs_all);
        let mix = rep.mixture.as_ref().expect("applicable");
        assert!(mix.holds);
    }

    #[test]
    fn claim1_directions() {
        // negative externalities with reversed informativeness: the optimist
        // never works less than her static optimum
        let rep = verify_claim1_direction(&presets::inverse_info(-2.0)).unwrap();
        assert!(rep.applicable && rep.informativeness_reversed);
        assert!(rep.direction_ok, "optimist {} vs static {}", rep.optimist_effort, rep.optimist_static);
        // zero externalities: static behavior exactly
        let rep0 = verify_claim1_direction(&presets::inverse_info(0.0)).unwrap();
        assert!(!rep0.applicable);
        assert!(rep0.direction_ok);
        // positive externalities: the direction reverses (weakly here)
        let rep_pos = verify_claim1_direction(&presets::inverse_info(2.0)).unwrap();
        assert!(!rep_pos.applicable);
        assert!(rep_pos.direction_ok);
    }

    #[test]
    fn claim1_directions_are_strict_with_interior_power() {
        // sigma = 3 keeps the test's power interior, so the persuasion
        // margin moves first-period efforts beyond grid resolution
        let rep = verify_claim1_direction(&presets::inverse_info_noisy(-2.0)).unwrap();
        assert!(rep.applicable && rep.informativeness_reversed);
        assert!(rep.direction_ok);
        assert!(
            rep.optimist_effort > rep.optimist_static + 1e-3,
            "optimist {} vs static {}",
            rep.optimist_effort,
            rep.optimist_static
        );
        let rep_pos = verify_claim1_direction(&presets::inverse_info_noisy(2.0)).unwrap();
        assert!(rep_pos.direction_ok);
        assert!(rep_pos.optimist_effort < rep_pos.optimist_static - 1e-3);
        let rep0 = verify_claim1_direction(&presets::inverse_info_noisy(0.0)).unwrap();
        assert!(rep0.direction_ok);
    }
}
