//! Game configuration, payoffs, and the equilibrium solver.
//!
//! Each player maximizes under her own model. Second-period choices are
//! static optima; first-period choices add the anticipated value of the
//! co-worker's model switch, `phi * Delta`, where `phi` is the rival's
//! switch probability evaluated under the player's own model and `Delta`
//! the subjective externality gain from converting the rival. The first
//! period is solved by simultaneous best-response iteration on the effort
//! grid, initialized at the static optima, with pure fixed points collected
//! from a small lattice of starting points.

use crate::grid::{maximize, refine_around, EffortGrid, GridMax, TIE_TOL};
use crate::switching::{build_test, Measure, PlayerAction, SwitchError};
use crate::views::{mean_on, Model, OutputGrid, TechnologyViews, TrueProcess, View, ViewError};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("best-response iteration cycled without reaching a pure fixed point")]
    NonConvergence { cycle: Vec<[PlayerAction; 2]> },
    #[error(transparent)]
    View(#[from] ViewError),
    #[error(transparent)]
    Switch(#[from] SwitchError),
}

/// Utility from own output and effort.
#[derive(Debug, Clone, PartialEq)]
pub enum OwnUtility {
    /// `u(y, e) = y - (cost / 2) e^2`.
    Quadratic { cost: f64 },
    /// Arbitrary monotone utility tabulated on the output support and an
    /// effort grid, interpolated linearly in effort.
    Tabulated(TabulatedUtility),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedUtility {
    efforts: Vec<f64>,
    /// `values[j][i]` is `u(atom_i, effort_j)`.
    values: Vec<Vec<f64>>,
}

impl TabulatedUtility {
    pub fn from_fn(
        support: &OutputGrid,
        efforts: &[f64],
        u: impl Fn(f64, f64) -> f64,
    ) -> TabulatedUtility {
        let values = efforts
            .iter()
            .map(|&e| support.values().iter().map(|&y| u(y, e)).collect())
            .collect();
        TabulatedUtility {
            efforts: efforts.to_vec(),
            values,
        }
    }

    /// Convex-in-output utility `exp(scale * (y - offset)) - (cost / 2) e^2`.
    /// Useful for families whose skeptical view has the steeper mean, where a
    /// linear output utility would make the skeptic work harder than the
    /// optimist. The offset only normalizes units.
    pub fn exp_quadratic(
        support: &OutputGrid,
        efforts: &[f64],
        scale: f64,
        offset: f64,
        cost: f64,
    ) -> TabulatedUtility {
        Self::from_fn(support, efforts, |y, e| {
            (scale * (y - offset)).exp() - 0.5 * cost * e * e
        })
    }

    fn column_weights(&self, e: f64) -> (usize, usize, f64) {
        let n = self.efforts.len();
        if e <= self.efforts[0] {
            return (0, 0, 0.0);
        }
        if e >= self.efforts[n - 1] {
            return (n - 1, n - 1, 0.0);
        }
        let j = self.efforts.partition_point(|x| *x <= e).min(n - 1);
        let t = (e - self.efforts[j - 1]) / (self.efforts[j] - self.efforts[j - 1]);
        (j - 1, j, t)
    }

    fn expected(&self, pmf: &[f64], e: f64) -> f64 {
        let (j0, j1, t) = self.column_weights(e);
        pmf.iter()
            .enumerate()
            .map(|(i, p)| p * ((1.0 - t) * self.values[j0][i] + t * self.values[j1][i]))
            .sum()
    }

    /// Utility of support atom `i` at effort `e`.
    pub fn value_at(&self, atom: usize, e: f64) -> f64 {
        let (j0, j1, t) = self.column_weights(e);
        (1.0 - t) * self.values[j0][atom] + t * self.values[j1][atom]
    }

    /// Output-monotone increasing and effort-monotone decreasing on the grid.
    pub fn validate_monotone(&self) -> bool {
        for col in &self.values {
            if !col.windows(2).all(|w| w[1] > w[0]) {
                return false;
            }
        }
        for i in 0..self.values[0].len() {
            for j in 1..self.efforts.len() {
                if self.values[j][i] >= self.values[j - 1][i] {
                    return false;
                }
            }
        }
        true
    }
}

/// Stage payoff: own-output utility plus a linear production externality
/// `v(y) = externality_slope * y` from the co-worker's output.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffSpec {
    pub own: OwnUtility,
    pub externality_slope: f64,
}

impl PayoffSpec {
    pub fn new(own: OwnUtility, externality_slope: f64) -> PayoffSpec {
        PayoffSpec {
            own,
            externality_slope,
        }
    }

    /// `E[u(Y, e)]` for a distribution over the support.
    pub fn expected_own_utility(&self, support: &OutputGrid, pmf: &[f64], e: f64) -> f64 {
        match &self.own {
            OwnUtility::Quadratic { cost } => mean_on(support, pmf) - 0.5 * cost * e * e,
            OwnUtility::Tabulated(t) => t.expected(pmf, e),
        }
    }

    /// `E[v(Y)]` for a distribution over the support.
    pub fn expected_externality(&self, support: &OutputGrid, pmf: &[f64]) -> f64 {
        self.externality_slope * mean_on(support, pmf)
    }

    fn validate(&self) -> Result<(), GameError> {
        match &self.own {
            OwnUtility::Quadratic { cost } if *cost > 0.0 => Ok(()),
            OwnUtility::Quadratic { cost } => Err(GameError::Invalid(format!(
                "quadratic effort cost must be positive, got {cost}"
            ))),
            OwnUtility::Tabulated(t) => {
                if t.efforts.len() < 2 || t.values.len() != t.efforts.len() {
                    return Err(GameError::Invalid(
                        "tabulated utility needs one column per grid effort".into(),
                    ));
                }
                if !t.validate_monotone() {
                    return Err(GameError::Invalid(
                        "tabulated utility must increase in output and decrease in effort".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Behavioral mode of both players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Forward-looking and aware of disagreement.
    Full,
    /// Aware of disagreement but does not anticipate model changes.
    Myopic,
    /// Assumes the co-worker shares her model; never switches.
    Unaware,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Myopic => "myopic",
            Mode::Unaware => "unaware",
        }
    }
}

/// Full description of one game instance.
#[derive(Debug, Clone)]
pub struct GameConfig {
    pub techs: Vec<TechnologyViews>,
    pub process: TrueProcess,
    pub initial_models: (Model, Model),
    pub payoff: PayoffSpec,
    pub alpha: f64,
    pub delta: f64,
    pub mode: Mode,
    /// First-period technology assignment, one entry per player.
    pub assignment: Option<[usize; 2]>,
    pub effort_grid: EffortGrid,
    pub seed: Option<u64>,
}

impl GameConfig {
    pub fn validate(&self) -> Result<(), GameError> {
        if self.techs.is_empty() {
            return Err(GameError::Invalid("technology list is empty".into()));
        }
        if self.techs.len() > 2 {
            return Err(GameError::Invalid(
                "at most two technologies are supported".into(),
            ));
        }
        let k = self.techs.len();
        if self.initial_models.0.arity() != k || self.initial_models.1.arity() != k {
            return Err(GameError::Invalid(
                "models must hold one view per technology".into(),
            ));
        }
        self.process
            .validate(&self.techs)
            .map_err(|e| GameError::Invalid(e.to_string()))?;
        if !(0.0..=1.0).contains(&self.alpha) || self.alpha.is_nan() {
            return Err(GameError::Invalid(format!("alpha {} outside [0,1]", self.alpha)));
        }
        if !(0.0..=1.0).contains(&self.delta) || self.delta.is_nan() {
            return Err(GameError::Invalid(format!("delta {} outside [0,1]", self.delta)));
        }
        if let Some(a) = self.assignment {
            if k != 2 {
                return Err(GameError::Invalid(
                    "fixed assignment requires two technologies".into(),
                ));
            }
            if a.iter().any(|t| *t >= k) {
                return Err(GameError::Invalid("assignment names an unknown technology".into()));
            }
        }
        for tech in &self.techs {
            if self.effort_grid.bound() > tech.effort_bound() + 1e-12 {
                return Err(GameError::Invalid(
                    "effort grid exceeds a technology's effort bound".into(),
                ));
            }
        }
        self.payoff.validate()
    }

    /// Discount applied when anticipating model transitions.
    pub fn planning_delta(&self) -> f64 {
        match self.mode {
            Mode::Myopic => 0.0,
            _ => self.delta,
        }
    }

    pub fn model(&self, player: usize) -> &Model {
        match player {
            0 => &self.initial_models.0,
            _ => &self.initial_models.1,
        }
    }

    pub fn with_models(&self, a: Model, b: Model) -> GameConfig {
        let mut c = self.clone();
        c.initial_models = (a, b);
        c
    }

    pub fn with_process(&self, q: TrueProcess) -> GameConfig {
        let mut c = self.clone();
        c.process = q;
        c
    }

    pub fn with_mode(&self, mode: Mode) -> GameConfig {
        let mut c = self.clone();
        c.mode = mode;
        c
    }

    pub fn with_assignment(&self, assignment: Option<[usize; 2]>) -> GameConfig {
        let mut c = self.clone();
        c.assignment = assignment;
        c
    }

    pub fn with_externality(&self, beta: f64) -> GameConfig {
        let mut c = self.clone();
        c.payoff.externality_slope = beta;
        c
    }

    pub fn with_grid(&self, grid: EffortGrid) -> GameConfig {
        let mut c = self.clone();
        c.effort_grid = grid;
        c
    }
}

/// Second-period rule: the optimal static action per model (identical for
/// both players since payoffs are common).
pub type SecondPeriodRule = BTreeMap<Model, PlayerAction>;

/// Static optimum for one model: technology by optimized value with ties
/// resolved toward the optimistic view and then toward technology x, effort
/// by grid argmax with one refinement pass.
pub fn solve_second_period(
    model: &Model,
    payoff: &PayoffSpec,
    techs: &[TechnologyViews],
    grid: &EffortGrid,
) -> Result<(PlayerAction, GridMax), GameError> {
    let mut best: Option<(usize, GridMax)> = None;
    for (k, tech) in techs.iter().enumerate() {
        let view = model.view(k);
        let m = maximize(grid, |e| {
            payoff.expected_own_utility(tech.support(), &tech.pmf(view, e).expect("grid"), e)
        });
        let better = match &best {
            None => true,
            Some((bk, bm)) => {
                let tol = TIE_TOL * bm.value.abs().max(1.0);
                m.value > bm.value + tol
                    || (m.value >= bm.value - tol
                        && model.view(k) == View::Optimistic
                        && model.view(*bk) == View::Skeptical)
            }
        };
        if better {
            best = Some((k, m));
        }
    }
    let (tech, m) = best.expect("at least one technology");
    Ok((
        PlayerAction {
            tech,
            effort: m.argument,
        },
        m,
    ))
}

/// The rule for every model over the configured technologies.
pub fn second_period_rule(cfg: &GameConfig) -> Result<SecondPeriodRule, GameError> {
    let mut rule = BTreeMap::new();
    for m in Model::enumerate(cfg.techs.len()) {
        let (action, _) = solve_second_period(&m, &cfg.payoff, &cfg.techs, &cfg.effort_grid)?;
        rule.insert(m, action);
    }
    Ok(rule)
}

/// Subjective externality gain for `player` from the rival adopting the
/// player's model: expected externality (under the player's own views) at
/// the rival's switched second-period action minus at the stay action.
pub fn conversion_gain(
    cfg: &GameConfig,
    player: usize,
    second: &SecondPeriodRule,
) -> Result<f64, GameError> {
    let own = cfg.model(player);
    let rival = cfg.model(1 - player);
    let value_at = |action: &PlayerAction| -> Result<f64, GameError> {
        let tech = &cfg.techs[action.tech];
        let pmf = tech.pmf(own.view(action.tech), action.effort)?;
        Ok(cfg.payoff.expected_externality(tech.support(), &pmf))
    };
    Ok(value_at(&second[own])? - value_at(&second[rival])?)
}

/// First-period objective of `player` at `(effort, tech)` given the rival's
/// action: static expected utility plus, under disagreement, the discounted
/// persuasion term `phi * Delta`. In unaware mode the persuasion term is
/// absent; in myopic mode the planning discount is zero.
pub fn first_period_objective(
    cfg: &GameConfig,
    player: usize,
    action: PlayerAction,
    rival_action: PlayerAction,
    second: &SecondPeriodRule,
) -> Result<f64, GameError> {
    let own = cfg.model(player);
    let tech = &cfg.techs[action.tech];
    let static_u = cfg.payoff.expected_own_utility(
        tech.support(),
        &tech.pmf(own.view(action.tech), action.effort)?,
        action.effort,
    );
    let rival = cfg.model(1 - player);
    let delta_eff = cfg.planning_delta();
    if own == rival || cfg.mode == Mode::Unaware || delta_eff == 0.0 {
        return Ok(static_u);
    }
    let actions = if player == 0 {
        [action, rival_action]
    } else {
        [rival_action, action]
    };
    let test = build_test(rival, own, actions, &cfg.techs, cfg.alpha)?;
    let phi = test.switch_probability(&cfg.techs, Measure::Model(own))?;
    let gain = conversion_gain(cfg, player, second)?;
    Ok(static_u + delta_eff * phi * gain)
}

/// Convergence information from the first-period solver.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveDiagnostics {
    pub starts: usize,
    pub fixed_points: usize,
    /// Some start oscillated between grid-adjacent states and was collapsed
    /// to its lexicographically smallest state.
    pub dithered: bool,
    /// Some argmax had ties beyond the tie tolerance (broken to lowest effort).
    pub tied: bool,
    pub max_iterations: usize,
}

/// Solved profile: second-period rule per model, and the set of first-period
/// pure equilibria found for the configured initial models.
#[derive(Debug, Clone)]
pub struct StrategyProfile {
    pub second_period: SecondPeriodRule,
    /// Distinct pure fixed points, `[player A action, player B action]`,
    /// sorted deterministically.
    pub equilibria: Vec<[PlayerAction; 2]>,
    pub diagnostics: SolveDiagnostics,
}

impl StrategyProfile {
    /// The first equilibrium in deterministic order.
    pub fn canonical(&self) -> &[PlayerAction; 2] {
        &self.equilibria[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BrState {
    tech: [usize; 2],
    idx: [usize; 2],
}

const MAX_BR_ITERATIONS: usize = 500;

struct Solver<'a> {
    cfg: &'a GameConfig,
    second: SecondPeriodRule,
    /// Static expected utility per player, technology, and grid index.
    static_u: [Vec<Vec<f64>>; 2],
    gain: [f64; 2],
    persuasion_on: bool,
    tied: bool,
}

impl<'a> Solver<'a> {
    fn new(cfg: &'a GameConfig) -> Result<Solver<'a>, GameError> {
        let second = second_period_rule(cfg)?;
        let grid = &cfg.effort_grid;
        let mut static_u: [Vec<Vec<f64>>; 2] = [Vec::new(), Vec::new()];
        for player in 0..2 {
            let model = cfg.model(player);
            static_u[player] = cfg
                .techs
                .iter()
                .enumerate()
                .map(|(k, tech)| {
                    grid.values()
                        .map(|e| {
                            cfg.payoff.expected_own_utility(
                                tech.support(),
                                &tech.pmf(model.view(k), e).expect("grid"),
                                e,
                            )
                        })
                        .collect()
                })
                .collect();
        }
        let persuasion_on = cfg.model(0) != cfg.model(1)
            && cfg.mode != Mode::Unaware
            && cfg.planning_delta() > 0.0;
        let gain = if persuasion_on {
            [
                conversion_gain(cfg, 0, &second)?,
                conversion_gain(cfg, 1, &second)?,
            ]
        } else {
            [0.0, 0.0]
        };
        Ok(Solver {
            cfg,
            second,
            static_u,
            gain,
            persuasion_on,
            tied: false,
        })
    }

    fn allowed_techs(&self, player: usize) -> Vec<usize> {
        match self.cfg.assignment {
            Some(a) => vec![a[player]],
            None => (0..self.cfg.techs.len()).collect(),
        }
    }

    /// Rival switch probability under the player's own model when the player
    /// acts `(e, k)` against `rival_action`.
    fn phi(
        &self,
        player: usize,
        action: PlayerAction,
        rival_action: PlayerAction,
    ) -> Result<f64, GameError> {
        let own = self.cfg.model(player);
        let rival = self.cfg.model(1 - player);
        let actions = if player == 0 {
            [action, rival_action]
        } else {
            [rival_action, action]
        };
        let test = build_test(rival, own, actions, &self.cfg.techs, self.cfg.alpha)?;
        Ok(test.switch_probability(&self.cfg.techs, Measure::Model(own))?)
    }

    /// Grid best response: lowest effort, then technology x, among ties.
    fn best_response(
        &mut self,
        player: usize,
        rival_action: PlayerAction,
    ) -> Result<(usize, usize), GameError> {
        let grid = &self.cfg.effort_grid;
        let delta_eff = self.cfg.planning_delta();
        let mut best: Option<(f64, usize, usize)> = None;
        for k in self.allowed_techs(player) {
            for idx in 0..grid.len() {
                let e = grid.value(idx);
                let mut v = self.static_u[player][k][idx];
                if self.persuasion_on {
                    let phi = self.phi(player, PlayerAction { tech: k, effort: e }, rival_action)?;
                    v += delta_eff * phi * self.gain[player];
                }
                match &mut best {
                    None => best = Some((v, k, idx)),
                    Some((bv, bk, bidx)) => {
                        let tol = TIE_TOL * bv.abs().max(1.0);
                        if v > *bv + tol {
                            *bv = v;
                            *bk = k;
                            *bidx = idx;
                        } else if v > *bv - tol && (idx, k) < (*bidx, *bk) {
                            self.tied = true;
                            *bk = k;
                            *bidx = idx;
                        } else if v > *bv - tol {
                            self.tied = true;
                        }
                    }
                }
            }
        }
        let (_, k, idx) = best.expect("nonempty action set");
        Ok((k, idx))
    }

    fn action_of(&self, state: &BrState, player: usize) -> PlayerAction {
        PlayerAction {
            tech: state.tech[player],
            effort: self.cfg.effort_grid.value(state.idx[player]),
        }
    }

    /// Iterate simultaneous best responses from `start`.
    fn iterate(&mut self, start: BrState) -> Result<IterationEnd, GameError> {
        let mut seen: HashMap<BrState, usize> = HashMap::new();
        let mut trail = vec![start];
        seen.insert(start, 0);
        let mut state = start;
        for _ in 0..MAX_BR_ITERATIONS {
            let a = self.best_response(0, self.action_of(&state, 1))?;
            let b = self.best_response(1, self.action_of(&state, 0))?;
            let next = BrState {
                tech: [a.0, b.0],
                idx: [a.1, b.1],
            };
            if next == state {
                return Ok(IterationEnd::Fixed {
                    state,
                    iterations: trail.len(),
                });
            }
            if let Some(&first) = seen.get(&next) {
                let cycle: Vec<BrState> = trail[first..].to_vec();
                return Ok(IterationEnd::Cycle {
                    cycle,
                    iterations: trail.len(),
                });
            }
            seen.insert(next, trail.len());
            trail.push(next);
            state = next;
        }
        Ok(IterationEnd::Cycle {
            cycle: trail[trail.len().saturating_sub(8)..].to_vec(),
            iterations: trail.len(),
        })
    }
}

enum IterationEnd {
    Fixed { state: BrState, iterations: usize },
    Cycle { cycle: Vec<BrState>, iterations: usize },
}

/// A cycle whose states differ by at most one grid cell per player (and agree
/// on technologies) is grid dithering around an interior optimum, not a
/// genuine cycle; collapse it to its smallest state.
fn dither_state(cycle: &[BrState]) -> Option<BrState> {
    for player in 0..2 {
        let lo = cycle.iter().map(|s| s.idx[player]).min()?;
        let hi = cycle.iter().map(|s| s.idx[player]).max()?;
        if hi - lo > 1 {
            return None;
        }
        let t0 = cycle[0].tech[player];
        if cycle.iter().any(|s| s.tech[player] != t0) {
            return None;
        }
    }
    cycle.iter().min().copied()
}

/// Solve the configured game: second period pointwise, first period by
/// simultaneous best-response iteration started from the static optima and
/// the effort-box corners, with one local refinement pass at each fixed
/// point. Returns all distinct pure equilibria found, or the detected cycle
/// when no start converges.
pub fn solve_equilibrium(cfg: &GameConfig) -> Result<StrategyProfile, GameError> {
    cfg.validate()?;
    let mut solver = Solver::new(cfg)?;
    let grid = &cfg.effort_grid;

    // Static optima as the principal start, constrained by assignment.
    let mut start_state = BrState {
        tech: [0, 0],
        idx: [0, 0],
    };
    for player in 0..2 {
        let model = cfg.model(player);
        let tech = match cfg.assignment {
            Some(a) => a[player],
            None => {
                let (action, _) =
                    solve_second_period(model, &cfg.payoff, &cfg.techs, grid)?;
                action.tech
            }
        };
        let column = &solver.static_u[player][tech];
        let mut best = 0usize;
        for i in 1..column.len() {
            if column[i] > column[best] + TIE_TOL * column[best].abs().max(1.0) {
                best = i;
            }
        }
        start_state.tech[player] = tech;
        start_state.idx[player] = best;
    }

    let mut starts: Vec<BrState> = vec![start_state];
    let last = grid.len() - 1;
    for ia in [0usize, last] {
        for ib in [0usize, last] {
            starts.push(BrState {
                tech: start_state.tech,
                idx: [ia, ib],
            });
        }
    }
    starts.sort();
    starts.dedup();

    let mut fixed: BTreeSet<BrState> = BTreeSet::new();
    let mut diagnostics = SolveDiagnostics {
        starts: starts.len(),
        ..Default::default()
    };
    let mut last_cycle: Option<Vec<BrState>> = None;
    for start in starts {
        match solver.iterate(start)? {
            IterationEnd::Fixed { state, iterations } => {
                fixed.insert(state);
                diagnostics.max_iterations = diagnostics.max_iterations.max(iterations);
            }
            IterationEnd::Cycle { cycle, iterations } => {
                diagnostics.max_iterations = diagnostics.max_iterations.max(iterations);
                if let Some(state) = dither_state(&cycle) {
                    diagnostics.dithered = true;
                    fixed.insert(state);
                } else {
                    last_cycle = Some(cycle);
                }
            }
        }
    }
    diagnostics.tied = solver.tied;
    diagnostics.fixed_points = fixed.len();

    if fixed.is_empty() {
        let cycle = last_cycle
            .unwrap_or_default()
            .iter()
            .map(|s| [solver.action_of(s, 0), solver.action_of(s, 1)])
            .collect();
        return Err(GameError::NonConvergence { cycle });
    }

    // One refinement pass per player against the rival's grid action.
    let mut equilibria = Vec::with_capacity(fixed.len());
    for state in &fixed {
        let mut actions = [solver.action_of(state, 0), solver.action_of(state, 1)];
        for player in 0..2 {
            let rival_action = solver.action_of(state, 1 - player);
            let tech = state.tech[player];
            let refined = refine_around(grid, actions[player].effort, |e| {
                first_period_objective(
                    cfg,
                    player,
                    PlayerAction { tech, effort: e },
                    rival_action,
                    &solver.second,
                )
                .expect("refinement effort within bounds")
            });
            actions[player].effort = refined.argument;
        }
        equilibria.push(actions);
    }

    Ok(StrategyProfile {
        second_period: solver.second,
        equilibria,
        diagnostics,
    })
}

/// Report of the first-period effort comparison between a disagreeing team
/// and the two like-minded benchmarks (single technology).
#[derive(Debug, Clone)]
pub struct LemmaEffortReport {
    pub optimist_effort: f64,
    pub optimist_baseline: f64,
    pub skeptic_effort: f64,
    pub skeptic_baseline: f64,
    /// Optimist works at least as hard as in the like-minded team.
    pub optimist_ok: bool,
    /// Skeptic works at most as hard as in the like-minded team.
    pub skeptic_ok: bool,
    /// The rival switch probability rises strictly in the optimist's effort.
    pub strict_expected: bool,
    pub strict_observed: bool,
}

/// Check the disagreement effort ordering on a single-technology config with
/// initial models `(H, L)`.
pub fn lemma_effort_check(cfg: &GameConfig) -> Result<LemmaEffortReport, GameError> {
    if cfg.techs.len() != 1 {
        return Err(GameError::Invalid(
            "effort-ordering check requires a single technology".into(),
        ));
    }
    let h = Model::single(View::Optimistic);
    let l = Model::single(View::Skeptical);
    let disagree = solve_equilibrium(&cfg.with_models(h.clone(), l.clone()))?;
    let both_h = solve_equilibrium(&cfg.with_models(h.clone(), h.clone()))?;
    let both_l = solve_equilibrium(&cfg.with_models(l.clone(), l.clone()))?;

    let slack = cfg.effort_grid.fine_step();
    let optimist_baseline = both_h.canonical()[0].effort;
    let skeptic_baseline = both_l.canonical()[1].effort;
    let optimist_effort = disagree
        .equilibria
        .iter()
        .map(|eq| eq[0].effort)
        .fold(f64::INFINITY, f64::min);
    let skeptic_effort = disagree
        .equilibria
        .iter()
        .map(|eq| eq[1].effort)
        .fold(f64::NEG_INFINITY, f64::max);

    // Strictness of the persuasion margin: does the skeptic's switch
    // probability move with the optimist's effort at the baseline?
    let probe = |e: f64| -> Result<f64, GameError> {
        let test = build_test(
            &l,
            &h,
            [
                PlayerAction { tech: 0, effort: e },
                PlayerAction {
                    tech: 0,
                    effort: skeptic_baseline,
                },
            ],
            &cfg.techs,
            cfg.alpha,
        )?;
        Ok(test.switch_probability(&cfg.techs, Measure::Model(&h))?)
    };
    let step = cfg.effort_grid.step();
    let e0 = optimist_baseline.min(cfg.effort_grid.bound() - step);
    let strict_expected = cfg.mode == Mode::Full
        && cfg.planning_delta() > 0.0
        && probe(e0 + step)? > probe(e0)? + 1e-9;

    Ok(LemmaEffortReport {
        optimist_effort,
        optimist_baseline,
        skeptic_effort,
        skeptic_baseline,
        optimist_ok: optimist_effort >= optimist_baseline - slack,
        skeptic_ok: skeptic_effort <= skeptic_baseline + slack,
        strict_expected,
        strict_observed: optimist_effort > optimist_baseline + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use approx::assert_abs_diff_eq;

    #[test]
    fn second_period_static_optima() {
        let cfg = presets::section2(2.0);
        let rule = second_period_rule(&cfg).unwrap();
        let h = &rule[&Model::single(View::Optimistic)];
        let l = &rule[&Model::single(View::Skeptical)];
        assert_abs_diff_eq!(h.effort, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(l.effort, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn second_period_picks_an_optimistic_technology() {
        let cfg = presets::section2_two_tech(2.0);
        let rule = second_period_rule(&cfg).unwrap();
        let m = Model::pair(View::Skeptical, View::Optimistic);
        let action = &rule[&m];
        assert_eq!(action.tech, 1);
        assert_abs_diff_eq!(action.effort, 0.25, epsilon = 1e-12);
        // tie between two optimistic views resolves to technology x
        let hh = Model::pair(View::Optimistic, View::Optimistic);
        assert_eq!(rule[&hh].tech, 0);
    }

    #[test]
    fn section2_disagreement_equilibrium() {
        let cfg = presets::section2(2.0);
        let profile = solve_equilibrium(&cfg).unwrap();
        let eq = profile.canonical();
        assert_abs_diff_eq!(eq[0].effort, 0.375, epsilon = 2.5e-4);
        assert_abs_diff_eq!(eq[1].effort, 0.0, epsilon = 1e-12);
        // second-period rule never depends on the rival model by construction;
        // the optimist plays e^H after staying with her model
        assert_abs_diff_eq!(
            profile.second_period[&Model::single(View::Optimistic)].effort,
            0.25,
            epsilon = 1e-12
        );
    }

    #[test]
    fn like_minded_players_play_static_optima() {
        let cfg = presets::section2(2.0);
        let h = Model::single(View::Optimistic);
        let profile = solve_equilibrium(&cfg.with_models(h.clone(), h)).unwrap();
        let eq = profile.canonical();
        assert_abs_diff_eq!(eq[0].effort, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(eq[1].effort, 0.25, epsilon = 1e-12);
        assert_eq!(profile.equilibria.len(), 1);
    }

    #[test]
    fn objective_reduces_to_static_when_like_minded() {
        let cfg = presets::section2(2.0);
        let h = Model::single(View::Optimistic);
        let cfg = cfg.with_models(h.clone(), h);
        let second = second_period_rule(&cfg).unwrap();
        let rival = PlayerAction {
            tech: 0,
            effort: 0.6,
        };
        for e in [0.0, 0.25, 0.5] {
            let v = first_period_objective(
                &cfg,
                0,
                PlayerAction { tech: 0, effort: e },
                rival,
                &second,
            )
            .unwrap();
            assert_abs_diff_eq!(v, e - 2.0 * e * e, epsilon = 1e-12);
        }
    }

    #[test]
    fn disagreement_objective_carries_persuasion_term() {
        // Optimist against an idle skeptic at alpha = 0: phi = e, Delta = 0.5.
        let cfg = presets::section2(2.0);
        let second = second_period_rule(&cfg).unwrap();
        let rival = PlayerAction {
            tech: 0,
            effort: 0.0,
        };
        for e in [0.1, 0.375, 0.8] {
            let v = first_period_objective(
                &cfg,
                0,
                PlayerAction { tech: 0, effort: e },
                rival,
                &second,
            )
            .unwrap();
            assert_abs_diff_eq!(v, e - 2.0 * e * e + 0.5 * e, epsilon = 1e-12);
        }
    }

    #[test]
    fn conversion_gain_signs() {
        let cfg = presets::section2(2.0);
        let second = second_period_rule(&cfg).unwrap();
        let gain_optimist = conversion_gain(&cfg, 0, &second).unwrap();
        let gain_skeptic = conversion_gain(&cfg, 1, &second).unwrap();
        assert!(gain_optimist > 0.0);
        assert!(gain_skeptic <= 0.0 + 1e-12);
        assert_abs_diff_eq!(gain_optimist, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn unaware_and_myopic_solve_to_static_efforts() {
        let cfg = presets::section2(2.0);
        for mode in [Mode::Myopic, Mode::Unaware] {
            let profile = solve_equilibrium(&cfg.with_mode(mode)).unwrap();
            let eq = profile.canonical();
            assert_abs_diff_eq!(eq[0].effort, 0.25, epsilon = 1e-12);
            assert_abs_diff_eq!(eq[1].effort, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_tech_horizontal_efforts() {
        let cfg = presets::section2_two_tech(2.0);
        let profile = solve_equilibrium(&cfg).unwrap();
        let eq = profile.canonical();
        assert_eq!(eq[0].tech, 0);
        assert_eq!(eq[1].tech, 1);
        assert_abs_diff_eq!(eq[0].effort, 0.375, epsilon = 2.5e-4);
        assert_abs_diff_eq!(eq[1].effort, 0.375, epsilon = 2.5e-4);
        // the same efforts arise with the technologies fixed by assignment
        let fixed = solve_equilibrium(&cfg.with_assignment(Some([0, 1]))).unwrap();
        assert_abs_diff_eq!(fixed.canonical()[0].effort, 0.375, epsilon = 2.5e-4);
        assert_abs_diff_eq!(fixed.canonical()[1].effort, 0.375, epsilon = 2.5e-4);
    }

    #[test]
    fn effort_ordering_section2() {
        let cfg = presets::section2(2.0);
        let rep = lemma_effort_check(&cfg).unwrap();
        assert!(rep.optimist_ok && rep.skeptic_ok);
        assert!(rep.strict_expected && rep.strict_observed);
        assert_abs_diff_eq!(rep.optimist_effort, 0.375, epsilon = 2.5e-4);
        assert_abs_diff_eq!(rep.skeptic_effort, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn effort_ordering_with_active_skeptic() {
        // r = 0.5 keeps the skeptic productive; disagreement shades him down.
        let cfg = presets::bandit_half(2.0);
        let rep = lemma_effort_check(&cfg).unwrap();
        assert!(rep.optimist_ok && rep.skeptic_ok);
        assert_abs_diff_eq!(rep.skeptic_baseline, 0.125, epsilon = 1e-12);
        assert!(
            rep.skeptic_effort < rep.skeptic_baseline - 1e-3,
            "skeptic should shade down, got {}",
            rep.skeptic_effort
        );
        assert!(rep.optimist_effort > rep.optimist_baseline + 1e-3);
    }

    #[test]
    fn degenerate_alpha_one_removes_the_margin() {
        // At alpha = 1 the test switches regardless of outcomes, so effort
        // has no persuasion value and everyone plays statically.
        let mut cfg = presets::section2(2.0);
        cfg.alpha = 1.0;
        let rep = lemma_effort_check(&cfg).unwrap();
        assert!(!rep.strict_expected);
        assert_abs_diff_eq!(rep.optimist_effort, rep.optimist_baseline, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.skeptic_effort, rep.skeptic_baseline, epsilon = 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = presets::section2(2.0);
        cfg.alpha = 1.5;
        assert!(matches!(cfg.validate(), Err(GameError::Invalid(_))));
        let mut cfg = presets::section2(2.0);
        cfg.techs.clear();
        assert!(cfg.validate().is_err());
        let cfg = presets::section2(2.0).with_assignment(Some([0, 0]));
        assert!(cfg.validate().is_err(), "assignment needs two technologies");
    }
}
