//! Numerical engine for two-period team-production games in which the two
//! players may hold different parametric views of the production technologies.
//!
//! The engine covers:
//!
//! * parametric technology-view families and the objective output process,
//!   discretized onto finite output supports ([`views`]);
//! * dichotomous experiments, most-powerful randomized tests, power curves,
//!   and the Blackwell informativeness order ([`experiments`]);
//! * the size-alpha likelihood-ratio rule by which a player abandons her
//!   model for her co-worker's after surprising evidence ([`switching`]);
//! * equilibrium computation for the one- and two-technology games, with
//!   myopic and disagreement-unaware benchmark modes ([`game`]);
//! * exact and Monte-Carlo evaluation of expected team output under the true
//!   process, plus the team-comparison verifiers ([`evaluate`]).
//!
//! All solvers are grid-based with one local refinement pass, and everything
//! is deterministic given a configuration and a seed.

pub mod evaluate;
pub mod experiments;
pub mod game;
pub mod grid;
pub mod presets;
pub mod switching;
pub mod views;

pub use evaluate::{expected_team_output, EvalMethod, EvalRequest, TeamOutcome};
pub use game::{solve_equilibrium, GameConfig, GameError, Mode, PayoffSpec, StrategyProfile};
pub use views::{Model, TechnologyViews, TrueProcess, View, ViewFamily};
