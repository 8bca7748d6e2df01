//! The model-switch rule: a size-alpha likelihood-ratio test of a player's
//! own model against the co-worker's, built from both players' first-period
//! actions.
//!
//! The joint experiment over the two output realizations has finite support,
//! so the critical value is found by an exact sweep over the sorted
//! likelihood-ratio atoms, and the boundary atom is randomized to make the
//! type-I error exactly alpha. Outcomes with zero likelihood under both
//! models trigger no switch.

use crate::views::{Model, TechnologyViews, TrueProcess, ViewError};
use rand::Rng;
use thiserror::Error;

/// Relative tolerance identifying a ratio with the critical boundary.
const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SwitchError {
    #[error("alpha {0} outside [0, 1]")]
    BadAlpha(f64),
    #[error(transparent)]
    View(#[from] ViewError),
    #[error("measure does not cover the test's joint support")]
    SupportMismatch,
}

/// One player's first-period action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerAction {
    pub tech: usize,
    pub effort: f64,
}

/// Likelihood-ratio class of a single output atom: rival likelihood over own
/// likelihood.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum AtomClass {
    /// Zero likelihood under both models; never triggers a switch.
    Off,
    /// Both or only the own likelihood positive.
    Finite(f64),
    /// Positive rival likelihood, zero own likelihood.
    Infinite,
}

pub(crate) fn combine(a: AtomClass, b: AtomClass) -> AtomClass {
    use AtomClass::*;
    match (a, b) {
        (Off, _) | (_, Off) => Off,
        (Infinite, Infinite) => Infinite,
        (Infinite, Finite(f)) | (Finite(f), Infinite) => {
            if f > 0.0 {
                Infinite
            } else {
                Off
            }
        }
        (Finite(x), Finite(y)) => Finite(x * y),
    }
}

/// The class of the same atom pair from the other player's test, whose
/// likelihood ratio is the reciprocal.
pub(crate) fn mirror(a: AtomClass) -> AtomClass {
    use AtomClass::*;
    match a {
        Off => Off,
        Infinite => Finite(0.0),
        Finite(f) if f > 0.0 => Finite(1.0 / f),
        Finite(_) => Infinite,
    }
}

/// Per-atom classification of one player's output under the test's two models.
#[derive(Debug, Clone)]
pub(crate) struct OutputFactor {
    pub(crate) action: PlayerAction,
    pub(crate) class: Vec<AtomClass>,
    own_pmf: Vec<f64>,
}

impl OutputFactor {
    fn build(
        own: &Model,
        rival: &Model,
        action: PlayerAction,
        techs: &[TechnologyViews],
    ) -> Result<OutputFactor, ViewError> {
        let tech = &techs[action.tech];
        let own_pmf = tech.pmf(own.view(action.tech), action.effort)?;
        let riv_pmf = tech.pmf(rival.view(action.tech), action.effort)?;
        let class = own_pmf
            .iter()
            .zip(&riv_pmf)
            .map(|(&o, &r)| {
                if o > 0.0 {
                    AtomClass::Finite(r / o)
                } else if r > 0.0 {
                    AtomClass::Infinite
                } else {
                    AtomClass::Off
                }
            })
            .collect();
        Ok(OutputFactor {
            action,
            class,
            own_pmf,
        })
    }
}

/// Atom classes of a factor weighted by some probability measure, pooled by
/// ratio.
#[derive(Debug, Clone, Default)]
pub(crate) struct ClassMasses {
    pub(crate) off: f64,
    pub(crate) inf: f64,
    /// `(ratio, mass)` sorted by decreasing ratio, ties pooled.
    pub(crate) finite: Vec<(f64, f64)>,
}

pub(crate) fn class_masses(class: &[AtomClass], mass: &[f64]) -> ClassMasses {
    let mut out = ClassMasses::default();
    let mut fin: Vec<(f64, f64)> = Vec::new();
    for (c, &m) in class.iter().zip(mass) {
        if m <= 0.0 {
            continue;
        }
        match c {
            AtomClass::Off => out.off += m,
            AtomClass::Infinite => out.inf += m,
            AtomClass::Finite(r) => fin.push((*r, m)),
        }
    }
    fin.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite ratios"));
    for (r, m) in fin {
        match out.finite.last_mut() {
            Some(last) if last.0 - r <= BOUNDARY_TOL * last.0.max(1.0) => last.1 += m,
            _ => out.finite.push((r, m)),
        }
    }
    out
}

/// Product measure of two classified factors under the combine rule.
pub(crate) fn joint_masses(a: &ClassMasses, b: &ClassMasses) -> ClassMasses {
    let fin_pos = |g: &ClassMasses| -> f64 {
        g.finite.iter().filter(|(r, _)| *r > 0.0).map(|(_, m)| m).sum()
    };
    let fin_zero = |g: &ClassMasses| -> f64 {
        g.finite.iter().filter(|(r, _)| *r <= 0.0).map(|(_, m)| m).sum()
    };
    let total = |g: &ClassMasses| -> f64 {
        g.off + g.inf + g.finite.iter().map(|(_, m)| m).sum::<f64>()
    };
    let mut out = ClassMasses {
        off: a.off * total(b) + b.off * total(a) - a.off * b.off
            + a.inf * fin_zero(b)
            + b.inf * fin_zero(a),
        inf: a.inf * b.inf + a.inf * fin_pos(b) + b.inf * fin_pos(a),
        finite: Vec::with_capacity(a.finite.len() * b.finite.len()),
    };
    let mut fin: Vec<(f64, f64)> = Vec::with_capacity(a.finite.len() * b.finite.len());
    for &(ra, ma) in &a.finite {
        for &(rb, mb) in &b.finite {
            fin.push((ra * rb, ma * mb));
        }
    }
    fin.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite ratios"));
    for (r, m) in fin {
        match out.finite.last_mut() {
            Some(last) if last.0 - r <= BOUNDARY_TOL * last.0.max(1.0) => last.1 += m,
            _ => out.finite.push((r, m)),
        }
    }
    out
}

/// A built switch test for one player: null hypothesis `own`, alternative
/// `rival`, with the critical value and boundary randomization calibrated to
/// type-I error alpha.
#[derive(Debug, Clone)]
pub struct SwitchTest {
    own: Model,
    rival: Model,
    factors: [OutputFactor; 2],
    critical_ratio: f64,
    boundary_prob: f64,
    alpha: f64,
    never: bool,
}

/// Distribution against which a switch probability is evaluated.
#[derive(Debug, Clone, Copy)]
pub enum Measure<'a> {
    /// Outputs drawn from a subjective model's views.
    Model(&'a Model),
    /// Outputs drawn from the objective process.
    Process(&'a TrueProcess),
}

/// Build the size-`alpha` likelihood-ratio test of `own` against `rival`
/// given both players' first-period actions.
///
/// `actions[0]` belongs to player A and `actions[1]` to player B regardless
/// of which of them owns the test. When the two models coincide the test
/// degenerates and never switches.
pub fn build_test(
    own: &Model,
    rival: &Model,
    actions: [PlayerAction; 2],
    techs: &[TechnologyViews],
    alpha: f64,
) -> Result<SwitchTest, SwitchError> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(SwitchError::BadAlpha(alpha));
    }
    let factors = [
        OutputFactor::build(own, rival, actions[0], techs)?,
        OutputFactor::build(own, rival, actions[1], techs)?,
    ];
    if own == rival {
        return Ok(SwitchTest {
            own: own.clone(),
            rival: rival.clone(),
            factors,
            critical_ratio: f64::INFINITY,
            boundary_prob: 0.0,
            alpha,
            never: true,
        });
    }

    // Distribution of the joint ratio under the null (own) model. Atoms with
    // zero own likelihood carry no null mass, so only finite ratios appear.
    let ga = class_masses(&factors[0].class, &factors[0].own_pmf);
    let gb = class_masses(&factors[1].class, &factors[1].own_pmf);
    let joint = joint_masses(&ga, &gb);

    // Smallest critical value whose strict-rejection mass stays within alpha;
    // randomize on the boundary atom to hit alpha exactly.
    let mut mass_above = 0.0;
    let mut chosen = (f64::INFINITY, 0.0, 0.0);
    for &(r, m) in &joint.finite {
        if mass_above <= alpha + 1e-15 {
            chosen = (r, m, mass_above);
        } else {
            break;
        }
        mass_above += m;
    }
    let (critical_ratio, boundary_mass, tail) = chosen;
    let boundary_prob = if boundary_mass > 0.0 {
        ((alpha - tail) / boundary_mass).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(SwitchTest {
        own: own.clone(),
        rival: rival.clone(),
        factors,
        critical_ratio,
        boundary_prob,
        alpha,
        never: false,
    })
}

impl SwitchTest {
    pub fn own(&self) -> &Model {
        &self.own
    }

    pub fn rival(&self) -> &Model {
        &self.rival
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The calibrated critical value `c^alpha`.
    pub fn critical_ratio(&self) -> f64 {
        self.critical_ratio
    }

    /// Probability of switching on a boundary atom.
    pub fn boundary_prob(&self) -> f64 {
        self.boundary_prob
    }

    pub fn action(&self, player: usize) -> PlayerAction {
        self.factors[player].action
    }

    pub(crate) fn atom_classes(&self, player: usize) -> &[AtomClass] {
        &self.factors[player].class
    }

    /// Probability that a joint atom of the given class triggers a switch.
    pub(crate) fn decide(&self, joint: AtomClass) -> f64 {
        if self.never {
            return 0.0;
        }
        match joint {
            AtomClass::Off => 0.0,
            AtomClass::Infinite => 1.0,
            AtomClass::Finite(r) => {
                let tol = BOUNDARY_TOL * self.critical_ratio.max(1.0);
                if r > self.critical_ratio + tol {
                    1.0
                } else if r >= self.critical_ratio - tol {
                    self.boundary_prob
                } else {
                    0.0
                }
            }
        }
    }

    /// Exact switch probability when outputs are drawn from `measure`,
    /// including the boundary randomization mass.
    pub fn switch_probability(
        &self,
        techs: &[TechnologyViews],
        measure: Measure<'_>,
    ) -> Result<f64, SwitchError> {
        if self.never {
            return Ok(0.0);
        }
        let mut masses = [ClassMasses::default(), ClassMasses::default()];
        for player in 0..2 {
            let action = self.factors[player].action;
            let pmf = match measure {
                Measure::Model(m) => {
                    techs[action.tech].pmf(m.view(action.tech), action.effort)?
                }
                Measure::Process(q) => {
                    if q.arity() != techs.len() {
                        return Err(SwitchError::SupportMismatch);
                    }
                    q.pmf(techs, action.tech, action.effort)?
                }
            };
            masses[player] = class_masses(&self.factors[player].class, &pmf);
        }
        let joint = joint_masses(&masses[0], &masses[1]);
        let mut p = joint.inf;
        for &(r, m) in &joint.finite {
            p += m * self.decide(AtomClass::Finite(r));
        }
        Ok(p)
    }

    /// Apply the test to a realized outcome pair. Deterministic off the
    /// boundary; on the boundary the supplied generator draws the
    /// randomization, which is independent across players by construction
    /// (callers pass distinct generators or draw in a fixed order).
    pub fn apply<R: Rng + ?Sized>(
        &self,
        techs: &[TechnologyViews],
        outcomes: (f64, f64),
        rng: &mut R,
    ) -> bool {
        if self.never {
            return false;
        }
        let class_of = |player: usize, y: f64| -> AtomClass {
            let tech = self.factors[player].action.tech;
            match techs[tech].support().position(y) {
                Some(i) => self.factors[player].class[i],
                None => AtomClass::Off,
            }
        };
        let joint = combine(class_of(0, outcomes.0), class_of(1, outcomes.1));
        let p = self.decide(joint);
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            rng.gen_bool(p)
        }
    }
}
