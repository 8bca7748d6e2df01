//! Finite dichotomous experiments and the Blackwell informativeness order.
//!
//! A dichotomous experiment is a pair of distributions over a shared signal
//! support, one per hypothesis state. Informativeness comparisons are decided
//! through most-powerful randomized test power curves: for binary-state
//! experiments, pointwise power-curve dominance at every size is equivalent
//! to Blackwell dominance, so no garbling matrix is ever searched.

use crate::views::{OutputGrid, TechnologyViews, View, ViewError};
use thiserror::Error;

/// Default tolerance for power-curve comparisons.
pub const BLACKWELL_TOL: f64 = 1e-9;

/// Relative tolerance under which two likelihood ratios are pooled into one
/// atom before the test is built.
const RATIO_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("signal support and probability vectors must have equal length")]
    LengthMismatch,
    #[error("probabilities must be nonnegative and sum to one (got {0})")]
    NotADistribution(f64),
}

/// A signal: one coordinate per component experiment.
pub type Signal = Vec<f64>;

/// A two-state experiment: distributions over `support` under the null state
/// and under the alternative state.
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomousExperiment {
    support: Vec<Signal>,
    p_null: Vec<f64>,
    p_alt: Vec<f64>,
}

impl DichotomousExperiment {
    pub fn new(
        support: Vec<Signal>,
        p_null: Vec<f64>,
        p_alt: Vec<f64>,
    ) -> Result<Self, ExperimentError> {
        if support.len() != p_null.len() || support.len() != p_alt.len() {
            return Err(ExperimentError::LengthMismatch);
        }
        for p in [&p_null, &p_alt] {
            if p.iter().any(|q| *q < 0.0) {
                return Err(ExperimentError::NotADistribution(-1.0));
            }
            let s: f64 = p.iter().sum();
            if (s - 1.0).abs() > crate::views::MASS_TOL {
                return Err(ExperimentError::NotADistribution(s));
            }
        }
        Ok(DichotomousExperiment {
            support,
            p_null,
            p_alt,
        })
    }

    /// Experiment generated by effort `e` on a technology: signals are the
    /// output atoms, the null state draws from the optimistic view and the
    /// alternative from the skeptical one.
    pub fn from_technology(views: &TechnologyViews, e: f64) -> Result<Self, ViewError> {
        let h = views.pmf(View::Optimistic, e)?;
        let l = views.pmf(View::Skeptical, e)?;
        Ok(Self::from_pmfs(views.support(), &h, &l))
    }

    /// Build from two pmfs on a shared output grid (trusted to be valid).
    pub fn from_pmfs(grid: &OutputGrid, p_null: &[f64], p_alt: &[f64]) -> Self {
        DichotomousExperiment {
            support: grid.values().iter().map(|y| vec![*y]).collect(),
            p_null: p_null.to_vec(),
            p_alt: p_alt.to_vec(),
        }
    }

    /// The experiment with the two hypothesis states exchanged.
    pub fn swapped(&self) -> Self {
        DichotomousExperiment {
            support: self.support.clone(),
            p_null: self.p_alt.clone(),
            p_alt: self.p_null.clone(),
        }
    }

    pub fn support(&self) -> &[Signal] {
        &self.support
    }

    pub fn p_null(&self) -> &[f64] {
        &self.p_null
    }

    pub fn p_alt(&self) -> &[f64] {
        &self.p_alt
    }

    fn profile(&self, swap: bool) -> PowerProfile {
        if swap {
            PowerProfile::build(&self.p_alt, &self.p_null)
        } else {
            PowerProfile::build(&self.p_null, &self.p_alt)
        }
    }

    /// Maximal power of the size-`alpha` test for each requested size.
    ///
    /// Signals are ranked by likelihood ratio (alternative over null), the
    /// null mass is accumulated up to `alpha`, and the boundary atom is
    /// included fractionally, which makes the test size exactly `alpha`.
    pub fn power_curve(&self, alphas: &[f64]) -> Vec<f64> {
        let profile = self.profile(false);
        alphas.iter().map(|&a| profile.power(a)).collect()
    }
}

/// Independent product of two experiments: signals are concatenated and
/// probabilities multiply hypothesis-wise.
pub fn product(a: &DichotomousExperiment, b: &DichotomousExperiment) -> DichotomousExperiment {
    let mut support = Vec::with_capacity(a.support.len() * b.support.len());
    let mut p_null = Vec::with_capacity(support.capacity());
    let mut p_alt = Vec::with_capacity(support.capacity());
    for (i, sa) in a.support.iter().enumerate() {
        for (j, sb) in b.support.iter().enumerate() {
            let mut s = sa.clone();
            s.extend_from_slice(sb);
            support.push(s);
            p_null.push(a.p_null[i] * b.p_null[j]);
            p_alt.push(a.p_alt[i] * b.p_alt[j]);
        }
    }
    DichotomousExperiment {
        support,
        p_null,
        p_alt,
    }
}

/// Likelihood-ratio atoms of an experiment, pooled and sorted for the
/// Neyman-Pearson construction.
#[derive(Debug, Clone)]
pub(crate) struct PowerProfile {
    /// Alternative mass on signals the null rules out; any test of size zero
    /// may already reject there.
    inf_alt: f64,
    /// `(ratio, null_mass, alt_mass)` in decreasing ratio order.
    groups: Vec<(f64, f64, f64)>,
}

impl PowerProfile {
    pub(crate) fn build(p_null: &[f64], p_alt: &[f64]) -> PowerProfile {
        let mut inf_alt = 0.0;
        let mut groups: Vec<(f64, f64, f64)> = Vec::with_capacity(p_null.len());
        for (&n, &a) in p_null.iter().zip(p_alt) {
            if n <= 0.0 {
                inf_alt += a;
            } else {
                groups.push((a / n, n, a));
            }
        }
        groups.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite ratios"));
        let mut pooled: Vec<(f64, f64, f64)> = Vec::with_capacity(groups.len());
        for g in groups {
            match pooled.last_mut() {
                Some(last) if last.0 - g.0 <= RATIO_TIE_TOL * last.0.max(1.0) => {
                    last.1 += g.1;
                    last.2 += g.2;
                }
                _ => pooled.push(g),
            }
        }
        PowerProfile {
            inf_alt,
            groups: pooled,
        }
    }

    pub(crate) fn power(&self, alpha: f64) -> f64 {
        let alpha = alpha.clamp(0.0, 1.0);
        let mut cum_null = 0.0;
        let mut power = self.inf_alt;
        for &(_, n, a) in &self.groups {
            if cum_null + n <= alpha {
                cum_null += n;
                power += a;
            } else {
                let frac = ((alpha - cum_null) / n).clamp(0.0, 1.0);
                return power + frac * a;
            }
        }
        power
    }

    /// Null-mass levels where the power curve kinks.
    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut cum = 0.0;
        let mut out = Vec::with_capacity(self.groups.len() + 1);
        out.push(0.0);
        for &(_, n, _) in &self.groups {
            cum += n;
            out.push(cum.min(1.0));
        }
        out
    }
}

/// Outcome of a Blackwell comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlackwellOrder {
    /// `a` is weakly Blackwell more informative than `b`.
    pub dominates: bool,
    /// Dominance holds in both directions.
    pub equivalent: bool,
}

/// Decide whether `a` is Blackwell-more-informative than `b` by comparing
/// most-powerful-test power curves at every size in `alpha_grid`, at both
/// orientations of the null hypothesis, and at every likelihood-ratio
/// breakpoint of either experiment (the curves are piecewise linear, so the
/// breakpoints make the comparison exact rather than sampled).
pub fn blackwell_geq(
    a: &DichotomousExperiment,
    b: &DichotomousExperiment,
    alpha_grid: &[f64],
    tol: f64,
) -> BlackwellOrder {
    let pa = [a.profile(false), a.profile(true)];
    let pb = [b.profile(false), b.profile(true)];
    let mut alphas: Vec<f64> = alpha_grid.iter().copied().collect();
    alphas.push(0.0);
    alphas.push(1.0);
    for p in pa.iter().chain(pb.iter()) {
        alphas.extend(p.breakpoints());
    }
    alphas.sort_by(|x, y| x.partial_cmp(y).expect("finite sizes"));
    alphas.dedup();

    let mut a_ge_b = true;
    let mut b_ge_a = true;
    for &alpha in &alphas {
        for side in 0..2 {
            let va = pa[side].power(alpha);
            let vb = pb[side].power(alpha);
            if va < vb - tol {
                a_ge_b = false;
            }
            if vb < va - tol {
                b_ge_a = false;
            }
        }
        if !a_ge_b && !b_ge_a {
            break;
        }
    }
    BlackwellOrder {
        dominates: a_ge_b,
        equivalent: a_ge_b && b_ge_a,
    }
}

/// Equal falsifiability: at each effort, the experiment that draws from `H`
/// under the null and `L` under the alternative must be Blackwell equivalent
/// to its hypothesis-swapped counterpart.
pub fn check_equal_falsifiability(
    views: &TechnologyViews,
    effort_grid: &[f64],
    tol: f64,
) -> Result<bool, ViewError> {
    for &e in effort_grid {
        let x = DichotomousExperiment::from_technology(views, e)?;
        if !blackwell_geq(&x, &x.swapped(), &[], tol).equivalent {
            return Ok(false);
        }
    }
    Ok(true)
}
