//! Parametric technology-view families, the objective output process, and
//! validators for the structural assumptions the game relies on.
//!
//! A *technology view* maps effort to a distribution over output. Each
//! technology carries a pair of views: an optimistic one (`H`) and a skeptical
//! one (`L`). Continuous families are discretized onto a finite output grid so
//! that likelihood-ratio tests and Blackwell comparisons are exact finite
//! computations.

use crate::experiments::{blackwell_geq, DichotomousExperiment};
use crate::game::PayoffSpec;
use crate::grid::{maximize, EffortGrid};
use thiserror::Error;

/// Numerical tolerance for distribution mass checks.
pub const MASS_TOL: f64 = 1e-12;

/// Tolerance for pointwise CDF comparisons in FOSD checks.
const FOSD_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ViewError {
    #[error("effort {effort} outside [0, {bound}]")]
    EffortOutOfRange { effort: f64, bound: f64 },
    #[error("invalid view family: {0}")]
    BadFamily(String),
    #[error("invalid process table: {0}")]
    BadTable(String),
}

/// One of the two technology views a player can hold about a technology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum View {
    /// The `H` view: effort pays off.
    Optimistic,
    /// The `L` view: effort pays off less, or not at all.
    Skeptical,
}

impl View {
    pub fn letter(self) -> char {
        match self {
            View::Optimistic => 'H',
            View::Skeptical => 'L',
        }
    }

    pub fn parse(s: &str) -> Option<View> {
        match s.trim() {
            "H" | "h" => Some(View::Optimistic),
            "L" | "l" => Some(View::Skeptical),
            _ => None,
        }
    }
}

impl std::fmt::Display for View {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A subjective model: one view per technology.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Model(pub Vec<View>);

impl Model {
    pub fn single(v: View) -> Model {
        Model(vec![v])
    }

    pub fn pair(x: View, y: View) -> Model {
        Model(vec![x, y])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn view(&self, tech: usize) -> View {
        self.0[tech]
    }

    /// Index of the first technology this model is optimistic about, if any.
    pub fn first_optimistic(&self) -> Option<usize> {
        self.0.iter().position(|v| *v == View::Optimistic)
    }

    /// All models over `techs` technologies, in lexicographic order (H before L).
    pub fn enumerate(techs: usize) -> Vec<Model> {
        let mut out = vec![Model(Vec::new())];
        for _ in 0..techs {
            let mut next = Vec::with_capacity(out.len() * 2);
            for m in &out {
                for v in [View::Optimistic, View::Skeptical] {
                    let mut e = m.0.clone();
                    e.push(v);
                    next.push(Model(e));
                }
            }
            out = next;
        }
        out
    }

    /// Compact label such as `H` or `HL`.
    pub fn label(&self) -> String {
        self.0.iter().map(|v| v.letter()).collect()
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Ordered finite list of output values shared by both views of a technology.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputGrid {
    atoms: Vec<f64>,
}

impl OutputGrid {
    pub fn new(atoms: Vec<f64>) -> OutputGrid {
        debug_assert!(atoms.windows(2).all(|w| w[0] < w[1]), "atoms must increase");
        OutputGrid { atoms }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.atoms[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.atoms
    }

    /// Index of the atom matching `y`, within a relative tolerance of 1e-9.
    pub fn position(&self, y: f64) -> Option<usize> {
        if !y.is_finite() {
            return None;
        }
        let i = self.atoms.partition_point(|a| *a < y);
        let tol = 1e-9 * y.abs().max(1.0);
        for cand in [i.wrapping_sub(1), i] {
            if let Some(a) = self.atoms.get(cand) {
                if (a - y).abs() <= tol {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// Symmetric noise distribution used by the additive-noise family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseKind {
    /// Triangular density on `[-half_width, half_width]`.
    Triangular { half_width: f64 },
    /// Normal with standard deviation `sigma`, truncated at four sigmas.
    Gaussian { sigma: f64 },
}

impl NoiseKind {
    fn half_width(&self) -> f64 {
        match self {
            NoiseKind::Triangular { half_width } => *half_width,
            NoiseKind::Gaussian { sigma } => 4.0 * sigma,
        }
    }

    /// CDF of the (un-truncated) noise at `x`.
    fn cdf(&self, x: f64) -> f64 {
        match self {
            NoiseKind::Triangular { half_width } => {
                let t = x / half_width;
                if t <= -1.0 {
                    0.0
                } else if t <= 0.0 {
                    (1.0 + t) * (1.0 + t) / 2.0
                } else if t <= 1.0 {
                    1.0 - (1.0 - t) * (1.0 - t) / 2.0
                } else {
                    1.0
                }
            }
            NoiseKind::Gaussian { sigma } => gaussian_cdf(x / sigma),
        }
    }
}

/// Standard normal CDF.
pub fn gaussian_cdf(z: f64) -> f64 {
    0.5 * (1.0 + libm::erf(z / std::f64::consts::SQRT_2))
}

/// The parametric families of technology-view pairs.
#[derive(Debug, Clone, PartialEq)]
pub enum ViewFamily {
    /// `H`: output `high_payout` with probability `F(e) = min(1, success_slope * e)`,
    /// zero otherwise. `L`: same success curve but payout `low_payout`.
    DiscreteBandit {
        low_payout: f64,
        high_payout: f64,
        success_slope: f64,
    },
    /// Output is a linear mean plus symmetric noise; the optimistic mean slope
    /// strictly exceeds the skeptical one.
    AdditiveNoise {
        optimistic_slope: f64,
        skeptical_slope: f64,
        noise: NoiseKind,
    },
    /// `H`: output `mean_slope * e + U[-noise_half_width, noise_half_width]`;
    /// `L`: pure uniform noise.
    UniformLinear {
        mean_slope: f64,
        noise_half_width: f64,
    },
    /// `H`: `baseline + optimistic_slope * e + N(0, sigma^2)`;
    /// `L`: `skeptical_slope * e + N(0, sigma^2)` with
    /// `skeptical_slope > optimistic_slope > 0` and
    /// `skeptical_slope * b < baseline + optimistic_slope * b`, so the views'
    /// predictions differ most at zero effort.
    InverseInfoLinear {
        baseline: f64,
        optimistic_slope: f64,
        skeptical_slope: f64,
        sigma: f64,
    },
}

/// Internal discretization data per family.
#[derive(Debug, Clone, PartialEq)]
enum Disc {
    Atoms,
    /// Uniform cells of width `cell`; the base interval holds `base_cells`
    /// cells and views shift by `slope * e`.
    UniformCells { cell: f64, base_cells: usize },
    /// Fixed noise mass vector placed at a lattice offset `slope * e / cell`.
    NoiseLattice { cell: f64, noise_pmf: Vec<f64> },
    /// Per-effort Gaussian cell integrals, truncated at four sigmas.
    GaussianCells { cell: f64 },
}

/// A pair of technology views over a shared finite output support.
#[derive(Debug, Clone, PartialEq)]
pub struct TechnologyViews {
    family: ViewFamily,
    effort_bound: f64,
    support: OutputGrid,
    disc: Disc,
}

impl TechnologyViews {
    /// Build a view pair with the given effort bound. `atoms_hint` controls
    /// the discretization resolution of continuous families (ignored by the
    /// discrete bandit); cell widths are snapped so the noise interval spans
    /// a whole number of cells.
    pub fn new(family: ViewFamily, effort_bound: f64, atoms_hint: usize) -> Result<Self, ViewError> {
        if !(effort_bound > 0.0) {
            return Err(ViewError::BadFamily("effort bound must be positive".into()));
        }
        match &family {
            ViewFamily::DiscreteBandit {
                low_payout,
                high_payout,
                success_slope,
            } => {
                if *low_payout < 0.0 || *high_payout <= *low_payout {
                    return Err(ViewError::BadFamily(
                        "discrete bandit requires R > r >= 0".into(),
                    ));
                }
                if *success_slope <= 0.0 {
                    return Err(ViewError::BadFamily("success slope must be positive".into()));
                }
                let mut atoms = vec![0.0];
                if *low_payout > 0.0 {
                    atoms.push(*low_payout);
                }
                atoms.push(*high_payout);
                Ok(TechnologyViews {
                    family,
                    effort_bound,
                    support: OutputGrid::new(atoms),
                    disc: Disc::Atoms,
                })
            }
            ViewFamily::UniformLinear {
                mean_slope,
                noise_half_width,
            } => {
                if *mean_slope <= 0.0 || *noise_half_width <= 0.0 {
                    return Err(ViewError::BadFamily(
                        "uniform-linear requires positive slope and noise width".into(),
                    ));
                }
                let span = mean_slope * effort_bound + 2.0 * noise_half_width;
                let target = span / atoms_hint.max(3) as f64;
                let base_cells = ((2.0 * noise_half_width / target).round() as usize).max(2);
                let cell = 2.0 * noise_half_width / base_cells as f64;
                let shift_cells = (mean_slope * effort_bound / cell - 1e-9).ceil().max(0.0) as usize;
                let lo = -noise_half_width;
                let atoms = (0..base_cells + shift_cells)
                    .map(|i| lo + (i as f64 + 0.5) * cell)
                    .collect();
                Ok(TechnologyViews {
                    family,
                    effort_bound,
                    support: OutputGrid::new(atoms),
                    disc: Disc::UniformCells { cell, base_cells },
                })
            }
            ViewFamily::AdditiveNoise {
                optimistic_slope,
                skeptical_slope,
                noise,
            } => {
                if !(*optimistic_slope > *skeptical_slope && *skeptical_slope >= 0.0) {
                    return Err(ViewError::BadFamily(
                        "additive-noise requires optimistic slope > skeptical slope >= 0".into(),
                    ));
                }
                let w = noise.half_width();
                if !(w > 0.0) {
                    return Err(ViewError::BadFamily("noise width must be positive".into()));
                }
                let span = optimistic_slope * effort_bound + 2.0 * w;
                let target = span / atoms_hint.max(3) as f64;
                let noise_cells = ((2.0 * w / target).round() as usize).max(2);
                let cell = 2.0 * w / noise_cells as f64;
                let mut noise_pmf: Vec<f64> = (0..noise_cells)
                    .map(|i| {
                        let a = -w + i as f64 * cell;
                        noise.cdf(a + cell) - noise.cdf(a)
                    })
                    .collect();
                normalize(&mut noise_pmf);
                let shift_cells =
                    (optimistic_slope * effort_bound / cell - 1e-9).ceil().max(0.0) as usize;
                let atoms = (0..noise_cells + shift_cells)
                    .map(|i| -w + (i as f64 + 0.5) * cell)
                    .collect();
                Ok(TechnologyViews {
                    family,
                    effort_bound,
                    support: OutputGrid::new(atoms),
                    disc: Disc::NoiseLattice { cell, noise_pmf },
                })
            }
            ViewFamily::InverseInfoLinear {
                baseline,
                optimistic_slope,
                skeptical_slope,
                sigma,
            } => {
                if !(*skeptical_slope > *optimistic_slope && *optimistic_slope > 0.0) {
                    return Err(ViewError::BadFamily(
                        "inverse-info requires skeptical slope > optimistic slope > 0".into(),
                    ));
                }
                if !(skeptical_slope * effort_bound < baseline + optimistic_slope * effort_bound) {
                    return Err(ViewError::BadFamily(
                        "inverse-info requires the optimistic mean to stay above the skeptical one"
                            .into(),
                    ));
                }
                if !(*sigma > 0.0) {
                    return Err(ViewError::BadFamily("sigma must be positive".into()));
                }
                let lo = 0.0f64.min(*baseline) - 4.0 * sigma;
                let hi = baseline + optimistic_slope * effort_bound + 4.0 * sigma;
                let n = atoms_hint.max(3);
                let cell = (hi - lo) / n as f64;
                let atoms = (0..n).map(|i| lo + (i as f64 + 0.5) * cell).collect();
                Ok(TechnologyViews {
                    family,
                    effort_bound,
                    support: OutputGrid::new(atoms),
                    disc: Disc::GaussianCells { cell },
                })
            }
        }
    }

    pub fn family(&self) -> &ViewFamily {
        &self.family
    }

    pub fn effort_bound(&self) -> f64 {
        self.effort_bound
    }

    pub fn support(&self) -> &OutputGrid {
        &self.support
    }

    fn check_effort(&self, e: f64) -> Result<(), ViewError> {
        if e.is_finite() && (0.0..=self.effort_bound + 1e-12).contains(&e) {
            Ok(())
        } else {
            Err(ViewError::EffortOutOfRange {
                effort: e,
                bound: self.effort_bound,
            })
        }
    }

    /// Probability masses of `view` at effort `e`, one entry per support atom.
    pub fn pmf(&self, view: View, e: f64) -> Result<Vec<f64>, ViewError> {
        self.check_effort(e)?;
        let mut p = vec![0.0; self.support.len()];
        match (&self.family, &self.disc) {
            (
                ViewFamily::DiscreteBandit {
                    low_payout,
                    high_payout,
                    success_slope,
                },
                Disc::Atoms,
            ) => {
                let f = (success_slope * e).min(1.0);
                let payout = match view {
                    View::Optimistic => *high_payout,
                    View::Skeptical => *low_payout,
                };
                let at = self.support.position(payout).expect("payout atom");
                p[at] += f;
                p[0] += 1.0 - f;
            }
            (
                ViewFamily::UniformLinear {
                    mean_slope,
                    noise_half_width,
                },
                Disc::UniformCells { cell, base_cells },
            ) => {
                let shift = match view {
                    View::Optimistic => mean_slope * e,
                    View::Skeptical => 0.0,
                };
                uniform_overlap(&mut p, shift, *noise_half_width, *cell, *base_cells);
            }
            (
                ViewFamily::AdditiveNoise {
                    optimistic_slope,
                    skeptical_slope,
                    ..
                },
                Disc::NoiseLattice { cell, noise_pmf },
            ) => {
                let slope = match view {
                    View::Optimistic => *optimistic_slope,
                    View::Skeptical => *skeptical_slope,
                };
                lattice_place(&mut p, noise_pmf, slope * e / cell);
            }
            (
                ViewFamily::InverseInfoLinear {
                    baseline,
                    optimistic_slope,
                    skeptical_slope,
                    sigma,
                },
                Disc::GaussianCells { cell },
            ) => {
                let mean = match view {
                    View::Optimistic => baseline + optimistic_slope * e,
                    View::Skeptical => skeptical_slope * e,
                };
                let lo = mean - 4.0 * sigma;
                let hi = mean + 4.0 * sigma;
                for (i, q) in p.iter_mut().enumerate() {
                    let a = (self.support.value(i) - cell / 2.0).max(lo);
                    let b = (self.support.value(i) + cell / 2.0).min(hi);
                    if b > a {
                        *q = gaussian_cdf((b - mean) / sigma) - gaussian_cdf((a - mean) / sigma);
                    }
                }
            }
            _ => unreachable!("discretization matches family"),
        }
        normalize(&mut p);
        Ok(p)
    }

    /// `P_view(y | e)`; zero when `y` is not a support atom.
    pub fn likelihood(&self, view: View, e: f64, y: f64) -> Result<f64, ViewError> {
        let p = self.pmf(view, e)?;
        Ok(self.support.position(y).map_or(0.0, |i| p[i]))
    }

    /// Mean output of `view` at effort `e`.
    pub fn expected_output(&self, view: View, e: f64) -> Result<f64, ViewError> {
        let p = self.pmf(view, e)?;
        Ok(mean_on(&self.support, &p))
    }
}

fn normalize(p: &mut [f64]) {
    let s: f64 = p.iter().sum();
    debug_assert!(s > 0.0, "distribution has zero mass");
    for q in p.iter_mut() {
        *q /= s;
    }
}

pub(crate) fn mean_on(support: &OutputGrid, pmf: &[f64]) -> f64 {
    support
        .values()
        .iter()
        .zip(pmf)
        .map(|(y, p)| y * p)
        .sum()
}

/// Write the discretized `U[shift - psi, shift + psi]` masses into `p`.
///
/// Cell edges sit at `-psi + i * cell`; when the shift is (numerically) a
/// whole number of cells the masses are exactly flat, which keeps the
/// likelihood-ratio geometry of the uniform family exact.
fn uniform_overlap(p: &mut [f64], shift: f64, psi: f64, cell: f64, base_cells: usize) {
    let k = (shift / cell).round();
    if (shift - k * cell).abs() <= 1e-9 * shift.abs().max(1.0) {
        let k = k as usize;
        let mass = 1.0 / base_cells as f64;
        for q in p.iter_mut().skip(k).take(base_cells) {
            *q = mass;
        }
    } else {
        let a = shift - psi;
        let b = shift + psi;
        for (i, q) in p.iter_mut().enumerate() {
            let lo = -psi + i as f64 * cell;
            let hi = lo + cell;
            let len = (hi.min(b) - lo.max(a)).max(0.0);
            *q = len / (2.0 * psi);
        }
    }
}

/// Place a noise mass vector at fractional lattice offset, blending the two
/// adjacent integer offsets linearly when the offset is not whole.
fn lattice_place(p: &mut [f64], noise: &[f64], offset: f64) {
    let k = offset.floor() as usize;
    let frac = offset - offset.floor();
    let (w0, w1) = if frac <= 1e-9 || frac >= 1.0 - 1e-9 {
        (1.0, 0.0)
    } else {
        (1.0 - frac, frac)
    };
    let k = if frac >= 1.0 - 1e-9 { k + 1 } else { k };
    for (i, m) in noise.iter().enumerate() {
        p[i + k] += w0 * m;
        if w1 > 0.0 {
            p[i + k + 1] += w1 * m;
        }
    }
}

/// The objective effort-to-output process, one component per technology.
#[derive(Debug, Clone, PartialEq)]
pub enum ProcessSpec {
    /// The process coincides with one of the technology's views.
    View(View),
    /// Arbitrary conditional table over the support, indexed by an effort grid.
    Table(ProcessTable),
}

/// Conditional output distributions tabulated on an effort grid; rows are
/// interpolated linearly between grid efforts.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessTable {
    pub efforts: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl ProcessTable {
    /// A process with mean `gamma * e` and the same uniform noise as a
    /// uniform-linear technology, tabulated on `efforts`.
    pub fn linear_uniform(
        tech: &TechnologyViews,
        gamma: f64,
        efforts: &[f64],
    ) -> Result<ProcessTable, ViewError> {
        let (psi, cell, base_cells) = match (&tech.family, &tech.disc) {
            (
                ViewFamily::UniformLinear {
                    noise_half_width, ..
                },
                Disc::UniformCells { cell, base_cells },
            ) => (*noise_half_width, *cell, *base_cells),
            _ => {
                return Err(ViewError::BadTable(
                    "linear_uniform requires a uniform-linear technology".into(),
                ))
            }
        };
        if gamma <= 0.0 {
            return Err(ViewError::BadTable("gamma must be positive".into()));
        }
        let rows = efforts
            .iter()
            .map(|&e| {
                let mut p = vec![0.0; tech.support.len()];
                uniform_overlap(&mut p, gamma * e, psi, cell, base_cells);
                normalize(&mut p);
                p
            })
            .collect();
        Ok(ProcessTable {
            efforts: efforts.to_vec(),
            rows,
        })
    }

    fn pmf(&self, e: f64) -> Vec<f64> {
        let n = self.efforts.len();
        if e <= self.efforts[0] {
            return self.rows[0].clone();
        }
        if e >= self.efforts[n - 1] {
            return self.rows[n - 1].clone();
        }
        let j = self.efforts.partition_point(|x| *x <= e).min(n - 1);
        let (e0, e1) = (self.efforts[j - 1], self.efforts[j]);
        let t = (e - e0) / (e1 - e0);
        self.rows[j - 1]
            .iter()
            .zip(&self.rows[j])
            .map(|(a, b)| (1.0 - t) * a + t * b)
            .collect()
    }

    fn validate(&self, support_len: usize) -> Result<(), ViewError> {
        if self.efforts.len() < 2 || self.efforts.len() != self.rows.len() {
            return Err(ViewError::BadTable("need one row per grid effort".into()));
        }
        if !self.efforts.windows(2).all(|w| w[0] < w[1]) {
            return Err(ViewError::BadTable("efforts must increase".into()));
        }
        for row in &self.rows {
            if row.len() != support_len {
                return Err(ViewError::BadTable("row length must match support".into()));
            }
            if row.iter().any(|p| *p < -MASS_TOL) {
                return Err(ViewError::BadTable("negative mass".into()));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return Err(ViewError::BadTable(format!("row mass {s} != 1")));
            }
        }
        Ok(())
    }
}

/// The true process `Q`, one spec per technology.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueProcess {
    specs: Vec<ProcessSpec>,
}

impl TrueProcess {
    pub fn new(specs: Vec<ProcessSpec>) -> TrueProcess {
        TrueProcess { specs }
    }

    pub fn from_views(views: Vec<View>) -> TrueProcess {
        TrueProcess {
            specs: views.into_iter().map(ProcessSpec::View).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.specs.len()
    }

    pub fn spec(&self, tech: usize) -> &ProcessSpec {
        &self.specs[tech]
    }

    pub fn pmf(
        &self,
        techs: &[TechnologyViews],
        tech: usize,
        e: f64,
    ) -> Result<Vec<f64>, ViewError> {
        match &self.specs[tech] {
            ProcessSpec::View(v) => techs[tech].pmf(*v, e),
            ProcessSpec::Table(t) => {
                techs[tech].check_effort(e)?;
                Ok(t.pmf(e))
            }
        }
    }

    pub fn expected_output(
        &self,
        techs: &[TechnologyViews],
        tech: usize,
        e: f64,
    ) -> Result<f64, ViewError> {
        Ok(mean_on(
            techs[tech].support(),
            &self.pmf(techs, tech, e)?,
        ))
    }

    /// Structural validation: arity, table shape, and row masses.
    pub fn validate(&self, techs: &[TechnologyViews]) -> Result<(), ViewError> {
        if self.specs.len() != techs.len() {
            return Err(ViewError::BadTable(
                "process arity must match technology count".into(),
            ));
        }
        for (k, spec) in self.specs.iter().enumerate() {
            if let ProcessSpec::Table(t) = spec {
                t.validate(techs[k].support().len())?;
            }
        }
        Ok(())
    }
}

/// Pointwise CDF comparison between two pmfs on the same support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FosdRelation {
    /// `hi` first-order stochastically dominates `lo`, weakly.
    pub weakly_dominates: bool,
    /// Some CDF point is strictly lower.
    pub strict_somewhere: bool,
    /// The two distributions coincide.
    pub equal: bool,
}

/// Compare `hi` against `lo`: dominance holds when `CDF_hi <= CDF_lo`
/// pointwise.
pub fn fosd_compare(hi: &[f64], lo: &[f64]) -> FosdRelation {
    let mut ch = 0.0;
    let mut cl = 0.0;
    let mut weakly = true;
    let mut strict = false;
    let mut equal = true;
    for (a, b) in hi.iter().zip(lo) {
        ch += a;
        cl += b;
        if ch > cl + FOSD_TOL {
            weakly = false;
        }
        if ch < cl - FOSD_TOL {
            strict = true;
        }
        if (a - b).abs() > FOSD_TOL {
            equal = false;
        }
    }
    FosdRelation {
        weakly_dominates: weakly,
        strict_somewhere: strict,
        equal,
    }
}

/// Flags reported by [`validate_assumptions`].
#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    /// The true process is strictly FOSD-monotone on the grid.
    pub fosd_q: bool,
    /// The optimistic view is strictly FOSD-monotone.
    pub fosd_h: bool,
    /// The skeptical view is (weakly) FOSD-monotone.
    pub fosd_l: bool,
    /// `H` dominates `L` at every positive grid effort (equality allowed at 0).
    pub dominance_h_over_l: bool,
    /// The two static effort problems have tie-free grid argmaxes.
    pub maximizers_unique: bool,
    /// `b > e^H > e^L >= 0`.
    pub maximizers_ordered: bool,
    pub effort_h: f64,
    pub effort_l: f64,
    /// Higher effort is Blackwell weakly more informative at every
    /// consecutive grid pair.
    pub informativeness_monotone: bool,
    /// Lower effort is weakly more informative at every consecutive pair.
    pub informativeness_reversed: bool,
    /// The two views coincide at zero effort, so the zero-effort experiment
    /// carries no information. Reported, not a failure.
    pub uninformative_at_zero: bool,
}

impl AssumptionReport {
    pub fn all_structural(&self) -> bool {
        self.fosd_h
            && self.fosd_l
            && self.dominance_h_over_l
            && self.maximizers_unique
            && self.maximizers_ordered
            && self.informativeness_monotone
    }
}

/// Check the structural assumptions of one technology on an effort grid.
///
/// Nothing here fails hard: each flag records whether the corresponding
/// assumption holds for this parametrization, and families that deliberately
/// reverse the informativeness order simply report `informativeness_monotone
/// = false` and `informativeness_reversed = true`.
pub fn validate_assumptions(
    techs: &[TechnologyViews],
    tech: usize,
    process: Option<&TrueProcess>,
    payoff: &PayoffSpec,
    grid: &EffortGrid,
) -> Result<AssumptionReport, ViewError> {
    let views = &techs[tech];
    let efforts: Vec<f64> = grid.values().collect();
    let pmf_h: Vec<Vec<f64>> = efforts
        .iter()
        .map(|&e| views.pmf(View::Optimistic, e))
        .collect::<Result<_, _>>()?;
    let pmf_l: Vec<Vec<f64>> = efforts
        .iter()
        .map(|&e| views.pmf(View::Skeptical, e))
        .collect::<Result<_, _>>()?;

    let monotone = |rows: &[Vec<f64>], strict: bool| {
        rows.windows(2).all(|w| {
            let rel = fosd_compare(&w[1], &w[0]);
            rel.weakly_dominates && (!strict || rel.strict_somewhere)
        })
    };
    let fosd_h = monotone(&pmf_h, true);
    let fosd_l = monotone(&pmf_l, false);
    let fosd_q = match process {
        Some(q) => {
            let rows: Vec<Vec<f64>> = efforts
                .iter()
                .map(|&e| q.pmf(techs, tech, e))
                .collect::<Result<_, _>>()?;
            monotone(&rows, true)
        }
        None => true,
    };

    let mut dominance = true;
    for (i, e) in efforts.iter().enumerate() {
        let rel = fosd_compare(&pmf_h[i], &pmf_l[i]);
        let ok = if *e > 0.0 {
            rel.weakly_dominates && rel.strict_somewhere
        } else {
            rel.weakly_dominates
        };
        if !ok {
            dominance = false;
        }
    }

    let opt_h = maximize(grid, |e| {
        payoff.expected_own_utility(
            views.support(),
            &views.pmf(View::Optimistic, e).expect("grid effort"),
            e,
        )
    });
    let opt_l = maximize(grid, |e| {
        payoff.expected_own_utility(
            views.support(),
            &views.pmf(View::Skeptical, e).expect("grid effort"),
            e,
        )
    });
    let slack = grid.fine_step();
    let ordered = opt_h.argument < views.effort_bound() - slack / 2.0
        && opt_h.argument > opt_l.argument + slack / 2.0;

    let experiments: Vec<DichotomousExperiment> = efforts
        .iter()
        .enumerate()
        .map(|(i, _)| DichotomousExperiment::from_pmfs(views.support(), &pmf_h[i], &pmf_l[i]))
        .collect();
    let mut up = true;
    let mut down = true;
    for w in experiments.windows(2) {
        if !blackwell_geq(&w[1], &w[0], &[], 1e-9).dominates {
            up = false;
        }
        if !blackwell_geq(&w[0], &w[1], &[], 1e-9).dominates {
            down = false;
        }
    }
    let uninformative_at_zero = pmf_h[0]
        .iter()
        .zip(&pmf_l[0])
        .all(|(a, b)| (a - b).abs() <= MASS_TOL);

    Ok(AssumptionReport {
        fosd_q,
        fosd_h,
        fosd_l,
        dominance_h_over_l: dominance,
        maximizers_unique: !opt_h.tied && !opt_l.tied,
        maximizers_ordered: ordered,
        effort_h: opt_h.argument,
        effort_l: opt_l.argument,
        informativeness_monotone: up,
        informativeness_reversed: down && !up,
        uninformative_at_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{OwnUtility, PayoffSpec};
    use approx::assert_abs_diff_eq;

    fn bandit(r: f64) -> TechnologyViews {
        TechnologyViews::new(
            ViewFamily::DiscreteBandit {
                low_payout: r,
                high_payout: 1.0,
                success_slope: 1.0,
            },
            1.0,
            0,
        )
        .unwrap()
    }

    fn uniform_example() -> TechnologyViews {
        // psi = 5, slope 1, b = 4; 875 atoms give cell width 0.016.
        TechnologyViews::new(
            ViewFamily::UniformLinear {
                mean_slope: 1.0,
                noise_half_width: 5.0,
            },
            4.0,
            875,
        )
        .unwrap()
    }

    #[test]
    fn bandit_likelihood_matches_success_curve() {
        let v = bandit(0.0);
        assert_abs_diff_eq!(v.likelihood(View::Optimistic, 0.3, 1.0).unwrap(), 0.3);
        assert_abs_diff_eq!(v.likelihood(View::Optimistic, 0.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(v.likelihood(View::Skeptical, 0.3, 0.0).unwrap(), 1.0);
        // off-support output is mass zero, not an error
        assert_eq!(v.likelihood(View::Optimistic, 0.3, 0.5).unwrap(), 0.0);
        assert!(v.likelihood(View::Optimistic, 1.5, 1.0).is_err());
    }

    #[test]
    fn uniform_likelihood_matches_analytic_density() {
        let v = uniform_example();
        // cell width 0.016; analytic uniform density 1/(2 psi) = 0.1.
        let cell = v.support.value(1) - v.support.value(0);
        assert_abs_diff_eq!(cell, 0.016, epsilon = 1e-12);
        // 0 must sit on the support: cells anchored at -psi with an odd base count.
        let mass = v.likelihood(View::Skeptical, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(mass, cell / 10.0, epsilon = 1e-12);
    }

    #[test]
    fn expected_output_bandit_and_uniform() {
        let v = bandit(0.0);
        assert_abs_diff_eq!(v.expected_output(View::Optimistic, 0.25).unwrap(), 0.25);
        assert_abs_diff_eq!(v.expected_output(View::Skeptical, 0.7).unwrap(), 0.0);
        let u = uniform_example();
        // mean of slope*e plus symmetric noise; aligned shift keeps it exact.
        assert_abs_diff_eq!(
            u.expected_output(View::Optimistic, 1.2).unwrap(),
            1.2,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(u.expected_output(View::Skeptical, 1.2).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn pmfs_are_distributions() {
        let grids = [bandit(0.5), uniform_example()];
        for v in &grids {
            for view in [View::Optimistic, View::Skeptical] {
                for e in [0.0, 0.3, 1.0] {
                    let p = v.pmf(view, e).unwrap();
                    let s: f64 = p.iter().sum();
                    assert!((s - 1.0).abs() <= MASS_TOL);
                    assert!(p.iter().all(|q| *q >= 0.0));
                }
            }
        }
    }

    #[test]
    fn validate_bandit_assumptions() {
        let techs = vec![bandit(0.0)];
        let payoff = PayoffSpec::new(OwnUtility::Quadratic { cost: 4.0 }, 2.0);
        let grid = EffortGrid::new(1.0, 41);
        let rep = validate_assumptions(&techs, 0, None, &payoff, &grid).unwrap();
        assert!(rep.fosd_h && rep.fosd_l && rep.dominance_h_over_l);
        assert!(rep.maximizers_unique && rep.maximizers_ordered);
        assert_abs_diff_eq!(rep.effort_h, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.effort_l, 0.0, epsilon = 1e-12);
        assert!(rep.informativeness_monotone);
        assert!(!rep.informativeness_reversed);
    }

    #[test]
    fn identical_views_fail_dominance_only() {
        // A bandit with r = R would be rejected; emulate identical views with
        // an additive-noise pair whose slopes nearly coincide is not allowed
        // either, so compare H against itself directly.
        let v = bandit(0.5);
        let p = v.pmf(View::Optimistic, 0.4).unwrap();
        let rel = fosd_compare(&p, &p);
        assert!(rel.weakly_dominates && !rel.strict_somewhere && rel.equal);
    }

    #[test]
    fn inverse_info_reverses_informativeness() {
        let techs = vec![TechnologyViews::new(
            ViewFamily::InverseInfoLinear {
                baseline: 5.0,
                optimistic_slope: 0.5,
                skeptical_slope: 1.0,
                sigma: 1.0,
            },
            8.0,
            201,
        )
        .unwrap()];
        let payoff = PayoffSpec::new(OwnUtility::Quadratic { cost: 4.0 }, 2.0);
        let grid = EffortGrid::new(8.0, 17);
        let rep = validate_assumptions(&techs, 0, None, &payoff, &grid).unwrap();
        assert!(!rep.informativeness_monotone);
        assert!(rep.informativeness_reversed);
        assert!(rep.fosd_h && rep.fosd_l && rep.dominance_h_over_l);
    }

    #[test]
    fn inverse_info_rejects_bad_parameters() {
        let r = TechnologyViews::new(
            ViewFamily::InverseInfoLinear {
                baseline: 1.0,
                optimistic_slope: 0.5,
                skeptical_slope: 1.0,
                sigma: 1.0,
            },
            8.0,
            201,
        );
        assert!(r.is_err(), "mean ordering constraint must be enforced");
    }

    #[test]
    fn uniform_views_coincide_at_zero_effort() {
        let techs = vec![uniform_example()];
        let payoff = PayoffSpec::new(OwnUtility::Quadratic { cost: 1.0 }, 2.0);
        let grid = EffortGrid::new(4.0, 17);
        let rep = validate_assumptions(&techs, 0, None, &payoff, &grid).unwrap();
        assert!(rep.uninformative_at_zero);
        assert!(rep.informativeness_monotone);
        assert!(rep.dominance_h_over_l);
    }

    #[test]
    fn linear_table_process_interpolates_and_validates() {
        let tech = uniform_example();
        let efforts: Vec<f64> = (0..=40).map(|i| i as f64 * 0.1).collect();
        let table = ProcessTable::linear_uniform(&tech, 1.0, &efforts).unwrap();
        let q = TrueProcess::new(vec![ProcessSpec::Table(table)]);
        let techs = vec![tech];
        q.validate(&techs).unwrap();
        assert_abs_diff_eq!(q.expected_output(&techs, 0, 1.2).unwrap(), 1.2, epsilon = 1e-9);
        // off-grid effort interpolates between rows; mean stays linear
        assert_abs_diff_eq!(q.expected_output(&techs, 0, 1.25).unwrap(), 1.25, epsilon = 1e-9);
    }

    #[test]
    fn model_enumeration_and_labels() {
        let ms = Model::enumerate(2);
        assert_eq!(ms.len(), 4);
        assert_eq!(ms[0].label(), "HH");
        assert_eq!(ms[3].label(), "LL");
        assert_eq!(Model::pair(View::Optimistic, View::Skeptical).first_optimistic(), Some(0));
        assert_eq!(Model::pair(View::Skeptical, View::Optimistic).first_optimistic(), Some(1));
    }
}
