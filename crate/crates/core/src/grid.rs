//! Uniform effort grids and grid-based maximization with one refinement pass.
//!
//! No convexity is assumed anywhere: every optimization in the crate is an
//! exhaustive scan of a uniform grid followed by a single 10x-finer scan
//! around the incumbent. Ties break toward the lowest effort and are flagged.

/// Relative tolerance used to declare two objective values tied.
pub const TIE_TOL: f64 = 1e-12;

/// How much finer the local refinement pass is than the base grid.
pub const REFINE_FACTOR: usize = 10;

/// A uniform grid on the effort interval `[0, bound]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EffortGrid {
    bound: f64,
    points: usize,
}

impl EffortGrid {
    /// A grid with `points` equally spaced values from `0` to `bound` inclusive.
    ///
    /// `points` must be at least 3 and `bound` strictly positive.
    pub fn new(bound: f64, points: usize) -> Self {
        assert!(bound > 0.0, "effort bound must be positive");
        assert!(points >= 3, "grid needs at least 3 points");
        Self { bound, points }
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spacing between adjacent grid values.
    pub fn step(&self) -> f64 {
        self.bound / (self.points - 1) as f64
    }

    /// Spacing of the refinement pass.
    pub fn fine_step(&self) -> f64 {
        self.step() / REFINE_FACTOR as f64
    }

    pub fn value(&self, index: usize) -> f64 {
        debug_assert!(index < self.points);
        self.bound * index as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.value(i))
    }

    /// A grid over the same interval with twice as many cells.
    pub fn doubled(&self) -> EffortGrid {
        EffortGrid::new(self.bound, 2 * (self.points - 1) + 1)
    }
}

/// Result of a grid maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMax {
    pub index: usize,
    pub argument: f64,
    pub value: f64,
    /// Another grid point achieved the maximum within [`TIE_TOL`].
    pub tied: bool,
}

/// Exhaustive argmax over the grid. Ties break to the lowest index.
pub fn grid_argmax(grid: &EffortGrid, mut f: impl FnMut(f64) -> f64) -> GridMax {
    let mut best = GridMax {
        index: 0,
        argument: grid.value(0),
        value: f(grid.value(0)),
        tied: false,
    };
    for i in 1..grid.len() {
        let e = grid.value(i);
        let v = f(e);
        let tol = TIE_TOL * best.value.abs().max(1.0);
        if v > best.value + tol {
            best = GridMax {
                index: i,
                argument: e,
                value: v,
                tied: false,
            };
        } else if v > best.value - tol {
            best.tied = true;
        }
    }
    best
}

/// Argmax over an explicit candidate list. Ties break to the earliest entry.
pub fn scan_argmax(candidates: impl Iterator<Item = f64>, mut f: impl FnMut(f64) -> f64) -> GridMax {
    let mut best: Option<GridMax> = None;
    for (i, e) in candidates.enumerate() {
        let v = f(e);
        match &mut best {
            None => {
                best = Some(GridMax {
                    index: i,
                    argument: e,
                    value: v,
                    tied: false,
                })
            }
            Some(b) => {
                let tol = TIE_TOL * b.value.abs().max(1.0);
                if v > b.value + tol {
                    *b = GridMax {
                        index: i,
                        argument: e,
                        value: v,
                        tied: false,
                    };
                } else if v > b.value - tol {
                    b.tied = true;
                }
            }
        }
    }
    best.expect("candidate list must be nonempty")
}

/// One refinement pass: rescan `[center - step, center + step] ∩ [0, bound]`
/// at `REFINE_FACTOR`-times finer spacing.
pub fn refine_around(
    grid: &EffortGrid,
    center: f64,
    mut f: impl FnMut(f64) -> f64,
) -> GridMax {
    let lo = (center - grid.step()).max(0.0);
    let hi = (center + grid.step()).min(grid.bound());
    let fine = grid.fine_step();
    let n = ((hi - lo) / fine).round() as usize;
    scan_argmax((0..=n).map(|i| (lo + i as f64 * fine).min(hi)), &mut f)
}

/// Grid argmax followed by one local refinement pass.
pub fn maximize(grid: &EffortGrid, mut f: impl FnMut(f64) -> f64) -> GridMax {
    let coarse = grid_argmax(grid, &mut f);
    let mut refined = refine_around(grid, coarse.argument, &mut f);
    refined.tied |= coarse.tied;
    refined.index = coarse.index;
    refined
}
