//! Numerical re-derivation of the sharp constants.
//!
//! Under the rotation `c₁ = c ≥ 0`, `c₂ = (c² + (4−c²)x)/2` with `|x| ≤ 1`,
//! both functionals are explicit in `(c, x)`:
//!
//! * `S_γ(α)`: `D2 = (1−α)cos γ/4 · (ψ − 4c)`, `ψ = |c²(1 + 2(1−α)μ) + (4−c²)x|`;
//! * `C_γ(α)`: `D2 = (1−α)cos γ/12 · (ψ − 6c)`;
//! * `G(λ)`: `D2 = λ/24 · (|c²(1−λ) + (4−c²)x| − 6c)`.
//!
//! [`grid_optimize`] scans `(c, r, θ)` with `x = r e^{iθ}`, then polishes the
//! best cell by block coordinate descent. [`sample_no_violation`] checks the
//! unreduced functionals on random class members.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::Range;

// unused whenever std is linked into the build graph
#[allow(unused_imports)]
use num_traits::Float;

use crate::bounds::{bound, d2_lower_value, t_factor, BoundInterval, Functional};
use crate::caratheodory::random_rep;
use crate::classes::{member_from_p, ClassParams, CoeffTriple, Family};
use crate::config::{DEFAULT_GRID, ENDPOINT_TOL, MONOTONICITY_POINTS, RANGE_TOL, REFINE_ITERATIONS, SAMPLE_SLACK};
use crate::rng::Uniform;
use crate::{Error, Result, C64};

/// Truncation order of sampled members (only `a₁, a₂, a₃` are read).
pub const SAMPLE_ORDER: usize = 6;

/// A class together with one of the two functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalSpec {
    /// Class parameters.
    pub params: ClassParams,
    /// `D1` or `D2`.
    pub which: Functional,
}

impl FunctionalSpec {
    /// Validates `params`.
    pub fn new(params: ClassParams, which: Functional) -> Result<Self> {
        Ok(FunctionalSpec { params: params.validated()?, which })
    }

    fn objective(&self) -> Objective {
        let p = &self.params;
        let (scale, w, lin) = match p.family {
            Family::Spirallike => (p.scaled_cos() / 4.0, C64::new(1.0, 0.0) + p.scaled_mu() * 2.0, 4.0),
            Family::ConvexGamma => (p.scaled_cos() / 12.0, C64::new(1.0, 0.0) + p.scaled_mu() * 2.0, 6.0),
            Family::OzakiG => (p.lambda / 24.0, C64::new(1.0 - p.lambda, 0.0), 6.0),
        };
        let d1_slope = match p.family {
            Family::Spirallike => p.scaled_cos(),
            Family::ConvexGamma => p.scaled_cos() / 2.0,
            Family::OzakiG => p.lambda / 4.0,
        };
        Objective { which: self.which, scale, w, lin, d1_slope }
    }
}

#[derive(Clone, Copy)]
struct Objective {
    which: Functional,
    scale: f64,
    w: C64,
    lin: f64,
    d1_slope: f64,
}

impl Objective {
    #[inline]
    fn eval(&self, c: f64, x: C64) -> f64 {
        match self.which {
            Functional::D1 => self.d1_slope * c - 1.0,
            Functional::D2 => {
                let c2 = c * c;
                self.scale * ((self.w * c2 + x * (4.0 - c2)).norm() - self.lin * c)
            }
        }
    }
}

/// `|a₃| − |a₂|` (or `|a₂| − |a₁|`) at `c₁ = c`, `c₂ = (c² + (4−c²)x)/2`.
pub fn functional_value(spec: &FunctionalSpec, c: f64, x: C64) -> Result<f64> {
    if !(c.is_finite() && (-RANGE_TOL..=2.0 + RANGE_TOL).contains(&c)) {
        return Err(Error::domain(alloc::format!("c = {c} outside [0, 2]")));
    }
    if x.norm().is_nan() || x.norm() > 1.0 + RANGE_TOL {
        return Err(Error::domain("|x| must not exceed 1"));
    }
    let spec = FunctionalSpec::new(spec.params, spec.which)?;
    Ok(spec.objective().eval(c.clamp(0.0, 2.0), x))
}

/// Grid dimensions in `c`, `r`, `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSize {
    /// Points in `c ∈ [0, 2]`, endpoints included.
    pub n_c: usize,
    /// Points in `r ∈ [0, 1]`, endpoints included.
    pub n_r: usize,
    /// Points in `θ ∈ [0, 2π)`.
    pub n_theta: usize,
}

impl GridSize {
    /// Each size must be at least 2.
    pub fn new(n_c: usize, n_r: usize, n_theta: usize) -> Result<Self> {
        if n_c < 2 || n_r < 2 || n_theta < 2 {
            return Err(Error::domain("grid sizes must be at least 2"));
        }
        Ok(GridSize { n_c, n_r, n_theta })
    }

    /// Number of grid points.
    pub fn total(&self) -> usize {
        self.n_c * self.n_r * self.n_theta
    }

    /// Spacing in `c`.
    pub fn c_step(&self) -> f64 {
        2.0 / (self.n_c - 1) as f64
    }

    /// The point with the given indices.
    pub fn point(&self, i: usize, j: usize, k: usize) -> GridPoint {
        GridPoint {
            c: 2.0 * i as f64 / (self.n_c - 1) as f64,
            r: j as f64 / (self.n_r - 1) as f64,
            theta: TAU * k as f64 / self.n_theta as f64,
        }
    }
}

impl Default for GridSize {
    fn default() -> Self {
        let (n_c, n_r, n_theta) = DEFAULT_GRID;
        GridSize { n_c, n_r, n_theta }
    }
}

/// A point `(c, r, θ)`, `x = r e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// `c₁ ∈ [0, 2]`.
    pub c: f64,
    /// `|x|`.
    pub r: f64,
    /// `arg x`.
    pub theta: f64,
}

impl GridPoint {
    /// `r e^{iθ}`.
    pub fn x(&self) -> C64 {
        C64::from_polar(self.r, self.theta)
    }
}

/// Best grid cells found in a scan, as `(value, (i, j, k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    /// Smallest value and its index.
    pub min: (f64, (usize, usize, usize)),
    /// Largest value and its index.
    pub max: (f64, (usize, usize, usize)),
}

impl Extrema {
    /// Combines two partial scans. Ties go to the smaller index, so the result
    /// does not depend on how the grid was split.
    pub fn merge(self, other: Extrema) -> Extrema {
        let pick_min = |a: (f64, (usize, usize, usize)), b: (f64, (usize, usize, usize))| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        let pick_max = |a: (f64, (usize, usize, usize)), b: (f64, (usize, usize, usize))| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        Extrema { min: pick_min(self.min, other.min), max: pick_max(self.max, other.max) }
    }
}

/// Scans the `c`-indices in `c_range` over all `r` and `θ`.
pub fn scan_grid(spec: &FunctionalSpec, grid: GridSize, c_range: Range<usize>) -> Result<Extrema> {
    let grid = GridSize::new(grid.n_c, grid.n_r, grid.n_theta)?;
    if c_range.start >= c_range.end || c_range.end > grid.n_c {
        return Err(Error::domain("empty or out-of-range c slice"));
    }
    let obj = FunctionalSpec::new(spec.params, spec.which)?.objective();
    let dirs: Vec<C64> = (0..grid.n_theta).map(|k| C64::from_polar(1.0, grid.point(0, 0, k).theta)).collect();
    let first = (c_range.start, 0, 0);
    let v0 = obj.eval(grid.point(first.0, 0, 0).c, C64::new(0.0, 0.0));
    let mut ext = Extrema { min: (v0, first), max: (v0, first) };
    for i in c_range {
        let c = grid.point(i, 0, 0).c;
        for j in 0..grid.n_r {
            let r = grid.point(0, j, 0).r;
            for (k, d) in dirs.iter().enumerate() {
                let v = obj.eval(c, d * r);
                if v < ext.min.0 {
                    ext.min = (v, (i, j, k));
                }
                if v > ext.max.0 {
                    ext.max = (v, (i, j, k));
                }
            }
        }
    }
    Ok(ext)
}

/// Result of comparing a numeric optimum with the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// What was optimized.
    pub spec: FunctionalSpec,
    /// Closed-form bound.
    pub analytic: BoundInterval,
    /// Refined minimum.
    pub numeric_min: f64,
    /// Refined maximum.
    pub numeric_max: f64,
    /// Where the minimum sits.
    pub argmin: GridPoint,
    /// Where the maximum sits.
    pub argmax: GridPoint,
    /// Minimum on the grid, before refinement.
    pub grid_min: f64,
    /// Maximum on the grid, before refinement.
    pub grid_max: f64,
    /// `|numeric_min − lower|`.
    pub residual_min: f64,
    /// `|numeric_max − upper|`.
    pub residual_max: f64,
    /// Both residuals within `tol`.
    pub passed: bool,
    /// Grid used.
    pub grid: GridSize,
    /// Acceptance tolerance.
    pub tol: f64,
    /// Wall-clock time, when the caller measured it.
    pub runtime_secs: Option<f64>,
}

fn wrap_angle(t: f64) -> f64 {
    let w = t - TAU * (t / TAU).floor();
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Compass search with halving steps; at each step size moves repeat until
/// none improves. `moves` maps a point and a signed step to a candidate.
fn compass<P: Copy>(
    mut best: P,
    mut best_v: f64,
    steps: &mut [f64],
    f: &mut dyn FnMut(&P) -> f64,
    moves: &dyn Fn(&P, usize, f64) -> P,
) -> (P, f64) {
    for _ in 0..REFINE_ITERATIONS {
        for _ in 0..MAX_MOVES_PER_STEP {
            let mut moved = false;
            for (axis, &step) in steps.iter().enumerate() {
                for dir in [1.0, -1.0] {
                    let cand = moves(&best, axis, dir * step);
                    let v = f(&cand);
                    if v < best_v {
                        best = cand;
                        best_v = v;
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        for s in steps.iter_mut() {
            *s *= 0.5;
        }
    }
    (best, best_v)
}

const MAX_MOVES_PER_STEP: usize = 64;

/// Block coordinate descent on `sign·f`: an outer search in `c` whose
/// objective is the best `sign·f` reachable in `(r, θ)` at that `c`.
/// Plain per-axis descent stalls in the valley along `ψ = 0`, where `c` and
/// `x` must move together. Never returns a value worse than `start`.
fn refine(obj: &Objective, grid: GridSize, start: GridPoint, sign: f64) -> (GridPoint, f64) {
    let polar_steps = [1.0 / (grid.n_r - 1) as f64, TAU / grid.n_theta as f64];
    let inner = |p: GridPoint| -> (GridPoint, f64) {
        let mut f = |q: &GridPoint| sign * obj.eval(q.c, q.x());
        let v0 = f(&p);
        let mv = |q: &GridPoint, axis: usize, d: f64| {
            let mut q = *q;
            if axis == 0 {
                q.r = (q.r + d).clamp(0.0, 1.0);
            } else {
                q.theta = wrap_angle(q.theta + d);
            }
            q
        };
        let mut steps = polar_steps;
        compass(p, v0, &mut steps, &mut f, &mv)
    };
    let (mut best, mut best_v) = inner(start);
    let mut h = grid.c_step();
    for _ in 0..REFINE_ITERATIONS {
        for _ in 0..MAX_MOVES_PER_STEP {
            let mut moved = false;
            for dir in [1.0, -1.0] {
                let cand = GridPoint { c: (best.c + dir * h).clamp(0.0, 2.0), ..best };
                let (p, v) = inner(cand);
                if v < best_v {
                    best = p;
                    best_v = v;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        h *= 0.5;
    }
    (best, sign * best_v)
}

/// Refines the scanned optima and scores them against the closed form.
pub fn finish_report(spec: &FunctionalSpec, grid: GridSize, ext: Extrema, tol: f64) -> Result<VerifyReport> {
    let spec = FunctionalSpec::new(spec.params, spec.which)?;
    let analytic = bound(&spec.params, spec.which)?;
    let obj = spec.objective();
    let at = |(i, j, k): (usize, usize, usize)| grid.point(i, j, k);
    let (argmin, numeric_min) = refine(&obj, grid, at(ext.min.1), 1.0);
    let (argmax, numeric_max) = refine(&obj, grid, at(ext.max.1), -1.0);
    let residual_min = (numeric_min - analytic.lower).abs();
    let residual_max = (numeric_max - analytic.upper).abs();
    Ok(VerifyReport {
        spec,
        passed: residual_min <= tol && residual_max <= tol,
        analytic,
        numeric_min,
        numeric_max,
        argmin,
        argmax,
        grid_min: ext.min.0,
        grid_max: ext.max.0,
        residual_min,
        residual_max,
        grid,
        tol,
        runtime_secs: None,
    })
}

/// Full scan plus refinement at tolerance `tol`.
pub fn grid_optimize_tol(spec: &FunctionalSpec, grid: GridSize, tol: f64) -> Result<VerifyReport> {
    let ext = scan_grid(spec, grid, 0..grid.n_c)?;
    finish_report(spec, grid, ext, tol)
}

/// Full scan plus refinement at the default endpoint tolerance.
pub fn grid_optimize(spec: &FunctionalSpec, grid: GridSize) -> Result<VerifyReport> {
    grid_optimize_tol(spec, grid, ENDPOINT_TOL)
}

/// A sampled value outside the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    /// Sample index.
    pub sample: usize,
    /// Which functional.
    pub which: Functional,
    /// Observed value.
    pub value: f64,
}

/// Extreme observation of one functional across the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleExtreme {
    /// Observed value.
    pub value: f64,
    /// Index of the sample.
    pub sample: usize,
}

/// Range of one functional across the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRange {
    /// Closed-form bound.
    pub lower: f64,
    /// Closed-form bound.
    pub upper: f64,
    /// Smallest observation.
    pub min: SampleExtreme,
    /// Largest observation.
    pub max: SampleExtreme,
}

impl SampleRange {
    /// `min − lower`; negative beyond slack means a violation.
    pub fn lower_margin(&self) -> f64 {
        self.min.value - self.lower
    }

    /// `upper − max`.
    pub fn upper_margin(&self) -> f64 {
        self.upper - self.max.value
    }
}

/// Outcome of random sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    /// Class sampled.
    pub params: ClassParams,
    /// Samples drawn.
    pub n_samples: usize,
    /// Samples whose construction failed.
    pub failures: usize,
    /// Values outside `[lower − slack, upper + slack]`.
    pub violations: Vec<Violation>,
    /// `|a₂| − |a₁|`; `None` if every sample failed.
    pub d1: Option<SampleRange>,
    /// `|a₃| − |a₂|`; `None` if every sample failed.
    pub d2: Option<SampleRange>,
    /// Seed used.
    pub seed: u64,
}

impl SampleReport {
    /// No violations and at least one successful sample.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.failures < self.n_samples
    }
}

fn record(range: &mut Option<SampleRange>, b: &BoundInterval, value: f64, sample: usize) {
    let e = SampleExtreme { value, sample };
    match range {
        None => *range = Some(SampleRange { lower: b.lower, upper: b.upper, min: e, max: e }),
        Some(r) => {
            if value < r.min.value {
                r.min = e;
            }
            if value > r.max.value {
                r.max = e;
            }
        }
    }
}

/// `D1` and `D2` of the member built from one representation.
pub fn sample_functionals(params: &ClassParams, n_atoms: usize, seed: u64) -> Result<CoeffTriple> {
    let rep = random_rep(n_atoms, seed)?;
    let f = member_from_p(params, &rep.to_series(SAMPLE_ORDER))?;
    CoeffTriple::from_series(&f)
}

/// Draws `n_samples` random members with 1 to `n_atoms_max` atoms and checks
/// both functionals against their bounds.
pub fn sample_no_violation(params: &ClassParams, n_samples: usize, n_atoms_max: usize, seed: u64) -> Result<SampleReport> {
    let params = params.validated()?;
    if n_samples == 0 || n_atoms_max == 0 {
        return Err(Error::domain("need at least one sample and one atom"));
    }
    let b1 = bound(&params, Functional::D1)?;
    let b2 = bound(&params, Functional::D2)?;
    let mut master = Uniform::new(seed);
    let mut report =
        SampleReport { params, n_samples, failures: 0, violations: Vec::new(), d1: None, d2: None, seed };
    for s in 0..n_samples {
        let n_atoms = 1 + (master.next_u64() % n_atoms_max as u64) as usize;
        let sub = master.next_u64();
        let t = match sample_functionals(&params, n_atoms, sub) {
            Ok(t) => t,
            Err(_) => {
                report.failures += 1;
                continue;
            }
        };
        for (which, b, slot) in [(Functional::D1, &b1, &mut report.d1), (Functional::D2, &b2, &mut report.d2)] {
            let v = which.of(&t);
            if !(v >= b.lower - SAMPLE_SLACK && v <= b.upper + SAMPLE_SLACK) {
                report.violations.push(Violation { sample: s, which, value: v });
            }
            record(slot, b, v, s);
        }
    }
    Ok(report)
}

/// Outcome of [`case_boundary_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    /// What was checked.
    pub spec: FunctionalSpec,
    /// Root `2/√A` of `c²A − 4`.
    pub c_zero: f64,
    /// Analytic argmin `c*`.
    pub c_star: f64,
    /// Minorant monotone on every stated interval.
    pub monotone: bool,
    /// Worst finite-difference sign error found.
    pub worst_slope_error: f64,
    /// `|k·m(c*) − lower bound|`.
    pub minorant_residual: f64,
    /// `c` of the refined numeric minimum.
    pub numeric_c: f64,
    /// `2/(n_c − 1)`.
    pub resolution: f64,
    /// `|numeric_c − c*| ≤ resolution`.
    pub argmin_agrees: bool,
}

impl CaseReport {
    /// All three checks hold.
    pub fn passed(&self) -> bool {
        self.monotone && self.argmin_agrees && self.minorant_residual <= 1e-12
    }
}

/// The one-dimensional minorant `k·(|c²A − 4| − Lc)` of `D2` and its
/// parameters `(k, A, L)`.
fn minorant(params: &ClassParams) -> (f64, f64, f64) {
    match params.family {
        Family::Spirallike => (params.scaled_cos() / 4.0, t_factor(params.alpha, params.gamma) + 1.0, 4.0),
        Family::ConvexGamma => (params.scaled_cos() / 12.0, t_factor(params.alpha, params.gamma) + 1.0, 6.0),
        Family::OzakiG => (params.lambda / 24.0, 2.0 - params.lambda, 6.0),
    }
}

fn slope_error(m: &dyn Fn(f64) -> f64, a: f64, b: f64, increasing: bool) -> f64 {
    if b - a <= 0.0 {
        return 0.0;
    }
    let n = MONOTONICITY_POINTS;
    let mut worst = 0.0f64;
    let mut prev = m(a);
    for i in 1..n {
        let t = a + (b - a) * i as f64 / (n - 1) as f64;
        let cur = m(t);
        let d = if increasing { prev - cur } else { cur - prev };
        worst = worst.max(d);
        prev = cur;
    }
    worst
}

/// Checks the D2 minorant: decreasing on `[0, c₀]` and on `[c₀, c*]`,
/// increasing on `[c*, 2]`, minimum equal to the closed form, and the
/// optimizer's argmin `c` within one grid step of `c*`.
pub fn case_boundary_check(spec: &FunctionalSpec, report: &VerifyReport) -> Result<CaseReport> {
    let spec = FunctionalSpec::new(spec.params, spec.which)?;
    if spec.which != Functional::D2 {
        return Err(Error::domain("case analysis applies to D2 only"));
    }
    let (k, a, l) = minorant(&spec.params);
    let m = |c: f64| (c * c * a - 4.0).abs() - l * c;
    let c_zero = 2.0 / a.sqrt();
    let c_star = c_zero.max((l / (2.0 * a)).min(2.0));
    let worst = slope_error(&m, 0.0, c_zero, false)
        .max(slope_error(&m, c_zero, c_star, false))
        .max(slope_error(&m, c_star, 2.0, true));
    let minorant_residual = (k * m(c_star) - d2_lower_value(&spec.params)?).abs();
    let resolution = report.grid.c_step();
    let numeric_c = report.argmin.c;
    Ok(CaseReport {
        spec,
        c_zero,
        c_star,
        monotone: worst <= 1e-12,
        worst_slope_error: worst,
        minorant_residual,
        numeric_c,
        resolution,
        argmin_agrees: (numeric_c - c_star).abs() <= resolution,
    })
}
