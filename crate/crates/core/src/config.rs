//! Tolerances and defaults shared by every module.

/// Default truncation order of constructed series.
pub const DEFAULT_ORDER: usize = 12;

/// Order used when a series is evaluated near the unit circle
/// (membership sampling at `r = 0.9`; `0.9^200 ≈ 7e-10`).
pub const MEMBERSHIP_ORDER: usize = 200;

/// Allowed deviation of a constant term from its required value (0 or 1).
pub const CONSTANT_TERM_TOL: f64 = 1e-12;

/// Atom weights must sum to one and atom points must be unimodular within this.
pub const ATOM_TOL: f64 = 1e-12;

/// Slack on magnitude preconditions such as `|x| ≤ 1` and `0 ≤ c ≤ 2`.
pub const RANGE_TOL: f64 = 1e-12;

/// Maximal moment residual accepted from the two-atom solver.
pub const TWO_ATOM_RESIDUAL: f64 = 1e-10;

/// Membership passes when the worst margin is at least `-MEMBERSHIP_TOL`.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Values below this modulus count as a zero of `f` or `f′` during sampling.
pub const EVAL_ZERO: f64 = 1e-14;

/// Default membership radii.
pub const MEMBERSHIP_RADII: [f64; 3] = [0.3, 0.6, 0.9];

/// Default number of membership angles per radius.
pub const MEMBERSHIP_ANGLES: usize = 64;

/// Default verification grid over `(c, r, θ)`.
pub const DEFAULT_GRID: (usize, usize, usize) = (201, 101, 256);

/// Step-halving iterations of the coordinate-descent refinement.
pub const REFINE_ITERATIONS: usize = 40;

/// Acceptance tolerance on numeric-vs-analytic endpoint residuals.
pub const ENDPOINT_TOL: f64 = 1e-3;

/// Slack allowed when testing sampled functionals against a bound interval.
pub const SAMPLE_SLACK: f64 = 1e-9;

/// Points used by the finite-difference monotonicity checks.
pub const MONOTONICITY_POINTS: usize = 1000;
