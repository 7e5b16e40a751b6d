//! The three function classes and their construction from Carathéodory data.
//!
//! * `S_γ(α)`: `f(z) = z·exp{(1−α)μ ∫₀ᶻ (p(t)−1)/t dt}`, `μ = e^{iγ} cos γ`.
//! * `C_γ(α)`: `f ∈ C_γ(α)` iff `z f′ ∈ S_γ(α)`, so `aₙ(f) = aₙ(z f′)/n`.
//! * `G(λ)`: `p = (λ − 2z f″/f′)/λ`, hence
//!   `f′(z) = exp{−(λ/2) ∫₀ᶻ (p(t)−1)/t dt}` and `a₂ = −λc₁/4`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use num_traits::Zero;
// unused whenever std is linked into the build graph
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::{
    CONSTANT_TERM_TOL, EVAL_ZERO, MEMBERSHIP_ANGLES, MEMBERSHIP_RADII, MEMBERSHIP_TOL, RANGE_TOL,
};
use crate::series::TruncatedSeries;
use crate::{Error, Result, C64};

/// Which of the three classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// γ-spirallike of order α.
    Spirallike,
    /// γ-convex of order α.
    ConvexGamma,
    /// Ozaki-type class `G(λ)`.
    OzakiG,
}

impl Family {
    /// Lower-case name used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Family::Spirallike => "spirallike",
            Family::ConvexGamma => "convex",
            Family::OzakiG => "ozaki",
        }
    }
}

/// Family tag plus its parameters. `alpha`/`gamma` are only read for the
/// spirallike and convex families, `lambda` only for `G(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    /// Class tag.
    pub family: Family,
    /// Order `α ∈ [0, 1)`.
    pub alpha: f64,
    /// Spiral angle `γ ∈ (−π/2, π/2)`.
    pub gamma: f64,
    /// `λ ∈ (0, 1]`.
    pub lambda: f64,
}

impl ClassParams {
    /// `S_γ(α)`.
    pub fn spirallike(alpha: f64, gamma: f64) -> Result<Self> {
        Self { family: Family::Spirallike, alpha, gamma, lambda: 1.0 }.validated()
    }

    /// `C_γ(α)`.
    pub fn convex(alpha: f64, gamma: f64) -> Result<Self> {
        Self { family: Family::ConvexGamma, alpha, gamma, lambda: 1.0 }.validated()
    }

    /// `G(λ)`.
    pub fn ozaki(lambda: f64) -> Result<Self> {
        Self { family: Family::OzakiG, alpha: 0.0, gamma: 0.0, lambda }.validated()
    }

    /// Same family with the parameters of `self`, checked.
    pub fn validated(self) -> Result<Self> {
        match self.family {
            Family::Spirallike | Family::ConvexGamma => {
                if !(self.alpha >= 0.0 && self.alpha < 1.0) {
                    return Err(Error::domain(alloc::format!("alpha = {} not in [0, 1)", self.alpha)));
                }
                if self.gamma.is_nan() || self.gamma.abs() >= FRAC_PI_2 {
                    return Err(Error::domain(alloc::format!(
                        "gamma = {} not in (-pi/2, pi/2)",
                        self.gamma
                    )));
                }
            }
            Family::OzakiG => {
                if !(self.lambda > 0.0 && self.lambda <= 1.0) {
                    return Err(Error::domain(alloc::format!("lambda = {} not in (0, 1]", self.lambda)));
                }
            }
        }
        Ok(self)
    }

    /// `(1 − α)μ`, the factor in every spirallike/convex coefficient formula.
    pub fn scaled_mu(&self) -> C64 {
        Mu::new(self.gamma).value() * (1.0 - self.alpha)
    }

    /// `(1 − α) cos γ = |(1 − α)μ|`.
    pub fn scaled_cos(&self) -> f64 {
        (1.0 - self.alpha) * self.gamma.cos()
    }
}

/// `μ = e^{iγ} cos γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mu(C64);

impl Mu {
    /// `μ` for the angle `γ`.
    pub fn new(gamma: f64) -> Self {
        Mu(C64::from_polar(gamma.cos(), gamma))
    }

    /// The complex value.
    pub fn value(self) -> C64 {
        self.0
    }
}

/// Normalized leading coefficients `(a₁, a₂, a₃)` with `a₁ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffTriple {
    /// Always exactly 1.
    pub a1: C64,
    /// Second coefficient.
    pub a2: C64,
    /// Third coefficient.
    pub a3: C64,
}

impl CoeffTriple {
    fn new(a2: C64, a3: C64) -> Self {
        CoeffTriple { a1: C64::new(1.0, 0.0), a2, a3 }
    }

    /// Reads `a₂, a₃` off a normalized series (`f(0) = 0`, `f′(0) = 1`).
    pub fn from_series(f: &TruncatedSeries) -> Result<Self> {
        check_normalized(f)?;
        if f.order() < 3 {
            return Err(Error::domain("need truncation order at least 3 to read a3"));
        }
        Ok(Self::new(f.coeff(2), f.coeff(3)))
    }

    /// `|a₂| − |a₁|`.
    pub fn d1(&self) -> f64 {
        self.a2.norm() - self.a1.norm()
    }

    /// `|a₃| − |a₂|`.
    pub fn d2(&self) -> f64 {
        self.a3.norm() - self.a2.norm()
    }
}

fn check_normalized(f: &TruncatedSeries) -> Result<()> {
    if f.order() < 1
        || f.coeff(0).norm() > CONSTANT_TERM_TOL
        || (f.coeff(1) - C64::new(1.0, 0.0)).norm() > CONSTANT_TERM_TOL
    {
        return Err(Error::domain("series is not normalized (f(0) = 0, f'(0) = 1)"));
    }
    Ok(())
}

/// Rejects `p` whose real part is visibly negative on `|z| = 1/2`.
/// At that radius the tail of a Carathéodory series beyond `z⁴` is at most
/// `1/8`, below the guaranteed `Re p ≥ 1/3`.
fn check_caratheodory(p: &TruncatedSeries) -> Result<()> {
    if (p.coeff(0) - C64::new(1.0, 0.0)).norm() > CONSTANT_TERM_TOL {
        return Err(Error::domain("Caratheodory function needs p(0) = 1"));
    }
    for k in 0..32 {
        let z = C64::from_polar(0.5, TAU * k as f64 / 32.0);
        if p.eval(z).re <= 0.0 {
            return Err(Error::domain(alloc::format!("Re p(z) <= 0 at z = {z}")));
        }
    }
    Ok(())
}

/// Member of `S_γ(α)`: `z·exp{(1−α)μ ∫₀ᶻ (p(t)−1)/t dt}`.
pub fn spirallike_from_p(p: &TruncatedSeries, alpha: f64, gamma: f64) -> Result<TruncatedSeries> {
    let params = ClassParams::spirallike(alpha, gamma)?;
    check_caratheodory(p)?;
    let e = p.integrate_kernel()?.scale(params.scaled_mu()).exp_series()?;
    Ok(e.shift_up())
}

/// Member of `C_γ(α)`: the Alexander inverse of the spirallike member.
pub fn convex_from_p(p: &TruncatedSeries, alpha: f64, gamma: f64) -> Result<TruncatedSeries> {
    alexander_inverse(&spirallike_from_p(p, alpha, gamma)?)
}

/// Member of `G(λ)`: antiderivative of `exp{−(λ/2) ∫₀ᶻ (p(t)−1)/t dt}`.
pub fn gclass_from_p(p: &TruncatedSeries, lambda: f64) -> Result<TruncatedSeries> {
    ClassParams::ozaki(lambda)?;
    check_caratheodory(p)?;
    let fprime = p.integrate_kernel()?.scale(C64::new(-lambda / 2.0, 0.0)).exp_series()?;
    Ok(fprime.antiderivative())
}

/// Builds the class member that `p` represents.
pub fn member_from_p(params: &ClassParams, p: &TruncatedSeries) -> Result<TruncatedSeries> {
    match params.family {
        Family::Spirallike => spirallike_from_p(p, params.alpha, params.gamma),
        Family::ConvexGamma => convex_from_p(p, params.alpha, params.gamma),
        Family::OzakiG => gclass_from_p(p, params.lambda),
    }
}

/// `f` with `z f′ = g`, i.e. `aₙ(f) = aₙ(g)/n`.
pub fn alexander_inverse(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_normalized(g)?;
    let coeffs: Vec<C64> =
        g.coeffs().iter().enumerate().map(|(n, a)| if n == 0 { *a } else { a / n as f64 }).collect();
    TruncatedSeries::new(coeffs)
}

/// `(a₂, a₃)` from `(c₁, c₂)` by the family's coefficient map.
pub fn coeffs_from_c(params: &ClassParams, c1: C64, c2: C64) -> Result<CoeffTriple> {
    let params = params.validated()?;
    if c1.norm() > 2.0 + RANGE_TOL || c2.norm() > 2.0 + RANGE_TOL {
        return Err(Error::domain("|c1| and |c2| must not exceed 2"));
    }
    let triple = match params.family {
        Family::Spirallike => {
            let m = params.scaled_mu();
            CoeffTriple::new(m * c1, (m * m * c1 * c1 + m * c2) / 2.0)
        }
        Family::ConvexGamma => {
            let m = params.scaled_mu();
            CoeffTriple::new(m * c1 / 2.0, (m * m * c1 * c1 + m * c2) / 6.0)
        }
        Family::OzakiG => {
            let l = params.lambda;
            CoeffTriple::new(-c1 * (l / 4.0), (c1 * c1 * (l * l) - c2 * (2.0 * l)) / 24.0)
        }
    };
    Ok(triple)
}

/// Outcome of sampling a class-defining inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    /// `worst_margin ≥ −MEMBERSHIP_TOL`.
    pub passed: bool,
    /// Smallest observed margin of the defining inequality.
    pub worst_margin: f64,
    /// Where the smallest margin occurred.
    pub worst_point: C64,
}

/// Samples the defining real-part condition of `params.family` on a polar
/// grid. The margin is
///
/// * `Re(e^{−iγ} z f′/f) − α cos γ` for `S_γ(α)`,
/// * `Re(e^{−iγ}(1 + z f″/f′)) − α cos γ` for `C_γ(α)`,
/// * `1 + λ/2 − Re(1 + z f″/f′)` for `G(λ)`.
///
/// Only the truncated polynomial is evaluated, so near the unit circle the
/// result is as good as the tail `Σ_{k>N} |aₖ| rᵏ`. At the default order 12
/// that is only trustworthy well inside `r = 0.9`; build the series at
/// [`crate::config::MEMBERSHIP_ORDER`] for the default grid.
pub fn membership_check(
    f: &TruncatedSeries,
    params: &ClassParams,
    radii: &[f64],
    n_angles: usize,
) -> Result<Membership> {
    let params = params.validated()?;
    check_normalized(f)?;
    if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Error::domain("membership radii must lie in (0, 1)"));
    }
    if n_angles == 0 {
        return Err(Error::domain("need at least one angle"));
    }
    let df = f.derivative();
    let ddf = df.derivative();
    let rot = C64::from_polar(1.0, -params.gamma);
    let floor = params.alpha * params.gamma.cos();

    let mut worst = Membership { passed: true, worst_margin: f64::INFINITY, worst_point: C64::zero() };
    for &r in radii {
        for k in 0..n_angles {
            let z = C64::from_polar(r, TAU * k as f64 / n_angles as f64);
            let d = df.eval(z);
            let margin = match params.family {
                Family::Spirallike => {
                    let v = f.eval(z);
                    if v.norm() <= EVAL_ZERO * r {
                        return Err(Error::Evaluation { z, what: "f" });
                    }
                    (rot * z * d / v).re - floor
                }
                Family::ConvexGamma | Family::OzakiG => {
                    if d.norm() <= EVAL_ZERO {
                        return Err(Error::Evaluation { z, what: "f'" });
                    }
                    let w = C64::new(1.0, 0.0) + z * ddf.eval(z) / d;
                    if params.family == Family::ConvexGamma {
                        (rot * w).re - floor
                    } else {
                        1.0 + params.lambda / 2.0 - w.re
                    }
                }
            };
            if margin < worst.worst_margin {
                worst.worst_margin = margin;
                worst.worst_point = z;
            }
        }
    }
    worst.passed = worst.worst_margin >= -MEMBERSHIP_TOL;
    Ok(worst)
}

/// [`membership_check`] on the default grid (radii 0.3, 0.6, 0.9; 64 angles).
pub fn membership_check_default(f: &TruncatedSeries, params: &ClassParams) -> Result<Membership> {
    membership_check(f, params, &MEMBERSHIP_RADII, MEMBERSHIP_ANGLES)
}
