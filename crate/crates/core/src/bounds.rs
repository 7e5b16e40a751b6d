//! Closed-form sharp bounds for `|a₂| − |a₁|` (D1) and `|a₃| − |a₂|` (D2) and
//! the functions that attain them.
//!
//! | family       | D1                      | D2 upper          | D2 lower                         |
//! |--------------|-------------------------|-------------------|----------------------------------|
//! | `S_γ(α)`     | `[−1, 2(1−α)cos γ − 1]` | `(1−α)cos γ`      | `−2(1−α)cos γ/√(1+T)`            |
//! | `C_γ(α)`     | `[−1, (1−α)cos γ − 1]`  | `(1−α)cos γ/3`    | `−(1−α)cos γ/√(1+T)` if `T ≥ 5/4` |
//! | `G(λ)`       | `[−1, λ/2 − 1]`         | `λ/6`             | piecewise in `λ`, see below      |
//!
//! with `T(α, γ) = √(1 + 4(1−α)(2−α)cos²γ)`.
//!
//! Every D2 lower bound is the minimum over `c ∈ [0, 2]` of a minorant
//! `k·(|c²A − 4| − Lc)` (`A = T+1`, `L = 4` or `6`; `A = 2−λ`, `L = 6` for
//! `G(λ)`). It sits at `max(2/√A, min(L/(2A), 2))`. For `C_γ(α)` the
//! vertex `3/(T+1)` exceeds `2/√(T+1)` once `T < 5/4`, and then the minimum is
//! `(1−α)cos γ·(−9/(T+1) − 4)/12`, reached by the same two-atom construction
//! at `c = 3/(T+1)`.

use core::fmt;

// unused whenever std is linked into the build graph
#[allow(unused_imports)]
use num_traits::Float;

use crate::caratheodory::{solve_two_atom, AtomicHerglotzRep};
use crate::classes::{alexander_inverse, ClassParams, CoeffTriple, Family};
use crate::series::TruncatedSeries;
use crate::{Error, Result, C64};

/// Below this `T` the γ-convex lower bound leaves the `2/√(1+T)` branch.
pub const CONVEX_T_THRESHOLD: f64 = 1.25;

/// Truncation order used by [`attainment`].
pub const ATTAINMENT_ORDER: usize = 8;

/// The two successive-coefficient functionals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Functional {
    /// `|a₂| − |a₁|`.
    D1,
    /// `|a₃| − |a₂|`.
    D2,
}

impl Functional {
    /// `"D1"` or `"D2"`.
    pub fn name(self) -> &'static str {
        match self {
            Functional::D1 => "D1",
            Functional::D2 => "D2",
        }
    }

    /// Value on a coefficient triple.
    pub fn of(self, t: &CoeffTriple) -> f64 {
        match self {
            Functional::D1 => t.d1(),
            Functional::D2 => t.d2(),
        }
    }
}

/// The nine extremal functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalName {
    /// `z/(1−z)^{2(1−α)μ}`.
    K,
    /// `z/(1−z²)^{(1−α)μ}`.
    H,
    /// `z l′ = K`.
    L,
    /// `z q′ = H`.
    Q,
    /// `z/[(1−ε₁z)^{γ₁}(1−ε₂z)^{γ₂}]^{2(1−α)μ}`.
    FSpiral,
    /// `z g′ = F_SPIRAL`.
    GConvex,
    /// `((1+z)^{1+λ} − 1)/(1+λ)`.
    GOzaki,
    /// `∫₀ᶻ (1−t²)^{λ/2} dt`.
    HOzaki,
    /// `∫₀ᶻ [(1−ε₁t)^{γ₁}(1−ε₂t)^{γ₂}]^λ dt`.
    FOzaki,
}

impl ExtremalName {
    /// Report name.
    pub fn name(self) -> &'static str {
        match self {
            ExtremalName::K => "K",
            ExtremalName::H => "H",
            ExtremalName::L => "L",
            ExtremalName::Q => "Q",
            ExtremalName::FSpiral => "F_SPIRAL",
            ExtremalName::GConvex => "G_CONVEX",
            ExtremalName::GOzaki => "G_OZAKI",
            ExtremalName::HOzaki => "H_OZAKI",
            ExtremalName::FOzaki => "F_OZAKI",
        }
    }

    /// Whether the function is built from a Carathéodory representation.
    pub fn needs_rep(self) -> bool {
        matches!(self, ExtremalName::FSpiral | ExtremalName::GConvex | ExtremalName::FOzaki)
    }

    /// The family the function belongs to.
    pub fn family(self) -> Family {
        match self {
            ExtremalName::K | ExtremalName::H | ExtremalName::FSpiral => Family::Spirallike,
            ExtremalName::L | ExtremalName::Q | ExtremalName::GConvex => Family::ConvexGamma,
            ExtremalName::GOzaki | ExtremalName::HOzaki | ExtremalName::FOzaki => Family::OzakiG,
        }
    }
}

impl fmt::Display for ExtremalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named extremal function with its class parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalDescriptor {
    /// Which function.
    pub name: ExtremalName,
    /// Class parameters.
    pub params: ClassParams,
    /// Representing measure, present exactly for the two-atom extremals.
    pub rep: Option<AtomicHerglotzRep>,
}

impl ExtremalDescriptor {
    /// Checks family and the presence of `rep`.
    pub fn new(name: ExtremalName, params: ClassParams, rep: Option<AtomicHerglotzRep>) -> Result<Self> {
        let params = params.validated()?;
        if name.family() != params.family {
            return Err(Error::domain(alloc::format!(
                "{} is not a {} extremal",
                name,
                params.family.name()
            )));
        }
        if name.needs_rep() != rep.is_some() {
            return Err(Error::domain(alloc::format!("{name}: representation presence mismatch")));
        }
        Ok(ExtremalDescriptor { name, params, rep })
    }
}

/// Sharp two-sided bound with the functions attaining each end.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInterval {
    /// Lower bound.
    pub lower: f64,
    /// Upper bound.
    pub upper: f64,
    /// Attains `lower`.
    pub lower_extremal: ExtremalDescriptor,
    /// Attains `upper`.
    pub upper_extremal: ExtremalDescriptor,
}

/// `T(α, γ) = √(1 + 4(1−α)(2−α)cos²γ)`, in `(1, 3]`.
pub fn t_factor(alpha: f64, gamma: f64) -> f64 {
    let cg = gamma.cos();
    (1.0 + 4.0 * (1.0 - alpha) * (2.0 - alpha) * cg * cg).sqrt()
}

/// `x = −(1 + 2(1−α)cos²γ + i(1−α) sin 2γ)/T`, the unimodular direction that
/// cancels `c²(1 + 2(1−α)μ)`.
pub fn spiral_extremal_x(alpha: f64, gamma: f64) -> C64 {
    let cg = gamma.cos();
    let t = t_factor(alpha, gamma);
    -C64::new(1.0 + 2.0 * (1.0 - alpha) * cg * cg, (1.0 - alpha) * (2.0 * gamma).sin()) / t
}

/// Which formula of the `G(λ)` lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OzakiBranch {
    /// `0 < λ ≤ 1/2`: `c = 3/(2−λ)`, value `λ(4λ−17)/(24(2−λ))`.
    Interior,
    /// `1/2 ≤ λ ≤ 1`: `c = 2`, value `−λ(λ+2)/6`.
    Endpoint,
}

impl OzakiBranch {
    /// The branch that applies to `λ` (`Interior` at exactly 1/2).
    pub fn for_lambda(lambda: f64) -> Self {
        if lambda <= 0.5 {
            OzakiBranch::Interior
        } else {
            OzakiBranch::Endpoint
        }
    }

    /// Location `c*` of the minimum.
    pub fn c_star(self, lambda: f64) -> f64 {
        match self {
            OzakiBranch::Interior => 3.0 / (2.0 - lambda),
            OzakiBranch::Endpoint => 2.0,
        }
    }

    /// Value of the lower bound.
    pub fn value(self, lambda: f64) -> f64 {
        match self {
            OzakiBranch::Interior => lambda * (4.0 * lambda - 17.0) / (24.0 * (2.0 - lambda)),
            OzakiBranch::Endpoint => -lambda * (lambda + 2.0) / 6.0,
        }
    }
}

/// `(c*, x*)` of the D2-lower extremal, in Libera–Złotkiewicz coordinates.
pub fn d2_lower_point(params: &ClassParams) -> Result<(f64, C64)> {
    let params = params.validated()?;
    Ok(match params.family {
        Family::Spirallike => {
            let t = t_factor(params.alpha, params.gamma);
            (2.0 / (1.0 + t).sqrt(), spiral_extremal_x(params.alpha, params.gamma))
        }
        Family::ConvexGamma => {
            let t = t_factor(params.alpha, params.gamma);
            let c = if t >= CONVEX_T_THRESHOLD { 2.0 / (1.0 + t).sqrt() } else { 3.0 / (1.0 + t) };
            (c, spiral_extremal_x(params.alpha, params.gamma))
        }
        Family::OzakiG => {
            let branch = OzakiBranch::for_lambda(params.lambda);
            (branch.c_star(params.lambda), C64::new(-1.0, 0.0))
        }
    })
}

/// Representation with `c₁ = c`, `c₂ = (c² + (4−c²)x)/2` on `|x| = 1`: two
/// atoms for `c < 2`, the single kernel at 1 for `c = 2`.
pub fn boundary_rep(c: f64, x: C64) -> Result<AtomicHerglotzRep> {
    match solve_two_atom(c, x) {
        Err(Error::Degenerate) => AtomicHerglotzRep::single(C64::new(1.0, 0.0)),
        other => other,
    }
}

/// The `G(λ)` lower extremal for an explicit branch (both exist at λ = 1/2).
pub fn ozaki_lower_extremal(lambda: f64, branch: OzakiBranch) -> Result<ExtremalDescriptor> {
    let params = ClassParams::ozaki(lambda)?;
    let ok = match branch {
        OzakiBranch::Interior => lambda <= 0.5,
        OzakiBranch::Endpoint => lambda >= 0.5,
    };
    if !ok {
        return Err(Error::domain(alloc::format!("{branch:?} branch does not apply at lambda = {lambda}")));
    }
    let rep = boundary_rep(branch.c_star(lambda), C64::new(-1.0, 0.0))?;
    ExtremalDescriptor::new(ExtremalName::FOzaki, params, Some(rep))
}

fn descriptor(name: ExtremalName, params: ClassParams) -> Result<ExtremalDescriptor> {
    ExtremalDescriptor::new(name, params, None)
}

/// Bound on `|a₂| − |a₁|`.
pub fn bound_d1(params: &ClassParams) -> Result<BoundInterval> {
    let p = params.validated()?;
    let (upper, lo, hi) = match p.family {
        Family::Spirallike => (2.0 * p.scaled_cos() - 1.0, ExtremalName::H, ExtremalName::K),
        Family::ConvexGamma => (p.scaled_cos() - 1.0, ExtremalName::Q, ExtremalName::L),
        Family::OzakiG => (p.lambda / 2.0 - 1.0, ExtremalName::HOzaki, ExtremalName::GOzaki),
    };
    Ok(BoundInterval {
        lower: -1.0,
        upper,
        lower_extremal: descriptor(lo, p)?,
        upper_extremal: descriptor(hi, p)?,
    })
}

/// Lower end of the D2 bound (see the module docs for the convex branch).
pub fn d2_lower_value(params: &ClassParams) -> Result<f64> {
    let p = params.validated()?;
    Ok(match p.family {
        Family::Spirallike => {
            let t = t_factor(p.alpha, p.gamma);
            -2.0 * p.scaled_cos() / (1.0 + t).sqrt()
        }
        Family::ConvexGamma => {
            let t = t_factor(p.alpha, p.gamma);
            if t >= CONVEX_T_THRESHOLD {
                -p.scaled_cos() / (1.0 + t).sqrt()
            } else {
                p.scaled_cos() * (-9.0 / (1.0 + t) - 4.0) / 12.0
            }
        }
        Family::OzakiG => OzakiBranch::for_lambda(p.lambda).value(p.lambda),
    })
}

/// Bound on `|a₃| − |a₂|`.
pub fn bound_d2(params: &ClassParams) -> Result<BoundInterval> {
    let p = params.validated()?;
    let (upper, lo, hi) = match p.family {
        Family::Spirallike => (p.scaled_cos(), ExtremalName::FSpiral, ExtremalName::H),
        Family::ConvexGamma => (p.scaled_cos() / 3.0, ExtremalName::GConvex, ExtremalName::Q),
        Family::OzakiG => (p.lambda / 6.0, ExtremalName::FOzaki, ExtremalName::HOzaki),
    };
    let (c, x) = d2_lower_point(&p)?;
    let rep = boundary_rep(c, x)?;
    Ok(BoundInterval {
        lower: d2_lower_value(&p)?,
        upper,
        lower_extremal: ExtremalDescriptor::new(lo, p, Some(rep))?,
        upper_extremal: descriptor(hi, p)?,
    })
}

/// [`bound_d1`] or [`bound_d2`].
pub fn bound(params: &ClassParams, which: Functional) -> Result<BoundInterval> {
    match which {
        Functional::D1 => bound_d1(params),
        Functional::D2 => bound_d2(params),
    }
}

/// `Π (1 − εⱼz)^{w·γⱼ}`.
fn kernel_product(rep: &AtomicHerglotzRep, w: C64, order: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(order);
    for a in rep.atoms() {
        let factor = TruncatedSeries::one_minus_monomial(order, a.point, 1).pow_complex(w * a.weight)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Taylor series of an extremal function to `order` (at least 4).
pub fn extremal_series(desc: &ExtremalDescriptor, order: usize) -> Result<TruncatedSeries> {
    if order < 4 {
        return Err(Error::domain("extremal series need order >= 4"));
    }
    let desc = ExtremalDescriptor::new(desc.name, desc.params, desc.rep.clone())?;
    let p = desc.params;
    let one = C64::new(1.0, 0.0);
    let lambda = C64::new(p.lambda, 0.0);
    let rep = || desc.rep.as_ref().expect("checked by ExtremalDescriptor::new");
    match desc.name {
        ExtremalName::K => Ok(TruncatedSeries::one_minus_monomial(order, one, 1)
            .pow_complex(-p.scaled_mu() * 2.0)?
            .shift_up()),
        ExtremalName::H => Ok(TruncatedSeries::one_minus_monomial(order, one, 2)
            .pow_complex(-p.scaled_mu())?
            .shift_up()),
        ExtremalName::FSpiral => Ok(kernel_product(rep(), -p.scaled_mu() * 2.0, order)?.shift_up()),
        ExtremalName::L | ExtremalName::Q | ExtremalName::GConvex => {
            let partner = match desc.name {
                ExtremalName::L => ExtremalName::K,
                ExtremalName::Q => ExtremalName::H,
                _ => ExtremalName::FSpiral,
            };
            let params = ClassParams { family: Family::Spirallike, ..p };
            let g = ExtremalDescriptor::new(partner, params, desc.rep.clone())?;
            alexander_inverse(&extremal_series(&g, order)?)
        }
        ExtremalName::GOzaki => Ok(TruncatedSeries::one_minus_monomial(order, -one, 1)
            .pow_complex(lambda)?
            .antiderivative()),
        ExtremalName::HOzaki => Ok(TruncatedSeries::one_minus_monomial(order, one, 2)
            .pow_complex(lambda / 2.0)?
            .antiderivative()),
        ExtremalName::FOzaki => Ok(kernel_product(rep(), lambda, order)?.antiderivative()),
    }
}

/// `|a₂| − |a₁|` or `|a₃| − |a₂|` of an extremal function.
pub fn attainment(desc: &ExtremalDescriptor, which: Functional) -> Result<f64> {
    let f = extremal_series(desc, ATTAINMENT_ORDER)?;
    Ok(which.of(&CoeffTriple::from_series(&f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{convex_from_p, gclass_from_p, spirallike_from_p};
    use core::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn t_factor_examples() {
        assert_eq!(t_factor(0.0, 0.0), 3.0);
        assert_eq!(t_factor(0.5, 0.0), 2.0);
        assert!((t_factor(0.0, FRAC_PI_3) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn t_factor_range_and_monotonicity() {
        for i in 0..50 {
            let gamma = -1.5 + 3.0 * i as f64 / 49.0;
            let mut prev = f64::INFINITY;
            for j in 0..50 {
                let alpha = 0.98 * j as f64 / 49.0;
                let t = t_factor(alpha, gamma);
                assert!(t > 1.0 && t <= 3.0);
                assert!(t <= prev);
                prev = t;
            }
        }
    }

    #[test]
    fn d1_examples() {
        let b = bound_d1(&ClassParams::spirallike(0.0, 0.0).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (-1.0, 1.0));
        assert_eq!((b.lower_extremal.name, b.upper_extremal.name), (ExtremalName::H, ExtremalName::K));
        for alpha in [0.0, 0.3, 0.9] {
            let b = bound_d1(&ClassParams::convex(alpha, 0.0).unwrap()).unwrap();
            assert_eq!(b.lower, -1.0);
            assert!((b.upper + alpha).abs() < 1e-15);
        }
        let b = bound_d1(&ClassParams::ozaki(1.0).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (-1.0, -0.5));
        assert_eq!(b.upper_extremal.name, ExtremalName::GOzaki);
    }

    #[test]
    fn d2_examples() {
        let b = bound_d2(&ClassParams::spirallike(0.0, 0.0).unwrap()).unwrap();
        assert!((b.lower + 1.0).abs() < 1e-15 && (b.upper - 1.0).abs() < 1e-15);
        let b = bound_d2(&ClassParams::convex(0.0, 0.0).unwrap()).unwrap();
        assert!((b.lower + 0.5).abs() < 1e-15 && (b.upper - 1.0 / 3.0).abs() < 1e-15);
        let b = bound_d2(&ClassParams::ozaki(0.25).unwrap()).unwrap();
        assert!((b.lower + 4.0 / 42.0).abs() < 1e-15 && (b.upper - 1.0 / 24.0).abs() < 1e-15);
        let b = bound_d2(&ClassParams::ozaki(1.0).unwrap()).unwrap();
        assert!((b.lower + 0.5).abs() < 1e-15 && (b.upper - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ozaki_branches_meet_at_one_half() {
        let a = OzakiBranch::Interior.value(0.5);
        let b = OzakiBranch::Endpoint.value(0.5);
        assert!((a - b).abs() < 1e-14 && (a + 5.0 / 24.0).abs() < 1e-14);
        let i = ozaki_lower_extremal(0.5, OzakiBranch::Interior).unwrap();
        let e = ozaki_lower_extremal(0.5, OzakiBranch::Endpoint).unwrap();
        let (ai, ae) = (attainment(&i, Functional::D2).unwrap(), attainment(&e, Functional::D2).unwrap());
        assert!((ai - ae).abs() < 1e-12 && (ai + 5.0 / 24.0).abs() < 1e-12);
        assert!(ozaki_lower_extremal(0.75, OzakiBranch::Interior).is_err());
        assert!(ozaki_lower_extremal(0.25, OzakiBranch::Endpoint).is_err());
    }

    #[test]
    fn intervals_contain_zero() {
        let mut all = alloc::vec::Vec::new();
        for alpha in [0.0, 0.4, 0.95] {
            for gamma in [-1.4, -0.5, 0.0, 0.9] {
                all.push(ClassParams::spirallike(alpha, gamma).unwrap());
                all.push(ClassParams::convex(alpha, gamma).unwrap());
            }
        }
        for lambda in [0.05, 0.5, 0.8, 1.0] {
            all.push(ClassParams::ozaki(lambda).unwrap());
        }
        for p in &all {
            let b = bound_d2(p).unwrap();
            assert!(b.lower <= 0.0 && 0.0 <= b.upper, "{p:?}");
            let b = bound_d1(p).unwrap();
            assert!(b.lower <= b.upper);
        }
    }

    #[test]
    fn extremal_examples() {
        let s = ClassParams::spirallike(0.0, 0.0).unwrap();
        let k = extremal_series(&descriptor(ExtremalName::K, s).unwrap(), 8).unwrap();
        assert!(close(k.coeff(2), C64::new(2.0, 0.0), 1e-14));
        let f = bound_d2(&s).unwrap().lower_extremal;
        let fs = extremal_series(&f, 8).unwrap();
        assert!(close(fs.coeff(2), C64::new(1.0, 0.0), 1e-12));
        assert!(close(fs.coeff(3), C64::new(0.0, 0.0), 1e-12));
        let g = ClassParams::ozaki(1.0).unwrap();
        let gs = extremal_series(&descriptor(ExtremalName::GOzaki, g).unwrap(), 8).unwrap();
        assert!(close(gs.coeff(2), C64::new(0.5, 0.0), 1e-15));
        assert!(extremal_series(&descriptor(ExtremalName::K, s).unwrap(), 3).is_err());
    }

    #[test]
    fn descriptor_validation() {
        let s = ClassParams::spirallike(0.0, 0.0).unwrap();
        assert!(descriptor(ExtremalName::GOzaki, s).is_err());
        assert!(descriptor(ExtremalName::FSpiral, s).is_err());
        let rep = AtomicHerglotzRep::single(C64::new(1.0, 0.0)).unwrap();
        assert!(ExtremalDescriptor::new(ExtremalName::K, s, Some(rep)).is_err());
    }

    #[test]
    fn attainment_examples() {
        for (alpha, gamma) in [(0.0, 0.0), (0.3, FRAC_PI_6), (0.5, -FRAC_PI_3)] {
            let s = ClassParams::spirallike(alpha, gamma).unwrap();
            let h = attainment(&descriptor(ExtremalName::H, s).unwrap(), Functional::D2).unwrap();
            assert!((h - (1.0 - alpha) * gamma.cos()).abs() < 1e-12);
            let c = ClassParams::convex(alpha, gamma).unwrap();
            let q = attainment(&descriptor(ExtremalName::Q, c).unwrap(), Functional::D1).unwrap();
            assert!((q + 1.0).abs() < 1e-15);
        }
        let f = ozaki_lower_extremal(0.75, OzakiBranch::Endpoint).unwrap();
        let v = attainment(&f, Functional::D2).unwrap();
        assert!((v + 0.34375).abs() < 1e-12);
    }

    #[test]
    fn every_endpoint_is_attained() {
        let mut all = alloc::vec::Vec::new();
        for alpha in [0.0, 0.25, 0.5, 0.9] {
            for gamma in [-FRAC_PI_3, -FRAC_PI_6, 0.0, FRAC_PI_4, 1.4] {
                all.push(ClassParams::spirallike(alpha, gamma).unwrap());
                all.push(ClassParams::convex(alpha, gamma).unwrap());
            }
        }
        for lambda in [0.1, 0.25, 0.5, 0.6, 1.0] {
            all.push(ClassParams::ozaki(lambda).unwrap());
        }
        for p in &all {
            for which in [Functional::D1, Functional::D2] {
                let b = bound(p, which).unwrap();
                let lo = attainment(&b.lower_extremal, which).unwrap();
                let hi = attainment(&b.upper_extremal, which).unwrap();
                assert!((lo - b.lower).abs() < 1e-9, "{p:?} {which:?} lower {lo} vs {}", b.lower);
                assert!((hi - b.upper).abs() < 1e-9, "{p:?} {which:?} upper {hi} vs {}", b.upper);
            }
        }
    }

    #[test]
    fn convex_lower_bound_below_threshold() {
        // T(0.5, γ) < 5/4 once cos γ = 0.3
        let gamma = 0.3f64.acos();
        let p = ClassParams::convex(0.5, gamma).unwrap();
        let t = t_factor(0.5, gamma);
        assert!(t < CONVEX_T_THRESHOLD);
        let printed = -p.scaled_cos() / (1.0 + t).sqrt();
        let b = bound_d2(&p).unwrap();
        assert!(b.lower < printed - 1e-6);
        // the corrected value is attained by an actual class member
        let v = attainment(&b.lower_extremal, Functional::D2).unwrap();
        assert!((v - b.lower).abs() < 1e-12);
        // the two branches agree at T = 5/4
        let c0 = 2.0 / (1.0 + CONVEX_T_THRESHOLD).sqrt();
        let c1 = 3.0 / (1.0 + CONVEX_T_THRESHOLD);
        assert!((c0 - c1).abs() < 1e-15);
    }

    #[test]
    fn alexander_partners_match_closed_forms() {
        // l = [(1−z)^{1−w} − 1]/(w − 1), q′ = (1 − z²)^{−(1−α)μ}, w = 2(1−α)μ
        let (alpha, gamma) = (0.2, 0.7);
        let c = ClassParams::convex(alpha, gamma).unwrap();
        let w = c.scaled_mu() * 2.0;
        let one = C64::new(1.0, 0.0);
        let base = TruncatedSeries::one_minus_monomial(10, one, 1).pow_complex(one - w).unwrap();
        let l_closed = base.sub(&TruncatedSeries::one(10)).unwrap().scale(one / (w - one));
        let l = extremal_series(&descriptor(ExtremalName::L, c).unwrap(), 10).unwrap();
        assert!(l.max_abs_diff(&l_closed) < 1e-12);
        let q_closed = TruncatedSeries::one_minus_monomial(10, one, 2)
            .pow_complex(-c.scaled_mu())
            .unwrap()
            .antiderivative();
        let q = extremal_series(&descriptor(ExtremalName::Q, c).unwrap(), 10).unwrap();
        assert!(q.max_abs_diff(&q_closed) < 1e-12);
        // degenerate exponent 2(1−α)μ = 1: the Alexander path still works
        let d = ClassParams::convex(0.5, 0.0).unwrap();
        let l = extremal_series(&descriptor(ExtremalName::L, d).unwrap(), 6).unwrap();
        // −log(1 − z) = z + z²/2 + z³/3 + …
        assert!(close(l.coeff(3), C64::new(1.0 / 3.0, 0.0), 1e-15));
    }

    #[test]
    fn extremals_match_class_constructors() {
        let (alpha, gamma) = (0.3, -0.4);
        let s = ClassParams::spirallike(alpha, gamma).unwrap();
        let b = bound_d2(&s).unwrap();
        let rep = b.lower_extremal.rep.clone().unwrap();
        let direct = spirallike_from_p(&rep.to_series(10), alpha, gamma).unwrap();
        let built = extremal_series(&b.lower_extremal, 10).unwrap();
        assert!(direct.max_abs_diff(&built) < 1e-12);

        let c = ClassParams::convex(alpha, gamma).unwrap();
        let g = extremal_series(&bound_d2(&c).unwrap().lower_extremal, 10).unwrap();
        let direct = convex_from_p(&rep.to_series(10), alpha, gamma).unwrap();
        assert!(direct.max_abs_diff(&g) < 1e-12);

        let f = ozaki_lower_extremal(0.3, OzakiBranch::Interior).unwrap();
        let p = f.rep.clone().unwrap().to_series(10);
        let direct = gclass_from_p(&p, 0.3).unwrap();
        assert!(direct.max_abs_diff(&extremal_series(&f, 10).unwrap()) < 1e-12);
    }

    #[test]
    fn rotations_leave_functionals_unchanged() {
        let s = ClassParams::spirallike(0.25, 0.6).unwrap();
        let g = ClassParams::ozaki(0.3).unwrap();
        for b in [bound_d2(&s).unwrap(), bound_d2(&g).unwrap(), bound_d1(&s).unwrap()] {
            for desc in [&b.lower_extremal, &b.upper_extremal] {
                let f = extremal_series(desc, 8).unwrap();
                let t0 = CoeffTriple::from_series(&f).unwrap();
                for theta in [0.3, 1.7, -2.9] {
                    let t = CoeffTriple::from_series(&f.rotate(theta)).unwrap();
                    assert!((t.d1() - t0.d1()).abs() < 1e-12);
                    assert!((t.d2() - t0.d2()).abs() < 1e-12);
                }
            }
        }
    }
}
