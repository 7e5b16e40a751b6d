//! Carathéodory functions `p(z) = 1 + c₁z + c₂z² + …` with `Re p > 0`.
//!
//! Every such function is a (possibly continuous) convex combination of
//! Herglotz kernels `(1 + εz)/(1 − εz)`, `|ε| = 1`. This module handles the
//! finite ("atomic") case, the Libera–Złotkiewicz parametrization of `c₂`
//! and `c₃`, and the boundary two-atom moment problem that produces the
//! extremal functions.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_traits::Zero;
// unused whenever std is linked into the build graph
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::{ATOM_TOL, RANGE_TOL, TWO_ATOM_RESIDUAL};
use crate::rng::Uniform;
use crate::series::TruncatedSeries;
use crate::{Error, Result, C64};

/// One Herglotz kernel with its weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    /// Weight in `(0, 1]`.
    pub weight: f64,
    /// Unimodular point `ε`.
    pub point: C64,
}

/// Finite convex combination `Σ γⱼ (1 + εⱼz)/(1 − εⱼz)` of Herglotz kernels.
///
/// Atoms are kept sorted by `arg ε ∈ [0, 2π)` so equal representations
/// compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicHerglotzRep {
    atoms: Vec<Atom>,
}

fn arg_2pi(z: C64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

impl AtomicHerglotzRep {
    /// Validates and sorts the atoms.
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::domain("a representation needs at least one atom"));
        }
        for a in &atoms {
            if !(a.weight > 0.0 && a.weight <= 1.0 + ATOM_TOL) {
                return Err(Error::domain(alloc::format!("atom weight {} not in (0, 1]", a.weight)));
            }
            if (a.point.norm() - 1.0).abs() > ATOM_TOL {
                return Err(Error::domain(alloc::format!("atom point {} not unimodular", a.point)));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > ATOM_TOL {
            return Err(Error::domain(alloc::format!("atom weights sum to {total}")));
        }
        atoms.sort_by(|a, b| arg_2pi(a.point).total_cmp(&arg_2pi(b.point)));
        Ok(AtomicHerglotzRep { atoms })
    }

    /// A single kernel `(1 + εz)/(1 − εz)`.
    pub fn single(point: C64) -> Result<Self> {
        Self::new(alloc::vec![Atom { weight: 1.0, point }])
    }

    /// The atoms, sorted by argument.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Rotates every point by `e^{iφ}`; `cₖ ↦ cₖ e^{ikφ}`.
    pub fn rotated(&self, phi: f64) -> Self {
        let w = C64::from_polar(1.0, phi);
        let atoms = self.atoms.iter().map(|a| Atom { weight: a.weight, point: a.point * w }).collect();
        // rotation keeps weights and unimodularity; only the order can change
        Self::new(atoms).expect("rotation preserves validity")
    }

    /// `c₁..=c_{k_max}` with `cₖ = 2 Σ γⱼ εⱼᵏ`.
    pub fn moments(&self, k_max: usize) -> Vec<C64> {
        let mut out = alloc::vec![C64::zero(); k_max];
        for a in &self.atoms {
            let mut pw = C64::new(1.0, 0.0);
            for slot in out.iter_mut() {
                pw *= a.point;
                *slot += pw * (2.0 * a.weight);
            }
        }
        out
    }

    /// Taylor series `1 + Σ cₖ zᵏ` up to `order`.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = alloc::vec![C64::new(1.0, 0.0)];
        coeffs.extend(self.moments(order));
        TruncatedSeries::new(coeffs).expect("moments are finite")
    }

    /// Closed-form value `Σ γⱼ (1 + εⱼz)/(1 − εⱼz)` for `|z| < 1`.
    pub fn eval(&self, z: C64) -> C64 {
        let one = C64::new(1.0, 0.0);
        self.atoms
            .iter()
            .map(|a| (one + a.point * z) / (one - a.point * z) * a.weight)
            .fold(C64::zero(), |acc, v| acc + v)
    }
}

/// Libera–Złotkiewicz data `(c, x, y)` with `0 ≤ c ≤ 2`, `|x| ≤ 1`, `|y| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzParams {
    /// Rotation-normalized first coefficient `c₁ = c ≥ 0`.
    pub c: f64,
    /// Parameter of `c₂`.
    pub x: C64,
    /// Parameter of `c₃`.
    pub y: C64,
}

impl LzParams {
    /// Checks the magnitude ranges.
    pub fn new(c: f64, x: C64, y: C64) -> Result<Self> {
        check_c(c)?;
        check_unit_disk(x, "x")?;
        check_unit_disk(y, "y")?;
        Ok(LzParams { c, x, y })
    }

    /// `c₂` of these parameters.
    pub fn c2(&self) -> C64 {
        c2_unchecked(self.c, self.x)
    }

    /// `c₃` of these parameters.
    pub fn c3(&self) -> C64 {
        c3_unchecked(self.c, self.x, self.y)
    }
}

fn check_c(c: f64) -> Result<()> {
    if !(-RANGE_TOL..=2.0 + RANGE_TOL).contains(&c) {
        return Err(Error::domain(alloc::format!("c = {c} outside [0, 2]")));
    }
    Ok(())
}

fn check_unit_disk(x: C64, name: &str) -> Result<()> {
    if x.norm().is_nan() || x.norm() > 1.0 + RANGE_TOL {
        return Err(Error::domain(alloc::format!("|{name}| = {} exceeds 1", x.norm())));
    }
    Ok(())
}

fn c2_unchecked(c: f64, x: C64) -> C64 {
    (x * (4.0 - c * c) + c * c) / 2.0
}

fn c3_unchecked(c: f64, x: C64, y: C64) -> C64 {
    let s = 4.0 - c * c;
    let r2 = x.norm_sqr();
    (x * (2.0 * s * c) - x * x * (s * c) + y * (2.0 * s * (1.0 - r2)) + c * c * c) / 4.0
}

/// `c₂ = (c² + (4 − c²)x)/2`.
pub fn lz_c2(c: f64, x: C64) -> Result<C64> {
    check_c(c)?;
    check_unit_disk(x, "x")?;
    Ok(c2_unchecked(c, x))
}

/// `c₃ = (c³ + 2(4 − c²)c·x − (4 − c²)c·x² + 2(4 − c²)(1 − |x|²)y)/4`.
pub fn lz_c3(c: f64, x: C64, y: C64) -> Result<C64> {
    Ok(LzParams::new(c, x, y)?.c3())
}

/// Two atoms `(γ₁, ε₁), (γ₂, ε₂)` with `γ₁ε₁ + γ₂ε₂ = c/2` and
/// `γ₁ε₁² + γ₂ε₂² = (c² + (4 − c²)x)/4`, for `0 ≤ c < 2`, `|x| = 1`.
///
/// For a two-point measure on the circle the moments obey
/// `m_{k+1} = s·m_k − p·m_{k−1}` with `s = ε₁ + ε₂`, `p = ε₁ε₂`, and
/// `m₋₁ = conj(m₁)`. The cases `k = 0, 1` are linear in `(s, p)`, so the
/// points are the roots of `ε² − sε + p`; the weights follow from `m₁`.
pub fn solve_two_atom(c: f64, x: C64) -> Result<AtomicHerglotzRep> {
    check_c(c)?;
    check_unit_disk(x, "x")?;
    if c >= 2.0 - RANGE_TOL {
        return Err(Error::Degenerate);
    }
    let m1 = C64::new(c / 2.0, 0.0);
    let m2 = c2_unchecked(c, x) / 2.0;

    let s = (m1 - m2 * m1.conj()) / (1.0 - m1.norm_sqr());
    let p = s * m1 - m2;
    let disc = (s * s - p * 4.0).sqrt();
    let roots = [(s + disc) / 2.0, (s - disc) / 2.0];

    let infeasible = |residual: f64| Error::Infeasible { residual };
    let off_circle = roots.iter().map(|e| (e.norm() - 1.0).abs()).fold(0.0, f64::max);
    if off_circle > 1e-8 || (roots[0] - roots[1]).norm() < 1e-12 {
        return Err(infeasible(off_circle));
    }
    let e1 = roots[0] / roots[0].norm();
    let e2 = roots[1] / roots[1].norm();
    let g1 = (m1 - e2) / (e1 - e2);
    let w1 = g1.re;
    if g1.im.abs() > 1e-8 || !(w1 > 0.0 && w1 < 1.0) {
        return Err(infeasible(g1.im.abs().max((w1 - w1.clamp(0.0, 1.0)).abs())));
    }
    let w2 = 1.0 - w1;

    let r1 = (e1 * w1 + e2 * w2 - m1).norm();
    let r2 = (e1 * e1 * w1 + e2 * e2 * w2 - m2).norm();
    let residual = r1.max(r2);
    if residual >= TWO_ATOM_RESIDUAL {
        return Err(infeasible(residual));
    }
    AtomicHerglotzRep::new(alloc::vec![
        Atom { weight: w1, point: e1 },
        Atom { weight: w2, point: e2 },
    ])
}

/// Reproducible random representation: exponential weights normalized to
/// one, points uniform on the circle.
pub fn random_rep(n_atoms: usize, seed: u64) -> Result<AtomicHerglotzRep> {
    if n_atoms < 1 {
        return Err(Error::domain("random_rep needs at least one atom"));
    }
    let mut rng = Uniform::new(seed);
    let mut atoms: Vec<Atom> = (0..n_atoms)
        .map(|_| {
            let w = -(1.0 - rng.next_f64()).ln();
            let theta = TAU * rng.next_f64();
            Atom { weight: w, point: C64::from_polar(1.0, theta) }
        })
        .collect();
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    if total > 0.0 {
        for a in &mut atoms {
            a.weight /= total;
        }
    } else {
        for a in &mut atoms {
            a.weight = 1.0 / n_atoms as f64;
        }
    }
    AtomicHerglotzRep::new(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn lz_c2_examples() {
        assert!(close(lz_c2(2.0, C64::new(0.3, -0.4)).unwrap(), C64::new(2.0, 0.0), 1e-15));
        assert!(close(lz_c2(0.0, C64::new(1.0, 0.0)).unwrap(), C64::new(2.0, 0.0), 1e-15));
        // c₂ = (1 − 3)/2; its half, the second moment of the measure, is −1/2
        let c2 = lz_c2(1.0, C64::new(-1.0, 0.0)).unwrap();
        assert!(close(c2, C64::new(-1.0, 0.0), 1e-15));
        assert!(close(c2 / 2.0, C64::new(-0.5, 0.0), 1e-15));
    }

    #[test]
    fn lz_domain_errors() {
        assert!(lz_c2(2.5, C64::zero()).is_err());
        assert!(lz_c2(-0.1, C64::zero()).is_err());
        assert!(lz_c2(1.0, C64::new(1.0, 0.1)).is_err());
        assert!(lz_c3(1.0, C64::zero(), C64::new(0.0, 1.5)).is_err());
    }

    #[test]
    fn lz_c3_examples() {
        let y = C64::new(0.2, 0.7);
        assert!(close(lz_c3(2.0, C64::new(0.6, 0.8), y).unwrap(), C64::new(2.0, 0.0), 1e-15));
        assert!(close(lz_c3(0.0, C64::new(1.0, 0.0), y).unwrap(), C64::zero(), 1e-15));
    }

    #[test]
    fn moments_examples() {
        let k = AtomicHerglotzRep::single(C64::new(1.0, 0.0)).unwrap();
        assert!(k.moments(6).iter().all(|c| close(*c, C64::new(2.0, 0.0), 1e-15)));

        let half = |p: C64| Atom { weight: 0.5, point: p };
        let r = AtomicHerglotzRep::new(alloc::vec![half(C64::i()), half(-C64::i())]).unwrap();
        let m = r.moments(3);
        assert!(close(m[0], C64::zero(), 1e-15));
        assert!(close(m[1], C64::new(-2.0, 0.0), 1e-15));
        assert!(close(m[2], C64::zero(), 1e-15));

        let r = AtomicHerglotzRep::new(alloc::vec![
            half(C64::from_polar(1.0, PI / 3.0)),
            half(C64::from_polar(1.0, -PI / 3.0)),
        ])
        .unwrap();
        let m = r.moments(3);
        // 2·cos(kπ/3)
        assert!(close(m[0], C64::new(1.0, 0.0), 1e-15));
        assert!(close(m[1], C64::new(-1.0, 0.0), 1e-15));
        assert!(close(m[2], C64::new(-2.0, 0.0), 1e-15));
    }

    #[test]
    fn to_series_examples() {
        let k = AtomicHerglotzRep::single(C64::new(1.0, 0.0)).unwrap().to_series(5);
        assert_eq!(k, TruncatedSeries::from_real(&[1.0, 2.0, 2.0, 2.0, 2.0, 2.0], 5).unwrap());
        let half = |p: f64| Atom { weight: 0.5, point: C64::new(p, 0.0) };
        let h = AtomicHerglotzRep::new(alloc::vec![half(1.0), half(-1.0)]).unwrap().to_series(6);
        let want = TruncatedSeries::from_real(&[1.0, 0.0, 2.0, 0.0, 2.0, 0.0, 2.0], 6).unwrap();
        assert!(h.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn rep_validation() {
        assert!(AtomicHerglotzRep::new(alloc::vec![]).is_err());
        let bad_weight = Atom { weight: 0.6, point: C64::new(1.0, 0.0) };
        assert!(AtomicHerglotzRep::new(alloc::vec![bad_weight]).is_err());
        let off = Atom { weight: 1.0, point: C64::new(0.9, 0.0) };
        assert!(AtomicHerglotzRep::new(alloc::vec![off]).is_err());
    }

    #[test]
    fn atoms_sorted_by_argument() {
        let a = Atom { weight: 0.5, point: C64::from_polar(1.0, -0.5) };
        let b = Atom { weight: 0.5, point: C64::from_polar(1.0, 0.5) };
        let r1 = AtomicHerglotzRep::new(alloc::vec![a, b]).unwrap();
        let r2 = AtomicHerglotzRep::new(alloc::vec![b, a]).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.atoms()[0], b);
    }

    #[test]
    fn two_atom_starlike_extremal() {
        let rep = solve_two_atom(1.0, C64::new(-1.0, 0.0)).unwrap();
        let atoms = rep.atoms();
        assert_eq!(atoms.len(), 2);
        assert!((atoms[0].weight - 0.5).abs() < 1e-12 && (atoms[1].weight - 0.5).abs() < 1e-12);
        assert!(close(atoms[0].point, C64::from_polar(1.0, PI / 3.0), 1e-12));
        assert!(close(atoms[1].point, C64::from_polar(1.0, -PI / 3.0), 1e-12));
        let m = rep.moments(2);
        assert!(close(m[0], C64::new(1.0, 0.0), 1e-12));
        assert!(close(m[1], C64::new(-1.0, 0.0), 1e-12));
    }

    #[test]
    fn two_atom_even_kernel() {
        let rep = solve_two_atom(0.0, C64::new(1.0, 0.0)).unwrap();
        let pts: Vec<C64> = rep.atoms().iter().map(|a| a.point).collect();
        assert!(close(pts[0], C64::new(1.0, 0.0), 1e-12));
        assert!(close(pts[1], C64::new(-1.0, 0.0), 1e-12));
        assert!(rep.atoms().iter().all(|a| (a.weight - 0.5).abs() < 1e-12));
    }

    #[test]
    fn two_atom_spirallike_extremal_residual() {
        let (alpha, gamma) = (0.5, PI / 4.0);
        let cg = gamma.cos();
        let t = (1.0 + 4.0 * (1.0 - alpha) * (2.0 - alpha) * cg * cg).sqrt();
        let c = 2.0 / (1.0 + t).sqrt();
        let x = -C64::new(1.0 + 2.0 * (1.0 - alpha) * cg * cg, (1.0 - alpha) * (2.0 * gamma).sin()) / t;
        let rep = solve_two_atom(c, x).unwrap();
        let m = rep.moments(2);
        assert!(close(m[0] / 2.0, C64::new(c / 2.0, 0.0), 1e-10));
        assert!(close(m[1] / 2.0, (x * (4.0 - c * c) + c * c) / 4.0, 1e-10));
    }

    #[test]
    fn two_atom_errors() {
        assert_eq!(solve_two_atom(2.0, C64::new(-1.0, 0.0)), Err(Error::Degenerate));
        assert!(matches!(solve_two_atom(1.0, C64::new(0.3, 0.0)), Err(Error::Infeasible { .. })));
        assert!(matches!(solve_two_atom(0.5, C64::zero()), Err(Error::Infeasible { .. })));
        assert!(solve_two_atom(3.0, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn random_rep_examples() {
        let r = random_rep(1, 7).unwrap();
        assert_eq!(r.atoms().len(), 1);
        assert_eq!(r.atoms()[0].weight, 1.0);
        assert_eq!(random_rep(3, 42).unwrap(), random_rep(3, 42).unwrap());
        assert_ne!(random_rep(3, 42).unwrap(), random_rep(3, 43).unwrap());
        let m = random_rep(5, 11).unwrap().moments(10);
        assert!(m.iter().all(|c| c.norm() <= 2.0 + 1e-12));
        assert!(random_rep(0, 1).is_err());
    }

    #[test]
    fn closed_form_matches_series() {
        let r = random_rep(4, 3).unwrap();
        let s = r.to_series(80);
        let z = C64::new(0.3, -0.4);
        assert!(close(r.eval(z), s.eval(z), 1e-12));
    }
}
