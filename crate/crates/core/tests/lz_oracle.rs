//! Independent check of the `(c, x, y)` parametrization: recover `x` and `y`
//! from the moments of a known measure and map them back.

use succoef_core::caratheodory::{lz_c2, lz_c3, random_rep, solve_two_atom};
use succoef_core::{AtomicHerglotzRep, C64};

/// Rotation-normalized `(c, c₂, c₃)` of a representation.
fn normalized_moments(rep: &AtomicHerglotzRep) -> (f64, C64, C64) {
    let m = rep.moments(3);
    let beta = m[0].arg();
    let unrotate = |k: i32| C64::from_polar(1.0, -(k as f64) * beta);
    (m[0].norm(), m[1] * unrotate(2), m[2] * unrotate(3))
}

/// Solves `c₂ = (c² + (4−c²)x)/2` and the `c₃` relation for `x` and `y`;
/// `y = 0` when `1 − |x|²` vanishes and `c₃` does not depend on it.
fn invert(c: f64, c2: C64, c3: C64) -> (C64, C64) {
    let s = 4.0 - c * c;
    let x = (c2 * 2.0 - c * c) / s;
    let gap = 1.0 - x.norm_sqr();
    let rest = c3 * 4.0 - c * c * c - x * (2.0 * s * c) + x * x * (s * c);
    let y = if gap.abs() < 1e-9 { C64::new(0.0, 0.0) } else { rest / (2.0 * s * gap) };
    (x, y)
}

fn round_trip(rep: &AtomicHerglotzRep) -> (f64, f64) {
    let (c, c2, c3) = normalized_moments(rep);
    let (x, y) = invert(c, c2, c3);
    let unit = |v: C64| if v.norm() > 1.0 { v / v.norm() } else { v };
    let (x, y) = (unit(x), unit(y));
    let e2 = (lz_c2(c, x).unwrap() - c2).norm();
    let e3 = (lz_c3(c, x, y).unwrap() - c3).norm();
    (e2, e3)
}

#[test]
fn two_atom_measures_round_trip() {
    for seed in 0..1000u64 {
        let rep = random_rep(2, seed).unwrap();
        let (c, c2, _) = normalized_moments(&rep);
        let (x, _) = invert(c, c2, C64::new(0.0, 0.0));
        // two atoms sit on the boundary of the (c, x) region
        assert!((x.norm() - 1.0).abs() < 1e-9, "seed {seed}: |x| = {}", x.norm());
        let (e2, e3) = round_trip(&rep);
        assert!(e2 < 1e-10 && e3 < 1e-10, "seed {seed}: {e2} {e3}");
    }
}

#[test]
fn three_atom_measures_round_trip() {
    for seed in 0..300u64 {
        let rep = random_rep(3, 10_000 + seed).unwrap();
        let (c, c2, c3) = normalized_moments(&rep);
        let (x, y) = invert(c, c2, c3);
        assert!(x.norm() < 1.0 + 1e-12 && y.norm() < 1.0 + 1e-9, "seed {seed}");
        let (e2, e3) = round_trip(&rep);
        assert!(e2 < 1e-10 && e3 < 1e-10, "seed {seed}: {e2} {e3}");
    }
}

#[test]
fn uncorrected_middle_term_fails() {
    // with c·x in place of 2c·x the round trip breaks on generic measures
    let rep = random_rep(2, 7).unwrap();
    let (c, c2, c3) = normalized_moments(&rep);
    let (x, _) = invert(c, c2, c3);
    let s = 4.0 - c * c;
    let wrong = (x * (s * c) - x * x * (s * c) + c * c * c) / 4.0;
    assert!((wrong - c3).norm() > 1e-3);
}

#[test]
fn solver_recovers_its_own_measure() {
    for seed in 0..200u64 {
        let rep = random_rep(2, 50_000 + seed).unwrap();
        let (c, c2, _) = normalized_moments(&rep);
        let (x, _) = invert(c, c2, C64::new(0.0, 0.0));
        let solved = solve_two_atom(c, x / x.norm()).unwrap();
        let got = solved.moments(3);
        let (_, want2, want3) = normalized_moments(&rep);
        assert!((got[0].re - c).abs() < 1e-9 && (got[1] - want2).norm() < 1e-9);
        assert!((got[2] - want3).norm() < 1e-8, "seed {seed}");
    }
}
