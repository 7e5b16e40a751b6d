//! Truncated complex power series (jets) on the unit disk.
//!
//! A [`TruncatedSeries`] of order `N` stores the Taylor coefficients
//! `a₀, …, a_N`. Products and compositions drop every term above `zᴺ`; that is
//! the usual jet arithmetic and never an error. Operations that need a branch
//! of the logarithm require a constant term of exactly 1 (or 0 for `exp`), so
//! the principal branch is the only one ever used.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, Zero};

use crate::config::CONSTANT_TERM_TOL;
use crate::{Error, Result, C64};

/// Taylor coefficients `a₀..=a_N` of an analytic function, truncated at order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a series needs at least the constant term"));
        }
        if coeffs.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::domain("series coefficients must be finite"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Real coefficients, zero-padded (or cut) to `order`.
    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self> {
        let mut out = vec![C64::zero(); order + 1];
        for (slot, &a) in out.iter_mut().zip(coeffs) {
            *slot = C64::new(a, 0.0);
        }
        Self::new(out)
    }

    /// Complex coefficients, zero-padded (or cut) to `order`.
    pub fn from_complex(coeffs: &[C64], order: usize) -> Result<Self> {
        let mut out = vec![C64::zero(); order + 1];
        for (slot, &a) in out.iter_mut().zip(coeffs) {
            *slot = a;
        }
        Self::new(out)
    }

    /// The zero series.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![C64::zero(); order + 1] }
    }

    /// The constant `w`.
    pub fn constant(order: usize, w: C64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = w;
        s
    }

    /// The constant 1.
    pub fn one(order: usize) -> Self {
        Self::constant(order, C64::new(1.0, 0.0))
    }

    /// The identity `z` (for order 0 this is the zero series).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C64::new(1.0, 0.0);
        }
        s
    }

    /// `1 − w·zᵏ`, the building block of every kernel power.
    pub fn one_minus_monomial(order: usize, w: C64, k: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] -= w;
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients `a₀..=a_N`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `zᵏ`; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_else(C64::zero)
    }

    /// Re-truncates (or zero-extends) to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C64::zero());
        TruncatedSeries { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    fn require_constant(&self, want: f64, op: &str) -> Result<()> {
        if (self.coeffs[0] - C64::new(want, 0.0)).norm() > CONSTANT_TERM_TOL {
            return Err(Error::domain(alloc::format!(
                "{op} needs constant term {want}, got {}",
                self.coeffs[0]
            )));
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplication by a complex scalar.
    pub fn scale(&self, w: C64) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * w).collect() }
    }

    /// Cauchy product truncated at order `N`.
    ///
    /// `(1 − z)·(1 + z + … + zᴺ)` is `1 − zᴺ⁺¹`, so the truncated product is
    /// exactly 1; the `zᴺ⁺¹` term is dropped like every other overflow term.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut out = vec![C64::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `exp(f)` for `f(0) = 0`, via `(exp f)′ = f′ · exp f`.
    pub fn exp_series(&self) -> Result<Self> {
        self.require_constant(0.0, "exp_series")?;
        let n = self.coeffs.len();
        let mut g = vec![C64::zero(); n];
        g[0] = C64::new(1.0, 0.0);
        for k in 1..n {
            let mut acc = C64::zero();
            for j in 1..=k {
                acc += self.coeffs[j] * g[k - j] * j as f64;
            }
            g[k] = acc / k as f64;
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// Principal `log(f)` for `f(0) = 1`, via `(log f)′ = f′/f`.
    pub fn log_series(&self) -> Result<Self> {
        self.require_constant(1.0, "log_series")?;
        let n = self.coeffs.len();
        let mut h = vec![C64::zero(); n];
        for k in 1..n {
            let mut acc = C64::zero();
            for (j, hj) in h.iter().enumerate().take(k).skip(1) {
                acc += *hj * self.coeffs[k - j] * j as f64;
            }
            h[k] = self.coeffs[k] - acc / k as f64;
        }
        Ok(TruncatedSeries { coeffs: h })
    }

    /// Principal power `f^w = exp(w · log f)` for `f(0) = 1`.
    pub fn pow_complex(&self, w: C64) -> Result<Self> {
        self.log_series()?.scale(w).exp_series()
    }

    /// `∫₀ᶻ (p(t) − 1)/t dt` for `p(0) = 1`: coefficient `c_k / k` at `zᵏ`.
    pub fn integrate_kernel(&self) -> Result<Self> {
        self.require_constant(1.0, "integrate_kernel")?;
        let mut coeffs = vec![C64::zero(); self.coeffs.len()];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            *slot = self.coeffs[k] / k as f64;
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Antiderivative vanishing at 0. The input's top coefficient falls off.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![C64::zero(); self.coeffs.len()];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            *slot = self.coeffs[k - 1] / k as f64;
        }
        TruncatedSeries { coeffs }
    }

    /// Derivative, same order; the top coefficient is unknown and set to 0.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![C64::zero(); n];
        for (k, slot) in coeffs.iter_mut().take(n - 1).enumerate() {
            *slot = self.coeffs[k + 1] * (k + 1) as f64;
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplication by `z` (drops `a_N`).
    pub fn shift_up(&self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![C64::zero(); n];
        coeffs[1..].copy_from_slice(&self.coeffs[..n - 1]);
        TruncatedSeries { coeffs }
    }

    /// Division by `z`; requires `f(0) = 0`. The new top coefficient is 0.
    pub fn shift_down(&self) -> Result<Self> {
        self.require_constant(0.0, "shift_down")?;
        let n = self.coeffs.len();
        let mut coeffs = vec![C64::zero(); n];
        coeffs[..n - 1].copy_from_slice(&self.coeffs[1..]);
        Ok(TruncatedSeries { coeffs })
    }

    /// Rotation `e^{−iθ} f(e^{iθ} z)`: `a_k ↦ a_k e^{i(k−1)θ}`.
    pub fn rotate(&self, theta: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * C64::from_polar(1.0, (k as f64 - 1.0) * theta))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::zero(), |acc, a| acc * z + a)
    }

    /// Largest coefficient-wise distance to `other` (orders may differ; missing
    /// coefficients count as zero).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, Float::max)
    }
}
