//! Sharp bounds for the successive-coefficient functionals `|a₂| − |a₁|` and
//! `|a₃| − |a₂|` on three classes of normalized analytic functions in the unit
//! disk:
//!
//! * γ-spirallike functions of order α, `Re(e^{−iγ} z f′/f) > α cos γ`;
//! * γ-convex functions of order α, `Re(e^{−iγ}(1 + z f″/f′)) > α cos γ`;
//! * the Ozaki-type class `G(λ)`, `Re(1 + z f″/f′) < 1 + λ/2`.
//!
//! Class members are built from Carathéodory functions (positive real part,
//! `p(0) = 1`) through truncated power-series arithmetic. The closed-form
//! bounds live in [`bounds`]; [`verify`] re-derives them by exhaustive search
//! over the Libera–Złotkiewicz parametrization and by random sampling.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod bounds;
pub mod caratheodory;
pub mod classes;
pub mod config;
mod error;
pub mod series;
pub mod verify;

mod rng;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use caratheodory::{Atom, AtomicHerglotzRep, LzParams};
pub use series::TruncatedSeries;
pub use bounds::{bound, bound_d1, bound_d2, BoundInterval, ExtremalDescriptor, ExtremalName, Functional};
pub use classes::{ClassParams, CoeffTriple, Family, Mu};
pub use verify::{FunctionalSpec, GridPoint, GridSize, VerifyReport};
