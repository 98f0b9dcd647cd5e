//! Numerical engine for quantum Heisenberg manifolds.
//!
//! Algebra elements are coefficient functions `Phi(x, y, p)` sampled on a
//! truncated grid and subject to the twisted covariance condition
//! `Phi(x + 2*pi*k, y, p) = e^{i c (2*pi*k) p y} Phi(x, y, p)`. On top of the
//! sampled representation the crate realizes the represented algebra (star
//! product, involution, operator norm on the GNS space), the Heisenberg
//! group action with its Fourier/Fejer machinery, the sub-Riemannian
//! derivations and Lipschitz/Hoelder seminorms, the trace and heat
//! semigroup, and the commutative `hbar = 0` cross-check against
//! Carnot-Caratheodory geometry.
//!
//! The numerics are generic over the real scalar (`f32` or `f64`); concrete
//! aliases for the common double-precision instantiation sit at the crate
//! root.

pub mod action;
pub mod algebra;
pub mod classical;
pub mod dft;
pub mod element;
pub mod error;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use element::{
    max_abs_diff, random_element, random_element_banded, random_state, BandLimit,
    Element, StateVector,
};
pub use error::{QhmError, Result};
pub use grid::{Grid, ManifoldParams};
pub use scalar::{Cpx, Real};

/// Double-precision instantiations.
pub type ManifoldParams64 = ManifoldParams<f64>;
pub type Element64 = Element<f64>;
pub type StateVector64 = StateVector<f64>;
pub type Complex64 = Cpx<f64>;

/// Single-precision instantiations.
pub type ManifoldParams32 = ManifoldParams<f32>;
pub type Element32 = Element<f32>;
pub type StateVector32 = StateVector<f32>;
