//! Deformation parameters and the truncated sampling grid.
//!
//! Coefficient functions live on `R x T x Z` with x quasi-periodic over
//! `[0, 2*pi)`, y periodic over `[0, 1)`, and the integer index p truncated
//! to `|p| <= p_max`.

use crate::error::{QhmError, Result};
use crate::scalar::{r, Real};
use serde::{Deserialize, Serialize};

/// The constants fixing one quantum Heisenberg manifold: a positive integer
/// `c` and real deformation parameters `hbar`, `mu`, `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManifoldParams<T> {
    pub c: u32,
    pub hbar: T,
    pub mu: T,
    pub nu: T,
}

impl<T: Real> ManifoldParams<T> {
    pub fn new(c: u32, hbar: T, mu: T, nu: T) -> Result<Self> {
        if c < 1 {
            return Err(QhmError::InvalidParams("c must be >= 1".into()));
        }
        if !(hbar.is_finite() && mu.is_finite() && nu.is_finite()) {
            return Err(QhmError::InvalidParams(
                "hbar, mu, nu must be finite".into(),
            ));
        }
        Ok(Self { c, hbar, mu, nu })
    }

    /// Shipped desk-scale configuration: `c=1, hbar=1, mu=2*pi/16, nu=1/16`.
    /// Both action shifts `hbar*mu` and `hbar*nu` are commensurate with the
    /// default 16x16 grid, so index and spectral shift paths can be
    /// cross-checked on it.
    pub fn desk() -> Self {
        Self {
            c: 1,
            hbar: T::one(),
            mu: T::TAU() / r(16.0),
            nu: T::one() / r(16.0),
        }
    }

    pub fn c_real(&self) -> T {
        r(self.c as f64)
    }

    /// True when `hbar = 0`, i.e. the commutative function algebra.
    pub fn is_classical(&self) -> bool {
        self.hbar == T::zero()
    }
}

/// Uniform sampling grid: `nx` points on `[0, 2*pi)`, `ny` points on
/// `[0, 1)`, and p ranging over `-p_max ..= p_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub p_max: usize,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, p_max: usize) -> Result<Self> {
        if nx < 4 || nx % 2 != 0 {
            return Err(QhmError::InvalidGrid(format!(
                "nx must be even and >= 4, got {nx}"
            )));
        }
        if ny < 4 || ny % 2 != 0 {
            return Err(QhmError::InvalidGrid(format!(
                "ny must be even and >= 4, got {ny}"
            )));
        }
        Ok(Self { nx, ny, p_max })
    }

    /// Default desk grid paired with [`ManifoldParams::desk`].
    pub fn desk() -> Self {
        Self { nx: 16, ny: 16, p_max: 4 }
    }

    /// Number of stored p-slices.
    pub fn n_slices(&self) -> usize {
        2 * self.p_max + 1
    }

    /// Total number of complex samples.
    pub fn len(&self) -> usize {
        self.nx * self.ny * self.n_slices()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples per p-slice.
    pub fn slice_len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn dx<T: Real>(&self) -> T {
        T::TAU() / r(self.nx as f64)
    }

    pub fn dy<T: Real>(&self) -> T {
        T::one() / r(self.ny as f64)
    }

    pub fn x<T: Real>(&self, i: usize) -> T {
        self.dx::<T>() * r(i as f64)
    }

    pub fn y<T: Real>(&self, j: usize) -> T {
        self.dy::<T>() * r(j as f64)
    }

    /// Flat index of the sample `(p, i, j)`; p-major, then x, then y.
    #[inline]
    pub fn idx(&self, p: i64, i: usize, j: usize) -> usize {
        debug_assert!(p.unsigned_abs() as usize <= self.p_max);
        debug_assert!(i < self.nx && j < self.ny);
        ((p + self.p_max as i64) as usize * self.nx + i) * self.ny + j
    }

    /// Iterator over stored p values.
    pub fn p_values(&self) -> impl Iterator<Item = i64> {
        let pm = self.p_max as i64;
        -pm..=pm
    }

    pub fn contains_p(&self, p: i64) -> bool {
        p.unsigned_abs() as usize <= self.p_max
    }
}
