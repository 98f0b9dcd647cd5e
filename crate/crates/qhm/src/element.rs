//! Sampled coefficient functions on the truncated grid: the covariance
//! rule, trigonometric sampling, translations, and random generators.
//!
//! A stored array holds `Phi(x_i, y_j, p)` on the fundamental domain
//! `[0, 2*pi) x [0, 1)`. Off-domain values are defined, not stored:
//! `Phi(x + 2*pi*k, y, p) = e^{i c (2*pi*k) p y} Phi(x, y, p)` and `Phi` is
//! 1-periodic in y. Interpolation goes through the periodic representative
//!
//! `Psi(x, y, p) = e^{-i c p x y} Phi(x, y, p)`,
//!
//! which is 2*pi-periodic in x at fixed y. With `yt = y mod 1` and the raw
//! (unreduced) x, every covariant evaluation collapses to the single formula
//!
//! `Phi(x, y, p) = e^{i c p x yt} Psi_interp(x mod 2*pi, yt)`,
//!
//! which reproduces stored samples at the nodes and satisfies the wrap
//! phases identically for arbitrary sample data.

use crate::dft;
use crate::error::{QhmError, Result};
use crate::grid::{Grid, ManifoldParams};
use crate::scalar::{cis, r, Cpx, Real};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COMMENSURATE_TOL: f64 = 1e-12;

/// Mode-band and p-support limits used by the random generators.
#[derive(Debug, Clone, Copy)]
pub struct BandLimit {
    pub x_band: usize,
    pub y_band: usize,
    pub p_support: usize,
}

impl BandLimit {
    /// Default generator band: nx/4 and ny/4 harmonics, full p range.
    pub fn default_for(grid: &Grid) -> Self {
        Self {
            x_band: grid.nx / 4,
            y_band: grid.ny / 4,
            p_support: grid.p_max,
        }
    }

    /// Band with headroom so that pairwise products stay below Nyquist and
    /// below the p truncation.
    pub fn interior_for(grid: &Grid) -> Self {
        Self {
            x_band: (grid.nx / 4).saturating_sub(1).max(1),
            y_band: (grid.ny / 4).saturating_sub(1).max(1),
            p_support: grid.p_max / 2,
        }
    }

    pub fn with_p_support(self, p_support: usize) -> Self {
        Self { p_support, ..self }
    }
}

/// Shared sample storage for coefficient functions and GNS vectors.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Field<T: Real> {
    pub params: ManifoldParams<T>,
    pub grid: Grid,
    pub values: Vec<Cpx<T>>,
}

impl<T: Real> Field<T> {
    pub fn zero(params: ManifoldParams<T>, grid: Grid) -> Self {
        let values = vec![Cpx::new(T::zero(), T::zero()); grid.len()];
        Self { params, grid, values }
    }

    pub fn from_values(
        params: ManifoldParams<T>,
        grid: Grid,
        values: Vec<Cpx<T>>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(QhmError::Mismatch(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(QhmError::NonFinite("sample data".into()));
        }
        Ok(Self { params, grid, values })
    }

    #[inline]
    pub fn get(&self, p: i64, i: usize, j: usize) -> Cpx<T> {
        self.values[self.grid.idx(p, i, j)]
    }

    pub fn assert_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid || self.params != other.params {
            return Err(QhmError::Mismatch(
                "operands carry different params or grids".into(),
            ));
        }
        Ok(())
    }

    /// Gauge phase `e^{i c p x_i y_j}` linking Phi and Psi samples.
    #[inline]
    fn gauge(&self, p: i64, i: usize, j: usize) -> Cpx<T> {
        let cp = self.params.c_real() * r::<T>(p as f64);
        cis(cp * self.grid.x::<T>(i) * self.grid.y::<T>(j))
    }

    /// Periodic representative samples `Psi = e^{-i c p x y} Phi`.
    pub fn psi(&self) -> Vec<Cpx<T>> {
        let mut out = self.values.clone();
        for p in self.grid.p_values() {
            for i in 0..self.grid.nx {
                for j in 0..self.grid.ny {
                    let k = self.grid.idx(p, i, j);
                    out[k] = self.values[k] * self.gauge(p, i, j).conj();
                }
            }
        }
        out
    }

    pub fn from_psi(
        params: ManifoldParams<T>,
        grid: Grid,
        mut psi: Vec<Cpx<T>>,
    ) -> Self {
        let tmp = Field { params, grid, values: Vec::new() };
        for p in grid.p_values() {
            for i in 0..grid.nx {
                for j in 0..grid.ny {
                    let k = grid.idx(p, i, j);
                    psi[k] *= tmp.gauge(p, i, j);
                }
            }
        }
        Field { params, grid, values: psi }
    }

    /// Covariant evaluation at an arbitrary point.
    pub fn covariant_sample(&self, x: T, y: T, p: i64) -> Result<Cpx<T>> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(QhmError::NonFinite("sample coordinates".into()));
        }
        if !self.grid.contains_p(p) {
            return Ok(Cpx::new(T::zero(), T::zero()));
        }
        let tau = T::TAU();
        let xt = x - tau * (x / tau).floor();
        let yt = y - y.floor();
        let cp = self.params.c_real() * r::<T>(p as f64);
        let phase = cis(cp * x * yt);

        let dx = self.grid.dx::<T>();
        let dy = self.grid.dy::<T>();
        let fi = xt / dx;
        let fj = yt / dy;
        let ri = fi.round();
        let rj = fj.round();
        let node_tol = r::<T>(1e-9);
        if (fi - ri).abs() < node_tol && (fj - rj).abs() < node_tol {
            let i = (ri.to_usize().unwrap_or(0)) % self.grid.nx;
            let j = (rj.to_usize().unwrap_or(0)) % self.grid.ny;
            let psi_node = self.get(p, i, j) * self.gauge(p, i, j).conj();
            return Ok(phase * psi_node);
        }

        // interpolate Psi in y along each grid column, then in x
        let nx = self.grid.nx;
        let ny = self.grid.ny;
        let theta_y = tau * yt;
        let mut row = Vec::with_capacity(nx);
        let mut line = Vec::with_capacity(ny);
        for i in 0..nx {
            line.clear();
            for j in 0..ny {
                line.push(self.get(p, i, j) * self.gauge(p, i, j).conj());
            }
            let modes = dft::symmetric_modes(&dft::forward(&line));
            row.push(dft::eval(&modes, theta_y));
        }
        let modes = dft::symmetric_modes(&dft::forward(&row));
        Ok(phase * dft::eval(&modes, xt))
    }

    fn commensurate_steps(shift: T, step: T) -> Option<i64> {
        let ratio = shift / step;
        let rounded = ratio.round();
        if (ratio - rounded).abs() < r::<T>(COMMENSURATE_TOL) {
            rounded.to_i64()
        } else {
            None
        }
    }

    /// Samples of `(x, y, p) -> Phi(x - shift, y, p)`.
    pub fn shift_x(&self, shift: T) -> Result<Self> {
        if !shift.is_finite() {
            return Err(QhmError::NonFinite("x shift".into()));
        }
        let nx = self.grid.nx;
        let ny = self.grid.ny;
        let mut out = self.clone();
        let psi = self.psi();
        for p in self.grid.p_values() {
            let cp = self.params.c_real() * r::<T>(p as f64);
            let commensurate = Self::commensurate_steps(shift, self.grid.dx::<T>());
            for j in 0..ny {
                let shifted: Vec<Cpx<T>> = match commensurate {
                    Some(l) => (0..nx)
                        .map(|i| {
                            let src = (i as i64 - l).rem_euclid(nx as i64) as usize;
                            psi[self.grid.idx(p, src, j)]
                        })
                        .collect(),
                    None => {
                        let line: Vec<Cpx<T>> =
                            (0..nx).map(|i| psi[self.grid.idx(p, i, j)]).collect();
                        dft::shifted(&line, shift)
                    }
                };
                let yj = self.grid.y::<T>(j);
                for i in 0..nx {
                    let x = self.grid.x::<T>(i) - shift;
                    out.values[self.grid.idx(p, i, j)] = cis(cp * x * yj) * shifted[i];
                }
            }
        }
        Ok(out)
    }

    /// Samples of `(x, y, p) -> Phi(x, y - shift, p)` with the shifted y
    /// reduced back into `[0, 1)` (so a full period is the identity).
    pub fn shift_y(&self, shift: T) -> Result<Self> {
        self.shift_y_impl(shift, false)
    }

    /// Like [`shift_y`], but the gauge phase follows the unreduced
    /// coordinate `y - shift`. This is the variant flows compose through:
    /// it makes `s -> beta_s` an exact one-parameter group instead of
    /// re-reducing the winding phase at every step.
    pub fn shift_y_winding(&self, shift: T) -> Result<Self> {
        self.shift_y_impl(shift, true)
    }

    fn shift_y_impl(&self, shift: T, winding: bool) -> Result<Self> {
        if !shift.is_finite() {
            return Err(QhmError::NonFinite("y shift".into()));
        }
        let nx = self.grid.nx;
        let ny = self.grid.ny;
        let mut out = self.clone();
        let tau = T::TAU();
        let commensurate = Self::commensurate_steps(shift, self.grid.dy::<T>());
        if let (Some(l), false) = (commensurate, winding) {
            // cyclic index shift of Phi itself; periodicity carries no phase
            for p in self.grid.p_values() {
                for i in 0..nx {
                    for j in 0..ny {
                        let src = (j as i64 - l).rem_euclid(ny as i64) as usize;
                        out.values[self.grid.idx(p, i, j)] = self.get(p, i, src);
                    }
                }
            }
            return Ok(out);
        }
        let psi = self.psi();
        for p in self.grid.p_values() {
            let cp = self.params.c_real() * r::<T>(p as f64);
            for i in 0..nx {
                let line: Vec<Cpx<T>> =
                    (0..ny).map(|j| psi[self.grid.idx(p, i, j)]).collect();
                let shifted = match commensurate {
                    Some(l) => (0..ny)
                        .map(|j| line[(j as i64 - l).rem_euclid(ny as i64) as usize])
                        .collect::<Vec<_>>(),
                    None => dft::shifted(&line, tau * shift),
                };
                let xi = self.grid.x::<T>(i);
                for j in 0..ny {
                    let yraw = self.grid.y::<T>(j) - shift;
                    let yph = if winding { yraw } else { yraw - yraw.floor() };
                    out.values[self.grid.idx(p, i, j)] = cis(cp * xi * yph) * shifted[j];
                }
            }
        }
        Ok(out)
    }

    // --- linear arithmetic ---

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.assert_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.assert_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Cpx<T>) -> Self {
        let mut out = self.clone();
        for a in out.values.iter_mut() {
            *a *= factor;
        }
        out
    }

    pub fn sup_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn slice_sup(&self, p: i64) -> T {
        if !self.grid.contains_p(p) {
            return T::zero();
        }
        let mut m = T::zero();
        for i in 0..self.grid.nx {
            for j in 0..self.grid.ny {
                m = m.max(self.get(p, i, j).norm());
            }
        }
        m
    }

    fn random(
        params: ManifoldParams<T>,
        grid: Grid,
        seed: u64,
        p_decay: T,
        band: BandLimit,
    ) -> Result<Self> {
        if p_decay <= T::zero() {
            return Err(QhmError::InvalidArgument("p_decay must be > 0".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bx = band.x_band as i64;
        let by = band.y_band as i64;
        let ps = band.p_support.min(grid.p_max) as i64;
        let mut psi = vec![Cpx::new(T::zero(), T::zero()); grid.len()];
        for p in -ps..=ps {
            // random trig polynomial per slice, normalized to unit grid sup
            let mut coeffs = Vec::new();
            for m in -bx..=bx {
                for n in -by..=by {
                    let re: f64 = rng.gen_range(-1.0..1.0);
                    let im: f64 = rng.gen_range(-1.0..1.0);
                    coeffs.push((m, n, Cpx::new(r::<T>(re), r::<T>(im))));
                }
            }
            let mut slice = vec![Cpx::new(T::zero(), T::zero()); grid.slice_len()];
            for i in 0..grid.nx {
                for j in 0..grid.ny {
                    let x = grid.x::<T>(i);
                    let y = grid.y::<T>(j);
                    let mut acc = Cpx::new(T::zero(), T::zero());
                    for &(m, n, z) in &coeffs {
                        let phase = r::<T>(m as f64) * x
                            + T::TAU() * r::<T>(n as f64) * y;
                        acc += z * cis(phase);
                    }
                    slice[i * grid.ny + j] = acc;
                }
            }
            let sup = slice.iter().map(|v| v.norm()).fold(T::zero(), T::max);
            let amp = (-p_decay * r::<T>(p.unsigned_abs() as f64)).exp();
            let scale = if sup > T::zero() { amp / sup } else { amp };
            for i in 0..grid.nx {
                for j in 0..grid.ny {
                    psi[grid.idx(p, i, j)] = slice[i * grid.ny + j] * scale;
                }
            }
        }
        Ok(Self::from_psi(params, grid, psi))
    }
}

/// A sampled algebra element: the numerical stand-in for a coefficient
/// function with the twisted covariance condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<T: Real> {
    pub(crate) field: Field<T>,
}

/// A sampled vector of the GNS space `L^2([0, 2*pi] x T x Z)`; obeys the
/// same covariance rule as elements. The norm uses quadrature weights
/// `dx dy / (2*pi)` per sample and counting measure in p.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    pub(crate) field: Field<T>,
}

macro_rules! shared_field_api {
    ($ty:ident) => {
        impl<T: Real> $ty<T> {
            pub fn zero(params: ManifoldParams<T>, grid: Grid) -> Self {
                Self { field: Field::zero(params, grid) }
            }

            pub fn from_values(
                params: ManifoldParams<T>,
                grid: Grid,
                values: Vec<Cpx<T>>,
            ) -> Result<Self> {
                Ok(Self { field: Field::from_values(params, grid, values)? })
            }

            pub fn params(&self) -> &ManifoldParams<T> {
                &self.field.params
            }

            pub fn grid(&self) -> &Grid {
                &self.field.grid
            }

            pub fn values(&self) -> &[Cpx<T>] {
                &self.field.values
            }

            #[inline]
            pub fn get(&self, p: i64, i: usize, j: usize) -> Cpx<T> {
                self.field.get(p, i, j)
            }

            /// Evaluate the covariant extension at an arbitrary point;
            /// `|p| > p_max` returns zero by the truncation convention.
            pub fn covariant_sample(&self, x: T, y: T, p: i64) -> Result<Cpx<T>> {
                self.field.covariant_sample(x, y, p)
            }

            pub fn shift_x(&self, shift: T) -> Result<Self> {
                Ok(Self { field: self.field.shift_x(shift)? })
            }

            pub fn shift_y(&self, shift: T) -> Result<Self> {
                Ok(Self { field: self.field.shift_y(shift)? })
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                Ok(Self { field: self.field.add(&other.field)? })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                Ok(Self { field: self.field.sub(&other.field)? })
            }

            pub fn scale(&self, factor: Cpx<T>) -> Self {
                Self { field: self.field.scale(factor) }
            }

            pub fn scale_real(&self, factor: T) -> Self {
                self.scale(Cpx::new(factor, T::zero()))
            }

            /// Max modulus over all stored samples.
            pub fn sup_abs(&self) -> T {
                self.field.sup_abs()
            }

            pub fn slice_sup(&self, p: i64) -> T {
                self.field.slice_sup(p)
            }
        }
    };
}

shared_field_api!(Element);
shared_field_api!(StateVector);

impl<T: Real> Element<T> {
    /// Keep only the slice `p = n`, zeroing everything else.
    pub fn slice_projection(&self, n: i64) -> Self {
        let mut out = Self::zero(self.field.params, self.field.grid);
        if self.field.grid.contains_p(n) {
            for i in 0..self.field.grid.nx {
                for j in 0..self.field.grid.ny {
                    let k = self.field.grid.idx(n, i, j);
                    out.field.values[k] = self.field.values[k];
                }
            }
        }
        out
    }

    /// Multiply slice `p` by a complex factor.
    pub fn scale_slice(&mut self, p: i64, factor: Cpx<T>) {
        if self.field.grid.contains_p(p) {
            for i in 0..self.field.grid.nx {
                for j in 0..self.field.grid.ny {
                    let k = self.field.grid.idx(p, i, j);
                    self.field.values[k] *= factor;
                }
            }
        }
    }

    /// Largest |p| carrying a sample above the threshold.
    pub fn p_extent(&self, threshold: T) -> usize {
        let mut ext = 0usize;
        for p in self.field.grid.p_values() {
            if self.slice_sup(p) > threshold {
                ext = ext.max(p.unsigned_abs() as usize);
            }
        }
        ext
    }
}

impl<T: Real> StateVector<T> {
    fn weight(&self) -> T {
        T::one() / r::<T>((self.field.grid.nx * self.field.grid.ny) as f64)
    }

    /// GNS inner product `<self, other>` (conjugate-linear in `other`).
    pub fn inner(&self, other: &Self) -> Result<Cpx<T>> {
        self.field.assert_compatible(&other.field)?;
        let mut acc = Cpx::new(T::zero(), T::zero());
        for (a, b) in self.field.values.iter().zip(&other.field.values) {
            acc += a * b.conj();
        }
        Ok(acc * self.weight())
    }

    pub fn norm(&self) -> T {
        let s: T = self
            .field
            .values
            .iter()
            .map(|v| v.norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        (s * self.weight()).sqrt()
    }

    pub(crate) fn shift_y_winding(&self, shift: T) -> Result<Self> {
        Ok(Self { field: self.field.shift_y_winding(shift)? })
    }

    /// The cyclic vector of the trace representation: the indicator of the
    /// fundamental domain at p = 0.
    pub fn trace_cyclic(params: ManifoldParams<T>, grid: Grid) -> Self {
        let mut out = Self::zero(params, grid);
        for i in 0..grid.nx {
            for j in 0..grid.ny {
                out.field.values[grid.idx(0, i, j)] = Cpx::new(T::one(), T::zero());
            }
        }
        out
    }
}

/// Deterministic band-limited random element; the periodic representative
/// is a trig polynomial with at most nx/4 and ny/4 harmonics per slice and
/// slice sups scaled by `e^{-p_decay |p|}`.
pub fn random_element<T: Real>(
    params: ManifoldParams<T>,
    grid: Grid,
    seed: u64,
    p_decay: T,
) -> Result<Element<T>> {
    random_element_banded(params, grid, seed, p_decay, BandLimit::default_for(&grid))
}

/// Random element with caller-chosen band and p-support limits.
pub fn random_element_banded<T: Real>(
    params: ManifoldParams<T>,
    grid: Grid,
    seed: u64,
    p_decay: T,
    band: BandLimit,
) -> Result<Element<T>> {
    Ok(Element { field: Field::random(params, grid, seed, p_decay, band)? })
}

/// Deterministic band-limited random GNS vector.
pub fn random_state<T: Real>(
    params: ManifoldParams<T>,
    grid: Grid,
    seed: u64,
    band: BandLimit,
) -> Result<StateVector<T>> {
    // mild decay keeps all admitted slices populated
    Ok(StateVector {
        field: Field::random(params, grid, seed.wrapping_add(0x5747), r(0.25), band)?,
    })
}

/// Max modulus of the pointwise difference (diagnostic for tests).
pub fn max_abs_diff<T: Real>(a: &Element<T>, b: &Element<T>) -> T {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(T::zero(), T::max)
}
