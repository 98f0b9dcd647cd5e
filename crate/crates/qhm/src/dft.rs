//! Naive discrete Fourier helpers for trigonometric interpolation on
//! uniform periodic grids.
//!
//! Everything here works in an abstract angle `theta` on `[0, 2*pi)` with
//! integer frequencies; callers map their coordinate to `theta` (x is
//! already an angle, y maps via `theta = 2*pi*y`). Grids are small (tens of
//! points per axis), so the O(n^2) transforms are deliberate: they keep the
//! code generic over the scalar type and free of planner state.
//!
//! The Nyquist mode of an even-length grid is interpreted as a cosine, the
//! usual symmetric convention; its first derivative vanishes at the nodes.

use crate::scalar::{cis, r, Cpx, Real};

/// Signed frequency of FFT-ordered bin `k` on an `n`-point grid.
#[inline]
pub fn freq(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Forward transform, normalized so coefficients are interpolation weights:
/// `c_k = (1/n) sum_i v_i e^{-i m_k theta_i}`.
pub fn forward<T: Real>(line: &[Cpx<T>]) -> Vec<Cpx<T>> {
    let n = line.len();
    let inv_n = T::one() / r::<T>(n as f64);
    let step = T::TAU() / r::<T>(n as f64);
    (0..n)
        .map(|k| {
            let m = freq(k, n) as f64;
            let mut acc = Cpx::new(T::zero(), T::zero());
            for (i, v) in line.iter().enumerate() {
                let phase = -r::<T>(m) * step * r::<T>(i as f64);
                acc += v * cis(phase);
            }
            acc * inv_n
        })
        .collect()
}

/// Modes with the Nyquist bin split into two half-weight bins at +-n/2,
/// which reproduces the cosine convention at arbitrary angles.
pub fn symmetric_modes<T: Real>(coeffs: &[Cpx<T>]) -> Vec<(i64, Cpx<T>)> {
    let n = coeffs.len();
    let mut out = Vec::with_capacity(n + 1);
    for (k, &c) in coeffs.iter().enumerate() {
        let m = freq(k, n);
        if n % 2 == 0 && k == n / 2 {
            let half = c * r::<T>(0.5);
            out.push((m, half));
            out.push((-m, half));
        } else {
            out.push((m, c));
        }
    }
    out
}

/// Evaluate the trig interpolant of `coeffs` (FFT order) at angle `theta`.
pub fn eval<T: Real>(modes: &[(i64, Cpx<T>)], theta: T) -> Cpx<T> {
    let mut acc = Cpx::new(T::zero(), T::zero());
    for &(m, c) in modes {
        acc += c * cis(r::<T>(m as f64) * theta);
    }
    acc
}

/// Values of the trig interpolant at the shifted nodes `theta_i - delta`.
pub fn shifted<T: Real>(line: &[Cpx<T>], delta: T) -> Vec<Cpx<T>> {
    let n = line.len();
    let modes = symmetric_modes(&forward(line));
    let step = T::TAU() / r::<T>(n as f64);
    (0..n)
        .map(|i| eval(&modes, step * r::<T>(i as f64) - delta))
        .collect()
}

/// Spectral derivative d/dtheta at the nodes. Nyquist derivative is zero.
pub fn derivative<T: Real>(line: &[Cpx<T>]) -> Vec<Cpx<T>> {
    let n = line.len();
    let coeffs = forward(line);
    let step = T::TAU() / r::<T>(n as f64);
    (0..n)
        .map(|i| {
            let mut acc = Cpx::new(T::zero(), T::zero());
            for (k, &c) in coeffs.iter().enumerate() {
                let m = freq(k, n);
                if n % 2 == 0 && k == n / 2 {
                    continue;
                }
                let im = Cpx::new(T::zero(), r::<T>(m as f64));
                acc += c * im * cis(r::<T>(m as f64) * step * r::<T>(i as f64));
            }
            acc
        })
        .collect()
}

/// Dense spectral differentiation matrix d/dtheta on an n-point grid
/// (real antisymmetric; row i, column i').
pub fn derivative_matrix<T: Real>(n: usize) -> Vec<T> {
    let step = T::TAU() / r::<T>(n as f64);
    let inv_n = T::one() / r::<T>(n as f64);
    let mut d = vec![T::zero(); n * n];
    for i in 0..n {
        for ip in 0..n {
            let theta = step * (r::<T>(i as f64) - r::<T>(ip as f64));
            // sum over paired modes +-m of (im) e^{im theta}/n = -2m sin(m theta)/n
            let mut acc = T::zero();
            let top = if n % 2 == 0 { n / 2 - 1 } else { n / 2 };
            for m in 1..=top {
                let mf = r::<T>(m as f64);
                acc -= r::<T>(2.0) * mf * (mf * theta).sin() * inv_n;
            }
            d[i * n + ip] = acc;
        }
    }
    d
}

/// Max |c_m| over modes strictly above the given band (aliasing diagnostic).
pub fn out_of_band_mass<T: Real>(line: &[Cpx<T>], band: usize) -> T {
    let n = line.len();
    forward(line)
        .iter()
        .enumerate()
        .filter(|(k, _)| freq(*k, n).unsigned_abs() as usize > band)
        .map(|(_, c)| c.norm())
        .fold(T::zero(), T::max)
}
