//! Small dense complex linear algebra: matrix products, power iteration
//! for spectral norms, and a complex Hermitian eigensolver (Householder
//! tridiagonalization followed by implicit QL with shifts).

use crate::error::{QhmError, Result};
use crate::scalar::{r, Cpx, Real};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T: Real> {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<Cpx<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![Cpx::new(T::zero(), T::zero()); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cpx::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_fn(
        n_rows: usize,
        n_cols: usize,
        mut f: impl FnMut(usize, usize) -> Cpx<T>,
    ) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cpx<T> {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cpx<T>) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows);
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Cpx<T>]) -> Vec<Cpx<T>> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|i| {
                let mut acc = Cpx::new(T::zero(), T::zero());
                for j in 0..self.n_cols {
                    acc += self.get(i, j) * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n_rows, other.n_rows);
        assert_eq!(self.n_cols, other.n_cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn sup_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }
}

fn vec_norm<T: Real>(v: &[Cpx<T>]) -> T {
    v.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}

/// Largest singular value by power iteration on `M* M`.
///
/// Returns the estimate and whether the iteration met the tolerance within
/// the iteration cap; on a stall the best estimate is still returned.
pub fn spectral_norm<T: Real>(m: &CMat<T>, tol: T, max_iter: usize) -> (T, bool) {
    let n = m.n_cols;
    if n == 0 || m.n_rows == 0 {
        return (T::zero(), true);
    }
    // fixed, seed-free start vector
    let mut v: Vec<Cpx<T>> = (0..n)
        .map(|k| Cpx::new(T::one() + r::<T>(0.137 * k as f64), r::<T>(0.211 * k as f64)))
        .collect();
    let nv = vec_norm(&v);
    for z in v.iter_mut() {
        *z = z.unscale(nv);
    }
    let mh = m.adjoint();
    let mut lambda = T::zero();
    for _ in 0..max_iter {
        let w = m.matvec(&v);
        let new_lambda = w.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        let g = mh.matvec(&w);
        let gn = vec_norm(&g);
        if gn == T::zero() {
            return (T::zero(), true);
        }
        for (z, gz) in v.iter_mut().zip(&g) {
            *z = gz.unscale(gn);
        }
        if (new_lambda - lambda).abs() <= tol * new_lambda.max(T::one()) {
            return (new_lambda.sqrt(), true);
        }
        lambda = new_lambda;
    }
    (lambda.sqrt(), false)
}

fn sign_with<T: Real>(magnitude: T, sign_of: T) -> T {
    if sign_of >= T::zero() {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Eigendecomposition of a complex Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvector columns, so `A = V diag(w) V*`.
pub fn hermitian_eig<T: Real>(a: &CMat<T>) -> Result<(Vec<T>, CMat<T>)> {
    assert_eq!(a.n_rows, a.n_cols);
    let n = a.n_rows;
    if n == 0 {
        return Ok((Vec::new(), CMat::zeros(0, 0)));
    }
    let mut work = a.clone();
    let mut q = CMat::identity(n);

    // Householder reduction to Hermitian tridiagonal form
    for k in 0..n.saturating_sub(2) {
        let xnorm_sq: T = (k + 1..n)
            .map(|i| work.get(i, k).norm_sqr())
            .fold(T::zero(), |s, t| s + t);
        let xnorm = xnorm_sq.sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let alpha = work.get(k + 1, k);
        let phase = if alpha.norm() > T::zero() {
            alpha.unscale(alpha.norm())
        } else {
            Cpx::new(T::one(), T::zero())
        };
        let beta = -phase * xnorm;
        let mut v: Vec<Cpx<T>> = (k + 1..n).map(|i| work.get(i, k)).collect();
        v[0] -= beta;
        let vn = vec_norm(&v);
        if vn <= r::<T>(1e-300) {
            // column already in the required form
            continue;
        }
        for z in v.iter_mut() {
            *z = z.unscale(vn);
        }
        // column k collapses to beta * e1
        work.set(k + 1, k, beta);
        work.set(k, k + 1, beta.conj());
        for i in k + 2..n {
            work.set(i, k, Cpx::new(T::zero(), T::zero()));
            work.set(k, i, Cpx::new(T::zero(), T::zero()));
        }
        // trailing block: A <- A - 2 v w* - 2 w v*, w = A v - (v* A v) v
        let m = n - (k + 1);
        let mut u = vec![Cpx::new(T::zero(), T::zero()); m];
        for (ii, urow) in u.iter_mut().enumerate() {
            let gi = k + 1 + ii;
            let mut acc = Cpx::new(T::zero(), T::zero());
            for (jj, vz) in v.iter().enumerate() {
                acc += work.get(gi, k + 1 + jj) * vz;
            }
            *urow = acc;
        }
        let kappa: Cpx<T> = v
            .iter()
            .zip(&u)
            .fold(Cpx::new(T::zero(), T::zero()), |s, (vz, uz)| s + vz.conj() * uz);
        let w: Vec<Cpx<T>> = u.iter().zip(&v).map(|(uz, vz)| uz - kappa * vz).collect();
        let two = r::<T>(2.0);
        for ii in 0..m {
            for jj in 0..m {
                let delta = v[ii] * w[jj].conj() + w[ii] * v[jj].conj();
                let val = work.get(k + 1 + ii, k + 1 + jj) - delta.scale(two);
                work.set(k + 1 + ii, k + 1 + jj, val);
            }
        }
        // accumulate Q <- Q (I - 2 v v*)
        for row in 0..n {
            let mut dot = Cpx::new(T::zero(), T::zero());
            for (jj, vz) in v.iter().enumerate() {
                dot += q.get(row, k + 1 + jj) * vz;
            }
            let dot2 = dot.scale(two);
            for (jj, vz) in v.iter().enumerate() {
                let val = q.get(row, k + 1 + jj) - dot2 * vz.conj();
                q.set(row, k + 1 + jj, val);
            }
        }
    }

    // phase-scale subdiagonal to real, folding phases into Q columns
    let mut d: Vec<T> = (0..n).map(|i| work.get(i, i).re).collect();
    let mut e = vec![T::zero(); n];
    let mut delta = Cpx::new(T::one(), T::zero());
    for k in 0..n - 1 {
        let t = work.get(k + 1, k);
        e[k] = t.norm();
        let next_delta = if t.norm() > T::zero() {
            t * delta / t.norm()
        } else {
            delta
        };
        // scale column k+1 of Q by next_delta
        for row in 0..n {
            let val = q.get(row, k + 1) * next_delta;
            q.set(row, k + 1, val);
        }
        delta = next_delta;
    }

    tql2(&mut d, &mut e, &mut q)?;

    // sort ascending, permuting eigenvector columns
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let sorted_d: Vec<T> = order.iter().map(|&i| d[i]).collect();
    let mut sorted_q = CMat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_q.set(row, new_col, q.get(row, old_col));
        }
    }
    Ok((sorted_d, sorted_q))
}

/// Implicit QL with shifts on a real symmetric tridiagonal, rotations
/// accumulated into the (complex) column basis `z`.
fn tql2<T: Real>(d: &mut [T], e: &mut [T], z: &mut CMat<T>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = r::<T>(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(QhmError::NoConvergence {
                    best: d[l].to_f64().unwrap_or(f64::NAN),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut rr = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + sign_with(rr, g));
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                rr = f.hypot(g);
                e[i + 1] = rr;
                if rr == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / rr;
                c = g / rr;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + two * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
                for k in 0..n {
                    let fk = z.get(k, i + 1);
                    let zi = z.get(k, i);
                    z.set(k, i + 1, zi.scale(s) + fk.scale(c));
                    z.set(k, i, zi.scale(c) - fk.scale(s));
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> CMat<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = CMat::from_fn(n, n, |_, _| {
            Cpx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let mut h = b.adjoint().mul(&b);
        // add a Hermitian, indefinite part
        let c = CMat::from_fn(n, n, |_, _| {
            Cpx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let sym = c.adjoint();
        for i in 0..n {
            for j in 0..n {
                let v = h.get(i, j) + (c.get(i, j) + sym.get(i, j)).scale(0.5) * Cpx::new(1.0, 0.0)
                    - CMat::<f64>::identity(n).get(i, j).scale(2.0);
                h.set(i, j, v);
            }
        }
        h
    }

    #[test]
    fn eig_reconstructs_matrix_and_is_orthonormal() {
        for seed in 0..4u64 {
            let n = 12;
            let h = random_hermitian(n, seed);
            let (w, v) = hermitian_eig(&h).unwrap();
            // residual per eigenpair
            for col in 0..n {
                let vc: Vec<Cpx<f64>> = (0..n).map(|row| v.get(row, col)).collect();
                let hv = h.matvec(&vc);
                let mut res = 0.0f64;
                for row in 0..n {
                    res = res.max((hv[row] - vc[row].scale(w[col])).norm());
                }
                assert!(res < 1e-9 * h.frobenius().max(1.0), "seed {seed} col {col}: {res}");
            }
            let vtv = v.adjoint().mul(&v);
            let id = CMat::identity(n);
            assert!(vtv.sub(&id).sup_abs() < 1e-10);
            // ascending order
            for i in 1..n {
                assert!(w[i] >= w[i - 1] - 1e-12);
            }
        }
    }

    #[test]
    fn eig_matches_analytic_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let mut h: CMat<f64> = CMat::zeros(2, 2);
        h.set(0, 0, Cpx::new(2.0, 0.0));
        h.set(0, 1, Cpx::new(0.0, 1.0));
        h.set(1, 0, Cpx::new(0.0, -1.0));
        h.set(1, 1, Cpx::new(2.0, 0.0));
        let (w, _) = hermitian_eig(&h).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12);
        assert!((w[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eig_handles_diagonal_and_psd() {
        let mut h: CMat<f64> = CMat::zeros(3, 3);
        h.set(0, 0, Cpx::new(3.0, 0.0));
        h.set(1, 1, Cpx::new(-1.0, 0.0));
        h.set(2, 2, Cpx::new(0.5, 0.0));
        let (w, _) = hermitian_eig(&h).unwrap();
        assert_eq!(w.len(), 3);
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[2] - 3.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let b = CMat::from_fn(10, 10, |_, _| {
            Cpx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let psd = b.adjoint().mul(&b);
        let (w, _) = hermitian_eig(&psd).unwrap();
        assert!(w[0] > -1e-10);
    }

    #[test]
    fn power_iteration_matches_eig_top_singular_value() {
        for seed in 10..14u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m: CMat<f64> = CMat::from_fn(9, 9, |_, _| {
                Cpx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let gram = m.adjoint().mul(&m);
            let (w, _) = hermitian_eig(&gram).unwrap();
            let sigma_ref = w.last().unwrap().max(0.0).sqrt();
            let (sigma, ok) = spectral_norm(&m, 1e-12, 500);
            assert!(ok);
            assert!((sigma - sigma_ref).abs() < 1e-8 * sigma_ref.max(1.0));
        }
    }

    #[test]
    fn power_iteration_on_unitary_is_one() {
        let id: CMat<f64> = CMat::identity(7);
        let (sigma, ok) = spectral_norm(&id, 1e-12, 500);
        assert!(ok && (sigma - 1.0).abs() < 1e-12);
    }
}
