//! The represented algebra: action on the GNS space, star product,
//! involution, identity, and the operator norm of the truncated
//! representation.
//!
//! An element acts on a state by
//! `(Phi xi)(x, y, p) = sum_q Phi(x - hbar (q - 2p) mu, y - hbar (q - 2p) nu, q) xi(x, y, p - q)`
//! with q and p - q restricted to the truncation band. The action never
//! mixes distinct (x, y) grid points, so the operator is block diagonal
//! over the grid with one `(2 p_max + 1)`-dimensional fiber matrix per
//! point; products, adjoints, and norms all reduce to fiber arithmetic.

use crate::element::{Element, Field, StateVector};
use crate::error::{QhmError, Result};
use crate::grid::{Grid, ManifoldParams};
use crate::linalg::{spectral_norm, CMat};
use crate::scalar::{cis, r, Cpx, Real};
use rayon::prelude::*;

/// Power-iteration stopping tolerance for fiber spectral norms.
pub const OP_NORM_TOL: f64 = 1e-10;
/// Power-iteration cap for fiber spectral norms.
pub const OP_NORM_MAX_ITER: usize = 500;

/// The unit of the algebra: 1 on the p = 0 slice, zero elsewhere.
pub fn identity_element<T: Real>(params: ManifoldParams<T>, grid: Grid) -> Element<T> {
    let mut e = Element::zero(params, grid);
    for i in 0..grid.nx {
        for j in 0..grid.ny {
            e.field.values[grid.idx(0, i, j)] = Cpx::new(T::one(), T::zero());
        }
    }
    e
}

/// Cache of translated slices `Phi(x - m hbar mu, y - m hbar nu, q)` for
/// every stored slice q and integer multiple m. Both the state action and
/// the fiber matrices read elements only at such translates.
struct TranslateCache<T: Real> {
    grid: Grid,
    max_m: i64,
    /// slices[(q + p_max) * (2 max_m + 1) + (m + max_m)]
    slices: Vec<Vec<Cpx<T>>>,
}

impl<T: Real> TranslateCache<T> {
    fn build(field: &Field<T>, max_m: i64) -> Self {
        let grid = field.grid;
        let params = field.params;
        let psi = field.psi();
        let nx = grid.nx;
        let ny = grid.ny;
        let n_m = (2 * max_m + 1) as usize;
        let mut slices = vec![Vec::new(); grid.n_slices() * n_m];
        let hbar_mu = params.hbar * params.mu;
        let hbar_nu = params.hbar * params.nu;
        for q in grid.p_values() {
            let cp = params.c_real() * r::<T>(q as f64);
            let psi_slice: Vec<Cpx<T>> = (0..nx)
                .flat_map(|i| (0..ny).map(move |j| (i, j)))
                .map(|(i, j)| psi[grid.idx(q, i, j)])
                .collect();
            for m in -max_m..=max_m {
                let rx = r::<T>(m as f64) * hbar_mu;
                let ry = r::<T>(m as f64) * hbar_nu;
                let shifted = translate_slice(&grid, &psi_slice, rx, ry);
                let mut out = vec![Cpx::new(T::zero(), T::zero()); grid.slice_len()];
                for i in 0..nx {
                    let x = grid.x::<T>(i) - rx;
                    for j in 0..ny {
                        let yraw = grid.y::<T>(j) - ry;
                        let yfrac = yraw - yraw.floor();
                        out[i * ny + j] =
                            cis(cp * x * yfrac) * shifted[i * ny + j];
                    }
                }
                let qi = (q + grid.p_max as i64) as usize;
                slices[qi * n_m + (m + max_m) as usize] = out;
            }
        }
        Self { grid, max_m, slices }
    }

    #[inline]
    fn get(&self, q: i64, m: i64) -> &[Cpx<T>] {
        debug_assert!(m.abs() <= self.max_m);
        let qi = (q + self.grid.p_max as i64) as usize;
        let n_m = (2 * self.max_m + 1) as usize;
        &self.slices[qi * n_m + (m + self.max_m) as usize]
    }
}

/// 2D shift of a doubly periodic slice: values of the interpolant at
/// `(x_i - rx, y_j - ry)`. Grid-commensurate shifts reduce to index
/// gathers; anything else goes through the spectral path.
fn translate_slice<T: Real>(grid: &Grid, slice: &[Cpx<T>], rx: T, ry: T) -> Vec<Cpx<T>> {
    let nx = grid.nx;
    let ny = grid.ny;
    let commensurate = |shift: T, step: T| -> Option<i64> {
        let ratio = shift / step;
        let rounded = ratio.round();
        ((ratio - rounded).abs() < r::<T>(1e-12))
            .then(|| rounded.to_i64())
            .flatten()
    };
    // x pass
    let mut mid = vec![Cpx::new(T::zero(), T::zero()); slice.len()];
    match commensurate(rx, grid.dx::<T>()) {
        Some(l) => {
            for i in 0..nx {
                let src = (i as i64 - l).rem_euclid(nx as i64) as usize;
                mid[i * ny..(i + 1) * ny].copy_from_slice(&slice[src * ny..(src + 1) * ny]);
            }
        }
        None => {
            let mut line = vec![Cpx::new(T::zero(), T::zero()); nx];
            for j in 0..ny {
                for i in 0..nx {
                    line[i] = slice[i * ny + j];
                }
                let shifted = crate::dft::shifted(&line, rx);
                for i in 0..nx {
                    mid[i * ny + j] = shifted[i];
                }
            }
        }
    }
    // y pass
    match commensurate(ry, grid.dy::<T>()) {
        Some(l) => {
            let mut out = vec![Cpx::new(T::zero(), T::zero()); slice.len()];
            for i in 0..nx {
                for j in 0..ny {
                    let src = (j as i64 - l).rem_euclid(ny as i64) as usize;
                    out[i * ny + j] = mid[i * ny + src];
                }
            }
            out
        }
        None => {
            let mut out = vec![Cpx::new(T::zero(), T::zero()); slice.len()];
            let theta = T::TAU() * ry;
            for i in 0..nx {
                let line = &mid[i * ny..(i + 1) * ny];
                let shifted = crate::dft::shifted(line, theta);
                out[i * ny..(i + 1) * ny].copy_from_slice(&shifted);
            }
            out
        }
    }
}

/// Block-diagonal realization of an element on the truncated GNS space:
/// one fiber matrix per grid point, rows and columns indexed by p.
pub struct BlockOperator<T: Real> {
    pub params: ManifoldParams<T>,
    pub grid: Grid,
    /// fiber at grid point (i, j) lives at index `i * ny + j`
    pub fibers: Vec<CMat<T>>,
}

impl<T: Real> BlockOperator<T> {
    /// Assemble the fibers of an element:
    /// `M[p, p'](x, y) = Phi(x + hbar (p + p') mu, y + hbar (p + p') nu, p - p')`.
    pub fn assemble(e: &Element<T>) -> Self {
        let grid = e.field.grid;
        let pm = grid.p_max as i64;
        let cache = TranslateCache::build(&e.field, 2 * pm);
        let ns = grid.n_slices();
        let fibers = (0..grid.slice_len())
            .map(|f| {
                CMat::from_fn(ns, ns, |row, col| {
                    let p = row as i64 - pm;
                    let pp = col as i64 - pm;
                    if (p - pp).abs() > pm {
                        Cpx::new(T::zero(), T::zero())
                    } else {
                        cache.get(p - pp, -(p + pp))[f]
                    }
                })
            })
            .collect();
        Self { params: e.field.params, grid, fibers }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let fibers = self
            .fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| a.mul(b))
            .collect();
        Self { params: self.params, grid: self.grid, fibers }
    }

    pub fn adjoint(&self) -> Self {
        let fibers = self.fibers.iter().map(|m| m.adjoint()).collect();
        Self { params: self.params, grid: self.grid, fibers }
    }

    /// Max modulus entry difference across all fibers.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| a.sub(b).sup_abs())
            .fold(T::zero(), T::max)
    }

    pub fn sup_abs(&self) -> T {
        self.fibers
            .iter()
            .map(|m| m.sup_abs())
            .fold(T::zero(), T::max)
    }

    /// Apply fiber-wise to a state (independent route to [`apply`]).
    pub fn apply_state(&self, xi: &StateVector<T>) -> Result<StateVector<T>> {
        if xi.grid() != &self.grid || xi.params() != &self.params {
            return Err(QhmError::Mismatch("state does not match operator".into()));
        }
        let grid = self.grid;
        let pm = grid.p_max as i64;
        let mut out = StateVector::zero(self.params, grid);
        for i in 0..grid.nx {
            for j in 0..grid.ny {
                let fiber = &self.fibers[i * grid.ny + j];
                let v: Vec<Cpx<T>> =
                    grid.p_values().map(|p| xi.get(p, i, j)).collect();
                let w = fiber.matvec(&v);
                for (row, val) in w.into_iter().enumerate() {
                    out.field.values[grid.idx(row as i64 - pm, i, j)] = val;
                }
            }
        }
        Ok(out)
    }

    /// Smallest eigenvalue over all (Hermitianized) fibers; meaningful for
    /// operators that are Hermitian, e.g. `a* a` or its heat evolution.
    pub fn min_eigenvalue(&self) -> Result<T> {
        let mut min_eig = T::infinity();
        for m in &self.fibers {
            let n = m.n_rows;
            let herm = CMat::from_fn(n, n, |i, j| {
                (m.get(i, j) + m.get(j, i).conj()).scale(r::<T>(0.5))
            });
            let (w, _) = crate::linalg::hermitian_eig(&herm)?;
            if let Some(&lo) = w.first() {
                min_eig = min_eig.min(lo);
            }
        }
        Ok(min_eig)
    }
}

/// Act with an element on a GNS vector.
pub fn apply<T: Real>(e: &Element<T>, xi: &StateVector<T>) -> Result<StateVector<T>> {
    e.field.assert_compatible(&xi.field)?;
    let grid = e.field.grid;
    let pm = grid.p_max as i64;
    let cache = TranslateCache::build(&e.field, 3 * pm);
    let mut out = StateVector::zero(e.field.params, grid);
    for p in grid.p_values() {
        for q in grid.p_values() {
            let pq = p - q;
            if pq.abs() > pm {
                continue;
            }
            let factor = cache.get(q, q - 2 * p);
            for i in 0..grid.nx {
                for j in 0..grid.ny {
                    let k = grid.idx(p, i, j);
                    out.field.values[k] += factor[i * grid.ny + j] * xi.get(pq, i, j);
                }
            }
        }
    }
    Ok(out)
}

/// Coefficient-level product realizing operator composition:
/// `(a ? b)(u, v, n) = sum_q a(u + hbar (n-q) mu, v + hbar (n-q) nu, q) b(u - hbar q mu, v - hbar q nu, n - q)`,
/// truncated to the stored p band.
pub fn star<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    Ok(star_extended(a, b)?.0)
}

/// Star product together with the clipped mass: the largest slice sup that
/// the band truncation discarded (p content beyond p_max).
pub fn star_extended<T: Real>(
    a: &Element<T>,
    b: &Element<T>,
) -> Result<(Element<T>, T)> {
    a.field.assert_compatible(&b.field)?;
    let grid = a.field.grid;
    let pm = grid.p_max as i64;
    let ca = TranslateCache::build(&a.field, 3 * pm);
    let cb = TranslateCache::build(&b.field, 3 * pm);
    let mut out = Element::zero(a.field.params, grid);
    let mut clipped = T::zero();
    for n in -2 * pm..=2 * pm {
        let mut slice = vec![Cpx::new(T::zero(), T::zero()); grid.slice_len()];
        let mut any = false;
        for q in grid.p_values() {
            if (n - q).abs() > pm {
                continue;
            }
            any = true;
            let fa = ca.get(q, -(n - q));
            let fb = cb.get(n - q, q);
            for (s, (za, zb)) in slice.iter_mut().zip(fa.iter().zip(fb)) {
                *s += za * zb;
            }
        }
        if !any {
            continue;
        }
        if n.abs() <= pm {
            for i in 0..grid.nx {
                for j in 0..grid.ny {
                    out.field.values[grid.idx(n, i, j)] = slice[i * grid.ny + j];
                }
            }
        } else {
            let sup = slice.iter().map(|z| z.norm()).fold(T::zero(), T::max);
            clipped = clipped.max(sup);
        }
    }
    Ok((out, clipped))
}

/// Involution: the element whose block operator is the fiber-wise conjugate
/// transpose. At coefficient level `(a*)(x, y, p) = conj(a(x, y, -p))`.
pub fn adjoint<T: Real>(a: &Element<T>) -> Element<T> {
    let grid = a.field.grid;
    let mut out = Element::zero(a.field.params, grid);
    for p in grid.p_values() {
        for i in 0..grid.nx {
            for j in 0..grid.ny {
                out.field.values[grid.idx(p, i, j)] = a.get(-p, i, j).conj();
            }
        }
    }
    out
}

/// Operator-norm report with the attaining fiber and convergence flag.
#[derive(Debug, Clone)]
pub struct OpNormReport<T> {
    pub value: T,
    pub converged: bool,
    pub argmax_fiber: (usize, usize),
}

/// Norm of the truncated GNS representation: the max over grid points of
/// the fiber spectral norm (power iteration on `M* M`).
pub fn op_norm<T: Real>(e: &Element<T>) -> T {
    op_norm_report(e).value
}

pub fn op_norm_report<T: Real>(e: &Element<T>) -> OpNormReport<T> {
    let block = BlockOperator::assemble(e);
    let ny = e.field.grid.ny;
    let per_fiber: Vec<(T, bool)> = block
        .fibers
        .par_iter()
        .map(|m| spectral_norm(m, r::<T>(OP_NORM_TOL), OP_NORM_MAX_ITER))
        .collect();
    let mut best = (T::zero(), true, 0usize);
    for (f, &(v, ok)) in per_fiber.iter().enumerate() {
        if v > best.0 {
            best.0 = v;
        }
        if !ok {
            best.1 = false;
        }
        if v >= best.0 {
            best.2 = f;
        }
    }
    OpNormReport {
        value: best.0,
        converged: best.1,
        argmax_fiber: (best.2 / ny, best.2 % ny),
    }
}

/// Distance between elements in the represented norm.
pub fn op_norm_diff<T: Real>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    Ok(op_norm(&a.sub(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{random_element_banded, random_state, BandLimit};

    fn desk() -> (ManifoldParams<f64>, Grid) {
        (ManifoldParams::desk(), Grid::desk())
    }

    /// hbar = 0 oracle: slice-wise convolution of pointwise products.
    fn star_conv_oracle(a: &Element<f64>, b: &Element<f64>) -> Element<f64> {
        let grid = *a.grid();
        let pm = grid.p_max as i64;
        let mut out = Element::zero(*a.params(), grid);
        for n in grid.p_values() {
            for q in grid.p_values() {
                if (n - q).abs() > pm {
                    continue;
                }
                for i in 0..grid.nx {
                    for j in 0..grid.ny {
                        let k = grid.idx(n, i, j);
                        out.field.values[k] += a.get(q, i, j) * b.get(n - q, i, j);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn identity_acts_as_identity_on_states() {
        let (p, g) = desk();
        let id = identity_element(p, g);
        for seed in 0..10u64 {
            let xi = random_state(p, g, seed, BandLimit::default_for(&g)).unwrap();
            let out = apply(&id, &xi).unwrap();
            let diff = out.sub(&xi).unwrap().norm();
            assert!(diff < 1e-12 * xi.norm().max(1.0), "seed {seed}");
        }
    }

    #[test]
    fn identity_is_star_unit_and_self_adjoint() {
        let (p, g) = desk();
        let id = identity_element(p, g);
        let e = random_element_banded(p, g, 3, 0.8, BandLimit::default_for(&g)).unwrap();
        let left = star(&id, &e).unwrap();
        let right = star(&e, &id).unwrap();
        assert!(crate::element::max_abs_diff(&left, &e) < 1e-12);
        assert!(crate::element::max_abs_diff(&right, &e) < 1e-12);
        assert!(crate::element::max_abs_diff(&adjoint(&id), &id) < 1e-15);
    }

    #[test]
    fn apply_matches_block_operator_route() {
        let (p, g) = desk();
        for seed in 0..5u64 {
            let e = random_element_banded(p, g, seed, 0.6, BandLimit::default_for(&g))
                .unwrap();
            let xi = random_state(p, g, seed + 100, BandLimit::default_for(&g)).unwrap();
            let direct = apply(&e, &xi).unwrap();
            let via_block = BlockOperator::assemble(&e).apply_state(&xi).unwrap();
            let diff = direct.sub(&via_block).unwrap().norm();
            assert!(diff < 1e-10 * direct.norm().max(1.0));
        }
    }

    #[test]
    fn hbar_zero_single_slice_action_is_shiftless() {
        let (_, g) = desk();
        let p = ManifoldParams::new(1, 0.0, 0.3, 0.7).unwrap();
        let e = random_element_banded(p, g, 5, 0.5, BandLimit::default_for(&g))
            .unwrap()
            .slice_projection(2);
        let xi = random_state(p, g, 6, BandLimit::default_for(&g)).unwrap();
        let out = apply(&e, &xi).unwrap();
        for pp in g.p_values() {
            for i in [0usize, 7] {
                for j in [3usize, 12] {
                    let expect = if (pp - 2).abs() <= g.p_max as i64 {
                        e.get(2, i, j) * xi.get(pp - 2, i, j)
                    } else {
                        Cpx::new(0.0, 0.0)
                    };
                    assert!((out.get(pp, i, j) - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn star_matches_composed_block_operators_on_interior_support() {
        let (p, g) = desk();
        for seed in 0..5u64 {
            let band = BandLimit::default_for(&g).with_p_support(g.p_max / 2);
            let a = random_element_banded(p, g, seed, 0.4, band).unwrap();
            let b = random_element_banded(p, g, seed + 50, 0.4, band).unwrap();
            let prod = star(&a, &b).unwrap();
            let lhs = BlockOperator::assemble(&prod);
            let rhs = BlockOperator::assemble(&a).compose(&BlockOperator::assemble(&b));
            let scale = rhs.sup_abs().max(1.0);
            assert!(lhs.max_abs_diff(&rhs) / scale < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn hbar_zero_star_is_slice_convolution() {
        let g = Grid::desk();
        let p = ManifoldParams::new(2, 0.0, 0.77, -0.21).unwrap();
        let band = BandLimit::default_for(&g).with_p_support(2);
        let a = random_element_banded(p, g, 8, 0.5, band).unwrap();
        let b = random_element_banded(p, g, 9, 0.5, band).unwrap();
        let fast = star(&a, &b).unwrap();
        let oracle = star_conv_oracle(&a, &b);
        assert!(crate::element::max_abs_diff(&fast, &oracle) < 1e-11);
    }

    #[test]
    fn adjoint_formula_matches_fiber_conjugate_transpose() {
        let (p, g) = desk();
        for seed in 0..20u64 {
            let e = random_element_banded(p, g, seed, 0.7, BandLimit::default_for(&g))
                .unwrap();
            let lhs = BlockOperator::assemble(&adjoint(&e));
            let rhs = BlockOperator::assemble(&e).adjoint();
            let scale = rhs.sup_abs().max(1.0);
            assert!(lhs.max_abs_diff(&rhs) / scale < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn adjoint_is_an_involution() {
        let (p, g) = desk();
        let e = random_element_banded(p, g, 4, 0.9, BandLimit::default_for(&g)).unwrap();
        let back = adjoint(&adjoint(&e));
        assert!(crate::element::max_abs_diff(&back, &e) < 1e-12 * e.sup_abs().max(1.0));
    }

    #[test]
    fn single_slice_norm_is_sup_modulus() {
        let (p, g) = desk();
        for n in [-3i64, 0, 2, 4] {
            let e = random_element_banded(p, g, 40 + n as u64 as u64, 0.2, BandLimit::default_for(&g))
                .unwrap()
                .slice_projection(n);
            let sup = e.slice_sup(n);
            let norm = op_norm(&e);
            assert!((norm - sup).abs() < 1e-8 * sup.max(1.0), "slice {n}");
        }
    }

    #[test]
    fn op_norm_identity_and_homogeneity() {
        let (p, g) = desk();
        let id = identity_element(p, g);
        assert!((op_norm(&id) - 1.0).abs() < 1e-10);
        let e = random_element_banded(p, g, 12, 0.6, BandLimit::default_for(&g)).unwrap();
        let lam = Cpx::new(-2.2, 1.4);
        let lhs = op_norm(&e.scale(lam));
        let rhs = lam.norm() * op_norm(&e);
        assert!((lhs - rhs).abs() < 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn cstar_identity_on_interior_support() {
        let (p, g) = desk();
        let band = BandLimit::default_for(&g).with_p_support(g.p_max / 2);
        for seed in 0..5u64 {
            let a = random_element_banded(p, g, 70 + seed, 0.5, band).unwrap();
            let prod = star(&adjoint(&a), &a).unwrap();
            let lhs = op_norm(&prod);
            let rhs = op_norm(&a).powi(2);
            assert!((lhs - rhs).abs() < 1e-6 * rhs.max(1.0), "seed {seed}");
        }
    }

    #[test]
    fn star_is_associative_on_deep_interior_support() {
        let (p, g) = desk();
        let band = BandLimit::default_for(&g).with_p_support(g.p_max / 3);
        let a = random_element_banded(p, g, 31, 0.4, band).unwrap();
        let b = random_element_banded(p, g, 32, 0.4, band).unwrap();
        let c = random_element_banded(p, g, 33, 0.4, band).unwrap();
        let left = star(&star(&a, &b).unwrap(), &c).unwrap();
        let right = star(&a, &star(&b, &c).unwrap()).unwrap();
        let scale = left.sup_abs().max(1.0);
        assert!(crate::element::max_abs_diff(&left, &right) / scale < 1e-8);
    }

    #[test]
    fn apply_is_bounded_by_op_norm() {
        let (p, g) = desk();
        for seed in 0..50u64 {
            let e = random_element_banded(p, g, 200 + seed, 0.8, BandLimit::default_for(&g))
                .unwrap();
            let xi = random_state(p, g, 300 + seed, BandLimit::default_for(&g)).unwrap();
            let lhs = apply(&e, &xi).unwrap().norm();
            let rhs = op_norm(&e) * xi.norm();
            assert!(lhs <= rhs * (1.0 + 1e-9), "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn apply_is_bilinear() {
        let (p, g) = desk();
        let e1 = random_element_banded(p, g, 1, 0.7, BandLimit::default_for(&g)).unwrap();
        let e2 = random_element_banded(p, g, 2, 0.7, BandLimit::default_for(&g)).unwrap();
        let xi1 = random_state(p, g, 3, BandLimit::default_for(&g)).unwrap();
        let xi2 = random_state(p, g, 4, BandLimit::default_for(&g)).unwrap();
        let lam = Cpx::new(0.3, -1.1);

        let lhs = apply(&e1.scale(lam).add(&e2).unwrap(), &xi1).unwrap();
        let rhs = apply(&e1, &xi1).unwrap().scale(lam).add(&apply(&e2, &xi1).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().norm() < 1e-11 * lhs.norm().max(1.0));

        let lhs2 = apply(&e1, &xi1.scale(lam).add(&xi2).unwrap()).unwrap();
        let rhs2 = apply(&e1, &xi1).unwrap().scale(lam).add(&apply(&e1, &xi2).unwrap()).unwrap();
        assert!(lhs2.sub(&rhs2).unwrap().norm() < 1e-11 * lhs2.norm().max(1.0));
    }

    #[test]
    fn star_reports_clipped_mass_only_when_band_overflows() {
        let (p, g) = desk();
        let interior = BandLimit::default_for(&g).with_p_support(g.p_max / 2);
        let a = random_element_banded(p, g, 61, 0.3, interior).unwrap();
        let b = random_element_banded(p, g, 62, 0.3, interior).unwrap();
        let (_, clipped) = star_extended(&a, &b).unwrap();
        assert_eq!(clipped, 0.0);

        let full = BandLimit::default_for(&g);
        let a = random_element_banded(p, g, 63, 0.3, full).unwrap();
        let b = random_element_banded(p, g, 64, 0.3, full).unwrap();
        let (_, clipped) = star_extended(&a, &b).unwrap();
        assert!(clipped > 0.0);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let (p, g) = desk();
        let g2 = Grid::new(8, 8, 2).unwrap();
        let a = random_element_banded(p, g, 1, 0.5, BandLimit::default_for(&g)).unwrap();
        let b = random_element_banded(p, g2, 1, 0.5, BandLimit::default_for(&g2)).unwrap();
        assert!(star(&a, &b).is_err());
    }
}
