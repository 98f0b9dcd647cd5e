//! Scalar abstraction: the engine is generic over the real floating type.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Real scalar type the whole engine is generic over (f32 or f64).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the generic scalar.
pub type Cpx<T> = Complex<T>;

/// Convert an f64 constant into the generic scalar.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 converts to scalar")
}

/// e^{i theta} for a real phase.
#[inline]
pub fn cis<T: Real>(theta: T) -> Cpx<T> {
    Cpx::new(theta.cos(), theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cis_is_unimodular() {
        let z = cis(0.7f64);
        assert!((z.norm() - 1.0).abs() < 1e-15);
        let w: Cpx<f32> = cis(0.7f32);
        assert!((w.norm() - 1.0).abs() < 1e-6);
    }
}
