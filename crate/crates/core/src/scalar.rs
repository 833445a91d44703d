//! Scalar abstraction shared by the entropy and inequality code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the measures and bounds are generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count into the scalar type.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Tolerance used for normalization checks: `1e-12`, widened for narrow types.
    fn normalization_tol(size: usize) -> Self {
        let floor = Self::lit(1e-12);
        let scaled = Self::epsilon() * Self::count(size.max(1)) * Self::lit(16.0);
        floor.max(scaled)
    }

    /// Tolerance for checking inequalities: `1e-9`, widened for narrow types.
    fn bound_tol() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(1024.0))
    }

    /// Tolerance for exact closed-form identities: `1e-12`, widened for narrow types.
    fn exact_tol() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `ln(Σ exp(xs))`, stable for large magnitudes. Returns `-inf` for empty input.
pub fn log_sum_exp<F: Scalar>(xs: &[F]) -> F {
    let max = xs.iter().copied().fold(F::neg_infinity(), F::max);
    if !max.is_finite() {
        return max;
    }
    let sum: F = xs.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// `ln(exp(a) + exp(b))`.
pub fn log_add_exp<F: Scalar>(a: F, b: F) -> F {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == F::neg_infinity() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}
