use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the geometry and array math is written against.
///
/// The tolerance hooks scale the numerical guards to the precision of the
/// type. The `f64` values are the reference ones; `f32` gets proportionally
/// looser guards.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Relative slack for triangle/polygon inequalities and interval bounds.
    fn geometry_slack() -> Self;

    /// Relative threshold below which an edge magnitude counts as zero.
    fn inactive_threshold() -> Self;

    /// Relative threshold for a vanishing main-beam response.
    fn degenerate_threshold() -> Self;

    /// Absolute gap under which two angular distances are treated as a tie.
    fn tie_tolerance() -> Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (with
    /// rounding) in the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl Scalar for f64 {
    fn geometry_slack() -> Self {
        1e-9
    }
    fn inactive_threshold() -> Self {
        1e-14
    }
    fn degenerate_threshold() -> Self {
        1e-12
    }
    fn tie_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn geometry_slack() -> Self {
        1e-4
    }
    fn inactive_threshold() -> Self {
        1e-6
    }
    fn degenerate_threshold() -> Self {
        1e-6
    }
    fn tie_tolerance() -> Self {
        1e-5
    }
}

/// Clamped arc cosine; boundary triangles produce arguments a few ulps
/// outside [-1, 1].
#[inline]
pub fn acos_clamped<T: Scalar>(x: T) -> T {
    x.max(-T::one()).min(T::one()).acos()
}

/// Maps an angle into [0, 2π).
#[inline]
pub fn wrap_two_pi<T: Scalar>(angle: T) -> T {
    let tau = T::TAU();
    let r = angle % tau;
    let r = if r < T::zero() { r + tau } else { r };
    // `r + tau` can round up to exactly tau for tiny negative inputs.
    if r >= tau {
        T::zero()
    } else {
        r
    }
}
