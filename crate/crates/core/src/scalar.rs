//! Coefficient types for the numeric layers (z-polynomials, surprise grades,
//! mass functions).
//!
//! Ranks themselves are always natural numbers; only the quantities that the
//! rival formalisms and the probability bridge attach to propositions are
//! generic. Exact rationals are the intended instantiation, `f64` works for
//! the order bookkeeping because all weights stay positive.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num};

/// Field-like scalar: exact rationals or floats.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug + Display {
    fn is_positive_scalar(&self) -> bool {
        *self > Self::zero()
    }

    /// `n / (n + 1)`, the default surprise scale.
    fn bounded_ratio(n: u32) -> Self {
        let n = Self::from_u32(n).expect("u32 converts to every scalar");
        n.clone() / (n + Self::one())
    }
}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + FromPrimitive + Debug + Display {}
