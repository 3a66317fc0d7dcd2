//! Two rival gradings of disbelief: potential surprise, which shares the
//! rank laws but has a bounded range and no conditionalization rule, and
//! consonant belief functions, whose doubt obeys the same laws but whose
//! consonance is lost under Dempster's rule.

mod shafer;
mod surprise;

pub use shafer::{
    demonstrate_nonclosure, dempster_combine, make_simple_support, Combination, MassFunction,
    NonclosureWitness,
};
pub use surprise::{
    check_surprise_axioms, default_scale, ncf_to_surprise, shackle_conjunction_gap, ConjunctionGap,
    SurpriseFunction, COMPLEMENT_ZERO, EMPTY_MAXIMAL, SURPRISE_EXHAUSTIVE_MAX_WORLDS,
    SURPRISE_TABLE_MAX_WORLDS, UNION_MIN, UNIT_RANGE,
};

use std::sync::Arc;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::space::{Space, Variable};

/// The two-variable space `X, Y ∈ {0, 1}` used by the fixed examples.
pub fn xy_space() -> Arc<Space> {
    Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])])
        .expect("valid space")
}

fn ratio<T: Scalar>(n: u32, d: u32) -> T {
    let f = |k| T::from_u32(k).expect("u32 converts to every scalar");
    f(n) / f(d)
}

/// Non-closure witness on [`xy_space`] from chain masses `1/2, 3/10, 1/5`
/// and support `1/2`.
pub fn pinned_nonclosure<T: Scalar>() -> Result<Option<NonclosureWitness<T>>> {
    demonstrate_nonclosure(
        &xy_space(),
        &[ratio(1, 2), ratio(3, 10), ratio(1, 5)],
        ratio(1, 2),
    )
}
