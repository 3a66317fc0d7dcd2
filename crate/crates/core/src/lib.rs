//! Ranking functions over finite possibility spaces.
//!
//! A [`Ncf`] assigns every world a natural-number rank of disbelief with
//! minimum 0. Propositions take the minimum rank of their worlds, beliefs are
//! the propositions whose complement has positive rank, and evidence moves
//! ranks by [`conditionalize`] or its Jeffrey-style generalization.
//! [`independence`] decides rank independence of fields, [`bridge`] relates
//! ranks to orders of infinitesimal probabilities, and [`rivals`] implements
//! potential surprise and consonant belief functions for comparison.
//!
//! ```
//! use rankcalc::{eval_formula, Ncf, Rank, Space};
//!
//! let space = Space::binary(2).unwrap();
//! let kappa = Ncf::from_world_ranks(&space, vec![0, 2, 1, 3]).unwrap();
//! let a = eval_formula(&space, "X2=1").unwrap();
//! assert_eq!(kappa.rank(&a).unwrap(), Rank::Finite(2));
//! assert!(kappa.believes(&a.complement()).unwrap());
//! ```

pub mod bridge;
pub mod cli;
pub mod error;
pub mod independence;
pub mod ncf;
pub mod random;
pub mod rank;
pub mod report;
pub mod revision;
pub mod rivals;
pub mod scalar;
pub mod space;
pub mod suites;

pub use error::{Error, Result};
pub use ncf::Ncf;
pub use rank::{Firmness, Rank};
pub use revision::{conditionalize, jeffrey_conditionalize, revision_sequence, EvidenceNcf, EvidenceWeight, RevisionStep};
pub use scalar::Scalar;
pub use space::{eval_formula, parse_formula, PartitionField, Proposition, Space, Variable, WorldSet};

/// Exact rationals, the intended scalar for every numeric layer.
pub type Rational = num_rational::BigRational;
pub type ZPolyQ = bridge::ZPoly<Rational>;
pub type ZFractionQ = bridge::ZFraction<Rational>;
pub type OrderMeasureQ = bridge::OrderMeasure<Rational>;
pub type SurpriseFunctionQ = rivals::SurpriseFunction<Rational>;
pub type MassFunctionQ = rivals::MassFunction<Rational>;
