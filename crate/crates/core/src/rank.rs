//! Extended natural numbers for ranks of propositions.
//!
//! World ranks are plain naturals. Propositions take their rank in
//! ℕ ∪ {TOP}, where TOP is the rank of the empty proposition: it is absorbing
//! under `+` and neutral under `min`.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    Top,
}

impl Rank {
    pub const ZERO: Rank = Rank::Finite(0);

    pub fn is_top(self) -> bool {
        matches!(self, Rank::Top)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(n) => Some(n),
            Rank::Top => None,
        }
    }

    /// `self - rhs`, defined only when both sides are finite and `self >= rhs`.
    pub fn checked_sub(self, rhs: Rank) -> Result<Rank> {
        match (self, rhs) {
            (Rank::Finite(a), Rank::Finite(b)) if a >= b => Ok(Rank::Finite(a - b)),
            (a, b) => Err(Error::RankArithmetic(format!("{a} - {b}"))),
        }
    }

    pub fn is_positive(self) -> bool {
        self != Rank::ZERO
    }
}

impl Add for Rank {
    type Output = Rank;

    fn add(self, rhs: Rank) -> Rank {
        match (self, rhs) {
            (Rank::Finite(a), Rank::Finite(b)) => {
                Rank::Finite(a.checked_add(b).expect("rank overflow"))
            }
            _ => Rank::Top,
        }
    }
}

impl Add<u32> for Rank {
    type Output = Rank;

    fn add(self, rhs: u32) -> Rank {
        self + Rank::Finite(rhs)
    }
}

impl From<u32> for Rank {
    fn from(n: u32) -> Self {
        Rank::Finite(n)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Top => f.write_str("TOP"),
        }
    }
}

/// Minimum over an iterator of ranks; TOP for an empty iterator.
pub fn min_rank<I: IntoIterator<Item = Rank>>(ranks: I) -> Rank {
    ranks.into_iter().min().unwrap_or(Rank::Top)
}

/// Signed firmness of belief: positive when believed true, negative when
/// believed false, zero when neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Firmness(pub i64);

impl Firmness {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn believed_true(self) -> bool {
        self.0 > 0
    }

    pub fn believed_false(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for Firmness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
