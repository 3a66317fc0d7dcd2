use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};
use crate::rank::Rank;
use crate::scalar::Scalar;

/// Polynomial in a formal infinitesimal `z`, with finitely many non-zero
/// coefficients keyed by exponent.
///
/// The zero polynomial has no terms and order TOP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly<T> {
    terms: BTreeMap<u32, T>,
}

impl<T: Scalar> ZPoly<T> {
    pub fn zero() -> Self {
        ZPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// `c · z^e`
    pub fn monomial(c: T, e: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent with a non-zero coefficient.
    pub fn order(&self) -> Rank {
        self.terms
            .keys()
            .next()
            .map_or(Rank::Top, |&e| Rank::Finite(e))
    }

    /// Lowest-order term.
    pub fn leading(&self) -> Option<(u32, &T)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: u32) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// True when every coefficient is positive, so no sum of such
    /// polynomials can cancel a leading term.
    pub fn all_positive(&self) -> bool {
        self.terms.values().all(Scalar::is_positive_scalar)
    }
}

impl<T: Scalar> Add for &ZPoly<T> {
    type Output = ZPoly<T>;

    fn add(self, rhs: &ZPoly<T>) -> ZPoly<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> Add for ZPoly<T> {
    type Output = ZPoly<T>;

    fn add(mut self, rhs: ZPoly<T>) -> ZPoly<T> {
        self += &rhs;
        self
    }
}

impl<T: Scalar> AddAssign<&ZPoly<T>> for ZPoly<T> {
    fn add_assign(&mut self, rhs: &ZPoly<T>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<T: Scalar> Mul for &ZPoly<T> {
    type Output = ZPoly<T>;

    fn mul(self, rhs: &ZPoly<T>) -> ZPoly<T> {
        let mut out = ZPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Mul for ZPoly<T> {
    type Output = ZPoly<T>;

    fn mul(self, rhs: ZPoly<T>) -> ZPoly<T> {
        &self * &rhs
    }
}

impl<T: Scalar> fmt::Display for ZPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let text = c.to_string();
            // Whole numbers need no parentheses before z.
            let coeff = if text.chars().all(|ch| ch.is_ascii_digit()) {
                text
            } else {
                format!("({text})")
            };
            match (e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{coeff}z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{coeff}z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Quotient of two z-polynomials, kept unreduced. Its order is
/// `order(num) − order(den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFraction<T> {
    pub num: ZPoly<T>,
    pub den: ZPoly<T>,
}

impl<T: Scalar> ZFraction<T> {
    pub fn new(num: ZPoly<T>, den: ZPoly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::EmptyProposition);
        }
        Ok(ZFraction { num, den })
    }

    /// Fails when the denominator has the higher order, which never happens
    /// for a ratio of probabilities `P(A∩B) / P(A)`.
    pub fn order(&self) -> Result<Rank> {
        match self.num.order() {
            Rank::Top => Ok(Rank::Top),
            n => n.checked_sub(self.den.order()),
        }
    }

    /// Ratio of the leading coefficients: the standard part of
    /// `value / z^order`.
    pub fn leading_ratio(&self) -> Option<T> {
        let (_, n) = self.num.leading()?;
        let (_, d) = self.den.leading()?;
        Some(n.clone() / d.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn poly(terms: &[(u32, i64)]) -> ZPoly<Q> {
        ZPoly::from_terms(terms.iter().map(|&(e, c)| (e, q(c))))
    }

    #[test]
    fn orders() {
        assert_eq!(ZPoly::<Q>::zero().order(), Rank::Top);
        assert_eq!(poly(&[(2, 1), (3, 1)]).order(), Rank::Finite(2));
        assert_eq!(poly(&[(2, 1), (2, -1)]).order(), Rank::Top);
        assert_eq!((poly(&[(1, 2)]) * poly(&[(3, 1), (4, 5)])).order(), Rank::Finite(4));
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[(0, 2), (1, 1), (3, 1)]).to_string(), "2 + z + z^3");
        assert_eq!(poly(&[(2, 3)]).to_string(), "3z^2");
        assert_eq!(ZPoly::from_terms([(1, Q::new(1.into(), 3.into()))]).to_string(), "(1/3)z");
        assert_eq!(ZPoly::<Q>::zero().to_string(), "0");
    }

    #[test]
    fn fraction_order_and_standard_part() {
        let f = ZFraction::new(poly(&[(3, 2)]), poly(&[(1, 4), (2, 1)])).unwrap();
        assert_eq!(f.order().unwrap(), Rank::Finite(2));
        assert!(ZFraction::new(poly(&[(0, 1)]), poly(&[(1, 1)])).unwrap().order().is_err());
        assert_eq!(f.leading_ratio(), Some(Q::new(1.into(), 2.into())));
        assert!(ZFraction::new(poly(&[(0, 1)]), ZPoly::zero()).is_err());
        assert_eq!(ZFraction::new(ZPoly::zero(), poly(&[(0, 1)])).unwrap().order().unwrap(), Rank::Top);
    }

    #[test]
    fn floats_instantiate_too() {
        let p = ZPoly::from_terms([(1u32, 0.5f64), (0, 2.0)]);
        let r = &p * &p;
        assert_eq!(r.order(), Rank::ZERO);
        assert_eq!(r.coefficient(1), 2.0);
    }

    fn arb_poly() -> impl Strategy<Value = ZPoly<Q>> {
        prop::collection::vec((0u32..6, -5i64..6), 0..5).prop_map(|ts| {
            ZPoly::from_terms(ts.into_iter().map(|(e, c)| (e, q(c))))
        })
    }

    fn arb_positive_poly() -> impl Strategy<Value = ZPoly<Q>> {
        prop::collection::vec((0u32..6, 1i64..6), 0..5).prop_map(|ts| {
            ZPoly::from_terms(ts.into_iter().map(|(e, c)| (e, q(c))))
        })
    }

    proptest! {
        #[test]
        fn distributive(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        }

        #[test]
        fn order_of_product_is_sum_of_orders(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p * &q).order(), p.order() + q.order());
        }

        #[test]
        fn positive_sums_never_cancel(p in arb_positive_poly(), q in arb_positive_poly()) {
            prop_assert_eq!((&p + &q).order(), p.order().min(q.order()));
            prop_assert!((&p + &q).all_positive());
        }
    }
}
