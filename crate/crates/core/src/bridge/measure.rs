use std::sync::Arc;

use super::zpoly::{ZFraction, ZPoly};
use crate::error::{Error, Result};
use crate::ncf::Ncf;
use crate::rank::Rank;
use crate::scalar::Scalar;
use crate::space::{PartitionField, Proposition, Space};

/// Unnormalized measure on worlds with values in `ZPoly<T>`. Probabilities
/// are ratios against the total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderMeasure<T> {
    space: Arc<Space>,
    weights: Vec<ZPoly<T>>,
    total: ZPoly<T>,
}

impl<T: Scalar> OrderMeasure<T> {
    /// Every weight needs a positive leading coefficient and the total must
    /// have order 0.
    pub fn new(space: &Arc<Space>, weights: Vec<ZPoly<T>>) -> Result<Self> {
        if weights.len() != space.world_count() {
            return Err(Error::RankCount {
                expected: space.world_count(),
                actual: weights.len(),
            });
        }
        for (w, p) in weights.iter().enumerate() {
            match p.leading() {
                Some((_, c)) if c.is_positive_scalar() => {}
                _ => {
                    return Err(Error::InvalidMeasure(format!(
                        "weight of world {w} has no positive leading coefficient"
                    )))
                }
            }
        }
        let total = weights.iter().fold(ZPoly::zero(), |acc, p| &acc + p);
        if total.order() != Rank::ZERO {
            return Err(Error::InvalidMeasure(format!(
                "total weight has order {}, expected 0",
                total.order()
            )));
        }
        Ok(OrderMeasure {
            space: space.clone(),
            weights,
            total,
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn weights(&self) -> &[ZPoly<T>] {
        &self.weights
    }

    pub fn world_weight(&self, world: usize) -> &ZPoly<T> {
        &self.weights[world]
    }

    pub fn total(&self) -> &ZPoly<T> {
        &self.total
    }

    fn check_space(&self, a: &Proposition) -> Result<()> {
        if Space::same(&self.space, a.space()) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Sum of the weights of A's worlds.
    pub fn weight(&self, a: &Proposition) -> Result<ZPoly<T>> {
        self.check_space(a)?;
        let mut sum = ZPoly::zero();
        for w in a.worlds() {
            sum += &self.weights[w];
        }
        Ok(sum)
    }

    /// `P(A)` as a quotient of z-polynomials.
    pub fn probability(&self, a: &Proposition) -> Result<ZFraction<T>> {
        ZFraction::new(self.weight(a)?, self.total.clone())
    }

    /// `P(B|A)`; fails when A is empty.
    pub fn conditional(&self, b: &Proposition, a: &Proposition) -> Result<ZFraction<T>> {
        a.same_space(b)?;
        let den = self.weight(a)?;
        if den.is_zero() {
            return Err(Error::EmptyProposition);
        }
        ZFraction::new(self.weight(&(a & b))?, den)
    }

    /// The n with `P(A)` of the same order as `z^n`; TOP for ∅.
    pub fn measure_order(&self, a: &Proposition) -> Result<Rank> {
        self.probability(a)?.order()
    }

    /// The n with `P(B|A)` of the same order as `z^n`.
    pub fn cond_measure_order(&self, b: &Proposition, a: &Proposition) -> Result<Rank> {
        self.conditional(b, a)?.order()
    }

    /// Per-world orders of `P(· | A)`: TOP outside A.
    pub fn conditioned_orders(&self, a: &Proposition) -> Result<Vec<Rank>> {
        let den = self.weight(a)?;
        if den.is_zero() {
            return Err(Error::EmptyProposition);
        }
        (0..self.space.world_count())
            .map(|w| {
                if a.contains(w) {
                    // the order of a quotient, without building it
                    self.weights[w].order().checked_sub(den.order())
                } else {
                    Ok(Rank::Top)
                }
            })
            .collect()
    }

    /// Probabilistic independence of two fields given each atom of `given`
    /// (the trivial field when `None`), as the exact identity
    /// `P(b∩c∩d)·P(d) = P(b∩d)·P(c∩d)` on atoms. Atoms suffice because both
    /// sides are bilinear in the members.
    pub fn independent(
        &self,
        b: &PartitionField,
        c: &PartitionField,
        given: Option<&PartitionField>,
    ) -> Result<bool> {
        let trivial;
        let d = match given {
            Some(d) => d,
            None => {
                trivial = PartitionField::trivial(&self.space);
                &trivial
            }
        };
        for f in [b, c, d] {
            f.same_space(&self.space)?;
        }
        let n = self.space.world_count();
        let (nb, nc, nd) = (b.atom_count(), c.atom_count(), d.atom_count());
        let mut cells = vec![ZPoly::zero(); nb * nc * nd];
        let mut rows = vec![ZPoly::zero(); nb * nd];
        let mut cols = vec![ZPoly::zero(); nc * nd];
        let mut dw = vec![ZPoly::zero(); nd];
        for w in 0..n {
            let (i, j, k) = (b.atom_of(w), c.atom_of(w), d.atom_of(w));
            let p = &self.weights[w];
            cells[(k * nb + i) * nc + j] = &cells[(k * nb + i) * nc + j] + p;
            rows[k * nb + i] = &rows[k * nb + i] + p;
            cols[k * nc + j] = &cols[k * nc + j] + p;
            dw[k] = &dw[k] + p;
        }
        for k in 0..nd {
            for i in 0..nb {
                for j in 0..nc {
                    let lhs = &cells[(k * nb + i) * nc + j] * &dw[k];
                    let rhs = &rows[k * nb + i] * &cols[k * nc + j];
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `weight(w) = c_w · z^{κ(w)}` with all `c_w = 1` unless given.
pub fn ncf_to_measure<T: Scalar>(kappa: &Ncf, coeffs: Option<&[T]>) -> Result<OrderMeasure<T>> {
    let n = kappa.space().world_count();
    let weights = match coeffs {
        None => (0..n)
            .map(|w| ZPoly::monomial(T::one(), kappa.world_rank(w)))
            .collect(),
        Some(cs) => {
            if cs.len() != n {
                return Err(Error::RankCount {
                    expected: n,
                    actual: cs.len(),
                });
            }
            cs.iter()
                .enumerate()
                .map(|(w, c)| {
                    if c.is_positive_scalar() {
                        Ok(ZPoly::monomial(c.clone(), kappa.world_rank(w)))
                    } else {
                        Err(Error::InvalidCoefficient(format!("{c} for world {w}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    OrderMeasure::new(kappa.space(), weights)
}

/// `c_w = Π_i factors[i][w_i]`: coefficients of a product measure.
pub fn product_coefficients<T: Scalar>(space: &Space, factors: &[Vec<T>]) -> Result<Vec<T>> {
    let vars = space.variables();
    if factors.len() != vars.len() {
        return Err(Error::RankCount {
            expected: vars.len(),
            actual: factors.len(),
        });
    }
    for (v, f) in vars.iter().zip(factors) {
        if f.len() != v.values().len() {
            return Err(Error::RankCount {
                expected: v.values().len(),
                actual: f.len(),
            });
        }
    }
    Ok((0..space.world_count())
        .map(|w| {
            space
                .assignment(w)
                .iter()
                .zip(factors)
                .fold(T::one(), |acc, (&i, f)| acc * f[i].clone())
        })
        .collect())
}
