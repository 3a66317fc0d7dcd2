use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::{Proposition, Space, WorldSet};

/// Basic mass assignment: positive masses on non-empty focal sets, summing
/// to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction<T> {
    space: Arc<Space>,
    focal: BTreeMap<WorldSet, T>,
}

impl<T: Scalar> MassFunction<T> {
    pub fn new(space: &Arc<Space>, masses: Vec<(Proposition, T)>) -> Result<Self> {
        let mut focal = BTreeMap::new();
        let mut total = T::zero();
        for (a, m) in masses {
            if !Space::same(space, a.space()) {
                return Err(Error::SpaceMismatch);
            }
            if a.is_empty() {
                return Err(Error::InvalidMass("mass on the empty set".into()));
            }
            if !m.is_positive_scalar() || m > T::one() {
                return Err(Error::InvalidMass(format!("mass {m} on {} is outside (0, 1]", a.describe())));
            }
            total = total + m.clone();
            if focal.insert(a.members().clone(), m).is_some() {
                return Err(Error::InvalidMass(format!("{} is listed twice", a.describe())));
            }
        }
        if total != T::one() {
            return Err(Error::InvalidMass(format!("masses sum to {total}, expected 1")));
        }
        Ok(MassFunction {
            space: space.clone(),
            focal,
        })
    }

    /// All mass on W.
    pub fn vacuous(space: &Arc<Space>) -> Self {
        let mut focal = BTreeMap::new();
        focal.insert(WorldSet::full(space.world_count()), T::one());
        MassFunction {
            space: space.clone(),
            focal,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// Focal sets in set order with their masses.
    pub fn focal_sets(&self) -> impl Iterator<Item = (Proposition, &T)> + '_ {
        self.focal.iter().map(|(s, m)| {
            (
                Proposition::new(&self.space, s.clone()).expect("focal sets belong to the space"),
                m,
            )
        })
    }

    pub fn mass_of(&self, a: &Proposition) -> T {
        self.focal.get(a.members()).cloned().unwrap_or_else(T::zero)
    }

    /// Focal sets by ascending cardinality, ties in set order.
    fn by_size(&self) -> Vec<&WorldSet> {
        let mut sets: Vec<&WorldSet> = self.focal.keys().collect();
        sets.sort_by_key(|s| s.count());
        sets
    }

    /// First pair of focal sets, in order of size, neither containing the
    /// other.
    pub fn unnested_pair(&self) -> Option<(Proposition, Proposition)> {
        let sets = self.by_size();
        for (i, e) in sets.iter().enumerate() {
            for f in &sets[i + 1..] {
                if !e.is_subset(f) {
                    let p = |s: &WorldSet| Proposition::new(&self.space, s.clone()).expect("same space");
                    return Some((p(e), p(f)));
                }
            }
        }
        None
    }

    /// Focal sets form a chain under inclusion.
    pub fn is_consonant(&self) -> bool {
        self.by_size().windows(2).all(|w| w[0].is_subset(w[1]))
    }

    fn check_space(&self, b: &Proposition) -> Result<()> {
        if Space::same(&self.space, b.space()) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Total mass of focal sets contained in B.
    pub fn belief_of(&self, b: &Proposition) -> Result<T> {
        self.check_space(b)?;
        Ok(self
            .focal
            .iter()
            .filter(|(s, _)| s.is_subset(b.members()))
            .fold(T::zero(), |acc, (_, m)| acc + m.clone()))
    }

    /// Degree of doubt: belief in the complement.
    pub fn doubt_of(&self, b: &Proposition) -> Result<T> {
        self.check_space(b)?;
        self.belief_of(&b.complement())
    }

    /// `y(B|A) = (y(A∩B) − y(A)) / (1 − y(A))` with y the degree of doubt.
    pub fn conditional_doubt(&self, b: &Proposition, a: &Proposition) -> Result<T> {
        a.same_space(b)?;
        let ya = self.doubt_of(a)?;
        if ya == T::one() {
            return Err(Error::MaximalDoubt);
        }
        let yab = self.doubt_of(&(a & b))?;
        Ok((yab - ya.clone()) / (T::one() - ya))
    }
}

/// Result of Dempster's rule: the normalized combination and the conflict
/// mass that was discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<T> {
    pub mass: MassFunction<T>,
    pub conflict: T,
}

/// `m(G) = Σ_{E∩F=G} m1(E)·m2(F) / (1 − K)` with `K` the mass of empty
/// intersections.
pub fn dempster_combine<T: Scalar>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<Combination<T>> {
    if !Space::same(&m1.space, &m2.space) {
        return Err(Error::SpaceMismatch);
    }
    let mut raw: BTreeMap<WorldSet, T> = BTreeMap::new();
    let mut conflict = T::zero();
    for (e, a) in &m1.focal {
        for (f, b) in &m2.focal {
            let g = e.intersection(f);
            let p = a.clone() * b.clone();
            if g.is_empty() {
                conflict = conflict + p;
            } else {
                let slot = raw.entry(g).or_insert_with(T::zero);
                *slot = slot.clone() + p;
            }
        }
    }
    let norm = T::one() - conflict.clone();
    if norm.is_zero() {
        return Err(Error::TotalConflict);
    }
    let focal = raw.into_iter().map(|(g, p)| (g, p / norm.clone())).collect();
    Ok(Combination {
        mass: MassFunction {
            space: m1.space.clone(),
            focal,
        },
        conflict,
    })
}

/// Mass `s` on A and `1 − s` on W, for contingent A and `0 < s < 1`.
pub fn make_simple_support<T: Scalar>(a: &Proposition, s: T) -> Result<MassFunction<T>> {
    if !s.is_positive_scalar() || s >= T::one() {
        return Err(Error::SupportOutOfRange);
    }
    a.require_contingent()?;
    let rest = T::one() - s.clone();
    MassFunction::new(a.space(), vec![(a.clone(), s), (Proposition::full(a.space()), rest)])
}

/// A consonant mass function whose combination with a simple support
/// function is not consonant.
#[derive(Clone, Debug, PartialEq)]
pub struct NonclosureWitness<T> {
    pub consonant: MassFunction<T>,
    pub support: MassFunction<T>,
    pub combined: Combination<T>,
    /// Focal sets of the combination, neither containing the other.
    pub pair: (Proposition, Proposition),
}

impl<T: Scalar> NonclosureWitness<T> {
    /// Recomputes everything from the two inputs.
    pub fn revalidate(&self) -> bool {
        let Ok(c) = dempster_combine(&self.consonant, &self.support) else {
            return false;
        };
        let (e, f) = &self.pair;
        let focal = |p: &Proposition| c.mass.mass_of(p).is_positive_scalar();
        self.consonant.is_consonant()
            && self.support.focal.len() == 2
            && c == self.combined
            && !c.mass.is_consonant()
            && focal(e)
            && focal(f)
            && !e.is_subset(f)
            && !f.is_subset(e)
    }
}

impl<T: Scalar> fmt::Display for MassFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .by_size()
            .into_iter()
            .map(|s| {
                let p = Proposition::new(&self.space, s.clone()).expect("same space");
                format!("{}: {}", p.describe(), self.focal[s])
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// The nested chain `{w0} ⊆ F_1 ⊆ … ⊆ W` where `F_k` holds the worlds that
/// agree with `w0` on every variable from index k on.
fn cylinder_chain(space: &Arc<Space>, anchor: usize) -> Vec<Proposition> {
    let n = space.world_count();
    let vars = space.variables().len();
    let a = space.assignment(anchor);
    (0..=vars)
        .map(|k| {
            Proposition::from_worlds(
                space,
                (0..n).filter(|&w| (k..vars).all(|i| space.value_of(w, i) == a[i])),
            )
        })
        .collect()
}

/// Searches for a consonant m1 and a simple support m2 whose combination is
/// not consonant. Candidates for m1 put `chain_masses[k]` on the k-th set of
/// a cylinder chain around each anchor world in turn; candidates for m2 put
/// `s` on each literal proposition not containing the anchor.
pub fn demonstrate_nonclosure<T: Scalar>(
    space: &Arc<Space>,
    chain_masses: &[T],
    s: T,
) -> Result<Option<NonclosureWitness<T>>> {
    let vars = space.variables().len();
    if chain_masses.len() != vars + 1 {
        return Err(Error::RankCount {
            expected: vars + 1,
            actual: chain_masses.len(),
        });
    }
    for anchor in 0..space.world_count() {
        let mut merged: BTreeMap<WorldSet, T> = BTreeMap::new();
        for (set, m) in cylinder_chain(space, anchor).into_iter().zip(chain_masses) {
            let slot = merged.entry(set.members().clone()).or_insert_with(T::zero);
            *slot = slot.clone() + m.clone();
        }
        let consonant = MassFunction::new(
            space,
            merged
                .into_iter()
                .map(|(set, m)| (Proposition::new(space, set).expect("same space"), m))
                .collect(),
        )?;
        for var in space.variables() {
            for value in var.values() {
                let a = Proposition::literal(space, var.name(), value)?;
                if a.contains(anchor) || !a.is_contingent() {
                    continue;
                }
                let support = make_simple_support(&a, s.clone())?;
                let Ok(combined) = dempster_combine(&consonant, &support) else {
                    continue;
                };
                if let Some(pair) = combined.mass.unnested_pair() {
                    return Ok(Some(NonclosureWitness {
                        consonant,
                        support,
                        combined,
                        pair,
                    }));
                }
            }
        }
    }
    Ok(None)
}
