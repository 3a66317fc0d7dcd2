//! Finite possibility spaces, propositions and partition fields.
//!
//! A [`Space`] is the Cartesian product of named finite-domain variables.
//! Worlds are indexed densely in lexicographic order of the variable domains,
//! first variable most significant, so for `X, Y ∈ {0, 1}` the worlds are
//! `00, 01, 10, 11` at indices `0..4`.

mod field;
mod formula;
mod worldset;

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::sync::Arc;

pub use field::PartitionField;
pub use formula::{eval_formula, parse_formula, Formula};
pub use worldset::WorldSet;

use crate::error::{Error, Result};

/// Default upper bound on the number of worlds a space may have.
pub const DEFAULT_WORLD_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    values: Vec<String>,
}

impl Variable {
    pub fn new<N, V, I>(name: N, values: I) -> Self
    where
        N: Into<String>,
        V: Into<String>,
        I: IntoIterator<Item = V>,
    {
        Variable {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn value_index(&self, value: &str) -> Option<usize> {
        self.values.iter().position(|v| v == value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    variables: Vec<Variable>,
    /// Index stride of each variable; the last variable has stride 1.
    strides: Vec<usize>,
    worlds: usize,
}

impl Space {
    /// Builds the product space under [`DEFAULT_WORLD_CAP`].
    pub fn build(variables: Vec<Variable>) -> Result<Arc<Space>> {
        Self::build_with_cap(variables, DEFAULT_WORLD_CAP)
    }

    pub fn build_with_cap(variables: Vec<Variable>, cap: usize) -> Result<Arc<Space>> {
        if variables.is_empty() {
            return Err(Error::NoVariables);
        }
        let mut worlds: u128 = 1;
        for (i, var) in variables.iter().enumerate() {
            if variables[..i].iter().any(|v| v.name == var.name) {
                return Err(Error::DuplicateVariable(var.name.clone()));
            }
            if var.values.is_empty() {
                return Err(Error::EmptyDomain(var.name.clone()));
            }
            for (j, value) in var.values.iter().enumerate() {
                if var.values[..j].contains(value) {
                    return Err(Error::DuplicateValue {
                        variable: var.name.clone(),
                        value: value.clone(),
                    });
                }
            }
            worlds = worlds.saturating_mul(var.values.len() as u128);
        }
        if worlds > cap as u128 {
            return Err(Error::SpaceTooLarge { worlds, cap });
        }
        let mut strides = vec![1usize; variables.len()];
        for i in (0..variables.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * variables[i + 1].values.len();
        }
        Ok(Arc::new(Space {
            variables,
            strides,
            worlds: worlds as usize,
        }))
    }

    /// `n` binary variables named `X1..Xn` with values `0, 1`.
    pub fn binary(n: usize) -> Result<Arc<Space>> {
        Self::build(
            (1..=n)
                .map(|i| Variable::new(format!("X{i}"), ["0", "1"]))
                .collect(),
        )
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn world_count(&self) -> usize {
        self.worlds
    }

    /// Index of the value that `world` assigns to variable `var`.
    pub fn value_of(&self, world: usize, var: usize) -> usize {
        (world / self.strides[var]) % self.variables[var].values.len()
    }

    /// Value indices of every variable at `world`.
    pub fn assignment(&self, world: usize) -> Vec<usize> {
        (0..self.variables.len())
            .map(|v| self.value_of(world, v))
            .collect()
    }

    /// Inverse of [`Space::assignment`].
    pub fn world_of(&self, assignment: &[usize]) -> Option<usize> {
        if assignment.len() != self.variables.len() {
            return None;
        }
        let mut index = 0;
        for ((&value, var), stride) in assignment.iter().zip(&self.variables).zip(&self.strides) {
            if value >= var.values.len() {
                return None;
            }
            index += value * stride;
        }
        Some(index)
    }

    /// `(X=0, Y=1)`
    pub fn describe_world(&self, world: usize) -> String {
        let parts: Vec<String> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}={}", v.name, v.values[self.value_of(world, i)]))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn same(a: &Arc<Space>, b: &Arc<Space>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// A set of worlds of one space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Proposition {
    space: Arc<Space>,
    members: WorldSet,
}

impl Proposition {
    pub fn new(space: &Arc<Space>, members: WorldSet) -> Result<Self> {
        if members.universe_len() != space.world_count() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Proposition {
            space: Arc::clone(space),
            members,
        })
    }

    pub fn empty(space: &Arc<Space>) -> Self {
        Proposition {
            space: Arc::clone(space),
            members: WorldSet::empty(space.world_count()),
        }
    }

    pub fn full(space: &Arc<Space>) -> Self {
        Proposition {
            space: Arc::clone(space),
            members: WorldSet::full(space.world_count()),
        }
    }

    /// Panics if an index is out of range.
    pub fn from_worlds<I: IntoIterator<Item = usize>>(space: &Arc<Space>, worlds: I) -> Self {
        Proposition {
            space: Arc::clone(space),
            members: WorldSet::from_indices(space.world_count(), worlds),
        }
    }

    /// `var = value`
    pub fn literal(space: &Arc<Space>, var: &str, value: &str) -> Result<Self> {
        let vi = space.variable_index(var)?;
        let xi = space.variables[vi]
            .value_index(value)
            .ok_or_else(|| Error::UnknownValue {
                variable: var.to_string(),
                value: value.to_string(),
            })?;
        Ok(Self::from_worlds(
            space,
            (0..space.world_count()).filter(|&w| space.value_of(w, vi) == xi),
        ))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn members(&self) -> &WorldSet {
        &self.members
    }

    pub fn worlds(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn contains(&self, world: usize) -> bool {
        self.members.contains(world)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.is_full()
    }

    /// Neither empty nor the whole space.
    pub fn is_contingent(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    pub fn require_contingent(&self) -> Result<()> {
        if self.is_contingent() {
            Ok(())
        } else {
            Err(Error::NotContingent)
        }
    }

    pub fn same_space(&self, other: &Proposition) -> Result<()> {
        if Space::same(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn complement(&self) -> Proposition {
        Proposition {
            space: Arc::clone(&self.space),
            members: self.members.complement(),
        }
    }

    pub fn try_union(&self, other: &Proposition) -> Result<Proposition> {
        self.same_space(other)?;
        Ok(self.with_members(self.members.union(&other.members)))
    }

    pub fn try_intersection(&self, other: &Proposition) -> Result<Proposition> {
        self.same_space(other)?;
        Ok(self.with_members(self.members.intersection(&other.members)))
    }

    pub fn is_subset(&self, other: &Proposition) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &Proposition) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub(crate) fn with_members(&self, members: WorldSet) -> Proposition {
        Proposition {
            space: Arc::clone(&self.space),
            members,
        }
    }

    /// `{(X=0, Y=1), (X=1, Y=1)}`
    pub fn describe(&self) -> String {
        let worlds: Vec<String> = self.worlds().map(|w| self.space.describe_world(w)).collect();
        format!("{{{}}}", worlds.join(", "))
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Proposition{:?}", self.members)
    }
}

impl Not for &Proposition {
    type Output = Proposition;

    fn not(self) -> Proposition {
        self.complement()
    }
}

/// Panics when the operands live in different spaces; use
/// [`Proposition::try_union`] to get an error instead.
impl BitOr for &Proposition {
    type Output = Proposition;

    fn bitor(self, rhs: &Proposition) -> Proposition {
        self.try_union(rhs).expect("union of propositions from different spaces")
    }
}

/// Panics when the operands live in different spaces; use
/// [`Proposition::try_intersection`] to get an error instead.
impl BitAnd for &Proposition {
    type Output = Proposition;

    fn bitand(self, rhs: &Proposition) -> Proposition {
        self.try_intersection(rhs)
            .expect("intersection of propositions from different spaces")
    }
}

/// Every proposition of a space with at most 64 worlds, in mask order.
pub fn all_propositions(space: &Arc<Space>) -> Result<Vec<Proposition>> {
    let n = space.world_count();
    if n > 20 {
        return Err(Error::BoundTooLarge(format!(
            "enumerating all propositions of {n} worlds"
        )));
    }
    Ok((0..1u64 << n)
        .map(|mask| Proposition {
            space: Arc::clone(space),
            members: WorldSet::from_mask(n, mask),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Arc<Space> {
        Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])]).unwrap()
    }

    #[test]
    fn product_has_lexicographic_worlds() {
        let s = s2();
        assert_eq!(s.world_count(), 4);
        let names: Vec<String> = (0..4).map(|w| s.describe_world(w)).collect();
        assert_eq!(
            names,
            ["(X=0, Y=0)", "(X=0, Y=1)", "(X=1, Y=0)", "(X=1, Y=1)"]
        );
    }

    #[test]
    fn singleton_and_mixed_products() {
        let one = Space::build(vec![Variable::new("X", ["a"])]).unwrap();
        assert_eq!(one.world_count(), 1);
        let six = Space::build(vec![
            Variable::new("X", ["0", "1"]),
            Variable::new("Y", ["0", "1", "2"]),
        ])
        .unwrap();
        assert_eq!(six.world_count(), 6);
        for w in 0..6 {
            assert_eq!(six.world_of(&six.assignment(w)), Some(w));
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Space::build(vec![]).unwrap_err(), Error::NoVariables);
        assert_eq!(
            Space::build(vec![Variable::new("X", ["0"]), Variable::new("X", ["1"])]).unwrap_err(),
            Error::DuplicateVariable("X".into())
        );
        assert_eq!(
            Space::build(vec![Variable::new("X", Vec::<String>::new())]).unwrap_err(),
            Error::EmptyDomain("X".into())
        );
        assert!(matches!(
            Space::build(vec![Variable::new("X", ["0", "0"])]),
            Err(Error::DuplicateValue { .. })
        ));
        let wide: Vec<Variable> = (0..5).map(|i| Variable::new(format!("V{i}"), ["0", "1"])).collect();
        assert!(matches!(
            Space::build_with_cap(wide, 16),
            Err(Error::SpaceTooLarge { worlds: 32, cap: 16 })
        ));
    }

    #[test]
    fn literals_and_boolean_ops() {
        let s = s2();
        let y1 = Proposition::literal(&s, "Y", "1").unwrap();
        assert_eq!(y1.worlds().collect::<Vec<_>>(), vec![1, 3]);
        let x0 = Proposition::literal(&s, "X", "0").unwrap();
        assert_eq!((&x0 & &y1).worlds().collect::<Vec<_>>(), vec![1]);
        assert_eq!((&x0 | &y1).len(), 3);
        assert!((&!&x0 | &x0).is_full());
        assert!(Proposition::literal(&s, "Z", "0").is_err());
        assert!(Proposition::literal(&s, "X", "2").is_err());
    }

    #[test]
    fn cross_space_operations_fail() {
        let a = Proposition::full(&s2());
        let b = Proposition::full(&Space::binary(1).unwrap());
        assert_eq!(a.try_union(&b).unwrap_err(), Error::SpaceMismatch);
        // structurally equal spaces are the same space
        let c = Proposition::empty(&s2());
        assert!(a.try_intersection(&c).unwrap().is_empty());
    }

    #[test]
    fn boolean_algebra_laws_exhaustively() {
        let s = s2();
        let props = all_propositions(&s).unwrap();
        for a in &props {
            assert_eq!(a.complement().complement(), *a);
            for b in &props {
                assert_eq!(!&(a | b), &!a & &!b);
                assert_eq!(!&(a & b), &!a | &!b);
            }
        }
    }
}
