use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Proposition, Space, WorldSet};
use crate::error::{Error, Result};

/// A field of propositions, represented by its atoms.
///
/// The atoms are non-empty, pairwise disjoint and cover the space; the field
/// itself is the set of all unions of atoms and is never materialized. Atoms
/// are kept sorted by their smallest world, which makes equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionField {
    space: Arc<Space>,
    atoms: Vec<Proposition>,
    atom_of: Vec<usize>,
}

impl PartitionField {
    pub fn from_atoms(space: &Arc<Space>, atoms: Vec<Proposition>) -> Result<Self> {
        let n = space.world_count();
        let mut labels = vec![usize::MAX; n];
        for (i, atom) in atoms.iter().enumerate() {
            if !Space::same(atom.space(), space) {
                return Err(Error::SpaceMismatch);
            }
            if atom.is_empty() {
                return Err(Error::InvalidPartition(format!("atom {i} is empty")));
            }
            for w in atom.worlds() {
                if labels[w] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "world {} lies in atoms {} and {i}",
                        space.describe_world(w),
                        labels[w]
                    )));
                }
                labels[w] = i;
            }
        }
        if let Some(w) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "world {} is not covered",
                space.describe_world(w)
            )));
        }
        Ok(Self::from_labels(space, &labels))
    }

    /// Field whose atoms are the classes of equal labels.
    pub(crate) fn from_labels<L: Ord + Clone>(space: &Arc<Space>, labels: &[L]) -> Self {
        let n = space.world_count();
        let mut class_of: BTreeMap<L, usize> = BTreeMap::new();
        let mut members: Vec<WorldSet> = Vec::new();
        let mut atom_of = vec![0; n];
        // worlds are visited in index order, so atoms come out sorted by first world
        for (w, label) in labels.iter().enumerate() {
            let idx = *class_of.entry(label.clone()).or_insert_with(|| {
                members.push(WorldSet::empty(n));
                members.len() - 1
            });
            members[idx].insert(w);
            atom_of[w] = idx;
        }
        PartitionField {
            space: Arc::clone(space),
            atoms: members
                .into_iter()
                .map(|m| Proposition::new(space, m).expect("sized to the space"))
                .collect(),
            atom_of,
        }
    }

    /// The field `{∅, W}`.
    pub fn trivial(space: &Arc<Space>) -> Self {
        Self::from_labels(space, &vec![0u8; space.world_count()])
    }

    /// The field of all propositions: one atom per world.
    pub fn discrete(space: &Arc<Space>) -> Self {
        Self::from_labels(space, &(0..space.world_count()).collect::<Vec<_>>())
    }

    /// Propositions referring at most to `vars`: atoms group worlds that
    /// agree on every listed variable.
    pub fn of_variables<S: AsRef<str>>(space: &Arc<Space>, vars: &[S]) -> Result<Self> {
        let indices = vars
            .iter()
            .map(|v| space.variable_index(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<Vec<usize>> = (0..space.world_count())
            .map(|w| indices.iter().map(|&v| space.value_of(w, v)).collect())
            .collect();
        Ok(Self::from_labels(space, &labels))
    }

    /// The field `{∅, A, −A, W}` of a contingent proposition.
    pub fn of_proposition(a: &Proposition) -> Result<Self> {
        a.require_contingent()?;
        let labels: Vec<bool> = (0..a.space().world_count())
            .map(|w| !a.contains(w))
            .collect();
        Ok(Self::from_labels(a.space(), &labels))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn atoms(&self) -> &[Proposition] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_of(&self, world: usize) -> usize {
        self.atom_of[world]
    }

    pub fn same_space(&self, other_space: &Arc<Space>) -> Result<()> {
        if Space::same(&self.space, other_space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// True iff `a` is a union of atoms.
    pub fn is_measurable(&self, a: &Proposition) -> Result<bool> {
        self.same_space(a.space())?;
        Ok(self.atoms.iter().all(|atom| {
            let inside = atom.members().intersection(a.members());
            inside.is_empty() || inside == *atom.members()
        }))
    }

    /// Union of the atoms selected by the bits of `mask`.
    pub fn member(&self, mask: u64) -> Proposition {
        let mut members = WorldSet::empty(self.space.world_count());
        for (i, atom) in self.atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members = members.union(atom.members());
            }
        }
        Proposition::new(&self.space, members).expect("sized to the space")
    }

    /// Coarsest common refinement: atoms are the non-empty pairwise
    /// intersections of atoms of both fields.
    pub fn refine(&self, other: &PartitionField) -> Result<PartitionField> {
        self.same_space(other.space())?;
        let labels: Vec<(usize, usize)> = (0..self.space.world_count())
            .map(|w| (self.atom_of[w], other.atom_of[w]))
            .collect();
        Ok(Self::from_labels(&self.space, &labels))
    }

    /// Every atom of `self` lies inside one atom of `coarser`.
    pub fn refines(&self, coarser: &PartitionField) -> bool {
        self.atoms.iter().all(|atom| {
            let first = atom.members().first().expect("atoms are non-empty");
            atom.is_subset(&coarser.atoms[coarser.atom_of[first]])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::Variable;
    use super::*;

    fn s2() -> Arc<Space> {
        Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])]).unwrap()
    }

    fn worlds(p: &Proposition) -> Vec<usize> {
        p.worlds().collect()
    }

    #[test]
    fn subfields_of_variables() {
        let s = s2();
        let fx = PartitionField::of_variables(&s, &["X"]).unwrap();
        assert_eq!(fx.atoms().iter().map(worlds).collect::<Vec<_>>(), vec![vec![0, 1], vec![2, 3]]);
        let trivial = PartitionField::of_variables::<&str>(&s, &[]).unwrap();
        assert_eq!(trivial.atom_count(), 1);
        assert!(trivial.atoms()[0].is_full());
        let full = PartitionField::of_variables(&s, &["X", "Y"]).unwrap();
        assert_eq!(full, PartitionField::discrete(&s));
        assert_eq!(full.atom_count(), 4);
        assert!(PartitionField::of_variables(&s, &["Q"]).is_err());
    }

    #[test]
    fn atom_count_is_product_of_domains() {
        let s = Space::build(vec![
            Variable::new("A", ["0", "1", "2"]),
            Variable::new("B", ["0", "1"]),
            Variable::new("C", ["x", "y", "z", "w"]),
        ])
        .unwrap();
        assert_eq!(PartitionField::of_variables(&s, &["A", "C"]).unwrap().atom_count(), 12);
        assert_eq!(PartitionField::of_variables(&s, &["B"]).unwrap().atom_count(), 2);
    }

    #[test]
    fn field_of_a_proposition() {
        let s = s2();
        let y1 = Proposition::from_worlds(&s, [1, 3]);
        let f = PartitionField::of_proposition(&y1).unwrap();
        // atoms sorted by first world: {w00,w10} comes first
        assert_eq!(f.atoms().iter().map(worlds).collect::<Vec<_>>(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(PartitionField::of_proposition(&Proposition::empty(&s)).unwrap_err(), Error::NotContingent);
        assert_eq!(PartitionField::of_proposition(&Proposition::full(&s)).unwrap_err(), Error::NotContingent);
    }

    #[test]
    fn measurability() {
        let s = s2();
        let fx = PartitionField::of_variables(&s, &["X"]).unwrap();
        assert!(fx.is_measurable(&Proposition::from_worlds(&s, [0, 1])).unwrap());
        assert!(!fx.is_measurable(&Proposition::from_worlds(&s, [0])).unwrap());
        assert!(fx.is_measurable(&Proposition::empty(&s)).unwrap());
        let other = Space::binary(2).unwrap();
        assert!(fx.is_measurable(&Proposition::empty(&other)).is_err());
    }

    #[test]
    fn measurable_iff_union_of_touched_atoms() {
        let s = s2();
        let fx = PartitionField::of_variables(&s, &["Y"]).unwrap();
        for a in crate::space::all_propositions(&s).unwrap() {
            let touched = fx
                .atoms()
                .iter()
                .filter(|atom| !atom.is_disjoint(&a))
                .fold(Proposition::empty(&s), |acc, atom| &acc | atom);
            assert_eq!(fx.is_measurable(&a).unwrap(), touched == a);
        }
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        let s = s2();
        let overlap = vec![Proposition::from_worlds(&s, [0, 1]), Proposition::from_worlds(&s, [1, 2, 3])];
        assert!(matches!(PartitionField::from_atoms(&s, overlap), Err(Error::InvalidPartition(_))));
        let gap = vec![Proposition::from_worlds(&s, [0, 1]), Proposition::from_worlds(&s, [2])];
        assert!(matches!(PartitionField::from_atoms(&s, gap), Err(Error::InvalidPartition(_))));
        let empty = vec![Proposition::full(&s), Proposition::empty(&s)];
        assert!(matches!(PartitionField::from_atoms(&s, empty), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn refinement() {
        let s = s2();
        let fx = PartitionField::of_variables(&s, &["X"]).unwrap();
        let fy = PartitionField::of_variables(&s, &["Y"]).unwrap();
        let both = fx.refine(&fy).unwrap();
        assert_eq!(both, PartitionField::discrete(&s));
        assert!(both.refines(&fx));
        assert!(!fx.refines(&fy));
        assert_eq!(worlds(&fx.member(0b11)), vec![0, 1, 2, 3]);
    }
}
