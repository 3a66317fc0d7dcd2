//! Natural conditional functions: graded disbelief over the worlds of a
//! finite space.
//!
//! An [`Ncf`] assigns every world a natural rank (its degree of disbelief)
//! such that some world has rank 0 and ranks are constant on the atoms of the
//! function's measurability field. Propositions are ranked by the minimum over
//! their worlds; the empty proposition gets [`Rank::Top`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rank::{min_rank, Firmness, Rank};
use crate::space::{PartitionField, Proposition, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ncf {
    field: PartitionField,
    ranks: Vec<u32>,
}

impl Ncf {
    /// One rank per atom of `field`, in atom order. The minimum must be 0.
    pub fn new(field: PartitionField, atom_ranks: &[u32]) -> Result<Self> {
        if atom_ranks.len() != field.atom_count() {
            return Err(Error::RankCount {
                expected: field.atom_count(),
                actual: atom_ranks.len(),
            });
        }
        check_normalized(atom_ranks)?;
        let ranks = (0..field.space().world_count())
            .map(|w| atom_ranks[field.atom_of(w)])
            .collect();
        Ok(Ncf { field, ranks })
    }

    /// World-level ranks over the discrete field.
    pub fn from_world_ranks(space: &Arc<Space>, ranks: Vec<u32>) -> Result<Self> {
        Self::with_field(PartitionField::discrete(space), ranks)
    }

    /// World-level ranks that must be constant on the atoms of `field`.
    pub fn with_field(field: PartitionField, ranks: Vec<u32>) -> Result<Self> {
        let n = field.space().world_count();
        if ranks.len() != n {
            return Err(Error::RankCount {
                expected: n,
                actual: ranks.len(),
            });
        }
        check_normalized(&ranks)?;
        for atom in field.atoms() {
            let mut worlds = atom.worlds();
            let first = ranks[worlds.next().expect("atoms are non-empty")];
            if worlds.any(|w| ranks[w] != first) {
                return Err(Error::NotMeasurable);
            }
        }
        Ok(Ncf { field, ranks })
    }

    /// Every world at rank 0.
    pub fn vacuous(space: &Arc<Space>) -> Self {
        Ncf {
            field: PartitionField::trivial(space),
            ranks: vec![0; space.world_count()],
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        self.field.space()
    }

    pub fn field(&self) -> &PartitionField {
        &self.field
    }

    pub fn world_rank(&self, world: usize) -> u32 {
        self.ranks[world]
    }

    pub fn world_ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn atom_ranks(&self) -> Vec<u32> {
        self.field
            .atoms()
            .iter()
            .map(|a| self.ranks[a.worlds().next().expect("atoms are non-empty")])
            .collect()
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    fn check_space(&self, a: &Proposition) -> Result<()> {
        self.field.same_space(a.space())
    }

    /// `κ(A) = min{κ(w) | w ∈ A}`, TOP for the empty proposition.
    pub fn rank(&self, a: &Proposition) -> Result<Rank> {
        self.check_space(a)?;
        Ok(self.rank_unchecked(a))
    }

    pub(crate) fn rank_unchecked(&self, a: &Proposition) -> Rank {
        min_rank(a.worlds().map(|w| Rank::Finite(self.ranks[w])))
    }

    /// A is believed iff its complement is disbelieved: `κ(−A) > 0`.
    pub fn believes(&self, a: &Proposition) -> Result<bool> {
        Ok(self.rank(&a.complement())?.is_positive())
    }

    /// The rank-0 worlds `κ⁻¹(0)`; never empty.
    pub fn belief_core(&self) -> Proposition {
        Proposition::from_worlds(
            self.space(),
            self.ranks
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == 0)
                .map(|(w, _)| w),
        )
    }

    /// `+κ(−A)` when `κ(A) = 0`, otherwise `−κ(A)`. Defined for contingent A.
    pub fn firmness(&self, a: &Proposition) -> Result<Firmness> {
        self.check_space(a)?;
        a.require_contingent()?;
        let pos = self.rank_unchecked(a).finite().expect("A is non-empty");
        let neg = self.rank_unchecked(&a.complement()).finite().expect("−A is non-empty");
        Ok(if pos == 0 {
            Firmness(i64::from(neg))
        } else {
            Firmness(-i64::from(pos))
        })
    }

    /// `κ(B|A) = κ(A∩B) − κ(A)`; TOP when `A∩B = ∅`.
    pub fn cond_rank(&self, b: &Proposition, a: &Proposition) -> Result<Rank> {
        self.check_space(a)?;
        self.check_space(b)?;
        if a.is_empty() {
            return Err(Error::EmptyProposition);
        }
        let joint = self.rank_unchecked(&(a & b));
        if joint.is_top() {
            return Ok(Rank::Top);
        }
        joint.checked_sub(self.rank_unchecked(a))
    }

    /// The A-part: `w ↦ κ(w) − κ(A)` for `w ∈ A`.
    pub fn part(&self, a: &Proposition) -> Result<BTreeMap<usize, u32>> {
        self.check_space(a)?;
        let base = self.rank_unchecked(a).finite().ok_or(Error::EmptyProposition)?;
        Ok(a.worlds().map(|w| (w, self.ranks[w] - base)).collect())
    }

    /// `min_r [κ(A_r) + κ(B|A_r)]` over the atoms of `partition`. Equals `κ(B)`.
    pub fn total_rank(&self, partition: &PartitionField, b: &Proposition) -> Result<Rank> {
        partition.same_space(self.space())?;
        self.check_space(b)?;
        let mut best = Rank::Top;
        for atom in partition.atoms() {
            best = best.min(self.rank_unchecked(atom) + self.cond_rank(b, atom)?);
        }
        Ok(best)
    }

    /// `κ(A_q) + κ(B|A_q) − min_r [κ(A_r) + κ(B|A_r)]`. Equals `κ(A_q|B)`.
    pub fn bayes_rank(&self, partition: &PartitionField, q: usize, b: &Proposition) -> Result<Rank> {
        if b.is_empty() {
            return Err(Error::EmptyProposition);
        }
        let atom = partition.atoms().get(q).ok_or_else(|| {
            Error::InvalidPartition(format!("no atom with index {q}"))
        })?;
        let total = self.total_rank(partition, b)?;
        let numerator = self.rank_unchecked(atom) + self.cond_rank(b, atom)?;
        if numerator.is_top() {
            return Ok(Rank::Top);
        }
        numerator.checked_sub(total)
    }

    /// The same ranks over a finer measurability field.
    pub fn refined(&self, finer: &PartitionField) -> Result<Ncf> {
        if !finer.refines(&self.field) {
            return Err(Error::NotMeasurable);
        }
        Ok(Ncf {
            field: finer.clone(),
            ranks: self.ranks.clone(),
        })
    }
}

fn check_normalized(ranks: &[u32]) -> Result<()> {
    match ranks.iter().min() {
        Some(0) => Ok(()),
        Some(&m) => Err(Error::NotNormalized(m)),
        None => Err(Error::RankCount {
            expected: 1,
            actual: 0,
        }),
    }
}
