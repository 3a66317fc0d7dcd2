//! Belief change: A,m-conditionalization and its Jeffrey-style
//! generalization to an evidence NCF over a coarser field.
//!
//! Both operations keep every part (the restriction of κ to an evidence atom,
//! renormalized to minimum 0) intact and only shift the parts against each
//! other. The result is measurable over the common refinement of κ's field
//! and the evidence field.

use crate::error::{Error, Result};
use crate::ncf::Ncf;
use crate::rank::Firmness;
use crate::space::{PartitionField, Proposition};

/// Firmness `m ≥ 0` with which evidence is received.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvidenceWeight(pub u32);

/// An NCF on the evidence field: prescribed ranks for each of its atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceNcf {
    field: PartitionField,
    ranks: Vec<u32>,
}

impl EvidenceNcf {
    /// `ranks[i]` is the rank of atom `i`; the minimum must be 0.
    pub fn new(field: PartitionField, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != field.atom_count() {
            return Err(Error::RankCount {
                expected: field.atom_count(),
                actual: ranks.len(),
            });
        }
        match ranks.iter().min() {
            Some(0) => Ok(EvidenceNcf { field, ranks }),
            Some(&m) => Err(Error::NotNormalized(m)),
            None => unreachable!("fields have at least one atom"),
        }
    }

    /// λ with `λ(A) = 0`, `λ(−A) = m`.
    pub fn two_point(a: &Proposition, weight: EvidenceWeight) -> Result<Self> {
        let field = PartitionField::of_proposition(a)?;
        let ranks = field
            .atoms()
            .iter()
            .map(|atom| if atom == a { 0 } else { weight.0 })
            .collect();
        Self::new(field, ranks)
    }

    /// The rank profile κ already has on the atoms of `field`.
    pub fn profile_of(kappa: &Ncf, field: &PartitionField) -> Result<Self> {
        field.same_space(kappa.space())?;
        let ranks = field
            .atoms()
            .iter()
            .map(|atom| kappa.rank(atom).map(|r| r.finite().expect("atoms are non-empty")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field.clone(), ranks)
    }

    pub fn field(&self) -> &PartitionField {
        &self.field
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
}

/// `κ_{A,m}`: `κ(w|A)` inside A, `m + κ(w|−A)` outside.
pub fn conditionalize(kappa: &Ncf, a: &Proposition, weight: EvidenceWeight) -> Result<Ncf> {
    kappa.field().same_space(a.space())?;
    a.require_contingent()?;
    jeffrey_conditionalize(kappa, &EvidenceNcf::two_point(a, weight)?)
}

/// `κ_λ(w) = λ(B) + κ(w|B)` for each atom B of λ's field and `w ∈ B`.
pub fn jeffrey_conditionalize(kappa: &Ncf, lambda: &EvidenceNcf) -> Result<Ncf> {
    lambda.field.same_space(kappa.space())?;
    let offsets: Vec<u32> = lambda
        .field
        .atoms()
        .iter()
        .map(|atom| kappa.rank_unchecked(atom).finite().expect("atoms are non-empty"))
        .collect();
    let ranks = (0..kappa.space().world_count())
        .map(|w| {
            let b = lambda.field.atom_of(w);
            lambda.ranks[b] + (kappa.world_rank(w) - offsets[b])
        })
        .collect();
    let field = kappa.field().refine(&lambda.field)?;
    Ncf::with_field(field, ranks)
}

/// One step of a revision sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevisionStep {
    Conditionalize {
        target: Proposition,
        weight: EvidenceWeight,
    },
    Jeffrey(EvidenceNcf),
}

impl RevisionStep {
    pub fn apply(&self, kappa: &Ncf) -> Result<Ncf> {
        match self {
            RevisionStep::Conditionalize { target, weight } => conditionalize(kappa, target, *weight),
            RevisionStep::Jeffrey(lambda) => jeffrey_conditionalize(kappa, lambda),
        }
    }

    /// Propositions whose firmness the trace reports: the target of an
    /// A,m-step, or each contingent atom of a λ-step.
    pub fn targets(&self) -> Vec<Proposition> {
        match self {
            RevisionStep::Conditionalize { target, .. } => vec![target.clone()],
            RevisionStep::Jeffrey(lambda) => lambda
                .field
                .atoms()
                .iter()
                .filter(|a| a.is_contingent())
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub index: usize,
    pub core: Proposition,
    pub firmness: Vec<(Proposition, Firmness)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevisionRun {
    pub result: Ncf,
    pub trace: Vec<TraceEntry>,
}

/// Left-to-right fold of `steps`; the first failing step aborts with its index.
pub fn revision_sequence(kappa: &Ncf, steps: &[RevisionStep]) -> Result<RevisionRun> {
    let mut current = kappa.clone();
    let mut trace = Vec::with_capacity(steps.len());
    for (index, step) in steps.iter().enumerate() {
        let wrap = |e: Error| Error::RevisionStep {
            index,
            source: Box::new(e),
        };
        current = step.apply(&current).map_err(wrap)?;
        let firmness = step
            .targets()
            .into_iter()
            .map(|t| current.firmness(&t).map(|f| (t, f)))
            .collect::<Result<Vec<_>>>()
            .map_err(wrap)?;
        trace.push(TraceEntry {
            index,
            core: current.belief_core(),
            firmness,
        });
    }
    Ok(RevisionRun {
        result: current,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::Rank;
    use crate::space::{eval_formula, Space, Variable};
    use std::sync::Arc;

    fn s2() -> Arc<Space> {
        Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])]).unwrap()
    }

    fn kappa1() -> Ncf {
        Ncf::from_world_ranks(&s2(), vec![0, 2, 1, 3]).unwrap()
    }

    fn f(k: &Ncf, src: &str) -> Proposition {
        eval_formula(k.space(), src).unwrap()
    }

    #[test]
    fn conditionalize_example() {
        let k = kappa1();
        let r = conditionalize(&k, &f(&k, "X=1"), EvidenceWeight(1)).unwrap();
        assert_eq!(r.world_ranks(), &[1, 3, 0, 2]);
        assert_eq!(r.belief_core(), Proposition::from_worlds(k.space(), [2]));
        assert_eq!(r.rank(&f(&k, "X=0")).unwrap(), Rank::Finite(1));
        assert!(r.believes(&f(&k, "X=1")).unwrap());
    }

    #[test]
    fn conditionalize_is_idempotent() {
        let k = kappa1();
        let a = f(&k, "Y=1");
        let once = conditionalize(&k, &a, EvidenceWeight(4)).unwrap();
        let twice = conditionalize(&once, &a, EvidenceWeight(4)).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn zero_weight_on_vacuous_state_changes_nothing() {
        let s = s2();
        let vac = Ncf::vacuous(&s);
        let a = eval_formula(&s, "X=0").unwrap();
        let r = conditionalize(&vac, &a, EvidenceWeight(0)).unwrap();
        assert_eq!(r.world_ranks(), vac.world_ranks());
        assert!(!r.believes(&a).unwrap());
        assert!(!r.believes(&a.complement()).unwrap());
    }

    #[test]
    fn conditionalize_rejects_non_contingent_targets() {
        let k = kappa1();
        let w = Proposition::full(k.space());
        assert_eq!(conditionalize(&k, &w, EvidenceWeight(1)).unwrap_err(), Error::NotContingent);
        let e = Proposition::empty(k.space());
        assert_eq!(conditionalize(&k, &e, EvidenceWeight(1)).unwrap_err(), Error::NotContingent);
    }

    #[test]
    fn jeffrey_examples() {
        let k = kappa1();
        let s = k.space().clone();
        let by_x = PartitionField::of_variables(&s, &["X"]).unwrap();
        let lambda = EvidenceNcf::new(by_x.clone(), vec![1, 0]).unwrap();
        let r = jeffrey_conditionalize(&k, &lambda).unwrap();
        assert_eq!(r.world_ranks(), &[1, 3, 0, 2]);
        assert_eq!(r, conditionalize(&k, &f(&k, "X=1"), EvidenceWeight(1)).unwrap());

        let identity = EvidenceNcf::profile_of(&k, &by_x).unwrap();
        assert_eq!(jeffrey_conditionalize(&k, &identity).unwrap(), k);

        let trivial = EvidenceNcf::new(PartitionField::trivial(&s), vec![0]).unwrap();
        assert_eq!(jeffrey_conditionalize(&k, &trivial).unwrap(), k);

        assert_eq!(EvidenceNcf::new(by_x, vec![1, 2]).unwrap_err(), Error::NotNormalized(1));
    }

    #[test]
    fn jeffrey_rejects_foreign_fields() {
        let k = kappa1();
        let other = Space::binary(3).unwrap();
        let lambda = EvidenceNcf::new(PartitionField::trivial(&other), vec![0]).unwrap();
        assert_eq!(jeffrey_conditionalize(&k, &lambda).unwrap_err(), Error::SpaceMismatch);
    }

    #[test]
    fn result_field_is_the_common_refinement() {
        let s = s2();
        let k = Ncf::new(PartitionField::of_variables(&s, &["X"]).unwrap(), &[0, 2]).unwrap();
        let r = conditionalize(&k, &eval_formula(&s, "Y=1").unwrap(), EvidenceWeight(3)).unwrap();
        assert_eq!(r.field(), &PartitionField::discrete(&s));
        assert_eq!(r.world_ranks(), &[3, 0, 5, 2]);
    }

    #[test]
    fn sequences() {
        let k = kappa1();
        let step = |src: &str, m| RevisionStep::Conditionalize {
            target: f(&k, src),
            weight: EvidenceWeight(m),
        };
        let run = revision_sequence(&k, &[step("X=1", 1), step("X=0", 2)]).unwrap();
        assert_eq!(run.result.world_ranks(), &[0, 2, 2, 4]);
        assert_eq!(run.result.firmness(&f(&k, "X=0")).unwrap(), Firmness(2));
        assert_eq!(run.trace.len(), 2);
        assert_eq!(run.trace[0].core, Proposition::from_worlds(k.space(), [2]));
        assert_eq!(run.trace[0].firmness, vec![(f(&k, "X=1"), Firmness(1))]);

        assert_eq!(revision_sequence(&k, &[]).unwrap().result, k);

        let a = revision_sequence(&k, &[step("Y=1", 2), step("Y=1", 5)]).unwrap();
        let b = revision_sequence(&k, &[step("Y=1", 5)]).unwrap();
        assert_eq!(a.result, b.result);
    }

    #[test]
    fn failing_step_reports_its_index() {
        let k = kappa1();
        let steps = vec![
            RevisionStep::Conditionalize { target: f(&k, "X=1"), weight: EvidenceWeight(1) },
            RevisionStep::Conditionalize { target: Proposition::full(k.space()), weight: EvidenceWeight(1) },
        ];
        match revision_sequence(&k, &steps).unwrap_err() {
            Error::RevisionStep { index, source } => {
                assert_eq!(index, 1);
                assert_eq!(*source, Error::NotContingent);
            }
            e => panic!("{e:?}"),
        }
    }
}
