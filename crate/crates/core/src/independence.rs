//! Independence and conditional independence of fields with respect to an
//! NCF, and the union and contraction laws built on them.
//!
//! Two fields are independent when `κ(B∩C) = κ(B) + κ(C)` for every pair of
//! non-empty members, conditionally on D when the same holds for ranks
//! conditional on D. With TOP as the rank of ∅, a pair of members with empty
//! intersection (inside D) makes the fields dependent.
//!
//! Up to [`EXHAUSTIVE_ATOM_LIMIT`] atoms per field every pair of members is
//! checked. Beyond that, all atom pairs plus a deterministic sample of member
//! pairs are checked. Atom-pair additivity is computed in both regimes and
//! reported alongside, so a disagreement would be visible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ncf::Ncf;
use crate::rank::Rank;
use crate::space::{PartitionField, Proposition, Space};

pub const EXHAUSTIVE_ATOM_LIMIT: usize = 12;
const SAMPLED_MEMBER_PAIRS: usize = 4096;
const SAMPLE_SEED: u64 = 0x6e63_665f_696e_6470;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Every pair of non-empty members was checked.
    Exhaustive,
    /// All atom pairs plus this many sampled member pairs.
    Sampled(usize),
}

/// A pair of members violating additivity, conditional on `given`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityWitness {
    pub b: Proposition,
    pub c: Proposition,
    pub given: Proposition,
    /// `κ(B∩C|D)`
    pub joint: Rank,
    /// `κ(B|D) + κ(C|D)`
    pub sum: Rank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub independent: bool,
    pub regime: Regime,
    /// Verdict of the atom-pair check alone.
    pub atom_pairs_independent: bool,
    pub witness: Option<AdditivityWitness>,
}

impl Verdict {
    pub fn regimes_agree(&self) -> bool {
        self.independent == self.atom_pairs_independent
    }
}

/// Additivity tables for one conditioning proposition D.
struct Tables {
    /// `κ(B_i ∩ C_j ∩ D)`
    cells: Vec<Vec<Rank>>,
    /// `κ(B_i ∩ D)`
    rows: Vec<Rank>,
    /// `κ(C_j ∩ D)`
    cols: Vec<Rank>,
    /// `κ(D)`, finite
    given: Rank,
}

impl Tables {
    fn build(kappa: &Ncf, b: &PartitionField, c: &PartitionField, d: &Proposition) -> Self {
        let mut cells = vec![vec![Rank::Top; c.atom_count()]; b.atom_count()];
        let mut rows = vec![Rank::Top; b.atom_count()];
        let mut cols = vec![Rank::Top; c.atom_count()];
        for w in d.worlds() {
            let r = Rank::Finite(kappa.world_rank(w));
            let (i, j) = (b.atom_of(w), c.atom_of(w));
            cells[i][j] = cells[i][j].min(r);
            rows[i] = rows[i].min(r);
            cols[j] = cols[j].min(r);
        }
        Tables {
            cells,
            rows,
            cols,
            given: kappa.rank_unchecked(d),
        }
    }

    /// `κ(B∩C∩D) + κ(D) = κ(B∩D) + κ(C∩D)`, which is additivity of the
    /// conditional ranks without subtracting.
    fn additive(&self, joint: Rank, row: Rank, col: Rank) -> bool {
        joint + self.given == row + col
    }

    fn first_atom_failure(&self) -> Option<(usize, usize)> {
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &joint) in row.iter().enumerate() {
                if !self.additive(joint, self.rows[i], self.cols[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Every pair of non-empty member masks, B-mask major.
    fn first_member_failure(&self) -> Option<(u64, u64)> {
        let (nb, nc) = (self.rows.len(), self.cols.len());
        let b_masks = 1u64 << nb;
        let c_masks = 1u64 << nc;
        // column minima of the cell table over the atoms in each B-mask
        let mut col_min: Vec<Vec<Rank>> = vec![vec![Rank::Top; nc]; b_masks as usize];
        let mut row_min = vec![Rank::Top; b_masks as usize];
        let mut col_rank = vec![Rank::Top; c_masks as usize];
        for cm in 1..c_masks {
            let low = cm.trailing_zeros() as usize;
            col_rank[cm as usize] = col_rank[(cm & (cm - 1)) as usize].min(self.cols[low]);
        }
        let mut joint = vec![Rank::Top; c_masks as usize];
        for bm in 1..b_masks {
            let low = bm.trailing_zeros() as usize;
            let prev = (bm & (bm - 1)) as usize;
            row_min[bm as usize] = row_min[prev].min(self.rows[low]);
            let mins: Vec<Rank> = (0..nc)
                .map(|j| col_min[prev][j].min(self.cells[low][j]))
                .collect();
            for cm in 1..c_masks {
                let lc = cm.trailing_zeros() as usize;
                joint[cm as usize] = joint[(cm & (cm - 1)) as usize].min(mins[lc]);
                if !self.additive(joint[cm as usize], row_min[bm as usize], col_rank[cm as usize]) {
                    return Some((bm, cm));
                }
            }
            col_min[bm as usize] = mins;
        }
        None
    }

    /// Random member pairs as boolean atom selections.
    fn first_sampled_failure(&self, samples: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let pick = |rng: &mut ChaCha8Rng, n: usize| -> Vec<usize> {
            loop {
                let chosen: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if !chosen.is_empty() {
                    return chosen;
                }
            }
        };
        for _ in 0..samples {
            let bs = pick(&mut rng, self.rows.len());
            let cs = pick(&mut rng, self.cols.len());
            let joint = bs
                .iter()
                .flat_map(|&i| cs.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.cells[i][j])
                .min()
                .unwrap_or(Rank::Top);
            let row = bs.iter().map(|&i| self.rows[i]).min().unwrap_or(Rank::Top);
            let col = cs.iter().map(|&j| self.cols[j]).min().unwrap_or(Rank::Top);
            if !self.additive(joint, row, col) {
                return Some((bs, cs));
            }
        }
        None
    }
}

fn union_of(field: &PartitionField, atoms: impl IntoIterator<Item = usize>) -> Proposition {
    atoms
        .into_iter()
        .fold(Proposition::empty(field.space()), |acc, i| &acc | &field.atoms()[i])
}

fn mask_atoms(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn witness(kappa: &Ncf, b: Proposition, c: Proposition, d: &Proposition) -> AdditivityWitness {
    let cond = |x: &Proposition| kappa.cond_rank(x, d).expect("D is non-empty");
    AdditivityWitness {
        joint: cond(&(&b & &c)),
        sum: cond(&b) + cond(&c),
        b,
        c,
        given: d.clone(),
    }
}

fn check_given(kappa: &Ncf, bf: &PartitionField, cf: &PartitionField, d: &Proposition) -> Verdict {
    let tables = Tables::build(kappa, bf, cf, d);
    let atom_failure = tables.first_atom_failure();
    let atom_pairs_independent = atom_failure.is_none();
    let atom_witness = || {
        atom_failure.map(|(i, j)| {
            witness(kappa, bf.atoms()[i].clone(), cf.atoms()[j].clone(), d)
        })
    };
    if bf.atom_count() <= EXHAUSTIVE_ATOM_LIMIT && cf.atom_count() <= EXHAUSTIVE_ATOM_LIMIT {
        let failure = tables.first_member_failure();
        Verdict {
            independent: failure.is_none(),
            regime: Regime::Exhaustive,
            atom_pairs_independent,
            witness: failure.map(|(bm, cm)| {
                witness(kappa, union_of(bf, mask_atoms(bm)), union_of(cf, mask_atoms(cm)), d)
            }),
        }
    } else {
        let witness = atom_witness().or_else(|| {
            tables
                .first_sampled_failure(SAMPLED_MEMBER_PAIRS)
                .map(|(bs, cs)| witness(kappa, union_of(bf, bs), union_of(cf, cs), d))
        });
        Verdict {
            independent: witness.is_none(),
            regime: Regime::Sampled(SAMPLED_MEMBER_PAIRS),
            atom_pairs_independent,
            witness,
        }
    }
}

fn check_fields(kappa: &Ncf, fields: &[&PartitionField]) -> Result<()> {
    for f in fields {
        f.same_space(kappa.space())?;
    }
    Ok(())
}

/// `κ(B∩C) = κ(B) + κ(C)` for all non-empty `B ∈ 𝔅`, `C ∈ 𝒞`.
pub fn independent(kappa: &Ncf, b: &PartitionField, c: &PartitionField) -> Result<Verdict> {
    check_fields(kappa, &[b, c])?;
    Ok(check_given(kappa, b, c, &Proposition::full(kappa.space())))
}

/// `κ(B∩C|D) = κ(B|D) + κ(C|D)` for all non-empty members.
pub fn cond_independent_on_prop(
    kappa: &Ncf,
    b: &PartitionField,
    c: &PartitionField,
    d: &Proposition,
) -> Result<Verdict> {
    check_fields(kappa, &[b, c])?;
    b.same_space(d.space())?;
    if d.is_empty() {
        return Err(Error::EmptyProposition);
    }
    Ok(check_given(kappa, b, c, d))
}

/// Conditional independence on every atom of `d`. The returned verdict is
/// that of the first failing atom, or of the last atom when all pass.
pub fn cond_independent_on_field(
    kappa: &Ncf,
    b: &PartitionField,
    c: &PartitionField,
    d: &PartitionField,
) -> Result<Verdict> {
    check_fields(kappa, &[b, c, d])?;
    let mut last = None;
    let mut all_atom_pairs = true;
    let mut regime = Regime::Exhaustive;
    for atom in d.atoms() {
        let mut v = check_given(kappa, b, c, atom);
        all_atom_pairs &= v.atom_pairs_independent;
        if let Regime::Sampled(_) = v.regime {
            regime = v.regime;
        }
        if !v.independent {
            v.regime = regime;
            return Ok(v);
        }
        last = Some(v);
    }
    let mut v = last.expect("fields have at least one atom");
    v.atom_pairs_independent = all_atom_pairs;
    v.regime = regime;
    Ok(v)
}

/// Independence of two contingent propositions via their four-member fields.
pub fn independent_props(kappa: &Ncf, b: &Proposition, c: &Proposition) -> Result<Verdict> {
    let bf = PartitionField::of_proposition(b)?;
    let cf = PartitionField::of_proposition(c)?;
    independent(kappa, &bf, &cf)
}

/// Outcome of checking the union law on one triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnionLawCheck {
    /// A and B disjoint, and A independent of C.
    pub proviso_met: bool,
    pub a_indep_c: bool,
    pub b_indep_c: bool,
    pub union_indep_c: bool,
}

impl UnionLawCheck {
    /// `B ⟂ C ⟺ A∪B ⟂ C`
    pub fn holds(&self) -> bool {
        self.b_indep_c == self.union_indep_c
    }

    /// The law itself: the proviso implies the biconditional.
    pub fn law_satisfied(&self) -> bool {
        !self.proviso_met || self.holds()
    }
}

pub fn check_union_law(
    kappa: &Ncf,
    a: &Proposition,
    b: &Proposition,
    c: &Proposition,
) -> Result<UnionLawCheck> {
    let ab = a.try_union(b)?;
    for p in [a, b, &ab, c] {
        p.require_contingent()?;
    }
    let a_indep_c = independent_props(kappa, a, c)?.independent;
    Ok(UnionLawCheck {
        proviso_met: a.is_disjoint(b) && a_indep_c,
        a_indep_c,
        b_indep_c: independent_props(kappa, b, c)?.independent,
        union_indep_c: independent_props(kappa, &ab, c)?.independent,
    })
}

/// A triple showing that the union law needs its disjointness proviso.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvisoCounterexample {
    pub kappa: Ncf,
    pub a: Proposition,
    pub b: Proposition,
    pub c: Proposition,
}

/// Searches spaces of 1..=`max_binary_vars` binary variables, smallest first,
/// over rank vectors with entries up to `max_rank` in lexicographic order, for
/// `A ⟂ C`, `B ⟂ C`, `A∩B ≠ ∅` and `A∪B` not independent of C.
pub fn find_proviso_counterexample(
    max_binary_vars: usize,
    max_rank: u32,
) -> Result<Option<ProvisoCounterexample>> {
    if max_binary_vars > 3 || max_rank > 3 {
        return Err(Error::BoundTooLarge(format!(
            "{max_binary_vars} binary variables with ranks up to {max_rank} (limit: 3 and 3)"
        )));
    }
    for k in 1..=max_binary_vars {
        let space = Space::binary(k)?;
        if let Some(found) = find_proviso_counterexample_in(&space, max_rank)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// The same search restricted to one space with at most 8 worlds.
pub fn find_proviso_counterexample_in(
    space: &std::sync::Arc<Space>,
    max_rank: u32,
) -> Result<Option<ProvisoCounterexample>> {
    let n = space.world_count();
    if n > 8 {
        return Err(Error::BoundTooLarge(format!("{n} worlds (limit: 8)")));
    }
    let contingent: Vec<Proposition> = crate::space::all_propositions(space)?
        .into_iter()
        .filter(Proposition::is_contingent)
        .collect();
    if contingent.is_empty() {
        return Ok(None);
    }
    let mut ranks = vec![0u32; n];
    loop {
        if ranks.contains(&0) {
            let kappa = Ncf::from_world_ranks(space, ranks.clone())?;
            if let Some(found) = search_triples(&kappa, &contingent)? {
                return Ok(Some(found));
            }
        }
        // odometer, last world fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if ranks[i] < max_rank {
                ranks[i] += 1;
                break;
            }
            ranks[i] = 0;
        }
    }
}

fn search_triples(kappa: &Ncf, contingent: &[Proposition]) -> Result<Option<ProvisoCounterexample>> {
    let m = contingent.len();
    // pairwise independence, filled lazily
    let mut memo: Vec<Option<bool>> = vec![None; m * m];
    let mut indep = |x: usize, y: usize| -> Result<bool> {
        if let Some(v) = memo[x * m + y] {
            return Ok(v);
        }
        let v = independent_props(kappa, &contingent[x], &contingent[y])?.independent;
        memo[x * m + y] = Some(v);
        Ok(v)
    };
    let index_of = |p: &Proposition| contingent.iter().position(|q| q == p);
    for ai in 0..m {
        for bi in 0..m {
            let (a, b) = (&contingent[ai], &contingent[bi]);
            if a.is_disjoint(b) {
                continue;
            }
            let Some(ui) = index_of(&(a | b)) else { continue };
            for ci in 0..m {
                if indep(ai, ci)? && indep(bi, ci)? && !indep(ui, ci)? {
                    return Ok(Some(ProvisoCounterexample {
                        kappa: kappa.clone(),
                        a: a.clone(),
                        b: b.clone(),
                        c: contingent[ci].clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Premises and conclusion of the contraction law for variable sets J, K, L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionCheck {
    /// `𝒜_J ⟂ 𝒜_K | 𝒜_L`
    pub j_k_given_l: bool,
    /// `𝒜_J ⟂ 𝒜_L`
    pub j_l: bool,
    /// `𝒜_J ⟂ 𝒜_L | 𝒜_K`
    pub j_l_given_k: bool,
    /// `𝒜_J ⟂ 𝒜_{K∪L}`
    pub conclusion: bool,
}

impl ContractionCheck {
    pub fn premises(&self) -> bool {
        self.j_k_given_l && (self.j_l || self.j_l_given_k)
    }

    pub fn law_satisfied(&self) -> bool {
        !self.premises() || self.conclusion
    }
}

pub fn check_contraction_law<S: AsRef<str>>(
    kappa: &Ncf,
    j: &[S],
    k: &[S],
    l: &[S],
) -> Result<ContractionCheck> {
    let space = kappa.space();
    let names = |vs: &[S]| -> Vec<String> { vs.iter().map(|v| v.as_ref().to_string()).collect() };
    let (j, k, l) = (names(j), names(k), names(l));
    let mut seen = std::collections::BTreeSet::new();
    for v in j.iter().chain(&k).chain(&l) {
        space.variable_index(v)?;
        if !seen.insert(v.clone()) {
            return Err(Error::OverlappingVariables);
        }
    }
    let fj = PartitionField::of_variables(space, &j)?;
    let fk = PartitionField::of_variables(space, &k)?;
    let fl = PartitionField::of_variables(space, &l)?;
    let kl: Vec<String> = k.iter().chain(&l).cloned().collect();
    let fkl = PartitionField::of_variables(space, &kl)?;
    Ok(ContractionCheck {
        j_k_given_l: cond_independent_on_field(kappa, &fj, &fk, &fl)?.independent,
        j_l: independent(kappa, &fj, &fl)?.independent,
        j_l_given_k: cond_independent_on_field(kappa, &fj, &fl, &fk)?.independent,
        conclusion: independent(kappa, &fj, &fkl)?.independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{all_propositions, eval_formula, Variable};
    use std::sync::Arc;

    fn s2() -> Arc<Space> {
        Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])]).unwrap()
    }

    fn kappa1() -> Ncf {
        Ncf::from_world_ranks(&s2(), vec![0, 2, 1, 3]).unwrap()
    }

    fn xor() -> Ncf {
        Ncf::from_world_ranks(&s2(), vec![0, 1, 1, 0]).unwrap()
    }

    fn field(k: &Ncf, vars: &[&str]) -> PartitionField {
        PartitionField::of_variables(k.space(), vars).unwrap()
    }

    /// Independence by brute force: every pair of non-empty measurable
    /// propositions, ranks computed directly.
    fn oracle(k: &Ncf, b: &PartitionField, c: &PartitionField, d: &Proposition) -> bool {
        let props = all_propositions(k.space()).unwrap();
        let members = |f: &PartitionField| -> Vec<Proposition> {
            props
                .iter()
                .filter(|p| !p.is_empty() && f.is_measurable(p).unwrap())
                .cloned()
                .collect()
        };
        for bm in members(b) {
            for cm in members(c) {
                let lhs = k.cond_rank(&(&bm & &cm), d).unwrap();
                let rhs = k.cond_rank(&bm, d).unwrap() + k.cond_rank(&cm, d).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn unconditional_examples() {
        let k = kappa1();
        let v = independent(&k, &field(&k, &["X"]), &field(&k, &["Y"])).unwrap();
        assert!(v.independent);
        assert_eq!(v.regime, Regime::Exhaustive);
        assert!(v.regimes_agree());
        let t = PartitionField::trivial(k.space());
        for c in [field(&k, &["X"]), field(&k, &["X", "Y"])] {
            assert!(independent(&k, &t, &c).unwrap().independent);
        }

        let x = xor();
        let v = independent(&x, &field(&x, &["X"]), &field(&x, &["Y"])).unwrap();
        assert!(!v.independent);
        let w = v.witness.unwrap();
        assert_ne!(w.joint, w.sum);
    }

    #[test]
    fn xor_witness_matches_the_hand_computation() {
        let x = xor();
        let s = x.space().clone();
        let x0 = eval_formula(&s, "X=0").unwrap();
        let x1 = eval_formula(&s, "X=1").unwrap();
        let y1 = eval_formula(&s, "Y=1").unwrap();
        // X=1, Y=1 is additive (0 = 0 + 0); X=0, Y=1 is not (1 ≠ 0 + 0)
        assert_eq!(x.rank(&(&x1 & &y1)).unwrap(), x.rank(&x1).unwrap() + x.rank(&y1).unwrap());
        assert_eq!(x.rank(&(&x0 & &y1)).unwrap(), Rank::Finite(1));
        assert_eq!(x.rank(&x0).unwrap() + x.rank(&y1).unwrap(), Rank::ZERO);
        assert!(!independent_props(&x, &x1, &y1).unwrap().independent);
    }

    #[test]
    fn conditional_on_propositions() {
        let k = kappa1();
        let (fx, fy) = (field(&k, &["X"]), field(&k, &["Y"]));
        let w = Proposition::full(k.space());
        assert!(cond_independent_on_prop(&k, &fx, &fy, &w).unwrap().independent);
        for world in 0..4 {
            let d = Proposition::from_worlds(k.space(), [world]);
            assert!(cond_independent_on_prop(&k, &fx, &fy, &d).unwrap().independent);
            assert!(oracle(&k, &fx, &fy, &d));
        }
        let x = xor();
        let x0 = eval_formula(x.space(), "X=0").unwrap();
        assert!(cond_independent_on_prop(&x, &fx, &fy, &x0).unwrap().independent);
        assert_eq!(
            cond_independent_on_prop(&k, &fx, &fy, &Proposition::empty(k.space())).unwrap_err(),
            Error::EmptyProposition
        );
    }

    #[test]
    fn conditional_on_fields() {
        let k = kappa1();
        let (fx, fy) = (field(&k, &["X"]), field(&k, &["Y"]));
        let t = PartitionField::trivial(k.space());
        assert_eq!(
            cond_independent_on_field(&k, &fx, &fy, &t).unwrap().independent,
            independent(&k, &fx, &fy).unwrap().independent
        );
        assert!(cond_independent_on_field(&k, &fx, &fy, &fy).unwrap().independent);

        // κ(x,y,z) = f(x) + g(y,z)
        let s = Space::binary(3).unwrap();
        let f = [0, 2];
        let g = [[1, 0], [3, 2]];
        let ranks = (0..8)
            .map(|w| {
                let a = s.assignment(w);
                f[a[0]] + g[a[1]][a[2]]
            })
            .collect::<Vec<u32>>();
        let min = *ranks.iter().min().unwrap();
        let k3 = Ncf::from_world_ranks(&s, ranks.iter().map(|r| r - min).collect()).unwrap();
        let v = cond_independent_on_field(
            &k3,
            &field(&k3, &["X1"]),
            &field(&k3, &["X2"]),
            &field(&k3, &["X3"]),
        )
        .unwrap();
        assert!(v.independent);
    }

    #[test]
    fn proposition_independence() {
        let k = kappa1();
        let s = k.space().clone();
        let x1 = eval_formula(&s, "X=1").unwrap();
        let y1 = eval_formula(&s, "Y=1").unwrap();
        assert!(independent_props(&k, &x1, &y1).unwrap().independent);
        let x0 = eval_formula(&s, "X=0").unwrap();
        assert!(!independent_props(&k, &x0, &x1).unwrap().independent);
        // {∅, B, −B, W} contains B and −B, whose intersection has rank TOP
        let vac = Ncf::vacuous(&s);
        let v = independent_props(&vac, &x1, &x1).unwrap();
        assert!(!v.independent);
        assert_eq!(v.witness.unwrap().joint, Rank::Top);
        assert_eq!(
            independent_props(&k, &Proposition::full(&s), &y1).unwrap_err(),
            Error::NotContingent
        );
    }

    #[test]
    fn symmetric() {
        for k in [kappa1(), xor()] {
            let (fx, fy) = (field(&k, &["X"]), field(&k, &["Y"]));
            for d in all_propositions(k.space()).unwrap().into_iter().filter(|d| !d.is_empty()) {
                assert_eq!(
                    cond_independent_on_prop(&k, &fx, &fy, &d).unwrap().independent,
                    cond_independent_on_prop(&k, &fy, &fx, &d).unwrap().independent
                );
            }
        }
    }

    #[test]
    fn agrees_with_the_brute_force_oracle() {
        let s = s2();
        let fields = [
            PartitionField::trivial(&s),
            PartitionField::of_variables(&s, &["X"]).unwrap(),
            PartitionField::of_variables(&s, &["Y"]).unwrap(),
            PartitionField::of_proposition(&Proposition::from_worlds(&s, [0, 3])).unwrap(),
            PartitionField::discrete(&s),
        ];
        let props = all_propositions(&s).unwrap();
        for ranks in [[0, 2, 1, 3], [0, 1, 1, 0], [0, 0, 0, 0], [1, 0, 2, 2], [0, 3, 3, 1]] {
            let k = Ncf::from_world_ranks(&s, ranks.to_vec()).unwrap();
            for b in &fields {
                for c in &fields {
                    for d in props.iter().filter(|d| !d.is_empty()) {
                        let v = cond_independent_on_prop(&k, b, c, d).unwrap();
                        assert_eq!(v.independent, oracle(&k, b, c, d), "{ranks:?} {d:?}");
                        assert!(v.regimes_agree());
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_members_force_dependence() {
        let k = kappa1();
        let x0 = eval_formula(k.space(), "X=0").unwrap();
        let fx = field(&k, &["X"]);
        let v = independent(&k, &fx, &fx).unwrap();
        assert!(!v.independent);
        assert!(independent_props(&k, &x0, &x0.complement()).map(|v| !v.independent).unwrap());
    }

    #[test]
    fn large_fields_use_the_sampled_regime() {
        let s = Space::build(vec![
            Variable::new("A", (0..13).map(|i| i.to_string()).collect::<Vec<_>>()),
            Variable::new("B", ["0", "1"]),
        ])
        .unwrap();
        let ranks = (0..26).map(|w| (s.value_of(w, 0) % 3 + 2 * s.value_of(w, 1)) as u32).collect();
        let k = Ncf::from_world_ranks(&s, ranks).unwrap();
        let fa = PartitionField::of_variables(&s, &["A"]).unwrap();
        let fb = PartitionField::of_variables(&s, &["B"]).unwrap();
        let v = independent(&k, &fa, &fb).unwrap();
        assert_eq!(v.regime, Regime::Sampled(SAMPLED_MEMBER_PAIRS));
        assert!(v.independent);
        assert!(v.regimes_agree());

        let ranks = (0..26).map(|w| u32::from(s.value_of(w, 0) == 5 && s.value_of(w, 1) == 1)).collect();
        let k = Ncf::from_world_ranks(&s, ranks).unwrap();
        assert!(!independent(&k, &fa, &fb).unwrap().independent);
    }

    #[test]
    fn union_law_examples() {
        let k = kappa1();
        let s = k.space().clone();
        let a = eval_formula(&s, "X=0").unwrap();
        let b = Proposition::from_worlds(&s, [2]);
        let c = eval_formula(&s, "Y=1").unwrap();
        let check = check_union_law(&k, &a, &b, &c).unwrap();
        assert!(check.proviso_met);
        assert!(check.law_satisfied());

        let same = check_union_law(&k, &a, &a, &c).unwrap();
        assert!(!same.proviso_met);

        // A ∪ B = W
        assert_eq!(
            check_union_law(&k, &a, &a.complement(), &c).unwrap_err(),
            Error::NotContingent
        );
    }

    // Beyond four worlds the union law can fail even with its proviso met:
    // every cell is non-empty, A ⟂ C and B ⟂ C, yet
    // κ(−(A∪B) ∩ −C) = 5 ≠ κ(−(A∪B)) + κ(−C) = 2 + 2.
    #[test]
    fn union_law_fails_on_six_worlds() {
        let s = Space::build(vec![Variable::new("V", ["0", "1", "2", "3", "4", "5"])]).unwrap();
        let k = Ncf::from_world_ranks(&s, vec![2, 4, 5, 0, 2, 2]).unwrap();
        let a = Proposition::from_worlds(&s, [0, 3]);
        let b = Proposition::from_worlds(&s, [1, 5]);
        let c = Proposition::from_worlds(&s, [3, 4, 5]);
        let check = check_union_law(&k, &a, &b, &c).unwrap();
        assert!(check.proviso_met && check.b_indep_c && !check.union_indep_c);
        assert!(!check.law_satisfied());
        let w = independent_props(&k, &(&a | &b), &c).unwrap().witness.unwrap();
        assert_eq!((w.joint, w.sum), (Rank::Finite(5), Rank::Finite(4)));
    }

    #[test]
    fn proviso_counterexample_search() {
        assert_eq!(find_proviso_counterexample(1, 3).unwrap(), None);
        let found = find_proviso_counterexample(3, 3).unwrap().unwrap();
        // smallest space, lexicographically first rank vector: the vacuous NCF on 4 worlds
        assert_eq!(found.kappa.world_ranks(), &[0, 0, 0, 0]);
        assert_eq!(found.a.worlds().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(found.b.worlds().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(found.c.worlds().collect::<Vec<_>>(), vec![1, 2]);
        let check = check_union_law(&found.kappa, &found.a, &found.b, &found.c).unwrap();
        assert!(check.a_indep_c && check.b_indep_c && !check.union_indep_c);

        let one = Space::build(vec![Variable::new("X", ["a"])]).unwrap();
        assert_eq!(find_proviso_counterexample_in(&one, 3).unwrap(), None);
        assert!(matches!(find_proviso_counterexample(4, 3), Err(Error::BoundTooLarge(_))));
    }

    #[test]
    fn contraction_examples() {
        let s = Space::binary(3).unwrap();
        let (f, g, h) = ([0, 1], [2, 0], [0, 3]);
        let ranks = (0..8)
            .map(|w| {
                let a = s.assignment(w);
                f[a[0]] + g[a[1]] + h[a[2]]
            })
            .collect();
        let k = Ncf::from_world_ranks(&s, ranks).unwrap();
        let c = check_contraction_law(&k, &["X1"], &["X2"], &["X3"]).unwrap();
        assert!(c.premises() && c.conclusion);

        let c = check_contraction_law::<&str>(&k, &[], &["X2"], &["X3"]).unwrap();
        assert!(c.conclusion && c.law_satisfied());

        assert_eq!(
            check_contraction_law(&k, &["X1"], &["X1"], &["X3"]).unwrap_err(),
            Error::OverlappingVariables
        );
        assert!(check_contraction_law(&k, &["Q"], &["X1"], &["X3"]).is_err());
    }
}
