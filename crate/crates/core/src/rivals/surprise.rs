use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ncf::Ncf;
use crate::rank::Rank;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::{Proposition, Space, WorldSet};

/// Largest space for which an arbitrary per-proposition table is accepted.
pub const SURPRISE_TABLE_MAX_WORLDS: usize = 16;
/// Largest space on which the axioms are checked over every pair.
pub const SURPRISE_EXHAUSTIVE_MAX_WORLDS: usize = 8;
const SAMPLED_PAIRS: usize = 4096;
const SAMPLE_SEED: u64 = 0x7368_6163_6b6c_6521;

pub const EMPTY_MAXIMAL: &str = "empty-maximal";
pub const COMPLEMENT_ZERO: &str = "complement-zero";
pub const UNION_MIN: &str = "union-min";
pub const UNIT_RANGE: &str = "unit-range";

#[derive(Clone, Debug, PartialEq)]
enum Repr<T> {
    /// `y(A) = min_{w∈A} y(w)` for non-empty A.
    WorldMin { worlds: Vec<T>, empty: T },
    /// One value per proposition, indexed by world mask.
    Table(Vec<T>),
}

/// A grading of propositions by potential surprise in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurpriseFunction<T> {
    space: Arc<Space>,
    repr: Repr<T>,
}

impl<T: Scalar> SurpriseFunction<T> {
    /// Surprise given per world, extended to propositions by minimum, with
    /// the value of ∅ set explicitly.
    pub fn from_worlds(space: &Arc<Space>, worlds: Vec<T>, empty: T) -> Result<Self> {
        if worlds.len() != space.world_count() {
            return Err(Error::RankCount {
                expected: space.world_count(),
                actual: worlds.len(),
            });
        }
        Ok(SurpriseFunction {
            space: space.clone(),
            repr: Repr::WorldMin { worlds, empty },
        })
    }

    /// Arbitrary values per proposition, with no structure assumed.
    pub fn from_fn(space: &Arc<Space>, f: impl Fn(&Proposition) -> T) -> Result<Self> {
        let n = space.world_count();
        if n > SURPRISE_TABLE_MAX_WORLDS {
            return Err(Error::BoundTooLarge(format!(
                "{n} worlds exceed the surprise table limit of {SURPRISE_TABLE_MAX_WORLDS}"
            )));
        }
        let table = (0..1u64 << n)
            .map(|m| f(&Proposition::new(space, WorldSet::from_mask(n, m)).expect("mask fits")))
            .collect();
        Ok(SurpriseFunction {
            space: space.clone(),
            repr: Repr::Table(table),
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn value(&self, a: &Proposition) -> Result<T> {
        if !Space::same(&self.space, a.space()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(match &self.repr {
            Repr::WorldMin { worlds, empty } => a
                .worlds()
                .map(|w| &worlds[w])
                .fold(None::<&T>, |acc, v| match acc {
                    Some(m) if m <= v => Some(m),
                    _ => Some(v),
                })
                .unwrap_or(empty)
                .clone(),
            Repr::Table(t) => {
                t[a.members().to_mask().expect("tables only exist for small spaces") as usize].clone()
            }
        })
    }

    /// Values of all propositions by mask.
    fn table(&self) -> Vec<T> {
        match &self.repr {
            Repr::Table(t) => t.clone(),
            Repr::WorldMin { worlds, empty } => {
                let size = 1usize << worlds.len();
                let mut t: Vec<T> = Vec::with_capacity(size);
                t.push(empty.clone());
                for m in 1..size {
                    let low = m.trailing_zeros() as usize;
                    let rest = m & (m - 1);
                    let v = if rest == 0 || worlds[low] < t[rest] {
                        worlds[low].clone()
                    } else {
                        t[rest].clone()
                    };
                    t.push(v);
                }
                t
            }
        }
    }
}

fn min_of<T: Scalar>(a: &T, b: &T) -> T {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Checks `y(∅) = 1`, `min(y(A), y(−A)) = 0`, `y(A∪B) = min(y(A), y(B))` and
/// the unit range, over every proposition and pair on small spaces and over
/// a fixed-seed sample otherwise.
pub fn check_surprise_axioms<T: Scalar>(y: &SurpriseFunction<T>) -> Report {
    let space = y.space();
    let n = space.world_count();
    let mut report = Report::new("surprise axioms");
    let zero = T::zero();
    let one = T::one();
    let describe = |a: &Proposition| a.describe();

    let empty = Proposition::empty(space);
    let ye = y.value(&empty).expect("same space");
    report.record(EMPTY_MAXIMAL, ye == one, || format!("y(∅) = {ye}"));

    if n <= SURPRISE_EXHAUSTIVE_MAX_WORLDS {
        let t = y.table();
        let full = (1usize << n) - 1;
        let prop = |m: usize| Proposition::new(space, WorldSet::from_mask(n, m as u64)).expect("mask fits");
        for m in 0..=full {
            let v = &t[m];
            report.record(UNIT_RANGE, *v >= zero && *v <= one, || {
                format!("y({}) = {v}", describe(&prop(m)))
            });
            let c = &t[full & !m];
            report.record(COMPLEMENT_ZERO, min_of(v, c) == zero, || {
                format!("A = {}: y(A) = {v}, y(−A) = {c}", describe(&prop(m)))
            });
        }
        // Positions among the sorted distinct values preserve order and
        // equality, so the union law can be checked on integers.
        let mut distinct: Vec<&T> = t.iter().collect();
        distinct.sort_by(|x, y| x.partial_cmp(y).expect("scalars are ordered"));
        distinct.dedup();
        let pos: Vec<usize> = t
            .iter()
            .map(|v| distinct.partition_point(|d| *d < v))
            .collect();
        let union = report.check_mut(UNION_MIN);
        for a in 0..=full {
            for b in a..=full {
                let u = &t[a | b];
                union.record(pos[a | b] == pos[a].min(pos[b]), || {
                    format!(
                        "A = {}, B = {}: y(A∪B) = {u}, y(A) = {}, y(B) = {}",
                        describe(&prop(a)),
                        describe(&prop(b)),
                        t[a],
                        t[b]
                    )
                });
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let random = |rng: &mut ChaCha8Rng| {
            Proposition::new(space, WorldSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))))
                .expect("indices in range")
        };
        for _ in 0..SAMPLED_PAIRS {
            let (a, b) = (random(&mut rng), random(&mut rng));
            let (ya, yb) = (y.value(&a).expect("same space"), y.value(&b).expect("same space"));
            let yc = y.value(&a.complement()).expect("same space");
            let yu = y.value(&(&a | &b)).expect("same space");
            report.record(UNIT_RANGE, ya >= zero && ya <= one, || format!("y({}) = {ya}", describe(&a)));
            report.record(COMPLEMENT_ZERO, min_of(&ya, &yc) == zero, || {
                format!("A = {}: y(A) = {ya}, y(−A) = {yc}", describe(&a))
            });
            report.record(UNION_MIN, yu == min_of(&ya, &yb), || {
                format!("A = {}, B = {}: y(A∪B) = {yu}", describe(&a), describe(&b))
            });
        }
        report
            .notes
            .push(format!("{SAMPLED_PAIRS} sampled pairs over {n} worlds"));
    }
    report
}

/// `n ↦ n / (n+1)`: strictly increasing, never reaching 1.
pub fn default_scale<T: Scalar>(n: u32) -> T {
    T::bounded_ratio(n)
}

/// `y(A) = scale(κ(A))` for non-empty A and `y(∅) = 1`. The scale must send
/// 0 to 0 and increase strictly below 1 on every rank that κ uses.
pub fn ncf_to_surprise<T: Scalar>(kappa: &Ncf, scale: impl Fn(u32) -> T) -> Result<SurpriseFunction<T>> {
    let top = kappa.max_rank().saturating_add(1);
    let mut prev: Option<T> = None;
    for n in 0..=top {
        let v = scale(n);
        if n == 0 && !v.is_zero() {
            return Err(Error::InvalidScale(format!("scale(0) = {v}, expected 0")));
        }
        if v >= T::one() {
            return Err(Error::InvalidScale(format!("scale({n}) = {v} is not below 1")));
        }
        if let Some(p) = &prev {
            if v <= *p {
                return Err(Error::InvalidScale(format!(
                    "scale is not strictly increasing at {n}: {p} then {v}"
                )));
            }
        }
        prev = Some(v);
    }
    let worlds = kappa.world_ranks().iter().map(|&r| scale(r)).collect();
    SurpriseFunction::from_worlds(kappa.space(), worlds, T::one())
}

/// The conjunction rule `y(A∩B) = max(y(A), y(B|A))` evaluated with the
/// candidate conditional `y(B|A) := scale(κ(B|A))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjunctionGap<T> {
    /// `y(A∩B)`
    pub joint: T,
    /// `y(A)`
    pub antecedent: T,
    /// `scale(κ(B|A))`
    pub conditional: T,
    /// `max(y(A), y(B|A))`
    pub composed: T,
    /// Whether the max rule reproduces `y(A∩B)`.
    pub max_rule_holds: bool,
    /// `κ(A∩B) = κ(A) + κ(B|A)`, the rank counterpart of the rule.
    pub rank_sum_holds: bool,
}

pub fn shackle_conjunction_gap<T: Scalar>(
    y: &SurpriseFunction<T>,
    kappa: &Ncf,
    scale: impl Fn(u32) -> T,
    a: &Proposition,
    b: &Proposition,
) -> Result<ConjunctionGap<T>> {
    a.same_space(b)?;
    let ab = a & b;
    if ab.is_empty() {
        return Err(Error::EmptyProposition);
    }
    let finite = |r: Rank| r.finite().expect("non-empty propositions have finite rank");
    let (k_ab, k_a) = (finite(kappa.rank(&ab)?), finite(kappa.rank(a)?));
    let k_b_a = finite(kappa.cond_rank(b, a)?);
    let joint = y.value(&ab)?;
    let antecedent = y.value(a)?;
    if joint != scale(k_ab) || antecedent != scale(k_a) {
        return Err(Error::InvalidScale("y is not the given scale applied to κ".into()));
    }
    let conditional = scale(k_b_a);
    let composed = if antecedent >= conditional {
        antecedent.clone()
    } else {
        conditional.clone()
    };
    Ok(ConjunctionGap {
        max_rule_holds: composed == joint,
        rank_sum_holds: k_ab == k_a + k_b_a,
        joint,
        antecedent,
        conditional,
        composed,
    })
}
