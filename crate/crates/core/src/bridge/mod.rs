//! Ranks as orders of infinitesimal probabilities.
//!
//! An NCF κ becomes a measure with world weights `c_w · z^{κ(w)}` for a formal
//! infinitesimal z. The rank of a proposition is then the least exponent of
//! its probability, conditional ranks are orders of conditional
//! probabilities, and probabilistic independence implies rank independence.
//! [`verify_correspondence`] checks these correspondences on a given κ.

mod measure;
mod zpoly;

pub use measure::{ncf_to_measure, product_coefficients, OrderMeasure};
pub use zpoly::{ZFraction, ZPoly};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::independence::{cond_independent_on_field, independent};
use crate::ncf::Ncf;
use crate::rank::Rank;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::space::{PartitionField, Proposition, WorldSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BridgeConfig {
    /// Up to this many worlds every proposition and proposition pair is
    /// checked through the subset tables; beyond it pairs are sampled.
    pub exhaustive_max_worlds: usize,
    /// Up to this many worlds the pair checks also go through the public
    /// measure and rank operations and sums are formed explicitly for every
    /// disjoint pair.
    pub arithmetic_max_worlds: usize,
    /// Larger spaces are rejected.
    pub table_max_worlds: usize,
    pub sampled_pairs: usize,
    pub seed: u64,
}

impl Default for BridgeConfig {
    fn default() -> Self {
        BridgeConfig {
            exhaustive_max_worlds: 8,
            arithmetic_max_worlds: 5,
            table_max_worlds: 16,
            sampled_pairs: 512,
            seed: 0x7a5f_6272_6964_6765,
        }
    }
}

pub const ROUND_TRIP: &str = "round-trip";
pub const CONDITIONAL_ORDER: &str = "conditional-order";
pub const SUM_MIN: &str = "sum-min";
pub const CONDITIONING_COMMUTES: &str = "conditioning-commutes";
pub const INDEPENDENCE_TRANSFER: &str = "independence-transfer";
pub const PRODUCT_SUM: &str = "product-sum";
pub const NO_CANCELLATION: &str = "no-cancellation";

/// Weight, order and rank of every proposition, indexed by world mask.
struct Tables<T> {
    weight: Vec<ZPoly<T>>,
    order: Vec<Rank>,
    rank: Vec<Rank>,
}

impl<T: Scalar> Tables<T> {
    fn build(kappa: &Ncf, p: &OrderMeasure<T>) -> Self {
        let n = kappa.space().world_count();
        let size = 1usize << n;
        let mut weight = Vec::with_capacity(size);
        let mut order = Vec::with_capacity(size);
        let mut rank = Vec::with_capacity(size);
        weight.push(ZPoly::zero());
        order.push(Rank::Top);
        rank.push(Rank::Top);
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            let rest = m & (m - 1);
            let w = &weight[rest] + p.world_weight(low);
            order.push(w.order());
            weight.push(w);
            rank.push(rank[rest].min(Rank::Finite(kappa.world_rank(low))));
        }
        Tables {
            weight,
            order,
            rank,
        }
    }
}

/// `a − b` on extended naturals, TOP when `a` is TOP.
fn ratio_order(a: Rank, b: Rank) -> Option<Rank> {
    match a {
        Rank::Top => Some(Rank::Top),
        _ => a.checked_sub(b).ok(),
    }
}

/// Checks the rank/probability correspondences for κ under the measure
/// `ncf_to_measure(κ, coeffs)`.
pub fn verify_correspondence<T: Scalar>(
    kappa: &Ncf,
    coeffs: Option<&[T]>,
    config: &BridgeConfig,
) -> Result<Report> {
    let space = kappa.space().clone();
    let n = space.world_count();
    if n > config.table_max_worlds || n > 20 {
        return Err(Error::BoundTooLarge(format!(
            "{n} worlds exceed the bridge limit of {}",
            config.table_max_worlds.min(20)
        )));
    }
    let p = ncf_to_measure(kappa, coeffs)?;
    let t = Tables::build(kappa, &p);
    let full = (1u64 << n) - 1;
    let prop = |m: u64| Proposition::new(&space, WorldSet::from_mask(n, m)).expect("mask fits");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let exhaustive = n <= config.exhaustive_max_worlds;
    let arithmetic = n <= config.arithmetic_max_worlds;
    let mut report = Report::new("probability bridge");

    let singles: Vec<u64> = if exhaustive {
        (0..=full).collect()
    } else {
        (0..config.sampled_pairs).map(|_| rng.gen_range(0..=full)).collect()
    };
    let pairs: Vec<(u64, u64)> = if exhaustive {
        (0..=full).flat_map(|a| (0..=full).map(move |b| (a, b))).collect()
    } else {
        (0..config.sampled_pairs)
            .map(|_| (rng.gen_range(0..=full), rng.gen_range(0..=full)))
            .collect()
    };

    for &m in &singles {
        let a = prop(m);
        let got = p.measure_order(&a)?;
        let want = kappa.rank(&a)?;
        report.record(ROUND_TRIP, got == want, || {
            format!("A = {}: order {got}, rank {want}", a.describe())
        });
    }

    let check = report.check_mut(CONDITIONAL_ORDER);
    for &(a, b) in &pairs {
        if a == 0 {
            continue;
        }
        let (got, want) = if arithmetic {
            let (pa, pb) = (prop(a), prop(b));
            (Some(p.cond_measure_order(&pb, &pa)?), Some(kappa.cond_rank(&pb, &pa)?))
        } else {
            (
                ratio_order(t.order[(a & b) as usize], t.order[a as usize]),
                ratio_order(t.rank[(a & b) as usize], t.rank[a as usize]),
            )
        };
        check.record(got.is_some() && got == want, || {
            format!(
                "B = {}, A = {}: order {got:?}, rank {want:?}",
                prop(b).describe(),
                prop(a).describe()
            )
        });
    }

    let disjoint: Vec<(u64, u64)> = if arithmetic {
        pairs.iter().copied().filter(|&(a, b)| a & b == 0).collect()
    } else {
        (0..config.sampled_pairs)
            .map(|_| {
                let a = rng.gen_range(0..=full);
                (a, rng.gen_range(0..=full) & !a)
            })
            .collect()
    };
    let check = report.check_mut(SUM_MIN);
    for &(a, b) in &disjoint {
        let (ai, bi, ui) = (a as usize, b as usize, (a | b) as usize);
        let sum = &t.weight[ai] + &t.weight[bi];
        let ok = sum.order() == t.order[ai].min(t.order[bi])
            && sum == t.weight[ui]
            && t.order[ui] == t.rank[ui]
            && t.rank[ui] == t.rank[ai].min(t.rank[bi]);
        check.record(ok, || {
            format!(
                "A = {}, B = {}: order(P(A)+P(B)) = {}, κ(A∪B) = {}",
                prop(a).describe(),
                prop(b).describe(),
                sum.order(),
                t.rank[ui]
            )
        });
    }

    for &m in &singles {
        if m == 0 {
            continue;
        }
        let a = prop(m);
        let orders = p.conditioned_orders(&a)?;
        let part = kappa.part(&a)?;
        let want: Vec<Rank> = (0..n)
            .map(|w| part.get(&w).map_or(Rank::Top, |&r| Rank::Finite(r)))
            .collect();
        report.record(CONDITIONING_COMMUTES, orders == want, || {
            format!("A = {}: orders {orders:?}, A-part {want:?}", a.describe())
        });
    }

    check_independence_transfer(kappa, &p, &t, &mut report)?;

    for (w, weight) in p.weights().iter().enumerate() {
        report.record(NO_CANCELLATION, weight.all_positive(), || {
            format!("world {w} has weight {weight}")
        });
    }
    report
        .notes
        .push("all coefficients are positive, so no sum can cancel a leading term".into());
    report.notes.push(if exhaustive {
        format!("all propositions and pairs over {n} worlds")
    } else {
        format!("{} sampled propositions and pairs over {n} worlds", config.sampled_pairs)
    });
    Ok(report)
}

/// Disjoint pairs `J < K` of non-empty variable sets and every `L` among the
/// remaining variables, by variable index mask.
fn variable_triples(vars: usize) -> Vec<(u32, u32, u32)> {
    let all = (1u32 << vars) - 1;
    let mut out = Vec::new();
    for j in 1..=all {
        for k in (j + 1)..=all {
            if j & k != 0 {
                continue;
            }
            let rest = all & !(j | k);
            let mut l = rest;
            loop {
                out.push((j, k, l));
                if l == 0 {
                    break;
                }
                l = (l - 1) & rest;
            }
        }
    }
    out
}

fn check_independence_transfer<T: Scalar>(
    kappa: &Ncf,
    p: &OrderMeasure<T>,
    t: &Tables<T>,
    report: &mut Report,
) -> Result<()> {
    let space = kappa.space();
    let names: Vec<&str> = space.variables().iter().map(|v| v.name()).collect();
    let field = |mask: u32| {
        let chosen: Vec<&str> = (0..names.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| names[i])
            .collect();
        PartitionField::of_variables(space, &chosen)
    };
    let masks = |f: &PartitionField| -> Vec<usize> {
        f.atoms()
            .iter()
            .map(|a| a.members().to_mask().expect("bridge spaces fit in a mask") as usize)
            .collect()
    };
    let triples = variable_triples(names.len());
    for &(j, k, l) in &triples {
        let (fj, fk) = (field(j)?, field(k)?);
        let fl = if l == 0 { None } else { Some(field(l)?) };
        if !p.independent(&fj, &fk, fl.as_ref())? {
            continue;
        }
        let verdict = match &fl {
            None => independent(kappa, &fj, &fk)?,
            Some(fl) => cond_independent_on_field(kappa, &fj, &fk, fl)?,
        };
        let label = || {
            let set = |m: u32| {
                (0..names.len())
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| names[i])
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("{{{}}} vs {{{}}} given {{{}}}", set(j), set(k), set(l))
        };
        report.record(INDEPENDENCE_TRANSFER, verdict.independent, || {
            format!("{} is P-independent but not κ-independent", label())
        });

        let trivial = PartitionField::trivial(space);
        let (bs, cs) = (masks(&fj), masks(&fk));
        let ds = masks(fl.as_ref().unwrap_or(&trivial));
        for &d in &ds {
            for &b in &bs {
                for &c in &cs {
                    let (bd, cd, bcd) = (b & d, c & d, b & c & d);
                    let product = &t.weight[bd] * &t.weight[cd];
                    let ok = product.order() == t.order[bd] + t.order[cd]
                        && product == &t.weight[bcd] * &t.weight[d]
                        && t.rank[bcd] + t.rank[d] == t.rank[bd] + t.rank[cd];
                    report.record(PRODUCT_SUM, ok, || {
                        format!("{}: atoms {b:#b}, {c:#b}, {d:#b}", label())
                    });
                }
            }
        }
    }
    report.check_mut(INDEPENDENCE_TRANSFER);
    report.check_mut(PRODUCT_SUM);
    report.notes.push(format!(
        "{} variable-set triples examined; the converse direction is not checked",
        triples.len()
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Space, Variable};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn s2() -> std::sync::Arc<Space> {
        Space::build(vec![Variable::new("X", ["0", "1"]), Variable::new("Y", ["0", "1"])]).unwrap()
    }

    #[test]
    fn kappa1_passes_every_check() {
        let k = Ncf::from_world_ranks(&s2(), vec![0, 2, 1, 3]).unwrap();
        let r = verify_correspondence::<Q>(&k, None, &BridgeConfig::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.check(ROUND_TRIP).unwrap().instances, 16);
        assert_eq!(r.check(CONDITIONAL_ORDER).unwrap().instances, 15 * 16);
        assert_eq!(r.check(SUM_MIN).unwrap().instances, 81);
        assert_eq!(r.check(NO_CANCELLATION).unwrap().instances, 4);
    }

    #[test]
    fn product_coefficients_make_transfer_non_vacuous() {
        let s = Space::binary(3).unwrap();
        // additive: κ(w) = x1 + 2·x2 + x3
        let ranks = (0..8)
            .map(|w| {
                let a = s.assignment(w);
                (a[0] + 2 * a[1] + a[2]) as u32
            })
            .collect();
        let k = Ncf::from_world_ranks(&s, ranks).unwrap();
        let coeffs =
            product_coefficients(&s, &[vec![q(1), q(2)], vec![q(3), q(1)], vec![q(1), q(5)]]).unwrap();
        let r = verify_correspondence(&k, Some(&coeffs), &BridgeConfig::default()).unwrap();
        assert!(r.passed(), "{r}");
        // all 9 triples are P-independent for a product measure
        assert_eq!(r.check(INDEPENDENCE_TRANSFER).unwrap().instances, 9);
        assert!(r.check(PRODUCT_SUM).unwrap().instances > 0);
    }

    #[test]
    fn larger_spaces_are_sampled() {
        let s = Space::binary(4).unwrap();
        let k = Ncf::from_world_ranks(&s, (0..16).map(|w| (w % 5) as u32).collect()).unwrap();
        let cfg = BridgeConfig {
            sampled_pairs: 64,
            ..BridgeConfig::default()
        };
        let r = verify_correspondence::<Q>(&k, None, &cfg).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.check(ROUND_TRIP).unwrap().instances, 64);

        let tight = BridgeConfig {
            table_max_worlds: 8,
            ..cfg
        };
        assert!(matches!(verify_correspondence::<Q>(&k, None, &tight), Err(Error::BoundTooLarge(_))));
    }

    #[test]
    fn triples_enumeration() {
        assert_eq!(variable_triples(2), vec![(1, 2, 0)]);
        assert_eq!(variable_triples(3).len(), 9);
    }
}
