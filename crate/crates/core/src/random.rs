//! Seeded generators for NCFs and propositions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ncf::Ncf;
use crate::space::{PartitionField, Proposition, Space, WorldSet};

pub const DEFAULT_SEED: u64 = 0x5eed_0f4e_4346;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform ranks in `0..=max_rank`, shifted so the minimum is 0.
pub fn random_ncf<R: Rng>(rng: &mut R, space: &Arc<Space>, max_rank: u32) -> Ncf {
    let raw: Vec<u32> = (0..space.world_count())
        .map(|_| rng.gen_range(0..=max_rank))
        .collect();
    let m = raw.iter().copied().min().unwrap_or(0);
    Ncf::from_world_ranks(space, raw.into_iter().map(|r| r - m).collect()).expect("normalized")
}

/// Per-variable rank tables, each with minimum 0 and entries up to
/// `max_rank`, summed over the variables.
pub fn random_additive_ncf<R: Rng>(rng: &mut R, space: &Arc<Space>, max_rank: u32) -> Ncf {
    let tables: Vec<Vec<u32>> = space
        .variables()
        .iter()
        .map(|v| {
            let mut t: Vec<u32> = (0..v.values().len()).map(|_| rng.gen_range(0..=max_rank)).collect();
            let zero = rng.gen_range(0..t.len());
            t[zero] = 0;
            t
        })
        .collect();
    let ranks = (0..space.world_count())
        .map(|w| {
            space
                .assignment(w)
                .iter()
                .zip(&tables)
                .map(|(&i, t)| t[i])
                .sum()
        })
        .collect();
    Ncf::from_world_ranks(space, ranks).expect("each table has a zero")
}

/// `κ(w) = f(w_2) + g(w_0, w_2) + h(w_1, w_2)` shifted to minimum 0, so the
/// first two variables are independent given the third. Needs at least
/// three variables; the others contribute nothing.
pub fn random_chain_ncf<R: Rng>(rng: &mut R, space: &Arc<Space>, max_rank: u32) -> Ncf {
    let vars = space.variables();
    assert!(vars.len() >= 3, "chain NCFs need three variables");
    let (d0, d1, d2) = (vars[0].values().len(), vars[1].values().len(), vars[2].values().len());
    let mut table = |n: usize| -> Vec<u32> { (0..n).map(|_| rng.gen_range(0..=max_rank)).collect() };
    let f = table(d2);
    let g = table(d0 * d2);
    let h = table(d1 * d2);
    let raw: Vec<u32> = (0..space.world_count())
        .map(|w| {
            let a = space.assignment(w);
            f[a[2]] + g[a[0] * d2 + a[2]] + h[a[1] * d2 + a[2]]
        })
        .collect();
    let m = raw.iter().copied().min().unwrap_or(0);
    Ncf::from_world_ranks(space, raw.into_iter().map(|r| r - m).collect()).expect("normalized")
}

/// Each world included with probability 1/2.
pub fn random_proposition<R: Rng>(rng: &mut R, space: &Arc<Space>) -> Proposition {
    let n = space.world_count();
    let members = WorldSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
    Proposition::new(space, members).expect("indices in range")
}

/// Uniform over the contingent propositions. Spaces with one world have
/// none.
pub fn random_contingent<R: Rng>(rng: &mut R, space: &Arc<Space>) -> Option<Proposition> {
    if space.world_count() < 2 {
        return None;
    }
    loop {
        let p = random_proposition(rng, space);
        if p.is_contingent() {
            return Some(p);
        }
    }
}

/// Partition into at most `max_blocks` non-empty blocks by random labels.
pub fn random_partition<R: Rng>(rng: &mut R, space: &Arc<Space>, max_blocks: usize) -> PartitionField {
    let labels: Vec<usize> = (0..space.world_count())
        .map(|_| rng.gen_range(0..max_blocks.max(1)))
        .collect();
    PartitionField::from_labels(space, &labels)
}

/// `count` NCFs over spaces of 1..=`max_vars` binary variables, each space
/// size drawn uniformly.
pub fn random_population<R: Rng>(
    rng: &mut R,
    count: usize,
    max_vars: usize,
    max_rank: u32,
) -> Result<Vec<Ncf>> {
    let spaces = (1..=max_vars.max(1))
        .map(Space::binary)
        .collect::<Result<Vec<_>>>()?;
    Ok((0..count)
        .map(|_| {
            let s = &spaces[rng.gen_range(0..spaces.len())];
            random_ncf(rng, s, max_rank)
        })
        .collect())
}
