//! Seeded random instances.
//!
//! Entries are drawn as small integers and then embedded, so one seed gives
//! the same integer instance in every ring.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::index_set::IndexSet;
use crate::invariance::{CycleConfig, OuterFactors};
use crate::matrix::ExactMatrix;
use crate::ring::Ring;

/// Entry range `[-3, 3]` for tuple-product configurations.
pub const TUPLE_ENTRY_BOUND: i64 = 3;
/// Entry range `[-2, 2]` for charpoly-sum configurations.
pub const CHARPOLY_ENTRY_BOUND: i64 = 2;
/// Largest outer dimension `p_j`, `r_j` drawn for `B_j`, `C_j`.
pub const MAX_OUTER_DIM: usize = 3;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Ring, G: Rng>(ring: &R, rng: &mut G, rows: usize, cols: usize, bound: i64) -> ExactMatrix<R> {
    ExactMatrix::from_fn(ring.clone(), rows, cols, |_, _| ring.from_i64(rng.random_range(-bound..=bound)))
}

/// Uniform `k`-subset of `[n]`.
pub fn random_subset<G: Rng>(rng: &mut G, n: usize, k: usize) -> IndexSet {
    let mut picked: Vec<usize> = index::sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    picked.sort_unstable();
    IndexSet::new(picked, n).expect("sampled subset is valid")
}

/// A tuple-product configuration on `dims`. With `mismatched` and at least
/// two blocks, the sizes `k_j` are forced to disagree somewhere; otherwise
/// they share one value.
pub fn random_tuple_config<R: Ring, G: Rng>(
    ring: &R,
    rng: &mut G,
    dims: &[usize],
    mismatched: bool,
) -> Result<CycleConfig<R>> {
    let d = dims.len();
    let next = |j: usize| (j + 1) % d;
    let a = (0..d)
        .map(|j| random_matrix(ring, rng, dims[j], dims[next(j)], TUPLE_ENTRY_BOUND))
        .collect();
    let p: Vec<usize> = (0..d).map(|_| rng.random_range(1..=MAX_OUTER_DIM)).collect();
    let r: Vec<usize> = (0..d).map(|_| rng.random_range(1..=MAX_OUTER_DIM)).collect();
    let bounds: Vec<usize> = (0..d)
        .map(|j| p[j].min(r[j]).min(dims[j]).min(dims[next(j)]))
        .collect();
    let ks: Vec<usize> = if mismatched && d > 1 {
        let mut ks: Vec<usize> = bounds.iter().map(|&b| rng.random_range(0..=b)).collect();
        if ks.iter().all(|&k| k == ks[0]) {
            let j = rng.random_range(0..d);
            ks[j] = if ks[j] == 0 { 1 } else { ks[j] - 1 };
        }
        ks
    } else {
        let k = rng.random_range(0..=*bounds.iter().min().expect("nonempty"));
        vec![k; d]
    };
    let b = (0..d)
        .map(|j| random_matrix(ring, rng, p[j], dims[j], TUPLE_ENTRY_BOUND))
        .collect();
    let c = (0..d)
        .map(|j| random_matrix(ring, rng, dims[next(j)], r[j], TUPLE_ENTRY_BOUND))
        .collect();
    let x = (0..d).map(|j| random_subset(rng, p[j], ks[j])).collect();
    let y = (0..d).map(|j| random_subset(rng, r[j], ks[j])).collect();
    CycleConfig::new(ring.clone(), dims.to_vec(), a)?.with_outer(OuterFactors { b, c, x, y })
}

/// A charpoly-sum configuration on `dims` with random `A_j` and `D_j`.
pub fn random_charpoly_config<R: Ring, G: Rng>(ring: &R, rng: &mut G, dims: &[usize]) -> Result<CycleConfig<R>> {
    let d = dims.len();
    let mut draw = || -> Vec<ExactMatrix<R>> {
        (0..d)
            .map(|j| random_matrix(ring, rng, dims[j], dims[(j + 1) % d], CHARPOLY_ENTRY_BOUND))
            .collect()
    };
    let a = draw();
    let addends = draw();
    CycleConfig::new(ring.clone(), dims.to_vec(), a)?.with_addends(addends)
}
