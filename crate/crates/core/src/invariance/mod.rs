//! Closed forms and brute-force oracles for the group-averaged minor sums.
//!
//! Each identity comes as a pair: a closed form built from factorials,
//! minors and principal-minor sums, and an exhaustive sum over the group
//! that is computed without reference to the closed form.

mod cycle;
mod pair_sum;

use std::ops::Range;

use rayon::prelude::*;

use crate::ring::Ring;

pub use cycle::{
    build_m, charpoly_sum_brute, charpoly_sum_closed, charpoly_sum_report, charpoly_sum_witness,
    tuple_product_sum_brute, tuple_product_sum_closed, tuple_product_witness, CharpolySumReport,
    CycleConfig, OuterFactors, TupleSpace,
};
pub use pair_sum::{
    perm_pair_sum_brute, perm_pair_sum_closed, r_stat, s_stat, PairSumInstance, PairSumOracle,
};

/// Splits `0..total` into at most `jobs` contiguous ranges, in order.
pub fn partition(total: usize, jobs: usize) -> Vec<Range<usize>> {
    let jobs = jobs.clamp(1, total.max(1));
    let base = total / jobs;
    let extra = total % jobs;
    let mut start = 0;
    (0..jobs)
        .map(|i| {
            let len = base + usize::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Sums `chunk(range)` over a partition of `0..total`. With `jobs > 1` the
/// chunks run on the current rayon pool; partial sums are combined in
/// partition order, though any order gives the same ring element.
pub fn partitioned_sum<R, F>(ring: &R, total: usize, jobs: usize, chunk: F) -> R::Elem
where
    R: Ring,
    F: Fn(Range<usize>) -> R::Elem + Sync,
{
    let parts = partition(total, jobs);
    let partials: Vec<R::Elem> = if parts.len() > 1 {
        parts.into_par_iter().map(&chunk).collect()
    } else {
        parts.into_iter().map(&chunk).collect()
    };
    ring.sum(&partials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_range_in_order() {
        for total in [0, 1, 5, 24, 120] {
            for jobs in 1..=7 {
                let parts = partition(total, jobs);
                let flat: Vec<usize> = parts.iter().cloned().flatten().collect();
                assert_eq!(flat, (0..total).collect::<Vec<_>>());
                assert!(parts.len() <= jobs);
            }
        }
    }
}
