//! Closed forms against exhaustive enumeration.

use minor_sums::groups::{EnumerationCaps, SignedPermutations};
use minor_sums::invariance::{
    charpoly_sum_brute, charpoly_sum_closed, perm_pair_sum_closed, s_stat, tuple_product_sum_brute,
    tuple_product_sum_closed, CycleConfig, OuterFactors, PairSumInstance, PairSumOracle,
};
use minor_sums::ring::{BaseRing, Integers, Modulus, Zmod};
use minor_sums::sample::{random_charpoly_config, random_tuple_config, seeded};
use minor_sums::IndexSet;

fn z(m: u64) -> Zmod {
    Zmod::new(Modulus::new(m).unwrap())
}

fn sweep_pair_sums<R: BaseRing>(ring: R, n_max: usize) {
    let caps = EnumerationCaps::default();
    for n in 1..=n_max {
        for k in 0..=n {
            let oracle = PairSumOracle::new(ring.clone(), n, k, &caps).unwrap();
            let sets: Vec<_> = IndexSet::subsets(n, k).collect();
            for s in &sets {
                for t in &sets {
                    for u in &sets {
                        for v in &sets {
                            let inst =
                                PairSumInstance::new(ring.clone(), n, s.clone(), t.clone(), u.clone(), v.clone())
                                    .unwrap();
                            assert_eq!(
                                perm_pair_sum_closed(&inst),
                                oracle.evaluate(&inst, 1).unwrap(),
                                "n={n} S={s} T={t} U={u} V={v} over {}",
                                ring.spec()
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn pair_sum_closed_form_holds_exhaustively_to_degree_four() {
    sweep_pair_sums(Integers, 4);
    sweep_pair_sums(z(2), 4);
    sweep_pair_sums(z(6), 4);
}

#[test]
fn sign_exponent_vanishes_on_full_intersections() {
    for n in 1..=5 {
        for k in 0..=n {
            for s in IndexSet::subsets(n, k) {
                for t in IndexSet::subsets(n, k) {
                    // j = k forces V = S and U = T
                    assert_eq!(s_stat(&t, &t) + s_stat(&s, &s), 0);
                    let inst = PairSumInstance::new(Integers, n, s.clone(), t.clone(), t.clone(), s.clone()).unwrap();
                    assert!(perm_pair_sum_closed(&inst) > 0.into());
                }
            }
        }
    }
}

#[test]
fn tuple_product_sum_random_shapes() {
    let caps = EnumerationCaps::default();
    let shapes: &[&[usize]] = &[&[1], &[2], &[3], &[1, 2], &[2, 2], &[3, 1], &[1, 1, 1], &[2, 1, 2]];
    let mut rng = seeded(2024);
    for dims in shapes {
        for trial in 0..6 {
            let cfg = random_tuple_config(&Integers, &mut rng, dims, trial % 3 == 2).unwrap();
            assert_eq!(
                tuple_product_sum_closed(&cfg).unwrap(),
                tuple_product_sum_brute(&cfg, &caps, 1).unwrap(),
                "dims {dims:?} ks {:?}",
                cfg.ks()
            );
        }
    }
}

#[test]
fn tuple_product_sum_vanishes_in_characteristic_two() {
    let caps = EnumerationCaps::default();
    let mut rng = seeded(9);
    for dims in [&[1usize][..], &[2, 2], &[1, 3]] {
        let cfg = random_tuple_config(&z(2), &mut rng, dims, false).unwrap();
        assert_eq!(tuple_product_sum_brute(&cfg, &caps, 1).unwrap(), 0);
        assert_eq!(tuple_product_sum_closed(&cfg).unwrap(), 0);
    }
}

/// Replacing `A_j` by `R_j A_j R_{j+1}^{-1}` only reindexes the group sum.
#[test]
fn tuple_sum_is_invariant_under_signed_permutation_conjugation() {
    let caps = EnumerationCaps::default();
    let mut rng = seeded(77);
    let group = SignedPermutations::new(2, &caps).unwrap();
    for trial in 0..4 {
        let cfg = random_tuple_config(&Integers, &mut rng, &[2, 2], false).unwrap();
        let before = tuple_product_sum_brute(&cfg, &caps, 1).unwrap();
        let r = [group.unrank((5 + trial * 3) % group.len()), group.unrank((2 + trial * 7) % group.len())];
        let conj = vec![
            r[0].conjugate(&cfg.a()[0], &r[1]).unwrap(),
            r[1].conjugate(&cfg.a()[1], &r[0]).unwrap(),
        ];
        let outer: OuterFactors<Integers> = cfg.outer().unwrap().clone();
        let moved = CycleConfig::new(Integers, cfg.dims().to_vec(), conj).unwrap().with_outer(outer).unwrap();
        assert_eq!(tuple_product_sum_brute(&moved, &caps, 1).unwrap(), before);
    }
}

#[test]
fn charpoly_sum_random_shapes() {
    let caps = EnumerationCaps::default();
    let mut rng = seeded(31);
    for dims in [&[1usize][..], &[2], &[3], &[1, 2], &[2, 2], &[3, 1], &[2, 3]] {
        for _ in 0..3 {
            let cfg = random_charpoly_config(&Integers, &mut rng, dims).unwrap();
            assert_eq!(
                charpoly_sum_closed(&cfg).unwrap(),
                charpoly_sum_brute(&cfg, &caps, 1).unwrap(),
                "dims {dims:?}"
            );
        }
    }
}

#[test]
fn leading_charpoly_sum_coefficient_counts_the_group() {
    let caps = EnumerationCaps::default();
    let cfg = random_charpoly_config(&Integers, &mut seeded(4), &[3, 2]).unwrap();
    let brute = charpoly_sum_brute(&cfg, &caps, 1).unwrap();
    // 2^5 * 3! * 2!
    assert_eq!(brute.top_down_coeffs()[0], 384.into());
}

#[test]
fn brute_sums_do_not_depend_on_partitioning() {
    let caps = EnumerationCaps::default();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let tuple = random_tuple_config(&z(7), &mut seeded(8), &[2, 3], false).unwrap();
    let poly = random_charpoly_config(&Integers, &mut seeded(8), &[2, 2]).unwrap();
    let single = (
        tuple_product_sum_brute(&tuple, &caps, 1).unwrap(),
        charpoly_sum_brute(&poly, &caps, 1).unwrap(),
    );
    let split = pool.install(|| {
        (
            tuple_product_sum_brute(&tuple, &caps, 4).unwrap(),
            charpoly_sum_brute(&poly, &caps, 7).unwrap(),
        )
    });
    assert_eq!(single, split);
}
