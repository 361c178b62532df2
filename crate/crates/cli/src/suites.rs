//! Verification suites. Each suite compares a closed form or kernel claim
//! against an independently computed value, instance by instance.

use std::time::Instant;

use minor_sums::codec::{cycle_to_json, elems_to_json, matrix_to_json, pair_sum_to_json};
use minor_sums::groups::EnumerationCaps;
use minor_sums::invariance::{
    charpoly_sum_report, charpoly_sum_witness, perm_pair_sum_closed, tuple_product_sum_brute,
    tuple_product_sum_closed, tuple_product_witness, PairSumInstance, PairSumOracle,
};
use minor_sums::matrix::{minor_of_product, minor_of_sum_expansion};
use minor_sums::poly::charpoly_coeffs;
use minor_sums::sample::{random_charpoly_config, random_matrix, random_subset, random_tuple_config, seeded};
use minor_sums::{with_ring, BaseRing, IndexSet, RingSpec};
use rand::Rng;
use serde_json::{json, Value};

use crate::report::{Counterexample, SuiteReport, VerificationReport};
use crate::CliError;

/// Largest `n` accepted by the exhaustive pair-sum sweep.
pub const PAIR_SUM_MAX_N: usize = 6;
/// Instances per ring for the Cauchy–Binet and sum-expansion suites.
pub const KERNEL_RANDOM_INSTANCES: usize = 100;
/// Largest size used by the compound and charpoly kernel suites.
pub const KERNEL_MAX_N: usize = 4;
const KERNEL_ENTRY_BOUND: i64 = 5;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub caps: EnumerationCaps,
    pub jobs: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { caps: EnumerationCaps::default(), jobs: 1, timings: false }
    }
}

fn timed(opts: &RunOptions, f: impl FnOnce() -> Result<SuiteReport, CliError>) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let mut report = f()?;
    if opts.timings {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn check_rings(rings: &[RingSpec]) -> Result<(), CliError> {
    if rings.is_empty() {
        return Err(CliError::Usage("the ring list is empty".into()));
    }
    Ok(())
}

fn check_cycle_shape(d: usize, dims: &[usize], trials: usize) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Usage("d must be at least 1".into()));
    }
    if dims.len() != d {
        return Err(CliError::Usage(format!("--dims has {} entries but d = {d}", dims.len())));
    }
    if dims.contains(&0) {
        return Err(CliError::Usage("every entry of --dims must be positive".into()));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    Ok(())
}

/// Exhaustive pair-sum sweep: every `n <= n_max`, every `k`, every quadruple
/// of `k`-subsets.
pub fn verify_lemma1(n_max: usize, rings: &[RingSpec], opts: &RunOptions) -> Result<VerificationReport, CliError> {
    check_rings(rings)?;
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    if n_max > PAIR_SUM_MAX_N {
        return Err(CliError::Usage(format!("--n-max {n_max} exceeds the limit of {PAIR_SUM_MAX_N}")));
    }
    opts.caps.check_perm_degree(n_max)?;
    let suites = rings
        .iter()
        .map(|&spec| timed(opts, || with_ring!(spec, r => pair_sum_suite(&r, n_max, opts))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport::new("verify-lemma1", suites))
}

fn pair_sum_suite<R: BaseRing>(ring: &R, n_max: usize, opts: &RunOptions) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("perm-pair-sum", ring.spec());
    for n in 1..=n_max {
        for k in 0..=n {
            let oracle = PairSumOracle::new(ring.clone(), n, k, &opts.caps)?;
            let sets: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
            for s in &sets {
                for t in &sets {
                    for u in &sets {
                        for v in &sets {
                            let inst =
                                PairSumInstance::new(ring.clone(), n, s.clone(), t.clone(), u.clone(), v.clone())?;
                            let closed = perm_pair_sum_closed(&inst);
                            let brute = oracle.evaluate(&inst, opts.jobs)?;
                            if closed == brute {
                                report.pass();
                            } else {
                                report.fail(Counterexample {
                                    instance: value(pair_sum_to_json(&inst)),
                                    closed: ring.format(&closed).into(),
                                    brute: ring.format(&brute).into(),
                                    witness_rank: oracle.witness(&inst)?,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Every `MISMATCH_PERIOD`-th trial of the tuple-product suite forces
/// unequal `k_j` (only possible when `d > 1`).
pub const MISMATCH_PERIOD: usize = 4;

/// Seeded tuple-product trials on one cycle shape.
pub fn verify_lemma3(
    d: usize,
    dims: &[usize],
    trials: usize,
    seed: u64,
    rings: &[RingSpec],
    opts: &RunOptions,
) -> Result<VerificationReport, CliError> {
    check_rings(rings)?;
    check_cycle_shape(d, dims, trials)?;
    opts.caps.check_sign_bits(dims.iter().sum())?;
    for &n in dims {
        opts.caps.check_perm_degree(n)?;
    }
    let suites = rings
        .iter()
        .map(|&spec| timed(opts, || with_ring!(spec, r => tuple_product_suite(&r, dims, trials, seed, opts))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport::new("verify-lemma3", suites))
}

fn tuple_product_suite<R: BaseRing>(
    ring: &R,
    dims: &[usize],
    trials: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("tuple-product-sum", ring.spec());
    let mut rng = seeded(seed);
    for trial in 0..trials {
        let mismatched = dims.len() > 1 && trial % MISMATCH_PERIOD == MISMATCH_PERIOD - 1;
        let cfg = random_tuple_config(ring, &mut rng, dims, mismatched)?;
        let closed = tuple_product_sum_closed(&cfg)?;
        let brute = tuple_product_sum_brute(&cfg, &opts.caps, opts.jobs)?;
        report.detail(json!({
            "trial": trial,
            "k": cfg.ks(),
            "closed": ring.format(&closed),
            "brute": ring.format(&brute),
        }));
        if closed == brute {
            report.pass();
        } else {
            report.fail(Counterexample {
                instance: value(cycle_to_json(&cfg)),
                closed: ring.format(&closed).into(),
                brute: ring.format(&brute).into(),
                witness_rank: tuple_product_witness(&cfg, &opts.caps)?,
            });
        }
    }
    Ok(report)
}

/// Seeded charpoly-sum trials on one cycle shape, compared coefficient by
/// coefficient.
pub fn verify_corollary(
    d: usize,
    dims: &[usize],
    trials: usize,
    seed: u64,
    rings: &[RingSpec],
    opts: &RunOptions,
) -> Result<VerificationReport, CliError> {
    check_rings(rings)?;
    check_cycle_shape(d, dims, trials)?;
    opts.caps.check_sign_bits(dims.iter().sum())?;
    for &n in dims {
        opts.caps.check_perm_degree(n)?;
    }
    let suites = rings
        .iter()
        .map(|&spec| timed(opts, || with_ring!(spec, r => charpoly_sum_suite(&r, dims, trials, seed, opts))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport::new("verify-corollary", suites))
}

fn charpoly_sum_suite<R: BaseRing>(
    ring: &R,
    dims: &[usize],
    trials: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("charpoly-sum", ring.spec());
    let mut rng = seeded(seed);
    for trial in 0..trials {
        let cfg = random_charpoly_config(ring, &mut rng, dims)?;
        let cmp = charpoly_sum_report(&cfg, &opts.caps, opts.jobs)?;
        report.detail(json!({
            "trial": trial,
            "p": elems_to_json(ring, &cmp.p),
            "q": elems_to_json(ring, &cmp.q),
            "r_closed": elems_to_json(ring, &cmp.r_closed),
            "r_brute": elems_to_json(ring, &cmp.r_brute),
            "matches": cmp.matches,
        }));
        if cmp.all_match() {
            report.pass();
        } else {
            let first = cmp.matches.iter().position(|&m| !m).expect("some coefficient differs");
            report.fail(Counterexample {
                instance: value(cycle_to_json(&cfg)),
                closed: value(elems_to_json(ring, &cmp.r_closed)),
                brute: value(elems_to_json(ring, &cmp.r_brute)),
                witness_rank: charpoly_sum_witness(&cfg, &opts.caps, first)?,
            });
        }
    }
    Ok(report)
}

/// The four matrix-kernel property suites for every ring.
pub fn verify_kernels(seed: u64, rings: &[RingSpec], opts: &RunOptions) -> Result<VerificationReport, CliError> {
    check_rings(rings)?;
    let mut suites = Vec::new();
    for &spec in rings {
        with_ring!(spec, r => {
            suites.push(timed(opts, || cauchy_binet_suite(&r, seed))?);
            suites.push(timed(opts, || compound_suite(&r, seed))?);
            suites.push(timed(opts, || charpoly_suite(&r, seed))?);
            suites.push(timed(opts, || sum_expansion_suite(&r, seed))?);
        });
    }
    Ok(VerificationReport::new("verify-kernels", suites))
}

fn sets_json(s: &IndexSet, t: &IndexSet) -> (Value, Value) {
    (value(s.elements()), value(t.elements()))
}

fn cauchy_binet_suite<R: BaseRing>(ring: &R, seed: u64) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("cauchy-binet", ring.spec());
    let mut rng = seeded(seed);
    for _ in 0..KERNEL_RANDOM_INSTANCES {
        let (m, inner, p) = (rng.random_range(1..=4), rng.random_range(1..=5), rng.random_range(1..=4));
        let k = rng.random_range(0..=m.min(p));
        let a = random_matrix(ring, &mut rng, m, inner, KERNEL_ENTRY_BOUND);
        let b = random_matrix(ring, &mut rng, inner, p, KERNEL_ENTRY_BOUND);
        let s = random_subset(&mut rng, m, k);
        let t = random_subset(&mut rng, p, k);
        let claim = minor_of_product(&a, &b, &s, &t)?;
        let direct = a.mul(&b)?.minor(&s, &t)?;
        report.record(claim == direct, || {
            let (s, t) = sets_json(&s, &t);
            Counterexample {
                instance: json!({ "a": value(matrix_to_json(&a)), "b": value(matrix_to_json(&b)), "S": s, "T": t }),
                closed: ring.format(&claim).into(),
                brute: ring.format(&direct).into(),
                witness_rank: None,
            }
        });
    }
    Ok(report)
}

const COMPOUND_PAIRS_PER_SIZE: usize = 5;

fn compound_suite<R: BaseRing>(ring: &R, seed: u64) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("compound-multiplicativity", ring.spec());
    let mut rng = seeded(seed.wrapping_add(1));
    for n in 1..=KERNEL_MAX_N {
        for _ in 0..COMPOUND_PAIRS_PER_SIZE {
            let a = random_matrix(ring, &mut rng, n, n, KERNEL_ENTRY_BOUND);
            let b = random_matrix(ring, &mut rng, n, n, KERNEL_ENTRY_BOUND);
            let ab = a.mul(&b)?;
            for k in 0..=n {
                let claim = a.compound(k)?.mul(&b.compound(k)?)?;
                let direct = ab.compound(k)?;
                report.record(claim.entries() == direct.entries(), || Counterexample {
                    instance: json!({ "a": value(matrix_to_json(&a)), "b": value(matrix_to_json(&b)), "k": k }),
                    closed: value(matrix_to_json(&claim)),
                    brute: value(matrix_to_json(&direct)),
                    witness_rank: None,
                });
            }
        }
    }
    Ok(report)
}

const CHARPOLY_MATRICES_PER_SIZE: usize = 10;

fn charpoly_suite<R: BaseRing>(ring: &R, seed: u64) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("charpoly-principal-minors", ring.spec());
    let mut rng = seeded(seed.wrapping_add(2));
    for n in 1..=KERNEL_MAX_N {
        for _ in 0..CHARPOLY_MATRICES_PER_SIZE {
            let a = random_matrix(ring, &mut rng, n, n, KERNEL_ENTRY_BOUND);
            let claim = charpoly_coeffs(&a)?.top_down_coeffs();
            let direct = (0..=n).map(|i| a.principal_minor_sum(i)).collect::<Result<Vec<_>, _>>()?;
            report.record(claim == direct, || Counterexample {
                instance: value(matrix_to_json(&a)),
                closed: value(elems_to_json(ring, &claim)),
                brute: value(elems_to_json(ring, &direct)),
                witness_rank: None,
            });
        }
    }
    Ok(report)
}

const SUM_EXPANSION_MAX_K: usize = 3;

fn sum_expansion_suite<R: BaseRing>(ring: &R, seed: u64) -> Result<SuiteReport, CliError> {
    let mut report = SuiteReport::new("minor-of-sum-expansion", ring.spec());
    let mut rng = seeded(seed.wrapping_add(3));
    for _ in 0..KERNEL_RANDOM_INSTANCES {
        let (m, n) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let k = rng.random_range(0..=m.min(n).min(SUM_EXPANSION_MAX_K));
        let a = random_matrix(ring, &mut rng, m, n, KERNEL_ENTRY_BOUND);
        let d = random_matrix(ring, &mut rng, m, n, KERNEL_ENTRY_BOUND);
        let s = random_subset(&mut rng, m, k);
        let t = random_subset(&mut rng, n, k);
        let claim = minor_of_sum_expansion(&a, &d, &s, &t)?;
        let direct = a.add(&d)?.minor(&s, &t)?;
        report.record(claim == direct, || {
            let (s, t) = sets_json(&s, &t);
            Counterexample {
                instance: json!({ "a": value(matrix_to_json(&a)), "d": value(matrix_to_json(&d)), "S": s, "T": t }),
                closed: ring.format(&claim).into(),
                brute: ring.format(&direct).into(),
                witness_rank: None,
            }
        });
    }
    Ok(report)
}
