use crate::error::{Error, Result};
use crate::groups::{enumerate_permutations, inverse_matrix, perm_matrix, EnumerationCaps, Permutations};
use crate::index_set::{binomial, IndexSet};
use crate::ring::{factorial, sign_power, Ring};

use super::partitioned_sum;

/// Number of elements of `x` strictly below `t`; `t` must belong to `x`.
pub fn r_stat(t: usize, x: &IndexSet) -> Result<usize> {
    x.elements()
        .binary_search(&t)
        .map_err(|_| Error::InvalidIndexSet(format!("{t} is not an element of {x}")))
}

/// `sum_{t in X \ Y} r(t, X) - sum_{t in Y \ X} r(t, Y)`.
pub fn s_stat(x: &IndexSet, y: &IndexSet) -> i64 {
    let rank_sum = |a: &IndexSet, b: &IndexSet| -> i64 {
        a.elements()
            .iter()
            .enumerate()
            .filter(|(_, &t)| !b.contains(t))
            .map(|(pos, _)| pos as i64)
            .sum()
    };
    rank_sum(x, y) - rank_sum(y, x)
}

/// Four `k`-subsets of `[n]` for `sum_P [P]_{S,T} [P^{-1}]_{U,V}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSumInstance<R: Ring> {
    pub ring: R,
    pub n: usize,
    pub s: IndexSet,
    pub t: IndexSet,
    pub u: IndexSet,
    pub v: IndexSet,
}

impl<R: Ring> PairSumInstance<R> {
    pub fn new(ring: R, n: usize, s: IndexSet, t: IndexSet, u: IndexSet, v: IndexSet) -> Result<Self> {
        for (name, set) in [("S", &s), ("T", &t), ("U", &u), ("V", &v)] {
            if set.universe() != n {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {set} lives in [{}], expected [{n}]",
                    set.universe()
                )));
            }
            if set.len() != s.len() {
                return Err(Error::SizeMismatch(format!(
                    "|{name}| = {} but |S| = {}",
                    set.len(),
                    s.len()
                )));
            }
        }
        Ok(PairSumInstance { ring, n, s, t, u, v })
    }

    pub fn k(&self) -> usize {
        self.s.len()
    }
}

/// `j! (n-2k+j)! (-1)^{s(T,U)+s(S,V)}` when `|S∩V| = |T∩U| = j >= k-1`,
/// zero otherwise.
pub fn perm_pair_sum_closed<R: Ring>(inst: &PairSumInstance<R>) -> R::Elem {
    let ring = &inst.ring;
    let k = inst.k();
    let j = inst.s.intersection_len(&inst.v);
    if j != inst.t.intersection_len(&inst.u) || j + 1 < k {
        return ring.zero();
    }
    // |S ∪ V| = 2k - j <= n, so this cannot underflow once the guard passed.
    let rest = inst.n + j - 2 * k;
    let count = factorial(j as u64) * factorial(rest as u64);
    let exponent = s_stat(&inst.t, &inst.u) + s_stat(&inst.s, &inst.v);
    ring.mul(&ring.from_integer(&count), &sign_power(ring, exponent))
}

/// Direct `n!`-term enumeration; every minor is evaluated as a determinant.
pub fn perm_pair_sum_brute<R: Ring>(inst: &PairSumInstance<R>, caps: &EnumerationCaps) -> Result<R::Elem> {
    let ring = &inst.ring;
    let perms = enumerate_permutations(inst.n, caps)?;
    let mut acc = ring.zero();
    for p in perms.iter() {
        let left = perm_matrix(&p, ring).minor(&inst.s, &inst.t)?;
        if ring.is_zero(&left) {
            continue;
        }
        let right = inverse_matrix(&p, ring).minor(&inst.u, &inst.v)?;
        ring.add_assign(&mut acc, &ring.mul(&left, &right));
    }
    Ok(acc)
}

/// Brute-force oracle for every instance with fixed `(n, k)`.
///
/// The `k`-th compound matrices of `P_pi` and `P_pi^{-1}` are computed once
/// per permutation; each instance is then a sum of `n!` table products.
#[derive(Clone, Debug)]
pub struct PairSumOracle<R: Ring> {
    ring: R,
    n: usize,
    k: usize,
    perms: Permutations,
    width: usize,
    direct: Vec<Vec<R::Elem>>,
    inverse: Vec<Vec<R::Elem>>,
}

impl<R: Ring> PairSumOracle<R> {
    pub fn new(ring: R, n: usize, k: usize, caps: &EnumerationCaps) -> Result<Self> {
        if k > n {
            return Err(Error::SizeMismatch(format!("k = {k} exceeds n = {n}")));
        }
        let perms = enumerate_permutations(n, caps)?;
        let mut direct = Vec::with_capacity(perms.len());
        let mut inverse = Vec::with_capacity(perms.len());
        for p in perms.iter() {
            direct.push(perm_matrix(&p, &ring).compound(k)?.entries().to_vec());
            inverse.push(inverse_matrix(&p, &ring).compound(k)?.entries().to_vec());
        }
        Ok(PairSumOracle { ring, n, k, perms, width: binomial(n, k), direct, inverse })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn term_count(&self) -> usize {
        self.perms.len()
    }

    fn check(&self, inst: &PairSumInstance<R>) -> Result<()> {
        if inst.n != self.n || inst.k() != self.k {
            return Err(Error::InvalidConfig(format!(
                "instance has (n, k) = ({}, {}), oracle is for ({}, {})",
                inst.n,
                inst.k(),
                self.n,
                self.k
            )));
        }
        Ok(())
    }

    fn term(&self, rank: usize, st: usize, uv: usize) -> R::Elem {
        let left = &self.direct[rank][st];
        if self.ring.is_zero(left) {
            return self.ring.zero();
        }
        self.ring.mul(left, &self.inverse[rank][uv])
    }

    fn positions(&self, inst: &PairSumInstance<R>) -> (usize, usize) {
        (
            inst.s.lex_rank() * self.width + inst.t.lex_rank(),
            inst.u.lex_rank() * self.width + inst.v.lex_rank(),
        )
    }

    /// The full sum, split into `jobs` rank ranges.
    pub fn evaluate(&self, inst: &PairSumInstance<R>, jobs: usize) -> Result<R::Elem> {
        self.check(inst)?;
        let (st, uv) = self.positions(inst);
        Ok(partitioned_sum(&self.ring, self.perms.len(), jobs, |ranks| {
            let mut acc = self.ring.zero();
            for r in ranks {
                self.ring.add_assign(&mut acc, &self.term(r, st, uv));
            }
            acc
        }))
    }

    /// Smallest permutation rank whose term is nonzero.
    pub fn witness(&self, inst: &PairSumInstance<R>) -> Result<Option<usize>> {
        self.check(inst)?;
        let (st, uv) = self.positions(inst);
        Ok((0..self.perms.len()).find(|&r| !self.ring.is_zero(&self.term(r, st, uv))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Modulus, Zmod};
    use num_bigint::BigInt;

    fn set(e: &[usize], n: usize) -> IndexSet {
        IndexSet::new(e.to_vec(), n).unwrap()
    }

    fn inst(n: usize, s: &[usize], t: &[usize], u: &[usize], v: &[usize]) -> PairSumInstance<Integers> {
        PairSumInstance::new(Integers, n, set(s, n), set(t, n), set(u, n), set(v, n)).unwrap()
    }

    #[test]
    fn r_stat_examples() {
        let x = set(&[1, 3, 5], 5);
        assert_eq!(r_stat(1, &x).unwrap(), 0);
        assert_eq!(r_stat(5, &x).unwrap(), 2);
        assert_eq!(r_stat(3, &x).unwrap(), 1);
        assert!(r_stat(2, &x).is_err());
    }

    #[test]
    fn s_stat_examples() {
        let x = set(&[1, 4], 4);
        assert_eq!(s_stat(&x, &x), 0);
        assert_eq!(s_stat(&set(&[1, 2], 3), &set(&[1, 3], 3)), 0);
        assert_eq!(s_stat(&set(&[2, 3], 3), &set(&[1, 2], 3)), 1);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(perm_pair_sum_closed(&inst(2, &[1, 2], &[1, 2], &[1, 2], &[1, 2])), BigInt::from(2));
        assert_eq!(perm_pair_sum_closed(&inst(3, &[1], &[2], &[3], &[1])), BigInt::from(0));
        assert_eq!(perm_pair_sum_closed(&inst(3, &[1, 2], &[1, 2], &[2, 3], &[1, 3])), BigInt::from(-1));
    }

    #[test]
    fn brute_examples() {
        let caps = EnumerationCaps::default();
        assert_eq!(perm_pair_sum_brute(&inst(2, &[1, 2], &[1, 2], &[1, 2], &[1, 2]), &caps).unwrap(), BigInt::from(2));
        // only pi = (2, 3, 1) maps S to T and V to U
        assert_eq!(perm_pair_sum_brute(&inst(3, &[1], &[2], &[3], &[2]), &caps).unwrap(), BigInt::from(1));
        assert_eq!(perm_pair_sum_brute(&inst(3, &[1], &[2], &[3], &[2]), &caps).unwrap(),
            perm_pair_sum_closed(&inst(3, &[1], &[2], &[3], &[2])));
        assert_eq!(perm_pair_sum_brute(&inst(4, &[1, 2], &[1, 2], &[3, 4], &[3, 4]), &caps).unwrap(), BigInt::from(0));
        assert_eq!(perm_pair_sum_brute(&inst(3, &[1, 2], &[1, 2], &[2, 3], &[1, 3]), &caps).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn brute_respects_cap() {
        let caps = EnumerationCaps { perm_degree: 3, sign_bits: 16 };
        assert!(matches!(
            perm_pair_sum_brute(&inst(4, &[1], &[1], &[1], &[1]), &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn instance_validation() {
        assert!(PairSumInstance::new(Integers, 3, set(&[1], 3), set(&[1, 2], 3), set(&[1], 3), set(&[1], 3)).is_err());
        assert!(PairSumInstance::new(Integers, 3, set(&[1], 4), set(&[1], 3), set(&[1], 3), set(&[1], 3)).is_err());
    }

    #[test]
    fn oracle_matches_direct_brute_and_partitions() {
        let caps = EnumerationCaps::default();
        let z5 = Zmod::new(Modulus::new(5).unwrap());
        for k in 0..=4 {
            let oracle = PairSumOracle::new(z5, 4, k, &caps).unwrap();
            let sets: Vec<_> = IndexSet::subsets(4, k).collect();
            for s in &sets {
                for t in sets.iter().step_by(2) {
                    for u in sets.iter().rev().step_by(3) {
                        for v in &sets {
                            let i = PairSumInstance::new(z5, 4, s.clone(), t.clone(), u.clone(), v.clone()).unwrap();
                            let direct = perm_pair_sum_brute(&i, &caps).unwrap();
                            assert_eq!(oracle.evaluate(&i, 1).unwrap(), direct);
                            assert_eq!(oracle.evaluate(&i, 5).unwrap(), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witness_rank_points_at_nonzero_term() {
        let oracle = PairSumOracle::new(Integers, 3, 1, &EnumerationCaps::default()).unwrap();
        let i = inst(3, &[1], &[2], &[3], &[2]);
        // (2, 3, 1) has lexicographic rank 3
        assert_eq!(oracle.witness(&i).unwrap(), Some(3));
        let z = inst(3, &[1], &[2], &[3], &[1]);
        assert_eq!(oracle.witness(&z).unwrap(), None);
    }
}
