//! Permutation matrices, sign matrices and signed permutations, with
//! exhaustive enumeration by rank.
//!
//! A permutation `pi` is stored as its 1-based image list and its matrix has
//! a one at `(i, pi(i))`, so `[P_pi]_{U,V}` is nonzero exactly when
//! `pi(U) = V`. Every enumeration can be unranked, so a sum over the group can
//! be split into independent rank ranges.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::Ring;

/// Guards on enumeration sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Largest permutation degree that may be enumerated.
    pub perm_degree: usize,
    /// Largest total number of sign bits in one enumeration.
    pub sign_bits: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps { perm_degree: 8, sign_bits: 16 }
    }
}

impl EnumerationCaps {
    pub fn check_perm_degree(&self, n: usize) -> Result<()> {
        if n > self.perm_degree {
            return Err(Error::CapExceeded {
                what: "permutation degree",
                requested: n,
                cap: self.perm_degree,
            });
        }
        Ok(())
    }

    pub fn check_sign_bits(&self, bits: usize) -> Result<()> {
        if bits > self.sign_bits {
            return Err(Error::CapExceeded {
                what: "sign-bit count",
                requested: bits,
                cap: self.sign_bits,
            });
        }
        Ok(())
    }
}

fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1] = pi(i)`; must be a bijection on `[n]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on [1..={n}]"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `pi(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `+1` or `-1` by inversion count.
    pub fn sign(&self) -> i64 {
        let inversions = (0..self.degree())
            .flat_map(|i| (i + 1..self.degree()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Lexicographic rank among all permutations of the same degree.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank += smaller_later * factorial_usize(n - 1 - i);
        }
        rank
    }

    /// Inverse of [`Permutation::rank`]; `rank < n!`.
    pub fn unrank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial_usize(n - 1 - i);
            images.push(pool.remove(rank / f));
            rank %= f;
        }
        Permutation { images }
    }
}

/// Diagonal of a sign matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidConfig(format!("sign entries must be +1 or -1, got {bad}")));
        }
        Ok(SignVector { signs })
    }

    pub fn all_plus(n: usize) -> Self {
        SignVector { signs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Sign at 1-based position `i`.
    pub fn get(&self, i: usize) -> i8 {
        self.signs[i - 1]
    }

    /// Binary counting order: position 1 is the most significant bit and a
    /// set bit means `-1`.
    pub fn unrank(n: usize, rank: usize) -> Self {
        let signs = (0..n)
            .map(|i| if rank >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
            .collect();
        SignVector { signs }
    }

    pub fn rank(&self) -> usize {
        self.signs.iter().fold(0, |acc, &s| (acc << 1) | usize::from(s == -1))
    }
}

/// `P_pi`: one at `(i, pi(i))`.
pub fn perm_matrix<R: Ring>(p: &Permutation, ring: &R) -> ExactMatrix<R> {
    let (zero, one) = (ring.zero(), ring.one());
    let n = p.degree();
    ExactMatrix::from_fn(ring.clone(), n, n, |i, j| {
        if p.images[i] == j + 1 {
            one.clone()
        } else {
            zero.clone()
        }
    })
}

/// `P_pi^{-1} = P_{pi^{-1}}`, which is also the transpose of `P_pi`.
pub fn inverse_matrix<R: Ring>(p: &Permutation, ring: &R) -> ExactMatrix<R> {
    perm_matrix(&p.inverse(), ring)
}

/// Diagonal sign matrix.
pub fn sign_matrix<R: Ring>(q: &SignVector, ring: &R) -> ExactMatrix<R> {
    let (zero, one) = (ring.zero(), ring.one());
    let minus = ring.neg(&one);
    let n = q.len();
    ExactMatrix::from_fn(ring.clone(), n, n, |i, j| match (i == j, q.signs[i]) {
        (false, _) => zero.clone(),
        (true, 1) => one.clone(),
        (true, _) => minus.clone(),
    })
}

/// The element `Q P` of the hyperoctahedral group: row `i` has the entry
/// `q_i` in column `pi(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    pub perm: Permutation,
    pub signs: SignVector,
}

impl SignedPermutation {
    pub fn new(perm: Permutation, signs: SignVector) -> Result<Self> {
        if perm.degree() != signs.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutation of degree {} with {} signs",
                perm.degree(),
                signs.len()
            )));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn matrix<R: Ring>(&self, ring: &R) -> ExactMatrix<R> {
        sign_matrix(&self.signs, ring)
            .mul(&perm_matrix(&self.perm, ring))
            .expect("same degree")
    }

    /// `G A H^{-1}` for `G = self`, `H = right`. Entry `(a, b)` is
    /// `q_a q'_b A[pi(a)][pi'(b)]`.
    pub fn conjugate<R: Ring>(&self, a: &ExactMatrix<R>, right: &SignedPermutation) -> Result<ExactMatrix<R>> {
        if a.rows() != self.degree() || a.cols() != right.degree() {
            return Err(Error::DimensionMismatch(format!(
                "cannot conjugate a {}x{} matrix by degrees {} and {}",
                a.rows(),
                a.cols(),
                self.degree(),
                right.degree()
            )));
        }
        let ring = a.ring();
        Ok(ExactMatrix::from_fn(ring.clone(), a.rows(), a.cols(), |i, j| {
            let x = a.get(self.perm.images[i] - 1, right.perm.images[j] - 1);
            if self.signs.signs[i] * right.signs.signs[j] == 1 {
                x.clone()
            } else {
                ring.neg(x)
            }
        }))
    }
}

/// All `n!` permutations of `[n]`, lexicographic by image list.
#[derive(Clone, Copy, Debug)]
pub struct Permutations {
    n: usize,
    count: usize,
}

impl Permutations {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn unrank(&self, rank: usize) -> Permutation {
        Permutation::unrank(self.n, rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.range(0..self.count)
    }

    pub fn range(&self, ranks: Range<usize>) -> impl Iterator<Item = Permutation> + '_ {
        ranks.map(move |r| self.unrank(r))
    }
}

pub fn enumerate_permutations(n: usize, caps: &EnumerationCaps) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::InvalidConfig("permutation degree must be at least 1".into()));
    }
    caps.check_perm_degree(n)?;
    Ok(Permutations { n, count: factorial_usize(n) })
}

/// All `2^n` sign vectors in binary counting order.
#[derive(Clone, Copy, Debug)]
pub struct SignVectors {
    n: usize,
}

impl SignVectors {
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unrank(&self, rank: usize) -> SignVector {
        SignVector::unrank(self.n, rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = SignVector> + '_ {
        (0..self.len()).map(move |r| self.unrank(r))
    }
}

pub fn enumerate_sign_vectors(n: usize, caps: &EnumerationCaps) -> Result<SignVectors> {
    if n == 0 {
        return Err(Error::InvalidConfig("sign vector length must be at least 1".into()));
    }
    caps.check_sign_bits(n)?;
    Ok(SignVectors { n })
}

/// The `n! 2^n` signed permutations of degree `n`. Rank `r` is the
/// permutation of rank `r / 2^n` with the sign vector of rank `r % 2^n`.
#[derive(Clone, Copy, Debug)]
pub struct SignedPermutations {
    perms: Permutations,
    signs: SignVectors,
}

impl SignedPermutations {
    pub fn new(n: usize, caps: &EnumerationCaps) -> Result<Self> {
        Ok(SignedPermutations {
            perms: enumerate_permutations(n, caps)?,
            signs: enumerate_sign_vectors(n, caps)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.perms.n
    }

    pub fn len(&self) -> usize {
        self.perms.len() * self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unrank(&self, rank: usize) -> SignedPermutation {
        let s = self.signs.len();
        SignedPermutation {
            perm: self.perms.unrank(rank / s),
            signs: self.signs.unrank(rank % s),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SignedPermutation> + '_ {
        (0..self.len()).map(move |r| self.unrank(r))
    }
}
