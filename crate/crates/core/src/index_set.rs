//! Sorted subsets of `[n] = {1, ..., n}`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A strictly increasing list of 1-based indices drawn from `[universe]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IndexSet {
    elems: Vec<usize>,
    #[serde(skip)]
    universe: usize,
}

impl IndexSet {
    pub fn new(elems: Vec<usize>, universe: usize) -> Result<Self> {
        for &e in &elems {
            if e == 0 || e > universe {
                return Err(Error::IndexOutOfRange { index: e, bound: universe });
            }
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "{elems:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet { elems, universe })
    }

    pub fn empty(universe: usize) -> Self {
        IndexSet { elems: Vec::new(), universe }
    }

    /// `{1, ..., k}` inside `[universe]`.
    pub fn prefix(k: usize, universe: usize) -> Result<Self> {
        IndexSet::new((1..=k).collect(), universe)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    /// 0-based positions, handy for indexing row-major storage.
    pub fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().map(|e| e - 1)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        self.elems.iter().filter(|&&e| other.contains(e)).count()
    }

    /// Elements of `self` that are not in `other`.
    pub fn difference<'a>(&'a self, other: &'a IndexSet) -> impl Iterator<Item = usize> + 'a {
        self.elems.iter().copied().filter(move |&e| !other.contains(e))
    }

    /// `[universe] \ self`.
    pub fn complement(&self) -> IndexSet {
        IndexSet {
            elems: (1..=self.universe).filter(|&e| !self.contains(e)).collect(),
            universe: self.universe,
        }
    }

    /// Sum of the elements, the `||U||_1` of a position set.
    pub fn weight(&self) -> usize {
        self.elems.iter().sum()
    }

    /// Picks the elements of `self` at the 1-based `positions` (positions
    /// index the ascending order of `self`). The result lives in the same
    /// universe as `self`.
    pub fn select(&self, positions: &IndexSet) -> Result<IndexSet> {
        if positions.universe != self.len() {
            return Err(Error::SizeMismatch(format!(
                "position set ranges over [{}] but the set has {} elements",
                positions.universe,
                self.len()
            )));
        }
        Ok(IndexSet {
            elems: positions.elems.iter().map(|&p| self.elems[p - 1]).collect(),
            universe: self.universe,
        })
    }

    /// All `k`-subsets of `[universe]` in lexicographic order.
    pub fn subsets(universe: usize, k: usize) -> Subsets {
        Subsets {
            universe,
            current: if k <= universe { Some((1..=k).collect()) } else { None },
        }
    }

    /// Position of `self` in the lexicographic order of [`IndexSet::subsets`].
    pub fn lex_rank(&self) -> usize {
        let (n, k) = (self.universe, self.len());
        let mut rank = 0;
        let mut prev = 0;
        for (i, &a) in self.elems.iter().enumerate() {
            for x in prev + 1..a {
                rank += binomial(n - x, k - i - 1);
            }
            prev = a;
        }
        rank
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the `k`-subsets of `[n]`, lexicographic.
#[derive(Clone, Debug)]
pub struct Subsets {
    universe: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let cur = self.current.take()?;
        let n = self.universe;
        let k = cur.len();
        let mut next = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < n - k + i + 1) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(IndexSet { elems: cur, universe: n })
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
