//! Cyclic configurations `A_j in K^{n_j x n_{j+1 mod d}}` and the sums over
//! `d`-tuples of signed permutations built from them.

use crate::error::{Error, Result};
use crate::groups::{EnumerationCaps, Permutation, SignVector, SignedPermutation, SignedPermutations};
use crate::index_set::IndexSet;
use crate::matrix::ExactMatrix;
use crate::poly::{charpoly_coeffs, PolyRing, Polynomial};
use crate::ring::{factorial, falling_factorial, two_pow, Ring};

use super::partitioned_sum;

/// The `B_j`, `C_j`, `X_j`, `Y_j` of the tuple-product sum. `B_j` is
/// `p_j x n_j`, `C_j` is `n_{j+1} x r_j`, `X_j` is a subset of `[p_j]` and
/// `Y_j` a subset of `[r_j]` of the same size `k_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterFactors<R: Ring> {
    pub b: Vec<ExactMatrix<R>>,
    pub c: Vec<ExactMatrix<R>>,
    pub x: Vec<IndexSet>,
    pub y: Vec<IndexSet>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleConfig<R: Ring> {
    ring: R,
    dims: Vec<usize>,
    a: Vec<ExactMatrix<R>>,
    outer: Option<OuterFactors<R>>,
    addends: Option<Vec<ExactMatrix<R>>>,
}

fn expect_shape<R: Ring>(what: &str, j: usize, m: &ExactMatrix<R>, rows: usize, cols: usize) -> Result<()> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(Error::DimensionMismatch(format!(
            "{what}_{j} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl<R: Ring> CycleConfig<R> {
    pub fn new(ring: R, dims: Vec<usize>, a: Vec<ExactMatrix<R>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidConfig("a cycle needs at least one block".into()));
        }
        if let Some(j) = dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidConfig(format!("n_{j} must be positive")));
        }
        let cfg = CycleConfig { ring, dims, a, outer: None, addends: None };
        cfg.check_cycle("A", &cfg.a)?;
        Ok(cfg)
    }

    fn check_cycle(&self, what: &str, mats: &[ExactMatrix<R>]) -> Result<()> {
        if mats.len() != self.len() {
            return Err(Error::InvalidConfig(format!(
                "{} {what} matrices for a cycle of length {}",
                mats.len(),
                self.len()
            )));
        }
        for (j, m) in mats.iter().enumerate() {
            expect_shape(what, j, m, self.dims[j], self.dims[self.next(j)])?;
        }
        Ok(())
    }

    pub fn with_outer(mut self, outer: OuterFactors<R>) -> Result<Self> {
        let d = self.len();
        for (what, len) in [("B", outer.b.len()), ("C", outer.c.len()), ("X", outer.x.len()), ("Y", outer.y.len())] {
            if len != d {
                return Err(Error::InvalidConfig(format!("{len} {what} entries for a cycle of length {d}")));
            }
        }
        for j in 0..d {
            let (b, c) = (&outer.b[j], &outer.c[j]);
            expect_shape("B", j, b, b.rows(), self.dims[j])?;
            expect_shape("C", j, c, self.dims[self.next(j)], c.cols())?;
            let (x, y) = (&outer.x[j], &outer.y[j]);
            if x.universe() != b.rows() || y.universe() != c.cols() {
                return Err(Error::InvalidConfig(format!(
                    "X_{j} must lie in [{}] and Y_{j} in [{}]",
                    b.rows(),
                    c.cols()
                )));
            }
            if x.len() != y.len() {
                return Err(Error::SizeMismatch(format!("|X_{j}| = {} but |Y_{j}| = {}", x.len(), y.len())));
            }
            let bound = self.dims[j].min(self.dims[self.next(j)]);
            if x.len() > bound {
                return Err(Error::SizeMismatch(format!("k_{j} = {} exceeds {bound}", x.len())));
            }
        }
        self.outer = Some(outer);
        Ok(self)
    }

    pub fn with_addends(mut self, addends: Vec<ExactMatrix<R>>) -> Result<Self> {
        self.check_cycle("D", &addends)?;
        self.addends = Some(addends);
        Ok(self)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// The cycle length `d`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn a(&self) -> &[ExactMatrix<R>] {
        &self.a
    }

    pub fn outer(&self) -> Option<&OuterFactors<R>> {
        self.outer.as_ref()
    }

    pub fn addends(&self) -> Option<&[ExactMatrix<R>]> {
        self.addends.as_deref()
    }

    /// `k_j = |X_j|`, when outer factors are present.
    pub fn ks(&self) -> Option<Vec<usize>> {
        self.outer.as_ref().map(|o| o.x.iter().map(IndexSet::len).collect())
    }

    fn next(&self, j: usize) -> usize {
        (j + 1) % self.len()
    }

    fn prev(&self, j: usize) -> usize {
        (j + self.len() - 1) % self.len()
    }

    pub fn sign_bits(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `A_0 A_1 ... A_{d-1}`, an `n_0 x n_0` matrix.
    pub fn product_a(&self) -> ExactMatrix<R> {
        chain_product(&self.a)
    }

    fn require_outer(&self) -> Result<&OuterFactors<R>> {
        self.outer
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("configuration has no B, C, X, Y".into()))
    }

    fn require_addends(&self) -> Result<&[ExactMatrix<R>]> {
        self.addends
            .as_deref()
            .ok_or_else(|| Error::InvalidConfig("configuration has no D matrices".into()))
    }

    pub fn space(&self, caps: &EnumerationCaps) -> Result<TupleSpace> {
        TupleSpace::new(&self.dims, caps)
    }
}

fn chain_product<R: Ring>(mats: &[ExactMatrix<R>]) -> ExactMatrix<R> {
    let (first, rest) = mats.split_first().expect("nonempty cycle");
    rest.iter()
        .fold(first.clone(), |acc, m| acc.mul(m).expect("cycle shapes chain"))
}

/// `G_0 x ... x G_{d-1}` with `G_j` the signed permutations of degree
/// `n_j`. Ranks are mixed-radix with block 0 most significant.
#[derive(Clone, Debug)]
pub struct TupleSpace {
    groups: Vec<SignedPermutations>,
    total: usize,
}

impl TupleSpace {
    pub fn new(dims: &[usize], caps: &EnumerationCaps) -> Result<Self> {
        caps.check_sign_bits(dims.iter().sum())?;
        let groups = dims
            .iter()
            .map(|&n| SignedPermutations::new(n, caps))
            .collect::<Result<Vec<_>>>()?;
        let total = groups
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.len()))
            .ok_or(Error::CapExceeded { what: "tuple count", requested: usize::MAX, cap: usize::MAX })?;
        Ok(TupleSpace { groups, total })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn group(&self, j: usize) -> &SignedPermutations {
        &self.groups[j]
    }

    pub fn digits(&self, mut rank: usize) -> Vec<usize> {
        let mut digits = vec![0; self.groups.len()];
        for (j, g) in self.groups.iter().enumerate().rev() {
            digits[j] = rank % g.len();
            rank /= g.len();
        }
        digits
    }

    fn advance(&self, digits: &mut [usize]) {
        for j in (0..digits.len()).rev() {
            digits[j] += 1;
            if digits[j] < self.groups[j].len() {
                return;
            }
            digits[j] = 0;
        }
    }

    pub fn unrank(&self, rank: usize) -> Vec<SignedPermutation> {
        self.digits(rank)
            .into_iter()
            .zip(&self.groups)
            .map(|(i, g)| g.unrank(i))
            .collect()
    }
}

/// `f(j, g, h)` for every `g in G_j`, `h in G_{j+1}`, flattened row-major.
fn pair_tables<R: Ring, T>(
    cfg: &CycleConfig<R>,
    space: &TupleSpace,
    f: impl Fn(usize, &SignedPermutation, &SignedPermutation) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    (0..cfg.len())
        .map(|j| {
            let right: Vec<_> = space.group(cfg.next(j)).iter().collect();
            let mut table = Vec::with_capacity(space.group(j).len() * right.len());
            for g in space.group(j).iter() {
                for h in &right {
                    table.push(f(j, &g, h)?);
                }
            }
            Ok(table)
        })
        .collect()
}

fn table_index(cfg_len: usize, space: &TupleSpace, digits: &[usize], j: usize) -> usize {
    let nj = (j + 1) % cfg_len;
    digits[j] * space.group(nj).len() + digits[nj]
}

/// `M(P, Q) = prod_j ((Q_j P_j) A_j (Q_{j+1} P_{j+1})^{-1} + D_j)`.
pub fn build_m<R: Ring>(cfg: &CycleConfig<R>, p: &[Permutation], q: &[SignVector]) -> Result<ExactMatrix<R>> {
    let addends = cfg.require_addends()?;
    if p.len() != cfg.len() || q.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} permutations and {} sign vectors for a cycle of length {}",
            p.len(),
            q.len(),
            cfg.len()
        )));
    }
    let g = p
        .iter()
        .zip(q)
        .map(|(p, q)| SignedPermutation::new(p.clone(), q.clone()))
        .collect::<Result<Vec<_>>>()?;
    let factors = (0..cfg.len())
        .map(|j| g[j].conjugate(&cfg.a[j], &g[cfg.next(j)])?.add(&addends[j]))
        .collect::<Result<Vec<_>>>()?;
    Ok(chain_product(&factors))
}

fn tuple_factor_tables<R: Ring>(cfg: &CycleConfig<R>, space: &TupleSpace) -> Result<Vec<Vec<R::Elem>>> {
    let outer = cfg.require_outer()?;
    pair_tables(cfg, space, |j, g, h| {
        let inner = g.conjugate(&cfg.a[j], h)?;
        let full = outer.b[j].mul(&inner)?.mul(&outer.c[j])?;
        full.minor(&outer.x[j], &outer.y[j])
    })
}

fn tuple_term<R: Ring>(ring: &R, tables: &[Vec<R::Elem>], space: &TupleSpace, digits: &[usize]) -> R::Elem {
    let d = tables.len();
    let mut acc = ring.one();
    for (j, table) in tables.iter().enumerate() {
        let f = &table[table_index(d, space, digits, j)];
        if ring.is_zero(f) {
            return ring.zero();
        }
        acc = ring.mul(&acc, f);
    }
    acc
}

/// Exhaustive sum over all `d`-tuples of signed permutations of
/// `prod_j [B_j (Q_j P_j) A_j (Q_{j+1} P_{j+1})^{-1} C_j]_{X_j, Y_j}`.
///
/// Each factor depends only on the adjacent pair `(g_j, g_{j+1})`, so the
/// factor values are tabulated first; the tuple enumeration itself is
/// complete.
pub fn tuple_product_sum_brute<R: Ring>(cfg: &CycleConfig<R>, caps: &EnumerationCaps, jobs: usize) -> Result<R::Elem> {
    let space = cfg.space(caps)?;
    let tables = tuple_factor_tables(cfg, &space)?;
    let ring = cfg.ring();
    Ok(partitioned_sum(ring, space.len(), jobs, |ranks| {
        let mut acc = ring.zero();
        let mut digits = space.digits(ranks.start);
        for _ in ranks {
            ring.add_assign(&mut acc, &tuple_term(ring, &tables, &space, &digits));
            space.advance(&mut digits);
        }
        acc
    }))
}

/// Smallest tuple rank whose term in the tuple-product sum is nonzero.
pub fn tuple_product_witness<R: Ring>(cfg: &CycleConfig<R>, caps: &EnumerationCaps) -> Result<Option<usize>> {
    let space = cfg.space(caps)?;
    let tables = tuple_factor_tables(cfg, &space)?;
    let ring = cfg.ring();
    let mut digits = space.digits(0);
    for rank in 0..space.len() {
        if !ring.is_zero(&tuple_term(ring, &tables, &space, &digits)) {
            return Ok(Some(rank));
        }
        space.advance(&mut digits);
    }
    Ok(None)
}

/// Zero unless all `k_j` agree; otherwise
/// `2^{sum n_j} prod_j (k! (n_j - k)! [B_j C_{j-1}]_{X_j, Y_{j-1}}) [prod_j A_j]^{(k)}`.
pub fn tuple_product_sum_closed<R: Ring>(cfg: &CycleConfig<R>) -> Result<R::Elem> {
    let outer = cfg.require_outer()?;
    let ring = cfg.ring();
    let k = outer.x[0].len();
    if outer.x.iter().any(|x| x.len() != k) {
        return Ok(ring.zero());
    }
    let mut acc = two_pow(ring, cfg.sign_bits() as u32);
    for j in 0..cfg.len() {
        let nj = cfg.dims[j] as u64;
        let count = factorial(k as u64) * factorial(nj - k as u64);
        let prev = cfg.prev(j);
        let bc = outer.b[j].mul(&outer.c[prev])?;
        let m = bc.minor(&outer.x[j], &outer.y[prev])?;
        acc = ring.mul(&acc, &ring.mul(&ring.from_integer(&count), &m));
    }
    Ok(ring.mul(&acc, &cfg.product_a().principal_minor_sum(k)?))
}

fn charpoly_summand_tables<R: Ring>(cfg: &CycleConfig<R>, space: &TupleSpace) -> Result<Vec<Vec<ExactMatrix<R>>>> {
    let addends = cfg.require_addends()?;
    pair_tables(cfg, space, |j, g, h| g.conjugate(&cfg.a[j], h)?.add(&addends[j]))
}

fn charpoly_term<R: Ring>(
    tables: &[Vec<ExactMatrix<R>>],
    space: &TupleSpace,
    digits: &[usize],
) -> Polynomial<R::Elem> {
    let d = tables.len();
    let factors: Vec<ExactMatrix<R>> = (0..d)
        .map(|j| tables[j][table_index(d, space, digits, j)].clone())
        .collect();
    charpoly_coeffs(&chain_product(&factors)).expect("product is square")
}

/// `sum_{P,Q} det(xI + M(P,Q))` by enumeration, low-to-high, `n_0 + 1`
/// coefficients.
pub fn charpoly_sum_brute<R: Ring>(
    cfg: &CycleConfig<R>,
    caps: &EnumerationCaps,
    jobs: usize,
) -> Result<Polynomial<R::Elem>> {
    let space = cfg.space(caps)?;
    let tables = charpoly_summand_tables(cfg, &space)?;
    let px = PolyRing::new(cfg.ring().clone());
    let total = partitioned_sum(&px, space.len(), jobs, |ranks| {
        let mut acc = px.zero();
        let mut digits = space.digits(ranks.start);
        for _ in ranks {
            px.add_assign(&mut acc, &charpoly_term(&tables, &space, &digits));
            space.advance(&mut digits);
        }
        acc
    });
    Ok(px.padded(&total, cfg.dims[0] + 1))
}

/// Smallest tuple rank whose `det(xI + M)` has a nonzero coefficient at
/// `x^(n_0 - i)`.
pub fn charpoly_sum_witness<R: Ring>(cfg: &CycleConfig<R>, caps: &EnumerationCaps, i: usize) -> Result<Option<usize>> {
    let space = cfg.space(caps)?;
    let tables = charpoly_summand_tables(cfg, &space)?;
    let n0 = cfg.dims[0];
    let ring = cfg.ring();
    let mut digits = space.digits(0);
    for rank in 0..space.len() {
        let term = charpoly_term(&tables, &space, &digits);
        if term.top_down(n0, i).is_some_and(|c| !ring.is_zero(c)) {
            return Ok(Some(rank));
        }
        space.advance(&mut digits);
    }
    Ok(None)
}

/// `prod_j (n_j - k + i)! (n_j - i)! / (n_j - k)!`, with the quotient taken
/// as a falling factorial. Terms with `i > n_j` or `k - i > n_j` are zero:
/// they multiply `p_i` or `q_{k-i}`, which vanish for such indices because
/// the products have rank at most `n_j`.
fn convolution_weight(dims: &[usize], k: usize, i: usize) -> num_bigint::BigInt {
    dims.iter()
        .map(|&n| {
            if i > n || k - i > n {
                return num_bigint::BigInt::from(0);
            }
            let top = n as i64 - k as i64 + i as i64;
            falling_factorial(top, i as u64) * factorial((n - i) as u64)
        })
        .product()
}

/// `r_k = 2^{sum n_j} sum_i w(k, i) p_i q_{k-i}` where `p`, `q` are the
/// coefficients of `det(xI + prod A_j)` and `det(xI + prod D_j)` indexed
/// from the top (`p_i` multiplies `x^(n_0 - i)`). Returned low-to-high.
pub fn charpoly_sum_closed<R: Ring>(cfg: &CycleConfig<R>) -> Result<Polynomial<R::Elem>> {
    let addends = cfg.require_addends()?;
    let ring = cfg.ring();
    let n0 = cfg.dims[0];
    let p = charpoly_coeffs(&cfg.product_a())?.top_down_coeffs();
    let q = charpoly_coeffs(&chain_product(addends))?.top_down_coeffs();
    let scale = two_pow(ring, cfg.sign_bits() as u32);
    let r = (0..=n0)
        .map(|k| {
            let mut acc = ring.zero();
            for i in 0..=k {
                let w = ring.from_integer(&convolution_weight(&cfg.dims, k, i));
                if ring.is_zero(&w) {
                    continue;
                }
                let t = ring.mul(&w, &ring.mul(&p[i], &q[k - i]));
                ring.add_assign(&mut acc, &t);
            }
            ring.mul(&scale, &acc)
        })
        .collect();
    Ok(Polynomial::from_top_down(r))
}

/// Both sides of the charpoly-sum identity, top-down (`r_0` first).
#[derive(Clone, Debug, PartialEq)]
pub struct CharpolySumReport<E> {
    pub p: Vec<E>,
    pub q: Vec<E>,
    pub r_closed: Vec<E>,
    pub r_brute: Vec<E>,
    pub matches: Vec<bool>,
}

impl<E> CharpolySumReport<E> {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }
}

pub fn charpoly_sum_report<R: Ring>(
    cfg: &CycleConfig<R>,
    caps: &EnumerationCaps,
    jobs: usize,
) -> Result<CharpolySumReport<R::Elem>> {
    let addends = cfg.require_addends()?;
    let r_closed = charpoly_sum_closed(cfg)?.top_down_coeffs();
    let r_brute = charpoly_sum_brute(cfg, caps, jobs)?.top_down_coeffs();
    let matches = r_closed.iter().zip(&r_brute).map(|(a, b)| a == b).collect();
    Ok(CharpolySumReport {
        p: charpoly_coeffs(&cfg.product_a())?.top_down_coeffs(),
        q: charpoly_coeffs(&chain_product(addends))?.top_down_coeffs(),
        r_closed,
        r_brute,
        matches,
    })
}
