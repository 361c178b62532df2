//! Dense rectangular matrices over a [`Ring`], with division-free
//! determinants, minors and compound matrices.

use crate::error::{Error, Result};
use crate::index_set::{binomial, IndexSet};
use crate::ring::{sign_power, Ring};

/// Largest size handled by cofactor expansion; larger determinants use the
/// O(n^4) division-free iteration.
const COFACTOR_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> ExactMatrix<R> {
    /// Builds a matrix from row-major `entries`.
    pub fn new(ring: R, rows: usize, cols: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { ring, rows, cols, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, row 1 has {c}",
                bad + 1,
                rows[bad].len()
            )));
        }
        ExactMatrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers, embedded into the ring.
    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&z| ring.from_i64(z)).collect())
            .collect();
        ExactMatrix::from_rows(ring, rows)
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { ring, rows, cols, entries }
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let zero = ring.zero();
        ExactMatrix::from_fn(ring, rows, cols, |_, _| zero.clone())
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let (zero, one) = (ring.zero(), ring.one());
        ExactMatrix::from_fn(ring, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, ring: S, mut f: impl FnMut(&R::Elem) -> S::Elem) -> ExactMatrix<S> {
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(ExactMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = ExactMatrix::zeros(r.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = r.mul(a, other.get(l, j));
                    r.add_assign(&mut out.entries[i * other.cols + j], &t);
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given rows and columns, kept in ascending order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        self.check_rows(rows)?;
        self.check_cols(cols)?;
        let entries = rows
            .zero_based()
            .flat_map(|i| cols.zero_based().map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(ExactMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries })
    }

    fn check_rows(&self, s: &IndexSet) -> Result<()> {
        check_bound(s, self.rows)
    }

    fn check_cols(&self, s: &IndexSet) -> Result<()> {
        check_bound(s, self.cols)
    }

    /// Determinant by a division-free method, valid over any commutative
    /// ring. The 0x0 determinant is one.
    pub fn determinant(&self) -> Result<R::Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= COFACTOR_LIMIT {
            Ok(self.cofactor_det(0, 0))
        } else {
            Ok(self.bird_det())
        }
    }

    /// Laplace expansion along rows `row..n`, `used` marks taken columns.
    fn cofactor_det(&self, row: usize, used: u32) -> R::Elem {
        let n = self.rows;
        let r = &self.ring;
        if row == n {
            return r.one();
        }
        let mut acc = r.zero();
        let mut free_before = 0;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let a = self.get(row, c);
            if !r.is_zero(a) {
                let sub = self.cofactor_det(row + 1, used | (1 << c));
                let term = r.mul(a, &sub);
                if free_before % 2 == 0 {
                    r.add_assign(&mut acc, &term);
                } else {
                    r.add_assign(&mut acc, &r.neg(&term));
                }
            }
            free_before += 1;
        }
        acc
    }

    /// Bird's iteration: `X <- mu(X) A` applied `n - 1` times starting from
    /// `A`, where `mu(X)` keeps the strict upper triangle of `X` and puts
    /// `-(x_{i+1,i+1} + ... + x_{n,n})` on the diagonal. Then
    /// `det A = (-1)^(n-1) X[0][0]`.
    fn bird_det(&self) -> R::Elem {
        let n = self.rows;
        let r = &self.ring;
        let mut x = self.clone();
        for _ in 1..n {
            let mut mu = ExactMatrix::zeros(r.clone(), n, n);
            let mut tail = r.zero();
            for i in (0..n).rev() {
                mu.entries[i * n + i] = r.neg(&tail);
                r.add_assign(&mut tail, x.get(i, i));
                for j in i + 1..n {
                    mu.entries[i * n + j] = x.get(i, j).clone();
                }
            }
            x = mu.mul(self).expect("square");
        }
        r.mul(&sign_power(r, n as i64 - 1), x.get(0, 0))
    }

    /// `[A]_{S,T}`: determinant of the rows `S` and columns `T`, both in
    /// ascending order. The empty minor is one.
    pub fn minor(&self, s: &IndexSet, t: &IndexSet) -> Result<R::Elem> {
        if s.len() != t.len() {
            return Err(Error::SizeMismatch(format!(
                "row set has {} elements, column set has {}",
                s.len(),
                t.len()
            )));
        }
        self.submatrix(s, t)?.determinant()
    }

    /// `C(rows, k) x C(cols, k)` matrix of all `k x k` minors, with rows and
    /// columns indexed by `k`-subsets in lexicographic order.
    pub fn compound(&self, k: usize) -> Result<Self> {
        if k > self.rows.min(self.cols) {
            return Err(Error::SizeMismatch(format!(
                "compound order {k} exceeds min({}, {})",
                self.rows, self.cols
            )));
        }
        let row_sets: Vec<_> = IndexSet::subsets(self.rows, k).collect();
        let col_sets: Vec<_> = IndexSet::subsets(self.cols, k).collect();
        let mut entries = Vec::with_capacity(row_sets.len() * col_sets.len());
        for s in &row_sets {
            for t in &col_sets {
                entries.push(self.minor(s, t)?);
            }
        }
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            rows: binomial(self.rows, k),
            cols: binomial(self.cols, k),
            entries,
        })
    }

    /// `[A]^{(k)}`: sum of the principal `k x k` minors.
    pub fn principal_minor_sum(&self, k: usize) -> Result<R::Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if k > self.rows {
            return Err(Error::SizeMismatch(format!(
                "principal minor order {k} exceeds size {}",
                self.rows
            )));
        }
        let mut acc = self.ring.zero();
        for s in IndexSet::subsets(self.rows, k) {
            let m = self.minor(&s, &s)?;
            self.ring.add_assign(&mut acc, &m);
        }
        Ok(acc)
    }
}

fn check_bound(s: &IndexSet, bound: usize) -> Result<()> {
    match s.elements().iter().find(|&&e| e > bound) {
        Some(&e) => Err(Error::IndexOutOfRange { index: e, bound }),
        None => Ok(()),
    }
}

/// `sum_U [A]_{S,U} [B]_{U,T}` over all `k`-subsets `U` of the inner
/// dimension. Equals `[AB]_{S,T}`.
pub fn minor_of_product<R: Ring>(
    a: &ExactMatrix<R>,
    b: &ExactMatrix<R>,
    s: &IndexSet,
    t: &IndexSet,
) -> Result<R::Elem> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "inner dimensions {} and {} differ",
            a.cols(),
            b.rows()
        )));
    }
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(format!("|S| = {} but |T| = {}", s.len(), t.len())));
    }
    a.check_rows(s)?;
    b.check_cols(t)?;
    let ring = a.ring();
    let mut acc = ring.zero();
    for u in IndexSet::subsets(a.cols(), s.len()) {
        let left = a.minor(s, &u)?;
        if ring.is_zero(&left) {
            continue;
        }
        let term = ring.mul(&left, &b.minor(&u, t)?);
        ring.add_assign(&mut acc, &term);
    }
    Ok(acc)
}

/// Generalized Laplace expansion of `[A + D]_{S,T}`:
/// `sum_i sum_{U,V in C([k], i)} (-1)^{|U|_1 + |V|_1} [A]_{U(S),V(T)} [D]_{U'(S),V'(T)}`
/// where `U(S)` picks the elements of `S` at positions `U` and `U'` is the
/// complementary position set.
pub fn minor_of_sum_expansion<R: Ring>(
    a: &ExactMatrix<R>,
    d: &ExactMatrix<R>,
    s: &IndexSet,
    t: &IndexSet,
) -> Result<R::Elem> {
    if (a.rows(), a.cols()) != (d.rows(), d.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} and {}x{} differ in shape",
            a.rows(),
            a.cols(),
            d.rows(),
            d.cols()
        )));
    }
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(format!("|S| = {} but |T| = {}", s.len(), t.len())));
    }
    a.check_rows(s)?;
    a.check_cols(t)?;
    let ring = a.ring();
    let k = s.len();
    let mut acc = ring.zero();
    for i in 0..=k {
        for u in IndexSet::subsets(k, i) {
            let (rows_a, rows_d) = (s.select(&u)?, s.select(&u.complement())?);
            for v in IndexSet::subsets(k, i) {
                let (cols_a, cols_d) = (t.select(&v)?, t.select(&v.complement())?);
                let ma = a.minor(&rows_a, &cols_a)?;
                if ring.is_zero(&ma) {
                    continue;
                }
                let term = ring.mul(&ma, &d.minor(&rows_d, &cols_d)?);
                let sign = sign_power(ring, (u.weight() + v.weight()) as i64);
                ring.add_assign(&mut acc, &ring.mul(&sign, &term));
            }
        }
    }
    Ok(acc)
}
