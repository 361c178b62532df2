//! Univariate polynomials over a ring, and `det(xI + A)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::Ring;

/// Dense coefficient list, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Polynomial<E> {
    /// Wraps a low-to-high coefficient list. An empty list is not a
    /// polynomial; use at least the constant term.
    pub fn from_coeffs(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial has at least a constant term");
        Polynomial { coeffs }
    }

    /// Builds `sum_i x^(n-i) c_i` from `c_0, ..., c_n`.
    pub fn from_top_down(mut coeffs: Vec<E>) -> Self {
        coeffs.reverse();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient of `x^(n-i)`, the indexing used for `det(xI + A)`.
    pub fn top_down(&self, n: usize, i: usize) -> Option<&E> {
        n.checked_sub(i).and_then(|deg| self.coeffs.get(deg))
    }

    /// Coefficients listed from `x^n` down to `x^0`.
    pub fn top_down_coeffs(&self) -> Vec<E> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

/// `K[x]` for a base ring `K`. Elements are kept trimmed: no trailing zero
/// coefficients beyond the constant term.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn constant(&self, c: R::Elem) -> Polynomial<R::Elem> {
        self.normalize(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(&self) -> Polynomial<R::Elem> {
        self.normalize(vec![self.base.zero(), self.base.one()])
    }

    fn normalize(&self, mut coeffs: Vec<R::Elem>) -> Polynomial<R::Elem> {
        while coeffs.len() > 1 && self.base.is_zero(coeffs.last().unwrap()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(self.base.zero());
        }
        Polynomial { coeffs }
    }

    /// Pads with zeros up to `len` coefficients.
    pub fn padded(&self, p: &Polynomial<R::Elem>, len: usize) -> Polynomial<R::Elem> {
        let mut coeffs = p.coeffs.clone();
        coeffs.resize(len.max(coeffs.len()), self.base.zero());
        Polynomial { coeffs }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Polynomial<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                self.base.add(x, y)
            })
            .collect();
        self.normalize(coeffs)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.normalize(a.coeffs.iter().map(|c| self.base.neg(c)).collect())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut coeffs = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(x, y);
                self.base.add_assign(&mut coeffs[i + j], &t);
            }
        }
        self.normalize(coeffs)
    }

    fn from_integer(&self, z: &BigInt) -> Self::Elem {
        self.constant(self.base.from_integer(z))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.len() == 1 && self.base.is_zero(&a.coeffs[0])
    }
}

/// Coefficients of `det(xI + A)`, low-to-high, always `n + 1` of them.
/// The coefficient of `x^(n-i)` is the sum of the `i x i` principal minors.
pub fn charpoly_coeffs<R: Ring>(a: &ExactMatrix<R>) -> Result<Polynomial<R::Elem>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let px = PolyRing::new(a.ring().clone());
    let x = px.x();
    let shifted = ExactMatrix::from_fn(px.clone(), n, n, |i, j| {
        let c = px.constant(a.get(i, j).clone());
        if i == j {
            px.add(&c, &x)
        } else {
            c
        }
    });
    let det = shifted.determinant()?;
    Ok(px.padded(&det, n + 1))
}
