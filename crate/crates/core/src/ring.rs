//! Commutative rings with identity.
//!
//! Every algorithm in this crate is generic over [`Ring`]. Integer
//! coefficients (factorials, powers of two, signs) are always computed in
//! `BigInt` first and then pushed through [`Ring::from_integer`], the unique
//! ring homomorphism from the integers, so nothing ever divides by a ring
//! element.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A commutative ring with identity.
///
/// The ring object carries whatever runtime parameters the ring needs (the
/// modulus of `Z/mZ`, the base ring of a polynomial ring); elements are plain
/// values.
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of `z` under the canonical map from the integers.
    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, z: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, z: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(z))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// A ring that can be named by a [`RingSpec`] and whose elements have a
/// textual form (decimal for integers and residues, `p/q` for rationals).
pub trait BaseRing: Ring {
    fn spec(&self) -> RingSpec;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

/// `(-1)^e`, decided by the parity of `e`. Negative exponents are allowed.
pub fn sign_power<R: Ring>(ring: &R, e: i64) -> R::Elem {
    if e.rem_euclid(2) == 0 {
        ring.one()
    } else {
        ring.neg(&ring.one())
    }
}

/// `2^e` computed in the integers, then embedded.
pub fn two_pow<R: Ring>(ring: &R, e: u32) -> R::Elem {
    ring.from_integer(&(BigInt::one() << e))
}

/// The integers, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_integer(&self, z: &BigInt) -> BigInt {
        z.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut BigInt, b: &BigInt) {
        *acc += b;
    }
}

impl BaseRing for Integers {
    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    }
}

/// The rationals, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_integer(&self, z: &BigInt) -> BigRational {
        BigRational::from_integer(z.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut BigRational, b: &BigRational) {
        *acc += b;
    }
}

impl BaseRing for Rationals {
    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator: {s:?}")));
                }
                Ok(BigRational::new(p, q))
            }
        }
    }
}

/// A modulus `m >= 2`. Composite values are fine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// `Z/mZ`, elements stored as canonical residues in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zmod {
    m: u64,
}

impl Zmod {
    pub fn new(modulus: Modulus) -> Self {
        Zmod { m: modulus.get() }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn from_integer(&self, z: &BigInt) -> u64 {
        z.mod_floor(&BigInt::from(self.m))
            .to_u64()
            .expect("residue fits in u64")
    }
}

impl BaseRing for Zmod {
    fn spec(&self) -> RingSpec {
        RingSpec::Modular(Modulus(self.m))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let z: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer residue: {s:?}")))?;
        Ok(self.from_integer(&z))
    }
}

/// Names one of the base rings. Serializes as
/// `{"kind": "int" | "rat" | "mod", "modulus": m}` and parses from the
/// command-line form `int`, `rat` or `mod:<m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingSpecRepr", into = "RingSpecRepr")]
pub enum RingSpec {
    Integers,
    Rationals,
    Modular(Modulus),
}

impl RingSpec {
    pub fn modular(m: u64) -> Result<Self> {
        Ok(RingSpec::Modular(Modulus::new(m)?))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSpecRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
}

impl TryFrom<RingSpecRepr> for RingSpec {
    type Error = Error;

    fn try_from(repr: RingSpecRepr) -> Result<Self> {
        match (repr.kind.as_str(), repr.modulus) {
            ("int", None) => Ok(RingSpec::Integers),
            ("rat", None) => Ok(RingSpec::Rationals),
            ("mod", Some(m)) => RingSpec::modular(m),
            ("mod", None) => Err(Error::InvalidRing("ring kind \"mod\" needs a modulus".into())),
            ("int" | "rat", Some(_)) => Err(Error::InvalidRing(format!(
                "ring kind {:?} takes no modulus",
                repr.kind
            ))),
            (other, _) => Err(Error::InvalidRing(format!("unknown ring kind {other:?}"))),
        }
    }
}

impl From<RingSpec> for RingSpecRepr {
    fn from(spec: RingSpec) -> Self {
        match spec {
            RingSpec::Integers => RingSpecRepr { kind: "int".into(), modulus: None },
            RingSpec::Rationals => RingSpecRepr { kind: "rat".into(), modulus: None },
            RingSpec::Modular(m) => RingSpecRepr { kind: "mod".into(), modulus: Some(m.get()) },
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("int"),
            RingSpec::Rationals => f.write_str("rat"),
            RingSpec::Modular(m) => write!(f, "mod:{}", m.get()),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "int" => Ok(RingSpec::Integers),
            "rat" => Ok(RingSpec::Rationals),
            other => {
                let m = other
                    .strip_prefix("mod:")
                    .ok_or_else(|| Error::InvalidRing(format!("expected int, rat or mod:<m>, got {other:?}")))?;
                let m: u64 = m
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad modulus {m:?}")))?;
                RingSpec::modular(m)
            }
        }
    }
}

/// Runs `$body` with `$ring` bound to the concrete ring named by `$spec`.
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, $ring:ident => $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                let $ring = $crate::ring::Integers;
                $body
            }
            $crate::ring::RingSpec::Rationals => {
                let $ring = $crate::ring::Rationals;
                $body
            }
            $crate::ring::RingSpec::Modular(m) => {
                let $ring = $crate::ring::Zmod::new(m);
                $body
            }
        }
    };
}

/// `n!` as an integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x (x-1) ... (x-len+1)`; the empty product is one.
pub fn falling_factorial(x: i64, len: u64) -> BigInt {
    (0..len as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zmod(m: u64) -> Zmod {
        Zmod::new(Modulus::new(m).unwrap())
    }

    fn check_axioms<R: Ring>(ring: &R, samples: &[R::Elem]) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = &samples[rng.random_range(0..samples.len())];
            let b = &samples[rng.random_range(0..samples.len())];
            let c = &samples[rng.random_range(0..samples.len())];
            assert_eq!(ring.add(a, b), ring.add(b, a));
            assert_eq!(ring.mul(a, b), ring.mul(b, a));
            assert_eq!(ring.add(&ring.add(a, b), c), ring.add(a, &ring.add(b, c)));
            assert_eq!(ring.mul(&ring.mul(a, b), c), ring.mul(a, &ring.mul(b, c)));
            assert_eq!(
                ring.mul(a, &ring.add(b, c)),
                ring.add(&ring.mul(a, b), &ring.mul(a, c))
            );
            assert_eq!(ring.add(a, &ring.zero()), *a);
            assert_eq!(ring.mul(a, &ring.one()), *a);
            assert!(ring.is_zero(&ring.add(&ring.neg(a), a)));
        }
    }

    fn samples<R: Ring>(ring: &R) -> Vec<R::Elem> {
        (-9..=9).map(|z| ring.from_i64(z * z * z - 3 * z)).collect()
    }

    #[test]
    fn ring_axioms_hold_on_random_triples() {
        check_axioms(&Integers, &samples(&Integers));
        let rats: Vec<BigRational> = (-6..=6)
            .flat_map(|p| (1..=4).map(move |q| BigRational::new(p.into(), BigInt::from(q))))
            .collect();
        check_axioms(&Rationals, &rats);
        for m in [2, 5, 6, 7, 12] {
            check_axioms(&zmod(m), &samples(&zmod(m)));
        }
    }

    #[test]
    fn from_integer_examples() {
        assert_eq!(Integers.from_i64(7), BigInt::from(7));
        assert_eq!(zmod(2).from_i64(2), 0);
        assert_eq!(zmod(5).from_i64(-6), 4);
    }

    #[test]
    fn from_integer_is_a_homomorphism() {
        let r = zmod(6);
        for a in -20i64..20 {
            for b in -20i64..20 {
                assert_eq!(r.from_i64(a + b), r.add(&r.from_i64(a), &r.from_i64(b)));
                assert_eq!(r.from_i64(a * b), r.mul(&r.from_i64(a), &r.from_i64(b)));
            }
        }
    }

    #[test]
    fn factorial_embeds_like_iterated_product() {
        let r = zmod(7);
        for k in 0..=8u64 {
            let iterated = (1..=k as i64).fold(r.one(), |acc, i| r.mul(&acc, &r.from_i64(i)));
            assert_eq!(r.from_integer(&factorial(k)), iterated);
        }
    }

    #[test]
    fn sign_power_examples() {
        assert_eq!(sign_power(&Integers, 0), BigInt::from(1));
        assert_eq!(sign_power(&Integers, -1), BigInt::from(-1));
        assert_eq!(sign_power(&zmod(2), 3), 1);
    }

    #[test]
    fn sign_power_is_additive_in_exponent() {
        for r in [zmod(5), zmod(2)] {
            for a in -10..=10 {
                for b in -10..=10 {
                    assert_eq!(
                        sign_power(&r, a + b),
                        r.mul(&sign_power(&r, a), &sign_power(&r, b))
                    );
                }
            }
        }
    }

    #[test]
    fn two_pow_examples() {
        assert_eq!(two_pow(&Integers, 3), BigInt::from(8));
        assert_eq!(two_pow(&zmod(2), 1), 0);
        assert_eq!(two_pow(&zmod(7), 4), 2);
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 0), BigInt::from(1));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(1, 3), BigInt::from(0));
    }

    #[test]
    fn ring_spec_text_and_json_forms() {
        assert_eq!("mod:2".parse::<RingSpec>().unwrap(), RingSpec::modular(2).unwrap());
        assert!("mod:1".parse::<RingSpec>().is_err());
        assert!("real".parse::<RingSpec>().is_err());
        let json = serde_json::to_string(&RingSpec::modular(5).unwrap()).unwrap();
        assert_eq!(json, r#"{"kind":"mod","modulus":5}"#);
        assert_eq!(serde_json::to_string(&RingSpec::Integers).unwrap(), r#"{"kind":"int"}"#);
        let back: RingSpec = serde_json::from_str(r#"{"kind":"rat"}"#).unwrap();
        assert_eq!(back, RingSpec::Rationals);
        assert!(serde_json::from_str::<RingSpec>(r#"{"kind":"mod"}"#).is_err());
        assert!(serde_json::from_str::<RingSpec>(r#"{"kind":"int","modulus":3}"#).is_err());
    }

    #[test]
    fn element_text_forms() {
        let q = Rationals.parse("-3/6").unwrap();
        assert_eq!(Rationals.format(&q), "-1/2");
        assert_eq!(Rationals.format(&Rationals.parse("4/2").unwrap()), "2");
        assert!(Rationals.parse("1/0").is_err());
        assert_eq!(zmod(5).parse("-1").unwrap(), 4);
        assert!(Integers.parse("x").is_err());
    }
}
