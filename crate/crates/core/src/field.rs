//! Exact scalar fields used by the linear algebra layer.
//!
//! A [`Field`] is a small value describing the arithmetic; elements are plain
//! data (`BigRational` or reduced residues) and every operation goes through
//! the field value. This keeps prime fields with a runtime modulus on the same
//! footing as the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Serializable tag naming the active field ("Q" or "Fp:p").
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(FieldTag::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| format!("unknown field tag `{s}`"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        Ok(FieldTag::Prime(p))
    }
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of an integer in the field.
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Image of a rational; `None` if the denominator vanishes in the field.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Every element of a finite field, in a fixed order. `None` for infinite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Lossless rendering used in serialized representations.
    fn render(&self, a: &Self::Elem) -> String;
    /// A rational lift: the value itself over Q, the residue in `0..p` over F_p.
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// The prime field F_p, `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below 2^32.
    pub fn new(p: u64) -> Option<Self> {
        (p < (1 << 32) && is_prime(p)).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let den = self.from_bigint(v.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_bigint(v.numer()), &inv))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_rational(&self, a: &u64) -> Option<BigRational> {
        Some(BigRational::from_integer(BigInt::from(*a)))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses the lossless rendering produced by [`Field::render`].
pub fn parse_elem<K: Field>(k: &K, s: &str) -> Option<K::Elem> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    k.from_rational(&BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = PrimeField::new(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(f.from_rational(&fifth), None);
    }

    #[test]
    fn tags_roundtrip() {
        for t in [FieldTag::Rationals, FieldTag::Prime(3)] {
            assert_eq!(t.to_string().parse::<FieldTag>().unwrap(), t);
        }
        assert!("Fp:4".parse::<FieldTag>().is_err());
        assert!(PrimeField::new(9).is_none());
    }

    #[test]
    fn parse_rendered() {
        let q = Rationals;
        let x = BigRational::new((-3).into(), 4.into());
        assert_eq!(parse_elem(&q, &q.render(&x)), Some(x));
        let f = PrimeField::new(11).unwrap();
        assert_eq!(parse_elem(&f, "-1"), Some(10));
    }
}
