//! Exact coefficient fields.
//!
//! Two implementations are provided: prime fields `F_p` with machine-word
//! arithmetic ([`Fp`]) and the rationals ([`Rationals`]) backed by
//! arbitrary-precision fractions. Everything above this module is generic
//! over the [`Field`] trait.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Default prime for randomized experiments.
pub const DEFAULT_PRIME: u32 = 32003;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoefficientField {
    PrimeField { p: u32 },
    Rationals,
}

impl std::fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientField::PrimeField { p } => write!(f, "F_{p}"),
            CoefficientField::Rationals => write!(f, "QQ"),
        }
    }
}

/// An exact field with cheaply clonable elements.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a fraction `num/den`; fails when `den` vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, AlgebraError>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// A uniformly random element (rationals: a small random integer).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Signed, human-readable representative.
    fn format(&self, a: &Self::Elem) -> String;
    fn descriptor(&self) -> CoefficientField;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// True when the formatted value starts with a minus sign.
    fn is_negative_repr(&self, a: &Self::Elem) -> bool {
        self.format(a).starts_with('-')
    }
}

/// The prime field `Z/pZ` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Fp { p })
    }

    pub fn default_prime() -> Self {
        Fp { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce_u64(acc as u64 * base as u64);
            }
            base = self.reduce_u64(base as u64 * base as u64);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u32().expect("residue fits in u32")
    }
}

impl Field for Fp {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce_u64(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u32 {
        let r = n.rem_euclid(self.p as i64);
        r as u32
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u32, AlgebraError> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d).ok_or_else(|| {
            AlgebraError::NotRepresentable(format!("{num}/{den} has denominator divisible by {}", self.p))
        })?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn descriptor(&self) -> CoefficientField {
        CoefficientField::PrimeField { p: self.p }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::NotRepresentable(format!("{num}/0")));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Rationals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.mul(&3, &2), 1);
        assert_eq!(f.inv(&3), Some(2));
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.format(&4), "-1");
        assert!(Fp::new(32004).is_err());
        assert!(Fp::new(32003).is_ok());
    }

    #[test]
    fn fraction_denominator_divisible_by_p() {
        let f = Fp::new(7).unwrap();
        let err = f.from_fraction(&BigInt::from(1), &BigInt::from(14));
        assert!(matches!(err, Err(AlgebraError::NotRepresentable(_))));
        assert_eq!(f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap(), 4);
    }

    #[test]
    fn inverse_round_trip_mod_32003() {
        let f = Fp::default_prime();
        for a in [1u32, 2, 17, 16001, 32002] {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
    }
}
