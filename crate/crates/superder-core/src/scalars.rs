//! Exact field arithmetic over GF(p) (p an odd prime) and over the rationals.
//!
//! Scalars are canonical on construction: residues live in `0..p`, rationals
//! are reduced with a positive denominator. All arithmetic is exact; there is
//! no floating point anywhere in this crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A coefficient field: GF(p) for an odd prime p, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl Field {
    /// Validates and builds GF(p). Rejects p = 2 (characteristic 2 is
    /// excluded throughout) and composite p.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn rational() -> Field {
        Field::Rational
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar { field: *self, repr: Repr::Mod(0) },
            Field::Rational => Scalar { field: *self, repr: Repr::Rat(BigRational::zero()) },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar { field: *self, repr: Repr::Mod(r) }
            }
            Field::Rational => Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(n))),
            },
        }
    }

    pub fn from_rational(&self, value: BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar { field: *self, repr: Repr::Rat(value) }),
            Field::Prime(_) => Err(Error::ScalarParse(value.to_string(), self.to_string())),
        }
    }

    /// The inverse of 2 — the distinguished value delta = 1/2.
    pub fn one_half(&self) -> Scalar {
        self.from_i64(2).inv().expect("2 is invertible when char != 2")
    }

    /// Parses the interchange form "n" (any field) or "n/d" (rationals only).
    /// Over GF(p) a fraction string is rejected: residues are written out.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::ScalarParse(s.to_string(), self.to_string());
        match self {
            Field::Prime(p) => {
                let n: i128 = s.parse().map_err(|_| bad())?;
                let r = n.rem_euclid(*p as i128) as u64;
                Ok(Scalar { field: *self, repr: Repr::Mod(r) })
            }
            Field::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar { field: *self, repr: Repr::Rat(BigRational::new(num, den)) })
            }
        }
    }

    /// All field elements in canonical order. Only available over GF(p);
    /// used by the finite delta scan and the exhaustive map oracles.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Ok((0..*p)
                .map(|r| Scalar { field: *self, repr: Repr::Mod(r) })
                .collect()),
            Field::Rational => Err(Error::RequiresFiniteField),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Mod(u64),
    Rat(BigRational),
}

/// An exact field element, canonical from construction onward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mod(r) => *r == 0,
            Repr::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Mod(r) => *r == 1,
            Repr::Rat(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match (&self.repr, self.field) {
            (Repr::Mod(r), Field::Prime(p)) => Repr::Mod(mod_inv(*r, p)),
            (Repr::Rat(q), _) => Repr::Rat(q.recip()),
            _ => unreachable!("repr always matches field"),
        };
        Ok(Scalar { field: self.field, repr })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// The underlying rational value. Panics over GF(p).
    pub fn as_rational(&self) -> &BigRational {
        match &self.repr {
            Repr::Rat(q) => q,
            Repr::Mod(_) => panic!("as_rational called on a GF(p) scalar"),
        }
    }

    /// The canonical residue. Panics over the rationals.
    pub fn as_residue(&self) -> u64 {
        match &self.repr {
            Repr::Mod(r) => *r,
            Repr::Rat(_) => panic!("as_residue called on a rational scalar"),
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalar field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(r) => write!(f, "{r}"),
            Repr::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr, self.field) {
            (Repr::Mod(a), Repr::Mod(b), Field::Prime(p)) => Repr::Mod(mod_add(*a, *b, p)),
            (Repr::Rat(a), Repr::Rat(b), _) => Repr::Rat(a + b),
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr, self.field) {
            (Repr::Mod(a), Repr::Mod(b), Field::Prime(p)) => Repr::Mod(mod_add(*a, p - *b, p)),
            (Repr::Rat(a), Repr::Rat(b), _) => Repr::Rat(a - b),
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr, self.field) {
            (Repr::Mod(a), Repr::Mod(b), Field::Prime(p)) => {
                Repr::Mod(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            (Repr::Rat(a), Repr::Rat(b), _) => Repr::Rat(a * b),
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match (&self.repr, self.field) {
            (Repr::Mod(a), Field::Prime(p)) => Repr::Mod(if *a == 0 { 0 } else { p - *a }),
            (Repr::Rat(a), _) => Repr::Rat(-a),
            _ => unreachable!(),
        };
        Scalar { field: self.field, repr }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    mod_pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
