//! Exact coefficient arithmetic over the rationals or a prime field.
//!
//! `Field` is the arithmetic context and `Elem` the value; every operation
//! goes through the field so prime-field residues stay normalized. No
//! floating point is used anywhere in the cochain algebra.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
}

impl Field {
    /// Prime-field constructor; validates primality.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::invalid(format!("prime modulus {p} too large")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, `p` for a prime field.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::zero()),
            Field::Prime(_) => Elem::Mod(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::one()),
            Field::Prime(_) => Elem::Mod(1),
        }
    }

    pub fn from_integer(&self, value: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(value))),
            Field::Prime(p) => Elem::Mod(value.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(m) => *m == 0,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + p - y) % p),
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod((p - x) % p),
            _ => panic!("element does not belong to this field"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::invalid("division by zero"));
        }
        Ok(match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod(pow_mod(*x, p - 2, *p)),
            _ => panic!("element does not belong to this field"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    if p.is_multiple_of(3) {
        return p == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) || p.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let lower = s.to_ascii_lowercase();
        if lower == "q" || lower == "rationals" {
            return Ok(Field::Rationals);
        }
        if let Some(digits) = lower.strip_prefix('f') {
            let p = digits
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("unrecognized field `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::invalid(format!(
            "unrecognized field `{s}` (expected `q` or `f<prime>`)"
        )))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Mod(m) => write!(f, "{m}"),
        }
    }
}
