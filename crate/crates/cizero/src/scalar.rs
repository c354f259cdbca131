//! Exact field scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Rationals are kept in lowest terms with positive denominator (the `num`
//! crate maintains that normal form). GF(p) elements are canonical
//! representatives in `[0, p)` with `p` a prime below `2^31`, so products
//! fit in `u64` before reduction.

use crate::error::Error;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// GF(p), p prime, p < 2^31.
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p >= (1 << 31) || !is_prime_u64(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Mod { value: 1, modulus: *p },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p64 = *p as i64;
                let mut r = n % p64;
                if r < 0 {
                    r += p64;
                }
                Scalar::Mod { value: r as u64, modulus: *p }
            }
        }
    }

    /// Embeds a fraction `num/den`; `den` must be nonzero and, over GF(p),
    /// not divisible by p.
    pub fn from_fraction(&self, num: i64, den: u64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            Field::Prime(_) => {
                let d = self.from_i64(den as i64);
                if d.is_zero() {
                    return Err(Error::Precondition(format!(
                        "denominator {} vanishes in {}",
                        den, self
                    )));
                }
                Ok(self.from_i64(num).mul(&d.inv().unwrap()))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({})", p),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod { value: (a + b) % (*p as u64), modulus: *p }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => {
                let p = *modulus as u64;
                Scalar::Mod { value: if *value == 0 { 0 } else { p - value }, modulus: *modulus }
            }
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod { value: (a * b) % (*p as u64), modulus: *p }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value, *modulus as u64 - 2, *modulus as u64),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True for rationals that are integers (used by the printer).
    pub fn rat_parts(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rat(r) => Some((r.numer().clone(), r.denom().clone())),
            _ => None,
        }
    }

    /// True when the scalar prints with a leading minus sign.
    pub fn is_negative_literal(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// Absolute value in the rational case, identity over GF(p).
    pub fn abs_literal(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            m => m.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{}", value),
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(1 << 32).is_err());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(2147483647).is_ok()); // 2^31 - 1
    }

    #[test]
    fn gf_inverse_and_canonical_range() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let s = f.from_i64(v);
            let i = s.inv().unwrap();
            assert!(s.mul(&i).is_one());
            match i {
                Scalar::Mod { value, .. } => assert!(value < 7),
                _ => unreachable!(),
            }
        }
        assert_eq!(f.from_i64(-3), f.from_i64(4));
    }

    #[test]
    fn rational_normal_form() {
        let f = Field::Rational;
        let half = f.from_fraction(2, 4).unwrap();
        assert_eq!(half, f.from_fraction(1, 2).unwrap());
        let neg = f.from_fraction(-6, 4).unwrap();
        let (n, d) = neg.rat_parts().unwrap();
        assert_eq!(n, BigInt::from(-3));
        assert_eq!(d, BigInt::from(2));
    }

    #[test]
    fn field_axioms_spot_checks() {
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            let vals: Vec<Scalar> = (-3..=3).map(|v| field.from_i64(v)).collect();
            for a in &vals {
                for b in &vals {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &vals {
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = Field::prime(13).unwrap();
        let x = f.from_i64(6);
        let mut acc = f.one();
        for e in 0..10 {
            assert_eq!(x.pow(e), acc);
            acc = acc.mul(&x);
        }
    }
}
