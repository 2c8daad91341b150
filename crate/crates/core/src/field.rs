//! Exact coefficient fields: the rationals and prime fields F_p for odd p.
//!
//! Every value is immutable and every operation is a pure function, so
//! elements can be shared freely between threads. Arithmetic is dispatched
//! through [`FieldSpec`], which owns the modulus for prime fields; a
//! [`FieldElement`] is only meaningful relative to the field it was created
//! in, and mixing fields is a programming error (checked by assertions).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a computation: Q or F_p with p an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// An element of Q (reduced fraction, positive denominator) or of F_p
/// (canonical residue in 0..p-1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Mod(u64),
}

impl FieldSpec {
    /// F_p for an odd prime p. The characteristic-2 case is excluded
    /// throughout: square roots and the binomial expansion of sqrt(1 + t)
    /// both need 2 to be invertible.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => FieldElement::Mod(0),
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElement::Mod(r)
            }
        }
    }

    /// The fraction a/b mapped into the field. Over F_p this fails when
    /// p divides b.
    pub fn from_ratio(self, a: i64, b: i64) -> Result<FieldElement> {
        match self {
            FieldSpec::Rationals => {
                if b == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement::Rat(BigRational::new(
                    BigInt::from(a),
                    BigInt::from(b),
                )))
            }
            FieldSpec::PrimeField(_) => {
                let num = self.from_i64(a);
                let den = self.from_i64(b);
                self.div(&num, &den)
            }
        }
    }

    fn expect_mod(self, a: &FieldElement) -> u64 {
        match (self, a) {
            (FieldSpec::PrimeField(_), FieldElement::Mod(v)) => *v,
            _ => panic!("field mismatch: expected an F_p element"),
        }
    }

    fn expect_rat(self, a: &FieldElement) -> &BigRational {
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rat(r)) => r,
            _ => panic!("field mismatch: expected a rational element"),
        }
    }

    pub fn add(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rat(self.expect_rat(a) + self.expect_rat(b)),
            FieldSpec::PrimeField(p) => {
                FieldElement::Mod(addmod(self.expect_mod(a), self.expect_mod(b), p))
            }
        }
    }

    pub fn sub(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(self, a: &FieldElement) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rat(-self.expect_rat(a)),
            FieldSpec::PrimeField(p) => {
                let v = self.expect_mod(a);
                FieldElement::Mod(if v == 0 { 0 } else { p - v })
            }
        }
    }

    pub fn mul(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rat(self.expect_rat(a) * self.expect_rat(b)),
            FieldSpec::PrimeField(p) => {
                FieldElement::Mod(mulmod(self.expect_mod(a), self.expect_mod(b), p))
            }
        }
    }

    pub fn inv(self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(FieldElement::Rat(self.expect_rat(a).recip())),
            FieldSpec::PrimeField(p) => {
                // Fermat: a^(p-2) = a^(-1) for a != 0.
                Ok(FieldElement::Mod(powmod(self.expect_mod(a), p - 2, p)))
            }
        }
    }

    pub fn div(self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// A square root of c in the field, or None when c is not a square.
    ///
    /// Over Q the root is the positive one; over F_p the smaller of the two
    /// residues is returned. F_p roots are found by exhaustive search for
    /// p < 10^4 and by Tonelli-Shanks above that.
    pub fn sqrt(self, c: &FieldElement) -> Option<FieldElement> {
        match self {
            FieldSpec::Rationals => {
                let r = self.expect_rat(c);
                if r.is_negative() {
                    return None;
                }
                let num = exact_sqrt_bigint(r.numer())?;
                let den = exact_sqrt_bigint(r.denom())?;
                Some(FieldElement::Rat(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let v = self.expect_mod(c);
                if v == 0 {
                    return Some(FieldElement::Mod(0));
                }
                // Euler's criterion decides squareness.
                if powmod(v, (p - 1) / 2, p) != 1 {
                    return None;
                }
                let r = if p < 10_000 {
                    (1..p).find(|&r| mulmod(r, r, p) == v)?
                } else {
                    tonelli_shanks(v, p)?
                };
                Some(FieldElement::Mod(r.min(p - r)))
            }
        }
    }

    /// Canonical sign representative: over Q "positive", over F_p a residue
    /// in 1..=(p-1)/2. Used to pick one of each pair {a, -a}.
    pub fn is_canonical_positive(self, a: &FieldElement) -> bool {
        match self {
            FieldSpec::Rationals => self.expect_rat(a).is_positive(),
            FieldSpec::PrimeField(p) => {
                let v = self.expect_mod(a);
                v != 0 && v <= (p - 1) / 2
            }
        }
    }

    /// All field elements, for finite-field scans.
    pub fn elements(self) -> Result<impl Iterator<Item = FieldElement>> {
        match self {
            FieldSpec::Rationals => Err(Error::ExpectedPrimeField),
            FieldSpec::PrimeField(p) => Ok((0..p).map(FieldElement::Mod)),
        }
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Mod(v) => *v == 0,
        }
    }

    /// Bit size of the stored data; the height that explodes along
    /// non-torsion continued fractions over Q.
    pub fn bit_size(&self) -> u64 {
        match self {
            FieldElement::Rat(r) => r.numer().bits() + r.denom().bits(),
            FieldElement::Mod(_) => 64,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Mod(v) => *v == 1,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Mod(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn exact_sqrt_bigint(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if p % 4 == 3 {
        let r = powmod(n, (p + 1) / 4, p);
        return (mulmod(r, r, p) == n).then_some(r);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(n, q, p);
    let mut r = powmod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn prime_field_rejects_two_and_composites() {
        assert_eq!(FieldSpec::prime_field(2), Err(Error::NotOddPrime(2)));
        assert_eq!(FieldSpec::prime_field(9), Err(Error::NotOddPrime(9)));
        assert!(FieldSpec::prime_field(3).is_ok());
        assert!(FieldSpec::prime_field(10_007).is_ok());
    }

    #[test]
    fn rational_sqrt() {
        let c = q().from_ratio(4, 9).unwrap();
        assert_eq!(q().sqrt(&c), Some(q().from_ratio(2, 3).unwrap()));
        assert_eq!(q().sqrt(&q().from_i64(2)), None);
        assert_eq!(q().sqrt(&q().from_i64(-4)), None);
    }

    #[test]
    fn f7_sqrt_of_two_is_three() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        assert_eq!(f7.sqrt(&f7.from_i64(2)), Some(FieldElement::Mod(3)));
    }

    #[test]
    fn sqrt_agrees_with_exhaustive_search_on_small_fields() {
        for p in [3u64, 5, 7] {
            let f = FieldSpec::prime_field(p).unwrap();
            for v in 0..p {
                let has_root = (0..p).any(|r| r * r % p == v);
                let found = f.sqrt(&FieldElement::Mod(v));
                assert_eq!(found.is_some(), has_root, "p={p} v={v}");
                if let Some(FieldElement::Mod(r)) = found {
                    assert_eq!(r * r % p, v);
                }
            }
        }
    }

    #[test]
    fn sqrt_of_square_roundtrips() {
        let f = FieldSpec::prime_field(10_007).unwrap();
        for v in [1u64, 2, 17, 5000, 10_006] {
            let sq = f.mul(&FieldElement::Mod(v), &FieldElement::Mod(v));
            let r = f.sqrt(&sq).expect("square must have a root");
            assert_eq!(f.mul(&r, &r), sq);
        }
    }

    #[test]
    fn inverse_in_f5() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        for v in 1..5 {
            let a = FieldElement::Mod(v);
            let inv = f5.inv(&a).unwrap();
            assert!(f5.mul(&a, &inv).is_one());
        }
        assert_eq!(f5.inv(&f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let _ = f5.add(&f5.one(), &q().one());
    }
}
