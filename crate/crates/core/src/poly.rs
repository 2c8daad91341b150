//! Dense univariate polynomials over an exact coefficient field.
//!
//! Coefficients are stored in ascending order of exponent (`coeffs[i]` is
//! the coefficient of u^i) with the invariant that the highest stored
//! coefficient is nonzero; the zero polynomial stores no coefficients and
//! has degree `None`. Degrees stay small in this crate (a few hundred at
//! most), so a dense representation is the right trade-off.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: FieldSpec, c: FieldElement) -> Self {
        Poly::new(field, vec![c])
    }

    /// The variable u itself.
    pub fn var(field: FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: FieldSpec, c: FieldElement, exp: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = c;
        Poly { field, coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending by
    /// exponent: `from_int_coeffs(F, &[-1, 0, 1])` is u^2 - 1.
    pub fn from_int_coeffs(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial mapped to `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn coeff(&self, exp: usize) -> FieldElement {
        self.coeffs
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<FieldElement> {
        self.is_constant().then(|| self.constant_term())
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiply by u^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field,
            coeffs,
        }
    }

    /// Quotient and remainder with deg rem < deg divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomialDivisor);
        }
        let f = self.field;
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.leading_coeff().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.deg() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = f.mul(&rem[i], &lc_inv);
            for j in 0..dd {
                let t = f.mul(&q, &divisor.coeffs[j]);
                rem[i - dd + j] = f.sub(&rem[i - dd + j], &t);
            }
            rem[i] = f.zero();
            quot[i - dd] = q;
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("division by zero polynomial");
        assert!(r.is_zero(), "div_exact: nonzero remainder");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic().map(|(m, _)| m).unwrap_or(a)
    }

    /// The monic multiple and the leading coefficient; None for zero.
    pub fn monic(&self) -> Option<(Poly, FieldElement)> {
        let lc = self.leading_coeff()?.clone();
        let inv = self.field.inv(&lc).expect("nonzero leading coefficient");
        Some((self.scale(&inv), lc))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Composition self(inner).
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.assert_same_field(inner);
        let f = self.field;
        let mut acc = Poly::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(f, c.clone());
        }
        acc
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Exact square root: s with s^2 = self, or None. The sign of s is
    /// normalized so that its leading coefficient is the canonical field
    /// square root of our leading coefficient.
    pub fn sqrt(&self) -> Option<Poly> {
        let f = self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.deg();
        if !d.is_multiple_of(2) {
            return None;
        }
        let r = f.sqrt(self.leading_coeff().unwrap())?;
        let half = d / 2;
        let two_r_inv = f.inv(&f.mul(&f.from_i64(2), &r)).expect("char != 2");
        let mut s = vec![f.zero(); half + 1];
        s[half] = r;
        // Descending recurrence: coefficient of u^(d - k) in s^2 must match.
        for k in 1..=half {
            let target = self.coeff(d - k);
            let mut conv = f.zero();
            // sum over i + j = d - k with half - k < i, j <= half
            for i in (half - k + 1)..=half {
                let j = d - k - i;
                if j > half || j <= half - k {
                    continue;
                }
                conv = f.add(&conv, &f.mul(&s[i], &s[j]));
            }
            s[half - k] = f.mul(&f.sub(&target, &conv), &two_r_inv);
        }
        let cand = Poly::new(f, s);
        (&cand * &cand == *self).then_some(cand)
    }

    /// True when self = c * h^2 for a constant c, i.e. every root has even
    /// multiplicity. Constants count as trivial squares times constants.
    pub fn is_const_times_square(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.is_constant() {
            return true;
        }
        let (m, _) = self.monic().unwrap();
        m.sqrt().is_some()
    }

    /// Over F_p with all exponents divisible by p, the unique p-th root
    /// (Frobenius is the identity on F_p, so coefficients carry over).
    pub fn pth_root(&self, p: u64) -> Result<Poly> {
        let f = self.field;
        let step = p as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % step == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return Err(Error::NotPthPowerShape);
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn to_string_with_var(&self, var: char) -> String {
        format_poly(self, var)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(i), &rhs.coeff(i)))
            .collect();
        Poly::new(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

/// Squarefree decomposition f = constant * prod parts[m]^m, together with
/// the data the solvability and simple-root arguments need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    /// Normalizing constant: f = constant * prod part^mult.
    pub constant: FieldElement,
    /// (multiplicity, monic squarefree part), ascending by multiplicity.
    pub parts: Vec<(u32, Poly)>,
    /// Number of simple roots over the algebraic closure: the degree of the
    /// multiplicity-1 part. No root extraction involved.
    pub simple_roots: usize,
    /// Set when the derivative vanished identically at the top level, i.e.
    /// f is a p-th power; carries the p-th root.
    pub pth_power_of: Option<Poly>,
}

impl MultiplicityProfile {
    /// Reassembles constant * prod part^mult, for checking.
    pub fn reassemble(&self, field: FieldSpec) -> Poly {
        let mut acc = Poly::constant(field, self.constant.clone());
        for (m, part) in &self.parts {
            acc = &acc * &part.pow(*m);
        }
        acc
    }
}

/// Squarefree decomposition over Q or F_p (Yun's algorithm, extended to
/// positive characteristic by p-th root descent on the inseparable part).
pub fn multiplicity_profile(f: &Poly) -> Result<MultiplicityProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let p = field.characteristic();
    let (monic, lc) = f.monic().unwrap();
    let deriv = monic.derivative();
    let pth_power_of = if p > 0 && !monic.is_constant() && deriv.is_zero() {
        Some(monic.pth_root(p)?)
    } else {
        None
    };
    let mut parts = decompose_monic(&monic, p)?;
    parts.sort_by_key(|(m, _)| *m);
    let simple_roots = parts
        .iter()
        .find(|(m, _)| *m == 1)
        .map_or(0, |(_, part)| part.deg());
    Ok(MultiplicityProfile {
        constant: lc,
        parts,
        simple_roots,
        pth_power_of,
    })
}

fn decompose_monic(f: &Poly, p: u64) -> Result<Vec<(u32, Poly)>> {
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // Perfect base field, so f = base^p exactly.
        let base = f.pth_root(p)?;
        let inner = decompose_monic(&base, p)?;
        return Ok(inner.into_iter().map(|(m, w)| (m * p as u32, w)).collect());
    }
    let mut rest = f.gcd(&deriv);
    let mut sqfree = f.div_exact(&rest);
    let mut out = Vec::new();
    let mut mult = 1u32;
    while !sqfree.is_constant() {
        let next = sqfree.gcd(&rest);
        let part = sqfree.div_exact(&next);
        if !part.is_constant() {
            out.push((mult, part));
        }
        rest = rest.div_exact(&next);
        sqfree = next;
        mult += 1;
    }
    if !rest.is_constant() {
        // Everything left has multiplicity divisible by p.
        debug_assert!(p > 0 && rest.derivative().is_zero());
        let base = rest.pth_root(p)?;
        for (m, w) in decompose_monic(&base, p)? {
            out.push((m * p as u32, w));
        }
    }
    Ok(out)
}

fn format_coeff(c: &FieldElement) -> (bool, String) {
    // Returns (is_negative, magnitude) for rendering with +/- separators.
    match c {
        FieldElement::Rat(r) => {
            if r < &num_rational::BigRational::from(num_bigint::BigInt::from(0)) {
                (true, (-r).to_string())
            } else {
                (false, r.to_string())
            }
        }
        FieldElement::Mod(v) => (false, v.to_string()),
    }
}

fn format_poly(p: &Poly, var: char) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (exp, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = format_coeff(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let unit = mag == "1";
        match exp {
            0 => out.push_str(&mag),
            _ => {
                if !unit {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push(var);
                if exp > 1 {
                    out.push_str(&format!("^{exp}"));
                }
            }
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, 'u'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn f3() -> FieldSpec {
        FieldSpec::prime_field(3).unwrap()
    }

    #[test]
    fn gcd_common_factor() {
        let a = Poly::from_int_coeffs(Q, &[-1, 0, 1]); // u^2 - 1
        let b = Poly::from_int_coeffs(Q, &[-1, 1]); // u - 1
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn derivative_in_char_three() {
        let cube = Poly::from_int_coeffs(f3(), &[0, 0, 0, 1]); // u^3
        assert!(cube.derivative().is_zero());
    }

    #[test]
    fn compose_substitutes() {
        let f = Poly::from_int_coeffs(Q, &[-1, 0, 1]); // u^2 - 1
        let q = Poly::from_int_coeffs(Q, &[0, 0, 0, 1]); // t^3
        let expect = Poly::from_int_coeffs(Q, &[-1, 0, 0, 0, 0, 0, 1]); // t^6 - 1
        assert_eq!(f.compose(&q), expect);
    }

    #[test]
    fn sqrt_examples() {
        let s = Poly::from_int_coeffs(Q, &[-1, 0, 1]);
        let sq = &s * &s;
        assert_eq!(sq.sqrt(), Some(s.clone()));
        assert_eq!(s.sqrt(), None);
        // 4u^4 - 4u^2 + 1 = (2u^2 - 1)^2
        let f = Poly::from_int_coeffs(Q, &[1, 0, -4, 0, 4]);
        assert_eq!(f.sqrt(), Some(Poly::from_int_coeffs(Q, &[-1, 0, 2])));
    }

    #[test]
    fn profile_of_mixed_multiplicities() {
        // 4u^2(u-1)(u+1) = 4u^4 - 4u^2
        let f = Poly::from_int_coeffs(Q, &[0, 0, -4, 0, 4]);
        let prof = multiplicity_profile(&f).unwrap();
        assert_eq!(prof.simple_roots, 2);
        assert_eq!(
            prof.parts,
            vec![
                (1, Poly::from_int_coeffs(Q, &[-1, 0, 1])),
                (2, Poly::from_int_coeffs(Q, &[0, 1])),
            ]
        );
        assert_eq!(prof.reassemble(Q), f);
        assert!(prof.pth_power_of.is_none());
    }

    #[test]
    fn profile_squarefree() {
        let f = Poly::from_int_coeffs(Q, &[-1, 0, 1]);
        let prof = multiplicity_profile(&f).unwrap();
        assert_eq!(prof.simple_roots, 2);
        assert_eq!(prof.parts.len(), 1);
    }

    #[test]
    fn profile_detects_pth_power() {
        // (u^2-1)^3 = u^6 - 1 over F_3
        let g = Poly::from_int_coeffs(f3(), &[-1, 0, 1]);
        let f = g.pow(3);
        assert_eq!(f, Poly::from_int_coeffs(f3(), &[-1, 0, 0, 0, 0, 0, 1]));
        let prof = multiplicity_profile(&f).unwrap();
        assert_eq!(prof.pth_power_of, Some(g.clone()));
        assert_eq!(prof.parts, vec![(3, g)]);
        assert_eq!(prof.simple_roots, 0);
    }

    #[test]
    fn profile_rejects_zero() {
        assert_eq!(
            multiplicity_profile(&Poly::zero(Q)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn divrem_by_zero_fails() {
        let f = Poly::var(Q);
        assert_eq!(f.divrem(&Poly::zero(Q)), Err(Error::ZeroPolynomialDivisor));
    }

    #[test]
    fn const_times_square_detection() {
        let h = Poly::from_int_coeffs(Q, &[-1, 0, 1]);
        let f = (&h * &h).scale(&Q.from_i64(3));
        assert!(f.is_const_times_square());
        assert!(!h.is_const_times_square());
        // 2u^2 - 1 has nonsquare content but IS squarefree: not c*h^2
        assert!(!Poly::from_int_coeffs(Q, &[-1, 0, 2]).is_const_times_square());
    }

    #[test]
    fn display_descending() {
        let f = Poly::from_int_coeffs(Q, &[1, 0, -4, 0, 4]);
        assert_eq!(f.to_string(), "4*u^4 - 4*u^2 + 1");
        assert_eq!(Poly::zero(Q).to_string(), "0");
        assert_eq!(Poly::from_int_coeffs(Q, &[0, -1]).to_string(), "-u");
    }
}
