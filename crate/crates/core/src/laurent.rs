//! Truncated Laurent series in u^-1: the completion of k[u] at the place at
//! infinity, which is where Abel's continued-fraction method lives.
//!
//! A series knows its coefficients from some top exponent down to a floor;
//! exponents above the top are exactly zero, exponents below the floor are
//! unknown. Series built from polynomials are `exact`: everything below the
//! stored range really is zero, which is what lets the expansion of a
//! rational function terminate instead of dying with a precision error.
//! Operations propagate the worst-case precision of their operands and fail
//! loudly (rather than silently truncating) when a result would depend on
//! unknown coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: FieldSpec,
    /// Exponent of coeffs[0]. When coeffs is empty this is floor - 1.
    top: i64,
    /// Coefficients for exponents top, top-1, ...; leading entry nonzero
    /// unless the series is zero to its precision.
    coeffs: Vec<FieldElement>,
    /// Some(L): coefficients below exponent L are unknown. None: the series
    /// is an exact Laurent polynomial (everything below the storage is 0).
    floor: Option<i64>,
}

impl LaurentSeries {
    fn normalized(
        field: FieldSpec,
        mut top: i64,
        mut coeffs: Vec<FieldElement>,
        floor: Option<i64>,
    ) -> Self {
        while coeffs.first().is_some_and(FieldElement::is_zero) {
            coeffs.remove(0);
            top -= 1;
        }
        if let Some(l) = floor {
            debug_assert_eq!(
                top - coeffs.len() as i64 + 1,
                l,
                "storage must reach the floor"
            );
        } else {
            while coeffs.last().is_some_and(FieldElement::is_zero) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                top = -1;
            }
        }
        LaurentSeries {
            field,
            top,
            coeffs,
            floor,
        }
    }

    /// The exact series of a polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let field = p.field();
        let coeffs: Vec<_> = p.coeffs().iter().rev().cloned().collect();
        let top = p.degree().map_or(-1, |d| d as i64);
        LaurentSeries::normalized(field, top, coeffs, None)
    }

    pub fn zero(field: FieldSpec) -> Self {
        LaurentSeries {
            field,
            top: -1,
            coeffs: Vec::new(),
            floor: None,
        }
    }

    /// The expansion of num/den at infinity, to `prec` known coefficients.
    pub fn from_ratio(num: &Poly, den: &Poly, prec: usize) -> Result<Self> {
        let inv = LaurentSeries::from_poly(den).invert_to(prec)?;
        Ok(&LaurentSeries::from_poly(num) * &inv)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Lowest exponent whose coefficient is known; None means all of them.
    pub fn known_floor(&self) -> Option<i64> {
        self.floor
    }

    /// Number of stored coefficients (the precision window).
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent of the leading nonzero coefficient; None when the series is
    /// zero as far as it is known.
    pub fn top_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.top)
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.first()
    }

    /// Coefficient of u^e; None when e lies below the known floor.
    pub fn coeff_at(&self, e: i64) -> Option<FieldElement> {
        if e > self.top {
            return Some(self.field.zero());
        }
        let idx = (self.top - e) as usize;
        match self.coeffs.get(idx) {
            Some(c) => Some(c.clone()),
            None => match self.floor {
                None => Some(self.field.zero()),
                Some(l) => (e >= l).then(|| self.field.zero()),
            },
        }
    }

    fn eff_top(&self) -> i64 {
        self.top
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "field mismatch in Laurent arithmetic"
        );
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return match self.floor {
                None => LaurentSeries::zero(self.field),
                Some(l) => LaurentSeries::normalized(self.field, l - 1, Vec::new(), Some(l)),
            };
        }
        let f = self.field;
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        LaurentSeries::normalized(f, self.top, coeffs, self.floor)
    }

    /// Multiplicative inverse, with `prec` known coefficients when the
    /// operand allows it (an inexact operand caps the output precision at
    /// its own).
    pub fn invert_to(&self, prec: usize) -> Result<Self> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        if self.is_zero_to_prec() {
            return Err(Error::ZeroSeries);
        }
        let f = self.field;
        let t = self.top;
        let avail = match self.floor {
            None => prec,
            Some(_) => prec.min(self.coeffs.len()),
        };
        let lead_inv = f.inv(&self.coeffs[0]).expect("leading coefficient nonzero");
        let mut out: Vec<FieldElement> = Vec::with_capacity(avail);
        out.push(lead_inv.clone());
        for k in 1..avail {
            // Coefficient of u^(-k) in (self * out) must vanish.
            let mut acc = f.zero();
            for (i, oi) in out.iter().enumerate() {
                let phi = self.coeff_at(t - (k - i) as i64).expect("within window");
                acc = f.add(&acc, &f.mul(oi, &phi));
            }
            out.push(f.neg(&f.mul(&acc, &lead_inv)));
        }
        // Exactness survives only for monomials; anything else has an
        // infinite tail.
        let exact =
            self.floor.is_none() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
        let floor = if exact {
            None
        } else {
            Some(-t - avail as i64 + 1)
        };
        Ok(LaurentSeries::normalized(f, -t, out, floor))
    }

    pub fn invert(&self) -> Result<Self> {
        self.invert_to(self.coeffs.len().max(1))
    }

    /// The polynomial part: the sum of all terms with nonnegative exponent.
    /// Fails when the precision window does not reach exponent 0.
    pub fn integral_part(&self) -> Result<Poly> {
        if let Some(l) = self.floor {
            if l > 0 {
                return Err(Error::InsufficientPrecision {
                    needed: 0,
                    known: l,
                });
            }
        }
        let f = self.field;
        if self.top < 0 {
            return Ok(Poly::zero(f));
        }
        let coeffs = (0..=self.top)
            .map(|e| self.coeff_at(e).expect("window reaches exponent 0"))
            .collect();
        Ok(Poly::new(f, coeffs))
    }
}

/// Square root of a polynomial as a Laurent series at infinity, on the
/// canonical branch (leading coefficient the canonical field square root).
///
/// Requires even degree and a square leading coefficient; those are exactly
/// the cases in which the Pell equation can have nontrivial solutions. When
/// g is a perfect square times a constant square the result is exact.
pub fn laurent_sqrt(g: &Poly, prec: usize) -> Result<LaurentSeries> {
    if prec == 0 {
        return Err(Error::ZeroPrecision);
    }
    let f = g.field();
    if g.is_zero() {
        return Ok(LaurentSeries::zero(f));
    }
    let d = g.deg();
    if !d.is_multiple_of(2) {
        return Err(Error::OddDegreeRadicand(d));
    }
    let lead = g.leading_coeff().unwrap();
    let r = f.sqrt(lead).ok_or(Error::NonSquareLeadingCoeff)?;
    if let Some(s) = g.sqrt() {
        return Ok(LaurentSeries::from_poly(&s));
    }
    let m = (d / 2) as i64;
    let two_r_inv = f.inv(&f.mul(&f.from_i64(2), &r)).expect("char != 2");
    let mut s: Vec<FieldElement> = Vec::with_capacity(prec);
    s.push(r);
    // s_(m-k) = (g_(d-k) - sum_{i+j=d-k, i,j>m-k} s_i s_j) / (2r), where the
    // indices run over already-computed entries.
    for k in 1..prec {
        let target = if d >= k { g.coeff(d - k) } else { f.zero() };
        let mut conv = f.zero();
        for i in 1..k {
            let j = k - i;
            conv = f.add(&conv, &f.mul(&s[i], &s[j]));
        }
        s.push(f.mul(&f.sub(&target, &conv), &two_r_inv));
    }
    let floor = m - prec as i64 + 1;
    Ok(LaurentSeries::normalized(f, m, s, Some(floor)))
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.assert_same_field(rhs);
        let f = self.field;
        let floor = match (self.floor, rhs.floor) {
            (None, None) => None,
            (None, Some(l)) | (Some(l), None) => Some(l),
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        let top = self.eff_top().max(rhs.eff_top());
        let low = floor.unwrap_or_else(|| {
            let a = self.top - self.coeffs.len() as i64 + 1;
            let b = rhs.top - rhs.coeffs.len() as i64 + 1;
            a.min(b).min(top)
        });
        let coeffs = (low..=top)
            .rev()
            .map(|e| {
                let a = self.coeff_at(e).unwrap_or_else(|| f.zero());
                let b = rhs.coeff_at(e).unwrap_or_else(|| f.zero());
                f.add(&a, &b)
            })
            .collect();
        LaurentSeries::normalized(f, top, coeffs, floor)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        let f = self.field;
        let coeffs = self.coeffs.iter().map(|c| f.neg(c)).collect();
        LaurentSeries::normalized(f, self.top, coeffs, self.floor)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.assert_same_field(rhs);
        let f = self.field;
        // An exact zero annihilates even unknown tails.
        if (self.is_zero_to_prec() && self.floor.is_none())
            || (rhs.is_zero_to_prec() && rhs.floor.is_none())
        {
            return LaurentSeries::zero(f);
        }
        let top = self.eff_top() + rhs.eff_top();
        let floor = match (self.floor, rhs.floor) {
            (None, None) => None,
            (Some(a), None) => Some(a + rhs.eff_top()),
            (None, Some(b)) => Some(b + self.eff_top()),
            (Some(a), Some(b)) => Some((a + rhs.eff_top()).max(b + self.eff_top())),
        };
        let low = floor.unwrap_or_else(|| {
            let a = self.top - self.coeffs.len() as i64 + 1;
            let b = rhs.top - rhs.coeffs.len() as i64 + 1;
            (a + b).min(top)
        });
        let mut coeffs = Vec::with_capacity((top - low + 1).max(0) as usize);
        for e in (low..=top).rev() {
            let mut acc = f.zero();
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ei = self.top - i as i64;
                let ej = e - ei;
                if ej > rhs.eff_top() {
                    continue;
                }
                let b = rhs
                    .coeff_at(ej)
                    .expect("within window by floor computation");
                acc = f.add(&acc, &f.mul(a, &b));
            }
            coeffs.push(acc);
        }
        LaurentSeries::normalized(f, top, coeffs, floor)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.top - i as i64;
            let (neg, mag) = match c {
                FieldElement::Rat(r)
                    if r < &num_rational::BigRational::from(num_bigint::BigInt::from(0)) =>
                {
                    (true, (-r).to_string())
                }
                other => (false, other.to_string()),
            };
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let unit = mag == "1";
            match e {
                0 => write!(f, "{mag}")?,
                1 => write!(
                    f,
                    "{}u",
                    if unit {
                        String::new()
                    } else {
                        format!("{mag}*")
                    }
                )?,
                _ => write!(
                    f,
                    "{}u^{e}",
                    if unit {
                        String::new()
                    } else {
                        format!("{mag}*")
                    }
                )?,
            }
            wrote = true;
        }
        match self.floor {
            Some(l) => {
                if wrote {
                    write!(f, " + O(u^{})", l - 1)
                } else {
                    write!(f, "O(u^{})", l - 1)
                }
            }
            None => {
                if !wrote {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
