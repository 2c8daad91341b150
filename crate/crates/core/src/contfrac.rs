//! Abel's continued-fraction expansion of Laurent series at infinity.
//!
//! Starting from phi_0 = phi, each step takes the polynomial part
//! a_i = [phi_i] and inverts the remainder: phi_{i+1} = (phi_i - a_i)^-1.
//! For i >= 1 the remainder has strictly negative top exponent, so every
//! partial quotient past a_0 has degree >= 1. The convergents p_n/q_n are
//! the Pade approximants of phi; for phi = sqrt(g) they carry all solutions
//! of the Pell equation x^2 - g y^2 in k*.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::laurent::{laurent_sqrt, LaurentSeries};
use crate::poly::Poly;

/// A finite stretch of a continued-fraction expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    /// Partial quotients a_0, a_1, ...
    pub quotients: Vec<Poly>,
    /// Normalized coprime convergent pairs (p_n, q_n), one per quotient.
    pub convergents: Vec<(Poly, Poly)>,
    /// The remainder became exactly zero: the input was a rational function.
    pub terminated: bool,
    pub steps_done: usize,
}

/// Expand `phi` for at most `steps` partial quotients.
///
/// Stops early (with `terminated` set) only when a remainder is *exactly*
/// zero, which requires the input series to be exact. A remainder that is
/// merely zero to its precision, or a polynomial part that would depend on
/// unknown coefficients, aborts with `PrecisionExhausted` so the caller can
/// retry with a bigger budget.
pub fn cf_expand(phi: &LaurentSeries, steps: usize) -> Result<CFExpansion> {
    assert!(steps >= 1, "cf_expand needs at least one step");
    let mut quotients = Vec::new();
    let mut state = phi.clone();
    let mut terminated = false;
    for i in 0..steps {
        let a = state.integral_part().map_err(|e| match e {
            Error::InsufficientPrecision { .. } => Error::PrecisionExhausted { steps: i },
            other => other,
        })?;
        let rem = &state - &LaurentSeries::from_poly(&a);
        debug_assert!(rem.top_exponent().is_none_or(|t| t < 0));
        quotients.push(a);
        if rem.is_zero_to_prec() {
            if rem.is_exact() {
                terminated = true;
                break;
            }
            return Err(Error::PrecisionExhausted { steps: i + 1 });
        }
        if i + 1 < steps {
            state = rem.invert()?;
        }
    }
    let convergents = convergents(phi.field(), &quotients)?;
    let steps_done = quotients.len();
    Ok(CFExpansion {
        quotients,
        convergents,
        terminated,
        steps_done,
    })
}

/// Convergent pairs from the standard recurrence
/// p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2},
/// seeded with (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (a_0, 1).
/// Each pair is returned normalized (and hence relatively prime).
pub fn convergents(field: FieldSpec, quotients: &[Poly]) -> Result<Vec<(Poly, Poly)>> {
    if quotients.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    let mut prev = (Poly::one(field), Poly::zero(field));
    let mut cur = (quotients[0].clone(), Poly::one(field));
    let mut out = vec![normalize_pair(&cur.0, &cur.1)];
    for a in &quotients[1..] {
        let p = &(a * &cur.0) + &prev.0;
        let q = &(a * &cur.1) + &prev.1;
        prev = cur;
        cur = (p, q);
        out.push(normalize_pair(&cur.0, &cur.1));
    }
    Ok(out)
}

/// Canonical form of a convergent pair. Over Q the pair is scaled jointly to
/// integer coefficients with content 1 and positive leading coefficient of q
/// (of p when q = 0); over F_p it is scaled to make q (or p) monic. Scaling
/// a pair never changes the fraction p/q.
pub fn normalize_pair(p: &Poly, q: &Poly) -> (Poly, Poly) {
    let field = p.field();
    match field {
        FieldSpec::Rationals => {
            let mut denom_lcm = BigInt::one();
            let mut numer_gcd = BigInt::zero();
            for c in p.coeffs().iter().chain(q.coeffs()) {
                if let FieldElement::Rat(r) = c {
                    denom_lcm = denom_lcm.lcm(r.denom());
                }
            }
            let scale = FieldElement::Rat(num_rational::BigRational::from(denom_lcm));
            let (pi, qi) = (p.scale(&scale), q.scale(&scale));
            for c in pi.coeffs().iter().chain(qi.coeffs()) {
                if let FieldElement::Rat(r) = c {
                    numer_gcd = numer_gcd.gcd(r.numer());
                }
            }
            if numer_gcd.is_zero() {
                return (pi, qi);
            }
            let lead = qi.leading_coeff().or(pi.leading_coeff());
            let negative = matches!(lead, Some(FieldElement::Rat(r)) if r.is_negative());
            if negative {
                numer_gcd = -numer_gcd;
            }
            let inv = FieldElement::Rat(num_rational::BigRational::from(numer_gcd).recip());
            (pi.scale(&inv), qi.scale(&inv))
        }
        FieldSpec::PrimeField(_) => {
            let lead = q.leading_coeff().or(p.leading_coeff());
            match lead {
                Some(lc) => {
                    let inv = field.inv(lc).expect("nonzero leading coefficient");
                    (p.scale(&inv), q.scale(&inv))
                }
                None => (p.clone(), q.clone()),
            }
        }
    }
}

/// Expand sqrt(g) for `steps` quotients, growing the series precision until
/// the expansion fits. The budget starts near 4 deg g and doubles on demand
/// up to 4 * steps * deg g, after which precision exhaustion is reported.
pub fn expand_sqrt(g: &Poly, steps: usize) -> Result<CFExpansion> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?.max(1);
    let mut prec = 4 * d + 16;
    let cap = (4 * steps * d).max(prec);
    loop {
        let root = laurent_sqrt(g, prec)?;
        match cf_expand(&root, steps) {
            Err(Error::PrecisionExhausted { steps: done }) if prec < cap => {
                let _ = done;
                prec = (prec * 2).min(cap);
            }
            other => return other,
        }
    }
}

/// Outcome of checking the substitution identity
/// [sqrt(g o q)]_i = [sqrt(g)]_i o q termwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionReport {
    pub matches: bool,
    pub steps_compared: usize,
    pub base_quotients: Vec<Poly>,
    pub composed_quotients: Vec<Poly>,
    pub direct_quotients: Vec<Poly>,
}

/// Expand sqrt(g) and sqrt(g o q) independently and compare the latter's
/// quotients against the composition of the former's with q. This is the
/// mechanism behind the base-change theorem for sections.
pub fn cf_substitution_check(g: &Poly, q: &Poly, steps: usize) -> Result<SubstitutionReport> {
    if q.is_constant() {
        return Err(Error::ConstantSubstitution);
    }
    let base = expand_sqrt(g, steps)?;
    let direct = expand_sqrt(&g.compose(q), steps)?;
    let composed: Vec<Poly> = base.quotients.iter().map(|a| a.compose(q)).collect();
    let matches = composed.len() == direct.quotients.len()
        && composed.iter().zip(&direct.quotients).all(|(a, b)| a == b);
    let steps_compared = composed.len().min(direct.quotients.len());
    Ok(SubstitutionReport {
        matches,
        steps_compared,
        base_quotients: base.quotients,
        composed_quotients: composed,
        direct_quotients: direct.quotients,
    })
}
