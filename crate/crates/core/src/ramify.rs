//! Ramification and discriminant calculus for polynomial maps A^1 -> A^1.
//!
//! For a separable polynomial q the local discriminant exponent at a point
//! c is d_c = mult_c(q'), the ramification index is e_c = mult_c(q - q(c)),
//! and d_c >= e_c - 1 with equality exactly when the characteristic does
//! not divide e_c (tame). At infinity, with local coordinates v = 1/s
//! upstairs and w = 1/u downstairs, the map reads w = 1/q(1/v) and
//! d_infinity is the vanishing order of dw/dv. The exponents sum to
//! 2 deg q - 2 (Riemann-Hurwitz for genus-0 source and target), which the
//! tests keep as a cross-check against the series computation.
//!
//! Finite data is reported per squarefree factor of q' over k with uniform
//! (e, d) rather than per geometric point; packets whose roots disagree on
//! e are split by gcds (dynamic evaluation), never by factoring into
//! irreducibles.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{multiplicity_profile, Poly};

/// Where ramification sits: a packet of conjugate finite points cut out by
/// a squarefree monic polynomial, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite { locus: Poly },
    Infinity,
}

/// Local ramification data, constant across the roots of the locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamPoint {
    pub place: Place,
    /// Ramification index e >= 1.
    pub e: u32,
    /// Discriminant exponent d >= e - 1.
    pub d: u32,
    /// d == e - 1, equivalently p does not divide e.
    pub tame: bool,
}

impl RamPoint {
    /// Number of geometric points this entry accounts for.
    pub fn geometric_count(&self) -> usize {
        match &self.place {
            Place::Finite { locus } => locus.deg(),
            Place::Infinity => 1,
        }
    }
}

/// The full discriminant of a separable polynomial self-map of the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamProfile {
    pub map: Poly,
    pub points: Vec<RamPoint>,
    /// Sum of d over geometric points, including infinity; equals
    /// 2 deg q - 2 when q is separable.
    pub total: u32,
}

impl RamProfile {
    pub fn at_infinity(&self) -> &RamPoint {
        self.points
            .iter()
            .find(|p| p.place == Place::Infinity)
            .expect("profile always carries the place at infinity")
    }
}

/// Compute the ramification profile of a nonconstant separable q.
pub fn ramification_profile(q: &Poly) -> Result<RamProfile> {
    let field = q.field();
    let p = field.characteristic();
    if q.is_constant() {
        return Err(Error::ConstantSubstitution);
    }
    let deriv = q.derivative();
    if deriv.is_zero() {
        let witness = q.pth_root(p)?;
        return Err(Error::Inseparable {
            witness: witness.to_string(),
        });
    }
    let mut points = Vec::new();
    for (mult, part) in multiplicity_profile(&deriv)?.parts {
        for (locus, e) in split_by_ram_index(q, &part) {
            let tame = p == 0 || !(e as u64).is_multiple_of(p);
            debug_assert!(mult >= e - 1);
            debug_assert_eq!(tame, mult == e - 1);
            points.push(RamPoint {
                place: Place::Finite { locus },
                e,
                d: mult,
                tame,
            });
        }
    }
    let (e_inf, d_inf) = infinity_discriminant(q);
    let tame = p == 0 || !(e_inf as u64).is_multiple_of(p);
    points.push(RamPoint {
        place: Place::Infinity,
        e: e_inf,
        d: d_inf,
        tame,
    });
    let total = points
        .iter()
        .map(|pt| pt.d * pt.geometric_count() as u32)
        .sum();
    Ok(RamProfile {
        map: q.clone(),
        points,
        total,
    })
}

/// Split a squarefree monic packet W (of roots of q') into sub-packets on
/// which the ramification index e = mult_theta(q - q(theta)) is constant.
///
/// Works in the quotient ring A = k[theta]/(W) by repeated synthetic
/// division of q(u) - q(theta) by (u - theta). A remainder that is a zero
/// divisor of A witnesses roots with different indices; its gcd with W
/// splits the packet and both halves are redone.
fn split_by_ram_index(q: &Poly, w: &Poly) -> Vec<(Poly, u32)> {
    let field = q.field();
    let mut stack = vec![w.clone()];
    let mut out = Vec::new();
    'packets: while let Some(w) = stack.pop() {
        let q_theta = q.divrem(&w).expect("nonconstant locus").1;
        // q(u) - q(theta) as a polynomial in u over A.
        let mut r: Vec<Poly> = q
            .coeffs()
            .iter()
            .map(|c| Poly::constant(field, c.clone()))
            .collect();
        r[0] = &r[0] - &q_theta;
        let mut e = 0u32;
        loop {
            let (quot, rem) = divide_by_u_minus_theta(&r, &w);
            if rem.is_zero() {
                e += 1;
                r = quot;
                continue;
            }
            let h = rem.gcd(&w);
            if h.is_constant() {
                out.push((w, e));
                continue 'packets;
            }
            stack.push(w.div_exact(&h));
            stack.push(h);
            continue 'packets;
        }
    }
    out.sort_by_key(|a| a.0.coeffs().len());
    out
}

/// Synthetic division of sum a_i u^i (a_i in k[theta]/(w)) by (u - theta).
fn divide_by_u_minus_theta(r: &[Poly], w: &Poly) -> (Vec<Poly>, Poly) {
    let field = w.field();
    let theta_mul = |x: &Poly| x.shift_up(1).divrem(w).expect("nonconstant modulus").1;
    let n = r.len();
    if n <= 1 {
        let rem = r.first().cloned().unwrap_or_else(|| Poly::zero(field));
        return (Vec::new(), rem);
    }
    let mut quot = vec![Poly::zero(field); n - 1];
    quot[n - 2] = r[n - 1].clone();
    for i in (1..n - 1).rev() {
        quot[i - 1] = &r[i] + &theta_mul(&quot[i]);
    }
    let rem = &r[0] + &theta_mul(&quot[0]);
    (quot, rem)
}

/// Ramification index and discriminant exponent of q at infinity, by
/// expanding w = 1/q(1/v) = v^d * (unit) as a power series in v to
/// precision 2 deg q + 2 and reading off the vanishing order of dw/dv.
fn infinity_discriminant(q: &Poly) -> (u32, u32) {
    let field = q.field();
    let d = q.deg();
    let prec = 2 * d + 2;
    // A(v) = v^d q(1/v) has constant term lc(q) != 0; invert it as an
    // ascending power series.
    let a: Vec<FieldElement> = (0..=d).map(|i| q.coeff(d - i)).collect();
    let a0_inv = field.inv(&a[0]).expect("leading coefficient nonzero");
    let mut b = Vec::with_capacity(prec);
    b.push(a0_inv.clone());
    for k in 1..prec {
        let mut acc = field.zero();
        for i in 1..=k.min(d) {
            acc = field.add(&acc, &field.mul(&a[i], &b[k - i]));
        }
        b.push(field.neg(&field.mul(&acc, &a0_inv)));
    }
    // phi(v) = v^d * B(v); phi'(v) = sum (d+k) b_k v^(d+k-1).
    for (k, bk) in b.iter().enumerate() {
        let i = d + k;
        let factor = field.from_i64(i as i64);
        if !factor.is_zero() && !bk.is_zero() {
            return (d as u32, (i - 1) as u32);
        }
    }
    // Unreachable for separable q: Hurwitz bounds d_infinity by 2d - 2.
    unreachable!("no nonvanishing term in dw/dv within the precision window")
}

/// (e, d) of q at a rational point c, by repeated exact division.
pub fn local_data_at(q: &Poly, c: &FieldElement) -> (u32, u32) {
    let field = q.field();
    let lin = Poly::new(field, vec![field.neg(c), field.one()]);
    let mult = |f: &Poly| {
        let mut m = 0u32;
        let mut cur = f.clone();
        loop {
            if cur.is_zero() {
                break;
            }
            let (quot, rem) = cur.divrem(&lin).unwrap();
            if !rem.is_zero() {
                break;
            }
            m += 1;
            cur = quot;
        }
        m
    };
    let shifted = &q.clone() - &Poly::constant(field, q.eval(c));
    (mult(&shifted), mult(&q.derivative()))
}

/// Both sides of the chain rule for discriminants,
/// d_c(q2 o q1) = d_{q1(c)}(q2) e_c(q1) + d_c(q1),
/// evaluated at a chosen finite point and at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub finite_point: FieldElement,
    pub finite_lhs: u32,
    pub finite_rhs: u32,
    pub infinity_lhs: u32,
    pub infinity_rhs: u32,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.finite_lhs == self.finite_rhs && self.infinity_lhs == self.infinity_rhs
    }
}

/// Check the composition formula for q2 o q1 at the finite point c and at
/// infinity. Both maps must be separable (the composite then is too).
pub fn discriminant_composition_check(
    q1: &Poly,
    q2: &Poly,
    c: &FieldElement,
) -> Result<CompositionReport> {
    let p = q1.field().characteristic();
    for q in [q1, q2] {
        if q.is_constant() {
            return Err(Error::ConstantSubstitution);
        }
        if q.derivative().is_zero() {
            return Err(Error::Inseparable {
                witness: q.pth_root(p)?.to_string(),
            });
        }
    }
    let comp = q2.compose(q1);
    let (e1, d1) = local_data_at(q1, c);
    let (_, d2) = local_data_at(q2, &q1.eval(c));
    let (_, d_comp) = local_data_at(&comp, c);
    let (e1_inf, d1_inf) = infinity_discriminant(q1);
    let (_, d2_inf) = infinity_discriminant(q2);
    let (_, dc_inf) = infinity_discriminant(&comp);
    Ok(CompositionReport {
        finite_point: c.clone(),
        finite_lhs: d_comp,
        finite_rhs: d2 * e1 + d1,
        infinity_lhs: dc_inf,
        infinity_rhs: d2_inf * e1_inf + d1_inf,
    })
}

/// The numeric surjectivity criterion for the fundamental group of the
/// affine line: in characteristic p > 0 the map is certified when
/// d_infinity(q) < 2 (1 - 1/p) deg q; in characteristic 0 there is nothing
/// to check. Only the inequality is certified here, not the group
/// statement itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Report {
    pub certified: bool,
    pub d_infinity: u32,
    /// The strict bound 2 (1 - 1/p) deg q, as a (numerator, denominator)
    /// pair to keep the comparison exact.
    pub bound: (u64, u64),
}

pub fn pi1_criterion(q: &Poly) -> Result<Pi1Report> {
    let p = q.field().characteristic();
    if q.is_constant() {
        return Err(Error::ConstantSubstitution);
    }
    if q.derivative().is_zero() {
        return Err(Error::Inseparable {
            witness: q.pth_root(p)?.to_string(),
        });
    }
    if p == 0 {
        return Ok(Pi1Report {
            certified: true,
            d_infinity: 0,
            bound: (0, 1),
        });
    }
    let (_, d_inf) = infinity_discriminant(q);
    let d = q.deg() as u64;
    // d_inf < 2 (1 - 1/p) d  <=>  p d_inf < 2 (p - 1) d
    let certified = p * u64::from(d_inf) < 2 * (p - 1) * d;
    Ok(Pi1Report {
        certified,
        d_infinity: d_inf,
        bound: (2 * (p - 1) * d, p),
    })
}

/// The mild-ramification predicate behind the open locus of the Hurwitz
/// scheme: separable, d_infinity = deg q - 1 or deg q according to whether
/// p divides deg q, and every finite d <= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MildReport {
    pub mild: bool,
    pub failures: Vec<String>,
}

pub fn mild_ramification_check(q: &Poly) -> Result<MildReport> {
    let profile = ramification_profile(q)?;
    let p = q.field().characteristic();
    let d = q.deg() as u64;
    let mut failures = Vec::new();
    let inf = profile.at_infinity();
    let expected = if p > 0 && d.is_multiple_of(p) {
        d
    } else {
        d - 1
    };
    if inf.d as u64 != expected {
        failures.push(format!(
            "d_infinity = {} but the case split wants {expected}",
            inf.d
        ));
    }
    for pt in &profile.points {
        if let Place::Finite { locus } = &pt.place {
            if pt.d > 1 {
                failures.push(format!("finite d = {} > 1 at roots of {locus}", pt.d));
            }
        }
    }
    Ok(MildReport {
        mild: failures.is_empty(),
        failures,
    })
}

/// How many places at infinity the hyperelliptic curve v^2 = f has, and
/// whether they are rational over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacesAtInfinity {
    pub count: u8,
    pub rational: bool,
}

pub fn places_at_infinity(f: &Poly) -> Result<PlacesAtInfinity> {
    if f.is_constant() {
        return Err(Error::Invalid(
            "the curve v^2 = f needs nonconstant f".into(),
        ));
    }
    if f.is_const_times_square() {
        return Err(Error::Invalid(
            "v^2 = f is reducible: f is a constant times a square".into(),
        ));
    }
    if f.deg() % 2 == 1 {
        return Ok(PlacesAtInfinity {
            count: 1,
            rational: true,
        });
    }
    let rational = f.field().sqrt(f.leading_coeff().unwrap()).is_some();
    Ok(PlacesAtInfinity { count: 2, rational })
}
