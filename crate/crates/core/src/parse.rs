//! Text grammar for polynomials and field specifications.
//!
//! Terms are `coef*VAR^k`, `VAR^k`, `VAR`, or `coef`, joined by `+`/`-`;
//! coefficients are integers or `a/b` fractions (reduced into the field);
//! whitespace is ignored and the variable may be any single letter. Field
//! specs are `Q`, `F3`, `F5`, ... or `Fp:<p>`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::Poly;

pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = if let Some(rest) = t.strip_prefix("Fp:") {
        rest
    } else if let Some(rest) = t.strip_prefix('F') {
        rest
    } else {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("unknown field spec '{t}': expected Q, F<p>, or Fp:<p>"),
        });
    };
    let p: u64 = digits.parse().map_err(|_| Error::Parse {
        pos: t.len() - digits.len(),
        msg: format!("invalid prime '{digits}'"),
    })?;
    FieldSpec::prime_field(p)
}

struct Scanner<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.char_indices().collect(),
            idx: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.idx += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map_or(self.text.len(), |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.idx += 1;
        }
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let mut out = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            out.push(self.bump().unwrap());
        }
        (!out.is_empty()).then_some(out)
    }
}

fn integer_to_field(field: FieldSpec, digits: &str, negative: bool) -> FieldElement {
    match field {
        FieldSpec::Rationals => {
            let mut n: BigInt = digits.parse().expect("digit string");
            if negative {
                n = -n;
            }
            FieldElement::Rat(BigRational::from(n))
        }
        FieldSpec::PrimeField(p) => {
            let mut acc: u64 = 0;
            for d in digits.bytes() {
                acc = (acc * 10 + u64::from(d - b'0')) % p;
            }
            let e = FieldElement::Mod(acc);
            if negative {
                field.neg(&e)
            } else {
                e
            }
        }
    }
}

/// Parse a single field element: `[+-] int [/ int]`.
pub fn parse_field_element(text: &str, field: FieldSpec) -> Result<FieldElement> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    let negative = match sc.peek() {
        Some('-') | Some('\u{2212}') => {
            sc.bump();
            true
        }
        Some('+') => {
            sc.bump();
            false
        }
        _ => false,
    };
    sc.skip_ws();
    let Some(numer) = sc.digits() else {
        return sc.err("expected an integer");
    };
    let mut value = integer_to_field(field, &numer, negative);
    sc.skip_ws();
    if sc.peek() == Some('/') {
        sc.bump();
        sc.skip_ws();
        let denom_pos = sc.pos();
        let Some(denom) = sc.digits() else {
            return sc.err("expected a denominator");
        };
        let d = integer_to_field(field, &denom, false);
        value = field.div(&value, &d).map_err(|_| Error::Parse {
            pos: denom_pos,
            msg: format!("denominator {denom} is zero in {field}"),
        })?;
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return sc.err("trailing input after the number");
    }
    Ok(value)
}

/// Parse a polynomial; returns the value and the variable letter used
/// (defaulting to 'u' for constant inputs).
pub fn parse_poly(text: &str, field: FieldSpec) -> Result<(Poly, char)> {
    let mut sc = Scanner::new(text);
    let mut var: Option<char> = None;
    let mut acc = Poly::zero(field);
    let mut first = true;
    loop {
        sc.skip_ws();
        if sc.peek().is_none() {
            if first {
                return sc.err("empty polynomial");
            }
            break;
        }
        let negative = match sc.peek() {
            Some('-') | Some('\u{2212}') => {
                sc.bump();
                true
            }
            Some('+') => {
                if first {
                    return sc.err("a polynomial cannot start with '+'");
                }
                sc.bump();
                false
            }
            Some(_) if first => false,
            Some(c) => return sc.err(format!("expected '+' or '-' between terms, found '{c}'")),
            None => unreachable!(),
        };
        sc.skip_ws();
        let (coef, exp) = parse_term(&mut sc, field, &mut var)?;
        let coef = if negative { field.neg(&coef) } else { coef };
        acc = &acc + &Poly::monomial(field, coef, exp);
        first = false;
    }
    Ok((acc, var.unwrap_or('u')))
}

fn parse_term(
    sc: &mut Scanner<'_>,
    field: FieldSpec,
    var: &mut Option<char>,
) -> Result<(FieldElement, usize)> {
    let mut coef: Option<FieldElement> = None;
    if let Some(digits) = sc.digits() {
        let mut value = integer_to_field(field, &digits, false);
        sc.skip_ws();
        if sc.peek() == Some('/') {
            sc.bump();
            sc.skip_ws();
            let denom_pos = sc.pos();
            let Some(denom) = sc.digits() else {
                return sc.err("expected a denominator after '/'");
            };
            let d = integer_to_field(field, &denom, false);
            value = field.div(&value, &d).map_err(|_| Error::Parse {
                pos: denom_pos,
                msg: format!("denominator {denom} is zero in {field}"),
            })?;
        }
        coef = Some(value);
        sc.skip_ws();
        if sc.peek() == Some('*') {
            sc.bump();
            sc.skip_ws();
        }
    }
    let letter = match sc.peek() {
        Some(c) if c.is_ascii_alphabetic() => {
            sc.bump();
            Some(c)
        }
        _ => None,
    };
    if let Some(c) = letter {
        match var {
            Some(v) if *v != c => {
                return sc.err(format!("mixed variables '{v}' and '{c}'"));
            }
            _ => *var = Some(c),
        }
    }
    let exp = if letter.is_some() {
        sc.skip_ws();
        if sc.peek() == Some('^') {
            sc.bump();
            sc.skip_ws();
            let Some(digits) = sc.digits() else {
                return sc.err("expected an exponent after '^'");
            };
            digits.parse::<usize>().map_err(|_| Error::Parse {
                pos: sc.pos(),
                msg: format!("exponent {digits} out of range"),
            })?
        } else {
            1
        }
    } else {
        0
    };
    match (coef, letter) {
        (None, None) => sc.err("expected a coefficient or a variable"),
        (c, _) => Ok((c.unwrap_or_else(|| field.one()), exp)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            parse_field_spec("F3").unwrap(),
            FieldSpec::prime_field(3).unwrap()
        );
        assert_eq!(
            parse_field_spec("Fp:10007").unwrap(),
            FieldSpec::prime_field(10007).unwrap()
        );
        assert!(parse_field_spec("F4").is_err());
        assert!(parse_field_spec("Z").is_err());
    }

    #[test]
    fn simple_polynomials() {
        let (p, v) = parse_poly("u^4 - 1", Q).unwrap();
        assert_eq!(p, Poly::from_int_coeffs(Q, &[-1, 0, 0, 0, 1]));
        assert_eq!(v, 'u');

        let (p, _) = parse_poly("2*u^2 - 1/2", Q).unwrap();
        assert_eq!(
            p,
            Poly::new(
                Q,
                vec![Q.from_ratio(-1, 2).unwrap(), Q.zero(), Q.from_i64(2)]
            )
        );

        let f3 = FieldSpec::prime_field(3).unwrap();
        let (p, _) = parse_poly("u^2+1", f3).unwrap();
        assert_eq!(p, Poly::from_int_coeffs(f3, &[1, 0, 1]));
    }

    #[test]
    fn any_single_letter_variable() {
        let (p, v) = parse_poly("t^3 - t", Q).unwrap();
        assert_eq!(v, 't');
        assert_eq!(p, Poly::from_int_coeffs(Q, &[0, -1, 0, 1]));
        assert!(parse_poly("t^2 + u", Q).is_err());
    }

    #[test]
    fn constants_and_signs() {
        let (p, v) = parse_poly("-5", Q).unwrap();
        assert_eq!(p, Poly::from_int_coeffs(Q, &[-5]));
        assert_eq!(v, 'u');
        let (p, _) = parse_poly("3 - u + 2*u", Q).unwrap();
        assert_eq!(p, Poly::from_int_coeffs(Q, &[3, 1]));
        let (p, _) = parse_poly("\u{2212}u", Q).unwrap();
        assert_eq!(p, Poly::from_int_coeffs(Q, &[0, -1]));
    }

    #[test]
    fn rejects_bad_coefficients() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let err = parse_poly("1/3*u", f3).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_poly("1/0", Q).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        match parse_poly("u^2 ? 1", Q).unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn print_parse_roundtrip_examples() {
        for text in ["u^4 - 1", "4*u^4 - 4*u^2 + 1", "-u", "0", "1/2*u^3 + 7"] {
            let (p, v) = parse_poly(text, Q).unwrap();
            let printed = p.to_string_with_var(v);
            let (q, _) = parse_poly(&printed, Q).unwrap();
            assert_eq!(p, q, "roundtrip through '{printed}'");
        }
    }

    #[test]
    fn field_elements() {
        assert_eq!(
            parse_field_element("-1/2", Q).unwrap(),
            Q.from_ratio(-1, 2).unwrap()
        );
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(parse_field_element("7", f5).unwrap(), FieldElement::Mod(2));
        assert_eq!(
            parse_field_element("1/2", f5).unwrap(),
            FieldElement::Mod(3)
        );
        assert!(parse_field_element("x", f5).is_err());
    }
}
