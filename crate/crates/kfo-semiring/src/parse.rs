//! Textual element syntax.
//!
//! `true`/`false` for Booleans, decimal naturals, rationals `p/q` (tropical
//! values may be negative and `inf` denotes infinity), and polynomials such
//! as `2*x^2*y + 3`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::element::{Element, Extended};
use crate::error::SemiringError;
use crate::poly::{Monomial, Polynomial};
use crate::spec::{SemiringId, SemiringSpec};
use crate::Result;

impl SemiringSpec {
    /// Parses an element of this instance from its textual syntax.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let fail = |reason: &str| SemiringError::ParseElement {
            kind: self.id,
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let value = match self.id {
            SemiringId::Boolean => match t {
                "true" => Element::Bool(true),
                "false" => Element::Bool(false),
                _ => return Err(fail("expected `true` or `false`")),
            },
            SemiringId::Nat => {
                let n = t
                    .parse::<BigUint>()
                    .map_err(|_| fail("expected a decimal natural"))?;
                Element::Nat(n)
            }
            SemiringId::Tropical => {
                if t == "inf" {
                    Element::Trop(Extended::Infinity)
                } else {
                    Element::Trop(Extended::Finite(parse_rational(t).ok_or_else(|| {
                        fail("expected a rational `p`, `p/q` or `inf`")
                    })?))
                }
            }
            SemiringId::Lukasiewicz => {
                let r = parse_rational(t).ok_or_else(|| fail("expected a rational in [0, 1]"))?;
                if r < BigRational::zero() || r > BigRational::one() {
                    return Err(fail("value lies outside [0, 1]"));
                }
                Element::Luk(r)
            }
            SemiringId::Probability => {
                let r = parse_rational(t).ok_or_else(|| fail("expected a non-negative rational"))?;
                if r < BigRational::zero() {
                    return Err(fail("value is negative"));
                }
                Element::Prob(r)
            }
            SemiringId::NatPoly => Element::Poly(
                parse_polynomial(t).map_err(|reason| fail(&reason))?,
            ),
        };
        Ok(value)
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p = num.parse::<BigInt>().ok()?;
    let q = den.parse::<BigInt>().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

fn parse_polynomial(t: &str) -> std::result::Result<Polynomial, String> {
    if t.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut poly = Polynomial::zero();
    for term in t.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err("empty term".to_string());
        }
        poly = poly.add(&parse_term(term)?);
    }
    Ok(poly)
}

fn parse_term(term: &str) -> std::result::Result<Polynomial, String> {
    let mut coeff = BigUint::one();
    let mut mono = Monomial::unit();
    let mut saw_coeff = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(format!("empty factor in term `{term}`"));
        }
        if factor.chars().next().unwrap().is_ascii_digit() {
            if saw_coeff {
                return Err(format!("two coefficients in term `{term}`"));
            }
            saw_coeff = true;
            coeff *= factor
                .parse::<BigUint>()
                .map_err(|_| format!("bad coefficient `{factor}`"))?;
        } else {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let exp = e
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad exponent in `{factor}`"))?;
                    (v.trim(), exp)
                }
                None => (factor, 1),
            };
            if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(format!("bad indeterminate `{var}`"));
            }
            if !var.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(format!("indeterminate `{var}` must start with a letter"));
            }
            if exp == 0 {
                return Err(format!("zero exponent in `{factor}`"));
            }
            mono = mono.mul(&Monomial::var(var, exp));
        }
    }
    Ok(Polynomial::term(coeff, mono))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_instance() {
        assert_eq!(
            SemiringSpec::boolean().parse_element("true").unwrap(),
            Element::Bool(true)
        );
        assert_eq!(SemiringSpec::nat().parse_element("42").unwrap(), Element::nat(42));
        assert_eq!(
            SemiringSpec::tropical().parse_element("inf").unwrap(),
            Element::trop_inf()
        );
        assert_eq!(
            SemiringSpec::tropical().parse_element("-3/2").unwrap(),
            Element::Trop(Extended::Finite(BigRational::new((-3).into(), 2.into())))
        );
        assert_eq!(
            SemiringSpec::lukasiewicz().parse_element("1/2").unwrap(),
            Element::Luk(BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn round_trips_through_display() {
        let k = SemiringSpec::nat_poly();
        for text in ["0", "1", "x", "2*x^2*y + 3", "x + x*y"] {
            let e = k.parse_element(text).unwrap();
            let printed = e.to_string();
            assert_eq!(k.parse_element(&printed).unwrap(), e, "round trip of `{text}`");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SemiringSpec::lukasiewicz().parse_element("3/2").is_err());
        assert!(SemiringSpec::probability().parse_element("-1").is_err());
        assert!(SemiringSpec::nat().parse_element("-1").is_err());
        assert!(SemiringSpec::boolean().parse_element("maybe").is_err());
        assert!(SemiringSpec::nat_poly().parse_element("2**x").is_err());
        assert!(SemiringSpec::tropical().parse_element("1/0").is_err());
    }
}
