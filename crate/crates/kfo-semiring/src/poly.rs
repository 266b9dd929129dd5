use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A power product of indeterminates, e.g. `x^2*y`.
///
/// Stored as a sorted exponent map so equality and ordering are structural.
/// Exponents are always >= 1; the empty map is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    /// The constant monomial (no indeterminates).
    pub fn unit() -> Self {
        Monomial(BTreeMap::new())
    }

    /// Single indeterminate raised to `exp`.
    pub fn var(name: &str, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with natural-number coefficients.
///
/// Monomials with coefficient zero are never stored, so the zero polynomial
/// is the empty map and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial(BTreeMap<Monomial, BigUint>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(BTreeMap::new())
    }

    pub fn one() -> Self {
        Polynomial::constant(BigUint::one())
    }

    pub fn constant(c: BigUint) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::unit(), c);
        }
        Polynomial(m)
    }

    /// The polynomial consisting of a single indeterminate.
    pub fn var(name: &str) -> Self {
        Polynomial::term(BigUint::one(), Monomial::var(name, 1))
    }

    pub fn term(coeff: BigUint, mono: Monomial) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert(mono, coeff);
        }
        Polynomial(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.0.iter()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.0.clone();
        for (m, c) in &other.0 {
            let entry = out.entry(m.clone()).or_insert_with(BigUint::zero);
            *entry += c;
        }
        Polynomial(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                let m = ma.mul(mb);
                let entry = out.entry(m).or_insert_with(BigUint::zero);
                *entry += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Polynomial(out)
    }

    /// Coefficient-wise partial order: `self <= other` iff every stored
    /// coefficient of `self` is bounded by the matching one in `other`.
    pub fn leq(&self, other: &Polynomial) -> bool {
        self.0
            .iter()
            .all(|(m, c)| other.0.get(m).map_or(false, |d| c <= d))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn mul_expands_products() {
        // (x + y) * x = x^2 + x*y
        let x = Polynomial::var("x");
        let y = Polynomial::var("y");
        let p = x.add(&y).mul(&x);
        let expected = Polynomial::term(nat(1), Monomial::var("x", 2))
            .add(&Polynomial::term(nat(1), Monomial::var("x", 1).mul(&Monomial::var("y", 1))));
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_coefficients_are_absent() {
        let p = Polynomial::constant(nat(0));
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn coefficient_order_is_partial() {
        let x = Polynomial::var("x");
        let y = Polynomial::var("y");
        assert!(x.leq(&x.add(&y)));
        assert!(!x.add(&y).leq(&x));
        // x and y are incomparable
        assert!(!x.leq(&y));
        assert!(!y.leq(&x));
    }

    #[test]
    fn display_is_canonical() {
        let p = Polynomial::term(nat(2), Monomial::var("x", 2).mul(&Monomial::var("y", 1)))
            .add(&Polynomial::constant(nat(3)));
        assert_eq!(p.to_string(), "3 + 2*x^2*y");
    }
}
