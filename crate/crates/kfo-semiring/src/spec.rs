use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::element::{Element, Extended};
use crate::error::SemiringError;
use crate::poly::Polynomial;
use crate::Result;

/// Identifier of a built-in semiring instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringId {
    Boolean,
    Nat,
    Tropical,
    Lukasiewicz,
    Probability,
    NatPoly,
}

impl SemiringId {
    pub const ALL: [SemiringId; 6] = [
        SemiringId::Boolean,
        SemiringId::Nat,
        SemiringId::Tropical,
        SemiringId::Lukasiewicz,
        SemiringId::Probability,
        SemiringId::NatPoly,
    ];

    /// Stable textual name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            SemiringId::Boolean => "bool",
            SemiringId::Nat => "nat",
            SemiringId::Tropical => "tropical",
            SemiringId::Lukasiewicz => "lukasiewicz",
            SemiringId::Probability => "prob",
            SemiringId::NatPoly => "natpoly",
        }
    }

    pub fn from_name(name: &str) -> Option<SemiringId> {
        SemiringId::ALL.iter().copied().find(|id| id.name() == name)
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A semiring instance together with its structural flags.
///
/// The zero and one elements are stored rather than derived so that tests
/// can construct deliberately broken specs for the law checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringSpec {
    pub id: SemiringId,
    pub zero: Element,
    pub one: Element,
    pub commutative: bool,
    pub positive: bool,
    pub ordered: bool,
    pub add_idempotent: bool,
}

impl SemiringSpec {
    pub fn new(id: SemiringId) -> SemiringSpec {
        let (zero, one) = canonical_units(id);
        SemiringSpec {
            id,
            zero,
            one,
            commutative: true,
            // Łukasiewicz has zero divisors: 1/4 * 1/2 = max(0, 3/4 - 1) = 0,
            // so it cannot carry the positivity flag.
            positive: id != SemiringId::Lukasiewicz,
            ordered: true,
            add_idempotent: matches!(
                id,
                SemiringId::Boolean | SemiringId::Tropical | SemiringId::Lukasiewicz
            ),
        }
    }

    pub fn boolean() -> SemiringSpec {
        SemiringSpec::new(SemiringId::Boolean)
    }

    pub fn nat() -> SemiringSpec {
        SemiringSpec::new(SemiringId::Nat)
    }

    pub fn tropical() -> SemiringSpec {
        SemiringSpec::new(SemiringId::Tropical)
    }

    pub fn lukasiewicz() -> SemiringSpec {
        SemiringSpec::new(SemiringId::Lukasiewicz)
    }

    pub fn probability() -> SemiringSpec {
        SemiringSpec::new(SemiringId::Probability)
    }

    pub fn nat_poly() -> SemiringSpec {
        SemiringSpec::new(SemiringId::NatPoly)
    }

    pub fn from_name(name: &str) -> Option<SemiringSpec> {
        SemiringId::from_name(name).map(SemiringSpec::new)
    }

    pub fn zero(&self) -> Element {
        self.zero.clone()
    }

    pub fn one(&self) -> Element {
        self.one.clone()
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero
    }

    /// Checks that `a` belongs to this instance, including the value-range
    /// invariants of the carrier.
    pub fn contains(&self, a: &Element) -> bool {
        match (self.id, a) {
            (SemiringId::Boolean, Element::Bool(_)) => true,
            (SemiringId::Nat, Element::Nat(_)) => true,
            (SemiringId::Tropical, Element::Trop(_)) => true,
            (SemiringId::Lukasiewicz, Element::Luk(r)) => {
                !r.is_negative() && *r <= BigRational::one()
            }
            (SemiringId::Probability, Element::Prob(r)) => !r.is_negative(),
            (SemiringId::NatPoly, Element::Poly(_)) => true,
            _ => false,
        }
    }

    fn check_member(&self, a: &Element) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(SemiringError::InstanceMismatch {
                expected: self.id,
                found: a.to_string(),
            })
        }
    }

    /// Semiring addition.
    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (a, b) {
            (Element::Bool(x), Element::Bool(y)) => Element::Bool(*x || *y),
            (Element::Nat(x), Element::Nat(y)) => Element::Nat(x + y),
            (Element::Trop(x), Element::Trop(y)) => Element::Trop(trop_min(x, y)),
            (Element::Luk(x), Element::Luk(y)) => Element::Luk(x.max(y).clone()),
            (Element::Prob(x), Element::Prob(y)) => Element::Prob(x + y),
            (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.add(y)),
            _ => unreachable!("mixed instances are rejected by check_member"),
        })
    }

    /// Semiring multiplication.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (a, b) {
            (Element::Bool(x), Element::Bool(y)) => Element::Bool(*x && *y),
            (Element::Nat(x), Element::Nat(y)) => Element::Nat(x * y),
            (Element::Trop(x), Element::Trop(y)) => Element::Trop(match (x, y) {
                (Extended::Finite(p), Extended::Finite(q)) => Extended::Finite(p + q),
                _ => Extended::Infinity,
            }),
            (Element::Luk(x), Element::Luk(y)) => {
                let s = x + y - BigRational::one();
                Element::Luk(if s.is_negative() { BigRational::zero() } else { s })
            }
            (Element::Prob(x), Element::Prob(y)) => Element::Prob(x * y),
            (Element::Poly(x), Element::Poly(y)) => Element::Poly(x.mul(y)),
            _ => unreachable!("mixed instances are rejected by check_member"),
        })
    }

    /// Folds addition over `items`; the empty fold is `zero`.
    pub fn sum<'a, I>(&self, items: I) -> Result<Element>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut acc = self.zero();
        for x in items {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    /// Folds multiplication over `items`; the empty fold is `one`.
    pub fn prod<'a, I>(&self, items: I) -> Result<Element>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut acc = self.one();
        for x in items {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Canonical partial order of the instance.
    ///
    /// The tropical order is the natural order of the additively idempotent
    /// semiring (`a <= b` iff `a + b = b`), i.e. the reverse of the numeric
    /// order with infinity as the least element. The polynomial order is
    /// coefficient-wise and genuinely partial.
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        if !self.ordered {
            return Err(SemiringError::Unordered(self.id));
        }
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (a, b) {
            (Element::Bool(x), Element::Bool(y)) => x <= y,
            (Element::Nat(x), Element::Nat(y)) => x <= y,
            (Element::Trop(x), Element::Trop(y)) => match (x, y) {
                (Extended::Infinity, _) => true,
                (_, Extended::Infinity) => false,
                (Extended::Finite(p), Extended::Finite(q)) => q <= p,
            },
            (Element::Luk(x), Element::Luk(y)) => x <= y,
            (Element::Prob(x), Element::Prob(y)) => x <= y,
            (Element::Poly(x), Element::Poly(y)) => x.leq(y),
            _ => unreachable!("mixed instances are rejected by check_member"),
        })
    }

    /// The characteristic map into the Booleans: zero goes to `false`,
    /// everything else to `true`.
    pub fn xi(&self, a: &Element) -> Element {
        Element::Bool(!self.is_zero(a))
    }
}

fn trop_min(x: &Extended, y: &Extended) -> Extended {
    match (x, y) {
        (Extended::Infinity, other) | (other, Extended::Infinity) => other.clone(),
        (Extended::Finite(p), Extended::Finite(q)) => Extended::Finite(p.min(q).clone()),
    }
}

fn canonical_units(id: SemiringId) -> (Element, Element) {
    match id {
        SemiringId::Boolean => (Element::Bool(false), Element::Bool(true)),
        SemiringId::Nat => (Element::Nat(BigUint::zero()), Element::Nat(BigUint::one())),
        SemiringId::Tropical => (
            Element::Trop(Extended::Infinity),
            Element::Trop(Extended::Finite(BigRational::zero())),
        ),
        SemiringId::Lukasiewicz => (
            Element::Luk(BigRational::zero()),
            Element::Luk(BigRational::one()),
        ),
        SemiringId::Probability => (
            Element::Prob(BigRational::zero()),
            Element::Prob(BigRational::one()),
        ),
        SemiringId::NatPoly => (
            Element::Poly(Polynomial::zero()),
            Element::Poly(Polynomial::one()),
        ),
    }
}

trait RationalSign {
    fn is_negative(&self) -> bool;
}

impl RationalSign for BigRational {
    fn is_negative(&self) -> bool {
        use num_traits::Signed;
        Signed::is_negative(self)
    }
}
