use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::poly::Polynomial;

/// A rational extended with a single point at infinity.
///
/// Carrier of the tropical semiring; `Infinity` is its additive identity
/// and is distinct from every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(BigRational),
    Infinity,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinity => write!(f, "inf"),
        }
    }
}

/// An element of one of the built-in semirings, tagged by instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Boolean semiring bit.
    Bool(bool),
    /// Arbitrary-precision natural.
    Nat(BigUint),
    /// Tropical value: rational or +infinity.
    Trop(Extended),
    /// Łukasiewicz value, a rational in [0, 1].
    Luk(BigRational),
    /// Probability value, a non-negative rational.
    Prob(BigRational),
    /// Polynomial with natural coefficients.
    Poly(Polynomial),
}

impl Element {
    pub fn nat(n: u64) -> Element {
        Element::Nat(BigUint::from(n))
    }

    pub fn trop(n: i64) -> Element {
        Element::Trop(Extended::Finite(BigRational::from_integer(n.into())))
    }

    pub fn trop_inf() -> Element {
        Element::Trop(Extended::Infinity)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Bool(b) => write!(f, "{b}"),
            Element::Nat(n) => write!(f, "{n}"),
            Element::Trop(x) => write!(f, "{x}"),
            Element::Luk(r) | Element::Prob(r) => write!(f, "{r}"),
            Element::Poly(p) => write!(f, "{p}"),
        }
    }
}
