//! Scalar coefficients and x-adic valuations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::{FromPrimitive, Signed};

/// Coefficient scalar for polynomial arithmetic.
///
/// `num_rational::BigRational` is the intended instantiation and the only
/// one used by the domain modules; the bounds are also satisfied by the
/// built-in floats, which keeps the polynomial layer reusable. Exactness of
/// every ordering decision is only guaranteed for exact scalars.
pub trait Coeff:
    Signed + PartialOrd + Clone + FromPrimitive + fmt::Debug + fmt::Display + 'static
{
}

impl<T> Coeff for T where
    T: Signed + PartialOrd + Clone + FromPrimitive + fmt::Debug + fmt::Display + 'static
{
}

/// x-adic valuation of a polynomial: the exponent of its lowest-order
/// nonzero term, with an explicit infinity for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinity,
}

impl Valuation {
    /// The finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// The finite value; panics on infinity.
    pub fn expect_finite(self, what: &str) -> usize {
        match self {
            Valuation::Finite(v) => v,
            Valuation::Infinity => panic!("valuation of {what} is infinite"),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

// Valuations add like exponents of products, with infinity absorbing.
impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_on_top() {
        assert!(Valuation::Finite(1000) < Valuation::Infinity);
        assert!(Valuation::Finite(2) < Valuation::Finite(3));
        assert_eq!(
            Valuation::Infinity.max(Valuation::Finite(7)),
            Valuation::Infinity
        );
    }

    #[test]
    fn addition_absorbs_infinity() {
        assert_eq!(
            Valuation::Finite(2) + Valuation::Finite(3),
            Valuation::Finite(5)
        );
        assert_eq!(
            Valuation::Finite(2) + Valuation::Infinity,
            Valuation::Infinity
        );
    }
}
