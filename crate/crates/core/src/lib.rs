//! Exact realisation of separable alternating permutations as Arnold snakes
//! of Morse polynomials, and the converse extraction of the snake of a given
//! Morse polynomial.
//!
//! All core arithmetic is exact: coefficients are arbitrary-precision
//! rationals and every ordering decision (which critical value is larger,
//! which polynomial wins near `0+`) is made by sign inspection, never by
//! floating-point sampling.
//!
//! The crate is organised around the objects of the construction:
//!
//! * [`poly`] — univariate and bivariate polynomial arithmetic over the
//!   scalar type, with a text syntax that round-trips;
//! * [`perm`] — permutations, alternating sequences, snakes, direct and
//!   skew sums, pattern containment and separability;
//! * [`septree`] — signed binary separating trees of separable permutations;
//! * [`contact`] — contact trees of polynomial families and the realisation
//!   of abstract binary shapes by explicit polynomials;
//! * [`valuation`] — the valuation of the areas cut out by consecutive
//!   roots, computed both on the contact tree and by exact integration;
//! * [`realize`] — the full pipeline from a separable snake to a verified
//!   Morse polynomial with a concrete rational witness;
//! * [`extract`] — Sturm-based root isolation and snake extraction from an
//!   arbitrary Morse polynomial over the rationals.
//!
//! Polynomial arithmetic is generic over the scalar via [`scalar::Coeff`];
//! the domain modules work with the exact rational instantiation through
//! the [`Rat`], [`Poly`] and [`Poly2`] aliases below.

pub mod contact;
pub mod extract;
pub mod perm;
pub mod poly;
pub mod realize;
pub mod scalar;
pub mod septree;
pub mod valuation;

/// Arbitrary-precision rational, the coefficient field everywhere.
pub type Rat = num_rational::BigRational;

/// Univariate polynomial over [`Rat`].
pub type Poly = poly::UniPoly<Rat>;

/// Bivariate polynomial over [`Rat`], a polynomial in `y` whose
/// coefficients live in `Q[x]`.
pub type Poly2 = poly::BiPoly<Rat>;

pub use contact::{contact_tree_of, realize_shape, tree_isomorphic, BinShape, ContactTree};
pub use perm::{AltSequence, Permutation};
pub use poly::{parse_bipoly, parse_unipoly, precedes_right};
pub use realize::{realize_snake, RealizationResult};
pub use scalar::Valuation;
pub use septree::{Sign, SignedTree};
pub use valuation::{area_valuation, area_valuation_oracle, AreaProfile};

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer.into(), denom.into())
}

/// Convenience constructor for integer rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
