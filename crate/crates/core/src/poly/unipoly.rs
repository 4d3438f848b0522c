//! Dense univariate polynomials over an exact scalar.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::PolyError;
use crate::scalar::{Coeff, Valuation};

/// Polynomial in one variable, stored densely by ascending exponent.
///
/// The coefficient vector never ends with a zero, so the zero polynomial is
/// the empty vector and every value has a unique representation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> UniPoly<T> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Builds a polynomial from coefficients by ascending exponent,
    /// trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients by ascending exponent, without trailing zeros.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// The degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Exponent of the lowest-order nonzero term.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Valuation::Finite(k),
            None => Valuation::Infinity,
        }
    }

    /// Coefficient of the lowest-order nonzero term.
    pub fn lowest_coeff(&self) -> Option<&T> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| T::from_usize(k).expect("small integer fits any scalar") * c.clone())
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_usize(k + 1).expect("small integer fits any scalar"));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scaled(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap().clone() / lead.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let updated = rem[k + i].clone() - factor.clone() * dc.clone();
                rem[k + i] = updated;
            }
            // The leading term cancels by construction.
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            quot[k] = factor;
        }
        Some((Self::from_coeffs(quot), UniPoly { coeffs: rem }))
    }

    /// Monic greatest common divisor (Euclid over the coefficient field).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Divides out the leading coefficient; zero stays zero.
    pub fn into_monic(self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let lc = lc.clone();
                Self::from_coeffs(self.coeffs.into_iter().map(|c| c / lc.clone()).collect())
            }
            _ => self,
        }
    }

    /// True when the polynomial has no repeated roots, i.e. it is coprime
    /// with its derivative. Constants count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return true;
        }
        Self::gcd(self, &self.derivative()).degree() == Some(0)
    }
}

/// Three-way comparison of polynomial germs at `0+`: `Less` means the first
/// argument is smaller for all sufficiently small `x > 0`, decided by the
/// sign of the lowest-order nonzero coefficient of the difference.
pub fn cmp_right<T: Coeff>(p: &UniPoly<T>, q: &UniPoly<T>) -> Ordering {
    let diff = q - p;
    match diff.lowest_coeff() {
        None => Ordering::Equal,
        Some(c) if c.is_positive() => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// Whether `p(x) < q(x)` for all sufficiently small `x > 0`.
pub fn precedes_right<T: Coeff>(p: &UniPoly<T>, q: &UniPoly<T>) -> Result<bool, PolyError> {
    match cmp_right(p, q) {
        Ordering::Equal => Err(PolyError::EqualPolynomials),
        Ordering::Less => Ok(true),
        Ordering::Greater => Ok(false),
    }
}

impl<T: Coeff> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let updated = coeffs[i + j].clone() + a.clone() * b.clone();
                coeffs[i + j] = updated;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Coeff> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c.clone().neg()).collect())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Coeff> $trait for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: UniPoly<T>) -> UniPoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Coeff> $trait<&UniPoly<T>> for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: &UniPoly<T>) -> UniPoly<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Coeff> $trait<UniPoly<T>> for &UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: UniPoly<T>) -> UniPoly<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<T: Coeff> Neg for UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        -&self
    }
}

/// Renders one `c * v^k` term into an ongoing sum, eliding unit
/// coefficients and zero/unit exponents.
pub(crate) fn fmt_term<T: Coeff>(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &T,
    var: char,
    k: usize,
) -> fmt::Result {
    let neg = c.is_negative();
    if *first {
        if neg {
            write!(f, "-")?;
        }
        *first = false;
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.abs();
    if k == 0 {
        write!(f, "{mag}")?;
    } else {
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "{var}")?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl<T: Coeff> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, &mut first, c, 'x', k)?;
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int, Poly};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(p(&[0, 0, 0]), Poly::zero());
        assert!(p(&[]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn valuation_examples() {
        // x^3 + x^4
        assert_eq!(p(&[0, 0, 0, 1, 1]).valuation(), Valuation::Finite(3));
        assert_eq!(Poly::zero().valuation(), Valuation::Infinity);
        // 5 - 2x
        assert_eq!(p(&[5, -2]).valuation(), Valuation::Finite(0));
    }

    #[test]
    fn precedes_right_examples() {
        let x = p(&[0, 1]);
        let x2 = p(&[0, 0, 1]);
        let x4 = p(&[0, 0, 0, 0, 1]);
        // x - x^2 has lowest coefficient +1 at x^1
        assert_eq!(precedes_right(&x2, &x), Ok(true));
        assert_eq!(precedes_right(&Poly::zero(), &x4), Ok(true));
        assert_eq!(precedes_right(&x, &x2), Ok(false));
        assert_eq!(
            precedes_right(&x, &p(&[0, 1])),
            Err(PolyError::EqualPolynomials)
        );
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 2, 3]);
        let b = p(&[0, -2, -3, 4]);
        assert_eq!(&a + &b, p(&[1, 0, 0, 4]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let v = a.eval(&rat(1, 2));
        assert_eq!(v, rat(11, 4)); // 1 + 2/2 + 3/4
    }

    #[test]
    fn derivative_antiderivative() {
        let a = p(&[4, 0, 6]);
        assert_eq!(a.derivative(), p(&[0, 12]));
        assert_eq!(a.antiderivative().derivative(), a);
        assert_eq!(a.antiderivative().coeff(0), rat_int(0));
    }

    #[test]
    fn div_rem_and_gcd() {
        let f = &p(&[-1, 0, 1]) * &p(&[2, 1]); // (x^2-1)(x+2)
        let (q, r) = f.div_rem(&p(&[2, 1])).unwrap();
        assert_eq!(q, p(&[-1, 0, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[1]).div_rem(&Poly::zero()), None);

        let g = Poly::gcd(&f, &p(&[-1, 0, 1]));
        assert_eq!(g, p(&[-1, 0, 1]));

        let sq = &p(&[-1, 1]) * &p(&[-1, 1]);
        assert!(!sq.is_squarefree());
        assert!(f.is_squarefree());
        assert!(p(&[7]).is_squarefree());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[0, 0, 1, 1]).to_string(), "x^2 + x^3");
        assert_eq!(p(&[5, -2]).to_string(), "5 - 2*x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            Poly::from_coeffs(vec![rat_int(0), rat(-1, 6)]).to_string(),
            "-1/6*x"
        );
        assert_eq!(Poly::monomial(rat_int(-1), 3).to_string(), "-x^3");
    }
}
