//! Polynomials in `y` with univariate polynomial coefficients, the home of
//! the product `P_x(y)` of linear factors and of its antiderivative.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::unipoly::UniPoly;
use crate::scalar::Coeff;

/// Element of `T[x][y]`: coefficients by ascending exponent of `y`, each a
/// polynomial in `x`. The vector never ends with a zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly<T> {
    y_coeffs: Vec<UniPoly<T>>,
}

impl<T: Coeff> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            y_coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(UniPoly::one())
    }

    pub fn constant(c: UniPoly<T>) -> Self {
        Self::from_y_coeffs(vec![c])
    }

    /// `c(x) * y^k`.
    pub fn monomial_y(c: UniPoly<T>, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut y_coeffs = vec![UniPoly::zero(); k + 1];
        y_coeffs[k] = c;
        BiPoly { y_coeffs }
    }

    pub fn from_y_coeffs(mut y_coeffs: Vec<UniPoly<T>>) -> Self {
        while y_coeffs.last().is_some_and(|c| c.is_zero()) {
            y_coeffs.pop();
        }
        BiPoly { y_coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_coeffs(&self) -> &[UniPoly<T>] {
        &self.y_coeffs
    }

    pub fn y_coeff(&self, k: usize) -> UniPoly<T> {
        self.y_coeffs.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// Whether the leading `y`-coefficient is the constant 1.
    pub fn is_monic_y(&self) -> bool {
        self.y_coeffs.last().is_some_and(|c| c == &UniPoly::one())
    }

    /// `prod (y - a_i)` over the given roots; the empty product is 1.
    pub fn product_of_linear_factors(roots: &[UniPoly<T>]) -> Self {
        let mut acc = Self::one();
        for a in roots {
            let factor = Self::from_y_coeffs(vec![-a, UniPoly::one()]);
            acc = &acc * &factor;
        }
        acc
    }

    /// Antiderivative in `y` with zero constant term: the result `R`
    /// satisfies `dR/dy = self` and `R(x, 0) = 0`.
    pub fn antiderivative_y(&self) -> Self {
        let mut y_coeffs = Vec::with_capacity(self.y_coeffs.len() + 1);
        y_coeffs.push(UniPoly::zero());
        for (k, c) in self.y_coeffs.iter().enumerate() {
            let divisor = T::from_usize(k + 1).expect("small integer fits any scalar");
            y_coeffs.push(c.scaled(&(T::one() / divisor)));
        }
        Self::from_y_coeffs(y_coeffs)
    }

    pub fn derivative_y(&self) -> Self {
        let y_coeffs = self
            .y_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scaled(&T::from_usize(k).expect("small integer fits any scalar")))
            .collect();
        Self::from_y_coeffs(y_coeffs)
    }

    /// Exact substitution `y := a(x)`, by Horner in `y`.
    pub fn compose_y(&self, a: &UniPoly<T>) -> UniPoly<T> {
        let mut acc = UniPoly::zero();
        for c in self.y_coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    /// `int_lo^hi self dy`, exactly.
    pub fn definite_integral_y(&self, lo: &UniPoly<T>, hi: &UniPoly<T>) -> UniPoly<T> {
        let anti = self.antiderivative_y();
        &anti.compose_y(hi) - &anti.compose_y(lo)
    }

    /// Specialises `x := x0`, leaving a univariate polynomial in `y`.
    pub fn specialize_x(&self, x0: &T) -> UniPoly<T> {
        UniPoly::from_coeffs(self.y_coeffs.iter().map(|c| c.eval(x0)).collect())
    }

    pub fn eval(&self, x0: &T, y0: &T) -> T {
        self.specialize_x(x0).eval(y0)
    }

    pub fn scaled(&self, c: &T) -> Self {
        Self::from_y_coeffs(self.y_coeffs.iter().map(|a| a.scaled(c)).collect())
    }
}

impl<T: Coeff> Add for &BiPoly<T> {
    type Output = BiPoly<T>;

    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let len = self.y_coeffs.len().max(rhs.y_coeffs.len());
        let y_coeffs = (0..len).map(|k| self.y_coeff(k) + rhs.y_coeff(k)).collect();
        BiPoly::from_y_coeffs(y_coeffs)
    }
}

impl<T: Coeff> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;

    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let len = self.y_coeffs.len().max(rhs.y_coeffs.len());
        let y_coeffs = (0..len).map(|k| self.y_coeff(k) - rhs.y_coeff(k)).collect();
        BiPoly::from_y_coeffs(y_coeffs)
    }
}

impl<T: Coeff> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;

    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut y_coeffs = vec![UniPoly::zero(); self.y_coeffs.len() + rhs.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.y_coeffs.iter().enumerate() {
                let updated = &y_coeffs[i + j] + &(a * b);
                y_coeffs[i + j] = updated;
            }
        }
        BiPoly::from_y_coeffs(y_coeffs)
    }
}

impl<T: Coeff> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;

    fn neg(self) -> BiPoly<T> {
        BiPoly::from_y_coeffs(self.y_coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Coeff> $trait for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $method(self, rhs: BiPoly<T>) -> BiPoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Coeff> $trait<&BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $method(self, rhs: &BiPoly<T>) -> BiPoly<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Coeff> $trait<BiPoly<T>> for &BiPoly<T> {
            type Output = BiPoly<T>;
            fn $method(self, rhs: BiPoly<T>) -> BiPoly<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<T: Coeff> Neg for BiPoly<T> {
    type Output = BiPoly<T>;

    fn neg(self) -> BiPoly<T> {
        -&self
    }
}

impl<T: Coeff> fmt::Display for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let one = UniPoly::one();
        for (k, c) in self.y_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == &one && k > 0 {
                // plain power of y
            } else {
                write!(f, "({c})")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k == 1 {
                write!(f, "y")?;
            } else if k > 1 {
                write!(f, "y^{k}")?;
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use crate::{rat, rat_int, Poly, Poly2, Rat};

    fn xp(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn x_pow(k: usize) -> Poly {
        Poly::monomial(rat_int(1), k)
    }

    #[test]
    fn product_of_linear_factors_basics() {
        // [0, x] -> y^2 - x*y
        let p = Poly2::product_of_linear_factors(&[Poly::zero(), x_pow(1)]);
        let expected = Poly2::from_y_coeffs(vec![Poly::zero(), -&x_pow(1), Poly::one()]);
        assert_eq!(p, expected);
        assert!(p.is_monic_y());

        assert_eq!(Poly2::product_of_linear_factors(&[]), Poly2::one());
    }

    #[test]
    fn product_of_five_roots_vanishes_at_roots() {
        // a_i from the caterpillar family with gaps x^4, x^3, x^2, x
        let roots = vec![
            Poly::zero(),
            x_pow(4),
            &x_pow(3) + &x_pow(4),
            &(&x_pow(2) + &x_pow(3)) + &x_pow(4),
            &(&(&x_pow(1) + &x_pow(2)) + &x_pow(3)) + &x_pow(4),
        ];
        let p = Poly2::product_of_linear_factors(&roots);
        assert_eq!(p.degree_y(), Some(5));
        assert!(p.is_monic_y());
        // a_1 = 0 is a root whatever the value of x
        assert_eq!(p.eval(&rat_int(1), &rat_int(0)), rat_int(0));
        for a in &roots {
            assert!(p.compose_y(a).is_zero());
        }
    }

    #[test]
    fn antiderivative_examples() {
        // y^2 - x*y -> y^3/3 - x*y^2/2
        let p = Poly2::product_of_linear_factors(&[Poly::zero(), x_pow(1)]);
        let anti = p.antiderivative_y();
        let expected = Poly2::from_y_coeffs(vec![
            Poly::zero(),
            Poly::zero(),
            x_pow(1).scaled(&rat(-1, 2)),
            Poly::constant(rat(1, 3)),
        ]);
        assert_eq!(anti, expected);
        assert_eq!(anti.derivative_y(), p);
        assert!(anti.y_coeff(0).is_zero());

        assert_eq!(
            Poly2::one().antiderivative_y(),
            Poly2::from_y_coeffs(vec![Poly::zero(), Poly::one()])
        );
    }

    #[test]
    fn compose_examples() {
        let p = Poly2::product_of_linear_factors(&[Poly::zero(), x_pow(1)]);
        // substituting the root y = x kills the product
        assert!(p.compose_y(&x_pow(1)).is_zero());
        // y at y := x^3
        let y = Poly2::monomial_y(Poly::one(), 1);
        assert_eq!(y.compose_y(&x_pow(3)), x_pow(3));
        // y^3/3 - x*y^2/2 at y := x gives -x^3/6
        let anti = p.antiderivative_y();
        assert_eq!(anti.compose_y(&x_pow(1)), x_pow(3).scaled(&rat(-1, 6)));
    }

    #[test]
    fn definite_integral_examples() {
        let p = Poly2::product_of_linear_factors(&[Poly::zero(), x_pow(1)]);
        assert_eq!(
            p.definite_integral_y(&Poly::zero(), &x_pow(1)),
            x_pow(3).scaled(&rat(-1, 6))
        );
        let a = xp(&[3, 1, 4]);
        assert!(p.definite_integral_y(&a, &a).is_zero());
        assert_eq!(
            Poly2::one().definite_integral_y(&Poly::zero(), &x_pow(2)),
            x_pow(2)
        );
    }

    #[test]
    fn specialize_and_eval() {
        let p = Poly2::product_of_linear_factors(&[Poly::zero(), x_pow(1)]);
        let at_half = p.specialize_x(&rat(1, 2));
        // y^2 - y/2
        assert_eq!(
            at_half,
            Poly::from_coeffs(vec![rat_int(0), rat(-1, 2), rat_int(1)])
        );
        assert_eq!(p.eval(&rat(1, 2), &rat(1, 2)), Rat::from_integer(0.into()));
    }

    #[test]
    fn display_forms() {
        let q = Poly2::from_y_coeffs(vec![
            Poly::zero(),
            Poly::zero(),
            x_pow(1).scaled(&rat(-3, 2)),
            Poly::one(),
        ]);
        assert_eq!(q.to_string(), "(-3/2*x)*y^2 + y^3");
        assert_eq!(Poly2::zero().to_string(), "0");
        assert_eq!(Poly2::constant(xp(&[1, 1])).to_string(), "(1 + x)");
    }
}
