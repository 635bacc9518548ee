use super::field::Field;
use super::poly::{fmt_poly, Poly};
use num_complex::Complex64;
use std::fmt;

/// Rational function num/den kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFn<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFn<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading();
        if !lead.is_one() {
            let inv = F::one() / lead;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.coeff(0))
    }

    /// max(deg num, deg den), the degree as a map of the sphere.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "rational function division by zero");
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: i32) -> Self {
        let p = RatFn { num: self.num.pow(n.unsigned_abs()), den: self.den.pow(n.unsigned_abs()) };
        if n >= 0 {
            Self::new(p.num, p.den)
        } else {
            Self::new(p.den, p.num)
        }
    }

    pub fn deriv(&self) -> Self {
        Self::new(
            self.num.deriv().mul(&self.den).sub(&self.num.mul(&self.den.deriv())),
            self.den.mul(&self.den),
        )
    }

    /// Value at x, `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.num.eval_complex(x) / self.den.eval_complex(x)
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        // homogenise: P(p/q) q^d for d = max degree
        let d = self.degree();
        let homog = |p: &Poly<F>| {
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = g.num.pow(i as u32).mul(&g.den.pow((d - i) as u32)).scale(c);
                acc = acc.add(&term);
            }
            acc
        };
        Self::new(homog(&self.num), homog(&self.den))
    }

    /// Text form in the given variable name.
    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Shown { f: self, var }
    }
}

struct Shown<'a, F: Field> {
    f: &'a RatFn<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for Shown<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.f.den;
        let n_terms = self.f.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if d.degree() == Some(0) {
            return fmt_poly(&self.f.num, self.var, f);
        }
        if n_terms > 1 {
            write!(f, "(")?;
            fmt_poly(&self.f.num, self.var, f)?;
            write!(f, ")")?;
        } else {
            fmt_poly(&self.f.num, self.var, f)?;
        }
        write!(f, "/(")?;
        fmt_poly(d, self.var, f)?;
        write!(f, ")")
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;
    use num_rational::BigRational;

    type R = RatFn<BigRational>;
    type P = Poly<BigRational>;

    #[test]
    fn reduces_and_normalises() {
        // (2x²-2)/(4x-4) = (x+1)/2
        let f = R::new(P::from_i64(&[-2, 0, 2]), P::from_i64(&[-4, 4]));
        assert_eq!(f.num(), &P::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(f.den(), &P::one());
        assert_eq!(f.to_string(), "1/2*x+1/2");
    }

    #[test]
    fn field_operations() {
        let x = R::x();
        let f = x.div(&x.sub(&R::one())); // x/(x-1)
        assert_eq!(f.compose(&f), x);
        assert_eq!(f.deriv(), R::new(P::from_i64(&[-1]), P::from_i64(&[1, -2, 1])));
        assert_eq!(f.mul(&f.pow(-1)), R::one());
        assert_eq!(f.eval(&rat(1, 1)), None);
        assert_eq!(f.eval(&rat(3, 1)), Some(rat(3, 2)));
        assert_eq!(f.add(&R::one().div(&x.sub(&R::one())).neg()), R::one());
        assert_eq!(f.display("k").to_string(), "k/(k-1)");
    }
}
