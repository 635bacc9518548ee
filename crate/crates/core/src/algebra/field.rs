use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A field of characteristic zero with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: BigRational) -> Self;
    fn to_complex(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

/// Shorthand for the rational p/q.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn q_to_f64(q: &BigRational) -> f64 {
    crate::specfun::to_f64(q)
}

impl Field for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(q_to_f64(self), 0.0)
    }
}

/// Floating-point complex numbers, for Taylor jets of numerically evaluated
/// functions. Not exact, so gcd-based routines are meaningless here.
impl Field for Complex64 {
    fn from_rational(q: BigRational) -> Self {
        Complex64::new(q_to_f64(&q), 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// a + bω with ω = e^{2πi/3}, so ω² = -1 - ω.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QOmega {
    pub a: BigRational,
    pub b: BigRational,
}

impl QOmega {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QOmega { a, b }
    }

    pub fn omega() -> Self {
        QOmega::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        QOmega::new(a, BigRational::zero())
    }

    /// Image under ω -> ω² (complex conjugation).
    pub fn conj(&self) -> Self {
        QOmega::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm a² - ab + b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})ω", self.b),
            (false, false) => write!(f, "{}+({})ω", self.a, self.b),
        }
    }
}

impl Zero for QOmega {
    fn zero() -> Self {
        QOmega::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QOmega {
    fn one() -> Self {
        QOmega::rational(BigRational::one())
    }
}

impl Add for QOmega {
    type Output = QOmega;
    fn add(self, o: QOmega) -> QOmega {
        QOmega::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QOmega {
    type Output = QOmega;
    fn sub(self, o: QOmega) -> QOmega {
        QOmega::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega::new(-self.a, -self.b)
    }
}

impl Mul for QOmega {
    type Output = QOmega;
    fn mul(self, o: QOmega) -> QOmega {
        let bd = &self.b * &o.b;
        QOmega::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a - bd,
        )
    }
}

impl Div for QOmega {
    type Output = QOmega;
    fn div(self, o: QOmega) -> QOmega {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(ω)");
        let num = self * o.conj();
        QOmega::new(num.a / &n, num.b / n)
    }
}

impl Field for QOmega {
    fn from_rational(q: BigRational) -> Self {
        QOmega::rational(q)
    }
    fn to_complex(&self) -> Complex64 {
        let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        Complex64::new(q_to_f64(&self.a), 0.0) + w * q_to_f64(&self.b)
    }
}
