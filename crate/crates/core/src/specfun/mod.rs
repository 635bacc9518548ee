//! Complex Gamma and Gauss hypergeometric functions.
//!
//! Everything here runs in binary64. [`extended`] holds a slower
//! arbitrary-precision path with the same shape, used for cross-checks and
//! selected through [`Precision`].

mod gamma;
mod hyp;

pub mod extended;

pub use gamma::{gamma, rgamma};
pub use hyp::{
    euler_transform, gauss_sum, hyp2f1, hyp2f1_complement, hyp2f1_deriv, hyp2f1_one_sided,
    hyp2f1_params, hyp2f1_taylor, pfaff_transform, HypParams,
};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ComplexValue = Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecfunError {
    #[error("Gamma pole at non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("degenerate connection: {which} = {value} is an integer")]
    DegenerateConnection { which: &'static str, value: f64 },
    #[error("s = {0} lies on the branch cut [1, inf)")]
    CutEvaluation(ComplexValue),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParameters(String),
    #[error("non-finite intermediate value")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

/// Working precision for hypergeometric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    /// Arbitrary precision with roughly this many decimal digits.
    Extended { digits: u32 },
}

impl Precision {
    pub const ENV_VAR: &'static str = "CHAZYLAB_PRECISION";

    /// Reads `CHAZYLAB_PRECISION`: `extended` (40 digits), `extended:<digits>`,
    /// anything else means binary64.
    pub fn from_env() -> Self {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => Self::parse(&v).unwrap_or_default(),
            Err(_) => Precision::Double,
        }
    }

    pub fn parse(v: &str) -> Option<Self> {
        let v = v.trim().to_ascii_lowercase();
        if v == "double" || v.is_empty() {
            return Some(Precision::Double);
        }
        if v == "extended" {
            return Some(Precision::Extended { digits: 40 });
        }
        let digits = v.strip_prefix("extended:")?.parse().ok()?;
        Some(Precision::Extended { digits })
    }
}

/// Exact hypergeometric parameters `(a, b; c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypTriple {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl HypTriple {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        if c <= BigRational::zero() && c.is_integer() {
            return Err(SpecfunError::InvalidParameters(format!(
                "c = {c} is a non-positive integer"
            )));
        }
        Ok(HypTriple { a, b, c })
    }

    /// Parameters of the hypergeometric equation whose local exponent
    /// differences at 0, 1, inf are `alpha`, `beta`, `gamma`:
    /// a = (1-α-β-γ)/2, b = (1-α-β+γ)/2, c = 1-α.
    pub fn from_exponents(
        alpha: &BigRational,
        beta: &BigRational,
        gamma: &BigRational,
    ) -> Result<Self> {
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        let a = (&one - alpha - beta - gamma) * &half;
        let b = (&one - alpha - beta + gamma) * &half;
        let c = &one - alpha;
        Self::new(a, b, c)
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Self> {
        let r = |(p, q): (i64, i64)| BigRational::new(p.into(), q.into());
        Self::new(r(a), r(b), r(c))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }
    pub fn b(&self) -> &BigRational {
        &self.b
    }
    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn params(&self) -> HypParams {
        HypParams::new(to_f64(&self.a), to_f64(&self.b), to_f64(&self.c))
    }

    /// (a+n, b+n; c+n), the parameters of the n-th derivative.
    pub fn shifted(&self, n: i64) -> Result<Self> {
        let n = BigRational::from_integer(n.into());
        Self::new(&self.a + &n, &self.b + &n, &self.c + &n)
    }

    /// True when c-a-b is an integer, so the 1-s connection is logarithmic.
    pub fn is_degenerate_at_one(&self) -> bool {
        (&self.c - &self.a - &self.b).is_integer()
    }

    /// True when a-b is an integer, so the 1/s connection is logarithmic.
    pub fn is_degenerate_at_infinity(&self) -> bool {
        (&self.a - &self.b).is_integer()
    }
}

/// [`hyp2f1`] at the requested precision.
pub fn hyp2f1_with(prec: Precision, p: &HypTriple, s: ComplexValue) -> Result<ComplexValue> {
    match extended::digits_for(prec) {
        None => hyp2f1(p, s),
        Some(d) => extended::hyp2f1(p, s, d),
    }
}

/// [`hyp2f1_complement`] at the requested precision.
pub fn hyp2f1_complement_with(
    prec: Precision,
    p: &HypTriple,
    u: ComplexValue,
) -> Result<ComplexValue> {
    match extended::digits_for(prec) {
        None => hyp2f1_complement(p, u),
        Some(d) => extended::hyp2f1_complement(p, u, d),
    }
}

/// [`gamma`] at the requested precision.
pub fn gamma_with(prec: Precision, w: ComplexValue) -> Result<ComplexValue> {
    match extended::digits_for(prec) {
        None => gamma(w),
        Some(d) => extended::gamma(w, d),
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range; scale through the ratio
        let n = q.numer().abs().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = n - d;
        let scaled = q / BigRational::from_integer(num_bigint::BigInt::one() << shift.max(0) as usize)
            * BigRational::from_integer(num_bigint::BigInt::one() << (-shift).max(0) as usize);
        let v = scaled.to_f64().unwrap_or(f64::NAN);
        v * 2f64.powi(shift as i32)
    })
}

/// Principal argument, with the negative real axis approached from above
/// (arg = +π even for a negative zero imaginary part).
pub fn principal_arg(w: ComplexValue) -> f64 {
    if w.im == 0.0 && w.re < 0.0 {
        std::f64::consts::PI
    } else {
        w.im.atan2(w.re)
    }
}

/// Principal logarithm with the branch convention of [`principal_arg`].
pub fn principal_ln(w: ComplexValue) -> ComplexValue {
    Complex64::new(w.norm().ln(), principal_arg(w))
}

/// `w^p` on the principal branch, limit from above on the negative axis.
pub fn cpow(w: ComplexValue, p: f64) -> ComplexValue {
    if w == Complex64::zero() {
        return if p == 0.0 {
            Complex64::one()
        } else if p > 0.0 {
            Complex64::zero()
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    let r = w.norm().powf(p);
    let t = principal_arg(w) * p;
    Complex64::new(r * t.cos(), r * t.sin())
}

pub(crate) fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-10 * x.abs().max(1.0)
}

pub(crate) fn check_finite(w: ComplexValue) -> Result<ComplexValue> {
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        Err(SpecfunError::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_axis_is_taken_from_above() {
        let w = Complex64::new(-4.0, -0.0);
        assert_eq!(principal_arg(w), std::f64::consts::PI);
        let r = cpow(w, 0.5);
        assert!((r - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn triple_from_exponents() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let t = HypTriple::from_exponents(&r(1, 2), &r(1, 3), &r(1, 7)).unwrap();
        assert_eq!(t.a(), &(r(1, 12) - r(1, 14)));
        assert_eq!(t.b(), &(r(1, 12) + r(1, 14)));
        assert_eq!(t.c(), &r(1, 2));
        assert!(!t.is_degenerate_at_one());
    }

    #[test]
    fn rejects_pole_in_c() {
        assert!(HypTriple::from_ints((1, 1), (1, 1), (-2, 1)).is_err());
        assert!(HypTriple::from_ints((1, 1), (1, 1), (-1, 2)).is_ok());
    }

    #[test]
    fn precision_parsing() {
        assert_eq!(Precision::parse("extended"), Some(Precision::Extended { digits: 40 }));
        assert_eq!(Precision::parse("extended:60"), Some(Precision::Extended { digits: 60 }));
        assert_eq!(Precision::parse("double"), Some(Precision::Double));
        assert_eq!(Precision::parse("quad"), None);
    }
}
