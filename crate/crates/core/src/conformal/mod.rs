//! The Schwarz map z(s) = χ₂/χ₁ of a hyperbolic triangle, its vertices, the
//! natural-barrier radius, and the local inverse s(z) near z(0) = 0.

mod puiseux;
mod radius;

pub use puiseux::{hyp_series, invert_to_puiseux, invert_to_puiseux_rational, PuiseuxSeries};
pub use radius::{
    barrier_radius, barrier_radius_geometric, barrier_radius_with, radius_sq_from_sines,
    TriangleGeometry,
};

use crate::classifier::TriangleParams;
use crate::specfun::{
    self, cpow, gamma_with, hyp2f1_complement_with, hyp2f1_deriv, hyp2f1_with, ComplexValue, HypTriple, Precision,
    SpecfunError,
};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConformalError {
    #[error("χ₁(s) vanishes at s = {0}")]
    DenominatorZero(ComplexValue),
    #[error("exponent 1/α = {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("invalid triangle {0}")]
    InvalidTriangle(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, ConformalError>;

pub(crate) fn f(q: &BigRational) -> f64 {
    specfun::to_f64(q)
}

/// z(s) = s^{1-c} ₂F₁(a-c+1, b-c+1; 2-c; s) / ₂F₁(a, b; c; s).
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzMap {
    triangle: TriangleParams,
    hyp: HypTriple,
    /// (a-c+1, b-c+1; 2-c), the factor of χ₂.
    hyp2: HypTriple,
    wronskian_constant: ComplexValue,
    precision: Precision,
    alpha: f64,
    beta: f64,
}

impl SchwarzMap {
    /// Needs α > 0; β, γ only have to keep the ₂F₁ parameters regular.
    pub fn new(t: &TriangleParams) -> Result<Self> {
        if !t.alpha.is_positive() {
            return Err(ConformalError::InvalidTriangle(format!(
                "{t}: α must be positive"
            )));
        }
        let hyp = t.hyp_triple()?;
        let one = BigRational::one();
        let hyp2 = HypTriple::new(
            hyp.a() - hyp.c() + &one,
            hyp.b() - hyp.c() + &one,
            BigRational::from_integer(2.into()) - hyp.c(),
        )?;
        let alpha = f(&t.alpha);
        let beta = f(&t.beta);
        Ok(SchwarzMap {
            triangle: t.clone(),
            hyp,
            hyp2,
            // (-1)^{1-β} α on the principal branch
            wronskian_constant: Complex64::from_polar(alpha, PI * (1.0 - beta)),
            precision: Precision::Double,
            alpha,
            beta,
        })
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn triangle(&self) -> &TriangleParams {
        &self.triangle
    }

    pub fn hyp(&self) -> &HypTriple {
        &self.hyp
    }

    pub fn hyp2(&self) -> &HypTriple {
        &self.hyp2
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// A = (-1)^{1-β} α.
    pub fn wronskian_constant(&self) -> ComplexValue {
        self.wronskian_constant
    }

    pub fn chi1(&self, s: ComplexValue) -> Result<ComplexValue> {
        Ok(hyp2f1_with(self.precision, &self.hyp, s)?)
    }

    pub fn chi1_prime(&self, s: ComplexValue) -> Result<ComplexValue> {
        Ok(hyp2f1_deriv(&self.hyp, s, 1)?)
    }

    pub fn chi2(&self, s: ComplexValue) -> Result<ComplexValue> {
        if s.is_zero() {
            return Ok(Complex64::zero());
        }
        Ok(cpow(s, self.alpha) * hyp2f1_with(self.precision, &self.hyp2, s)?)
    }

    pub fn chi2_prime(&self, s: ComplexValue) -> Result<ComplexValue> {
        let g = hyp2f1_with(self.precision, &self.hyp2, s)?;
        let dg = hyp2f1_deriv(&self.hyp2, s, 1)?;
        Ok(cpow(s, self.alpha - 1.0) * (self.alpha * g + s * dg))
    }

    /// A·s^{α-1}(s-1)^{β-1} with principal powers, as in Abel's formula.
    pub fn wronskian(&self, s: ComplexValue) -> ComplexValue {
        self.wronskian_constant * cpow(s, self.alpha - 1.0) * cpow(s - 1.0, self.beta - 1.0)
    }

    /// W(s) = α s^{α-1}(1-s)^{β-1}; equal to [`Self::wronskian`] for
    /// Im s >= 0 and analytic off (-∞, 0] ∪ [1, ∞).
    pub fn w(&self, s: ComplexValue) -> ComplexValue {
        self.alpha * cpow(s, self.alpha - 1.0) * cpow(1.0 - s, self.beta - 1.0)
    }
}

/// z(s) = χ₂(s)/χ₁(s).
pub fn z_of_s(m: &SchwarzMap, s: ComplexValue) -> Result<ComplexValue> {
    if s.is_zero() {
        return Ok(Complex64::zero());
    }
    let c1 = m.chi1(s)?;
    if c1.norm() == 0.0 {
        return Err(ConformalError::DenominatorZero(s));
    }
    Ok(m.chi2(s)? / c1)
}

/// z'(s) = W(s)/χ₁(s)².
pub fn z_prime_of_s(m: &SchwarzMap, s: ComplexValue) -> Result<ComplexValue> {
    let c1 = m.chi1(s)?;
    if c1.norm() == 0.0 {
        return Err(ConformalError::DenominatorZero(s));
    }
    Ok(m.w(s) / (c1 * c1))
}

/// z(1) as the limit of z(1-u), u → 0⁺. Near s = 1 the map expands in
/// powers of u^β and u, and those leading terms are removed by Richardson
/// extrapolation on u = 10⁻⁴·4⁻ʲ.
pub fn vertex_limit_z1(m: &SchwarzMap) -> Result<ComplexValue> {
    let b = m.beta;
    let mut exps = vec![b, 2.0 * b, 3.0 * b, 1.0];
    exps.sort_by(|x, y| x.total_cmp(y));
    exps.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    exps.truncate(3);
    let q: f64 = 4.0;
    let mut vals = Vec::new();
    for j in 0..=exps.len() {
        let u = Complex64::new(1e-4 / q.powi(j as i32), 0.0);
        let c1 = hyp2f1_complement_with(m.precision, &m.hyp, u)?;
        let c2 = hyp2f1_complement_with(m.precision, &m.hyp2, u)?;
        vals.push(cpow(1.0 - u, m.alpha) * c2 / c1);
    }
    for e in exps {
        let w = q.powf(e);
        vals = vals.windows(2).map(|p| (p[1] * w - p[0]) / (w - 1.0)).collect();
    }
    Ok(vals[0])
}

/// (z(1), z(∞)) from the Gamma-product formulas.
pub fn vertices(m: &SchwarzMap) -> Result<(ComplexValue, ComplexValue)> {
    let h = m.hyp.params();
    let (a, b, c) = (h.a, h.b, h.c);
    let g = |x: f64| gamma_with(m.precision, Complex64::new(x, 0.0));
    let z1 = g(2.0 - c)? * g(c - a)? * g(c - b)? / (g(c)? * g(1.0 - a)? * g(1.0 - b)?);
    let zinf = Complex64::from_polar(1.0, PI * (1.0 - c)) * g(b)? * g(c - a)? * g(2.0 - c)?
        / (g(c)? * g(b - c + 1.0)? * g(1.0 - a)?);
    Ok((z1, zinf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> SchwarzMap {
        SchwarzMap::new(&TriangleParams::from_ints(a, b, c)).unwrap()
    }

    fn re(x: f64) -> ComplexValue {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn z_on_the_axes() {
        let m = map((1, 2), (1, 3), (1, 7));
        assert_eq!(z_of_s(&m, re(0.0)).unwrap(), re(0.0));
        for s in [0.1, 0.5, 0.9] {
            let z = z_of_s(&m, re(s)).unwrap();
            assert!(z.re > 0.0 && z.im.abs() < 1e-14 * z.re, "{z}");
        }
        let z = z_of_s(&m, re(-0.3)).unwrap();
        assert!((z.arg() - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn derivative_and_wronskian() {
        let m = map((1, 2), (1, 3), (1, 7));
        let h = 1e-5;
        let s = re(0.4);
        let fd = (z_of_s(&m, s + h).unwrap() - z_of_s(&m, s - h).unwrap()) / (2.0 * h);
        let zp = z_prime_of_s(&m, s).unwrap();
        assert!((fd - zp).norm() < 1e-7 * zp.norm());

        let s = re(0.25);
        let w = m.chi1(s).unwrap() * m.chi2_prime(s).unwrap()
            - m.chi2(s).unwrap() * m.chi1_prime(s).unwrap();
        assert!((w - m.wronskian(s)).norm() < 1e-9 * w.norm(), "{w} {}", m.wronskian(s));
        let s = Complex64::new(0.3, 0.2);
        assert!((m.wronskian(s) - m.w(s)).norm() < 1e-13);
    }

    #[test]
    fn leading_order_at_zero() {
        let m = map((1, 3), (1, 3), (2, 7));
        let a = 1.0 / 3.0;
        for s in [1e-2, 1e-4, 1e-6] {
            let z = z_of_s(&m, re(s)).unwrap() * s.powf(-a);
            let zp = z_prime_of_s(&m, re(s)).unwrap() * s.powf(1.0 - a);
            assert!((z.norm() - 1.0).abs() < 0.1, "{z}");
            assert!((zp.norm() - a).abs() < 0.1, "{zp}");
        }
    }

    #[test]
    fn vertex_values() {
        let m = map((1, 2), (1, 3), (1, 7));
        let (z1, zinf) = vertices(&m).unwrap();
        assert!((z1.re - 2.08360940783940906616).abs() < 1e-12);
        let lim = vertex_limit_z1(&m).unwrap();
        assert!((lim - z1).norm() < 1e-6, "{lim} {z1}");
        // plain evaluation only gets within u^β
        let near = z_of_s(&m, re(1.0 - 1e-9)).unwrap();
        assert!((near - z1).norm() < 1e-2);
        assert!((zinf.arg() - PI / 2.0).abs() < 1e-12);
        assert!(z1.norm() < barrier_radius(m.triangle()).unwrap());
    }

    #[test]
    fn monotone_on_unit_interval() {
        let m = map((1, 2), (1, 3), (1, 7));
        let (z1, _) = vertices(&m).unwrap();
        let mut last = 0.0;
        for j in 1..50 {
            let s = re(j as f64 / 50.0);
            let z = z_of_s(&m, s).unwrap().re;
            let zp = z_prime_of_s(&m, s).unwrap();
            assert!(z > last && z < z1.re);
            assert!(zp.re > 0.0 && zp.im.abs() < 1e-12 * zp.re);
            last = z;
        }
    }

    #[test]
    fn mobius_shift() {
        // (χ₁, χ₂ + λχ₁) moves z by λ and keeps z'
        let m = map((1, 3), (1, 3), (2, 7));
        let lam = 0.1;
        let s = Complex64::new(0.35, 0.1);
        let (c1, c2) = (m.chi1(s).unwrap(), m.chi2(s).unwrap());
        let shifted = (c2 + lam * c1) / c1;
        assert!((shifted - z_of_s(&m, s).unwrap() - lam).norm() < 1e-14);
        let (d1, d2) = (m.chi1_prime(s).unwrap(), m.chi2_prime(s).unwrap());
        let wr = c1 * (d2 + lam * d1) - (c2 + lam * c1) * d1;
        let zp = wr / (c1 * c1);
        assert!((zp - z_prime_of_s(&m, s).unwrap()).norm() < 1e-10 * zp.norm());
    }

    #[test]
    fn extended_precision_agrees() {
        let t = TriangleParams::from_ints((1, 2), (1, 3), (1, 7));
        let m = SchwarzMap::new(&t).unwrap();
        let mx = m.clone().with_precision(Precision::Extended { digits: 30 });
        for s in [re(0.2), Complex64::new(-0.3, 0.1), re(0.7)] {
            let a = z_of_s(&m, s).unwrap();
            let b = z_of_s(&mx, s).unwrap();
            assert!((a - b).norm() < 1e-12 * b.norm(), "{s}: {a} {b}");
        }
        let (z1, _) = vertices(&mx).unwrap();
        assert!((z1.re - 2.08360940783940906616).abs() < 1e-14);
    }
}
