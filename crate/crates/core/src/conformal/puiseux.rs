use super::{f, z_of_s, ConformalError, Result, SchwarzMap};
use crate::algebra::PowerSeries;
use crate::classifier::TriangleParams;
use crate::specfun::{cpow, ComplexValue, HypTriple};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type QS = PowerSeries<BigRational>;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// Maclaurin series of ₂F₁(a, b; c; s) with `len` exact coefficients.
pub fn hyp_series(h: &HypTriple, len: usize) -> QS {
    let mut c = Vec::with_capacity(len);
    let mut t = BigRational::one();
    for j in 0..len {
        c.push(t.clone());
        let jq = q(j as i64, 1);
        t = t * (h.a() + &jq) * (h.b() + &jq) / ((h.c() + &jq) * (&jq + q(1, 1)));
    }
    QS::new(c, len)
}

/// Local inverse of z(s) at the vertex z(0) = 0:
/// s(z) = T(1 + b₁T + b₂T² + …) with T = z^{1/α}.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries {
    /// 1/α.
    exponent: BigRational,
    /// s as a series in T, coefficients of T⁰ … T^{order+1}.
    s: QS,
    order: usize,
}

impl PuiseuxSeries {
    /// n = 1/α when it is an integer.
    pub fn n(&self) -> Option<i64> {
        self.exponent
            .is_integer()
            .then(|| self.exponent.to_integer().to_i64())
            .flatten()
    }

    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// b₁ … b_order, exact.
    pub fn coeffs_exact(&self) -> &[BigRational] {
        &self.s.coeffs()[2..]
    }

    pub fn coeffs(&self) -> Vec<ComplexValue> {
        self.coeffs_exact()
            .iter()
            .map(|b| Complex64::new(f(b), 0.0))
            .collect()
    }

    /// s(T) as a power series in T = z^{1/α}.
    pub fn in_t(&self) -> &QS {
        &self.s
    }

    pub fn eval(&self, z: ComplexValue) -> ComplexValue {
        let t = cpow(z, f(&self.exponent));
        self.s.eval_complex(t)
    }

    /// Coefficients of n²T²{s;T} + ½(1-n²) + ½n²·s²V(s)·(T s_T/s)², which is
    /// z² times {s;z} + ½V(s)s'(z)² after T = zⁿ. All vanish when s(z)
    /// inverts the triangle map. Valid through T^order.
    pub fn schwarzian_residual(&self, t: &TriangleParams) -> Vec<BigRational> {
        let n = &self.exponent;
        let len = self.order + 1;
        let s = &self.s;
        let s1 = s.deriv();
        let s2 = s1.deriv();
        let s3 = s2.deriv();
        let l = len.saturating_sub(2).max(1);
        let inv1 = s1.truncate(l).inv();
        let a = s3.truncate(l).mul(&inv1);
        let b = s2.truncate(l).mul(&inv1);
        let schw = a.sub(&b.mul(&b).scale(&q(3, 2)));
        let t2_schw = shift(&schw, 2, len);

        // s²V(s) = (1-α²) + (1-β²)(s/(1-s))² - (α²+β²-γ²-1)·s/(1-s)
        let (al, be, ga) = (&t.alpha, &t.beta, &t.gamma);
        let one = BigRational::one();
        let kab = al * al + be * be - ga * ga - &one;
        let g = QS::from_fn(len, |j| {
            let mut v = BigRational::zero();
            if j == 0 {
                v += &one - al * al;
            }
            if j >= 2 {
                v += (&one - be * be) * q(j as i64 - 1, 1);
            }
            if j >= 1 {
                v -= &kab;
            }
            v
        });
        let gs = g.compose(&s.truncate(len));
        // T s_T / s = s_T / (s/T)
        let u = QS::new(s.coeffs()[1..].to_vec(), len);
        let ratio = s1.truncate(len).mul(&u.inv());
        let n2 = n * n;
        let e = t2_schw
            .scale(&n2)
            .add(&gs.mul(&ratio).mul(&ratio).scale(&(&n2 * q(1, 2))));
        let mut c = e.coeffs().to_vec();
        c[0] += (&one - &n2) * q(1, 2);
        c.truncate(len);
        c
    }

    /// Coefficients of z^{1/α}(s(T)) - T, which vanish by construction.
    pub fn round_trip_residual(&self, m: &SchwarzMap) -> Vec<BigRational> {
        let phi = phi_series(m, self.s.order(), &self.exponent);
        let back = phi.compose(&self.s);
        let mut c = back.coeffs().to_vec();
        c[1] -= BigRational::one();
        c
    }

    /// max |z(s(z)) - z| over the given sample points.
    pub fn numeric_round_trip(&self, m: &SchwarzMap, zs: &[ComplexValue]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in zs {
            let back = z_of_s(m, self.eval(z))?;
            worst = worst.max((back - z).norm());
        }
        Ok(worst)
    }
}

fn shift(x: &QS, by: usize, len: usize) -> QS {
    let mut c = vec![BigRational::zero(); by];
    c.extend_from_slice(x.coeffs());
    QS::new(c, len.min(x.order() + by))
}

/// φ(s) = s·ψ(s)^{1/α} with z(s) = s^α ψ(s), so that z^{1/α} = φ(s).
fn phi_series(m: &SchwarzMap, len: usize, e: &BigRational) -> QS {
    let f1 = hyp_series(m.hyp(), len);
    let f2 = hyp_series(m.hyp2(), len);
    let psi = f2.mul(&f1.inv());
    let p = psi.pow_rational(e);
    let mut c = vec![BigRational::zero()];
    c.extend_from_slice(p.coeffs());
    QS::new(c, len)
}

/// s(z) = zⁿ(1 + b₁zⁿ + … + b_order z^{n·order}) for α = 1/n.
pub fn invert_to_puiseux(m: &SchwarzMap, order: usize) -> Result<PuiseuxSeries> {
    let e = BigRational::one() / &m.triangle().alpha;
    if !e.is_integer() || e < q(2, 1) {
        return Err(ConformalError::NonIntegerExponent(e.to_string()));
    }
    invert_to_puiseux_rational(m, order)
}

/// Same inversion for any rational α > 0, in T = z^{1/α}.
pub fn invert_to_puiseux_rational(m: &SchwarzMap, order: usize) -> Result<PuiseuxSeries> {
    let order = order.max(1);
    let e = BigRational::one() / &m.triangle().alpha;
    let len = order + 2;
    let s = phi_series(m, len, &e).reversion();
    Ok(PuiseuxSeries { exponent: e, s, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> SchwarzMap {
        SchwarzMap::new(&TriangleParams::from_ints(a, b, c)).unwrap()
    }

    #[test]
    fn leading_exponents() {
        let p = invert_to_puiseux(&map((1, 2), (1, 3), (1, 7)), 8).unwrap();
        assert_eq!(p.n(), Some(2));
        assert_eq!(p.coeffs().len(), 8);
        let p = invert_to_puiseux(&map((1, 3), (1, 3), (2, 7)), 4).unwrap();
        assert_eq!(p.n(), Some(3));
        assert!(matches!(
            invert_to_puiseux(&map((2, 3), (1, 7), (1, 7)), 4),
            Err(ConformalError::NonIntegerExponent(_))
        ));
        assert!(invert_to_puiseux_rational(&map((2, 3), (1, 7), (1, 7)), 4).is_ok());
    }

    #[test]
    fn first_coefficients() {
        // independent symbolic inversion of z² = s·ψ(s)²
        let p = invert_to_puiseux(&map((1, 2), (1, 3), (1, 7)), 2).unwrap();
        assert_eq!(p.coeffs_exact(), &[q(-1163, 2646), q(3331327, 28005264)]);
    }

    #[test]
    fn round_trip() {
        for (a, b, c) in [((1, 2), (1, 3), (1, 7)), ((1, 3), (1, 3), (2, 7))] {
            let m = map(a, b, c);
            let p = invert_to_puiseux(&m, 8).unwrap();
            assert!(p.round_trip_residual(&m).iter().all(|v| v.is_zero()));
            let zs: Vec<_> = [0.05, 0.1]
                .iter()
                .flat_map(|&r| (0..4).map(move |j| Complex64::from_polar(r, 0.2 * j as f64)))
                .collect();
            assert!(p.numeric_round_trip(&m, &zs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn schwarzian_linkage() {
        for (a, b, c) in [((1, 2), (1, 3), (1, 7)), ((1, 3), (1, 3), (2, 7)), ((2, 3), (1, 7), (1, 7))] {
            let t = TriangleParams::from_ints(a, b, c);
            let m = SchwarzMap::new(&t).unwrap();
            let p = invert_to_puiseux_rational(&m, 8).unwrap();
            let res = p.schwarzian_residual(&t);
            assert!(res.len() >= 8);
            assert!(res.iter().all(|v| v.is_zero()), "{res:?}");
            // the wrong γ is detected
            let wrong = TriangleParams::from_ints(a, b, (1, 9));
            assert!(p.schwarzian_residual(&wrong).iter().any(|v| !v.is_zero()));
        }
    }
}
