use super::{Jet, JET};
use crate::algebra::RatFn;
use crate::classifier::{abc_from_params, TriangleParams, WeightParams};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

type Q = BigRational;
type R = RatFn<Q>;

fn q(p: i64, d: i64) -> Q {
    crate::algebra::rat(p, d)
}

/// η(s), V₂, V₃, V₄ evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureFns {
    pub eta_s: Complex64,
    #[serde(rename = "V2")]
    pub v2: Complex64,
    #[serde(rename = "V3")]
    pub v3: Complex64,
    #[serde(rename = "V4")]
    pub v4: Complex64,
}

/// The curvature tower as exact rational functions of s.
///
/// V₂ comes from ½V − η' + ½η², not from the A, B, C closed form, so that
/// [`CurvatureRational::v2_closed`] is an independent check.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureRational {
    pub v: R,
    pub eta: R,
    pub v2: R,
    pub v3: R,
    pub v4: R,
    abc: [Q; 3],
}

fn inv_s() -> R {
    R::one().div(&R::x())
}

fn inv_s1() -> R {
    R::one().div(&R::x().sub(&R::one()))
}

impl CurvatureRational {
    pub fn new(t: &TriangleParams, w: &WeightParams) -> Self {
        let one = Q::one();
        let sq = |x: &Q| x * x;
        let (a2, b2, c2) = (sq(&t.alpha), sq(&t.beta), sq(&t.gamma));
        let (is, is1) = (inv_s(), inv_s1());
        let v = is
            .pow(2)
            .scale(&(&one - &a2))
            .add(&is1.pow(2).scale(&(&one - &b2)))
            .add(&is.mul(&is1).scale(&(&a2 + &b2 - &c2 - &one)));
        let eta = is
            .scale(&(&w.alpha1 - &one))
            .add(&is1.scale(&(&w.beta1 - &one)));
        let half = q(1, 2);
        let v2 = v
            .scale(&half)
            .sub(&eta.deriv())
            .add(&eta.mul(&eta).scale(&half));
        let v3 = v2.deriv().sub(&eta.mul(&v2).scale(&q(2, 1)));
        let v4 = v3.deriv().sub(&eta.mul(&v3).scale(&q(3, 1)));
        let abc = abc_from_params(t, w);
        CurvatureRational {
            v,
            eta,
            v2,
            v3,
            v4,
            abc: [abc.a, abc.b, abc.c],
        }
    }

    /// ½[A/s² + B/(s−1)² + C/(s(s−1))].
    pub fn v2_closed(&self) -> R {
        let (is, is1) = (inv_s(), inv_s1());
        let [a, b, c] = &self.abc;
        is.pow(2)
            .scale(a)
            .add(&is1.pow(2).scale(b))
            .add(&is.mul(&is1).scale(c))
            .scale(&q(1, 2))
    }

    /// V₄ − J·V₂²; the zero function exactly when J is right for the row.
    pub fn veq_defect(&self, j: &Q) -> R {
        self.v4.sub(&self.v2.mul(&self.v2).scale(j))
    }

    /// (η, V₂, V₃, V₄) at a rational point; `None` at s ∈ {0, 1}.
    pub fn eval_exact(&self, s: &Q) -> Option<[Q; 4]> {
        if s.is_zero() || s.is_one() {
            return None;
        }
        Some([
            self.eta.eval(s)?,
            self.v2.eval(s)?,
            self.v3.eval(s)?,
            self.v4.eval(s)?,
        ])
    }

    pub fn eval(&self, s: Complex64) -> CurvatureFns {
        CurvatureFns {
            eta_s: self.eta.eval_complex(s),
            v2: self.v2.eval_complex(s),
            v3: self.v3.eval_complex(s),
            v4: self.v4.eval_complex(s),
        }
    }
}

/// Taylor jet of a rational function about s.
pub(super) fn ratfn_jet(r: &R, s: Complex64) -> Jet {
    let e = Jet::new(vec![s, Complex64::one()], JET);
    let horner = |p: &crate::algebra::Poly<Q>| {
        let mut acc = Jet::constant(Complex64::zero(), JET);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&e).add(&Jet::constant(super::cf(c), JET));
        }
        acc
    };
    horner(r.num()).mul(&horner(r.den()).inv())
}
