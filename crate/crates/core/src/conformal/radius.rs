use super::{f, vertices, ConformalError, Result, SchwarzMap};
use crate::classifier::TriangleParams;
use crate::specfun::{extended, gamma, ComplexValue, Precision};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use std::f64::consts::PI;

fn check(t: &TriangleParams) -> Result<()> {
    let pos = t.as_array().iter().all(|v| v.is_positive());
    if !pos || t.sum() >= BigRational::one() {
        return Err(ConformalError::InvalidTriangle(format!(
            "{t}: need positive angles with α+β+γ < 1"
        )));
    }
    Ok(())
}

/// Radius R of the orthogonal circle bounding the tessellated disk, from
/// R² = (Γ(1+α)/Γ(1-α))² Π_{ε=±1} Γ(½(1-α+ε₁β+ε₂γ)) / Γ(½(1+α+ε₁β+ε₂γ)).
pub fn barrier_radius(t: &TriangleParams) -> Result<f64> {
    barrier_radius_with(t, Precision::Double)
}

pub fn barrier_radius_with(t: &TriangleParams, prec: Precision) -> Result<f64> {
    check(t)?;
    let g = |q: BigRational| -> Result<f64> {
        Ok(match extended::digits_for(prec) {
            Some(d) => extended::gamma_rational(&q, d)?,
            None => gamma(Complex64::new(f(&q), 0.0))?.re,
        })
    };
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let (a, b, c) = (&t.alpha, &t.beta, &t.gamma);
    let lead = g(&one + a)? / g(&one - a)?;
    let mut r2 = lead * lead;
    for e1 in [-1, 1] {
        for e2 in [-1, 1] {
            let eb = b * BigRational::from_integer(e1.into());
            let ec = c * BigRational::from_integer(e2.into());
            let num = (&one - a + &eb + &ec) * &half;
            let den = (&one + a + &eb + &ec) * &half;
            r2 *= g(num)? / g(den)?;
        }
    }
    Ok(r2.sqrt())
}

/// The fundamental triangle O = z(0), A = z(1), B = z(∞) and the circles
/// built on it: the arc AB lies on a circle of radius r centred at distance
/// d from O; the barrier circle has radius R with R² = d² - r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleGeometry {
    pub z1: ComplexValue,
    pub zinf: ComplexValue,
    /// |OA|
    pub x: f64,
    pub r: f64,
    pub d: f64,
    #[serde(rename = "R")]
    pub radius: f64,
}

/// R from elementary geometry on the vertex z(1).
pub fn barrier_radius_geometric(t: &TriangleParams) -> Result<TriangleGeometry> {
    check(t)?;
    let m = SchwarzMap::new(t)?;
    let (z1, zinf) = vertices(&m)?;
    let (a, b, c) = (f(&t.alpha), f(&t.beta), f(&t.gamma));
    let x = z1.norm();
    let r = x * (PI * a).sin()
        / (2.0 * (PI * (a + b - c) / 2.0).cos() * (PI * (a + b + c) / 2.0).cos());
    let d = (x * x + r * r + 2.0 * r * x * (PI * b).sin()).sqrt();
    let radius = (d * d - r * r).sqrt();
    Ok(TriangleGeometry { z1, zinf, x, r, d, radius })
}

/// x² sin ½π(1-α+β-γ) sin ½π(1-α+β+γ) / (sin ½π(1-α-β+γ) sin ½π(1-α-β-γ)).
pub fn radius_sq_from_sines(t: &TriangleParams, x: f64) -> f64 {
    let (a, b, c) = (f(&t.alpha), f(&t.beta), f(&t.gamma));
    let s = |v: f64| (PI / 2.0 * v).sin();
    x * x * s(1.0 - a + b - c) * s(1.0 - a + b + c) / (s(1.0 - a - b + c) * s(1.0 - a - b - c))
}
