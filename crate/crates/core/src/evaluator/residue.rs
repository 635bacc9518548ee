//! Residues of y at the vertices z(0) and z(1), as limits of (z − z₀)·y.
//!
//! In t = u^e (u the distance to the vertex in s, e its exponent) the product
//! expands in powers t^{m + n/e}, so generalized Richardson elimination on a
//! geometric t-grid removes the leading terms exactly.

use super::{ChazyInstance, Result};
use crate::conformal;
use crate::specfun::{cpow, hyp2f1_complement_with, ComplexValue};
use num_complex::Complex64;

const TERMS: usize = 9;
const RATIO: f64 = 1.6;
/// |z − z₀| at the first sample, relative to the vertex spacing |z(1)|.
const START: f64 = 0.05;

fn exponents(e: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for m in 0..=TERMS {
        for n in 0..=TERMS {
            let v = m as f64 + n as f64 / e;
            if v > 0.0 {
                out.push(v);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out.truncate(TERMS);
    out
}

fn richardson(mut vals: Vec<ComplexValue>, exps: &[f64]) -> ComplexValue {
    for &e in exps {
        let w = RATIO.powf(e);
        vals = vals.windows(2).map(|p| (p[1] * w - p[0]) / (w - 1.0)).collect();
    }
    vals[0]
}

/// Samples (z − z₀)·y at u = (t₀ RATIO^{−j})^{1/e}. t₀ is found by halving t
/// until |z − z₀| ≤ START·scale; only the grid ratio matters to the
/// elimination, not where it starts.
fn extrapolate(
    e: f64,
    scale: f64,
    sample: impl Fn(f64) -> Result<(ComplexValue, ComplexValue)>,
) -> Result<ComplexValue> {
    let mut t0 = 0.1f64.powf(e);
    for _ in 0..200 {
        if sample(t0.powf(1.0 / e))?.0.norm() <= START * scale {
            break;
        }
        t0 /= 2.0;
    }
    let exps = exponents(e);
    let mut vals = Vec::with_capacity(exps.len() + 1);
    for j in 0..=exps.len() {
        let t = t0 / RATIO.powi(j as i32);
        let (zeta, y) = sample(t.powf(1.0 / e))?;
        vals.push(zeta * y);
    }
    Ok(richardson(vals, &exps))
}

/// lim_{s→1⁻} (z(s) − z(1))·y(s), evaluated through u = 1 − s so that the
/// samples can sit far closer to the vertex than 1 − ε allows.
pub fn residue_at_one(inst: &ChazyInstance) -> Result<ComplexValue> {
    let map = inst.map();
    let [alpha, beta, _] = inst.angles;
    let [a1, b1, _] = inst.weights;
    let lam = inst.z_scale;
    let prec = map.precision();
    let z1 = conformal::vertices(map)?.0 * lam;
    let h1 = map.hyp().shifted(1)?;
    let dfac = {
        let p = map.hyp().params();
        p.a * p.b / p.c
    };
    let sample = |u: f64| -> Result<(ComplexValue, ComplexValue)> {
        let uc = Complex64::new(u, 0.0);
        let chi = hyp2f1_complement_with(prec, map.hyp(), uc)?;
        let chip = hyp2f1_complement_with(prec, &h1, uc)? * dfac;
        let chi2 = hyp2f1_complement_with(prec, map.hyp2(), uc)?;
        let z = cpow(1.0 - uc, alpha) * chi2 / chi * lam;
        let bracket = 2.0 * chi * chip + ((a1 - alpha) / (1.0 - u) - (b1 - beta) / u) * chi * chi;
        let y = 3.0 / (alpha * lam) * (1.0 - u).powf(1.0 - alpha) * u.powf(1.0 - beta) * bracket;
        Ok((z - z1, y))
    };
    extrapolate(beta, z1.norm(), sample)
}

/// lim_{s→0⁺} z(s)·y(s).
pub fn residue_at_zero(inst: &ChazyInstance) -> Result<ComplexValue> {
    let alpha = inst.angles[0];
    let scale = (conformal::vertices(inst.map())?.0 * inst.z_scale).norm();
    let sample = |s: f64| -> Result<(ComplexValue, ComplexValue)> {
        let s = Complex64::new(s, 0.0);
        let z = conformal::z_of_s(inst.map(), s)? * inst.z_scale;
        Ok((z, super::chazy_y(inst, s)?))
    };
    extrapolate(alpha, scale, sample)
}

/// (Res z(0), Res z(1)).
pub fn vertex_residues(inst: &ChazyInstance) -> Result<[ComplexValue; 2]> {
    Ok([residue_at_zero(inst)?, residue_at_one(inst)?])
}
