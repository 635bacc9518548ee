//! Parametric evaluation of the Chazy XII solution y, the gDH variables, the
//! curvature tower and the triple (P̂, Q̂, R̂), all as functions of s, with
//! residuals of the differential equations they satisfy.
//!
//! z-derivatives are never taken numerically: every quantity is carried as a
//! Taylor jet in s and differentiated with d/dz = s'(z)·d/ds, s'(z) = χ₁²/W.

mod curvature;
mod residue;

pub use curvature::{CurvatureFns, CurvatureRational};
pub use residue::{residue_at_one, residue_at_zero, vertex_residues};

use crate::algebra::PowerSeries;
use crate::classifier::{CaseRow, ClassifierError, TriangleParams, WeightParams};
use crate::conformal::{self, ConformalError, SchwarzMap};
use crate::specfun::{
    self, cpow, hyp2f1_deriv, hyp2f1_taylor, ComplexValue, Precision, SpecfunError,
};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;

pub(crate) type Jet = PowerSeries<Complex64>;
/// Jet length: y''' needs four d/ds applications to σ = s'(z).
pub(crate) const JET: usize = 6;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvaluatorError {
    #[error("vertex singularity at s = {0}")]
    VertexSingularity(ComplexValue),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Conformal(#[from] ConformalError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, EvaluatorError>;

pub(crate) fn cf(q: &BigRational) -> Complex64 {
    Complex64::new(specfun::to_f64(q), 0.0)
}

/// A Table-1 row at a fixed integer k, bound to its Schwarz map.
#[derive(Debug, Clone)]
pub struct ChazyInstance {
    row: CaseRow,
    k: i64,
    map: SchwarzMap,
    chazy_k: BigRational,
    j: BigRational,
    k_value: f64,
    j_value: f64,
    z_scale: f64,
    angles: [f64; 3],
    weights: [f64; 3],
    curvature: CurvatureRational,
}

impl ChazyInstance {
    pub fn new(row: &CaseRow, k: i64) -> Result<Self> {
        let t = row.triangle_at(k)?;
        let chazy_k = row.k_at(k)?;
        let j = row.j_at(k)?;
        let map = SchwarzMap::new(&t)?;
        Ok(Self::build(row.clone(), k, map, &t, &row.weights, chazy_k, j))
    }

    fn build(
        row: CaseRow,
        k: i64,
        map: SchwarzMap,
        t: &TriangleParams,
        w: &WeightParams,
        chazy_k: BigRational,
        j: BigRational,
    ) -> Self {
        let f = specfun::to_f64;
        ChazyInstance {
            k_value: f(&chazy_k),
            j_value: f(&j),
            z_scale: 1.0,
            angles: [f(&t.alpha), f(&t.beta), f(&t.gamma)],
            weights: [f(&w.alpha1), f(&w.beta1), f(&w.gamma1)],
            curvature: CurvatureRational::new(t, w),
            row,
            k,
            map,
            chazy_k,
            j,
        }
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.map = self.map.with_precision(p);
        self
    }

    /// Replace K in [`chazy_residual`] only (sensitivity checks).
    pub fn with_chazy_k(mut self, k: f64) -> Self {
        self.k_value = k;
        self
    }

    /// Replace J in the third equation of [`dhpqr_residual`] only.
    pub fn with_j(mut self, j: f64) -> Self {
        self.j_value = j;
        self
    }

    /// Rescale z → λz by normalising the Wronskian to λW.
    pub fn with_z_scale(mut self, lambda: f64) -> Self {
        self.z_scale = lambda;
        self
    }

    pub fn row(&self) -> &CaseRow {
        &self.row
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn map(&self) -> &SchwarzMap {
        &self.map
    }

    pub fn triangle(&self) -> &TriangleParams {
        self.map.triangle()
    }

    pub fn chazy_k(&self) -> &BigRational {
        &self.chazy_k
    }

    pub fn j(&self) -> &BigRational {
        &self.j
    }

    pub fn z_scale(&self) -> f64 {
        self.z_scale
    }

    pub fn curvature_rational(&self) -> &CurvatureRational {
        &self.curvature
    }

    /// λ·W(s), W = α s^{α−1}(1−s)^{β−1}.
    fn w_of(&self, s: Complex64) -> Complex64 {
        self.map.w(s) * self.z_scale
    }
}

/// χ₁, its s-derivatives, z and s'(z) at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointState {
    pub s: ComplexValue,
    pub chi1: ComplexValue,
    pub chi1p: ComplexValue,
    pub chi1pp: ComplexValue,
    pub chi1ppp: ComplexValue,
    pub z: ComplexValue,
    pub sprime_z: ComplexValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RamanujanTriple {
    #[serde(rename = "Phat")]
    pub p: ComplexValue,
    #[serde(rename = "Qhat")]
    pub q: ComplexValue,
    #[serde(rename = "Rhat")]
    pub r: ComplexValue,
}

/// An absolute defect with the scale it is judged against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub defect: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        self.defect / self.scale
    }

    pub fn within(&self, tol: f64) -> bool {
        self.defect <= tol * self.scale
    }
}

fn check_vertex(s: Complex64) -> Result<()> {
    if s.is_zero() || s == Complex64::one() {
        return Err(EvaluatorError::VertexSingularity(s));
    }
    Ok(())
}

/// Taylor coefficients of χ₁ about s. The ODE recurrence divides by s(s−1),
/// so close to the vertices every order comes from contiguous shifts.
fn chi_jet(inst: &ChazyInstance, s: Complex64) -> Result<Jet> {
    let h = inst.map.hyp();
    let c = if s.norm() < 0.05 || (s - 1.0).norm() < 0.05 {
        let mut fact = 1.0;
        let mut out = Vec::with_capacity(JET);
        for n in 0..JET {
            if n > 0 {
                fact *= n as f64;
            }
            out.push(hyp2f1_deriv(h, s, n as u32)? / fact);
        }
        out
    } else {
        hyp2f1_taylor(h, s, JET - 1)?
    };
    let mut c = c;
    c[0] = inst.map.chi1(s)?;
    Ok(Jet::new(c, JET))
}

/// (base + sign·ε)^p on the principal branch.
fn power_jet(base: Complex64, sign: f64, p: f64) -> Jet {
    let unit = Jet::new(vec![Complex64::one(), sign / base], JET);
    unit.pow_rational(&Complex64::new(p, 0.0)).scale(&cpow(base, p))
}

struct Jets {
    chi: Jet,
    w: Jet,
    sigma: Jet,
    y: Jet,
    gdh: [Jet; 3],
}

impl Jets {
    fn new(inst: &ChazyInstance, s: Complex64) -> Result<Self> {
        check_vertex(s)?;
        let [alpha, beta, _] = inst.angles;
        let [a1, b1, _] = inst.weights;
        let chi = chi_jet(inst, s)?;
        if chi.coeff(0).norm() == 0.0 {
            return Err(ConformalError::DenominatorZero(s).into());
        }
        let w = power_jet(s, 1.0, alpha - 1.0)
            .mul(&power_jet(1.0 - s, -1.0, beta - 1.0))
            .scale(&Complex64::new(alpha * inst.z_scale, 0.0));
        let sigma = chi.mul(&chi).mul(&w.inv());
        let inv_s = Jet::new(vec![s, Complex64::one()], JET).inv();
        let inv_s1 = Jet::new(vec![s - 1.0, Complex64::one()], JET).inv();
        let ds = sigma.deriv();
        let sig_s = sigma.mul(&inv_s);
        let sig_s1 = sigma.mul(&inv_s1);
        let c = |v: f64| Complex64::new(v, 0.0);
        let y = ds
            .sub(&sig_s.scale(&c(1.0 - a1)))
            .sub(&sig_s1.scale(&c(1.0 - b1)))
            .scale(&c(3.0));
        let half = c(0.5);
        let gdh = [
            ds.sub(&sig_s).scale(&half),
            ds.sub(&sig_s1).scale(&half),
            ds.sub(&sig_s).sub(&sig_s1).scale(&half),
        ];
        Ok(Jets { chi, w, sigma, y, gdh })
    }

    /// d/dz = σ·d/ds.
    fn dz(&self, f: &Jet) -> Jet {
        self.sigma.mul(&f.deriv())
    }

    fn at(f: &Jet) -> Complex64 {
        f.coeff(0)
    }
}

pub fn point_state(inst: &ChazyInstance, s: ComplexValue) -> Result<PointState> {
    let chi = chi_jet(inst, s)?;
    let z = conformal::z_of_s(&inst.map, s)? * inst.z_scale;
    let chi1 = chi.coeff(0);
    let sprime_z = if s.is_zero() {
        // s ~ z^{1/α}
        if inst.angles[0] < 1.0 {
            Complex64::zero()
        } else {
            Complex64::one() / inst.w_of(s)
        }
    } else {
        chi1 * chi1 / inst.w_of(s)
    };
    Ok(PointState {
        s,
        chi1,
        chi1p: chi.coeff(1),
        chi1pp: chi.coeff(2) * 2.0,
        chi1ppp: chi.coeff(3) * 6.0,
        z,
        sprime_z,
    })
}

/// (w₁, w₂, w₃) of the gDH system.
pub fn gdh_w(inst: &ChazyInstance, s: ComplexValue) -> Result<[ComplexValue; 3]> {
    let j = Jets::new(inst, s)?;
    Ok(j.gdh.each_ref().map(Jets::at))
}

/// s''(z)/s'(z), the s-derivative of s'(z).
pub fn sprime_log_derivative(inst: &ChazyInstance, s: ComplexValue) -> Result<ComplexValue> {
    let j = Jets::new(inst, s)?;
    Ok(j.sigma.coeff(1))
}

/// y from χ₁ and χ₁' in closed form:
/// (3/α) s^{1−α}(1−s)^{1−β} (2χ₁χ₁' + [(α₁−α)/s + (β₁−β)/(s−1)] χ₁²).
pub fn chazy_y(inst: &ChazyInstance, s: ComplexValue) -> Result<ComplexValue> {
    check_vertex(s)?;
    let [alpha, beta, _] = inst.angles;
    let [a1, b1, _] = inst.weights;
    let chi = inst.map.chi1(s)?;
    let chip = inst.map.chi1_prime(s)?;
    // s^{1−α} distributed over the bracket: 1/s overflows long before
    // s^{−α} does, and the residue limits sample s down to ~1e-250.
    let pa = cpow(s, 1.0 - alpha);
    let bracket = 2.0 * chi * chip * pa
        + ((a1 - alpha) * cpow(s, -alpha) + (b1 - beta) * pa / (s - 1.0)) * chi * chi;
    Ok(3.0 / (alpha * inst.z_scale) * cpow(1.0 - s, 1.0 - beta) * bracket)
}

/// y = a₁w₁ + a₂w₂ + a₃w₃.
pub fn chazy_y_gdh(inst: &ChazyInstance, s: ComplexValue) -> Result<ComplexValue> {
    let w = gdh_w(inst, s)?;
    let a = inst.row.weights.gdh_coefficients();
    Ok(w.iter().zip(&a).map(|(w, a)| w * cf(a)).sum())
}

/// φ(s) = s'(z) / (s^{1−α₁}(1−s)^{1−β₁}). The (1−s) branch differs from
/// (s−1) by a constant, which the logarithmic derivative ignores.
fn phi(inst: &ChazyInstance, s: Complex64) -> Result<Complex64> {
    let [a1, b1, _] = inst.weights;
    let chi = inst.map.chi1(s)?;
    Ok(chi * chi / inst.w_of(s) / (cpow(s, 1.0 - a1) * cpow(1.0 - s, 1.0 - b1)))
}

/// y = 3(log φ)'(z), with dφ/ds from a Cauchy integral on a circle of half
/// the distance to the nearest vertex. A cross-check oracle only.
pub fn chazy_y_phi(inst: &ChazyInstance, s: ComplexValue) -> Result<ComplexValue> {
    check_vertex(s)?;
    const N: usize = 64;
    let r = 0.5 * s.norm().min((1.0 - s).norm());
    let mut acc = Complex64::zero();
    for n in 0..N {
        let e = Complex64::from_polar(1.0, 2.0 * PI * n as f64 / N as f64);
        acc += phi(inst, s + r * e)? / e;
    }
    let dphi = acc / (N as f64 * r);
    let chi = inst.map.chi1(s)?;
    let sprime = chi * chi / inst.w_of(s);
    Ok(3.0 * sprime * dphi / phi(inst, s)?)
}

/// (y, y', y'', y''') in z.
pub fn chazy_derivatives(inst: &ChazyInstance, s: ComplexValue) -> Result<[ComplexValue; 4]> {
    let j = Jets::new(inst, s)?;
    let y1 = j.dz(&j.y);
    let y2 = j.dz(&y1);
    let y3 = j.dz(&y2);
    Ok([&j.y, &y1, &y2, &y3].map(Jets::at))
}

pub fn curvature(inst: &ChazyInstance, s: ComplexValue) -> Result<CurvatureFns> {
    check_vertex(s)?;
    Ok(inst.curvature.eval(s))
}

fn triple_jets(inst: &ChazyInstance, j: &Jets, s: Complex64) -> [Jet; 3] {
    let c = |v: Complex64| Jet::constant(v, JET);
    let winv = j.w.inv();
    let chi2 = j.chi.mul(&j.chi);
    let chi4 = chi2.mul(&chi2);
    let chi6 = chi4.mul(&chi2);
    let v2 = curvature::ratfn_jet(&inst.curvature.v2, s);
    let v3 = curvature::ratfn_jet(&inst.curvature.v3, s);
    let p = j.y.scale(&(1.0 / (PI * I)));
    let q = winv
        .mul(&winv)
        .mul(&v2)
        .mul(&chi4)
        .mul(&c(Complex64::new(-18.0 / (PI * PI), 0.0)));
    let r = winv
        .mul(&winv)
        .mul(&winv)
        .mul(&v3)
        .mul(&chi6)
        .mul(&c((3.0 * I / PI).powu(3)));
    [p, q, r]
}

/// P̂ = y/(πi), Q̂ = −2(3/(πW))²V₂χ₁⁴, R̂ = (3i/(πW))³V₃χ₁⁶.
pub fn ramanujan_triple(inst: &ChazyInstance, s: ComplexValue) -> Result<RamanujanTriple> {
    let y = chazy_y(inst, s)?;
    let chi = inst.map.chi1(s)?;
    let w = inst.w_of(s);
    let cv = inst.curvature.eval(s);
    let chi2 = chi * chi;
    Ok(RamanujanTriple {
        p: y / (PI * I),
        q: -2.0 * (3.0 / (PI * w)).powu(2) * cv.v2 * chi2 * chi2,
        r: (3.0 * I / (PI * w)).powu(3) * cv.v3 * chi2 * chi2 * chi2,
    })
}

/// |y''' − 2yy'' + 3y'² − K(6y'−y²)²| against 1 + |y|⁴.
pub fn chazy_residual(inst: &ChazyInstance, s: ComplexValue) -> Result<Residual> {
    let [y, y1, y2, y3] = chazy_derivatives(inst, s)?;
    let t = 6.0 * y1 - y * y;
    let defect = (y3 - 2.0 * y * y2 + 3.0 * y1 * y1 - inst.k_value * t * t).norm();
    Ok(Residual {
        defect,
        scale: 1.0 + y.norm().powi(4),
    })
}

/// max |wᵢ' − RHSᵢ| against 1 + max(|y|, |wᵢ|)².
pub fn gdh_residual(inst: &ChazyInstance, s: ComplexValue) -> Result<Residual> {
    gdh_residual_with(inst, s, inst.angles)
}

/// [`gdh_residual`] with the angles entering τ² replaced.
pub fn gdh_residual_with(
    inst: &ChazyInstance,
    s: ComplexValue,
    angles: [f64; 3],
) -> Result<Residual> {
    gdh_residual_signed(inst, s, angles, -1.0)
}

/// [`gdh_residual`] with τ² taken with the opposite overall sign. A negative
/// control: it does not vanish on any row.
pub fn gdh_residual_flipped_tau(inst: &ChazyInstance, s: ComplexValue) -> Result<Residual> {
    gdh_residual_signed(inst, s, inst.angles, 1.0)
}

fn gdh_residual_signed(
    inst: &ChazyInstance,
    s: ComplexValue,
    angles: [f64; 3],
    sign: f64,
) -> Result<Residual> {
    let j = Jets::new(inst, s)?;
    let [w1, w2, w3] = j.gdh.each_ref().map(Jets::at);
    let [a, b, c] = angles;
    // The overall sign is the one for which the system reduces to
    // {s; z} + ½V(s)s'(z)² = 0 with the wᵢ above.
    let tau2 = sign
        * (a * a * (w1 - w2) * (w2 - w3)
        + b * b * (w2 - w1) * (w1 - w3)
        + c * c * (w3 - w1) * (w2 - w3));
    let w = [w1, w2, w3];
    let mut defect: f64 = 0.0;
    for i in 0..3 {
        let (wi, wj, wk) = (w[i], w[(i + 1) % 3], w[(i + 2) % 3]);
        let lhs = Jets::at(&j.dz(&j.gdh[i]));
        let rhs = -wj * wk + wi * (wj + wk) + tau2;
        defect = defect.max((lhs - rhs).norm());
    }
    let big = w.iter().map(|v| v.norm()).fold(Jets::at(&j.y).norm(), f64::max);
    Ok(Residual {
        defect,
        scale: 1.0 + big * big,
    })
}

/// The three equations
/// P̂'/(2πi) = (P̂²−Q̂)/12, Q̂'/(2πi) = (P̂Q̂−R̂)/3, R̂'/(2πi) = P̂R̂/2 − (J/24)Q̂²,
/// each as (|lhs − rhs|, sum of the moduli of its terms).
pub fn dhpqr_defects(inst: &ChazyInstance, s: ComplexValue) -> Result<[Residual; 3]> {
    let j = Jets::new(inst, s)?;
    let jets = triple_jets(inst, &j, s);
    let [p, q, r] = jets.each_ref().map(Jets::at);
    let [dp, dq, dr] = jets.each_ref().map(|f| Jets::at(&j.dz(f)) / (2.0 * PI * I));
    let eq = |terms: &[Complex64]| Residual {
        defect: terms.iter().sum::<Complex64>().norm(),
        scale: terms.iter().map(|t| t.norm()).sum::<f64>().max(f64::MIN_POSITIVE),
    };
    Ok([
        eq(&[dp, -p * p / 12.0, q / 12.0]),
        eq(&[dq, -p * q / 3.0, r / 3.0]),
        eq(&[dr, -p * r / 2.0, inst.j_value / 24.0 * q * q]),
    ])
}

/// The worst of [`dhpqr_defects`] relative to its own terms. Each equation is
/// homogeneous under z → λz, so this measure does not depend on how z is
/// normalised, unlike an absolute defect.
pub fn dhpqr_residual(inst: &ChazyInstance, s: ComplexValue) -> Result<Residual> {
    let d = dhpqr_defects(inst, s)?;
    Ok(d.into_iter()
        .max_by(|a, b| a.relative().total_cmp(&b.relative()))
        .expect("three equations"))
}
