use super::gamma::{gamma, rgamma};
use super::{
    check_finite, cpow, near_integer, ComplexValue, HypTriple, Result, SpecfunError,
};
use num_complex::Complex64;
use num_traits::{One, Zero};

const TERM_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 10_000;

/// Floating-point hypergeometric parameters. Most callers go through
/// [`HypTriple`]; this form exists for real, non-rational parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        HypParams { a, b, c }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.c.is_finite()) {
            return Err(SpecfunError::InvalidParameters("non-finite".into()));
        }
        if self.c <= 0.0 && near_integer(self.c) {
            return Err(SpecfunError::InvalidParameters(format!(
                "c = {} is a non-positive integer",
                self.c
            )));
        }
        Ok(())
    }

    fn shifted(&self, n: f64) -> Self {
        HypParams::new(self.a + n, self.b + n, self.c + n)
    }

    fn is_polynomial(&self) -> bool {
        let np = |x: f64| x <= 0.0 && near_integer(x);
        np(self.a) || np(self.b)
    }
}

impl From<&HypTriple> for HypParams {
    fn from(p: &HypTriple) -> Self {
        p.params()
    }
}

#[derive(Default)]
struct Kahan {
    sum: ComplexValue,
    comp: ComplexValue,
}

impl Kahan {
    fn add(&mut self, x: ComplexValue) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Direct Maclaurin series. Converges for |s| < 1; used for |s| <= 1/2 and
/// for terminating series.
fn series(h: HypParams, s: ComplexValue) -> Result<ComplexValue> {
    let mut term = Complex64::one();
    let mut acc = Kahan {
        sum: Complex64::one(),
        ..Default::default()
    };
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term = term * s * ((h.a + nf) * (h.b + nf) / ((h.c + nf) * (nf + 1.0)));
        if term.is_zero() {
            return check_finite(acc.sum);
        }
        acc.add(term);
        if term.norm() < TERM_TOL * acc.sum.norm() {
            small += 1;
            if small >= 3 {
                return check_finite(acc.sum);
            }
        } else {
            small = 0;
        }
    }
    Err(SpecfunError::NoConvergence(MAX_TERMS))
}

fn gauss_sum_params(h: HypParams) -> Result<ComplexValue> {
    let d = h.c - h.a - h.b;
    if d <= 0.0 {
        return Err(SpecfunError::CutEvaluation(Complex64::one()));
    }
    let c = |x: f64| Complex64::new(x, 0.0);
    let v = gamma(c(h.c))? * gamma(c(d))? * rgamma(c(h.c - h.a))? * rgamma(c(h.c - h.b))?;
    check_finite(v)
}

/// The two terms of the s -> 1-s connection formula, with the caller
/// supplying u = 1-s and the value of u^(c-a-b).
fn connection_one(h: HypParams, u: ComplexValue, u_pow_d: ComplexValue) -> Result<ComplexValue> {
    let d = h.c - h.a - h.b;
    if near_integer(d) {
        return Err(SpecfunError::DegenerateConnection {
            which: "c-a-b",
            value: d,
        });
    }
    let r = |x: f64| Complex64::new(x, 0.0);
    let gc = gamma(r(h.c))?;
    let k1 = gc * gamma(r(d))? * rgamma(r(h.c - h.a))? * rgamma(r(h.c - h.b))?;
    let k2 = gc * gamma(r(-d))? * rgamma(r(h.a))? * rgamma(r(h.b))?;
    let mut v = Complex64::zero();
    if !k1.is_zero() {
        v += k1 * eval(HypParams::new(h.a, h.b, 1.0 - d), u)?;
    }
    if !k2.is_zero() {
        v += k2 * u_pow_d * eval(HypParams::new(h.c - h.a, h.c - h.b, 1.0 + d), u)?;
    }
    check_finite(v)
}

fn connection_infinity(h: HypParams, s: ComplexValue) -> Result<ComplexValue> {
    let e = h.a - h.b;
    if near_integer(e) {
        return Err(SpecfunError::DegenerateConnection {
            which: "a-b",
            value: e,
        });
    }
    let r = |x: f64| Complex64::new(x, 0.0);
    let gc = gamma(r(h.c))?;
    let inv = 1.0 / s;
    let k1 = gc * gamma(r(-e))? * rgamma(r(h.b))? * rgamma(r(h.c - h.a))?;
    let k2 = gc * gamma(r(e))? * rgamma(r(h.a))? * rgamma(r(h.c - h.b))?;
    let mut v = Complex64::zero();
    if !k1.is_zero() {
        v += k1 * cpow(-s, -h.a) * eval(HypParams::new(h.a, h.a - h.c + 1.0, 1.0 + e), inv)?;
    }
    if !k2.is_zero() {
        v += k2 * cpow(-s, -h.b) * eval(HypParams::new(h.b, h.b - h.c + 1.0, 1.0 - e), inv)?;
    }
    check_finite(v)
}

/// One Taylor step of the hypergeometric ODE from `s0` to `s0 + step`,
/// carrying (F, F'). `step` must stay well inside the disk of convergence
/// (distance to the nearer of 0 and 1).
fn taylor_step(
    h: HypParams,
    s0: ComplexValue,
    f0: ComplexValue,
    f1: ComplexValue,
    step: ComplexValue,
) -> Result<(ComplexValue, ComplexValue)> {
    let p0 = s0 * (s0 - 1.0);
    let p1 = 2.0 * s0 - 1.0;
    let q1 = h.a + h.b + 1.0;
    let q0 = q1 * s0 - h.c;
    let ab = h.a * h.b;
    // g_n = f_n step^n
    let mut g_prev = f0;
    let mut g_cur = f1 * step;
    let mut val = Kahan::default();
    let mut der = Kahan::default();
    val.add(g_prev);
    val.add(g_cur);
    der.add(g_cur);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let g_next = -((p1 * nf + q0) * (nf + 1.0) * g_cur * step
            + (nf * (nf - 1.0) + q1 * nf + ab) * g_prev * step * step)
            / (p0 * (nf + 2.0) * (nf + 1.0));
        val.add(g_next);
        der.add(g_next * (nf + 2.0));
        let scale = val.sum.norm() + der.sum.norm();
        if g_next.norm() <= TERM_TOL * scale {
            small += 1;
            if small >= 3 {
                return Ok((check_finite(val.sum)?, check_finite(der.sum / step)?));
            }
        } else {
            small = 0;
        }
        g_prev = g_cur;
        g_cur = g_next;
    }
    Err(SpecfunError::NoConvergence(MAX_TERMS))
}

/// Analytic continuation along a polygonal path by Taylor steps of the ODE.
/// Covers the annulus where none of the transformed series is fast.
fn continuation(h: HypParams, s: ComplexValue) -> Result<ComplexValue> {
    let dir = s / s.norm();
    let start = dir * 0.45;
    let mut waypoints = Vec::new();
    // keep the path away from the singular point 1
    let to_s = s - start;
    let t = ((Complex64::one() - start) * to_s.conj()).re / to_s.norm_sqr();
    let closest = start + to_s * t.clamp(0.0, 1.0);
    if (closest - 1.0).norm() < 0.4 {
        let side = if s.im >= 0.0 { 1.0 } else { -1.0 };
        waypoints.push(Complex64::new(1.0, 0.6 * side));
    }
    waypoints.push(s);

    let mut p = start;
    let mut f = series(h, p)?;
    let mut fp = series(h.shifted(1.0), p)? * (h.a * h.b / h.c);
    for target in waypoints {
        loop {
            let rem = target - p;
            if rem.norm() == 0.0 {
                break;
            }
            let dist = p.norm().min((p - 1.0).norm());
            let (step, last) = if rem.norm() <= 0.5 * dist {
                (rem, true)
            } else {
                (rem / rem.norm() * (0.5 * dist), false)
            };
            let (nf, nfp) = taylor_step(h, p, f, fp, step)?;
            f = nf;
            fp = nfp;
            p = if last { target } else { p + step };
        }
    }
    check_finite(f)
}

fn eval(h: HypParams, s: ComplexValue) -> Result<ComplexValue> {
    h.validate()?;
    if s.is_zero() {
        return Ok(Complex64::one());
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(SpecfunError::NonFinite);
    }
    if h.is_polynomial() {
        return series(h, s);
    }
    if s.im == 0.0 && s.re >= 1.0 {
        if s.re == 1.0 {
            return gauss_sum_params(h);
        }
        return Err(SpecfunError::CutEvaluation(s));
    }
    let r = s.norm();
    if r <= 0.5 {
        return series(h, s);
    }
    let w = s / (s - 1.0);
    if w.norm() <= 0.5 {
        // Pfaff
        let inner = series(HypParams::new(h.a, h.c - h.b, h.c), w)?;
        return check_finite(cpow(1.0 - s, -h.a) * inner);
    }
    let u = Complex64::one() - s;
    if u.norm() <= 0.5 {
        return match connection_one(h, u, cpow(u, h.c - h.a - h.b)) {
            Err(SpecfunError::DegenerateConnection { .. }) if u.norm() >= 0.1 => {
                continuation(h, s)
            }
            v => v,
        };
    }
    if r >= 2.0 {
        return match connection_infinity(h, s) {
            Err(SpecfunError::DegenerateConnection { .. }) if r <= 10.0 => continuation(h, s),
            v => v,
        };
    }
    continuation(h, s)
}

/// Gauss hypergeometric function ₂F₁(a, b; c; s) on the principal sheet.
///
/// Direct series for |s| <= 1/2, Pfaff where |s/(s-1)| <= 1/2, the 1-s and
/// 1/s connection formulas near 1 and infinity, and Taylor continuation of
/// the ODE in between. Real s > 1 is rejected; see [`hyp2f1_one_sided`].
pub fn hyp2f1(p: &HypTriple, s: ComplexValue) -> Result<ComplexValue> {
    eval(p.params(), s)
}

/// [`hyp2f1`] for arbitrary real parameters.
pub fn hyp2f1_params(h: HypParams, s: ComplexValue) -> Result<ComplexValue> {
    eval(h, s)
}

/// ₂F₁(a, b; c; 1-u) computed from the complement `u`, so that points very
/// close to s = 1 keep full relative accuracy in u^(c-a-b).
pub fn hyp2f1_complement(p: &HypTriple, u: ComplexValue) -> Result<ComplexValue> {
    let h = p.params();
    h.validate()?;
    if u.norm() > 0.5 || h.is_polynomial() {
        return eval(h, Complex64::one() - u);
    }
    if u.is_zero() {
        return gauss_sum_params(h);
    }
    if u.im == 0.0 && u.re < 0.0 {
        return Err(SpecfunError::CutEvaluation(Complex64::one() - u));
    }
    connection_one(h, u, cpow(u, h.c - h.a - h.b))
}

/// Boundary value ₂F₁(a, b; c; x ± i0) for real x > 1.
pub fn hyp2f1_one_sided(p: &HypTriple, x: f64, from_above: bool) -> Result<ComplexValue> {
    let h = p.params();
    h.validate()?;
    if x <= 1.0 {
        return eval(h, Complex64::new(x, 0.0));
    }
    if h.is_polynomial() {
        return series(h, Complex64::new(x, 0.0));
    }
    let d = h.c - h.a - h.b;
    let u = 1.0 - x;
    // s + i0 puts 1 - s just below the negative axis
    let phase = if from_above { -1.0 } else { 1.0 } * std::f64::consts::PI * d;
    let upow = Complex64::from_polar((-u).powf(d), phase);
    connection_one(h, Complex64::new(u, 0.0), upow)
}

/// ₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)), for Re(c-a-b) > 0.
pub fn gauss_sum(p: &HypTriple) -> Result<ComplexValue> {
    let h = p.params();
    h.validate()?;
    gauss_sum_params(h)
}

fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).map(|k| x + k as f64).product()
}

/// d^order/ds^order ₂F₁(a, b; c; s).
///
/// The first derivative is the contiguous shift (ab/c)·₂F₁(a+1, b+1; c+1; s).
/// Higher orders come from the ODE tower
/// s(s-1)F⁽ᵏ⁺²⁾ + [(a+b+2k+1)s - (c+k)]F⁽ᵏ⁺¹⁾ + (a+k)(b+k)F⁽ᵏ⁾ = 0,
/// except next to s = 0 or 1 where that division is ill-conditioned and the
/// contiguous shift is used for every order.
pub fn hyp2f1_deriv(p: &HypTriple, s: ComplexValue, order: u32) -> Result<ComplexValue> {
    let h = p.params();
    deriv_params(h, s, order)
}

fn deriv_params(h: HypParams, s: ComplexValue, order: u32) -> Result<ComplexValue> {
    h.validate()?;
    let shift = |n: u32| -> Result<ComplexValue> {
        let k = pochhammer(h.a, n) * pochhammer(h.b, n) / pochhammer(h.c, n);
        if k == 0.0 {
            return Ok(Complex64::zero());
        }
        Ok(eval(h.shifted(n as f64), s)? * k)
    };
    match order {
        0 => eval(h, s),
        1 => shift(1),
        _ if s.norm() < 0.05 || (s - 1.0).norm() < 0.05 => shift(order),
        _ => {
            let coeffs = taylor_params(h, s, order as usize)?;
            let fact: f64 = (1..=order).map(|k| k as f64).product();
            Ok(coeffs[order as usize] * fact)
        }
    }
}

fn taylor_params(h: HypParams, s: ComplexValue, n: usize) -> Result<Vec<ComplexValue>> {
    let f0 = eval(h, s)?;
    let f1 = if n >= 1 {
        eval(h.shifted(1.0), s)? * (h.a * h.b / h.c)
    } else {
        Complex64::zero()
    };
    let p0 = s * (s - 1.0);
    if p0.is_zero() {
        if s.is_zero() {
            let mut out = Vec::with_capacity(n + 1);
            let mut t = Complex64::one();
            for k in 0..=n {
                out.push(t);
                let kf = k as f64;
                t *= (h.a + kf) * (h.b + kf) / ((h.c + kf) * (kf + 1.0));
            }
            return Ok(out);
        }
        return Err(SpecfunError::CutEvaluation(s));
    }
    let p1 = 2.0 * s - 1.0;
    let q1 = h.a + h.b + 1.0;
    let q0 = q1 * s - h.c;
    let ab = h.a * h.b;
    let mut f = vec![f0, f1];
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let next = -((p1 * kf + q0) * (kf + 1.0) * f[k + 1]
            + (kf * (kf - 1.0) + q1 * kf + ab) * f[k])
            / (p0 * (kf + 2.0) * (kf + 1.0));
        f.push(next);
    }
    f.truncate(n + 1);
    Ok(f)
}

/// Taylor coefficients f₀..fₙ of ₂F₁ about s, i.e. F(s+ε) = Σ fₖ εᵏ, generated
/// from F and F' by the ODE recurrence.
pub fn hyp2f1_taylor(p: &HypTriple, s: ComplexValue, n: usize) -> Result<Vec<ComplexValue>> {
    taylor_params(p.params(), s, n)
}

/// (1-s)^(-a) ₂F₁(a, c-b; c; s/(s-1)).
pub fn pfaff_transform(p: &HypTriple, s: ComplexValue) -> Result<ComplexValue> {
    if s == Complex64::one() {
        return Err(SpecfunError::CutEvaluation(s));
    }
    let q = HypTriple::new(p.a().clone(), p.c() - p.b(), p.c().clone())?;
    let w = s / (s - 1.0);
    let v = cpow(1.0 - s, -super::to_f64(p.a())) * hyp2f1(&q, w)?;
    check_finite(v)
}

/// (1-s)^(c-a-b) ₂F₁(c-a, c-b; c; s).
pub fn euler_transform(p: &HypTriple, s: ComplexValue) -> Result<ComplexValue> {
    let q = HypTriple::new(p.c() - p.a(), p.c() - p.b(), p.c().clone())?;
    let d = super::to_f64(&(p.c() - p.a() - p.b()));
    let inner = hyp2f1(&q, s)?;
    check_finite(cpow(1.0 - s, d) * inner)
}
