use super::{apply, to_c, Mobius, RationalMap, MapsError, Result, VERTEX_NAMES};
use crate::algebra::{rat, Poly, PowerSeries, QOmega, RatFn};
use crate::classifier::{table1_row, CaseRow, TriangleParams};
use crate::conformal::{invert_to_puiseux_rational, SchwarzMap};
use crate::specfun::{cpow, to_f64, ComplexValue};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

type QS = PowerSeries<QOmega>;

/// Outcome of the check φ̃(θ(s))·θ'(s) = ε·φ(s).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferentialReport {
    pub map: String,
    pub epsilon_re: f64,
    pub epsilon_im: f64,
    /// max over the grid of |εᴺ(s)/εᴺ(s₀) − 1|/N
    pub max_defect: f64,
    pub checks_passed: bool,
    /// N, the common denominator of the four weights.
    pub power: u32,
    /// εᴺ exactly, when the logarithmic derivative of ε vanishes identically.
    #[serde(serialize_with = "ser_opt_qomega")]
    pub epsilon_power: Option<QOmega>,
}

/// Outcome of the formal-series check σ∘θ∘s(z) = s̃(ε̂z).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub map: String,
    pub k: i64,
    /// Vertex substitution applied to the target so that θ(0) becomes 0.
    pub target_substitution: [i64; 4],
    /// Local degree of θ at 0.
    pub r: u32,
    /// Leading coefficient: σ∘θ∘s = c·T^r + …
    #[serde(serialize_with = "ser_qomega")]
    pub c: QOmega,
    pub epsilon_re: f64,
    pub epsilon_im: f64,
    /// Largest coefficient mismatch (zero when the match is exact).
    pub max_defect: f64,
    pub checks_passed: bool,
}

impl SeriesReport {
    pub fn epsilon(&self) -> ComplexValue {
        Complex64::new(self.epsilon_re, self.epsilon_im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamificationReport {
    pub map: String,
    pub k: i64,
    /// θ(0), θ(1), θ(∞) as vertex names.
    pub vertex_images: Vec<Option<String>>,
    pub checks_passed: bool,
    pub issues: Vec<String>,
}

fn ser_qomega<S: serde::Serializer>(q: &QOmega, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_qomega<S: serde::Serializer>(
    q: &Option<QOmega>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

fn qw(q: &BigRational) -> QOmega {
    QOmega::rational(q.clone())
}

fn qpow(x: &QOmega, n: i64) -> QOmega {
    let mut acc = QOmega::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc * x.clone();
    }
    if n < 0 {
        QOmega::one() / acc
    } else {
        acc
    }
}

fn as_int(q: &BigRational) -> i64 {
    q.to_integer().to_i64().expect("small integer")
}

/// (α₁, β₁) of the source and target rows.
fn weight_pairs(source: &CaseRow, target: &CaseRow) -> [BigRational; 4] {
    [
        source.weights.alpha1.clone(),
        source.weights.beta1.clone(),
        target.weights.alpha1.clone(),
        target.weights.beta1.clone(),
    ]
}

/// d/ds log ε, as an element of ℚ(ω)(s).
fn log_derivative(map: &RationalMap, w: &[BigRational; 4]) -> RatFn<QOmega> {
    let one = BigRational::one();
    let th = map.theta();
    let d1 = th.deriv();
    let d2 = d1.deriv();
    let s = RatFn::<QOmega>::x();
    let th1 = th.sub(&RatFn::one());
    let s1 = s.sub(&RatFn::one());
    d1.div(th)
        .scale(&qw(&(&w[2] - &one)))
        .add(&d1.div(&th1).scale(&qw(&(&w[3] - &one))))
        .add(&d2.div(&d1))
        .sub(&RatFn::one().div(&s).scale(&qw(&(&w[0] - &one))))
        .sub(&RatFn::one().div(&s1).scale(&qw(&(&w[1] - &one))))
}

/// Integer exponents N(α̃₁−1), N(β̃₁−1), N(1−α₁), N(1−β₁) and N.
fn integer_exponents(w: &[BigRational; 4]) -> ([i64; 4], u32) {
    let n = w
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let nq = BigRational::from_integer(n.clone());
    let one = BigRational::one();
    let e = [
        as_int(&(&nq * (&w[2] - &one))),
        as_int(&(&nq * (&w[3] - &one))),
        as_int(&(&nq * (&one - &w[0]))),
        as_int(&(&nq * (&one - &w[1]))),
    ];
    (e, n.to_u32().expect("small power"))
}

/// εᴺ at an exact point, or `None` where a factor vanishes.
fn epsilon_power_at(map: &RationalMap, e: &[i64; 4], n: u32, s: &QOmega) -> Option<QOmega> {
    let th = map.theta().eval(s)?;
    let d1 = map.theta().deriv().eval(s)?;
    let s1 = s.clone() - QOmega::one();
    let th1 = th.clone() - QOmega::one();
    if [&th, &th1, &d1, s, &s1].iter().any(|v| v.is_zero()) {
        return None;
    }
    Some(
        qpow(&th, e[0])
            * qpow(&th1, e[1])
            * qpow(&d1, n as i64)
            * qpow(s, e[2])
            * qpow(&s1, e[3]),
    )
}

/// The exact constant εᴺ, or `None` if ε is not constant.
pub fn epsilon_power_exact(
    map: &RationalMap,
    source: &CaseRow,
    target: &CaseRow,
) -> Option<(u32, QOmega)> {
    let w = weight_pairs(source, target);
    if !log_derivative(map, &w).is_zero() {
        return None;
    }
    let (e, n) = integer_exponents(&w);
    (2..50)
        .map(|d| QOmega::rational(rat(1, d)))
        .find_map(|s| epsilon_power_at(map, &e, n, &s))
        .map(|v| (n, v))
}

/// ε(s) on principal branches.
pub(super) fn epsilon_at(
    map: &RationalMap,
    source: &CaseRow,
    target: &CaseRow,
    s: ComplexValue,
) -> Result<ComplexValue> {
    let [a1, b1, ta1, tb1] = weight_pairs(source, target).map(|q| to_f64(&q));
    let th = apply(map, s)?;
    let d1 = map.theta().deriv().eval_complex(s);
    Ok(cpow(th, ta1 - 1.0) * cpow(th - 1.0, tb1 - 1.0) * d1
        / (cpow(s, a1 - 1.0) * cpow(s - 1.0, b1 - 1.0)))
}

const NEAR: f64 = 1e-12;

/// Checks that ε(s) = θ^{α̃₁−1}(θ−1)^{β̃₁−1}θ' / (s^{α₁−1}(s−1)^{β₁−1}) is
/// constant, with (α₁, β₁) from the source row and (α̃₁, β̃₁) from the
/// target row. Exact in ℚ(ω)(s) through d log ε/ds = 0, and numerically on
/// the grid through the branch-free power εᴺ.
pub fn verify_differential_relation(
    map: &RationalMap,
    source: &CaseRow,
    target: &CaseRow,
    grid: &[f64],
) -> Result<DifferentialReport> {
    let w = weight_pairs(source, target);
    let (e, n) = integer_exponents(&w);
    let dth = map.theta().deriv();
    let mut powers = Vec::with_capacity(grid.len());
    for &x in grid {
        let s = Complex64::new(x, 0.0);
        let den = map.denominator().eval_complex(s);
        if den.norm() < NEAR {
            return Err(MapsError::GridHitsPole(x));
        }
        let th = map.numerator().eval_complex(s) / den;
        let d1 = dth.eval_complex(s);
        if th.norm() < NEAR || (th - 1.0).norm() < NEAR || d1.norm() < NEAR {
            return Err(MapsError::GridHitsPole(x));
        }
        let p = th.powi(e[0] as i32)
            * (th - 1.0).powi(e[1] as i32)
            * d1.powi(n as i32)
            * s.powi(e[2] as i32)
            * (s - 1.0).powi(e[3] as i32);
        powers.push(p);
    }
    let max_defect = match powers.first() {
        Some(&p0) => powers
            .iter()
            .map(|p| (p / p0 - 1.0).norm() / n as f64)
            .fold(0.0, f64::max),
        None => 0.0,
    };
    let epsilon = match grid.first() {
        Some(&x) => epsilon_at(map, source, target, Complex64::new(x, 0.0))?,
        None => Complex64::new(f64::NAN, f64::NAN),
    };
    let exact = epsilon_power_exact(map, source, target).map(|(_, v)| v);
    Ok(DifferentialReport {
        map: map.name().to_string(),
        epsilon_re: epsilon.re,
        epsilon_im: epsilon.im,
        max_defect,
        checks_passed: exact.is_some() && max_defect <= 1e-10,
        power: n,
        epsilon_power: exact,
    })
}

/// Source and target rows of a map, looked up in the table.
pub(super) fn rows(map: &RationalMap) -> Result<(CaseRow, CaseRow)> {
    Ok((table1_row(map.source_row())?, table1_row(map.target_row())?))
}

fn to_qomega_series(s: &PowerSeries<BigRational>) -> QS {
    QS::from_fn(s.order(), |i| qw(&s.coeff(i)))
}

fn poly_of_series(p: &Poly<QOmega>, s: &QS) -> QS {
    let mut acc = QS::constant(QOmega::zero(), s.order());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(s).add(&QS::constant(c.clone(), s.order()));
    }
    acc
}

/// Target vertex substitution σ with σ(v) = 0, and the permutation that
/// reorders the target angles accordingly (entry i of the new triangle is
/// entry perm[i] of the old).
fn to_origin(v: usize) -> (Mobius, [usize; 3]) {
    let sigma = Mobius::ALL
        .into_iter()
        .find(|m| m.vertex_image(v) == Some(0))
        .expect("some substitution moves v to 0");
    let inv = sigma.inverse();
    let perm = [0, 1, 2].map(|i| inv.vertex_image(i).expect("vertex permutation"));
    (sigma, perm)
}

/// Compares σ∘θ(s(z)) with s̃(ε̂z) as exact series in T = z^{1/α}, where s
/// and s̃ are the local inverses at z = 0 of the source and (vertex-permuted)
/// target triangle functions at parameter k. ε̂ = c^{α̃} with c the leading
/// coefficient of σ∘θ∘s.
pub fn verify_map_on_schwarz(map: &RationalMap, k: i64, order: usize) -> Result<SeriesReport> {
    let (source, target) = rows(map)?;
    let src_t = source.triangle_at(k)?;
    let v = map.vertex_value(0).ok_or_else(|| {
        MapsError::NonInvertibleAtOrigin(format!("{}: θ(0) is not a vertex", map.name()))
    })?;
    let (sigma, perm) = to_origin(v);
    let tgt_t = target.triangle_at(k)?.permuted(perm);
    if !src_t.alpha.is_positive() || !tgt_t.alpha.is_positive() {
        return Err(MapsError::NonInvertibleAtOrigin(format!(
            "{}: zero angle at the origin",
            map.name()
        )));
    }
    let ratio = &src_t.alpha / &tgt_t.alpha;
    if !ratio.is_integer() {
        return Err(MapsError::NonInvertibleAtOrigin(format!(
            "{}: α/α̃ = {ratio} is not an integer",
            map.name()
        )));
    }
    let r = as_int(&ratio) as usize;
    let len = order.max(1) + 2;
    let s_src = to_qomega_series(invert_to_puiseux_rational(&SchwarzMap::new(&src_t)?, order)?.in_t());
    let phi = map.substitute_target(sigma);
    let lhs = poly_of_series(phi.numerator(), &s_src)
        .mul(&poly_of_series(phi.denominator(), &s_src).inv());
    if lhs.valuation() != Some(r) {
        return Err(MapsError::NonInvertibleAtOrigin(format!(
            "{}: leading exponent {:?}, expected {r}",
            map.name(),
            lhs.valuation()
        )));
    }
    let c = lhs.coeff(r);
    // s̃(cT^r) needs s̃ through U^{(len−1)/r}
    let tgt_order = (len - 1).div_ceil(r).max(1);
    let s_tgt = invert_to_puiseux_rational(&SchwarzMap::new(&tgt_t)?, tgt_order)?;
    let a = to_qomega_series(s_tgt.in_t());
    let rhs = QS::from_fn(len, |j| {
        if j % r == 0 {
            a.coeff(j / r) * qpow(&c, (j / r) as i64)
        } else {
            QOmega::zero()
        }
    });
    let mut max_defect: f64 = 0.0;
    let mut exact = true;
    for j in 0..len {
        let d = lhs.coeff(j) - rhs.coeff(j);
        if !d.is_zero() {
            exact = false;
            max_defect = max_defect.max(to_c(&d).norm());
        }
    }
    let eps = cpow(to_c(&c), to_f64(&tgt_t.alpha));
    Ok(SeriesReport {
        map: map.name().to_string(),
        k,
        target_substitution: [sigma.a, sigma.b, sigma.c, sigma.d],
        r: r as u32,
        c,
        epsilon_re: eps.re,
        epsilon_im: eps.im,
        max_defect,
        checks_passed: exact,
    })
}

/// |ε| predicted by the series data: r·|c|^{w}, with w the target weight at
/// the vertex θ(0).
pub fn epsilon_modulus_from_series(map: &RationalMap, series: &SeriesReport) -> Result<f64> {
    let (_, target) = rows(map)?;
    let v = map.vertex_value(0).expect("checked by the series report");
    let w = to_f64(target.weights.as_array()[v]);
    Ok(series.r as f64 * to_c(&series.c).norm().powf(w))
}

/// Multiplicity of x = 0 in p.
fn mult0(p: &Poly<QOmega>) -> usize {
    p.root_multiplicity(&QOmega::zero())
}

fn angles(t: &TriangleParams) -> [BigRational; 3] {
    t.as_array().map(|v| v.clone())
}

/// Local data at the vertices and along the fibres over {0, 1, ∞}: at a
/// source vertex v with image w, e_v·α̃(w) = α(v); at any other preimage
/// of a vertex w, e·α̃(w) = 1. Multiplicities come from square-free
/// decomposition over ℚ(ω).
pub fn check_ramification(map: &RationalMap, k: i64) -> Result<RamificationReport> {
    let (source, target) = rows(map)?;
    let src = angles(&source.triangle_at(k)?);
    let tgt = angles(&target.triangle_at(k)?);
    let mut issues = Vec::new();
    let mut images = Vec::new();
    let deg = map.degree();
    let charts = [Mobius::ID, Mobius::ONE_MINUS, Mobius::INV];
    let mut at_infinity = None;
    for (v, chart) in charts.into_iter().enumerate() {
        let psi = map.theta().compose(&chart.ratfn());
        let w = map.vertex_value(v);
        images.push(w.map(|w| VERTEX_NAMES[w].to_string()));
        let Some(w) = w else {
            issues.push(format!("θ({}) is not a vertex", VERTEX_NAMES[v]));
            continue;
        };
        let e = match w {
            0 => mult0(psi.num()),
            1 => mult0(&psi.num().sub(psi.den())),
            _ => mult0(psi.den()),
        };
        if v == 2 {
            at_infinity = Some((w, e));
        }
        let want = &src[v];
        let got = BigRational::from_integer(e.into()) * &tgt[w];
        if *want != got {
            issues.push(format!(
                "vertex {}: e = {e}, e·α̃({}) = {got}, α = {want}",
                VERTEX_NAMES[v], VERTEX_NAMES[w]
            ));
        }
    }
    let one = Poly::<QOmega>::one();
    let x = Poly::<QOmega>::x();
    let x1 = x.sub(&one);
    for w in 0..3 {
        let p = match w {
            0 => map.numerator().clone(),
            1 => map.numerator().sub(map.denominator()),
            _ => map.denominator().clone(),
        };
        let (m0, m1) = (mult0(&p), p.root_multiplicity(&QOmega::one()));
        let rest = p.div_rem(&x.pow(m0 as u32)).0.div_rem(&x1.pow(m1 as u32)).0;
        for (g, m) in rest.squarefree() {
            let got = BigRational::from_integer(m.into()) * &tgt[w];
            if !got.is_one() {
                issues.push(format!(
                    "fibre over {}: factor {g} with multiplicity {m}, m·α̃ = {got}",
                    VERTEX_NAMES[w]
                ));
            }
        }
        let finite = p.degree().unwrap_or(0);
        let from_inf = match at_infinity {
            Some((wi, e)) if wi == w => e,
            _ => 0,
        };
        if finite + from_inf != deg {
            issues.push(format!(
                "fibre over {}: multiplicities sum to {}, degree {deg}",
                VERTEX_NAMES[w],
                finite + from_inf
            ));
        }
    }
    Ok(RamificationReport {
        map: map.name().to_string(),
        k,
        vertex_images: images,
        checks_passed: issues.is_empty(),
        issues,
    })
}

/// Combined report in the external format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapReport {
    pub map: String,
    pub k: i64,
    pub epsilon_re: f64,
    pub epsilon_im: f64,
    pub max_defect: f64,
    pub checks_passed: bool,
    #[serde(skip)]
    pub series: Option<SeriesReport>,
    #[serde(skip)]
    pub notes: Vec<String>,
}

/// Differential relation on `grid`, ramification at k, and the series check
/// through `order` where the source vertex allows it.
pub fn verify_map(map: &RationalMap, k: i64, grid: &[f64], order: usize) -> Result<MapReport> {
    let (source, target) = rows(map)?;
    let diff = verify_differential_relation(map, &source, &target, grid)?;
    let ram = check_ramification(map, k)?;
    let mut notes: Vec<String> = ram.issues.clone();
    let mut passed = diff.checks_passed && ram.checks_passed;
    let series = match verify_map_on_schwarz(map, k, order) {
        Ok(rep) => {
            passed &= rep.checks_passed;
            let want = epsilon_modulus_from_series(map, &rep)?;
            let got = Complex64::new(diff.epsilon_re, diff.epsilon_im).norm();
            if (got - want).abs() > 1e-10 * want {
                passed = false;
                notes.push(format!("|ε| = {got}, series predicts {want}"));
            }
            Some(rep)
        }
        Err(MapsError::NonInvertibleAtOrigin(why)) => {
            notes.push(format!("series check skipped: {why}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(MapReport {
        map: map.name().to_string(),
        k,
        epsilon_re: diff.epsilon_re,
        epsilon_im: diff.epsilon_im,
        max_defect: diff.max_defect,
        checks_passed: passed,
        series,
        notes,
    })
}
