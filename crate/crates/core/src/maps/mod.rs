//! Rational pull-back maps s̃ = θ(s) between the triangle functions of the
//! tabulated cases, with exact coefficients in ℚ(ω).

mod verify;

pub use verify::{
    check_ramification, epsilon_modulus_from_series, epsilon_power_exact,
    verify_differential_relation, verify_map, verify_map_on_schwarz, DifferentialReport,
    MapReport, RamificationReport, SeriesReport,
};

use crate::algebra::{rat, Poly, QOmega, RatFn};
use crate::classifier::ClassifierError;
use crate::conformal::ConformalError;
use crate::specfun::ComplexValue;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;

pub type MapFn = RatFn<QOmega>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MapsError {
    #[error("s = {0} is a pole of the map")]
    PoleOfMap(ComplexValue),
    #[error("grid point s = {0} is a pole or critical point of the map")]
    GridHitsPole(f64),
    #[error("series check not applicable: {0}")]
    NonInvertibleAtOrigin(String),
    #[error("unknown map {0}")]
    UnknownMap(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Conformal(#[from] ConformalError),
}

pub type Result<T> = std::result::Result<T, MapsError>;

/// The singular points 0, 1, ∞, indexed 0, 1, 2.
pub const VERTEX_NAMES: [&str; 3] = ["0", "1", "∞"];

/// x ↦ (ax + b)/(cx + d) with integer entries; the six of these that permute
/// {0, 1, ∞} are [`Mobius::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mobius {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mobius {
    pub const ID: Mobius = Mobius { a: 1, b: 0, c: 0, d: 1 };
    /// 1 − x
    pub const ONE_MINUS: Mobius = Mobius { a: -1, b: 1, c: 0, d: 1 };
    /// 1/x
    pub const INV: Mobius = Mobius { a: 0, b: 1, c: 1, d: 0 };
    /// 1 − 1/x
    pub const ONE_MINUS_INV: Mobius = Mobius { a: 1, b: -1, c: 1, d: 0 };
    /// 1/(1 − x)
    pub const INV_ONE_MINUS: Mobius = Mobius { a: 0, b: 1, c: -1, d: 1 };
    /// x/(x − 1)
    pub const X_OVER_X_MINUS_ONE: Mobius = Mobius { a: 1, b: 0, c: 1, d: -1 };

    pub const ALL: [Mobius; 6] = [
        Self::ID,
        Self::ONE_MINUS,
        Self::INV,
        Self::ONE_MINUS_INV,
        Self::INV_ONE_MINUS,
        Self::X_OVER_X_MINUS_ONE,
    ];

    pub fn inverse(self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn ratfn(self) -> MapFn {
        let q = |v: i64| QOmega::rational(rat(v, 1));
        RatFn::new(
            Poly::new(vec![q(self.b), q(self.a)]),
            Poly::new(vec![q(self.d), q(self.c)]),
        )
    }

    /// Image of vertex v (0, 1, 2 for 0, 1, ∞); `None` if it is not a vertex.
    pub fn vertex_image(self, v: usize) -> Option<usize> {
        let (num, den) = match v {
            0 => (self.b, self.d),
            1 => (self.a + self.b, self.c + self.d),
            _ => (self.a, self.c),
        };
        match (num, den) {
            (_, 0) => Some(2),
            (0, _) => Some(0),
            (n, d) if n == d => Some(1),
            _ => None,
        }
    }
}

/// s̃ = θ(s), carrying the triangle function of `source_row` to that of
/// `target_row`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    name: String,
    theta: MapFn,
    source_row: String,
    target_row: String,
}

impl RationalMap {
    pub fn new(name: &str, theta: MapFn, source_row: &str, target_row: &str) -> Self {
        RationalMap {
            name: name.to_string(),
            theta,
            source_row: source_row.to_string(),
            target_row: target_row.to_string(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn theta(&self) -> &MapFn {
        &self.theta
    }

    pub fn numerator(&self) -> &Poly<QOmega> {
        self.theta.num()
    }

    pub fn denominator(&self) -> &Poly<QOmega> {
        self.theta.den()
    }

    pub fn degree(&self) -> usize {
        self.theta.degree()
    }

    pub fn source_row(&self) -> &str {
        &self.source_row
    }

    pub fn target_row(&self) -> &str {
        &self.target_row
    }

    /// ε in φ̃(θ(s))·θ'(s) = ε·φ(s), on principal branches at s = 1/3.
    pub fn scale_epsilon(&self) -> Result<ComplexValue> {
        let (source, target) = verify::rows(self)?;
        verify::epsilon_at(self, &source, &target, Complex64::new(1.0 / 3.0, 0.0))
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// The map after the change of source variable s → σ(s), i.e. θ∘σ⁻¹.
    pub fn substitute_source(&self, sigma: Mobius) -> Self {
        RationalMap {
            theta: self.theta.compose(&sigma.inverse().ratfn()),
            ..self.clone()
        }
    }

    /// The map after the change of target variable s̃ → σ(s̃), i.e. σ∘θ.
    pub fn substitute_target(&self, sigma: Mobius) -> Self {
        RationalMap {
            theta: sigma.ratfn().compose(&self.theta),
            ..self.clone()
        }
    }

    /// outer∘self, from this map's source row to `outer`'s target row.
    pub fn then(&self, outer: &RationalMap, name: &str, source_row: &str) -> Self {
        RationalMap::new(
            name,
            outer.theta.compose(&self.theta),
            source_row,
            &outer.target_row,
        )
    }

    /// θ at a vertex, as a vertex index; `None` if the image is not 0, 1, ∞.
    pub fn vertex_value(&self, v: usize) -> Option<usize> {
        let at = |m: Mobius| self.theta.compose(&m.ratfn());
        let t = match v {
            0 => self.theta.clone(),
            1 => at(Mobius::ONE_MINUS),
            _ => at(Mobius::INV),
        };
        let (n0, d0) = (t.num().coeff(0), t.den().coeff(0));
        if d0.is_zero() {
            Some(2)
        } else if n0.is_zero() {
            Some(0)
        } else if n0 == d0 {
            Some(1)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: s ↦ {}", self.name, self.theta.display("s"))
    }
}

/// θ(s) by Horner evaluation of numerator and denominator.
pub fn apply(map: &RationalMap, s: ComplexValue) -> Result<ComplexValue> {
    let d = map.denominator().eval_complex(s);
    if d.norm() == 0.0 {
        return Err(MapsError::PoleOfMap(s));
    }
    Ok(map.numerator().eval_complex(s) / d)
}

fn qw(p: i64, q: i64) -> QOmega {
    QOmega::rational(rat(p, q))
}

fn poly(c: &[QOmega]) -> Poly<QOmega> {
    Poly::new(c.to_vec())
}

fn ratio(n: Poly<QOmega>, d: Poly<QOmega>) -> MapFn {
    RatFn::new(n, d)
}

/// The hypergeometric transformations the catalog is generated from, each in
/// the orientation of the underlying ₂F₁ identity.
pub fn base_transformations() -> Vec<(&'static str, MapFn)> {
    let s = Poly::<QOmega>::x();
    let one = Poly::<QOmega>::one();
    let c = |p, q| Poly::constant(qw(p, q));
    let omega = QOmega::omega();
    // A = 3(2ω + 1)
    let a = QOmega::new(rat(3, 1), rat(6, 1));
    vec![
        // quadratic: 4s(1−s)
        ("quadratic", ratio(c(4, 1).mul(&s).mul(&one.sub(&s)), one.clone())),
        // cubic: 27s/(4s−1)³
        (
            "cubic",
            ratio(c(27, 1).mul(&s), poly(&[qw(-1, 1), qw(4, 1)]).pow(3)),
        ),
        // quartic: 64s(1−s)³/(1+8s)³
        (
            "quartic",
            ratio(
                c(64, 1).mul(&s).mul(&one.sub(&s).pow(3)),
                poly(&[qw(1, 1), qw(8, 1)]).pow(3),
            ),
        ),
        // quadratic, second form: s²/(4(s−1))
        (
            "quadratic-2",
            ratio(s.pow(2), c(4, 1).mul(&s.sub(&one))),
        ),
        // cubic over ℚ(ω): A s(s−1)/(s+ω)³
        (
            "cubic-omega",
            ratio(
                Poly::constant(a).mul(&s).mul(&s.sub(&one)),
                poly(&[omega, QOmega::one()]).pow(3),
            ),
        ),
    ]
}

fn base(name: &str) -> MapFn {
    base_transformations()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f)
        .expect("known base transformation")
}

/// The five catalog maps and the two degree-6 compositions.
pub fn builtin_maps() -> Vec<RationalMap> {
    let theta1b = RationalMap::new("theta1b", base("quadratic"), "1(b)", "1(a)")
        .substitute_target(Mobius::ONE_MINUS);
    let theta2a = RationalMap::new("theta2a", base("cubic"), "2(a)", "1(a)")
        .substitute_source(Mobius::ONE_MINUS)
        .substitute_target(Mobius::ONE_MINUS_INV);
    let theta2b = RationalMap::new("theta2b", base("quartic"), "2(b)", "1(a)")
        .substitute_source(Mobius::INV_ONE_MINUS)
        .substitute_target(Mobius::ONE_MINUS_INV);
    let theta2c = RationalMap::new("theta2c", base("quadratic-2"), "2(c)", "1(a)")
        .substitute_target(Mobius::ONE_MINUS);
    let theta3b_cubic = RationalMap::new("theta3b-cubic", base("cubic-omega"), "3(b)", "1(b)")
        .substitute_target(Mobius::INV);
    let theta3a = theta1b.then(&theta2a, "theta3a", "3(a)");
    let theta3b = theta3b_cubic.then(&theta1b, "theta3b", "3(b)");
    vec![theta1b, theta2a, theta2b, theta2c, theta3b_cubic, theta3a, theta3b]
}

pub fn builtin_map(name: &str) -> Result<RationalMap> {
    builtin_maps()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| MapsError::UnknownMap(name.to_string()))
}

/// θ(s) = s, from a row to itself.
pub fn identity_map(row: &str) -> RationalMap {
    RationalMap::new("identity", RatFn::x(), row, row)
}

pub(crate) fn to_c(q: &QOmega) -> Complex64 {
    use crate::algebra::Field;
    q.to_complex()
}

#[cfg(test)]
mod tests;
