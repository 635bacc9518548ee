//! Exact classification of the weight/exponent data for which
//! y = a₁w₁ + a₂w₂ + a₃w₃ solves Chazy XII.
//!
//! The algebraic condition V₄ = J·V₂² reduces to five polynomial equations
//! u₁ … u₅ in A, B, C (see [`eval_u`]). [`enumerate`] solves them exactly on a
//! Farey grid and groups the solutions into k-parametric families.

mod catalog;
mod families;
mod lemmas;
pub(crate) mod search;

pub use catalog::{table1, table1_row, Rescaling};
pub use families::{enumerate, enumerate_rows, Enumeration, Instance, OffFamily};
pub use lemmas::{
    check_lemma1, check_lemmas23, check_rows_interior, lemma1_reason, Lemma1Report, Lemma23Report,
    NearMiss, Rejected,
};

use crate::algebra::RatFn;
use crate::specfun::HypTriple;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::Neg;

/// Rational function of k with rational coefficients.
pub type KFn = RatFn<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifierError {
    #[error("SingularK: K undefined at k={0}")]
    SingularK(i64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown case label {0:?}")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, ClassifierError>;

/// Minimal exact-number interface shared by the fast search type and
/// `BigRational`.
pub(crate) trait Scalar:
    Clone + PartialEq + num_traits::Num + Neg<Output = Self>
{
    fn int(n: i64) -> Self;
}

impl Scalar for BigRational {
    fn int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

/// The five coefficients u₁ … u₅.
pub(crate) fn u_system<T: Scalar>(abc: [&T; 3], a1: &T, b1: &T, j: &T) -> [T; 5] {
    let [a, b, c] = abc.map(|v| v.clone());
    let (a1, b1, j) = (a1.clone(), b1.clone(), j.clone());
    let n = T::int;
    let one = T::one();
    let half = one.clone() / n(2);
    let u1 = j.clone() * b.clone() * b.clone() - n(12) * b.clone() * b1.clone() * b1.clone();
    let u2 = n(2) * j.clone() * b.clone() * c.clone()
        - n(4)
            * ((one.clone() - a1.clone()) * (one.clone() - n(6) * b1.clone()) * b.clone()
                + half.clone()
                    * (one.clone() - n(2) * b1.clone())
                    * (one.clone() - n(3) * b1.clone())
                    * c.clone());
    let mix = (n(2) - n(3) * b1.clone()) * (one.clone() - n(2) * a1.clone())
        + (n(2) - n(3) * a1.clone()) * (one.clone() - n(2) * b1.clone());
    let u3 = j.clone() * (n(2) * a.clone() * b.clone() + c.clone() * c.clone())
        - n(4)
            * ((n(2) - n(3) * b1.clone()) * (one.clone() - b1.clone()) * a.clone()
                + (n(2) - n(3) * a1.clone()) * (one.clone() - a1.clone()) * b.clone()
                + half.clone() * mix * c.clone());
    let u4 = n(2) * j.clone() * a.clone() * c.clone()
        - n(4)
            * ((one.clone() - b1.clone()) * (one.clone() - n(6) * a1.clone()) * a.clone()
                + half
                    * (one.clone() - n(2) * a1.clone())
                    * (one.clone() - n(3) * a1.clone())
                    * c.clone());
    let u5 = j * a.clone() * a.clone() - n(12) * a * a1.clone() * a1;
    [u1, u2, u3, u4, u5]
}

pub(crate) fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exponent differences (α, β, γ) at s = 0, 1, ∞, in units of π.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TriangleParams {
    #[serde(serialize_with = "ser_rat")]
    pub alpha: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub beta: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub gamma: BigRational,
}

impl TriangleParams {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Self {
        TriangleParams { alpha, beta, gamma }
    }

    /// Rejects anything outside {1/n : n ∈ ℕ} ∪ {0}.
    pub fn validated(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            let ok = v.is_zero() || (v.is_positive() && v.numer().is_one());
            if !ok {
                return Err(ClassifierError::InvalidParameters(format!(
                    "{name} = {v} is neither 0 nor a reciprocal integer"
                )));
            }
        }
        Ok(Self::new(alpha, beta, gamma))
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        Self::new(r(a.0, a.1), r(b.0, b.1), r(c.0, c.1))
    }

    pub fn as_array(&self) -> [&BigRational; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    pub fn sum(&self) -> BigRational {
        &self.alpha + &self.beta + &self.gamma
    }

    /// Non-negative with α + β + γ < 1.
    pub fn is_admissible(&self) -> bool {
        self.as_array().iter().all(|v| !v.is_negative()) && self.sum() < BigRational::one()
    }

    /// Entry i of the result is entry perm[i] of self.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let a = self.as_array();
        Self::new(a[perm[0]].clone(), a[perm[1]].clone(), a[perm[2]].clone())
    }

    pub fn hyp_triple(&self) -> crate::specfun::Result<HypTriple> {
        HypTriple::from_exponents(&self.alpha, &self.beta, &self.gamma)
    }
}

impl fmt::Display for TriangleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

/// Convex weights (α₁, β₁, γ₁) with a₁ = 6β₁, a₂ = 6α₁, a₃ = 6γ₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightParams {
    #[serde(serialize_with = "ser_rat")]
    pub alpha1: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub beta1: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub gamma1: BigRational,
}

impl WeightParams {
    /// γ₁ = 1 - α₁ - β₁.
    pub fn new(alpha1: BigRational, beta1: BigRational) -> Result<Self> {
        let gamma1 = BigRational::one() - &alpha1 - &beta1;
        Self::from_triple(alpha1, beta1, gamma1)
    }

    pub fn from_triple(
        alpha1: BigRational,
        beta1: BigRational,
        gamma1: BigRational,
    ) -> Result<Self> {
        let w = WeightParams { alpha1, beta1, gamma1 };
        let in_unit = |v: &BigRational| !v.is_negative() && *v <= BigRational::one();
        if !w.as_array().iter().all(|v| in_unit(v)) {
            return Err(ClassifierError::InvalidParameters(format!(
                "weights {w} not in [0,1]"
            )));
        }
        if w.alpha1.clone() + &w.beta1 + &w.gamma1 != BigRational::one() {
            return Err(ClassifierError::InvalidParameters(format!(
                "weights {w} do not sum to 1"
            )));
        }
        Ok(w)
    }

    pub fn from_ints(a1: (i64, i64), b1: (i64, i64)) -> Result<Self> {
        Self::new(r(a1.0, a1.1), r(b1.0, b1.1))
    }

    pub fn as_array(&self) -> [&BigRational; 3] {
        [&self.alpha1, &self.beta1, &self.gamma1]
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let a = self.as_array();
        WeightParams {
            alpha1: a[perm[0]].clone(),
            beta1: a[perm[1]].clone(),
            gamma1: a[perm[2]].clone(),
        }
    }

    /// Coefficients (a₁, a₂, a₃) of y = a₁w₁ + a₂w₂ + a₃w₃.
    pub fn gdh_coefficients(&self) -> [BigRational; 3] {
        let six = r(6, 1);
        [&six * &self.beta1, &six * &self.alpha1, &six * &self.gamma1]
    }
}

impl fmt::Display for WeightParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha1, self.beta1, self.gamma1)
    }
}

/// A = α₁² - α², B = β₁² - β², C = γ₁² - A - B - γ², D = A + B + C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcCoefficients {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

pub fn abc_from_params(t: &TriangleParams, w: &WeightParams) -> AbcCoefficients {
    let sq = |x: &BigRational| x * x;
    let a = sq(&w.alpha1) - sq(&t.alpha);
    let b = sq(&w.beta1) - sq(&t.beta);
    let c = sq(&w.gamma1) - &a - &b - sq(&t.gamma);
    let d = &a + &b + &c;
    AbcCoefficients { a, b, c, d }
}

/// (u₁, …, u₅); all zero exactly when V₄ = J·V₂² identically in s.
pub fn eval_u(t: &TriangleParams, w: &WeightParams, j: &BigRational) -> [BigRational; 5] {
    let abc = abc_from_params(t, w);
    u_system([&abc.a, &abc.b, &abc.c], &w.alpha1, &w.beta1, j)
}

/// K = (12 - J)/108.
pub fn k_from_j(j: &BigRational) -> BigRational {
    (r(12, 1) - j) / r(108, 1)
}

/// J = 12 - 108K.
pub fn j_from_k(k: &BigRational) -> BigRational {
    r(12, 1) - r(108, 1) * k
}

/// One row of the classification, parametrised by the integer k.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRow {
    pub label: String,
    pub alpha: KFn,
    pub beta: KFn,
    pub gamma: KFn,
    pub weights: WeightParams,
    /// Chazy parameter K(k).
    pub k_param: KFn,
    pub j: KFn,
    /// (Res z(0), Res z(1), Res z(∞)).
    pub residues: [KFn; 3],
    /// Set on rows that reduce to another row under k → k/m.
    pub rescaling: Option<Rescaling>,
}

fn kval(f: &KFn, k: i64) -> Result<BigRational> {
    f.eval(&BigRational::from_integer(k.into()))
        .ok_or(ClassifierError::SingularK(k))
}

impl CaseRow {
    pub fn triangle_at(&self, k: i64) -> Result<TriangleParams> {
        Ok(TriangleParams::new(
            kval(&self.alpha, k)?,
            kval(&self.beta, k)?,
            kval(&self.gamma, k)?,
        ))
    }

    pub fn k_at(&self, k: i64) -> Result<BigRational> {
        kval(&self.k_param, k)
    }

    pub fn j_at(&self, k: i64) -> Result<BigRational> {
        kval(&self.j, k)
    }

    pub fn is_starred(&self) -> bool {
        self.rescaling.is_some()
    }

    /// Exponent triple as k-functions.
    pub fn exponents(&self) -> [&KFn; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    /// Entry i of the result is entry perm[i] of self; K and J are unchanged.
    pub fn permuted(&self, perm: [usize; 3]) -> CaseRow {
        let e = self.exponents();
        CaseRow {
            label: self.label.clone(),
            alpha: e[perm[0]].clone(),
            beta: e[perm[1]].clone(),
            gamma: e[perm[2]].clone(),
            weights: self.weights.permuted(perm),
            k_param: self.k_param.clone(),
            j: self.j.clone(),
            residues: perm.map(|p| self.residues[p].clone()),
            rescaling: self.rescaling.clone(),
        }
    }

    /// Same parameters up to a vertex permutation (labels ignored).
    pub fn same_family(&self, other: &CaseRow) -> Option<[usize; 3]> {
        PERMUTATIONS.into_iter().find(|&p| {
            let o = other.permuted(p);
            o.alpha == self.alpha
                && o.beta == self.beta
                && o.gamma == self.gamma
                && o.weights == self.weights
                && o.k_param == self.k_param
                && o.j == self.j
                && o.residues == self.residues
        })
    }
}

pub const PERMUTATIONS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The residue triple of `row` at integer k.
pub fn residues(row: &CaseRow, k: i64) -> Result<[BigRational; 3]> {
    row.k_at(k)?;
    Ok([
        kval(&row.residues[0], k)?,
        kval(&row.residues[1], k)?,
        kval(&row.residues[2], k)?,
    ])
}

/// Residues recomputed from the parameters: 3(α₁/α - 1), 3(β₁/β - 1), 3(γ₁/γ - 1).
pub fn residues_from_params(t: &TriangleParams, w: &WeightParams) -> Option<[BigRational; 3]> {
    let three = r(3, 1);
    let f = |w: &BigRational, p: &BigRational| {
        (!p.is_zero()).then(|| &three * (w / p - BigRational::one()))
    };
    Some([
        f(&w.alpha1, &t.alpha)?,
        f(&w.beta1, &t.beta)?,
        f(&w.gamma1, &t.gamma)?,
    ])
}

/// (a₁, a₂, a₃) = (6β₁, 6α₁, 6γ₁).
pub fn gdh_combination(row: &CaseRow) -> [BigRational; 3] {
    row.weights.gdh_coefficients()
}

/// "p/q", or "p" for integers.
pub fn rat_string(q: &BigRational) -> String {
    q.to_string()
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(q))
}

/// JSON record of a row at one k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowRecord {
    pub label: String,
    pub k: i64,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub alpha1: String,
    pub beta1: String,
    pub gamma1: String,
    #[serde(rename = "K_num")]
    pub k_num: String,
    #[serde(rename = "K_den")]
    pub k_den: String,
    #[serde(rename = "J_num")]
    pub j_num: String,
    #[serde(rename = "J_den")]
    pub j_den: String,
    pub res0: String,
    pub res1: String,
    pub resinf: String,
}

impl RowRecord {
    pub fn new(row: &CaseRow, k: i64) -> Result<Self> {
        let t = row.triangle_at(k)?;
        let kk = row.k_at(k)?;
        let j = row.j_at(k)?;
        let res = residues(row, k)?;
        let s = rat_string;
        Ok(RowRecord {
            label: row.label.clone(),
            k,
            alpha: s(&t.alpha),
            beta: s(&t.beta),
            gamma: s(&t.gamma),
            alpha1: s(&row.weights.alpha1),
            beta1: s(&row.weights.beta1),
            gamma1: s(&row.weights.gamma1),
            k_num: kk.numer().to_string(),
            k_den: kk.denom().to_string(),
            j_num: j.numer().to_string(),
            j_den: j.denom().to_string(),
            res0: s(&res[0]),
            res1: s(&res[1]),
            resinf: s(&res[2]),
        })
    }
}

/// Rational-function helpers used to build rows.
pub(crate) mod kfn {
    use super::{r, KFn};
    use crate::algebra::Poly;
    use num_rational::BigRational;

    pub fn constant(q: BigRational) -> KFn {
        KFn::constant(q)
    }

    /// num / (den · k)
    pub fn over_k(num: BigRational, den: BigRational) -> KFn {
        KFn::new(Poly::constant(num), Poly::new(vec![r(0, 1), den]))
    }

    /// c / (a - b·k²)
    pub fn k_param(c: i64, a: i64, b: i64) -> KFn {
        KFn::new(
            Poly::constant(r(c, 1)),
            Poly::new(vec![r(a, 1), r(0, 1), r(-b, 1)]),
        )
    }

    /// (p·k + q) / d
    pub fn affine(p: i64, q: i64, d: i64) -> KFn {
        KFn::from_poly(Poly::new(vec![r(q, d), r(p, d)]))
    }

    /// J = 12 - 108·K
    pub fn j_of(kp: &KFn) -> KFn {
        KFn::constant(r(12, 1)).sub(&kp.scale(&r(108, 1)))
    }
}
