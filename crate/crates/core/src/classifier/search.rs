//! Exhaustive exact search for solutions of the u-system on a Farey grid.
//!
//! Runs in `Ratio<i128>`: with denominators bounded by a few hundred every
//! intermediate stays many orders of magnitude inside the i128 range, and
//! overflow checks are on in every profile. Each reported solution is
//! re-checked in `BigRational` by the caller.

use super::{u_system, Scalar};
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub(crate) type Q = Ratio<i128>;

impl Scalar for Q {
    fn int(n: i64) -> Self {
        Q::from_integer(n as i128)
    }
}

pub(crate) fn q(p: i128, d: i128) -> Q {
    Q::new(p, d)
}

/// All reduced p/q in [0, 1] with q <= bound, ascending.
pub(crate) fn farey(bound: i64) -> Vec<Q> {
    let mut v: Vec<Q> = (1..=bound as i128)
        .flat_map(|d| (0..=d).map(move |n| (n, d)))
        .filter(|&(n, d)| num_integer::gcd(n, d) == 1)
        .map(|(n, d)| q(n, d))
        .collect();
    v.sort();
    v
}

pub(crate) fn rat_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (*x.numer(), *x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| q(rn, rd))
}

fn on_grid(x: &Q, bound: i64) -> bool {
    !x.is_negative() && *x <= Q::one() && *x.denom() <= bound as i128
}

/// Exponent p with p² = w² - x, if it lies on the grid.
fn exponent(w: &Q, x: &Q, bound: i64) -> Option<Q> {
    rat_sqrt(&(w * w - x)).filter(|p| on_grid(p, bound))
}

/// One exact solution: exponents (α, β, γ), weights (α₁, β₁, γ₁), J.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Solution {
    pub t: [Q; 3],
    pub w: [Q; 3],
    pub j: Q,
}

impl Solution {
    pub fn admissible(&self) -> bool {
        let s = self.t[0] + self.t[1] + self.t[2];
        s < Q::one() && self.t.iter().all(|p| *p < Q::one())
    }

    pub fn u(&self) -> [Q; 5] {
        let [a, b, d] = self.x();
        let c = d - a - b;
        u_system([&a, &b, &c], &self.w[0], &self.w[1], &self.j)
    }

    /// (A, B, A+B+C): each coordinate is w_i² - p_i².
    pub fn x(&self) -> [Q; 3] {
        let f = |i: usize| self.w[i] * self.w[i] - self.t[i] * self.t[i];
        [f(0), f(1), f(2)]
    }
}

enum Rays {
    Finite(Vec<Q>),
    All,
}

/// Common rational roots x of forms p·x² + q·x·y + r·y² at y = 1.
fn rays(forms: &[[Q; 3]]) -> Rays {
    let nonzero = forms.iter().find(|f| f.iter().any(|c| !c.is_zero()));
    let Some(f) = nonzero else {
        return Rays::All;
    };
    let [p, qq, r] = *f;
    let mut cands = Vec::new();
    if !p.is_zero() {
        let disc = qq * qq - Q::int(4) * p * r;
        if let Some(sd) = rat_sqrt(&disc) {
            cands.push((-qq + sd) / (Q::int(2) * p));
            if !sd.is_zero() {
                cands.push((-qq - sd) / (Q::int(2) * p));
            }
        }
    } else if !qq.is_zero() {
        cands.push(-r / qq);
    }
    cands.retain(|x| {
        forms
            .iter()
            .all(|[p, qq, r]| (p * x * x + qq * x + r).is_zero())
    });
    Rays::Finite(cands)
}

fn i(n: i64) -> Q {
    Q::int(n)
}

/// Admissible solutions with J ∉ {0, 12} for one weight pair.
pub(crate) fn solve_pair(a1: Q, b1: Q, grid: &[Q], bound: i64) -> Vec<Solution> {
    let one = Q::one();
    let g1 = one - a1 - b1;
    let mut out = Vec::new();
    let mut emit = |t: [Q; 3], j: Q| {
        let s = Solution { t, w: [a1, b1, g1], j };
        if s.admissible() && !s.j.is_zero() && s.j != i(12) {
            debug_assert!(s.u().iter().all(|u| u.is_zero()), "{s:?}");
            out.push(s);
        }
    };
    let f2a = (one - i(2) * a1) * (one - i(3) * a1);
    let f2b = (one - i(2) * b1) * (one - i(3) * b1);
    let qmix = (i(2) - i(3) * b1) * (one - i(2) * a1) + (i(2) - i(3) * a1) * (one - i(2) * b1);

    // A = B = 0: C is free and J·C = 2·qmix.
    if f2a.is_zero() && f2b.is_zero() && !qmix.is_zero() {
        for g in grid {
            let c = g1 * g1 - g * g;
            if !c.is_zero() {
                emit([a1, b1, *g], i(2) * qmix / c);
            }
        }
    }

    // A = 0, B ≠ 0, J·B = 12β₁²: homogeneous in (C, B).
    if !b1.is_zero() {
        let forms = [
            [Q::zero(), i(24) * b1 * b1 - i(2) * f2b, -i(4) * (one - a1) * (one - i(6) * b1)],
            [Q::zero(), -i(2) * f2a, Q::zero()],
            [i(12) * b1 * b1, -i(2) * qmix, -i(4) * (i(2) - i(3) * a1) * (one - a1)],
        ];
        if let Rays::Finite(cs) = rays(&forms) {
            for c in cs {
                for b in grid {
                    let bb = b1 * b1 - b * b;
                    if bb.is_zero() {
                        continue;
                    }
                    if let Some(g) = exponent(&g1, &(bb + c * bb), bound) {
                        emit([a1, *b, g], i(12) * b1 * b1 / bb);
                    }
                }
            }
        }
    }

    // B = 0, A ≠ 0, J·A = 12α₁²: homogeneous in (C, A).
    if !a1.is_zero() {
        let forms = [
            [Q::zero(), i(24) * a1 * a1 - i(2) * f2a, -i(4) * (one - b1) * (one - i(6) * a1)],
            [Q::zero(), -i(2) * f2b, Q::zero()],
            [i(12) * a1 * a1, -i(2) * qmix, -i(4) * (i(2) - i(3) * b1) * (one - b1)],
        ];
        if let Rays::Finite(cs) = rays(&forms) {
            for c in cs {
                for a in grid {
                    let aa = a1 * a1 - a * a;
                    if aa.is_zero() {
                        continue;
                    }
                    if let Some(g) = exponent(&g1, &(aa + c * aa), bound) {
                        emit([*a, b1, g], i(12) * a1 * a1 / aa);
                    }
                }
            }
        }
    }

    // A, B ≠ 0: A = 12α₁²λ, B = 12β₁²λ with λ = 1/J; homogeneous in (C, λ).
    if !a1.is_zero() && !b1.is_zero() {
        let a2 = a1 * a1;
        let b2 = b1 * b1;
        let lam2 = i(288) * a2 * b2
            - i(48) * ((i(2) - i(3) * b1) * (one - b1) * a2 + (i(2) - i(3) * a1) * (one - a1) * b2);
        let forms = [
            [Q::zero(), i(24) * b2 - i(2) * f2b, -i(48) * (one - a1) * (one - i(6) * b1) * b2],
            [Q::zero(), i(24) * a2 - i(2) * f2a, -i(48) * (one - b1) * (one - i(6) * a1) * a2],
            [one, -i(2) * qmix, lam2],
        ];
        if let Rays::Finite(cs) = rays(&forms) {
            for c in cs {
                for a in grid {
                    let aa = a2 - a * a;
                    if aa.is_zero() {
                        continue;
                    }
                    let lam = aa / (i(12) * a2);
                    let bb = i(12) * b2 * lam;
                    let Some(b) = exponent(&b1, &bb, bound) else {
                        continue;
                    };
                    if let Some(g) = exponent(&g1, &(aa + bb + c * lam), bound) {
                        emit([*a, b, g], one / lam);
                    }
                }
            }
        }
    }
    out
}

/// Rows of the J = 0 system acting on (A, B, D) with D = A + B + C.
fn j0_matrix(a1: &Q, b1: &Q) -> [[Q; 3]; 5] {
    let one = Q::one();
    let qmix = (i(2) - i(3) * b1) * (one - i(2) * a1) + (i(2) - i(3) * a1) * (one - i(2) * b1);
    // coefficients in (A, B, C) first
    let rows = [
        [Q::zero(), -i(12) * b1 * b1, Q::zero()],
        [
            Q::zero(),
            -i(4) * (one - a1) * (one - i(6) * b1),
            -i(2) * (one - i(2) * b1) * (one - i(3) * b1),
        ],
        [
            -i(4) * (i(2) - i(3) * b1) * (one - b1),
            -i(4) * (i(2) - i(3) * a1) * (one - a1),
            -i(2) * qmix,
        ],
        [
            -i(4) * (one - b1) * (one - i(6) * a1),
            Q::zero(),
            -i(2) * (one - i(2) * a1) * (one - i(3) * a1),
        ],
        [-i(12) * a1 * a1, Q::zero(), Q::zero()],
    ];
    // C = D - A - B
    rows.map(|[ca, cb, cc]| [ca - cc, cb - cc, cc])
}

fn det3(m: [&[Q; 3]; 3]) -> Q {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Basis of the nullspace of the given rows (3 columns).
fn nullspace(rows: &[[Q; 3]]) -> Vec<[Q; 3]> {
    let mut m: Vec<[Q; 3]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..m.len()).find(|&k| !m[k][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][col];
        for c in 0..3 {
            m[r][c] *= inv;
        }
        for k in 0..m.len() {
            if k != r && !m[k][col].is_zero() {
                let f = m[k][col];
                for c in 0..3 {
                    let v = m[r][c];
                    m[k][c] -= f * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [Q::zero(); 3];
            v[free] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free];
            }
            v
        })
        .collect()
}

/// Grid points (α, β, γ) whose X = (w_i² - p_i²) lies in span(basis), X ≠ 0.
fn span_points(basis: &[[Q; 3]], w: &[Q; 3], grid: &[Q], bound: i64) -> Vec<[Q; 3]> {
    let mut out = Vec::new();
    let x_of = |i: usize, p: &Q| w[i] * w[i] - p * p;
    let mut finish = |x: [Q; 3]| {
        if x.iter().all(|v| v.is_zero()) {
            return;
        }
        let mut t = [Q::zero(); 3];
        for k in 0..3 {
            match exponent(&w[k], &x[k], bound) {
                Some(p) => t[k] = p,
                None => return,
            }
        }
        out.push(t);
    };
    match basis {
        [] => {}
        [v] => {
            let k = (0..3).find(|&k| !v[k].is_zero()).unwrap();
            for p in grid {
                let s = x_of(k, p) / v[k];
                finish([v[0] * s, v[1] * s, v[2] * s]);
            }
        }
        [u, v] => {
            let (k, l) = [(0, 1), (0, 2), (1, 2)]
                .into_iter()
                .find(|&(k, l)| !(u[k] * v[l] - u[l] * v[k]).is_zero())
                .unwrap();
            let det = u[k] * v[l] - u[l] * v[k];
            for p in grid {
                let xk = x_of(k, p);
                for r in grid {
                    let xl = x_of(l, r);
                    let s = (xk * v[l] - xl * v[k]) / det;
                    let t = (u[k] * xl - u[l] * xk) / det;
                    finish([0, 1, 2].map(|m| u[m] * s + v[m] * t));
                }
            }
        }
        _ => {
            for a in grid {
                for b in grid {
                    for g in grid {
                        finish([x_of(0, a), x_of(1, b), x_of(2, g)]);
                    }
                }
            }
        }
    }
    out
}

/// Exact J = 0 outcome for one weight pair.
#[derive(Default)]
pub(crate) struct J0Outcome {
    /// Non-trivial grid solutions of the full system (admissible or not).
    pub solutions: Vec<Solution>,
    /// Grid points that solve all but the indexed equation.
    pub near: Vec<(usize, Solution)>,
    /// Dimension of the full nullspace.
    pub dim: usize,
}

/// `near_misses` also enumerates the systems with one equation dropped.
pub(crate) fn solve_pair_j0(
    a1: Q,
    b1: Q,
    grid: &[Q],
    bound: i64,
    near_misses: bool,
) -> J0Outcome {
    let w = [a1, b1, Q::one() - a1 - b1];
    let m = j0_matrix(&a1, &b1);
    let idx: [[usize; 3]; 10] = [
        [0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 4],
        [0, 3, 4], [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4],
    ];
    let minors: Vec<bool> = idx
        .iter()
        .map(|ix| det3([&m[ix[0]], &m[ix[1]], &m[ix[2]]]).is_zero())
        .collect();
    let mut out = J0Outcome::default();
    let sol = |t: [Q; 3]| Solution { t, w, j: Q::zero() };
    if minors.iter().all(|&z| z) {
        let ns = nullspace(&m);
        out.dim = ns.len();
        out.solutions = span_points(&ns, &w, grid, bound)
            .into_iter()
            .map(sol)
            .collect();
    }
    if near_misses {
        for drop in 0..5 {
            let rank_deficient = idx
                .iter()
                .zip(&minors)
                .filter(|(ix, _)| !ix.contains(&drop))
                .all(|(_, &z)| z);
            if !rank_deficient {
                continue;
            }
            let rows: Vec<[Q; 3]> = (0..5).filter(|&r| r != drop).map(|r| m[r]).collect();
            let ns = nullspace(&rows);
            for t in span_points(&ns, &w, grid, bound) {
                let s = sol(t);
                if s.admissible() && !s.u()[drop].is_zero() {
                    out.near.push((drop, s));
                }
            }
        }
    }
    out
}

/// Every weight pair (α₁, β₁) on the grid with α₁ + β₁ <= 1.
pub(crate) fn weight_pairs(grid: &[Q]) -> impl Iterator<Item = (Q, Q)> + '_ {
    grid.iter().flat_map(move |a| {
        grid.iter()
            .take_while(move |b| *a + **b <= Q::one())
            .map(move |b| (*a, *b))
    })
}

/// Memoised per bound; the full search at bound 60 takes several seconds.
pub(crate) fn search(bound: i64) -> Arc<Vec<Solution>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<Vec<Solution>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&bound) {
        return v.clone();
    }
    let v = Arc::new(search_uncached(bound));
    cache.lock().unwrap().insert(bound, v.clone());
    v
}

fn search_uncached(bound: i64) -> Vec<Solution> {
    let grid = farey(bound);
    let mut out: Vec<Solution> = weight_pairs(&grid)
        .flat_map(|(a1, b1)| solve_pair(a1, b1, &grid, bound))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Reference brute force over all five grid parameters; J is solved from
/// the first equation that depends on it. Only usable for small bounds.
#[cfg(test)]
pub(crate) fn brute_force(bound: i64, j_zero: bool) -> Vec<Solution> {
    let grid = farey(bound);
    let mut out = Vec::new();
    for (a1, b1) in weight_pairs(&grid) {
        let g1 = Q::one() - a1 - b1;
        for a in &grid {
            for b in &grid {
                for g in &grid {
                    if a + b + g >= Q::one() {
                        break;
                    }
                    let aa = a1 * a1 - a * a;
                    let bb = b1 * b1 - b * b;
                    let cc = g1 * g1 - aa - bb - g * g;
                    if aa.is_zero() && bb.is_zero() && cc.is_zero() {
                        continue;
                    }
                    let zero = Q::zero();
                    let u0 = u_system([&aa, &bb, &cc], &a1, &b1, &zero);
                    let u1 = u_system([&aa, &bb, &cc], &a1, &b1, &Q::one());
                    let j = if j_zero {
                        zero
                    } else {
                        // u(J) = u0 + J·(u1 - u0)
                        let k = (0..5).find(|&k| u1[k] != u0[k]);
                        match k {
                            Some(k) => -u0[k] / (u1[k] - u0[k]),
                            None => continue,
                        }
                    };
                    if !j_zero && (j.is_zero() || j == i(12)) {
                        continue;
                    }
                    let s = Solution { t: [*a, *b, *g], w: [a1, b1, g1], j };
                    if s.u().iter().all(|u| u.is_zero()) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
