//! Exhaustive re-checks of the structural lemmas.

use super::search::{self, Solution, Q};
use super::{abc_from_params, CaseRow, TriangleParams, WeightParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

fn big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn params(s: &Solution) -> (TriangleParams, WeightParams) {
    let t = s.t.map(|x| big(&x));
    let w = s.w.map(|x| big(&x));
    (
        TriangleParams::new(t[0].clone(), t[1].clone(), t[2].clone()),
        WeightParams::from_triple(w[0].clone(), w[1].clone(), w[2].clone()).expect("grid weights"),
    )
}

const NAMES: [&str; 3] = ["α", "β", "γ"];

/// Why a J = 0 solution is not admissible.
pub fn lemma1_reason(t: &TriangleParams, w: &WeightParams) -> Option<String> {
    if t.is_admissible() {
        return None;
    }
    let p = t.as_array();
    let one = BigRational::one();
    let d = abc_from_params(t, w).d;
    if d.is_zero() {
        if let Some(i) = (0..3).find(|&i| *p[i] == one) {
            return Some(format!("A+B+C=0 ⇒ {}=1", NAMES[i]));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if p[i] + p[j] == one {
            return Some(format!("{}+{}=1", NAMES[i], NAMES[j]));
        }
    }
    Some("α+β+γ≥1".to_string())
}

/// Non-admissible J = 0 solutions sharing one rejection reason.
#[derive(Debug, Clone)]
pub struct Rejected {
    pub reason: String,
    pub count: usize,
    pub example: (TriangleParams, WeightParams),
}

/// Admissible grid points solving every equation but `failed` (1-based).
#[derive(Debug, Clone)]
pub struct NearMiss {
    pub failed: usize,
    pub count: usize,
    pub examples: Vec<(TriangleParams, WeightParams, BigRational)>,
}

#[derive(Debug, Clone)]
pub struct Lemma1Report {
    pub denom_bound: i64,
    pub weight_pairs: usize,
    pub admissible: Vec<(TriangleParams, WeightParams)>,
    pub rejected: Vec<Rejected>,
    pub near_misses: Vec<NearMiss>,
}

impl Lemma1Report {
    pub fn holds(&self) -> bool {
        self.admissible.is_empty()
    }
}

impl fmt::Display for Lemma1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "J=0: {} admissible solutions ({} weight pairs, denominators <= {})",
            self.admissible.len(),
            self.weight_pairs,
            self.denom_bound
        )?;
        for (t, w) in &self.admissible {
            writeln!(f, "  admissible: exponents {t} weights {w}")?;
        }
        for r in &self.rejected {
            writeln!(
                f,
                "  rejected {:>6} x {}  e.g. exponents {} weights {}",
                r.count, r.reason, r.example.0, r.example.1
            )?;
        }
        for n in &self.near_misses {
            write!(f, "  near-miss {:>6} x only u{} fails", n.count, n.failed)?;
            if let Some((t, w, u)) = n.examples.first() {
                write!(f, "  e.g. exponents {t} weights {w} u{}={u}", n.failed)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

const NEAR_EXAMPLES: usize = 5;

/// Exhaustive exact search of (u) at J = 0 over the Farey grid.
pub fn check_lemma1(denom_bound: i64) -> Lemma1Report {
    let grid = search::farey(denom_bound);
    let mut report = Lemma1Report {
        denom_bound,
        weight_pairs: 0,
        admissible: Vec::new(),
        rejected: Vec::new(),
        near_misses: Vec::new(),
    };
    let mut rejected: BTreeMap<String, Rejected> = BTreeMap::new();
    let mut near: BTreeMap<usize, NearMiss> = BTreeMap::new();
    for (a1, b1) in search::weight_pairs(&grid) {
        report.weight_pairs += 1;
        let o = search::solve_pair_j0(a1, b1, &grid, denom_bound, true);
        for s in &o.solutions {
            let (t, w) = params(s);
            match lemma1_reason(&t, &w) {
                None => report.admissible.push((t, w)),
                Some(reason) => {
                    rejected
                        .entry(reason.clone())
                        .or_insert_with(|| Rejected {
                            reason,
                            count: 0,
                            example: (t, w),
                        })
                        .count += 1;
                }
            }
        }
        for (drop, s) in &o.near {
            let e = near.entry(drop + 1).or_insert_with(|| NearMiss {
                failed: drop + 1,
                count: 0,
                examples: Vec::new(),
            });
            e.count += 1;
            if e.examples.len() < NEAR_EXAMPLES {
                let (t, w) = params(s);
                e.examples.push((t, w, big(&s.u()[*drop])));
            }
        }
    }
    report.rejected = rejected.into_values().collect();
    report.near_misses = near.into_values().collect();
    report
}

#[derive(Debug, Clone)]
pub struct Lemma23Report {
    pub checked: usize,
    /// (description, exponents, weights) for every parameter outside (0, 1).
    pub violations: Vec<(String, TriangleParams, WeightParams)>,
}

impl Lemma23Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, what: &str, t: TriangleParams, w: WeightParams) {
        self.checked += 1;
        let one = BigRational::one();
        let names = ["α", "β", "γ", "α₁", "β₁", "γ₁"];
        let vals = t.as_array().into_iter().chain(w.as_array());
        let bad: Vec<String> = vals
            .zip(names)
            .filter(|(v, _)| v.is_zero() || **v >= one)
            .map(|(v, n)| format!("{n}={v}"))
            .collect();
        if !bad.is_empty() {
            self.violations
                .push((format!("{what}: {}", bad.join(", ")), t, w));
        }
    }
}

impl fmt::Display for Lemma23Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "exponents and weights in (0,1): {} checked, {} violations",
            self.checked,
            self.violations.len()
        )?;
        for (d, t, w) in &self.violations {
            writeln!(f, "  {d}  exponents {t} weights {w}")?;
        }
        Ok(())
    }
}

/// Every admissible solution with J ∉ {0, 12} at the given bound has all
/// six parameters strictly inside (0, 1).
pub fn check_lemmas23(denom_bound: i64) -> Lemma23Report {
    let mut rep = Lemma23Report {
        checked: 0,
        violations: Vec::new(),
    };
    for s in search::search(denom_bound).iter() {
        let (t, w) = params(s);
        rep.check("solution", t, w);
    }
    rep
}

/// The same check on explicit rows at the given k.
pub fn check_rows_interior(rows: &[CaseRow], ks: &[i64]) -> Lemma23Report {
    let mut rep = Lemma23Report {
        checked: 0,
        violations: Vec::new(),
    };
    for row in rows {
        for &k in ks {
            let what = format!("{} k={k}", row.label);
            match row.triangle_at(k) {
                Ok(t) => rep.check(&what, t, row.weights.clone()),
                Err(e) => rep.violations.push((
                    format!("{what}: {e}"),
                    TriangleParams::from_ints((0, 1), (0, 1), (0, 1)),
                    row.weights.clone(),
                )),
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::super::{r, table1, table1_row};
    use super::*;

    #[test]
    fn excluded_candidates() {
        let w = WeightParams::from_ints((1, 2), (1, 2)).unwrap();
        let t = TriangleParams::from_ints((1, 2), (1, 2), (1, 5));
        assert_eq!(lemma1_reason(&t, &w).as_deref(), Some("α+β=1"));

        let w = WeightParams::from_ints((0, 1), (0, 1)).unwrap();
        let t = TriangleParams::from_ints((1, 3), (1, 3), (1, 1));
        assert_eq!(lemma1_reason(&t, &w).as_deref(), Some("A+B+C=0 ⇒ γ=1"));
    }

    #[test]
    fn lemma1_small_bound() {
        let rep = check_lemma1(12);
        assert!(rep.holds(), "{rep}");
        let reasons: Vec<&str> = rep.rejected.iter().map(|r| r.reason.as_str()).collect();
        assert!(reasons.contains(&"α+β=1"), "{rep}");
        assert!(reasons.contains(&"A+B+C=0 ⇒ γ=1"), "{rep}");
    }

    #[test]
    fn lemmas23_rows_and_fake() {
        let rep = check_rows_interior(&table1(), &[7]);
        assert!(rep.holds(), "{rep}");
        assert_eq!(rep.checked, 12);

        let mut fake = table1_row("1(a)").unwrap();
        fake.label = "fake".into();
        fake.weights = WeightParams::new(r(1, 2), r(1, 2)).unwrap();
        let rep = check_rows_interior(&[fake], &[7]);
        assert!(!rep.holds());
        assert!(rep.violations[0].0.contains("γ₁=0"), "{rep}");
    }

    #[test]
    fn lemmas23_small_bound() {
        let rep = check_lemmas23(14);
        assert!(rep.checked > 0);
        assert!(rep.holds(), "{rep}");
    }
}
