//! Grouping exact solutions into k-parametric families.

use super::search::{self, Solution, Q};
use super::{
    eval_u, kfn, r, table1, CaseRow, KFn, Rescaling, RowRecord, TriangleParams, WeightParams,
    PERMUTATIONS,
};
use crate::algebra::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

fn big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn big_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// How one exponent depends on k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Comp {
    /// Equal to its weight (zero residue).
    Const(BigRational),
    /// m/k.
    Scaled(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    w: [BigRational; 3],
    comps: [Comp; 3],
}

impl Key {
    fn permuted(&self, p: [usize; 3]) -> Key {
        Key {
            w: p.map(|i| self.w[i].clone()),
            comps: p.map(|i| self.comps[i].clone()),
        }
    }

    /// Smallest m with every m_i/m having numerator 1 and every constant a
    /// reciprocal integer; `None` when no such m > 1 exists.
    fn star_factor(&self) -> Option<i64> {
        let mut m = BigInt::one();
        for c in &self.comps {
            match c {
                Comp::Const(v) => {
                    if !(v.is_zero() || v.numer().is_one()) {
                        return None;
                    }
                }
                Comp::Scaled(mi) => {
                    if !mi.is_integer() {
                        return None;
                    }
                    m = m.lcm(mi.numer());
                }
            }
        }
        m.to_i64().filter(|&m| m > 1)
    }

    /// The family row with k_c = scale·k.
    fn row(&self, scale: i64, label: String) -> CaseRow {
        let s = r(scale, 1);
        let exp = |c: &Comp| match c {
            Comp::Const(v) => kfn::constant(v.clone()),
            Comp::Scaled(m) => kfn::over_k(m.clone(), s.clone()),
        };
        let res = |i: usize| match &self.comps[i] {
            Comp::Const(_) => KFn::zero(),
            // 3(w/(m/(s·k)) - 1)
            Comp::Scaled(m) => KFn::from_poly(Poly::new(vec![
                r(-3, 1),
                r(3, 1) * &self.w[i] * &s / m,
            ])),
        };
        let k_param = kfn::k_param(4, 36, scale * scale);
        CaseRow {
            label,
            alpha: exp(&self.comps[0]),
            beta: exp(&self.comps[1]),
            gamma: exp(&self.comps[2]),
            weights: WeightParams::from_triple(
                self.w[0].clone(),
                self.w[1].clone(),
                self.w[2].clone(),
            )
            .expect("solution weights"),
            j: kfn::j_of(&k_param),
            k_param,
            residues: [res(0), res(1), res(2)],
            rescaling: None,
        }
    }
}

/// A solution that does not fit the k-lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct OffFamily {
    pub triangle: TriangleParams,
    pub weights: WeightParams,
    pub j: BigRational,
    pub reason: String,
}

/// One tabulated (row, k).
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub label: String,
    pub k: i64,
    pub triangle: TriangleParams,
    pub weights: WeightParams,
    pub j: BigRational,
}

#[derive(Debug, Clone, Default)]
pub struct Enumeration {
    /// Families with at least one instance in range, in table order.
    pub rows: Vec<CaseRow>,
    pub instances: Vec<Instance>,
    /// Families found by the search but absent from the published table.
    pub unmatched: Vec<CaseRow>,
    pub off_family: Vec<OffFamily>,
    /// Admissible exact solutions with J ∉ {0, 12}.
    pub solutions: usize,
    /// Solutions on a family but at non-integer k.
    pub non_integer_k: usize,
}

impl Enumeration {
    pub fn labels(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.label.as_str()).collect()
    }

    pub fn records(&self) -> Vec<RowRecord> {
        self.rows
            .iter()
            .flat_map(|row| {
                self.instances
                    .iter()
                    .filter(move |i| i.label == row.label)
                    .map(move |i| RowRecord::new(row, i.k).expect("tabulated k is regular"))
            })
            .collect()
    }

    pub fn ks(&self, label: &str) -> Vec<i64> {
        self.instances
            .iter()
            .filter(|i| i.label == label)
            .map(|i| i.k)
            .collect()
    }
}

struct Found {
    t: [BigRational; 3],
    kc: BigRational,
    j: BigRational,
}

fn classify(s: &Solution) -> Result<(Key, Found), OffFamily> {
    let t = s.t.map(|x| big(&x));
    let w = s.w.map(|x| big(&x));
    let j = big(&s.j);
    let tp = TriangleParams::new(t[0].clone(), t[1].clone(), t[2].clone());
    let wp = WeightParams::from_triple(w[0].clone(), w[1].clone(), w[2].clone())
        .expect("grid weights");
    assert!(
        eval_u(&tp, &wp, &j).iter().all(|u| u.is_zero()),
        "search returned a non-solution {tp} {wp} J={j}"
    );
    let off = |reason: &str| OffFamily {
        triangle: tp.clone(),
        weights: wp.clone(),
        j: j.clone(),
        reason: reason.to_string(),
    };
    let kc2 = r(36, 1) * &j / (&j - r(12, 1));
    let Some(kc) = big_sqrt(&kc2).filter(|k| k.is_positive()) else {
        return Err(off("36J/(J-12) is not a positive rational square"));
    };
    let comps = [0, 1, 2].map(|i| {
        if t[i] == w[i] {
            Comp::Const(t[i].clone())
        } else {
            Comp::Scaled(&t[i] * &kc)
        }
    });
    Ok((Key { w, comps }, Found { t, kc, j }))
}

fn canonical(key: &Key) -> (Key, [usize; 3]) {
    PERMUTATIONS
        .into_iter()
        .map(|p| (key.permuted(p), p))
        .min()
        .unwrap()
}

/// Exhaustive search at `denom_bound`, grouped into families and compared
/// with the published table. Rows are tabulated for integer k in
/// [k_min, k_max].
pub fn enumerate(k_min: i64, k_max: i64, denom_bound: i64) -> Enumeration {
    let sols = search::search(denom_bound);
    let mut out = Enumeration {
        solutions: sols.len(),
        ..Default::default()
    };

    // canonical key -> found instances, stored in canonical orientation
    let mut fams: BTreeMap<Key, Vec<Found>> = BTreeMap::new();
    for s in sols.iter() {
        match classify(s) {
            Ok((key, f)) => {
                let (ck, p) = canonical(&key);
                let f = Found {
                    t: p.map(|i| f.t[i].clone()),
                    ..f
                };
                fams.entry(ck).or_default().push(f);
            }
            Err(o) => out.off_family.push(o),
        }
    }

    let catalog = table1();
    // (catalog index or usize::MAX, row, instances by k)
    let mut emitted: Vec<(usize, CaseRow, BTreeSet<i64>)> = Vec::new();
    let mut unmatched = 0;
    for (key, found) in &fams {
        let mut variants = vec![(1i64, key.row(1, String::new()))];
        if let Some(m) = key.star_factor() {
            variants.push((m, key.row(m, String::new())));
        }
        let mut counted = BTreeSet::new();
        for (m, row) in variants {
            let hit = catalog
                .iter()
                .enumerate()
                .find_map(|(ci, c)| c.same_family(&row).map(|p| (ci, p)));
            let (ci, row, perm) = match hit {
                Some((ci, p)) => (ci, catalog[ci].clone(), p),
                None => {
                    unmatched += 1;
                    let mut row = row;
                    row.label = format!("new-{unmatched}");
                    if m > 1 {
                        row.rescaling = Some(Rescaling {
                            factor: m,
                            base: format!("new-{}", unmatched - 1),
                        });
                    }
                    out.unmatched.push(row.clone());
                    (usize::MAX, row, [0, 1, 2])
                }
            };
            let mut ks = BTreeSet::new();
            for (n, f) in found.iter().enumerate() {
                let k = &f.kc / r(m, 1);
                if !k.is_integer() {
                    continue;
                }
                counted.insert(n);
                let Some(k) = k.to_integer().to_i64() else {
                    continue;
                };
                if !(k_min..=k_max).contains(&k) {
                    continue;
                }
                let t = perm.map(|i| f.t[i].clone());
                let inst = Instance {
                    label: row.label.clone(),
                    k,
                    triangle: TriangleParams::new(t[0].clone(), t[1].clone(), t[2].clone()),
                    weights: row.weights.clone(),
                    j: f.j.clone(),
                };
                debug_assert_eq!(row.triangle_at(k).ok(), Some(inst.triangle.clone()));
                if ks.insert(k) {
                    out.instances.push(inst);
                }
            }
            if !ks.is_empty() {
                emitted.push((ci, row, ks));
            }
        }
        out.non_integer_k += found.len() - counted.len();
    }
    emitted.sort_by(|a, b| (a.0, &a.1.label).cmp(&(b.0, &b.1.label)));
    let order: Vec<String> = emitted.iter().map(|e| e.1.label.clone()).collect();
    out.rows = emitted.into_iter().map(|e| e.1).collect();
    out.instances.sort_by_key(|i| {
        (
            order.iter().position(|l| *l == i.label).unwrap_or(usize::MAX),
            i.k,
        )
    });
    out
}

/// The families of [`enumerate`] that have an instance for some integer k
/// in range.
pub fn enumerate_rows(k_min: i64, k_max: i64, denom_bound: i64) -> Vec<CaseRow> {
    enumerate(k_min, k_max, denom_bound).rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bound_families() {
        let e = enumerate(7, 12, 28);
        assert!(e.unmatched.is_empty(), "{:?}", e.unmatched);
        assert!(e.off_family.is_empty(), "{:?}", e.off_family);
        let labels = e.labels();
        assert_eq!(labels.len(), 12, "{labels:?}");
        let want: Vec<String> = table1().into_iter().map(|r| r.label).collect();
        assert_eq!(labels, want);
        for inst in &e.instances {
            let row = e.rows.iter().find(|r| r.label == inst.label).unwrap();
            assert_eq!(row.triangle_at(inst.k).unwrap(), inst.triangle);
            assert_eq!(row.j_at(inst.k).unwrap(), inst.j);
        }
        // 3(a)* needs 1/(4k) on the grid
        assert_eq!(e.ks("3(a)*"), vec![7]);
        assert_eq!(e.ks("2(b)*"), vec![7, 8, 9]);
        assert_eq!(e.ks("1(a)"), (7..=12).collect::<Vec<_>>());
    }

    #[test]
    fn star_factor() {
        let key = |c: [Comp; 3]| Key {
            w: [r(1, 3), r(1, 3), r(1, 3)],
            comps: c,
        };
        let s = |n| Comp::Scaled(r(n, 1));
        assert_eq!(key([s(2), s(2), s(2)]).star_factor(), Some(2));
        assert_eq!(key([s(1), s(1), s(4)]).star_factor(), Some(4));
        assert_eq!(
            key([Comp::Const(r(1, 2)), Comp::Const(r(1, 3)), s(1)]).star_factor(),
            None
        );
        assert_eq!(
            key([Comp::Const(r(2, 3)), s(1), s(1)]).star_factor(),
            None
        );
    }
}
