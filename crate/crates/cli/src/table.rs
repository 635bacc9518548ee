//! Table-1 records and the frozen golden copy `enumerate` is checked against.

use crate::emit::Table;
use chazylab::classifier::{rat_string, residues, CaseRow, Enumeration};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Produced by the classifier at denominator bound 60 for k = 1..=30.
const GOLDEN: &str = include_str!("../data/table1_golden.jsonl");
pub const GOLDEN_BOUND: i64 = 60;
pub const GOLDEN_K: (i64, i64) = (1, 30);

pub const CSV_COLUMNS: [&str; 12] = [
    "label", "alpha", "beta", "gamma", "alpha1", "beta1", "gamma1", "K", "J", "res0", "res1",
    "resinf",
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableRecord {
    pub label: String,
    pub k: i64,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub alpha1: String,
    pub beta1: String,
    pub gamma1: String,
    #[serde(rename = "K")]
    pub k_param: String,
    #[serde(rename = "J")]
    pub j: String,
    pub res0: String,
    pub res1: String,
    pub resinf: String,
}

impl TableRecord {
    pub fn new(row: &CaseRow, k: i64) -> chazylab::classifier::Result<Self> {
        let t = row.triangle_at(k)?;
        let res = residues(row, k)?;
        let s = rat_string;
        Ok(TableRecord {
            label: row.label.clone(),
            k,
            alpha: s(&t.alpha),
            beta: s(&t.beta),
            gamma: s(&t.gamma),
            alpha1: s(&row.weights.alpha1),
            beta1: s(&row.weights.beta1),
            gamma1: s(&row.weights.gamma1),
            k_param: s(&row.k_at(k)?),
            j: s(&row.j_at(k)?),
            res0: s(&res[0]),
            res1: s(&res[1]),
            resinf: s(&res[2]),
        })
    }

    fn fields(&self) -> [&str; 12] {
        [
            &self.label, &self.alpha, &self.beta, &self.gamma, &self.alpha1, &self.beta1,
            &self.gamma1, &self.k_param, &self.j, &self.res0, &self.res1, &self.resinf,
        ]
    }

    /// Whether the six exponents and weights have denominators within `bound`.
    pub fn fits(&self, bound: i64) -> bool {
        let f = self.fields();
        f[1..7].iter().all(|v| {
            let q: BigRational = v.parse().expect("rational field");
            *q.denom() <= bound.into()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn records(e: &Enumeration, ks: &[i64]) -> Vec<TableRecord> {
    let mut out = Vec::new();
    for row in &e.rows {
        for &k in ks {
            if e.ks(&row.label).contains(&k) {
                out.push(TableRecord::new(row, k).expect("tabulated k is regular"));
            }
        }
    }
    out
}

pub fn table(recs: &[TableRecord], format: crate::config::Format) -> Table {
    use crate::config::Format;
    let mut cols: Vec<&str> = CSV_COLUMNS.to_vec();
    if format == Format::Json {
        cols.insert(1, "k");
    }
    let mut t = Table::new(&cols);
    for r in recs {
        let mut row: Vec<crate::emit::Cell> = r.fields().iter().map(|&v| v.into()).collect();
        if format == Format::Json {
            row.insert(1, r.k.into());
        }
        t.push(row);
    }
    t
}

pub fn golden() -> Vec<TableRecord> {
    GOLDEN
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("golden record"))
        .collect()
}

/// Differences between computed records and the golden table restricted to
/// `ks` and, below the golden bound, to records fitting the bound. Empty
/// when they agree.
pub fn diff(computed: &[TableRecord], ks: &[i64], bound: i64) -> Vec<String> {
    let mut out = Vec::new();
    for &k in ks {
        if k < GOLDEN_K.0 || k > GOLDEN_K.1 {
            out.push(format!("no golden records for k={k} (range {}..{})", GOLDEN_K.0, GOLDEN_K.1));
        }
    }
    let want: BTreeMap<(String, i64), TableRecord> = golden()
        .into_iter()
        .filter(|r| ks.contains(&r.k) && (bound >= GOLDEN_BOUND || r.fits(bound)))
        .map(|r| ((r.label.clone(), r.k), r))
        .collect();
    let got: BTreeMap<(String, i64), &TableRecord> = computed
        .iter()
        .map(|r| ((r.label.clone(), r.k), r))
        .collect();
    let keys: BTreeSet<&(String, i64)> = want.keys().chain(got.keys()).collect();
    for key in keys {
        match (want.get(key), got.get(key)) {
            (Some(w), Some(g)) if w == *g => {}
            (Some(w), Some(g)) => {
                out.push(format!("- {}", w.to_json()));
                out.push(format!("+ {}", g.to_json()));
            }
            (Some(w), None) => out.push(format!("- {}", w.to_json())),
            (None, Some(g)) => out.push(format!("+ {}", g.to_json())),
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chazylab::classifier::table1;

    #[test]
    fn golden_matches_hand_table() {
        let g = golden();
        let labels: BTreeSet<&str> = g.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels.len(), 12);
        for r in &g {
            let row = table1().into_iter().find(|t| t.label == r.label).unwrap();
            assert_eq!(&TableRecord::new(&row, r.k).unwrap(), r);
        }
        let at7 = g.iter().filter(|r| r.k == 7).count();
        assert_eq!(at7, 12);
    }

    #[test]
    fn diff_reports_changes() {
        let g: Vec<TableRecord> = golden().into_iter().filter(|r| r.k == 7).collect();
        assert!(diff(&g, &[7], 60).is_empty());
        let mut bad = g.clone();
        bad[0].res0 = "1".into();
        bad.pop();
        let d = diff(&bad, &[7], 60);
        assert_eq!(d.len(), 3, "{d:?}");
        assert!(!diff(&g, &[99], 60).is_empty());
    }

    #[test]
    fn bound_filter() {
        let r = golden().into_iter().find(|r| r.label == "2(b)*" && r.k == 7).unwrap();
        assert_eq!(r.alpha, "1/3");
        assert!(!r.fits(12));
        assert!(r.fits(21));
    }
}
