//! The twelve published rows, entered by hand. Used for labels, vertex
//! order and as the reference the enumeration is compared against.

use super::{kfn, r, CaseRow, ClassifierError, KFn, Result, WeightParams};
use serde::Serialize;

/// Row obtained from `base` by k → m·k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rescaling {
    pub factor: i64,
    pub base: String,
}

#[derive(Clone, Copy)]
enum E {
    /// p/q
    C(i64, i64),
    /// p/(q·k)
    K(i64, i64),
}

impl E {
    fn kfn(self) -> KFn {
        match self {
            E::C(p, q) => kfn::constant(r(p, q)),
            E::K(p, q) => kfn::over_k(r(p, 1), r(q, 1)),
        }
    }
}

struct Spec {
    label: &'static str,
    exps: [E; 3],
    w: [(i64, i64); 2],
    // K = c/(a - b·k²)
    k: (i64, i64, i64),
    // residue (p·k + q)/d
    res: [(i64, i64, i64); 3],
    star: Option<(i64, &'static str)>,
}

const Z: (i64, i64, i64) = (0, 0, 1);
const H: (i64, i64, i64) = (1, -6, 2);
const K3: (i64, i64, i64) = (1, -3, 1);

#[rustfmt::skip]
const TABLE: [Spec; 12] = [
    Spec { label: "1(a)", exps: [E::C(1, 2), E::C(1, 3), E::K(1, 1)], w: [(1, 2), (1, 3)],
           k: (4, 36, 1), res: [Z, Z, H], star: None },
    Spec { label: "1(b)", exps: [E::C(1, 3), E::C(1, 3), E::K(2, 1)], w: [(1, 3), (1, 3)],
           k: (4, 36, 1), res: [Z, Z, H], star: None },
    Spec { label: "1(b)*", exps: [E::C(1, 3), E::C(1, 3), E::K(1, 1)], w: [(1, 3), (1, 3)],
           k: (1, 9, 1), res: [Z, Z, K3], star: Some((2, "1(b)")) },
    Spec { label: "2(a)", exps: [E::C(1, 2), E::K(1, 1), E::K(2, 1)], w: [(1, 2), (1, 6)],
           k: (4, 36, 1), res: [Z, H, H], star: None },
    Spec { label: "2(a)*", exps: [E::C(1, 2), E::K(1, 2), E::K(1, 1)], w: [(1, 2), (1, 6)],
           k: (1, 9, 1), res: [Z, K3, K3], star: Some((2, "2(a)")) },
    Spec { label: "2(b)", exps: [E::C(1, 3), E::K(1, 1), E::K(3, 1)], w: [(1, 3), (1, 6)],
           k: (4, 36, 1), res: [Z, H, H], star: None },
    Spec { label: "2(b)*", exps: [E::C(1, 3), E::K(1, 3), E::K(1, 1)], w: [(1, 3), (1, 6)],
           k: (4, 36, 9), res: [Z, (3, -6, 2), (3, -6, 2)], star: Some((3, "2(b)")) },
    Spec { label: "2(c)", exps: [E::C(2, 3), E::K(1, 1), E::K(1, 1)], w: [(2, 3), (1, 6)],
           k: (4, 36, 1), res: [Z, H, H], star: None },
    Spec { label: "3(a)", exps: [E::K(1, 1), E::K(1, 1), E::K(4, 1)], w: [(1, 6), (1, 6)],
           k: (4, 36, 1), res: [H, H, H], star: None },
    Spec { label: "3(a)*", exps: [E::K(1, 4), E::K(1, 4), E::K(1, 1)], w: [(1, 6), (1, 6)],
           k: (1, 9, 4), res: [(2, -3, 1), (2, -3, 1), (2, -3, 1)], star: Some((4, "3(a)")) },
    Spec { label: "3(b)", exps: [E::K(2, 1), E::K(2, 1), E::K(2, 1)], w: [(1, 3), (1, 3)],
           k: (4, 36, 1), res: [H, H, H], star: None },
    Spec { label: "3(b)*", exps: [E::K(1, 1), E::K(1, 1), E::K(1, 1)], w: [(1, 3), (1, 3)],
           k: (1, 9, 1), res: [K3, K3, K3], star: Some((2, "3(b)")) },
];

fn build(s: &Spec) -> CaseRow {
    let k_param = kfn::k_param(s.k.0, s.k.1, s.k.2);
    CaseRow {
        label: s.label.to_string(),
        alpha: s.exps[0].kfn(),
        beta: s.exps[1].kfn(),
        gamma: s.exps[2].kfn(),
        weights: WeightParams::from_ints(s.w[0], s.w[1]).expect("table weights"),
        j: kfn::j_of(&k_param),
        k_param,
        residues: s.res.map(|(p, q, d)| kfn::affine(p, q, d)),
        rescaling: s.star.map(|(factor, base)| Rescaling {
            factor,
            base: base.to_string(),
        }),
    }
}

/// All twelve rows in table order.
pub fn table1() -> Vec<CaseRow> {
    TABLE.iter().map(build).collect()
}

pub fn table1_row(label: &str) -> Result<CaseRow> {
    TABLE
        .iter()
        .find(|s| s.label == label)
        .map(build)
        .ok_or_else(|| ClassifierError::UnknownCase(label.to_string()))
}
