//! `eval`: per-point data over the s grid.

use crate::config::RunConfig;
use crate::emit::{Cell, Table};
use crate::CliError;
use chazylab::classifier::table1_row;
use chazylab::conformal::{barrier_radius_geometric, barrier_radius_with, z_of_s};
use chazylab::evaluator::{
    chazy_y, gdh_w, point_state, ramanujan_triple, sprime_log_derivative, ChazyInstance,
};
use chazylab::specfun::{to_f64, Precision};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Y,
    W,
    Pqr,
    Z,
    Barrier,
}

fn push_c(row: &mut Vec<Cell>, v: Complex64) {
    row.push(v.re.into());
    row.push(v.im.into());
}

fn c_columns(names: &[&str]) -> Vec<String> {
    let mut cols = vec!["s".to_string()];
    for n in names {
        cols.push(format!("{n}_re"));
        cols.push(format!("{n}_im"));
    }
    cols
}

pub fn run(cfg: &RunConfig, label: &str, k: i64, what: What) -> Result<Table, CliError> {
    let row = table1_row(label).map_err(|_| CliError::UnknownCase(label.to_string()))?;
    let prec = Precision::from_env();
    if what == What::Barrier {
        let t = row.triangle_at(k)?;
        let r = barrier_radius_with(&t, prec)?;
        let g = barrier_radius_geometric(&t)?;
        let mut table = Table::new(&["alpha", "beta", "gamma", "R", "R_geometric"]);
        table.push(vec![
            to_f64(&t.alpha).into(),
            to_f64(&t.beta).into(),
            to_f64(&t.gamma).into(),
            r.into(),
            g.radius.into(),
        ]);
        return Ok(table);
    }
    let inst = ChazyInstance::new(&row, k)?.with_precision(prec);
    let names: &[&str] = match what {
        What::Y => &["y"],
        What::W => &["w1", "w2", "w3", "w1_plus_w2_minus_w3", "half_spp_over_sp"],
        What::Pqr => &["Phat", "Qhat", "Rhat"],
        What::Z => &["z", "sprime_z"],
        What::Barrier => unreachable!(),
    };
    let cols = c_columns(names);
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut table = Table::new(&cols);
    for x in cfg.grid.points() {
        let s = Complex64::new(x, 0.0);
        let mut r: Vec<Cell> = vec![x.into()];
        match what {
            What::Y => push_c(&mut r, chazy_y(&inst, s)?),
            What::W => {
                let w = gdh_w(&inst, s)?;
                for v in w {
                    push_c(&mut r, v);
                }
                push_c(&mut r, w[0] + w[1] - w[2]);
                push_c(&mut r, 0.5 * sprime_log_derivative(&inst, s)?);
            }
            What::Pqr => {
                let t = ramanujan_triple(&inst, s)?;
                for v in [t.p, t.q, t.r] {
                    push_c(&mut r, v);
                }
            }
            What::Z => {
                push_c(&mut r, z_of_s(inst.map(), s)?);
                push_c(&mut r, point_state(&inst, s)?.sprime_z);
            }
            What::Barrier => unreachable!(),
        }
        table.push(r);
    }
    Ok(table)
}
