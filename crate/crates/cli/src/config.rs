use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Sampling points for s: n points on [lo, hi], clustered towards lo like
/// the first half of a Chebyshev grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n: 20, lo: 0.05, hi: 0.5 }
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let m = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                let t = 1.0 - (PI * i as f64 / (2.0 * m)).cos();
                self.lo + (self.hi - self.lo) * t
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(v: &str) -> Result<Self, String> {
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        let [n, lo, hi] = parts[..] else {
            return Err(format!("grid {v:?}: expected n,lo,hi"));
        };
        let n: usize = n.parse().map_err(|e| format!("grid size {n:?}: {e}"))?;
        let lo: f64 = lo.parse().map_err(|e| format!("grid start {lo:?}: {e}"))?;
        let hi: f64 = hi.parse().map_err(|e| format!("grid end {hi:?}: {e}"))?;
        if n == 0 || !(0.0 < lo && lo <= hi && hi < 1.0) {
            return Err(format!("grid {v:?}: need n >= 1 and 0 < lo <= hi < 1"));
        }
        Ok(GridSpec { n, lo, hi })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.lo, self.hi)
    }
}

/// Comma-separated k values; "a..b" is an inclusive range.
pub fn parse_k_list(v: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("k {x:?}: {e}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    return Err(format!("empty k range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(parse(part)?),
        }
    }
    if out.is_empty() {
        return Err("empty k list".into());
    }
    if let Some(k) = out.iter().find(|&&k| k < 1) {
        return Err(format!("k = {k} must be positive"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    pub series_order: usize,
    pub denom_bound: i64,
    pub k_list: Vec<i64>,
    pub grid: GridSpec,
    pub output_format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-9,
            series_order: 8,
            denom_bound: 60,
            k_list: vec![7, 8, 12],
            grid: GridSpec::default(),
            output_format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tolerance > 0.0) {
            return Err(format!("tolerance {} must be positive", self.tolerance));
        }
        if self.series_order < 2 {
            return Err(format!("series order {} must be at least 2", self.series_order));
        }
        if self.denom_bound < 12 {
            return Err(format!("denominator bound {} must be at least 12", self.denom_bound));
        }
        Ok(())
    }
}
