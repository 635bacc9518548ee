use super::field::Field;
use num_complex::Complex64;
use num_traits::Zero;
use std::fmt;

/// Dense univariate polynomial, coefficients in ascending degree, trimmed so
/// that the leading coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// x - r
    pub fn linear_root(r: F) -> Self {
        Poly::new(vec![-r, F::one()])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = F::one() / self.leading();
        self.scale(&inv)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: (q, r) with self = q·d + r, deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = F::one() / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn deriv(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Multiplicity of `r` as a root (0 if not a root). The zero polynomial
    /// has no well-defined multiplicity and returns `usize::MAX`.
    pub fn root_multiplicity(&self, r: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(r.clone());
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Yun's square-free decomposition: monic square-free, pairwise coprime
    /// factors `(f, m)` with self = lead · Π f^m.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.deriv();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.deriv());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&g).0;
            d = c.sub(&b.deriv());
            i += 1;
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, "x", f)
    }
}

pub(crate) fn fmt_poly<F: Field>(
    p: &Poly<F>,
    var: &str,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        let body = if body.contains(['+', '-']) {
            format!("({body})")
        } else {
            body
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = body == "1";
        match i {
            0 => write!(f, "{body}")?,
            1 if unit => write!(f, "{var}")?,
            1 => write!(f, "{body}*{var}")?,
            _ if unit => write!(f, "{var}^{i}")?,
            _ => write!(f, "{body}*{var}^{i}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    #[test]
    fn arithmetic_and_division() {
        let a = P::from_i64(&[-1, 0, 1]); // x²-1
        let b = P::from_i64(&[1, 1]); // x+1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, P::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&P::from_i64(&[-1, 1])), P::from_i64(&[-1, 1]));
        assert_eq!(a.deriv(), P::from_i64(&[0, 2]));
        assert_eq!(a.eval(&rat(3, 1)), rat(8, 1));
        assert_eq!(b.compose(&a), P::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn squarefree_decomposition() {
        // s (8s-9)² (s-1)³
        let s = P::x();
        let f = s
            .mul(&P::from_i64(&[-9, 8]).pow(2))
            .mul(&P::from_i64(&[-1, 1]).pow(3));
        let sf = f.squarefree();
        let degs: Vec<(usize, usize)> = sf
            .iter()
            .map(|(g, m)| (g.degree().unwrap(), *m))
            .collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(f.root_multiplicity(&rat(9, 8)), 2);
        assert_eq!(f.root_multiplicity(&rat(1, 1)), 3);
        assert_eq!(f.root_multiplicity(&rat(2, 1)), 0);
    }

    #[test]
    fn display() {
        let p = P::new(vec![rat(36, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(p.to_string(), "-x^2+36");
        let p = P::new(vec![rat(-1, 2), rat(3, 1)]);
        assert_eq!(p.to_string(), "3*x-1/2");
    }
}
