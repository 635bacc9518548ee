use super::field::Field;
use num_complex::Complex64;
use num_traits::Zero;

/// Power series truncated to a fixed number of coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries<F: Field> {
    c: Vec<F>,
}

impl<F: Field> PowerSeries<F> {
    /// Series from leading coefficients, padded or cut to `order` terms.
    pub fn new(mut c: Vec<F>, order: usize) -> Self {
        c.resize(order, F::zero());
        PowerSeries { c }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> F) -> Self {
        PowerSeries { c: (0..order).map(f).collect() }
    }

    pub fn constant(v: F, order: usize) -> Self {
        Self::new(vec![v], order)
    }

    /// The variable t.
    pub fn var(order: usize) -> Self {
        Self::new(vec![F::zero(), F::one()], order)
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.c.clone(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::from_fn(n, |i| self.c[i].clone() + o.c[i].clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::from_fn(n, |i| self.c[i].clone() - o.c[i].clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::from_fn(self.order(), |i| self.c[i].clone() * k.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![F::zero(); n];
        for (i, a) in self.c.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n - i {
                out[i + j] = out[i + j].clone() + a.clone() * o.c[j].clone();
            }
        }
        PowerSeries { c: out }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Self {
        let n = self.order();
        let c0 = self.c[0].clone();
        assert!(!c0.is_zero(), "inverse of a series with zero constant term");
        let inv0 = F::one() / c0;
        let mut g = vec![F::zero(); n];
        g[0] = inv0.clone();
        for m in 1..n {
            let mut acc = F::zero();
            for k in 1..=m {
                acc = acc + self.c[k].clone() * g[m - k].clone();
            }
            g[m] = -acc * inv0.clone();
        }
        PowerSeries { c: g }
    }

    /// f^r for rational r; requires f(0) = 1.
    pub fn pow_rational(&self, r: &F) -> Self {
        let n = self.order();
        assert!(self.c[0].is_one(), "rational power needs unit constant term");
        let mut g = vec![F::zero(); n];
        g[0] = F::one();
        for m in 1..n {
            let mut acc = F::zero();
            for k in 1..=m {
                let w = (r.clone() + F::one()) * F::from_i64(k as i64) - F::from_i64(m as i64);
                acc = acc + w * self.c[k].clone() * g[m - k].clone();
            }
            g[m] = acc / F::from_i64(m as i64);
        }
        PowerSeries { c: g }
    }

    pub fn deriv(&self) -> Self {
        let n = self.order();
        Self::from_fn(n.saturating_sub(1), |i| {
            self.c[i + 1].clone() * F::from_i64(i as i64 + 1)
        })
    }

    /// self(g(t)); g must have zero constant term.
    pub fn compose(&self, g: &Self) -> Self {
        assert!(g.c.first().map_or(true, |v| v.is_zero()), "inner series must vanish at 0");
        let n = self.order().min(g.order());
        let mut acc = Self::constant(F::zero(), n);
        for a in self.c.iter().take(n).rev() {
            acc = acc.mul(g);
            acc.c[0] = acc.c[0].clone() + a.clone();
        }
        acc
    }

    /// Compositional inverse h with self(h(t)) = t; needs c0 = 0, c1 != 0.
    pub fn reversion(&self) -> Self {
        let n = self.order();
        assert!(self.c[0].is_zero() && !self.c[1].is_zero(), "series is not invertible");
        let c1 = self.c[1].clone();
        let mut h = Self::new(vec![F::zero(), F::one() / c1.clone()], n);
        // fix one coefficient at a time: coefficient m of self(h) depends on
        // h_m linearly through c1·h_m
        for m in 2..n {
            let comp = self.compose(&h);
            let err = comp.c[m].clone();
            h.c[m] = h.c[m].clone() - err / c1.clone();
        }
        h
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for a in self.c.iter().rev() {
            acc = acc * t + a.to_complex();
        }
        acc
    }
}
