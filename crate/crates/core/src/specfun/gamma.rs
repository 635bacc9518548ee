use super::{check_finite, ComplexValue, Result, SpecfunError};
use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(w: ComplexValue) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round()
}

fn lanczos(w: ComplexValue) -> ComplexValue {
    // valid for Re(w) >= 1/2
    let w = w - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(w + 0.5) * (-t).exp() * x
}

/// Complex Gamma function.
///
/// Lanczos for `Re(w) >= 1/2`, reflection `Γ(w)Γ(1-w) = π / sin(πw)` below.
pub fn gamma(w: ComplexValue) -> Result<ComplexValue> {
    if is_pole(w) {
        return Err(SpecfunError::PoleAtNonPositiveInteger(w.re));
    }
    let v = if w.re < 0.5 {
        PI / ((PI * w).sin() * lanczos(1.0 - w))
    } else if w.im == 0.0 && w.re == w.re.round() && w.re <= 171.0 {
        // exact factorials, mostly so that Γ(n) prints as an integer
        let mut f = 1.0;
        let mut k = 2.0;
        while k < w.re {
            f *= k;
            k += 1.0;
        }
        Complex64::new(f, 0.0)
    } else {
        lanczos(w)
    };
    check_finite(v)
}

/// `1/Γ(w)`, entire: zero at the poles of Γ.
pub fn rgamma(w: ComplexValue) -> Result<ComplexValue> {
    if is_pole(w) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g = gamma(w)?;
    Ok(1.0 / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> ComplexValue {
        Complex64::new(x, 0.0)
    }

    fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn small_integers_and_half() {
        assert_eq!(gamma(re(1.0)).unwrap(), re(1.0));
        assert_eq!(gamma(re(5.0)).unwrap(), re(24.0));
        assert!(rel(gamma(re(0.5)).unwrap(), re(PI.sqrt())) < 1e-15);
    }

    #[test]
    fn poles() {
        for n in [0.0, -1.0, -7.0] {
            assert_eq!(
                gamma(re(n)),
                Err(SpecfunError::PoleAtNonPositiveInteger(n))
            );
            assert_eq!(rgamma(re(n)).unwrap(), re(0.0));
        }
        assert!(gamma(Complex64::new(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn reference_values() {
        // independent 30-digit evaluations
        let cases = [
            (re(-2.5), re(-0.945_308_720_482_941_9)),
            (re(1.0 / 3.0), re(2.678_938_534_707_747_6)),
            (re(29.5), re(1.634_812_519_827_426_6e30)),
            (
                Complex64::new(1.0, 1.0),
                Complex64::new(0.498_015_668_118_356_04, -0.154_949_828_301_810_68),
            ),
            (
                Complex64::new(-3.5, 2.0),
                Complex64::new(-0.001_561_837_432_876_754_5, 0.000_461_194_272_084_374_03),
            ),
            (
                Complex64::new(10.0, -20.0),
                Complex64::new(-0.133_713_977_828_472_03, -0.123_674_975_271_245_25),
            ),
        ];
        for (w, want) in cases {
            let got = gamma(w).unwrap();
            assert!(rel(got, want) < 1e-12, "Γ({w}) = {got}, want {want}");
        }
    }

    #[test]
    fn recurrence() {
        for k in 0..40 {
            let w = Complex64::new(-4.7 + 0.31 * k as f64, 2.0 - 0.13 * k as f64);
            let lhs = gamma(w + 1.0).unwrap();
            let rhs = w * gamma(w).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "{w}");
        }
    }
}
