//! Scalar special functions: log-gamma, the surface area of the unit
//! sphere, and Kummer's confluent hypergeometric function ₁F₁.
//!
//! ₁F₁ is evaluated from its defining power series with Neumaier
//! summation. For z < −1 the Kummer transformation
//! ₁F₁(A;B;z) = e^z ₁F₁(B−A;B;−z) is applied first so that the summands
//! keep one sign, and for very large negative z the algebraic asymptotic
//! expansion takes over (the exponentially small companion term is below
//! double precision there).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Below this argument the reflected series is used.
const REFLECT_BELOW: f64 = -1.0;

/// Beyond this |z| (negative side) the asymptotic expansion is used.
const ASYMPTOTIC_BEYOND: f64 = 200.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_ln_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        Ok(lanczos_ln_gamma(x + 1.0) - x.ln())
    } else {
        Ok(lanczos_ln_gamma(x))
    }
}

/// True when `x` is 0, −1, −2, … (a pole of Γ).
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// (ln|Γ(x)|, sign Γ(x)) for any real x that is not a pole.
pub(crate) fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("Gamma has a pole at {x}")));
    }
    if x > 0.0 {
        return Ok((ln_gamma(x)?, 1.0));
    }
    // reflection: Γ(x) Γ(1−x) = π / sin(πx)
    let s = (PI * x).sin();
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma(1.0 - x)?;
    Ok((ln_abs, s.signum()))
}

/// Surface measure ω_{N−1} = 2π^{N/2} / Γ(N/2) of the unit sphere in ℝ^N.
pub fn unit_sphere_area(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("unit_sphere_area requires N >= 1".into()));
    }
    let half = f64::from(n) / 2.0;
    Ok((2f64.ln() + half * PI.ln() - ln_gamma(half)?).exp())
}

/// Arguments of ₁F₁(A; B; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerParams {
    pub fn new(a: f64, b: f64, z: f64) -> Self {
        Self { a, b, z }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite()) || self.z.is_nan() {
            return Err(Error::Domain(format!("non-finite Kummer parameters {self:?}")));
        }
        if is_nonpositive_integer(self.b) {
            return Err(Error::Domain(format!(
                "second Kummer parameter B = {} is a nonpositive integer",
                self.b
            )));
        }
        Ok(())
    }
}

/// Neumaier-compensated sum of Σ (a)_n z^n / ((b)_n n!).
fn power_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let settle = a.abs() + b.abs();
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term == 0.0 {
            return Ok(sum + comp);
        }
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("1F1 series with z = {z}")));
        }
        let next_ratio = ((a + nf + 1.0) / (b + nf + 1.0) * z / (nf + 2.0)).abs();
        if nf > settle
            && next_ratio < 1.0
            && term.abs() <= 0.1 * f64::EPSILON * (sum + comp).abs()
        {
            return Ok(sum + comp);
        }
    }
    Err(Error::SeriesNotConverged {
        terms: MAX_SERIES_TERMS,
    })
}

/// Algebraic part of the large-negative-argument expansion,
/// Γ(B)/Γ(B−A) x^{−A} Σ (A)_s (A−B+1)_s / (s! x^s) with x = −z.
fn negative_asymptotic_series(a: f64, b: f64, x: f64) -> Result<f64> {
    let (lg_b, s_b) = ln_gamma_signed(b)?;
    let (lg_ba, s_ba) = ln_gamma_signed(b - a)?;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for s in 0..MAX_SERIES_TERMS {
        let sf = s as f64;
        let next = term * (a + sf) * (a - b + 1.0 + sf) / ((sf + 1.0) * x);
        if next.abs() >= term.abs() && s > 0 {
            // asymptotic series: stop at the smallest term
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= 0.1 * f64::EPSILON * sum.abs() {
            break;
        }
    }
    Ok(s_b * s_ba * (lg_b - lg_ba - a * x.ln()).exp() * sum)
}

/// Kummer's function ₁F₁(A; B; z).
pub fn kummer_1f1(p: KummerParams) -> Result<f64> {
    p.validate()?;
    let KummerParams { a, b, z } = p;
    if z == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if z >= REFLECT_BELOW {
        return power_series(a, b, z);
    }
    let x = -z;
    if x > ASYMPTOTIC_BEYOND && !is_nonpositive_integer(b - a) {
        return negative_asymptotic_series(a, b, x);
    }
    // e^z ₁F₁(B−A; B; −z): all summands share a sign when B−A, B > 0
    let reflected = power_series(b - a, b, x)?;
    if reflected == 0.0 {
        return Ok(0.0);
    }
    let value = reflected.signum() * (z + reflected.abs().ln()).exp();
    Ok(value)
}

/// d/dz ₁F₁(A; B; z) = (A/B) ₁F₁(A+1; B+1; z).
pub fn kummer_1f1_derivative(p: KummerParams) -> Result<f64> {
    p.validate()?;
    if p.a == 0.0 {
        return Ok(0.0);
    }
    let shifted = kummer_1f1(KummerParams::new(p.a + 1.0, p.b + 1.0, p.z))?;
    Ok(p.a / p.b * shifted)
}

/// Second derivative, (A(A+1) / (B(B+1))) ₁F₁(A+2; B+2; z).
pub fn kummer_1f1_second_derivative(p: KummerParams) -> Result<f64> {
    p.validate()?;
    let inner = kummer_1f1_derivative(KummerParams::new(p.a + 1.0, p.b + 1.0, p.z))?;
    Ok(p.a / p.b * inner)
}

/// Leading term Γ(B) (−z)^{−A} / Γ(B−A) of ₁F₁ as z → −∞.
pub fn kummer_asymptotic_negative(p: KummerParams) -> Result<f64> {
    p.validate()?;
    if !(p.z < 0.0) {
        return Err(Error::Domain(format!(
            "negative-axis asymptotic requires z < 0, got {}",
            p.z
        )));
    }
    if is_nonpositive_integer(p.b - p.a) {
        return Err(Error::Domain(format!(
            "B − A = {} is a nonpositive integer",
            p.b - p.a
        )));
    }
    let (lg_b, s_b) = ln_gamma_signed(p.b)?;
    let (lg_ba, s_ba) = ln_gamma_signed(p.b - p.a)?;
    Ok(s_b * s_ba * (lg_b - lg_ba - p.a * (-p.z).ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-15);
        assert!(rel(ln_gamma(0.5).unwrap(), 0.5 * PI.ln()) < 1e-13);
        assert!(rel(ln_gamma(6.0).unwrap(), 120f64.ln()) < 1e-13);
        // ln Γ(30) = ln(29!)
        let ln_fact29: f64 = (1..=29).map(|k| (k as f64).ln()).sum();
        assert!(rel(ln_gamma(30.0).unwrap(), ln_fact29) < 1e-13);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(matches!(ln_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(ln_gamma(-1.5), Err(Error::Domain(_))));
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ln_gamma_recurrence() {
        let mut x = 0.1;
        while x <= 50.0 {
            let lhs = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap() - x.ln();
            assert!(lhs.abs() <= 1e-12, "x = {x}: {lhs:e}");
            x += 0.173;
        }
    }

    #[test]
    fn signed_gamma_reflection() {
        // Γ(−0.5) = −2√π
        let (lg, s) = ln_gamma_signed(-0.5).unwrap();
        assert_eq!(s, -1.0);
        assert!(rel(lg.exp(), 2.0 * PI.sqrt()) < 1e-13);
        assert!(ln_gamma_signed(-2.0).is_err());
    }

    #[test]
    fn sphere_areas() {
        assert!(rel(unit_sphere_area(1).unwrap(), 2.0) < 1e-14);
        assert!(rel(unit_sphere_area(2).unwrap(), 2.0 * PI) < 1e-14);
        assert!(rel(unit_sphere_area(3).unwrap(), 4.0 * PI) < 1e-14);
        assert!(rel(unit_sphere_area(4).unwrap(), 2.0 * PI * PI) < 1e-14);
        assert!(unit_sphere_area(0).is_err());
    }

    #[test]
    fn kummer_examples() {
        let e2 = kummer_1f1(KummerParams::new(0.5, 0.5, -2.0)).unwrap();
        assert!(rel(e2, (-2f64).exp()) < 1e-12);
        assert_eq!(kummer_1f1(KummerParams::new(2.0, 3.0, 0.0)).unwrap(), 1.0);
        // brute-force partial sums of Σ z^n/(n+1)! at z = 1
        let mut brute = 0.0;
        let mut fact = 1.0;
        for n in 0..40 {
            fact *= (n + 1) as f64;
            brute += 1.0 / fact;
        }
        let v = kummer_1f1(KummerParams::new(1.0, 2.0, 1.0)).unwrap();
        assert!(rel(v, brute) < 1e-14);
        assert!(rel(v, 1.718_281_828_459_045) < 1e-14);
    }

    #[test]
    fn kummer_rejects_poles() {
        assert!(kummer_1f1(KummerParams::new(1.0, 0.0, 1.0)).is_err());
        assert!(kummer_1f1(KummerParams::new(1.0, -3.0, 1.0)).is_err());
        assert!(kummer_1f1(KummerParams::new(1.0, -2.5, 1.0)).is_ok());
    }

    #[test]
    fn kummer_closed_forms() {
        // ₁F₁(1;2;z) = (e^z − 1)/z on both sides and across the switch points
        for &z in &[-300.0, -150.0, -60.0, -20.0, -1.5, -0.5, 0.3, 5.0, 25.0] {
            let v = kummer_1f1(KummerParams::new(1.0, 2.0, z)).unwrap();
            let exact = (z as f64).exp_m1() / z;
            assert!(rel(v, exact) < 1e-12, "z = {z}: {v} vs {exact}");
        }
        // terminating case ₁F₁(−2; 1; z) = 1 − 2z + z²/2 (Laguerre L₂)
        for &z in &[-5.0, -0.7, 0.0, 3.0] {
            let v = kummer_1f1(KummerParams::new(-2.0, 1.0, z)).unwrap();
            let exact = 1.0 - 2.0 * z + z * z / 2.0;
            assert!((v - exact).abs() < 1e-12 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn kummer_derivative_examples() {
        let d = kummer_1f1_derivative(KummerParams::new(0.5, 0.5, 1.0)).unwrap();
        assert!(rel(d, std::f64::consts::E) < 1e-12);
        let d0 = kummer_1f1_derivative(KummerParams::new(1.0, 2.0, 0.0)).unwrap();
        assert!(rel(d0, 0.5) < 1e-15);
        let h = 1e-6;
        let f = |z: f64| kummer_1f1(KummerParams::new(1.0, 2.0, z)).unwrap();
        let fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
        let d1 = kummer_1f1_derivative(KummerParams::new(1.0, 2.0, 1.0)).unwrap();
        assert!((fd - d1).abs() <= 1e-8);
    }

    #[test]
    fn asymptotic_examples() {
        let v = kummer_asymptotic_negative(KummerParams::new(1.0, 2.0, -100.0)).unwrap();
        assert!(rel(v, 0.01) < 1e-13);
        let v = kummer_asymptotic_negative(KummerParams::new(0.5, 1.5, -400.0)).unwrap();
        // Γ(1.5)/20 = √π/40
        assert!(rel(v, PI.sqrt() / 40.0) < 1e-13);
        assert!(rel(v, 0.044_311_346_3) < 1e-9);
        let p = KummerParams::new(1.0, 2.5, -60.0);
        let ratio = kummer_1f1(p).unwrap() / kummer_asymptotic_negative(p).unwrap();
        assert!((ratio - 1.0).abs() < 0.02);
    }

    #[test]
    fn asymptotic_domain_errors() {
        assert!(kummer_asymptotic_negative(KummerParams::new(1.0, 2.0, 0.0)).is_err());
        assert!(kummer_asymptotic_negative(KummerParams::new(1.0, 2.0, 3.0)).is_err());
        assert!(kummer_asymptotic_negative(KummerParams::new(2.0, 2.0, -3.0)).is_err());
        assert!(kummer_asymptotic_negative(KummerParams::new(3.0, 1.0, -3.0)).is_err());
    }

    #[test]
    fn asymptotic_ratio_improves_with_distance() {
        for &(a, b) in &[(1.0, 2.5), (0.5, 1.7), (2.5, 1.0), (1.7, 0.5)] {
            let errs: Vec<f64> = [-20.0, -40.0, -80.0]
                .iter()
                .map(|&z| {
                    let p = KummerParams::new(a, b, z);
                    (kummer_1f1(p).unwrap() / kummer_asymptotic_negative(p).unwrap() - 1.0).abs()
                })
                .collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "{a},{b}: {errs:?}");
        }
    }

    #[test]
    fn series_and_asymptotic_agree_at_switch() {
        // both regimes must agree where they hand over
        let x = ASYMPTOTIC_BEYOND;
        for &(a, b) in &[(2.0, 2.5), (1.5, 2.5), (3.25, 4.0)] {
            let reflected = power_series(b - a, b, x).unwrap();
            let series = (-x + reflected.ln()).exp();
            let asym = negative_asymptotic_series(a, b, x).unwrap();
            assert!(rel(series, asym) < 1e-12, "{a},{b}: {series} {asym}");
        }
    }
}
