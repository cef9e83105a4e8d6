//! Analytic radial profiles: a radial factor together with its first two
//! derivatives, wrapped as scalar fields f(r)·Y_k(σ) or as σ-aligned
//! curl-free vector fields h(r)·x.

use std::fmt;
use std::sync::Arc;

/// Value and first two derivatives of a radial function at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(c * self.value, c * self.d1, c * self.d2)
    }
}

impl std::ops::Add for Jet {
    type Output = Jet;

    fn add(self, o: Jet) -> Jet {
        Jet::new(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)
    }
}

/// A radial function of r > 0 with analytic derivatives.
pub trait RadialFn: Send + Sync {
    fn jet(&self, r: f64) -> Jet;

    /// Radial part f″ + (N−1)f′/r − c_k f/r² of Δ(f Y_k). Implementations
    /// with a power prefactor r^k override this so that the harmonic part
    /// cancels exactly instead of to O(ε/r²).
    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        let j = self.jet(r);
        j.d2 + (f64::from(n) - 1.0) * j.d1 / r - ck * j.value / (r * r)
    }
}

impl<F> RadialFn for F
where
    F: Fn(f64) -> Jet + Send + Sync,
{
    fn jet(&self, r: f64) -> Jet {
        self(r)
    }
}

/// c · r^p · exp(−rate · r^d) with closed-form derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerExp {
    pub coeff: f64,
    pub power: f64,
    pub rate: f64,
    pub exponent: f64,
}

impl PowerExp {
    pub fn new(coeff: f64, power: f64, rate: f64, exponent: f64) -> Self {
        Self {
            coeff,
            power,
            rate,
            exponent,
        }
    }
}

impl RadialFn for PowerExp {
    fn jet(&self, r: f64) -> Jet {
        let ln_r = r.ln();
        let rd = (self.exponent * ln_r).exp();
        let e = self.coeff * (self.power * ln_r - self.rate * rd).exp();
        if e == 0.0 {
            return Jet::default();
        }
        // g'/g = (p − s)/r,  g''/g = ((p − s)² − p − (d − 1)s)/r²  with s = c d r^d
        let s = self.rate * self.exponent * rd;
        let p = self.power;
        Jet::new(
            e,
            e * (p - s) / r,
            e * ((p - s) * (p - s) - p - (self.exponent - 1.0) * s) / (r * r),
        )
    }

    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        self.laplacian_impl(r, n, ck)
    }
}

impl PowerExp {
    fn laplacian_impl(&self, r: f64, n: u32, ck: f64) -> f64 {
        let ln_r = r.ln();
        let rd = (self.exponent * ln_r).exp();
        let e = self.coeff * (self.power * ln_r - self.rate * rd).exp();
        if e == 0.0 {
            return 0.0;
        }
        let s = self.rate * self.exponent * rd;
        let p = self.power;
        let nf = f64::from(n);
        // p² + (N−2)p − c_k vanishes exactly when p = k
        let harmonic = p * p + (nf - 2.0) * p - ck;
        e * (harmonic + s * s - (2.0 * p + self.exponent + nf - 2.0) * s) / (r * r)
    }
}

/// Finite sum of [`PowerExp`] terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerExpSum(pub Vec<PowerExp>);

impl RadialFn for PowerExpSum {
    fn jet(&self, r: f64) -> Jet {
        self.0.iter().fold(Jet::default(), |acc, t| acc + t.jet(r))
    }

    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        self.0.iter().map(|t| t.laplacian_impl(r, n, ck)).sum()
    }
}

struct Scaled {
    inner: Arc<dyn RadialFn>,
    factor: f64,
}

impl RadialFn for Scaled {
    fn jet(&self, r: f64) -> Jet {
        self.inner.jet(r).scale(self.factor)
    }

    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        self.factor * self.inner.laplacian(r, n, ck)
    }
}

struct Dilated {
    inner: Arc<dyn RadialFn>,
    s: f64,
}

impl RadialFn for Dilated {
    fn jet(&self, r: f64) -> Jet {
        let j = self.inner.jet(self.s * r);
        Jet::new(j.value, self.s * j.d1, self.s * self.s * j.d2)
    }

    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        self.s * self.s * self.inner.laplacian(self.s * r, n, ck)
    }
}

/// Scalar field u(x) = f(|x|) Y_k(x/|x|), with Y_k an L²-normalized
/// spherical harmonic of degree k. Only k enters the computations.
#[derive(Clone)]
pub struct ScalarProfile {
    radial: Arc<dyn RadialFn>,
    degree: u32,
}

impl fmt::Debug for ScalarProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarProfile")
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl ScalarProfile {
    pub fn new(radial: impl RadialFn + 'static, degree: u32) -> Self {
        Self {
            radial: Arc::new(radial),
            degree,
        }
    }

    pub fn from_arc(radial: Arc<dyn RadialFn>, degree: u32) -> Self {
        Self { radial, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// −Δσ eigenvalue c_k = k(N + k − 2).
    pub fn angular_eigenvalue(&self, n: u32) -> f64 {
        let k = f64::from(self.degree);
        k * (f64::from(n) + k - 2.0)
    }

    pub fn jet(&self, r: f64) -> Jet {
        self.radial.jet(r)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.radial.jet(r).value
    }

    /// Radial factor of Δu, i.e. Δ(f Y_k) = laplacian(r, N) · Y_k.
    pub fn laplacian(&self, r: f64, n: u32) -> f64 {
        self.radial.laplacian(r, n, self.angular_eigenvalue(n))
    }

    /// c · u.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            radial: Arc::new(Scaled {
                inner: self.radial.clone(),
                factor,
            }),
            degree: self.degree,
        }
    }

    /// x ↦ u(s x).
    pub fn dilated(&self, s: f64) -> Self {
        Self {
            radial: Arc::new(Dilated {
                inner: self.radial.clone(),
                s,
            }),
            degree: self.degree,
        }
    }
}

/// Curl-free field U(x) = h(|x|) x.
#[derive(Clone)]
pub struct VectorProfileRadialAligned {
    radial: Arc<dyn RadialFn>,
}

impl fmt::Debug for VectorProfileRadialAligned {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorProfileRadialAligned").finish_non_exhaustive()
    }
}

impl VectorProfileRadialAligned {
    pub fn new(radial: impl RadialFn + 'static) -> Self {
        Self {
            radial: Arc::new(radial),
        }
    }

    pub fn jet(&self, r: f64) -> Jet {
        self.radial.jet(r)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            radial: Arc::new(Scaled {
                inner: self.radial.clone(),
                factor,
            }),
        }
    }

    pub fn dilated(&self, s: f64) -> Self {
        Self {
            radial: Arc::new(Dilated {
                inner: self.radial.clone(),
                s,
            }),
        }
    }

    /// Cartesian field value U(x).
    pub fn field(&self, x: &[f64]) -> Vec<f64> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let h = self.radial.jet(r).value;
        x.iter().map(|v| h * v).collect()
    }
}

/// Largest finite-difference mismatch of a jet over a log-spaced grid,
/// max |analytic − central difference| / (1 + |analytic|) for d1 and d2.
pub fn derivative_mismatch(f: &dyn RadialFn, r_min: f64, r_max: f64, points: usize) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..points {
        let r = r_min * (r_max / r_min).powf(i as f64 / (points - 1) as f64);
        let h = 1e-5 * r;
        let (lo, mid, hi) = (f.jet(r - h), f.jet(r), f.jet(r + h));
        let fd1 = (hi.value - lo.value) / (2.0 * h);
        let fd2 = (hi.d1 - lo.d1) / (2.0 * h);
        worst = worst
            .max((mid.d1 - fd1).abs() / (1.0 + mid.d1.abs()))
            .max((mid.d2 - fd2).abs() / (1.0 + mid.d2.abs()));
    }
    worst
}
