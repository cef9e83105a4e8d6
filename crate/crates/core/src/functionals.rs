//! Weighted integral triples (left, right, mid) of each inequality.
//!
//! Spherical factors are L²(S^{N−1})-normalized, so after the angular
//! integration every triple carries exactly one factor ω_{N−1}. The
//! quotient left·right/mid² does not depend on that convention.
//!
//! The curl-free triple is available along two routes: directly in x-space
//! from |∇U|² = h′²r² + 2hh′r + N h², and in log-radial variables through
//! V = r^{1−λ}U, λ = 2 − N/2 + a. For σ-aligned fields the two agree
//! after an integration by parts, which makes them a mutual oracle.

use crate::constants::ParamPoint;
use crate::error::Result;
use crate::profile::{Jet, ScalarProfile, VectorProfileRadialAligned};
use crate::quadrature::{integrate_log, integrate_radial, QuadratureSpec};
use crate::specfun::unit_sphere_area;

/// The three weighted integrals of one inequality instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalTriple {
    pub left: f64,
    pub right: f64,
    pub mid: f64,
}

impl FunctionalTriple {
    pub fn new(left: f64, right: f64, mid: f64) -> Self {
        Self { left, right, mid }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(c * self.left, c * self.right, c * self.mid)
    }

    /// Largest entrywise relative difference.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let d = |x: f64, y: f64| {
            let scale = x.abs().max(y.abs());
            if scale == 0.0 {
                0.0
            } else {
                (x - y).abs() / scale
            }
        };
        d(self.left, other.left)
            .max(d(self.right, other.right))
            .max(d(self.mid, other.mid))
    }

    pub fn is_valid(&self) -> bool {
        [self.left, self.right, self.mid]
            .iter()
            .all(|v| v.is_finite() && *v >= 0.0)
    }
}

/// `core · r^w`, with an exact zero when `core` vanishes.
pub(crate) fn weighted(core: f64, r: f64, w: f64) -> f64 {
    if core == 0.0 {
        0.0
    } else {
        core * r.powf(w)
    }
}

/// Radial part of Δ(f Y_k): f″ + (N−1) f′/r − c_k f / r².
pub fn radial_laplacian(j: Jet, r: f64, n: u32, ck: f64) -> f64 {
    j.d2 + (f64::from(n) - 1.0) * j.d1 / r - ck * j.value / (r * r)
}

/// |∇U|² for U = h(r) x.
pub fn curlfree_gradient_norm_sq(j: Jet, r: f64, n: u32) -> f64 {
    j.d1 * j.d1 * r * r + 2.0 * j.value * j.d1 * r + f64::from(n) * j.value * j.value
}

fn gradient_energy(u: &ScalarProfile, n: u32, p: &ParamPoint, angular: bool, spec: &QuadratureSpec) -> Result<f64> {
    let ck = if angular { u.angular_eigenvalue(n) } else { 0.0 };
    let w = p.dim() - 1.0 - 2.0 * p.b;
    integrate_radial(
        |r| {
            let j = u.jet(r);
            weighted(j.d1 * j.d1 + ck * j.value * j.value / (r * r), r, w)
        },
        spec,
    )
}

fn scalar_triple(u: &ScalarProfile, p: ParamPoint, angular: bool, spec: &QuadratureSpec) -> Result<FunctionalTriple> {
    let omega = unit_sphere_area(p.n)?;
    let n = p.dim();
    let left = gradient_energy(u, p.n, &p, angular, spec)?;
    let w_right = n - 1.0 - 2.0 * p.a;
    let right = integrate_radial(
        |r| {
            let f = u.value(r);
            weighted(f * f, r, w_right)
        },
        spec,
    )?;
    let w_mid = n - 1.0 - (p.a + p.b + 1.0);
    let mid = integrate_radial(
        |r| {
            let f = u.value(r);
            weighted(f * f, r, w_mid)
        },
        spec,
    )?;
    Ok(FunctionalTriple::new(omega * left, omega * right, omega * mid))
}

/// Triple of the scalar CKN inequality: ∫|∇u|²/|x|^{2b}, ∫|u|²/|x|^{2a},
/// ∫|u|²/|x|^{a+b+1}.
pub fn scalar_ckn_triple(u: &ScalarProfile, p: ParamPoint, spec: &QuadratureSpec) -> Result<FunctionalTriple> {
    scalar_triple(u, p, true, spec)
}

/// As [`scalar_ckn_triple`] but the gradient is replaced by the radial
/// derivative ∂_r u.
pub fn radial_ckn_triple(u: &ScalarProfile, p: ParamPoint, spec: &QuadratureSpec) -> Result<FunctionalTriple> {
    scalar_triple(u, p, false, spec)
}

/// Triple of the second-order inequality: ∫|Δu|²/|x|^{2a},
/// ∫|x|^{2a+2}|∂_r u|², ∫|∇u|².
pub fn second_order_triple(u: &ScalarProfile, n: u32, a: f64, spec: &QuadratureSpec) -> Result<FunctionalTriple> {
    let omega = unit_sphere_area(n)?;
    let nf = f64::from(n);
    let ck = u.angular_eigenvalue(n);
    let left = integrate_radial(
        |r| {
            let lap = u.laplacian(r, n);
            weighted(lap * lap, r, nf - 1.0 - 2.0 * a)
        },
        spec,
    )?;
    let right = integrate_radial(
        |r| {
            let d1 = u.jet(r).d1;
            weighted(d1 * d1, r, nf + 1.0 + 2.0 * a)
        },
        spec,
    )?;
    let mid = integrate_radial(
        |r| {
            let j = u.jet(r);
            weighted(j.d1 * j.d1 + ck * j.value * j.value / (r * r), r, nf - 1.0)
        },
        spec,
    )?;
    Ok(FunctionalTriple::new(omega * left, omega * right, omega * mid))
}

/// Curl-free triple in x-space: ∫|∇U|²/|x|^{2a}, ∫|U|²/|x|^{2b},
/// ∫|U|²/|x|^{a+b+1}.
pub fn curlfree_triple(u: &VectorProfileRadialAligned, p: ParamPoint, spec: &QuadratureSpec) -> Result<FunctionalTriple> {
    let omega = unit_sphere_area(p.n)?;
    let n = p.dim();
    let left = integrate_radial(
        |r| weighted(curlfree_gradient_norm_sq(u.jet(r), r, p.n), r, n - 1.0 - 2.0 * p.a),
        spec,
    )?;
    let right = integrate_radial(
        |r| {
            let h = u.jet(r).value;
            weighted(h * h, r, n + 1.0 - 2.0 * p.b)
        },
        spec,
    )?;
    let mid = integrate_radial(
        |r| {
            let h = u.jet(r).value;
            weighted(h * h, r, n - (p.a + p.b))
        },
        spec,
    )?;
    Ok(FunctionalTriple::new(omega * left, omega * right, omega * mid))
}

/// Log-radial amplitude v(t) = e^{(2−λ)t} h(eᵗ) of V = r^{1−λ}U and its
/// t-derivative.
pub(crate) fn log_amplitude(u: &VectorProfileRadialAligned, n: u32, a: f64, t: f64) -> (f64, f64) {
    let m = f64::from(n) / 2.0 - a; // 2 − λ
    let r = t.exp();
    let j = u.jet(r);
    if j.value == 0.0 && j.d1 == 0.0 {
        return (0.0, 0.0);
    }
    let scale = (m * t).exp();
    let v = scale * j.value;
    (v, m * v + scale * j.d1 * r)
}

/// Curl-free triple along the log-radial route.
pub fn curlfree_triple_logpath(
    u: &VectorProfileRadialAligned,
    p: ParamPoint,
    spec: &QuadratureSpec,
) -> Result<FunctionalTriple> {
    let omega = unit_sphere_area(p.n)?;
    let n = p.dim();
    let lambda = 2.0 - n / 2.0 + p.a;
    let gap = p.curlfree_gap();
    let coeff = (lambda - 1.0).powi(2) + n - 1.0;
    let left = integrate_log(
        |t| {
            let (v, vt) = log_amplitude(u, p.n, p.a, t);
            coeff * v * v + vt * vt
        },
        spec,
    )?;
    let right = integrate_log(
        |t| {
            let (v, _) = log_amplitude(u, p.n, p.a, t);
            if v == 0.0 {
                0.0
            } else {
                (2.0 * gap * t).exp() * v * v
            }
        },
        spec,
    )?;
    let mid = integrate_log(
        |t| {
            let (v, _) = log_amplitude(u, p.n, p.a, t);
            if v == 0.0 {
                0.0
            } else {
                (gap * t).exp() * v * v
            }
        },
        spec,
    )?;
    Ok(FunctionalTriple::new(omega * left, omega * right, omega * mid))
}
