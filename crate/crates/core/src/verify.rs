//! Verification engine: Rayleigh quotients, expanding-the-square
//! identities, equality-condition residuals, the spherical eigenvalue
//! minimization and one-parameter quotient searches.

use crate::constants::{
    classify_region, curlfree_ckn_constant, scalar_ckn_constant, second_order_constant, ParamPoint,
    RegionLabel,
};
use crate::error::{Error, Result};
use crate::extremizers::{build, decay_check, BuiltProfile, DecayKind, ExtremizerFamily, ExtremizerSpec};
use crate::functionals::{
    curlfree_triple, curlfree_triple_logpath, log_amplitude, scalar_ckn_triple,
    second_order_triple, weighted, FunctionalTriple,
};
use crate::profile::{ScalarProfile, VectorProfileRadialAligned};
use crate::quadrature::{integrate_log, integrate_radial, QuadratureSpec};
use crate::specfun::unit_sphere_area;

/// left·right/mid².
pub fn rayleigh_quotient(tr: &FunctionalTriple) -> Result<f64> {
    if tr.mid == 0.0 || !tr.mid.is_finite() {
        return Err(Error::ZeroMiddle);
    }
    Ok(tr.left * tr.right / (tr.mid * tr.mid))
}

/// Both sides of an expanding-the-square identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticIdentity {
    pub triple: FunctionalTriple,
    /// Integral of the squared combination, computed directly.
    pub lhs: f64,
    /// The same quantity assembled from the triple.
    pub rhs: f64,
    /// |lhs − rhs| / (1 + Σ |terms of rhs|).
    pub residual: f64,
}

/// At the root the squared combination cancels to rounding noise; accept
/// an absolute error of rel_tol times the size of the expanded terms.
fn cancellation_spec(spec: &QuadratureSpec, terms: &[f64; 3], omega: f64) -> QuadratureSpec {
    let scale = terms.iter().map(|x| x.abs()).sum::<f64>() / omega;
    spec.with_error_floor(spec.error_floor.max(spec.rel_tol * scale))
}

impl QuadraticIdentity {
    fn from_terms(triple: FunctionalTriple, lhs: f64, terms: [f64; 3]) -> Self {
        let rhs: f64 = terms.iter().sum();
        let scale = 1.0 + terms.iter().map(|x| x.abs()).sum::<f64>();
        Self {
            triple,
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / scale,
        }
    }
}

/// ∫|Δu/|x|^a + t|x|^{a+1}∂_r u + s|x|^a u|² with s = 2t(N/2 + a) against
/// t²·right − (N+2+4a)t·mid + left.
pub fn quadratic_identity(u: &ScalarProfile, n: u32, a: f64, t: f64, spec: &QuadratureSpec) -> Result<QuadraticIdentity> {
    let triple = second_order_triple(u, n, a, spec)?;
    let nf = f64::from(n);
    let s = 2.0 * t * (nf / 2.0 + a);
    let terms = [
        t * t * triple.right,
        -(nf + 2.0 + 4.0 * a) * t * triple.mid,
        triple.left,
    ];
    let omega = unit_sphere_area(n)?;
    let lhs_spec = cancellation_spec(spec, &terms, omega);
    let lhs = omega
        * integrate_radial(
            |r| {
                let j = u.jet(r);
                let lap = u.laplacian(r, n);
                let combo = weighted(lap, r, -a) + weighted(t * j.d1, r, a + 1.0) + weighted(s * j.value, r, a);
                weighted(combo * combo, r, nf - 1.0)
            },
            &lhs_spec,
        )?;
    Ok(QuadraticIdentity::from_terms(triple, lhs, terms))
}

pub fn quadratic_identity_check(u: &ScalarProfile, n: u32, a: f64, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(quadratic_identity(u, n, a, t, spec)?.residual)
}

/// Value of t²·right − (N+2+4a)t·mid + left.
pub fn second_order_quadratic(tr: &FunctionalTriple, n: u32, a: f64, t: f64) -> f64 {
    t * t * tr.right - (f64::from(n) + 2.0 + 4.0 * a) * t * tr.mid + tr.left
}

/// (N+2+4a)²·mid² − 4·left·right. Nonpositive exactly when the
/// second-order inequality holds for the profile.
pub fn second_order_discriminant(tr: &FunctionalTriple, n: u32, a: f64) -> f64 {
    (f64::from(n) + 2.0 + 4.0 * a).powi(2) * tr.mid * tr.mid - 4.0 * tr.left * tr.right
}

/// Vertex of the quadratic in t: (N+2+4a)/2 · mid/right.
pub fn optimal_t(u: &ScalarProfile, n: u32, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    optimal_t_from_triple(&second_order_triple(u, n, a, spec)?, n, a)
}

pub fn optimal_t_from_triple(tr: &FunctionalTriple, n: u32, a: f64) -> Result<f64> {
    if !(tr.right > 0.0) {
        return Err(Error::Domain("optimal t needs right > 0".into()));
    }
    Ok((f64::from(n) + 2.0 + 4.0 * a) / 2.0 * tr.mid / tr.right)
}

/// 200 log-spaced radii in [1e−2, 1e1].
pub fn default_grid() -> Vec<f64> {
    log_grid(1e-2, 1e1, 200)
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let steps = points.saturating_sub(1).max(1) as f64;
    (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / steps))
        .collect()
}

fn normalized_residual(terms: &[f64]) -> f64 {
    let sum: f64 = terms.iter().sum();
    let scale = terms.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    sum.abs() / (scale + 1e-300)
}

fn max_over_grid(grid: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    grid.iter().map(|&r| f(r)).fold(0.0, |m: f64, x| if x.is_nan() { f64::NAN } else { m.max(x) })
}

/// Pointwise residual of Δu/|x|^a + t|x|^{a+1}∂_r u + s|x|^a u.
pub fn pde_residual(u: &ScalarProfile, n: u32, a: f64, t: f64, grid: &[f64]) -> f64 {
    let s = 2.0 * t * (f64::from(n) / 2.0 + a);
    max_over_grid(grid, |r| {
        let j = u.jet(r);
        normalized_residual(&[
            u.laplacian(r, n) * r.powf(-a),
            t * r.powf(a + 1.0) * j.d1,
            s * r.powf(a) * j.value,
        ])
    })
}

/// Pointwise residual of y″ + [(N−1)/r + t r^{2a+1}]y′ + [λ/r² + s r^{2a}]y
/// with λ = −k(N+k−2).
pub fn ode_residual(u: &ScalarProfile, n: u32, a: f64, t: f64, grid: &[f64]) -> f64 {
    let nf = f64::from(n);
    let s = 2.0 * t * (nf / 2.0 + a);
    let lambda = -u.angular_eigenvalue(n);
    max_over_grid(grid, |r| {
        let j = u.jet(r);
        normalized_residual(&[
            j.d2,
            ((nf - 1.0) / r + t * r.powf(2.0 * a + 1.0)) * j.d1,
            (lambda / (r * r) + s * r.powf(2.0 * a)) * j.value,
        ])
    })
}

/// α in the log-variable equality condition v_t + αv + βe^{(a−b+1)t}v = 0
/// for a field with radial power q: α = −q − (N/2 − a).
pub fn curlfree_alpha(q: f64, p: ParamPoint) -> f64 {
    -q - (p.dim() / 2.0 - p.a)
}

/// Pointwise residual of r h′ + (N/2 − a + α) h + β r^{a−b+1} h, the
/// curl-free equality condition written for U = h(r)x.
pub fn curlfree_equality_residual(
    u: &VectorProfileRadialAligned,
    p: ParamPoint,
    alpha: f64,
    beta: f64,
    grid: &[f64],
) -> f64 {
    let m = p.dim() / 2.0 - p.a;
    let d = p.curlfree_gap();
    max_over_grid(grid, |r| {
        let j = u.jet(r);
        normalized_residual(&[r * j.d1, (m + alpha) * j.value, beta * r.powf(d) * j.value])
    })
}

/// ω∫(v_t + αv + βe^{dt}v)² dt against left + β²·right + β(2α − d)·mid,
/// in log variables with d = a − b + 1.
pub fn curlfree_quadratic_identity(
    u: &VectorProfileRadialAligned,
    p: ParamPoint,
    alpha: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<QuadraticIdentity> {
    let triple = curlfree_triple_logpath(u, p, spec)?;
    let d = p.curlfree_gap();
    // ∫v_t² + α²v² is the log-path left, because (λ−1)² + N − 1 = α² on both branches
    let terms = [triple.left, beta * beta * triple.right, beta * (2.0 * alpha - d) * triple.mid];
    let omega = unit_sphere_area(p.n)?;
    let lhs_spec = cancellation_spec(spec, &terms, omega);
    let lhs = omega
        * integrate_log(
            |t| {
                let (v, vt) = log_amplitude(u, p.n, p.a, t);
                if v == 0.0 && vt == 0.0 {
                    return 0.0;
                }
                let combo = vt + alpha * v + beta * (d * t).exp() * v;
                combo * combo
            },
            &lhs_spec,
        )?;
    Ok(QuadraticIdentity::from_terms(triple, lhs, terms))
}

/// μ² + (λ² − 4λ − 2N + 4)μ with μ = κ(N + κ − 2).
pub fn spherical_quadratic(n: u32, lam: f64, kappa: u32) -> f64 {
    let k = f64::from(kappa);
    let mu = k * (f64::from(n) + k - 2.0);
    mu * mu + (lam * lam - 4.0 * lam - 2.0 * f64::from(n) + 4.0) * mu
}

/// (N − 1)((λ − 2)² − N − 1), the κ = 1 value.
pub fn spherical_closed_form(n: u32, lam: f64) -> f64 {
    let nf = f64::from(n);
    (nf - 1.0) * ((lam - 2.0).powi(2) - nf - 1.0)
}

pub const DEFAULT_K_MAX: u32 = 200;

/// Brute-force minimum of [`spherical_quadratic`] over κ = 1..=K_max.
/// Ties keep the smallest κ.
pub fn spherical_quadratic_min(n: u32, lam: f64, k_max: u32) -> Result<(f64, u32)> {
    if k_max < 10 {
        return Err(Error::Domain(format!("K_max must be at least 10, got {k_max}")));
    }
    let mut best = (spherical_quadratic(n, lam, 1), 1);
    for kappa in 2..=k_max {
        let v = spherical_quadratic(n, lam, kappa);
        if v < best.0 {
            best = (v, kappa);
        }
    }
    if best.1 == k_max {
        return Err(Error::WindowTooSmall { k_max });
    }
    Ok(best)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on [lo, hi] until the bracket is below
/// `rel_width` times its initial width. Returns (x, f(x)).
pub fn golden_section<F>(f: F, lo: f64, hi: f64, rel_width: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty search window [{lo}, {hi}]")));
    }
    let target = rel_width * (hi - lo);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > target {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Golden-section minimization of a quotient over a scalar parameter.
/// Fails when the minimizer runs into a window endpoint whose value lies
/// clearly (1e−9 relative) below the value at the window midpoint; a flat
/// quotient is accepted anywhere.
pub fn minimize_quotient_with<F>(f: F, window: (f64, f64)) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (lo, hi) = window;
    let (x, fx) = golden_section(&f, lo, hi, 1e-6)?;
    let edge = 1e-3 * (hi - lo);
    let at_edge = x - lo <= edge || hi - x <= edge;
    if at_edge {
        let mid = f(0.5 * (lo + hi))?;
        if fx < mid - 1e-9 * mid.abs() {
            return Err(Error::NoInteriorMinimum { at: x });
        }
    }
    Ok((x, fx))
}

/// Minimize the family quotient over β (or t) in `window`; other fields of
/// `template` are kept.
pub fn minimize_quotient_over_beta(
    template: &ExtremizerSpec,
    p: ParamPoint,
    window: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    minimize_quotient_with(
        |beta| {
            let s = ExtremizerSpec {
                beta_or_t: beta,
                ..*template
            };
            family_triple(template.family, &build(&s, p)?, p, spec).and_then(|tr| rayleigh_quotient(&tr))
        },
        window,
    )
}

/// The triple of the inequality a family belongs to.
pub fn family_triple(
    family: ExtremizerFamily,
    profile: &BuiltProfile,
    p: ParamPoint,
    spec: &QuadratureSpec,
) -> Result<FunctionalTriple> {
    let wrong = || Error::Precondition(format!("{family} profile has the wrong field type"));
    if family.is_curlfree() {
        curlfree_triple(profile.as_vector().ok_or_else(wrong)?, p, spec)
    } else if family.is_second_order() {
        second_order_triple(profile.as_scalar().ok_or_else(wrong)?, p.n, p.a, spec)
    } else {
        scalar_ckn_triple(profile.as_scalar().ok_or_else(wrong)?, p, spec)
    }
}

/// Sharp constant C² of the inequality a family belongs to.
pub fn family_sharp_sq(family: ExtremizerFamily, p: ParamPoint) -> Result<f64> {
    if family.is_curlfree() {
        Ok(curlfree_ckn_constant(p)?.powi(2))
    } else if family.is_second_order() {
        Ok(second_order_constant(p.n, p.a))
    } else {
        if classify_region(p) == RegionLabel::Line {
            return Err(Error::Precondition(
                "the best constant is not attained on a = b + 1".into(),
            ));
        }
        Ok(scalar_ckn_constant(p).powi(2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub quotient: f64,
    pub quad: f64,
    pub pde: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quotient: 1e-7,
            quad: 1e-8,
            pde: 1e-7,
            quadrature: QuadratureSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub family: ExtremizerFamily,
    pub params: ParamPoint,
    pub k: u32,
    pub beta_or_t: f64,
    pub quotient: f64,
    pub sharp_constant_sq: f64,
    pub rel_error: f64,
    pub quad_identity_residual: f64,
    pub pde_residual: f64,
    pub decay_ok: bool,
    pub passed: bool,
    /// Set when a stage failed; numeric fields that were not reached are NaN.
    pub error: Option<String>,
}

impl VerificationReport {
    fn empty(spec: &ExtremizerSpec, p: ParamPoint) -> Self {
        Self {
            family: spec.family,
            params: p,
            k: spec.k,
            beta_or_t: spec.beta_or_t,
            quotient: f64::NAN,
            sharp_constant_sq: f64::NAN,
            rel_error: f64::NAN,
            quad_identity_residual: f64::NAN,
            pde_residual: f64::NAN,
            decay_ok: false,
            passed: false,
            error: None,
        }
    }
}

/// Evaluate one extremizer: quotient against C², the expanding-the-square
/// identity, the equality-condition residual and the decay probes.
/// Failures are recorded in the report, never propagated.
pub fn run_verification(spec: &ExtremizerSpec, p: ParamPoint, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::empty(spec, p);
    if let Err(e) = fill_report(&mut report, spec, p, tol) {
        report.error = Some(e.to_string());
        report.passed = false;
        return report;
    }
    report.passed = report.rel_error <= tol.quotient
        && report.quad_identity_residual <= tol.quad
        && report.pde_residual <= tol.pde
        && report.decay_ok;
    report
}

fn fill_report(report: &mut VerificationReport, spec: &ExtremizerSpec, p: ParamPoint, tol: &Tolerances) -> Result<()> {
    let family = spec.family;
    report.sharp_constant_sq = family_sharp_sq(family, p)?;
    if family == ExtremizerFamily::T2Radial {
        let s = f64::from(p.n) + 2.0 + 4.0 * p.a;
        let attained = (p.a + 1.0).min(s) > 0.0 || (p.a + 1.0).max(s) < 0.0;
        if !attained {
            return Err(Error::Precondition(format!(
                "radial attainment needs a + 1 and N + 2 + 4a of one sign (N = {}, a = {})",
                p.n, p.a
            )));
        }
    }
    let profile = build(spec, p)?;
    let qspec = &tol.quadrature;
    let grid = default_grid();
    let triple = family_triple(family, &profile, p, qspec)?;
    report.quotient = rayleigh_quotient(&triple)?;
    report.rel_error = (report.quotient / report.sharp_constant_sq - 1.0).abs();
    report.decay_ok = decay_check(&profile, p, DecayKind::for_family(family)).ok;

    match (family, &profile) {
        (ExtremizerFamily::T1Case1 | ExtremizerFamily::T1Case2, BuiltProfile::Vector(u)) => {
            let case = if family == ExtremizerFamily::T1Case1 {
                crate::extremizers::T1Case::Case1
            } else {
                crate::extremizers::T1Case::Case2
            };
            let q = crate::extremizers::t1_radial(p, spec.beta_or_t, case)?.power;
            let alpha = curlfree_alpha(q, p);
            report.quad_identity_residual =
                curlfree_quadratic_identity(u, p, alpha, spec.beta_or_t, qspec)?.residual;
            report.pde_residual = curlfree_equality_residual(u, p, alpha, spec.beta_or_t, &grid);
        }
        (ExtremizerFamily::T2Radial | ExtremizerFamily::T2Kummer, BuiltProfile::Scalar(u)) => {
            let t = if family == ExtremizerFamily::T2Radial {
                optimal_t_from_triple(&triple, p.n, p.a)?
            } else {
                spec.beta_or_t
            };
            report.quad_identity_residual = quadratic_identity(u, p.n, p.a, t, qspec)?.residual;
            report.pde_residual = pde_residual(u, p.n, p.a, t, &grid);
        }
        (ExtremizerFamily::CcRegionA | ExtremizerFamily::CcRegionB, BuiltProfile::Scalar(u)) => {
            let power = if family == ExtremizerFamily::CcRegionB {
                2.0 * (p.b + 1.0) - p.dim()
            } else {
                0.0
            };
            let t = spec.beta_or_t;
            report.quad_identity_residual = 0.0;
            report.pde_residual = max_over_grid(&grid, |r| {
                let j = u.jet(r);
                normalized_residual(&[j.d1, -power / r * j.value, -t * r.powf(p.b - p.a) * j.value])
            });
        }
        _ => return Err(Error::Precondition(format!("{family} built the wrong field type"))),
    }
    Ok(())
}
