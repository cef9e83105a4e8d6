//! Extremizer families as analytic profiles, and decay probes for the
//! admissible classes X_{a,b} (curl-free fields) and Y_a (second order).

use std::fmt;
use std::str::FromStr;

use crate::constants::{classify_region, extremizer_exponent, Branch, ParamPoint, RegionLabel};
use crate::error::{Error, Result};
use crate::profile::{Jet, PowerExp, RadialFn, ScalarProfile, VectorProfileRadialAligned};
use crate::specfun::{
    is_nonpositive_integer, kummer_1f1, kummer_1f1_derivative, kummer_1f1_second_derivative,
    KummerParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremizerFamily {
    T1Case1,
    T1Case2,
    T2Radial,
    T2Kummer,
    CcRegionA,
    CcRegionB,
}

impl ExtremizerFamily {
    pub const ALL: [ExtremizerFamily; 6] = [
        ExtremizerFamily::T1Case1,
        ExtremizerFamily::T1Case2,
        ExtremizerFamily::T2Radial,
        ExtremizerFamily::T2Kummer,
        ExtremizerFamily::CcRegionA,
        ExtremizerFamily::CcRegionB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExtremizerFamily::T1Case1 => "T1_CASE1",
            ExtremizerFamily::T1Case2 => "T1_CASE2",
            ExtremizerFamily::T2Radial => "T2_RADIAL",
            ExtremizerFamily::T2Kummer => "T2_KUMMER",
            ExtremizerFamily::CcRegionA => "CC_REGION_A",
            ExtremizerFamily::CcRegionB => "CC_REGION_B",
        }
    }

    pub fn is_curlfree(self) -> bool {
        matches!(self, ExtremizerFamily::T1Case1 | ExtremizerFamily::T1Case2)
    }

    pub fn is_second_order(self) -> bool {
        matches!(self, ExtremizerFamily::T2Radial | ExtremizerFamily::T2Kummer)
    }

    /// Whether the weight exponent b enters the inequality.
    pub fn uses_b(self) -> bool {
        !self.is_second_order()
    }
}

impl fmt::Display for ExtremizerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtremizerFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtremizerFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown extremizer family {s:?}")))
    }
}

/// One member of an extremizer family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremizerSpec {
    pub family: ExtremizerFamily,
    pub gamma: f64,
    /// β for the Theorem-1 and radial families, t for Kummer and
    /// Catrina–Costa profiles.
    pub beta_or_t: f64,
    /// Harmonic degree (Kummer family only).
    pub k: u32,
}

impl ExtremizerSpec {
    pub fn new(family: ExtremizerFamily, beta_or_t: f64) -> Self {
        Self {
            family,
            gamma: 1.0,
            beta_or_t,
            k: 0,
        }
    }

    pub fn with_degree(mut self, k: u32) -> Self {
        self.k = k;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T1Case {
    /// a − b + 1 > 0, β > 0, + branch.
    Case1,
    /// a − b + 1 < 0, β < 0, − branch.
    Case2,
}

#[derive(Debug, Clone)]
pub enum BuiltProfile {
    Scalar(ScalarProfile),
    Vector(VectorProfileRadialAligned),
}

impl BuiltProfile {
    pub fn as_scalar(&self) -> Option<&ScalarProfile> {
        match self {
            BuiltProfile::Scalar(u) => Some(u),
            BuiltProfile::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&VectorProfileRadialAligned> {
        match self {
            BuiltProfile::Vector(u) => Some(u),
            BuiltProfile::Scalar(_) => None,
        }
    }
}

/// Theorem-1 radial factor h(r) = r^q exp(−β/(a−b+1) r^{a−b+1}).
pub fn t1_radial(p: ParamPoint, beta: f64, case: T1Case) -> Result<PowerExp> {
    p.require_dim(2)?;
    let gap = p.curlfree_gap();
    let branch = match case {
        T1Case::Case1 => {
            if !(gap > 0.0 && beta > 0.0) {
                return Err(Error::Precondition(format!(
                    "case 1 needs a - b + 1 > 0 and beta > 0 (a - b + 1 = {gap}, beta = {beta})"
                )));
            }
            Branch::Plus
        }
        T1Case::Case2 => {
            if !(gap < 0.0 && beta < 0.0) {
                return Err(Error::Precondition(format!(
                    "case 2 needs a - b + 1 < 0 and beta < 0 (a - b + 1 = {gap}, beta = {beta})"
                )));
            }
            Branch::Minus
        }
    };
    let q = extremizer_exponent(p.n, p.a, branch)?;
    Ok(PowerExp::new(1.0, q, beta / gap, gap))
}

pub fn build_t1(p: ParamPoint, beta: f64, case: T1Case) -> Result<VectorProfileRadialAligned> {
    Ok(VectorProfileRadialAligned::new(t1_radial(p, beta, case)?))
}

/// Radial second-order extremizer exp(−β r^{2(1+a)}), β > 0.
pub fn build_t2_radial(n: u32, a: f64, beta: f64) -> Result<ScalarProfile> {
    if n < 1 {
        return Err(Error::Domain("N >= 1 required".into()));
    }
    if a == -1.0 {
        return Err(Error::Precondition("a = -1 gives a constant profile".into()));
    }
    if !(beta > 0.0) {
        return Err(Error::Precondition(format!(
            "radial extremizer needs beta > 0 for decay, got {beta}"
        )));
    }
    Ok(ScalarProfile::new(PowerExp::new(1.0, 0.0, beta, 2.0 * (1.0 + a)), 0))
}

/// r^α ₁F₁(A; B; c r^m) with m = 2a + 2 and c = −t/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerRadial {
    pub alpha: f64,
    pub m: f64,
    pub c: f64,
    pub kummer_a: f64,
    pub kummer_b: f64,
}

impl KummerRadial {
    /// Parameter map for degree k and PDE coefficient t, using the root
    /// α = (2 − N + sgn(a+1) √((N−2)² + 4k(N+k−2))) / 2.
    pub fn new(n: u32, a: f64, k: u32, t: f64) -> Result<Self> {
        if a == -1.0 {
            return Err(Error::Precondition("a = -1 is excluded".into()));
        }
        let nf = f64::from(n);
        let kf = f64::from(k);
        let lambda = -kf * (nf + kf - 2.0);
        let alpha = (2.0 - nf + (a + 1.0).signum() * ((nf - 2.0).powi(2) - 4.0 * lambda).sqrt()) / 2.0;
        let m = 2.0 * a + 2.0;
        let kummer_a = (alpha + nf + 2.0 * a) / m;
        let kummer_b = (2.0 * alpha + 2.0 * a + nf) / m;
        if is_nonpositive_integer(kummer_b) {
            return Err(Error::Domain(format!(
                "Kummer parameter B = {kummer_b} is a nonpositive integer"
            )));
        }
        Ok(Self {
            alpha,
            m,
            c: -t / m,
            kummer_a,
            kummer_b,
        })
    }

    fn try_jet(&self, r: f64) -> Result<Jet> {
        let z = self.c * r.powf(self.m);
        let p = KummerParams::new(self.kummer_a, self.kummer_b, z);
        let w0 = kummer_1f1(p)?;
        let w1 = kummer_1f1_derivative(p)?;
        let w2 = kummer_1f1_second_derivative(p)?;
        let (al, m) = (self.alpha, self.m);
        let ra = r.powf(al);
        // c m r^{α+m−1} = m z r^{α−1}, c² m² r^{α+2m−2} = m² z² r^{α−2}
        let value = ra * w0;
        let d1 = ra / r * (al * w0 + m * z * w1);
        let d2 = ra / (r * r) * (al * (al - 1.0) * w0 + (2.0 * al + m - 1.0) * m * z * w1 + m * m * z * z * w2);
        Ok(Jet::new(value, d1, d2))
    }
}

impl KummerRadial {
    fn try_laplacian(&self, r: f64, n: u32, ck: f64) -> Result<f64> {
        let z = self.c * r.powf(self.m);
        let p = KummerParams::new(self.kummer_a, self.kummer_b, z);
        let w0 = kummer_1f1(p)?;
        let w1 = kummer_1f1_derivative(p)?;
        let w2 = kummer_1f1_second_derivative(p)?;
        let (al, m, nf) = (self.alpha, self.m, f64::from(n));
        // α² + (N−2)α − c_k is zero for the matching degree
        let harmonic = al * al + (nf - 2.0) * al - ck;
        let bracket = harmonic * w0 + (2.0 * al + m + nf - 2.0) * m * z * w1 + m * m * z * z * w2;
        Ok(r.powf(al) / (r * r) * bracket)
    }
}

impl RadialFn for KummerRadial {
    fn jet(&self, r: f64) -> Jet {
        // evaluation failures surface as non-finite integrands downstream
        self.try_jet(r)
            .unwrap_or(Jet::new(f64::NAN, f64::NAN, f64::NAN))
    }

    fn laplacian(&self, r: f64, n: u32, ck: f64) -> f64 {
        self.try_laplacian(r, n, ck).unwrap_or(f64::NAN)
    }
}

/// Nonradial second-order extremizer r^α ₁F₁(A; B; −t/(2a+2) r^{2a+2}) Y_k.
pub fn build_t2_kummer(n: u32, a: f64, k: u32, t: f64) -> Result<ScalarProfile> {
    if n < 2 {
        return Err(Error::Precondition("nonradial extremizers need N >= 2".into()));
    }
    if k < 1 {
        return Err(Error::Precondition("nonradial extremizers need k >= 1".into()));
    }
    let nf = f64::from(n);
    if !(a + 1.0 > 0.0 || nf + 2.0 * a < 0.0) {
        return Err(Error::Precondition(format!(
            "need a + 1 > 0 or N + 2a < 0 (N = {n}, a = {a})"
        )));
    }
    if a == -1.0 || !(t / (2.0 * a + 2.0) > 0.0) {
        return Err(Error::Precondition(format!("need t / (2a + 2) > 0, got t = {t}, a = {a}")));
    }
    let s = nf + 2.0 + 4.0 * a;
    if t.signum() != s.signum() || s == 0.0 {
        return Err(Error::Precondition(format!(
            "root sign condition sgn t = sgn(N + 2 + 4a) fails (t = {t}, N + 2 + 4a = {s})"
        )));
    }
    Ok(ScalarProfile::new(KummerRadial::new(n, a, k, t)?, k))
}

/// Catrina–Costa extremizer: exp(t r^d / d) in 𝒜 and
/// r^{2(b+1)−N} exp(t r^d / d) in ℬ, with d = b + 1 − a.
pub fn build_cc(p: ParamPoint, t: f64) -> Result<ScalarProfile> {
    let region = classify_region(p);
    let sign_ok = match region {
        RegionLabel::Line => {
            return Err(Error::Precondition(
                "the best constant is not attained on a = b + 1".into(),
            ))
        }
        RegionLabel::A1 | RegionLabel::B2 => t < 0.0,
        RegionLabel::A2 | RegionLabel::B1 => t > 0.0,
    };
    if !sign_ok {
        return Err(Error::Precondition(format!("wrong sign of t = {t} in region {region}")));
    }
    let d = p.b + 1.0 - p.a;
    let power = if region.is_region_b() {
        2.0 * (p.b + 1.0) - p.dim()
    } else {
        0.0
    };
    Ok(ScalarProfile::new(PowerExp::new(1.0, power, -t / d, d), 0))
}

/// Build the profile described by `spec` at `p`, scaled by γ.
pub fn build(spec: &ExtremizerSpec, p: ParamPoint) -> Result<BuiltProfile> {
    let x = spec.beta_or_t;
    let built = match spec.family {
        ExtremizerFamily::T1Case1 => BuiltProfile::Vector(build_t1(p, x, T1Case::Case1)?),
        ExtremizerFamily::T1Case2 => BuiltProfile::Vector(build_t1(p, x, T1Case::Case2)?),
        ExtremizerFamily::T2Radial => BuiltProfile::Scalar(build_t2_radial(p.n, p.a, x)?),
        ExtremizerFamily::T2Kummer => BuiltProfile::Scalar(build_t2_kummer(p.n, p.a, spec.k, x)?),
        ExtremizerFamily::CcRegionA | ExtremizerFamily::CcRegionB => {
            let region = classify_region(p);
            let want_a = spec.family == ExtremizerFamily::CcRegionA;
            if region != RegionLabel::Line && region.is_region_a() != want_a {
                return Err(Error::Precondition(format!(
                    "{} does not apply in region {region}",
                    spec.family
                )));
            }
            BuiltProfile::Scalar(build_cc(p, x)?)
        }
    };
    if spec.gamma == 1.0 {
        return Ok(built);
    }
    Ok(match built {
        BuiltProfile::Scalar(u) => BuiltProfile::Scalar(u.scaled(spec.gamma)),
        BuiltProfile::Vector(u) => BuiltProfile::Vector(u.scaled(spec.gamma)),
    })
}

/// Which admissible class a decay probe targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayKind {
    /// Curl-free class: |x|^{−1+N/2−a}|U| and |x|^{−b+N/2}|U| → 0.
    Xab,
    /// Second-order class: |x|^{N−1}|u|², |x|^N|∂_r u|², |x|^{2a+N}|u|² → 0.
    Ya,
    /// Scalar CKN boundary term |x|^{N−1−a−b}|u|² → 0.
    Ckn,
}

impl DecayKind {
    pub fn for_family(family: ExtremizerFamily) -> Self {
        if family.is_curlfree() {
            DecayKind::Xab
        } else if family.is_second_order() {
            DecayKind::Ya
        } else {
            DecayKind::Ckn
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

pub const DECAY_PROBES_NEAR_ZERO: [f64; 2] = [1e-4, 1e-6];
pub const DECAY_PROBES_NEAR_INFINITY: [f64; 2] = [1e4, 1e6];
/// Far probe must fall below this fraction of the value at r = 1 ...
const DECAY_FLOOR: f64 = 1e-8;
/// ... or shrink at least by this factor over the last two decades.
const DECAY_MIN_CONTRACTION: f64 = 0.316;

/// Probe the limit expressions of the class at r ∈ {1e−6, 1e−4, 1e4, 1e6}.
/// An expression passes at an end when it decreases toward that end and its
/// far value is below 1e−8 of its value at r = 1, or keeps contracting at
/// a power-law rate (at least half a decade over two decades of r).
pub fn decay_check(profile: &BuiltProfile, p: ParamPoint, kind: DecayKind) -> DecayReport {
    type Expr<'a> = (&'static str, Box<dyn Fn(f64) -> f64 + 'a>);
    let n = p.dim();
    let exprs: Vec<Expr> = match (kind, profile) {
        (DecayKind::Xab, BuiltProfile::Vector(u)) => vec![
            ("|x|^(-1+N/2-a)|U|", Box::new(move |r: f64| r.powf(-1.0 + n / 2.0 - p.a) * (u.jet(r).value * r).abs())),
            ("|x|^(-b+N/2)|U|", Box::new(move |r: f64| r.powf(-p.b + n / 2.0) * (u.jet(r).value * r).abs())),
        ],
        (DecayKind::Ya, BuiltProfile::Scalar(u)) => vec![
            ("|x|^(N-1)|u|^2", Box::new(move |r: f64| r.powf(n - 1.0) * u.value(r).powi(2))),
            ("|x|^N|d_r u|^2", Box::new(move |r: f64| r.powf(n) * u.jet(r).d1.powi(2))),
            ("|x|^(2a+N)|u|^2", Box::new(move |r: f64| r.powf(2.0 * p.a + n) * u.value(r).powi(2))),
        ],
        (DecayKind::Ckn, BuiltProfile::Scalar(u)) => vec![(
            "|x|^(N-1-a-b)|u|^2",
            Box::new(move |r: f64| r.powf(n - 1.0 - p.a - p.b) * u.value(r).powi(2)),
        )],
        _ => {
            return DecayReport {
                ok: false,
                diagnostics: vec![format!("{kind:?} does not apply to this profile type")],
            }
        }
    };

    let mut diagnostics = Vec::new();
    for (name, e) in &exprs {
        let at_one = e(1.0).abs();
        for (end, probes) in [("0", DECAY_PROBES_NEAR_ZERO), ("inf", DECAY_PROBES_NEAR_INFINITY)] {
            let near = e(probes[0]).abs();
            let far = e(probes[1]).abs();
            if !(near.is_finite() && far.is_finite() && at_one.is_finite()) {
                diagnostics.push(format!("{name} at {end}: non-finite probe values"));
                continue;
            }
            let reference = at_one.max(near);
            if reference == 0.0 {
                continue;
            }
            let decreasing = far <= near && near <= reference;
            let small = far <= DECAY_FLOOR * reference;
            let contracting = far <= DECAY_MIN_CONTRACTION * near;
            if !(decreasing && (small || contracting)) {
                diagnostics.push(format!(
                    "{name} does not vanish at {end}: r=1 -> {at_one:e}, probes {near:e}, {far:e}"
                ));
            }
        }
    }
    DecayReport {
        ok: diagnostics.is_empty(),
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::derivative_mismatch;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn family_names_round_trip() {
        for f in ExtremizerFamily::ALL {
            assert_eq!(f.name().parse::<ExtremizerFamily>().unwrap(), f);
        }
        assert!("T3".parse::<ExtremizerFamily>().is_err());
    }

    #[test]
    fn t1_examples() {
        let h = t1_radial(ParamPoint::new(5, 0.0, -1.0), 1.0, T1Case::Case1).unwrap();
        for &r in &[0.3f64, 1.0, 2.2] {
            assert!(close(h.jet(r).value, (-r * r / 2.0).exp(), 1e-15));
        }
        let h = t1_radial(ParamPoint::new(5, 0.0, 0.0), 1.0, T1Case::Case1).unwrap();
        assert!(close(h.jet(1.7).value, (-1.7f64).exp(), 1e-15));
        let h = t1_radial(ParamPoint::new(5, 0.0, 2.0), -1.0, T1Case::Case2).unwrap();
        for &r in &[0.3f64, 1.0, 2.2] {
            let expect = r.powi(-5) * (-1.0 / r).exp();
            assert!((h.jet(r).value - expect).abs() <= 1e-13 * expect);
        }
    }

    #[test]
    fn t1_sign_violations() {
        let p = ParamPoint::new(5, 0.0, -1.0);
        assert!(build_t1(p, -1.0, T1Case::Case1).is_err());
        assert!(build_t1(p, 1.0, T1Case::Case2).is_err());
        assert!(build_t1(ParamPoint::new(5, 0.0, 2.0), 1.0, T1Case::Case2).is_err());
    }

    #[test]
    fn t1_cases_flip_branch_and_beta() {
        let c1 = t1_radial(ParamPoint::new(6, 0.5, -0.5), 1.5, T1Case::Case1).unwrap();
        let c2 = t1_radial(ParamPoint::new(6, 0.5, 2.5), -1.5, T1Case::Case2).unwrap();
        let rad = ((1.0 - 3.0 + 0.5f64).powi(2) + 5.0).sqrt();
        assert!(close(c1.power, -3.0 + 0.5 + rad, 1e-15));
        assert!(close(c2.power, -3.0 + 0.5 - rad, 1e-15));
        // rate β/(a−b+1) stays positive in both cases
        assert!(c1.rate > 0.0 && c2.rate > 0.0);
        assert!(c1.exponent > 0.0 && c2.exponent < 0.0);
    }

    #[test]
    fn t2_radial_examples() {
        let u = build_t2_radial(3, 0.0, 1.0).unwrap();
        assert!(close(u.value(1.3), (-1.69f64).exp(), 1e-15));
        assert!(build_t2_radial(3, -2.0, -1.0).is_err());
        let u = build_t2_radial(5, 0.5, 2.0).unwrap();
        let r = 0.8f64;
        let e = (-2.0 * r.powi(3)).exp();
        assert!(close(u.value(r), e, 1e-15));
        assert!(close(u.jet(r).d1, -6.0 * r * r * e, 1e-14));
    }

    #[test]
    fn kummer_parameter_map() {
        let kr = KummerRadial::new(3, 0.0, 1, 2.0).unwrap();
        assert_eq!(kr.alpha, 1.0);
        assert_eq!(kr.kummer_a, 2.0);
        assert_eq!(kr.kummer_b, 2.5);
        assert_eq!(kr.c, -1.0);
        let r = 1.1f64;
        let expect = r * kummer_1f1(KummerParams::new(2.0, 2.5, -r * r)).unwrap();
        assert!(close(kr.jet(r).value, expect, 1e-15));
    }

    #[test]
    fn kummer_degree_zero_recovers_radial() {
        for &(n, a, t) in &[(3u32, 0.0, 2.0), (4, 0.5, 1.5), (5, 1.0, 0.7)] {
            let kr = KummerRadial::new(n, a, 0, t).unwrap();
            assert_eq!(kr.alpha, 0.0);
            assert_eq!(kr.kummer_a, kr.kummer_b);
            let m = 2.0 * a + 2.0;
            for &r in &[0.2f64, 0.9, 1.7] {
                let expect = (-t / m * r.powf(m)).exp();
                assert!(close(kr.jet(r).value, expect, 1e-12));
            }
        }
    }

    #[test]
    fn kummer_laplacian_matches_jet_formula() {
        let u = build_t2_kummer(4, 0.5, 2, 1.5).unwrap();
        for &r in &[0.1, 0.6, 1.4, 3.0] {
            let j = u.jet(r);
            let generic = j.d2 + 3.0 * j.d1 / r - 8.0 * j.value / (r * r);
            assert!((u.laplacian(r, 4) - generic).abs() <= 1e-10 * (1.0 + generic.abs()));
        }
    }

    #[test]
    fn kummer_preconditions() {
        assert!(build_t2_kummer(3, 0.0, 1, -2.0).is_err());
        assert!(build_t2_kummer(3, 0.0, 0, 2.0).is_err());
        assert!(build_t2_kummer(1, 0.0, 1, 2.0).is_err());
        assert!(build_t2_kummer(3, -1.0, 1, 2.0).is_err());
        // gap: a + 1 < 0 but N + 2a >= 0
        assert!(build_t2_kummer(3, -1.2, 1, -2.0).is_err());
        assert!(build_t2_kummer(3, 0.0, 1, 2.0).is_ok());
    }

    #[test]
    fn kummer_tail_follows_asymptotic() {
        // for a + 1 > 0, f ~ r^α Γ(B)/Γ(B−A) (t r^m / m)^{−A}
        use crate::specfun::kummer_asymptotic_negative;
        for &(n, a, k, t) in &[(3u32, 0.0, 1u32, 2.0), (5, 0.5, 2, 1.0), (4, 0.0, 2, 3.0)] {
            let kr = KummerRadial::new(n, a, k, t).unwrap();
            let r = 30.0f64;
            let z = kr.c * r.powf(kr.m);
            let lead = kummer_asymptotic_negative(KummerParams::new(kr.kummer_a, kr.kummer_b, z)).unwrap();
            let ratio = kr.jet(r).value / (r.powf(kr.alpha) * lead);
            assert!((ratio - 1.0).abs() < 0.05, "{n} {a} {k}: {ratio}");
        }
    }

    #[test]
    fn cc_examples() {
        let u = build_cc(ParamPoint::new(3, -1.0, 0.0), -2.0).unwrap();
        for i in 0..50 {
            let r = 0.05 + 0.1 * f64::from(i);
            assert!((u.value(r) - (-r * r).exp()).abs() <= 1e-14);
        }
        let u = build_cc(ParamPoint::new(3, 0.0, 0.0), -1.0).unwrap();
        assert!(close(u.value(2.0), (-2f64).exp(), 1e-15));
        assert!(build_cc(ParamPoint::new(3, 1.0, 0.0), -1.0).is_err());
        assert!(build_cc(ParamPoint::new(3, 1.0, 0.0), 1.0).is_err());
        assert!(build_cc(ParamPoint::new(3, -1.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn built_profiles_have_consistent_derivatives() {
        let cases: Vec<(ExtremizerSpec, ParamPoint)> = vec![
            (ExtremizerSpec::new(ExtremizerFamily::T1Case1, 1.0), ParamPoint::new(5, 0.0, -1.0)),
            (ExtremizerSpec::new(ExtremizerFamily::T1Case2, -1.0), ParamPoint::new(5, 0.0, 2.0)),
            (ExtremizerSpec::new(ExtremizerFamily::T2Radial, 1.0), ParamPoint::new(3, 0.5, 0.0)),
            (ExtremizerSpec::new(ExtremizerFamily::T2Kummer, 2.0).with_degree(1), ParamPoint::new(3, 0.0, 0.0)),
            (ExtremizerSpec::new(ExtremizerFamily::T2Kummer, 1.0).with_degree(2), ParamPoint::new(5, 0.5, 0.0)),
            (ExtremizerSpec::new(ExtremizerFamily::CcRegionA, -1.0), ParamPoint::new(3, 0.0, 0.0)),
            (ExtremizerSpec::new(ExtremizerFamily::CcRegionB, 1.0), ParamPoint::new(4, 3.0, 0.0)),
        ];
        for (spec, p) in cases {
            let built = build(&spec, p).unwrap();
            let mismatch = match &built {
                BuiltProfile::Scalar(u) => derivative_mismatch(&|r: f64| u.jet(r), 0.05, 5.0, 200),
                BuiltProfile::Vector(u) => derivative_mismatch(&|r: f64| u.jet(r), 0.05, 5.0, 200),
            };
            assert!(mismatch <= 1e-6, "{}: {mismatch:e}", spec.family);
        }
    }

    #[test]
    fn decay_examples() {
        let p = ParamPoint::new(5, 0.0, -1.0);
        let u = build(&ExtremizerSpec::new(ExtremizerFamily::T1Case1, 1.0), p).unwrap();
        assert!(decay_check(&u, p, DecayKind::Xab).ok);

        let one = BuiltProfile::Scalar(ScalarProfile::new(|_r: f64| Jet::new(1.0, 0.0, 0.0), 0));
        let r = decay_check(&one, ParamPoint::new(3, 0.0, 0.0), DecayKind::Ya);
        assert!(!r.ok);
        assert!(!r.diagnostics.is_empty());

        let p = ParamPoint::new(5, 0.0, 0.0);
        let k = build(&ExtremizerSpec::new(ExtremizerFamily::T2Kummer, 2.0).with_degree(1), p).unwrap();
        assert!(decay_check(&k, p, DecayKind::Ya).ok);

        // mismatched kind
        assert!(!decay_check(&k, p, DecayKind::Xab).ok);
    }
}
