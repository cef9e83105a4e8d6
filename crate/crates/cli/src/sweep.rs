//! Grid expansion, applicability filtering and the parallel run.

use std::cmp::Ordering;

use anyhow::{bail, Context, Result};
use ckn_core::constants::{classify_region, ParamPoint, RegionLabel};
use ckn_core::{run_verification, ExtremizerFamily, ExtremizerSpec, Tolerances, VerificationReport};
use rayon::prelude::*;

use crate::config::SweepConfig;

pub const THREADS_ENV: &str = "CKN_VERIFY_THREADS";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub spec: ExtremizerSpec,
    pub params: ParamPoint,
}

/// Sign of β or t the family needs at `p`, or `None` when the family does
/// not apply there.
pub fn family_sign(family: ExtremizerFamily, p: ParamPoint, k: u32) -> Option<f64> {
    let n = p.dim();
    match family {
        ExtremizerFamily::T1Case1 => (p.n >= 2 && p.curlfree_gap() > 0.0).then_some(1.0),
        ExtremizerFamily::T1Case2 => (p.n >= 2 && p.curlfree_gap() < 0.0).then_some(-1.0),
        ExtremizerFamily::T2Radial => {
            let s = n + 2.0 + 4.0 * p.a;
            let attained = (p.a + 1.0).min(s) > 0.0 || (p.a + 1.0).max(s) < 0.0;
            attained.then_some(1.0)
        }
        ExtremizerFamily::T2Kummer => {
            let s = n + 2.0 + 4.0 * p.a;
            let m = 2.0 * p.a + 2.0;
            let shape_ok = p.a + 1.0 > 0.0 || n + 2.0 * p.a < 0.0;
            let sign_ok = s != 0.0 && m != 0.0 && s.signum() == m.signum();
            (p.n >= 2 && k >= 1 && shape_ok && sign_ok).then(|| s.signum())
        }
        ExtremizerFamily::CcRegionA | ExtremizerFamily::CcRegionB => {
            let region = classify_region(p);
            let want_a = family == ExtremizerFamily::CcRegionA;
            if region == RegionLabel::Line || region.is_region_a() != want_a {
                return None;
            }
            Some(if matches!(region, RegionLabel::A1 | RegionLabel::B2) { -1.0 } else { 1.0 })
        }
    }
}

/// Sign used when an inapplicable row is kept on request.
fn fallback_sign(family: ExtremizerFamily) -> f64 {
    match family {
        ExtremizerFamily::T1Case2 => -1.0,
        _ => 1.0,
    }
}

/// Expand the grid. Returns the jobs and the number of skipped points.
pub fn plan(cfg: &SweepConfig) -> (Vec<Job>, usize) {
    let mut jobs = Vec::new();
    let mut skipped = 0;
    for &family in &cfg.families {
        let bs: Vec<f64> = if family.uses_b() { cfg.b.clone() } else { vec![0.0] };
        let ks: Vec<u32> = if family == ExtremizerFamily::T2Kummer { cfg.degrees.clone() } else { vec![0] };
        for &n in &cfg.dims {
            for &a in &cfg.a {
                for &b in &bs {
                    for &k in &ks {
                        let p = ParamPoint::new(n, a, b);
                        let sign = match family_sign(family, p, k) {
                            Some(s) => s,
                            None if cfg.skip_inapplicable => {
                                skipped += 1;
                                continue;
                            }
                            None => fallback_sign(family),
                        };
                        let spec = ExtremizerSpec::new(family, sign * cfg.beta)
                            .with_degree(k)
                            .with_gamma(cfg.gamma);
                        jobs.push(Job { spec, params: p });
                    }
                }
            }
        }
    }
    (jobs, skipped)
}

fn row_order(x: &VerificationReport, y: &VerificationReport) -> Ordering {
    x.family
        .cmp(&y.family)
        .then(x.params.n.cmp(&y.params.n))
        .then(x.params.a.total_cmp(&y.params.a))
        .then(x.params.b.total_cmp(&y.params.b))
        .then(x.k.cmp(&y.k))
}

pub fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
            if n == 0 {
                bail!("{THREADS_ENV} must be at least 1");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

/// Run every job and return reports sorted by (family, N, a, b, k).
pub fn run(jobs: &[Job], tol: &Tolerances) -> Result<Vec<VerificationReport>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("cannot start worker pool")?;
    let mut reports: Vec<VerificationReport> =
        pool.install(|| jobs.par_iter().map(|j| run_verification(&j.spec, j.params, tol)).collect());
    reports.sort_by(row_order);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SweepConfig {
        SweepConfig::parse(text).unwrap()
    }

    #[test]
    fn t1_cases_follow_the_gap_sign() {
        let (jobs, skipped) = plan(&cfg("dims=5\na=0\nb=-1,1,2\nfamilies=T1_CASE1,T1_CASE2"));
        // b = 1 gives a − b + 1 = 0 and is skipped for both cases
        assert_eq!(jobs.len(), 2);
        assert_eq!(skipped, 4);
        assert_eq!(jobs[0].spec.family, ExtremizerFamily::T1Case1);
        assert_eq!(jobs[0].spec.beta_or_t, 1.0);
        assert_eq!(jobs[1].spec.family, ExtremizerFamily::T1Case2);
        assert_eq!(jobs[1].spec.beta_or_t, -1.0);
    }

    #[test]
    fn second_order_rows_ignore_b() {
        let (jobs, _) = plan(&cfg("dims=3\na=0\nb=0,1,2\nfamilies=T2_RADIAL,T2_KUMMER\nk=1,2\nbeta=2"));
        assert_eq!(jobs.len(), 3);
        assert!(jobs.iter().all(|j| j.spec.beta_or_t == 2.0));
    }

    #[test]
    fn second_order_gap_is_skipped() {
        // a + 1 > 0 but N + 2 + 4a < 0
        assert_eq!(family_sign(ExtremizerFamily::T2Radial, ParamPoint::new(1, -0.9, 0.0), 0), None);
        assert_eq!(family_sign(ExtremizerFamily::T2Radial, ParamPoint::new(2, -0.5, 0.0), 0), Some(1.0));
        // N + 2a < 0 with a + 1 < 0: both signs negative
        assert_eq!(family_sign(ExtremizerFamily::T2Kummer, ParamPoint::new(2, -2.0, 0.0), 1), Some(-1.0));
    }

    #[test]
    fn catrina_costa_regions() {
        assert_eq!(family_sign(ExtremizerFamily::CcRegionA, ParamPoint::new(3, -1.0, 0.0), 0), Some(-1.0));
        assert_eq!(family_sign(ExtremizerFamily::CcRegionB, ParamPoint::new(3, -1.0, 0.0), 0), None);
        assert_eq!(family_sign(ExtremizerFamily::CcRegionA, ParamPoint::new(3, 1.0, 0.0), 0), None);
        assert_eq!(family_sign(ExtremizerFamily::CcRegionB, ParamPoint::new(4, 3.0, 0.0), 0), Some(1.0));
    }

    #[test]
    fn kept_inapplicable_rows_fail() {
        let c = cfg("dims=3\na=1\nb=0\nfamilies=CC_REGION_A\nskip_inapplicable=false");
        let (jobs, skipped) = plan(&c);
        assert_eq!((jobs.len(), skipped), (1, 0));
        let reports = run(&jobs, &c.tolerances).unwrap();
        assert!(!reports[0].passed);
        assert!(reports[0].error.is_some());
    }
}
