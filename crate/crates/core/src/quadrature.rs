//! Adaptive quadrature on the log-radial line.
//!
//! Every radial integral ∫₀^∞ f(r) dr is computed as ∫ f(eᵗ) eᵗ dt. Power
//! singularities at the origin become exponential tails in t, so one
//! globally adaptive Gauss–Kronrod (7, 15) rule handles all integrands of
//! the form power × stretched exponential × Kummer factor.
//!
//! The integration window is found by scanning t on a fixed grid: the
//! window spans every grid point where |g| ≥ abs_tol · peak, plus one
//! step of margin on each side. If the integrand has not decayed at the
//! initial scan bounds the scan is extended outward (up to |t| = 700,
//! the edge of the double range in r) before giving up.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const SCAN_STEP: f64 = 0.25;
const SCAN_BOUND: f64 = 40.0;
const SCAN_LIMIT: f64 = 700.0;
/// Endpoint value above this fraction of the peak is a hard error.
const TAIL_ERROR_RATIO: f64 = 1e-3;
/// Initial panel width in t.
const PANEL_WIDTH: f64 = 1.0;
const MAX_INTERVALS: usize = 200_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and optional fixed window for one integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_refinements: u32,
    /// Fixed window (t_lo, t_hi) in log-radial coordinates.
    pub window: Option<(f64, f64)>,
    /// Absolute error accepted regardless of the integrand's own scale.
    /// Used when the integral is known to cancel to rounding level.
    pub error_floor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_refinements: 30,
            window: None,
            error_floor: 0.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    pub fn with_error_floor(mut self, floor: f64) -> Self {
        self.error_floor = floor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidQuadratureSpec("rel_tol must be positive".into()));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidQuadratureSpec("abs_tol must be positive".into()));
        }
        if !(self.error_floor >= 0.0) {
            return Err(Error::InvalidQuadratureSpec("error_floor must be nonnegative".into()));
        }
        if self.max_refinements < 5 {
            return Err(Error::InvalidQuadratureSpec(
                "max_refinements must be at least 5".into(),
            ));
        }
        if let Some((lo, hi)) = self.window {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidQuadratureSpec(format!(
                    "window ({lo}, {hi}) is not a finite increasing interval"
                )));
            }
        }
        Ok(())
    }
}

/// ∫₀^∞ f(r) dr, evaluated as ∫ f(eᵗ) eᵗ dt.
pub fn integrate_radial<F>(f: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_log(
        |t| {
            let r = t.exp();
            let v = f(r);
            if v == 0.0 {
                0.0
            } else {
                v * r
            }
        },
        spec,
    )
}

/// ∫_ℝ g(t) dt for an integrand decaying at both ends.
pub fn integrate_log<G>(g: G, spec: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    spec.validate()?;
    let eval = |t: f64| -> Result<f64> {
        let v = g(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { t })
        }
    };
    let window = match spec.window {
        Some((lo, hi)) => fixed_window(&eval, lo, hi)?,
        None => auto_window(&eval, spec.abs_tol)?,
    };
    let Some(window) = window else {
        return Ok(0.0);
    };
    adaptive_gk(&eval, window, spec)
}

#[derive(Debug, Clone, Copy)]
struct Window {
    lo: f64,
    hi: f64,
    peak: f64,
}

fn check_tails(g_lo: f64, g_hi: f64, w: &Window) -> Result<()> {
    for (t, v) in [(w.lo, g_lo), (w.hi, g_hi)] {
        let ratio = v.abs() / w.peak;
        if ratio > TAIL_ERROR_RATIO {
            return Err(Error::NonDecayedTails { t, ratio });
        }
    }
    Ok(())
}

fn fixed_window<G>(eval: &G, lo: f64, hi: f64) -> Result<Option<Window>>
where
    G: Fn(f64) -> Result<f64>,
{
    let steps = ((hi - lo) / SCAN_STEP).ceil().max(1.0) as usize;
    let mut peak = 0.0_f64;
    for i in 0..=steps {
        let t = lo + (hi - lo) * i as f64 / steps as f64;
        peak = peak.max(eval(t)?.abs());
    }
    if peak == 0.0 {
        return Ok(None);
    }
    let w = Window { lo, hi, peak };
    check_tails(eval(lo)?, eval(hi)?, &w)?;
    Ok(Some(w))
}

fn auto_window<G>(eval: &G, abs_tol: f64) -> Result<Option<Window>>
where
    G: Fn(f64) -> Result<f64>,
{
    let n = (2.0 * SCAN_BOUND / SCAN_STEP).round() as i64;
    let mut grid: Vec<(f64, f64)> = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let t = -SCAN_BOUND + i as f64 * SCAN_STEP;
        grid.push((t, eval(t)?));
    }
    let mut peak = grid.iter().fold(0.0_f64, |m, &(_, v)| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(None);
    }

    // extend outward while the ends are above the threshold
    let mut left: Vec<(f64, f64)> = Vec::new();
    let mut t = -SCAN_BOUND;
    let mut last = grid[0].1;
    while last.abs() >= abs_tol * peak && t > -SCAN_LIMIT {
        t -= SCAN_STEP;
        last = eval(t)?;
        peak = peak.max(last.abs());
        left.push((t, last));
    }
    let mut right: Vec<(f64, f64)> = Vec::new();
    let mut t = SCAN_BOUND;
    let mut last = grid[grid.len() - 1].1;
    while last.abs() >= abs_tol * peak && t < SCAN_LIMIT {
        t += SCAN_STEP;
        last = eval(t)?;
        peak = peak.max(last.abs());
        right.push((t, last));
    }
    left.reverse();
    let all: Vec<(f64, f64)> = left.into_iter().chain(grid).chain(right).collect();

    let threshold = abs_tol * peak;
    let first = all.iter().position(|&(_, v)| v.abs() >= threshold).unwrap_or(0);
    let last = all.iter().rposition(|&(_, v)| v.abs() >= threshold).unwrap_or(all.len() - 1);
    let lo_idx = first.saturating_sub(1);
    let hi_idx = (last + 1).min(all.len() - 1);
    let w = Window {
        lo: all[lo_idx].0,
        hi: all[hi_idx].0,
        peak,
    };
    check_tails(all[lo_idx].1, all[hi_idx].1, &w)?;
    Ok(Some(w))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<G>(eval: &G, lo: f64, hi: f64, depth: u32) -> Result<Segment>
where
    G: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        depth,
    })
}

fn adaptive_gk<G>(eval: &G, w: Window, spec: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let panels = ((w.hi - w.lo) / PANEL_WIDTH).ceil().max(1.0) as usize;
    let width = (w.hi - w.lo) / panels as f64;
    let mut heap = BinaryHeap::with_capacity(4 * panels);
    let mut total = 0.0;
    let mut total_err = 0.0;
    for i in 0..panels {
        let lo = w.lo + width * i as f64;
        let hi = if i + 1 == panels { w.hi } else { lo + width };
        let seg = gauss_kronrod(eval, lo, hi, 0)?;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }
    let floor = (spec.abs_tol * w.peak).max(spec.error_floor);
    loop {
        let target = (spec.rel_tol * total.abs()).max(floor);
        if total_err <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= spec.max_refinements || heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNotConverged {
                refinements: worst.depth,
                estimate: total,
                error: total_err,
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gauss_kronrod(eval, worst.lo, mid, worst.depth + 1)?;
        let right = gauss_kronrod(eval, mid, worst.hi, worst.depth + 1)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to drop the drift of the running update
    let sum: f64 = heap.iter().map(|s| s.value).sum();
    Ok(sum)
}
