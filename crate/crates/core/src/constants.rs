//! Closed-form sharp constants, Catrina–Costa region classification,
//! curl-free admissibility and a table of literature constants.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for detecting the line a = b + 1.
pub const LINE_TOLERANCE: f64 = 1e-12;

/// Inequality parameters: dimension N and the two weight exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

impl ParamPoint {
    pub fn new(n: u32, a: f64, b: f64) -> Self {
        Self { n, a, b }
    }

    pub fn dim(&self) -> f64 {
        f64::from(self.n)
    }

    /// a − b + 1, the exponent that selects the curl-free case.
    pub fn curlfree_gap(&self) -> f64 {
        self.a - self.b + 1.0
    }

    pub(crate) fn require_dim(&self, min: u32) -> Result<()> {
        if self.n < min {
            return Err(Error::Domain(format!("N = {} but N >= {min} is required", self.n)));
        }
        Ok(())
    }
}

/// Catrina–Costa parameter regions; `Line` is a = b + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    A1,
    A2,
    B1,
    B2,
    Line,
}

impl RegionLabel {
    pub fn is_region_a(self) -> bool {
        matches!(self, RegionLabel::A1 | RegionLabel::A2)
    }

    pub fn is_region_b(self) -> bool {
        matches!(self, RegionLabel::B1 | RegionLabel::B2)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionLabel::A1 => "A1",
            RegionLabel::A2 => "A2",
            RegionLabel::B1 => "B1",
            RegionLabel::B2 => "B2",
            RegionLabel::Line => "LINE",
        };
        f.write_str(s)
    }
}

/// Region of (N, a, b). The line a = b + 1 takes precedence; the
/// interface b = (N−2)/2 belongs to the closed 𝒜 regions.
pub fn classify_region(p: ParamPoint) -> RegionLabel {
    let d = p.b + 1.0 - p.a;
    if d.abs() <= LINE_TOLERANCE {
        return RegionLabel::Line;
    }
    let mid = (p.dim() - 2.0) / 2.0;
    match (d > 0.0, p.b <= mid, p.b >= mid) {
        (true, true, _) => RegionLabel::A1,
        (true, false, _) => RegionLabel::B2,
        (false, _, true) => RegionLabel::A2,
        (false, _, false) => RegionLabel::B1,
    }
}

/// Sharp constant C (not C²) of the scalar CKN inequality.
pub fn scalar_ckn_constant(p: ParamPoint) -> f64 {
    let n = p.dim();
    match classify_region(p) {
        RegionLabel::Line => (n - 2.0 * (p.b + 1.0)).abs() / 2.0,
        r if r.is_region_a() => (n - (p.a + p.b + 1.0)).abs() / 2.0,
        _ => (n - (3.0 * p.b - p.a + 3.0)).abs() / 2.0,
    }
}

/// (N/2 − a)² ≥ N + 1.
pub fn curlfree_admissible(n: u32, a: f64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "curl-free inequalities need N >= 2, got {n}"
        )));
    }
    let n = f64::from(n);
    Ok((n / 2.0 - a).powi(2) >= n + 1.0)
}

fn curlfree_radical(n: f64, a: f64) -> f64 {
    ((1.0 - n / 2.0 + a).powi(2) + n - 1.0).sqrt()
}

/// Sharp constant C (not C²) of the curl-free CKN inequality.
pub fn curlfree_ckn_constant(p: ParamPoint) -> Result<f64> {
    if !curlfree_admissible(p.n, p.a)? {
        return Err(Error::Inadmissible(format!(
            "(N/2 - a)^2 >= N + 1 fails for N = {}, a = {}",
            p.n, p.a
        )));
    }
    let gap = p.curlfree_gap();
    if gap == 0.0 {
        return Err(Error::Domain(
            "no curl-free constant is available on a - b + 1 = 0".into(),
        ));
    }
    Ok(curlfree_radical(p.dim(), p.a) + gap.abs() / 2.0)
}

/// C² = (N + 2 + 4a)² / 4 of the second-order inequality.
pub fn second_order_constant(n: u32, a: f64) -> f64 {
    (f64::from(n) + 2.0 + 4.0 * a).powi(2) / 4.0
}

/// Sign choice in front of the square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Radial power −N/2 + a ± √((1 − N/2 + a)² + N − 1) of the curl-free extremizers.
pub fn extremizer_exponent(n: u32, a: f64, branch: Branch) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("N >= 2 required, got {n}")));
    }
    let n = f64::from(n);
    Ok(-n / 2.0 + a + branch.sign() * curlfree_radical(n, a))
}

/// Literature constants for dimension N. Entries undefined at N are absent.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub n: u32,
    pub entries: Vec<(&'static str, f64)>,
}

impl ReferenceTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

pub fn reference_constants(n: u32) -> Result<ReferenceTable> {
    if n < 2 {
        return Err(Error::Domain(format!("reference table needs N >= 2, got {n}")));
    }
    let nf = f64::from(n);
    let mut entries = vec![
        ("hup_scalar", nf * nf / 4.0),
        ("hyup_scalar", (nf - 1.0).powi(2) / 4.0),
        ("hardy", (nf - 2.0).powi(2) / 4.0),
    ];
    let mazya = if n == 2 {
        4.0
    } else {
        ((nf * nf - 4.0 * (nf - 3.0)).sqrt() + 2.0).powi(2) / 4.0
    };
    entries.push(("mazya_divfree", mazya));
    let rellich = match n {
        2 => None,
        3 => Some(25.0 / 38.0),
        4 => Some(3.0),
        _ => Some(nf * nf / 4.0),
    };
    if let Some(v) = rellich {
        entries.push(("rellich", v));
    }
    if n >= 3 {
        entries.push((
            "costin_mazya",
            (nf - 2.0).powi(2) / 4.0 * (1.0 + 8.0 / (nf * nf + 4.0 * nf - 4.0)),
        ));
    }
    Ok(ReferenceTable { n, entries })
}
