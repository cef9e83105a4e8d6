//! Flat `key = value` sweep configuration.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use ckn_core::{ExtremizerFamily, QuadratureSpec, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => bail!("unknown format {other:?} (expected csv or json)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub dims: Vec<u32>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub families: Vec<ExtremizerFamily>,
    pub degrees: Vec<u32>,
    /// Magnitude of β (or t); the sign is fixed per row by the family.
    pub beta: f64,
    pub gamma: f64,
    pub tolerances: Tolerances,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub skip_inapplicable: bool,
}

pub const CONFIG_HELP: &str = "\
Config file: one `key = value` per line, `#` starts a comment.
  dims               dimensions N: comma list (3,4,5) or inclusive range (5..9); required
  a                  comma list of a values; required
  b                  comma list of b values; required when a T1 or CC family is selected
  families           comma list of T1_CASE1, T1_CASE2, T2_RADIAL, T2_KUMMER,
                     CC_REGION_A, CC_REGION_B; required
  k                  harmonic degrees for T2_KUMMER (default 1)
  beta               magnitude of beta or t; the sign is chosen per family (default 1)
  gamma              amplitude (default 1)
  quotient_tol       bound on |quotient/C^2 - 1| (default 1e-7)
  quad_tol           bound on the quadratic-identity residual (default 1e-8)
  pde_tol            bound on the equality-condition residual (default 1e-7)
  rel_tol            quadrature relative tolerance (default 1e-10)
  output             report path (default stdout)
  format             csv or json (default csv)
  skip_inapplicable  drop rows whose family does not apply at the point (default true)
";

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow!("{key}: cannot parse {s:?}: {e}")))
        .collect()
}

fn parse_dims(value: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = value.split_once("..") {
        let lo: u32 = lo.trim().parse().with_context(|| format!("dims: bad range start {lo:?}"))?;
        let hi: u32 = hi.trim().parse().with_context(|| format!("dims: bad range end {hi:?}"))?;
        return Ok((lo..=hi).collect());
    }
    parse_list("dims", value)
}

fn parse_positive(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value.trim().parse().with_context(|| format!("{key}: not a number: {value:?}"))?;
    if !(v > 0.0 && v.is_finite()) {
        bail!("{key} must be positive and finite, got {v}");
    }
    Ok(v)
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => bail!("{key}: expected true or false, got {other:?}"),
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut dims = None;
        let mut a = None;
        let mut b = None;
        let mut families = None;
        let mut degrees = vec![1];
        let mut beta = 1.0;
        let mut gamma = 1.0;
        let mut tol = Tolerances::default();
        let mut rel_tol = QuadratureSpec::default().rel_tol;
        let mut output = None;
        let mut format = Format::Csv;
        let mut skip_inapplicable = true;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value, got {raw:?}", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "dims" => dims = Some(parse_dims(value)?),
                "a" => a = Some(parse_list::<f64>(key, value)?),
                "b" => b = Some(parse_list::<f64>(key, value)?),
                "families" => families = Some(parse_list::<ExtremizerFamily>(key, value)?),
                "k" => degrees = parse_list(key, value)?,
                "beta" => beta = parse_positive(key, value)?,
                "gamma" => {
                    gamma = value.parse().with_context(|| format!("gamma: not a number: {value:?}"))?;
                    if gamma == 0.0 || !f64::is_finite(gamma) {
                        bail!("gamma must be finite and nonzero");
                    }
                }
                "quotient_tol" => tol.quotient = parse_positive(key, value)?,
                "quad_tol" => tol.quad = parse_positive(key, value)?,
                "pde_tol" => tol.pde = parse_positive(key, value)?,
                "rel_tol" => rel_tol = parse_positive(key, value)?,
                "output" => output = Some(PathBuf::from(value)),
                "format" => format = value.parse()?,
                "skip_inapplicable" => skip_inapplicable = parse_bool(key, value)?,
                other => bail!("line {}: unknown key {other:?}", lineno + 1),
            }
        }

        let dims = dims.ok_or_else(|| anyhow!("missing key: dims"))?;
        let a = a.ok_or_else(|| anyhow!("missing key: a"))?;
        let families = families.ok_or_else(|| anyhow!("missing key: families"))?;
        let needs_b = families.iter().any(|f| f.uses_b());
        let b = match (b, needs_b) {
            (Some(b), _) => b,
            (None, false) => Vec::new(),
            (None, true) => bail!("missing key: b (required by the selected families)"),
        };
        if dims.is_empty() || a.is_empty() || families.is_empty() || (needs_b && b.is_empty()) {
            bail!("empty parameter grid");
        }
        if families.iter().any(|f| *f == ExtremizerFamily::T2Kummer) && degrees.is_empty() {
            bail!("empty degree list k");
        }
        if let Some(&n) = dims.iter().find(|&&n| n == 0) {
            bail!("dimension N = {n} is not allowed");
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            bail!("grid values must be finite");
        }
        tol.quadrature = QuadratureSpec::default().with_rel_tol(rel_tol);
        tol.quadrature.validate()?;
        Ok(Self {
            dims,
            a,
            b,
            families,
            degrees,
            beta,
            gamma,
            tolerances: tol,
            output,
            format,
            skip_inapplicable,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let c = SweepConfig::parse(
            "# curl-free sweep\n\
             dims = 5..9\n\
             a = 0\n\
             b = -1, 0   # two weights\n\
             families = T1_CASE1\n\
             format = json\n\
             quotient_tol = 1e-6\n",
        )
        .unwrap();
        assert_eq!(c.dims, vec![5, 6, 7, 8, 9]);
        assert_eq!(c.b, vec![-1.0, 0.0]);
        assert_eq!(c.families, vec![ExtremizerFamily::T1Case1]);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.tolerances.quotient, 1e-6);
        assert!(c.skip_inapplicable);
    }

    #[test]
    fn b_optional_for_second_order() {
        let c = SweepConfig::parse("dims=3\na=0,0.5\nfamilies=T2_RADIAL,T2_KUMMER\nk=1,2").unwrap();
        assert!(c.b.is_empty());
        assert_eq!(c.degrees, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "dims=\na=0\nb=0\nfamilies=T1_CASE1",
            "dims=5\na=\nb=0\nfamilies=T1_CASE1",
            "dims=5\na=0\nfamilies=T1_CASE1",
            "dims=5\na=0\nb=0\nfamilies=T3",
            "dims=5\na=0\nb=0\nfamilies=T1_CASE1\ncolour=red",
            "dims=5\na=0\nb=0\nfamilies=T1_CASE1\nquotient_tol=-1",
            "dims=0\na=0\nb=0\nfamilies=T1_CASE1",
            "dims=5\na=0\nb=0\nfamilies=T1_CASE1\nformat=xml",
            "dims 5",
        ] {
            assert!(SweepConfig::parse(text).is_err(), "{text:?}");
        }
    }
}
