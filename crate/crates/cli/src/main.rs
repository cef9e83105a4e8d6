mod config;
mod report;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use ckn_core::constants::{
    classify_region, curlfree_admissible, curlfree_ckn_constant, reference_constants, scalar_ckn_constant,
    second_order_constant, ParamPoint, RegionLabel,
};
use ckn_core::specfun::{
    kummer_1f1, kummer_1f1_derivative, kummer_1f1_second_derivative, kummer_asymptotic_negative, KummerParams,
};
use ckn_core::{run_verification, ExtremizerFamily, ExtremizerSpec, QuadratureSpec, Tolerances};
use clap::{Args, Parser, Subcommand};

use config::{Format, SweepConfig, CONFIG_HELP};
use report::{fmt_float, Row};

/// Verify sharp weighted CKN inequalities on their extremizer families.
#[derive(Parser)]
#[command(name = "ckn-verify", version)]
#[command(after_help = "Exit codes: 0 all rows passed, 1 some row failed, 2 input error.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sharp constants at one parameter point.
    #[command(allow_negative_numbers = true)]
    Constants {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Verify one extremizer and print its report row.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Run a grid sweep described by a config file.
    #[command(after_long_help = CONFIG_HELP)]
    Sweep {
        /// Path to the key = value config file.
        config: PathBuf,
        /// Override the config's output path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the config's output format.
        #[arg(long)]
        format: Option<String>,
    },
    /// Evaluate Kummer's function 1F1(A; B; z) and its derivatives.
    #[command(allow_negative_numbers = true)]
    Kummer {
        #[arg(long = "A")]
        a: f64,
        #[arg(long = "B")]
        b: f64,
        #[arg(long)]
        z: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// T1_CASE1, T1_CASE2, T2_RADIAL, T2_KUMMER, CC_REGION_A or CC_REGION_B.
    #[arg(long)]
    family: String,
    #[arg(long = "N")]
    n: u32,
    #[arg(long)]
    a: f64,
    /// Weight exponent b (ignored by the second-order families).
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    /// Harmonic degree for T2_KUMMER.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Family parameter beta (or t for T2_KUMMER and CC families), with sign.
    #[arg(long = "beta-or-t", alias = "beta", alias = "t")]
    beta_or_t: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1e-7)]
    quotient_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    quad_tol: f64,
    #[arg(long, default_value_t = 1e-7)]
    pde_tol: f64,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_rows(rows: &[Row], format: Format, path: Option<&PathBuf>) -> Result<()> {
    let mut out = open_output(path)?;
    match format {
        Format::Csv => report::write_csv(rows, &mut out)?,
        Format::Json => report::write_json(rows, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn report_errors(rows: &[Row]) {
    for row in rows {
        if let Some(e) = &row.error {
            eprintln!("{} N={} a={} b={}: {e}", row.cells[0], row.cells[1], row.cells[2], row.cells[3]);
        }
    }
}

fn exit_for(rows: &[Row]) -> ExitCode {
    if rows.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_constants(n: u32, a: f64, b: f64) -> Result<ExitCode> {
    if n == 0 {
        bail!("N must be at least 1");
    }
    if !a.is_finite() || !b.is_finite() {
        bail!("a and b must be finite");
    }
    let p = ParamPoint::new(n, a, b);
    let region = classify_region(p);
    let c = scalar_ckn_constant(p);
    println!("N = {n}, a = {a}, b = {b}");
    println!("region: {region}");
    let note = if region == RegionLabel::Line { " (not achieved)" } else { "" };
    println!("scalar_ckn: C = {}, C^2 = {}{note}", fmt_float(c), fmt_float(c * c));
    match curlfree_admissible(n, a) {
        Ok(true) => match curlfree_ckn_constant(p) {
            Ok(c) => println!("curlfree: C = {}, C^2 = {}", fmt_float(c), fmt_float(c * c)),
            Err(e) => println!("curlfree: undefined ({e})"),
        },
        Ok(false) => println!("curlfree: inadmissible ((N/2 - a)^2 < N + 1)"),
        Err(_) => println!("curlfree: undefined for N < 2"),
    }
    println!("second_order: C^2 = {}", fmt_float(second_order_constant(n, a)));
    if let Ok(table) = reference_constants(n) {
        println!("reference constants:");
        for (name, v) in &table.entries {
            println!("  {name} = {}", fmt_float(*v));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let family: ExtremizerFamily = args.family.parse()?;
    let format: Format = args.format.parse()?;
    if args.n == 0 {
        bail!("N must be at least 1");
    }
    for (name, v) in [("quotient_tol", args.quotient_tol), ("quad_tol", args.quad_tol), ("pde_tol", args.pde_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            bail!("{name} must be positive");
        }
    }
    if ![args.a, args.b, args.beta_or_t, args.gamma].iter().all(|v| v.is_finite()) {
        bail!("parameters must be finite");
    }
    let tol = Tolerances {
        quotient: args.quotient_tol,
        quad: args.quad_tol,
        pde: args.pde_tol,
        quadrature: QuadratureSpec::default(),
    };
    let spec = ExtremizerSpec::new(family, args.beta_or_t)
        .with_degree(args.k)
        .with_gamma(args.gamma);
    let report = run_verification(&spec, ParamPoint::new(args.n, args.a, args.b), &tol);
    let rows = vec![Row::from_report(&report)];
    report_errors(&rows);
    write_rows(&rows, format, args.output.as_ref())?;
    Ok(exit_for(&rows))
}

fn cmd_sweep(path: &PathBuf, output: Option<PathBuf>, format: Option<String>) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut cfg = SweepConfig::parse(&text)?;
    if output.is_some() {
        cfg.output = output;
    }
    if let Some(f) = format {
        cfg.format = f.parse()?;
    }
    let (jobs, skipped) = sweep::plan(&cfg);
    if skipped > 0 {
        eprintln!("skipped {skipped} inapplicable (family, point) combinations");
    }
    if jobs.is_empty() {
        bail!("no applicable rows in the configured grid");
    }
    let reports = sweep::run(&jobs, &cfg.tolerances)?;
    let rows: Vec<Row> = reports.iter().map(Row::from_report).collect();
    report_errors(&rows);
    write_rows(&rows, cfg.format, cfg.output.as_ref())?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    eprintln!("{} rows, {} passed, {failed} failed", rows.len(), rows.len() - failed);
    Ok(exit_for(&rows))
}

fn cmd_kummer(a: f64, b: f64, z: f64) -> Result<ExitCode> {
    let p = KummerParams::new(a, b, z);
    println!("1F1 = {}", fmt_float(kummer_1f1(p)?));
    println!("d/dz 1F1 = {}", fmt_float(kummer_1f1_derivative(p)?));
    println!("d2/dz2 1F1 = {}", fmt_float(kummer_1f1_second_derivative(p)?));
    if z < 0.0 {
        match kummer_asymptotic_negative(p) {
            Ok(v) => println!("leading asymptotic = {}", fmt_float(v)),
            Err(e) => println!("leading asymptotic: unavailable ({e})"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Constants { n, a, b } => cmd_constants(n, a, b),
        Command::Verify(args) => cmd_verify(&args),
        Command::Sweep { config, output, format } => cmd_sweep(&config, output, format),
        Command::Kummer { a, b, z } => cmd_kummer(a, b, z),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
