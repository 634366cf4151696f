//! Command-line front end for the catenoid library.
//!
//! Subcommands reproduce the family's reference constants, sweep the
//! boundary-separation function, export curves, intersections, the envelope,
//! and band-versus-caps area comparisons as CSV or JSON. Data goes to stdout
//! (or `--out PATH`); one-line summaries and diagnostics go to stderr.
//!
//! Exit codes: 0 success; 1 constant verification failure; 2 domain error;
//! 3 convergence failure; 4 I/O failure.

// Domain guards use the NaN-rejecting `!(x > 0.0)` comparison form.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use catenoid::area::{compare, comparison_integral, k_constant, lambda0};
use catenoid::catenary::{envelope, intersect, Catenary};
use catenoid::hgeom::CirclePairSeparation;
use catenoid::quad::{integrate_semi_infinite, TailPolicy};
use catenoid::separation::{
    critical_constants, d0, d0_prime, d0_upper_bound, r_factor, solve_boundary_separation, w1,
    CriticalConstants, RVariant,
};
use catenoid::{Error, QuadConfig};
use clap::{Parser, Subcommand, ValueEnum};
use output::{render_csv, render_json, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Hyperbolic reading of the mixed curvature term (matches the closed
    /// form w1).
    Sinh,
    /// Circular reading (breaks the w1 identity).
    Sin,
}

impl From<Variant> for RVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Sinh => RVariant::Sinh,
            Variant::Sin => RVariant::Sin,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "catenoid",
    version,
    about = "Spherical catenoids in hyperbolic 3-space: constants, sweeps, and curve exports",
    long_about = "Computes the generating catenaries of spherical minimal catenoids in the \
                  Poincaré ball, the boundary-separation function d0 with its critical \
                  constants, and band-versus-caps area comparisons.\n\n\
                  Data is written to stdout or --out as CSV (one '#' metadata line, a header \
                  row, then data rows; reals at 17 significant digits) or as JSON with the \
                  same schema under {\"meta\", \"rows\"}. Reruns are byte-identical.\n\n\
                  Exit codes: 0 success, 1 constant verification failure, 2 domain error, \
                  3 convergence failure, 4 I/O failure."
)]
struct Cli {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid resolution (points for sweeps, samples per half-curve).
    #[arg(long, global = true, default_value_t = 101)]
    grid: usize,
    /// Reading of the mixed term in the curvature factor r.
    #[arg(long, global = true, value_enum, default_value_t = Variant::Sinh)]
    r_variant: Variant,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute every reference constant and check it against its pinned
    /// value; nonzero exit if any check fails.
    ///
    /// Columns: name, computed, reference, abs_dev, tolerance, status.
    /// Also reports the curvature-factor diagnostic for the chosen
    /// --r-variant (grid negativity and the closed-form w1 identity).
    Constants,
    /// Tabulate the boundary-separation function over --grid points.
    ///
    /// Columns: lambda, d0, d0_prime, d0_upper_bound.
    D0Sweep {
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
    },
    /// Export one catenary (both symmetric halves, ordered by x) with
    /// --grid samples per half.
    ///
    /// Columns: x, y, u, v (warped-product and Poincaré-disk coordinates).
    Curve {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        y_max: f64,
    },
    /// Intersect two catenaries.
    ///
    /// Columns: x, y, residual (one row per intersection point).
    Intersect {
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        lambda2: f64,
        /// Radius ceiling for the crossing scan.
        #[arg(long, default_value_t = 40.0)]
        y_search_max: f64,
    },
    /// Trace the family envelope over --grid neck values.
    ///
    /// Columns: lambda, x, y (touching point per neck value that has one).
    Envelope {
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
    },
    /// Compare the band area against the two geodesic caps at one neck
    /// value for a comma-separated list of radii.
    ///
    /// Columns: lambda, y1, band_area, band_area_split, caps_area, margin.
    AreaCheck {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        y1: Vec<f64>,
    },
    /// Solve for the two catenoids whose asymptotic boundary circles are a
    /// given distance apart.
    ///
    /// Columns: root, lambda, residual, degenerate.
    SolveBoundary {
        #[arg(long)]
        d_l: f64,
    },
}

enum CliError {
    Lib(Error),
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Lib(Error::Domain(_) | Error::NonFinite(_) | Error::NoSolution(_)) => 2,
        CliError::Lib(_) => 3,
        CliError::Io { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match &e {
                CliError::Lib(err) => eprintln!("error: {err}"),
                CliError::Io { path, source } => eprintln!("error: {path}: {source}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let cfg = QuadConfig {
        abs_tol: cli.abs_tol,
        rel_tol: cli.rel_tol,
        ..QuadConfig::default()
    };

    let (table, code) = match &cli.command {
        Command::Constants => cmd_constants(cli, &cfg)?,
        Command::D0Sweep { lo, hi } => (cmd_d0_sweep(cli, &cfg, *lo, *hi)?, 0),
        Command::Curve { lambda, y_max } => (cmd_curve(cli, &cfg, *lambda, *y_max)?, 0),
        Command::Intersect {
            lambda1,
            lambda2,
            y_search_max,
        } => (
            cmd_intersect(cli, &cfg, *lambda1, *lambda2, *y_search_max)?,
            0,
        ),
        Command::Envelope { lo, hi } => (cmd_envelope(cli, &cfg, *lo, *hi)?, 0),
        Command::AreaCheck { lambda, y1 } => (cmd_area_check(cli, &cfg, *lambda, y1)?, 0),
        Command::SolveBoundary { d_l } => (cmd_solve_boundary(cli, &cfg, *d_l)?, 0),
    };

    let rendered = match cli.format {
        Format::Csv => render_csv(&table),
        Format::Json => render_json(&table),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{rendered}"),
    }
    Ok(code)
}

fn common_meta(t: &mut Table, cli: &Cli) {
    t.meta_float("abs_tol", cli.abs_tol);
    t.meta_float("rel_tol", cli.rel_tol);
    t.meta(
        "format",
        match cli.format {
            Format::Csv => "csv",
            Format::Json => "json",
        },
    );
}

fn cmd_constants(cli: &Cli, cfg: &QuadConfig) -> Result<(Table, u8), CliError> {
    let mut t = Table::new(
        "constants",
        vec![
            "name",
            "computed",
            "reference",
            "abs_dev",
            "tolerance",
            "status",
        ],
    );
    common_meta(&mut t, cli);
    let variant: RVariant = cli.r_variant.into();
    t.meta("r_variant", variant.label());
    // The published prints 0.53068 / 1.0022 are a dropped digit of 0.530638
    // and a truncation of 2 x 0.501143; the references below are the values
    // the defining equations actually produce.
    t.meta("lambda4_published_print", "0.53068");
    t.meta("d_l_max_published_print", "1.0022");

    let consts = critical_constants(cfg)?;
    let k = k_constant(cfg)?;
    let l0 = lambda0(cfg)?;
    let verif = integrate_semi_infinite(
        |x| (-2.0 * x).exp() / (-(-4.0 * x).exp_m1()).sqrt(),
        0.0,
        &cfg.with_tail(TailPolicy::new(2.0, 1.2, 1.0)),
    )?
    .value;
    let comparison = comparison_integral(cfg)?;

    let mut failures = 0_u32;
    let mut push = |t: &mut Table, name: &str, computed: f64, reference: f64, tol: f64| {
        // Loosening the run tolerance can only widen the acceptance window.
        let tol = tol.max(cli.abs_tol);
        let dev = (computed - reference).abs();
        let pass = dev <= tol;
        if !pass {
            failures += 1;
        }
        t.row(vec![
            Cell::Str(name.to_string()),
            Cell::Float(computed),
            Cell::Float(reference),
            Cell::Float(dev),
            Cell::Float(tol),
            Cell::Str(if pass { "PASS" } else { "FAIL" }.to_string()),
        ]);
    };

    push(&mut t, "K", k, 0.40093, 1e-5);
    push(&mut t, "Lambda0", l0, 1.10055, 2e-4);
    push(
        &mut t,
        "Lambda_d",
        consts.lambda_d,
        CriticalConstants::LAMBDA_D_REF,
        5e-4,
    );
    push(
        &mut t,
        "d0_max",
        consts.d0_max,
        CriticalConstants::D0_MAX_REF,
        1e-5,
    );
    push(&mut t, "D0", consts.d_l_max, 1.002286, 2e-5);
    push(&mut t, "Lambda3", consts.lambda3, 0.402359, 1e-5);
    push(&mut t, "Lambda4", consts.lambda4, 0.530638, 1e-5);
    push(&mut t, "Lambda5", consts.lambda5, 0.5 * 5.0_f64.ln(), 1e-15);
    push(
        &mut t,
        "verification_integral",
        verif,
        std::f64::consts::FRAC_PI_4,
        1e-10,
    );
    push(&mut t, "comparison_integral", comparison, 1.0, 1e-10);

    // Curvature-factor diagnostic for the chosen variant: sign on a dense
    // grid of (0,10] x (0, Lambda5) and agreement with the closed form
    // w1 = r(0, .).
    let l5 = 0.5 * 5.0_f64.ln();
    let mut r_max = f64::NEG_INFINITY;
    for i in 1..=60 {
        for j in 1..=60 {
            let tt = 10.0 * i as f64 / 60.0;
            let ll = (l5 - 1e-9) * j as f64 / 60.0;
            r_max = r_max.max(r_factor(tt, ll, variant));
        }
    }
    {
        let pass = r_max < 0.0;
        if !pass {
            failures += 1;
        }
        t.row(vec![
            Cell::Str(format!("r_max_on_grid({})", variant.label())),
            Cell::Float(r_max),
            Cell::Str("< 0".to_string()),
            Cell::Float(r_max.max(0.0)),
            Cell::Float(0.0),
            Cell::Str(if pass { "PASS" } else { "FAIL" }.to_string()),
        ]);
    }
    let mut w1_dev = 0.0_f64;
    for j in 0..=40 {
        let ll = 1.5 * j as f64 / 40.0;
        let scale = w1(ll).abs().max(1.0);
        w1_dev = w1_dev.max((r_factor(0.0, ll, variant) - w1(ll)).abs() / scale);
    }
    {
        let pass = w1_dev <= 1e-9;
        if !pass {
            failures += 1;
        }
        t.row(vec![
            Cell::Str(format!("w1_identity_max_rel_dev({})", variant.label())),
            Cell::Float(w1_dev),
            Cell::Float(0.0),
            Cell::Float(w1_dev),
            Cell::Float(1e-9),
            Cell::Str(if pass { "PASS" } else { "FAIL" }.to_string()),
        ]);
    }

    if failures == 0 {
        eprintln!("constants: all checks passed");
        Ok((t, 0))
    } else {
        eprintln!("constants: {failures} check(s) FAILED");
        Ok((t, 1))
    }
}

fn cmd_d0_sweep(cli: &Cli, cfg: &QuadConfig, lo: f64, hi: f64) -> Result<Table, CliError> {
    if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::Domain(format!("sweep needs 0 <= lo < hi, got [{lo}, {hi}]")).into());
    }
    if cli.grid < 2 {
        return Err(Error::Domain(format!("sweep needs --grid >= 2, got {}", cli.grid)).into());
    }
    let mut t = Table::new(
        "d0-sweep",
        vec!["lambda", "d0", "d0_prime", "d0_upper_bound"],
    );
    common_meta(&mut t, cli);
    t.meta_float("lo", lo);
    t.meta_float("hi", hi);
    t.meta("grid", cli.grid);

    for i in 0..cli.grid {
        let lambda = lo + (hi - lo) * i as f64 / (cli.grid - 1) as f64;
        let (v, dv) = if lambda == 0.0 {
            (0.0, f64::INFINITY)
        } else {
            (d0(lambda, cfg)?, d0_prime(lambda, cfg)?)
        };
        t.row(vec![
            Cell::Float(lambda),
            Cell::Float(v),
            Cell::Float(dv),
            Cell::Float(d0_upper_bound(lambda)),
        ]);
    }
    Ok(t)
}

fn cmd_curve(cli: &Cli, cfg: &QuadConfig, lambda: f64, y_max: f64) -> Result<Table, CliError> {
    let cat = Catenary::new(lambda)?;
    let sample = cat.sample(y_max, cli.grid, cfg)?;
    let mut t = Table::new("curve", vec!["x", "y", "u", "v"]);
    common_meta(&mut t, cli);
    t.meta_float("lambda", lambda);
    t.meta_float("y_max", y_max);
    t.meta("grid", cli.grid);
    for p in sample.full() {
        t.row(vec![
            Cell::Float(p.halfdisk.x),
            Cell::Float(p.halfdisk.y),
            Cell::Float(p.ball.u),
            Cell::Float(p.ball.v),
        ]);
    }
    Ok(t)
}

fn cmd_intersect(
    cli: &Cli,
    cfg: &QuadConfig,
    lambda1: f64,
    lambda2: f64,
    y_search_max: f64,
) -> Result<Table, CliError> {
    let rep = intersect(lambda1, lambda2, y_search_max, cfg)?;
    eprintln!("{} intersections", rep.count);
    let mut t = Table::new("intersect", vec!["x", "y", "residual"]);
    common_meta(&mut t, cli);
    t.meta_float("lambda1", lambda1);
    t.meta_float("lambda2", lambda2);
    t.meta_float("y_search_max", y_search_max);
    t.meta("count", rep.count);
    for (p, r) in rep.points.iter().zip(&rep.residuals) {
        t.row(vec![Cell::Float(p.x), Cell::Float(p.y), Cell::Float(*r)]);
    }
    Ok(t)
}

fn cmd_envelope(cli: &Cli, cfg: &QuadConfig, lo: f64, hi: f64) -> Result<Table, CliError> {
    let sweep = envelope(lo, hi, cli.grid, cfg)?;
    for miss in &sweep.misses {
        eprintln!("envelope: lambda = {}: {}", miss.lambda, miss.reason);
    }
    let mut t = Table::new("envelope", vec!["lambda", "x", "y"]);
    common_meta(&mut t, cli);
    t.meta_float("lo", lo);
    t.meta_float("hi", hi);
    t.meta("grid", cli.grid);
    for p in &sweep.points {
        t.row(vec![
            Cell::Float(p.lambda),
            Cell::Float(p.point.x),
            Cell::Float(p.point.y),
        ]);
    }
    Ok(t)
}

fn cmd_area_check(
    cli: &Cli,
    cfg: &QuadConfig,
    lambda: f64,
    y1_list: &[f64],
) -> Result<Table, CliError> {
    let mut t = Table::new(
        "area-check",
        vec![
            "lambda",
            "y1",
            "band_area",
            "band_area_split",
            "caps_area",
            "margin",
        ],
    );
    common_meta(&mut t, cli);
    t.meta_float("lambda", lambda);
    for &y1 in y1_list {
        let cmp = compare(lambda, y1, cfg)?;
        t.row(vec![
            Cell::Float(cmp.lambda),
            Cell::Float(cmp.y1),
            Cell::Float(cmp.band_area),
            Cell::Float(cmp.band_area_split),
            Cell::Float(cmp.caps_area),
            Cell::Float(cmp.margin),
        ]);
    }
    Ok(t)
}

fn cmd_solve_boundary(cli: &Cli, cfg: &QuadConfig, d_l: f64) -> Result<Table, CliError> {
    let sep = CirclePairSeparation::new(d_l)?;
    let roots = solve_boundary_separation(sep, cfg)?;
    eprintln!(
        "lambda1 = {:.12} (residual {:.3e}), lambda2 = {:.12} (residual {:.3e}){}",
        roots.lambda1,
        roots.residual1,
        roots.lambda2,
        roots.residual2,
        if roots.degenerate {
            " [degenerate double root]"
        } else {
            ""
        }
    );
    let mut t = Table::new(
        "solve-boundary",
        vec!["root", "lambda", "residual", "degenerate"],
    );
    common_meta(&mut t, cli);
    t.meta_float("d_l", d_l);
    t.row(vec![
        Cell::Str("lambda1".into()),
        Cell::Float(roots.lambda1),
        Cell::Float(roots.residual1),
        Cell::Int(roots.degenerate as i64),
    ]);
    t.row(vec![
        Cell::Str("lambda2".into()),
        Cell::Float(roots.lambda2),
        Cell::Float(roots.residual2),
        Cell::Int(roots.degenerate as i64),
    ]);
    Ok(t)
}
