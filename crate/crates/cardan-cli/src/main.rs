//! `cardan` — command-line front end for the random-ellipse library.
//!
//! Every output is a pure function of the flags (plus seed); repeated runs
//! are byte-identical. Exit codes: 0 success, 1 numerical budget failure,
//! 2 usage error. The env var `CARDAN_TOL` overrides the default quadrature
//! tolerance; an explicit `--tol` wins over both.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cardan::monte_carlo;
use cardan::perimeter::reference_moments;
use cardan::{motion, AreaLaw, Error, MotionConfig, PerimeterLaw, QuadratureSpec};

#[derive(Parser)]
#[command(
    name = "cardan",
    version,
    about = "Moments, distributions and traces of random ellipses under elliptic (Cardan) motion"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Moments E[A^k] or E[U^k] for k = 1..k-max.
    Moments(MomentsArgs),
    /// Cumulative distribution function samples over a grid.
    Cdf(CurveArgs),
    /// Density samples over a grid.
    Pdf(CurveArgs),
    /// Draw generating points and export them with their ellipse values.
    Sample(SampleArgs),
    /// SVG picture of the centrodes and a set of random ellipse traces.
    Trace(TraceArgs),
    /// Series approximation s(kappa) against the exact expectation.
    ApproxError(ApproxErrorArgs),
    /// Recompute the 20 reference perimeter moments by both quadrature
    /// routes and report the maximum relative error.
    TableCheck(TableCheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Area,
    Perimeter,
}

impl QuantityArg {
    fn as_mc(self) -> monte_carlo::Quantity {
        match self {
            QuantityArg::Area => monte_carlo::Quantity::Area,
            QuantityArg::Perimeter => monte_carlo::Quantity::Perimeter,
        }
    }

    fn name(self) -> &'static str {
        match self {
            QuantityArg::Area => "area",
            QuantityArg::Perimeter => "perimeter",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Quadrature,
    Cdf,
    Montecarlo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1)]
    k_max: u32,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    /// Relative quadrature tolerance (default 1e-12, or CARDAN_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Evaluation grid as min:max:count; defaults to the support.
    #[arg(long, value_parser = Grid::from_str)]
    grid: Option<Grid>,
    /// Add a column with the uniform law on the same support.
    #[arg(long)]
    with_uniform: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long)]
    kappa: f64,
    #[arg(long, default_value_t = 100)]
    n_ellipses: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Polyline resolution per ellipse.
    #[arg(long, default_value_t = 256)]
    phi_steps: usize,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct ApproxErrorArgs {
    /// Comma-separated kappa values, e.g. 1,2,10.
    #[arg(long, value_delimiter = ',')]
    kappa_list: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

#[derive(Args)]
struct TableCheckArgs {
    /// Acceptance threshold on the relative error (default 1e-9, or
    /// CARDAN_TOL).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
struct Grid {
    min: f64,
    max: f64,
    count: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid must be min:max:count, got `{s}`"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("grid min: {e}"))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("grid max: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("grid count: {e}"))?;
        if !(min < max) {
            return Err(format!("grid needs min < max, got {min}..{max}"));
        }
        if count < 2 {
            return Err(format!("grid needs count >= 2, got {count}"));
        }
        Ok(Grid { min, max, count })
    }
}

impl Grid {
    fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }
}

struct CliError {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        msg: msg.into(),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } => 1,
            _ => 2,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Moments(a) => cmd_moments(a),
        Cmd::Cdf(a) => cmd_curve(a, Curve::Cdf),
        Cmd::Pdf(a) => cmd_curve(a, Curve::Pdf),
        Cmd::Sample(a) => cmd_sample(a),
        Cmd::Trace(a) => cmd_trace(a),
        Cmd::ApproxError(a) => cmd_approx_error(a),
        Cmd::TableCheck(a) => cmd_table_check(a),
    }
}

/// `--tol` flag > CARDAN_TOL env > built-in default.
fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return check_tol(t);
    }
    if let Ok(s) = std::env::var("CARDAN_TOL") {
        let t: f64 = s
            .parse()
            .map_err(|e| usage(format!("CARDAN_TOL: {e}")))?;
        return check_tol(t);
    }
    Ok(default)
}

fn check_tol(t: f64) -> Result<f64, CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(usage(format!("tolerance must be positive and finite, got {t}")))
    }
}

fn spec_with(tol: f64) -> Result<QuadratureSpec, CliError> {
    Ok(QuadratureSpec::new(tol, tol, 2000)?)
}

fn config(r: f64, kappa: f64) -> Result<MotionConfig, CliError> {
    Ok(MotionConfig::new(r, kappa)?)
}

fn emit(output: &Option<String>, text: &str) -> Result<(), CliError> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|e| CliError {
            code: 2,
            msg: format!("{path}: {e}"),
        }),
    }
}

fn cmd_moments(a: MomentsArgs) -> Result<(), CliError> {
    if a.k_max < 1 {
        return Err(usage("--k-max must be at least 1"));
    }
    let cfg = config(a.r, a.kappa)?;
    let tol = resolve_tol(a.tol, 1e-12)?;
    let spec = spec_with(tol)?;
    if a.quantity == QuantityArg::Perimeter && a.method == Method::Closed && a.k_max > 1 {
        return Err(usage(
            "no closed form exists for E[U^k] with k >= 2; \
             use --method quadrature or --method cdf",
        ));
    }

    if a.method == Method::Montecarlo {
        if a.n < 1 {
            return Err(usage("--n must be at least 1"));
        }
        let batch = monte_carlo::sample(&cfg, a.n, a.seed)?;
        println!("k,value,se");
        for k in 1..=a.k_max {
            let (mean, se) = monte_carlo::empirical_moment(&batch, a.quantity.as_mc(), k)?;
            println!("{k},{mean},{se}");
        }
        return Ok(());
    }

    println!("k,value");
    for k in 1..=a.k_max {
        let value = match (a.quantity, a.method) {
            (QuantityArg::Area, Method::Closed) => AreaLaw::new(cfg).moment(k)?,
            (QuantityArg::Area, Method::Quadrature) => {
                AreaLaw::new(cfg).moment_via_radial_quadrature(k, &spec)?
            }
            (QuantityArg::Area, Method::Cdf) => {
                AreaLaw::new(cfg).moment_via_density(k, &spec)?
            }
            (QuantityArg::Perimeter, Method::Closed) => PerimeterLaw::new(cfg).expectation(),
            (QuantityArg::Perimeter, Method::Quadrature) => {
                PerimeterLaw::new(cfg).moment_quadrature(k, &spec)?
            }
            (QuantityArg::Perimeter, Method::Cdf) => {
                PerimeterLaw::new(cfg).moment_via_cdf(k, &spec)?
            }
            (_, Method::Montecarlo) => unreachable!("handled above"),
        };
        println!("{k},{value}");
    }
    Ok(())
}

enum Curve {
    Cdf,
    Pdf,
}

fn cmd_curve(a: CurveArgs, curve: Curve) -> Result<(), CliError> {
    let cfg = config(a.r, a.kappa)?;
    if matches!(curve, Curve::Pdf) && a.kappa == 0.0 {
        return Err(usage("the kappa = 0 law is a point mass and has no density"));
    }

    let (lo, hi) = match a.quantity {
        QuantityArg::Area => AreaLaw::new(cfg).support(),
        QuantityArg::Perimeter => PerimeterLaw::new(cfg).support(),
    };
    let grid = match a.grid {
        Some(g) => g,
        None => {
            // Default: the support, trimmed to the open interior for
            // densities whose endpoint values are limits.
            let pad = (hi - lo).max(1e-9) * 1e-6;
            match curve {
                Curve::Cdf => Grid {
                    min: lo,
                    max: hi,
                    count: 201,
                },
                Curve::Pdf => Grid {
                    min: lo + pad,
                    max: hi - pad,
                    count: 201,
                },
            }
        }
    };

    if matches!(curve, Curve::Pdf) {
        let inside = match a.quantity {
            QuantityArg::Area => grid.min >= lo && grid.max <= hi,
            QuantityArg::Perimeter => grid.min > lo && grid.max < hi,
        };
        if !inside {
            return Err(usage(format!(
                "pdf grid [{}, {}] extends outside the support [{lo}, {hi}]",
                grid.min, grid.max
            )));
        }
    }

    let uniform_density = 1.0 / (hi - lo);
    let mut rows: Vec<(f64, f64, Option<f64>)> = Vec::with_capacity(grid.count);
    for x in grid.points() {
        let value = match (&curve, a.quantity) {
            (Curve::Cdf, QuantityArg::Area) => AreaLaw::new(cfg).cdf(x),
            (Curve::Cdf, QuantityArg::Perimeter) => PerimeterLaw::new(cfg).cdf(x),
            (Curve::Pdf, QuantityArg::Area) => AreaLaw::new(cfg).pdf(x)?,
            (Curve::Pdf, QuantityArg::Perimeter) => PerimeterLaw::new(cfg).pdf(x)?,
        };
        let uniform = a.with_uniform.then(|| match curve {
            Curve::Cdf => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Curve::Pdf => uniform_density,
        });
        rows.push((x, value, uniform));
    }

    let text = match a.format {
        Format::Csv => {
            let mut out = String::new();
            let header = if a.with_uniform {
                "x,value,uniform"
            } else {
                "x,value"
            };
            out.push_str(header);
            out.push('\n');
            for (x, v, u) in &rows {
                match u {
                    Some(u) => writeln!(out, "{x},{v},{u}").unwrap(),
                    None => writeln!(out, "{x},{v}").unwrap(),
                }
            }
            out
        }
        Format::Json => {
            let points: Vec<_> = rows
                .iter()
                .map(|(x, v, u)| match u {
                    Some(u) => json!({"x": x, "value": v, "uniform": u}),
                    None => json!({"x": x, "value": v}),
                })
                .collect();
            let doc = json!({
                "curve": match curve { Curve::Cdf => "cdf", Curve::Pdf => "pdf" },
                "quantity": a.quantity.name(),
                "kappa": a.kappa,
                "r": a.r,
                "support": [lo, hi],
                "points": points,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&a.output, &text)
}

fn cmd_sample(a: SampleArgs) -> Result<(), CliError> {
    if a.n < 1 {
        return Err(usage("--n must be at least 1"));
    }
    let cfg = config(a.r, a.kappa)?;
    let batch = monte_carlo::sample(&cfg, a.n, a.seed)?;
    let mut out = String::from("rho,alpha,area,perimeter\n");
    for (i, p) in batch.points.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            p.rho(),
            p.alpha(),
            batch.areas[i],
            batch.perimeters[i]
        )
        .unwrap();
    }
    emit(&a.output, &out)
}

fn cmd_trace(a: TraceArgs) -> Result<(), CliError> {
    if a.n_ellipses < 1 {
        return Err(usage("--n-ellipses must be at least 1"));
    }
    if a.phi_steps < 8 {
        return Err(usage("--phi-steps must be at least 8"));
    }
    let cfg = config(a.r, a.kappa)?;
    let batch = monte_carlo::sample(&cfg, a.n_ellipses, a.seed)?;
    let (fixed, moving) = motion::centrodes(&cfg);

    // Largest semi-major axis is r(1 + kappa); the fixed centrode has
    // radius 2r. Pad by 5%.
    let extent = 1.05 * (cfg.r() * (1.0 + cfg.kappa())).max(2.0 * cfg.r());
    let stroke = extent / 400.0;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="800">"#,
        -extent,
        -extent,
        2.0 * extent,
        2.0 * extent
    )
    .unwrap();
    // Flip the y-axis so the picture uses mathematical orientation.
    writeln!(svg, r#"<g transform="scale(1,-1)" fill="none">"#).unwrap();
    writeln!(
        svg,
        r#"<circle class="fixed-centrode" cx="{:.6}" cy="{:.6}" r="{:.6}" stroke="black" stroke-width="{:.6}"/>"#,
        fixed.center.0, fixed.center.1, fixed.radius, stroke * 2.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<circle class="moving-centrode" cx="{:.6}" cy="{:.6}" r="{:.6}" stroke="gray" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"#,
        moving.center.0,
        moving.center.1,
        moving.radius,
        stroke * 2.0,
        stroke * 6.0,
        stroke * 4.0
    )
    .unwrap();

    for p in &batch.points {
        let geom = motion::ellipse_of_point(&cfg, p);
        let mut d = String::new();
        for i in 0..=a.phi_steps {
            let phi = std::f64::consts::TAU * i as f64 / a.phi_steps as f64;
            let pt = motion::trace(&cfg, p, phi);
            let op = if i == 0 { 'M' } else { 'L' };
            write!(d, "{op}{:.6} {:.6} ", pt.x, pt.y).unwrap();
        }
        writeln!(
            svg,
            r#"<path class="ellipse" data-semi-major="{:.12}" data-semi-minor="{:.12}" data-orientation="{:.12}" d="{}Z" stroke="steelblue" stroke-width="{:.6}"/>"#,
            geom.semi_major,
            geom.semi_minor,
            geom.orientation,
            d.trim_end(),
            stroke
        )
        .unwrap();
        let start = motion::trace(&cfg, p, 0.0);
        writeln!(
            svg,
            r#"<circle class="generating-point" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="crimson"/>"#,
            start.x,
            start.y,
            stroke * 2.5
        )
        .unwrap();
    }
    writeln!(svg, "</g>").unwrap();
    writeln!(svg, "</svg>").unwrap();
    emit(&a.output, &svg)
}

fn cmd_approx_error(a: ApproxErrorArgs) -> Result<(), CliError> {
    if a.kappa_list.is_empty() {
        return Err(usage("--kappa-list needs at least one value"));
    }
    println!("kappa,expectation,series,difference");
    for &kappa in &a.kappa_list {
        let cfg = config(a.r, kappa)?;
        let law = PerimeterLaw::new(cfg);
        let exact = law.expectation();
        let series = law.series_approx()?;
        println!("{kappa},{exact},{series},{}", exact - series);
    }
    Ok(())
}

fn cmd_table_check(a: TableCheckArgs) -> Result<(), CliError> {
    let tol = resolve_tol(a.tol, 1e-9)?;
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    println!("kappa,k,reference,quadrature_route,cdf_route,max_rel_err");
    for m in reference_moments() {
        let cfg = config(1.0, m.kappa)?;
        let law = PerimeterLaw::new(cfg);
        let qa = law.moment_quadrature(m.k, &spec)?;
        let qb = law.moment_via_cdf(m.k, &spec)?;
        let err = ((qa - m.value).abs().max((qb - m.value).abs())) / m.value.abs();
        worst = worst.max(err);
        println!("{},{},{},{qa},{qb},{err:e}", m.kappa, m.k, m.value_string);
    }
    println!("max relative error: {worst:e}");
    if worst > tol {
        return Err(CliError {
            code: 1,
            msg: format!("max relative error {worst:e} exceeds tolerance {tol:e}"),
        });
    }
    Ok(())
}
