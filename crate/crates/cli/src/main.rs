//! `polyineq`: batch front end for the polyineq numerical kernels.
//!
//! Every subcommand writes one table, as CSV (with a `# polyineq <cmd> v1`
//! schema line) or as JSON with the same fields. Exit status is 0 on
//! success, 1 on input errors and 2 when `verify` finds a failing criterion.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use polyineq_core::acceptance;
use polyineq_core::bernstein::{
    best_ellipse, conjecture_value, krr_grad_bound, krs_bound, sample_gradient_set, simplex_case_study, simplex_grid,
};
use polyineq_core::chebyshev::{cheb_t, extremal_polynomial, sampled_growth_check};
use polyineq_core::geometry::io::load_body;
use polyineq_core::minkowski::{alpha_search, AlphaCertificate, AlphaEstimate};
use polyineq_core::polarization::{
    chebyshev_minimax, polarization_minimax, InnerMethod, MinimaxCertificate, MinimaxOptions,
};
use polyineq_core::potential::{harris_constant, l_integral, rendezvous_estimate};
use polyineq_core::report::num;
use polyineq_core::{ConvexBody, Direction, Error, Field, Table};

#[derive(Parser, Debug)]
#[command(name = "polyineq", version, about = "Constants of multivariate polynomial inequalities on convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Body description (JSON).
    #[arg(long, global = true)]
    body: Option<PathBuf>,
    /// Point as comma-separated coordinates.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Degree, number of functionals or points, or Harris exponent m.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Dimension (sphere dimension for cheb-const and rendezvous).
    #[arg(long, global = true)]
    d: Option<usize>,
    #[arg(long, global = true)]
    field: Option<String>,
    /// Random draws (polynomials, or outer restarts for min-max searches).
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized Minkowski functional α(K, x).
    Alpha,
    /// Growth envelope T_n(α) against random polynomials at an exterior point.
    ChebGrowth,
    /// Optimal inscribed-ellipse bound against the closed-form bound.
    Bernstein {
        /// Direction y; a fan of directions when absent (d = 2).
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
        /// Number of fan directions in [0, π).
        #[arg(long, default_value_t = 12)]
        directions: usize,
    },
    /// Gradient bounds at an interior point with sampled gradients.
    Bounds,
    /// Linear polarization constant estimate.
    Polarization {
        /// Write the certificate dump to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Metric Chebyshev constant M_n of the sphere S^d.
    ChebConst {
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Sphere integral L(d, field) and c = e^{-L}.
    Potential,
    /// Harris constants c_m^{(k)}.
    Harris {
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Rendezvous number of S^d by discretized game values.
    Rendezvous,
    /// Bound comparison on the planar standard simplex.
    SimplexStudy {
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 12)]
        directions: usize,
    },
    /// Acceptance suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
    },
}

/// Errors attributable to the invocation.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Run<T> = std::result::Result<T, InputError>;

fn need<T>(v: Option<T>, flag: &str) -> Run<T> {
    v.ok_or_else(|| InputError(format!("missing --{flag}")))
}

fn parse_vec(s: &str, flag: &str) -> Run<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| InputError(format!("--{flag}: cannot read '{t}' as a number")))
        })
        .collect()
}

fn body(cli: &Cli) -> Run<ConvexBody> {
    Ok(load_body(&need(cli.body.clone(), "body")?)?)
}

fn point(cli: &Cli, k: &ConvexBody) -> Run<Vec<f64>> {
    let x = parse_vec(&need(cli.point.clone(), "point")?, "point")?;
    if x.len() != k.dim() {
        return Err(InputError(format!("--point has {} coordinates, the body has dimension {}", x.len(), k.dim())));
    }
    Ok(x)
}

fn field(cli: &Cli) -> Run<Option<Field>> {
    cli.field
        .as_deref()
        .map(|f| f.parse::<Field>().map_err(|_| InputError(format!("--field: expected real or complex, got '{f}'"))))
        .transpose()
}

fn coord_columns(prefix: &str, d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

fn table(command: &str, columns: Vec<String>) -> Table {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    Table::new(command, &cols)
}

fn nums(v: &[f64]) -> Vec<Value> {
    v.iter().map(|&x| num(x)).collect()
}

/// `(error bound, method)` of an α computation. Multistart values are lower
/// bounds without a certified error.
fn alpha_err(est: &AlphaEstimate) -> (f64, &'static str) {
    let round = 1e-12 * est.value.max(1.0);
    match est.certificate {
        AlphaCertificate::Exact => (round, "exact"),
        AlphaCertificate::Fan { .. } => (round, "fan"),
        AlphaCertificate::Grid { upper, .. } => ((upper - est.value).max(round), "grid"),
        AlphaCertificate::Multistart { .. } => (f64::NAN, "multistart"),
    }
}

fn run_alpha(cli: &Cli) -> Run<Table> {
    let k = body(cli)?;
    let x = point(cli, &k)?;
    let est = alpha_search(&k, &x)?;
    let (err, method) = alpha_err(&est);
    let mut cols = coord_columns("x", k.dim());
    cols.extend(["alpha", "alpha_err"].map(String::from));
    cols.extend(coord_columns("v", k.dim()));
    cols.push("method".into());
    let mut t = table("alpha", cols);
    let mut row = nums(&x);
    row.extend(nums(&[est.value, err]));
    row.extend(nums(est.direction.as_slice()));
    row.push(Value::from(method));
    t.push(row);
    Ok(t)
}

fn run_cheb_growth(cli: &Cli) -> Run<Table> {
    let k = body(cli)?;
    let x = point(cli, &k)?;
    let n = need(cli.n, "n")? as u32;
    let trials = cli.trials.unwrap_or(1000);
    let g = sampled_growth_check(&k, &x, n, trials, cli.seed)?;
    let (a_err, _) = alpha_err(&alpha_search(&k, &x)?);
    let env_err = (cheb_t(n, g.alpha + a_err) - g.envelope).abs();
    let p = extremal_polynomial(&k, &x, n)?;
    let mut cols = coord_columns("x", k.dim());
    cols.extend(
        [
            "n", "trials", "alpha", "alpha_err", "envelope", "envelope_err", "max_found", "max_found_err", "ratio",
            "ratio_err", "extremal_value", "extremal_value_err", "extremal_sup", "extremal_sup_err",
        ]
        .map(String::from),
    );
    let mut t = table("cheb-growth", cols);
    // sampled maxima carry the documented 5e-3 relative sampling allowance
    let mut row = nums(&x);
    row.extend([Value::from(n), Value::from(trials)]);
    row.extend(nums(&[
        g.alpha,
        a_err,
        g.envelope,
        env_err,
        g.max_found,
        5e-3 * g.max_found,
        g.ratio,
        5e-3 * g.ratio,
        p.eval(&x),
        1e-12 * g.envelope.max(1.0),
        g.extremal_sup,
        5e-3 * g.extremal_sup,
    ]));
    t.push(row);
    Ok(t)
}

fn directions(d: usize, dir: &Option<String>, fan: usize) -> Run<Vec<Direction>> {
    match dir {
        Some(s) => Ok(vec![Direction::normalize(&parse_vec(s, "dir")?)?]),
        None if d == 2 => Ok((0..fan.max(1))
            .map(|j| Direction::from_angle(std::f64::consts::PI * j as f64 / fan.max(1) as f64))
            .collect()),
        None => Ok((0..d).map(|i| Direction::axis(d, i)).collect()),
    }
}

fn run_bernstein(cli: &Cli, dir: &Option<String>, fan: usize) -> Run<Table> {
    let k = body(cli)?;
    let x = point(cli, &k)?;
    let d = k.dim();
    let mut cols = coord_columns("x", d);
    cols.extend(coord_columns("y", d));
    cols.extend(
        ["b", "b_err", "ellipse_bound", "ellipse_bound_err", "krs", "krs_err", "containment_residual"].map(String::from),
    );
    let mut t = table("bernstein", cols);
    let est = alpha_search(&k, &x)?;
    let (a_err, _) = alpha_err(&est);
    for y in directions(d, dir, fan)? {
        let fit = best_ellipse(&k, &x, &y)?;
        let eb = 1.0 / fit.b_lower;
        let krs = krs_bound(&k, &x, &y)?;
        let mut row = nums(&x);
        row.extend(nums(y.as_slice()));
        row.extend(nums(&[
            fit.b_lower,
            fit.b_upper - fit.b_lower,
            eb,
            eb * (fit.b_upper - fit.b_lower) / fit.b_lower,
            krs,
            0.5 * krs * a_err / (1.0 - est.value),
            fit.residual,
        ]));
        t.push(row);
    }
    Ok(t)
}

fn run_bounds(cli: &Cli) -> Run<Table> {
    let k = body(cli)?;
    let x = point(cli, &k)?;
    let est = alpha_search(&k, &x)?;
    let (a_err, _) = alpha_err(&est);
    let a = est.value;
    let krr = krr_grad_bound(&k, &x)?;
    let conj = conjecture_value(&k, &x)?;
    let (w, _) = k.minimal_width();
    let n_max = cli.n.unwrap_or(6);
    let trials = cli.trials.unwrap_or(2000);
    let set = sample_gradient_set(&k, &x, n_max, trials, cli.seed)?;
    let rel = a * a_err / (1.0 - a * a);
    let mut cols = coord_columns("x", k.dim());
    cols.extend(
        [
            "alpha", "alpha_err", "width", "width_err", "krr_grad", "krr_grad_err", "conjecture", "conjecture_err",
            "sampled_max_norm", "sampled_max_norm_err", "hull_area", "hull_area_err", "samples", "rejected",
        ]
        .map(String::from),
    );
    let mut t = table("bounds", cols);
    let mut row = nums(&x);
    let area = set.hull_area.unwrap_or(f64::NAN);
    row.extend(nums(&[
        a,
        a_err,
        w,
        1e-9 * w,
        krr,
        krr * rel,
        conj,
        conj * rel,
        set.max_norm,
        1e-3 * set.max_norm,
        area,
        2e-3 * area,
    ]));
    row.extend([Value::from(set.samples.len()), Value::from(set.rejected)]);
    t.push(row);
    Ok(t)
}

fn write_certificate(path: &Option<PathBuf>, cert: &MinimaxCertificate) -> Run<()> {
    if let Some(p) = path {
        std::fs::write(p, cert.dump()).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn minimax_opts(cli: &Cli) -> MinimaxOptions {
    MinimaxOptions {
        restarts: cli.trials.unwrap_or(MinimaxOptions::default().restarts),
        seed: cli.seed,
    }
}

fn inner_columns(cert: &MinimaxCertificate) -> (f64, &'static str) {
    match cert.inner_method {
        InnerMethod::Grid { upper, .. } => (upper - cert.inner_value, "grid"),
        InnerMethod::Multistart { .. } => (f64::NAN, "multistart"),
    }
}

fn run_polarization(cli: &Cli, certificate: &Option<PathBuf>) -> Run<Table> {
    let n = need(cli.n, "n")?;
    let d = need(cli.d, "d")?;
    let f = field(cli)?.unwrap_or(Field::Real);
    let cert = polarization_minimax(n, d, f, &minimax_opts(cli))?;
    write_certificate(certificate, &cert)?;
    let (inner_err, method) = inner_columns(&cert);
    let est = 1.0 / cert.inner_value;
    let mut t = table(
        "polarization",
        ["n", "d", "field", "estimate", "estimate_err", "inner_value", "inner_value_err", "inner_method", "outer", "restarts", "certificate"]
            .map(String::from)
            .to_vec(),
    );
    let mut row = vec![Value::from(n), Value::from(d), Value::from(f.to_string())];
    row.extend(nums(&[est, est * inner_err / cert.inner_value, cert.inner_value, inner_err]));
    row.extend([
        Value::from(method),
        Value::from("best-found"),
        Value::from(cert.restarts),
        Value::from(cert.hash()),
    ]);
    t.push(row);
    Ok(t)
}

fn run_cheb_const(cli: &Cli, certificate: &Option<PathBuf>) -> Run<Table> {
    let n = need(cli.n, "n")?;
    let m = cli.d.unwrap_or(1);
    let cert = chebyshev_minimax(n, m, &minimax_opts(cli))?;
    write_certificate(certificate, &cert)?;
    let (err, method) = inner_columns(&cert);
    let ratio = 2f64.powi(n as i32) / cert.inner_value;
    let mut t = table(
        "cheb-const",
        ["n", "sphere_dim", "value", "value_err", "two_pow_n_over_value", "two_pow_n_over_value_err", "inner_method", "outer", "restarts", "certificate"]
            .map(String::from)
            .to_vec(),
    );
    let mut row = vec![Value::from(n), Value::from(m)];
    row.extend(nums(&[cert.inner_value, err, ratio, ratio * err / cert.inner_value]));
    row.extend([
        Value::from(method),
        Value::from("best-found"),
        Value::from(cert.restarts),
        Value::from(cert.hash()),
    ]);
    t.push(row);
    Ok(t)
}

fn run_potential(cli: &Cli) -> Run<Table> {
    let d = cli.d.unwrap_or(2);
    let fields = match field(cli)? {
        Some(f) => vec![f],
        None => vec![Field::Real, Field::Complex],
    };
    let mut t = table(
        "potential",
        ["d", "field", "L", "L_err", "c", "c_err", "L_mc", "L_mc_err"].map(String::from).to_vec(),
    );
    for f in fields {
        let s = l_integral(d, f)?;
        let c = (-s.value).exp();
        let mut row = vec![Value::from(d), Value::from(f.to_string())];
        row.extend(nums(&[s.value, s.error, c, c * s.error, s.mc_value, s.mc_error]));
        t.push(row);
    }
    Ok(t)
}

fn run_harris(cli: &Cli, k: usize) -> Run<Table> {
    let ms: Vec<usize> = match cli.n {
        Some(m) => vec![m],
        None => (2..=30).collect(),
    };
    let mut t = table(
        "harris",
        ["m", "k", "value", "value_err", "residual", "lp_value", "lp_value_err", "iterations"].map(String::from).to_vec(),
    );
    for m in ms {
        let h = harris_constant(m, k)?;
        let mut row = vec![Value::from(m), Value::from(k)];
        row.extend(nums(&[h.value, h.lp_value - h.value, h.residual, h.lp_value, h.lp_value - h.value]));
        row.push(Value::from(h.iterations));
        t.push(row);
    }
    Ok(t)
}

fn run_rendezvous(cli: &Cli) -> Run<Table> {
    let m = cli.d.unwrap_or(1);
    let nodes = cli.n.unwrap_or(if m <= 1 { 64 } else { 256 });
    let r = rendezvous_estimate(m, nodes)?;
    let mut t = table(
        "rendezvous",
        ["sphere_dim", "nodes", "value", "value_err", "max_min", "min_max", "gap", "refinement_delta"]
            .map(String::from)
            .to_vec(),
    );
    let mut row = vec![Value::from(m), Value::from(r.nodes)];
    row.extend(nums(&[r.value, r.gap.max(r.refinement_delta), r.max_min, r.min_max, r.gap, r.refinement_delta]));
    t.push(row);
    Ok(t)
}

fn run_simplex_study(cli: &Cli, step: f64, fan: usize) -> Run<Table> {
    if !(step > 0.0 && step < 0.5) {
        return Err(InputError("--step must lie in (0, 0.5)".into()));
    }
    let study = simplex_case_study(&simplex_grid(step), fan.max(1), cli.trials.unwrap_or(50), cli.seed)?;
    Ok(study.to_table())
}

fn run_verify(cli: &Cli, suite: &str) -> Run<(Table, bool)> {
    if suite != "paper" {
        return Err(InputError(format!("unknown suite '{suite}' (available: paper)")));
    }
    let verdicts = acceptance::run_suite(cli.seed);
    let mut t = table("verify", ["criterion", "name", "status", "detail"].map(String::from).to_vec());
    for v in &verdicts {
        t.push(vec![
            Value::from(v.id),
            Value::from(v.name),
            Value::from(if v.passed { "PASS" } else { "FAIL" }),
            Value::from(v.detail.clone()),
        ]);
    }
    Ok((t, verdicts.iter().all(|v| v.passed)))
}

fn configure_threads() -> Run<()> {
    if let Ok(s) = std::env::var("POLYINEQ_THREADS") {
        let n: usize = s
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| InputError(format!("POLYINEQ_THREADS: expected a positive integer, got '{s}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| InputError(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn emit(cli: &Cli, t: &Table) -> Run<()> {
    let text = match cli.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| InputError(format!("stdout: {e}"))),
    }
}

fn run(cli: &Cli) -> Run<bool> {
    configure_threads()?;
    let (t, ok) = match &cli.command {
        Command::Alpha => (run_alpha(cli)?, true),
        Command::ChebGrowth => (run_cheb_growth(cli)?, true),
        Command::Bernstein { dir, directions } => (run_bernstein(cli, dir, *directions)?, true),
        Command::Bounds => (run_bounds(cli)?, true),
        Command::Polarization { certificate } => (run_polarization(cli, certificate)?, true),
        Command::ChebConst { certificate } => (run_cheb_const(cli, certificate)?, true),
        Command::Potential => (run_potential(cli)?, true),
        Command::Harris { k } => (run_harris(cli, *k)?, true),
        Command::Rendezvous => (run_rendezvous(cli)?, true),
        Command::SimplexStudy { step, directions } => (run_simplex_study(cli, *step, *directions)?, true),
        Command::Verify { suite } => run_verify(cli, suite)?,
    };
    emit(cli, &t)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("polyineq: acceptance failure");
            ExitCode::from(2)
        }
        Err(InputError(m)) => {
            eprintln!("polyineq: {m}");
            ExitCode::from(1)
        }
    }
}
