//! Argument parsing and command execution.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dioph_core::double_eq::{
    classify, describe, fermat_coefficient, fermat_step, good_reduction, reduce_point_mod_p, solve,
};
use dioph_core::local::{
    candidate_primes, conic_soluble, padic_insoluble_system, ConicSolubility, DiagConic, PadicVerdict,
    DEFAULT_PRECISION,
};
use dioph_core::param::ParamInput;
use dioph_core::{CurvePoint, DoubleEquation, Error, Problem, Rat, RatPoint, SurfaceModel};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::json;
use crate::report::{
    exit_code_for, RunReport, Verification, EXIT_INVALID_INPUT, EXIT_NO_SOLUTION, EXIT_OK, EXIT_UNVERIFIED,
};

#[derive(Parser, Debug)]
#[command(name = "dioph", version, about = "Exact solvers for Diophantus' surfaces and double equations")]
pub struct Cli {
    /// Require every coordinate of an emitted point to be positive.
    #[arg(long, global = true)]
    pub positive: bool,
    /// Add a timing_ms field to each report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run one command per line of FILE in parallel; reports keep input order.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run a problem's parametrization or fibre solver.
    Param {
        problem: Problem,
        #[command(flatten)]
        params: Box<ParamFlags>,
    },
    /// Check a point against a surface, completing missing witnesses.
    Verify {
        problem: Problem,
        /// Coordinates as `x=3/13,y=19/13,...`.
        #[arg(allow_hyphen_values = true)]
        point: RatPoint,
        /// The constant n of IV32.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<Rat>,
    },
    /// Work with u² = a₁x² + b₁x + c₁, v² = a₂x² + b₂x + c₂.
    Doubleeq {
        /// a₁,b₁,c₁,a₂,b₂,c₂
        #[arg(long = "c", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Rat>,
        #[command(subcommand)]
        action: DoubleEqAction,
    },
    /// Solubility of aX² + bY² + cZ² = 0.
    Conic {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Reduce a point of a double equation modulo a prime.
    Reduce {
        #[arg(long = "c", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<Rat>,
        /// `x,u,v`, `X:U:V:Z`, or `inf1`..`inf4`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        prime: u64,
    },
    /// Print a surface model as JSON.
    Model {
        problem: Problem,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<Rat>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub l0: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub m0: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<Rat>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<Rat>,
}

impl ParamFlags {
    fn labelled(&self) -> Vec<(&'static str, &Rat)> {
        [
            ("lambda", &self.lambda),
            ("mu", &self.mu),
            ("a", &self.a),
            ("t", &self.t),
            ("t0", &self.t0),
            ("n", &self.n),
            ("l0", &self.l0),
            ("m0", &self.m0),
            ("p", &self.p),
            ("q", &self.q),
            ("c", &self.c),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
        .collect()
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum DoubleEqAction {
    /// Heath's case, genus, smoothness and points at infinity.
    Classify,
    /// Find a rational point by the factor-and-split method.
    Solve {
        /// Factor pair f,g for first-order equations.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        factors: Option<Vec<Rat>>,
    },
    /// Repeat Fermat's secant step.
    Iterate {
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Starting point; defaults to the first point at infinity.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
    },
    /// p-adic search at the candidate primes.
    Local,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub positive: bool,
    pub timing: bool,
    pub precision: u32,
}

/// Hensel depth from `DIOPH_PRECISION`, default 6.
pub fn precision_from_env() -> Result<u32, String> {
    match std::env::var("DIOPH_PRECISION") {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(format!("DIOPH_PRECISION must be a positive integer, got {s:?}")),
        },
    }
}

fn rat_list(rs: &[Rat]) -> Value {
    json::rats(rs)
}

fn parse_curve_point(de: &DoubleEquation, s: &str) -> Result<CurvePoint, Error> {
    let s = s.trim();
    if let Some(i) = s.strip_prefix("inf") {
        let i: usize = i.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let pts = de.points_at_infinity();
        return pts
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| Error::OutOfRange(format!("only {} points at infinity", pts.len())));
    }
    let (sep, n) = if s.contains(':') { (':', 4) } else { (',', 3) };
    let parts = s.split(sep).map(|p| p.trim().parse::<Rat>()).collect::<Result<Vec<_>, _>>()?;
    if parts.len() != n {
        return Err(Error::Parse(s.to_string()));
    }
    if n == 3 {
        let mut it = parts.into_iter();
        let (x, u, v) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        Ok(CurvePoint::from_affine(x, u, v))
    } else {
        CurvePoint::from_rats([parts[0].clone(), parts[1].clone(), parts[2].clone(), parts[3].clone()])
    }
}

fn curve_verification(de: &DoubleEquation, p: &CurvePoint) -> Verification {
    let (r1, r2) = de.residuals(p);
    Verification::new(vec![r1.is_zero(), r2.is_zero()])
}

fn curve_admissible(p: &CurvePoint) -> bool {
    p.is_admissible()
}

fn surface_for(problem: Problem, n: Option<&Rat>) -> SurfaceModel {
    match (problem, n) {
        (Problem::IV32, Some(n)) => SurfaceModel::iv32(n.clone()),
        _ => SurfaceModel::new(problem),
    }
}

fn emit_surface_point(r: &mut RunReport, model: &SurfaceModel, point: &RatPoint, opts: &Options, unverified: i32) {
    r.output("point", json::point_in(point, &model.variables));
    let admissible = point.is_admissible();
    r.output("admissible", admissible);
    if let Ok(fibre) = model.fibration_value(point) {
        r.output("fibre", fibre.to_string());
    }
    match model.check_equations(point) {
        Ok(eqs) => r.verify(Verification::new(eqs), unverified, "point fails the surface equations"),
        Err(e) => r.fail_with(&e),
    }
    if opts.positive && !admissible && r.exit_code == EXIT_OK {
        r.fail(EXIT_NO_SOLUTION, "point has a non-positive coordinate");
    }
}

fn cmd_param(r: &mut RunReport, problem: Problem, flags: &ParamFlags, opts: &Options) {
    r.input("problem", problem.as_str());
    let mut input = ParamInput::new();
    for (k, v) in flags.labelled() {
        r.input(k, json::rat(v));
        input = input.with(k, v.clone());
    }
    match input.run(problem) {
        Ok(point) => {
            let model = surface_for(problem, flags.n.as_ref());
            emit_surface_point(r, &model, &point, opts, EXIT_UNVERIFIED);
        }
        Err(e) => r.fail_with(&e),
    }
}

fn cmd_verify(r: &mut RunReport, problem: Problem, point: &RatPoint, n: Option<&Rat>, opts: &Options) {
    r.input("problem", problem.as_str());
    let model = surface_for(problem, n);
    r.input("point", json::point_in(point, &model.variables));
    if let Some(n) = n {
        r.input("n", json::rat(n));
    }
    let full = if model.variables.iter().all(|v| point.contains(v)) {
        point.clone()
    } else {
        match model.witness_solve(point) {
            Ok(Some(p)) => p,
            Ok(None) => return r.fail(EXIT_NO_SOLUTION, "no rational witness completes the point"),
            Err(e) => return r.fail_with(&e),
        }
    };
    emit_surface_point(r, &model, &full, opts, EXIT_NO_SOLUTION);
}

fn local_report(de: &DoubleEquation, precision: u32) -> Result<(Value, Vec<u64>), Error> {
    let mut rows = Vec::new();
    let mut insoluble = Vec::new();
    for prime in candidate_primes(de) {
        let verdict = padic_insoluble_system(de, prime, precision)?;
        if verdict == PadicVerdict::Insoluble {
            insoluble.push(prime);
        }
        rows.push(json!({ "prime": prime, "verdict": verdict.to_string() }));
    }
    Ok((json!({ "precision": precision, "places": rows, "insoluble_at": insoluble }), insoluble))
}

fn cmd_doubleeq(r: &mut RunReport, coeffs: &[Rat], action: &DoubleEqAction, opts: &Options) {
    r.input("coefficients", rat_list(coeffs));
    let Ok(c) = <[Rat; 6]>::try_from(coeffs.to_vec()) else {
        return r.fail(EXIT_INVALID_INPUT, format!("expected 6 coefficients, got {}", coeffs.len()));
    };
    let de = match DoubleEquation::new(c) {
        Ok(de) => de,
        Err(e) => return r.fail(EXIT_INVALID_INPUT, e.to_string()),
    };
    match action {
        DoubleEqAction::Classify => {
            r.input("action", "classify");
            let class = classify(&de);
            r.output("heath_case", class.heath_case.to_string());
            r.output("genus", class.genus);
            r.output("smooth", class.smooth);
            r.output("reducible", class.reducible);
            r.output("difference_splits", class.difference_splits);
            r.output("alpha1", class.alpha1.as_ref().map(json::rat).unwrap_or(Value::Null));
            r.output("alpha2", class.alpha2.as_ref().map(json::rat).unwrap_or(Value::Null));
            r.output("description", describe(&class));
            let inf: Vec<Value> = de.points_at_infinity().iter().map(json::curve_point).collect();
            r.output("points_at_infinity", inf);
        }
        DoubleEqAction::Solve { factors } => {
            r.input("action", "solve");
            let pair = match factors.as_deref() {
                None => None,
                Some([f, g]) => {
                    r.input("factors", rat_list(&[f.clone(), g.clone()]));
                    Some((f, g))
                }
                Some(other) => {
                    return r.fail(EXIT_INVALID_INPUT, format!("--factors takes 2 values, got {}", other.len()))
                }
            };
            match solve(&de, pair) {
                Ok(p) => {
                    r.output("point", json::curve_point(&p));
                    let admissible = curve_admissible(&p);
                    r.output("admissible", admissible);
                    r.verify(curve_verification(&de, &p), EXIT_UNVERIFIED, "solution fails the double equation");
                    if opts.positive && !admissible && r.exit_code == EXIT_OK {
                        r.fail(EXIT_NO_SOLUTION, "solution has a non-positive coordinate");
                    }
                }
                Err(e) => {
                    let mut msg = e.to_string();
                    if matches!(e, Error::MethodInapplicable(_)) {
                        match local_report(&de, opts.precision) {
                            Ok((report, insoluble)) => {
                                if !insoluble.is_empty() {
                                    let places: Vec<String> = insoluble.iter().map(u64::to_string).collect();
                                    msg.push_str(&format!("; local obstruction: no {}-adic solutions", places.join(", ")));
                                }
                                r.output("local", report);
                            }
                            Err(le) => msg.push_str(&format!("; local search failed: {le}")),
                        }
                    }
                    r.fail(exit_code_for(&e), msg);
                }
            }
        }
        DoubleEqAction::Iterate { steps, from } => {
            r.input("action", "iterate");
            r.input("steps", *steps);
            let start = match from {
                Some(s) => {
                    r.input("from", s.as_str());
                    match parse_curve_point(&de, s) {
                        Ok(p) => p,
                        Err(e) => return r.fail(EXIT_INVALID_INPUT, e.to_string()),
                    }
                }
                None => match de.points_at_infinity().into_iter().next() {
                    Some(p) => p,
                    None => return r.fail(EXIT_NO_SOLUTION, "no rational point at infinity to start from"),
                },
            };
            r.output("start", json::curve_point(&start));
            let table: Vec<String> = (0..=*steps as u32 + 1).map(|n| fermat_coefficient(n).to_string()).collect();
            r.output("fermat_coefficients", table);
            let mut flags = Vec::new();
            let mut iterates = Vec::new();
            let mut current = start;
            for _ in 0..*steps {
                match fermat_step(&de, &current) {
                    Ok(next) => {
                        let on_curve = de.contains(&next);
                        flags.push(on_curve);
                        let mut entry = json::curve_point(&next);
                        entry["on_curve"] = on_curve.into();
                        entry["height"] = next.max_numerator().to_string().into();
                        iterates.push(entry);
                        current = next;
                    }
                    Err(e) => {
                        r.fail_with(&e);
                        break;
                    }
                }
            }
            r.output("iterates", iterates);
            r.verify(Verification::new(flags), EXIT_UNVERIFIED, "an iterate fails the double equation");
        }
        DoubleEqAction::Local => {
            r.input("action", "local");
            match local_report(&de, opts.precision) {
                Ok((report, _)) => r.output("local", report),
                Err(e) => r.fail_with(&e),
            }
        }
    }
}

fn cmd_conic(r: &mut RunReport, a: i64, b: i64, c: i64) {
    r.input("coefficients", vec![a, b, c]);
    let conic = match DiagConic::new(a, b, c) {
        Ok(k) => k,
        Err(e) => return r.fail(EXIT_INVALID_INPUT, e.to_string()),
    };
    let normal: Vec<String> = conic.coeffs.iter().map(ToString::to_string).collect();
    r.output("normalized", normal);
    match conic_soluble(&conic) {
        Ok(ConicSolubility::Soluble { witness }) => {
            r.output("soluble", true);
            r.output("witness", witness.iter().map(ToString::to_string).collect::<Vec<_>>());
            let on = conic.eval_original(&witness) == BigInt::from(0);
            r.verify(Verification::new(vec![on]), EXIT_UNVERIFIED, "witness fails the conic");
        }
        Ok(ConicSolubility::Insoluble { obstructions }) => {
            r.output("soluble", false);
            r.output("obstructions", obstructions.iter().map(ToString::to_string).collect::<Vec<_>>());
            r.fail(EXIT_NO_SOLUTION, "conic has no rational point");
        }
        Err(e) => r.fail_with(&e),
    }
}

fn cmd_reduce(r: &mut RunReport, coeffs: &[Rat], point: &str, prime: u64) {
    r.input("coefficients", rat_list(coeffs));
    r.input("point", point);
    r.input("prime", prime);
    let Ok(c) = <[Rat; 6]>::try_from(coeffs.to_vec()) else {
        return r.fail(EXIT_INVALID_INPUT, format!("expected 6 coefficients, got {}", coeffs.len()));
    };
    let de = match DoubleEquation::new(c) {
        Ok(de) => de,
        Err(e) => return r.fail(EXIT_INVALID_INPUT, e.to_string()),
    };
    let p = match parse_curve_point(&de, point) {
        Ok(p) => p,
        Err(e) => return r.fail(EXIT_INVALID_INPUT, e.to_string()),
    };
    match good_reduction(&de, prime) {
        Ok(good) => r.output("good_reduction", good),
        Err(e) => return r.fail_with(&e),
    }
    r.verify(curve_verification(&de, &p), EXIT_NO_SOLUTION, "point is not on the curve");
    if r.exit_code != EXIT_OK {
        return;
    }
    match reduce_point_mod_p(&de, &p, prime) {
        Ok(red) => {
            let matches: Vec<usize> = de
                .points_at_infinity()
                .iter()
                .enumerate()
                .filter(|(_, q)| reduce_point_mod_p(&de, q, prime).is_ok_and(|rq| rq == red))
                .map(|(i, _)| i + 1)
                .collect();
            r.output("reduced", json::reduced_point(&red));
            r.output("matches_infinity", matches);
        }
        Err(e) => r.fail_with(&e),
    }
}

/// Run one parsed command.
pub fn execute(command: &Command, opts: &Options, echo: &str) -> RunReport {
    let start = Instant::now();
    let mut r = RunReport::new(echo);
    match command {
        Command::Param { problem, params } => cmd_param(&mut r, *problem, params, opts),
        Command::Verify { problem, point, n } => cmd_verify(&mut r, *problem, point, n.as_ref(), opts),
        Command::Doubleeq { coeffs, action } => cmd_doubleeq(&mut r, coeffs, action, opts),
        Command::Conic { a, b, c } => cmd_conic(&mut r, *a, *b, *c),
        Command::Reduce { coeffs, point, prime } => cmd_reduce(&mut r, coeffs, point, *prime),
        Command::Model { problem, n } => {
            r.input("problem", problem.as_str());
            r.output("model", json::model(&surface_for(*problem, n.as_ref())));
        }
    }
    if opts.timing {
        r.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    r
}

fn parse_error_report(echo: &str, msg: String) -> RunReport {
    let mut r = RunReport::new(echo);
    r.fail(EXIT_INVALID_INPUT, msg);
    r
}

/// Parse and run one batch line. Blank lines and `#` comments give `None`.
pub fn run_line(line: &str, precision: u32) -> Option<RunReport> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return None;
    }
    let args = std::iter::once("dioph").chain(line.split_whitespace());
    Some(match Cli::try_parse_from(args) {
        Ok(Cli { command: Some(cmd), positive, timing, batch: None }) => {
            execute(&cmd, &Options { positive, timing, precision }, line)
        }
        Ok(_) => parse_error_report(line, "batch lines must hold a single subcommand".into()),
        Err(e) => parse_error_report(line, e.render().to_string().trim().to_string()),
    })
}

/// Run every line of a batch file in parallel, keeping input order.
pub fn run_batch(text: &str, precision: u32) -> Vec<RunReport> {
    let lines: Vec<&str> = text.lines().collect();
    lines.par_iter().filter_map(|l| run_line(l, precision)).collect()
}

/// Entry point behind `main`: returns the text to print and the exit code.
pub fn run(argv: &[String]) -> (String, i32) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_INVALID_INPUT,
                _ => EXIT_INVALID_INPUT,
            };
            if code == EXIT_OK {
                return (e.render().to_string(), code);
            }
            let echo = argv.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
            let r = parse_error_report(&echo, e.render().to_string().trim().to_string());
            return (pretty(&r), EXIT_INVALID_INPUT);
        }
    };
    let echo = argv.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let precision = match precision_from_env() {
        Ok(k) => k,
        Err(msg) => return (pretty(&parse_error_report(&echo, msg)), EXIT_INVALID_INPUT),
    };
    if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            let r = parse_error_report(&echo, "--batch cannot be combined with a subcommand".into());
            return (pretty(&r), EXIT_INVALID_INPUT);
        }
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                let r = parse_error_report(&echo, format!("cannot read {}: {e}", path.display()));
                return (pretty(&r), EXIT_INVALID_INPUT);
            }
        };
        let reports = run_batch(&text, precision);
        let code = reports.iter().map(|r| r.exit_code).max().unwrap_or(EXIT_OK);
        let out: Vec<String> = reports.iter().map(|r| r.to_json().to_string()).collect();
        return (out.join("\n"), code);
    }
    let Some(command) = &cli.command else {
        let r = parse_error_report(&echo, "no subcommand given; see --help".into());
        return (pretty(&r), EXIT_INVALID_INPUT);
    };
    let opts = Options { positive: cli.positive, timing: cli.timing, precision };
    let r = execute(command, &opts, &echo);
    (pretty(&r), r.exit_code)
}

fn pretty(r: &RunReport) -> String {
    serde_json::to_string_pretty(&r.to_json()).expect("report serializes")
}
