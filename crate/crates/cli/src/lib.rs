//! Command-line front end: `gen`, `compute`, `check` and `sweep`.
//!
//! [`dispatch`] runs one invocation against in-memory streams and returns the
//! exit status, so the binary is a thin wrapper and tests need no subprocess.
//! Exit status is 0 on success, 1 when `--strict` finds a violated bound and 2
//! on usage or domain errors.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grentropy::graph::{
    connected_gnp, distance_matrix, generate_graph, parse_edge_list, GnpParams,
};
use grentropy::harness::{run_sweep, summarize_report, Cell, ReportFormat, SweepConfig};
use grentropy::inequalities::{
    class_closed_forms, connected_functional_bounds, jensen_gap_bound, thm1_renyi_shannon_bounds,
    thm3_partition_vs_functional, thm4_scaled_dominance, thm5_additive_dominance,
    thm6_convex_combination, CombinationMode, PsiSource,
};
use grentropy::measures::{
    distribution_from_values, distribution_stats, functional_values, partition_distribution,
    renyi_entropy, shannon_entropy, Distribution, FunctionalSpec, FunctionalValues,
};
use grentropy::orbits::vertex_orbits;
use grentropy::{BoundReport, Graph, GraphClass, LogBase, Variant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "grentropy",
    version,
    about = "Graph entropies and information inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a graph of the given class as an edge list.
    Gen(GenArgs),
    /// Read an edge list on stdin and print its entropies as JSON.
    Compute(ComputeArgs),
    /// Evaluate one bound and print the report as JSON.
    Check(CheckArgs),
    /// Run a sweep described by a JSON config file.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// star, path, cycle, wheel, complete or gnp
    class: GraphClass,
    n: usize,
    /// Edge probability (gnp only).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the first G(n, p) draw even if it is disconnected.
    #[arg(long)]
    allow_disconnected: bool,
    #[arg(long, default_value_t = 100)]
    max_redraws: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistKind {
    Orbits,
    Linear,
    Exp,
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistKind::Orbits => "orbits",
            DistKind::Linear => "linear",
            DistKind::Exp => "exp",
        })
    }
}

/// Flags shared by everything that reads a graph on stdin.
#[derive(Debug, Args)]
struct GraphInput {
    /// Vertex count; needed when the edge list leaves trailing vertices isolated.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = DistKind::Orbits)]
    dist: DistKind,
    /// Sphere coefficients c_1..c_η (default η − j + 1).
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<f64>>,
    #[arg(long)]
    beta: Option<f64>,
    #[command(flatten)]
    input: GraphInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckTheorem {
    Ordering,
    Jensen,
    Thm1,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Closed,
    Connected,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(value_enum)]
    theorem: CheckTheorem,
    #[arg(long, default_value = "literal")]
    variant: Variant,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Use this distribution instead of reading a graph.
    #[arg(long, value_delimiter = ',')]
    probs: Option<Vec<f64>>,
    /// Second distribution for thm4 and thm5.
    #[arg(long, value_delimiter = ',')]
    probs2: Option<Vec<f64>>,
    #[arg(long)]
    psi: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    /// Distribution family when reading a graph.
    #[arg(long, value_enum, default_value_t = DistKind::Orbits)]
    dist: DistKind,
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<f64>>,
    /// Coefficients of the second (linear) functional.
    #[arg(long, value_delimiter = ',')]
    c2: Option<Vec<f64>>,
    #[arg(long)]
    beta: Option<f64>,
    /// Combination weights c1,c2 for thm6.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    weights: Option<Vec<f64>>,
    /// Averaged form of thm6.
    #[arg(long)]
    symmetric: bool,
    /// Include the ε² factor in thm1.
    #[arg(long)]
    epsilon: bool,
    /// Logarithm base for thm5 and thm6: 2 or e.
    #[arg(long, default_value = "2")]
    log_base: LogBase,
    /// Graph class for `closed`.
    #[arg(long)]
    class: Option<GraphClass>,
    /// Exit with status 1 if a bound is violated.
    #[arg(long)]
    strict: bool,
    /// Vertex count for the stdin graph, or the class size for `closed`.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    #[arg(long)]
    strict: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl fmt::Display) -> Self {
        Self {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Debug)]
struct Failure(String);

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure(msg.into()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<S: AsRef<str>>(args: &[S], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(e.render().to_string())
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("invalid usage");
                    Outcome::usage(first.trim_start_matches("error: "))
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Compute(a) => compute(a, stdin),
        Command::Check(a) => check(a, stdin),
        Command::Sweep(a) => sweep(a),
    };
    result.unwrap_or_else(|Failure(msg)| Outcome::usage(msg))
}

fn gen(a: GenArgs) -> CmdResult {
    let g = match a.class {
        GraphClass::Gnp => {
            let Some(p) = a.p else {
                return fail("gnp requires --p");
            };
            if a.allow_disconnected {
                generate_graph(GraphClass::Gnp, a.n, Some(GnpParams { p, seed: a.seed }))?
            } else {
                connected_gnp(a.n, p, a.seed, a.max_redraws)?.graph
            }
        }
        class => {
            if a.p.is_some() {
                return fail(format!("--p only applies to gnp, not {class}"));
            }
            generate_graph(class, a.n, None)?
        }
    };
    Ok(Outcome::ok(g.to_edge_list()))
}

fn read_graph(stdin: &mut dyn Read, n: Option<usize>) -> std::result::Result<Graph, Failure> {
    let mut text = String::new();
    stdin.read_to_string(&mut text)?;
    Ok(parse_edge_list(&text, n)?)
}

/// Rounds to 12 significant digits for display.
fn sig12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().expect("formatted float parses")
    } else {
        x
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then(|| sig12(x))
}

#[derive(Serialize)]
struct FunctionalParams {
    kind: &'static str,
    coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    /// `S = Σ f(v)`; absent when it overflows.
    #[serde(rename = "S")]
    s: Option<f64>,
    #[serde(rename = "ln_S")]
    ln_s: f64,
}

#[derive(Serialize)]
struct EntropyReport {
    n: usize,
    distribution_kind: String,
    alpha: Option<f64>,
    shannon: f64,
    renyi: Option<f64>,
    rho: f64,
    epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    functional_params: Option<FunctionalParams>,
}

fn build_spec(
    g: &Graph,
    kind: DistKind,
    c: Option<Vec<f64>>,
    beta: Option<f64>,
) -> std::result::Result<FunctionalSpec<f64>, Failure> {
    let coeffs = c.unwrap_or_else(|| FunctionalSpec::default_coeffs(distance_matrix(g).eta));
    match (kind, beta) {
        (DistKind::Linear, None) => Ok(FunctionalSpec::linear(coeffs)),
        (DistKind::Linear, Some(_)) => fail("--beta only applies to --dist exp"),
        (DistKind::Exp, Some(b)) => Ok(FunctionalSpec::exponential(coeffs, b)),
        (DistKind::Exp, None) => fail("--dist exp requires --beta"),
        (DistKind::Orbits, _) => fail("orbits take no functional"),
    }
}

fn functional_params(spec: &FunctionalSpec<f64>, fv: &FunctionalValues<f64>) -> FunctionalParams {
    FunctionalParams {
        kind: if spec.beta.is_some() {
            "exponential"
        } else {
            "linear"
        },
        coeffs: spec.coeffs.clone(),
        beta: spec.beta,
        s: finite(fv.total()),
        ln_s: sig12(fv.ln_total),
    }
}

fn compute(a: ComputeArgs, stdin: &mut dyn Read) -> CmdResult {
    if a.dist == DistKind::Orbits && (a.c.is_some() || a.beta.is_some()) {
        return fail("--c and --beta need --dist linear or --dist exp");
    }
    let g = read_graph(stdin, a.input.n)?;
    let (d, orbit_sizes, fparams) = match a.dist {
        DistKind::Orbits => {
            let part = vertex_orbits(&g)?;
            (
                partition_distribution::<f64>(&part)?,
                Some(part.sizes()),
                None,
            )
        }
        kind => {
            let spec = build_spec(&g, kind, a.c, a.beta)?;
            let fv = functional_values(&g, &spec)?;
            (
                distribution_from_values(&fv)?,
                None,
                Some(functional_params(&spec, &fv)),
            )
        }
    };
    let renyi = a.alpha.map(|alpha| renyi_entropy(&d, alpha)).transpose()?;
    let stats = distribution_stats(&d);
    let report = EntropyReport {
        n: g.n(),
        distribution_kind: a.dist.to_string(),
        alpha: a.alpha,
        shannon: sig12(shannon_entropy(&d)),
        renyi: renyi.map(sig12),
        rho: sig12(stats.rho),
        epsilon: sig12(stats.epsilon),
        orbit_sizes,
        functional_params: fparams,
    };
    Ok(Outcome::ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&report)?
    )))
}

/// A distribution for the one-distribution bounds: `--probs`, or a graph on stdin.
fn check_distribution(
    a: &CheckArgs,
    stdin: &mut dyn Read,
) -> std::result::Result<(Distribution<f64>, String), Failure> {
    if let Some(p) = &a.probs {
        return Ok((Distribution::new(p.clone())?, "probs".to_string()));
    }
    let g = read_graph(stdin, a.n)?;
    match a.dist {
        DistKind::Orbits => Ok((
            partition_distribution(&vertex_orbits(&g)?)?,
            "orbits".to_string(),
        )),
        kind => {
            let spec = build_spec(&g, kind, a.c.clone(), a.beta)?;
            Ok((
                distribution_from_values(&functional_values(&g, &spec)?)?,
                kind.to_string(),
            ))
        }
    }
}

fn second_functional(
    g: &Graph,
    c2: &Option<Vec<f64>>,
) -> std::result::Result<FunctionalValues<f64>, Failure> {
    let Some(c2) = c2 else {
        return fail("this check needs --c2 for the second functional");
    };
    Ok(functional_values(g, &FunctionalSpec::linear(c2.clone()))?)
}

fn first_functional(
    g: &Graph,
    a: &CheckArgs,
) -> std::result::Result<FunctionalValues<f64>, Failure> {
    let kind = if a.beta.is_some() {
        DistKind::Exp
    } else {
        DistKind::Linear
    };
    Ok(functional_values(
        g,
        &build_spec(g, kind, a.c.clone(), a.beta)?,
    )?)
}

fn check(a: CheckArgs, stdin: &mut dyn Read) -> CmdResult {
    let alpha = a.alpha;
    let (reports, source): (Vec<BoundReport<f64>>, String) = match a.theorem {
        CheckTheorem::Ordering | CheckTheorem::Jensen | CheckTheorem::Thm1 => {
            let (d, source) = check_distribution(&a, stdin)?;
            let r = match a.theorem {
                CheckTheorem::Ordering => {
                    thm1_renyi_shannon_bounds(&d, alpha, a.variant, false)?.swap_remove(0)
                }
                CheckTheorem::Jensen => jensen_gap_bound(&d, alpha)?,
                _ => thm1_renyi_shannon_bounds(&d, alpha, a.variant, a.epsilon)?.swap_remove(1),
            };
            (vec![r], source)
        }
        CheckTheorem::Thm3 => {
            let g = read_graph(stdin, a.n)?;
            let fv = first_functional(&g, &a)?;
            (
                vec![thm3_partition_vs_functional(
                    &g,
                    &vertex_orbits(&g)?,
                    &fv,
                    alpha,
                )?],
                "functional".into(),
            )
        }
        CheckTheorem::Thm4 | CheckTheorem::Thm5 => {
            let (d1, d2, totals) = match (&a.probs, &a.probs2) {
                (Some(p1), Some(p2)) => (
                    Distribution::new(p1.clone())?,
                    Distribution::new(p2.clone())?,
                    None,
                ),
                (None, None) => {
                    let g = read_graph(stdin, a.n)?;
                    let f1 = first_functional(&g, &a)?;
                    let f2 = second_functional(&g, &a.c2)?;
                    let totals = (f1.ln_total, f2.ln_total);
                    (
                        distribution_from_values(&f1)?,
                        distribution_from_values(&f2)?,
                        Some(totals),
                    )
                }
                _ => return fail("--probs and --probs2 go together"),
            };
            if d1.size() != d2.size() {
                return fail("the two distributions differ in size");
            }
            let r = if a.theorem == CheckTheorem::Thm4 {
                let psi = match (a.psi, totals) {
                    (Some(psi), _) => PsiSource::Explicit(psi),
                    (None, Some((ln_s1, ln_s2))) => PsiSource::Totals { ln_s1, ln_s2 },
                    (None, None) => {
                        // smallest ψ meeting the precondition
                        let psi = d1
                            .probs()
                            .iter()
                            .zip(d2.probs())
                            .map(|(x, y)| x / y)
                            .fold(0.0, f64::max);
                        PsiSource::Explicit(psi)
                    }
                };
                thm4_scaled_dominance(&d1, &d2, psi, alpha)?
            } else {
                let phi = a.phi.unwrap_or_else(|| {
                    d1.probs()
                        .iter()
                        .zip(d2.probs())
                        .map(|(x, y)| x - y)
                        .fold(f64::EPSILON, f64::max)
                });
                thm5_additive_dominance(&d1, &d2, phi, alpha, a.variant, a.log_base)?
            };
            let source = if totals.is_some() {
                "functional"
            } else {
                "probs"
            };
            (vec![r], source.into())
        }
        CheckTheorem::Thm6 => {
            let g = read_graph(stdin, a.n)?;
            let f1 = first_functional(&g, &a)?;
            let f2 = second_functional(&g, &a.c2)?;
            let (c1, c2) = match a.weights.as_deref() {
                None => (1.0, 1.0),
                Some([c1, c2]) => (*c1, *c2),
                Some(_) => return fail("--weights takes exactly two values c1,c2"),
            };
            let mode = if a.symmetric {
                CombinationMode::Symmetric
            } else {
                CombinationMode::Single
            };
            let r = thm6_convex_combination(&f1, &f2, c1, c2, alpha, a.variant, mode, a.log_base)?;
            (vec![r], "functional".into())
        }
        CheckTheorem::Closed => {
            let (Some(class), Some(n)) = (a.class, a.n) else {
                return fail("closed needs --class and --n");
            };
            let fv = match a.c {
                Some(_) => Some(first_functional(&generate_graph(class, n, None)?, &a)?),
                None => None,
            };
            (
                class_closed_forms(class, n, alpha, fv.as_ref())?,
                class.to_string(),
            )
        }
        CheckTheorem::Connected => {
            let g = read_graph(stdin, a.n)?;
            let kind = if a.beta.is_some() {
                DistKind::Exp
            } else {
                DistKind::Linear
            };
            let spec = build_spec(&g, kind, a.c.clone(), a.beta)?;
            (
                vec![connected_functional_bounds(&g, &spec, alpha, a.variant)?],
                kind.to_string(),
            )
        }
    };
    let cells: Vec<Cell> = reports
        .iter()
        .map(|r| Cell::from_report(r, "input", &source))
        .collect();
    let body = if cells.len() == 1 {
        serde_json::to_string_pretty(&cells[0])?
    } else {
        serde_json::to_string_pretty(&cells)?
    };
    let violated = reports.iter().any(BoundReport::is_violation);
    Ok(Outcome {
        status: if a.strict && violated {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        },
        stdout: format!("{body}\n"),
        stderr: String::new(),
    })
}

fn sweep(a: SweepArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.config)
        .map_err(|e| Failure(format!("cannot read {}: {e}", a.config.display())))?;
    let cfg = SweepConfig::from_json(&text)?;
    let report = run_sweep(&cfg)?;
    let mut out = Outcome::ok(summarize_report(&report, a.format));
    if let Some(t) = report.runtime {
        out.stderr = format!("sweep finished in {:.2} s\n", t.as_secs_f64());
    }
    if a.strict && report.total_violations() > 0 {
        out.status = EXIT_VIOLATION;
    }
    Ok(out)
}
