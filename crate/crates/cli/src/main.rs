//! cgl: command-line driver for the curve-count / pencil / Galois /
//! census / sieve toolkit.
//!
//! Exit codes: 0 success (a DEGENERATE pencil or an INCONCLUSIVE
//! certificate is a successful run with a status field), 1 domain errors,
//! 2 usage errors. All output is deterministic for a fixed invocation:
//! randomness flows from the --seed flag through a pinned SplitMix64
//! stream, and parallel reductions are order-independent.
//! The CGL_BUDGET environment variable overrides the residue-enumeration
//! cap.

use anyhow::{anyhow, Context};
use cgl_core::arith::poly::RatPoly;
use cgl_core::budget::Budget;
use cgl_core::census::{count_p2_points, count_tuples, run_experiment};
use cgl_core::counts::CurveCountTable;
use cgl_core::galois::{certify_symmetric, chebotarev_census};
use cgl_core::pencil::discriminant::pencil_discriminant;
use cgl_core::pencil::{cubics_through_points, Pencil, PencilError, ProjPoint, TernaryCubic};
use cgl_core::sieve::form::Form;
use cgl_core::sieve::{
    deligne_gap, g_growth_report, g_of_q, hensel_check, omega_from_model, parameter_check,
    ThinSetModel,
};
use cgl_core::Int;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cgl",
    version,
    about = "curve counts, cubic pencils, Galois certificates, height censuses and sieve densities",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of counts N_d of rational plane curves of degree d through
    /// 3d-1 general points, as CSV.
    Nd {
        /// Largest degree to compute.
        #[arg(long)]
        max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pencil of cubics through 8 points (or from two given cubics) and
    /// its degree-12 discriminant, as JSON.
    Pencil {
        /// File with 8 lines `x y z` of integers.
        #[arg(long, conflicts_with = "cubics")]
        points: Option<PathBuf>,
        /// File with two cubic lines in x, y(, z); affine input is
        /// homogenized on the chart z = 1.
        #[arg(long)]
        cubics: Option<PathBuf>,
        /// Reference polynomial in t; the report records the exact
        /// proportionality scalar against it.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric-group certificate (or cycle-type census) for a squarefree
    /// polynomial, as JSON.
    Galois {
        /// Polynomial file in the `c*t^i` text format; rational
        /// coefficients are cleared to the primitive integer form.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_name = "B")]
        prime_bound: u64,
        /// Emit the full cycle-type census instead of the certificate.
        #[arg(long)]
        census: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact counts of points (or k-tuples) of bounded anticanonical
    /// height, as CSV.
    Census {
        /// Height bound(s), comma-separated for a sweep.
        #[arg(long = "B", value_name = "N", value_delimiter = ',', required = true)]
        bounds: Vec<u64>,
        /// Number of factors in the tuple (1 = single points).
        #[arg(long, default_value_t = 1)]
        factors: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Two-column log-log plot data file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Random-tuple non-transitivity experiment, as JSON.
    Experiment {
        #[arg(long, value_name = "H")]
        coord_bound: i64,
        #[arg(long, value_name = "K")]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_name = "B", default_value_t = 10_000)]
        prime_bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-prime densities, sieve sums and local diagnostics.
    Sieve {
        #[command(subcommand)]
        command: SieveCommand,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Thin-set model: `type1 form=<poly>`, `type2
    /// predicate=delta-has-root|always-true|always-false`, or `const
    /// omega=<q>`.
    #[arg(long)]
    model: String,
    /// Hypersurface form cutting the variety (omitted: ambient projective
    /// space).
    #[arg(long)]
    form: Option<String>,
    /// Ambient variable count when the form does not mention all
    /// variables.
    #[arg(long)]
    nvars: Option<usize>,
}

impl ModelArgs {
    fn model(&self) -> anyhow::Result<ThinSetModel> {
        ThinSetModel::parse(&self.model).map_err(|e| usage(anyhow!("--model: {e}")))
    }

    fn form(&self) -> anyhow::Result<Option<Form>> {
        self.form
            .as_deref()
            .map(|text| {
                let f = Form::parse(text).map_err(|e| usage(anyhow!("--form: {e}")))?;
                Ok(match self.nvars {
                    Some(n) => f.embed(n),
                    None => f,
                })
            })
            .transpose()
    }
}

#[derive(Subcommand)]
enum SieveCommand {
    /// Exact density omega_p of a model's residue classes at one prime.
    Omega {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(short, long)]
        p: u64,
        #[arg(short, long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The squarefree-supported sum G(Q) over the model's densities at all
    /// primes up to Q.
    Gq {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "Q")]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G(Q) along a list of Q values with fitted growth exponents.
    Growth {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "Q-list", value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Two-column log-log plot data file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Hensel lifting identity check for the cone counts of a smooth form.
    Hensel {
        #[arg(long)]
        form: String,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(short, long)]
        p: u64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Point-count gap report at a prime of smooth reduction.
    Deligne {
        #[arg(long)]
        form: String,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(short, long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension equation and named parameter inequalities for
    /// hypersurface families.
    Params {
        /// Ambient projective dimension N.
        #[arg(long = "N")]
        n_ambient: u32,
        /// Hypersurface degree d.
        #[arg(long = "d")]
        degree: u32,
        /// Curve degree e.
        #[arg(long = "e")]
        curve_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Marker for usage-level failures (exit 2 instead of 1).
#[derive(Debug)]
struct UsageError;

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "usage error")
    }
}

impl std::error::Error for UsageError {}

fn usage(e: anyhow::Error) -> anyhow::Error {
    e.context(UsageError)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
    }
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
    text.push('\n');
    write_output(out, &text)
}

fn read_file(path: &Path, flag: &str) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("{flag}: cannot read {}", path.display()))
        .map_err(usage)
}

/// Two-column plot data: x = log of the abscissa, y = log of the count.
fn emit_plot_data(path: &Path, rows: &[(f64, f64)]) -> anyhow::Result<()> {
    let mut text = String::new();
    for (x, y) in rows {
        text.push_str(&format!("{x:.12e} {y:.12e}\n"));
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct PencilStatus {
    schema_version: u32,
    status: String,
    detail: String,
}

#[derive(Serialize)]
struct GqOutput {
    schema_version: u32,
    q: u64,
    /// Exact rational G(Q).
    g: String,
    primes_included: usize,
}

fn run(command: Command) -> anyhow::Result<()> {
    let budget = Budget::from_env();
    match command {
        Command::Nd { max, out } => {
            if max < 1 {
                return Err(usage(anyhow!("--max must be at least 1")));
            }
            let table = CurveCountTable::up_to(max).map_err(|e| usage(anyhow!("{e}")))?;
            let mut csv = String::from("d,N_d\n");
            for (d, n) in table.entries() {
                csv.push_str(&format!("{d},{n}\n"));
            }
            write_output(&out, &csv)
        }
        Command::Pencil {
            points,
            cubics,
            reference,
            out,
        } => {
            let pencil = match (&points, &cubics) {
                (Some(path), None) => {
                    let text = read_file(path, "--points")?;
                    let pts = parse_points(&text)?;
                    match cubics_through_points(&pts) {
                        Ok(p) => p,
                        Err(
                            e @ (PencilError::Degenerate(_) | PencilError::DuplicatePoint(_, _)),
                        ) => {
                            let status = match e {
                                PencilError::Degenerate(_) => "DEGENERATE",
                                _ => "DUPLICATE_POINT",
                            };
                            return write_json(
                                &out,
                                &PencilStatus {
                                    schema_version: 1,
                                    status: status.to_string(),
                                    detail: e.to_string(),
                                },
                            );
                        }
                        Err(e) => return Err(anyhow!("{e}")),
                    }
                }
                (None, Some(path)) => {
                    let text = read_file(path, "--cubics")?;
                    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
                    let a = lines
                        .next()
                        .ok_or_else(|| usage(anyhow!("--cubics: need two cubic lines")))?;
                    let b = lines
                        .next()
                        .ok_or_else(|| usage(anyhow!("--cubics: need two cubic lines")))?;
                    let a = TernaryCubic::parse(a).map_err(|e| usage(anyhow!("--cubics: {e}")))?;
                    let b = TernaryCubic::parse(b).map_err(|e| usage(anyhow!("--cubics: {e}")))?;
                    Pencil::new(a, b).map_err(|e| anyhow!("{e}"))?
                }
                _ => {
                    return Err(usage(anyhow!(
                        "exactly one of --points / --cubics required"
                    )))
                }
            };
            let mut report = pencil_discriminant(&pencil);
            if let Some(path) = &reference {
                let text = read_file(path, "--reference")?;
                let poly = RatPoly::parse(&text).map_err(|e| usage(anyhow!("--reference: {e}")))?;
                report = report.with_reference(&poly).map_err(|e| anyhow!("{e}"))?;
            }
            write_json(&out, &report)
        }
        Command::Galois {
            poly,
            prime_bound,
            census,
            out,
        } => {
            let text = read_file(&poly, "--poly")?;
            let parsed = RatPoly::parse(&text).map_err(|e| usage(anyhow!("--poly: {e}")))?;
            let (f, _) = parsed
                .to_primitive_int()
                .ok_or_else(|| usage(anyhow!("--poly: zero polynomial")))?;
            if census {
                let report = chebotarev_census(&f, prime_bound).map_err(|e| anyhow!("{e}"))?;
                write_json(&out, &report)
            } else {
                let report = certify_symmetric(&f, prime_bound).map_err(|e| anyhow!("{e}"))?;
                write_json(&out, &report)
            }
        }
        Command::Census {
            bounds,
            factors,
            out,
            plot,
        } => {
            if factors < 1 {
                return Err(usage(anyhow!("--factors must be at least 1")));
            }
            let mut csv = String::from("B,count\n");
            let mut rows = Vec::new();
            for &b in &bounds {
                let count: Int = if factors == 1 {
                    Int::from(count_p2_points(b))
                } else {
                    count_tuples(b, factors, &budget).map_err(|e| anyhow!("{e}"))?
                };
                csv.push_str(&format!("{b},{count}\n"));
                rows.push(((b as f64).ln(), cgl_core::arith::int_to_f64(&count).ln()));
            }
            if let Some(path) = &plot {
                emit_plot_data(path, &rows)?;
            }
            write_output(&out, &csv)
        }
        Command::Experiment {
            coord_bound,
            samples,
            seed,
            prime_bound,
            out,
        } => {
            let report = run_experiment(coord_bound, samples, seed, prime_bound)
                .map_err(|e| anyhow!("{e}"))?;
            write_json(&out, &report)
        }
        Command::Sieve { command } => run_sieve(command, &budget),
    }
}

fn run_sieve(command: SieveCommand, budget: &Budget) -> anyhow::Result<()> {
    match command {
        SieveCommand::Omega { model, p, m, out } => {
            let density = omega_from_model(&model.model()?, model.form()?.as_ref(), p, m, budget)
                .map_err(|e| anyhow!("{e}"))?;
            write_json(&out, &density)
        }
        SieveCommand::Gq { model, q, out } => {
            let the_model = model.model()?;
            let form = model.form()?;
            let primes = cgl_core::arith::primes_up_to(q);
            let densities: Result<Vec<_>, _> = primes
                .iter()
                .map(|&p| omega_from_model(&the_model, form.as_ref(), p, 1, budget))
                .collect();
            let densities = densities.map_err(|e| anyhow!("{e}"))?;
            let g = g_of_q(&densities, q);
            write_json(
                &out,
                &GqOutput {
                    schema_version: 1,
                    q,
                    g: g.to_string(),
                    primes_included: densities.len(),
                },
            )
        }
        SieveCommand::Growth {
            model,
            q_list,
            out,
            plot,
        } => {
            let report = g_growth_report(&model.model()?, model.form()?.as_ref(), &q_list, budget)
                .map_err(|e| anyhow!("{e}"))?;
            if let Some(path) = &plot {
                let rows: Vec<(f64, f64)> =
                    report.rows.iter().map(|r| (r.log_q, r.log_g)).collect();
                emit_plot_data(path, &rows)?;
            }
            write_json(&out, &report)
        }
        SieveCommand::Hensel {
            form,
            nvars,
            p,
            ell,
            out,
        } => {
            let f = parse_form(&form, nvars)?;
            let report = hensel_check(&f, p, ell, budget).map_err(|e| anyhow!("{e}"))?;
            write_json(&out, &report)
        }
        SieveCommand::Deligne {
            form,
            nvars,
            p,
            out,
        } => {
            let f = parse_form(&form, nvars)?;
            let report = deligne_gap(&f, p, budget).map_err(|e| anyhow!("{e}"))?;
            write_json(&out, &report)
        }
        SieveCommand::Params {
            n_ambient,
            degree,
            curve_degree,
            out,
        } => {
            let report = parameter_check(n_ambient, degree, curve_degree)
                .map_err(|e| usage(anyhow!("{e}")))?;
            write_json(&out, &report)
        }
    }
}

fn parse_form(text: &str, nvars: Option<usize>) -> anyhow::Result<Form> {
    let f = Form::parse(text).map_err(|e| usage(anyhow!("--form: {e}")))?;
    Ok(match nvars {
        Some(n) => f.embed(n),
        None => f,
    })
}

fn parse_points(text: &str) -> anyhow::Result<Vec<ProjPoint>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Result<Vec<Int>, _> = line.split_whitespace().map(str::parse::<Int>).collect();
        let coords = coords.map_err(|e| usage(anyhow!("--points line {}: {e}", i + 1)))?;
        if coords.len() != 3 {
            return Err(usage(anyhow!("--points line {}: need `x y z`", i + 1)));
        }
        points.push(
            ProjPoint::new(coords).map_err(|e| usage(anyhow!("--points line {}: {e}", i + 1)))?,
        );
    }
    Ok(points)
}
