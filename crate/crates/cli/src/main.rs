//! `corect`: build the co-rectangles plabic graph, its valuations and
//! Newton-Okounkov body, the superpotential polytope, the matrix between
//! them, and check that the two polytopes agree.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error, 3 time
//! budget exceeded.

mod render;
mod verify;

use std::process::ExitCode;

use anyhow::Result;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use corect::equivalence::{build_matrix, format_matrix};
use corect::partitions::{staircase_syt_count, IndexSet};
use corect::plabic::{corect_orientation, enumerate_flows, flow_polynomial, PlabicGraph};
use corect::quiverfold::{dual_quiver, fold};
use corect::superpotential::{catalan, enumerate_antichains, linear_extension_count, StaircasePoset};
use corect::valuation::all_plucker_valuations;

#[derive(Parser)]
#[command(name = "corect", version, about = "Exact combinatorics of the co-rectangles seed of LGr(n,2n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Side of the square: LGr(n, 2n).
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=10))]
    n: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seconds allowed for hull-level computations.
    #[arg(long, global = true, default_value_t = 1800, value_parser = clap::value_parser!(u64).range(1..))]
    time_budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    /// Block, matching and additivity checks, and the vertex-level comparison.
    Vertex,
    /// Adds facet and volume comparison of the two polytopes.
    Hull,
    /// Adds the flow cross-check, orientation uniqueness and folding.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// The plabic graph with its faces.
    Graph,
    /// The perfect orientation with sources 1..n.
    Orientation,
    /// Flows from 1..n to a target index set, and their polynomial.
    Flows {
        /// Target index set, comma-separated, e.g. 1,4,5.
        #[arg(long)]
        target: String,
    },
    /// Valuation of every Plucker coordinate class.
    Valuations,
    /// The superpotential polytope.
    Gamma {
        #[arg(long, conflicts_with = "vrep")]
        hrep: bool,
        #[arg(long)]
        vrep: bool,
    },
    /// The Newton-Okounkov body.
    Delta {
        #[arg(long, conflicts_with_all = ["vrep", "fvector"])]
        hrep: bool,
        #[arg(long, conflicts_with = "fvector")]
        vrep: bool,
        #[arg(long)]
        fvector: bool,
    },
    /// The matrix whose columns are valuations of the near-square diagrams.
    Matrix,
    /// The folded exchange matrix; `--format dot` prints the quiver.
    Fold,
    /// Normalized volumes of both polytopes.
    Volume,
    /// Antichains, linear extensions and staircase tableaux.
    Counts,
    /// Run every check; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::All)]
        level: VerifyLevel,
    },
}

/// Raised when a hull computation runs past `--time-budget`.
#[derive(Debug)]
pub struct BudgetExceeded(pub u64);

impl std::fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "time budget of {}s exceeded", self.0)
    }
}

impl std::error::Error for BudgetExceeded {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dot_ok = matches!(cli.command, Command::Graph | Command::Orientation | Command::Fold);
    if cli.format == Format::Dot && !dot_ok {
        Cli::command()
            .error(
                clap::error::ErrorKind::ArgumentConflict,
                "--format dot is only valid for graph, orientation and fold",
            )
            .exit();
    }
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use corect::Error as E;
    if e.downcast_ref::<BudgetExceeded>().is_some() {
        return 3;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::GammaMismatch(_)
            | E::ValuationMismatch { .. }
            | E::FoldIllDefined { .. }
            | E::NoMinimalMonomial(_)
            | E::NotAntichain(_)
            | E::HookNotDominant(_)
            | E::UnexpectedFace(_),
        ) => 1,
        _ => 2,
    }
}

fn json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Output text and exit code.
fn run(cli: &Cli) -> Result<(String, u8)> {
    let n = cli.n as usize;
    let json_out = cli.format == Format::Json;
    let text = match &cli.command {
        Command::Graph => {
            let g = PlabicGraph::corect(n)?;
            match cli.format {
                Format::Dot => g.to_dot(None),
                Format::Json => json(&render::graph_json(&g))?,
                Format::Text => render::graph_text(&g),
            }
        }
        Command::Orientation => {
            let g = PlabicGraph::corect(n)?;
            let o = corect_orientation(&g)?;
            match cli.format {
                Format::Dot => g.to_dot(Some(&o)),
                Format::Json => json(&render::orientation_json(&g, &o))?,
                Format::Text => render::orientation_text(&g, &o),
            }
        }
        Command::Flows { target } => {
            if n > 6 {
                return Err(corect::Error::SizeLimit { what: "flow enumeration", n, max: 6 }.into());
            }
            let target = IndexSet::parse(target, n)?;
            let g = PlabicGraph::corect(n)?;
            let o = corect_orientation(&g)?;
            let flows = enumerate_flows(&g, &o, &target);
            let poly = flow_polynomial(&g, &o, &target);
            if json_out {
                json(&render::flows_json(&g, &target, &flows, &poly))?
            } else {
                render::flows_text(&g, &target, &flows, &poly)
            }
        }
        Command::Valuations => {
            let rows = all_plucker_valuations(n)?;
            if json_out {
                json(&render::valuations_json(n, &rows)?)?
            } else {
                render::valuations_text(n, &rows)?
            }
        }
        Command::Gamma { vrep, .. } => render::gamma(n, *vrep, json_out)?,
        Command::Delta { hrep, fvector, .. } => render::delta(n, *hrep, *fvector, json_out)?,
        Command::Matrix => {
            let m = build_matrix(n)?;
            if json_out {
                json(&m)?
            } else {
                format_matrix(&m.entries) + "\n"
            }
        }
        Command::Fold => {
            let q = dual_quiver(&PlabicGraph::corect(n)?);
            match cli.format {
                Format::Dot => q.to_dot(),
                Format::Json => json(&fold(&q, n)?)?,
                Format::Text => format_matrix(&fold(&q, n)?.entries) + "\n",
            }
        }
        Command::Volume => render::volume(n, json_out, cli.time_budget)?,
        Command::Counts => {
            let poset = StaircasePoset::new(n)?;
            let antichains = enumerate_antichains(&poset).len();
            let linear = linear_extension_count(&poset)?;
            let counts = serde_json::json!({
                "n": n,
                "antichains": antichains,
                "catalan": catalan(n + 1).to_string(),
                "linear_extensions": linear.to_string(),
                "staircase_syt": staircase_syt_count(n).to_string(),
            });
            if json_out {
                json(&counts)?
            } else {
                format!(
                    "antichains: {antichains}\ncatalan C({}): {}\nlinear extensions: {linear}\nstaircase SYT: {}\n",
                    n + 1,
                    catalan(n + 1),
                    staircase_syt_count(n)
                )
            }
        }
        Command::Verify { level } => {
            let report = verify::run(n, *level, cli.time_budget);
            let code = report.exit_code();
            let text = if json_out { json(&report)? } else { report.text() };
            return Ok((text, code));
        }
    };
    Ok((text, 0))
}
