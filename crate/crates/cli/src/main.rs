mod commands;
mod report;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stp_core::complexes::{library, ComplexFile, SimplicialComplex};
use stp_core::homalg::AbGroup;

use report::SpaceInfo;

const DEFAULT_CELL_LIMIT: u128 = 200_000;

#[derive(Parser)]
#[command(name = "stp", version, about = "Finite simplicial checks of the Dold-Thom theorem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced homology of a space.
    Homology {
        /// Library name or path to a complex file.
        space: String,
        #[arg(id = "coeff_pos", value_name = "COEFF")]
        coeff: Option<String>,
        #[arg(id = "max_degree_pos", value_name = "MAX_DEGREE")]
        max_degree: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopy of the free module against the disk homotopy colimit and
    /// reduced homology.
    Verify {
        space: String,
        #[arg(id = "coeff_pos", value_name = "COEFF")]
        coeff: Option<String>,
        #[arg(id = "max_degree_pos", value_name = "MAX_DEGREE")]
        max_degree: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Integral homology of a symmetric power.
    Sympower {
        space: String,
        d: usize,
        #[arg(id = "max_degree_pos", value_name = "MAX_DEGREE")]
        max_degree: Option<usize>,
        /// Also the maps induced by SP^d -> SP^(d+1).
        #[arg(long)]
        stabilize: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopy colimits over the poset of pointed disk systems.
    Hocolim {
        space: String,
        /// Most components per disk system.
        #[arg(value_name = "K")]
        k: usize,
        #[arg(id = "coeff_pos", value_name = "COEFF")]
        coeff: Option<String>,
        #[arg(id = "max_degree_pos", value_name = "MAX_DEGREE")]
        max_degree: Option<usize>,
        /// Contractibility of the cover subcategory at every simplex.
        #[arg(long)]
        check_svk: bool,
        /// Chain-level against space-level homotopy colimit.
        #[arg(long)]
        compare_space: bool,
        /// Compare with the poset of systems of at most this many components.
        #[arg(long, value_name = "J")]
        compare_leq_k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    coeff: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Barycentric subdivisions applied to the space first.
    #[arg(long, default_value_t = 0)]
    subdivide: usize,
    #[arg(long)]
    json: bool,
    /// Let a refuted or inconclusive cover check fail the run.
    #[arg(long)]
    strict: bool,
    /// Exit 0 even when some check is inconclusive.
    #[arg(long)]
    allow_inconclusive: bool,
    /// Most simplices any built complex may have; overrides STP_CELL_LIMIT.
    #[arg(long)]
    cell_limit: Option<u128>,
    /// Include step timings (makes output vary between runs).
    #[arg(long)]
    timings: bool,
}

/// Input or usage error: exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub struct Context {
    pub command: String,
    pub space: SimplicialComplex,
    pub info: SpaceInfo,
    pub coeff: AbGroup,
    pub max_degree: Option<usize>,
    pub cell_limit: u128,
    pub strict: bool,
    pub timings: bool,
}

fn load_space(spec: &str, subdivide: usize, cell_limit: u128) -> Result<(SimplicialComplex, SpaceInfo), InputError> {
    let base = if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| InputError(format!("{spec}: {e}")))?;
        ComplexFile::parse(&text)?.to_complex()?
    } else {
        library::by_name(spec).map_err(|e| InputError(format!("{e}; library spaces are {}", library::NAMES.join(", "))))?
    };
    let mut k = base;
    for _ in 0..subdivide {
        k = k.subdivided(1);
        if k.total_count() as u128 > cell_limit {
            return Err(InputError(format!("subdivided complex has {} simplices, over the cell limit {cell_limit}", k.total_count())));
        }
    }
    let info = SpaceInfo { name: spec.to_string(), subdivisions: subdivide, vertices: k.vertex_count(), f_vector: k.f_vector() };
    Ok((k, info))
}

fn pick<T: PartialEq + std::fmt::Debug>(what: &str, positional: Option<T>, flag: Option<T>) -> Result<Option<T>, InputError> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(InputError(format!("{what} given twice: {a:?} and {b:?}"))),
        (a, b) => Ok(a.or(b)),
    }
}

fn cell_limit(flag: Option<u128>) -> Result<u128, InputError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("STP_CELL_LIMIT") {
        Ok(v) => v.trim().parse().map_err(|_| InputError(format!("STP_CELL_LIMIT={v} is not a number"))),
        Err(_) => Ok(DEFAULT_CELL_LIMIT),
    }
}

fn context(space: &str, coeff: Option<String>, max_degree: Option<usize>, common: &Common) -> Result<Context, InputError> {
    let cell_limit = cell_limit(common.cell_limit)?;
    let coeff = pick("coefficient group", coeff, common.coeff.clone())?.unwrap_or_else(|| "Z".into());
    let coeff: AbGroup = coeff.parse()?;
    let max_degree = pick("max degree", max_degree, common.max_degree)?;
    let (space, info) = load_space(space, common.subdivide, cell_limit)?;
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    Ok(Context { command, space, info, coeff, max_degree, cell_limit, strict: common.strict, timings: common.timings })
}

fn self_check() -> Result<(), String> {
    for name in library::NAMES {
        let name = if *name == "wedge_circles(k)" { "wedge_circles(2)" } else { name };
        library::self_check(name)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(report::Report, Common), InputError> {
    match cli.command {
        Command::Homology { space, coeff, max_degree, common } => {
            let ctx = context(&space, coeff, max_degree, &common)?;
            Ok((commands::homology_cmd(&ctx)?, common))
        }
        Command::Verify { space, coeff, max_degree, common } => {
            let ctx = context(&space, coeff, max_degree, &common)?;
            Ok((commands::verify(&ctx)?, common))
        }
        Command::Sympower { space, d, max_degree, stabilize, common } => {
            if common.coeff.is_some() {
                return Err(InputError("sympower reports integral homology; --coeff is not accepted".into()));
            }
            let ctx = context(&space, None, max_degree, &common)?;
            Ok((commands::sympower(&ctx, d, stabilize)?, common))
        }
        Command::Hocolim { space, k, coeff, max_degree, check_svk, compare_space, compare_leq_k, common } => {
            let ctx = context(&space, coeff, max_degree, &common)?;
            let flags = commands::HocolimFlags { check_svk, compare_space, compare_leq_k };
            Ok((commands::hocolim(&ctx, k, &flags)?, common))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = self_check() {
        eprintln!("stp: built-in library failed its self-check: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok((report, common)) => {
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code(common.allow_inconclusive) as u8)
        }
        Err(InputError(msg)) => {
            eprintln!("stp: {msg}");
            ExitCode::from(2)
        }
    }
}
