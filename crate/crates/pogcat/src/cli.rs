use std::path::Path;

use clap::{Args, Parser, Subcommand};
use pogcat_core::scalars::parse_rational;
use pogcat_core::Rational;

use crate::commands::{self, usage, CliError};
use crate::fixtures;
use crate::format::{parse_coeff, parse_workspace, Overrides, Workspace};
use crate::pipeline::pipeline;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "pogcat", version, about = "Checks and constructions for categories over partially ordered groups")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Highest arity checked
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Longest word in quotient homs
    #[arg(long, global = true)]
    pub lmax: Option<usize>,
    /// Energy cutoff, e.g. 5/2
    #[arg(long, global = true, value_parser = rational)]
    pub cutoff: Option<Rational>,
    /// Energy gap, e.g. 1/2
    #[arg(long, global = true, value_parser = rational)]
    pub eps: Option<Rational>,
    /// Coefficients: z or f2
    #[arg(long, global = true)]
    pub coeff: Option<String>,
    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every declared category, module, functor and action
    Check { file: String },
    /// Quotients of the monomial module over (1/n)Z and its completion
    DemoNovikov {
        #[arg(long)]
        n: u64,
        #[arg(long = "at", value_parser = rational)]
        at: Rational,
    },
    /// Stages, colimit, completion and base change for the declared pipeline
    Pipeline {
        file: String,
        /// Exhaustion depth, overriding the workspace
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The orbit category of a declared action
    Orbit {
        file: String,
        #[arg(long)]
        action: String,
        /// Largest grade kept for infinite groups
        #[arg(long, value_parser = rational)]
        window: Option<Rational>,
    },
    /// The unorbit of a graded category
    Unorbit {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long, value_parser = rational)]
        window: Option<Rational>,
    },
    /// Compare the colimit over an exhaustion with the direct unorbit
    Reconstruct {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long)]
        depth: usize,
        /// Grades compared, comma separated; defaults to 0 and every generator grade
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        grades: Option<Vec<Rational>>,
    },
    /// The quotient by a set of objects
    Quotient {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long, value_delimiter = ',', required = true)]
        by: Vec<String>,
    },
    /// Localization at morphisms given as chains
    Localize {
        file: String,
        #[arg(long)]
        category: String,
        #[arg(long, required = true)]
        at: Vec<String>,
    },
    /// Twisted complexes declared over a category
    Tw {
        file: String,
        #[arg(long)]
        category: String,
    },
    /// Bounding cochains and the twisted complexes they generate
    Bc {
        file: String,
        #[arg(long)]
        category: String,
        /// Most terms in a searched cochain
        #[arg(long, default_value_t = 1)]
        support: usize,
    },
    /// Gr homology of every hom
    Homology {
        file: String,
        #[arg(long)]
        category: String,
    },
}

/// Reads a workspace from disk, or from the bundled fixtures when no such
/// file exists.
pub fn load(file: &str, flags: &Flags) -> Result<Workspace, CliError> {
    let text = if Path::new(file).exists() {
        std::fs::read_to_string(file).map_err(|e| CliError::Io(file.to_string(), e))?
    } else if let Some(t) = fixtures::get(file) {
        t.to_string()
    } else {
        return Err(usage(format!("{}: no such file or bundled fixture", file)));
    };
    let coeff = match &flags.coeff {
        None => None,
        Some(s) => Some(parse_coeff(s).ok_or_else(|| usage(format!("--coeff must be z or f2, got {:?}", s)))?),
    };
    let over = Overrides { dmax: flags.dmax, lmax: flags.lmax, cutoff: flags.cutoff, eps: flags.eps, coeff };
    parse_workspace(&text, &over).map_err(|error| CliError::Parse { path: file.to_string(), error })
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let f = &cli.flags;
    match &cli.command {
        Command::Check { file } => commands::check(&load(file, f)?),
        Command::DemoNovikov { n, at } => commands::demo_novikov(*n, *at),
        Command::Pipeline { file, depth } => {
            let mut ws = load(file, f)?;
            if let (Some(d), Some(p)) = (depth, ws.pipeline.as_mut()) {
                p.depth = *d;
            }
            pipeline(&ws)
        }
        Command::Orbit { file, action, window } => commands::orbit_cmd(&load(file, f)?, action, *window),
        Command::Unorbit { file, category, window } => commands::unorbit_cmd(&load(file, f)?, category, *window),
        Command::Reconstruct { file, category, depth, grades } => commands::reconstruct_cmd(&load(file, f)?, category, *depth, grades.clone()),
        Command::Quotient { file, category, by } => commands::quotient_cmd(&load(file, f)?, category, by),
        Command::Localize { file, category, at } => commands::localize_cmd(&load(file, f)?, category, at),
        Command::Tw { file, category } => commands::tw_cmd(&load(file, f)?, category),
        Command::Bc { file, category, support } => commands::bc_cmd(&load(file, f)?, category, *support),
        Command::Homology { file, category } => commands::homology_cmd(&load(file, f)?, category),
    }
}

/// Runs a parsed command line; returns what to print and the exit code.
pub fn run(cli: &Cli) -> (String, String, i32) {
    match execute(cli) {
        Ok(r) => {
            let out = if cli.flags.json { r.to_json() } else { r.to_text() };
            (out, String::new(), r.status.exit_code())
        }
        Err(e) => (String::new(), format!("error: {}\n", e), e.exit_code()),
    }
}
