//! `nervelab`: nerves of cover sequences, canonical maps, selections and
//! C-refinement search on finite polyhedra, from the command line.

mod commands;
mod input;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "nervelab", version, about = "Nerves, canonical maps and C-refinements of star-set covers")]
pub struct Cli {
    /// Output format. DOT is available for complexes and nerves.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

/// A main input given either as `--<flag> PATH` or positionally; `-` is stdin.
macro_rules! input_arg {
    ($name:ident, $flag:literal, $help:literal) => {
        #[derive(Args, Debug, Clone)]
        pub struct $name {
            #[doc = $help]
            #[arg(long = $flag, value_name = "PATH", conflicts_with = "positional")]
            pub flag: Option<PathBuf>,
            #[doc = $help]
            #[arg(value_name = "PATH")]
            pub positional: Option<PathBuf>,
        }

        impl $name {
            pub fn path(&self) -> CliResult<&std::path::Path> {
                self.flag.as_deref().or(self.positional.as_deref()).ok_or_else(|| {
                    CliError::Input(concat!("missing input: pass --", $flag, " PATH or a positional path").into())
                })
            }
        }
    };
}

input_arg!(SpaceInput, "space", "Complex JSON");
input_arg!(CoverInput, "cover", "Cover sequence JSON");
input_arg!(PhiInput, "phi", "Carrier mapping sequence JSON");
input_arg!(ConeInput, "input", "Cone extension JSON");

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarise a complex, or its barycentric subdivision at `--level`.
    Complex {
        #[command(flatten)]
        space: SpaceInput,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// The nerve of the prefix of the first `--kappa` levels.
    Nerve {
        #[command(flatten)]
        cover: CoverInput,
        /// A number of levels, or `omega` for all of them.
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
    },
    /// The one-element-per-level subcomplex of the indexed nerve.
    Delta {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
        /// Build it from the unindexed union of the levels instead.
        #[arg(long)]
        unindexed: bool,
    },
    /// Canonical maps into the nerve or its one-per-level subcomplex.
    #[command(subcommand)]
    Canonical(CanonicalCmd),
    /// Selection predicates.
    #[command(subcommand)]
    Selection(SelectionCmd),
    /// C-refinements: construct, search, verify, extract.
    #[command(subcommand)]
    Crefine(CrefineCmd),
    /// Dimension of a complex.
    Dim {
        #[command(flatten)]
        space: SpaceInput,
    },
    /// Extend a simplicial map over a cone, sending the apex to a witness.
    ConeExtend {
        #[command(flatten)]
        input: ConeInput,
    },
    /// Try increasing numbers of families until a C-refinement is found.
    MuDriver {
        #[command(flatten)]
        cover: CoverInput,
        /// `c`, `finite-c` or `dim:<n>`.
        #[arg(long, alias = "mu", default_value = "c")]
        mode: nerve_core::dimension::MuMode,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Run the fixture corpus and print a pass/fail table.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Nerve,
    Delta,
}

impl From<KindArg> for nerve_core::NerveKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Nerve => nerve_core::NerveKind::FullNerve,
            KindArg::Delta => nerve_core::NerveKind::Delta,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum CanonicalCmd {
    /// Build a canonical map at the working level.
    Build {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
        #[arg(long, value_enum, default_value = "nerve")]
        kind: KindArg,
    },
    /// Check that a map is canonical.
    Check {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
        #[arg(long, value_enum, default_value = "nerve")]
        kind: KindArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum SelectionCmd {
    /// Check that a map into the nerve is a selection of the kernel mapping.
    Check {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
        #[arg(long, value_enum, default_value = "nerve")]
        kind: KindArg,
    },
    /// The vertex-star selection of the first table, with its check.
    Vertex {
        #[command(flatten)]
        phi: PhiInput,
    },
    /// Check the skeletal condition of a map on the one-per-level nerve.
    Skeletal {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        phi: PathBuf,
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
    },
    /// Extend a skeletal selection by one level through the cone witness.
    Extend {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        phi: PathBuf,
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CrefineCmd {
    /// The barycentric colouring with `n + 1` families.
    Construct {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long)]
        n: usize,
    },
    /// Bounded search for `--kappa` families up to `--max-level`.
    Search {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Verify a C-refinement against its source sequence.
    Verify {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        refinement: PathBuf,
    },
    /// Read the families back from a canonical map.
    Extract {
        #[command(flatten)]
        cover: CoverInput,
        #[arg(long, value_name = "PATH")]
        map: PathBuf,
        #[arg(long, default_value = "omega")]
        kappa: commands::KappaArg,
        #[arg(long, value_enum, default_value = "nerve")]
        kind: KindArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
