//! `homlie`: checks, differentials, solvers and deformations for Hom-Lie
//! conformal superalgebras given in the sectioned file format.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "homlie", version, about = "Exact computations with Hom-Lie conformal superalgebras")]
struct Cli {
    /// Append wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Axiom suite and regularity of an algebra.
    Check { file: PathBuf },
    /// d(dγ) for the cochains of a file and for seeded random cochains.
    D2 {
        file: PathBuf,
        cochains: Option<PathBuf>,
        /// adjoint, shift:S, or the name of a [rep] section
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 0)]
        trials: u32,
        #[arg(long)]
        seed: Option<u64>,
        /// Arities of the random cochains, used in turn.
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        arity: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// Basis of a derivation class (or the center) within a degree window.
    Solve {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        deg_l: u32,
        #[arg(long)]
        deg_d: u32,
        /// Write the basis in the map-file format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class check of the maps (or the basis) in a map file.
    Verify {
        file: PathBuf,
        maps: PathBuf,
        #[arg(long, default_value = "der")]
        class: String,
    },
    /// Nijenhuis check and the trivial deformation of a λ-free map.
    Nijenhuis {
        file: PathBuf,
        maps: PathBuf,
        #[arg(long)]
        map: Option<String>,
    },
    /// Deformation by a 2-cochain.
    Deform {
        file: PathBuf,
        cochains: PathBuf,
        #[arg(long)]
        cochain: Option<String>,
    },
    /// Extension by a derivation and its axiom suite.
    Extend {
        file: PathBuf,
        maps: PathBuf,
        #[arg(long)]
        map: Option<String>,
    },
    /// Inclusions, commutator containments, decompositions and the center.
    Audit {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        deg_l: u32,
        #[arg(long)]
        deg_d: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = match run::dispatch(cli.command, cli.timing) {
        Ok(report) => {
            print!("{}", report.render());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code)
}
