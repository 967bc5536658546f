mod dim;
mod output;
mod qbg;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qbgdim_core::affine::DEFAULT_ADM_CAP;
use qbgdim_core::qbg::{DEFAULT_PATH_CAP, DEFAULT_QBG_BUDGET};
use qbgdim_core::weyl::DEFAULT_GROUP_BUDGET;
use qbgdim_core::{Budgets, CartanType, Context, Error, Lattice};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "qbgdim", version, about = "Weyl group, quantum Bruhat graph and parahoric dimension-formula tools")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct GlobalArgs {
    /// Cartan type such as A2, C3, E6; an `aff` suffix (C2aff) selects levels containing the affine node.
    #[arg(long = "type", global = true)]
    pub ty: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = LatticeArg::Adjoint)]
    pub lattice: LatticeArg,
    /// Largest Weyl group enumerated; also the orbit-conjugacy bound.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub group_budget: u64,
    /// Largest quantum Bruhat graph built.
    #[arg(long, global = true, default_value_t = DEFAULT_QBG_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub qbg_budget: u64,
    /// Largest `<2 rho, mu>` for admissible sets.
    #[arg(long, global = true, default_value_t = DEFAULT_ADM_CAP, value_parser = clap::value_parser!(i64).range(1..))]
    pub adm_cap: i64,
    /// Shortest paths enumerated per pair.
    #[arg(long, global = true, default_value_t = DEFAULT_PATH_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub path_cap: u64,
    /// Worker threads (0 = all cores). Does not affect output.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LatticeArg {
    Adjoint,
    Sc,
}

#[derive(Subcommand)]
enum Command {
    /// Distances, weights and exports of the quantum Bruhat graph.
    Qbg {
        #[command(subcommand)]
        cmd: qbg::QbgCmd,
    },
    /// Exhaustive verification suites.
    Verify {
        #[command(subcommand)]
        cmd: verify::VerifyCmd,
    },
    /// Evaluates the dimension formula with its hypothesis report.
    Dim(dim::DimArgs),
}

/// Parsed run configuration shared by all commands.
pub struct Run {
    pub ty_text: String,
    pub affine: bool,
    pub ctx: Context,
}

impl GlobalArgs {
    pub fn run(&self) -> Result<Run, Error> {
        let text = self
            .ty
            .clone()
            .ok_or_else(|| Error::Invalid("--type is required".into()))?;
        let (base, affine) = match text.strip_suffix("aff") {
            Some(b) => (b, true),
            None => (text.as_str(), false),
        };
        let ty: CartanType = base.parse()?;
        let lattice = match self.lattice {
            LatticeArg::Adjoint => Lattice::Adjoint,
            LatticeArg::Sc => Lattice::Sc,
        };
        let budgets = Budgets {
            group: self.group_budget,
            qbg: self.qbg_budget,
            adm_cap: self.adm_cap,
            path_cap: self.path_cap as usize,
        };
        Ok(Run {
            ty_text: text.clone(),
            affine,
            ctx: Context::new(ty, lattice, budgets),
        })
    }
}

/// Process outcome of a command.
pub enum Outcome {
    Ok,
    VerificationFailed,
    BudgetExceeded,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    let result = cli.global.run().and_then(|run| match &cli.command {
        Command::Qbg { cmd } => qbg::execute(cmd, &run, cli.global.format),
        Command::Verify { cmd } => verify::execute(cmd, &run, cli.global.format),
        Command::Dim(args) => dim::execute(args, &run, cli.global.format),
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Ok(Outcome::BudgetExceeded) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
