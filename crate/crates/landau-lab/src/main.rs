use std::process::ExitCode;

use clap::{Parser, Subcommand};
use landau_core::ensemble::Statistic;
use landau_lab::commands::{cmd_gapcheck, cmd_grushin, cmd_mc, cmd_mehler, cmd_quantize};
use landau_lab::config::{CommonArgs, GapArgs, GrushinArgs, McArgs, MehlerArgs, QuantizeArgs};

/// Semiclassical spectral studies for random Landau operators.
#[derive(Parser)]
#[command(name = "landau", version)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantize a symbol in the Hermite basis.
    Quantize(QuantizeArgs),
    /// Radial eigenvalues by three routes.
    Mehler(MehlerArgs),
    /// Spectral gap assumption of the corrected single-site operator.
    Gapcheck(GapArgs),
    /// Effective Hamiltonian residual and equivalence check.
    Grushin(GrushinArgs),
    /// At least one eigenvalue in the interval.
    Wegner(McArgs),
    /// At least two eigenvalues in the interval.
    Minami(McArgs),
    /// Largest coupling within epsilon of the band edge.
    Bandedge(McArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let c = &cli.common;
    let result = match &cli.command {
        Command::Quantize(a) => cmd_quantize(a, c),
        Command::Mehler(a) => cmd_mehler(a, c),
        Command::Gapcheck(a) => cmd_gapcheck(a, c),
        Command::Grushin(a) => cmd_grushin(a, c),
        Command::Wegner(a) => cmd_mc(a, c, Statistic::Wegner),
        Command::Minami(a) => cmd_mc(a, c, Statistic::Minami),
        Command::Bandedge(a) => cmd_mc(a, c, Statistic::BandEdge),
    };
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("landau: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
