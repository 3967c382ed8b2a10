//! Command-line front end for the cutforge library.

mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use inputs::{GraphSource, Usage};

#[derive(Parser, Debug)]
#[command(name = "cutforge", version, about = "Bipartization distance of triangle-free graphs")]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "CUTFORGE_JOBS")]
    jobs: Option<usize>,
    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Sourced {
    #[command(flatten)]
    pub source: GraphSource,
    /// Seed for generated graphs.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact bipartization distance and an optimal bipartition.
    D2(Sourced),
    /// Triangle-free graphs on N vertices up to isomorphism, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Rooted cut descriptors.
    Cuts {
        #[command(subcommand)]
        command: CutsCommand,
    },
    /// Build the certificate SDP for constraint graphs of size N and save it as JSON.
    SdpAssemble(commands::AssembleArgs),
    /// Write a saved problem in SDPA sparse format.
    SdpEmit {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a saved problem with zero flag blocks and write a rational certificate.
    LpCertify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a certificate against a problem in exact arithmetic.
    Certify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Closed-form bounds.
    Bound {
        #[command(subcommand)]
        command: BoundCommand,
    },
    /// Which density regime guarantees apply to (n, m).
    Regime(commands::RegimeArgs),
    /// Minimum-degree peeling trace.
    Peel(commands::PeelArgs),
    /// D2 of a blow-up of C5 with the given class sizes.
    #[command(name = "c5-d2")]
    C5D2 {
        /// Five comma-separated class sizes.
        #[arg(long)]
        sizes: String,
        /// Skip the brute-force cross-check when the blow-up is too large.
        #[arg(long)]
        formula_only: bool,
    },
    /// Edge-maximal C5 blow-up profile subject to a D2 floor.
    C5opt {
        #[arg(long)]
        total: u64,
        #[arg(long, default_value = "0")]
        floor: String,
        #[arg(long)]
        symmetric: bool,
    },
    /// Compare D2(G)/n² with the same ratio of a uniform blow-up.
    ScaleCheck {
        #[command(flatten)]
        input: Sourced,
        #[arg(long, default_value_t = 2)]
        factor: usize,
    },
    /// Test δ(G) > 3n/8 and look for a homomorphism to C5.
    Haggkvist(Sourced),
}

#[derive(Subcommand, Debug)]
enum CutsCommand {
    /// Enumerate a cut family up to root automorphism and part swap.
    Enumerate(commands::FamilyArgs),
    /// Expected removed edges of a cut on a host graph.
    Expect(commands::CutOnGraph),
    /// Draw one bipartition from a cut; --seed drives the sampling stream.
    Sample(commands::CutOnGraph),
    /// Deterministic bipartition by conditional expectations.
    Derandomize(commands::CutOnGraph),
    /// The flag expression of a cut.
    Expression {
        #[arg(long)]
        cut: String,
    },
}

#[derive(Subcommand, Debug)]
enum BoundCommand {
    /// The Erdős-Faudree-Pach-Spencer bound for n vertices and m edges.
    Efps {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// (3/32)(n² - s² + n - s) + tail.
    Lemma1 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        stage: u64,
        #[arg(long)]
        tail: String,
    },
}

fn run(cli: &Cli) -> inputs::CliResult<report::Report> {
    use commands::*;
    match &cli.command {
        Command::D2(s) => d2(s),
        Command::Enumerate { n } => enumerate(*n),
        Command::Cuts { command } => match command {
            CutsCommand::Enumerate(a) => cuts_enumerate(a),
            CutsCommand::Expect(a) => cuts_expect(a),
            CutsCommand::Sample(a) => cuts_sample(a),
            CutsCommand::Derandomize(a) => cuts_derandomize(a),
            CutsCommand::Expression { cut } => cuts_expression(cut),
        },
        Command::SdpAssemble(a) => sdp_assemble(a),
        Command::SdpEmit { problem, out } => sdp_emit(problem, out),
        Command::LpCertify { problem, out } => lp_certify(problem, out),
        Command::Certify { problem, certificate } => certify(problem, certificate),
        Command::Bound { command } => match command {
            BoundCommand::Efps { n, m } => efps(*n, *m),
            BoundCommand::Lemma1 { n, stage, tail } => lemma1(*n, *stage, tail),
        },
        Command::Regime(a) => regime(a),
        Command::Peel(a) => peel(a),
        Command::C5D2 { sizes, formula_only } => c5_d2(sizes, *formula_only),
        Command::C5opt { total, floor, symmetric } => c5opt(*total, floor, *symmetric),
        Command::ScaleCheck { input, factor } => scale_check(input, *factor),
        Command::Haggkvist(s) => haggkvist(s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            if let Err(e) = r.emit(cli.format == Format::Json, cli.report.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.is::<Usage>() => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
