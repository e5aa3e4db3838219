use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: u8 = 0;
    pub const COUNTEREXAMPLE: u8 = 1;
    pub const BAD_INPUT: u8 = 2;
    pub const LIMIT: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "hypersparse", version, about = "Vertex sparsifiers preserving small terminal cuts in hypergraphs")]
struct Cli {
    /// Worker threads for parallel stages; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fast,
    Slow,
    Poly,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a sparsifier H with its projection.
    Sparsify {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        c: u64,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        /// Constant C' in the expansion parameter of the fast pipeline.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        cprime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every connected cut in each part, ignoring expansion.
        #[arg(long)]
        safe_mode: bool,
        /// Skip the pre-contraction of highly connected vertex pairs.
        #[arg(long)]
        no_precontract: bool,
        /// Where to write H; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the projection.
        #[arg(long)]
        proj: Option<PathBuf>,
        /// Where to write a one-line JSON stats record.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Check that H with its projection preserves all terminal mincuts up to c.
    Verify {
        g: PathBuf,
        h: PathBuf,
        proj: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        c: u64,
        /// exhaustive, all-pairs or sampled:N; exhaustive when |T| is small,
        /// else sampled:1000.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the machine-readable line format instead of the text block.
        #[arg(long)]
        lines: bool,
    },
    /// List connected cuts with value at most c.
    EnumerateCuts {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        c: u64,
        /// Inverse expansion; as integer, fraction or decimal. Without it
        /// every connected cut is listed.
        #[arg(long)]
        phi_inv: Option<String>,
        /// Write the pruned auxiliary graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Split the vertex set into expanders.
    Decompose {
        input: PathBuf,
        /// Target expansion in (0, 1]; integer, fraction or decimal.
        #[arg(long)]
        phi: String,
    },
    /// Print size parameters of an instance.
    Stats { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot set up {threads} threads: {e}");
            return ExitCode::from(exit::BAD_INPUT);
        }
    }
    let result = match cli.command {
        Command::Sparsify {
            input,
            c,
            method,
            cprime,
            seed,
            safe_mode,
            no_precontract,
            out,
            proj,
            stats,
        } => commands::sparsify(commands::SparsifyArgs {
            input,
            c: c as usize,
            method,
            cprime,
            seed,
            safe_mode,
            precontract: !no_precontract,
            out,
            proj,
            stats,
        }),
        Command::Verify {
            g,
            h,
            proj,
            c,
            mode,
            seed,
            lines,
        } => commands::verify(&g, &h, &proj, c as usize, mode.as_deref(), seed, lines),
        Command::EnumerateCuts { input, c, phi_inv, dot } => {
            commands::enumerate_cuts(&input, c as usize, phi_inv.as_deref(), dot.as_deref())
        }
        Command::Decompose { input, phi } => commands::decompose(&input, &phi),
        Command::Stats { input } => commands::stats(&input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
