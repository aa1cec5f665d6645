use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod verdict;

use verdict::Verdict;

/// Batch queries on qW presentations, quantum tori and quantum Weyl
/// algebras given as `.qwa` files.
#[derive(Parser)]
#[command(name = "qwa", version)]
struct Cli {
    /// Print the machine block as a JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility, cross-checked against the overlap test.
    Check { file: PathBuf },
    /// Reduce to the canonical algebra S_{n,r}^Λ.
    Reduce {
        file: PathBuf,
        /// Write the canonical presentation to this path (`-` for stdout).
        #[arg(long)]
        emit_qwa: Option<PathBuf>,
    },
    /// Rational invariants of the reduced algebra.
    Invariants { file: PathBuf },
    /// Quantum torus queries.
    Torus {
        #[command(subcommand)]
        query: TorusQuery,
    },
    /// Quantum Weyl algebras from a `qweyl { ... }` block.
    Qweyl {
        #[command(subcommand)]
        query: QweylQuery,
    },
    /// Embeddings into mixed Weyl fields.
    Embed {
        #[command(subcommand)]
        query: EmbedQuery,
    },
    /// Rational equivalence of two admissible presentations.
    Equiv { first: PathBuf, second: PathBuf },
    /// Print a file in normal form.
    Normalize { file: PathBuf },
}

#[derive(Subcommand)]
enum TorusQuery {
    Simple { file: PathBuf },
    Center { file: PathBuf },
    /// Isomorphism test for tori with weights powers of one parameter.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "q")]
        param: String,
    },
    /// Check `y_i ↦ y'^{column i}`; rows separated by `;`, entries by `,`.
    Morphism {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum QweylQuery {
    Localize { file: PathBuf },
    Invariants { file: PathBuf },
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
enum EmbedQuery {
    /// Embed an all-quantum presentation's torus.
    Torus { file: PathBuf },
    /// Embed the reduced algebra into a mixed Weyl field.
    Mixed { file: PathBuf },
    /// Verify a `map { ... }` block (in `map_file`, next to its target
    /// presentation) against the source presentation.
    Verify { source: PathBuf, map_file: PathBuf },
}

fn run(cmd: &Command) -> Result<Verdict, String> {
    use commands as c;
    match cmd {
        Command::Check { file } => c::check(file),
        Command::Reduce { file, emit_qwa } => c::reduce(file, emit_qwa.as_deref()),
        Command::Invariants { file } => c::invariants(file),
        Command::Torus { query } => match query {
            TorusQuery::Simple { file } => c::torus_simple(file),
            TorusQuery::Center { file } => c::torus_center(file),
            TorusQuery::Iso { first, second, param } => c::torus_iso(first, second, param),
            TorusQuery::Morphism { source, target, matrix } => c::torus_morphism(source, target, matrix),
        },
        Command::Qweyl { query } => match query {
            QweylQuery::Localize { file } => c::qweyl_localize(file),
            QweylQuery::Invariants { file } => c::qweyl_invariants(file),
            QweylQuery::Equiv { first, second } => c::qweyl_equiv(first, second),
        },
        Command::Embed { query } => match query {
            EmbedQuery::Torus { file } => c::embed_torus(file),
            EmbedQuery::Mixed { file } => c::embed_mixed(file),
            EmbedQuery::Verify { source, map_file } => c::embed_verify(source, map_file),
        },
        Command::Equiv { first, second } => c::equiv(first, second),
        Command::Normalize { file } => c::normalize(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(v) => {
            print!("{}", v.render(cli.json));
            ExitCode::from(v.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
