use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// `println!` that ignores a closed stdout, so piping into `head` is quiet.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod commands;
mod workspace;

/// Bad input from the user: unreadable files, malformed JSON, unknown refs.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "butterfly", version, about = "Crossed modules, butterflies and weak morphisms of finite 2-groups")]
pub struct Cli {
    /// Workspace directory holding the object store
    #[arg(long, global = true, env = "BUTTERFLY_WORKSPACE", default_value = ".butterfly")]
    pub workspace: PathBuf,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Re-validate every computed object before storing it
    #[arg(long, global = true)]
    pub check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check an object and report every violated condition
    Validate { input: String },
    /// Compose two butterflies (first one applied first)
    Compose {
        first: String,
        second: String,
        /// Also search for an isomorphism to --expect, or to the identity
        #[arg(long)]
        witness: bool,
        #[arg(long, requires = "witness")]
        expect: Option<String>,
    },
    /// The identity butterfly of a crossed module
    Identity { input: String },
    /// Swap the wings of a flippable butterfly
    Flip { input: String },
    /// The split butterfly of a crossed-module morphism
    Split { input: String },
    /// The span of crossed-module morphisms underlying a butterfly
    Span { input: String },
    /// Weak morphisms as monoidal functors
    Weakmap {
        #[command(subcommand)]
        command: WeakmapCommand,
    },
    /// Classify extensions of H by G
    Classify(ClassifyArgs),
    /// Run law suites on generated fixtures
    Suite(SuiteArgs),
    /// Inspect the object store
    Store {
        #[command(subcommand)]
        command: StoreCommand,
    },
}

#[derive(Subcommand)]
pub enum WeakmapCommand {
    /// Extract the monoidal functor of a butterfly along a section of sigma
    Extract {
        input: String,
        /// Section values s(0), s(1), ... as elements of E; canonical if omitted
        #[arg(long, value_delimiter = ',')]
        section: Option<Vec<usize>>,
    },
    /// Rebuild a butterfly from a monoidal functor
    Build { input: String },
    /// Search for a monoidal natural isomorphism between two functors
    Iso { first: String, second: String },
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Quotient group H (file, ref or catalog name)
    pub h: String,
    /// Kernel group G (file, ref or catalog name)
    pub g: String,
    /// Also count classes of factor sets and compare
    #[arg(long)]
    pub oracle: bool,
    /// Print the CSV summary instead of the class table
    #[arg(long)]
    pub csv: bool,
    #[arg(long, default_value_t = butterfly_core::extension::CLASSIFY_BOUND)]
    pub bound: usize,
}

#[derive(Args)]
pub struct SuiteArgs {
    /// Suite name, or "all"
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub bound: usize,
    /// Inject each suite's designated fault
    #[arg(long)]
    pub fault: bool,
}

#[derive(Subcommand)]
pub enum StoreCommand {
    /// List stored objects
    Ls,
    /// Print a stored object exactly as stored
    Get { r#ref: String },
    /// Store an object file and print its ref
    Put { input: String },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use butterfly_core::Error as E;
    for cause in err.chain() {
        if cause.is::<Usage>() || cause.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Parse(_) | E::UnknownKind(_) | E::UnknownSuite(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
