//! Command-line driver: table reproduction, verification suites, orbit diagrams and
//! golden files.
//!
//! Every command produces one [`Artifact`]: a relative path stem, a format and a body.
//! By default the body goes to stdout. `--output` names a file, `--out-dir` (or the
//! `COLLAPSING_OUT_DIR` environment variable) a directory under which the stem is
//! used, and `--bless` rewrites the committed golden file instead.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, 3 capacity.

mod commands;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::rootsys::TypeLabel;
pub use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Directory holding the committed golden files.
pub const DEFAULT_GOLDEN_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");

#[derive(Debug, Parser)]
#[command(name = "collapsing", version, about = "Collapsing levels, free-field realizations and associated varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (each command lists the formats it supports).
    #[arg(long, short, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Write the output under this directory, at the command's artifact path.
    #[arg(long, global = true, env = "COLLAPSING_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Rewrite the golden file for this output (or all of them, with `golden`).
    #[arg(long, global = true)]
    pub bless: bool,
    /// Location of the golden files.
    #[arg(long, global = true, env = "COLLAPSING_GOLDEN_DIR", default_value = DEFAULT_GOLDEN_DIR)]
    pub golden_dir: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce a classification table, symbolically or for one algebra.
    Tables {
        #[arg(value_enum)]
        which: TableName,
        #[command(flatten)]
        sel: Selector,
    },
    /// Run a verification suite; exit status 1 if any check fails.
    Verify(VerifyArgs),
    /// Nilpotent orbit diagrams and the χ-correspondence.
    Orbits {
        #[arg(value_enum)]
        which: OrbitsCommand,
        #[command(flatten)]
        sel: Selector,
        /// Restrict the Hasse diagram to the closure of `richardson` or of an orbit label such as `[3,1^4]`.
        #[arg(long)]
        below: Option<String>,
    },
    /// Export the matrix realization of a classical algebra.
    Algebra {
        #[command(flatten)]
        sel: Selector,
    },
    /// Compare every golden artifact with a fresh computation (or rewrite them with `--bless`).
    Golden,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Parabolic,
    Collapsing,
    Natural,
    Table5,
}

impl TableName {
    pub fn as_str(self) -> &'static str {
        match self {
            TableName::Parabolic => "parabolic",
            TableName::Collapsing => "collapsing",
            TableName::Natural => "natural",
            TableName::Table5 => "table5",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrbitsCommand {
    Hasse,
    Dims,
    ChiMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Affine relations of a free-field realization.
    Ff,
    /// Zhu-level map and the Zhu/C₂ square.
    Zhu,
    /// Nilpotency of the BRST charge and the embedding of the centralizer currents.
    Brst,
    /// The χ-correspondence, by Jordan types of sampled matrices.
    Chi,
    /// Central charge identity at collapsing levels.
    Charges,
}

/// Algebra selection shared by the commands.
#[derive(Clone, Debug, Default, Args)]
pub struct Selector {
    /// Cartan type (A, B, C, D, E).
    #[arg(long = "type", value_parser = parse_type)]
    pub type_label: Option<TypeLabel>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Index k of the maximal parabolic p_{α_k} (1-based).
    #[arg(long)]
    pub parabolic: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    #[command(flatten)]
    pub sel: Selector,
    /// Explicit realization family for `ff`: A@-1, A@-n, C, B, D@-2, D@-n+2.
    #[arg(long)]
    pub family: Option<String>,
    /// Depth bound for the mode oracle.
    #[arg(long)]
    pub cutoff: Option<i64>,
    /// Samples per orbit for `chi`.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Levels for `brst` (repeatable; rationals such as -1/3).
    #[arg(long = "level", allow_hyphen_values = true)]
    pub levels: Vec<String>,
    /// Polynomial degree bound for the `zhu` homomorphism check.
    #[arg(long, default_value_t = 3)]
    pub degree: u32,
}

fn parse_type(s: &str) -> Result<TypeLabel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    /// Relative path without extension, e.g. `tables/collapsing`.
    pub stem: String,
    pub format: Format,
    pub body: String,
    /// `Some(false)` when a verification failed.
    pub passed: Option<bool>,
}

impl Artifact {
    pub fn relative_path(&self) -> PathBuf {
        PathBuf::from(format!("{}.{}", self.stem, self.format.extension()))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Invalid(_)
        | Error::Unsupported(_)
        | Error::Parse(_)
        | Error::NonCommutative(_)
        | Error::LevelCondition(_) => EXIT_USAGE,
        Error::UnresolvedBaseCase(_) | Error::Io(_) | Error::Json(_) => EXIT_VERIFY,
    }
}

/// Parse arguments (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    if let Command::Golden = cli.command {
        return golden(cli, out);
    }
    let a = commands::dispatch(&cli.command, cli.format)?;
    if cli.bless {
        let path = write_under(&cli.golden_dir, &a)?;
        writeln!(err, "blessed {}", path.display())?;
    } else if let Some(path) = &cli.output {
        write_file(path, &a.body)?;
    } else if let Some(dir) = &cli.out_dir {
        let path = write_under(dir, &a)?;
        writeln!(err, "wrote {}", path.display())?;
    } else {
        out.write_all(a.body.as_bytes())?;
    }
    Ok(if a.passed == Some(false) { EXIT_VERIFY } else { EXIT_OK })
}

fn write_file(path: &Path, body: &str) -> crate::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, body)?;
    Ok(())
}

fn write_under(dir: &Path, a: &Artifact) -> crate::Result<PathBuf> {
    let path = dir.join(a.relative_path());
    write_file(&path, &a.body)?;
    Ok(path)
}

/// Argument lists whose outputs are committed as golden files.
pub fn golden_manifest() -> Vec<Vec<String>> {
    let mut m: Vec<Vec<String>> = Vec::new();
    let mut push = |args: &[&str]| m.push(args.iter().map(|s| s.to_string()).collect());
    for which in ["parabolic", "collapsing", "natural", "table5"] {
        for f in ["markdown", "json", "csv"] {
            push(&["tables", which, "--format", f]);
        }
    }
    for (which, t, r) in [("natural", "C", "4"), ("table5", "D", "5"), ("table5", "C", "4"), ("parabolic", "E", "7")] {
        for f in ["markdown", "json"] {
            push(&["tables", which, "--type", t, "--rank", r, "--format", f]);
        }
    }
    let mut chi: Vec<(String, usize, usize)> = Vec::new();
    for r in 2..=6 {
        chi.push(("A".into(), r, 1));
        chi.push(("B".into(), r, 1));
        chi.push(("C".into(), r, r));
    }
    chi.push(("A".into(), 3, 2));
    chi.push(("A".into(), 5, 3));
    for r in 4..=6 {
        chi.push(("D".into(), r, 1));
        chi.push(("D".into(), r, r));
    }
    chi.push(("E".into(), 6, 1));
    for (t, r, k) in &chi {
        let (r, k) = (r.to_string(), k.to_string());
        for f in ["dot", "json"] {
            push(&["orbits", "chi-map", "--type", t, "--rank", &r, "--parabolic", &k, "--format", f]);
            push(&["orbits", "hasse", "--type", t, "--rank", &r, "--parabolic", &k, "--below", "richardson", "--format", f]);
        }
    }
    for (t, r) in [("A", "4"), ("B", "3"), ("C", "3"), ("D", "4")] {
        for f in ["dot", "json"] {
            push(&["orbits", "hasse", "--type", t, "--rank", r, "--format", f]);
        }
        push(&["orbits", "dims", "--type", t, "--rank", r, "--format", "markdown"]);
    }
    for (t, r) in [("A", "2"), ("C", "2"), ("B", "2")] {
        push(&["algebra", "--type", t, "--rank", r]);
    }
    m
}

/// Compute every manifest artifact and compare with (or, under `--bless`, write) the
/// golden directory.
fn golden(cli: &Cli, out: &mut dyn Write) -> crate::Result<i32> {
    let mut bad = 0;
    for args in golden_manifest() {
        let sub = Cli::try_parse_from(std::iter::once("collapsing".to_string()).chain(args.iter().cloned()))
            .map_err(|e| Error::Invalid(format!("manifest entry {args:?}: {e}")))?;
        let a = commands::dispatch(&sub.command, sub.format)?;
        let path = cli.golden_dir.join(a.relative_path());
        let rel = a.relative_path().display().to_string();
        if cli.bless {
            write_file(&path, &a.body)?;
            writeln!(out, "blessed {rel}")?;
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(s) if s == a.body => writeln!(out, "ok       {rel}")?,
            Ok(_) => {
                bad += 1;
                writeln!(out, "MISMATCH {rel}")?
            }
            Err(_) => {
                bad += 1;
                writeln!(out, "MISSING  {rel}")?
            }
        }
    }
    Ok(if bad == 0 { EXIT_OK } else { EXIT_VERIFY })
}

/// Run a command in-process and return its artifact (used by tests and examples).
pub fn artifact<I, T>(args: I) -> crate::Result<Artifact>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Invalid(e.to_string()))?;
    commands::dispatch(&cli.command, cli.format)
}
