//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::certificate::{compress, make_certificate, Method};
use crate::error::Error;
use crate::format;
use crate::lz77::parse_lz77;
use crate::oracle::{smallest_grammar_size, SMALLEST_GRAMMAR_MAX_LEN};
use crate::rand_access::{build_block_structure, default_base};
use crate::tape_sim::run_tape_parser;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lzgrammar",
    version,
    about = "Grammar-based compression via LZ77 and Bisection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the LZ77 token stream of a file.
    Parse {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Build a grammar for a file.
    Compress {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Best)]
        method: MethodArg,
    },
    /// Expand a grammar file back into bytes.
    Decompress {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Print stage sizes and the approximation certificate.
    Stats {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Build a random-access block structure.
    RaBuild {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// 0 selects the default base for the input length.
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Read bytes through a block structure file.
    RaAccess {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long)]
        pos: usize,
        #[arg(long, default_value_t = 1)]
        len: usize,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Run the tape-based LZ77 parser and report head statistics.
    TapeRun {
        input: PathBuf,
        /// Also write the token stream here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleQuery {
    /// Exact smallest grammar size (inputs of at most 8 bytes).
    Smallest {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Best,
    Lz77cnf,
    Bisection,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Best => Method::Best,
            MethodArg::Lz77cnf => Method::Lz77Cnf,
            MethodArg::Bisection => Method::Bisection,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Malformed(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cyclic(_) => Failure::Verify(e.to_string()),
            e => Failure::Malformed(e.to_string()),
        }
    }
}

/// Runs one command; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "lzgrammar: {}", f.message());
            f.code()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Parse { input, output } => {
            let text = read_input(&input)?;
            emit(
                output.as_deref(),
                stdout,
                format::write_parse(&parse_lz77(&text)).as_bytes(),
            )
        }
        Command::Compress {
            input,
            output,
            method,
        } => {
            let text = read_input(&input)?;
            let grammar = compress(&text, method.into())?;
            if grammar.expand() != text {
                return Err(Failure::Verify(
                    "grammar does not expand to the input".into(),
                ));
            }
            let serialized = format::write_grammar(&grammar)?;
            // the file as written must read back to the same text
            if format::read_grammar(&serialized)?.expand() != text {
                return Err(Failure::Verify(
                    "serialized grammar does not expand to the input".into(),
                ));
            }
            emit(output.as_deref(), stdout, serialized.as_bytes())
        }
        Command::Decompress { input, output } => {
            let grammar = format::read_grammar(&read_text(&input)?)?;
            emit(output.as_deref(), stdout, &grammar.expand())
        }
        Command::Stats { input, output } => {
            let text = read_input(&input)?;
            let cert = make_certificate(&text)?;
            let mut report = cert.to_string();
            if text.len() <= SMALLEST_GRAMMAR_MAX_LEN {
                let g = smallest_grammar_size(&text)?;
                report.push_str(&format!(
                    "smallest_grammar_size={g}\nbest_over_smallest={:.3}\n",
                    cert.best_size as f64 / g as f64
                ));
            }
            emit(output.as_deref(), stdout, report.as_bytes())
        }
        Command::RaBuild {
            input,
            output,
            base,
        } => {
            let text = read_input(&input)?;
            let base = if base == 0 {
                default_base(text.len())
            } else {
                base
            };
            let bs = build_block_structure(&text, base)?;
            emit(
                output.as_deref(),
                stdout,
                format::write_block_structure(&bs).as_bytes(),
            )
        }
        Command::RaAccess {
            input,
            output,
            pos,
            len,
        } => {
            let bs = format::read_block_structure(&read_text(&input)?)?;
            let bytes = bs.extract(pos, len)?;
            emit(output.as_deref(), stdout, &bytes)
        }
        Command::Oracle {
            query: OracleQuery::Smallest { input, output },
        } => {
            let text = read_input(&input)?;
            let g = smallest_grammar_size(&text)?;
            emit(
                output.as_deref(),
                stdout,
                format!("smallest_grammar_size={g}\n").as_bytes(),
            )
        }
        Command::TapeRun { input, output } => {
            let text = read_input(&input)?;
            let (parse, stats) = run_tape_parser(&text);
            if let Some(path) = output.as_deref() {
                write_file(path, format::write_parse(&parse).as_bytes())?;
            }
            emit(None, stdout, stats.to_string().as_bytes())
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let bytes = read_input(path)?;
    String::from_utf8(bytes)
        .map_err(|_| Failure::Malformed(format!("{} is not a text file", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure::Malformed(format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(path) => write_file(path, bytes),
        None => stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Malformed(format!("cannot write output: {e}"))),
    }
}
