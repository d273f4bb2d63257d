//! The `brauer` command line.
//!
//! Exit status is 0 on success, 2 when flags or input files are invalid and 1
//! when a computation fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{evaluate_word, verify_presentation, GeneratorWord};
use crate::centralizer::{
    decompose_in_brauer_basis, verify_isomorphism, RankStrategy, VerifyOptions, DEFAULT_BUDGET, DEFAULT_SEED,
};
use crate::diagram::{parse_blocks, GeneralizedDiagram};
use crate::error::Error;
use crate::oriented::{hom_dim, hom_vanishing_predicate, OrientationSeq};
use crate::render::render_svg;
use crate::scalar::{self, Scalar};
use crate::superalgebra::{Mode, Params};
use crate::tensor::{vector_from_json, vector_to_json, word_operator, SparseOperator, TensorSpace};

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Brauer algebras and their action on tensor superspaces")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct SpaceArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    /// Tensor power.
    #[arg(long)]
    d: usize,
}

impl SpaceArgs {
    fn params(&self) -> Result<Params, CliError> {
        if self.m == 0 && self.n == 0 && self.mode == Mode::Even {
            return Err(CliError::Usage("m = n = 0 in even mode gives the zero space".into()));
        }
        Ok(Params::new(self.m, self.n, self.mode))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a product of generators in the diagram basis.
    Mult {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        delta: Scalar,
        #[arg(value_parser = parse_word)]
        word: GeneratorWord,
    },
    /// Check every defining relation by diagram multiplication.
    VerifyRelations {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        delta: Scalar,
    },
    /// Number of oriented diagrams between two orientation sequences.
    HomDim {
        #[arg(long, value_parser = parse_seq)]
        s: OrientationSeq,
        #[arg(long, value_parser = parse_seq)]
        t: OrientationSeq,
    },
    /// Apply a generator word to a vector of the tensor space.
    Act {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = parse_word)]
        word: GeneratorWord,
        /// JSON object from tensor literals to rationals, inline or as a file path.
        #[arg(long)]
        vector: String,
    },
    /// Print the operator of a generator word as JSON.
    Operator {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = parse_word)]
        word: GeneratorWord,
    },
    /// Compare the Brauer image with the osp commutant.
    Commutant {
        #[command(flatten)]
        space: SpaceArgs,
        /// Exact rational ranks throughout.
        #[arg(long)]
        exact: bool,
        /// Seed for choosing the two primes.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest admissible dimension of the tensor power.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Write an equivariant operator in the diagram basis.
    Decompose {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        operator: PathBuf,
    },
    /// Draw a diagram as SVG.
    Render {
        diagram: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    scalar::parse(s)
}

fn parse_word(s: &str) -> Result<GeneratorWord, Error> {
    s.parse()
}

fn parse_seq(s: &str) -> Result<OrientationSeq, Error> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<Mode, Error> {
    s.parse()
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn check_word(word: &GeneratorWord, d: usize) -> Result<(), CliError> {
    if word.max_index() >= d.max(1) {
        return Err(CliError::Usage(format!("word {word} needs at least {} strands", word.max_index() + 1)));
    }
    Ok(())
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn inline_or_file(arg: &str) -> Result<Value, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        read_json(path)
    } else {
        serde_json::from_str(arg).map_err(|e| usage(format!("--vector: {e}")))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let json = cli.json;
    let text = match cli.command {
        Command::Mult { d, delta, word } => {
            check_word(&word, d)?;
            let x = evaluate_word(&word, d, &delta)?;
            if json {
                pretty(&x.to_json())
            } else {
                x.to_string()
            }
        }
        Command::VerifyRelations { d, delta } => {
            let report = verify_presentation(d, &delta)?;
            if json {
                pretty(&json!({
                    "d": d,
                    "delta": scalar::format(&delta),
                    "checked": report.checked,
                    "failures": report.failures,
                }))
            } else if report.all_hold() {
                format!("all {} relation instances hold", report.checked)
            } else {
                let mut lines =
                    vec![format!("{} of {} relation instances fail", report.failures.len(), report.checked)];
                lines.extend(report.failures.iter().cloned());
                lines.join("\n")
            }
        }
        Command::HomDim { s, t } => {
            let dim = hom_dim(&s, &t);
            if json {
                pretty(&json!({
                    "s": s.to_string(),
                    "t": t.to_string(),
                    "dim": dim,
                    "vanishing_predicate": hom_vanishing_predicate(&s, &t),
                }))
            } else {
                dim.to_string()
            }
        }
        Command::Act { space, word, vector } => {
            let p = space.params()?;
            check_word(&word, space.d)?;
            let ts = TensorSpace::new(p);
            let v = vector_from_json(&inline_or_file(&vector)?, &ts, space.d).map_err(usage)?;
            let op = word_operator(&word, space.d, &ts)?;
            pretty(&vector_to_json(&op.matrix.mul_vec(&v), &ts, space.d))
        }
        Command::Operator { space, word } => {
            let p = space.params()?;
            check_word(&word, space.d)?;
            let ts = TensorSpace::new(p);
            pretty(&word_operator(&word, space.d, &ts)?.to_json(&ts))
        }
        Command::Commutant { space, exact, seed, budget } => {
            let p = space.params()?;
            let strategy = if exact { RankStrategy::Exact } else { RankStrategy::Auto };
            verify_isomorphism(&p, space.d, &VerifyOptions { strategy, seed, budget })?.to_json()
        }
        Command::Decompose { space, operator } => {
            let p = space.params()?;
            let ts = TensorSpace::new(p);
            let f = SparseOperator::from_json(&read_json(&operator)?, &ts, space.d).map_err(usage)?;
            let dec = decompose_in_brauer_basis(&f, &p, space.d)?;
            if json {
                let coefficients: serde_json::Map<String, Value> =
                    dec.coefficients.iter().map(|(b, c)| (b.to_string(), Value::String(scalar::format(c)))).collect();
                pretty(&json!({
                    "coefficients": coefficients,
                    "residual_zero": dec.residual_is_zero(),
                    "residual": dec.residual.to_json(&ts),
                }))
            } else {
                let mut lines: Vec<String> =
                    dec.coefficients.iter().map(|(b, c)| format!("{} * {b}", scalar::format(c))).collect();
                if lines.is_empty() {
                    lines.push("0".into());
                }
                lines.push(format!("residual: {}", if dec.residual_is_zero() { "0" } else { "nonzero" }));
                lines.join("\n")
            }
        }
        Command::Render { diagram, out: path } => {
            let (top, bottom, blocks) = parse_blocks(&diagram).map_err(usage)?;
            let b = GeneralizedDiagram::from_blocks(top, bottom, &blocks).map_err(usage)?;
            let svg = render_svg(&b);
            match path {
                Some(path) => {
                    std::fs::write(&path, svg)
                        .map_err(|e| CliError::Compute(Error::Parse(format!("{}: {e}", path.display()))))?;
                    return Ok(());
                }
                None => svg.trim_end().to_string(),
            }
        }
    };
    let _ = writeln!(out, "{text}");
    Ok(())
}

/// Runs the command line on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
