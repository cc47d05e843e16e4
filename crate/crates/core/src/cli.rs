//! The `framekit` command line.
//!
//! Exit codes: 0 when the property holds or the command succeeded, 1 for a
//! mathematically negative answer, 2 for input errors (bad flags, unreadable
//! or malformed files, violated preconditions).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::format::{
    parse_certificate_text, parse_matrix_file, render_certificate, render_matrix_rows,
    render_sequence, render_trace,
};
use crate::harness::cross_check_random;
use crate::lemma::{check_certificate, steinitz_extend, trace_induction, verify_basic_lemma};
use crate::linalg::{solve_in_span, VecSequence, Vector};
use crate::oracle::{member_bruteforce, rank_bruteforce, EnumerationBudget};
use crate::spans::{
    basis_from_generators, change_of_basis, extend_frame, greedy_independent_indices, rank_seq,
    span_of, Frame, Subspace,
};

#[derive(Debug, Parser)]
#[command(
    name = "framekit",
    version,
    about = "Exact frames, spans, bases and inclusion certificates over GF(p) and Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SeqArg {
    /// Matrix file whose rows are the sequence vectors.
    #[arg(short = 's', long = "sequence")]
    sequence: PathBuf,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Frame e.
    #[arg(short = 'e')]
    e: PathBuf,
    /// Frame f with every f_j in span(e).
    #[arg(short = 'f')]
    f: PathBuf,
    /// Also write the inclusion certificate to this path.
    #[arg(long = "emit-cert")]
    emit_cert: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank of a sequence.
    Rank(SeqArg),
    /// Whether a vector lies in the span of a sequence.
    Member {
        #[command(flatten)]
        seq: SeqArg,
        /// One-row matrix file holding the vector.
        #[arg(short = 'x', long = "vector")]
        vector: PathBuf,
    },
    /// Greedy left-to-right basis of the span of a sequence.
    Basis(SeqArg),
    /// Dimension of the span of a sequence.
    Dim(SeqArg),
    /// A vector extending a frame inside a subspace.
    Extend {
        /// The frame to extend.
        #[arg(short = 'k')]
        frame: PathBuf,
        /// Generators of the subspace; the whole ambient space if omitted.
        #[arg(short = 's', long = "sequence")]
        sequence: Option<PathBuf>,
    },
    /// Change-of-basis matrix A with f = eA, and its inverse.
    ChangeBasis {
        #[arg(short = 'e')]
        e: PathBuf,
        #[arg(short = 'f')]
        f: PathBuf,
    },
    /// Inclusion certificate expressing every e_i over f.
    VerifyLemma(PairArgs),
    /// Full inductive kernel trace for e and f.
    Trace(PairArgs),
    /// Extend a frame to a basis with vectors of a given basis.
    Steinitz {
        #[arg(short = 'b')]
        basis: PathBuf,
        #[arg(short = 'k')]
        frame: PathBuf,
    },
    /// Compare the engine with brute-force enumeration, or check a certificate.
    OracleCheck {
        /// Certificate file to re-check by substitution.
        #[arg(long = "cert")]
        cert: Option<PathBuf>,
        #[arg(short = 's', long = "sequence")]
        sequence: Option<PathBuf>,
        #[arg(short = 'x', long = "vector")]
        vector: Option<PathBuf>,
        /// Number of random instances to cross-check.
        #[arg(long = "random")]
        random: Option<usize>,
        #[arg(long = "seed", default_value_t = 0)]
        seed: u64,
        /// Cap on enumerated tuples per oracle call.
        #[arg(long = "budget")]
        budget: Option<u64>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        CommandOutcome {
            exit_code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(err: Error) -> Self {
        let exit_code = match err {
            Error::Soundness(_) => 1,
            _ => 2,
        };
        CommandOutcome {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

type CmdResult = Result<CommandOutcome, Error>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let exit_code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if exit_code == 0 {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome {
                    exit_code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(CommandOutcome::from_error)
}

fn load(path: &Path) -> Result<VecSequence, Error> {
    parse_matrix_file(path)
}

fn load_frame(path: &Path) -> Result<Frame, Error> {
    Frame::new(load(path)?).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_vector(path: &Path) -> Result<Vector, Error> {
    let seq = load(path)?;
    if seq.len() != 1 {
        return Err(Error::Format(format!(
            "{}: expected exactly one row, found {}",
            path.display(),
            seq.len()
        )));
    }
    Ok(seq.into_items().remove(0))
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_cert(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Rank(a) => {
            let seq = load(&a.sequence)?;
            Ok(CommandOutcome::ok(format!("rank {}\n", rank_seq(&seq))))
        }
        Command::Member { seq, vector } => {
            let s = load(&seq.sequence)?;
            let x = load_vector(&vector)?;
            match solve_in_span(&s, &x)? {
                Some(c) => Ok(CommandOutcome::ok(format!(
                    "in-span yes\ncoefficients {}\n",
                    join(&c)
                ))),
                None => Ok(CommandOutcome::negative("in-span no\n".into())),
            }
        }
        Command::Basis(a) => {
            let s = load(&a.sequence)?;
            let idx = greedy_independent_indices(&s);
            let basis = basis_from_generators(&s);
            Ok(CommandOutcome::ok(format!(
                "indices {}\n{}",
                join(&idx),
                render_sequence(basis.seq())
            )))
        }
        Command::Dim(a) => {
            let s = load(&a.sequence)?;
            Ok(CommandOutcome::ok(format!("dim {}\n", span_of(&s).dim())))
        }
        Command::Extend { frame, sequence } => {
            let fr = load_frame(&frame)?;
            let sub = match sequence {
                Some(p) => span_of(&load(&p)?),
                None => Subspace::full(fr.field(), fr.ambient_dim()),
            };
            match extend_frame(&fr, &sub) {
                Ok(v) => Ok(CommandOutcome::ok(format!("extension {v}\n"))),
                Err(Error::AlreadyMaximal) => Ok(CommandOutcome::negative(format!(
                    "maximal dim {}\n",
                    sub.dim()
                ))),
                Err(e) => Err(e),
            }
        }
        Command::ChangeBasis { e, f } => {
            let cob = change_of_basis(&load_frame(&e)?, &load_frame(&f)?)?;
            Ok(CommandOutcome::ok(format!(
                "A\n{}A_inv\n{}",
                render_matrix_rows(&cob.forward),
                render_matrix_rows(&cob.inverse)
            )))
        }
        Command::VerifyLemma(a) => {
            let cert = verify_basic_lemma(&load_frame(&a.e)?, &load_frame(&a.f)?)?;
            let text = render_certificate(&cert);
            if let Some(p) = &a.emit_cert {
                write_cert(p, &text)?;
            }
            Ok(CommandOutcome::ok(text))
        }
        Command::Trace(a) => {
            let e = load_frame(&a.e)?;
            let f = load_frame(&a.f)?;
            let trace = trace_induction(&e, &f)?;
            if let Some(p) = &a.emit_cert {
                let cert = match trace.root() {
                    Some(root) => root.certificate(),
                    None => verify_basic_lemma(&e, &f)?,
                };
                write_cert(p, &render_certificate(&cert))?;
            }
            Ok(CommandOutcome::ok(render_trace(&trace)))
        }
        Command::Steinitz { basis, frame } => {
            let b = load_frame(&basis)?;
            let k = load_frame(&frame)?;
            let ext = steinitz_extend(&b, &k)?;
            Ok(CommandOutcome::ok(format!(
                "picked {}\nr {}\nl {}\n{}",
                join(&ext.picked),
                ext.added,
                b.len() - k.len(),
                render_sequence(ext.extended.seq())
            )))
        }
        Command::OracleCheck {
            cert,
            sequence,
            vector,
            random,
            seed,
            budget,
        } => {
            let budget = budget.map_or_else(
                EnumerationBudget::default,
                EnumerationBudget::with_max_enumeration,
            );
            oracle_check(cert, sequence, vector, random, seed, &budget)
        }
    }
}

fn oracle_check(
    cert: Option<PathBuf>,
    sequence: Option<PathBuf>,
    vector: Option<PathBuf>,
    random: Option<usize>,
    seed: u64,
    budget: &EnumerationBudget,
) -> CmdResult {
    let modes = [cert.is_some(), sequence.is_some(), random.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(Error::Format(
            "oracle-check needs exactly one of --cert, -s, --random".into(),
        ));
    }
    if vector.is_some() && sequence.is_none() {
        return Err(Error::Format("-x requires -s".into()));
    }
    if let Some(path) = cert {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        let cert = parse_certificate_text(&text)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        return Ok(if check_certificate(&cert) {
            CommandOutcome::ok("certificate valid\n".into())
        } else {
            CommandOutcome::negative("certificate invalid\n".into())
        });
    }
    if let Some(path) = sequence {
        let s = load(&path)?;
        let engine = rank_seq(&s);
        let oracle = rank_bruteforce(&s, budget)?;
        let mut out = format!("rank engine {engine} oracle {oracle}\n");
        let mut agree = engine == oracle;
        if let Some(vp) = vector {
            let x = load_vector(&vp)?;
            let engine = solve_in_span(&s, &x)?.is_some();
            let oracle = member_bruteforce(&s, &x, budget)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            out.push_str(&format!(
                "in-span engine {} oracle {}\n",
                yn(engine),
                yn(oracle)
            ));
            agree &= engine == oracle;
        }
        out.push_str(if agree { "agree\n" } else { "disagree\n" });
        return Ok(if agree {
            CommandOutcome::ok(out)
        } else {
            CommandOutcome::negative(out)
        });
    }
    let count = random.expect("one mode is set");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = cross_check_random(&mut rng, count, budget)?;
    let mut out = format!(
        "instances {}\ndisagreements {}\n",
        report.instances,
        report.disagreements.len()
    );
    for d in &report.disagreements {
        out.push_str(d);
        out.push('\n');
    }
    Ok(if report.passed() {
        CommandOutcome::ok(out)
    } else {
        CommandOutcome::negative(out)
    })
}
