//! Text formats: matrix files, inclusion certificates and proof traces.
//!
//! Matrix file:
//!
//! ```text
//! # header: `field gf <p>` or `field q`, then `dims <rows> <cols>`
//! field gf 2
//! dims 2 3
//! 1 0 1
//! 0 1 1
//! ```
//!
//! Each data line is one vector of the sequence. Lines whose first
//! non-blank character is `#` and blank lines are ignored; a `#` later in a
//! line is not a comment. Certificates and traces reuse the same header lines
//! and row syntax; see [`render_certificate`] and [`render_trace`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lemma::{Derivation, InclusionCertificate, ProofTrace};
use crate::linalg::{ScalarMatrix, VecSequence, Vector};

pub const CERTIFICATE_MAGIC: &str = "inclusion-certificate";
pub const TRACE_MAGIC: &str = "proof-trace";

fn diag(line: usize, column: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}, column {column}: {msg}"))
}

/// Significant lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l))
                .filter(|(_, l)| {
                    let t = l.trim_start();
                    !t.is_empty() && !t.starts_with('#')
                }),
        );
        Lines {
            inner: it.peekable(),
            last_line: text.lines().count(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner.next().ok_or_else(|| {
            diag(
                self.last_line + 1,
                1,
                format!("unexpected end of input, expected {what}"),
            )
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((n, l)) => Err(diag(n, first_column(l), "unexpected extra line")),
        }
    }
}

fn first_column(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn expect_keyword<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
) -> Result<(usize, Vec<(usize, &'a str)>)> {
    let (n, l) = lines.next(&format!("`{keyword}`"))?;
    let toks = tokens(l);
    match toks.first() {
        Some((_, w)) if *w == keyword => Ok((n, toks[1..].to_vec())),
        Some((c, w)) => Err(diag(n, *c, format!("expected `{keyword}`, found {w:?}"))),
        None => Err(diag(n, 1, format!("expected `{keyword}`"))),
    }
}

fn parse_field_line(lines: &mut Lines<'_>) -> Result<FieldSpec> {
    let (n, rest) = expect_keyword(lines, "field")?;
    let col = rest.first().map_or(1, |t| t.0);
    let words: Vec<&str> = rest.iter().map(|t| t.1).collect();
    words
        .join(" ")
        .parse::<FieldSpec>()
        .map_err(|e| diag(n, col, e))
}

fn parse_count(n: usize, tok: Option<&(usize, &str)>, what: &str) -> Result<usize> {
    match tok {
        Some((c, t)) => t
            .parse::<usize>()
            .map_err(|_| diag(n, *c, format!("bad {what} {t:?}"))),
        None => Err(diag(n, 1, format!("missing {what}"))),
    }
}

fn parse_dims(lines: &mut Lines<'_>) -> Result<(usize, usize)> {
    let (n, rest) = expect_keyword(lines, "dims")?;
    let r = parse_count(n, rest.first(), "row count")?;
    let c = parse_count(n, rest.get(1), "column count")?;
    if let Some((col, _)) = rest.get(2) {
        return Err(diag(n, *col, "dims takes exactly two numbers"));
    }
    Ok((r, c))
}

fn parse_row(lines: &mut Lines<'_>, field: FieldSpec, cols: usize) -> Result<Vec<Scalar>> {
    if cols == 0 {
        return Ok(Vec::new());
    }
    let (n, l) = lines.next("a data row")?;
    let toks = tokens(l);
    if toks.len() != cols {
        return Err(diag(
            n,
            first_column(l),
            format!(
                "dim mismatch: expected {cols} entries, found {}",
                toks.len()
            ),
        ));
    }
    toks.into_iter()
        .map(|(c, t)| Scalar::parse(t, field).map_err(|e| diag(n, c, e)))
        .collect()
}

fn parse_rows(
    lines: &mut Lines<'_>,
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> Result<VecSequence> {
    let mut items = Vec::with_capacity(rows);
    for _ in 0..rows {
        items.push(Vector::new(field, parse_row(lines, field, cols)?)?);
    }
    VecSequence::new(field, cols, items)
}

/// Parses a matrix file; rows become the vectors of the sequence.
pub fn parse_matrix_text(text: &str) -> Result<VecSequence> {
    let mut lines = Lines::new(text);
    let field = parse_field_line(&mut lines)?;
    let (rows, cols) = parse_dims(&mut lines)?;
    let seq = parse_rows(&mut lines, field, rows, cols)?;
    lines.finish().map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{m} (dim mismatch: dims declare {rows} rows)")),
        other => other,
    })?;
    Ok(seq)
}

pub fn parse_matrix_file(path: &std::path::Path) -> Result<VecSequence> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_matrix_text(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn write_rows(out: &mut String, rows: impl Iterator<Item = String>) {
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
}

fn render_vector(v: &Vector) -> String {
    v.to_string()
}

/// Matrix-file text for a sequence (one vector per row).
pub fn render_sequence(seq: &VecSequence) -> String {
    let mut out = format!(
        "field {}\ndims {} {}\n",
        seq.field(),
        seq.len(),
        seq.ambient_dim()
    );
    write_rows(&mut out, seq.iter().map(render_vector));
    out
}

/// Row-major rows of a matrix, without headers.
pub fn render_matrix_rows(m: &ScalarMatrix) -> String {
    m.to_string()
}

pub fn render_certificate(cert: &InclusionCertificate) -> String {
    let mut out = format!(
        "{CERTIFICATE_MAGIC}\nfield {}\ndims {} {}\n",
        cert.e.field(),
        cert.e.len(),
        cert.e.ambient_dim()
    );
    out.push_str("e\n");
    write_rows(&mut out, cert.e.iter().map(render_vector));
    out.push_str("f\n");
    write_rows(&mut out, cert.f.iter().map(render_vector));
    out.push_str("coefficients\n");
    out.push_str(&render_matrix_rows(&cert.coefficients));
    out
}

pub fn parse_certificate_text(text: &str) -> Result<InclusionCertificate> {
    let mut lines = Lines::new(text);
    expect_keyword(&mut lines, CERTIFICATE_MAGIC)?;
    let field = parse_field_line(&mut lines)?;
    let (n, m) = parse_dims(&mut lines)?;
    expect_keyword(&mut lines, "e")?;
    let e = parse_rows(&mut lines, field, n, m)?;
    expect_keyword(&mut lines, "f")?;
    let f = parse_rows(&mut lines, field, n, m)?;
    expect_keyword(&mut lines, "coefficients")?;
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n {
        entries.extend(parse_row(&mut lines, field, n)?);
    }
    lines.finish()?;
    Ok(InclusionCertificate {
        e,
        f,
        coefficients: ScalarMatrix::new(field, n, n, entries)?,
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One block per level, one sub-block per instance. Instances are named
/// `<level>.<index>`; `reduced` points at an instance of the previous level.
pub fn render_trace(trace: &ProofTrace) -> String {
    let mut out = String::new();
    out.push_str(TRACE_MAGIC);
    out.push('\n');
    let Some(root) = trace.root() else {
        out.push_str("levels 0\nend\n");
        return out;
    };
    let _ = writeln!(out, "field {}", root.e.field());
    let _ = writeln!(out, "dims {} {}", root.e.len(), root.e.ambient_dim());
    let _ = writeln!(out, "levels {}", trace.levels.len());
    for level in &trace.levels {
        let _ = writeln!(
            out,
            "level {} instances {}",
            level.rank,
            level.instances.len()
        );
        for (idx, inst) in level.instances.iter().enumerate() {
            let _ = writeln!(out, "instance {}.{}", level.rank, idx);
            out.push_str("e\n");
            write_rows(&mut out, inst.e.seq().iter().map(render_vector));
            out.push_str("f\n");
            write_rows(&mut out, inst.f.seq().iter().map(render_vector));
            match &inst.derivation {
                Derivation::Base { scale } => {
                    let _ = writeln!(out, "base {scale}");
                }
                Derivation::Kernel { steps } => {
                    for step in steps {
                        let _ = writeln!(out, "step {}", step.index);
                        out.push_str("map-images\n");
                        write_rows(&mut out, step.map.images().iter().map(render_vector));
                        let _ = writeln!(out, "witness {}", step.witness);
                        let _ =
                            writeln!(out, "witness-coefficients {}", join(&step.witness_coeffs));
                        let _ = writeln!(out, "image-frame {}", join(&step.image_frame));
                        let _ = writeln!(out, "dependent-image {}", step.dependent_image);
                        let _ = writeln!(out, "reduced {}.{}", level.rank - 1, step.reduced);
                    }
                }
            }
            out.push_str("coefficients\n");
            out.push_str(&render_matrix_rows(&inst.coefficients));
        }
    }
    out.push_str("end\n");
    out
}
