//! Python bindings. Fields are given as `"gf <p>"` or `"q"`; vectors and
//! matrices are lists of rows whose entries may be Python ints or scalar
//! strings such as `"-3/4"`. Scalars come back as canonical strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use framekit::format::{parse_certificate_text, render_certificate, render_trace};
use framekit::oracle::{rank_bruteforce, EnumerationBudget};
use framekit::spans::greedy_independent_indices;
use framekit::{FieldSpec, Frame, Scalar, ScalarMatrix, Subspace, VecSequence, Vector};

fn err(e: framekit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(text: &str) -> PyResult<FieldSpec> {
    text.parse().map_err(err)
}

fn scalar(field: FieldSpec, obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    let text = obj.str()?.to_string();
    Scalar::parse(&text, field).map_err(err)
}

fn vector(field: FieldSpec, row: &[Bound<'_, PyAny>]) -> PyResult<Vector> {
    let entries = row
        .iter()
        .map(|o| scalar(field, o))
        .collect::<PyResult<Vec<_>>>()?;
    Vector::new(field, entries).map_err(err)
}

/// Rows become sequence vectors; `dim` is needed only for empty sequences.
fn sequence(
    field: FieldSpec,
    rows: &[Vec<Bound<'_, PyAny>>],
    dim: Option<usize>,
) -> PyResult<VecSequence> {
    let items = rows
        .iter()
        .map(|r| vector(field, r))
        .collect::<PyResult<Vec<_>>>()?;
    let m = match (items.first(), dim) {
        (Some(v), _) => v.dim(),
        (None, Some(d)) => d,
        (None, None) => {
            return Err(PyValueError::new_err(
                "empty sequence needs an explicit ambient dimension",
            ))
        }
    };
    VecSequence::new(field, m, items).map_err(err)
}

fn frame(field: FieldSpec, rows: &[Vec<Bound<'_, PyAny>>], dim: Option<usize>) -> PyResult<Frame> {
    Frame::new(sequence(field, rows, dim)?).map_err(err)
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn seq_rows(s: &VecSequence) -> Vec<Vec<String>> {
    s.iter().map(|v| strings(v.entries())).collect()
}

/// Scalars of a matrix or sequence as canonical strings, row by row.
type Rows = Vec<Vec<String>>;

fn matrix_rows(m: &ScalarMatrix) -> Rows {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

/// Rank of the sequence of rows.
#[pyfunction]
#[pyo3(signature = (field, rows, dim=None))]
fn rank(field: &str, rows: Vec<Vec<Bound<'_, PyAny>>>, dim: Option<usize>) -> PyResult<usize> {
    Ok(framekit::rank_seq(&sequence(field_of(field)?, &rows, dim)?))
}

/// Rank by exhaustive enumeration (small prime fields only).
#[pyfunction]
#[pyo3(name = "rank_bruteforce", signature = (field, rows, dim=None))]
fn rank_bruteforce_py(
    field: &str,
    rows: Vec<Vec<Bound<'_, PyAny>>>,
    dim: Option<usize>,
) -> PyResult<usize> {
    let s = sequence(field_of(field)?, &rows, dim)?;
    rank_bruteforce(&s, &EnumerationBudget::default()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (field, rows, dim=None))]
fn is_frame(field: &str, rows: Vec<Vec<Bound<'_, PyAny>>>, dim: Option<usize>) -> PyResult<bool> {
    Ok(framekit::is_frame(&sequence(field_of(field)?, &rows, dim)?))
}

/// Reduced-echelon basis of the span.
#[pyfunction]
#[pyo3(signature = (field, rows, dim=None))]
fn span_basis(
    field: &str,
    rows: Vec<Vec<Bound<'_, PyAny>>>,
    dim: Option<usize>,
) -> PyResult<Vec<Vec<String>>> {
    let s = framekit::span_of(&sequence(field_of(field)?, &rows, dim)?);
    Ok(seq_rows(s.canonical_basis()))
}

/// Coefficients of `x` over the rows, or `None` outside the span.
#[pyfunction]
fn solve_in_span(
    field: &str,
    rows: Vec<Vec<Bound<'_, PyAny>>>,
    x: Vec<Bound<'_, PyAny>>,
) -> PyResult<Option<Vec<String>>> {
    let f = field_of(field)?;
    let x = vector(f, &x)?;
    let s = sequence(f, &rows, Some(x.dim()))?;
    Ok(framekit::solve_in_span(&s, &x)
        .map_err(err)?
        .map(|c| strings(&c)))
}

/// Positions kept by the greedy left-to-right basis selection.
#[pyfunction]
#[pyo3(signature = (field, rows, dim=None))]
fn basis_indices(
    field: &str,
    rows: Vec<Vec<Bound<'_, PyAny>>>,
    dim: Option<usize>,
) -> PyResult<Vec<usize>> {
    Ok(greedy_independent_indices(&sequence(
        field_of(field)?,
        &rows,
        dim,
    )?))
}

/// A vector extending `frame` inside span(`sub`) (whole space if `None`),
/// or `None` if the frame is already maximal.
#[pyfunction]
#[pyo3(signature = (field, frame_rows, dim, sub=None))]
fn extend_frame(
    field: &str,
    frame_rows: Vec<Vec<Bound<'_, PyAny>>>,
    dim: usize,
    sub: Option<Vec<Vec<Bound<'_, PyAny>>>>,
) -> PyResult<Option<Vec<String>>> {
    let f = field_of(field)?;
    let fr = frame(f, &frame_rows, Some(dim))?;
    let sub = match sub {
        Some(rows) => framekit::span_of(&sequence(f, &rows, Some(dim))?),
        None => Subspace::full(f, dim),
    };
    match framekit::extend_frame(&fr, &sub) {
        Ok(v) => Ok(Some(strings(v.entries()))),
        Err(framekit::Error::AlreadyMaximal) => Ok(None),
        Err(e) => Err(err(e)),
    }
}

/// `(A, A_inv)` with `f = e A`, as lists of rows.
#[pyfunction]
fn change_of_basis(
    field: &str,
    e: Vec<Vec<Bound<'_, PyAny>>>,
    f: Vec<Vec<Bound<'_, PyAny>>>,
) -> PyResult<(Rows, Rows)> {
    let fs = field_of(field)?;
    let cob =
        framekit::change_of_basis(&frame(fs, &e, None)?, &frame(fs, &f, None)?).map_err(err)?;
    Ok((matrix_rows(&cob.forward), matrix_rows(&cob.inverse)))
}

/// The inclusion certificate as text.
#[pyfunction]
fn verify_basic_lemma(
    field: &str,
    e: Vec<Vec<Bound<'_, PyAny>>>,
    f: Vec<Vec<Bound<'_, PyAny>>>,
) -> PyResult<String> {
    let fs = field_of(field)?;
    let cert =
        framekit::verify_basic_lemma(&frame(fs, &e, None)?, &frame(fs, &f, None)?).map_err(err)?;
    Ok(render_certificate(&cert))
}

/// Re-checks certificate text by substitution.
#[pyfunction]
fn check_certificate(text: &str) -> PyResult<bool> {
    let cert = parse_certificate_text(text).map_err(err)?;
    Ok(framekit::check_certificate(&cert))
}

/// The inductive kernel trace as text.
#[pyfunction]
fn trace_induction(
    field: &str,
    e: Vec<Vec<Bound<'_, PyAny>>>,
    f: Vec<Vec<Bound<'_, PyAny>>>,
) -> PyResult<String> {
    let fs = field_of(field)?;
    let trace =
        framekit::trace_induction(&frame(fs, &e, None)?, &frame(fs, &f, None)?).map_err(err)?;
    Ok(render_trace(&trace))
}

/// `(extended rows, picked basis positions, r)`.
#[pyfunction]
#[pyo3(signature = (field, basis, frame_rows, dim=None))]
fn steinitz_extend(
    field: &str,
    basis: Vec<Vec<Bound<'_, PyAny>>>,
    frame_rows: Vec<Vec<Bound<'_, PyAny>>>,
    dim: Option<usize>,
) -> PyResult<(Vec<Vec<String>>, Vec<usize>, usize)> {
    let fs = field_of(field)?;
    let b = frame(fs, &basis, dim)?;
    let k = frame(fs, &frame_rows, Some(b.ambient_dim()))?;
    let ext = framekit::steinitz_extend(&b, &k).map_err(err)?;
    Ok((seq_rows(ext.extended.seq()), ext.picked, ext.added))
}

/// Runs the command line in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let argv = std::iter::once("framekit".to_string()).chain(args);
    let out = framekit::cli::run(argv);
    (out.exit_code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "framekit")]
fn framekit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(rank_bruteforce_py, m)?)?;
    m.add_function(wrap_pyfunction!(is_frame, m)?)?;
    m.add_function(wrap_pyfunction!(span_basis, m)?)?;
    m.add_function(wrap_pyfunction!(solve_in_span, m)?)?;
    m.add_function(wrap_pyfunction!(basis_indices, m)?)?;
    m.add_function(wrap_pyfunction!(extend_frame, m)?)?;
    m.add_function(wrap_pyfunction!(change_of_basis, m)?)?;
    m.add_function(wrap_pyfunction!(verify_basic_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(trace_induction, m)?)?;
    m.add_function(wrap_pyfunction!(steinitz_extend, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
