//! Spans, frames, maximality, extension, bases, coordinates and the
//! change-of-basis matrix between two frames of the same span.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    lin_comb, mat_product, rank, reduced_form, solve_in_span, ScalarMatrix, VecSequence, Vector,
};

/// A linearly independent sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    seq: VecSequence,
}

impl Frame {
    pub fn new(seq: VecSequence) -> Result<Self> {
        let r = rank_seq(&seq);
        if r == seq.len() {
            Ok(Frame { seq })
        } else {
            Err(Error::NotAFrame {
                rank: r,
                len: seq.len(),
            })
        }
    }

    pub fn empty(field: FieldSpec, ambient_dim: usize) -> Self {
        Frame {
            seq: VecSequence::empty(field, ambient_dim),
        }
    }

    pub fn standard(field: FieldSpec, m: usize) -> Self {
        Frame {
            seq: VecSequence::standard_basis(field, m),
        }
    }

    pub fn seq(&self) -> &VecSequence {
        &self.seq
    }

    pub fn into_seq(self) -> VecSequence {
        self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.seq.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.seq.ambient_dim()
    }

    pub fn get(&self, i: usize) -> Option<&Vector> {
        self.seq.get(i)
    }

    pub fn span(&self) -> Subspace {
        span_of(&self.seq)
    }

    pub(crate) fn from_seq_unchecked(seq: VecSequence) -> Self {
        debug_assert_eq!(rank_seq(&seq), seq.len());
        Frame { seq }
    }
}

/// A subspace of `field^m`, stored as the nonzero rows of a reduced
/// row-echelon form. The canonical basis is unique, so equality of
/// `Subspace` values is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: VecSequence,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            basis: VecSequence::empty(field, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            basis: VecSequence::standard_basis(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    /// The reduced-echelon basis.
    pub fn canonical_basis(&self) -> &VecSequence {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        Ok(member(self, x)?.is_some())
    }

    /// `seq ≺ self`: every item of `seq` lies in this subspace.
    pub fn contains_all(&self, seq: &VecSequence) -> Result<bool> {
        self.basis.check_same_space(seq)?;
        for v in seq.iter() {
            if member(self, v)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.contains_all(&self.basis)
    }
}

/// Coefficients of a vector relative to a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinates {
    coeffs: Vec<Scalar>,
}

impl Coordinates {
    pub fn frame_length(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }
}

/// The minimal subspace containing every item of `seq`.
pub fn span_of(seq: &VecSequence) -> Subspace {
    let rf = reduced_form(&seq.to_rows());
    let mut rows = rf.matrix.row_sequence().into_items();
    rows.truncate(rf.rank);
    Subspace {
        basis: VecSequence::new(seq.field(), seq.ambient_dim(), rows)
            .expect("rows of a reduced form share field and width"),
        pivots: rf.pivots,
    }
}

/// Coordinates of `x` relative to `sub`'s canonical basis, if `x ∈ sub`.
pub fn member(sub: &Subspace, x: &Vector) -> Result<Option<Coordinates>> {
    sub.basis.check_compatible(x)?;
    // In reduced-echelon form the coordinate on basis row k is x at pivot k.
    let coeffs: Vec<Scalar> = sub.pivots.iter().map(|&p| x.entries()[p].clone()).collect();
    let rebuilt = lin_comb(&sub.basis, &coeffs)?;
    Ok((rebuilt == *x).then_some(Coordinates { coeffs }))
}

/// Maximal length of an independent subsequence, computed as matrix rank.
pub fn rank_seq(seq: &VecSequence) -> usize {
    rank(&seq.to_rows())
}

pub fn is_frame(seq: &VecSequence) -> bool {
    rank_seq(seq) == seq.len()
}

/// Whether `fr` is maximal in `sub`, decided as `span(fr) = sub`.
pub fn is_maximal_in(fr: &Frame, sub: &Subspace) -> Result<bool> {
    if !sub.contains_all(fr.seq())? {
        return Err(Error::NotInSpan("frame".into()));
    }
    Ok(fr.span() == *sub)
}

/// A vector of `sub` outside `span(fr)`: the first canonical basis vector of
/// `sub` not already in the frame's span.
pub fn extend_frame(fr: &Frame, sub: &Subspace) -> Result<Vector> {
    if !sub.contains_all(fr.seq())? {
        return Err(Error::NotInSpan("frame".into()));
    }
    let span = fr.span();
    for v in sub.canonical_basis().iter() {
        if !span.contains(v)? {
            return Ok(v.clone());
        }
    }
    Err(Error::AlreadyMaximal)
}

/// Positions kept by a greedy left-to-right scan that keeps a vector iff it
/// is independent of the ones already kept. These are exactly the pivot
/// columns of the column matrix.
pub fn greedy_independent_indices(seq: &VecSequence) -> Vec<usize> {
    reduced_form(&seq.to_columns()).pivots
}

pub fn basis_from_generators(gens: &VecSequence) -> Frame {
    let keep = greedy_independent_indices(gens);
    Frame::from_seq_unchecked(gens.subsequence(&keep).expect("pivot columns are in range"))
}

pub fn dimension(sub: &Subspace) -> usize {
    sub.dim()
}

/// The unique coefficients of `x` relative to the frame `basis`.
pub fn coordinates(basis: &Frame, x: &Vector) -> Result<Coordinates> {
    match solve_in_span(basis.seq(), x)? {
        Some(coeffs) => Ok(Coordinates { coeffs }),
        None => Err(Error::NotInSpan("vector".into())),
    }
}

/// The change-of-basis pair for two frames of the same length with
/// `f ≺ span(e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeOfBasis {
    /// Column `j` holds the coordinates of `f_j` relative to `e`.
    pub forward: ScalarMatrix,
    /// Column `i` holds the coordinates of `e_i` relative to `f`.
    pub inverse: ScalarMatrix,
}

/// `f = e A` and `e = f A^-1`; both products with the inverse are checked
/// against the identity before returning.
pub fn change_of_basis(e: &Frame, f: &Frame) -> Result<ChangeOfBasis> {
    e.seq().check_same_space(f.seq())?;
    if e.len() != f.len() {
        return Err(Error::LengthMismatch {
            expected: e.len(),
            found: f.len(),
        });
    }
    let n = e.len();
    let field = e.field();
    let mut forward_cols = Vec::with_capacity(n);
    for (j, fj) in f.seq().iter().enumerate() {
        match solve_in_span(e.seq(), fj)? {
            Some(c) => forward_cols.push(c),
            None => return Err(Error::NotInSpan(format!("f[{j}]"))),
        }
    }
    let mut inverse_cols = Vec::with_capacity(n);
    for (i, ei) in e.seq().iter().enumerate() {
        match solve_in_span(f.seq(), ei)? {
            Some(c) => inverse_cols.push(c),
            None => {
                return Err(Error::Soundness(format!(
                    "e[{i}] not in the span of an equal-length frame inside span(e)"
                )))
            }
        }
    }
    let forward = ScalarMatrix::from_columns(field, n, &forward_cols)?;
    let inverse = ScalarMatrix::from_columns(field, n, &inverse_cols)?;
    if !mat_product(&forward, &inverse)?.is_identity()
        || !mat_product(&inverse, &forward)?.is_identity()
    {
        return Err(Error::Soundness("A * A_inv is not the identity".into()));
    }
    Ok(ChangeOfBasis { forward, inverse })
}
