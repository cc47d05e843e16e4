//! Exact frames, spans and bases over GF(p) and the rationals.
//!
//! The crate decides span membership, rank, maximality and extendability of
//! frames, extracts bases, computes change-of-basis matrices, and produces
//! inclusion certificates for two frames of the same span, both directly
//! and as a step-by-step kernel trace. A brute-force [`oracle`] cross-checks
//! the elimination engine on small finite fields.

pub mod cli;
pub mod error;
pub mod field;
pub mod format;
pub mod harness;
pub mod lemma;
pub mod linalg;
pub mod oracle;
pub mod spans;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use lemma::{
    apply_map, check_certificate, omission_map, rank_bound_check, restricted_kernel_witness,
    steinitz_extend, trace_induction, verify_basic_lemma, Derivation, InclusionCertificate,
    KernelStep, LemmaInstance, LinearMap, ProofTrace, SteinitzExtension, TraceLevel,
};
pub use linalg::{
    kernel_basis, lin_comb, mat_product, reduced_form, solve_in_span, ReducedForm, ScalarMatrix,
    VecSequence, Vector,
};
pub use spans::{
    basis_from_generators, change_of_basis, coordinates, dimension, extend_frame, is_frame,
    is_maximal_in, member, rank_seq, span_of, ChangeOfBasis, Coordinates, Frame, Subspace,
};
