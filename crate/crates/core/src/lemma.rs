//! The inclusion lemma as executable procedures.
//!
//! Given two frames `e` and `f` of the same length `n` with every `f_j` in
//! `span(e)`, each `e_i` lies in `span(f)`. [`verify_basic_lemma`] produces
//! the coefficients directly; [`trace_induction`] reproduces the inductive
//! kernel argument: for each `i` it builds the map sending `e_i ↦ 0` and
//! `e_j ↦ f_j` otherwise, finds a nonzero vector of `span(f)` in its kernel
//! (necessarily a multiple of `e_i`), and records the rank `n - 1` instance
//! that rules out an injective restriction. Certificates are re-checked by
//! [`check_certificate`] using scalar multiply/add only.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{kernel_basis, lin_comb, solve_in_span, ScalarMatrix, VecSequence, Vector};
use crate::spans::{coordinates, greedy_independent_indices, rank_seq, span_of, Frame, Subspace};

/// The linear map on `span(domain)` sending `domain[j] ↦ images[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    domain: Frame,
    images: VecSequence,
}

impl LinearMap {
    pub fn new(domain: Frame, images: VecSequence) -> Result<Self> {
        if domain.field() != images.field() {
            return Err(Error::FieldMismatch {
                left: domain.field(),
                right: images.field(),
            });
        }
        if images.len() != domain.len() {
            return Err(Error::LengthMismatch {
                expected: domain.len(),
                found: images.len(),
            });
        }
        Ok(LinearMap { domain, images })
    }

    /// The identity on `span(frame)`.
    pub fn identity_on(frame: &Frame) -> Self {
        LinearMap {
            domain: frame.clone(),
            images: frame.seq().clone(),
        }
    }

    pub fn domain_frame(&self) -> &Frame {
        &self.domain
    }

    pub fn images(&self) -> &VecSequence {
        &self.images
    }

    pub fn domain_ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn codomain_ambient_dim(&self) -> usize {
        self.images.ambient_dim()
    }

    /// `im L = span(images)`.
    pub fn image(&self) -> Subspace {
        span_of(&self.images)
    }

    /// A frame of `ker L` inside `span(domain)`.
    pub fn kernel(&self) -> VecSequence {
        let items = kernel_basis(&self.images.to_columns())
            .iter()
            .map(|c| {
                lin_comb(self.domain.seq(), c.entries()).expect("kernel vector has frame length")
            })
            .collect();
        VecSequence::new(self.domain.field(), self.domain.ambient_dim(), items)
            .expect("combinations of the domain frame")
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        let c = coordinates(&self.domain, x)?;
        lin_comb(&self.images, c.coeffs())
    }
}

/// The map on `span(e)` with `e_i ↦ 0` and `e_j ↦ f_j` for `j ≠ i`
/// (`i` is 0-based).
pub fn omission_map(e: &Frame, f: &Frame, i: usize) -> Result<LinearMap> {
    check_lemma_inputs(e, f)?;
    if i >= e.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: e.len(),
        });
    }
    let mut images = f.seq().clone().into_items();
    images[i] = Vector::zero(f.field(), f.ambient_dim());
    LinearMap::new(
        e.clone(),
        VecSequence::new(f.field(), f.ambient_dim(), images)?,
    )
}

pub fn apply_map(map: &LinearMap, x: &Vector) -> Result<Vector> {
    map.apply(x)
}

/// A nonzero `v ∈ span(gens)` with `L v = 0`, with its coefficients over
/// `gens`, scaled so the leading coordinate of `v` over the domain frame is 1.
fn kernel_witness_over(map: &LinearMap, gens: &Frame) -> Result<Option<(Vector, Vec<Scalar>)>> {
    let mut columns = Vec::with_capacity(gens.len());
    for g in gens.seq().iter() {
        columns.push(map.apply(g)?.into_entries());
    }
    let m = ScalarMatrix::from_columns(map.images.field(), map.codomain_ambient_dim(), &columns)?;
    let Some(c) = kernel_basis(&m).into_items().into_iter().next() else {
        return Ok(None);
    };
    let v = lin_comb(gens.seq(), c.entries())?;
    let lead = coordinates(&map.domain, &v)?
        .into_coeffs()
        .into_iter()
        .find(|s| !s.is_zero())
        .ok_or_else(|| Error::Soundness("kernel combination of a frame vanished".into()))?;
    let norm = lead.inv()?;
    let coeffs = c.entries().iter().map(|s| s * &norm).collect();
    Ok(Some((v.scale(&norm), coeffs)))
}

/// A nonzero vector of `sub` annihilated by `map`, or `None` when the
/// restriction of `map` to `sub` is injective.
pub fn restricted_kernel_witness(map: &LinearMap, sub: &Subspace) -> Result<Option<Vector>> {
    if !map.domain.span().contains_all(sub.canonical_basis())? {
        return Err(Error::NotInSpan("subspace".into()));
    }
    let gens = Frame::new(sub.canonical_basis().clone())?;
    Ok(kernel_witness_over(map, &gens)?.map(|(v, _)| v))
}

fn check_lemma_inputs(e: &Frame, f: &Frame) -> Result<()> {
    e.seq().check_same_space(f.seq())?;
    if e.len() != f.len() {
        return Err(Error::LengthMismatch {
            expected: e.len(),
            found: f.len(),
        });
    }
    let span = e.span();
    for (j, fj) in f.seq().iter().enumerate() {
        if !span.contains(fj)? {
            return Err(Error::NotInSpan(format!("f[{j}]")));
        }
    }
    Ok(())
}

/// Coefficients `C` with `e_i = sum_j C[j][i] f_j` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionCertificate {
    pub e: VecSequence,
    pub f: VecSequence,
    pub coefficients: ScalarMatrix,
}

pub fn verify_basic_lemma(e: &Frame, f: &Frame) -> Result<InclusionCertificate> {
    check_lemma_inputs(e, f)?;
    let n = e.len();
    let mut columns = Vec::with_capacity(n);
    for (i, ei) in e.seq().iter().enumerate() {
        match solve_in_span(f.seq(), ei)? {
            Some(c) => columns.push(c),
            None => return Err(Error::Soundness(format!("e[{i}] outside span(f)"))),
        }
    }
    let cert = InclusionCertificate {
        e: e.seq().clone(),
        f: f.seq().clone(),
        coefficients: ScalarMatrix::from_columns(e.field(), n, &columns)?,
    };
    if !check_certificate(&cert) {
        return Err(Error::Soundness("certificate failed substitution".into()));
    }
    Ok(cert)
}

/// Substitution check of `e_i = sum_j C[j][i] f_j`, using only scalar
/// multiplication and addition. Malformed certificates are rejected.
pub fn check_certificate(cert: &InclusionCertificate) -> bool {
    let n = cert.e.len();
    let field = cert.e.field();
    let c = &cert.coefficients;
    if cert.f.len() != n
        || cert.f.field() != field
        || c.field() != field
        || cert.f.ambient_dim() != cert.e.ambient_dim()
        || c.rows() != n
        || c.cols() != n
    {
        return false;
    }
    (0..n).all(|i| {
        (0..cert.e.ambient_dim()).all(|coord| {
            let mut acc = field.zero();
            for (j, fj) in cert.f.iter().enumerate() {
                acc = &acc + &(c.get(j, i) * &fj.entries()[coord]);
            }
            acc == cert.e.items()[i].entries()[coord]
        })
    })
}

/// How one lemma instance was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Rank one: `f_1 = scale * e_1` with `scale ≠ 0`.
    Base { scale: Scalar },
    /// One step per index `i` of the frames.
    Kernel { steps: Vec<KernelStep> },
}

/// The argument for a single index `i` at rank `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelStep {
    pub index: usize,
    /// `e_i ↦ 0`, `e_j ↦ f_j`.
    pub map: LinearMap,
    /// Nonzero vector of `span(f)` in the kernel of `map`; equals `e_i`
    /// after normalization.
    pub witness: Vector,
    /// Coefficients of `witness` over `f`.
    pub witness_coeffs: Vec<Scalar>,
    /// Positions `j` whose images `map(f_j)` form the `(n-1)`-frame of the
    /// reduced instance; the remaining position is the dependent image.
    pub image_frame: Vec<usize>,
    pub dependent_image: usize,
    /// Index of the reduced instance in the previous level.
    pub reduced: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInstance {
    pub e: Frame,
    pub f: Frame,
    pub derivation: Derivation,
    /// Column `i` expresses `e_i` over `f`.
    pub coefficients: ScalarMatrix,
}

impl LemmaInstance {
    pub fn certificate(&self) -> InclusionCertificate {
        InclusionCertificate {
            e: self.e.seq().clone(),
            f: self.f.seq().clone(),
            coefficients: self.coefficients.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLevel {
    pub rank: usize,
    pub instances: Vec<LemmaInstance>,
}

/// Levels `1..=n` of the induction; the last level holds the single
/// top-level instance. Identical sub-instances are shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub levels: Vec<TraceLevel>,
}

impl ProofTrace {
    /// `None` for the empty frame pair, which needs no induction.
    pub fn root(&self) -> Option<&LemmaInstance> {
        self.levels.last().and_then(|l| l.instances.first())
    }

    pub fn instance_count(&self) -> usize {
        self.levels.iter().map(|l| l.instances.len()).sum()
    }
}

type InstanceKey = (VecSequence, VecSequence);

struct TraceBuilder {
    levels: Vec<TraceLevel>,
    seen: HashMap<InstanceKey, usize>,
}

impl TraceBuilder {
    fn build(&mut self, e: &Frame, f: &Frame) -> Result<usize> {
        let n = e.len();
        let key = (e.seq().clone(), f.seq().clone());
        if let Some(&idx) = self.seen.get(&key) {
            return Ok(idx);
        }
        let field = e.field();
        let instance = if n == 1 {
            let scale = coordinates(e, &f.seq().items()[0])?.into_coeffs().remove(0);
            let inv = scale
                .inv()
                .map_err(|_| Error::Soundness("rank-one frame vector is zero".into()))?;
            LemmaInstance {
                e: e.clone(),
                f: f.clone(),
                derivation: Derivation::Base { scale },
                coefficients: ScalarMatrix::new(field, 1, 1, vec![inv])?,
            }
        } else {
            let mut steps = Vec::with_capacity(n);
            let mut columns = Vec::with_capacity(n);
            for i in 0..n {
                let map = omission_map(e, f, i)?;
                let (witness, coeffs) = kernel_witness_over(&map, f)?.ok_or_else(|| {
                    Error::Soundness(format!("restriction of map {i} to span(f) is injective"))
                })?;
                if witness != e.seq().items()[i] {
                    return Err(Error::Soundness(format!(
                        "kernel witness for index {i} is not a multiple of e[{i}]"
                    )));
                }

                // The images of f under the map span im = span(f without i),
                // so they contain an (n-1)-frame and one dependent image.
                let images: Vec<Vector> = f
                    .seq()
                    .iter()
                    .map(|fj| map.apply(fj))
                    .collect::<Result<_>>()?;
                let images = VecSequence::new(field, f.ambient_dim(), images)?;
                let image_frame = greedy_independent_indices(&images);
                if image_frame.len() != n - 1 {
                    return Err(Error::Soundness(format!(
                        "images under map {i} have rank {} instead of {}",
                        image_frame.len(),
                        n - 1
                    )));
                }
                let dependent_image = (0..n)
                    .find(|j| !image_frame.contains(j))
                    .expect("exactly one position is dependent");
                let sub_e = Frame::new(f.seq().without(i)?)?;
                let sub_f = Frame::new(images.subsequence(&image_frame)?)?;
                let reduced = self.build(&sub_e, &sub_f)?;

                columns.push(coeffs.clone());
                steps.push(KernelStep {
                    index: i,
                    map,
                    witness,
                    witness_coeffs: coeffs,
                    image_frame,
                    dependent_image,
                    reduced,
                });
            }
            LemmaInstance {
                e: e.clone(),
                f: f.clone(),
                derivation: Derivation::Kernel { steps },
                coefficients: ScalarMatrix::from_columns(field, n, &columns)?,
            }
        };
        let level = &mut self.levels[n - 1];
        level.instances.push(instance);
        let idx = level.instances.len() - 1;
        self.seen.insert(key, idx);
        Ok(idx)
    }
}

/// Runs the inductive argument on `(e, f)` and records every level.
pub fn trace_induction(e: &Frame, f: &Frame) -> Result<ProofTrace> {
    check_lemma_inputs(e, f)?;
    let n = e.len();
    let mut builder = TraceBuilder {
        levels: (1..=n)
            .map(|rank| TraceLevel {
                rank,
                instances: Vec::new(),
            })
            .collect(),
        seen: HashMap::new(),
    };
    if n > 0 {
        builder.build(e, f)?;
    }
    Ok(ProofTrace {
        levels: builder.levels,
    })
}

/// Result of completing a frame with vectors of a given basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinitzExtension {
    /// `f_1, ..., f_k, b_{i_1}, ..., b_{i_r}`.
    pub extended: Frame,
    /// Positions `i_1 < ... < i_r` in the basis.
    pub picked: Vec<usize>,
    /// `r`, which always equals `dim - k`.
    pub added: usize,
}

/// Extends the frame `f` by the basis vectors of `basis` that keep it
/// independent, scanning the basis left to right.
pub fn steinitz_extend(basis: &Frame, f: &Frame) -> Result<SteinitzExtension> {
    basis.seq().check_same_space(f.seq())?;
    let dim = basis.ambient_dim();
    if basis.len() != dim {
        return Err(Error::NotABasis {
            len: basis.len(),
            dim,
        });
    }
    let k = f.len();
    let joined = f.seq().concat(basis.seq())?;
    let kept = greedy_independent_indices(&joined);
    if kept.len() < k || kept[..k] != (0..k).collect::<Vec<_>>()[..] {
        return Err(Error::Soundness("frame prefix was not kept".into()));
    }
    let picked: Vec<usize> = kept[k..].iter().map(|&j| j - k).collect();
    let added = picked.len();
    let extended = Frame::new(joined.subsequence(&kept)?)?;
    if added + k != dim || extended.len() != dim {
        return Err(Error::Soundness(format!(
            "extension added {added} vectors to a {k}-frame in dimension {dim}"
        )));
    }
    Ok(SteinitzExtension {
        extended,
        picked,
        added,
    })
}

/// `rank(derived) ≤ rank(base) ≤ len(base)` for `derived ≺ span(base)`.
pub fn rank_bound_check(base: &VecSequence, derived: &VecSequence) -> Result<bool> {
    base.check_same_space(derived)?;
    if !span_of(base).contains_all(derived)? {
        return Err(Error::NotInSpan("derived sequence".into()));
    }
    let base_rank = rank_seq(base);
    Ok(rank_seq(derived) <= base_rank && base_rank <= base.len())
}
