//! Definition-level reference implementations over small prime fields.
//!
//! Everything here works by exhaustive enumeration of coefficient tuples and
//! uses nothing from the elimination engine; vectors are only read as
//! residue tuples. The exponential cost is bounded up front by an
//! [`EnumerationBudget`].

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{VecSequence, Vector};
use crate::spans::{Frame, Subspace};

/// Limits on brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_field_size: u32,
    pub max_ambient_dim: usize,
    pub max_sequence_len: usize,
    /// Cap on the combined number of enumerated tuples for one call.
    pub max_enumeration: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_field_size: 5,
            max_ambient_dim: 4,
            max_sequence_len: 4,
            max_enumeration: 1_000_000,
        }
    }
}

impl EnumerationBudget {
    pub fn with_max_enumeration(max_enumeration: u64) -> Self {
        EnumerationBudget {
            max_enumeration,
            ..Self::default()
        }
    }

    /// Checks a `p`, ambient `m`, length `n` request and returns `p`.
    pub fn admit(&self, field: FieldSpec, m: usize, n: usize) -> Result<u32> {
        let p = field.modulus().ok_or(Error::InfiniteField)?;
        if p > self.max_field_size {
            return Err(Error::BudgetExceeded(format!(
                "field size {p} > {}",
                self.max_field_size
            )));
        }
        if m > self.max_ambient_dim {
            return Err(Error::BudgetExceeded(format!(
                "ambient dimension {m} > {}",
                self.max_ambient_dim
            )));
        }
        if n > self.max_sequence_len {
            return Err(Error::BudgetExceeded(format!(
                "sequence length {n} > {}",
                self.max_sequence_len
            )));
        }
        let total = pow_sat(p as u64, n).saturating_add(pow_sat(p as u64, m));
        if total > self.max_enumeration {
            return Err(Error::BudgetExceeded(format!(
                "{p}^{n} + {p}^{m} = {total} > {}",
                self.max_enumeration
            )));
        }
        Ok(p)
    }
}

fn pow_sat(base: u64, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base))
}

fn residues(v: &Vector) -> Vec<u32> {
    v.entries()
        .iter()
        .map(|s| s.residue().expect("prime-field entry"))
        .collect()
}

fn residue_rows(seq: &VecSequence) -> Vec<Vec<u32>> {
    seq.iter().map(residues).collect()
}

/// Every tuple in `{0..p}^n`, in lexicographic order.
struct Tuples {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Tuples {
    fn new(p: u32, n: usize) -> Self {
        Tuples {
            p,
            current: Some(vec![0; n]),
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for slot in next.iter_mut().rev() {
            *slot += 1;
            if *slot < self.p {
                self.current = Some(next);
                return Some(out);
            }
            *slot = 0;
        }
        Some(out)
    }
}

fn combine(p: u32, m: usize, rows: &[&Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let p = p as u64;
    let mut acc = vec![0u64; m];
    for (row, &c) in rows.iter().zip(coeffs) {
        for (a, &x) in acc.iter_mut().zip(row.iter()) {
            *a = (*a + c as u64 * x as u64) % p;
        }
    }
    acc.into_iter().map(|v| v as u32).collect()
}

fn to_vector(field: FieldSpec, p: u32, v: Vec<u32>) -> Vector {
    Vector::new(
        field,
        v.into_iter().map(|r| Scalar::gf_unchecked(p, r)).collect(),
    )
    .expect("residues of one field")
}

/// All linear combinations of `seq`, sorted and deduplicated.
pub fn enum_span(seq: &VecSequence, budget: &EnumerationBudget) -> Result<Vec<Vector>> {
    let p = budget.admit(seq.field(), seq.ambient_dim(), seq.len())?;
    let rows = residue_rows(seq);
    let refs: Vec<&Vec<u32>> = rows.iter().collect();
    let mut out: Vec<Vec<u32>> = Tuples::new(p, seq.len())
        .map(|c| combine(p, seq.ambient_dim(), &refs, &c))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out
        .into_iter()
        .map(|v| to_vector(seq.field(), p, v))
        .collect())
}

pub fn member_bruteforce(
    seq: &VecSequence,
    x: &Vector,
    budget: &EnumerationBudget,
) -> Result<bool> {
    seq.check_compatible(x)?;
    let p = budget.admit(seq.field(), seq.ambient_dim(), seq.len())?;
    let rows = residue_rows(seq);
    let refs: Vec<&Vec<u32>> = rows.iter().collect();
    let target = residues(x);
    Ok(Tuples::new(p, seq.len()).any(|c| combine(p, seq.ambient_dim(), &refs, &c) == target))
}

/// Whether the only null combination of `rows` is the zero tuple.
fn independent(p: u32, m: usize, rows: &[&Vec<u32>]) -> bool {
    Tuples::new(p, rows.len())
        .filter(|c| c.iter().any(|&x| x != 0))
        .all(|c| combine(p, m, rows, &c).iter().any(|&x| x != 0))
}

fn rank_of_rows(p: u32, m: usize, rows: &[Vec<u32>]) -> usize {
    let n = rows.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let sub: Vec<&Vec<u32>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &rows[i])
            .collect();
        if independent(p, m, &sub) {
            best = size;
            if best == n {
                break;
            }
        }
    }
    best
}

/// Maximal length of a subsequence whose only null combination is trivial.
pub fn rank_bruteforce(seq: &VecSequence, budget: &EnumerationBudget) -> Result<usize> {
    let p = budget.admit(seq.field(), seq.ambient_dim(), seq.len())?;
    Ok(rank_of_rows(p, seq.ambient_dim(), &residue_rows(seq)))
}

/// The quantified definition of maximality: every sequence of length at most
/// `max_len` with items in `sub` has rank at most `fr.len()`.
pub fn maximality_bruteforce(
    fr: &Frame,
    sub: &Subspace,
    max_len: usize,
    budget: &EnumerationBudget,
) -> Result<bool> {
    sub.canonical_basis().check_same_space(fr.seq())?;
    let p = budget.admit(sub.field(), sub.ambient_dim(), max_len.max(sub.dim()))?;
    let elements = enum_span(sub.canonical_basis(), budget)?;
    let size = elements.len() as u64;
    let sequences = (0..=max_len).fold(0u64, |acc, l| acc.saturating_add(pow_sat(size, l)));
    if sequences > budget.max_enumeration {
        return Err(Error::BudgetExceeded(format!(
            "{sequences} candidate sequences > {}",
            budget.max_enumeration
        )));
    }
    let elements: Vec<Vec<u32>> = elements.iter().map(residues).collect();
    for v in fr.seq().iter() {
        if !elements.contains(&residues(v)) {
            return Err(Error::NotInSpan("frame".into()));
        }
    }
    let m = sub.ambient_dim();
    let bound = fr.len();
    for len in 0..=max_len {
        for pick in Tuples::new(size as u32, len) {
            let rows: Vec<Vec<u32>> = pick.iter().map(|&i| elements[i as usize].clone()).collect();
            if rank_of_rows(p, m, &rows) > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spans::span_of;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn seq(field: FieldSpec, m: usize, r: &[&[i64]]) -> VecSequence {
        VecSequence::from_rows_i64(field, m, r).unwrap()
    }

    #[test]
    fn tuples_enumerate_everything() {
        assert_eq!(Tuples::new(3, 2).count(), 9);
        assert_eq!(
            Tuples::new(2, 0).collect::<Vec<_>>(),
            vec![Vec::<u32>::new()]
        );
        let all: Vec<_> = Tuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn enum_span_examples() {
        let b = EnumerationBudget::default();
        let s = enum_span(&seq(gf(2), 2, &[&[1, 1]]), &b).unwrap();
        assert_eq!(
            s,
            vec![
                Vector::from_i64(gf(2), &[0, 0]),
                Vector::from_i64(gf(2), &[1, 1])
            ]
        );

        let s = enum_span(&seq(gf(3), 2, &[&[1, 2]]), &b).unwrap();
        assert_eq!(
            s,
            vec![
                Vector::from_i64(gf(3), &[0, 0]),
                Vector::from_i64(gf(3), &[1, 2]),
                Vector::from_i64(gf(3), &[2, 1]),
            ]
        );

        let s = enum_span(&VecSequence::empty(gf(5), 3), &b).unwrap();
        assert_eq!(s, vec![Vector::zero(gf(5), 3)]);
    }

    #[test]
    fn member_examples() {
        let b = EnumerationBudget::default();
        let s = seq(gf(2), 2, &[&[1, 1], &[0, 1]]);
        assert!(member_bruteforce(&s, &Vector::from_i64(gf(2), &[1, 0]), &b).unwrap());
        let s = seq(gf(2), 3, &[&[1, 0, 0]]);
        assert!(!member_bruteforce(&s, &Vector::from_i64(gf(2), &[0, 1, 0]), &b).unwrap());
        assert!(member_bruteforce(&s, &Vector::zero(gf(2), 3), &b).unwrap());
    }

    #[test]
    fn rank_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(
            rank_bruteforce(&seq(gf(2), 2, &[&[1, 0], &[0, 1], &[1, 1]]), &b).unwrap(),
            2
        );
        assert_eq!(rank_bruteforce(&seq(gf(2), 2, &[&[0, 0]]), &b).unwrap(), 0);
        assert_eq!(
            rank_bruteforce(&VecSequence::empty(gf(2), 2), &b).unwrap(),
            0
        );
    }

    #[test]
    fn maximality_examples() {
        let b = EnumerationBudget::default();
        let full = Subspace::full(gf(2), 2);
        assert!(maximality_bruteforce(&Frame::standard(gf(2), 2), &full, 3, &b).unwrap());

        let one = Frame::new(seq(gf(2), 2, &[&[1, 0]])).unwrap();
        assert!(!maximality_bruteforce(&one, &full, 2, &b).unwrap());

        let fr = Frame::new(seq(gf(3), 3, &[&[1, 2, 0], &[0, 1, 1]])).unwrap();
        assert!(maximality_bruteforce(&fr, &span_of(fr.seq()), 3, &b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let b = EnumerationBudget::default();
        let q = FieldSpec::rationals();
        assert_eq!(
            rank_bruteforce(&VecSequence::empty(q, 1), &b),
            Err(Error::InfiniteField)
        );
        assert!(matches!(
            rank_bruteforce(&VecSequence::empty(gf(7), 1), &b),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            rank_bruteforce(&VecSequence::empty(gf(2), 5), &b),
            Err(Error::BudgetExceeded(_))
        ));
        let tight = EnumerationBudget::with_max_enumeration(10);
        assert!(matches!(
            enum_span(&seq(gf(3), 2, &[&[1, 0], &[0, 1]]), &tight),
            Err(Error::BudgetExceeded(_))
        ));
        let full = Subspace::full(gf(2), 4);
        assert!(matches!(
            maximality_bruteforce(&Frame::standard(gf(2), 4), &full, 4, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
