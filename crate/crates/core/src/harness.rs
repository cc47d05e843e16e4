//! Seeded random instance generators and the engine/oracle cross-check used
//! by the test suites and `oracle-check --random`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::lemma::{check_certificate, verify_basic_lemma};
use crate::linalg::{lin_comb, solve_in_span, ScalarMatrix, VecSequence, Vector};
use crate::oracle::{member_bruteforce, rank_bruteforce, EnumerationBudget};
use crate::spans::{is_frame, rank_seq, Frame};

/// GF(2), GF(3), GF(5) and the rationals.
pub fn standard_fields() -> [FieldSpec; 4] {
    [
        FieldSpec::prime(2).expect("2 is prime"),
        FieldSpec::prime(3).expect("3 is prime"),
        FieldSpec::prime(5).expect("5 is prime"),
        FieldSpec::rationals(),
    ]
}

/// Uniform over GF(p); small numerators and denominators over the rationals.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_i64(rng.gen_range(0..p as i64)),
        None => {
            let num: i64 = rng.gen_range(-6..=6);
            let den: i64 = rng.gen_range(1..=4);
            Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, m: usize) -> Vector {
    Vector::new(field, (0..m).map(|_| random_scalar(rng, field)).collect())
        .expect("entries drawn from one field")
}

pub fn random_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldSpec,
    m: usize,
    n: usize,
) -> VecSequence {
    let items = (0..n).map(|_| random_vector(rng, field, m)).collect();
    VecSequence::new(field, m, items).expect("vectors of one space")
}

/// A random `n`-frame in `field^m`; requires `n <= m`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, m: usize, n: usize) -> Frame {
    assert!(n <= m, "no {n}-frame in dimension {m}");
    loop {
        let s = random_sequence(rng, field, m, n);
        if is_frame(&s) {
            return Frame::new(s).expect("checked independent");
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> ScalarMatrix {
    let entries = (0..rows * cols)
        .map(|_| random_scalar(rng, field))
        .collect();
    ScalarMatrix::new(field, rows, cols, entries).expect("entries drawn from one field")
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, n: usize) -> ScalarMatrix {
    loop {
        let a = random_matrix(rng, field, n, n);
        if rank_seq(&a.row_sequence()) == n {
            return a;
        }
    }
}

/// `e A`: the sequence whose `j`-th item is `sum_k A[k][j] e_k`.
pub fn compose(e: &VecSequence, a: &ScalarMatrix) -> Result<VecSequence> {
    let items = (0..a.cols())
        .map(|j| lin_comb(e, &a.column(j)))
        .collect::<Result<Vec<_>>>()?;
    VecSequence::new(e.field(), e.ambient_dim(), items)
}

/// Valid inputs for the inclusion lemma: a random `n`-frame `e` in
/// `field^m` and `f = e A` for a random invertible `A`.
pub fn lemma_instance<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldSpec,
    m: usize,
    n: usize,
) -> (Frame, Frame) {
    let e = random_frame(rng, field, m, n);
    let a = random_invertible(rng, field, n);
    let f = compose(e.seq(), &a).expect("shapes agree");
    (e, Frame::new(f).expect("invertible image of a frame"))
}

/// `len` random linear combinations of `base`.
pub fn random_combinations<R: Rng + ?Sized>(
    rng: &mut R,
    base: &VecSequence,
    len: usize,
) -> VecSequence {
    let items = (0..len)
        .map(|_| {
            let c: Vec<Scalar> = (0..base.len())
                .map(|_| random_scalar(rng, base.field()))
                .collect();
            lin_comb(base, &c).expect("coefficient count matches")
        })
        .collect();
    VecSequence::new(base.field(), base.ambient_dim(), items).expect("combinations of base")
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub instances: usize,
    pub disagreements: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs `count` random small instances over GF(2), GF(3), GF(5) and
/// compares the engine against the brute-force oracle: rank, span
/// membership, and certificate validity for a random lemma instance.
pub fn cross_check_random<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    budget: &EnumerationBudget,
) -> Result<CrossCheckReport> {
    let fields = &standard_fields()[..3];
    let mut report = CrossCheckReport::default();
    for k in 0..count {
        let field = fields[rng.gen_range(0..fields.len())];
        let m = rng.gen_range(0..=3usize.min(budget.max_ambient_dim));
        let n = rng.gen_range(0..=3usize.min(budget.max_sequence_len));
        if budget.admit(field, m, n).is_err() {
            continue;
        }
        report.instances += 1;
        let seq = random_sequence(rng, field, m, n);
        let x = random_vector(rng, field, m);

        let engine_rank = rank_seq(&seq);
        let oracle_rank = rank_bruteforce(&seq, budget)?;
        if engine_rank != oracle_rank {
            report.disagreements.push(format!(
                "instance {k} over {field}: rank {engine_rank} vs oracle {oracle_rank}"
            ));
        }
        let engine_member = solve_in_span(&seq, &x)?.is_some();
        let oracle_member = member_bruteforce(&seq, &x, budget)?;
        if engine_member != oracle_member {
            report.disagreements.push(format!(
                "instance {k} over {field}: membership {engine_member} vs oracle {oracle_member}"
            ));
        }

        let (e, f) = lemma_instance(rng, field, m, n.min(m));
        let cert = verify_basic_lemma(&e, &f)?;
        if !check_certificate(&cert) {
            report
                .disagreements
                .push(format!("instance {k} over {field}: certificate rejected"));
        }
    }
    Ok(report)
}
