//! Acceptance suite. Runs every criterion at its pinned size, tolerance and
//! time limit, prints one PASS/FAIL line each, and exits non-zero if any
//! criterion fails. Arithmetic is exact throughout: tolerance is zero.

mod support;

use std::time::{Duration, Instant};

use framekit::harness::{
    lemma_instance, random_combinations, random_frame, random_scalar, random_sequence,
    standard_fields,
};
use framekit::oracle::{maximality_bruteforce, member_bruteforce, rank_bruteforce};
use framekit::{
    basis_from_generators, change_of_basis, check_certificate, extend_frame, is_frame,
    is_maximal_in, lin_comb, mat_product, rank_bound_check, rank_seq, solve_in_span, span_of,
    steinitz_extend, trace_induction, verify_basic_lemma, Derivation, Error, FieldSpec, Frame,
    Scalar, VecSequence, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5EED_F4A3;

const LEMMA_PER_FIELD: usize = 1000;
const LEMMA_MAX_N: usize = 5;
const LEMMA_MAX_M: usize = 7;
const LEMMA_LIMIT: Duration = Duration::from_secs(30);

const STEINITZ_INSTANCES: usize = 500;
const STEINITZ_MAX_KL: usize = 4;
const STEINITZ_LIMIT: Duration = Duration::from_secs(10);

const EXHAUSTIVE_MAX_M: usize = 3;
const EXHAUSTIVE_MAX_N: usize = 3;
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(60);

const RANK_BOUND_PER_FIELD: usize = 1000;
const RANK_BOUND_MAX_N: usize = 5;
const RANK_BOUND_MAX_M: usize = 6;

const DICHOTOMY_PAIRS: usize = 500;
const DICHOTOMY_MAX_M: usize = 4;
/// Per-call cap for the brute-force maximality confirmation.
const MAXIMALITY_ENUMERATION: u64 = 200_000;

const TRACE_PER_FIELD: usize = 250;
const TRACE_MAX_N: usize = 5;
const TRACE_MAX_M: usize = 6;

const AXIOM_TRIPLES_PER_FIELD: usize = 10_000;
const FERMAT_MAX_P: u64 = 97;

const MIN_FIXTURES: usize = 20;

struct Verdict {
    passed: bool,
    summary: String,
}

fn timed(limit: Option<Duration>, run: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = run();
    let took = start.elapsed();
    match limit {
        Some(l) => {
            v.summary.push_str(&format!(
                ", {:.2}s (limit {}s)",
                took.as_secs_f64(),
                l.as_secs()
            ));
            v.passed &= took < l;
        }
        None => v.summary.push_str(&format!(", {:.2}s", took.as_secs_f64())),
    }
    v
}

fn verdict(failures: &[String], summary: String) -> Verdict {
    let mut summary = format!("{summary}, {} failures", failures.len());
    if let Some(first) = failures.first() {
        summary.push_str(&format!(" (first: {first})"));
    }
    Verdict {
        passed: failures.is_empty(),
        summary,
    }
}

/// The shared instance set of criteria 1 and 2.
fn lemma_instances() -> Vec<(Frame, Frame)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for field in standard_fields() {
        for _ in 0..LEMMA_PER_FIELD {
            let n = rng.gen_range(1..=LEMMA_MAX_N);
            let m = rng.gen_range(n..=LEMMA_MAX_M);
            out.push(lemma_instance(&mut rng, field, m, n));
        }
    }
    out
}

fn basic_lemma(instances: &[(Frame, Frame)]) -> Verdict {
    let mut failures = Vec::new();
    for (k, (e, f)) in instances.iter().enumerate() {
        match verify_basic_lemma(e, f) {
            Ok(cert) if check_certificate(&cert) => {}
            Ok(_) => failures.push(format!("instance {k}: certificate rejected")),
            Err(err) => failures.push(format!("instance {k}: {err}")),
        }
    }
    verdict(
        &failures,
        format!("{} instances over gf2/gf3/gf5/q", instances.len()),
    )
}

fn change_of_basis_matches(instances: &[(Frame, Frame)]) -> Verdict {
    let mut failures = Vec::new();
    for (k, (e, f)) in instances.iter().enumerate() {
        let (cob, cert) = match (change_of_basis(e, f), verify_basic_lemma(e, f)) {
            (Ok(c), Ok(cert)) => (c, cert),
            (Err(err), _) | (_, Err(err)) => {
                failures.push(format!("instance {k}: {err}"));
                continue;
            }
        };
        let left = mat_product(&cob.forward, &cob.inverse).unwrap();
        let right = mat_product(&cob.inverse, &cob.forward).unwrap();
        if !left.is_identity() || !right.is_identity() {
            failures.push(format!("instance {k}: A and A_inv are not inverse"));
        }
        if cob.inverse != cert.coefficients {
            failures.push(format!("instance {k}: A_inv differs from the certificate"));
        }
        // f = eA column by column
        for j in 0..f.len() {
            if lin_comb(e.seq(), &cob.forward.column(j)).unwrap() != *f.get(j).unwrap() {
                failures.push(format!("instance {k}: f[{j}] != e A[:, {j}]"));
            }
        }
    }
    verdict(&failures, format!("{} instances", instances.len()))
}

fn steinitz() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let fields = standard_fields();
    let mut failures = Vec::new();
    for k in 0..STEINITZ_INSTANCES {
        let field = fields[k % fields.len()];
        let kk = rng.gen_range(0..=STEINITZ_MAX_KL);
        let l = rng.gen_range(0..=STEINITZ_MAX_KL);
        let dim = kk + l;
        let basis = random_frame(&mut rng, field, dim, dim);
        let frame = random_frame(&mut rng, field, dim, kk);
        match steinitz_extend(&basis, &frame) {
            Ok(ext) => {
                if ext.added != l {
                    failures.push(format!("instance {k}: r = {} but l = {l}", ext.added));
                }
                if ext.picked.windows(2).any(|w| w[0] >= w[1]) {
                    failures.push(format!(
                        "instance {k}: picked {:?} not increasing",
                        ext.picked
                    ));
                }
                if rank_seq(ext.extended.seq()) != kk + l || ext.extended.len() != kk + l {
                    failures.push(format!("instance {k}: extension is not a basis"));
                }
                let prefix: Vec<usize> = (0..kk).collect();
                if ext.extended.seq().subsequence(&prefix).unwrap() != *frame.seq() {
                    failures.push(format!("instance {k}: frame is not a prefix"));
                }
            }
            Err(err) => failures.push(format!("instance {k}: {err}")),
        }
    }
    verdict(
        &failures,
        format!("{STEINITZ_INSTANCES} instances, k, l <= {STEINITZ_MAX_KL}"),
    )
}

/// Every sequence in GF(2)^m of length n, in lexicographic order of its bits.
fn all_gf2_sequences(m: usize, n: usize) -> impl Iterator<Item = VecSequence> {
    let field = FieldSpec::prime(2).unwrap();
    (0u32..1 << (m * n)).map(move |bits| {
        let items = (0..n)
            .map(|j| {
                let entries = (0..m)
                    .map(|c| field.from_i64(i64::from(bits >> (j * m + c) & 1)))
                    .collect();
                Vector::new(field, entries).unwrap()
            })
            .collect();
        VecSequence::new(field, m, items).unwrap()
    })
}

fn exhaustive_oracle() -> Verdict {
    let budget = Default::default();
    let mut failures = Vec::new();
    let (mut sequences, mut pairs) = (0usize, 0usize);
    for m in 0..=EXHAUSTIVE_MAX_M {
        let vectors: Vec<Vector> = all_gf2_sequences(m, 1)
            .map(|s| s.into_items().remove(0))
            .collect();
        for n in 0..=EXHAUSTIVE_MAX_N {
            for seq in all_gf2_sequences(m, n) {
                sequences += 1;
                let oracle = rank_bruteforce(&seq, &budget).unwrap();
                if rank_seq(&seq) != oracle {
                    failures.push(format!("m={m} n={n}: rank differs on {seq:?}"));
                }
                for x in &vectors {
                    pairs += 1;
                    let engine = solve_in_span(&seq, x).unwrap().is_some();
                    if engine != member_bruteforce(&seq, x, &budget).unwrap() {
                        failures.push(format!("m={m} n={n}: membership differs for {x}"));
                    }
                }
            }
        }
    }
    verdict(
        &failures,
        format!("gf2, m <= {EXHAUSTIVE_MAX_M}, n <= {EXHAUSTIVE_MAX_N}: {sequences} sequences, {pairs} membership pairs"),
    )
}

fn rank_bound() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut failures = Vec::new();
    let mut total = 0;
    for field in standard_fields() {
        for k in 0..RANK_BOUND_PER_FIELD {
            total += 1;
            let n = rng.gen_range(0..=RANK_BOUND_MAX_N);
            let m = rng.gen_range(0..=RANK_BOUND_MAX_M);
            let base = random_sequence(&mut rng, field, m, n);
            let len = rng.gen_range(0..=2 * n);
            let derived = random_combinations(&mut rng, &base, len);
            match rank_bound_check(&base, &derived) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{field} pair {k}: bound violated")),
                Err(err) => failures.push(format!("{field} pair {k}: {err}")),
            }
        }
    }
    verdict(&failures, format!("{total} pairs, derived length <= 2n"))
}

/// A random subspace (given by generators) and a random frame inside it.
fn frame_in_subspace(rng: &mut ChaCha8Rng, field: FieldSpec) -> (Frame, VecSequence) {
    let m = rng.gen_range(1..=DICHOTOMY_MAX_M);
    let gens_rank = rng.gen_range(0..=m);
    let gens = random_sequence(rng, field, m, gens_rank);
    let basis = basis_from_generators(&gens);
    let k = rng.gen_range(0..=basis.len());
    loop {
        let cand = random_combinations(rng, basis.seq(), k);
        if is_frame(&cand) {
            return (Frame::new(cand).unwrap(), gens);
        }
    }
}

fn dichotomy() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let fields = standard_fields();
    let budget = framekit::oracle::EnumerationBudget::with_max_enumeration(MAXIMALITY_ENUMERATION);
    let mut failures = Vec::new();
    let (mut confirmed, mut over_budget) = (0usize, 0usize);
    for k in 0..DICHOTOMY_PAIRS {
        let field = fields[k % fields.len()];
        let (fr, gens) = frame_in_subspace(&mut rng, field);
        let sub = span_of(&gens);
        let maximal = match is_maximal_in(&fr, &sub) {
            Ok(b) => b,
            Err(err) => {
                failures.push(format!("pair {k}: {err}"));
                continue;
            }
        };
        let extended = match extend_frame(&fr, &sub) {
            Ok(v) => {
                let ok = sub.contains(&v).unwrap() && is_frame(&fr.seq().pushed(v).unwrap());
                if !ok {
                    failures.push(format!("pair {k}: extension vector is invalid"));
                }
                true
            }
            Err(Error::AlreadyMaximal) => false,
            Err(err) => {
                failures.push(format!("pair {k}: {err}"));
                continue;
            }
        };
        if maximal == extended {
            failures.push(format!("pair {k}: maximal={maximal} extended={extended}"));
        }
        if matches!(field.modulus(), Some(2 | 3)) {
            match maximality_bruteforce(&fr, &sub, fr.len() + 1, &budget) {
                Ok(b) if b == maximal => confirmed += 1,
                Ok(b) => failures.push(format!("pair {k}: oracle says maximal={b}")),
                Err(Error::BudgetExceeded(_)) => over_budget += 1,
                Err(err) => failures.push(format!("pair {k}: oracle {err}")),
            }
        }
    }
    verdict(
        &failures,
        format!(
            "{DICHOTOMY_PAIRS} pairs; oracle confirmed {confirmed} gf2/gf3 pairs, {over_budget} over budget"
        ),
    )
}

fn trace_fidelity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut failures = Vec::new();
    let (mut traces, mut witnesses) = (0usize, 0usize);
    for field in standard_fields() {
        for t in 0..TRACE_PER_FIELD {
            let n = rng.gen_range(1..=TRACE_MAX_N);
            let m = rng.gen_range(n..=TRACE_MAX_M);
            let (e, f) = lemma_instance(&mut rng, field, m, n);
            let trace = match trace_induction(&e, &f) {
                Ok(tr) => tr,
                Err(err) => {
                    failures.push(format!("{field} trace {t}: {err}"));
                    continue;
                }
            };
            traces += 1;
            let direct = verify_basic_lemma(&e, &f).unwrap();
            if trace.root().map(|r| &r.coefficients) != Some(&direct.coefficients) {
                failures.push(format!("{field} trace {t}: final coefficients differ"));
            }
            for (depth, level) in trace.levels.iter().enumerate() {
                for (idx, inst) in level.instances.iter().enumerate() {
                    let at = format!("{field} trace {t} instance {}.{idx}", level.rank);
                    if !check_certificate(&inst.certificate()) {
                        failures.push(format!("{at}: certificate rejected"));
                    }
                    let Derivation::Kernel { steps } = &inst.derivation else {
                        continue;
                    };
                    for s in steps {
                        witnesses += 1;
                        let w = &s.witness;
                        let ei = inst.e.get(s.index).unwrap();
                        let in_span =
                            lin_comb(inst.f.seq(), &s.witness_coeffs).ok().as_ref() == Some(w);
                        let annihilated = s.map.apply(w).map(|v| v.is_zero()).unwrap_or(false);
                        let multiple = is_multiple_of(w, ei);
                        if w.is_zero() || !in_span || !annihilated || !multiple {
                            failures.push(format!(
                                "{at} step {}: nonzero={} in-span={in_span} annihilated={annihilated} multiple={multiple}",
                                s.index,
                                !w.is_zero()
                            ));
                        }
                        let reduced_ok =
                            depth > 0 && trace.levels[depth - 1].instances.get(s.reduced).is_some();
                        if !reduced_ok {
                            failures
                                .push(format!("{at} step {}: dangling reduced instance", s.index));
                        }
                    }
                }
            }
        }
    }
    verdict(
        &failures,
        format!("{traces} traces, {witnesses} kernel witnesses"),
    )
}

/// `w = c v` for some scalar `c`, found from the leading entry of `v`.
fn is_multiple_of(w: &Vector, v: &Vector) -> bool {
    let Some(lead) = v.leading_index() else {
        return w.is_zero();
    };
    let c = w.entries()[lead].try_div(&v.entries()[lead]).unwrap();
    v.scale(&c) == *w
}

fn field_axioms() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut failures = Vec::new();
    let mut fields: Vec<FieldSpec> = standard_fields().to_vec();
    fields.push(FieldSpec::prime(2_147_483_647).unwrap());
    for &field in &fields {
        let (zero, one) = (field.zero(), field.one());
        for t in 0..AXIOM_TRIPLES_PER_FIELD {
            let [a, b, c]: [Scalar; 3] = std::array::from_fn(|_| random_scalar(&mut rng, field));
            let mut checks = vec![
                ("add assoc", &(&a + &b) + &c == &a + &(&b + &c)),
                ("mul assoc", &(&a * &b) * &c == &a * &(&b * &c)),
                ("add comm", &a + &b == &b + &a),
                ("mul comm", &a * &b == &b * &a),
                ("distrib", &a * &(&b + &c) == &(&a * &b) + &(&a * &c)),
                ("add id", &a + &zero == a),
                ("mul id", &a * &one == a),
                ("add inv", (&a + &(-&a)).is_zero()),
                ("sub", &(&a - &b) + &b == a),
            ];
            if !a.is_zero() {
                let inv = a.inv().unwrap();
                checks.push(("mul inv", (&a * &inv).is_one()));
                checks.push(("div", b.try_div(&a).unwrap() == &b * &inv));
            } else {
                checks.push(("zero inv", a.inv().is_err()));
            }
            let canonical = Scalar::parse(&a.to_string(), field).ok() == Some(a.clone());
            checks.push(("round trip", canonical));
            for (name, ok) in checks {
                if !ok {
                    failures.push(format!(
                        "{field} triple {t}: {name} fails for {a}, {b}, {c}"
                    ));
                }
            }
        }
    }
    let mut primes = 0;
    for p in 2..=FERMAT_MAX_P {
        let Ok(field) = FieldSpec::prime(p) else {
            continue;
        };
        primes += 1;
        for a in field.elements().unwrap().skip(1) {
            if !a.pow(p - 1).is_one() {
                failures.push(format!("fermat fails for {a} in gf {p}"));
            }
        }
    }
    verdict(
        &failures,
        format!(
            "{AXIOM_TRIPLES_PER_FIELD} triples x {} fields, fermat over {primes} primes <= {FERMAT_MAX_P}",
            fields.len()
        ),
    )
}

fn cli_round_trip() -> Verdict {
    let mut failures = support::check_goldens();
    let fixtures = std::fs::read_dir(support::fixtures()).unwrap().count();
    if fixtures < MIN_FIXTURES {
        failures.push(format!("only {fixtures} fixture files"));
    }
    for c in support::CASES {
        let first = support::run_bin(c.args, &support::fixtures());
        if first != support::run_bin(c.args, &support::fixtures()) {
            failures.push(format!("{}: output not deterministic", c.name));
        }
        if c.exit == 1 && !first.2.is_empty() {
            failures.push(format!("{}: exit 1 with stderr {}", c.name, first.2));
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let pairs = [
        ("gf2_e3.mat", "gf2_f3.mat"),
        ("gf5_e.mat", "gf5_f.mat"),
        ("q_e.mat", "q_f.mat"),
    ];
    let mut certs = 0;
    for (e, f) in pairs {
        for cmd in ["verify-lemma", "trace"] {
            let path = dir.path().join(format!("{cmd}-{e}.cert"));
            let p = path.to_str().unwrap();
            let (code, _, err) = support::run_bin(
                &[cmd, "-e", e, "-f", f, "--emit-cert", p],
                &support::fixtures(),
            );
            let (check, out, _) =
                support::run_bin(&["oracle-check", "--cert", p], &support::fixtures());
            certs += 1;
            if code != 0 || check != 0 || out != "certificate valid\n" {
                failures.push(format!(
                    "{cmd} {e} {f}: emit {code} {err}, check {check} {out}"
                ));
            }
        }
    }
    verdict(
        &failures,
        format!(
            "{} golden cases, {fixtures} fixture files, {certs} emitted certificates re-checked",
            support::CASES.len()
        ),
    )
}

fn main() {
    let instances = lemma_instances();
    let criteria: Vec<(&str, Verdict)> = vec![
        (
            "1 inclusion certificates",
            timed(Some(LEMMA_LIMIT), || basic_lemma(&instances)),
        ),
        (
            "2 change of basis",
            timed(None, || change_of_basis_matches(&instances)),
        ),
        ("3 steinitz", timed(Some(STEINITZ_LIMIT), steinitz)),
        (
            "4 exhaustive oracle",
            timed(Some(EXHAUSTIVE_LIMIT), exhaustive_oracle),
        ),
        ("5 rank bound", timed(None, rank_bound)),
        ("6 maximality dichotomy", timed(None, dichotomy)),
        ("7 trace fidelity", timed(None, trace_fidelity)),
        ("8 field axioms", timed(None, field_axioms)),
        ("9 cli round trip", timed(None, cli_round_trip)),
    ];
    let mut all = true;
    for (name, v) in &criteria {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag}: {}", v.summary);
        all &= v.passed;
    }
    let failed = criteria.iter().filter(|(_, v)| !v.passed).count();
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if !all {
        std::process::exit(1);
    }
}
