//! Shared command-line cases: each runs the real binary from the fixture
//! directory and is compared with `tests/golden/<name>.out` (exit code,
//! stdout, stderr). Set `FRAMEKIT_BLESS=1` to rewrite the goldens.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    // clap's usage text is not ours to pin
    pub check_stderr: bool,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case {
        name,
        args,
        exit,
        check_stderr: true,
    }
}

pub const CASES: &[Case] = &[
    case("rank_gf2_dep3", &["rank", "-s", "gf2_dep3.mat"], 0),
    case("rank_q_seq", &["rank", "-s", "q_seq.mat"], 0),
    case("rank_empty", &["rank", "--sequence", "empty3.mat"], 0),
    case(
        "member_gf3_in",
        &["member", "-s", "gf3_seq.mat", "-x", "gf3_in.mat"],
        0,
    ),
    case(
        "member_gf3_out",
        &["member", "-s", "gf3_seq.mat", "-x", "gf3_out.mat"],
        1,
    ),
    case(
        "member_q_in",
        &["member", "-s", "q_seq.mat", "--vector", "q_in.mat"],
        0,
    ),
    case(
        "member_not_a_row",
        &["member", "-s", "gf3_seq.mat", "-x", "gf3_seq.mat"],
        2,
    ),
    case("basis_gf2_dep3", &["basis", "-s", "gf2_dep3.mat"], 0),
    case("basis_q_seq", &["basis", "-s", "q_seq.mat"], 0),
    case("dim_gf3_seq", &["dim", "-s", "gf3_seq.mat"], 0),
    case("dim_empty", &["dim", "-s", "empty3.mat"], 0),
    case("extend_gf2_row_full", &["extend", "-k", "gf2_row10.mat"], 0),
    case(
        "extend_gf2_std2_maximal",
        &["extend", "-k", "gf2_std2.mat"],
        1,
    ),
    case(
        "extend_gf2_in_sub",
        &["extend", "-k", "gf2_frame1.mat", "-s", "gf2_f3.mat"],
        0,
    ),
    case(
        "extend_gf2_maximal_in_sub",
        &["extend", "-k", "gf2_f3.mat", "-s", "gf2_e3.mat"],
        1,
    ),
    case(
        "extend_frame_outside_sub",
        &["extend", "-k", "gf2_x001.mat", "-s", "gf2_e3.mat"],
        2,
    ),
    case(
        "change_basis_gf5",
        &["change-basis", "-e", "gf5_e.mat", "-f", "gf5_f.mat"],
        0,
    ),
    case(
        "change_basis_q",
        &["change-basis", "-e", "q_e.mat", "-f", "q_f.mat"],
        0,
    ),
    case(
        "verify_lemma_gf2",
        &["verify-lemma", "-e", "gf2_e3.mat", "-f", "gf2_f3.mat"],
        0,
    ),
    case(
        "verify_lemma_gf5",
        &["verify-lemma", "-e", "gf5_e.mat", "-f", "gf5_f.mat"],
        0,
    ),
    case(
        "verify_lemma_q",
        &["verify-lemma", "-e", "q_e.mat", "-f", "q_f.mat"],
        0,
    ),
    case(
        "verify_lemma_not_frame",
        &[
            "verify-lemma",
            "-e",
            "gf2_dependent_frame.mat",
            "-f",
            "gf2_std2.mat",
        ],
        2,
    ),
    case(
        "verify_lemma_length_mismatch",
        &["verify-lemma", "-e", "gf2_e3.mat", "-f", "gf2_basis3.mat"],
        2,
    ),
    case(
        "verify_lemma_outside_span",
        &["verify-lemma", "-e", "gf2_e3.mat", "-f", "gf2_g3.mat"],
        2,
    ),
    case(
        "change_basis_outside_span",
        &["change-basis", "-e", "gf2_e3.mat", "-f", "gf2_g3.mat"],
        2,
    ),
    case(
        "verify_lemma_field_mismatch",
        &["verify-lemma", "-e", "q_e.mat", "-f", "gf2_basis3.mat"],
        2,
    ),
    case(
        "trace_gf2",
        &["trace", "-e", "gf2_e3.mat", "-f", "gf2_f3.mat"],
        0,
    ),
    case(
        "trace_gf5",
        &["trace", "-e", "gf5_e.mat", "-f", "gf5_f.mat"],
        0,
    ),
    case("trace_q", &["trace", "-e", "q_e.mat", "-f", "q_f.mat"], 0),
    case(
        "steinitz_gf2",
        &["steinitz", "-b", "gf2_basis3.mat", "-k", "gf2_frame1.mat"],
        0,
    ),
    case(
        "steinitz_q",
        &["steinitz", "-b", "q_basis4.mat", "-k", "q_frame2.mat"],
        0,
    ),
    case(
        "steinitz_not_basis",
        &["steinitz", "-b", "gf2_e3.mat", "-k", "gf2_frame1.mat"],
        2,
    ),
    case(
        "oracle_seq_gf3",
        &["oracle-check", "-s", "gf3_seq.mat", "-x", "gf3_out.mat"],
        0,
    ),
    case("oracle_seq_gf2", &["oracle-check", "-s", "gf2_dep3.mat"], 0),
    case("oracle_q_rejected", &["oracle-check", "-s", "q_seq.mat"], 2),
    case(
        "oracle_budget_exceeded",
        &["oracle-check", "-s", "gf3_seq.mat", "--budget", "10"],
        2,
    ),
    case(
        "oracle_random",
        &["oracle-check", "--random", "60", "--seed", "7"],
        0,
    ),
    case(
        "oracle_cert_good",
        &["oracle-check", "--cert", "gf5_good.cert"],
        0,
    ),
    case(
        "oracle_cert_tampered",
        &["oracle-check", "--cert", "gf5_tampered.cert"],
        1,
    ),
    case(
        "oracle_cert_truncated",
        &["oracle-check", "--cert", "truncated.cert"],
        2,
    ),
    case("oracle_no_mode", &["oracle-check"], 2),
    case("bad_dims", &["rank", "-s", "bad_dims.mat"], 2),
    case("bad_scalar", &["rank", "-s", "bad_scalar.mat"], 2),
    case("bad_header", &["rank", "-s", "bad_header.mat"], 2),
    case("bad_token", &["dim", "-s", "bad_token.mat"], 2),
    case("missing_file", &["rank", "-s", "no_such_file.mat"], 2),
    Case {
        name: "unknown_command",
        args: &["transpose", "-s", "gf2_std2.mat"],
        exit: 2,
        check_stderr: false,
    },
    Case {
        name: "missing_flag",
        args: &["member", "-s", "gf2_std2.mat"],
        exit: 2,
        check_stderr: false,
    },
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run_bin(args: &[&str], cwd: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_framekit"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn framekit");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn render(c: &Case, code: i32, stdout: &str, stderr: &str) -> String {
    let stderr = if c.check_stderr {
        stderr
    } else {
        "(unchecked)\n"
    };
    format!("exit {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

/// Runs every case against its golden file; returns one message per mismatch.
/// With `FRAMEKIT_BLESS` set the goldens are rewritten first.
pub fn check_goldens() -> Vec<String> {
    let bless = std::env::var_os("FRAMEKIT_BLESS").is_some();
    let mut failures = Vec::new();
    for c in CASES {
        let (code, stdout, stderr) = run_bin(c.args, &fixtures());
        let actual = render(c, code, &stdout, &stderr);
        let path = golden_dir().join(format!("{}.out", c.name));
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &actual).unwrap();
        }
        if code != c.exit {
            failures.push(format!(
                "{}: exit {code}, expected {}\n{stderr}",
                c.name, c.exit
            ));
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == actual => {}
            Ok(expected) => failures.push(format!(
                "{}: output differs\n--- expected\n{expected}--- actual\n{actual}",
                c.name
            )),
            Err(e) => failures.push(format!("{}: {}: {e}", c.name, path.display())),
        }
    }
    failures
}
