use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pda_press::corpus;
use pda_press::udpda::write_unpda;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pda-press"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    put(dir.path(), "even.updpa", &write_unpda(&corpus::a_even()));
    put(dir.path(), "loop.updpa", &write_unpda(&corpus::a_loop()));
    put(
        dir.path(),
        "dead.updpa",
        &write_unpda(&corpus::dead_machine()),
    );
    put(dir.path(), "p.slp", "alphabet: 01\nS -> 0 0 0\n");
    dir
}

#[test]
fn member_on_even() {
    let dir = fixtures();
    let o = run(dir.path(), &["decide", "member", "even.updpa", "12"]);
    assert_eq!(stdout(&o), "yes\n");
    assert_eq!(o.status.code(), Some(0));
    let o = run(dir.path(), &["decide", "member", "even.updpa", "13"]);
    assert_eq!(stdout(&o), "no\n");
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["decide", "member", "even.updpa", "10^100"]);
    assert_eq!(stdout(&o), "yes\n");
}

#[test]
fn emptiness_after_slp_conversion() {
    let dir = fixtures();
    let o = run(
        dir.path(),
        &["convert", "slp-to-udpda", "p.slp", "-o", "m.updpa"],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = run(dir.path(), &["decide", "empty", "m.updpa"]);
    assert_eq!(stdout(&o), "yes\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn inclusion_reports_witness() {
    let dir = fixtures();
    let o = run(
        dir.path(),
        &[
            "decide",
            "included",
            "loop.updpa",
            "even.updpa",
            "--budget",
            "1000000",
        ],
    );
    assert_eq!(stdout(&o), "no (witness n=1)\n");
    assert_eq!(o.status.code(), Some(1));
    let o = run(
        dir.path(),
        &["decide", "included", "even.updpa", "loop.updpa"],
    );
    assert_eq!(stdout(&o), "yes\n");
}

#[test]
fn budget_exit_code() {
    let dir = fixtures();
    put(
        dir.path(),
        "x.slp",
        &format!("alphabet: 01\nS -> {}\n", "0 ".repeat(500)),
    );
    let o = run(
        dir.path(),
        &[
            "slp", "compare", "x.slp", "x.slp", "--order", "0<=1", "--budget", "10",
        ],
    );
    assert_eq!(stdout(&o), "budget exceeded\n");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn errors_exit_two() {
    let dir = fixtures();
    let o = run(dir.path(), &["decide", "member", "missing.updpa", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.updpa"));
    put(dir.path(), "bad.updpa", "states: p\nstack: _\ninitial: q\n");
    let o = run(dir.path(), &["decide", "empty", "bad.updpa"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["decide", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["intexpr", "eval", "p.slp"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_carries_verdict_witness_and_sizes() {
    let dir = fixtures();
    let o = run(
        dir.path(),
        &["decide", "included", "loop.updpa", "even.updpa", "--json"],
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["witness"], "1");
    assert_eq!(v["sizes"]["a"]["states"], 1);
    assert!(v["timing_ms"].is_number());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn conversions_round_trip_through_files() {
    let dir = fixtures();
    let d = dir.path();
    assert!(run(
        d,
        &[
            "convert",
            "udpda-to-indicator",
            "even.updpa",
            "-o",
            "e.pair"
        ]
    )
    .status
    .success());
    assert!(run(
        d,
        &["convert", "indicator-to-udpda", "e.pair", "-o", "e2.updpa"]
    )
    .status
    .success());
    assert_eq!(
        stdout(&run(d, &["decide", "equal", "even.updpa", "e2.updpa"])),
        "yes\n"
    );
    assert_eq!(
        stdout(&run(d, &["decide", "equal", "even.updpa", "loop.updpa"])),
        "no\n"
    );
    assert!(run(
        d,
        &["convert", "udpda-to-transcript", "even.updpa", "-o", "e.tr"]
    )
    .status
    .success());
    assert!(run(
        d,
        &[
            "convert",
            "transcript-to-indicator",
            "e.tr",
            "-o",
            "e3.pair"
        ]
    )
    .status
    .success());
    assert!(run(
        d,
        &[
            "convert",
            "indicator-to-udpda",
            "e3.pair",
            "-o",
            "e3.updpa",
            "--tight-stack"
        ]
    )
    .status
    .success());
    assert_eq!(
        stdout(&run(d, &["decide", "equal", "e3.updpa", "even.updpa"])),
        "yes\n"
    );
    let a = stdout(&run(d, &["sim", "prefix", "e3.updpa", "--cap", "20"]));
    assert_eq!(a, "10101010101010101010\n");
}

#[test]
fn generators_emit_parseable_files() {
    let dir = fixtures();
    let d = dir.path();
    assert!(run(
        d,
        &[
            "gen",
            "subsetsum-compslp",
            "--weights",
            "1,2",
            "--target",
            "3",
            "-o",
            "ss"
        ]
    )
    .status
    .success());
    let o = run(
        d,
        &[
            "slp",
            "compare",
            "ss/p1.slp",
            "ss/p2.slp",
            "--order",
            "0<=1",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(1),
        "solvable instance fails the comparison"
    );
    assert!(run(
        d,
        &[
            "gen",
            "compslp-inclusion",
            "ss/p1.slp",
            "ss/p2.slp",
            "-o",
            "inc"
        ]
    )
    .status
    .success());
    let o = run(d, &["decide", "included", "inc/a1.updpa", "inc/a2.updpa"]);
    assert_eq!(o.status.code(), Some(1));

    assert!(run(
        d,
        &[
            "gen",
            "lohrey",
            "--weights",
            "1,2",
            "--target",
            "3",
            "-o",
            "lw"
        ]
    )
    .status
    .success());
    assert_eq!(stdout(&run(d, &["slp", "len", "lw/p1.slp"])), "16\n");
    assert_eq!(stdout(&run(d, &["slp", "query", "lw/p1.slp", "0"])), "b\n");

    assert!(run(
        d,
        &["gen", "gss", "--u", "1", "--v", "1", "--target", "1", "-o", "g.expr"]
    )
    .status
    .success());
    let o = run(d, &["intexpr", "universal", "g.expr", "--bound", "6"]);
    assert_eq!(stdout(&o), "yes\n");
    assert!(run(d, &["convert", "expr-to-cfg", "g.expr"])
        .status
        .success());
}

#[test]
fn intexpr_eval_lists_members() {
    let dir = fixtures();
    put(dir.path(), "e.expr", "(2|3)+1\n");
    let o = run(dir.path(), &["intexpr", "eval", "e.expr", "--bound", "10"]);
    assert_eq!(stdout(&o), "3 4\n");
    let o = run(
        dir.path(),
        &["intexpr", "universal", "e.expr", "--bound", "10"],
    );
    assert_eq!(stdout(&o), "no (witness n=0)\n");
}

#[test]
fn sim_member_matches_decide() {
    let dir = fixtures();
    for n in 0..8 {
        let a = run(dir.path(), &["sim", "member", "even.updpa", &n.to_string()]);
        let b = run(
            dir.path(),
            &["decide", "member", "even.updpa", &n.to_string()],
        );
        assert_eq!(stdout(&a), stdout(&b));
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn output_is_deterministic() {
    let dir = fixtures();
    let d = dir.path();
    let rng_text = |seed: u64| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        write_unpda(&corpus::random_raw(&mut rng, 8, 3))
    };
    put(d, "r.updpa", &rng_text(5));
    for verb in [
        vec!["convert", "udpda-to-indicator", "r.updpa"],
        vec!["convert", "udpda-to-transcript", "r.updpa"],
        vec!["gen", "lohrey", "--weights", "2,3,4", "--target", "5"],
        vec!["decide", "equal", "r.updpa", "even.updpa", "--seed", "7"],
    ] {
        let a = run(d, &verb);
        let b = run(d, &verb);
        assert_eq!(a.stdout, b.stdout, "{verb:?}");
    }
}
