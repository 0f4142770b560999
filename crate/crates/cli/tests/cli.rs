//! End-to-end tests through the compiled binary: output shapes and the
//! documented exit-code contract (0 ok, 1 verdict failure, 2 usage).

use std::process::{Command, Output};

fn dwp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwp"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_prints_solutions_and_matches_oracle() {
    let out = dwp(&[
        "solve", "-p", "5", "-e", "1", "-g", "2", "-c", "1", "--oracle",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("solutions: 7, 13, 14, 16"), "{text}");
    assert!(text.contains("m = ord_5(2) = 4"), "{text}");
    assert!(text.contains("oracle: MATCH"), "{text}");
}

#[test]
fn solve_rejects_composite_p_with_usage_exit() {
    let out = dwp(&["solve", "-p", "4", "-g", "2", "-c", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("p must be an odd prime"), "{err}");
}

#[test]
fn count_and_oracle_agree_with_solve() {
    let out = dwp(&["count", "-p", "7", "-e", "1", "-g", "2", "-c", "1"]);
    assert!(stdout(&out).contains("= 3"));
    let out = dwp(&["oracle", "-p", "7", "-e", "1", "-g", "2", "-c", "1"]);
    assert!(stdout(&out).contains("solutions: 2, 4, 15"));
    let out = dwp(&[
        "oracle", "-p", "5", "-e", "1", "-g", "2", "-c", "1", "--upper", "6",
    ]);
    assert!(stdout(&out).contains("solutions: (none)"));
}

#[test]
fn verify_exit_codes_follow_verdicts() {
    let ok = dwp(&["verify", "order_formula", "-p", "5", "-e", "2", "-n", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("holds"));

    let fails = dwp(&[
        "verify",
        "conjecture_A",
        "-p",
        "3",
        "-e",
        "2",
        "-g",
        "2",
        "-c",
        "1",
    ]);
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("fails"));

    let na = dwp(&[
        "verify",
        "sum_mod_p",
        "-p",
        "5",
        "-e",
        "1",
        "-g",
        "1",
        "-c",
        "2",
    ]);
    assert_eq!(na.status.code(), Some(0), "not_applicable is not a failure");
    assert!(stdout(&na).contains("not_applicable"));

    let unknown = dwp(&["verify", "mystery", "-p", "5"]);
    assert_eq!(unknown.status.code(), Some(2));

    let missing = dwp(&["verify", "sum_mod_p", "-p", "5"]);
    assert_eq!(
        missing.status.code(),
        Some(2),
        "missing -g/-c is a usage error"
    );
}

#[test]
fn verify_covers_every_pattern() {
    for (args, code) in [
        (
            vec![
                "verify",
                "c_prime_bijection",
                "-p",
                "5",
                "-g",
                "2",
                "-c",
                "1",
                "-j",
                "1",
            ],
            0,
        ),
        (
            vec!["verify", "sum_mod_m", "-p", "7", "-g", "2", "-c", "1"],
            0,
        ),
        (
            vec![
                "verify",
                "conjecture_B",
                "-p",
                "3",
                "-e",
                "2",
                "-g",
                "2",
                "-c",
                "1",
            ],
            0,
        ),
        (
            vec![
                "verify",
                "inverse_identity",
                "-p",
                "5",
                "-g",
                "2",
                "-x",
                "2",
            ],
            0,
        ),
        (
            vec![
                "verify",
                "negation_identity",
                "-p",
                "5",
                "-g",
                "2",
                "-x",
                "2",
            ],
            0,
        ),
        (
            vec!["verify", "special_pair", "-p", "5", "-e", "2", "-g", "2"],
            0,
        ),
    ] {
        let out = dwp(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn attack_demo_matches_documented_scenario() {
    let out = dwp(&[
        "attack", "-p", "11", "-g", "2", "-x", "5", "-m", "3", "--s2", "3", "--policy", "extended",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("reduction: s1 * 10^s1 = 2 (mod 11)"),
        "{text}"
    );
    assert!(text.contains("2 of 2 forged signatures verify"), "{text}");
}

#[test]
fn attack_strict_policy_flags_out_of_range_forgeries() {
    // x=2 gives h=4; the reduced instance includes s1 = 46 > p-1
    let out = dwp(&[
        "attack", "-p", "11", "-g", "2", "-x", "2", "-m", "5", "--s2", "3", "--policy", "strict",
    ]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "strict policy must reject the wide forgery"
    );
    assert!(stdout(&out).contains("verify[strict]=false"));
}

#[test]
fn teichmuller_prints_the_split() {
    let out = dwp(&["teichmuller", "-p", "5", "-e", "2", "-g", "2"]);
    let text = stdout(&out);
    assert!(text.contains("omega(g) = 7"), "{text}");
    assert!(text.contains("<g> = 11"), "{text}");
}
