use std::path::PathBuf;
use std::process::{Command, Output};

use descent_cli::parse_document;
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn descent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn run_file(cmd: &str, name: &str) -> (i32, String) {
    let path = fixture(name);
    let o = descent(&[cmd, path.to_str().unwrap()]);
    (o.status.code().unwrap(), stdout(&o))
}

#[test]
fn conj_descent_table() {
    let o = descent(&["conj-descent", "3", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("composite-identity: no").count(), 4);
    assert!(text.contains("cocycle: FAILS for all candidates"));
    assert_eq!(descent(&["kontogeorgis", "3", "2", "2"]).stdout, o.stdout);
}

#[test]
fn conj_descent_rejects_bad_parameters() {
    assert_eq!(
        descent(&["conj-descent", "3", "0", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(descent(&["conj-descent", "x"]).status.code(), Some(1));
}

#[test]
fn braid_elliptic_table() {
    let o = descent(&["braid-elliptic"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("s1*s3^-1 → identity (non-faithful witness)"));
    assert!(text.contains("s2 → [[2,1],[-1,0]]"));
}

#[test]
fn braid_elliptic_reads_extra_braids() {
    let (code, text) = run_file("braid-elliptic", "braids.txt");
    assert_eq!(code, 0);
    assert!(text.contains("w1 = s1*s3^-1"));
    assert!(text.contains("w2 = s2*s2"));
}

#[test]
fn obstruction_fixtures() {
    let (code, q8) = run_file("obstruction", "q8_c4.txt");
    assert_eq!(code, 0);
    assert!(q8.contains("definable-over-A': no"));
    assert!(q8.contains("obstruction-class: nontrivial in H^2(C2, C4)"));
    assert!(q8.contains("extensions of the monodromy to E: 0"));

    let (code, d4) = run_file("obstruction", "d4_c4.txt");
    assert_eq!(code, 0);
    assert!(d4.contains("obstruction-class: trivial"));
    assert!(d4.contains("definable-over-A': yes"));
    assert!(d4.contains("split-criterion (refl): lift exists"));
    assert!(d4.contains("module Z: H^2(C2, C4) has order 2"));
}

#[test]
fn coset_action_of_conjugate_subgroups() {
    let (code, text) = run_file("coset-action", "s4_cosets.txt");
    assert_eq!(code, 0);
    assert!(text.contains("subgroup H of G: order 4, index 6"));
    assert!(text.contains("normalizes image: yes"));
}

#[test]
fn defined_over_verdicts() {
    let (code, text) = run_file("defined-over", "s3_cover.txt");
    assert_eq!(code, 0);
    let verdicts: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("defined-over:"))
        .collect();
    assert_eq!(verdicts, ["  defined-over: yes", "  defined-over: no"]);
}

#[test]
fn weil_reports() {
    let (code, text) = run_file("weil", "weil_q8.txt");
    assert_eq!(code, 0);
    assert!(text.contains("weil-cocycle: holds"));
    assert!(text.contains("action orders: id 1, c 2"));

    let (code, text) = run_file("weil", "d6.txt");
    assert_eq!(code, 0);
    assert!(text.contains("j-invariant: -13824/19"));
    assert!(text.contains("weil-cocycle: FAILS at (s, s)"));
    assert!(text.contains("convention-ambiguity: the maps verify under u2u3 only"));
}

#[test]
fn input_errors_exit_one() {
    let (code, _) = run_file("obstruction", "bad_cycles.txt");
    assert_eq!(code, 1);
    let o = descent(&["obstruction", fixture("bad_cycles.txt").to_str().unwrap()]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 7: malformed cycles"), "{err}");
    assert_eq!(
        descent(&["weil", "/nonexistent/input.txt"]).status.code(),
        Some(1)
    );
    // a valid document without the sections a command needs
    assert_eq!(run_file("weil", "q8_c4.txt").0, 1);
    assert_eq!(descent(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn report_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("descent-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.txt");
    let o = descent(&[
        "--report",
        path.to_str().unwrap(),
        "conj-descent",
        "3",
        "2",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&descent(&["conj-descent", "3", "2", "2"])));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let runs: [&[&str]; 3] = [
        &["braid-elliptic"],
        &["selftest"],
        &["conj-descent", "3", "2", "2"],
    ];
    for args in runs {
        assert_eq!(descent(args).stdout, descent(args).stdout, "{args:?}");
    }
    for (cmd, name) in [
        ("obstruction", "q8_c4.txt"),
        ("weil", "d6.txt"),
        ("coset-action", "s4_cosets.txt"),
    ] {
        assert_eq!(run_file(cmd, name), run_file(cmd, name));
    }
}

#[test]
fn selftest_passes() {
    let o = descent(&["selftest"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = parse_document(&text) else {
            continue;
        };
        assert_eq!(
            parse_document(&doc.to_string()).unwrap(),
            doc,
            "{}",
            path.display()
        );
    }
}

fn cycles(degree: usize) -> impl Strategy<Value = String> {
    Just((1..=degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_flat_map(move |pts| {
            (2..=degree).prop_map(move |k| {
                let c: Vec<String> = pts[..k].iter().map(ToString::to_string).collect();
                format!("({})", c.join(" "))
            })
        })
}

fn group_section(i: usize) -> impl Strategy<Value = String> {
    (2usize..=6)
        .prop_flat_map(|d| {
            (
                Just(d),
                prop::collection::vec(cycles(d), 1..4),
                " {0,3}",
                prop::bool::ANY,
            )
        })
        .prop_map(move |(d, gens, pad, eq)| {
            let mut s = format!("[group G{i}]\ndegree{} {d}\n", if eq { " =" } else { "" });
            for (k, c) in gens.iter().enumerate() {
                s.push_str(&format!("{pad}gen g{k}{pad} {c}{pad}\n"));
            }
            s
        })
}

fn braid_section(i: usize) -> impl Strategy<Value = String> {
    (
        2usize..=5,
        prop::collection::vec((1i32..5, prop::bool::ANY), 0..6),
    )
        .prop_map(move |(n, letters)| {
            let word: Vec<String> = letters
                .iter()
                .map(|&(l, inv)| {
                    let l = 1 + (l - 1) % (n as i32 - 1);
                    if inv {
                        format!("s{l}^-1")
                    } else {
                        format!("s{l}")
                    }
                })
                .collect();
            let word = if word.is_empty() {
                "1".to_string()
            } else {
                word.join(" ")
            };
            format!("[braid b{i}]\nstrands = {n}\n# a comment\nword {word}\n")
        })
}

fn document() -> impl Strategy<Value = String> {
    (prop::collection::vec(prop::bool::ANY, 1..5)).prop_flat_map(|kinds| {
        let parts: Vec<BoxedStrategy<String>> = kinds
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                if g {
                    group_section(i).boxed()
                } else {
                    braid_section(i).boxed()
                }
            })
            .collect();
        parts.prop_map(|v| v.join("\n"))
    })
}

proptest! {
    #[test]
    fn printer_round_trip(text in document()) {
        let doc = parse_document(&text).unwrap();
        let printed = doc.to_string();
        let again = parse_document(&printed).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_string(), printed);
    }
}
