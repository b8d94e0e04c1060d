//! Verification campaigns over the shipped corpora: determinism across worker
//! counts, corrupt-line tolerance and pinned regression counts.

mod common;

use common::{fixture, fixture_path};
use cyclepair::harness::{
    enumerate_labeled, graph6_items, graph_items, probe_open_question, verify_stream, FailureKind, Mode, Report,
    VerifyConfig,
};
use cyclepair::Strategy;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::{BufReader, Cursor};

fn run_fixture(n: usize, mode: Mode, workers: usize) -> Report {
    let file = std::fs::File::open(fixture_path(n)).unwrap();
    let mut cfg = VerifyConfig::new(mode);
    cfg.workers = workers;
    verify_stream(graph6_items(BufReader::new(file)), &format!("graphs{n}"), &cfg).unwrap()
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    for mode in [Mode::Theorem15, Mode::OreBondy, Mode::Lemma27] {
        let base = run_fixture(7, mode, 1).without_timing();
        for workers in [4, 8] {
            assert_eq!(
                run_fixture(7, mode, workers).without_timing(),
                base,
                "{mode:?} {workers}"
            );
        }
    }
}

#[test]
fn corrupt_lines_are_counted_not_fatal() {
    let text = std::fs::read_to_string(fixture_path(6)).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for injected in [1usize, 7, 40] {
        let mut broken = lines.clone();
        for i in sample(&mut rng, broken.len(), injected) {
            // alternate between an illegal character and a truncated body
            broken[i] = if i % 2 == 0 {
                "E\u{7f}??".to_string()
            } else {
                broken[i][..1].to_string()
            };
        }
        let input = broken.join("\n");
        let r = verify_stream(
            graph6_items(Cursor::new(input)),
            "corrupt",
            &VerifyConfig::new(Mode::Theorem15),
        )
        .unwrap();
        assert_eq!(r.parse_errors as usize, injected);
        assert_eq!(r.graphs as usize, lines.len() - injected);
        let parse_failures = r.failures.iter().filter(|f| f.kind == FailureKind::ParseError).count();
        assert_eq!(parse_failures, injected);
    }
    lines.insert(0, ">>graph6<<".to_string());
    lines.push(String::new());
    let r = verify_stream(
        graph6_items(Cursor::new(lines.join("\n"))),
        "header",
        &VerifyConfig::new(Mode::Theorem15),
    )
    .unwrap();
    assert_eq!((r.graphs, r.parse_errors), (156, 0));
}

#[test]
fn counts_are_consistent() {
    for n in 6..=8 {
        for mode in [
            Mode::Theorem15,
            Mode::Elzahar,
            Mode::OreBondy,
            Mode::Lemma27,
            Mode::Probe,
        ] {
            let r = run_fixture(n, mode, 2);
            assert!(r.is_consistent(), "{mode:?} n={n}");
            let split_sum: u64 = r.per_split.values().map(|s| s.qualified).sum();
            if matches!(mode, Mode::Theorem15 | Mode::Elzahar | Mode::Probe) {
                assert_eq!(split_sum, r.qualified);
            }
        }
    }
}

/// Values fixed by the first verified run over the n = 6 corpus.
#[test]
fn theorem_counts_on_order_six() {
    let r = run_fixture(6, Mode::Theorem15, 1);
    assert_eq!(r.graphs, 156);
    assert_eq!(
        (r.qualified, r.solved, r.contract_errors, r.fallback_used),
        (4, 4, 0, 0)
    );
    assert!(r.passed());
    let qualified = fixture(6).iter().filter(|g| cyclepair::meets_threshold(g)).count();
    assert_eq!(qualified, 4);
}

#[test]
fn elzahar_on_order_seven() {
    let r = run_fixture(7, Mode::Elzahar, 1);
    assert!(r.qualified > 0);
    assert_eq!(r.solved, r.qualified);
    assert!(r.passed());
}

#[test]
fn ore_bondy_on_order_eight() {
    let r = run_fixture(8, Mode::OreBondy, 1);
    assert!(r.qualified > 0);
    assert_eq!(r.violations, 0);
    assert!(r.passed());
}

#[test]
fn proof_only_with_oracle_cross_check() {
    let mut cfg = VerifyConfig::new(Mode::Theorem15);
    cfg.strategy = Strategy::ProofOnly;
    cfg.cross_check = true;
    let r = verify_stream(graph_items(enumerate_labeled(7, 9).unwrap()), "labeled7", &cfg).unwrap();
    assert!(r.qualified > 0);
    assert_eq!((r.solved, r.skipped, r.oracle_mismatches), (r.qualified, 0, 0));
}

#[test]
fn probe_on_orders_six_and_eight() {
    let file = std::fs::File::open(fixture_path(6)).unwrap();
    let r = probe_open_question(graph6_items(BufReader::new(file)), "graphs6", 1).unwrap();
    // only (3,3) exists for n = 6 and both lengths are odd
    assert_eq!(r.qualified, 0);
    let file = std::fs::File::open(fixture_path(8)).unwrap();
    let r = probe_open_question(graph6_items(BufReader::new(file)), "graphs8", 1).unwrap();
    assert!(r.is_consistent());
    assert!(r.per_split.keys().all(|k| k == "4,4"));
    let findings = r.failures.iter().filter(|f| f.kind == FailureKind::Finding).count() as u64;
    assert_eq!(findings, r.unsolved);
    eprintln!("probe n=8: {} instances, {} findings", r.qualified, findings);
}
