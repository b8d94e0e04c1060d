//! Batch verification: labeled enumeration, graph6 streams, per-mode checks
//! fanned out over a worker pool, and JSON Lines reports.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{encode_graph6, parse_graph6};
use crate::hamilton::find_cycle_of_length;
use crate::solver::{brute_force_oracle, find_disjoint_cycles, Strategy};
use crate::structure::{brute_force_classify, classify_near_hamiltonian, elzahar_condition};

/// Graphs handed to one parallel task.
pub const CHUNK: usize = 1024;

/// Environment variable capping the worker count.
pub const WORKERS_ENV: &str = "CYCLEPAIR_MAX_WORKERS";

/// Largest order accepted by [`enumerate_labeled`].
pub const MAX_LABELED_ORDER: usize = 8;

/// Every labeled graph on `n` vertices whose `sigma2` is at least
/// `sigma2_min` (complete graphs always pass), in increasing edge-mask order.
/// Bit `k` of the mask is the `k`-th pair in lexicographic order
/// `(0,1), (0,2), …, (n-2,n-1)`.
pub fn enumerate_labeled(n: usize, sigma2_min: usize) -> Result<impl Iterator<Item = Graph>> {
    if !(3..=MAX_LABELED_ORDER).contains(&n) {
        return Err(Error::input(format!(
            "labeled enumeration supports 3..={MAX_LABELED_ORDER} vertices, got {n}; use a graph6 stream"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let mut adj = vec![0u64; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        let g = Graph::from_adjacency(adj).expect("order within range");
        g.sigma2().is_none_or(|s| s >= sigma2_min).then_some(g)
    }))
}

/// One entry of an input stream.
#[derive(Debug, Clone)]
pub enum Item {
    Graph { line: usize, graph: Graph },
    Bad { line: usize, text: String, error: String },
}

/// Items of a graph6 stream, one graph per non-empty line (1-based line
/// numbers). An optional `>>graph6<<` header is accepted.
pub fn graph6_items<R: BufRead>(reader: R) -> impl Iterator<Item = Item> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let text = match line {
            Ok(t) => t,
            Err(e) => {
                return Some(Item::Bad {
                    line: line_no,
                    text: String::new(),
                    error: e.to_string(),
                })
            }
        };
        let trimmed = text.trim();
        let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
        if body.is_empty() {
            return None;
        }
        Some(match parse_graph6(body) {
            Ok(graph) => Item::Graph { line: line_no, graph },
            Err(e) => Item::Bad {
                line: line_no,
                text: body.to_string(),
                error: e.to_string(),
            },
        })
    })
}

/// Wraps in-memory graphs as stream items numbered from 1.
pub fn graph_items(graphs: impl IntoIterator<Item = Graph>) -> impl Iterator<Item = Item> {
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, graph)| Item::Graph { line: i + 1, graph })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every graph with `sigma2 >= n + 2` has disjoint `(n1, n2)` cycles for
    /// every split.
    Theorem15,
    /// Every split with `δ >= ⌈n1/2⌉ + ⌈n2/2⌉` has disjoint cycles.
    Elzahar,
    /// `sigma2 >= n` forces pancyclicity unless the graph is `K_{n/2,n/2}`.
    OreBondy,
    /// `sigma2 >= n - 1` classification agrees with the brute-force classifier.
    Lemma27,
    /// Graphs with `sigma2 = n + 1` and a split with an even length that has
    /// no disjoint cycles.
    Probe,
}

impl Mode {
    /// Smallest `sigma2` a graph needs to take part in this mode.
    pub fn sigma2_floor(self, n: usize) -> usize {
        match self {
            Mode::Theorem15 => n + 2,
            Mode::OreBondy => n,
            Mode::Lemma27 => n.saturating_sub(1),
            Mode::Probe => n + 1,
            Mode::Elzahar => 0,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "theorem15" => Ok(Mode::Theorem15),
            "elzahar" => Ok(Mode::Elzahar),
            "ore_bondy" | "ore-bondy" => Ok(Mode::OreBondy),
            "lemma27" => Ok(Mode::Lemma27),
            "probe" => Ok(Mode::Probe),
            _ => Err(Error::input(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub mode: Mode,
    pub workers: usize,
    /// Solver strategy for the cycle-pair modes.
    pub strategy: Strategy,
    /// Also run the exhaustive oracle on every solver instance and count
    /// presence mismatches.
    pub cross_check: bool,
}

impl VerifyConfig {
    pub fn new(mode: Mode) -> VerifyConfig {
        VerifyConfig {
            mode,
            workers: 1,
            strategy: Strategy::ProofFirst,
            cross_check: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    ParseError,
    Unsolved,
    ContractError,
    OracleMismatch,
    Violation,
    Finding,
}

/// One failing instance, captured with its graph6 line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub line: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SplitCounts {
    pub qualified: u64,
    pub solved: u64,
    pub fallback_used: u64,
}

/// Aggregate outcome of a run. Counts are per instance: a graph and a split
/// in the cycle-pair modes, a graph otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub corpus: String,
    pub mode: Mode,
    pub graphs: u64,
    pub parse_errors: u64,
    pub qualified: u64,
    pub solved: u64,
    pub unsolved: u64,
    /// Qualified instances left undecided because the constructive pipeline
    /// failed under `proof_only`.
    pub skipped: u64,
    pub fallback_used: u64,
    pub contract_errors: u64,
    pub oracle_mismatches: u64,
    pub violations: u64,
    pub per_split: BTreeMap<String, SplitCounts>,
    pub wall_ms: u64,
    pub workers: usize,
    #[serde(skip)]
    pub failures: Vec<Failure>,
}

impl Report {
    fn empty(corpus: &str, mode: Mode, workers: usize) -> Report {
        Report {
            corpus: corpus.to_string(),
            mode,
            graphs: 0,
            parse_errors: 0,
            qualified: 0,
            solved: 0,
            unsolved: 0,
            skipped: 0,
            fallback_used: 0,
            contract_errors: 0,
            oracle_mismatches: 0,
            violations: 0,
            per_split: BTreeMap::new(),
            wall_ms: 0,
            workers,
            failures: Vec::new(),
        }
    }

    fn merge(&mut self, other: Report) {
        self.graphs += other.graphs;
        self.parse_errors += other.parse_errors;
        self.qualified += other.qualified;
        self.solved += other.solved;
        self.unsolved += other.unsolved;
        self.skipped += other.skipped;
        self.fallback_used += other.fallback_used;
        self.contract_errors += other.contract_errors;
        self.oracle_mismatches += other.oracle_mismatches;
        self.violations += other.violations;
        for (k, v) in other.per_split {
            let e = self.per_split.entry(k).or_default();
            e.qualified += v.qualified;
            e.solved += v.solved;
            e.fallback_used += v.fallback_used;
        }
        self.failures.extend(other.failures);
    }

    /// Whether every asserted statement held. Probe findings are data, not
    /// failures.
    pub fn passed(&self) -> bool {
        self.contract_errors == 0
            && self.oracle_mismatches == 0
            && self.violations == 0
            && (self.mode == Mode::Probe || self.unsolved == 0)
    }

    /// Counts agree: every qualified instance is solved, unsolved or skipped.
    pub fn is_consistent(&self) -> bool {
        self.solved + self.unsolved + self.skipped == self.qualified
    }

    /// Summary line followed by one line per failure.
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(self).expect("report serializes");
        out.push('\n');
        for f in &self.failures {
            out.push_str(&serde_json::to_string(f).expect("failure serializes"));
            out.push('\n');
        }
        out
    }

    /// The report with the wall time zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        Report {
            wall_ms: 0,
            workers: 0,
            ..self.clone()
        }
    }
}

/// `requested` capped by [`WORKERS_ENV`] when set, and at least 1.
pub fn effective_workers(requested: usize) -> usize {
    let cap = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0);
    cap.map_or(requested, |c| requested.min(c)).max(1)
}

/// Runs `cfg.mode` over a stream. Chunks of [`CHUNK`] items are processed in
/// parallel and reduced in stream order, so the report does not depend on
/// the worker count.
pub fn verify_stream(items: impl Iterator<Item = Item>, corpus: &str, cfg: &VerifyConfig) -> Result<Report> {
    let workers = effective_workers(cfg.workers);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::input(format!("cannot start {workers} workers: {e}")))?;
    let start = Instant::now();
    let mut report = Report::empty(corpus, cfg.mode, workers);
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<Item> = items.by_ref().take(CHUNK).collect();
        let parts: Vec<Report> = pool.install(|| chunk.par_iter().map(|item| check_item(item, corpus, cfg)).collect());
        for part in parts {
            report.merge(part);
        }
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Graphs with `sigma2 = n + 1` and a split with an even length whose
/// disjoint cycles the oracle cannot find.
pub fn probe_open_question(items: impl Iterator<Item = Item>, corpus: &str, workers: usize) -> Result<Report> {
    let mut cfg = VerifyConfig::new(Mode::Probe);
    cfg.workers = workers;
    verify_stream(items, corpus, &cfg)
}

/// Splits `n = n1 + n2` with `3 <= n1 <= n2`.
pub fn splits(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (3..=n / 2).map(move |n1| (n1, n - n1))
}

fn check_item(item: &Item, corpus: &str, cfg: &VerifyConfig) -> Report {
    let mut r = Report::empty(corpus, cfg.mode, 0);
    let (line, g) = match item {
        Item::Graph { line, graph } => (*line, graph),
        Item::Bad { line, text, error } => {
            r.parse_errors = 1;
            r.failures.push(Failure {
                kind: FailureKind::ParseError,
                line: *line,
                graph6: text.clone(),
                split: None,
                detail: error.clone(),
            });
            return r;
        }
    };
    r.graphs = 1;
    let mut ctx = Ctx { r, g, line };
    match cfg.mode {
        Mode::Theorem15 | Mode::Elzahar => ctx.cycle_pairs(cfg),
        Mode::OreBondy => ctx.ore_bondy(),
        Mode::Lemma27 => ctx.lemma27(),
        Mode::Probe => ctx.probe(),
    }
    ctx.r
}

struct Ctx<'a> {
    r: Report,
    g: &'a Graph,
    line: usize,
}

impl Ctx<'_> {
    fn fail(&mut self, kind: FailureKind, split: Option<(usize, usize)>, detail: impl Into<String>) {
        self.r.failures.push(Failure {
            kind,
            line: self.line,
            graph6: encode_graph6(self.g),
            split,
            detail: detail.into(),
        });
    }

    fn qualifies(&self, mode: Mode) -> bool {
        let n = self.g.order();
        self.g.sigma2().is_none_or(|s| s >= mode.sigma2_floor(n))
    }

    fn cycle_pairs(&mut self, cfg: &VerifyConfig) {
        let n = self.g.order();
        for (n1, n2) in splits(n) {
            let qualified = match cfg.mode {
                Mode::Theorem15 => self.qualifies(Mode::Theorem15),
                _ => elzahar_condition(self.g, n1, n2).unwrap_or(false),
            };
            if !qualified {
                continue;
            }
            let key = format!("{n1},{n2}");
            self.r.qualified += 1;
            self.r.per_split.entry(key.clone()).or_default().qualified += 1;
            let outcome = match find_disjoint_cycles(self.g, n1, n2, cfg.strategy) {
                Ok(o) => o,
                Err(e) => {
                    if e.is_contract() {
                        self.r.contract_errors += 1;
                        self.r.skipped += 1;
                        self.fail(FailureKind::ContractError, Some((n1, n2)), e.to_string());
                    } else {
                        self.r.unsolved += 1;
                        self.fail(FailureKind::Unsolved, Some((n1, n2)), e.to_string());
                    }
                    continue;
                }
            };
            if let Some(v) = &outcome.recovered {
                self.r.contract_errors += 1;
                self.fail(
                    FailureKind::ContractError,
                    Some((n1, n2)),
                    format!("{}: {}", v.step, v.detail),
                );
            }
            let fallback = outcome.trace.used_fallback();
            if fallback {
                self.r.fallback_used += 1;
                self.r.per_split.get_mut(&key).expect("entry exists").fallback_used += 1;
            }
            let present = match &outcome.cert {
                Some(c) if crate::graph::validate_cert(self.g, c, n1, n2) => {
                    self.r.solved += 1;
                    self.r.per_split.get_mut(&key).expect("entry exists").solved += 1;
                    true
                }
                Some(_) => {
                    self.r.unsolved += 1;
                    self.fail(FailureKind::Unsolved, Some((n1, n2)), "certificate failed validation");
                    false
                }
                None => {
                    self.r.unsolved += 1;
                    self.fail(FailureKind::Unsolved, Some((n1, n2)), "no disjoint cycles returned");
                    false
                }
            };
            if cfg.cross_check {
                let oracle = brute_force_oracle(self.g, n1, n2).map(|c| c.is_some()).unwrap_or(false);
                if oracle != present {
                    self.r.oracle_mismatches += 1;
                    self.fail(
                        FailureKind::OracleMismatch,
                        Some((n1, n2)),
                        format!("solver present = {present}, oracle present = {oracle}"),
                    );
                }
            }
        }
    }

    fn ore_bondy(&mut self) {
        if !self.qualifies(Mode::OreBondy) {
            return;
        }
        self.r.qualified += 1;
        let n = self.g.order();
        let missing: Vec<usize> = (3..=n)
            .filter(|&k| find_cycle_of_length(self.g, k, None).ok().flatten().is_none())
            .collect();
        if missing.is_empty() || is_balanced_complete_bipartite(self.g) {
            self.r.solved += 1;
        } else {
            self.r.unsolved += 1;
            self.r.violations += 1;
            self.fail(
                FailureKind::Violation,
                None,
                format!("not pancyclic (no cycles of lengths {missing:?}) and not K_{{n/2,n/2}}"),
            );
        }
    }

    fn lemma27(&mut self) {
        if !self.qualifies(Mode::Lemma27) {
            return;
        }
        self.r.qualified += 1;
        let fast = classify_near_hamiltonian(self.g);
        let slow = brute_force_classify(self.g);
        let all = self.g.vertices();
        match (fast, slow) {
            (Ok(f), Ok(Some(s))) if f.kind() == s.kind() && f.verify(self.g, all) => {
                self.r.solved += 1;
            }
            (f, s) => {
                self.r.unsolved += 1;
                self.r.violations += 1;
                let f_desc = match &f {
                    Ok(c) => format!("{} (verifies: {})", c.kind(), c.verify(self.g, all)),
                    Err(e) => e.to_string(),
                };
                let s_desc = match &s {
                    Ok(Some(c)) => c.kind().to_string(),
                    Ok(None) => "none".to_string(),
                    Err(e) => e.to_string(),
                };
                if matches!(&f, Err(e) if e.is_contract()) {
                    self.r.contract_errors += 1;
                }
                self.fail(
                    FailureKind::Violation,
                    None,
                    format!("classifier {f_desc}, brute force {s_desc}"),
                );
            }
        }
    }

    fn probe(&mut self) {
        let n = self.g.order();
        if self.g.sigma2() != Some(n + 1) {
            return;
        }
        for (n1, n2) in splits(n).filter(|&(a, b)| a % 2 == 0 || b % 2 == 0) {
            let key = format!("{n1},{n2}");
            self.r.qualified += 1;
            self.r.per_split.entry(key.clone()).or_default().qualified += 1;
            match brute_force_oracle(self.g, n1, n2) {
                Ok(Some(_)) => {
                    self.r.solved += 1;
                    self.r.per_split.get_mut(&key).expect("entry exists").solved += 1;
                }
                Ok(None) => {
                    self.r.unsolved += 1;
                    self.fail(
                        FailureKind::Finding,
                        Some((n1, n2)),
                        "sigma2 = n + 1 and no disjoint cycles",
                    );
                }
                Err(e) => {
                    self.r.unsolved += 1;
                    self.fail(FailureKind::Unsolved, Some((n1, n2)), e.to_string());
                }
            }
        }
    }
}

/// `K_{n/2,n/2}`: triangle-free with `n²/4` edges (the extremal case of
/// Mantel's theorem).
pub fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    let n = g.order();
    n.is_multiple_of(2)
        && g.edge_count() == n * n / 4
        && g.edges()
            .all(|(a, b)| g.common_neighbors(a, b, g.vertices()).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::gen_family;

    fn fam(s: &str) -> Graph {
        gen_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_labeled(4, 0).unwrap().count(), 64);
        let only_complete: Vec<Graph> = enumerate_labeled(4, usize::MAX).unwrap().collect();
        assert_eq!(only_complete.len(), 1);
        assert!(only_complete[0].is_complete());
        let filtered = enumerate_labeled(6, 0)
            .unwrap()
            .filter(|g| g.sigma2().is_none_or(|s| s >= 8))
            .count();
        assert_eq!(enumerate_labeled(6, 8).unwrap().count(), filtered);
        assert!(enumerate_labeled(9, 0).is_err());
        assert!(enumerate_labeled(2, 0).is_err());
    }

    #[test]
    fn stream_tolerates_corrupt_lines() {
        let text = ">>graph6<<D~{\n\nnot graph6 \u{7f}\nD?{\nE\n";
        let items: Vec<Item> = graph6_items(text.as_bytes()).collect();
        assert_eq!(items.len(), 4);
        let r = verify_stream(items.into_iter(), "inline", &VerifyConfig::new(Mode::Theorem15)).unwrap();
        assert_eq!(r.parse_errors, 2);
        assert_eq!(r.graphs, 2);
        assert!(r.is_consistent());
    }

    #[test]
    fn balanced_bipartite_detection() {
        assert!(is_balanced_complete_bipartite(&fam("B(3,3)")));
        assert!(!is_balanced_complete_bipartite(&fam("B(2,4)")));
        assert!(!is_balanced_complete_bipartite(&Graph::complete(6).unwrap()));
    }

    #[test]
    fn splits_of_small_orders() {
        assert_eq!(splits(6).collect::<Vec<_>>(), vec![(3, 3)]);
        assert_eq!(splits(9).collect::<Vec<_>>(), vec![(3, 6), (4, 5)]);
        assert_eq!(splits(5).count(), 0);
    }

    #[test]
    fn jsonl_has_summary_and_failures() {
        let items = graph6_items("D~{\n!!\n".as_bytes());
        let r = verify_stream(items, "inline", &VerifyConfig::new(Mode::Theorem15)).unwrap();
        let out = r.to_jsonl();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        let summary: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(summary["qualified"], 0);
        assert_eq!(summary["parse_errors"], 1);
        let fail: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(fail["kind"], "parse_error");
        assert_eq!(fail["line"], 2);
    }
}
