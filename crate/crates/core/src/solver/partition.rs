//! Splitting `V(G)` into two sides with Hamilton paths and improving the
//! split by two-vertex exchanges until either both sides are Hamiltonian or
//! a decomposition with a dense larger side appears.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, CyclePairCert, Graph, Path, VertexSet};
use crate::hamilton::{absorb_pair, close_path_ore, hamilton_cycle, hamilton_path};
use crate::structure::{check_lengths, classify_within, StructureClass};
use crate::trace::{SolveTrace, Step};

use super::meets_threshold;

/// Two sides `w1`, `w2` with `|w1| = n1`, `|w2| = n2`, each spanned by a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub w1: VertexSet,
    pub w2: VertexSet,
    pub p1: Path,
    pub p2: Path,
    /// `e(W1) + e(W2)`.
    pub score: usize,
}

impl Partition {
    fn new(g: &Graph, p1: Path, p2: Path) -> Partition {
        let (w1, w2) = (p1.vertex_set(), p2.vertex_set());
        Partition {
            w1,
            w2,
            score: g.inner_edges(w1) + g.inner_edges(w2),
            p1,
            p2,
        }
    }
}

/// One applied exchange: the ends `s, t` of side `side` leave it and
/// `x, y` enter it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeRecord {
    pub side: usize,
    pub removed: (usize, usize),
    pub added: (usize, usize),
    pub score_before: usize,
    pub score_after: usize,
}

#[derive(Debug, Clone)]
pub enum PartitionStop {
    /// Both sides are Hamiltonian.
    Pair(CyclePairCert),
    /// Side `side` is not Hamiltonian, its path has ends `s, t`, and moving
    /// them to the other side leaves no improving exchange.
    Stuck { side: usize, s: usize, t: usize },
}

#[derive(Debug, Clone)]
pub struct PartitionRun {
    pub partition: Partition,
    pub history: Vec<ExchangeRecord>,
    pub stop: PartitionStop,
}

/// Starts from a Hamilton cycle of `g` cut into arcs of `n1` and `n2`
/// vertices and applies the exchange move while it applies. Every exchange
/// raises the score by at least 2.
pub fn improve_partition(g: &Graph, n1: usize, n2: usize) -> Result<PartitionRun> {
    check_general(g, n1, n2)?;
    run_exchanges(g, n1, &mut SolveTrace::default())
}

/// Same exchange process, started from the sides `w1` and its complement
/// instead of a cut Hamilton cycle. Both sides need a Hamilton path and at
/// least 5 vertices.
pub fn improve_partition_from(g: &Graph, w1: VertexSet) -> Result<PartitionRun> {
    let w1 = w1 & g.vertices();
    let w2 = g.vertices() - w1;
    check_general(g, w1.len(), w2.len())?;
    let side_path = |w: VertexSet| hamilton_path(g, w).ok_or_else(|| Error::input("a side has no Hamilton path"));
    let start = Partition::new(g, side_path(w1)?, side_path(w2)?);
    exchange_loop(g, start, &mut SolveTrace::default())
}

fn check_general(g: &Graph, n1: usize, n2: usize) -> Result<()> {
    check_lengths(g, n1, n2)?;
    if n1 < 5 || n2 < 5 {
        return Err(Error::input(format!("both lengths must be >= 5, got ({n1},{n2})")));
    }
    if !meets_threshold(g) {
        return Err(Error::input(format!(
            "sigma2 = {:?} is below n + 2 = {}",
            g.sigma2(),
            g.order() + 2
        )));
    }
    Ok(())
}

fn run_exchanges(g: &Graph, n1: usize, trace: &mut SolveTrace) -> Result<PartitionRun> {
    let ham = hamilton_cycle(g, g.vertices())
        .ok_or_else(|| Error::contract(Step::Exchange.label(), "graph above the Ore bound is not Hamiltonian"))?;
    let vs = ham.vertices();
    let start = Partition::new(
        g,
        Path::from_vec_unchecked(vs[..n1].to_vec()),
        Path::from_vec_unchecked(vs[n1..].to_vec()),
    );
    exchange_loop(g, start, trace)
}

fn exchange_loop(g: &Graph, start: Partition, trace: &mut SolveTrace) -> Result<PartitionRun> {
    let (n1, n2) = (start.w1.len(), start.w2.len());
    let mut part = start;
    let mut history = Vec::new();
    loop {
        let h1 = hamilton_cycle(g, part.w1);
        let h2 = hamilton_cycle(g, part.w2);
        if let (Some(c1), Some(c2)) = (&h1, &h2) {
            return Ok(PartitionRun {
                partition: part,
                history,
                stop: PartitionStop::Pair(CyclePairCert::new(c1.clone(), c2.clone())),
            });
        }
        let side = if h1.is_none() { 1 } else { 2 };
        let (pa, pb, nb) = if side == 1 {
            (&part.p1, &part.p2, n2)
        } else {
            (&part.p2, &part.p1, n1)
        };
        let na = g.order() - nb;
        let (s, t) = (pa.start(), pa.end());
        let v1_path = Path::from_vec_unchecked(pa.vertices()[1..na - 1].to_vec());
        let v2_path = absorb_pair(g, pb, s, t)?;
        let v1 = v1_path.vertex_set();
        let v2 = v2_path.vertex_set();
        if g.sigma2_within(v2).is_none_or(|x| x >= nb + 3) {
            return Ok(PartitionRun {
                partition: part,
                history,
                stop: PartitionStop::Stuck { side, s, t },
            });
        }
        let (x, y, rest_path, how) = exchange_pair(g, v1, &v2_path, na, nb)?;
        let new_a = absorb_pair(g, &v1_path, x, y)?;
        let (np1, np2) = if side == 1 {
            (new_a, rest_path)
        } else {
            (rest_path, new_a)
        };
        let next = Partition::new(g, np1, np2);
        if next.score < part.score + 2 {
            return Err(Error::contract(
                Step::Exchange.label(),
                format!(
                    "exchange {s},{t} -> {x},{y} moved the score {} -> {}",
                    part.score, next.score
                ),
            ));
        }
        trace.push(
            Step::Exchange,
            &[s, t, x, y],
            format!("side {side}: score {} -> {} ({how})", part.score, next.score),
        );
        history.push(ExchangeRecord {
            side,
            removed: (s, t),
            added: (x, y),
            score_before: part.score,
            score_after: next.score,
        });
        part = next;
    }
}

/// Two vertices of `V2` whose removal keeps a Hamilton path, with degree sum
/// at most `nb + 2` inside `V2` and at least `na` edges into `V1`.
fn exchange_pair(
    g: &Graph,
    v1: VertexSet,
    v2_path: &Path,
    na: usize,
    nb: usize,
) -> Result<(usize, usize, Path, &'static str)> {
    let v2 = v2_path.vertex_set();
    let ok = |x: usize, y: usize| {
        g.degree_in(x, v2) + g.degree_in(y, v2) <= nb + 2 && g.degree_in(x, v1) + g.degree_in(y, v1) >= na
    };
    if hamilton_cycle(g, v2).is_none() {
        let (x, y) = (v2_path.start(), v2_path.end());
        let inner = v2_path.vertices()[1..v2_path.len() - 1].to_vec();
        if ok(x, y) {
            return Ok((
                x,
                y,
                Path::from_vec_unchecked(inner),
                "ends of a path of the non-Hamiltonian side",
            ));
        }
        return Err(Error::contract(
            Step::Exchange.label(),
            format!("ends {x},{y} of the path on V2 violate the exchange inequalities"),
        ));
    }
    let verts = v2.to_vec();
    // non-adjacent pairs first, then any pair
    for nonadjacent_only in [true, false] {
        for (i, &x) in verts.iter().enumerate() {
            for &y in &verts[i + 1..] {
                if nonadjacent_only == g.has_edge(x, y) || !ok(x, y) {
                    continue;
                }
                if let Some(p) = hamilton_path(g, v2.without(x).without(y)) {
                    let how = if nonadjacent_only {
                        "low-degree non-adjacent pair"
                    } else {
                        "replacement pair u',v'"
                    };
                    return Ok((x, y, p, how));
                }
            }
        }
    }
    Err(Error::contract(
        Step::Exchange.label(),
        "sigma2 of V2 is low but no exchange pair exists",
    ))
}

/// Which structure the larger side of a decomposition has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum DecompCase {
    /// `G[V2] - {x, y}` is Hamiltonian for every pair.
    #[serde(rename = "i")]
    AllPairs,
    /// `K_{m+2,m+1} ⊆ G[V2] ⊆ K_{m+2} + (m+1)K_1`: `s` independent (size
    /// `m + 1`) and complete to `t` (size `m + 2`).
    #[serde(rename = "ii")]
    NearBipartite { s: VertexSet, t: VertexSet },
    /// `3K_1 + (K_p ∪ K_q) ⊆ G[V2] ⊆ K_3 + (K_p ∪ K_q)`: `apex` (3 vertices)
    /// complete to the cliques `p` and `q`, which see no edges between them.
    #[serde(rename = "iii")]
    Cone {
        apex: VertexSet,
        p: VertexSet,
        q: VertexSet,
    },
}

impl DecompCase {
    pub fn tag(&self) -> &'static str {
        match self {
            DecompCase::AllPairs => "i",
            DecompCase::NearBipartite { .. } => "ii",
            DecompCase::Cone { .. } => "iii",
        }
    }
}

/// `V(G) = V1 ∪ V2` with `|V1| = len1 - 2` spanned by a path, `|V2| = len2 + 2`
/// and `sigma2(G[V2]) >= len2 + 3`, plus the case the structure of `G[V2]` falls in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub len1: usize,
    pub len2: usize,
    pub case: DecompCase,
    pub v1_path: Path,
    /// A Hamilton cycle of `G[V2]`.
    pub v2_cycle: Cycle,
}

impl Decomposition {
    /// Checks every invariant and determines the case by exact search.
    pub fn new(g: &Graph, v1: VertexSet, v2: VertexSet, len1: usize, len2: usize) -> Result<Decomposition> {
        check_lengths(g, len1, len2)?;
        if v1.len() + 2 != len1 || v2.len() != len2 + 2 || !v1.is_disjoint(v2) || (v1 | v2) != g.vertices() {
            return Err(Error::input(
                "V1, V2 must partition V(G) with sizes len1 - 2 and len2 + 2",
            ));
        }
        let v1_path = hamilton_path(g, v1).ok_or_else(|| Error::input("G[V1] has no Hamilton path"))?;
        if !g.sigma2_within(v2).is_none_or(|s| s >= len2 + 3) {
            return Err(Error::input(format!("sigma2(G[V2]) is below {}", len2 + 3)));
        }
        let v2_cycle = hamilton_cycle(g, v2).expect("Ore bound holds on V2");
        let case = determine_case(g, v2, len2)?;
        Ok(Decomposition {
            v1,
            v2,
            len1,
            len2,
            case,
            v1_path,
            v2_cycle,
        })
    }
}

fn determine_case(g: &Graph, v2: VertexSet, len2: usize) -> Result<DecompCase> {
    let verts = v2.to_vec();
    let bad = verts.iter().enumerate().find_map(|(i, &x)| {
        verts[i + 1..]
            .iter()
            .find(|&&y| hamilton_cycle(g, v2.without(x).without(y)).is_none())
            .map(|&y| (x, y))
    });
    let Some((x, y)) = bad else {
        return Ok(DecompCase::AllPairs);
    };
    let h = v2.without(x).without(y);
    let fail = |what: &str| Error::contract(Step::Decompose.label(), format!("after removing {x},{y}: {what}"));
    match classify_within(g, h).map_err(|e| fail(&e.to_string()))? {
        StructureClass::HamiltonCycle { .. } => Err(fail("classifier found a Hamilton cycle the search missed")),
        StructureClass::NearBipartite { s, t, .. } => {
            let t = t.with(x).with(y);
            if len2 % 2 == 1 && g.is_independent(s) && g.is_complete_to(s, t) && s.len() + 1 == t.len() {
                Ok(DecompCase::NearBipartite { s, t })
            } else {
                Err(fail("near-bipartite remainder does not extend to V2"))
            }
        }
        StructureClass::ConeOverCliques { cut, p, q } => {
            let apex = VertexSet::from_iter([cut, x, y]);
            if g.is_complete_to(apex, p | q) && g.cross_edges_unchecked(p, q) == 0 {
                Ok(DecompCase::Cone { apex, p, q })
            } else {
                Err(fail("cone remainder does not extend to V2"))
            }
        }
    }
}

/// Result of [`lemma26_decompose`]: the exchange process may already have
/// produced two Hamiltonian sides.
#[derive(Debug, Clone)]
pub enum Decomposed {
    Pair(CyclePairCert),
    Split(Decomposition),
}

/// Runs the exchange process and turns its stopping state into a
/// decomposition (or the cycle pair it found on the way).
pub fn lemma26_decompose(g: &Graph, n1: usize, n2: usize) -> Result<Decomposed> {
    check_general(g, n1, n2)?;
    decompose(g, n1, n2, &mut SolveTrace::default())
}

pub(crate) fn decompose(g: &Graph, n1: usize, n2: usize, trace: &mut SolveTrace) -> Result<Decomposed> {
    let run = run_exchanges(g, n1, trace)?;
    let (side, s, t) = match run.stop {
        PartitionStop::Pair(cert) => {
            trace.push(Step::Decompose, &[], "both sides Hamiltonian");
            return Ok(Decomposed::Pair(cert));
        }
        PartitionStop::Stuck { side, s, t } => (side, s, t),
    };
    let part = &run.partition;
    let (pa, pb) = if side == 1 {
        (&part.p1, &part.p2)
    } else {
        (&part.p2, &part.p1)
    };
    let (len1, len2) = if side == 1 { (n1, n2) } else { (n2, n1) };
    let v1_path = Path::from_vec_unchecked(pa.vertices()[1..len1 - 1].to_vec());
    let v2_path = absorb_pair(g, pb, s, t)?;
    let v2 = v2_path.vertex_set();
    let v2_cycle = close_path_ore(g, &v2_path)?;
    let case = determine_case(g, v2, len2)?;
    trace.push(
        Step::Decompose,
        &v1_path.vertex_set().to_vec(),
        format!("case ({}), |V1| = {}, |V2| = {}", case.tag(), len1 - 2, len2 + 2),
    );
    Ok(Decomposed::Split(Decomposition {
        v1: v1_path.vertex_set(),
        v2,
        len1,
        len2,
        case,
        v1_path,
        v2_cycle,
    }))
}
