//! The disjoint-cycle pipeline: a 3-/4-cycle bootstrap for short lengths, the
//! partition exchange engine and decomposition for the general case, the case
//! handlers that finish from a decomposition, and the exhaustive oracle.

mod claims;
mod oracle;
mod partition;
mod prop1;

use serde::Serialize;

use crate::error::{ContractViolation, Error, Result};
use crate::graph::{validate_cert, Cycle, CyclePairCert, Graph};
use crate::graph6::encode_graph6;
use crate::structure::check_lengths;
use crate::trace::{SolveTrace, Step};

pub use claims::{solve_from_decomposition, solve_from_decomposition_traced};
pub use oracle::brute_force_oracle;
pub use partition::{
    improve_partition, improve_partition_from, lemma26_decompose, DecompCase, Decomposed, Decomposition,
    ExchangeRecord, Partition, PartitionRun, PartitionStop,
};
pub use prop1::prop1_small;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Constructive pipeline, falling back to the oracle on any contract
    /// error or when the degree-sum threshold does not hold.
    ProofFirst,
    OracleOnly,
    /// Constructive pipeline only; contract errors surface as errors and
    /// graphs below the threshold are skipped.
    ProofOnly,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "proof_first" | "proof-first" => Ok(Strategy::ProofFirst),
            "oracle_only" | "oracle-only" => Ok(Strategy::OracleOnly),
            "proof_only" | "proof-only" => Ok(Strategy::ProofOnly),
            _ => Err(Error::input(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub cert: Option<CyclePairCert>,
    pub trace: SolveTrace,
    /// Contract error raised by the pipeline and recovered by the oracle
    /// (`ProofFirst` only).
    pub recovered: Option<Box<ContractViolation>>,
}

/// `sigma2(G) >= n + 2`, complete graphs included.
pub fn meets_threshold(g: &Graph) -> bool {
    g.sigma2().is_none_or(|s| s >= g.order() + 2)
}

/// Two disjoint cycles of lengths `n1` and `n2` (`n1 + n2 = n`), oriented so
/// that `cert.c1` has length `n1`.
pub fn find_disjoint_cycles(g: &Graph, n1: usize, n2: usize, strategy: Strategy) -> Result<Outcome> {
    check_lengths(g, n1, n2)?;
    let mut trace = SolveTrace::default();
    let oracle = |trace: &mut SolveTrace, why: &str| -> Result<Option<CyclePairCert>> {
        trace.push(Step::Fallback, &[], why);
        Ok(brute_force_oracle(g, n1, n2)?.map(|c| c.oriented(n1)))
    };
    match strategy {
        Strategy::OracleOnly => {
            let cert = oracle(&mut trace, "oracle requested")?;
            Ok(Outcome {
                cert,
                trace,
                recovered: None,
            })
        }
        Strategy::ProofOnly => {
            if !meets_threshold(g) {
                return Ok(Outcome {
                    cert: None,
                    trace,
                    recovered: None,
                });
            }
            let cert = run_pipeline(g, n1, n2, &mut trace).map_err(|e| e.with_context(&encode_graph6(g), &trace))?;
            Ok(Outcome {
                cert: Some(cert),
                trace,
                recovered: None,
            })
        }
        Strategy::ProofFirst => {
            if !meets_threshold(g) {
                let cert = oracle(&mut trace, "degree-sum threshold not met")?;
                return Ok(Outcome {
                    cert,
                    trace,
                    recovered: None,
                });
            }
            match run_pipeline(g, n1, n2, &mut trace) {
                Ok(cert) => Ok(Outcome {
                    cert: Some(cert),
                    trace,
                    recovered: None,
                }),
                Err(e @ Error::Contract(_)) => {
                    let Error::Contract(v) = e.with_context(&encode_graph6(g), &trace) else {
                        unreachable!()
                    };
                    let cert = oracle(&mut trace, &format!("contract error in {}", v.step))?;
                    Ok(Outcome {
                        cert,
                        trace,
                        recovered: Some(v),
                    })
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn run_pipeline(g: &Graph, n1: usize, n2: usize, trace: &mut SolveTrace) -> Result<CyclePairCert> {
    let small = n1.min(n2);
    let cert = if small <= 4 {
        prop1::run(g, small, trace)?
    } else {
        match partition::decompose(g, n1, n2, trace)? {
            Decomposed::Pair(cert) => cert,
            Decomposed::Split(d) => claims::run(g, &d, trace)?,
        }
    };
    if !validate_cert(g, &cert, n1, n2) {
        return Err(Error::contract(
            "certificate",
            format!("pipeline produced an invalid ({n1},{n2}) pair: {cert:?}"),
        ));
    }
    Ok(cert.oriented(n1))
}

/// Validates a vertex sequence as a cycle of `g`, turning failure into a
/// contract error for `step`.
pub(crate) fn checked_cycle(g: &Graph, verts: Vec<usize>, step: Step) -> Result<Cycle> {
    let shown = format!("{verts:?}");
    Cycle::new(g, verts).map_err(|e| Error::contract(step.label(), format!("built an invalid cycle {shown}: {e}")))
}

pub(crate) fn checked_pair(g: &Graph, a: Vec<usize>, b: Vec<usize>, step: Step) -> Result<CyclePairCert> {
    let c1 = checked_cycle(g, a, step)?;
    let c2 = checked_cycle(g, b, step)?;
    if !c1.vertex_set().is_disjoint(c2.vertex_set()) {
        return Err(Error::contract(step.label(), "cycles overlap"));
    }
    Ok(CyclePairCert::new(c1, c2))
}

/// Hamilton cycle of `V(c) ∪ {a, b}` obtained by inserting `a` and `b` into
/// edges of `c`: both into one edge when `ab` is an edge, otherwise each into
/// its own edge.
pub(crate) fn insert_two(g: &Graph, c: &Cycle, a: usize, b: usize) -> Option<Vec<usize>> {
    let vs = c.vertices();
    let k = vs.len();
    let edge = |i: usize| (vs[i], vs[(i + 1) % k]);
    if g.has_edge(a, b) {
        for i in 0..k {
            let (p, q) = edge(i);
            for (x, y) in [(a, b), (b, a)] {
                if g.has_edge(p, x) && g.has_edge(y, q) {
                    let mut out = vs[..=i].to_vec();
                    out.extend([x, y]);
                    out.extend_from_slice(&vs[i + 1..]);
                    return Some(out);
                }
            }
        }
    }
    let slots = |w: usize| -> Vec<usize> {
        (0..k)
            .filter(|&i| {
                let (p, q) = edge(i);
                g.has_edge(w, p) && g.has_edge(w, q)
            })
            .collect()
    };
    let (sa, sb) = (slots(a), slots(b));
    for &i in &sa {
        for &j in &sb {
            if i != j {
                let mut out = Vec::with_capacity(k + 2);
                for (idx, &v) in vs.iter().enumerate() {
                    out.push(v);
                    if idx == i {
                        out.push(a);
                    }
                    if idx == j {
                        out.push(b);
                    }
                }
                return Some(out);
            }
        }
    }
    None
}
