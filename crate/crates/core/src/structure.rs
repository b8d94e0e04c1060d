//! The Hamiltonian / near-bipartite / cone-over-two-cliques trichotomy for
//! graphs with `sigma2 >= n - 1`, the small family algebra used to build the
//! extremal graphs, and the degree-condition predicates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, VertexSet, MAX_ORDER};
use crate::hamilton::hamilton_cycle;

/// Verdict of [`classify_near_hamiltonian`], each variant with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum StructureClass {
    HamiltonCycle {
        cycle: Cycle,
    },
    /// `K_{m,m+1} ⊆ G ⊆ K_m + (m+1)K_1`: `s` is independent of size `m + 1`
    /// and complete to `t` (size `m`).
    NearBipartite {
        m: usize,
        s: VertexSet,
        t: VertexSet,
    },
    /// `G ≅ K_1 + (K_p ∪ K_q)` with apex `cut`.
    ConeOverCliques {
        cut: usize,
        p: VertexSet,
        q: VertexSet,
    },
}

impl StructureClass {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureClass::HamiltonCycle { .. } => "HamiltonCycle",
            StructureClass::NearBipartite { .. } => "NearBipartite",
            StructureClass::ConeOverCliques { .. } => "ConeOverCliques",
        }
    }

    /// Re-checks the witness against `G[within]`.
    pub fn verify(&self, g: &Graph, within: VertexSet) -> bool {
        match self {
            StructureClass::HamiltonCycle { cycle } => cycle.vertex_set() == within && cycle.is_valid_in(g),
            StructureClass::NearBipartite { m, s, t } => {
                s.is_disjoint(*t)
                    && (*s | *t) == within
                    && s.len() == m + 1
                    && t.len() == *m
                    && *m >= 2
                    && g.is_independent(*s)
                    && g.is_complete_to(*s, *t)
            }
            StructureClass::ConeOverCliques { cut, p, q } => {
                !p.is_empty()
                    && !q.is_empty()
                    && p.is_disjoint(*q)
                    && (p.with(*cut) | *q) == within
                    && !p.contains(*cut)
                    && !q.contains(*cut)
                    && g.is_clique(*p)
                    && g.is_clique(*q)
                    && g.cross_edges_unchecked(*p, *q) == 0
                    && g.is_complete_to(VertexSet::singleton(*cut), *p | *q)
            }
        }
    }
}

/// Classifies a graph with `sigma2 >= n - 1`. A Hamilton cycle is reported
/// whenever one exists; otherwise the near-bipartite witness, then the cone.
pub fn classify_near_hamiltonian(g: &Graph) -> Result<StructureClass> {
    classify_within(g, g.vertices())
}

/// [`classify_near_hamiltonian`] applied to `G[within]`, original labels kept.
pub fn classify_within(g: &Graph, within: VertexSet) -> Result<StructureClass> {
    let n = within.len();
    if n < 3 {
        return Err(Error::input(format!("classification needs >= 3 vertices, got {n}")));
    }
    if let Some(s2) = g.sigma2_within(within) {
        if s2 + 1 < n {
            return Err(Error::input(format!("sigma2 = {s2} is below n - 1 = {}", n - 1)));
        }
    }
    if let Some(cycle) = hamilton_cycle(g, within) {
        return Ok(StructureClass::HamiltonCycle { cycle });
    }
    if let Some(w) = near_bipartite(g, within) {
        return Ok(w);
    }
    if let Some(w) = cone(g, within) {
        return Ok(w);
    }
    Err(Error::contract(
        "classify",
        format!("no Hamilton cycle and no structural witness on {n} vertices"),
    ))
}

/// In `K_{m,m+1} ⊆ G ⊆ K_m + (m+1)K_1` every vertex of the independent side
/// has neighbourhood exactly `T`, so each degree-`m` vertex proposes the
/// whole split.
fn near_bipartite(g: &Graph, within: VertexSet) -> Option<StructureClass> {
    let n = within.len();
    if n < 5 || n.is_multiple_of(2) {
        return None;
    }
    let m = (n - 1) / 2;
    for v in within.iter() {
        let t = g.neighbors(v) & within;
        if t.len() != m {
            continue;
        }
        let s = within - t;
        if g.is_independent(s) && g.is_complete_to(s, t) {
            return Some(StructureClass::NearBipartite { m, s, t });
        }
    }
    None
}

fn cone(g: &Graph, within: VertexSet) -> Option<StructureClass> {
    for c in within.iter() {
        let rest = within.without(c);
        if !rest.is_subset(g.neighbors(c)) {
            continue;
        }
        let comps = g.components(rest);
        if comps.len() == 2 && comps.iter().all(|&k| g.is_clique(k)) {
            return Some(StructureClass::ConeOverCliques {
                cut: c,
                p: comps[0],
                q: comps[1],
            });
        }
    }
    None
}

/// Reference classifier by exhaustive search: Held–Karp for Hamiltonicity and
/// full subset enumeration for the two structural witnesses. Same priority
/// as [`classify_near_hamiltonian`]; `None` if no case applies. `n <= 16`.
pub fn brute_force_classify(g: &Graph) -> Result<Option<StructureClass>> {
    let n = g.order();
    if !(3..=16).contains(&n) {
        return Err(Error::input(format!(
            "brute-force classifier supports 3..=16 vertices, got {n}"
        )));
    }
    if let Some(order) = held_karp_cycle(g) {
        return Ok(Some(StructureClass::HamiltonCycle {
            cycle: Cycle::new(g, order)?,
        }));
    }
    let all = g.vertices();
    if n % 2 == 1 && n >= 5 {
        let m = (n - 1) / 2;
        for mask in 0u64..(1 << n) {
            let s = VertexSet::from_bits(mask);
            if s.len() == m + 1 && g.is_independent(s) && g.is_complete_to(s, all - s) {
                return Ok(Some(StructureClass::NearBipartite { m, s, t: all - s }));
            }
        }
    }
    for c in 0..n {
        let rest = all.without(c);
        for mask in 0u64..(1 << n) {
            let p = VertexSet::from_bits(mask);
            let q = rest - p;
            if !p.is_subset(rest) || p.is_empty() || q.is_empty() {
                continue;
            }
            let w = StructureClass::ConeOverCliques { cut: c, p, q };
            if w.verify(g, all) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn held_karp_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let full = (1usize << n) - 1;
    // reach[mask] = set of end vertices v such that a path 0 -> v covers mask
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if reach[mask] >> v & 1 == 0 {
                continue;
            }
            for w in g.neighbors(v).iter() {
                if mask >> w & 1 == 0 {
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    let end = (1..n).find(|&v| reach[full] >> v & 1 == 1 && g.has_edge(v, 0))?;
    // walk the table backwards
    let mut order = vec![end];
    let mut mask = full;
    let mut cur = end;
    while mask != 1 {
        let prev_mask = mask & !(1 << cur);
        let prev = (0..n)
            .find(|&p| reach[prev_mask] >> p & 1 == 1 && g.has_edge(p, cur))
            .expect("Held-Karp table is consistent");
        order.push(prev);
        mask = prev_mask;
        cur = prev;
    }
    order.reverse();
    Some(order)
}

/// Closed algebra of graph families: complete, edgeless, complete bipartite,
/// join and disjoint union. Vertices are numbered left operand first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Edgeless(usize),
    CompleteBipartite(usize, usize),
    Join(Box<Family>, Box<Family>),
    Union(Box<Family>, Box<Family>),
}

impl Family {
    pub fn join(a: Family, b: Family) -> Family {
        Family::Join(Box::new(a), Box::new(b))
    }

    pub fn union(a: Family, b: Family) -> Family {
        Family::Union(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> usize {
        match self {
            Family::Complete(k) | Family::Edgeless(k) => *k,
            Family::CompleteBipartite(a, b) => a + b,
            Family::Join(a, b) | Family::Union(a, b) => a.order() + b.order(),
        }
    }

    fn edges(&self, offset: usize, out: &mut Vec<(usize, usize)>) {
        match self {
            Family::Complete(k) => {
                for i in 0..*k {
                    for j in i + 1..*k {
                        out.push((offset + i, offset + j));
                    }
                }
            }
            Family::Edgeless(_) => {}
            Family::CompleteBipartite(a, b) => {
                for i in 0..*a {
                    for j in 0..*b {
                        out.push((offset + i, offset + a + j));
                    }
                }
            }
            Family::Join(x, y) => {
                let split = offset + x.order();
                x.edges(offset, out);
                y.edges(split, out);
                for i in offset..split {
                    for j in split..split + y.order() {
                        out.push((i, j));
                    }
                }
            }
            Family::Union(x, y) => {
                x.edges(offset, out);
                y.edges(offset + x.order(), out);
            }
        }
    }
}

/// Builds the graph a family descriptor describes.
pub fn gen_family(f: &Family) -> Result<Graph> {
    let n = f.order();
    if n > MAX_ORDER {
        return Err(Error::input(format!("family order {n} exceeds {MAX_ORDER}")));
    }
    let mut edges = Vec::new();
    f.edges(0, &mut edges);
    Graph::from_edges(n, edges)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(k) => write!(f, "K{k}"),
            Family::Edgeless(k) => write!(f, "E{k}"),
            Family::CompleteBipartite(a, b) => write!(f, "B({a},{b})"),
            Family::Join(a, b) => write!(f, "J({a},{b})"),
            Family::Union(a, b) => write!(f, "U({a},{b})"),
        }
    }
}

/// Text syntax: `K<k>`, `E<k>`, `B(a,b)`, `J(x,y,...)`, `U(x,y,...)`; the
/// combinators take two or more operands and fold to the left.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = FamilyParser {
            s: compact.as_bytes(),
            pos: 0,
        };
        let f = p.family()?;
        if p.pos != p.s.len() {
            return Err(p.error("trailing characters"));
        }
        Ok(f)
    }
}

struct FamilyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl FamilyParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::input(format!("family descriptor: {what} at position {}", self.pos))
    }

    fn eat(&mut self, b: u8) -> Result<()> {
        if self.s.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match digits.parse::<usize>() {
            Ok(k) if (1..=MAX_ORDER).contains(&k) => Ok(k),
            _ => {
                self.pos = start;
                Err(self.error("expected a size in 1..=64"))
            }
        }
    }

    fn family(&mut self) -> Result<Family> {
        let Some(&head) = self.s.get(self.pos) else {
            return Err(self.error("unexpected end"));
        };
        self.pos += 1;
        match head {
            b'K' => Ok(Family::Complete(self.number()?)),
            b'E' => Ok(Family::Edgeless(self.number()?)),
            b'B' => {
                self.eat(b'(')?;
                let a = self.number()?;
                self.eat(b',')?;
                let b = self.number()?;
                self.eat(b')')?;
                Ok(Family::CompleteBipartite(a, b))
            }
            b'J' | b'U' => {
                self.eat(b'(')?;
                let mut acc = self.family()?;
                let mut operands = 1;
                while self.s.get(self.pos) == Some(&b',') {
                    self.pos += 1;
                    let next = self.family()?;
                    acc = if head == b'J' {
                        Family::join(acc, next)
                    } else {
                        Family::union(acc, next)
                    };
                    operands += 1;
                }
                self.eat(b')')?;
                if operands < 2 {
                    return Err(self.error("combinator needs at least two operands"));
                }
                Ok(acc)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected one of K, E, B, J, U"))
            }
        }
    }
}

/// `δ(G) >= ⌈n1/2⌉ + ⌈n2/2⌉`.
pub fn elzahar_condition(g: &Graph, n1: usize, n2: usize) -> Result<bool> {
    check_lengths(g, n1, n2)?;
    Ok(g.min_degree() >= n1.div_ceil(2) + n2.div_ceil(2))
}

/// `sigma2(G) >= n + slack`; a complete graph satisfies every slack.
pub fn ore_condition(g: &Graph, slack: i64) -> bool {
    match g.sigma2() {
        None => true,
        Some(s) => s as i64 >= g.order() as i64 + slack,
    }
}

pub(crate) fn check_lengths(g: &Graph, n1: usize, n2: usize) -> Result<()> {
    if n1 < 3 || n2 < 3 || n1 + n2 != g.order() {
        return Err(Error::input(format!(
            "lengths ({n1},{n2}) must be >= 3 and sum to n = {}",
            g.order()
        )));
    }
    Ok(())
}
