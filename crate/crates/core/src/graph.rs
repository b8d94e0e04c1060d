//! Simple undirected graphs on at most 64 vertices, stored as one neighbour
//! bit mask per vertex, plus the path/cycle/certificate value types built on them.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Immutable simple graph. Adjacency is symmetric, loop-free, and confined to
/// the low `order()` bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// Builds a graph from an edge list. Duplicate edges collapse.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    if !(3..=MAX_ORDER).contains(&n) {
        return Err(Error::input(format!("order {n} outside 3..=64")));
    }
    Graph::from_edges(n, edges.iter().copied())
}

impl Graph {
    /// Edgeless graph on `n` vertices (`n <= 64`).
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::input(format!("order {n} exceeds {MAX_ORDER}")));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = all.without(v);
        }
        Ok(g)
    }

    /// Like [`build_graph`] but accepts any order up to 64.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u},{v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop edge at vertex {u}")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Validates raw adjacency masks against the graph invariants.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Graph> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::input(format!("order {n} exceeds {MAX_ORDER}")));
        }
        let all = VertexSet::full(n);
        let adj: Vec<VertexSet> = adj.into_iter().map(VertexSet::from_bits).collect();
        for (u, &nb) in adj.iter().enumerate() {
            if !nb.is_subset(all) {
                return Err(Error::input(format!("vertex {u} has neighbours beyond {n}")));
            }
            if nb.contains(u) {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            for v in nb.iter() {
                if !adj[v].contains(u) {
                    return Err(Error::input(format!("asymmetric adjacency {u}->{v}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Crate-internal builder for constructions whose symmetry is guaranteed.
    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree of `v` inside `G[within]` (`v` itself need not be in `within`).
    #[inline]
    pub fn degree_in(&self, v: usize, within: VertexSet) -> usize {
        (self.adj[v] & within).len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (self.adj[u] - VertexSet::full(u + 1)).iter().map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|s| s.len() + 1 == self.n)
    }

    /// Minimum of `d(x) + d(y)` over non-adjacent distinct pairs, or `None`
    /// for a complete graph (every threshold then holds vacuously).
    pub fn sigma2(&self) -> Option<usize> {
        self.sigma2_within(self.vertices())
    }

    /// `sigma2` of the induced subgraph `G[within]`, degrees counted inside it.
    pub fn sigma2_within(&self, within: VertexSet) -> Option<usize> {
        let mut best: Option<usize> = None;
        for x in within.iter() {
            let dx = self.degree_in(x, within);
            let non = within - self.adj[x] - VertexSet::full(x + 1);
            for y in non.iter() {
                let s = dx + self.degree_in(y, within);
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
        best
    }

    /// Pair attaining `sigma2_within`, lowest indices first.
    pub fn sigma2_pair_within(&self, within: VertexSet) -> Option<(usize, usize)> {
        let target = self.sigma2_within(within)?;
        for x in within.iter() {
            let non = within - self.adj[x] - VertexSet::full(x + 1);
            for y in non.iter() {
                if self.degree_in(x, within) + self.degree_in(y, within) == target {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `|E(G[w])|`.
    pub fn inner_edges(&self, w: VertexSet) -> usize {
        w.iter().map(|v| self.degree_in(v, w)).sum::<usize>() / 2
    }

    /// Number of edges with one end in `w` and the other in `w2`.
    pub fn cross_edges(&self, w: VertexSet, w2: VertexSet) -> Result<usize> {
        if !w.is_disjoint(w2) {
            return Err(Error::input(format!(
                "cross_edges needs disjoint sets, both contain {:?}",
                w & w2
            )));
        }
        Ok(self.cross_edges_unchecked(w, w2))
    }

    #[inline]
    pub(crate) fn cross_edges_unchecked(&self, w: VertexSet, w2: VertexSet) -> usize {
        w.iter().map(|v| self.degree_in(v, w2)).sum()
    }

    /// Common neighbours of `a` and `b` inside `within`.
    #[inline]
    pub fn common_neighbors(&self, a: usize, b: usize, within: VertexSet) -> VertexSet {
        self.adj[a] & self.adj[b] & within
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    /// Every vertex of `a` adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(self.adj[v]))
    }

    /// Connected components of `G[within]`, ordered by lowest vertex.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let comp = self.reach(start, left);
            left = left - comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (which should contain `start`).
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | (self.adj[v] & within);
            }
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Copy of the graph with all edges inside `G[within]` kept and everything
    /// else dropped; vertex indices are preserved.
    pub fn restricted(&self, within: VertexSet) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                if within.contains(v) {
                    self.adj[v] & within
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph relabelled to `0..|within|` in increasing vertex order.
    pub fn induced(&self, within: VertexSet) -> Graph {
        let map: Vec<usize> = within.iter().collect();
        let mut g = Graph {
            n: map.len(),
            adj: vec![VertexSet::EMPTY; map.len()],
        };
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge_mut(i, j);
                }
            }
        }
        g
    }

    /// Raw adjacency masks, one per vertex.
    pub fn adjacency(&self) -> Vec<u64> {
        self.adj.iter().map(|s| s.bits()).collect()
    }

    /// Serializes in the edge-list text format: `n m` followed by `u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::encode_graph6(self))
    }
}

/// Parses the edge-list text format. Vertex labels are arbitrary tokens,
/// numbered in order of first appearance; vertices never mentioned take the
/// remaining indices. Returns the graph and the label of every index.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::input("edge list is empty"))?;
    let mut head = header.split_whitespace();
    let parse_num = |tok: Option<&str>, what: &str| -> Result<usize> {
        tok.and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::input(format!("edge list header needs {what}")))
    };
    let n = parse_num(head.next(), "vertex count")?;
    let m = parse_num(head.next(), "edge count")?;
    if n > MAX_ORDER {
        return Err(Error::input(format!("order {n} exceeds {MAX_ORDER}")));
    }
    let mut labels: Vec<String> = Vec::with_capacity(n);
    let mut index_of = |label: &str, lineno: usize| -> Result<usize> {
        if let Some(i) = labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        if labels.len() == n {
            return Err(Error::input(format!(
                "line {}: label {label:?} exceeds the declared {n} vertices",
                lineno + 1
            )));
        }
        labels.push(label.to_owned());
        Ok(labels.len() - 1)
    };
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut toks = line.split_whitespace();
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::input(format!("line {}: expected two vertex labels", lineno + 1)));
        };
        let u = index_of(a, lineno)?;
        let v = index_of(b, lineno)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::input(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    let g = Graph::from_edges(n, edges)?;
    let mut next = 0usize;
    while labels.len() < n {
        let candidate = next.to_string();
        next += 1;
        if !labels.contains(&candidate) {
            labels.push(candidate);
        }
    }
    Ok((g, labels))
}

/// A simple path: distinct vertices, consecutive ones adjacent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Path> {
        if verts.is_empty() {
            return Err(Error::input("path has no vertices"));
        }
        check_walk(g, &verts, false)?;
        Ok(Path { verts })
    }

    pub(crate) fn from_vec_unchecked(verts: Vec<usize>) -> Path {
        debug_assert!(!verts.is_empty());
        Path { verts }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn start(&self) -> usize {
        self.verts[0]
    }

    pub fn end(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.verts.clone();
        v.reverse();
        Path { verts: v }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.verts
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        !self.verts.is_empty() && check_walk(g, &self.verts, false).is_ok()
    }
}

/// A cycle with a direction. `verts` is stored in forward order; the
/// orientation flag selects whether successors follow or oppose it.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Cycle {
    verts: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    reversed: bool,
}

impl Cycle {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Cycle> {
        if verts.len() < 3 {
            return Err(Error::input(format!(
                "cycle needs at least 3 vertices, got {}",
                verts.len()
            )));
        }
        check_walk(g, &verts, true)?;
        Ok(Cycle { verts, reversed: false })
    }

    pub(crate) fn from_vec_unchecked(verts: Vec<usize>) -> Cycle {
        Cycle { verts, reversed: false }
    }

    /// Vertices in the order of the current orientation, starting anywhere.
    pub fn vertices(&self) -> Vec<usize> {
        if self.reversed {
            self.verts.iter().rev().copied().collect()
        } else {
            self.verts.clone()
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    /// `C⁻`: the same cycle traversed the other way.
    pub fn reversed(&self) -> Cycle {
        Cycle {
            verts: self.verts.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn is_backward(&self) -> bool {
        self.reversed
    }

    fn index_of(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    /// `i`-th successor of `v` along the orientation.
    pub fn succ_by(&self, v: usize, i: usize) -> Option<usize> {
        let k = self.verts.len();
        let at = self.index_of(v)?;
        let step = i % k;
        let idx = if self.reversed {
            (at + k - step) % k
        } else {
            (at + step) % k
        };
        Some(self.verts[idx])
    }

    /// `i`-th predecessor of `v` along the orientation.
    pub fn pred_by(&self, v: usize, i: usize) -> Option<usize> {
        let k = self.verts.len();
        self.succ_by(v, k - i % k)
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        self.succ_by(v, 1)
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        self.pred_by(v, 1)
    }

    /// `C[u, v]`: the section from `u` to `v` along the orientation, inclusive.
    pub fn section(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.index_of(v)?;
        let mut out = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.succ(cur)?;
            out.push(cur);
        }
        Some(out)
    }

    /// Oriented edges `(v, v⁺)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let vs = self.vertices();
        let k = vs.len();
        (0..k).map(|i| (vs[i], vs[(i + 1) % k])).collect()
    }

    /// The Hamilton path obtained by dropping the edge `(v⁻, v)`: starts at `v`.
    pub fn path_from(&self, v: usize) -> Option<Path> {
        let prev = self.pred(v)?;
        self.section(v, prev).map(Path::from_vec_unchecked)
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.verts.len() >= 3 && check_walk(g, &self.verts, true).is_ok()
    }
}

fn check_walk(g: &Graph, verts: &[usize], closed: bool) -> Result<()> {
    let mut seen = VertexSet::EMPTY;
    for &v in verts {
        if v >= g.order() {
            return Err(Error::input(format!("vertex {v} outside graph")));
        }
        if seen.contains(v) {
            return Err(Error::input(format!("vertex {v} repeated")));
        }
        seen.insert(v);
    }
    for w in verts.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::input(format!("{} and {} are not adjacent", w[0], w[1])));
        }
    }
    if closed {
        let (a, b) = (verts[verts.len() - 1], verts[0]);
        if !g.has_edge(a, b) {
            return Err(Error::input(format!("{a} and {b} are not adjacent")));
        }
    }
    Ok(())
}

/// Two vertex-disjoint cycles: the witness object for a disjoint cycle pair.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CyclePairCert {
    pub c1: Cycle,
    pub c2: Cycle,
}

impl CyclePairCert {
    pub fn new(c1: Cycle, c2: Cycle) -> Self {
        CyclePairCert { c1, c2 }
    }

    /// Orders the pair so that `c1` has length `n1` when possible.
    pub fn oriented(self, n1: usize) -> Self {
        if self.c1.len() != n1 && self.c2.len() == n1 {
            CyclePairCert {
                c1: self.c2,
                c2: self.c1,
            }
        } else {
            self
        }
    }

    pub fn lengths(&self) -> (usize, usize) {
        (self.c1.len(), self.c2.len())
    }
}

/// True iff both sequences are cycles of `g`, they share no vertex, and their
/// lengths are `{n1, n2}` in either order.
pub fn validate_cert(g: &Graph, cert: &CyclePairCert, n1: usize, n2: usize) -> bool {
    let ok = |c: &Cycle| c.verts.len() >= 3 && check_walk(g, &c.verts, true).is_ok();
    if !ok(&cert.c1) || !ok(&cert.c2) {
        return false;
    }
    if !cert.c1.vertex_set().is_disjoint(cert.c2.vertex_set()) {
        return false;
    }
    let (a, b) = cert.lengths();
    (a, b) == (n1, n2) || (a, b) == (n2, n1)
}
