//! Seeded random hosts shared by the integration tests.
#![allow(dead_code)]

use cyclepair::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

fn deg(adj: &[u64], v: usize) -> usize {
    adj[v].count_ones() as usize
}

/// Adds random edges between pairs with degree sum below `n + 2`, drawn
/// from `allowed`, until no such pair remains. Returns `None` when a
/// deficient pair is not allowed to receive an edge.
fn lift<R: Rng>(rng: &mut R, adj: &mut [u64], allowed: impl Fn(usize, usize) -> bool) -> Option<()> {
    let n = adj.len();
    loop {
        let mut deficient = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if adj[a] >> b & 1 == 0 && deg(adj, a) + deg(adj, b) < n + 2 {
                    deficient.push((a, b));
                }
            }
        }
        if deficient.is_empty() {
            return Some(());
        }
        let (a, b) = *deficient.choose(rng).unwrap();
        // raise one of the pair: connect it to a random allowed non-neighbour
        let mut options: Vec<(usize, usize)> = Vec::new();
        for &x in &[a, b] {
            for y in 0..n {
                if y != x && adj[x] >> y & 1 == 0 && allowed(x, y) {
                    options.push((x, y));
                }
            }
        }
        let &(x, y) = options.choose(rng)?;
        adj[x] |= 1 << y;
        adj[y] |= 1 << x;
    }
}

/// Random `G(n, p)` lifted until `sigma2 >= n + 2`.
pub fn near_threshold_host<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut adj = random_graph(rng, n, p);
    lift(rng, &mut adj, |_, _| true).expect("all pairs allowed");
    Graph::from_adjacency(adj).unwrap()
}

/// Which structure is planted on the second side of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plant {
    /// Dense random graph: every pair removal keeps it Hamiltonian.
    Dense,
    /// `S` of size `m + 1` independent and complete to `T` of size `m + 2`.
    NearBipartite,
    /// Three apex vertices over two disjoint cliques.
    Cone,
}

/// Host on `n1 + n2` vertices with `V1 = 0..n1-2` and `V2` the rest, `G[V2]`
/// planted with `plant` and never touched afterwards. Edges inside `V1` and
/// across are random and then lifted to the threshold.
pub fn planted_decomposition<R: Rng>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    plant: Plant,
    p: f64,
) -> Option<(Graph, VertexSet, VertexSet)> {
    let n = n1 + n2;
    let k1 = n1 - 2;
    let mut adj = random_graph(rng, n, p);
    let v2: Vec<usize> = (k1..n).collect();
    for &a in &v2 {
        for &b in &v2 {
            if a != b {
                adj[a] &= !(1 << b);
            }
        }
    }
    let link = |adj: &mut Vec<u64>, a: usize, b: usize| {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    };
    let mut order = v2.clone();
    order.shuffle(rng);
    match plant {
        Plant::Dense => {
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[i + 1..] {
                    if rng.gen_bool(0.85) {
                        link(&mut adj, a, b);
                    }
                }
            }
        }
        Plant::NearBipartite => {
            if n2.is_multiple_of(2) {
                return None;
            }
            let m = (n2 - 1) / 2;
            let (s, t) = order.split_at(m + 1);
            for &a in s {
                for &b in t {
                    link(&mut adj, a, b);
                }
            }
            for (i, &a) in t.iter().enumerate() {
                for &b in &t[i + 1..] {
                    if rng.gen_bool(0.6) {
                        link(&mut adj, a, b);
                    }
                }
            }
        }
        Plant::Cone => {
            let (apex, rest) = order.split_at(3);
            let split = rng.gen_range(1..rest.len());
            let (pp, qq) = rest.split_at(split);
            for side in [pp, qq] {
                for (i, &a) in side.iter().enumerate() {
                    for &b in &side[i + 1..] {
                        link(&mut adj, a, b);
                    }
                }
            }
            for &a in apex {
                for &b in rest {
                    link(&mut adj, a, b);
                }
            }
            for (i, &a) in apex.iter().enumerate() {
                for &b in &apex[i + 1..] {
                    if rng.gen_bool(0.5) {
                        link(&mut adj, a, b);
                    }
                }
            }
        }
    }
    let inside = |a: usize| a >= k1;
    lift(rng, &mut adj, |a, b| !(inside(a) && inside(b)))?;
    let g = Graph::from_adjacency(adj).unwrap();
    let v1: VertexSet = (0..k1).collect();
    let v2: VertexSet = v2.into_iter().collect();
    if g.sigma2_within(v2).is_some_and(|s| s < n2 + 3) {
        return None;
    }
    Some((g, v1, v2))
}

/// Path of the shipped graph6 corpus of order `n`.
pub fn fixture_path(n: usize) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("fixtures/graphs{n}.g6"))
}

/// All graphs of the shipped corpus of order `n`.
pub fn fixture(n: usize) -> Vec<Graph> {
    std::fs::read_to_string(fixture_path(n))
        .expect("fixture file present")
        .lines()
        .map(|l| cyclepair::parse_graph6(l).expect("fixture line parses"))
        .collect()
}

/// Every labeled graph on `n` vertices.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    cyclepair::harness::enumerate_labeled(n, 0).expect("order within range")
}

/// Straightforward graph6 decoder for orders up to 62, written against the
/// format description: bias 63, upper triangle in column order, six bits
/// per byte with the most significant bit first.
pub fn reference_decode(line: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u8> = line.bytes().map(|b| b - 63).collect();
    let n = bytes[0] as usize;
    let bits: Vec<bool> = bytes[1..]
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |i| b >> i & 1 == 1))
        .collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    (n, edges)
}

/// Random graph on `n` vertices with a Hamilton path `p` (a random vertex
/// order) whose ends satisfy `d(u) + d(v) >= n`.
pub fn ore_path_instance<R: Rng>(rng: &mut R, n: usize) -> (Graph, cyclepair::Path) {
    let p_edge = rng.gen_range(0.0..0.5);
    let mut adj = random_graph(rng, n, p_edge);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for w in order.windows(2) {
        adj[w[0]] |= 1 << w[1];
        adj[w[1]] |= 1 << w[0];
    }
    let (u, v) = (order[0], order[n - 1]);
    // keep the ends apart half the time so the crossing index is exercised;
    // three vertices need adjacent ends to reach d(u) + d(v) >= n
    let apart = n >= 4 && rng.gen_bool(0.5);
    if apart {
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
    }
    while deg(&adj, u) + deg(&adj, v) < n {
        let x = if rng.gen_bool(0.5) { u } else { v };
        let other = if x == u { v } else { u };
        let y = rng.gen_range(0..n);
        if y != x && !(apart && y == other) {
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
    }
    let g = Graph::from_adjacency(adj).unwrap();
    let p = cyclepair::Path::new(&g, order).unwrap();
    (g, p)
}

/// Path of length `k` on `0..=k` plus outside vertices `k+1`, `k+2` sending
/// exactly `attach` edges into the path (`k + 2 <= attach <= 2k + 2`).
pub fn absorb_instance<R: Rng>(rng: &mut R, k: usize, attach: usize) -> (Graph, cyclepair::Path, usize, usize) {
    let n = k + 3;
    let density = rng.gen_range(0.0..0.4);
    let mut adj = random_graph(rng, n, density);
    let (u, v) = (k + 1, k + 2);
    for x in [u, v] {
        for y in 0..=k {
            adj[x] &= !(1 << y);
            adj[y] &= !(1 << x);
        }
    }
    for i in 0..k {
        adj[i] |= 1 << (i + 1);
        adj[i + 1] |= 1 << i;
    }
    let mut slots: Vec<(usize, usize)> = [u, v].iter().flat_map(|&x| (0..=k).map(move |y| (x, y))).collect();
    slots.shuffle(rng);
    for &(x, y) in &slots[..attach] {
        adj[x] |= 1 << y;
        adj[y] |= 1 << x;
    }
    let g = Graph::from_adjacency(adj).unwrap();
    let p = cyclepair::Path::new(&g, (0..=k).collect()).unwrap();
    (g, p, u, v)
}
