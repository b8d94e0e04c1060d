//! Exact Hamilton path/cycle search on induced subgraphs, and constructive
//! path/cycle surgery: closing a Hamilton path into a cycle, re-rooting a
//! Hamilton cycle into a path with prescribed ends, and absorbing two outside
//! vertices into a path.
//!
//! Every search works on `G[within]` without relabelling, so callers can pass
//! any vertex set of the host graph.

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path, VertexSet};

/// Exact search for a cycle of length `k` inside `G[within]` (default: all of `g`).
pub fn find_cycle_of_length(g: &Graph, k: usize, within: Option<VertexSet>) -> Result<Option<Cycle>> {
    let within = within.unwrap_or(g.vertices()) & g.vertices();
    if k < 3 || k > within.len() {
        return Err(Error::input(format!("cycle length {k} outside 3..={}", within.len())));
    }
    if k == within.len() {
        return Ok(hamilton_cycle(g, within));
    }
    Ok(short_cycle(g, k, within))
}

/// Exact Hamilton path of `G[within]` from `u` to `v`.
pub fn find_hamilton_path_between(g: &Graph, u: usize, v: usize, within: Option<VertexSet>) -> Result<Option<Path>> {
    let within = within.unwrap_or(g.vertices()) & g.vertices();
    if u == v {
        return Err(Error::input("path endpoints must differ"));
    }
    if !within.contains(u) || !within.contains(v) {
        return Err(Error::input(format!("endpoints {u},{v} must lie in the vertex set")));
    }
    Ok(hamilton_path_between(g, u, v, within))
}

/// Exact Hamilton cycle of `G[within]`; `None` when `|within| < 3`.
pub fn hamilton_cycle(g: &Graph, within: VertexSet) -> Option<Cycle> {
    if within.len() < 3 {
        return None;
    }
    if within.iter().any(|v| g.degree_in(v, within) < 2) {
        return None;
    }
    // fail-first: root the cycle at a vertex of minimum degree
    let start = within.iter().min_by_key(|&v| (g.degree_in(v, within), v)).unwrap();
    let mut search = Backtrack::new(g, Goal::Cycle { root: start });
    search
        .run(start, within.without(start))
        .then(|| Cycle::from_vec_unchecked(search.path))
}

/// Exact Hamilton path of `G[within]` between any two ends.
pub fn hamilton_path(g: &Graph, within: VertexSet) -> Option<Path> {
    match within.len() {
        0 => return None,
        1 => return Some(Path::from_vec_unchecked(within.to_vec())),
        _ => {}
    }
    let first = within.first().unwrap();
    if g.reach(first, within) != within {
        return None;
    }
    let leaves: Vec<usize> = within.iter().filter(|&v| g.degree_in(v, within) == 1).collect();
    if leaves.len() > 2 {
        return None;
    }
    let starts: Vec<usize> = if leaves.is_empty() {
        let mut all = within.to_vec();
        all.sort_by_key(|&v| (g.degree_in(v, within), v));
        all
    } else {
        leaves
    };
    for s in starts {
        let mut search = Backtrack::new(g, Goal::OpenPath);
        if search.run(s, within.without(s)) {
            return Some(Path::from_vec_unchecked(search.path));
        }
    }
    None
}

pub(crate) fn hamilton_path_between(g: &Graph, u: usize, v: usize, within: VertexSet) -> Option<Path> {
    if within.len() == 2 {
        return g.has_edge(u, v).then(|| Path::from_vec_unchecked(vec![u, v]));
    }
    // extend from the endpoint with fewer options
    let (a, b) = if g.degree_in(v, within) < g.degree_in(u, within) {
        (v, u)
    } else {
        (u, v)
    };
    let mut search = Backtrack::new(g, Goal::PathTo { end: b });
    if !search.run(a, within.without(a)) {
        return None;
    }
    let mut p = search.path;
    if a != u {
        p.reverse();
    }
    Some(Path::from_vec_unchecked(p))
}

#[derive(Clone, Copy)]
enum Goal {
    Cycle { root: usize },
    PathTo { end: usize },
    OpenPath,
}

struct Backtrack<'a> {
    g: &'a Graph,
    goal: Goal,
    path: Vec<usize>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph, goal: Goal) -> Self {
        Backtrack {
            g,
            goal,
            path: Vec::with_capacity(64),
        }
    }

    /// Extends the partial path ending at `cur` through all of `rest`.
    fn run(&mut self, cur: usize, rest: VertexSet) -> bool {
        self.path.push(cur);
        if self.extend(cur, rest) {
            return true;
        }
        self.path.pop();
        false
    }

    fn extend(&mut self, cur: usize, rest: VertexSet) -> bool {
        let g = self.g;
        if rest.is_empty() {
            return match self.goal {
                Goal::Cycle { root } => g.has_edge(cur, root),
                Goal::PathTo { end } => cur == end,
                Goal::OpenPath => true,
            };
        }
        if !self.feasible(cur, rest) {
            return false;
        }
        let mut options: Vec<usize> = (g.neighbors(cur) & rest).iter().collect();
        if let Goal::PathTo { end } = self.goal {
            if rest.len() > 1 {
                options.retain(|&x| x != end);
            }
        }
        options.sort_by_key(|&x| (g.degree_in(x, rest), x));
        for next in options {
            self.path.push(next);
            if self.extend(next, rest.without(next)) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    fn feasible(&self, cur: usize, rest: VertexSet) -> bool {
        let g = self.g;
        let live = rest.with(cur);
        if g.reach(cur, live) != live {
            return false;
        }
        let mut loose_ends = 0;
        for r in rest.iter() {
            let avail = match self.goal {
                Goal::Cycle { root } => g.degree_in(r, live.with(root)),
                _ => g.degree_in(r, live),
            };
            let need = match self.goal {
                Goal::PathTo { end } if r == end => 1,
                Goal::OpenPath => {
                    if avail == 0 {
                        return false;
                    }
                    if avail == 1 {
                        loose_ends += 1;
                        if loose_ends > 1 {
                            return false;
                        }
                    }
                    continue;
                }
                _ => 2,
            };
            if avail < need {
                return false;
            }
        }
        if let Goal::Cycle { root } = self.goal {
            if (g.neighbors(root) & rest).is_empty() {
                return false;
            }
        }
        true
    }
}

/// Cycles of length `k < |within|`: rooted at their lowest vertex, explored
/// in ascending root order.
fn short_cycle(g: &Graph, k: usize, within: VertexSet) -> Option<Cycle> {
    for root in within.iter() {
        let pool = within - VertexSet::full(root + 1);
        if pool.len() + 1 < k || g.degree_in(root, pool) < 2 {
            continue;
        }
        let mut path = vec![root];
        if grow_cycle(g, k, root, root, pool, &mut path) {
            return Some(Cycle::from_vec_unchecked(path));
        }
    }
    None
}

fn grow_cycle(g: &Graph, k: usize, root: usize, cur: usize, pool: VertexSet, path: &mut Vec<usize>) -> bool {
    if path.len() == k {
        return g.has_edge(cur, root);
    }
    let remaining = k - path.len();
    if (g.neighbors(root) & pool).is_empty() {
        return false;
    }
    if remaining > 1 && g.reach(cur, pool.with(cur)).len() < remaining + 1 {
        return false;
    }
    for next in (g.neighbors(cur) & pool).iter() {
        if remaining == 1 && !g.has_edge(next, root) {
            continue;
        }
        path.push(next);
        if grow_cycle(g, k, root, next, pool.without(next), path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Closes a Hamilton path `u … v` of `G[V(p)]` into a Hamilton cycle of the
/// same vertex set: directly when `uv` is an edge, otherwise through the first
/// index `i` with `u ~ p[i+1]` and `v ~ p[i]`, which exists whenever
/// `d(u) + d(v) >= |p|` inside `V(p)`.
pub fn close_path_ore(g: &Graph, p: &Path) -> Result<Cycle> {
    let verts = p.vertices();
    if !p.is_valid_in(g) || verts.len() < 3 {
        return Err(Error::input("close_path_ore needs a valid path on >= 3 vertices"));
    }
    let (u, v) = (p.start(), p.end());
    if g.has_edge(u, v) {
        return Ok(Cycle::from_vec_unchecked(verts.to_vec()));
    }
    for i in 1..verts.len() - 2 {
        if g.has_edge(u, verts[i + 1]) && g.has_edge(v, verts[i]) {
            let mut out = verts[..=i].to_vec();
            out.extend(verts[i + 1..].iter().rev());
            return Ok(Cycle::from_vec_unchecked(out));
        }
    }
    let host = p.vertex_set();
    Err(Error::contract(
        "close_path_ore",
        format!(
            "no crossing index on a {}-vertex path: d({u})+d({v}) = {} inside the path",
            verts.len(),
            g.degree_in(u, host) + g.degree_in(v, host)
        ),
    ))
}

/// Result of [`rotate_endpoints`]: the path and whether the rotation
/// argument produced it (as opposed to the exact-search fallback).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotatedPath {
    pub path: Path,
    pub via_rotation: bool,
}

/// Hamilton path of `G[V(c)]` with ends `u` and `v`, built from the Hamilton
/// cycle `c`. The successor pair `(u⁺, v⁺)` is tried first, then the
/// predecessor pair; if neither admits the rotation an exact search decides.
pub fn rotate_endpoints(g: &Graph, c: &Cycle, u: usize, v: usize) -> Result<Option<RotatedPath>> {
    if !c.contains(u) || !c.contains(v) {
        return Err(Error::input(format!("{u} and {v} must both lie on the cycle")));
    }
    if u == v {
        return Err(Error::input("rotation endpoints must differ"));
    }
    for oriented in [c.clone(), c.reversed()] {
        if let Some(p) = rotate_along(g, &oriented, u, v) {
            return Ok(Some(RotatedPath {
                path: Path::from_vec_unchecked(p),
                via_rotation: true,
            }));
        }
    }
    Ok(hamilton_path_between(g, u, v, c.vertex_set()).map(|path| RotatedPath {
        path,
        via_rotation: false,
    }))
}

/// Rotation with the successors of `u` and `v` along `c`'s orientation.
fn rotate_along(g: &Graph, c: &Cycle, u: usize, v: usize) -> Option<Vec<usize>> {
    // seq = u⁺ = c1, c2, …, cN = u
    let up = c.succ(u)?;
    let seq = c.section(up, u)?;
    let n = seq.len();
    if up == v {
        // v follows u: drop the edge uv
        return Some(seq.iter().rev().copied().collect());
    }
    let j = seq.iter().position(|&x| x == v)?;
    if j == n - 2 {
        // u follows v
        let mut p = vec![u];
        p.extend(&seq[..n - 1]);
        return Some(p);
    }
    let vp = j + 1; // index of v⁺
    let idx = |k: usize| seq[k];
    // u … v⁺ backwards, then u⁺ … v
    let build = |first: &[usize], second: &[usize], third: &[usize]| {
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(first);
        out.extend_from_slice(second);
        out.extend_from_slice(third);
        out
    };
    let down = |from: usize, to: usize| -> Vec<usize> { (to..=from).rev().map(idx).collect() };
    let upr = |from: usize, to: usize| -> Vec<usize> { (from..=to).map(idx).collect() };
    if g.has_edge(idx(0), idx(vp)) {
        return Some(build(&down(n - 1, vp), &upr(0, j), &[]));
    }
    // crossing inside u⁺ … v
    for i in 0..j {
        if g.has_edge(idx(vp), idx(i)) && g.has_edge(idx(0), idx(i + 1)) {
            return Some(build(&down(n - 1, vp), &down(i, 0), &upr(i + 1, j)));
        }
    }
    // crossing inside v⁺ … u
    for i in vp..n - 1 {
        if g.has_edge(idx(0), idx(i)) && g.has_edge(idx(vp), idx(i + 1)) {
            return Some(build(&down(n - 1, i + 1), &upr(vp, i), &upr(0, j)));
        }
    }
    None
}

/// Hamilton path of `G[V(p) ∪ {u, v}]` for a path `p` of length `k` and two
/// outside vertices sending at least `k + 2` edges into it.
///
/// Insertion order: both vertices together (when adjacent) at one attachment
/// point, then each at its own attachment point, then a rearrangement of `p`
/// into at most three segments around them.
pub fn absorb_pair(g: &Graph, p: &Path, u: usize, v: usize) -> Result<Path> {
    let ps = p.vertices();
    let host = p.vertex_set();
    if u == v || host.contains(u) || host.contains(v) {
        return Err(Error::input("absorb_pair needs two distinct vertices off the path"));
    }
    let k = p.length();
    let attach = g.degree_in(u, host) + g.degree_in(v, host);
    if attach < k + 2 {
        return Err(Error::contract(
            "absorb_pair",
            format!("found {attach} edges from the pair into the path, need {}", k + 2),
        ));
    }
    let last = ps.len() - 1;
    let adj = |a: usize, b: usize| g.has_edge(a, b);

    if adj(u, v) {
        for i in 0..last {
            for (a, b) in [(u, v), (v, u)] {
                if adj(a, ps[i]) && adj(b, ps[i + 1]) {
                    let mut out = ps[..=i].to_vec();
                    out.extend([a, b]);
                    out.extend_from_slice(&ps[i + 1..]);
                    return Ok(Path::from_vec_unchecked(out));
                }
            }
        }
        for (a, b) in [(u, v), (v, u)] {
            if adj(a, ps[0]) {
                let mut out = vec![b, a];
                out.extend_from_slice(ps);
                return Ok(Path::from_vec_unchecked(out));
            }
            if adj(a, ps[last]) {
                let mut out = ps.to_vec();
                out.extend([a, b]);
                return Ok(Path::from_vec_unchecked(out));
            }
        }
    }

    let slots = |w: usize| -> Vec<Slot> {
        let mut s = Vec::new();
        if adj(w, ps[0]) {
            s.push(Slot::Front);
        }
        for i in 0..last {
            if adj(w, ps[i]) && adj(w, ps[i + 1]) {
                s.push(Slot::Gap(i));
            }
        }
        if adj(w, ps[last]) {
            s.push(Slot::Back);
        }
        s
    };
    let (su, sv) = (slots(u), slots(v));
    for &a in &su {
        for &b in &sv {
            if a != b {
                return Ok(Path::from_vec_unchecked(place(ps, &[(a, u), (b, v)])));
            }
        }
    }

    if let Some(out) = segment_search(g, ps, u, v) {
        return Ok(Path::from_vec_unchecked(out));
    }
    Err(Error::contract(
        "absorb_pair",
        format!("no insertion found despite {attach} >= {} attachments", k + 2),
    ))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Slot {
    Front,
    Gap(usize),
    Back,
}

fn place(ps: &[usize], items: &[(Slot, usize)]) -> Vec<usize> {
    let mut out = Vec::with_capacity(ps.len() + items.len());
    for &(s, w) in items {
        if s == Slot::Front {
            out.push(w);
        }
    }
    for (i, &x) in ps.iter().enumerate() {
        out.push(x);
        for &(s, w) in items {
            if s == Slot::Gap(i) {
                out.push(w);
            }
        }
    }
    for &(s, w) in items {
        if s == Slot::Back {
            out.push(w);
        }
    }
    out
}

/// Splits `ps` into up to three consecutive segments and tries every order
/// and direction of the segments interleaved with `u` and `v`.
fn segment_search(g: &Graph, ps: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let len = ps.len();
    let mut cuts: Vec<Vec<usize>> = vec![vec![]];
    for i in 1..len {
        cuts.push(vec![i]);
    }
    for i in 1..len {
        for j in i + 1..len {
            cuts.push(vec![i, j]);
        }
    }
    for cut in cuts {
        let mut bounds = vec![0];
        bounds.extend(&cut);
        bounds.push(len);
        let segs: Vec<&[usize]> = bounds.windows(2).map(|w| &ps[w[0]..w[1]]).collect();
        // tokens: segment indices 0..r, then u = r, v = r + 1
        let r = segs.len();
        let mut tokens: Vec<usize> = (0..r + 2).collect();
        let mut found = None;
        permute(&mut tokens, 0, &mut |order| {
            for flips in 0..(1u32 << r) {
                let mut seq = Vec::with_capacity(len + 2);
                for &t in order {
                    if t < r {
                        if flips >> t & 1 == 1 {
                            seq.extend(segs[t].iter().rev());
                        } else {
                            seq.extend_from_slice(segs[t]);
                        }
                    } else if t == r {
                        seq.push(u);
                    } else {
                        seq.push(v);
                    }
                }
                if seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                    found = Some(seq);
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, visit) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// `sigma2(g) >= n + 1` (complete graphs included).
pub fn hamilton_connected_by_sigma(g: &Graph) -> bool {
    g.sigma2().is_none_or(|s| s > g.order())
}
