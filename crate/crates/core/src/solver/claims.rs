//! Finishing from a decomposition `V1 ∪ V2`: find two vertices of `V2` (or a
//! small swap) that extend `V1` to an `n1`-cycle while the rest of `V2`
//! keeps an `n2`-cycle. One handler per structural case of `G[V2]`.

use crate::error::{Error, Result};
use crate::graph::{Cycle, CyclePairCert, Graph, VertexSet};
use crate::hamilton::{close_path_ore, hamilton_cycle, hamilton_path_between, rotate_endpoints};
use crate::trace::{SolveTrace, Step};

use super::{checked_cycle, insert_two, DecompCase, Decomposition};

/// Disjoint `(n1, n2)` cycles from a decomposition whose lengths are `{n1, n2}`.
pub fn solve_from_decomposition(g: &Graph, d: &Decomposition, n1: usize, n2: usize) -> Result<CyclePairCert> {
    Ok(solve_from_decomposition_traced(g, d, n1, n2, true)?.0)
}

/// As [`solve_from_decomposition`], also returning the trace. With
/// `preamble = false` the all-pairs case skips its opening exact check of
/// consecutive pairs, so the constructions behind it run on every input.
pub fn solve_from_decomposition_traced(
    g: &Graph,
    d: &Decomposition,
    n1: usize,
    n2: usize,
    preamble: bool,
) -> Result<(CyclePairCert, SolveTrace)> {
    if (n1, n2) != (d.len1, d.len2) && (n2, n1) != (d.len1, d.len2) {
        return Err(Error::input(format!(
            "decomposition is for lengths ({},{}), not ({n1},{n2})",
            d.len1, d.len2
        )));
    }
    let mut trace = SolveTrace::default();
    let cert = run_with(g, d, preamble, &mut trace)?;
    Ok((cert.oriented(n1), trace))
}

pub(crate) fn run(g: &Graph, d: &Decomposition, trace: &mut SolveTrace) -> Result<CyclePairCert> {
    run_with(g, d, true, trace)
}

fn run_with(g: &Graph, d: &Decomposition, preamble: bool, trace: &mut SolveTrace) -> Result<CyclePairCert> {
    let cx = Claims {
        g,
        v1: d.v1,
        v2: d.v2,
        n1: d.len1,
        n2: d.len2,
        d,
        preamble,
    };
    match &d.case {
        DecompCase::AllPairs => cx.claim1(trace),
        DecompCase::NearBipartite { s, t } => cx.claim2(*s, *t, trace),
        DecompCase::Cone { apex, p, q } => cx.claim3(*apex, *p, *q, trace),
    }
}

enum Start {
    Done(CyclePairCert),
    Cycle(Cycle),
}

struct Claims<'a> {
    g: &'a Graph,
    v1: VertexSet,
    v2: VertexSet,
    n1: usize,
    n2: usize,
    d: &'a Decomposition,
    preamble: bool,
}

impl Claims<'_> {
    /// Pairs an `n1`-cycle with a Hamilton cycle of the remaining vertices;
    /// a non-Hamiltonian remainder only rejects this choice.
    fn try_complete(&self, c1: Vec<usize>) -> Option<CyclePairCert> {
        let c1 = Cycle::new(self.g, c1).ok()?;
        if c1.len() != self.n1 {
            return None;
        }
        let rest = self.g.vertices() - c1.vertex_set();
        hamilton_cycle(self.g, rest).map(|c2| CyclePairCert::new(c1, c2))
    }

    /// `n1`-cycle on `V1 ∪ {a, b}` from exact search, when one exists.
    fn extend_exact(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        hamilton_cycle(self.g, self.v1.with(a).with(b)).map(|c| c.vertices())
    }

    fn common(&self, a: usize, b: usize, exclude: &[usize]) -> Vec<usize> {
        let mut set = self.g.common_neighbors(a, b, self.v2);
        for &x in exclude {
            set.remove(x);
        }
        set.to_vec()
    }

    /// Either closes the Hamilton path of `G[V1]` into a cycle, or finds two
    /// consecutive vertices `x, y` of `c2` with `e({u, v}, {x, y}) >= 3` and
    /// uses them to extend the path into an `n1`-cycle.
    fn prop2(&self, c2: &Cycle, trace: &mut SolveTrace) -> Result<Start> {
        let g = self.g;
        let p = &self.d.v1_path;
        let (u, v) = (p.start(), p.end());
        if g.has_edge(u, v) {
            return Ok(Start::Cycle(Cycle::from_vec_unchecked(p.vertices().to_vec())));
        }
        if g.degree_in(u, self.v1) + g.degree_in(v, self.v1) >= self.v1.len() {
            return Ok(Start::Cycle(close_path_ore(g, p)?));
        }
        for (x, y) in c2.edges() {
            for (a, b) in [(x, y), (y, x)] {
                // u … v b a u
                if g.has_edge(v, b) && g.has_edge(a, u) {
                    let mut c1 = p.vertices().to_vec();
                    c1.extend([b, a]);
                    if let Some(cert) = self.try_complete(c1) {
                        trace.push(Step::Prop2, &[u, v, a, b], "path ends attach to consecutive vertices");
                        return Ok(Start::Done(cert));
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Prop2.label(),
            format!("path ends {u},{v} have low degree but no consecutive pair of C2 takes them"),
        ))
    }

    /// A consecutive pair of `c2` that extends `V1` to a cycle, by exact search.
    fn consecutive_extension(&self, c2: &Cycle) -> Option<CyclePairCert> {
        c2.edges()
            .into_iter()
            .find_map(|(x, y)| self.extend_exact(x, y).and_then(|c1| self.try_complete(c1)))
    }

    fn claim1(&self, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        let c2 = &self.d.v2_cycle;
        let c1 = match self.prop2(c2, trace)? {
            Start::Done(cert) => return Ok(cert),
            Start::Cycle(c) => c,
        };
        if self.preamble {
            if let Some(cert) = self.consecutive_extension(c2) {
                trace.push(Step::Prop2, &[], "consecutive pair of C2 extends V1");
                return Ok(cert);
            }
        }
        if let Some((u, v)) = g
            .sigma2_pair_within(self.v1)
            .filter(|&(u, v)| g.degree_in(u, self.v1) + g.degree_in(v, self.v1) < self.n1)
        {
            trace.push(Step::Claim1Case1, &[u, v], "low degree pair inside V1");
            return self.claim1_case1(&c1, u, v, trace);
        }
        trace.push(Step::Claim1Case2, &[], "G[V1] is Hamilton-connected");
        self.claim1_case2(&c1, trace)
    }

    fn claim1_case1(&self, c1: &Cycle, u: usize, v: usize, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        if let Some(r) = rotate_endpoints(g, c1, u, v)? {
            let p = r.path.vertices().to_vec();
            for (x, y) in self.d.v2_cycle.edges() {
                for (a, b) in [(x, y), (y, x)] {
                    if g.has_edge(v, b) && g.has_edge(a, u) {
                        let mut c = p.clone();
                        c.extend([b, a]);
                        if let Some(cert) = self.try_complete(c) {
                            trace.push(
                                Step::Claim1Case1,
                                &[u, v, a, b],
                                format!("rotation (via_rotation = {})", r.via_rotation),
                            );
                            return Ok(cert);
                        }
                    }
                }
            }
        }
        for x in self.common(u, v, &[]) {
            for oc in [c1.clone(), c1.reversed()] {
                let (um, vm) = (oc.pred(u).unwrap(), oc.pred(v).unwrap());
                for x2 in self.common(um, vm, &[x]) {
                    // C1⁻[u⁻, v] x C1[u, v⁻] x' u⁻
                    let mut c = oc.reversed().section(um, v).unwrap();
                    c.push(x);
                    c.extend(oc.section(u, vm).unwrap());
                    c.push(x2);
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Prop3, &[um, vm, x2], "common neighbour of the predecessors");
                        trace.push(
                            Step::Claim1Case1,
                            &[u, v, x, x2],
                            "two outside vertices bridge the cycle",
                        );
                        return Ok(cert);
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Claim1Case1.label(),
            format!("no bridge for the pair {u},{v}"),
        ))
    }

    fn claim1_case2(&self, c1: &Cycle, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        let c2 = &self.d.v2_cycle;
        let heavy = self.v2.iter().any(|x| g.degree_in(x, self.v1) >= 2);
        for u in self.v1.iter() {
            for x in (g.neighbors(u) & self.v2).iter() {
                for oc in [c1.clone(), c1.reversed()] {
                    for oc2 in [c2.clone(), c2.reversed()] {
                        let found = if heavy {
                            self.claim1_case2_heavy(&oc, &oc2, u, x, trace)?
                        } else {
                            self.claim1_case2_light(&oc, &oc2, u, x, trace)
                        };
                        if let Some(cert) = found {
                            return Ok(cert);
                        }
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Claim1Case2.label(),
            "no edge between V1 and V2 leads to a cycle pair",
        ))
    }

    /// Some outside vertex has two neighbours in `V1`.
    fn claim1_case2_heavy(
        &self,
        c1: &Cycle,
        c2: &Cycle,
        u: usize,
        x: usize,
        trace: &mut SolveTrace,
    ) -> Result<Option<CyclePairCert>> {
        let g = self.g;
        let up = c1.succ(u).unwrap();
        let xp = c2.succ(x).unwrap();
        let others: Vec<usize> = (g.neighbors(x) & self.v1)
            .iter()
            .filter(|&v| v != u && v != up)
            .collect();
        for y in self.common(up, xp, &[x, xp]) {
            for &v in &others {
                let Some(p) = hamilton_path_between(g, v, up, self.v1.without(u)) else {
                    return Err(Error::contract(
                        Step::Claim1Case2.label(),
                        format!("G[V1] - {u} has no Hamilton path {v} -> {up}"),
                    ));
                };
                // u x P y
                let mut path = vec![u, x];
                path.extend(p.into_vec());
                path.push(y);
                if g.has_edge(u, y) {
                    if let Some(cert) = self.try_complete(path.clone()) {
                        trace.push(Step::Claim1Case2, &[u, x, v, y], "path closes directly");
                        return Ok(Some(cert));
                    }
                }
                if let Some(c) = self.extend_exact(x, y) {
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Claim1Case2, &[u, x, y], "V1 with x, y is Hamiltonian");
                        return Ok(Some(cert));
                    }
                }
                for z in self.common(u, y, &[x, y]) {
                    // y C1[u⁺, u] z y
                    let mut c = vec![y];
                    c.extend(c1.section(up, u).unwrap());
                    c.push(z);
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Prop3, &[u, y, z], "common neighbour of the path ends");
                        trace.push(Step::Claim1Case2, &[u, x, y, z], "reroute through a common neighbour");
                        return Ok(Some(cert));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Every outside vertex has at most one neighbour in `V1`.
    fn claim1_case2_light(
        &self,
        c1: &Cycle,
        c2: &Cycle,
        u: usize,
        x: usize,
        trace: &mut SolveTrace,
    ) -> Option<CyclePairCert> {
        let g = self.g;
        let (up, um) = (c1.succ(u).unwrap(), c1.pred(u).unwrap());
        let xp = c2.succ(x).unwrap();
        let ones = self.common(up, xp, &[x, xp]);
        let twos = self.common(u, xp, &[x, xp]);
        let threes = self.common(um, xp, &[x, xp]);
        for &y1 in &ones {
            for &y3 in &threes {
                if y3 == y1 {
                    continue;
                }
                let gamma = self.v2.without(y1).without(xp).without(y3);
                for &y2 in &twos {
                    if y2 == y1 || y2 == y3 || y2 == x {
                        continue;
                    }
                    // C1[u⁺, u⁻] y3 x⁺ y1 u⁺ and u P u with P: x -> y2 in Γ
                    let mut first = c1.section(up, um).unwrap();
                    first.extend([y3, xp, y1]);
                    let Ok(first) = Cycle::new(g, first) else { continue };
                    let Some(p) = hamilton_path_between(g, x, y2, gamma) else {
                        continue;
                    };
                    let mut second = vec![u];
                    second.extend(p.into_vec());
                    let Ok(second) = Cycle::new(g, second) else { continue };
                    trace.push(Step::Prop3, &[up, um, u, xp], "three common neighbours");
                    trace.push(Step::Claim1Case2, &[u, x, y1, y2, y3], "swap u into the V2 cycle");
                    return Some(CyclePairCert::new(first, second));
                }
            }
        }
        // the path C1⁻[u, u⁺] w x⁺ may already close into a cycle
        for &w in &ones {
            if let Some(c) = self.extend_exact(w, xp) {
                if let Some(cert) = self.try_complete(c) {
                    trace.push(Step::Claim1Case2, &[u, w, xp], "V1 with w, x⁺ is Hamiltonian");
                    return Some(cert);
                }
            }
        }
        None
    }

    fn claim2(&self, s: VertexSet, t: VertexSet, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        let p = &self.d.v1_path;
        let (u, v) = (p.start(), p.end());
        let dsum = g.degree_in(u, self.v1) + g.degree_in(v, self.v1);
        let t_edge_without = |x: usize| g.inner_edges(t.without(x)) > 0;
        if !g.has_edge(u, v) && dsum + 3 <= self.n1 {
            // ends of the path have few neighbours in V1
            let (u, v, path) = if g.degree_in(u, self.v2) >= g.degree_in(v, self.v2) {
                (u, v, p.vertices().to_vec())
            } else {
                (v, u, p.reversed().into_vec())
            };
            let nu_t: Vec<usize> = (g.neighbors(u) & t).iter().filter(|&x| t_edge_without(x)).collect();
            for &t1 in &nu_t {
                for s1 in (g.neighbors(v) & s).iter() {
                    let mut c = vec![t1];
                    c.extend(&path);
                    c.push(s1);
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Claim2, &[t1, u, v, s1], "path between a T and an S vertex");
                        return Ok(cert);
                    }
                }
            }
            for s0 in (g.neighbors(u) & s).iter() {
                for t2 in (g.neighbors(v) & t).iter().filter(|&x| t_edge_without(x)) {
                    let mut c = vec![s0];
                    c.extend(&path);
                    c.push(t2);
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Claim2, &[s0, u, v, t2], "path between an S and a T vertex");
                        return Ok(cert);
                    }
                }
            }
            return Err(Error::contract(
                Step::Claim2.label(),
                "low-degree path ends found no S/T attachment",
            ));
        }
        let c1 = if g.has_edge(u, v) {
            Cycle::from_vec_unchecked(p.vertices().to_vec())
        } else {
            close_path_ore(g, p)?
        };
        let mut sv = s.to_vec();
        sv.sort_by_key(|&x| (std::cmp::Reverse(g.degree_in(x, self.v1)), x));
        if has_p4(g, t) {
            trace.push(Step::Claim2, &[sv[0], sv[1]], "G[T] contains a P4");
            for i in 0..sv.len() {
                for j in i + 1..sv.len() {
                    if let Some(c) = insert_two(g, &c1, sv[i], sv[j]) {
                        if let Some(cert) = self.try_complete(c) {
                            trace.push(Step::Claim2Sub1, &[sv[i], sv[j]], "distinct consecutive pairs");
                            return Ok(cert);
                        }
                    }
                }
            }
            if let Some(cert) = self.claim21_shared_pair(&c1, sv[0], sv[1], t, trace) {
                return Ok(cert);
            }
            return Err(Error::contract(
                Step::Claim2Sub1.label(),
                "no distinct consecutive pairs and no reroute",
            ));
        }
        // no P4 in G[T]: move a T vertex and an S vertex together
        let mut tv: Vec<usize> = t.iter().filter(|&x| t_edge_without(x)).collect();
        tv.sort_by_key(|&x| (g.degree_in(x, t) > 2, std::cmp::Reverse(g.degree_in(x, self.v1)), x));
        for &t1 in &tv {
            for s1 in s.iter() {
                if let Some(c) = insert_two(g, &c1, t1, s1) {
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Claim2, &[t1, s1], "T vertex and one of its S neighbours join V1");
                        return Ok(cert);
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Claim2.label(),
            "G[T] has no P4 and no T/S pair extends C1",
        ))
    }

    /// `s1` and `s2` both sit over the same single edge `v1 v2` of `C1`.
    fn claim21_shared_pair(
        &self,
        c1: &Cycle,
        s1: usize,
        s2: usize,
        t: VertexSet,
        trace: &mut SolveTrace,
    ) -> Option<CyclePairCert> {
        let g = self.g;
        for oc in [c1.clone(), c1.reversed()] {
            for (a, b) in oc.edges() {
                if !(g.has_edge(s1, a) && g.has_edge(s1, b) && g.has_edge(s2, a) && g.has_edge(s2, b)) {
                    continue;
                }
                let v3 = oc.succ(b).unwrap();
                let v4 = oc.succ(v3).unwrap();
                // s C1[v4, v3] t
                for sx in [s1, s2] {
                    if !g.has_edge(sx, v4) {
                        continue;
                    }
                    for tx in (g.neighbors(v3) & t).iter() {
                        let mut c = vec![sx];
                        c.extend(oc.section(v4, v3).unwrap());
                        c.push(tx);
                        if let Some(cert) = self.try_complete(c) {
                            trace.push(Step::Claim2Sub1, &[sx, v3, v4, tx], "T neighbour of v3");
                            return Some(cert);
                        }
                    }
                }
                // s1 v2 s2 C1⁻[v_{i-1}, v3] C1[v_i, v1] s1 with v3 ~ v_i
                for vi in (g.neighbors(v3) & self.v1).iter() {
                    let vim = oc.pred(vi).unwrap();
                    if vi == b || vim == v3 || vi == a {
                        continue;
                    }
                    for (x, y) in [(s1, s2), (s2, s1)] {
                        let mut c = vec![x, b, y];
                        c.extend(oc.reversed().section(vim, v3).unwrap());
                        c.extend(oc.section(vi, a).unwrap());
                        if let Some(cert) = self.try_complete(c) {
                            trace.push(Step::Claim2Sub1, &[x, y, v3, vi], "chord from v3");
                            return Some(cert);
                        }
                    }
                }
            }
        }
        None
    }

    fn claim3(&self, apex: VertexSet, p: VertexSet, q: VertexSet, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        if self.n2 == 5 && g.is_independent(apex) {
            trace.push(
                Step::Claim3,
                &apex.to_vec(),
                "five-cycle case reduces to the near-bipartite case",
            );
            return self.claim2(apex, p | q, trace);
        }
        let (p, q) = if p.len() >= q.len() { (p, q) } else { (q, p) };
        let (pv, qv, mv) = (p.to_vec(), q.to_vec(), apex.to_vec());
        // apex vertices pairwise separated on C2
        let mut c2v = vec![mv[0], pv[0], mv[2]];
        c2v.extend(&pv[1..]);
        c2v.push(mv[1]);
        c2v.extend(&qv);
        let c2 = checked_cycle(g, c2v, Step::Claim3)?;
        trace.push(Step::Claim3, &mv, "cycle through the cone structure");
        let c1 = match self.prop2(&c2, trace)? {
            Start::Done(cert) => return Ok(cert),
            Start::Cycle(c) => c,
        };
        for a in p.iter() {
            for b in q.iter() {
                for x in [a, b] {
                    for oc in [c1.clone(), c1.reversed()] {
                        for oc2 in [c2.clone(), c2.reversed()] {
                            if let Some(cert) = self.claim3_from(&oc, &oc2, x, trace) {
                                return Ok(cert);
                            }
                        }
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Claim3.label(),
            "no clique vertex over a cycle edge leads to a pair",
        ))
    }

    fn claim3_from(&self, c1: &Cycle, c2: &Cycle, x: usize, trace: &mut SolveTrace) -> Option<CyclePairCert> {
        let g = self.g;
        let xp = c2.succ(x).unwrap();
        for (w, wp) in c1.edges() {
            if !g.has_edge(x, w) || !g.has_edge(x, wp) {
                continue;
            }
            let w2p = c1.succ(wp).unwrap();
            // C1[w²⁺, w⁺] x x⁺
            let mut path = c1.section(w2p, wp).unwrap();
            path.extend([x, xp]);
            if g.has_edge(xp, w2p) {
                if let Some(cert) = self.try_complete(path.clone()) {
                    trace.push(Step::Claim3, &[x, xp, w, wp], "path closes directly");
                    return Some(cert);
                }
            }
            for z in self.common(w2p, xp, &[x, xp]) {
                if let Some(c) = self.extend_exact(x, z) {
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Prop3, &[w2p, xp, z], "common neighbour");
                        trace.push(Step::Claim3, &[x, z], "V1 with x, z is Hamiltonian");
                        return Some(cert);
                    }
                }
                for tt in self.common(wp, z, &[x, z]) {
                    // C1[w²⁺, w⁺] t z w²⁺
                    let mut c = c1.section(w2p, wp).unwrap();
                    c.extend([tt, z]);
                    if let Some(cert) = self.try_complete(c) {
                        trace.push(Step::Prop3, &[wp, z, tt], "common neighbour");
                        trace.push(Step::Claim3, &[x, z, tt], "two common neighbours replace x");
                        return Some(cert);
                    }
                }
            }
        }
        None
    }
}

/// Whether `G[t]` contains a path on four vertices.
fn has_p4(g: &Graph, t: VertexSet) -> bool {
    fn grow(g: &Graph, cur: usize, left: VertexSet, depth: usize) -> bool {
        depth == 4
            || (g.neighbors(cur) & left)
                .iter()
                .any(|n| grow(g, n, left.without(n), depth + 1))
    }
    t.iter().any(|v| grow(g, v, t.without(v), 1))
}
