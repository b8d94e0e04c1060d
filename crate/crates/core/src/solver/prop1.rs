//! `(3, n-3)` and `(4, n-4)` pairs: fix a triangle, classify what remains
//! and build both cycles explicitly from the structure found.

use crate::error::{Error, Result};
use crate::graph::{Cycle, CyclePairCert, Graph, VertexSet};
use crate::hamilton::{close_path_ore, find_cycle_of_length, hamilton_path_between};
use crate::structure::{classify_within, StructureClass};
use crate::trace::{SolveTrace, Step};

use super::{checked_pair, meets_threshold};

/// A `(small, n - small)` disjoint cycle pair for `small ∈ {3, 4}` in a graph
/// with `sigma2 >= n + 2`. For `n = 7` a request for `small = 4` is the same
/// split as `small = 3` and is answered through the triangle branch.
pub fn prop1_small(g: &Graph, small: usize) -> Result<CyclePairCert> {
    run(g, small, &mut SolveTrace::default())
}

pub(crate) fn run(g: &Graph, small: usize, trace: &mut SolveTrace) -> Result<CyclePairCert> {
    let n = g.order();
    if small != 3 && small != 4 {
        return Err(Error::input(format!("short cycle length must be 3 or 4, got {small}")));
    }
    if n < 6 || (small == 4 && n < 7) {
        return Err(Error::input(format!(
            "order {n} too small for a ({small},{}) pair",
            n - small
        )));
    }
    if !meets_threshold(g) {
        return Err(Error::input(format!(
            "sigma2 = {:?} is below n + 2 = {}",
            g.sigma2(),
            n + 2
        )));
    }
    let small = if n == 7 { 3 } else { small };
    let tri = find_cycle_of_length(g, 3, None)?
        .ok_or_else(|| Error::contract(Step::Prop1Case1.label(), "no triangle despite sigma2 >= n + 2"))?;
    let t = tri.vertices();
    let rest = g.vertices() - tri.vertex_set();
    let p = Prop1 {
        g,
        t: [t[0], t[1], t[2]],
        rest,
    };
    match classify_within(g, rest)? {
        StructureClass::HamiltonCycle { cycle } => {
            trace.push(Step::Prop1Case1, &t, "remainder is Hamiltonian");
            if small == 3 {
                return checked_pair(g, t, cycle.vertices(), Step::Prop1Case1);
            }
            p.case1_four(&cycle, trace)
        }
        StructureClass::NearBipartite { s, t: tt, .. } => {
            trace.push(Step::Prop1Case2, &t, "remainder is near-bipartite");
            p.case2(small, s, tt)
        }
        StructureClass::ConeOverCliques { cut, p: pp, q: qq } => {
            trace.push(Step::Prop1Case3, &t, "remainder is a cone over two cliques");
            p.case3(small, cut, pp, qq)
        }
    }
}

struct Prop1<'a> {
    g: &'a Graph,
    t: [usize; 3],
    rest: VertexSet,
}

impl Prop1<'_> {
    fn tset(&self) -> VertexSet {
        self.t.iter().collect()
    }

    fn t_neighbors(&self, x: usize) -> Vec<usize> {
        (self.g.neighbors(x) & self.tset()).to_vec()
    }

    fn dr(&self, x: usize) -> usize {
        self.g.degree_in(x, self.rest)
    }

    /// Hamilton cycle of `G' - y` from the Hamilton cycle `c` of `G'`: skip
    /// `y` when its neighbours on `c` are adjacent, else close the path
    /// `y⁺ … y⁻` when its ends have enough degree.
    fn cycle_without(&self, c: &Cycle, y: usize) -> Result<Option<Vec<usize>>> {
        let g = self.g;
        let (ym, yp) = (c.pred(y).unwrap(), c.succ(y).unwrap());
        let path = c.section(yp, ym).unwrap();
        if g.has_edge(ym, yp) {
            return Ok(Some(path));
        }
        let host = self.rest.without(y);
        if g.degree_in(ym, host) + g.degree_in(yp, host) >= host.len() {
            let p = crate::graph::Path::from_vec_unchecked(path);
            return Ok(Some(close_path_ore(g, &p)?.vertices()));
        }
        Ok(None)
    }

    fn case1_four(&self, c: &Cycle, trace: &mut SolveTrace) -> Result<CyclePairCert> {
        let g = self.g;
        let n = g.order();
        let low_pair = self.rest.iter().find_map(|x| {
            (self.rest - g.neighbors(x) - VertexSet::full(x + 1))
                .iter()
                .find(|&y| self.dr(x) + self.dr(y) <= n - 2)
                .map(|y| (x, y))
        });
        // vertices with two neighbours on the triangle, in the order the
        // argument considers them
        let mut hubs: Vec<usize> = self.rest.iter().filter(|&x| self.t_neighbors(x).len() >= 2).collect();
        if let Some((x, y)) = low_pair {
            hubs.sort_by_key(|&z| (z != y && z != x, z != y, z));
        }
        for &z in &hubs {
            let tn = self.t_neighbors(z);
            let (a, b) = (tn[0], tn[1]);
            let other = self.other_t(&[a, b]);
            if let Some(big) = self.cycle_without(c, z)? {
                trace.push(Step::Prop1Case1, &[z], "four-cycle through one vertex of the remainder");
                return checked_pair(g, vec![z, a, other, b], big, Step::Prop1Case1);
            }
        }
        if low_pair.is_some() {
            // swap two consecutive vertices y, y⁺ of C' with a triangle vertex z
            for oc in [c.clone(), c.reversed()] {
                for y in self.rest.iter() {
                    let (ym, yp) = (oc.pred(y).unwrap(), oc.succ(y).unwrap());
                    let y2p = oc.succ(yp).unwrap();
                    if y2p == ym {
                        continue;
                    }
                    for z in self.t {
                        if !g.has_edge(z, ym) || !g.has_edge(z, y2p) {
                            continue;
                        }
                        let mut big = vec![z];
                        big.extend(oc.reversed().section(ym, y2p).unwrap());
                        let two: Vec<usize> = self.t.iter().copied().filter(|&v| v != z).collect();
                        if let Some(four) = four_cycle(g, [two[0], two[1], y, yp]) {
                            trace.push(
                                Step::Prop1Case1,
                                &[y, yp, z],
                                "exchange two remainder vertices with one triangle vertex",
                            );
                            return checked_pair(g, four, big, Step::Prop1Case1);
                        }
                    }
                }
            }
            return Err(Error::contract(
                Step::Prop1Case1.label(),
                "low-degree pair present but no (4, n-4) construction applies",
            ));
        }
        // every vertex of the remainder sees at most one triangle vertex
        for u in self.t {
            for x in (g.neighbors(u) & self.rest).iter() {
                for v in self.t {
                    if v == u || g.has_edge(v, x) {
                        continue;
                    }
                    let w = self.other_t(&[u, v]);
                    for y in (g.common_neighbors(x, v, self.rest)).iter() {
                        let r = self.rest.without(x).without(y);
                        let ends = (g.neighbors(w) & r).to_vec();
                        for i in 0..ends.len() {
                            for j in i + 1..ends.len() {
                                if let Some(p) = hamilton_path_between(g, ends[i], ends[j], r) {
                                    trace.push(
                                        Step::Prop1Case1,
                                        &[u, x, v, y],
                                        "four-cycle through two remainder vertices",
                                    );
                                    let mut big = vec![w];
                                    big.extend(p.into_vec());
                                    return checked_pair(g, vec![v, u, x, y], big, Step::Prop1Case1);
                                }
                            }
                        }
                    }
                }
            }
        }
        Err(Error::contract(
            Step::Prop1Case1.label(),
            "no (4, n-4) construction applies",
        ))
    }

    fn other_t(&self, used: &[usize]) -> usize {
        *self.t.iter().find(|v| !used.contains(v)).unwrap()
    }

    /// Remainder `S ∪ T'` with `S` independent (`|S| = |T'| + 1`) and complete to `T'`.
    fn case2(&self, small: usize, s: VertexSet, tt: VertexSet) -> Result<CyclePairCert> {
        let g = self.g;
        let [u, v, w] = self.t;
        let sv = s.to_vec();
        let s0 = sv[0];
        let sp = &sv[1..];
        let tv = tt.to_vec();
        if small == 4 {
            let mut big = Vec::new();
            for (a, b) in sp.iter().zip(&tv) {
                big.extend([*a, *b]);
            }
            return checked_pair(g, vec![u, v, w, s0], big, Step::Prop1Case2);
        }
        // an edge inside T' lets the long cycle pass through w
        let inner = tv
            .iter()
            .find_map(|&a| tv.iter().find(|&&b| b != a && g.has_edge(a, b)).map(|&b| (a, b)));
        if let Some((t1, t2)) = inner {
            let others: Vec<usize> = tv.iter().copied().filter(|&x| x != t1 && x != t2).collect();
            let mut big = vec![w, sp[0], t1, t2, sp[1]];
            for (i, &x) in others.iter().enumerate() {
                big.extend([x, sp[i + 2]]);
            }
            return checked_pair(g, vec![u, v, s0], big, Step::Prop1Case2);
        }
        for z in self.t {
            for &t1 in &tv {
                if !g.has_edge(z, t1) {
                    continue;
                }
                let others: Vec<usize> = tv.iter().copied().filter(|&x| x != t1).collect();
                let mut big = vec![z, t1, sp[0]];
                for (i, &x) in others.iter().enumerate() {
                    big.extend([x, sp[i + 1]]);
                }
                let mut tri: Vec<usize> = self.t.iter().copied().filter(|&x| x != z).collect();
                tri.push(s0);
                return checked_pair(g, tri, big, Step::Prop1Case2);
            }
        }
        Err(Error::contract(
            Step::Prop1Case2.label(),
            "no edge inside the m-side and none from it to the triangle",
        ))
    }

    fn case3(&self, small: usize, c: usize, p: VertexSet, q: VertexSet) -> Result<CyclePairCert> {
        let g = self.g;
        let (p, q) = if p.len() >= q.len() { (p, q) } else { (q, p) };
        let (pv, qv) = (p.to_vec(), q.to_vec());
        let [u, v, w] = self.t;
        if g.order() == 6 {
            let (x, z) = (pv[0], qv[0]);
            for (a, b) in [(v, w), (u, w), (u, v)] {
                if !g.has_edge(c, a) || !g.has_edge(c, b) {
                    continue;
                }
                let third = self.other_t(&[a, b]);
                for (near, far) in [(x, z), (z, x)] {
                    let first = vec![a, near, c];
                    let second = vec![third, b, far];
                    if let Ok(cert) = checked_pair(g, first, second, Step::Prop1Case3) {
                        return Ok(cert);
                    }
                }
            }
            return Err(Error::contract(
                Step::Prop1Case3.label(),
                "apex sees fewer than two triangle vertices",
            ));
        }
        let tail = |skip: &[usize]| -> Vec<usize> {
            let mut big = vec![w];
            big.extend(qv.iter().filter(|x| !skip.contains(x)));
            big.push(c);
            big.extend(pv.iter().filter(|x| !skip.contains(x)));
            big
        };
        if small == 3 {
            let a = pv[0];
            return checked_pair(g, vec![u, v, a], tail(&[a]), Step::Prop1Case3);
        }
        if qv.len() >= 2 {
            let (a, b) = (pv[0], qv[0]);
            checked_pair(g, vec![u, a, v, b], tail(&[a, b]), Step::Prop1Case3)
        } else {
            let (a1, a2) = (pv[0], pv[1]);
            checked_pair(g, vec![u, a1, v, a2], tail(&[a1, a2]), Step::Prop1Case3)
        }
    }
}

/// Some cyclic order of the four vertices that is a cycle of `g`.
fn four_cycle(g: &Graph, [a, b, c, d]: [usize; 4]) -> Option<Vec<usize>> {
    [[a, b, c, d], [a, b, d, c], [a, c, b, d]]
        .into_iter()
        .find(|o| (0..4).all(|i| g.has_edge(o[i], o[(i + 1) % 4])))
        .map(|o| o.to_vec())
}
