use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Cycle, CyclePairCert, Graph, VertexSet};
use crate::hamilton::find_cycle_of_length;

/// Exact reference answer: enumerates the vertex sets of all `n1`-cycles
/// (each cycle once, rooted at its lowest vertex) and searches the
/// complement of each for an `n2`-cycle.
pub fn brute_force_oracle(g: &Graph, n1: usize, n2: usize) -> Result<Option<CyclePairCert>> {
    if n1 < 3 || n2 < 3 || n1 + n2 > g.order() {
        return Err(Error::input(format!(
            "lengths ({n1},{n2}) must be >= 3 with sum at most {}",
            g.order()
        )));
    }
    let mut e = Enumerator {
        g,
        n1,
        n2,
        seen: HashSet::new(),
        path: Vec::with_capacity(n1),
        found: None,
    };
    for root in 0..g.order() {
        let pool = g.vertices() - VertexSet::full(root + 1);
        if pool.len() + 1 < n1 {
            break;
        }
        e.path.clear();
        e.path.push(root);
        if e.grow(root, pool) {
            return Ok(e.found);
        }
    }
    Ok(None)
}

struct Enumerator<'a> {
    g: &'a Graph,
    n1: usize,
    n2: usize,
    seen: HashSet<u64>,
    path: Vec<usize>,
    found: Option<CyclePairCert>,
}

impl Enumerator<'_> {
    fn grow(&mut self, cur: usize, pool: VertexSet) -> bool {
        let root = self.path[0];
        if self.path.len() == self.n1 {
            // one orientation per cycle: second vertex below the last
            if !self.g.has_edge(cur, root) || self.path[1] > cur {
                return false;
            }
            let set: VertexSet = self.path.iter().collect();
            if !self.seen.insert(set.bits()) {
                return false;
            }
            let rest = self.g.vertices() - set;
            let c2 = find_cycle_of_length(self.g, self.n2, Some(rest)).expect("complement holds at least n2 vertices");
            if let Some(c2) = c2 {
                let c1 = Cycle::from_vec_unchecked(self.path.clone());
                self.found = Some(CyclePairCert::new(c1, c2));
                return true;
            }
            return false;
        }
        for next in (self.g.neighbors(cur) & pool).iter() {
            self.path.push(next);
            if self.grow(next, pool.without(next)) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, validate_cert};

    #[test]
    fn oracle_examples() {
        let k6 = Graph::complete(6).unwrap();
        let c = brute_force_oracle(&k6, 3, 3).unwrap().unwrap();
        assert!(validate_cert(&k6, &c, 3, 3));

        let e: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let k33 = build_graph(6, &e).unwrap();
        assert!(brute_force_oracle(&k33, 3, 3).unwrap().is_none());

        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.extend((0..5).map(|i| (6 + i, 6 + (i + 1) % 5)));
        let g = build_graph(11, &e).unwrap();
        let c = brute_force_oracle(&g, 6, 5).unwrap().unwrap();
        assert!(validate_cert(&g, &c, 6, 5));
        let c = brute_force_oracle(&g, 5, 6).unwrap().unwrap();
        assert!(validate_cert(&g, &c, 5, 6));
        assert!(brute_force_oracle(&g, 3, 8).unwrap().is_none());
        assert!(brute_force_oracle(&g, 2, 9).is_err());
    }
}
