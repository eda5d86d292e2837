//! Simple-path counting: an exhaustive oracle for any graph and the
//! `2^c(x,y)` counter for cacti.

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::BcNode;
use crate::cactus::CactusProfile;
use crate::count::ExactCount;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Cap on the number of path extensions the exhaustive counters may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget(pub u64);

impl WorkBudget {
    pub const DEFAULT_STEPS: u64 = 1_000_000_000;

    pub fn unlimited() -> Self {
        WorkBudget(u64::MAX)
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget(Self::DEFAULT_STEPS)
    }
}

struct Walker<'g> {
    g: &'g Graph,
    on_path: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl<'g> Walker<'g> {
    fn new(g: &'g Graph, budget: WorkBudget) -> Self {
        Walker { g, on_path: vec![false; g.n()], steps: 0, budget: budget.0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Paths starting at `start` whose far end is greater than `start`.
    fn count_from(&mut self, start: Vertex) -> Result<u64> {
        self.on_path[start] = true;
        let r = self.extend(start, start);
        self.on_path[start] = false;
        r
    }

    fn extend(&mut self, start: Vertex, at: Vertex) -> Result<u64> {
        let g = self.g;
        let mut found = 0;
        for &next in g.neighbors(at) {
            if self.on_path[next] {
                continue;
            }
            self.tick()?;
            if next > start {
                found += 1;
            }
            self.on_path[next] = true;
            let r = self.extend(start, next);
            self.on_path[next] = false;
            found += r?;
        }
        Ok(found)
    }

    fn count_between(&mut self, at: Vertex, target: Vertex) -> Result<u64> {
        if at == target {
            return Ok(1);
        }
        let g = self.g;
        let mut found = 0;
        for &next in g.neighbors(at) {
            if self.on_path[next] {
                continue;
            }
            self.tick()?;
            self.on_path[next] = true;
            let r = self.count_between(next, target);
            self.on_path[next] = false;
            found += r?;
        }
        Ok(found)
    }
}

/// Number of simple paths in `g`, the `n` length-0 paths included and each
/// longer path counted once. Works on disconnected graphs.
pub fn pn_bruteforce(g: &Graph, budget: WorkBudget) -> Result<ExactCount> {
    let mut walker = Walker::new(g, budget);
    let mut total = g.n() as u64;
    for s in 0..g.n() {
        total += walker.count_from(s)?;
    }
    Ok(ExactCount::from(total))
}

/// Number of simple `x`–`y` paths.
pub fn pn_pair_bruteforce(g: &Graph, x: Vertex, y: Vertex, budget: WorkBudget) -> Result<ExactCount> {
    check_pair(g.n(), x, y)?;
    let mut walker = Walker::new(g, budget);
    walker.on_path[x] = true;
    Ok(ExactCount::from(walker.count_between(x, y)?))
}

fn check_pair(n: usize, x: Vertex, y: Vertex) -> Result<()> {
    if x >= n || y >= n {
        return Err(Error::InvalidParameter(format!("vertex out of range for n = {n}")));
    }
    if x == y {
        return Err(Error::InvalidParameter("endpoints must differ".into()));
    }
    Ok(())
}

/// Number of cycle blocks crossed between two vertices of a cactus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCycleCount {
    pub x: Vertex,
    pub y: Vertex,
    pub c: usize,
}

/// Cycle blocks met on the block-cut-tree walk from `source`'s node, indexed
/// by vertex. A cut vertex is its own node, so blocks that merely touch it
/// are not counted.
fn cycle_counts_from(p: &CactusProfile, adj: &[Vec<usize>], source: Vertex) -> Vec<usize> {
    let tree = &p.tree;
    let n = p.n();
    let mut out = vec![0; n];
    let Some(start) = tree.node_of(source) else {
        return out;
    };
    let weight = |idx: usize| -> usize {
        match tree.node_at(idx) {
            BcNode::Block(b) if tree.blocks[b].is_cycle() => 1,
            _ => 0,
        }
    };
    let start = tree.node_index(start);
    let mut at_node = vec![usize::MAX; tree.node_count()];
    at_node[start] = weight(start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if at_node[y] == usize::MAX {
                at_node[y] = at_node[x] + weight(y);
                stack.push(y);
            }
        }
    }
    for (v, slot) in out.iter_mut().enumerate() {
        if let Some(node) = tree.node_of(v) {
            *slot = at_node[tree.node_index(node)];
        }
    }
    out
}

pub fn cycle_count_between(p: &CactusProfile, x: Vertex, y: Vertex) -> Result<PairCycleCount> {
    check_pair(p.n(), x, y)?;
    let adj = p.tree.tree_adjacency();
    let c = cycle_counts_from(p, &adj, x)[y];
    Ok(PairCycleCount { x, y, c })
}

/// Number of `x`–`y` paths in a cactus: each crossed cycle offers two ways.
pub fn pn_pair_cactus(p: &CactusProfile, x: Vertex, y: Vertex) -> Result<ExactCount> {
    Ok(ExactCount::pow2(cycle_count_between(p, x, y)?.c))
}

/// `hist[c]` = number of unordered vertex pairs separated by `c` cycles.
pub fn pair_cycle_histogram(p: &CactusProfile) -> Vec<u64> {
    let n = p.n();
    let adj = p.tree.tree_adjacency();
    let per_source: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let counts = cycle_counts_from(p, &adj, x);
            let mut hist = vec![0u64; p.k + 1];
            for &c in &counts[x + 1..] {
                hist[c] += 1;
            }
            hist
        })
        .collect();
    let mut hist = vec![0u64; p.k + 1];
    for h in per_source {
        for (acc, v) in hist.iter_mut().zip(h) {
            *acc += v;
        }
    }
    hist
}

/// Subpath number of a cactus: `n + Σ 2^c(x,y)` over unordered pairs.
pub fn pn_cactus(p: &CactusProfile) -> ExactCount {
    pair_cycle_histogram(p)
        .into_iter()
        .enumerate()
        .fold(ExactCount::from(p.n()), |acc, (c, pairs)| {
            acc + ExactCount::from(pairs) * ExactCount::pow2(c)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cactus::validate_cactus;
    use crate::graph::Edge;

    fn g(n: usize, e: &[Edge]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    const B: WorkBudget = WorkBudget(1_000_000);

    #[test]
    fn bruteforce_examples() {
        assert_eq!(pn_bruteforce(&cycle(5), B).unwrap(), 25u64);
        assert_eq!(pn_bruteforce(&g(4, &[(0, 1), (1, 2), (2, 3)]), B).unwrap(), 10u64);
        assert_eq!(pn_bruteforce(&complete(4), B).unwrap(), 34u64);
        assert_eq!(pn_bruteforce(&Graph::empty(1), B).unwrap(), 1u64);
        // two disjoint edges: 4 trivial + 2
        assert_eq!(pn_bruteforce(&g(4, &[(0, 1), (2, 3)]), B).unwrap(), 6u64);
    }

    #[test]
    fn pair_bruteforce_examples() {
        let tree = g(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        for x in 0..5 {
            for y in 0..5 {
                if x != y {
                    assert_eq!(pn_pair_bruteforce(&tree, x, y, B).unwrap(), 1u64);
                }
            }
        }
        assert_eq!(pn_pair_bruteforce(&cycle(6), 0, 3, B).unwrap(), 2u64);
        assert_eq!(pn_pair_bruteforce(&complete(4), 1, 2, B).unwrap(), 5u64);
        assert!(pn_pair_bruteforce(&cycle(6), 2, 2, B).is_err());
        assert_eq!(pn_pair_bruteforce(&g(4, &[(0, 1), (2, 3)]), 0, 3, B).unwrap(), 0u64);
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            pn_bruteforce(&complete(7), WorkBudget(100)),
            Err(Error::BudgetExceeded { budget: 100 })
        );
    }

    #[test]
    fn cycle_counts_respect_cut_vertices() {
        let bowtie = g(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
        let p = validate_cactus(&bowtie).unwrap();
        assert_eq!(cycle_count_between(&p, 0, 3).unwrap().c, 1);
        assert_eq!(cycle_count_between(&p, 1, 3).unwrap().c, 2);
        assert_eq!(cycle_count_between(&p, 1, 2).unwrap().c, 1);
        assert_eq!(pn_pair_cactus(&p, 1, 4).unwrap(), 4u64);
        assert_eq!(pn_cactus(&p), pn_bruteforce(&bowtie, B).unwrap());
    }

    #[test]
    fn tree_pairs_cross_no_cycle() {
        let tree = g(4, &[(0, 1), (1, 2), (1, 3)]);
        let p = validate_cactus(&tree).unwrap();
        assert_eq!(cycle_count_between(&p, 0, 3).unwrap().c, 0);
        assert_eq!(pn_cactus(&p), 10u64);
    }

    #[test]
    fn cycle_formula_for_fast_counter() {
        for n in 3..=12 {
            let p = validate_cactus(&cycle(n)).unwrap();
            assert_eq!(pn_cactus(&p), (n * n) as u64);
        }
        assert_eq!(pn_cactus(&validate_cactus(&Graph::empty(1)).unwrap()), 1u64);
    }
}
