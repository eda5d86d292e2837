//! Wiener index and subtree number.

use rayon::prelude::*;
use serde::Serialize;

use crate::cactus::validate_cactus;
use crate::count::ExactCount;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::paths::{pn_bruteforce, pn_cactus, WorkBudget};

/// Sum of distances over unordered vertex pairs.
pub fn wiener(g: &Graph) -> Result<ExactCount> {
    g.require_connected()?;
    let total: u64 = (0..g.n())
        .into_par_iter()
        .map(|s| {
            g.distances_from(s)
                .into_iter()
                .skip(s + 1)
                .map(|d| d.expect("connected") as u64)
                .sum::<u64>()
        })
        .sum();
    Ok(ExactCount::from(total))
}

struct TreeGrower<'g> {
    g: &'g Graph,
    index: std::collections::HashMap<Edge, usize>,
    in_tree: Vec<bool>,
    excluded: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl TreeGrower<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Trees containing the current tree, built from `frontier` edges
    /// (each with exactly one end in the tree) plus edges found later.
    fn grow(&mut self, root: usize, frontier: &mut Vec<(usize, Vertex)>) -> Result<u64> {
        self.tick()?;
        // drop edges whose outer end has since joined the tree
        let Some(pos) = frontier.iter().position(|&(e, w)| !self.excluded[e] && !self.in_tree[w]) else {
            return Ok(1);
        };
        let (e, w) = frontier.remove(pos);

        self.excluded[e] = true;
        let without = self.grow(root, frontier);
        self.excluded[e] = false;
        let without = without?;

        self.in_tree[w] = true;
        let mut next = frontier.clone();
        for &x in self.g.neighbors(w) {
            let f = self.index[&edge(w, x)];
            if f > root && !self.in_tree[x] && !self.excluded[f] {
                next.push((f, x));
            }
        }
        let with = self.grow(root, &mut next);
        self.in_tree[w] = false;
        frontier.insert(pos, (e, w));
        Ok(without + with?)
    }
}

/// Non-empty subtrees (connected acyclic subgraphs), single vertices
/// included. Each edge-bearing tree is generated once, from its
/// lowest-indexed edge, by branching on frontier edges.
pub fn subtree_number(g: &Graph, budget: WorkBudget) -> Result<ExactCount> {
    let index: std::collections::HashMap<Edge, usize> =
        g.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut grower = TreeGrower {
        g,
        index,
        in_tree: vec![false; g.n()],
        excluded: vec![false; g.m()],
        steps: 0,
        budget: budget.0,
    };
    let mut total = g.n() as u64;
    for (root, &(a, b)) in g.edges().iter().enumerate() {
        grower.in_tree[a] = true;
        grower.in_tree[b] = true;
        let mut frontier = Vec::new();
        for (inner, outer) in [(a, b), (b, a)] {
            for &x in g.neighbors(inner) {
                let f = grower.index[&edge(inner, x)];
                if x != outer && f > root {
                    frontier.push((f, x));
                }
            }
        }
        let r = grower.grow(root, &mut frontier);
        grower.in_tree[a] = false;
        grower.in_tree[b] = false;
        total += r?;
    }
    Ok(ExactCount::from(total))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTriple {
    pub pn: ExactCount,
    pub wiener: ExactCount,
    pub subtrees: ExactCount,
}

/// pn (fast counter for cacti, exhaustive otherwise), Wiener index and
/// subtree number of one connected graph.
pub fn invariant_triple(g: &Graph, budget: WorkBudget) -> Result<InvariantTriple> {
    let wiener = wiener(g)?;
    let pn = match validate_cactus(g) {
        Ok(p) => pn_cactus(&p),
        Err(_) => pn_bruteforce(g, budget)?,
    };
    Ok(InvariantTriple { pn, wiener, subtrees: subtree_number(g, budget)? })
}
