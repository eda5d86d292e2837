//! Cactus validation and the cycle-incidence tree of a bridgeless cactus.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::blocks::{block_cut_tree, Block, BlockCutTree, BlockKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// A connected graph certified to be a cactus, plus the structure the
/// counting and rewriting code keeps asking about.
#[derive(Debug, Clone, Serialize)]
pub struct CactusProfile {
    pub graph: Graph,
    pub tree: BlockCutTree,
    /// Cycle rank, equal to the number of cycle blocks.
    pub k: usize,
    pub bridges: Vec<Edge>,
    /// Block indices of all cycles, in block order.
    pub cycles: Vec<usize>,
    pub end_cycles: Vec<usize>,
    pub interior_cycles: Vec<usize>,
    /// Vertices lying on at least two cycles.
    pub intersection_vertices: Vec<Vertex>,
}

impl CactusProfile {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn block(&self, index: usize) -> &Block {
        &self.tree.blocks[index]
    }

    pub fn cycle_blocks(&self) -> impl Iterator<Item = &Block> + '_ {
        self.cycles.iter().map(move |&i| &self.tree.blocks[i])
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges.is_empty()
    }

    /// Cycle blocks through `v`.
    pub fn cycles_at(&self, v: Vertex) -> Vec<usize> {
        self.tree
            .blocks_of(v)
            .iter()
            .copied()
            .filter(|&b| self.tree.blocks[b].is_cycle())
            .collect()
    }

    pub fn is_intersection_vertex(&self, v: Vertex) -> bool {
        self.intersection_vertices.binary_search(&v).is_ok()
    }

    /// Whether the cycle block `index` has at most one vertex of degree > 2.
    pub fn is_end_cycle(&self, index: usize) -> bool {
        self.end_cycles.contains(&index)
    }

    /// Every cycle is a triangle with at most one vertex of degree > 2.
    pub fn all_cycles_end_triangles(&self) -> bool {
        self.cycles
            .iter()
            .all(|&c| self.tree.blocks[c].len() == 3 && self.is_end_cycle(c))
    }

    /// Bridgeless with at least one cycle and a path-shaped cycle-incidence tree.
    pub fn is_cactus_chain(&self) -> bool {
        self.k >= 1 && cycle_incidence_graph(self).map(|t| t.is_path()).unwrap_or(false)
    }
}

/// Checks the cactus condition: every block is a single edge or a cycle.
pub fn validate_cactus(g: &Graph) -> Result<CactusProfile> {
    let tree = block_cut_tree(g)?;
    if let Some(bad) = tree.blocks.iter().find(|b| b.kind == BlockKind::Dense) {
        return Err(Error::NotCactus { block: bad.vertices.clone() });
    }
    let cycles: Vec<usize> = (0..tree.blocks.len()).filter(|&i| tree.blocks[i].is_cycle()).collect();
    let k = cycles.len();
    debug_assert_eq!(g.m() + 1, g.n() + k);

    let mut bridges: Vec<Edge> = tree
        .blocks
        .iter()
        .filter(|b| b.kind == BlockKind::BridgeEdge)
        .map(|b| b.edges[0])
        .collect();
    bridges.sort_unstable();
    let (end_cycles, interior_cycles): (Vec<usize>, Vec<usize>) = cycles.iter().partition(|&&c| {
        tree.blocks[c].vertices.iter().filter(|&&v| g.degree(v) > 2).count() <= 1
    });
    let intersection_vertices: Vec<Vertex> = (0..g.n())
        .filter(|&v| tree.blocks_of(v).iter().filter(|&&b| tree.blocks[b].is_cycle()).count() >= 2)
        .collect();

    Ok(CactusProfile {
        graph: g.clone(),
        tree,
        k,
        bridges,
        cycles,
        end_cycles,
        interior_cycles,
        intersection_vertices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IncidenceNode {
    /// A cycle, by block index.
    Cycle(usize),
    Vertex(Vertex),
}

/// Bipartite tree on intersection vertices and cycles of a bridgeless cactus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleIncidenceGraph {
    pub nodes: Vec<IncidenceNode>,
    /// `(cycle block index, intersection vertex)` pairs, sorted.
    pub edges: Vec<(usize, Vertex)>,
    #[serde(skip)]
    adjacency: BTreeMap<IncidenceNode, Vec<IncidenceNode>>,
}

impl CycleIncidenceGraph {
    pub fn neighbors(&self, node: IncidenceNode) -> &[IncidenceNode] {
        self.adjacency.get(&node).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, node: IncidenceNode) -> usize {
        self.neighbors(node).len()
    }

    pub fn leaves(&self) -> Vec<IncidenceNode> {
        self.nodes.iter().copied().filter(|&x| self.degree(x) <= 1).collect()
    }

    /// A single node counts as a path.
    pub fn is_path(&self) -> bool {
        !self.nodes.is_empty() && self.nodes.iter().all(|&x| self.degree(x) <= 2)
    }

    /// Nodes with degree at least three.
    pub fn branch_nodes(&self) -> Vec<IncidenceNode> {
        self.nodes.iter().copied().filter(|&x| self.degree(x) >= 3).collect()
    }

    /// Sum of degrees over nodes of degree at least three.
    pub fn branch_degree_sum(&self) -> usize {
        self.branch_nodes().iter().map(|&x| self.degree(x)).sum()
    }

    /// Connected components after deleting `removed`, each listed from the
    /// neighbour of `removed` it hangs off (first element).
    pub fn components_without(&self, removed: IncidenceNode) -> Vec<Vec<IncidenceNode>> {
        let mut out = Vec::new();
        for &start in self.neighbors(removed) {
            let mut comp = vec![start];
            let mut stack = vec![(start, removed)];
            while let Some((x, from)) = stack.pop() {
                for &y in self.neighbors(x) {
                    if y != from {
                        comp.push(y);
                        stack.push((y, x));
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Builds the cycle-incidence tree. Fails on a cactus with bridges.
pub fn cycle_incidence_graph(p: &CactusProfile) -> Result<CycleIncidenceGraph> {
    if !p.is_bridgeless() {
        return Err(Error::HasBridges);
    }
    let mut nodes: Vec<IncidenceNode> = p.cycles.iter().map(|&c| IncidenceNode::Cycle(c)).collect();
    nodes.extend(p.intersection_vertices.iter().map(|&v| IncidenceNode::Vertex(v)));
    let mut adjacency: BTreeMap<IncidenceNode, Vec<IncidenceNode>> =
        nodes.iter().map(|&x| (x, Vec::new())).collect();
    let mut edges = Vec::new();
    for &v in &p.intersection_vertices {
        for c in p.cycles_at(v) {
            edges.push((c, v));
            adjacency.get_mut(&IncidenceNode::Cycle(c)).unwrap().push(IncidenceNode::Vertex(v));
            adjacency.get_mut(&IncidenceNode::Vertex(v)).unwrap().push(IncidenceNode::Cycle(c));
        }
    }
    edges.sort_unstable();
    for list in adjacency.values_mut() {
        list.sort_unstable();
    }
    Ok(CycleIncidenceGraph { nodes, edges, adjacency })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[Edge]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn k4_is_not_a_cactus() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(validate_cactus(&k4), Err(Error::NotCactus { .. })));
    }

    #[test]
    fn tree_profile() {
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let p = validate_cactus(&star).unwrap();
        assert_eq!(p.k, 0);
        assert!(p.cycles.is_empty());
        assert_eq!(p.bridges.len(), 3);
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(validate_cactus(&g(4, &[(0, 1), (2, 3)])).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn three_triangles_at_a_hub_form_a_star() {
        let fg = g(7, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)]);
        let p = validate_cactus(&fg).unwrap();
        assert_eq!(p.k, 3);
        assert_eq!(p.end_cycles.len(), 3);
        assert_eq!(p.intersection_vertices, vec![0]);
        let t = cycle_incidence_graph(&p).unwrap();
        assert_eq!(t.degree(IncidenceNode::Vertex(0)), 3);
        assert!(!t.is_path());
        assert_eq!(t.branch_degree_sum(), 3);
        assert!(t.leaves().iter().all(|x| matches!(x, IncidenceNode::Cycle(_))));
    }

    #[test]
    fn single_cycle_is_a_chain() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let p = validate_cactus(&c4).unwrap();
        let t = cycle_incidence_graph(&p).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.edges.is_empty());
        assert!(p.is_cactus_chain());
    }

    #[test]
    fn bridges_block_the_incidence_graph() {
        let paw = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let p = validate_cactus(&paw).unwrap();
        assert_eq!(cycle_incidence_graph(&p), Err(Error::HasBridges));
        assert!(!p.is_cactus_chain());
    }
}
