//! Block decomposition (biconnected components), bridges and the block-cut tree.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{edge, Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    BridgeEdge,
    Cycle,
    /// A 2-connected block with a chord; never present in a cactus.
    Dense,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Cyclic order for cycles (starting at the smallest vertex, then its
    /// smaller neighbour), the two endpoints for bridges, sorted otherwise.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Block {
    fn from_edges(mut edges: Vec<Edge>) -> Block {
        edges.sort_unstable();
        let vset: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let vertices: Vec<Vertex> = vset.into_iter().collect();
        let kind = if edges.len() == 1 {
            BlockKind::BridgeEdge
        } else if edges.len() == vertices.len() {
            BlockKind::Cycle
        } else {
            BlockKind::Dense
        };
        let vertices = if kind == BlockKind::Cycle {
            cyclic_order(&vertices, &edges)
        } else {
            vertices
        };
        Block { kind, vertices, edges }
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == BlockKind::Cycle
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&edge(u, v)).is_ok()
    }

    /// The two neighbours of `v` along a cycle block.
    pub fn cycle_neighbors(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        if !self.is_cycle() {
            return None;
        }
        let len = self.vertices.len();
        let i = self.vertices.iter().position(|&x| x == v)?;
        Some((self.vertices[(i + len - 1) % len], self.vertices[(i + 1) % len]))
    }
}

fn cyclic_order(vertices: &[Vertex], edges: &[Edge]) -> Vec<Vertex> {
    let nbrs = |x: Vertex| -> Vec<Vertex> {
        let mut out: Vec<Vertex> = edges
            .iter()
            .filter_map(|&(a, b)| if a == x { Some(b) } else if b == x { Some(a) } else { None })
            .collect();
        out.sort_unstable();
        out
    };
    let start = vertices[0];
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nbrs(start)[0];
    while cur != start {
        order.push(cur);
        let next = nbrs(cur).into_iter().find(|&y| y != prev).unwrap();
        prev = cur;
        cur = next;
    }
    order
}

/// A node of the block-cut tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BcNode {
    Block(usize),
    Cut(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// `(block index, cut vertex)` pairs, sorted.
    pub incidence: Vec<(usize, Vertex)>,
    #[serde(skip)]
    vertex_blocks: Vec<Vec<usize>>,
}

impl BlockCutTree {
    /// Blocks containing `v`, by index.
    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.vertex_blocks[v]
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.vertex_blocks[v].len() >= 2
    }

    /// The tree node standing for `v`: its cut node, or the single block that
    /// contains it. `None` only for an isolated vertex.
    pub fn node_of(&self, v: Vertex) -> Option<BcNode> {
        match self.vertex_blocks[v].as_slice() {
            [] => None,
            [b] => Some(BcNode::Block(*b)),
            _ => Some(BcNode::Cut(v)),
        }
    }

    /// Dense node numbering: blocks first, then cut vertices in sorted order.
    pub fn node_index(&self, node: BcNode) -> usize {
        match node {
            BcNode::Block(b) => b,
            BcNode::Cut(v) => {
                self.blocks.len() + self.cut_vertices.binary_search(&v).expect("not a cut vertex")
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.blocks.len() + self.cut_vertices.len()
    }

    pub fn node_at(&self, index: usize) -> BcNode {
        if index < self.blocks.len() {
            BcNode::Block(index)
        } else {
            BcNode::Cut(self.cut_vertices[index - self.blocks.len()])
        }
    }

    /// Adjacency lists over dense node indices.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(b, v) in &self.incidence {
            let c = self.node_index(BcNode::Cut(v));
            adj[b].push(c);
            adj[c].push(b);
        }
        adj
    }
}

/// Biconnected components via one iterative depth-first traversal with
/// low-link values. Requires a connected graph.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    g.require_connected()?;
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut raw_blocks: Vec<Vec<Edge>> = Vec::new();
    let mut timer = 0;

    if n > 0 {
        let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i < g.degree(v) {
                top.1 += 1;
                let w = g.neighbors(v)[i];
                if disc[w] == UNSEEN {
                    parent[w] = v;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(edge(e.0, e.1));
                            if e == (p, v) {
                                break;
                            }
                        }
                        raw_blocks.push(block);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks.into_iter().map(Block::from_edges).collect();
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));

    let mut vertex_blocks = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            vertex_blocks[v].push(i);
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| vertex_blocks[v].len() >= 2).collect();
    let mut incidence: Vec<(usize, Vertex)> = cut_vertices
        .iter()
        .flat_map(|&v| vertex_blocks[v].iter().map(move |&b| (b, v)))
        .collect();
    incidence.sort_unstable();

    Ok(BlockCutTree { blocks, cut_vertices, incidence, vertex_blocks })
}

/// Edges whose removal disconnects `g`, in lexicographic order.
pub fn find_bridges(g: &Graph) -> Result<Vec<Edge>> {
    let tree = block_cut_tree(g)?;
    let mut bridges: Vec<Edge> = tree
        .blocks
        .iter()
        .filter(|b| b.kind == BlockKind::BridgeEdge)
        .map(|b| b.edges[0])
        .collect();
    bridges.sort_unstable();
    Ok(bridges)
}
