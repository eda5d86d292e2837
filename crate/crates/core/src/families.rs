//! Deterministic constructors for the named graph families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

fn param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(param("path needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(param("cycle needs n >= 3"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Star with centre 0 and `n - 1` leaves.
pub fn make_star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(param("star needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|i| (0, i)))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(param("complete graph needs n >= 1"));
    }
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Vertex ids of one cycle in a chain, in cyclic order starting at the
/// vertex shared with the previous cycle.
fn chain_layout(lengths: &[usize]) -> Result<(usize, Vec<Vec<Vertex>>)> {
    if lengths.is_empty() {
        return Err(param("cycle chain needs at least one cycle"));
    }
    if let Some(&bad) = lengths.iter().find(|&&l| l < 3) {
        return Err(param(format!("cycle length {bad} < 3")));
    }
    let mut cycles: Vec<Vec<Vertex>> = Vec::with_capacity(lengths.len());
    let mut next = 0;
    for (i, &len) in lengths.iter().enumerate() {
        let mut verts = Vec::with_capacity(len);
        if i == 0 {
            verts.extend(0..len);
            next = len;
        } else {
            // The next cycle hangs off the vertex opposite to where the
            // previous one was entered.
            let prev = &cycles[i - 1];
            verts.push(prev[prev.len() / 2]);
            verts.extend(next..next + len - 1);
            next += len - 1;
        }
        cycles.push(verts);
    }
    Ok((next, cycles))
}

fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = Edge> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// Cycles of the given lengths, consecutive ones sharing one vertex.
pub fn make_cycle_chain(lengths: &[usize]) -> Result<Graph> {
    let (n, cycles) = chain_layout(lengths)?;
    Graph::new(n, cycles.iter().flat_map(|c| cycle_edges(c)))
}

/// End-cycle lengths of the pseudo triangle chain, larger first.
pub fn ptc_end_lengths(n: usize, k: usize) -> Result<(usize, usize)> {
    if k < 2 || n < 2 * k + 1 {
        return Err(param(format!("PTC({n},{k}) needs k >= 2 and n >= 2k+1")));
    }
    let total = n + 5 - 2 * k;
    Ok((total.div_ceil(2), total / 2))
}

/// Cactus chain `[n1, 3, ..., 3, n2]` with `n1 >= n2 >= n1 - 1`.
pub fn make_ptc(n: usize, k: usize) -> Result<Graph> {
    let (n1, n2) = ptc_end_lengths(n, k)?;
    let mut lengths = vec![n1];
    lengths.extend(std::iter::repeat(3).take(k - 2));
    lengths.push(n2);
    make_cycle_chain(&lengths)
}

/// `k` triangles through hub 0 plus `n - 2k - 1` pendant edges at the hub.
pub fn make_pfg(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n < 2 * k + 1 {
        return Err(param(format!("PFG({n},{k}) needs k >= 1 and n >= 2k+1")));
    }
    let mut edges = Vec::new();
    for t in 0..k {
        let (a, b) = (2 * t + 1, 2 * t + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    edges.extend((2 * k + 1..n).map(|p| (0, p)));
    Graph::new(n, edges)
}

/// Two triangle chains of `ceil(k/2)` and `floor(k/2)` triangles joined by a
/// path with `n - 2k - 2` interior vertices. On each side the path leaves
/// from a degree-2 vertex of an end triangle.
pub fn make_bsg(n: usize, k: usize) -> Result<Graph> {
    if k < 2 || n < 2 * k + 2 {
        return Err(param(format!("BSG({n},{k}) needs k >= 2 and n >= 2k+2")));
    }
    let left = k.div_ceil(2);
    let right = k / 2;
    let (left_n, left_cycles) = chain_layout(&vec![3; left])?;
    let (right_n, right_cycles) = chain_layout(&vec![3; right])?;

    let mut edges: Vec<Edge> = left_cycles.iter().flat_map(|c| cycle_edges(c)).collect();
    edges.extend(
        right_cycles
            .iter()
            .flat_map(|c| cycle_edges(c))
            .map(|(u, v)| (u + left_n, v + left_n)),
    );
    // The last vertex of the last triangle is never shared with another
    // triangle, so it has degree 2 inside its chain.
    let left_anchor = *left_cycles.last().unwrap().last().unwrap();
    let right_anchor = right_cycles.last().unwrap().last().unwrap() + left_n;

    let interior = n - 2 * k - 2;
    let mut prev = left_anchor;
    for i in 0..interior {
        let v = left_n + right_n + i;
        edges.push((prev, v));
        prev = v;
    }
    edges.push((prev, right_anchor));
    Graph::new(n, edges)
}

/// A tree on `tree_n` vertices plus one pendant triangle per entry of
/// `attach`; triangle vertices are numbered from `tree_n` upwards.
pub fn make_end_triangle_cactus(tree_n: usize, tree_edges: &[Edge], attach: &[Vertex]) -> Result<Graph> {
    if tree_n == 0 {
        return Err(param("tree needs at least one vertex"));
    }
    let tree = Graph::new(tree_n, tree_edges.iter().copied())?;
    if tree.m() + 1 != tree_n || !tree.is_connected() {
        return Err(param("tree edges do not form a spanning tree"));
    }
    if let Some(&bad) = attach.iter().find(|&&a| a >= tree_n) {
        return Err(param(format!("attachment vertex {bad} outside the tree")));
    }
    let n = tree_n + 2 * attach.len();
    let mut edges = tree_edges.to_vec();
    for (i, &a) in attach.iter().enumerate() {
        let (x, y) = (tree_n + 2 * i, tree_n + 2 * i + 1);
        edges.extend([(a, x), (a, y), (x, y)]);
    }
    Graph::new(n, edges)
}

/// A named family member, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Complete { n: usize },
    CycleChain { lengths: Vec<usize> },
    Ptc { n: usize, k: usize },
    Pfg { n: usize, k: usize },
    Bsg { n: usize, k: usize },
    EndTriangleCactus { tree_n: usize, tree_edges: Vec<Edge>, attach: Vec<Vertex> },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Path { n } => make_path(*n),
            FamilySpec::Cycle { n } => make_cycle(*n),
            FamilySpec::Star { n } => make_star(*n),
            FamilySpec::Complete { n } => make_complete(*n),
            FamilySpec::CycleChain { lengths } => make_cycle_chain(lengths),
            FamilySpec::Ptc { n, k } => make_ptc(*n, *k),
            FamilySpec::Pfg { n, k } => make_pfg(*n, *k),
            FamilySpec::Bsg { n, k } => make_bsg(*n, *k),
            FamilySpec::EndTriangleCactus { tree_n, tree_edges, attach } => {
                make_end_triangle_cactus(*tree_n, tree_edges, attach)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "P_{n}"),
            FamilySpec::Cycle { n } => write!(f, "C_{n}"),
            FamilySpec::Star { n } => write!(f, "S_{n}"),
            FamilySpec::Complete { n } => write!(f, "K_{n}"),
            FamilySpec::CycleChain { lengths } => write!(f, "chain{lengths:?}"),
            FamilySpec::Ptc { n, k } => write!(f, "PTC({n},{k})"),
            FamilySpec::Pfg { n, k } => write!(f, "PFG({n},{k})"),
            FamilySpec::Bsg { n, k } => write!(f, "BSG({n},{k})"),
            FamilySpec::EndTriangleCactus { tree_n, attach, .. } => {
                write!(f, "end-triangle cactus on a {tree_n}-vertex tree, triangles at {attach:?}")
            }
        }
    }
}
