//! Canonical labelling by search over vertex orders.
//!
//! The key of a graph is the lexicographically greatest upper-triangle
//! adjacency string (column by column) over all vertex orders that list the
//! colour classes of a colour refinement in increasing colour order. Colours
//! are computed from degrees and neighbour colour multisets only, so
//! isomorphic graphs get the same admissible orders and the same key; the
//! string determines the graph, so non-isomorphic graphs get different keys.
//!
//! Two prunings keep the search small at desk scale: a branch whose prefix
//! already falls below the best string is dropped, and among interchangeable
//! twins (`N(u) - v == N(v) - u`) only one is tried at each node.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{Graph, Vertex};

/// Isomorphism-invariant encoding: vertex count followed by the packed
/// canonical adjacency bits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Stable colour refinement starting from degrees.
pub fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = sigs.iter().map(|s| (s, 0)).collect();
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Union-find labels: `u` and `v` share a label iff swapping them is an
/// automorphism.
fn twin_classes(g: &Graph, adj: &[Vec<bool>], colors: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut label: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if label[u] != u {
            continue;
        }
        for v in u + 1..n {
            if label[v] != v || colors[u] != colors[v] || g.degree(u) != g.degree(v) {
                continue;
            }
            let same = (0..n).all(|x| x == u || x == v || adj[u][x] == adj[v][x]);
            if same {
                label[v] = u;
            }
        }
    }
    label
}

struct Search<'a> {
    adj: &'a [Vec<bool>],
    cell_of_position: Vec<usize>,
    colors: &'a [usize],
    twins: Vec<usize>,
    placed: Vec<bool>,
    order: Vec<Vertex>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<Vertex>)>,
}

impl<'a> Search<'a> {
    fn run(&mut self, pos: usize, state: Ordering) {
        let n = self.colors.len();
        if pos == n {
            if self.best.is_none() || state == Ordering::Greater {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return;
        }
        let cell = self.cell_of_position[pos];
        let mut cands: Vec<(Vec<bool>, Vertex)> = Vec::new();
        let mut tried_twins: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.placed[v] || self.colors[v] != cell {
                continue;
            }
            if tried_twins.contains(&self.twins[v]) {
                continue;
            }
            tried_twins.push(self.twins[v]);
            let col: Vec<bool> = self.order.iter().map(|&u| self.adj[u][v]).collect();
            cands.push((col, v));
        }
        // most promising columns first
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let offset = pos * pos.saturating_sub(1) / 2;
        for (col, v) in cands {
            let mut next_state = state;
            if state == Ordering::Equal {
                if let Some((best, _)) = &self.best {
                    next_state = col.as_slice().cmp(&best[offset..offset + pos]);
                    if next_state == Ordering::Less {
                        continue;
                    }
                }
            }
            self.placed[v] = true;
            self.order.push(v);
            self.bits.extend_from_slice(&col);
            self.run(pos + 1, next_state);
            self.bits.truncate(offset);
            self.order.pop();
            self.placed[v] = false;
        }
    }
}

/// Canonical key together with the vertex order that realises it
/// (`order[i]` is the vertex placed at position `i`).
pub fn canonical_form(g: &Graph) -> (CanonicalKey, Vec<Vertex>) {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let colors = refine_colors(g);
    let mut cell_of_position = colors.clone();
    cell_of_position.sort_unstable();
    let twins = twin_classes(g, &adj, &colors);

    let mut search = Search {
        adj: &adj,
        cell_of_position,
        colors: &colors,
        twins,
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run(0, Ordering::Equal);
    let (bits, order) = search.best.expect("search always reaches a leaf");

    let mut bytes = (n as u32).to_be_bytes().to_vec();
    for chunk in bits.chunks(8) {
        let mut b = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 0x80 >> i;
            }
        }
        bytes.push(b);
    }
    (CanonicalKey(bytes), order)
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_form(g).0
}

/// The graph relabelled into canonical position order; isomorphic inputs
/// give identical outputs.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g);
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    g.relabel(&perm).expect("canonical order is a permutation")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_key(a) == canonical_key(b)
}
