//! Simple undirected graphs on dense vertex labels `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

pub type Vertex = usize;

/// An undirected edge stored with `0 <= u < v`.
pub type Edge = (Vertex, Vertex);

/// Puts an edge in canonical `(min, max)` form.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph. Edges are kept sorted, adjacency lists are
/// sorted, so every iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Graph> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> RawGraph {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !set.insert(edge(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Removes `removed` then adds `added`. Every removed edge must exist and
    /// the result must stay simple.
    pub fn edit(&self, removed: &[Edge], added: &[Edge]) -> Result<Graph> {
        let mut set: BTreeSet<Edge> = self.edges.iter().copied().collect();
        for &(u, v) in removed {
            if !set.remove(&edge(u, v)) {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} is not present")));
            }
        }
        for &(u, v) in added {
            if u == v || u >= self.n || v >= self.n {
                return Err(Error::InvalidGraph(format!("cannot add edge {u}-{v}")));
            }
            if !set.insert(edge(u, v)) {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} already present")));
            }
        }
        Ok(Self::from_sorted(self.n, set.into_iter().collect()))
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        self.edit(&[(u, v)], &[])
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation has wrong length".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True iff every vertex is reachable from vertex 0. The empty graph and
    /// the single vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Renders the edge-list text format: `n m` then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n, self.m()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for Graph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Graph> {
        parse_edge_list(s)
    }
}

/// Parses the edge-list text format. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        reason: "missing header \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut seen = BTreeSet::new();
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n }.into());
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u }.into());
        }
        if !seen.insert(edge(u, v)) {
            return Err(ParseError::DuplicateEdge { line, u, v }.into());
        }
    }
    if seen.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: seen.len() }.into());
    }
    Ok(Graph::from_sorted(n, seen.into_iter().collect()))
}

fn parse_pair(line: usize, text: &str) -> std::result::Result<(usize, usize), ParseError> {
    let malformed = |reason: &str| ParseError::Malformed { line, reason: reason.to_string() };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = it.next().ok_or_else(|| malformed("expected two integers"))?;
    if it.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| malformed("not a non-negative integer"))?;
    Ok((a, b))
}
