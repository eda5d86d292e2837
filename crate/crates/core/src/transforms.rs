//! Edge rewrites that move a cactus towards the pn maximum or minimum of its
//! class, each checked against its monotonicity contract.
//!
//! Every rule lists all of its valid moves on a graph; the named helpers and
//! the fixpoint drivers pick among them. Free choices are resolved by taking
//! the first move in sorted order, which favours low vertex labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cactus::{cycle_incidence_graph, validate_cactus, CactusProfile, IncidenceNode};
use crate::count::ExactCount;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::paths::{pn_cactus, pn_pair_cactus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Turn a bridge at a cycle into a cycle edge.
    BridgeSlide,
    /// Move a branch of the cycle-incidence tree to the tip of a thread.
    ChainStraighten,
    /// Move a vertex from an interior cycle to the end cycle on the smaller side.
    InteriorShrink,
    /// Move a vertex from the larger end cycle to the smaller one.
    EndBalance,
    /// Cut a vertex out of a long cycle, leaving it on a pendant edge.
    CycleToTriangle,
    /// Reattach everything hanging off one heavy triangle corner to another.
    SplitInteriorTriangle,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::BridgeSlide,
        Rule::ChainStraighten,
        Rule::InteriorShrink,
        Rule::EndBalance,
        Rule::CycleToTriangle,
        Rule::SplitInteriorTriangle,
    ];

    /// Whether the rule strictly increases pn (otherwise strictly decreases).
    pub fn increases_pn(self) -> bool {
        matches!(self, Rule::BridgeSlide | Rule::ChainStraighten | Rule::InteriorShrink | Rule::EndBalance)
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::BridgeSlide => "bridge-slide",
            Rule::ChainStraighten => "chain-straighten",
            Rule::InteriorShrink => "shrink",
            Rule::EndBalance => "balance",
            Rule::CycleToTriangle => "to-triangle",
            Rule::SplitInteriorTriangle => "split",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown rule {s:?}")))
    }
}

/// One concrete rewrite: the edges to delete and the edges to insert.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Move {
    pub rule: Rule,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

impl Move {
    fn new(rule: Rule, removed: impl IntoIterator<Item = Edge>, added: impl IntoIterator<Item = Edge>) -> Move {
        let norm = |it: &mut dyn Iterator<Item = Edge>| -> Vec<Edge> {
            let mut v: Vec<Edge> = it.map(|(a, b)| edge(a, b)).collect();
            v.sort_unstable();
            v
        };
        Move { rule, removed: norm(&mut removed.into_iter()), added: norm(&mut added.into_iter()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformResult {
    pub rule: Rule,
    pub before: Graph,
    pub after: Graph,
    pub pn_before: ExactCount,
    pub pn_after: ExactCount,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

impl TransformResult {
    /// `pn(after) - pn(before)`.
    pub fn delta(&self) -> BigInt {
        BigInt::from(self.pn_after.as_biguint().clone()) - BigInt::from(self.pn_before.as_biguint().clone())
    }

    /// Nonzero changes in the number of `x`–`y` paths, `x < y`.
    pub fn pair_deltas(&self) -> Result<Vec<((Vertex, Vertex), BigInt)>> {
        let before = validate_cactus(&self.before)?;
        let after = validate_cactus(&self.after)?;
        let mut out = Vec::new();
        for x in 0..self.before.n() {
            for y in x + 1..self.before.n() {
                let b = pn_pair_cactus(&before, x, y)?;
                let a = pn_pair_cactus(&after, x, y)?;
                let d = BigInt::from(a.into_biguint()) - BigInt::from(b.into_biguint());
                if d != BigInt::from(0) {
                    out.push(((x, y), d));
                }
            }
        }
        Ok(out)
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn bridge_slide_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    if p.is_bridgeless() {
        return Err(precondition("the cactus has no bridge"));
    }
    let mut out = Vec::new();
    for &(a, b) in &p.bridges {
        for (u, v) in [(a, b), (b, a)] {
            for c in p.cycles_at(v) {
                let (prev, next) = p.block(c).cycle_neighbors(v).expect("v lies on the cycle");
                for w in [prev, next] {
                    out.push(Move::new(Rule::BridgeSlide, [(v, w)], [(u, w)]));
                }
            }
        }
    }
    if out.is_empty() {
        return Err(precondition("no bridge has an end on a cycle"));
    }
    Ok(out)
}

fn cycle_to_triangle_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    let mut out = Vec::new();
    for block in p.cycle_blocks().filter(|b| b.len() >= 4) {
        for &u in &block.vertices {
            let (prev, next) = block.cycle_neighbors(u).expect("u lies on the cycle");
            for (v, w) in [(prev, next), (next, prev)] {
                out.push(Move::new(Rule::CycleToTriangle, [(u, v)], [(v, w)]));
            }
        }
    }
    if out.is_empty() {
        return Err(precondition("every cycle is already a triangle"));
    }
    Ok(out)
}

fn split_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    if p.cycle_blocks().any(|b| b.len() != 3) {
        return Err(precondition("not every cycle is a triangle"));
    }
    let g = &p.graph;
    let mut out = Vec::new();
    for tri in p.cycle_blocks() {
        for &u1 in &tri.vertices {
            for &u2 in &tri.vertices {
                if u1 == u2 || g.degree(u1) <= 2 || g.degree(u2) <= 2 {
                    continue;
                }
                // everything at u2 outside the triangle lies in u2's part of G - E(C)
                let hanging: Vec<Vertex> =
                    g.neighbors(u2).iter().copied().filter(|x| !tri.contains(*x)).collect();
                out.push(Move::new(
                    Rule::SplitInteriorTriangle,
                    hanging.iter().map(|&x| (x, u2)),
                    hanging.iter().map(|&x| (x, u1)),
                ));
            }
        }
    }
    if out.is_empty() {
        return Err(precondition("no triangle has two vertices of degree above two"));
    }
    Ok(out)
}

fn require_chain(p: &CactusProfile) -> Result<()> {
    if !p.is_bridgeless() {
        return Err(precondition("the cactus has bridges"));
    }
    if !p.is_cactus_chain() {
        return Err(precondition("the cactus is not a chain"));
    }
    Ok(())
}

/// Vertices of `g` reachable from `start` without touching `blocked`.
fn reach_avoiding(g: &Graph, start: Vertex, blocked: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if !blocked.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// `−uv −uw −ab +ua +ub +vw`: `u` leaves its cycle and is spliced between
/// `a` and `b`.
fn relocate_vertex(rule: Rule, g: &Graph, from: &[Vertex], u: Vertex, onto: &[Vertex], p: &CactusProfile) -> Vec<Move> {
    let cycle_of = |vs: &[Vertex]| {
        p.cycle_blocks().find(|b| b.vertices.iter().all(|x| vs.contains(x))).expect("cycle block").clone()
    };
    let source = cycle_of(from);
    let target = cycle_of(onto);
    let (v, w) = source.cycle_neighbors(u).expect("u lies on its cycle");
    let mut out = Vec::new();
    for &a in target.vertices.iter().filter(|&&a| g.degree(a) == 2) {
        let (b1, b2) = target.cycle_neighbors(a).expect("a lies on its cycle");
        for b in [b1, b2] {
            out.push(Move::new(rule, [(u, v), (u, w), (a, b)], [(u, a), (u, b), (v, w)]));
        }
    }
    out
}

fn interior_shrink_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    require_chain(p)?;
    let g = &p.graph;
    let mut out = Vec::new();
    for &c in &p.interior_cycles {
        let cyc = p.block(c);
        if cyc.len() <= 3 {
            continue;
        }
        let on_cycle: BTreeSet<Vertex> = cyc.vertices.iter().copied().collect();
        // the two sides of the chain, seen from the intersection vertices
        let sides: Vec<BTreeSet<Vertex>> = cyc
            .vertices
            .iter()
            .filter(|&&x| g.degree(x) > 2)
            .flat_map(|&x| g.neighbors(x).iter().copied().filter(|y| !on_cycle.contains(y)).take(1))
            .map(|start| reach_avoiding(g, start, &on_cycle))
            .collect();
        debug_assert_eq!(sides.len(), 2);
        let smallest = sides.iter().map(BTreeSet::len).min().unwrap_or(0);
        for side in sides.iter().filter(|s| s.len() == smallest) {
            let end = p
                .end_cycles
                .iter()
                .map(|&e| p.block(e))
                .find(|b| b.vertices.iter().any(|x| side.contains(x)))
                .expect("each side holds one end cycle");
            for &u in cyc.vertices.iter().filter(|&&x| g.degree(x) == 2) {
                out.extend(relocate_vertex(Rule::InteriorShrink, g, &cyc.vertices, u, &end.vertices, p));
            }
        }
    }
    if out.is_empty() {
        return Err(precondition("every interior cycle is already a triangle"));
    }
    Ok(out)
}

fn end_balance_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    require_chain(p)?;
    if p.k < 2 {
        return Err(precondition("a chain needs two cycles to have two end cycles"));
    }
    if p.interior_cycles.iter().any(|&c| p.block(c).len() != 3) {
        return Err(precondition("an interior cycle is not a triangle"));
    }
    let g = &p.graph;
    let (mut small, mut big) = (p.block(p.end_cycles[0]), p.block(p.end_cycles[1]));
    if small.len() > big.len() {
        std::mem::swap(&mut small, &mut big);
    }
    if big.len() < small.len() + 2 {
        return Err(precondition("end cycles already differ by at most one vertex"));
    }
    let mut out = Vec::new();
    for &u in big.vertices.iter().filter(|&&x| g.degree(x) == 2) {
        out.extend(relocate_vertex(Rule::EndBalance, g, &big.vertices, u, &small.vertices, p));
    }
    Ok(out)
}

fn chain_straighten_moves(p: &CactusProfile) -> Result<Vec<Move>> {
    if !p.is_bridgeless() {
        return Err(precondition("the cactus has bridges"));
    }
    let t_g = cycle_incidence_graph(p)?;
    if t_g.is_path() {
        return Err(precondition("the cactus is already a chain"));
    }
    let g = &p.graph;
    let is_thread = |comp: &[IncidenceNode]| comp.iter().all(|&x| t_g.degree(x) <= 2);
    let size = |comp: &[IncidenceNode]| -> usize {
        comp.iter()
            .filter_map(|&x| match x {
                IncidenceNode::Cycle(c) => Some(p.block(c).vertices.iter().copied()),
                IncidenceNode::Vertex(_) => None,
            })
            .flatten()
            .collect::<BTreeSet<Vertex>>()
            .len()
    };

    let mut out = Vec::new();
    for t in t_g.branch_nodes() {
        let comps = t_g.components_without(t);
        let threads: Vec<bool> = comps.iter().map(|c| is_thread(c)).collect();
        let heavy: Vec<usize> = (0..comps.len()).filter(|&i| !threads[i]).collect();
        if heavy.len() > 1 {
            continue;
        }
        let sizes: Vec<usize> = comps.iter().map(|c| size(c)).collect();
        for first in (0..comps.len()).filter(|&i| threads[i]) {
            let movers: Vec<usize> = match heavy.first() {
                Some(&h) => vec![h],
                None => (0..comps.len()).filter(|&i| i != first).collect(),
            };
            for mover in movers {
                // a second thread at least as large as the first one
                let witnessed = (0..comps.len())
                    .any(|j| j != first && j != mover && threads[j] && sizes[j] >= sizes[first]);
                if !witnessed {
                    continue;
                }
                let leaf = comps[first]
                    .iter()
                    .copied()
                    .find(|&x| t_g.degree(x) == 1)
                    .expect("a thread ends in a leaf");
                let IncidenceNode::Cycle(leaf_cycle) = leaf else {
                    unreachable!("leaves of the incidence tree are cycles")
                };
                let targets: Vec<Vertex> =
                    p.block(leaf_cycle).vertices.iter().copied().filter(|&z| g.degree(z) == 2).collect();
                // (u, C): the vertex the mover hangs from and its first cycle
                let pivots: Vec<(Vertex, usize)> = match (t, comps[mover][0]) {
                    (IncidenceNode::Vertex(u), IncidenceNode::Cycle(c)) => vec![(u, c)],
                    (IncidenceNode::Cycle(_), IncidenceNode::Vertex(u)) => t_g
                        .neighbors(comps[mover][0])
                        .iter()
                        .filter(|&&x| x != t)
                        .map(|&x| match x {
                            IncidenceNode::Cycle(c) => (u, c),
                            IncidenceNode::Vertex(_) => unreachable!("the incidence tree is bipartite"),
                        })
                        .collect(),
                    _ => unreachable!("the incidence tree is bipartite"),
                };
                for (u, c) in pivots {
                    let (v, w) = p.block(c).cycle_neighbors(u).expect("u lies on C");
                    for &z in &targets {
                        out.push(Move::new(Rule::ChainStraighten, [(v, u), (w, u)], [(v, z), (w, z)]));
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(precondition("no branch node of the incidence tree admits the rewrite"));
    }
    Ok(out)
}

/// Every valid move of `rule` on the cactus `g`, sorted and deduplicated.
/// Fails with [`Error::Precondition`] when the rule does not apply.
pub fn candidates(rule: Rule, g: &Graph) -> Result<Vec<Move>> {
    let p = validate_cactus(g)?;
    candidates_in(rule, &p)
}

fn candidates_in(rule: Rule, p: &CactusProfile) -> Result<Vec<Move>> {
    let mut moves = match rule {
        Rule::BridgeSlide => bridge_slide_moves(p)?,
        Rule::ChainStraighten => chain_straighten_moves(p)?,
        Rule::InteriorShrink => interior_shrink_moves(p)?,
        Rule::EndBalance => end_balance_moves(p)?,
        Rule::CycleToTriangle => cycle_to_triangle_moves(p)?,
        Rule::SplitInteriorTriangle => split_moves(p)?,
    };
    moves.sort();
    moves.dedup();
    Ok(moves)
}

/// Applies `mv` after checking it is one of its rule's valid moves, then
/// enforces the contract: the result is a cactus with the same vertex and
/// cycle counts and pn moved strictly in the rule's direction.
pub fn apply(g: &Graph, mv: &Move) -> Result<TransformResult> {
    let before = validate_cactus(g)?;
    if !candidates_in(mv.rule, &before)?.contains(mv) {
        return Err(precondition(format!("{} does not allow this edit", mv.rule)));
    }
    execute(&before, mv)
}

fn execute(before: &CactusProfile, mv: &Move) -> Result<TransformResult> {
    let g = &before.graph;
    let after_graph = g.edit(&mv.removed, &mv.added)?;
    let after = validate_cactus(&after_graph).map_err(|e| Error::Contract(format!("{}: result is not a cactus: {e}", mv.rule)))?;
    if after.k != before.k {
        return Err(Error::Contract(format!("{}: cycle count changed from {} to {}", mv.rule, before.k, after.k)));
    }
    let pn_before = pn_cactus(before);
    let pn_after = pn_cactus(&after);
    let ok = if mv.rule.increases_pn() { pn_after > pn_before } else { pn_after < pn_before };
    if !ok {
        return Err(Error::Contract(format!("{}: pn went from {pn_before} to {pn_after}", mv.rule)));
    }
    Ok(TransformResult {
        rule: mv.rule,
        before: g.clone(),
        after: after_graph,
        pn_before,
        pn_after,
        removed: mv.removed.clone(),
        added: mv.added.clone(),
    })
}

/// Applies the first valid move of `rule`.
pub fn apply_rule(rule: Rule, g: &Graph) -> Result<TransformResult> {
    let p = validate_cactus(g)?;
    let moves = candidates_in(rule, &p)?;
    execute(&p, &moves[0])
}

/// Bridge `uv` with `v` on a cycle through `w`: `−vw +uw`.
pub fn bridge_slide(g: &Graph, u: Vertex, v: Vertex, w: Vertex) -> Result<TransformResult> {
    apply(g, &Move::new(Rule::BridgeSlide, [(v, w)], [(u, w)]))
}

/// `−vu −wu +vz +wz` where `v`, `w` are the neighbours of `u` on the cycle
/// being moved.
pub fn chain_straighten(g: &Graph, u: Vertex, v: Vertex, w: Vertex, z: Vertex) -> Result<TransformResult> {
    apply(g, &Move::new(Rule::ChainStraighten, [(v, u), (w, u)], [(v, z), (w, z)]))
}

fn relocation(rule: Rule, g: &Graph, u: Vertex, a: Vertex, b: Vertex) -> Result<TransformResult> {
    let p = validate_cactus(g)?;
    let cycle = p
        .cycle_blocks()
        .find(|c| c.contains(u))
        .ok_or_else(|| precondition(format!("vertex {u} is not on a cycle")))?;
    let (v, w) = cycle.cycle_neighbors(u).expect("u lies on the cycle");
    apply(g, &Move::new(rule, [(u, v), (u, w), (a, b)], [(u, a), (u, b), (v, w)]))
}

/// Moves the non-intersection vertex `u` of an interior cycle between `a`
/// and `b` on the end cycle of the smaller side.
pub fn interior_cycle_shrink(g: &Graph, u: Vertex, a: Vertex, b: Vertex) -> Result<TransformResult> {
    relocation(Rule::InteriorShrink, g, u, a, b)
}

/// Moves `u` from the larger end cycle between `a` and `b` on the smaller one.
pub fn end_cycle_balance(g: &Graph, u: Vertex, a: Vertex, b: Vertex) -> Result<TransformResult> {
    relocation(Rule::EndBalance, g, u, a, b)
}

/// Cycle edge `uv` of a cycle of length at least four, `w` the other
/// neighbour of `u`: `−uv +vw`.
pub fn cycle_to_triangle_step(g: &Graph, u: Vertex, v: Vertex, w: Vertex) -> Result<TransformResult> {
    apply(g, &Move::new(Rule::CycleToTriangle, [(u, v)], [(v, w)]))
}

/// Reattaches every neighbour of `from` outside its triangle with `to`
/// to `to`.
pub fn split_interior_triangle(g: &Graph, to: Vertex, from: Vertex) -> Result<TransformResult> {
    let p = validate_cactus(g)?;
    let tri = p
        .cycle_blocks()
        .find(|c| c.len() == 3 && c.contains(to) && c.contains(from))
        .ok_or_else(|| precondition(format!("{to} and {from} share no triangle")))?;
    let hanging: Vec<Vertex> = g.neighbors(from).iter().copied().filter(|&x| !tri.contains(x)).collect();
    apply(
        g,
        &Move::new(
            Rule::SplitInteriorTriangle,
            hanging.iter().map(|&x| (x, from)),
            hanging.iter().map(|&x| (x, to)),
        ),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// Rules tried in priority order.
    pub fn rules(self) -> &'static [Rule] {
        match self {
            Direction::Maximize => &[Rule::BridgeSlide, Rule::ChainStraighten, Rule::InteriorShrink, Rule::EndBalance],
            Direction::Minimize => &[Rule::CycleToTriangle, Rule::SplitInteriorTriangle],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
    pub pn_after: ExactCount,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixpointRun {
    pub start: Graph,
    pub result: Graph,
    pub pn_start: ExactCount,
    pub pn_result: ExactCount,
    pub steps: Vec<Step>,
}

/// Rewrites `g` with the highest-priority applicable rule until none
/// applies. Stops with [`Error::Contract`] after `n + k + |E|` steps.
pub fn run_to_fixpoint(g: &Graph, direction: Direction) -> Result<FixpointRun> {
    let mut current = validate_cactus(g)?;
    let pn_start = pn_cactus(&current);
    let cap = g.n() + current.k + g.m();
    let mut steps = Vec::new();
    'outer: loop {
        for &rule in direction.rules() {
            let moves = match candidates_in(rule, &current) {
                Ok(moves) => moves,
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            };
            if steps.len() == cap {
                return Err(Error::Contract(format!("no fixpoint within {cap} steps")));
            }
            let r = execute(&current, &moves[0])?;
            steps.push(Step { rule, removed: r.removed, added: r.added, pn_after: r.pn_after });
            current = validate_cactus(&r.after)?;
            continue 'outer;
        }
        break;
    }
    Ok(FixpointRun { start: g.clone(), pn_result: pn_cactus(&current), result: current.graph, pn_start, steps })
}

pub fn maximize(g: &Graph) -> Result<FixpointRun> {
    run_to_fixpoint(g, Direction::Maximize)
}

pub fn minimize(g: &Graph) -> Result<FixpointRun> {
    run_to_fixpoint(g, Direction::Minimize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::families::{make_cycle, make_cycle_chain, make_pfg, make_ptc};
    use crate::paths::{pn_bruteforce, WorkBudget};

    fn g(n: usize, e: &[Edge]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    fn oracle(g: &Graph) -> u64 {
        pn_bruteforce(g, WorkBudget(100_000_000)).unwrap().to_u64().unwrap()
    }

    fn triangle_with_pendant() -> Graph {
        g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert!("straighten".parse::<Rule>().is_err());
    }

    #[test]
    fn bridge_slide_examples() {
        let r = bridge_slide(&triangle_with_pendant(), 3, 2, 0).unwrap();
        assert_eq!((oracle(&r.before), oracle(&r.after)), (15, 16));
        assert!(is_isomorphic(&r.after, &make_cycle(4).unwrap()));
        let c4_pendant = g(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]);
        let r = apply_rule(Rule::BridgeSlide, &c4_pendant).unwrap();
        assert_eq!((oracle(&r.before), oracle(&r.after)), (24, 25));
        assert!(matches!(apply_rule(Rule::BridgeSlide, &make_cycle(5).unwrap()), Err(Error::Precondition(_))));
        // w must be a cycle neighbour of v
        assert!(matches!(bridge_slide(&triangle_with_pendant(), 3, 2, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn chain_straighten_examples() {
        let three = make_pfg(7, 3).unwrap();
        let r = apply_rule(Rule::ChainStraighten, &three).unwrap();
        assert!(oracle(&r.after) > oracle(&r.before));
        let four = make_pfg(9, 4).unwrap();
        let r = apply_rule(Rule::ChainStraighten, &four).unwrap();
        assert!(oracle(&r.after) > oracle(&r.before));
        let hub_before = cycle_incidence_graph(&validate_cactus(&four).unwrap()).unwrap().degree(IncidenceNode::Vertex(0));
        let hub_after = cycle_incidence_graph(&validate_cactus(&r.after).unwrap()).unwrap().degree(IncidenceNode::Vertex(0));
        assert_eq!((hub_before, hub_after), (4, 3));
        let chain = make_cycle_chain(&[3, 3, 3]).unwrap();
        assert!(matches!(apply_rule(Rule::ChainStraighten, &chain), Err(Error::Precondition(_))));
    }

    #[test]
    fn interior_shrink_examples() {
        for lengths in [[3, 4, 3], [3, 5, 3]] {
            let chain = make_cycle_chain(&lengths).unwrap();
            let r = apply_rule(Rule::InteriorShrink, &chain).unwrap();
            assert!(oracle(&r.after) > oracle(&r.before));
            let after = validate_cactus(&r.after).unwrap();
            let mut sizes: Vec<usize> = after.cycle_blocks().map(|b| b.len()).collect();
            sizes.sort_unstable();
            let mut expect = vec![3, lengths[1] - 1, 4];
            expect.sort_unstable();
            assert_eq!(sizes, expect);
        }
        let chain = make_cycle_chain(&[3, 3, 3]).unwrap();
        assert!(matches!(apply_rule(Rule::InteriorShrink, &chain), Err(Error::Precondition(_))));
    }

    #[test]
    fn end_balance_examples() {
        let r = apply_rule(Rule::EndBalance, &make_cycle_chain(&[3, 3, 5]).unwrap()).unwrap();
        assert!(is_isomorphic(&r.after, &make_ptc(9, 3).unwrap()));
        assert_eq!(oracle(&r.after), 159);
        assert!(oracle(&r.before) < 159);
        let r = apply_rule(Rule::EndBalance, &make_cycle_chain(&[3, 6]).unwrap()).unwrap();
        assert!(is_isomorphic(&r.after, &make_cycle_chain(&[4, 5]).unwrap()));
        assert!(oracle(&r.after) > oracle(&r.before));
        assert!(matches!(apply_rule(Rule::EndBalance, &make_ptc(9, 3).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn cycle_to_triangle_examples() {
        let r = cycle_to_triangle_step(&make_cycle(4).unwrap(), 0, 1, 3).unwrap();
        assert_eq!((oracle(&r.before), oracle(&r.after)), (16, 15));
        assert!(is_isomorphic(&r.after, &triangle_with_pendant()));
        let r = apply_rule(Rule::CycleToTriangle, &make_cycle(5).unwrap()).unwrap();
        assert_eq!((oracle(&r.before), oracle(&r.after)), (25, 24));
        assert!(matches!(apply_rule(Rule::CycleToTriangle, &make_cycle(3).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn split_examples() {
        // two triangles at vertex 2 plus a pendant there
        let bowtie_pendant = g(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (2, 5)]);
        assert!(matches!(apply_rule(Rule::SplitInteriorTriangle, &bowtie_pendant), Err(Error::Precondition(_))));
        let chain = make_cycle_chain(&[3, 3, 3]).unwrap();
        let r = apply_rule(Rule::SplitInteriorTriangle, &chain).unwrap();
        assert!(oracle(&r.after) < oracle(&r.before));
        // vertex 2 has degree 2, so the chain's middle triangle cannot donate it
        assert!(matches!(split_interior_triangle(&chain, 1, 2), Err(Error::Precondition(_))));
        // a pendant at a degree-2 corner makes the first triangle of a pair interior
        let pair = make_cycle_chain(&[3, 3]).unwrap();
        let with_pendant = Graph::new(6, pair.edges().iter().copied().chain([(0, 5)])).unwrap();
        let r = split_interior_triangle(&with_pendant, 1, 0).unwrap();
        assert!(oracle(&r.after) < oracle(&r.before));
        assert!(matches!(
            apply_rule(Rule::SplitInteriorTriangle, &make_pfg(10, 3).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn drivers_reach_the_extremes() {
        let start = make_cycle_chain(&[5, 3, 4]).unwrap();
        let up = maximize(&start).unwrap();
        assert!(is_isomorphic(&up.result, &make_ptc(10, 3).unwrap()));
        let down = minimize(&start).unwrap();
        assert!(validate_cactus(&down.result).unwrap().all_cycles_end_triangles());
        assert!(down.pn_result < down.pn_start);
    }

    #[test]
    fn pair_deltas_sum_to_total() {
        let r = apply_rule(Rule::BridgeSlide, &triangle_with_pendant()).unwrap();
        let total: BigInt = r.pair_deltas().unwrap().into_iter().map(|(_, d)| d).sum();
        assert_eq!(total, r.delta());
    }
}
