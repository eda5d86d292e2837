//! Exhaustive cactus censuses, extremal sweeps and theorem checks.
//!
//! Every cactus on two or more vertices has a leaf block: a pendant edge or
//! a cycle meeting the rest of the graph in one vertex. Removing it leaves a
//! smaller cactus, so growing canonical cacti by attaching a pendant vertex
//! or a new cycle at every vertex reaches every class. Children are
//! deduplicated by canonical key, one layer `(vertices, cycles)` at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cactus::validate_cactus;
use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::count::ExactCount;
use crate::error::{Error, Result};
use crate::families::{make_cycle, make_pfg, make_ptc, make_bsg};
use crate::formulas::{pn_cycle, pn_min_cactus, pn_ptc_summation};
use crate::graph::{Edge, Graph, Vertex};
use crate::indices::{subtree_number, wiener};
use crate::paths::{pn_bruteforce, pn_cactus, WorkBudget};

/// Cap on the number of isomorphism classes held in any one layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusGuard(pub usize);

impl CensusGuard {
    pub const DEFAULT_CLASSES: usize = 10_000_000;
}

impl Default for CensusGuard {
    fn default() -> Self {
        CensusGuard(Self::DEFAULT_CLASSES)
    }
}

fn check_class(n: usize, k: usize) -> Result<()> {
    if n == 0 || 2 * k > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "no cactus with {n} vertices and {k} cycles (need n >= 1 and 2k <= n-1)"
        )));
    }
    Ok(())
}

/// Canonical key and the canonically relabelled copy of `g`.
fn canonical_pair(g: &Graph) -> (CanonicalKey, Graph) {
    let (key, order) = canonical_form(g);
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    (key, g.relabel(&perm).expect("canonical order is a permutation"))
}

fn with_pendant(g: &Graph, at: Vertex) -> Graph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    edges.push((at, n));
    Graph::new(n + 1, edges).expect("pendant keeps the graph simple")
}

fn with_cycle(g: &Graph, at: Vertex, len: usize) -> Graph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    let mut ring = vec![at];
    ring.extend(n..n + len - 1);
    for i in 0..len {
        edges.push((ring[i], ring[(i + 1) % len]));
    }
    Graph::new(n + len - 1, edges).expect("new cycle keeps the graph simple")
}

type Layer = BTreeMap<CanonicalKey, Graph>;

/// One representative per isomorphism class of cacti with `n` vertices and
/// `k` cycles, as `(key, canonically labelled graph)` sorted by key.
pub fn cactus_census(n: usize, k: usize, guard: CensusGuard) -> Result<Vec<(CanonicalKey, Graph)>> {
    check_class(n, k)?;
    // layers[v][c]: cacti with v vertices and c cycles that can still grow
    // into the target
    let mut layers: Vec<Vec<Layer>> = vec![vec![Layer::new(); k + 1]; n + 1];
    let (key, single) = canonical_pair(&Graph::empty(1));
    layers[1][0].insert(key, single);

    let fits = |v: usize, c: usize| c <= k && v + 2 * (k - c) <= n;
    for v in 1..n {
        for c in 0..=k {
            let parents = std::mem::take(&mut layers[v][c]);
            if parents.is_empty() {
                continue;
            }
            let children: Vec<(usize, usize, CanonicalKey, Graph)> = parents
                .par_iter()
                .flat_map_iter(|(_, g)| {
                    let mut out = Vec::new();
                    for at in 0..g.n() {
                        if fits(v + 1, c) {
                            out.push((v + 1, c, with_pendant(g, at)));
                        }
                        let mut len = 3;
                        while fits(v + len - 1, c + 1) {
                            out.push((v + len - 1, c + 1, with_cycle(g, at, len)));
                            len += 1;
                        }
                    }
                    out.into_iter().map(|(cv, cc, child)| {
                        let (key, canon) = canonical_pair(&child);
                        (cv, cc, key, canon)
                    })
                })
                .collect();
            for (cv, cc, key, canon) in children {
                let layer = &mut layers[cv][cc];
                layer.entry(key).or_insert(canon);
                if layer.len() > guard.0 {
                    return Err(Error::CensusLimit { limit: guard.0 });
                }
            }
        }
    }
    Ok(std::mem::take(&mut layers[n][k]).into_iter().collect())
}

/// Representatives of all cacti with `n` vertices and `k` cycles, in key
/// order.
pub fn enumerate_cacti(n: usize, k: usize, guard: CensusGuard) -> Result<Vec<Graph>> {
    Ok(cactus_census(n, k, guard)?.into_iter().map(|(_, g)| g).collect())
}

/// One representative per isomorphism class of graphs on `n` vertices
/// (connected or not), by adding a vertex with every neighbour subset.
pub fn all_graphs(n: usize, guard: CensusGuard) -> Result<Vec<(CanonicalKey, Graph)>> {
    let mut layer: Layer = BTreeMap::new();
    let (key, g) = canonical_pair(&Graph::empty(0));
    layer.insert(key, g);
    for v in 0..n {
        if v >= 31 {
            return Err(Error::CensusLimit { limit: guard.0 });
        }
        let children: Vec<(CanonicalKey, Graph)> = layer
            .par_iter()
            .flat_map_iter(|(_, g)| {
                (0u32..1 << v).map(move |mask| {
                    let mut edges: Vec<Edge> = g.edges().to_vec();
                    edges.extend((0..v).filter(|i| mask >> i & 1 == 1).map(|i| (i, v)));
                    canonical_pair(&Graph::new(v + 1, edges).expect("new vertex keeps the graph simple"))
                })
            })
            .collect();
        let mut next = Layer::new();
        for (key, g) in children {
            next.entry(key).or_insert(g);
            if next.len() > guard.0 {
                return Err(Error::CensusLimit { limit: guard.0 });
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().collect())
}

/// Connected representatives among [`all_graphs`].
pub fn connected_graphs(n: usize, guard: CensusGuard) -> Result<Vec<Graph>> {
    Ok(all_graphs(n, guard)?.into_iter().map(|(_, g)| g).filter(|g| n > 0 && g.is_connected()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CactusShape {
    Any,
    Bridgeless,
    TrianglesOnly,
    /// Bridgeless with the cycles strung along a path.
    Chain,
}

/// A random cactus with `n` vertices and `k` cycles, built from randomly
/// attached pieces and then randomly relabelled.
pub fn random_cactus<R: Rng + ?Sized>(n: usize, k: usize, shape: CactusShape, rng: &mut R) -> Result<Graph> {
    check_class(n, k)?;
    let spare = n - 1 - 2 * k;
    let mut extra = vec![0usize; k];
    let pendants = match shape {
        CactusShape::TrianglesOnly => spare,
        CactusShape::Bridgeless | CactusShape::Chain => {
            if k == 0 && spare > 0 {
                return Err(Error::InvalidParameter("a bridgeless cactus with no cycle has one vertex".into()));
            }
            for _ in 0..spare {
                extra[rng.gen_range(0..k)] += 1;
            }
            0
        }
        CactusShape::Any => {
            let mut pendants = 0;
            for _ in 0..spare {
                if k > 0 && rng.gen_bool(0.5) {
                    extra[rng.gen_range(0..k)] += 1;
                } else {
                    pendants += 1;
                }
            }
            pendants
        }
    };
    let mut g = Graph::empty(1);
    if shape == CactusShape::Chain {
        // each cycle hangs off a vertex of the previous one other than the
        // vertex that cycle hangs from
        let mut previous: Vec<Vertex> = vec![0];
        let mut entry = usize::MAX;
        for e in extra {
            let choices: Vec<Vertex> = previous.iter().copied().filter(|&x| x != entry).collect();
            let at = *choices.choose(rng).expect("a cycle has a free vertex");
            let first_new = g.n();
            g = with_cycle(&g, at, 3 + e);
            previous = std::iter::once(at).chain(first_new..g.n()).collect();
            entry = at;
        }
    } else {
        // Some(len) is a cycle, None a pendant vertex.
        let mut pieces: Vec<Option<usize>> = extra.iter().map(|e| Some(3 + e)).collect();
        pieces.extend(std::iter::repeat(None).take(pendants));
        pieces.shuffle(rng);
        for piece in pieces {
            let at = rng.gen_range(0..g.n());
            g = match piece {
                Some(len) => with_cycle(&g, at, len),
                None => with_pendant(&g, at),
            };
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// The graph invariants a sweep can rank by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Pn,
    Wiener,
    Subtrees,
}

impl Invariant {
    pub fn evaluate(self, g: &Graph, budget: WorkBudget) -> Result<ExactCount> {
        match self {
            Invariant::Pn => match validate_cactus(g) {
                Ok(p) => Ok(pn_cactus(&p)),
                Err(_) => pn_bruteforce(g, budget),
            },
            Invariant::Wiener => wiener(g),
            Invariant::Subtrees => subtree_number(g, budget),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Pn => "pn",
            Invariant::Wiener => "wiener",
            Invariant::Subtrees => "subtrees",
        })
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pn" => Ok(Invariant::Pn),
            "wiener" => Ok(Invariant::Wiener),
            "subtrees" => Ok(Invariant::Subtrees),
            other => Err(Error::InvalidParameter(format!("unknown invariant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub key: CanonicalKey,
    pub value: ExactCount,
    pub graph: Graph,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub k: usize,
    pub invariant: Invariant,
    pub census_size: usize,
    pub min_value: ExactCount,
    pub max_value: ExactCount,
    pub argmin: Vec<CanonicalKey>,
    pub argmax: Vec<CanonicalKey>,
    pub rows: Vec<ReportRow>,
}

impl ExtremalReport {
    /// Ranks an already computed census.
    pub fn from_census(
        n: usize,
        k: usize,
        invariant: Invariant,
        census: &[(CanonicalKey, Graph)],
        budget: WorkBudget,
    ) -> Result<Self> {
        let rows: Vec<ReportRow> = census
            .par_iter()
            .map(|(key, g)| {
                Ok(ReportRow { key: key.clone(), value: invariant.evaluate(g, budget)?, graph: g.clone() })
            })
            .collect::<Result<_>>()?;
        let min_value = rows.iter().map(|r| &r.value).min().cloned().unwrap_or_default();
        let max_value = rows.iter().map(|r| &r.value).max().cloned().unwrap_or_default();
        let pick = |target: &ExactCount| -> Vec<CanonicalKey> {
            rows.iter().filter(|r| &r.value == target).map(|r| r.key.clone()).collect()
        };
        Ok(ExtremalReport {
            n,
            k,
            invariant,
            census_size: rows.len(),
            argmin: pick(&min_value),
            argmax: pick(&max_value),
            min_value,
            max_value,
            rows,
        })
    }

    pub fn row(&self, key: &CanonicalKey) -> Option<&ReportRow> {
        self.rows.iter().find(|r| &r.key == key)
    }
}

/// Minimum and maximum of `invariant` over the whole census of `(n, k)`.
pub fn extremal_sweep(
    n: usize,
    k: usize,
    invariant: Invariant,
    guard: CensusGuard,
    budget: WorkBudget,
) -> Result<ExtremalReport> {
    let census = cactus_census(n, k, guard)?;
    ExtremalReport::from_census(n, k, invariant, &census, budget)
}

fn format_edges(g: &Graph) -> String {
    g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

/// CSV with columns `canonical_key,value,is_argmin,is_argmax,representative_edges`.
pub fn write_report_csv<W: Write>(report: &ExtremalReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidParameter(format!("writing CSV: {e}"));
    w.write_record(["canonical_key", "value", "is_argmin", "is_argmax", "representative_edges"])
        .map_err(io)?;
    for r in &report.rows {
        w.write_record([
            r.key.to_hex(),
            r.value.to_string(),
            (r.value == report.min_value).to_string(),
            (r.value == report.max_value).to_string(),
            format_edges(&r.graph),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("writing CSV: {e}")))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub k: usize,
    pub census_size: usize,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    /// No applicable check failed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> TheoremCheck {
    TheoremCheck { name, status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail }
}

fn skipped(name: &'static str, why: &str) -> TheoremCheck {
    TheoremCheck { name, status: CheckStatus::Skipped, detail: why.to_string() }
}

fn describe(keys: &[CanonicalKey], value: &ExactCount) -> String {
    format!("{} class(es) at value {value}", keys.len())
}

/// Runs every extremal claim that applies to `(n, k)` against the full
/// census.
pub fn verify_theorems(n: usize, k: usize, guard: CensusGuard, budget: WorkBudget) -> Result<TheoremReport> {
    let census = cactus_census(n, k, guard)?;
    let pn = ExtremalReport::from_census(n, k, Invariant::Pn, &census, budget)?;
    let mut checks = Vec::new();

    // unique pn maximizer
    let max_name = "pn_max_unique";
    let expected_max = match k {
        0 => None,
        1 => Some((make_cycle(n)?, pn_cycle(n)?)),
        _ => Some((make_ptc(n, k)?, pn_ptc_summation(n, k)?)),
    };
    match expected_max {
        None => checks.push(skipped(max_name, "every tree has the same subpath number")),
        Some((g, value)) => {
            let ok = pn.argmax == [canonical_key(&g)] && pn.max_value == value;
            checks.push(check(max_name, ok, describe(&pn.argmax, &pn.max_value)));
        }
    }

    // pn minimizers are exactly the cacti whose cycles are all end-triangles
    let end_triangle: BTreeSet<CanonicalKey> = census
        .iter()
        .filter(|(_, g)| validate_cactus(g).map(|p| p.all_cycles_end_triangles()).unwrap_or(false))
        .map(|(key, _)| key.clone())
        .collect();
    let argmin: BTreeSet<CanonicalKey> = pn.argmin.iter().cloned().collect();
    let min_formula = pn_min_cactus(n, k)?;
    checks.push(check(
        "pn_min_end_triangles",
        argmin == end_triangle && pn.min_value == min_formula,
        format!(
            "{}; {} end-triangle class(es); formula value {min_formula}",
            describe(&pn.argmin, &pn.min_value),
            end_triangle.len()
        ),
    ));

    let has_pfg = k >= 1;
    let has_bsg = k >= 2 && n >= 2 * k + 2;
    let (wiener, subtrees) = if has_pfg {
        (
            Some(ExtremalReport::from_census(n, k, Invariant::Wiener, &census, budget)?),
            Some(ExtremalReport::from_census(n, k, Invariant::Subtrees, &census, budget)?),
        )
    } else {
        (None, None)
    };
    let pfg_key = if has_pfg { Some(canonical_key(&make_pfg(n, k)?)) } else { None };
    let bsg_key = if has_bsg { Some(canonical_key(&make_bsg(n, k)?)) } else { None };

    let mut unique = |name: &'static str, keys: Option<(&[CanonicalKey], &ExactCount)>, target: &Option<CanonicalKey>, why: &str| {
        match (keys, target) {
            (Some((keys, value)), Some(t)) => {
                checks.push(check(name, keys == std::slice::from_ref(t), describe(keys, value)))
            }
            _ => checks.push(skipped(name, why)),
        }
    };
    let pfg_why = "needs at least one cycle";
    let bsg_why = "needs k >= 2 and n >= 2k+2";
    unique("wiener_min_pfg", wiener.as_ref().map(|r| (&r.argmin[..], &r.min_value)), &pfg_key, pfg_why);
    unique("wiener_max_bsg", wiener.as_ref().map(|r| (&r.argmax[..], &r.max_value)), &bsg_key, bsg_why);
    unique("subtrees_max_pfg", subtrees.as_ref().map(|r| (&r.argmax[..], &r.max_value)), &pfg_key, pfg_why);
    unique("subtrees_min_bsg", subtrees.as_ref().map(|r| (&r.argmin[..], &r.min_value)), &bsg_key, bsg_why);

    // the pn extremes and the Wiener extremes disagree
    match (&wiener, &pfg_key, has_bsg) {
        (Some(w), Some(pfg), true) => {
            let distinct_max = pn.argmax != w.argmax;
            checks.push(check(
                "pn_max_differs_from_wiener_max",
                distinct_max,
                format!("pn argmax {} class(es), wiener argmax {} class(es)", pn.argmax.len(), w.argmax.len()),
            ));
            let strict = argmin.len() > 1 && argmin.contains(pfg) && w.argmin.iter().all(|x| argmin.contains(x));
            checks.push(check(
                "pn_min_strictly_contains_wiener_min",
                strict,
                format!("{} pn minimizer(s); PFG among them: {}", argmin.len(), argmin.contains(pfg)),
            ));
        }
        _ => {
            checks.push(skipped("pn_max_differs_from_wiener_max", bsg_why));
            checks.push(skipped("pn_min_strictly_contains_wiener_min", bsg_why));
        }
    }

    Ok(TheoremReport { n, k, census_size: census.len(), checks })
}
