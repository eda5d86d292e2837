//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subpath_core::canon::canonical_key;
use subpath_core::enumerate::{
    cactus_census, connected_graphs, extremal_sweep, random_cactus, verify_theorems, CactusShape, CensusGuard,
    CheckStatus, Invariant, TheoremReport,
};
use subpath_core::families::{make_complete, make_cycle, make_end_triangle_cactus, make_pfg, make_ptc};
use subpath_core::formulas::{
    format_rational, pn_complete, pn_cycle, pn_min_cactus, pn_ptc_summation, pn_tree, pn_unicyclic, printed_offset,
    printed_is_fractional, reconcile,
};
use subpath_core::paths::{pn_bruteforce, pn_cactus, pn_pair_bruteforce, pn_pair_cactus, WorkBudget};
use subpath_core::transforms::{apply, candidates, maximize, minimize, Rule};
use subpath_core::{validate_cactus, ExactCount, Graph};

const BUDGET: WorkBudget = WorkBudget(2_000_000_000);
const GUARD: CensusGuard = CensusGuard(CensusGuard::DEFAULT_CLASSES);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn brute(g: &Graph) -> Result<ExactCount, String> {
    pn_bruteforce(g, BUDGET).map_err(|e| e.to_string())
}

fn fast(g: &Graph) -> Result<ExactCount, String> {
    validate_cactus(g).map(|p| pn_cactus(&p)).map_err(|e| e.to_string())
}

fn census(n: usize, k: usize) -> Result<Vec<Graph>, String> {
    Ok(cactus_census(n, k, GUARD).map_err(|e| e.to_string())?.into_iter().map(|(_, g)| g).collect())
}

fn trees_match() -> Outcome {
    let mut checked = 0;
    for n in 1..=10 {
        let expected = pn_tree(n).map_err(|e| e.to_string())?;
        for t in census(n, 0)? {
            ensure(brute(&t)? == expected, || format!("tree {:?}", t.edges()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} trees"))
}

fn cycles_match() -> Outcome {
    for n in 3..=12 {
        let c = make_cycle(n).map_err(|e| e.to_string())?;
        let want = pn_cycle(n).map_err(|e| e.to_string())?;
        ensure(brute(&c)? == want && want == (n * n) as u64, || format!("C_{n}"))?;
    }
    Ok("C_3..C_12".into())
}

/// Sizes of the pieces left at each cycle vertex once the cycle edges go.
fn unicyclic_parts(g: &Graph) -> Result<Vec<usize>, String> {
    let p = validate_cactus(g).map_err(|e| e.to_string())?;
    let cycle = p.cycle_blocks().next().ok_or("no cycle")?;
    let rest = g.edit(&cycle.edges, &[]).map_err(|e| e.to_string())?;
    let comps = rest.components();
    Ok(cycle
        .vertices
        .iter()
        .map(|v| comps.iter().find(|c| c.contains(v)).map(Vec::len).unwrap_or(0))
        .collect())
}

fn unicyclic_match() -> Outcome {
    let mut checked = 0;
    for n in 3..=8 {
        for g in census(n, 1)? {
            let parts = unicyclic_parts(&g)?;
            let formula = pn_unicyclic(n, &parts).map_err(|e| e.to_string())?;
            ensure(brute(&g)? == formula, || format!("unicyclic {:?} parts {parts:?}", g.edges()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} unicyclic classes"))
}

fn complete_match() -> Outcome {
    for n in 1..=6 {
        let k = make_complete(n).map_err(|e| e.to_string())?;
        ensure(brute(&k)? == pn_complete(n), || format!("K_{n}"))?;
    }
    ensure(pn_complete(4) == 34 && pn_complete(5) == 165, || "K_4/K_5 values".into())?;
    Ok("K_1..K_6, K_4 = 34, K_5 = 165".into())
}

fn oracle_equivalence() -> Outcome {
    let mut graphs = 0;
    let mut pairs = 0;
    let mut check = |g: &Graph| -> Result<(), String> {
        let p = validate_cactus(g).map_err(|e| e.to_string())?;
        ensure(pn_cactus(&p) == brute(g)?, || format!("pn of {:?}", g.edges()))?;
        for x in 0..g.n() {
            for y in x + 1..g.n() {
                let a = pn_pair_cactus(&p, x, y).map_err(|e| e.to_string())?;
                let b = pn_pair_bruteforce(g, x, y, BUDGET).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("pair ({x},{y}) of {:?}", g.edges()))?;
                pairs += 1;
            }
        }
        graphs += 1;
        Ok(())
    };
    for n in 1..=8 {
        for k in 0..=(n - 1) / 2 {
            for g in census(n, k)? {
                check(&g)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let k = rng.gen_range(0..=(n - 1) / 2);
        let g = random_cactus(n, k, CactusShape::Any, &mut rng).map_err(|e| e.to_string())?;
        check(&g)?;
    }
    Ok(format!("{graphs} cacti, {pairs} vertex pairs"))
}

fn ptc_values() -> Outcome {
    for (n, k, want) in [(7, 2, 67u64), (8, 2, 88), (9, 3, 159), (14, 5, 904)] {
        let oracle = brute(&make_ptc(n, k).map_err(|e| e.to_string())?)?;
        let summation = pn_ptc_summation(n, k).map_err(|e| e.to_string())?;
        ensure(oracle == want && summation == want, || format!("PTC({n},{k}): oracle {oracle}, summation {summation}"))?;
    }
    let rows = reconcile(5..=14, 2..=5, BUDGET).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for r in &rows {
        ensure(r.oracle == r.summation, || format!("summation disagrees at ({},{})", r.n, r.k))?;
        let delta = r.printed_minus_summation();
        let kind = match printed_offset(r) {
            Some(d) => format!("{d:+}"),
            None if printed_is_fractional(r) => format!("fractional {}", format_rational(&r.printed)),
            None => format_rational(&delta),
        };
        notes.push(format!("({},{}):{kind}", r.n, r.k));
    }
    Ok(format!("summation = oracle on {} rows; printed - summation: {}", rows.len(), notes.join(" ")))
}

fn end_triangle_family(n: usize, k: usize) -> Result<BTreeSet<subpath_core::CanonicalKey>, String> {
    let tree_n = n - 2 * k;
    let mut keys = BTreeSet::new();
    for tree in census(tree_n, 0)? {
        // attachment multisets as non-decreasing sequences
        let mut attach = vec![0usize; k];
        loop {
            let g = make_end_triangle_cactus(tree_n, tree.edges(), &attach).map_err(|e| e.to_string())?;
            keys.insert(canonical_key(&g));
            let Some(i) = (0..k).rev().find(|&i| attach[i] + 1 < tree_n) else { break };
            let next = attach[i] + 1;
            for slot in &mut attach[i..] {
                *slot = next;
            }
        }
    }
    Ok(keys)
}

fn minimal_family() -> Outcome {
    let (n, k) = (10, 3);
    let target = pn_min_cactus(n, k).map_err(|e| e.to_string())?;
    ensure(target == 118, || format!("formula gives {target}"))?;
    let family = end_triangle_family(n, k)?;
    let census = cactus_census(n, k, GUARD).map_err(|e| e.to_string())?;
    let mut members = 0;
    for (key, g) in &census {
        if family.contains(key) {
            ensure(fast(g)? == target && brute(g)? == target, || format!("member {:?}", g.edges()))?;
            members += 1;
        }
    }
    ensure(members == family.len(), || "family member missing from census".into())?;
    let star = [(0, 1), (0, 2), (0, 3)];
    let path = [(0, 1), (1, 2), (2, 3)];
    let figures = [
        make_pfg(10, 3).map_err(|e| e.to_string())?,
        make_end_triangle_cactus(4, &path, &[0, 1, 2]).map_err(|e| e.to_string())?,
        make_end_triangle_cactus(4, &star, &[1, 2, 3]).map_err(|e| e.to_string())?,
    ];
    let keys: BTreeSet<_> = figures.iter().map(canonical_key).collect();
    ensure(keys.len() == 3, || "figure graphs are not pairwise distinct".into())?;
    for f in &figures {
        ensure(brute(f)? == target, || format!("figure graph {:?}", f.edges()))?;
    }
    Ok(format!("{members} end-triangle classes, all pn = 118; 3 figure graphs attain it"))
}

fn status_of(report: &TheoremReport, name: &str) -> CheckStatus {
    report.check(name).map(|c| c.status).unwrap_or(CheckStatus::Fail)
}

fn require(report: &TheoremReport, names: &[&str]) -> Result<Vec<String>, String> {
    let mut ran = Vec::new();
    for &name in names {
        match status_of(report, name) {
            CheckStatus::Pass => ran.push(name.to_string()),
            CheckStatus::Skipped => {}
            CheckStatus::Fail => {
                let detail = report.check(name).map(|c| c.detail.clone()).unwrap_or_default();
                return Err(format!("({},{}) {name}: {detail}", report.n, report.k));
            }
        }
    }
    Ok(ran)
}

const SWEEP_POINTS: [(usize, usize); 7] = [(5, 2), (6, 2), (7, 2), (8, 2), (7, 3), (8, 3), (9, 3)];

fn reports() -> Result<Vec<TheoremReport>, String> {
    SWEEP_POINTS
        .iter()
        .map(|&(n, k)| verify_theorems(n, k, GUARD, BUDGET).map_err(|e| e.to_string()))
        .collect()
}

fn pn_extremes(reports: &[TheoremReport]) -> Outcome {
    for r in reports {
        let ran = require(r, &["pn_max_unique", "pn_min_end_triangles"])?;
        ensure(ran.len() == 2, || format!("({},{}) pn checks skipped", r.n, r.k))?;
        // sampled report rows reproduce under the exhaustive counter
        let sweep = extremal_sweep(r.n, r.k, Invariant::Pn, GUARD, BUDGET).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64((r.n * 100 + r.k) as u64);
        for row in sweep.rows.choose_multiple(&mut rng, 10) {
            ensure(brute(&row.graph)? == row.value, || format!("report row {}", row.key))?;
        }
    }
    for n in 5..=8 {
        let r = verify_theorems(n, 1, GUARD, BUDGET).map_err(|e| e.to_string())?;
        require(&r, &["pn_max_unique", "pn_min_end_triangles"])?;
    }
    let sizes: Vec<String> = reports.iter().map(|r| format!("({},{}):{}", r.n, r.k, r.census_size)).collect();
    Ok(format!("censuses {}; k = 1 at n = 5..8", sizes.join(" ")))
}

fn comparison(reports: &[TheoremReport]) -> Outcome {
    let names = [
        "wiener_min_pfg",
        "wiener_max_bsg",
        "subtrees_max_pfg",
        "subtrees_min_bsg",
        "pn_max_differs_from_wiener_max",
        "pn_min_strictly_contains_wiener_min",
    ];
    let mut covered = Vec::new();
    for r in reports.iter().filter(|r| r.n >= 2 * r.k + 2) {
        let ran = require(r, &names)?;
        ensure(ran.len() == names.len(), || format!("({},{}) ran only {ran:?}", r.n, r.k))?;
        covered.push(format!("({},{})", r.n, r.k));
    }
    let r = verify_theorems(10, 3, GUARD, BUDGET).map_err(|e| e.to_string())?;
    require(&r, &names)?;
    let minimizers = r.check("pn_min_strictly_contains_wiener_min").map(|c| c.detail.clone()).unwrap_or_default();
    covered.push(format!("(10,3) [{minimizers}]"));
    Ok(covered.join(" "))
}

fn random_input(rule: Rule, rng: &mut ChaCha8Rng) -> Result<Graph, String> {
    loop {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(1..=(n - 1) / 2);
        let shape = match rule {
            Rule::BridgeSlide | Rule::CycleToTriangle => CactusShape::Any,
            Rule::ChainStraighten => CactusShape::Bridgeless,
            Rule::InteriorShrink | Rule::EndBalance => CactusShape::Chain,
            Rule::SplitInteriorTriangle => CactusShape::TrianglesOnly,
        };
        let g = random_cactus(n, k, shape, rng).map_err(|e| e.to_string())?;
        if candidates(rule, &g).is_ok() {
            return Ok(g);
        }
    }
}

fn transform_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rule in Rule::ALL {
        for _ in 0..200 {
            let g = random_input(rule, &mut rng)?;
            let moves = candidates(rule, &g).map_err(|e| e.to_string())?;
            let mv = moves.choose(&mut rng).expect("non-empty");
            let r = apply(&g, mv).map_err(|e| format!("{rule} on {:?}: {e}", g.edges()))?;
            let (before, after) = (brute(&g)?, brute(&r.after)?);
            let k_before = validate_cactus(&g).map_err(|e| e.to_string())?.k;
            let k_after = validate_cactus(&r.after).map_err(|e| e.to_string())?.k;
            ensure(r.after.n() == g.n() && k_before == k_after, || format!("{rule} left the class"))?;
            let sign_ok = if rule.increases_pn() { after > before } else { after < before };
            ensure(sign_ok, || format!("{rule}: {before} -> {after} on {:?}", g.edges()))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(1..=(n - 1) / 2);
        let g = random_cactus(n, k, CactusShape::Any, &mut rng).map_err(|e| e.to_string())?;
        let top = if k == 1 { make_cycle(n) } else { make_ptc(n, k) }.map_err(|e| e.to_string())?;
        let up = maximize(&g).map_err(|e| e.to_string())?;
        ensure(canonical_key(&up.result) == canonical_key(&top), || format!("max fixpoint of {:?}", g.edges()))?;
        let down = minimize(&g).map_err(|e| e.to_string())?;
        let end = validate_cactus(&down.result).map_err(|e| e.to_string())?.all_cycles_end_triangles();
        ensure(end, || format!("min fixpoint of {:?}", g.edges()))?;
    }
    Ok("6 rules x 200 applications; 50 fixpoint runs each way".into())
}

fn edge_removal() -> Outcome {
    let mut edges = 0;
    for n in 1..=7 {
        for g in connected_graphs(n, GUARD).map_err(|e| e.to_string())? {
            let whole = brute(&g)?;
            for &(u, v) in g.edges() {
                let less = brute(&g.without_edge(u, v).map_err(|e| e.to_string())?)?;
                ensure(less < whole, || format!("removing {u}-{v} from {:?}", g.edges()))?;
                edges += 1;
            }
        }
    }
    Ok(format!("{edges} edge deletions over all connected graphs n <= 7"))
}

fn run(label: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (o, _) => o,
    };
    match &outcome {
        Ok(detail) => println!("[PASS] {label} ({elapsed:.2?}): {detail}"),
        Err(why) => println!("[FAIL] {label} ({elapsed:.2?}): {why}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let second = Some(Duration::from_secs(1));
    let mut ok = true;
    ok &= run("1a pn of every tree n <= 10 equals C(n+1,2)", second, trees_match);
    ok &= run("1b pn(C_n) = n^2 for 3 <= n <= 12", second, cycles_match);
    ok &= run("1c unicyclic formula on the census n <= 8", second, unicyclic_match);
    ok &= run("1d pn(K_n) closed form for n <= 6", second, complete_match);
    ok &= run("2 fast counter = exhaustive counter (census n <= 8, 200 random n <= 12)", None, oracle_equivalence);
    ok &= run("3 PTC summation values and printed-form reconciliation", None, ptc_values);
    ok &= run("4 end-triangle cacti of C(10,3) all have pn = 118", None, minimal_family);
    let reports = reports();
    match reports {
        Ok(reports) => {
            ok &= run("5 pn extremes: PTC / C_n maximum, end-triangle minimum", None, || pn_extremes(&reports));
            ok &= run("6 Wiener and subtree extremes, non-correlation", None, || comparison(&reports));
        }
        Err(e) => {
            println!("[FAIL] 5 pn extremes: {e}");
            println!("[FAIL] 6 Wiener and subtree extremes: {e}");
            ok = false;
        }
    }
    ok &= run("7 rewrite monotonicity and fixpoints", None, transform_monotonicity);
    ok &= run("8 deleting any edge lowers pn (connected graphs n <= 7)", None, edge_removal);
    if ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
