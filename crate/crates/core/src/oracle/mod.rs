//! Exact graph parameters of small graphs by exhaustive search, each with a
//! witness and a record of why nothing smaller works.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::book::{chords_cross, BookEmbedding};
use crate::graph::{Colouring, Edge, Graph};
use crate::verify::Report;

pub mod planarity;
pub mod triangulations;

pub use planarity::{is_outerplanar, is_planar};
pub use triangulations::all_triangulations;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input too large: {0}")]
    TooLarge(String),
}

/// How optimality was established.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Exhaustion {
    /// What was enumerated.
    pub search_space: String,
    /// Search nodes visited across all attempts.
    pub nodes: u64,
    /// Branches cut by the part predicate or the bound.
    pub pruned: u64,
    /// Why `value - 1` is impossible.
    pub lower_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleWitness {
    Book(BookEmbedding),
    Partition(Colouring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub witness: OracleWitness,
    pub proof_of_optimality: Exhaustion,
}

impl OracleResult {
    /// The witness as an edge colouring.
    pub fn colouring(&self) -> &Colouring {
        match &self.witness {
            OracleWitness::Book(b) => &b.pages,
            OracleWitness::Partition(c) => c,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            OracleWitness::Book(b) => serde_json::json!({ "book": b.to_json() }),
            OracleWitness::Partition(c) => {
                let parts: BTreeMap<String, usize> = c.iter().map(|(e, &p)| (e.to_string(), p)).collect();
                serde_json::json!({ "partition": parts })
            }
        };
        serde_json::json!({
            "value": self.value,
            "witness": witness,
            "proof_of_optimality": self.proof_of_optimality,
        })
    }
}

fn too_large(what: &str, got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        Err(OracleError::TooLarge(format!("{what} = {got} (limit {limit})")))
    } else {
        Ok(())
    }
}

#[derive(Default)]
struct Stats {
    nodes: u64,
    pruned: u64,
}

/// Splits `edges` into at most `t` parts, each accepted by `ok`. Parts are
/// opened in order, so relabellings are not revisited.
fn split_edges(
    edges: &[Edge],
    n: usize,
    t: usize,
    ok: &dyn Fn(&Graph) -> bool,
    stats: &mut Stats,
) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        edges: &[Edge],
        parts: &mut Vec<Graph>,
        assign: &mut Vec<usize>,
        t: usize,
        ok: &dyn Fn(&Graph) -> bool,
        stats: &mut Stats,
    ) -> bool {
        stats.nodes += 1;
        if i == edges.len() {
            return true;
        }
        let e = edges[i];
        let open = parts.iter().filter(|p| p.edge_count() > 0).count();
        for c in 0..t.min(open + 1) {
            let mut trial = parts[c].clone();
            trial.add_edge(e.lo(), e.hi());
            if !ok(&trial) {
                stats.pruned += 1;
                continue;
            }
            let old = std::mem::replace(&mut parts[c], trial);
            assign.push(c + 1);
            if go(i + 1, edges, parts, assign, t, ok, stats) {
                return true;
            }
            assign.pop();
            parts[c] = old;
        }
        false
    }
    let mut parts = vec![Graph::new(n); t];
    let mut assign = Vec::with_capacity(edges.len());
    go(0, edges, &mut parts, &mut assign, t, ok, stats).then_some(assign)
}

fn colouring_of(edges: &[Edge], assign: &[usize]) -> Colouring {
    edges.iter().copied().zip(assign.iter().copied()).collect()
}

/// Smallest `t` for which `split_edges` succeeds, starting at `from`.
fn min_split(
    g: &Graph,
    from: usize,
    ok: &dyn Fn(&Graph) -> bool,
    stats: &mut Stats,
) -> (usize, Colouring) {
    let edges = g.edges();
    let mut t = from.max(1);
    loop {
        if let Some(a) = split_edges(&edges, g.vertex_count(), t, ok, stats) {
            return (t, colouring_of(&edges, &a));
        }
        t += 1;
    }
}

fn empty_result(what: &str) -> OracleResult {
    OracleResult {
        value: 0,
        witness: OracleWitness::Partition(Colouring::new()),
        proof_of_optimality: Exhaustion {
            search_space: what.to_string(),
            lower_bound: "no edges".into(),
            ..Default::default()
        },
    }
}

/// A proper colouring of the conflict graph with at most `k` colours.
fn colour_conflicts(conflicts: &[Vec<usize>], k: usize, stats: &mut Stats) -> Option<Vec<usize>> {
    let m = conflicts.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(conflicts[i].len()));
    fn go(
        idx: usize,
        order: &[usize],
        conflicts: &[Vec<usize>],
        colour: &mut Vec<usize>,
        used: usize,
        k: usize,
        stats: &mut Stats,
    ) -> bool {
        stats.nodes += 1;
        if idx == order.len() {
            return true;
        }
        let e = order[idx];
        for c in 1..=k.min(used + 1) {
            if conflicts[e].iter().any(|&f| colour[f] == c) {
                stats.pruned += 1;
                continue;
            }
            colour[e] = c;
            if go(idx + 1, order, conflicts, colour, used.max(c), k, stats) {
                return true;
            }
            colour[e] = 0;
        }
        false
    }
    let mut colour = vec![0; m];
    go(0, &order, conflicts, &mut colour, 0, k, stats).then_some(colour)
}

/// Minimum number of pages over all vertex orders. Orders fix vertex 0 first
/// and skip mirror images; each order is tested against the best so far.
/// A `t`-page graph on `n >= 3` vertices has at most `n + t(n - 3)` edges,
/// which often certifies the first answer.
pub fn exact_book_thickness(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    too_large("n", n, 9)?;
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        let mut r = empty_result("vertex orders");
        r.witness = OracleWitness::Book(BookEmbedding::new((0..n).collect(), Colouring::new()));
        return Ok(r);
    }
    let lb = (1..).find(|&t| n < 3 || n + t * (n - 3) >= m).expect("some t fits");
    let mut stats = Stats::default();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut orders = 0u64;
    let mut rest: Vec<usize> = (1..n).collect();
    let mut done = false;
    permute(&mut rest, 0, &mut |perm| {
        if done || (perm.len() >= 2 && perm[0] > perm[perm.len() - 1]) {
            return;
        }
        orders += 1;
        let mut order = vec![0];
        order.extend_from_slice(perm);
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let conflicts: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                (0..m)
                    .filter(|&j| {
                        j != i
                            && chords_cross(
                                (pos[edges[i].lo()], pos[edges[i].hi()]),
                                (pos[edges[j].lo()], pos[edges[j].hi()]),
                            )
                    })
                    .collect()
            })
            .collect();
        let cap = best.as_ref().map_or(m, |b| b.0 - 1);
        let mut t = lb;
        while t <= cap {
            if let Some(c) = colour_conflicts(&conflicts, t, &mut stats) {
                best = Some((t, order.clone(), c));
                break;
            }
            t += 1;
        }
        if best.as_ref().is_some_and(|b| b.0 == lb) {
            done = true;
        }
    });
    let (value, order, colour) = best.expect("some order works");
    let pages: Colouring = edges.iter().copied().zip(colour).collect();
    let proof = if value == lb {
        format!("edge bound: {m} edges on {n} vertices need at least {lb} pages")
    } else {
        format!("every order needs at least {value} pages")
    };
    Ok(OracleResult {
        value,
        witness: OracleWitness::Book(BookEmbedding::new(order, pages)),
        proof_of_optimality: Exhaustion {
            search_space: format!("{orders} vertex orders up to rotation and reflection"),
            nodes: stats.nodes,
            pruned: stats.pruned,
            lower_bound: proof,
        },
    })
}

/// Heap's algorithm would do; this is plain swap recursion in a fixed order.
fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Minimum number of planar subgraphs partitioning the edges. Complete
/// graphs use the fact that one part may be extended to a triangulation, so
/// two parts exist exactly when some triangulation has a planar complement.
pub fn exact_thickness(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    too_large("n", n, 10)?;
    let m = g.edge_count();
    if m == 0 {
        return Ok(empty_result("edge partitions"));
    }
    let mut stats = Stats::default();
    if is_planar(g) {
        let c: Colouring = g.edges().into_iter().map(|e| (e, 1)).collect();
        return Ok(OracleResult {
            value: 1,
            witness: OracleWitness::Partition(c),
            proof_of_optimality: Exhaustion {
                search_space: "none".into(),
                lower_bound: "graph has edges".into(),
                ..Default::default()
            },
        });
    }
    if n >= 4 && m == n * (n - 1) / 2 {
        let ts = all_triangulations(n);
        let mut first_fail = None;
        for (value, parts) in [(2usize, 1usize), (3, 2)] {
            for t in &ts {
                let tg = t.graph();
                let rest: Vec<Edge> = g.edges().into_iter().filter(|e| !tg.has_edge(e.lo(), e.hi())).collect();
                stats.nodes += 1;
                if let Some(a) = split_edges(&rest, n, parts, &is_planar, &mut stats) {
                    let mut c: Colouring = tg.edges().into_iter().map(|e| (e, 1)).collect();
                    c.extend(rest.iter().copied().zip(a.into_iter().map(|p| p + 1)));
                    let lower_bound = match first_fail {
                        None => "graph is not planar".to_string(),
                        Some(k) => format!(
                            "no triangulation on {n} vertices (all {k} up to isomorphism) leaves a planar complement"
                        ),
                    };
                    return Ok(OracleResult {
                        value,
                        witness: OracleWitness::Partition(c),
                        proof_of_optimality: Exhaustion {
                            search_space: format!("{} triangulations on {n} vertices", ts.len()),
                            nodes: stats.nodes,
                            pruned: stats.pruned,
                            lower_bound,
                        },
                    });
                }
            }
            first_fail = Some(ts.len());
        }
        unreachable!("complete graphs on at most ten vertices have thickness at most three");
    }
    let (value, c) = min_split(g, 2, &is_planar, &mut stats);
    Ok(OracleResult {
        value,
        witness: OracleWitness::Partition(c),
        proof_of_optimality: Exhaustion {
            search_space: "edge partitions into planar parts".into(),
            nodes: stats.nodes,
            pruned: stats.pruned,
            lower_bound: if value == 2 {
                "graph is not planar".into()
            } else {
                format!("exhaustive search found no {}-partition", value - 1)
            },
        },
    })
}

/// Edges into `t` forests by matroid partitioning: each new edge enters
/// along a shortest exchange path. Returns the failing edge if some edge
/// cannot be placed.
fn forest_partition(g: &Graph, t: usize, stats: &mut Stats) -> Result<Colouring, Edge> {
    let n = g.vertex_count();
    let mut assign: BTreeMap<Edge, usize> = BTreeMap::new();
    // Path between a and b inside forest c, as edges.
    let forest_path = |assign: &BTreeMap<Edge, usize>, c: usize, a: usize, b: usize| -> Option<Vec<Edge>> {
        let mut adj = vec![Vec::new(); n];
        for (e, &x) in assign {
            if x == c {
                adj[e.lo()].push(e.hi());
                adj[e.hi()].push(e.lo());
            }
        }
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    stack.push(y);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = b;
        while cur != a {
            out.push(Edge::new(cur, prev[cur]));
            cur = prev[cur];
        }
        Some(out)
    };
    for e in g.edges() {
        let mut parent: BTreeMap<Edge, Edge> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([e]);
        let mut seen = std::collections::BTreeSet::from([e]);
        let mut placed = false;
        'bfs: while let Some(x) = queue.pop_front() {
            stats.nodes += 1;
            let home = assign.get(&x).copied();
            for c in 1..=t {
                if Some(c) == home {
                    continue;
                }
                match forest_path(&assign, c, x.lo(), x.hi()) {
                    None => {
                        // x joins forest c; each edge on the path moves up.
                        let mut cur = x;
                        let mut into = c;
                        loop {
                            let was = assign.insert(cur, into);
                            match parent.get(&cur) {
                                Some(&p) => {
                                    into = was.expect("moved edges were placed");
                                    cur = p;
                                }
                                None => break,
                            }
                        }
                        placed = true;
                        break 'bfs;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if seen.insert(y) {
                                parent.insert(y, x);
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        if !placed {
            return Err(e);
        }
    }
    Ok(assign)
}

/// Minimum number of forests partitioning the edges, by matroid
/// partitioning; a failed insertion at `t - 1` proves the bound.
pub fn exact_arboricity(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.vertex_count();
    too_large("n", n, 10)?;
    if g.edge_count() == 0 {
        return Ok(empty_result("forest partitions"));
    }
    let mut stats = Stats::default();
    let mut t = 1;
    let mut last_fail = None;
    loop {
        match forest_partition(g, t, &mut stats) {
            Ok(c) => {
                return Ok(OracleResult {
                    value: t,
                    witness: OracleWitness::Partition(c),
                    proof_of_optimality: Exhaustion {
                        search_space: "matroid partition exchange paths".into(),
                        nodes: stats.nodes,
                        pruned: stats.pruned,
                        lower_bound: match last_fail {
                            None => "graph has edges".into(),
                            Some(e) => format!("edge {e} has no exchange path into {} forests", t - 1),
                        },
                    },
                })
            }
            Err(e) => {
                last_fail = Some(e);
                t += 1;
            }
        }
    }
}

/// Every component is a star.
fn is_star_forest(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|v| {
        // A vertex of degree two or more needs all its neighbours to be leaves.
        g.degree(v) < 2 || g.neighbours(v).iter().all(|&u| g.degree(u) == 1)
    })
}

/// Minimum number of star forests partitioning the edges, by exhaustive
/// colouring starting at the arboricity.
pub fn exact_star_arboricity(g: &Graph) -> Result<OracleResult, OracleError> {
    too_large("|E|", g.edge_count(), 18)?;
    star_arboricity(g)
}

fn star_arboricity(g: &Graph) -> Result<OracleResult, OracleError> {
    if g.edge_count() == 0 {
        return Ok(empty_result("star forest partitions"));
    }
    let mut stats = Stats::default();
    let a = forest_partition_value(g, &mut stats);
    let (value, c) = min_split(g, a, &is_star_forest, &mut stats);
    Ok(OracleResult {
        value,
        witness: OracleWitness::Partition(c),
        proof_of_optimality: Exhaustion {
            search_space: "edge colourings with star-forest classes".into(),
            nodes: stats.nodes,
            pruned: stats.pruned,
            lower_bound: if value == a {
                format!("star forests are forests and the arboricity is {a}")
            } else {
                format!("exhaustive search found no {}-partition", value - 1)
            },
        },
    })
}

fn forest_partition_value(g: &Graph, stats: &mut Stats) -> usize {
    (1..).find(|&t| forest_partition(g, t, stats).is_ok()).expect("m forests always suffice")
}

/// Minimum number of outerplanar subgraphs partitioning the edges.
pub fn exact_outerthickness(g: &Graph) -> Result<OracleResult, OracleError> {
    too_large("n", g.vertex_count(), 7)?;
    if g.edge_count() == 0 {
        return Ok(empty_result("outerplanar partitions"));
    }
    let mut stats = Stats::default();
    let (value, c) = min_split(g, 1, &is_outerplanar, &mut stats);
    Ok(OracleResult {
        value,
        witness: OracleWitness::Partition(c),
        proof_of_optimality: Exhaustion {
            search_space: "edge partitions into outerplanar parts".into(),
            nodes: stats.nodes,
            pruned: stats.pruned,
            lower_bound: if value == 1 {
                "graph has edges".into()
            } else {
                format!("exhaustive search found no {}-partition", value - 1)
            },
        },
    })
}

/// The four parameters of a small graph and the inequalities between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub thickness: usize,
    pub outerthickness: usize,
    pub arboricity: usize,
    pub star_arboricity: usize,
    pub report: Report,
}

pub fn inequality_chain_check(g: &Graph) -> Result<ChainReport, OracleError> {
    too_large("n", g.vertex_count(), 7)?;
    let th = exact_thickness(g)?.value;
    let ot = exact_outerthickness(g)?.value;
    let a = exact_arboricity(g)?.value;
    let sa = star_arboricity(g)?.value;
    let checks = [
        ("θ ≤ θo", th <= ot),
        ("θo ≤ a", ot <= a),
        ("a ≤ sa", a <= sa),
        ("θo ≤ 2θ", ot <= 2 * th),
        ("a ≤ 3θ", a <= 3 * th),
        ("a ≤ 2θo", a <= 2 * ot),
        ("sa ≤ 3θo", sa <= 3 * ot),
        ("sa ≤ 5θ", sa <= 5 * th),
        ("sa ≤ 2a", sa <= 2 * a),
    ];
    let mut report = Report {
        passed: true,
        violations: Vec::new(),
    };
    for (name, ok) in checks {
        if !ok {
            report.passed = false;
            report.violations.push(crate::verify::Violation {
                kind: "inequality".into(),
                elements: vec![name.into(), format!("θ={th} θo={ot} a={a} sa={sa}")],
            });
        }
    }
    Ok(ChainReport {
        thickness: th,
        outerthickness: ot,
        arboricity: a,
        star_arboricity: sa,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let es: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &es).unwrap()
    }

    #[test]
    fn book_thickness_small() {
        assert_eq!(exact_book_thickness(&Graph::complete(4)).unwrap().value, 2);
        assert_eq!(exact_book_thickness(&path(5)).unwrap().value, 1);
        assert_eq!(exact_book_thickness(&Graph::new(3)).unwrap().value, 0);
    }

    #[test]
    fn thickness_small() {
        assert_eq!(exact_thickness(&Graph::complete(4)).unwrap().value, 1);
        assert_eq!(exact_thickness(&Graph::complete(5)).unwrap().value, 2);
    }

    #[test]
    fn arboricity_and_star_arboricity_small() {
        assert_eq!(exact_arboricity(&path(6)).unwrap().value, 1);
        assert_eq!(exact_arboricity(&Graph::complete(4)).unwrap().value, 2);
        assert_eq!(exact_arboricity(&Graph::complete(5)).unwrap().value, 3);
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(exact_star_arboricity(&star).unwrap().value, 1);
        assert_eq!(exact_star_arboricity(&path(4)).unwrap().value, 2);
        assert_eq!(exact_star_arboricity(&Graph::complete(4)).unwrap().value, 3);
    }

    #[test]
    fn star_forest_predicate() {
        assert!(is_star_forest(&Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()));
        assert!(!is_star_forest(&path(4)));
        assert!(is_star_forest(&path(2)));
        assert!(!is_star_forest(&Graph::complete(3)));
    }

    #[test]
    fn chain_on_k4() {
        let r = inequality_chain_check(&Graph::complete(4)).unwrap();
        assert_eq!(
            (r.thickness, r.outerthickness, r.arboricity, r.star_arboricity),
            (1, 2, 2, 3)
        );
        assert!(r.report.passed);
    }
}
