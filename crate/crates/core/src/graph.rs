//! Simple undirected graphs, k-tree construction certificates, the simplicial
//! partition used by every recursive construction, and the lower-bound
//! gadget generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(usize, usize);

impl Edge {
    /// Builds the edge `{u, v}`. Panics on a loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "loops are not edges of a simple graph");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_end(self, other: Edge) -> bool {
        self.touches(other.0) || self.touches(other.1)
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl FromStr for Edge {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Format(format!("malformed edge key {s:?}"));
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        let u: usize = a.trim().parse().map_err(|_| bad())?;
        let v: usize = b.trim().parse().map_err(|_| bad())?;
        if u == v {
            return Err(bad());
        }
        Ok(Edge::new(u, v))
    }
}

/// Edge colouring; colours (pages) are 1-based.
pub type Colouring = BTreeMap<Edge, usize>;

/// Induced adjacency over an arbitrary vertex subset.
pub(crate) type AdjMap = BTreeMap<usize, BTreeSet<usize>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("not a {k}-tree ({stage}): {detail}")]
    NotAKTree {
        k: usize,
        stage: CertifyStage,
        detail: String,
    },
    #[error("invalid k-tree build: {0}")]
    InvalidBuild(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("format error: {0}")]
    Format(String),
}

/// Where k-tree certification gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyStage {
    TooFewVertices,
    EdgeCount,
    NoSimplicialVertex,
    BaseNotClique,
}

impl fmt::Display for CertifyStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertifyStage::TooFewVertices => "too few vertices",
            CertifyStage::EdgeCount => "edge count",
            CertifyStage::NoSimplicialVertex => "no simplicial vertex",
            CertifyStage::BaseNotClique => "base not a clique",
        };
        f.write_str(s)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        self.try_add_edge(u, v).expect("edge endpoints out of range")
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(GraphError::InvalidGraph(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(GraphError::InvalidGraph(format!("loop at {u}")));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges in ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.range(u + 1..) {
                out.push(Edge(u, v));
            }
        }
        out
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// `v` is k-simplicial: its neighbourhood is a k-clique.
    pub fn is_simplicial(&self, v: usize, k: usize) -> bool {
        if self.degree(v) != k {
            return false;
        }
        let nb: Vec<usize> = self.adj[v].iter().copied().collect();
        self.is_clique(&nb)
    }

    pub fn contains_subgraph(&self, other: &Graph) -> bool {
        other.vertex_count() <= self.vertex_count()
            && other.edges().iter().all(|e| self.has_edge(e.0, e.1))
    }

    pub(crate) fn adj_map(&self) -> AdjMap {
        self.adj
            .iter()
            .enumerate()
            .map(|(v, s)| (v, s.clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphWire::from(self)).expect("graph serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        let wire: GraphWire = serde_json::from_value(value.clone())
            .map_err(|e| GraphError::Format(e.to_string()))?;
        let edges: Vec<(usize, usize)> = wire.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(wire.n, &edges)?;
        if g.edge_count() != edges.len() {
            return Err(GraphError::InvalidGraph("duplicate edges".into()));
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphWire {
    fn from(g: &Graph) -> Self {
        GraphWire {
            n: g.vertex_count(),
            edges: g.edges().into_iter().map(|e| [e.0, e.1]).collect(),
        }
    }
}

/// One step of a k-tree construction: `v` is added onto `clique`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Addition {
    pub v: usize,
    pub clique: Vec<usize>,
}

/// A k-tree given by its construction sequence: the base `K_{k+1}` followed
/// by vertices added onto existing k-cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTreeBuild {
    pub k: usize,
    pub base: Vec<usize>,
    pub additions: Vec<Addition>,
}

impl KTreeBuild {
    pub fn vertex_count(&self) -> usize {
        self.base.len() + self.additions.len()
    }

    /// Checks every certificate invariant and returns the realized graph.
    pub fn validate(&self) -> Result<Graph, GraphError> {
        let k = self.k;
        let bad = |m: String| Err(GraphError::InvalidBuild(m));
        if k == 0 {
            return bad("k must be positive".into());
        }
        if self.base.len() != k + 1 {
            return bad(format!("base has {} vertices, expected {}", self.base.len(), k + 1));
        }
        let n = self.vertex_count();
        let mut g = Graph::new(n);
        let mut present = vec![false; n];
        for &b in &self.base {
            if b >= n || present[b] {
                return bad(format!("base vertex {b} repeated or out of range"));
            }
            present[b] = true;
        }
        for (i, &a) in self.base.iter().enumerate() {
            for &b in &self.base[i + 1..] {
                g.add_edge(a, b);
            }
        }
        for add in &self.additions {
            if add.v >= n || present[add.v] {
                return bad(format!("added vertex {} repeated or out of range", add.v));
            }
            if add.clique.len() != k {
                return bad(format!("clique of {} has {} vertices", add.v, add.clique.len()));
            }
            let mut seen = BTreeSet::new();
            for &c in &add.clique {
                if c >= n || !present[c] || !seen.insert(c) {
                    return bad(format!("clique vertex {c} of {} not yet present", add.v));
                }
            }
            if !g.is_clique(&add.clique) {
                return bad(format!("clique of {} is not a clique", add.v));
            }
            present[add.v] = true;
            for &c in &add.clique {
                g.add_edge(add.v, c);
            }
        }
        debug_assert_eq!(g.edge_count(), ktree_edge_count(k, n));
        Ok(g)
    }

    /// The realized graph. Panics if the build is invalid.
    pub fn realize(&self) -> Graph {
        self.validate().expect("valid k-tree build")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = self.realize();
        let mut value = g.to_json();
        let obj = value.as_object_mut().expect("graph json is an object");
        obj.insert("k".into(), self.k.into());
        obj.insert("base".into(), serde_json::to_value(&self.base).expect("serializes"));
        obj.insert(
            "additions".into(),
            serde_json::to_value(&self.additions).expect("serializes"),
        );
        value
    }

    /// Parses a build; if the JSON also lists edges they must match the
    /// realized graph.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        #[derive(Deserialize)]
        struct Wire {
            k: usize,
            base: Vec<usize>,
            #[serde(default)]
            additions: Vec<Addition>,
        }
        let wire: Wire = serde_json::from_value(value.clone())
            .map_err(|e| GraphError::Format(e.to_string()))?;
        let build = KTreeBuild {
            k: wire.k,
            base: wire.base,
            additions: wire.additions,
        };
        let g = build.validate()?;
        if value.get("edges").is_some() {
            let listed = Graph::from_json(value)?;
            if listed != g {
                return Err(GraphError::InvalidBuild(
                    "listed edges differ from the construction".into(),
                ));
            }
        }
        Ok(build)
    }
}

/// `|E|` of any k-tree on `n` vertices.
pub fn ktree_edge_count(k: usize, n: usize) -> usize {
    k * n - k * (k + 1) / 2
}

/// Recovers a construction certificate for `g` by repeatedly removing the
/// lowest-index k-simplicial vertex.
pub fn ktree_certify(g: &Graph, k: usize) -> Result<KTreeBuild, GraphError> {
    let n = g.vertex_count();
    let fail = |stage, detail: String| Err(GraphError::NotAKTree { k, stage, detail });
    if k == 0 {
        return Err(GraphError::Parameter("k must be positive".into()));
    }
    if n < k + 1 {
        return fail(CertifyStage::TooFewVertices, format!("{n} vertices"));
    }
    let expected = ktree_edge_count(k, n);
    if g.edge_count() != expected {
        return fail(
            CertifyStage::EdgeCount,
            format!("{} edges, expected {expected}", g.edge_count()),
        );
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbours(v).clone()).collect();
    let mut alive = n;
    let mut candidates: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() == k).collect();
    let mut removed = vec![false; n];
    let mut elimination = Vec::with_capacity(n - k - 1);
    while alive > k + 1 {
        let mut chosen = None;
        while let Some(v) = candidates.pop_first() {
            if removed[v] || adj[v].len() != k {
                continue;
            }
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let is_clique = nb
                .iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|b| adj[a].contains(b)));
            if is_clique {
                chosen = Some((v, nb));
                break;
            }
        }
        let Some((v, nb)) = chosen else {
            return fail(
                CertifyStage::NoSimplicialVertex,
                format!("{alive} vertices remain"),
            );
        };
        for &u in &nb {
            adj[u].remove(&v);
            if adj[u].len() == k {
                candidates.insert(u);
            }
        }
        adj[v].clear();
        removed[v] = true;
        alive -= 1;
        elimination.push(Addition { v, clique: nb });
    }
    let base: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if !g.is_clique(&base) {
        return fail(CertifyStage::BaseNotClique, format!("{base:?}"));
    }
    elimination.reverse();
    Ok(KTreeBuild {
        k,
        base,
        additions: elimination,
    })
}

/// Random k-tree on `n` vertices; each addition picks a uniformly random
/// existing k-clique.
pub fn random_ktree(k: usize, n: usize, seed: u64) -> Result<KTreeBuild, GraphError> {
    if k == 0 || n < k + 1 {
        return Err(GraphError::Parameter(format!(
            "need k >= 1 and n >= k + 1, got k = {k}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<usize> = (0..=k).collect();
    let mut cliques: Vec<Vec<usize>> = (0..=k)
        .map(|skip| base.iter().copied().filter(|&x| x != skip).collect())
        .collect();
    let mut additions = Vec::with_capacity(n - k - 1);
    for w in k + 1..n {
        let clique = cliques[rng.gen_range(0..cliques.len())].clone();
        for &x in &clique {
            let mut c: Vec<usize> = clique.iter().copied().filter(|&y| y != x).collect();
            c.push(w);
            cliques.push(c);
        }
        additions.push(Addition { v: w, clique });
    }
    Ok(KTreeBuild { k, base, additions })
}

/// Vertex roles in the complete split graph `K*_{k,s}`: the clique is
/// `0..k`, the independent set `k..k+s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitParts {
    pub k: usize,
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

impl SplitParts {
    pub fn new(k: usize, s: usize) -> Self {
        SplitParts {
            k,
            clique: (0..k).collect(),
            independent: (k..k + s).collect(),
        }
    }

    pub fn graph(&self) -> Graph {
        complete_split(self.k, self.independent.len())
            .expect("positive parameters")
            .realize()
    }
}

/// The complete split graph `K*_{k,s}`: `s` vertices added onto one k-clique.
pub fn complete_split(k: usize, s: usize) -> Result<KTreeBuild, GraphError> {
    if k == 0 || s == 0 {
        return Err(GraphError::Parameter(format!(
            "complete split needs k, s >= 1, got ({k}, {s})"
        )));
    }
    let clique: Vec<usize> = (0..k).collect();
    let mut base = clique.clone();
    base.push(k);
    let additions = (k + 1..k + s)
        .map(|v| Addition {
            v,
            clique: clique.clone(),
        })
        .collect();
    Ok(KTreeBuild { k, base, additions })
}

/// The k-tree whose book thickness exceeds `k`: `K*_{k,2k²+1}` where every
/// independent vertex `v` gets three blocks of four vertices, block `i` added
/// onto `(K ∪ {v}) ∖ {x_i}` with `x_1, x_2, x_3` the first three clique
/// vertices.
pub fn qk_graph(k: usize) -> Result<KTreeBuild, GraphError> {
    if k < 3 {
        return Err(GraphError::Parameter(format!("Q_k needs k >= 3, got {k}")));
    }
    let s = 2 * k * k + 1;
    let mut build = complete_split(k, s)?;
    let mut next = k + s;
    for v in k..k + s {
        for x in 0..3 {
            let mut clique: Vec<usize> = (0..k).filter(|&c| c != x).collect();
            clique.push(v);
            for _ in 0..4 {
                build.additions.push(Addition {
                    v: next,
                    clique: clique.clone(),
                });
                next += 1;
            }
        }
    }
    Ok(build)
}

/// `K*_{k,s}` with `s = k^k + 1` and one pendant vertex on each independent
/// vertex. Treewidth `k`, star-arboricity `k + 1`.
#[derive(Clone, Debug)]
pub struct StarGadget {
    pub graph: Graph,
    pub parts: SplitParts,
    /// `pendants[j]` hangs off `parts.independent[j]`.
    pub pendants: Vec<usize>,
}

pub fn star_lb_graph(k: usize) -> Result<StarGadget, GraphError> {
    if k == 0 {
        return Err(GraphError::Parameter("k must be positive".into()));
    }
    let s = k
        .checked_pow(k as u32)
        .and_then(|p| p.checked_add(1))
        .ok_or_else(|| GraphError::Parameter(format!("k^k overflows for k = {k}")))?;
    let parts = SplitParts::new(k, s);
    let mut graph = parts.graph();
    let pendants = parts
        .independent
        .iter()
        .map(|&v| {
            let p = graph.add_vertex();
            graph.add_edge(v, p);
            p
        })
        .collect();
    Ok(StarGadget {
        graph,
        parts,
        pendants,
    })
}

/// Embeds a k-tree into a (k+1)-tree on one extra vertex (index `n`), which
/// joins the base clique. Each addition `w` onto `C` becomes `w` onto
/// `C ∪ {p}` with `p` the lowest-index vertex adjacent to all of `C`.
pub fn ktree_lift(build: &KTreeBuild) -> Result<KTreeBuild, GraphError> {
    build.validate()?;
    let n = build.vertex_count();
    let aux = n;
    let mut g = Graph::new(n + 1);
    let mut base = build.base.clone();
    base.push(aux);
    for (i, &a) in base.iter().enumerate() {
        for &b in &base[i + 1..] {
            g.add_edge(a, b);
        }
    }
    let mut additions = Vec::with_capacity(build.additions.len());
    for add in &build.additions {
        let first = add.clique[0];
        let p = g
            .neighbours(first)
            .iter()
            .copied()
            .find(|&p| {
                !add.clique.contains(&p) && add.clique.iter().all(|&c| g.has_edge(p, c))
            })
            .ok_or_else(|| {
                GraphError::InvalidBuild(format!("no extension vertex for addition of {}", add.v))
            })?;
        let mut clique = add.clique.clone();
        clique.push(p);
        for &c in &clique {
            g.add_edge(add.v, c);
        }
        additions.push(Addition { v: add.v, clique });
    }
    Ok(KTreeBuild {
        k: build.k + 1,
        base,
        additions,
    })
}

/// Output of the simplicial partition: a nonempty independent set `S` of
/// k-simplicial vertices with either `G ∖ S ≅ K_k` (case A) or a pivot `v`
/// that is k-simplicial in `G ∖ S` and adjacent to all of `S` (case B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionCase {
    CaseA { s: BTreeSet<usize> },
    CaseB { s: BTreeSet<usize>, pivot: usize },
}

impl PartitionCase {
    pub fn s(&self) -> &BTreeSet<usize> {
        match self {
            PartitionCase::CaseA { s } | PartitionCase::CaseB { s, .. } => s,
        }
    }
}

/// Applies the simplicial partition to a valid build.
pub fn lemma_partition(build: &KTreeBuild) -> Result<PartitionCase, GraphError> {
    let g = build.validate()?;
    Ok(partition(&g.adj_map(), build.k, None))
}

pub(crate) fn is_simplicial_in(adj: &AdjMap, v: usize, k: usize) -> bool {
    let nb = &adj[&v];
    nb.len() == k
        && nb
            .iter()
            .all(|a| nb.iter().all(|b| a == b || adj[a].contains(b)))
}

pub(crate) fn without(adj: &AdjMap, remove: &BTreeSet<usize>) -> AdjMap {
    adj.iter()
        .filter(|(v, _)| !remove.contains(v))
        .map(|(&v, nb)| (v, nb.difference(remove).copied().collect()))
        .collect()
}

/// Partition of the k-tree induced on `adj`. When the graph is `K_{k+1}`,
/// `nominee` (if present) is the vertex put into `S`.
pub(crate) fn partition(adj: &AdjMap, k: usize, nominee: Option<usize>) -> PartitionCase {
    let n = adj.len();
    debug_assert!(n > k);
    if n == k + 1 {
        let v = nominee
            .filter(|v| adj.contains_key(v))
            .unwrap_or_else(|| *adj.keys().next().expect("nonempty"));
        return PartitionCase::CaseA {
            s: BTreeSet::from([v]),
        };
    }
    let leaves: BTreeSet<usize> = adj
        .keys()
        .copied()
        .filter(|&v| is_simplicial_in(adj, v, k))
        .collect();
    if n - leaves.len() == k {
        return PartitionCase::CaseA { s: leaves };
    }
    let rest = without(adj, &leaves);
    let pivot = rest
        .keys()
        .copied()
        .find(|&v| is_simplicial_in(&rest, v, k))
        .expect("a k-tree minus its simplicial vertices has a simplicial vertex");
    let s: BTreeSet<usize> = adj[&pivot].intersection(&leaves).copied().collect();
    PartitionCase::CaseB { s, pivot }
}

/// `{(colour of vu, u) : u in clique}` for an independent vertex `v` of a
/// complete split graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourVector {
    pub vertex: usize,
    pub entries: BTreeSet<(usize, usize)>,
}

impl ColourVector {
    pub fn of(colouring: &Colouring, clique: &[usize], v: usize) -> Option<Self> {
        let entries = clique
            .iter()
            .map(|&u| colouring.get(&Edge::new(u, v)).map(|&c| (c, u)))
            .collect::<Option<BTreeSet<_>>>()?;
        Some(ColourVector { vertex: v, entries })
    }

    /// The colour sequence in clique order; equal keys mean equal vectors.
    pub fn key(&self) -> Vec<usize> {
        let mut by_vertex: Vec<(usize, usize)> = self.entries.iter().map(|&(c, u)| (u, c)).collect();
        by_vertex.sort_unstable();
        by_vertex.into_iter().map(|(_, c)| c).collect()
    }
}
