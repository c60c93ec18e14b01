//! Book embeddings: a cyclic vertex order plus a page per edge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{partition, without, AdjMap, Colouring, Edge, GraphError, KTreeBuild, PartitionCase};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookEmbedding {
    /// Vertices in clockwise order around the spine circle.
    pub order: Vec<usize>,
    pub pages: Colouring,
    pub page_count: usize,
}

impl BookEmbedding {
    pub fn new(order: Vec<usize>, pages: Colouring) -> Self {
        let page_count = pages.values().copied().max().unwrap_or(1);
        BookEmbedding {
            order,
            pages,
            page_count,
        }
    }

    /// Position of every vertex in `order`, indexed by vertex id.
    pub fn positions(&self) -> BTreeMap<usize, usize> {
        self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BookWire {
            order: self.order.clone(),
            pages: self.pages.iter().map(|(e, &p)| (e.to_string(), p)).collect(),
            page_count: self.page_count,
        })
        .expect("book serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        let wire: BookWire = serde_json::from_value(value.clone())
            .map_err(|e| GraphError::Format(e.to_string()))?;
        let pages = wire
            .pages
            .iter()
            .map(|(k, &p)| Ok((k.parse::<Edge>()?, p)))
            .collect::<Result<Colouring, GraphError>>()?;
        Ok(BookEmbedding {
            order: wire.order,
            pages,
            page_count: wire.page_count,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct BookWire {
    order: Vec<usize>,
    pages: BTreeMap<String, usize>,
    page_count: usize,
}

/// Two chords of the spine circle cross iff they share no endpoint and
/// exactly one endpoint of `f` lies strictly inside the arc spanned by `e`.
pub fn book_crosses(order: &[usize], e: Edge, f: Edge) -> bool {
    let pos = |v: usize| {
        order
            .iter()
            .position(|&x| x == v)
            .unwrap_or_else(|| panic!("vertex {v} missing from order"))
    };
    chords_cross(
        (pos(e.lo()), pos(e.hi())),
        (pos(f.lo()), pos(f.hi())),
    )
}

pub(crate) fn chords_cross(e: (usize, usize), f: (usize, usize)) -> bool {
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return false;
    }
    let (a, b) = if e.0 < e.1 { e } else { (e.1, e.0) };
    let inside = |p: usize| a < p && p < b;
    inside(f.0) != inside(f.1)
}

/// Book embedding of a k-tree whose pages are `k + 1` noncrossing star
/// forests, with every k-simplicial vertex colourful.
pub fn embed_star_forests(build: &KTreeBuild) -> Result<BookEmbedding, GraphError> {
    let g = build.validate()?;
    let (order, pages) = star_rec(&g.adj_map(), build.k, None);
    Ok(BookEmbedding::new(order, pages))
}

/// Case A: every edge meets the clique `u_1 < ... < u_k`; colour `i` edges
/// all touch `u_i`, clique edges take the smaller index.
fn greedy_clique_colouring(adj: &AdjMap, s: &BTreeSet<usize>) -> (Vec<usize>, Colouring) {
    let us: Vec<usize> = adj.keys().copied().filter(|v| !s.contains(v)).collect();
    let rank = |v: usize| us.iter().position(|&u| u == v);
    let mut col = Colouring::new();
    for (&a, nb) in adj {
        for &b in nb.range(a + 1..) {
            let c = match (rank(a), rank(b)) {
                (Some(i), Some(j)) => i.min(j),
                (Some(i), None) | (None, Some(i)) => i,
                (None, None) => unreachable!("S is independent"),
            };
            col.insert(Edge::new(a, b), c + 1);
        }
    }
    (adj.keys().copied().collect(), col)
}

fn star_rec(adj: &AdjMap, k: usize, nominee: Option<usize>) -> (Vec<usize>, Colouring) {
    match partition(adj, k, nominee) {
        PartitionCase::CaseA { s } => greedy_clique_colouring(adj, &s),
        PartitionCase::CaseB { s, pivot: v } => {
            let (mut order, mut col) = star_rec(&without(adj, &s), k, Some(v));
            let used: BTreeSet<usize> = adj[&v]
                .iter()
                .filter(|u| !s.contains(u))
                .map(|&u| col[&Edge::new(u, v)])
                .collect();
            debug_assert_eq!(used.len(), k, "pivot must be colourful");
            let missing = (1..=k + 1).find(|c| !used.contains(c)).expect("k + 1 colours");
            for &w in &s {
                for &u in &adj[&w] {
                    let c = if u == v { missing } else { col[&Edge::new(v, u)] };
                    col.insert(Edge::new(w, u), c);
                }
            }
            let at = order.iter().position(|&x| x == v).expect("pivot placed");
            order.splice(at + 1..at + 1, s.iter().copied());
            (order, col)
        }
    }
}

/// Two-page book embedding of a 2-tree whose pages are forests.
pub fn embed_2tree_forests(build: &KTreeBuild) -> Result<BookEmbedding, GraphError> {
    if build.k != 2 {
        return Err(GraphError::Parameter(format!(
            "forest book embedding needs a 2-tree, got k = {}",
            build.k
        )));
    }
    let g = build.validate()?;
    let (order, pages) = forest_rec(&g.adj_map(), None);
    Ok(BookEmbedding::new(order, pages))
}

fn forest_rec(adj: &AdjMap, nominee: Option<usize>) -> (Vec<usize>, Colouring) {
    match partition(adj, 2, nominee) {
        PartitionCase::CaseA { s } => greedy_clique_colouring(adj, &s),
        PartitionCase::CaseB { s, pivot: v } => {
            let (mut order, mut col) = forest_rec(&without(adj, &s), Some(v));
            let nbs: Vec<usize> = adj[&v].iter().copied().filter(|u| !s.contains(u)).collect();
            let at = order.iter().position(|&x| x == v).expect("pivot placed");
            // First neighbour of v met going clockwise.
            let a = (1..order.len())
                .map(|d| order[(at + d) % order.len()])
                .find(|x| nbs.contains(x))
                .expect("pivot has two neighbours");
            let ca = col[&Edge::new(v, a)];
            let (mut after, mut before) = (Vec::new(), Vec::new());
            for &w in &s {
                let u = *adj[&w].iter().find(|&&u| u != v).expect("degree two");
                let cu = col[&Edge::new(v, u)];
                col.insert(Edge::new(w, u), cu);
                col.insert(Edge::new(w, v), 3 - cu);
                if u == a {
                    after.push(w);
                } else {
                    before.push(w);
                }
            }
            debug_assert!(ca == 1 || ca == 2);
            order.splice(at + 1..at + 1, after);
            order.splice(at..at, before);
            (order, col)
        }
    }
}

/// `K_{2k}` on `u_1..u_{2k}` (vertices `0..2k`) in order, edge `u_a u_b` on
/// page `1 + ((a + b) mod 2k) / 2`.
pub fn zigzag_complete(k: usize) -> Result<BookEmbedding, GraphError> {
    if k == 0 {
        return Err(GraphError::Parameter("k must be positive".into()));
    }
    let m = 2 * k;
    let mut pages = Colouring::new();
    for a in 1..=m {
        for b in a + 1..=m {
            pages.insert(Edge::new(a - 1, b - 1), zigzag_colour(k, a, b));
        }
    }
    Ok(BookEmbedding {
        order: (0..m).collect(),
        pages,
        page_count: k,
    })
}

/// Zig-zag colour of `u_a u_b` (1-based labels) in `K_{2k}`.
pub(crate) fn zigzag_colour(k: usize, a: usize, b: usize) -> usize {
    1 + ((a + b) % (2 * k)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_split, random_ktree, Addition};

    fn page(b: &BookEmbedding, p: usize) -> BTreeSet<Edge> {
        b.pages.iter().filter(|(_, &q)| q == p).map(|(&e, _)| e).collect()
    }

    fn no_crossings(b: &BookEmbedding) -> bool {
        let edges: Vec<(Edge, usize)> = b.pages.iter().map(|(&e, &p)| (e, p)).collect();
        edges.iter().enumerate().all(|(i, &(e, p))| {
            edges[i + 1..]
                .iter()
                .all(|&(f, q)| p != q || !book_crosses(&b.order, e, f))
        })
    }

    #[test]
    fn crossing_examples() {
        let order = [0, 1, 2, 3];
        assert!(book_crosses(&order, Edge::new(0, 2), Edge::new(1, 3)));
        assert!(!book_crosses(&order, Edge::new(0, 1), Edge::new(2, 3)));
        assert!(!book_crosses(&order, Edge::new(0, 1), Edge::new(0, 2)));
    }

    #[test]
    fn zigzag_k2_pages() {
        let b = zigzag_complete(2).unwrap();
        let e = |a: usize, c: usize| Edge::new(a - 1, c - 1);
        assert_eq!(page(&b, 1), BTreeSet::from([e(1, 3), e(1, 4), e(2, 3)]));
        assert_eq!(page(&b, 2), BTreeSet::from([e(1, 2), e(2, 4), e(3, 4)]));
        let one = zigzag_complete(1).unwrap();
        assert_eq!(one.pages.len(), 1);
        assert_eq!(one.pages[&Edge::new(0, 1)], 1);
    }

    #[test]
    fn zigzag_pages_are_noncrossing() {
        for k in 1..=6 {
            let b = zigzag_complete(k).unwrap();
            assert_eq!(b.pages.len(), k * (2 * k - 1));
            assert!(no_crossings(&b), "k = {k}");
        }
    }

    #[test]
    fn star_book_k4_and_k3() {
        let k4 = KTreeBuild {
            k: 3,
            base: vec![0, 1, 2, 3],
            additions: vec![],
        };
        let b = embed_star_forests(&k4).unwrap();
        assert_eq!(b.page_count, 3);
        // S = {0}; stars at 1, 2, 3.
        assert_eq!(page(&b, 1), BTreeSet::from([Edge::new(0, 1), Edge::new(1, 2), Edge::new(1, 3)]));
        assert_eq!(page(&b, 3), BTreeSet::from([Edge::new(0, 3)]));

        let k3 = KTreeBuild {
            k: 2,
            base: vec![0, 1, 2],
            additions: vec![],
        };
        let b = embed_star_forests(&k3).unwrap();
        assert_eq!(page(&b, 1), BTreeSet::from([Edge::new(1, 2), Edge::new(0, 1)]));
        assert_eq!(page(&b, 2), BTreeSet::from([Edge::new(0, 2)]));
    }

    #[test]
    fn star_books_are_noncrossing() {
        for k in 1..=4 {
            for seed in 0..5 {
                let b = embed_star_forests(&random_ktree(k, 30, seed).unwrap()).unwrap();
                assert!(b.page_count <= k + 1);
                assert!(no_crossings(&b));
                assert_eq!(b.pages.len(), 30 * k - k * (k + 1) / 2);
            }
        }
    }

    #[test]
    fn forest_books_are_noncrossing() {
        let split = complete_split(2, 3).unwrap();
        let b = embed_2tree_forests(&split).unwrap();
        assert!(b.page_count <= 2 && no_crossings(&b));
        for seed in 0..10 {
            let b = embed_2tree_forests(&random_ktree(2, 40, seed).unwrap()).unwrap();
            assert!(b.page_count <= 2 && no_crossings(&b));
        }
        let three = KTreeBuild {
            k: 3,
            base: vec![0, 1, 2, 3],
            additions: vec![Addition {
                v: 4,
                clique: vec![0, 1, 2],
            }],
        };
        assert!(embed_2tree_forests(&three).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b = embed_star_forests(&random_ktree(2, 10, 1).unwrap()).unwrap();
        assert_eq!(BookEmbedding::from_json(&b.to_json()).unwrap(), b);
    }
}
