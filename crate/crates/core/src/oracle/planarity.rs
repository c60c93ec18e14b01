//! Planarity by path addition into faces (Demoucron, Malgrange, Pertuiset),
//! run block by block.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Edge, Graph};

/// Whether `g` has a plane drawing.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    blocks(g).iter().all(|b| b.len() < 3 || block_planar(b))
}

/// Whether `g` has a plane drawing with every vertex on the outer face:
/// the same as `g` plus a vertex joined to everything being planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n >= 2 && g.edge_count() > 2 * n - 3 {
        return false;
    }
    let mut h = g.clone();
    let apex = h.add_vertex();
    for v in 0..n {
        h.add_edge(apex, v);
    }
    is_planar(&h)
}

/// Edge sets of the biconnected components.
fn blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, v: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        let nbrs: Vec<usize> = s.g.neighbours(v).iter().copied().collect();
        for u in nbrs {
            if Some(u) == parent {
                continue;
            }
            if s.disc[u] == 0 {
                s.stack.push(Edge::new(u, v));
                dfs(s, u, Some(v));
                s.low[v] = s.low[v].min(s.low[u]);
                if s.low[u] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == Edge::new(u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[u] < s.disc[v] {
                s.stack.push(Edge::new(u, v));
                s.low[v] = s.low[v].min(s.disc[u]);
            }
        }
    }
    let n = g.vertex_count();
    let mut s = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

/// Faces of a biconnected plane subgraph are simple cycles, so a fragment
/// fits a face when the face holds all its attachments.
fn block_planar(edges: &[Edge]) -> bool {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().insert(e.hi());
        adj.entry(e.hi()).or_default().insert(e.lo());
    }
    let first = edges[0];
    let Some(back) = path_avoiding(&adj, first.hi(), first.lo(), first) else {
        return true;
    };
    let mut faces: Vec<Vec<usize>> = vec![back.clone(), back.iter().rev().copied().collect()];
    let mut on: BTreeSet<usize> = back.iter().copied().collect();
    let mut done: BTreeSet<Edge> = (0..back.len())
        .map(|i| Edge::new(back[i], back[(i + 1) % back.len()]))
        .collect();

    while done.len() < edges.len() {
        let frags = fragments(&adj, &on, &done);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, f) in frags.iter().enumerate() {
            let fits: Vec<usize> = (0..faces.len())
                .filter(|&i| f.attach.iter().all(|a| faces[i].contains(a)))
                .collect();
            match fits.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, fits[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, fits[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("a fragment remains while edges remain");
        let path = frags[fi].path.clone();
        let f = faces.swap_remove(face);
        let (a, b) = (path[0], *path.last().expect("path"));
        let i = f.iter().position(|&x| x == a).expect("attachment on face");
        let j = f.iter().position(|&x| x == b).expect("attachment on face");
        let walk = |from: usize, to: usize| {
            let mut out = vec![f[from]];
            let mut k = from;
            while k != to {
                k = (k + 1) % f.len();
                out.push(f[k]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut one = walk(i, j);
        one.extend(inner.iter().rev());
        let mut two = walk(j, i);
        two.extend(inner.iter());
        faces.push(one);
        faces.push(two);
        for w in path.windows(2) {
            done.insert(Edge::new(w[0], w[1]));
        }
        on.extend(path.iter().copied());
    }
    true
}

struct Fragment {
    attach: BTreeSet<usize>,
    /// A path through the fragment between two distinct attachments.
    path: Vec<usize>,
}

fn fragments(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    on: &BTreeSet<usize>,
    done: &BTreeSet<Edge>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&u, nb) in adj {
        for &v in nb.range(u + 1..) {
            if on.contains(&u) && on.contains(&v) && !done.contains(&Edge::new(u, v)) {
                out.push(Fragment {
                    attach: BTreeSet::from([u, v]),
                    path: vec![u, v],
                });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in adj.keys() {
        if on.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let mut attach = BTreeSet::new();
        while let Some(x) = queue.pop_front() {
            for &y in &adj[&x] {
                if on.contains(&y) {
                    attach.insert(y);
                } else if comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let a = *attach.iter().next().expect("blocks attach at two vertices");
        out.push(Fragment {
            path: path_through(adj, &comp, a),
            attach,
        });
    }
    out
}

/// From attachment `a` into `comp` and out to a different attachment.
fn path_through(adj: &BTreeMap<usize, BTreeSet<usize>>, comp: &BTreeSet<usize>, a: usize) -> Vec<usize> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &y in adj[&a].iter().filter(|y| comp.contains(y)) {
        prev.insert(y, a);
        queue.push_back(y);
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if comp.contains(&y) {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            } else if y != a {
                let mut path = vec![y, x];
                let mut cur = x;
                while let Some(&p) = prev.get(&cur) {
                    path.push(p);
                    if p == a {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("a fragment of a block has two attachments")
}

/// A path from `s` to `t` not using edge `skip`, as a vertex list.
fn path_avoiding(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    s: usize,
    t: usize,
    skip: Edge,
) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::from([(s, s)]);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut cur = t;
            while cur != s {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[&x] {
            if Edge::new(x, y) != skip && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Kuratowski at six vertices or fewer: a `K_5` (possibly with one
    /// subdivided edge) or a `K_{3,3}` as a subgraph.
    fn kuratowski_small(g: &Graph) -> bool {
        let n = g.vertex_count();
        assert!(n <= 6);
        let has = |a: usize, b: usize| g.has_edge(a, b);
        for set in 0u32..1 << n {
            let vs: Vec<usize> = (0..n).filter(|v| set >> v & 1 == 1).collect();
            if vs.len() == 5 {
                let missing: Vec<(usize, usize)> = (0..5)
                    .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                    .map(|(i, j)| (vs[i], vs[j]))
                    .filter(|&(a, b)| !has(a, b))
                    .collect();
                match missing[..] {
                    [] => return true,
                    [(a, b)]
                        if (0..n).any(|w| !vs.contains(&w) && has(a, w) && has(w, b)) => {
                            return true;
                        }
                    _ => {}
                }
            }
            if vs.len() == 6 && vs[0] == 0 {
                // Side containing vertex 0 versus the rest.
                for side in 0u32..1 << 6 {
                    if side & 1 == 0 || side.count_ones() != 3 {
                        continue;
                    }
                    let (l, r): (Vec<usize>, Vec<usize>) = (0..6).partition(|i| side >> i & 1 == 1);
                    if l.iter().all(|&a| r.iter().all(|&b| has(a, b))) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn agrees_with_kuratowski_on_all_small_graphs() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for mask in 0u32..1 << pairs.len() {
                let es: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let g = Graph::from_edges(n, &es).unwrap();
                assert_eq!(is_planar(&g), !kuratowski_small(&g), "edges {es:?}");
            }
        }
    }

    #[test]
    fn named_graphs() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert!(!is_planar(&Graph::from_edges(6, &k33).unwrap()));
        // Petersen graph.
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let pet: Vec<(usize, usize)> = outer.chain(spokes).chain(inner).collect();
        assert!(!is_planar(&Graph::from_edges(10, &pet).unwrap()));
        // Octahedron.
        let mut oct = Graph::complete(6);
        let mut h = Graph::new(6);
        for e in oct.edges() {
            if !(e.lo() % 3 == e.hi() % 3) {
                h.add_edge(e.lo(), e.hi());
            }
        }
        oct = h;
        assert!(is_planar(&oct));
    }

    #[test]
    fn outerplanar_examples() {
        assert!(!is_outerplanar(&Graph::complete(4)));
        assert!(is_outerplanar(&Graph::complete(3)));
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!is_outerplanar(&k23));
        let fan = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(is_outerplanar(&fan));
    }
}
