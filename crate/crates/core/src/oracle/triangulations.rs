//! All triangulations of the sphere on `n` vertices up to isomorphism,
//! reached by edge flips from a stacked one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Edge, Graph};

/// Oriented triangular faces; each directed edge appears in exactly one.
#[derive(Clone, Debug)]
pub struct Triangulation {
    faces: BTreeSet<[usize; 3]>,
    n: usize,
}

/// Rotate so the smallest vertex leads, keeping orientation.
fn norm(f: [usize; 3]) -> [usize; 3] {
    let i = (0..3).min_by_key(|&i| f[i]).expect("three");
    [f[i], f[(i + 1) % 3], f[(i + 2) % 3]]
}

impl Triangulation {
    /// The tetrahedron with vertices `3..n` stacked into faces.
    fn stacked(n: usize) -> Self {
        let mut faces: BTreeSet<[usize; 3]> =
            [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]].into_iter().map(norm).collect();
        for v in 4..n {
            let f = *faces.iter().next_back().expect("faces");
            faces.remove(&f);
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                faces.insert(norm([a, b, v]));
            }
        }
        Triangulation { faces, n }
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for f in &self.faces {
            g.add_edge(f[0], f[1]);
            g.add_edge(f[1], f[2]);
            g.add_edge(f[2], f[0]);
        }
        g
    }

    /// `succ[v][a] = b` when `b` follows `a` counterclockwise around `v`.
    fn rotation(&self) -> Vec<BTreeMap<usize, usize>> {
        let mut succ = vec![BTreeMap::new(); self.n];
        for f in &self.faces {
            for i in 0..3 {
                succ[f[i]].insert(f[(i + 1) % 3], f[(i + 2) % 3]);
            }
        }
        succ
    }

    /// The face containing directed edge `a -> b`.
    fn face_with(&self, a: usize, b: usize) -> [usize; 3] {
        *self
            .faces
            .iter()
            .find(|f| (0..3).any(|i| f[i] == a && f[(i + 1) % 3] == b))
            .expect("directed edge in a face")
    }

    /// Flips edge `uv` to the other diagonal of its quadrilateral, unless that
    /// diagonal is already an edge.
    fn flip(&self, e: Edge) -> Option<Self> {
        let (u, v) = e.ends();
        let f1 = self.face_with(u, v);
        let f2 = self.face_with(v, u);
        let w = f1.iter().copied().find(|&x| x != u && x != v).expect("apex");
        let x = f2.iter().copied().find(|&y| y != u && y != v).expect("apex");
        if self.graph().has_edge(w, x) {
            return None;
        }
        let mut faces = self.faces.clone();
        faces.remove(&f1);
        faces.remove(&f2);
        faces.insert(norm([u, x, w]));
        faces.insert(norm([x, v, w]));
        Some(Triangulation { faces, n: self.n })
    }

    /// Smallest breadth-first rotation code over all starting darts and both
    /// orientations; equal codes mean isomorphic triangulations.
    fn canonical(&self) -> Vec<usize> {
        let succ = self.rotation();
        let pred: Vec<BTreeMap<usize, usize>> = succ
            .iter()
            .map(|m| m.iter().map(|(&a, &b)| (b, a)).collect())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        for rot in [&succ, &pred] {
            for s in 0..self.n {
                for &t in rot[s].keys() {
                    let code = bfs_code(rot, s, t, self.n);
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn bfs_code(rot: &[BTreeMap<usize, usize>], s: usize, t: usize, n: usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut first = vec![usize::MAX; n];
    label[s] = 0;
    first[s] = t;
    let mut next = 1;
    let mut queue = VecDeque::from([s]);
    let mut code = Vec::new();
    while let Some(v) = queue.pop_front() {
        let start = first[v];
        let mut a = start;
        loop {
            if label[a] == usize::MAX {
                label[a] = next;
                first[a] = v;
                next += 1;
                queue.push_back(a);
            }
            code.push(label[a]);
            a = rot[v][&a];
            if a == start {
                break;
            }
        }
        code.push(usize::MAX);
    }
    code
}

/// Every triangulation on `n >= 4` vertices, one per isomorphism class, in
/// discovery order.
pub fn all_triangulations(n: usize) -> Vec<Triangulation> {
    assert!(n >= 4, "triangulations need at least four vertices");
    let start = Triangulation::stacked(n);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.canonical()]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for e in t.graph().edges() {
            if let Some(f) = t.flip(e) {
                if seen.insert(f.canonical()) {
                    out.push(f.clone());
                    queue.push_back(f);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::planarity::is_planar;

    #[test]
    fn known_counts() {
        // Triangulations of the sphere up to isomorphism.
        for (n, count) in [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14), (9, 50)] {
            let ts = all_triangulations(n);
            assert_eq!(ts.len(), count, "n = {n}");
            for t in &ts {
                let g = t.graph();
                assert_eq!(g.edge_count(), 3 * n - 6);
                assert!(is_planar(&g));
            }
        }
    }
}
