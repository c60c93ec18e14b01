//! Checkers for the artifacts the constructions produce, the Nash-Williams
//! density bound, and the refuters behind the lower bounds: given any
//! colouring with too few colours they return a monochromatic obstruction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::book::{book_crosses, BookEmbedding};
use crate::geom::exact::{closed_segments_cross, Canvas, Pt};
use crate::geom::{Drawing, Point};
use crate::graph::{ColourVector, Colouring, Edge, Graph, GraphError, KTreeBuild, SplitParts, StarGadget};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coverage mismatch: {0}")]
    Coverage(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Degree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    fn new() -> Self {
        Report {
            passed: true,
            violations: Vec::new(),
        }
    }

    fn flag(&mut self, kind: &str, elements: Vec<String>) {
        self.passed = false;
        self.violations.push(Violation {
            kind: kind.to_string(),
            elements,
        });
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// What each colour class must be on top of noncrossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerMode {
    Noncrossing,
    Forest,
    StarForest,
}

impl FromStr for LayerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "noncrossing" => Ok(LayerMode::Noncrossing),
            "forest" => Ok(LayerMode::Forest),
            "star_forest" | "star-forest" => Ok(LayerMode::StarForest),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

impl fmt::Display for LayerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LayerMode::Noncrossing => "noncrossing",
            LayerMode::Forest => "forest",
            LayerMode::StarForest => "star_forest",
        })
    }
}

fn check_coverage(colours: &Colouring, g: &Graph) -> Result<(), VerifyError> {
    let want: BTreeSet<Edge> = g.edges().into_iter().collect();
    let have: BTreeSet<Edge> = colours.keys().copied().collect();
    if let Some(e) = want.difference(&have).next() {
        return Err(VerifyError::Coverage(format!("edge {e} is not coloured")));
    }
    if let Some(e) = have.difference(&want).next() {
        return Err(VerifyError::Coverage(format!("edge {e} is not in the graph")));
    }
    if let Some((e, _)) = colours.iter().find(|(_, &c)| c == 0) {
        return Err(VerifyError::Coverage(format!("edge {e} has colour 0")));
    }
    Ok(())
}

fn classes(colours: &Colouring) -> BTreeMap<usize, Vec<Edge>> {
    let mut out: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (&e, &c) in colours {
        out.entry(c).or_default().push(e);
    }
    out
}

/// Forest and star-forest conditions on one colour class.
fn check_shape(report: &mut Report, colour: usize, edges: &[Edge], mode: LayerMode) {
    if mode == LayerMode::Noncrossing {
        return;
    }
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for &e in edges {
        let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
        if a == b {
            report.flag("cycle", vec![format!("colour {colour}"), e.to_string()]);
            return;
        }
        parent.insert(a, b);
    }
    if mode == LayerMode::StarForest {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for e in edges {
            *degree.entry(e.lo()).or_default() += 1;
            *degree.entry(e.hi()).or_default() += 1;
        }
        let mut centres: BTreeMap<usize, usize> = BTreeMap::new();
        let hubs: Vec<usize> = degree.iter().filter(|(_, &d)| d >= 2).map(|(&v, _)| v).collect();
        for v in hubs {
            let root = find(&mut parent, v);
            if let Some(&other) = centres.get(&root) {
                report.flag(
                    "not_star",
                    vec![format!("colour {colour}"), other.to_string(), v.to_string()],
                );
                return;
            }
            centres.insert(root, v);
        }
    }
}

/// Every page noncrossing in the given vertex order, plus the mode's shape.
pub fn check_book(emb: &BookEmbedding, g: &Graph, mode: LayerMode) -> Result<Report, VerifyError> {
    let n = g.vertex_count();
    let mut sorted = emb.order.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(VerifyError::Coverage("vertex order is not a permutation of the graph's vertices".into()));
    }
    check_coverage(&emb.pages, g)?;
    let mut report = Report::new();
    for (c, edges) in classes(&emb.pages) {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if book_crosses(&emb.order, e, f) {
                    report.flag("crossing", vec![format!("page {c}"), e.to_string(), f.to_string()]);
                }
            }
        }
        check_shape(&mut report, c, &edges, mode);
    }
    Ok(report)
}

/// Coverage and the mode's shape for a plain edge partition, with no
/// geometry attached.
pub fn check_classes(colouring: &Colouring, g: &Graph, mode: LayerMode) -> Result<Report, VerifyError> {
    check_coverage(colouring, g)?;
    let mut report = Report::new();
    for (c, edges) in classes(colouring) {
        check_shape(&mut report, c, &edges, mode);
    }
    Ok(report)
}

/// Collinear triple among integer points, by hashing primitive directions.
fn collinear_triple(pts: &BTreeMap<usize, Pt<BigInt>>) -> Option<(usize, usize, usize)> {
    let list: Vec<(&usize, &Pt<BigInt>)> = pts.iter().collect();
    for (i, (&a, pa)) in list.iter().enumerate() {
        let mut seen: BTreeMap<(BigInt, BigInt), usize> = BTreeMap::new();
        for (&b, pb) in &list[i + 1..] {
            let d = pb.sub(pa);
            let g = num_integer::Integer::gcd(&d.x, &d.y);
            if g.is_zero() {
                return Some((a, b, b));
            }
            let (mut x, mut y) = (&d.x / &g, &d.y / &g);
            if x.is_negative() || (x.is_zero() && y.is_negative()) {
                x = -x;
                y = -y;
            }
            if let Some(&c) = seen.get(&(x.clone(), y.clone())) {
                return Some((a, c, b));
            }
            seen.insert((x, y), b);
        }
    }
    None
}

/// General position, per-colour noncrossing, and the mode's shape.
pub fn check_drawing_layers(d: &Drawing, g: &Graph, mode: LayerMode) -> Result<Report, VerifyError> {
    if let Some(v) = (0..g.vertex_count()).find(|v| !d.positions.contains_key(v)) {
        return Err(VerifyError::Coverage(format!("vertex {v} has no position")));
    }
    check_coverage(&d.colours, g)?;
    let canvas = Canvas::new(&d.positions);
    let pts = canvas.grid_points();
    let mut report = Report::new();
    if let Some((a, b, c)) = collinear_triple(pts) {
        let kind = if b == c { "coincident" } else { "collinear" };
        report.flag(kind, vec![a.to_string(), b.to_string(), c.to_string()]);
    }
    for (c, edges) in classes(&d.colours) {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if closed_segments_cross(&pts[&e.lo()], &pts[&e.hi()], &pts[&f.lo()], &pts[&f.hi()]) {
                    report.flag("crossing", vec![format!("colour {c}"), e.to_string(), f.to_string()]);
                }
            }
        }
        check_shape(&mut report, c, &edges, mode);
    }
    Ok(report)
}

/// The edges at `v` carry pairwise distinct colours.
pub fn check_colourful(colouring: &Colouring, v: usize) -> bool {
    let mut seen = BTreeSet::new();
    colouring
        .iter()
        .filter(|(e, _)| e.touches(v))
        .all(|(_, &c)| seen.insert(c))
}

/// Counterclockwise angle class: `[0, π)` before `[π, 2π)`.
fn upper(d: &Point) -> bool {
    d.y.is_positive() || (d.y.is_zero() && d.x.is_positive())
}

fn clockwise(a: &Point, b: &Point) -> Ordering {
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => BigRational::zero().cmp(&a.cross(b)).reverse(),
    }
}

/// `v` is a fan: with `k = deg(v) / 2`, the neighbours read clockwise split
/// into `u_1..u_k, u_{-1}..u_{-k}` so that `v u_{±i}` has colour `i` and
/// `ray(u_i)`, `oray(u_{-i})` (and `ray(u_{-i})`, `oray(u_i)`) are
/// consecutive among the `4k` rays.
pub fn check_fan(d: &Drawing, v: usize) -> Result<bool, VerifyError> {
    let nbrs: Vec<usize> = d
        .colours
        .keys()
        .filter(|e| e.touches(v))
        .map(|e| e.other(v))
        .collect();
    let k = d.colour_count;
    if nbrs.len() != 2 * k || k == 0 {
        return Err(VerifyError::Degree {
            vertex: v,
            degree: nbrs.len(),
            expected: 2 * k,
        });
    }
    let Some(pv) = d.positions.get(&v) else {
        return Err(VerifyError::Coverage(format!("vertex {v} has no position")));
    };
    let mut rays: Vec<((usize, bool), Point)> = Vec::new();
    for &u in &nbrs {
        let dir = d.positions[&u].sub(pv);
        if dir.is_origin() {
            return Ok(false);
        }
        rays.push(((u, true), dir.clone()));
        rays.push(((u, false), dir.neg()));
    }
    rays.sort_by(|a, b| clockwise(&a.1, &b.1));
    let m = rays.len();
    for i in 0..m {
        let (a, b) = (&rays[i].1, &rays[(i + 1) % m].1);
        if upper(a) == upper(b) && a.cross(b).is_zero() {
            // Two rays coincide, so the order is not strict.
            return Ok(false);
        }
    }
    let at: BTreeMap<(usize, bool), usize> = rays.iter().enumerate().map(|(i, (r, _))| (*r, i)).collect();
    let next_to = |a: (usize, bool), b: (usize, bool)| {
        let (i, j) = (at[&a], at[&b]);
        (i + 1) % m == j || (j + 1) % m == i
    };
    let around: Vec<usize> = rays.iter().filter(|(r, _)| r.1).map(|(r, _)| r.0).collect();
    let colour = |u: usize| d.colours[&Edge::new(u, v)];
    Ok((0..2 * k).any(|s| {
        (0..k).all(|j| {
            let (p, q) = (around[(s + j) % (2 * k)], around[(s + k + j) % (2 * k)]);
            colour(p) == j + 1
                && colour(q) == j + 1
                && next_to((p, true), (q, false))
                && next_to((q, true), (p, false))
        })
    }))
}

/// General position, `k/2` noncrossing colour classes, and the fan
/// condition: on every k-simplicial vertex, or on some vertex when the graph
/// is `K_{k+1}`.
pub fn check_good(d: &Drawing, build: &KTreeBuild) -> Result<Report, VerifyError> {
    let g = build.validate()?;
    if build.k % 2 == 1 || build.k == 0 {
        return Err(VerifyError::Precondition(format!("k = {} is not even", build.k)));
    }
    let half = build.k / 2;
    let mut report = check_drawing_layers(d, &g, LayerMode::Noncrossing)?;
    if d.colour_count != half {
        report.flag("colour_count", vec![d.colour_count.to_string()]);
        return Ok(report);
    }
    if let Some((e, c)) = d.colours.iter().find(|(_, &c)| c > half) {
        report.flag("colour_range", vec![e.to_string(), c.to_string()]);
    }
    let n = g.vertex_count();
    if n == build.k + 1 {
        let any = (0..n).map(|v| check_fan(d, v)).collect::<Result<Vec<_>, _>>()?;
        if !any.into_iter().any(|f| f) {
            report.flag("no_fan", vec![]);
        }
    } else {
        for v in (0..n).filter(|&v| g.is_simplicial(v, build.k)) {
            if !check_fan(d, v)? {
                report.flag("not_fan", vec![v.to_string()]);
            }
        }
    }
    Ok(report)
}

/// Largest `⌈|E(H)| / (|V(H)| - 1)⌉` over induced subgraphs with at least
/// two vertices; 0 for edgeless graphs.
pub fn nash_williams(g: &Graph) -> Result<usize, VerifyError> {
    let n = g.vertex_count();
    if n > 12 {
        return Err(VerifyError::TooLarge(format!("{n} vertices (limit 12)")));
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut best = 0;
    for set in 0u32..1 << n {
        let size = set.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let twice: usize = (0..n)
            .filter(|v| set >> v & 1 == 1)
            .map(|v| (masks[v] & set).count_ones() as usize)
            .sum();
        best = best.max((twice / 2).div_ceil(size - 1));
    }
    Ok(best)
}

/// Whether `g` has `K_4` as a minor. Graphs without one reduce to nothing
/// by deleting vertices of degree at most one and bypassing vertices of
/// degree two.
pub fn has_k4_minor(g: &Graph) -> bool {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> =
        (0..g.vertex_count()).map(|v| (v, g.neighbours(v).clone())).collect();
    loop {
        let Some((&v, nb)) = adj.iter().find(|(_, nb)| nb.len() <= 2) else {
            return !adj.is_empty();
        };
        let nb: Vec<usize> = nb.iter().copied().collect();
        for &u in &nb {
            adj.get_mut(&u).expect("symmetric").remove(&v);
        }
        adj.remove(&v);
        if let [a, b] = nb[..] {
            adj.get_mut(&a).expect("present").insert(b);
            adj.get_mut(&b).expect("present").insert(a);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    K33,
    K23,
    P4,
    C4,
}

/// A monochromatic subgraph. For `K33`/`K23` the independent side comes
/// first; `P4` is a path in order; `C4` is a cycle in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
    pub colour: usize,
}

impl MonoWitness {
    pub fn edges(&self) -> Vec<Edge> {
        let v = &self.vertices;
        match self.kind {
            WitnessKind::K33 | WitnessKind::K23 => {
                let (side, rest) = v.split_at(3.min(v.len()));
                side.iter()
                    .flat_map(|&a| rest.iter().map(move |&b| Edge::new(a, b)))
                    .collect()
            }
            WitnessKind::P4 => v.windows(2).map(|w| Edge::new(w[0], w[1])).collect(),
            WitnessKind::C4 => (0..v.len()).map(|i| Edge::new(v[i], v[(i + 1) % v.len()])).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("witness serializes")
    }
}

/// Shape, presence in `g`, and a single colour on every edge.
pub fn validate_witness(g: &Graph, colouring: &Colouring, w: &MonoWitness) -> bool {
    let size = match w.kind {
        WitnessKind::K33 => 6,
        WitnessKind::K23 => 5,
        WitnessKind::P4 | WitnessKind::C4 => 4,
    };
    let distinct: BTreeSet<usize> = w.vertices.iter().copied().collect();
    if w.vertices.len() != size || distinct.len() != size {
        return false;
    }
    if w.vertices.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    w.edges()
        .into_iter()
        .all(|e| g.has_edge(e.lo(), e.hi()) && colouring.get(&e) == Some(&w.colour))
}

fn colours_within(g: &Graph, colouring: &Colouring, limit: usize) -> Result<(), VerifyError> {
    for e in g.edges() {
        match colouring.get(&e) {
            Some(&c) if (1..=limit).contains(&c) => {}
            Some(&c) => {
                return Err(VerifyError::Precondition(format!(
                    "edge {e} has colour {c}, outside 1..={limit}"
                )))
            }
            None => return Err(VerifyError::Precondition(format!("edge {e} is not coloured"))),
        }
    }
    Ok(())
}

fn pow_at_least(base: usize, exp: usize, s: usize) -> bool {
    // s >= 2 base^exp + 1, without overflow.
    let mut p: u128 = 1;
    for _ in 0..exp {
        p = p.saturating_mul(base as u128);
    }
    (s as u128) >= p.saturating_mul(2).saturating_add(1)
}

/// Independent vertices with equal colour vectors, first three found.
fn same_vector_triple(parts: &SplitParts, colouring: &Colouring) -> Option<Vec<usize>> {
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &x in &parts.independent {
        let key = ColourVector::of(colouring, &parts.clique, x)?.key();
        let b = buckets.entry(key).or_default();
        b.push(x);
        if b.len() == 3 {
            return Some(b.clone());
        }
    }
    None
}

fn split_refute(
    parts: &SplitParts,
    colouring: &Colouring,
    ell: usize,
    spokes: usize,
    kind: WitnessKind,
) -> Result<MonoWitness, VerifyError> {
    let g = parts.graph();
    colours_within(&g, colouring, ell)?;
    let fail = || VerifyError::Precondition("pigeonhole step found no witness".into());
    let side = same_vector_triple(parts, colouring).ok_or_else(fail)?;
    let colour_at = |x: usize, a: usize| colouring[&Edge::new(x, a)];
    // Same vectors: the clique colours seen from side[0] are the same from
    // all three, so any colour on `spokes` clique vertices gives the witness.
    let mut found = None;
    for c in 1..=ell {
        let hits: Vec<usize> = parts
            .clique
            .iter()
            .copied()
            .filter(|&a| colour_at(side[0], a) == c)
            .take(spokes)
            .collect();
        if hits.len() == spokes {
            let mut vertices = side.clone();
            vertices.extend(hits);
            found = Some(MonoWitness { kind, vertices, colour: c });
            break;
        }
    }
    let w = found.ok_or_else(fail)?;
    if validate_witness(&g, colouring, &w) {
        Ok(w)
    } else {
        Err(fail())
    }
}

/// A monochromatic `K_{3,3}` in an `ℓ`-colouring of `K*_{k,s}` with
/// `ℓ <= ⌈k/2⌉ - 1` and `s >= 2ℓ^k + 1`.
pub fn refute_thickness(
    parts: &SplitParts,
    colouring: &Colouring,
    ell: usize,
) -> Result<MonoWitness, VerifyError> {
    let k = parts.k;
    let s = parts.independent.len();
    if k < 3 || ell == 0 || ell > k.div_ceil(2) - 1 {
        return Err(VerifyError::Precondition(format!("need k >= 3 and 1 <= ℓ <= ⌈k/2⌉ - 1, got k={k}, ℓ={ell}")));
    }
    if k.div_ceil(ell) < 3 {
        return Err(VerifyError::Precondition(format!("⌈k/ℓ⌉ < 3 for k={k}, ℓ={ell}")));
    }
    if !pow_at_least(ell, k, s) {
        return Err(VerifyError::Precondition(format!("s = {s} is below 2ℓ^k + 1")));
    }
    split_refute(parts, colouring, ell, 3, WitnessKind::K33)
}

/// A monochromatic `K_{2,3}` in an `ℓ`-colouring of `K*_{k,s}` with
/// `ℓ <= k - 1` and `s >= 2ℓ^k + 1`.
pub fn refute_outerthickness(
    parts: &SplitParts,
    colouring: &Colouring,
    ell: usize,
) -> Result<MonoWitness, VerifyError> {
    let k = parts.k;
    let s = parts.independent.len();
    if k < 2 || ell == 0 || ell > k - 1 {
        return Err(VerifyError::Precondition(format!("need k >= 2 and 1 <= ℓ <= k - 1, got k={k}, ℓ={ell}")));
    }
    if !pow_at_least(ell, k, s) {
        return Err(VerifyError::Precondition(format!("s = {s} is below 2ℓ^k + 1")));
    }
    split_refute(parts, colouring, ell, 2, WitnessKind::K23)
}

/// A monochromatic 4-vertex path or 4-cycle in a colouring of the star
/// gadget with at most `k` colours.
pub fn refute_star_arboricity(
    gadget: &StarGadget,
    colouring: &Colouring,
) -> Result<MonoWitness, VerifyError> {
    let parts = &gadget.parts;
    let k = parts.k;
    let s = parts.independent.len();
    if k.checked_pow(k as u32).and_then(|p| p.checked_add(1)) != Some(s)
        || gadget.pendants.len() != s
    {
        return Err(VerifyError::Precondition("not a star gadget with s = k^k + 1".into()));
    }
    colours_within(&gadget.graph, colouring, k)?;
    let fail = || VerifyError::Precondition("pigeonhole step found no witness".into());
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut pair = None;
    for (j, &x) in parts.independent.iter().enumerate() {
        let key = ColourVector::of(colouring, &parts.clique, x).ok_or_else(fail)?.key();
        if let Some(&i) = seen.get(&key) {
            pair = Some((i, j));
            break;
        }
        seen.insert(key, j);
    }
    let (i, j) = pair.ok_or_else(fail)?;
    let (x, y) = (parts.independent[i], parts.independent[j]);
    let colour_at = |a: usize, b: usize| colouring[&Edge::new(a, b)];
    let clique = &parts.clique;
    let mut w = None;
    'pairs: for (ai, &a) in clique.iter().enumerate() {
        for &b in &clique[ai + 1..] {
            if colour_at(x, a) == colour_at(x, b) {
                w = Some(MonoWitness {
                    kind: WitnessKind::C4,
                    vertices: vec![x, a, y, b],
                    colour: colour_at(x, a),
                });
                break 'pairs;
            }
        }
    }
    if w.is_none() {
        // All k colours appear on the spokes at x, one of them on the pendant.
        let xp = gadget.pendants[i];
        let c = colour_at(x, xp);
        let p = clique.iter().copied().find(|&p| colour_at(x, p) == c).ok_or_else(fail)?;
        w = Some(MonoWitness {
            kind: WitnessKind::P4,
            vertices: vec![xp, x, p, y],
            colour: c,
        });
    }
    let w = w.expect("set above");
    if validate_witness(&gadget.graph, colouring, &w) {
        Ok(w)
    } else {
        Err(fail())
    }
}
