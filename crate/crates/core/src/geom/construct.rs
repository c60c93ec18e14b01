//! The drawing constructions: planar 2-trees, star-forest layers, and the
//! fan-based layered drawings of k-trees.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::epsilon::empty_radius;
use super::exact::{
    closed_segments_cross, floor_log2, floor_log2_sqrt, in_open_wedge, pow2, snap_coord, Canvas,
    Frac, Pt,
};
use super::fan::{fan_labels, in_f_wedge, sorted_rays, FanLabels};
use super::perturb::radius;
use super::{collinear_with, Drawing, GeomError, Point};
use crate::book::zigzag_colour;
use crate::graph::{
    ktree_lift, partition, without, AdjMap, Colouring, Edge, GraphError, KTreeBuild,
    PartitionCase,
};

/// Placement loops halve their step at most this often before giving up.
const MAX_HALVINGS: usize = 400;

/// Snapped points sit on a grid this many binary digits finer than the step.
const SNAP_BITS: i64 = 10;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn half() -> BigRational {
    rat(1, 2)
}

fn log2(r: &BigRational) -> i64 {
    floor_log2(&Frac::from_ratio(r))
}

fn snap(p: &Point, e: i64) -> Point {
    Pt::new(snap_coord(&p.x, e), snap_coord(&p.y, e))
}

fn unit_l1(d: &Point) -> Point {
    d.scale(&(BigRational::one() / d.l1()))
}

/// `d` turned by a right angle.
fn perp(d: &Point) -> Point {
    Pt::new(-d.y.clone(), d.x.clone())
}

fn stuck(what: &str) -> GeomError {
    GeomError::Invalid(format!("no valid placement found for {what}"))
}

/// A drawing under construction.
struct Work {
    canvas: Canvas,
    colours: Colouring,
    adj: AdjMap,
    colour_count: usize,
}

impl Work {
    fn new(colour_count: usize) -> Self {
        Work {
            canvas: Canvas::new(&BTreeMap::new()),
            colours: Colouring::new(),
            adj: AdjMap::new(),
            colour_count,
        }
    }

    fn from_drawing(d: &Drawing) -> Self {
        Work {
            canvas: Canvas::new(&d.positions),
            colours: d.colours.clone(),
            adj: d.adjacency(),
            colour_count: d.colour_count,
        }
    }

    fn into_drawing(self) -> Drawing {
        Drawing {
            positions: self.canvas.into_positions(),
            colours: self.colours,
            colour_count: self.colour_count,
        }
    }

    fn place(&mut self, v: usize, p: Point) {
        self.canvas.insert(v, p);
        self.adj.entry(v).or_default();
    }

    fn connect(&mut self, a: usize, b: usize, c: usize) {
        self.colours.insert(Edge::new(a, b), c);
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    fn disconnect(&mut self, a: usize, b: usize) -> Option<usize> {
        self.adj.entry(a).or_default().remove(&b);
        self.adj.entry(b).or_default().remove(&a);
        self.colours.remove(&Edge::new(a, b))
    }

    fn point(&self, v: usize) -> &Point {
        self.canvas.point(v)
    }

    fn grid(&self, v: usize) -> &Pt<BigInt> {
        self.canvas.grid(v)
    }

    fn edges(&self) -> Vec<Edge> {
        self.colours.keys().copied().collect()
    }

    fn class(&self, c: usize) -> Vec<Edge> {
        self.colours
            .iter()
            .filter(|(_, &x)| x == c)
            .map(|(&e, _)| e)
            .collect()
    }

    /// An edge of colour `c`, other than `except`, met by the grid segment `ab`.
    fn crossing(
        &self,
        a: &Pt<BigInt>,
        b: &Pt<BigInt>,
        c: usize,
        except: Option<Edge>,
    ) -> Option<Edge> {
        let pts = self.canvas.grid_points();
        self.colours
            .iter()
            .filter(|&(&e, &x)| x == c && Some(e) != except)
            .map(|(&e, _)| e)
            .find(|e| closed_segments_cross(a, b, &pts[&e.lo()], &pts[&e.hi()]))
    }

    /// The grid point `p`, joined to each `(u, colour)`, crosses nothing.
    fn joins_cleanly(&self, p: &Pt<BigInt>, joins: &[(usize, usize)]) -> bool {
        joins
            .iter()
            .all(|&(u, c)| self.crossing(p, self.grid(u), c, None).is_none())
    }

    fn collinear(&self, p: &Pt<BigInt>, skip: Option<usize>, allowed: &[(usize, usize)]) -> bool {
        collinear_with(self.canvas.grid_points(), p, skip, allowed).is_some()
    }

    fn fan(&self, v: usize) -> Option<FanLabels> {
        let nbrs: Vec<usize> = self.adj[&v].iter().copied().collect();
        fan_labels(&self.canvas, &self.colours, v, &nbrs)
    }

    fn empty_radius(&self, v: usize) -> BigRational {
        empty_radius(&self.canvas, v, &self.adj[&v], &self.edges())
    }

    /// `|p - v| < r` for a grid point `p`.
    fn within(&self, p: &Pt<BigInt>, v: usize, r: &BigRational) -> bool {
        let g = self.canvas.grid_len(r);
        BigRational::from_integer(p.sub(self.grid(v)).norm2()) < &g * &g
    }
}

/// `u_1..u_k` evenly-ish spread on the upper unit semicircle via rational
/// tangent half-angles, followed by their antipodes.
fn circle_points(k: usize) -> Vec<Point> {
    let k = k as i64;
    let mut pts: Vec<Point> = (1..=k)
        .map(|a| {
            let t = rat(k + 1 - 2 * a, k + 1);
            let den = BigRational::one() + &t * &t;
            Pt::new(
                (BigRational::one() - &t * &t) / &den,
                (BigRational::from_integer(2.into()) * &t) / &den,
            )
        })
        .collect();
    let opposite: Vec<Point> = pts.iter().map(Pt::neg).collect();
    pts.extend(opposite);
    pts
}

/// Colour of `v u_a` in the base drawing: the colour of the diameter through
/// `u_a`.
fn diameter_colour(k: usize, a: usize) -> usize {
    let a = (a - 1) % k + 1;
    zigzag_colour(k, a, a + k)
}

/// `K_{2k+1}` with `us` on the circle and `v` a fan near the centre.
fn base_work(k: usize, v: usize, us: &[usize]) -> Result<Work, GeomError> {
    debug_assert_eq!(us.len(), 2 * k);
    let mut w = Work::new(k);
    for (u, p) in us.iter().zip(circle_points(k)) {
        w.place(*u, p);
    }
    for a in 1..=2 * k {
        for b in a + 1..=2 * k {
            w.connect(us[a - 1], us[b - 1], zigzag_colour(k, a, b));
        }
    }
    let towards = w.point(us[0]).add(w.point(us[1]));
    let joins: Vec<(usize, usize)> = (1..=2 * k).map(|a| (us[a - 1], diameter_colour(k, a))).collect();
    let mut s = rat(1, 8);
    for _ in 0..MAX_HALVINGS {
        let cand = towards.scale(&s);
        let g = w.canvas.admit_grid(&cand);
        if !w.collinear(&g, None, &[]) && w.joins_cleanly(&g, &joins) {
            w.place(v, cand);
            for &(u, c) in &joins {
                w.connect(v, u, c);
            }
            if w.fan(v).is_some() {
                return Ok(w);
            }
            for &(u, _) in &joins {
                w.disconnect(v, u);
            }
            w.canvas.remove(v);
            w.adj.remove(&v);
        }
        s *= half();
    }
    Err(stuck("the base fan"))
}

/// A layered drawing of `K_{2k+1}` on `0..=2k` in which `fan_vertex` is a
/// fan.
pub fn base_complete_odd(k: usize, fan_vertex: usize) -> Result<Drawing, GeomError> {
    if k < 2 {
        return Err(GraphError::Parameter(format!("base drawing needs k >= 2, got {k}")).into());
    }
    if fan_vertex > 2 * k {
        return Err(GraphError::Parameter(format!("fan vertex {fan_vertex} outside 0..={}", 2 * k)).into());
    }
    let us: Vec<usize> = (0..=2 * k).filter(|&u| u != fan_vertex).collect();
    Ok(base_work(k, fan_vertex, &us)?.into_drawing())
}

/// Adds `new_w` as a copy of the fan `fan_v`: same neighbours, placed in a
/// free sector inside the ε-empty disc of `fan_v`, with `w u_i` coloured
/// `|i|`. The new vertex is again a fan.
pub fn insert_fan_copy(d: &Drawing, fan_v: usize, new_w: usize) -> Result<Drawing, GeomError> {
    if d.positions.contains_key(&new_w) {
        return Err(GeomError::Invalid(format!("vertex {new_w} is already drawn")));
    }
    if !d.positions.contains_key(&fan_v) {
        return Err(GeomError::Invalid(format!("vertex {fan_v} is not drawn")));
    }
    let mut w = Work::from_drawing(d);
    insert(&mut w, fan_v, new_w)?;
    Ok(w.into_drawing())
}

fn insert(work: &mut Work, v: usize, w: usize) -> Result<(), GeomError> {
    let labels = work.fan(v).ok_or(GeomError::NotAFan(v))?;
    let eps = work.empty_radius(v);
    let targets: Vec<(usize, Pt<BigInt>)> = work.adj[&v]
        .iter()
        .map(|&u| (u, work.grid(u).clone()))
        .collect();
    let rays: Vec<(usize, bool)> = sorted_rays(work.grid(v), &targets)
        .ok_or(GeomError::NotAFan(v))?
        .into_iter()
        .map(|(u, o, _)| (u, o))
        .collect();
    let m = rays.len();
    let is_f = |a: (usize, bool), b: (usize, bool)| {
        labels.labels().into_iter().any(|i| {
            let (x, y) = ((labels.u(i), false), (labels.u(-i), true));
            (a == x && b == y) || (a == y && b == x)
        })
    };
    let start = rays
        .iter()
        .position(|&r| r == (labels.u(1), false))
        .expect("u_1 has a ray");
    let j = (0..m)
        .map(|s| (start + s) % m)
        .find(|&j| !is_f(rays[j], rays[(j + 1) % m]))
        .expect("a fan leaves free sectors");
    let (r1, r2) = (rays[j], rays[(j + 1) % m]);
    let dir_of = |work: &Work, (u, opp): (usize, bool)| {
        let d = work.grid(u).sub(work.grid(v));
        if opp {
            d.neg()
        } else {
            d
        }
    };
    let real = |d: Pt<BigInt>| {
        let l = d.l1();
        Pt::new(BigRational::new(d.x, l.clone()), BigRational::new(d.y, l))
    };
    let (n1, n2) = (real(dir_of(work, r1)), real(dir_of(work, r2)));
    let joins: Vec<(usize, usize)> = work.adj[&v]
        .iter()
        .map(|&u| (u, labels.label_of(u).expect("labelled").unsigned_abs()))
        .collect();
    let pv = work.point(v).clone();
    let mut t = &eps / BigRational::from_integer(2.into());
    for r in 0..MAX_HALVINGS as i64 {
        // Tilt a little differently each round so earlier copies of v on one
        // line through v cannot block every attempt.
        let a = rat(r + 2, 2 * r + 5);
        let dir = n1.scale(&a).add(&n2.scale(&(BigRational::one() - &a)));
        let cand = snap(&pv.add(&dir.scale(&t)), log2(&t) - SNAP_BITS);
        let g = work.canvas.admit_grid(&cand);
        let ok = in_open_wedge(work.grid(v), &dir_of(work, r1), &dir_of(work, r2), &g)
            && work.within(&g, v, &eps)
            && !work.collinear(&g, None, &[])
            && work.joins_cleanly(&g, &joins);
        if ok {
            work.place(w, cand);
            for (u, c) in joins {
                work.connect(w, u, c);
            }
            return Ok(());
        }
        t *= half();
    }
    Err(stuck(&format!("copy {w} of fan {v}")))
}

/// A plane straight-line drawing of a 1-tree or 2-tree, all edges colour 1.
pub fn draw_planar_2tree(build: &KTreeBuild) -> Result<Drawing, GeomError> {
    build.validate()?;
    let mut work = Work::new(1);
    match build.k {
        1 => {
            work.place(build.base[0], Point::from_ints(0, 0));
            work.place(build.base[1], Point::from_ints(1, 0));
            work.connect(build.base[0], build.base[1], 1);
            for (idx, add) in build.additions.iter().enumerate() {
                let p = add.clique[0];
                let pp = work.point(p).clone();
                let mut h = BigRational::one();
                let mut placed = false;
                for round in 0..MAX_HALVINGS {
                    let s = rat(1, (idx + 2 + round) as i64);
                    for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                        let d = Pt::new(BigRational::from_integer(sx.into()), &s * BigRational::from_integer(sy.into()));
                        let cand = snap(&pp.add(&d.scale(&h)), log2(&h) - SNAP_BITS);
                        let g = work.canvas.admit_grid(&cand);
                        if !work.collinear(&g, None, &[]) && work.joins_cleanly(&g, &[(p, 1)]) {
                            work.place(add.v, cand);
                            work.connect(add.v, p, 1);
                            placed = true;
                            break;
                        }
                    }
                    if placed {
                        break;
                    }
                    h *= half();
                }
                if !placed {
                    return Err(stuck(&format!("vertex {}", add.v)));
                }
            }
        }
        2 => {
            let corners = [(0, 0), (1, 0), (0, 1)];
            for (&v, (x, y)) in build.base.iter().zip(corners) {
                work.place(v, Point::from_ints(x, y));
            }
            for (i, &a) in build.base.iter().enumerate() {
                for &b in &build.base[i + 1..] {
                    work.connect(a, b, 1);
                }
            }
            for add in &build.additions {
                let (a, b) = (add.clique[0], add.clique[1]);
                let (pa, pb) = (work.point(a).clone(), work.point(b).clone());
                let d = pb.sub(&pa);
                let n = unit_l1(&perp(&d));
                let mut h = pow2(log2(&d.l1()) - 2);
                let mut placed = false;
                for round in 0..MAX_HALVINGS {
                    // Sliding the foot along ab keeps successive tries off
                    // the line through earlier vertices on this edge.
                    let foot = pa.add(&d.scale(&rat(round as i64 + 2, 2 * round as i64 + 5)));
                    for side in [BigRational::one(), -BigRational::one()] {
                        let cand = snap(&foot.add(&n.scale(&(&h * side))), log2(&h) - SNAP_BITS);
                        let g = work.canvas.admit_grid(&cand);
                        if !work.collinear(&g, None, &[]) && work.joins_cleanly(&g, &[(a, 1), (b, 1)]) {
                            work.place(add.v, cand);
                            work.connect(add.v, a, 1);
                            work.connect(add.v, b, 1);
                            placed = true;
                            break;
                        }
                    }
                    if placed {
                        break;
                    }
                    h *= half();
                }
                if !placed {
                    return Err(stuck(&format!("vertex {}", add.v)));
                }
            }
        }
        k => {
            return Err(GraphError::Parameter(format!("planar drawing needs k <= 2, got {k}")).into())
        }
    }
    Ok(work.into_drawing())
}

/// A drawing of a k-tree whose k colour classes are plane star forests.
pub fn draw_forests(build: &KTreeBuild) -> Result<Drawing, GeomError> {
    let g = build.validate()?;
    Ok(forests_rec(&g.adj_map(), build.k, None)?.into_drawing())
}

/// `d` in the closed cone from `d1` to `d2` (angle below π).
fn in_closed_cone(d1: &Point, d2: &Point, d: &Point) -> bool {
    let s = d1.cross(d2).signum();
    !(d1.cross(d) * &s).is_negative() && !(d.cross(d2) * &s).is_negative()
}

fn forests_rec(adj: &AdjMap, k: usize, nominee: Option<usize>) -> Result<Work, GeomError> {
    match partition(adj, k, nominee) {
        PartitionCase::CaseA { s } => {
            let mut work = Work::new(k);
            for (r, &v) in adj.keys().enumerate() {
                work.place(v, Point::from_ints(r as i64, (r * r) as i64));
            }
            let rank: BTreeMap<usize, usize> = adj
                .keys()
                .filter(|v| !s.contains(v))
                .enumerate()
                .map(|(r, &v)| (v, r))
                .collect();
            for (&a, nb) in adj {
                for &b in nb.range(a + 1..) {
                    let c = 1 + [a, b].iter().filter_map(|x| rank.get(x)).min().expect("clique end");
                    work.connect(a, b, c);
                }
            }
            Ok(work)
        }
        PartitionCase::CaseB { s, pivot: v } => {
            let mut work = forests_rec(&without(adj, &s), k, Some(v))?;
            let mut us = vec![usize::MAX; k + 1];
            for &u in &work.adj[&v] {
                us[work.colours[&Edge::new(u, v)]] = u;
            }
            if us[1..].contains(&usize::MAX) {
                return Err(GeomError::Invalid(format!("vertex {v} is not colourful")));
            }
            let eps = work.empty_radius(v);
            let pv = work.point(v).clone();
            let o: Vec<Point> = (1..=k).map(|i| unit_l1(&pv.sub(work.point(us[i])))).collect();
            let n: Vec<Point> = o.iter().map(perp).collect();
            let mut beta = rat(1, 4);
            let cones = |beta: &BigRational| -> Vec<(Point, Point)> {
                (0..k)
                    .map(|i| (o[i].sub(&n[i].scale(beta)), o[i].add(&n[i].scale(beta))))
                    .collect()
            };
            let disjoint = |c: &[(Point, Point)]| {
                (0..k).all(|i| {
                    (0..k).all(|j| {
                        i == j
                            || (!in_closed_cone(&c[i].0, &c[i].1, &c[j].0)
                                && !in_closed_cone(&c[i].0, &c[i].1, &c[j].1))
                    })
                })
            };
            while !disjoint(&cones(&beta)) {
                beta *= half();
            }
            let cone = cones(&beta);
            for i in 1..=k {
                let group: Vec<usize> = s
                    .iter()
                    .copied()
                    .filter(|w| !adj[w].contains(&us[i]))
                    .collect();
                let len = group.len() as i64;
                let joins: Vec<(usize, usize)> = (1..=k)
                    .map(|j| if j == i { (v, i) } else { (us[j], j) })
                    .collect();
                for (m, &w) in group.iter().enumerate() {
                    // Off the axis, which passes through u_i.
                    let tau = &beta * rat(m as i64 + 1, len + 1);
                    let dir = o[i - 1].add(&n[i - 1].scale(&tau));
                    let mut t = &eps / BigRational::from_integer(4.into());
                    let mut placed = false;
                    for _ in 0..MAX_HALVINGS {
                        let cand = snap(&pv.add(&dir.scale(&t)), log2(&t) - SNAP_BITS);
                        let (lo, hi) = &cone[i - 1];
                        let inside = in_open_wedge(&pv, lo, hi, &cand)
                            && cand.sub(&pv).norm2() < &eps * &eps;
                        let g = work.canvas.admit_grid(&cand);
                        if inside && !work.collinear(&g, None, &[]) && work.joins_cleanly(&g, &joins) {
                            work.place(w, cand);
                            for &(u, c) in &joins {
                                work.connect(w, u, c);
                            }
                            placed = true;
                            break;
                        }
                        t *= half();
                    }
                    if !placed {
                        return Err(stuck(&format!("vertex {w}")));
                    }
                }
            }
            Ok(work)
        }
    }
}

/// A drawing of a k-tree (k even, k >= 4) in general position with `k/2`
/// plane colour classes in which every vertex is a fan.
pub fn good_draw(build: &KTreeBuild) -> Result<Drawing, GeomError> {
    if build.k < 4 || build.k % 2 == 1 {
        return Err(GraphError::Parameter(format!(
            "layered fan drawing needs an even k >= 4, got {}",
            build.k
        ))
        .into());
    }
    let g = build.validate()?;
    Ok(good_rec(&g.adj_map(), build.k / 2, None)?.into_drawing())
}

/// `k` is half the tree width here.
fn good_rec(adj: &AdjMap, k: usize, nominee: Option<usize>) -> Result<Work, GeomError> {
    let (s, v) = match partition(adj, 2 * k, nominee) {
        PartitionCase::CaseA { s } => {
            let v = nominee
                .filter(|x| s.contains(x))
                .unwrap_or_else(|| *s.iter().next().expect("nonempty"));
            let clique: Vec<usize> = adj.keys().copied().filter(|x| !s.contains(x)).collect();
            let mut work = base_work(k, v, &clique)?;
            for &w in s.iter().filter(|&&w| w != v) {
                insert(&mut work, v, w)?;
            }
            return Ok(work);
        }
        PartitionCase::CaseB { s, pivot } => (s, pivot),
    };
    let mut work = good_rec(&without(adj, &s), k, Some(v))?;
    let labels = work.fan(v).ok_or(GeomError::NotAFan(v))?;
    let order = labels.labels();

    // S_i: the vertices of S missing u_i.
    let mut groups: BTreeMap<isize, Vec<usize>> = BTreeMap::new();
    for &w in &s {
        let missing: Vec<usize> = work.adj[&v]
            .iter()
            .copied()
            .filter(|u| !adj[&w].contains(u))
            .collect();
        let [u] = missing[..] else {
            return Err(GeomError::Invalid(format!("vertex {w} is not a near-copy of {v}")));
        };
        groups.entry(labels.label_of(u).expect("labelled")).or_default().push(w);
    }

    // Representatives on the segments v u_{-i}, close to v.
    let eps = work.empty_radius(v);
    let mut placed: Vec<(isize, usize)> = Vec::new();
    for &i in &order {
        let Some(group) = groups.get(&i) else {
            continue;
        };
        let x = group[0];
        let pv = work.point(v).clone();
        let d = work.point(labels.u(-i)).sub(&pv);
        let bound = &eps * &eps / (d.norm2() * BigRational::from_integer(8.into()));
        let mut t = pow2(floor_log2_sqrt(&Frac::from_ratio(&bound)));
        let mut done = false;
        for _ in 0..MAX_HALVINGS {
            let cand = pv.add(&d.scale(&t));
            let g = work.canvas.admit_grid(&cand);
            let wedges_ok = placed.iter().all(|&(l, xl)| {
                let pxl = work.grid(xl);
                order
                    .iter()
                    .filter(|j| j.abs() != i.abs() && j.abs() != l.abs())
                    .all(|&j| {
                        let (uj, umj) = (work.grid(labels.u(j)), work.grid(labels.u(-j)));
                        !in_f_wedge(pxl, uj, umj, &g) && !in_f_wedge(&g, uj, umj, pxl)
                    })
            });
            if wedges_ok && !work.collinear(&g, None, &[(v, labels.u(-i))]) {
                work.place(x, cand);
                placed.push((i, x));
                done = true;
                break;
            }
            t *= half();
        }
        if !done {
            return Err(stuck(&format!("representative {x}")));
        }
    }

    // Join the representatives and drop the edges at v for the moment.
    for &(i, x) in &placed {
        work.connect(x, v, i.unsigned_abs());
        for &j in order.iter().filter(|&&j| j != i) {
            work.connect(x, labels.u(j), j.unsigned_abs());
        }
    }
    let removed: Vec<(usize, usize)> = order
        .iter()
        .map(|&j| {
            let u = labels.u(j);
            (u, work.disconnect(v, u).expect("edge at v"))
        })
        .collect();
    let classes: Vec<Vec<Edge>> = (1..=k).map(|r| work.class(r)).collect();
    let q: BTreeSet<usize> = placed.iter().map(|&(_, x)| x).collect();
    let delta = radius(&work.canvas, &classes, Some(&q))?;

    // Push each representative off its segment into F_{-i}(v).
    for &(i, x) in &placed {
        let pv = work.point(v).clone();
        let d = work.point(labels.u(-i)).sub(&pv);
        let side = pv.sub(work.point(labels.u(i)));
        let n = if d.cross(&side).is_positive() {
            unit_l1(&perp(&d))
        } else {
            unit_l1(&perp(&d).neg())
        };
        let px = work.point(x).clone();
        let mut eta = &delta * half();
        let mut done = false;
        for _ in 0..MAX_HALVINGS {
            let cand = snap(&px.add(&n.scale(&eta)), log2(&eta) - SNAP_BITS);
            let g = work.canvas.admit_grid(&cand);
            let gv = work.grid(v);
            let inside = in_open_wedge(
                gv,
                &work.grid(labels.u(-i)).sub(gv),
                &gv.sub(work.grid(labels.u(i))),
                &g,
            );
            if inside && work.within(&g, x, &delta) {
                work.canvas.insert(x, cand);
                done = true;
                break;
            }
            eta *= half();
        }
        if !done {
            return Err(stuck(&format!("shifted representative {x}")));
        }
    }
    for (u, c) in removed {
        work.connect(v, u, c);
    }

    // The radius argument guarantees these; check anyway.
    for &x in &q {
        if work.collinear(work.grid(x), Some(x), &[]) {
            return Err(GeomError::Invalid(format!("representative {x} is collinear")));
        }
    }
    let pts = work.canvas.grid_points();
    for (&e, &c) in &work.colours {
        if !(q.contains(&e.lo()) || q.contains(&e.hi()) || e.touches(v)) {
            continue;
        }
        if let Some(f) = work.crossing(&pts[&e.lo()], &pts[&e.hi()], c, Some(e)) {
            return Err(GeomError::Crossing(e, f));
        }
    }

    for &(i, x) in &placed {
        for &w in &groups[&i][1..] {
            insert(&mut work, x, w)?;
        }
    }
    Ok(work)
}

/// A straight-line drawing of a k-tree with `ceil((k+1)/2)` plane colour
/// classes (one for `k <= 2`).
pub fn draw_thickness(build: &KTreeBuild) -> Result<Drawing, GeomError> {
    if build.k <= 2 {
        return draw_planar_2tree(build);
    }
    if build.k.is_multiple_of(2) {
        return good_draw(build);
    }
    let g = build.validate()?;
    let lifted = ktree_lift(build)?;
    let mut d = good_draw(&lifted)?;
    d.positions.remove(&build.vertex_count());
    d.colours.retain(|e, _| g.has_edge(e.lo(), e.hi()));
    d.colour_count = build.k.div_ceil(2);
    Ok(d)
}
