//! Radii of empty discs around a vertex.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::exact::{
    dist2_point_line, dist2_point_ray_beyond, dist2_point_segment, floor_log2_sqrt, pow2, Canvas,
    Frac, Pt,
};
use super::fan::sorted_rays;
use super::{find_collinear_triple, Drawing, GeomError};
use crate::graph::Edge;

/// A dyadic `ε` for which `v` is ε-empty in `d`: no other vertex in the
/// region swept from `N(v)` to the disc, no non-incident edge meeting the
/// disc, general position and the radial order of `N(v)` kept for every
/// point of the disc.
pub fn epsilon_empty(d: &Drawing, v: usize) -> Result<BigRational, GeomError> {
    if !d.positions.contains_key(&v) {
        return Err(GeomError::Invalid(format!("vertex {v} is not drawn")));
    }
    let canvas = Canvas::new(&d.positions);
    if let Some((a, b, c)) = find_collinear_triple(canvas.grid_points()) {
        return Err(GeomError::NotGeneralPosition(a, b, c));
    }
    let nbrs = d.neighbours(v);
    let edges: Vec<Edge> = d.colours.keys().copied().collect();
    Ok(empty_radius(&canvas, v, &nbrs, &edges))
}

/// Exact check of the ε-empty properties for a given `eps`.
pub fn verify_epsilon_empty(d: &Drawing, v: usize, eps: &BigRational) -> bool {
    let canvas = Canvas::new(&d.positions);
    let nbrs = d.neighbours(v);
    let edges: Vec<Edge> = d.colours.keys().copied().collect();
    verify(&canvas, v, &nbrs, &edges, eps)
}

/// Less than half the distance from `v` to the nearest line through two other
/// vertices (or nearest vertex), rounded down to a power of two, then
/// halved until verified. Assumes general position.
pub(crate) fn empty_radius(
    canvas: &Canvas,
    v: usize,
    nbrs: &BTreeSet<usize>,
    edges: &[Edge],
) -> BigRational {
    let pv = canvas.grid(v);
    let others: Vec<&Pt<BigInt>> = canvas
        .grid_points()
        .iter()
        .filter(|(&u, _)| u != v)
        .map(|(_, p)| p)
        .collect();
    let mut best: Option<Frac<BigInt>> = None;
    let mut offer = |f: Frac<BigInt>| {
        if best.as_ref().is_none_or(|b| f < *b) {
            best = Some(f);
        }
    };
    for (i, a) in others.iter().enumerate() {
        offer(Frac::whole(pv.sub(a).norm2()));
        for b in &others[i + 1..] {
            offer(dist2_point_line(pv, a, b));
        }
    }
    let mut eps = match best {
        None => BigRational::from_integer(1.into()),
        Some(m2) => {
            let real = canvas.real_len2(&m2);
            // Strictly inside half the clearance.
            let bound = Frac::new(real.num, real.den * BigInt::from(8));
            pow2(floor_log2_sqrt(&bound))
        }
    };
    let half = BigRational::new(1.into(), 2.into());
    while !verify(canvas, v, nbrs, edges, &eps) {
        eps *= &half;
    }
    eps
}

pub(crate) fn verify(
    canvas: &Canvas,
    v: usize,
    nbrs: &BTreeSet<usize>,
    edges: &[Edge],
    eps: &BigRational,
) -> bool {
    let pts = canvas.grid_points();
    let pv = &pts[&v];
    let e = canvas.grid_len(eps);
    let e2 = Frac::from_ratio(&(&e * &e));
    // (a) no vertex in the shadow of the disc seen from a neighbour.
    for &u in nbrs {
        let pu = &pts[&u];
        for (&x, px) in pts {
            if x != v && x != u && dist2_point_ray_beyond(pv, pu, px) < e2 {
                return false;
            }
        }
    }
    // (b) non-incident edges stay out of the disc.
    for f in edges {
        if !f.touches(v) && dist2_point_segment(pv, &pts[&f.lo()], &pts[&f.hi()]) < e2 {
            return false;
        }
    }
    // (c) no line through two other vertices meets the disc.
    let others: Vec<&Pt<BigInt>> = pts.iter().filter(|(&u, _)| u != v).map(|(_, p)| p).collect();
    for (i, a) in others.iter().enumerate() {
        if Frac::whole(pv.sub(a).norm2()) < e2 {
            return false;
        }
        for b in &others[i + 1..] {
            if dist2_point_line(pv, a, b) < e2 {
                return false;
            }
        }
    }
    // (d) follows from (c); spot-check the radial order half way out.
    let targets: Vec<(usize, Pt<BigInt>)> = nbrs.iter().map(|&u| (u, pts[&u].clone())).collect();
    let key = |c: &Pt<BigInt>| {
        sorted_rays(c, &targets).map(|r| r.into_iter().map(|(u, o, _)| (u, o)).collect::<Vec<_>>())
    };
    let Some(here) = key(pv) else {
        return false;
    };
    let h = &e / BigRational::from_integer(2.into());
    // Compare on a finer grid so the probe points are integral.
    let den = h.denom().clone();
    let scaled = |p: &Pt<BigInt>| Pt::new(&p.x * &den, &p.y * &den);
    let step = h.numer().clone();
    let zero = BigInt::from(0);
    let centre = scaled(pv);
    let targets_fine: Vec<(usize, Pt<BigInt>)> =
        targets.iter().map(|(u, p)| (*u, scaled(p))).collect();
    for (dx, dy) in [
        (step.clone(), zero.clone()),
        (-step.clone(), zero.clone()),
        (zero.clone(), step.clone()),
        (zero.clone(), -step.clone()),
    ] {
        let probe = centre.add(&Pt::new(dx, dy));
        let Some(there) = sorted_rays(&probe, &targets_fine) else {
            return false;
        };
        let there: Vec<(usize, bool)> = there.into_iter().map(|(u, o, _)| (u, o)).collect();
        if !same_cycle(&here, &there) {
            return false;
        }
    }
    true
}

fn same_cycle<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(s) = b.iter().position(|x| *x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn drawing(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Drawing {
        let mut d = Drawing {
            colour_count: 1,
            ..Default::default()
        };
        for (v, &(x, y)) in points.iter().enumerate() {
            d.positions.insert(v, Point::from_ints(x, y));
        }
        for &(a, b) in edges {
            d.colours.insert(Edge::new(a, b), 1);
        }
        d
    }

    #[test]
    fn triangle_radius() {
        let d = drawing(&[(0, 0), (4, 0), (0, 4)], &[(0, 1), (1, 2), (0, 2)]);
        let eps = epsilon_empty(&d, 0).unwrap();
        assert!(&eps * &eps <= BigRational::from_integer(8.into()));
        assert!(verify_epsilon_empty(&d, 0, &eps));
        // A disc reaching the opposite line is rejected.
        assert!(!verify_epsilon_empty(&d, 0, &BigRational::from_integer(3.into())));
    }

    #[test]
    fn single_edge_and_isolated_vertex() {
        let d = drawing(&[(0, 0), (1, 0)], &[(0, 1)]);
        let eps = epsilon_empty(&d, 0).unwrap();
        assert!(eps < BigRational::new(1.into(), 2.into()));
        assert!(verify_epsilon_empty(&d, 0, &eps));
        let lone = drawing(&[(0, 0)], &[]);
        assert!(epsilon_empty(&lone, 0).unwrap() > BigRational::from_integer(0.into()));
    }

    #[test]
    fn collinear_input_is_rejected() {
        let d = drawing(&[(0, 0), (1, 0), (2, 0)], &[]);
        assert!(matches!(epsilon_empty(&d, 0), Err(GeomError::NotGeneralPosition(..))));
    }
}
