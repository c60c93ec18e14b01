//! How far vertices of a noncrossing drawing may move independently without
//! creating crossings or new collinear triples.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::exact::{
    closed_segments_cross, dist2_point_segment, dist2_segments, floor_log2, floor_log2_sqrt, pow2,
    Canvas, Frac,
};
#[cfg(test)]
use super::exact::Pt;
use super::{Drawing, GeomError};
use crate::graph::Edge;

/// A condition on ε, in grid units.
enum Need {
    /// `4ε² < d2`.
    Apart(BigInt, BigInt),
    /// `2εL + 4ε² < a`: a cross or dot product of magnitude `a` keeps its
    /// sign when each of its three points moves by less than ε.
    Sign { a: BigInt, l: BigInt },
}

/// A dyadic radius such that moving every vertex anywhere inside its open
/// disc keeps `d` noncrossing (all edges treated as one class) and creates no
/// collinear triple that was not already collinear.
pub fn perturbation_radius(d: &Drawing) -> Result<BigRational, GeomError> {
    let canvas = Canvas::new(&d.positions);
    let edges: Vec<Edge> = d.colours.keys().copied().collect();
    radius(&canvas, &[edges], None)
}

/// Minimum radius over several edge classes sharing one vertex set. With
/// `moving`, only conditions touching a moving vertex are imposed, which is
/// exact when every other vertex stays put.
pub(crate) fn radius(
    canvas: &Canvas,
    classes: &[Vec<Edge>],
    moving: Option<&BTreeSet<usize>>,
) -> Result<BigRational, GeomError> {
    let pts = canvas.grid_points();
    let moves = |v: usize| moving.is_none_or(|m| m.contains(&v));
    let verts: Vec<usize> = pts.keys().copied().collect();
    let mut needs = Vec::new();

    // Discs pairwise disjoint.
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if moves(a) || moves(b) {
                needs.push(Need::Apart(pts[&a].sub(&pts[&b]).norm2(), BigInt::from(1)));
            }
        }
    }

    // Non-collinear triples stay non-collinear.
    let mut sign_of_triple = |a: usize, b: usize, c: usize| {
        let (pa, pb, pc) = (&pts[&a], &pts[&b], &pts[&c]);
        let (u, w) = (pb.sub(pa), pc.sub(pa));
        let x = u.cross(&w);
        if !x.is_zero() {
            needs.push(Need::Sign {
                a: x.abs(),
                l: u.l1() + w.l1(),
            });
        }
    };
    match moving {
        None => {
            for (i, &a) in verts.iter().enumerate() {
                for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                    for &c in &verts[j + 1..] {
                        sign_of_triple(a, b, c);
                    }
                }
            }
        }
        Some(m) => {
            // Each triple once, charged to its smallest moving vertex.
            for &x in m {
                let others: Vec<usize> = verts
                    .iter()
                    .copied()
                    .filter(|&y| y != x && !(m.contains(&y) && y < x))
                    .collect();
                for (i, &a) in others.iter().enumerate() {
                    for &b in &others[i + 1..] {
                        sign_of_triple(x, a, b);
                    }
                }
            }
        }
    }

    for class in classes {
        for &e in class {
            let (pa, pb) = (&pts[&e.lo()], &pts[&e.hi()]);
            let e_moves = moves(e.lo()) || moves(e.hi());
            for &x in &verts {
                if e.touches(x) || !(e_moves || moves(x)) {
                    continue;
                }
                let d2 = dist2_point_segment(&pts[&x], pa, pb);
                if d2.num.is_zero() {
                    return Err(GeomError::Invalid(format!("vertex {x} lies on edge {e}")));
                }
                needs.push(Need::Apart(d2.num, d2.den));
            }
        }
        for (i, &e) in class.iter().enumerate() {
            for &f in &class[i + 1..] {
                let any = [e.lo(), e.hi(), f.lo(), f.hi()].into_iter().any(moves);
                if !any {
                    continue;
                }
                let (a, b, c, d) = (
                    &pts[&e.lo()],
                    &pts[&e.hi()],
                    &pts[&f.lo()],
                    &pts[&f.hi()],
                );
                if closed_segments_cross(a, b, c, d) {
                    return Err(GeomError::Crossing(e, f));
                }
                if e.shares_end(f) {
                    let s = if f.touches(e.lo()) { e.lo() } else { e.hi() };
                    let (p, q) = (&pts[&e.other(s)], &pts[&f.other(s)]);
                    let (u, w) = (p.sub(&pts[&s]), q.sub(&pts[&s]));
                    if u.cross(&w).is_zero() {
                        // Collinear and pointing apart: keep the dot product negative.
                        needs.push(Need::Sign {
                            a: -u.dot(&w),
                            l: u.l1() + w.l1(),
                        });
                    }
                } else {
                    let d2 = dist2_segments(a, b, c, d);
                    needs.push(Need::Apart(d2.num, d2.den));
                }
            }
        }
    }

    let mut eps = candidate(canvas, &needs);
    let half = BigRational::new(1.into(), 2.into());
    while !accepts(canvas, &needs, &eps) {
        eps *= &half;
    }
    Ok(eps)
}

fn candidate(canvas: &Canvas, needs: &[Need]) -> BigRational {
    let mut lin: Option<Frac<BigInt>> = None;
    let mut sq: Option<Frac<BigInt>> = None;
    let take = |slot: &mut Option<Frac<BigInt>>, f: Frac<BigInt>| {
        if slot.as_ref().is_none_or(|b| f < *b) {
            *slot = Some(f);
        }
    };
    for n in needs {
        match n {
            Need::Apart(d2, den) => take(&mut sq, Frac::new(d2.clone(), den * BigInt::from(8))),
            Need::Sign { a, l } => {
                take(&mut lin, Frac::new(a.clone(), l * BigInt::from(4)));
                take(&mut sq, Frac::new(a.clone(), BigInt::from(16)));
            }
        }
    }
    let s = canvas.scale().clone();
    let mut e: Option<i64> = None;
    if let Some(l) = lin {
        e = Some(floor_log2(&Frac::new(l.num, l.den * &s)));
    }
    if let Some(q) = sq {
        let x = floor_log2_sqrt(&Frac::new(q.num, q.den * &s * &s));
        e = Some(e.map_or(x, |y| y.min(x)));
    }
    pow2(e.unwrap_or(0))
}

fn accepts(canvas: &Canvas, needs: &[Need], eps: &BigRational) -> bool {
    let e = canvas.grid_len(eps);
    let e2x4 = &e * &e * BigRational::from_integer(4.into());
    needs.iter().all(|n| match n {
        Need::Apart(d2, den) => e2x4 < BigRational::new(d2.clone(), den.clone()),
        Need::Sign { a, l } => {
            BigRational::from_integer(BigInt::from(2) * l) * &e + &e2x4
                < BigRational::from_integer(a.clone())
        }
    })
}

/// Moves each vertex by the given offset; used to probe a radius.
#[cfg(test)]
fn displaced(d: &Drawing, offsets: &[(usize, Pt<BigRational>)]) -> Drawing {
    let mut out = d.clone();
    for (v, o) in offsets {
        let p = out.positions.get_mut(v).expect("vertex drawn");
        *p = p.add(o);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{general_position_violation, segments_cross, Point};

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

    fn noncrossing(d: &Drawing) -> bool {
        let es: Vec<Edge> = d.colours.keys().copied().collect();
        let p = |v: usize| &d.positions[&v];
        es.iter().enumerate().all(|(i, e)| {
            es[i + 1..]
                .iter()
                .all(|f| !segments_cross(p(e.lo()), p(e.hi()), p(f.lo()), p(f.hi())))
        })
    }

    #[test]
    fn parallel_edges() {
        let d = drawing(&[(0, 0), (4, 0), (0, 1), (4, 1)], &[(0, 1), (2, 3)]);
        let eps = perturbation_radius(&d).unwrap();
        assert!(eps <= BigRational::new(1.into(), 4.into()));
        // Push the two edges towards each other by just under eps.
        let shrink = &eps * BigRational::new(99.into(), 100.into());
        let zero = BigRational::zero();
        let off = vec![
            (0, Pt::new(zero.clone(), shrink.clone())),
            (1, Pt::new(zero.clone(), shrink.clone())),
            (2, Pt::new(zero.clone(), -shrink.clone())),
            (3, Pt::new(zero.clone(), -shrink)),
        ];
        assert!(noncrossing(&displaced(&d, &off)));
    }

    #[test]
    fn collinear_path_is_allowed() {
        let d = drawing(&[(0, 0), (1, 0), (2, 0)], &[(0, 1), (1, 2)]);
        let eps = perturbation_radius(&d).unwrap();
        assert!(eps.is_positive());
        let small = &eps * BigRational::new(9.into(), 10.into());
        let zero = BigRational::zero();
        let off = vec![(1, Pt::new(-small.clone(), zero.clone())), (2, Pt::new(small, zero))];
        assert!(noncrossing(&displaced(&d, &off)));
    }

    #[test]
    fn single_vertex_and_crossing_input() {
        let d = drawing(&[(3, 3)], &[]);
        assert!(perturbation_radius(&d).unwrap().is_positive());
        let x = drawing(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        assert!(matches!(perturbation_radius(&x), Err(GeomError::Crossing(..))));
    }

    #[test]
    fn triangle_keeps_general_position() {
        let d = drawing(&[(0, 0), (5, 1), (2, 7)], &[(0, 1), (1, 2), (0, 2)]);
        let eps = perturbation_radius(&d).unwrap();
        let s = &eps * BigRational::new(3.into(), 4.into());
        let off = vec![
            (0, Pt::new(s.clone(), s.clone() * BigRational::new(1.into(), 2.into()))),
            (2, Pt::new(-s.clone(), BigRational::zero())),
        ];
        let moved = displaced(&d, &off);
        assert!(general_position_violation(&moved).is_none());
        assert!(noncrossing(&moved));
    }
}
