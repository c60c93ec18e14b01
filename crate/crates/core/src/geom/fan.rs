//! Clockwise ray orders, wedges and fan labellings.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::exact::{in_open_wedge, Canvas, Pt};
use super::{Drawing, GeomError};
use crate::graph::{Colouring, Edge};

/// The rays from `centre` through each neighbour together with their opposite
/// rays, clockwise. Each entry is `(neighbour, opposite)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFan {
    pub centre: usize,
    pub rays: Vec<(usize, bool)>,
}

/// A labelling `u_1..u_k, u_{-1}..u_{-k}` of the neighbours of a fan vertex,
/// clockwise, with `v u_i` coloured `|i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanLabels {
    pub centre: usize,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl FanLabels {
    pub fn k(&self) -> usize {
        self.plus.len()
    }

    /// `u_i` for `i` in `±1..=±k`.
    pub fn u(&self, i: isize) -> usize {
        let m = i.unsigned_abs() - 1;
        if i > 0 {
            self.plus[m]
        } else {
            self.minus[m]
        }
    }

    pub fn label_of(&self, w: usize) -> Option<isize> {
        if let Some(m) = self.plus.iter().position(|&x| x == w) {
            return Some(m as isize + 1);
        }
        self.minus.iter().position(|&x| x == w).map(|m| -(m as isize) - 1)
    }

    /// All labels `1..k, -1..-k`.
    pub fn labels(&self) -> Vec<isize> {
        let k = self.k() as isize;
        (1..=k).chain((1..=k).map(|i| -i)).collect()
    }
}

/// Upper half-plane (angle in `[0, π)`) first, then the lower one.
fn half(d: &Pt<BigInt>) -> u8 {
    if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Clockwise comparison of nonzero directions starting from the negative
/// x-axis going up; only the cyclic order matters.
pub(crate) fn clockwise_cmp(a: &Pt<BigInt>, b: &Pt<BigInt>) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| BigInt::zero().cmp(&a.cross(b)))
        .reverse()
}

/// Clockwise ray order around `c`. `None` if two rays coincide, which
/// happens exactly when `c` is collinear with two of the targets on the same
/// side or on opposite sides.
pub(crate) fn sorted_rays(
    c: &Pt<BigInt>,
    targets: &[(usize, Pt<BigInt>)],
) -> Option<Vec<(usize, bool, Pt<BigInt>)>> {
    let mut rays = Vec::with_capacity(2 * targets.len());
    for (u, p) in targets {
        let d = p.sub(c);
        if d.is_origin() {
            return None;
        }
        rays.push((*u, false, d.clone()));
        rays.push((*u, true, d.neg()));
    }
    rays.sort_by(|a, b| clockwise_cmp(&a.2, &b.2));
    let m = rays.len();
    for i in 0..m {
        let (a, b) = (&rays[i].2, &rays[(i + 1) % m].2);
        if m > 1 && half(a) == half(b) && a.cross(b).is_zero() {
            return None;
        }
    }
    Some(rays)
}

/// Clockwise order of the neighbour targets only.
pub(crate) fn clockwise_targets(c: &Pt<BigInt>, targets: &[(usize, Pt<BigInt>)]) -> Vec<usize> {
    let mut t: Vec<&(usize, Pt<BigInt>)> = targets.iter().collect();
    t.sort_by(|a, b| clockwise_cmp(&a.1.sub(c), &b.1.sub(c)));
    t.into_iter().map(|(u, _)| *u).collect()
}

/// `R(v, N(v))` in a drawing.
pub fn ray_fan(d: &Drawing, v: usize) -> Result<RayFan, GeomError> {
    let canvas = Canvas::new(&d.positions);
    let targets: Vec<(usize, Pt<BigInt>)> = d
        .neighbours(v)
        .into_iter()
        .map(|u| (u, canvas.grid(u).clone()))
        .collect();
    let rays = sorted_rays(canvas.grid(v), &targets).ok_or(GeomError::Invalid(format!(
        "rays at {v} are not pairwise distinct"
    )))?;
    Ok(RayFan {
        centre: v,
        rays: rays.into_iter().map(|(u, o, _)| (u, o)).collect(),
    })
}

/// A fan labelling of `v`, if one exists.
pub fn find_fan(d: &Drawing, v: usize) -> Option<FanLabels> {
    let canvas = Canvas::new(&d.positions);
    let nbrs: Vec<usize> = d.neighbours(v).into_iter().collect();
    fan_labels(&canvas, &d.colours, v, &nbrs)
}

pub(crate) fn fan_labels(
    canvas: &Canvas,
    colours: &Colouring,
    v: usize,
    nbrs: &[usize],
) -> Option<FanLabels> {
    if nbrs.is_empty() || nbrs.len() % 2 == 1 {
        return None;
    }
    let k = nbrs.len() / 2;
    let c = canvas.grid(v);
    let targets: Vec<(usize, Pt<BigInt>)> =
        nbrs.iter().map(|&u| (u, canvas.grid(u).clone())).collect();
    let rays = sorted_rays(c, &targets)?;
    let slot: BTreeMap<(usize, bool), usize> = rays
        .iter()
        .enumerate()
        .map(|(i, (u, o, _))| ((*u, *o), i))
        .collect();
    let m = rays.len();
    let adjacent = |a: (usize, bool), b: (usize, bool)| {
        let (i, j) = (slot[&a], slot[&b]);
        (i + 1) % m == j || (j + 1) % m == i
    };
    let order = clockwise_targets(c, &targets);
    let colour = |u: usize| colours.get(&Edge::new(u, v)).copied();
    'start: for s in 0..2 * k {
        let plus: Vec<usize> = (0..k).map(|j| order[(s + j) % (2 * k)]).collect();
        let minus: Vec<usize> = (0..k).map(|j| order[(s + k + j) % (2 * k)]).collect();
        for j in 0..k {
            if colour(plus[j]) != Some(j + 1) || colour(minus[j]) != Some(j + 1) {
                continue 'start;
            }
            if !adjacent((plus[j], false), (minus[j], true))
                || !adjacent((minus[j], false), (plus[j], true))
            {
                continue 'start;
            }
        }
        return Some(FanLabels {
            centre: v,
            plus,
            minus,
        });
    }
    None
}

/// `q ∈ F_j(p)` for a point `p` that plays the role of the centre: the
/// wedge from `ray(p, u_j)` to `oray(p, u_{-j})`.
pub(crate) fn in_f_wedge(p: &Pt<BigInt>, uj: &Pt<BigInt>, u_minus_j: &Pt<BigInt>, q: &Pt<BigInt>) -> bool {
    in_open_wedge(p, &uj.sub(p), &p.sub(u_minus_j), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Pt<BigInt> {
        Pt::new(BigInt::from(x), BigInt::from(y))
    }

    #[test]
    fn clockwise_order_of_compass_points() {
        let c = p(0, 0);
        let t = vec![(0, p(1, 0)), (1, p(0, 1)), (2, p(-1, 0)), (3, p(0, -1))];
        let order = clockwise_targets(&c, &t);
        // Clockwise: north, east, south, west up to rotation.
        let start = order.iter().position(|&x| x == 1).unwrap();
        let rotated: Vec<usize> = (0..4).map(|i| order[(start + i) % 4]).collect();
        assert_eq!(rotated, vec![1, 0, 3, 2]);
    }

    #[test]
    fn coincident_rays_are_rejected() {
        let c = p(0, 0);
        assert!(sorted_rays(&c, &[(0, p(1, 0)), (1, p(-2, 0))]).is_none());
        assert!(sorted_rays(&c, &[(0, p(1, 0)), (1, p(2, 1))]).is_some());
    }
}
