//! Exact rational geometric drawings and the constructions that produce
//! them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Colouring, Edge, Graph, GraphError};

mod construct;
mod epsilon;
pub(crate) mod exact;
pub(crate) mod fan;
mod perturb;

pub use construct::{
    base_complete_odd, draw_forests, draw_planar_2tree, draw_thickness, good_draw,
    insert_fan_copy,
};
pub use epsilon::{epsilon_empty, verify_epsilon_empty};
pub use exact::{Frac, Pt};
pub use fan::{find_fan, ray_fan, FanLabels, RayFan};
pub use perturb::perturbation_radius;

use exact::{direction_key, Canvas};

/// A point with exact rational coordinates.
pub type Point = Pt<BigRational>;

impl Point {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Pt::new(
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
        )
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Pt::new(
            BigRational::new(x.0.into(), x.1.into()),
            BigRational::new(y.0.into(), y.1.into()),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("vertices {0}, {1}, {2} are collinear")]
    NotGeneralPosition(usize, usize, usize),
    #[error("edges {0} and {1} of the same colour cross")]
    Crossing(Edge, Edge),
    #[error("vertex {0} is not a fan")]
    NotAFan(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

/// Orientation of `r` relative to the directed line `pq`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match exact::orient(p, q, r) {
        std::cmp::Ordering::Greater => Orientation::Left,
        std::cmp::Ordering::Less => Orientation::Right,
        std::cmp::Ordering::Equal => Orientation::Collinear,
    }
}

/// Closed segments `ab` and `cd` share a point other than a common
/// endpoint. Touching and collinear overlap count.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    exact::closed_segments_cross(a, b, c, d)
}

/// A straight-line drawing with coloured edges. The coloured edge set is the
/// drawn graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Drawing {
    pub positions: BTreeMap<usize, Point>,
    pub colours: Colouring,
    pub colour_count: usize,
}

impl Drawing {
    pub fn adjacency(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> =
            self.positions.keys().map(|&v| (v, BTreeSet::new())).collect();
        for e in self.colours.keys() {
            adj.entry(e.lo()).or_default().insert(e.hi());
            adj.entry(e.hi()).or_default().insert(e.lo());
        }
        adj
    }

    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.colours
            .keys()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect()
    }

    /// The drawn graph on `0..=max vertex`.
    pub fn graph(&self) -> Graph {
        let n = self.positions.keys().next_back().map_or(0, |&v| v + 1);
        let mut g = Graph::new(n);
        for e in self.colours.keys() {
            g.add_edge(e.lo(), e.hi());
        }
        g
    }

    pub fn class(&self, c: usize) -> Vec<Edge> {
        self.colours
            .iter()
            .filter(|(_, &x)| x == c)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Largest numerator or denominator bit length over all coordinates.
    pub fn max_coordinate_bits(&self) -> u64 {
        self.positions
            .values()
            .flat_map(|p| [&p.x, &p.y])
            .map(|r| r.numer().bits().max(r.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ratio = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
        serde_json::to_value(DrawingWire {
            positions: self
                .positions
                .iter()
                .map(|(v, p)| (v.to_string(), [ratio(&p.x), ratio(&p.y)]))
                .collect(),
            colours: self.colours.iter().map(|(e, &c)| (e.to_string(), c)).collect(),
            colour_count: self.colour_count,
        })
        .expect("drawing serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, GeomError> {
        let bad = |m: String| GeomError::Graph(GraphError::Format(m));
        let wire: DrawingWire =
            serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
        let parse = |s: &str| -> Result<BigRational, GeomError> {
            let r = match s.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
                    if d == BigInt::from(0) {
                        return Err(bad(format!("zero denominator in {s:?}")));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(
                    s.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?,
                ),
            };
            Ok(r)
        };
        let mut positions = BTreeMap::new();
        for (v, [x, y]) in &wire.positions {
            let v: usize = v.parse().map_err(|_| bad(format!("bad vertex {v:?}")))?;
            positions.insert(v, Pt::new(parse(x)?, parse(y)?));
        }
        let mut colours = Colouring::new();
        for (e, &c) in &wire.colours {
            colours.insert(e.parse::<Edge>()?, c);
        }
        Ok(Drawing {
            positions,
            colours,
            colour_count: wire.colour_count,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct DrawingWire {
    positions: BTreeMap<String, [String; 2]>,
    colours: BTreeMap<String, usize>,
    colour_count: usize,
}

/// Some collinear triple of drawn vertices, found by hashing the directions
/// from each vertex to all later ones.
pub(crate) fn find_collinear_triple(
    pts: &BTreeMap<usize, Pt<BigInt>>,
) -> Option<(usize, usize, usize)> {
    let list: Vec<(usize, &Pt<BigInt>)> = pts.iter().map(|(&v, p)| (v, p)).collect();
    for (i, &(a, pa)) in list.iter().enumerate() {
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        for &(b, pb) in &list[i + 1..] {
            if let Some(&c) = seen.get(&direction_key(&pb.sub(pa))) {
                return Some((a, c, b));
            }
            seen.insert(direction_key(&pb.sub(pa)), b);
        }
    }
    None
}

/// A pair of drawn vertices (other than `skip`) collinear with `p`, ignoring
/// the pairs in `allowed`. A vertex sitting exactly on `p` is reported as
/// `(v, v)`.
pub(crate) fn collinear_with(
    pts: &BTreeMap<usize, Pt<BigInt>>,
    p: &Pt<BigInt>,
    skip: Option<usize>,
    allowed: &[(usize, usize)],
) -> Option<(usize, usize)> {
    let mut seen: HashMap<(BigInt, BigInt), Vec<usize>> = HashMap::new();
    for (&b, pb) in pts {
        if Some(b) == skip {
            continue;
        }
        let d = pb.sub(p);
        if d.is_origin() {
            return Some((b, b));
        }
        let bucket = seen.entry(direction_key(&d)).or_default();
        for &a in bucket.iter() {
            let ok = allowed
                .iter()
                .any(|&(x, y)| (x == a && y == b) || (x == b && y == a));
            if !ok {
                return Some((a, b));
            }
        }
        bucket.push(b);
    }
    None
}

/// Collinear triple check over a whole drawing.
pub fn general_position_violation(d: &Drawing) -> Option<(usize, usize, usize)> {
    find_collinear_triple(Canvas::new(&d.positions).grid_points())
}
