//! Exact predicates, generic over the coordinate ring so that hot loops can
//! run on a common integer grid instead of reduced rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Anything we can do exact geometry over.
pub trait Coord: Clone + Ord + Signed {}
impl<T: Clone + Ord + Signed> Coord for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt<T> {
    pub x: T,
    pub y: T,
}

impl<T: Coord> Pt<T> {
    pub fn new(x: T, y: T) -> Self {
        Pt { x, y }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Pt::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Pt::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn neg(&self) -> Self {
        Pt::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Pt::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    pub fn l1(&self) -> T {
        self.x.abs() + self.y.abs()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Sign of `(q - p) × (r - p)`; `Greater` means `r` is left of `pq`.
pub fn orient<T: Coord>(p: &Pt<T>, q: &Pt<T>, r: &Pt<T>) -> Ordering {
    q.sub(p).cross(&r.sub(p)).cmp(&T::zero())
}

/// `p` lies on the closed segment `ab`, given that the three are collinear.
fn within_box<T: Coord>(a: &Pt<T>, b: &Pt<T>, p: &Pt<T>) -> bool {
    let between = |s: &T, t: &T, u: &T| (s.min(t) <= u) && (u <= s.max(t));
    between(&a.x, &b.x, &p.x) && between(&a.y, &b.y, &p.y)
}

/// Closed segments `ab` and `cd` meet somewhere other than a common endpoint.
/// Collinear overlap and touching count as crossing.
pub fn closed_segments_cross<T: Coord>(a: &Pt<T>, b: &Pt<T>, c: &Pt<T>, d: &Pt<T>) -> bool {
    let shared = if a == c || a == d {
        Some((a, b, if a == c { d } else { c }))
    } else if b == c || b == d {
        Some((b, a, if b == c { d } else { c }))
    } else {
        None
    };
    if let Some((s, p, q)) = shared {
        if p == q {
            // Same segment twice.
            return true;
        }
        let (u, w) = (p.sub(s), q.sub(s));
        return u.cross(&w).is_zero() && u.dot(&w).is_positive();
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let z = Ordering::Equal;
    if o1 != o2 && o3 != o4 && o1 != z && o2 != z && o3 != z && o4 != z {
        return true;
    }
    (o1 == z && within_box(a, b, c))
        || (o2 == z && within_box(a, b, d))
        || (o3 == z && within_box(c, d, a))
        || (o4 == z && within_box(c, d, b))
}

/// A nonnegative fraction `num / den` with `den > 0`, used for squared
/// distances so that no square roots or divisions are needed.
#[derive(Clone, Debug)]
pub struct Frac<T> {
    pub num: T,
    pub den: T,
}

impl<T: Coord> Frac<T> {
    pub fn new(num: T, den: T) -> Self {
        debug_assert!(den.is_positive());
        Frac { num, den }
    }

    pub fn whole(num: T) -> Self {
        Frac { num, den: T::one() }
    }
}

impl<T: Coord> PartialEq for Frac<T> {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl<T: Coord> Eq for Frac<T> {}
impl<T: Coord> PartialOrd for Frac<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T: Coord> Ord for Frac<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num.clone() * o.den.clone()).cmp(&(o.num.clone() * self.den.clone()))
    }
}

impl Frac<BigInt> {
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Frac::new(r.numer().clone(), r.denom().clone())
    }
}

/// Squared distance from `p` to the line through `a` and `b`.
pub fn dist2_point_line<T: Coord>(p: &Pt<T>, a: &Pt<T>, b: &Pt<T>) -> Frac<T> {
    let d = b.sub(a);
    let c = d.cross(&p.sub(a));
    Frac::new(c.clone() * c, d.norm2())
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn dist2_point_segment<T: Coord>(p: &Pt<T>, a: &Pt<T>, b: &Pt<T>) -> Frac<T> {
    let d = b.sub(a);
    let t = p.sub(a).dot(&d);
    if !t.is_positive() {
        return Frac::whole(p.sub(a).norm2());
    }
    let l = d.norm2();
    if t >= l {
        return Frac::whole(p.sub(b).norm2());
    }
    let c = d.cross(&p.sub(a));
    Frac::new(c.clone() * c, l)
}

/// Infimum of squared distances from `p` to the open ray
/// `{u + μ(x - u) : μ > 1}`, the continuation of `ux` beyond `x`.
pub fn dist2_point_ray_beyond<T: Coord>(p: &Pt<T>, u: &Pt<T>, x: &Pt<T>) -> Frac<T> {
    let d = x.sub(u);
    let l = d.norm2();
    if p.sub(u).dot(&d) <= l {
        return Frac::whole(p.sub(x).norm2());
    }
    let c = d.cross(&p.sub(u));
    Frac::new(c.clone() * c, l)
}

/// Squared distance between two closed segments that do not meet.
pub fn dist2_segments<T: Coord>(a: &Pt<T>, b: &Pt<T>, c: &Pt<T>, d: &Pt<T>) -> Frac<T> {
    [
        dist2_point_segment(a, c, d),
        dist2_point_segment(b, c, d),
        dist2_point_segment(c, a, b),
        dist2_point_segment(d, a, b),
    ]
    .into_iter()
    .min()
    .expect("four candidates")
}

/// `q` lies in the open wedge at `apex` swept from direction `d1` to `d2`
/// through the angle smaller than π. Degenerate wedges are empty.
pub fn in_open_wedge<T: Coord>(apex: &Pt<T>, d1: &Pt<T>, d2: &Pt<T>, q: &Pt<T>) -> bool {
    let s = d1.cross(d2).cmp(&T::zero());
    if s == Ordering::Equal {
        return false;
    }
    let w = q.sub(apex);
    d1.cross(&w).cmp(&T::zero()) == s && w.cross(d2).cmp(&T::zero()) == s
}

/// Canonical key of the line direction of `d`: primitive and sign-normalised,
/// so `d` and `-d` agree.
pub fn direction_key(d: &Pt<BigInt>) -> (BigInt, BigInt) {
    let g = d.x.gcd(&d.y);
    let (mut x, mut y) = (&d.x / &g, &d.y / &g);
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        x = -x;
        y = -y;
    }
    (x, y)
}

/// `2^e` as a rational.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Largest `e` with `2^e <= f`; `f` must be positive.
pub fn floor_log2(f: &Frac<BigInt>) -> i64 {
    assert!(f.num.is_positive(), "log of a nonpositive value");
    let mut e = f.num.bits() as i64 - f.den.bits() as i64;
    let le = |e: i64| pow2_frac(e) <= *f;
    while !le(e) {
        e -= 1;
    }
    while le(e + 1) {
        e += 1;
    }
    e
}

fn pow2_frac(e: i64) -> Frac<BigInt> {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Frac::whole(p)
    } else {
        Frac::new(BigInt::one(), p)
    }
}

/// Largest `e` with `(2^e)^2 <= f`.
pub fn floor_log2_sqrt(f: &Frac<BigInt>) -> i64 {
    Integer::div_floor(&floor_log2(f), &2)
}

/// Rounds `x` to the nearest multiple of `2^e`.
pub fn snap_coord(x: &BigRational, e: i64) -> BigRational {
    let unit = pow2(e);
    let k = (x / &unit + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    k * unit
}

/// Rational points mapped onto a common integer grid `Z / scale`. The
/// scale grows by lcm when a point with a new denominator arrives.
#[derive(Clone, Debug)]
pub(crate) struct Canvas {
    scale: BigInt,
    rat: BTreeMap<usize, Pt<BigRational>>,
    pts: BTreeMap<usize, Pt<BigInt>>,
}

impl Canvas {
    pub fn new(positions: &BTreeMap<usize, Pt<BigRational>>) -> Self {
        let mut scale = BigInt::one();
        for p in positions.values() {
            scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let mut c = Canvas {
            scale,
            rat: positions.clone(),
            pts: BTreeMap::new(),
        };
        c.pts = c
            .rat
            .iter()
            .map(|(&v, p)| (v, c.map_exact(p).expect("scale covers every point")))
            .collect();
        c
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn into_positions(self) -> BTreeMap<usize, Pt<BigRational>> {
        self.rat
    }

    pub fn grid(&self, v: usize) -> &Pt<BigInt> {
        &self.pts[&v]
    }

    pub fn grid_points(&self) -> &BTreeMap<usize, Pt<BigInt>> {
        &self.pts
    }

    pub fn point(&self, v: usize) -> &Pt<BigRational> {
        &self.rat[&v]
    }

    fn map_exact(&self, p: &Pt<BigRational>) -> Option<Pt<BigInt>> {
        let one = |x: &BigRational| {
            let (q, r) = self.scale.div_rem(x.denom());
            r.is_zero().then(|| x.numer() * q)
        };
        Some(Pt::new(one(&p.x)?, one(&p.y)?))
    }

    /// Grows the scale so that `p` has integer grid coordinates.
    pub fn admit(&mut self, p: &Pt<BigRational>) {
        let new = self.scale.lcm(p.x.denom()).lcm(p.y.denom());
        if new != self.scale {
            let f = &new / &self.scale;
            for q in self.pts.values_mut() {
                q.x *= &f;
                q.y *= &f;
            }
            self.scale = new;
        }
    }

    /// Grid coordinates of an arbitrary point, rescaling if needed.
    pub fn admit_grid(&mut self, p: &Pt<BigRational>) -> Pt<BigInt> {
        self.admit(p);
        self.map_exact(p).expect("admitted")
    }

    pub fn insert(&mut self, v: usize, p: Pt<BigRational>) {
        let g = self.admit_grid(&p);
        self.pts.insert(v, g);
        self.rat.insert(v, p);
    }

    pub fn remove(&mut self, v: usize) {
        self.pts.remove(&v);
        self.rat.remove(&v);
    }

    /// A squared grid length as a real squared length.
    pub fn real_len2(&self, f: &Frac<BigInt>) -> Frac<BigInt> {
        Frac::new(f.num.clone(), &f.den * &self.scale * &self.scale)
    }

    /// A real length as a grid length.
    pub fn grid_len(&self, r: &BigRational) -> BigRational {
        r * BigRational::from_integer(self.scale.clone())
    }
}
