//! Exact rational geometry kernel.
//!
//! Every predicate here is evaluated over arbitrary-precision rationals, so
//! the categorical answers never depend on rounding. Distances that would
//! need a square root are replaced by rational surrogates (squared distances,
//! vertical gaps between parallel lines).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. `Display` renders it as `p/q` (or `p` when `q = 1`).
pub type Rat = BigRational;

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("segments overlap along a collinear piece of positive length")]
    Overlap,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate segment: both endpoints are ({0})")]
    DegenerateSegment(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    pub fn sub(&self, other: &Point) -> (Rat, Rat) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// `self + t * (dx, dy)`
    pub fn offset(&self, t: &Rat, dx: &Rat, dy: &Rat) -> Point {
        Point::new(&self.x + t * dx, &self.y + t * dy)
    }

    pub fn scaled(&self, factor: &Rat) -> Point {
        Point::new(&self.x * factor, &self.y * factor)
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn squared_distance(&self, other: &Point) -> Rat {
        let (dx, dy) = self.sub(other);
        &dx * &dx + &dy * &dy
    }

    /// Nearest floating-point coordinates. Display only; never fed back
    /// into predicates.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment(a.to_string()));
        }
        Ok(Segment { a, b })
    }

    pub fn from_ints(x1: i64, y1: i64, x2: i64, y2: i64) -> Result<Self, GeomError> {
        Segment::new(Point::from_ints(x1, y1), Point::from_ints(x2, y2))
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn direction(&self) -> (Rat, Rat) {
        self.b.sub(&self.a)
    }

    pub fn midpoint(&self) -> Point {
        let half = rat(1, 2);
        Point::new((&self.a.x + &self.b.x) * &half, (&self.a.y + &self.b.y) * &half)
    }

    pub fn point_at(&self, t: &Rat) -> Point {
        let (dx, dy) = self.direction();
        self.a.offset(t, &dx, &dy)
    }

    /// Parameter `t` of a point known to lie on the supporting line.
    pub fn param_of(&self, p: &Point) -> Rat {
        let (dx, dy) = self.direction();
        if !dx.is_zero() {
            (&p.x - &self.a.x) / dx
        } else {
            (&p.y - &self.a.y) / dy
        }
    }

    pub fn has_endpoint(&self, p: &Point) -> bool {
        &self.a == p || &self.b == p
    }

    /// True iff `p` lies on the closed segment.
    pub fn contains_point(&self, p: &Point) -> bool {
        orientation(&self.a, &self.b, p) == Orientation::Collinear && within_box(&self.a, &self.b, p)
    }

    /// True iff `p` lies on the segment but is not one of its endpoints.
    pub fn contains_in_interior(&self, p: &Point) -> bool {
        self.contains_point(p) && !self.has_endpoint(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reverse(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    fn of_sign(v: &Rat) -> Orientation {
        if v.is_positive() {
            Orientation::CounterClockwise
        } else if v.is_negative() {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }
}

/// Cross product `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rat {
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    ux * vy - uy * vx
}

/// `a - b` as an unreduced fraction with positive denominator.
fn diff_unreduced(a: &Rat, b: &Rat) -> (BigInt, BigInt) {
    if a.denom() == b.denom() {
        return (a.numer() - b.numer(), a.denom().clone());
    }
    (a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
}

/// Sign of the cross product `(q - p) x (r - p)`, computed by
/// cross-multiplication without gcd reductions.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (ux, uxd) = diff_unreduced(&q.x, &p.x);
    let (uy, uyd) = diff_unreduced(&q.y, &p.y);
    let (vx, vxd) = diff_unreduced(&r.x, &p.x);
    let (vy, vyd) = diff_unreduced(&r.y, &p.y);
    let lhs = ux * vy * (&uyd * &vxd);
    let rhs = uy * vx * (uxd * vyd);
    match lhs.cmp(&rhs) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Sign of the cross product of two direction vectors.
pub fn direction_sign(u: &(Rat, Rat), v: &(Rat, Rat)) -> Orientation {
    Orientation::of_sign(&(&u.0 * &v.1 - &u.1 * &v.0))
}

fn within_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (lox, hix) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (loy, hiy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lox <= &p.x && &p.x <= hix && loy <= &p.y && &p.y <= hiy
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    /// The open segments meet in exactly one point.
    Proper,
    /// The segments meet only in an endpoint they share.
    AtEndpoint,
    /// An endpoint of one segment lies in the relative interior of the other.
    Touch,
    None,
}

/// Classifies how two segments meet. Collinear overlap of positive length is
/// reported as [`GeomError::Overlap`].
pub fn segments_cross(s: &Segment, t: &Segment) -> Result<Crossing, GeomError> {
    let o1 = orientation(&s.a, &s.b, &t.a);
    let o2 = orientation(&s.a, &s.b, &t.b);
    let o3 = orientation(&t.a, &t.b, &s.a);
    let o4 = orientation(&t.a, &t.b, &s.b);

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        return collinear_contact(s, t);
    }
    if o1.sign() * o2.sign() < 0 && o3.sign() * o4.sign() < 0 {
        return Ok(Crossing::Proper);
    }

    let mut contacts: Vec<&Point> = Vec::new();
    if o1 == Orientation::Collinear && within_box(&s.a, &s.b, &t.a) {
        contacts.push(&t.a);
    }
    if o2 == Orientation::Collinear && within_box(&s.a, &s.b, &t.b) {
        contacts.push(&t.b);
    }
    if o3 == Orientation::Collinear && within_box(&t.a, &t.b, &s.a) {
        contacts.push(&s.a);
    }
    if o4 == Orientation::Collinear && within_box(&t.a, &t.b, &s.b) {
        contacts.push(&s.b);
    }
    if contacts.is_empty() {
        return Ok(Crossing::None);
    }
    // Non-collinear segments meet in at most one point.
    let p = contacts[0];
    if s.has_endpoint(p) && t.has_endpoint(p) {
        Ok(Crossing::AtEndpoint)
    } else {
        Ok(Crossing::Touch)
    }
}

fn collinear_contact(s: &Segment, t: &Segment) -> Result<Crossing, GeomError> {
    let (dx, _) = s.direction();
    let key = |p: &Point| if dx.is_zero() { p.y.clone() } else { p.x.clone() };
    let (s_lo, s_hi) = minmax(key(&s.a), key(&s.b));
    let (t_lo, t_hi) = minmax(key(&t.a), key(&t.b));
    let lo = if s_lo > t_lo { s_lo } else { t_lo };
    let hi = if s_hi < t_hi { s_hi } else { t_hi };
    match lo.cmp(&hi) {
        Ordering::Greater => Ok(Crossing::None),
        Ordering::Less => Err(GeomError::Overlap),
        Ordering::Equal => {
            let shared = [&s.a, &s.b].into_iter().any(|p| t.has_endpoint(p));
            Ok(if shared { Crossing::AtEndpoint } else { Crossing::Touch })
        }
    }
}

fn minmax(a: Rat, b: Rat) -> (Rat, Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Intersection point of the supporting lines of two non-parallel segments.
pub fn line_intersection(s: &Segment, t: &Segment) -> Option<Point> {
    let (rx, ry) = s.direction();
    let (qx, qy) = t.direction();
    let denom = &rx * &qy - &ry * &qx;
    if denom.is_zero() {
        return None;
    }
    let (wx, wy) = t.a.sub(&s.a);
    let u = (&wx * &qy - &wy * &qx) / denom;
    Some(s.a.offset(&u, &rx, &ry))
}

/// The point where the line through `u` with slope `m` meets the horizontal
/// line through `v`.
pub fn slanted_horizontal_meet(u: &Point, m: &Rat, v: &Point) -> Result<Point, GeomError> {
    if !m.is_positive() {
        return Err(GeomError::Precondition(format!("slope must be positive, got {m}")));
    }
    if u.y >= v.y {
        return Err(GeomError::Precondition(format!(
            "slanted source must lie strictly below the horizontal source ({} >= {})",
            u.y, v.y
        )));
    }
    let x = &u.x + (&v.y - &u.y) / m;
    Ok(Point::new(x, v.y.clone()))
}

/// `|y(v) - y(u) - m (x(v) - x(u))|`: the vertical distance between the two
/// lines of slope `m` through `u` and `v`. The Euclidean distance is this
/// value divided by `sqrt(1 + m^2)`.
pub fn parallel_gap_vertical(u: &Point, v: &Point, m: &Rat) -> Rat {
    (&v.y - &u.y - m * (&v.x - &u.x)).abs()
}

/// Counterclockwise convex hull without collinear boundary points, starting
/// from the lowest-leftmost point. Duplicates are merged; a collinear input
/// yields its two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True iff every input point is a strict vertex of the convex hull.
pub fn in_convex_position(points: &[Point]) -> bool {
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    distinct.len() == points.len() && convex_hull(points).len() == points.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

/// Locates a point relative to a simple (not necessarily convex) polygon
/// given as a closed vertex ring.
pub fn locate_in_polygon(poly: &[Point], p: &Point) -> PointLocation {
    let n = poly.len();
    if n == 0 {
        return PointLocation::Outside;
    }
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if a == p || (a != b && orientation(a, b, p) == Orientation::Collinear && within_box(a, b, p))
        {
            return PointLocation::Boundary;
        }
    }
    // Crossing-number test with the half-open rule on y.
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x = &a.x + t * (&b.x - &a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}

/// True iff the closed segment lies inside the closed polygon.
///
/// The segment is split at every parameter where it meets the polygon
/// boundary; each open piece is then entirely inside or entirely outside, so
/// testing its midpoint decides it.
pub fn segment_in_polygon(poly: &[Point], seg: &Segment) -> bool {
    let n = poly.len();
    let mut params: Vec<Rat> = vec![Rat::zero(), Rat::one()];
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if a == b {
            continue;
        }
        for v in [a, b] {
            if seg.contains_point(v) {
                params.push(seg.param_of(v));
            }
        }
        let edge = Segment { a: a.clone(), b: b.clone() };
        if let Some(x) = line_intersection(seg, &edge) {
            if seg.contains_point(&x) && edge.contains_point(&x) {
                params.push(seg.param_of(&x));
            }
        }
    }
    params.sort();
    params.dedup();
    if params.iter().any(|t| locate_in_polygon(poly, &seg.point_at(t)) == PointLocation::Outside) {
        return false;
    }
    let half = rat(1, 2);
    params
        .windows(2)
        .all(|w| locate_in_polygon(poly, &seg.point_at(&((&w[0] + &w[1]) * &half))) != PointLocation::Outside)
}

/// Number of bits in the largest numerator or denominator among the given
/// rationals.
pub fn max_bits<'a>(values: impl IntoIterator<Item = &'a Rat>) -> (u64, u64) {
    values.into_iter().fold((0, 0), |(n, d), r| {
        (n.max(r.numer().bits()), d.max(r.denom().bits()))
    })
}
