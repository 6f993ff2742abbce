//! Exact predicates and constructions over rational coordinates.
//!
//! Every function here is pure. Angles are never materialized: directions are
//! compared by half-plane classification followed by a cross-product sign.

pub mod kernel;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{degenerate, Result, VisError};

/// Arbitrary-precision rational, always kept in reduced form.
pub type ExactScalar = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Point {
            x: BigRational::new(x.0.into(), x.1.into()),
            y: BigRational::new(y.0.into(), y.1.into()),
        }
    }

    /// Parses `"x y"` where each coordinate is a decimal or `p/q`.
    pub fn parse_pair(x: &str, y: &str) -> std::result::Result<Self, String> {
        Ok(Point::new(parse_scalar(x)?, parse_scalar(y)?))
    }

    fn small(&self) -> Option<(i128, i128)> {
        const LIMIT: i64 = 1 << 60;
        if !self.x.is_integer() || !self.y.is_integer() {
            return None;
        }
        let x = self.x.numer().to_i64()?;
        let y = self.y.numer().to_i64()?;
        if x.abs() > LIMIT || y.abs() > LIMIT {
            return None;
        }
        Some((x as i128, y as i128))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_scalar(&self.x), format_scalar(&self.y))
    }
}

/// Serialized as `{"x": "p/q", "y": "p/q"}` so no precision is lost.
impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Point", 2)?;
        st.serialize_field("x", &format_scalar(&self.x))?;
        st.serialize_field("y", &format_scalar(&self.y))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x: String,
            y: String,
        }
        let raw = Raw::deserialize(d)?;
        Point::parse_pair(&raw.x, &raw.y).map_err(serde::de::Error::custom)
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_scalar(v: &ExactScalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25` exactly.
pub fn parse_scalar(s: &str) -> std::result::Result<ExactScalar, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("bad number {s:?}"));
    }
    let all_digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(format!("bad number {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = BigRational::new(numer, denom);
    Ok(if neg { -v } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Cw,
    Collinear,
    Ccw,
}

impl Orientation {
    pub(crate) fn from_sign(sign: i32) -> Self {
        match sign.cmp(&0) {
            Ordering::Less => Orientation::Cw,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::Ccw,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

fn sign_of<T: Signed>(v: &T) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of the cross product `(b - a) x (c - a)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    if let (Some(a), Some(b), Some(c)) = (a.small(), b.small(), c.small()) {
        let v = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
        return Orientation::from_sign(v.signum() as i32);
    }
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    Orientation::from_sign(sign_of(&v))
}

/// Orders directions `d1`, `d2` by their counterclockwise offset from `reference`,
/// offsets taken in `[0, 2pi)`. `reference` must be nonzero.
pub(crate) fn cmp_offset<T>(reference: (&T, &T), d1: (&T, &T), d2: (&T, &T)) -> Ordering
where
    T: Signed + Clone,
{
    fn class<T: Signed + Clone>(r: (&T, &T), d: (&T, &T)) -> u8 {
        let cross = r.0.clone() * d.1.clone() - r.1.clone() * d.0.clone();
        if cross.is_positive() {
            1
        } else if cross.is_negative() {
            3
        } else {
            let dot = r.0.clone() * d.0.clone() + r.1.clone() * d.1.clone();
            if dot.is_positive() {
                0
            } else {
                2
            }
        }
    }
    let (c1, c2) = (class(reference, d1), class(reference, d2));
    if c1 != c2 {
        return c1.cmp(&c2);
    }
    if c1 == 0 || c1 == 2 {
        return Ordering::Equal;
    }
    let cross = d1.0.clone() * d2.1.clone() - d1.1.clone() * d2.0.clone();
    if cross.is_positive() {
        Ordering::Less
    } else if cross.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// A direction anchored at an origin; the reference for counterclockwise offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoAngle {
    pub origin: Point,
    pub dx: ExactScalar,
    pub dy: ExactScalar,
}

impl PseudoAngle {
    pub fn new(origin: Point, dx: ExactScalar, dy: ExactScalar) -> Result<Self> {
        if dx.is_zero() && dy.is_zero() {
            return Err(VisError::InvalidQuery("zero reference direction".into()));
        }
        Ok(PseudoAngle { origin, dx, dy })
    }

    /// The positive x-axis at `origin`.
    pub fn positive_x(origin: Point) -> Self {
        PseudoAngle { origin, dx: BigRational::one(), dy: BigRational::zero() }
    }

    /// Direction from `origin` towards `through`.
    pub fn towards(origin: Point, through: &Point) -> Result<Self> {
        let dx = &through.x - &origin.x;
        let dy = &through.y - &origin.y;
        PseudoAngle::new(origin, dx, dy)
    }
}

fn direction(q: &Point, p: &Point) -> Result<(ExactScalar, ExactScalar)> {
    if p == q {
        return Err(VisError::InvalidQuery("direction from the viewpoint to itself".into()));
    }
    Ok((&p.x - &q.x, &p.y - &q.y))
}

/// Compares the counterclockwise offsets of `q->p1` and `q->p2` from `reference`.
pub fn cmp_ccw_angle(q: &Point, reference: &PseudoAngle, p1: &Point, p2: &Point) -> Result<Ordering> {
    if &reference.origin != q {
        return Err(VisError::InvalidQuery("reference direction is not anchored at q".into()));
    }
    let d1 = direction(q, p1)?;
    let d2 = direction(q, p2)?;
    Ok(cmp_offset((&reference.dx, &reference.dy), (&d1.0, &d1.1), (&d2.0, &d2.1)))
}

/// True iff `p` lies in the closed cone swept counterclockwise from `q->a` to `q->b`.
/// When `a` and `b` point the same way the cone is the whole plane.
pub fn in_cone(q: &Point, a: &Point, b: &Point, p: &Point) -> Result<bool> {
    let da = direction(q, a)?;
    let db = direction(q, b)?;
    let dp = direction(q, p)?;
    let r = (&da.0, &da.1);
    if cmp_offset(r, (&db.0, &db.1), r) == Ordering::Equal {
        return Ok(true);
    }
    Ok(cmp_offset(r, (&dp.0, &dp.1), (&db.0, &db.1)) != Ordering::Greater)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactKind {
    ProperCrossing,
    EndpointTouch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayHit {
    /// Ray parameter in units of `|q -> through|`.
    pub t: ExactScalar,
    pub point: Point,
    pub kind: ContactKind,
}

/// Intersects the ray from `q` through `through` with the closed segment `[a, b]`,
/// reporting contacts with `t > 0` only.
pub fn ray_segment_intersection(q: &Point, through: &Point, a: &Point, b: &Point) -> Result<Option<RayHit>> {
    let d = direction(q, through)?;
    let sa = orient(q, through, a);
    let sb = orient(q, through, b);
    let param = |p: &Point| -> ExactScalar {
        // p is on the supporting line; project onto d.
        let num = (&p.x - &q.x) * &d.0 + (&p.y - &q.y) * &d.1;
        let den = &d.0 * &d.0 + &d.1 * &d.1;
        num / den
    };
    match (sa, sb) {
        (Orientation::Collinear, Orientation::Collinear) => {
            let (ta, tb) = (param(a), param(b));
            if ta.is_positive() || tb.is_positive() {
                Err(degenerate("ray overlaps a segment collinear with the viewpoint"))
            } else {
                Ok(None)
            }
        }
        (Orientation::Collinear, _) | (_, Orientation::Collinear) => {
            let p = if sa == Orientation::Collinear { a } else { b };
            let t = param(p);
            if t.is_positive() {
                Ok(Some(RayHit { t, point: p.clone(), kind: ContactKind::EndpointTouch }))
            } else {
                Ok(None)
            }
        }
        (x, y) if x == y => Ok(None),
        _ => {
            // q + t d = a + s (b - a)
            let e = (&b.x - &a.x, &b.y - &a.y);
            let f = (&a.x - &q.x, &a.y - &q.y);
            let den = &d.0 * &e.1 - &d.1 * &e.0;
            let t = (&f.0 * &e.1 - &f.1 * &e.0) / &den;
            if !t.is_positive() {
                return Ok(None);
            }
            let point = Point::new(&q.x + &t * &d.0, &q.y + &t * &d.1);
            Ok(Some(RayHit { t, point, kind: ContactKind::ProperCrossing }))
        }
    }
}

/// True iff `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != Orientation::Collinear {
        return false;
    }
    let within = |lo: &ExactScalar, hi: &ExactScalar, v: &ExactScalar| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        lo <= v && v <= hi
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Ccw);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        let q = Point::from_ratios((3, 1), (1, 2));
        assert_eq!(orient(&q, &p(2, 2), &p(4, 2)), Orientation::Cw);
    }

    #[test]
    fn ccw_angle_examples() {
        let q = p(0, 0);
        let r = PseudoAngle::positive_x(q.clone());
        assert_eq!(cmp_ccw_angle(&q, &r, &p(1, 0), &p(0, 1)).unwrap(), Ordering::Less);
        assert_eq!(cmp_ccw_angle(&q, &r, &p(-1, 0), &p(0, -1)).unwrap(), Ordering::Less);
        assert_eq!(cmp_ccw_angle(&q, &r, &p(2, 2), &p(5, 5)).unwrap(), Ordering::Equal);
        assert!(matches!(cmp_ccw_angle(&q, &r, &q, &p(1, 1)), Err(VisError::InvalidQuery(_))));
    }

    #[test]
    fn ray_segment_examples() {
        let q = Point::from_ratios((3, 1), (1, 2));
        let hit = ray_segment_intersection(&q, &p(2, 2), &p(2, 4), &p(0, 4)).unwrap().unwrap();
        assert_eq!(hit.t, BigRational::new(7.into(), 3.into()));
        assert_eq!(hit.point, Point::from_ratios((2, 3), (4, 1)));
        assert_eq!(hit.kind, ContactKind::ProperCrossing);

        let hit = ray_segment_intersection(&p(2, 2), &p(3, 2), &p(4, 0), &p(4, 4)).unwrap().unwrap();
        assert_eq!(hit.t, BigRational::from_integer(2.into()));
        assert_eq!(hit.point, p(4, 2));

        assert!(ray_segment_intersection(&p(0, 0), &p(1, 0), &p(2, 1), &p(3, 2)).unwrap().is_none());
        assert!(ray_segment_intersection(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)).is_err());
    }

    #[test]
    fn cone_examples() {
        let q = p(0, 0);
        assert!(in_cone(&q, &p(1, 0), &p(0, 1), &p(1, 1)).unwrap());
        assert!(!in_cone(&q, &p(1, 0), &p(0, 1), &p(-1, 0)).unwrap());
        let q = Point::from_ratios((3, 1), (1, 2));
        let a = Point::from_ratios((4, 1), (1, 2));
        assert!(in_cone(&q, &a, &a, &p(0, 0)).unwrap());
        assert!(in_cone(&q, &a, &a, &p(3, 4)).unwrap());
    }

    #[test]
    fn parse_scalars() {
        assert_eq!(parse_scalar("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_scalar("-1.25").unwrap(), BigRational::new((-5).into(), 4.into()));
        assert_eq!(parse_scalar("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (-50i64..50, -50i64..50, 1i64..5, 1i64..5).prop_map(|(x, y, dx, dy)| Point::from_ratios((x, dx), (y, dy)))
    }

    proptest! {
        #[test]
        fn orient_antisymmetric(a in small_point(), b in small_point(), c in small_point()) {
            prop_assert_eq!(orient(&a, &b, &c), orient(&a, &c, &b).reversed());
        }

        #[test]
        fn angle_order_is_transitive(a in small_point(), b in small_point(), c in small_point()) {
            let q = Point::from_ratios((1, 7), (1, 11));
            prop_assume!(a != q && b != q && c != q);
            let r = PseudoAngle::positive_x(q.clone());
            let ab = cmp_ccw_angle(&q, &r, &a, &b).unwrap();
            let bc = cmp_ccw_angle(&q, &r, &b, &c).unwrap();
            let ac = cmp_ccw_angle(&q, &r, &a, &c).unwrap();
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert!(ac != Ordering::Greater);
            }
            let same_dir = orient(&q, &a, &b) == Orientation::Collinear
                && (&a.x - &q.x) * (&b.x - &q.x) + (&a.y - &q.y) * (&b.y - &q.y) > BigRational::zero();
            prop_assert_eq!(ab == Ordering::Equal, same_dir);
        }

        #[test]
        fn ray_hits_lie_on_ray_and_segment(t in small_point(), a in small_point(), b in small_point()) {
            let q = Point::from_ratios((1, 3), (2, 7));
            prop_assume!(t != q && a != b);
            if let Ok(Some(hit)) = ray_segment_intersection(&q, &t, &a, &b) {
                prop_assert_eq!(orient(&q, &t, &hit.point), Orientation::Collinear);
                prop_assert!(on_segment(&a, &b, &hit.point));
                prop_assert!(hit.t.is_positive());
            }
        }
    }
}
