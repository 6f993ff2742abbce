//! Integer-frame predicates.
//!
//! A loaded polygon is rescaled by the common denominator of its coordinates so
//! that every input vertex and the viewpoint are integers with magnitude at most
//! `2^30`. Every line the algorithms test against passes through two input points
//! or through the viewpoint, so all predicates reduce to signs of `i128` cross
//! products and comparisons of ray parameters `cross / cross`, which stay below
//! `2^127` under that bound.

use std::cmp::Ordering;

use super::{cmp_offset, Orientation};

pub const FRAME_LIMIT: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IPt {
    pub x: i64,
    pub y: i64,
}

impl IPt {
    pub const fn new(x: i64, y: i64) -> Self {
        IPt { x, y }
    }

    pub fn minus(self, o: IPt) -> IVec {
        IVec { x: self.x - o.x, y: self.y - o.y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IVec {
    pub x: i64,
    pub y: i64,
}

impl IVec {
    pub const PLUS_X: IVec = IVec { x: 1, y: 0 };

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

pub fn cross(a: IVec, b: IVec) -> i128 {
    a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
}

pub fn dot(a: IVec, b: IVec) -> i128 {
    a.x as i128 * b.x as i128 + a.y as i128 * b.y as i128
}

pub fn orient_i(a: IPt, b: IPt, c: IPt) -> Orientation {
    Orientation::from_sign(cross(b.minus(a), c.minus(a)).signum() as i32)
}

/// Side of direction `v` relative to the directed line with direction `d`.
pub fn side(d: IVec, v: IVec) -> Orientation {
    Orientation::from_sign(cross(d, v).signum() as i32)
}

/// True iff `a` and `b` point the same way.
pub fn same_direction(a: IVec, b: IVec) -> bool {
    cross(a, b) == 0 && dot(a, b) > 0
}

/// Orders directions by counterclockwise offset from `reference`.
pub fn cmp_offset_i(reference: IVec, d1: IVec, d2: IVec) -> Ordering {
    let r = (reference.x as i128, reference.y as i128);
    let a = (d1.x as i128, d1.y as i128);
    let b = (d2.x as i128, d2.y as i128);
    cmp_offset((&r.0, &r.1), (&a.0, &a.1), (&b.0, &b.1))
}

/// An exact fraction with positive denominator. Numerator and denominator are
/// cross products of frame vectors.
#[derive(Clone, Copy, Debug)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub const ONE: Frac = Frac { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Where the line `q + t d` meets the line through `u` and `w`: returns
/// `(t, s)` with the meeting point `u + s (w - u)`, or `None` when parallel.
pub fn line_meet(q: IPt, d: IVec, u: IPt, w: IPt) -> Option<(Frac, Frac)> {
    let e = w.minus(u);
    let f = u.minus(q);
    let den = cross(d, e);
    if den == 0 {
        return None;
    }
    Some((Frac::new(cross(f, e), den), Frac::new(cross(f, d), den)))
}
