//! Seeded polygon families with controlled reflex structure.
//!
//! All generators emit integer coordinates. Trigonometry goes through `libm`,
//! whose results do not depend on the host platform, and is rounded to
//! integers immediately, so the same spec yields the same polygon everywhere.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, VisError};
use crate::geometry::{orient, Orientation, Point};
use crate::polygon_store::load;
use crate::rng::VisRng;

/// Attempts with perturbed seeds before giving up on general position.
const MAX_ATTEMPTS: u64 = 64;
const PERTURB: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Convex,
    Comb,
    DisplacedStar,
    Degenerate,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Convex => "convex",
            Family::Comb => "comb",
            Family::DisplacedStar => "star",
            Family::Degenerate => "degenerate",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "convex" => Ok(Family::Convex),
            "comb" => Ok(Family::Comb),
            "star" | "displaced-star" | "displaced_star" => Ok(Family::DisplacedStar),
            "degenerate" => Ok(Family::Degenerate),
            _ => Err(format!("unknown family {s:?} (convex, comb, star, degenerate)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegenerateKind {
    CollinearPair,
    VertexOnP0Ray,
    QOnBoundary,
}

impl DegenerateKind {
    pub const ALL: [DegenerateKind; 3] =
        [DegenerateKind::CollinearPair, DegenerateKind::VertexOnP0Ray, DegenerateKind::QOnBoundary];
}

impl FromStr for DegenerateKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "collinear_pair" => Ok(DegenerateKind::CollinearPair),
            "vertex_on_p0_ray" => Ok(DegenerateKind::VertexOnP0Ray),
            "q_on_boundary" => Ok(DegenerateKind::QOnBoundary),
            _ => Err(format!("unknown degenerate kind {s:?}")),
        }
    }
}

/// Parameters of one generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    /// Vertex count for convex and star, tooth count for comb.
    pub size: usize,
    pub seed: u64,
    /// Outer and inner star radii.
    pub radii: (u32, u32),
    /// Star viewpoint offset from the center, in radius units.
    pub offset: (i64, i64),
    pub degenerate: DegenerateKind,
}

impl GenSpec {
    pub fn new(family: Family, size: usize, seed: u64) -> Self {
        GenSpec { family, size, seed, radii: (8, 3), offset: (0, 0), degenerate: DegenerateKind::CollinearPair }
    }

    pub fn generate(&self) -> Result<(Vec<Point>, Point)> {
        match self.family {
            Family::Convex => gen_convex(self.size, self.seed),
            Family::Comb => gen_comb(self.size, self.seed),
            Family::DisplacedStar => gen_displaced_star(self.size, self.radii.0, self.radii.1, self.offset, self.seed),
            Family::Degenerate => Ok(gen_degenerate(self.degenerate, self.seed)),
        }
    }
}

fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
    raw.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
}

/// Retries `make` with perturbed seeds until the instance passes strict load.
fn validated(seed: u64, mut make: impl FnMut(u64) -> Result<(Vec<Point>, Point)>) -> Result<(Vec<Point>, Point)> {
    let mut last = None;
    for attempt in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(attempt.wrapping_mul(PERTURB));
        let (v, q) = make(s)?;
        match load(v.clone(), q.clone(), true) {
            Ok(_) => return Ok((v, q)),
            Err(e @ (VisError::DegenerateInput(_) | VisError::NotSimple(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| VisError::Internal("generator failed".into())))
}

/// A strictly convex polygon with vertices on a large circle; the viewpoint
/// is the rounded vertex centroid. `n = 4, seed = 0` is the 4x4 square.
pub fn gen_convex(n: usize, seed: u64) -> Result<(Vec<Point>, Point)> {
    if n < 3 {
        return Err(VisError::TooFewVertices(n));
    }
    if n == 4 && seed == 0 {
        return Ok((pts(&[(0, 0), (4, 0), (4, 4), (0, 4)]), Point::from_ints(2, 2)));
    }
    const RADIUS: f64 = (1u64 << 28) as f64;
    validated(seed, |s| {
        let mut rng = VisRng::new(s);
        let phase = rng.unit() * TAU;
        let raw: Vec<(i64, i64)> = (0..n)
            .map(|k| {
                let theta = phase + TAU * (k as f64 + 0.5 * rng.unit()) / n as f64;
                let (sin, cos) = libm::sincos(theta);
                ((RADIUS * cos).round() as i64, (RADIUS * sin).round() as i64)
            })
            .collect();
        let (sx, sy) = raw.iter().fold((0i128, 0i128), |(a, b), &(x, y)| (a + x as i128, b + y as i128));
        let q = Point::from_ints((sx / n as i128) as i64, (sy / n as i128) as i64);
        let v = pts(&raw);
        if !is_strictly_convex(&v) {
            return Ok((vec![v[0].clone(), v[0].clone(), v[0].clone()], q));
        }
        Ok((v, q))
    })
}

pub fn is_strictly_convex(v: &[Point]) -> bool {
    let n = v.len();
    (0..n).all(|i| orient(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]) == Orientation::Ccw)
}

/// A rectangle with `m` rectangular teeth on its top edge and the viewpoint
/// just above the bottom edge, under the middle gap; `n = 4m + 4`.
pub fn gen_comb(m: usize, seed: u64) -> Result<(Vec<Point>, Point)> {
    if m == 0 {
        return Err(VisError::InvalidQuery("a comb needs at least one tooth".into()));
    }
    const U: i64 = 16;
    validated(seed, |s| {
        let mut rng = VisRng::new(s);
        let base = 4 * U;
        let mut x = rng.range(2 * U, 4 * U);
        let mut teeth = Vec::with_capacity(m);
        for _ in 0..m {
            let w = rng.range(2 * U, 4 * U);
            let depth = rng.range(20 * U, 40 * U);
            teeth.push((x, x + w, depth));
            x += w + rng.range(2 * U, 4 * U);
        }
        let width = x;
        let mut raw = vec![(0, 0), (width, 0), (width, base)];
        for &(l, r, d) in teeth.iter().rev() {
            raw.extend([(r, base), (r, base + d), (l, base + d), (l, base)]);
        }
        raw.push((0, base));
        // under the gap left of the middle tooth, so no tooth is straight above q
        let g = m / 2;
        let gap_lo = if g == 0 { 0 } else { teeth[g - 1].1 };
        let qx = (gap_lo + teeth[g].0) / 2 + rng.range(-U / 2, U / 2);
        Ok((pts(&raw), Point::from_ints(qx, 1)))
    })
}

/// An alternating-radius star around the origin, scaled by 1024, with the
/// viewpoint displaced by `offset` (in the same radius units).
pub fn gen_displaced_star(n: usize, big_r: u32, small_r: u32, offset: (i64, i64), seed: u64) -> Result<(Vec<Point>, Point)> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(VisError::InvalidQuery(format!("star needs an even vertex count of at least 6, got {n}")));
    }
    if small_r == 0 || small_r >= big_r {
        return Err(VisError::InvalidQuery("star radii must satisfy R > r > 0".into()));
    }
    const SCALE: f64 = 1024.0;
    let q = Point::from_ints(offset.0 * SCALE as i64, offset.1 * SCALE as i64);
    let attempt = |s: u64| -> Result<(Vec<Point>, Point)> {
        let mut rng = VisRng::new(s);
        let raw: Vec<(i64, i64)> = (0..n)
            .map(|k| {
                let theta = TAU * (k as f64 + 0.25 + 0.5 * rng.unit()) / n as f64;
                let rad = SCALE * if k % 2 == 0 { big_r } else { small_r } as f64;
                let (sin, cos) = libm::sincos(theta);
                ((rad * cos).round() as i64, (rad * sin).round() as i64)
            })
            .collect();
        Ok((pts(&raw), q.clone()))
    };
    match validated(seed, attempt) {
        Err(VisError::ViewpointOutside) => Err(VisError::OffsetOutside),
        other => other,
    }
}

/// An input violating exactly one general-position or placement assumption.
/// The seed only translates the instance.
pub fn gen_degenerate(kind: DegenerateKind, seed: u64) -> (Vec<Point>, Point) {
    let mut rng = VisRng::new(seed);
    let (dx, dy) = (rng.range(-100, 100), rng.range(-100, 100));
    let (raw, q): (&[(i64, i64)], (i64, i64)) = match kind {
        DegenerateKind::CollinearPair => (&[(0, 0), (4, 0), (4, 4), (0, 4), (1, 1)], (2, 2)),
        DegenerateKind::VertexOnP0Ray => (&[(0, 0), (5, 0), (4, 2), (5, 4), (0, 4)], (2, 2)),
        DegenerateKind::QOnBoundary => (&[(0, 0), (4, 0), (4, 4), (0, 4)], (2, 0)),
    };
    let v = raw.iter().map(|&(x, y)| Point::from_ints(x + dx, y + dy)).collect();
    (v, Point::from_ints(q.0 + dx, q.1 + dy))
}
