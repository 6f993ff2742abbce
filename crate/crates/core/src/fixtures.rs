//! Small hand-checked polygons shared by tests, docs and the CLI.

use crate::geometry::Point;

fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
    raw.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
}

/// The 4x4 square with the viewpoint at its center.
pub fn square() -> (Vec<Point>, Point) {
    (pts(&[(0, 0), (4, 0), (4, 4), (0, 4)]), Point::from_ints(2, 2))
}

/// An L-shaped hexagon with one reflex vertex (index 3).
pub fn l6() -> (Vec<Point>, Point) {
    (pts(&[(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]), Point::from_ratios((3, 1), (1, 2)))
}
