use num_traits::ToPrimitive;
use viswork_core::events::{polygon_points, VisEvent};
use viswork_core::geometry::{ExactScalar, Point};

fn f(v: &ExactScalar) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Decimal with at most nine fractional digits.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// SVG y grows downward, so every point is mirrored.
fn xy(p: &Point) -> (f64, f64) {
    (f(&p.x), -f(&p.y))
}

fn path(points: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = xy(p);
        d.push_str(if i == 0 { "M" } else { " L" });
        d.push_str(&format!("{} {}", num(x), num(y)));
    }
    d.push_str(" Z");
    d
}

pub fn render(vertices: &[Point], q: &Point, events: &[VisEvent]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in vertices {
        let (x, y) = xy(p);
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = span * 0.05;
    let r = span * 0.008;
    let stroke = span * 0.003;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        num(x0 - pad),
        num(y0 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad)
    ));
    out.push_str(&format!(
        "  <path id=\"polygon\" d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n",
        path(vertices),
        num(stroke)
    ));
    out.push_str(&format!(
        "  <path id=\"visibility\" d=\"{}\" fill=\"gold\" fill-opacity=\"0.5\" stroke=\"none\"/>\n",
        path(&polygon_points(events, vertices))
    ));
    let mut dot = |p: &Point, class: &str, color: &str| {
        let (x, y) = xy(p);
        out.push_str(&format!(
            "  <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>\n",
            num(x),
            num(y),
            num(r)
        ));
    };
    dot(q, "viewpoint", "red");
    for e in events {
        match e {
            VisEvent::P0 { point } => dot(point, "p0", "blue"),
            VisEvent::Shadow { point, .. } => dot(point, "shadow", "green"),
            VisEvent::Vert { .. } => {}
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_trimmed() {
        assert_eq!(num(2.0), "2");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0 / 3.0), "0.333333333");
        assert_eq!(num(-2.5), "-2.5");
    }
}
