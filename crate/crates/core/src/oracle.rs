//! Full-memory brute-force reference. Uses only the rational predicates of
//! [`crate::geometry`] and shares no logic with the workspace-bounded code.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::One;

use crate::error::{degenerate, internal, Result, VisError};
use crate::events::VisEvent;
use crate::geometry::{cmp_ccw_angle, orient, ray_segment_intersection, ContactKind, ExactScalar, Orientation, Point, PseudoAngle};
use crate::polygon_store::{chain_shape, BoundaryPoint, Chain, PolygonHandle};

#[derive(Clone, Debug)]
struct Node {
    vertex: Option<usize>,
    point: Point,
}

#[derive(Clone, Debug)]
struct Seg {
    edge: usize,
    a: Node,
    b: Node,
}

struct Scene<'a> {
    verts: &'a [Point],
    q: &'a Point,
    segs: Vec<Seg>,
}

fn class_of(verts: &[Point], q: &Point, i: usize) -> Option<Orientation> {
    let n = verts.len();
    let (prev, v, next) = (&verts[(i + n - 1) % n], &verts[i], &verts[(i + 1) % n]);
    if orient(prev, v, next) != Orientation::Cw {
        return None;
    }
    let sp = orient(q, v, prev);
    (sp != Orientation::Collinear && sp == orient(q, v, next)).then_some(sp)
}

/// `Some(true)` for a type-R reflex vertex, `Some(false)` for type L.
fn is_r(verts: &[Point], q: &Point, i: usize) -> Option<bool> {
    class_of(verts, q, i).map(|o| o == Orientation::Cw)
}

fn node_point(verts: &[Point], bp: &BoundaryPoint) -> Node {
    match bp {
        BoundaryPoint::Vertex(i) => Node { vertex: Some(*i), point: verts[*i].clone() },
        BoundaryPoint::OnEdge(e) => Node { vertex: None, point: e.point.clone() },
    }
}

fn ray_param(q: &Point, through: &Point, p: &Point) -> ExactScalar {
    let d = (&through.x - &q.x, &through.y - &q.y);
    let num = (&p.x - &q.x) * &d.0 + (&p.y - &q.y) * &d.1;
    num / (&d.0 * &d.0 + &d.1 * &d.1)
}

impl Scene<'_> {
    /// Whether the open segment from `q` to `target` is free of the scene,
    /// letting the ray graze reflex vertices and the vertex `through` lies on.
    fn sees(&self, target: &Point, through: Option<usize>) -> Result<bool> {
        for s in &self.segs {
            let Some(hit) = ray_segment_intersection(self.q, target, &s.a.point, &s.b.point)? else { continue };
            if hit.t >= ExactScalar::one() {
                continue;
            }
            if hit.kind == ContactKind::ProperCrossing {
                return Ok(false);
            }
            let node = if hit.point == s.a.point { &s.a } else { &s.b };
            match node.vertex {
                Some(w) if Some(w) == through || class_of(self.verts, self.q, w).is_some() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Nearest contact beyond vertex `v` on the ray from `q`: `(edge, point)`.
    fn shadow_of(&self, v: usize) -> Result<Option<(usize, Point)>> {
        let pv = &self.verts[v];
        let mut best: Option<(ExactScalar, usize, Point)> = None;
        for s in &self.segs {
            let Some(hit) = ray_segment_intersection(self.q, pv, &s.a.point, &s.b.point)? else { continue };
            if hit.t <= ExactScalar::one() {
                continue;
            }
            if hit.kind == ContactKind::EndpointTouch {
                let node = if hit.point == s.a.point { &s.a } else { &s.b };
                if node.vertex.is_some() {
                    return Err(degenerate(format!("vertex {v} is collinear with the viewpoint and another vertex")));
                }
            }
            if best.as_ref().is_none_or(|(t, _, _)| hit.t < *t) {
                best = Some((hit.t, s.edge, hit.point));
            }
        }
        Ok(best.map(|(_, e, p)| (e, p)))
    }

    fn cmp_events(&self, reference: &PseudoAngle, a: &(Point, VisEvent), b: &(Point, VisEvent)) -> Result<Ordering> {
        let by_angle = if a.0 == *self.q || b.0 == *self.q {
            Ordering::Equal
        } else {
            cmp_ccw_angle(self.q, reference, &a.0, &b.0)?
        };
        if by_angle != Ordering::Equal {
            return Ok(by_angle);
        }
        let pair = |e: &VisEvent| match e {
            VisEvent::Vert { index } => Some((*index, 0)),
            VisEvent::Shadow { reflex, .. } => Some((*reflex, 1)),
            VisEvent::P0 { .. } => None,
        };
        Ok(match (pair(&a.1), pair(&b.1)) {
            (Some((va, ka)), Some((vb, kb))) if va == vb => {
                let r = is_r(self.verts, self.q, va).unwrap_or(true);
                if r {
                    ka.cmp(&kb)
                } else {
                    kb.cmp(&ka)
                }
            }
            _ => Ordering::Equal,
        })
    }

    fn sort(&self, reference: &PseudoAngle, mut evs: Vec<(Point, VisEvent)>) -> Result<Vec<VisEvent>> {
        let mut err = None;
        evs.sort_by(|a, b| match self.cmp_events(reference, a, b) {
            Ok(o) => o,
            Err(e) => {
                err.get_or_insert(e);
                Ordering::Equal
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(evs.into_iter().map(|(_, e)| e).collect()),
        }
    }
}

fn p0_of(verts: &[Point], q: &Point) -> Result<(usize, Point)> {
    let n = verts.len();
    let east = Point::new(&q.x + ExactScalar::one(), q.y.clone());
    let mut best: Option<(ExactScalar, usize, Point)> = None;
    for i in 0..n {
        let Some(hit) = ray_segment_intersection(q, &east, &verts[i], &verts[(i + 1) % n])? else { continue };
        if hit.kind == ContactKind::EndpointTouch {
            return Err(degenerate("a vertex is collinear with the viewpoint on the p0 ray"));
        }
        if best.as_ref().is_none_or(|(t, _, _)| hit.t < *t) {
            best = Some((hit.t, i, hit.point));
        }
    }
    best.map(|(_, e, p)| (e, p)).ok_or_else(|| internal("no edge crosses the p0 ray"))
}

/// The visibility polygon of the whole boundary, by brute force.
pub fn oracle_vis(h: &PolygonHandle) -> Result<Vec<VisEvent>> {
    let verts = h.vertices();
    let q = h.viewpoint();
    let n = verts.len();
    let segs = (0..n)
        .map(|i| Seg {
            edge: i,
            a: Node { vertex: Some(i), point: verts[i].clone() },
            b: Node { vertex: Some((i + 1) % n), point: verts[(i + 1) % n].clone() },
        })
        .collect();
    let scene = Scene { verts, q, segs };
    let (_, p0) = p0_of(verts, q)?;
    let mut evs = Vec::new();
    for i in 0..n {
        if !scene.sees(&verts[i], Some(i))? {
            continue;
        }
        evs.push((verts[i].clone(), VisEvent::Vert { index: i }));
        if class_of(verts, q, i).is_some() {
            let (edge, point) = scene.shadow_of(i)?.ok_or_else(|| internal(format!("vertex {i} casts no shadow")))?;
            evs.push((point.clone(), VisEvent::Shadow { reflex: i, edge, point }));
        }
    }
    let mut out = vec![VisEvent::P0 { point: p0 }];
    out.extend(scene.sort(&PseudoAngle::positive_x(q.clone()), evs)?);
    Ok(out)
}

fn chain_scene<'a>(h: &'a PolygonHandle, c: &Chain) -> (Scene<'a>, Vec<Node>) {
    let verts = h.vertices();
    let n = verts.len();
    let shape = chain_shape(h, c);
    let mut nodes = vec![node_point(verts, &c.start)];
    nodes.extend((0..shape.count).map(|k| {
        let i = (shape.first + k) % n;
        Node { vertex: Some(i), point: verts[i].clone() }
    }));
    nodes.push(node_point(verts, &c.end));
    let segs = nodes
        .windows(2)
        .enumerate()
        .map(|(k, w)| Seg {
            edge: if k == 0 { c.start.anchor() } else { (shape.first + k - 1) % n },
            a: w[0].clone(),
            b: w[1].clone(),
        })
        .collect();
    (Scene { verts, q: h.viewpoint(), segs }, nodes)
}

fn whole_scene(h: &PolygonHandle) -> Scene<'_> {
    chain_scene(h, &Chain::closed(BoundaryPoint::Vertex(0))).0
}

fn endpoint_event(h: &PolygonHandle, bp: &BoundaryPoint) -> Option<VisEvent> {
    match bp {
        BoundaryPoint::Vertex(i) => Some(VisEvent::Vert { index: *i }),
        BoundaryPoint::OnEdge(e) => {
            let v = e.provenance?;
            let pv = &h.vertices()[v];
            (ray_param(h.viewpoint(), pv, &e.point) > ExactScalar::one()).then(|| VisEvent::Shadow {
                reflex: v,
                edge: e.edge,
                point: e.point.clone(),
            })
        }
    }
}

/// Events on chain `c` restricted to the region bounded by `c` and the two
/// segments from the viewpoint to its endpoints. Both endpoints are included
/// when they are events; the closed chain yields exactly [`oracle_vis`].
pub fn oracle_vis_chain(h: &PolygonHandle, c: &Chain) -> Result<Vec<VisEvent>> {
    if c.wraps {
        return oracle_vis(h);
    }
    let verts = h.vertices();
    let q = h.viewpoint();
    let whole = whole_scene(h);
    for (name, bp) in [("start", &c.start), ("end", &c.end)] {
        let through = match bp {
            BoundaryPoint::Vertex(i) => Some(*i),
            BoundaryPoint::OnEdge(e) => e.provenance,
        };
        let pt = node_point(verts, bp).point;
        if !whole.sees(&pt, through)? {
            return Err(VisError::ChainNotIndependent(format!("{name} {} is not visible", bp.describe())));
        }
    }
    let (scene, nodes) = chain_scene(h, c);
    let mut evs = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |pt: Point, e: VisEvent, evs: &mut Vec<(Point, VisEvent)>| {
        if seen.insert(e.to_line()) {
            evs.push((pt, e));
        }
    };
    let last = nodes.len() - 1;
    let reference = PseudoAngle::towards(q.clone(), &nodes[0].point)?;
    for (k, node) in nodes.iter().enumerate() {
        let endpoint = k == 0 || k == last;
        if endpoint {
            let bp = if k == 0 { &c.start } else { &c.end };
            if let Some(e) = endpoint_event(h, bp) {
                push(node.point.clone(), e, &mut evs);
            }
        }
        let Some(i) = node.vertex else { continue };
        if !endpoint {
            // outside the cone the region is not reachable from q
            if cmp_ccw_angle(q, &reference, &verts[i], &nodes[last].point)? == Ordering::Greater {
                continue;
            }
            if !scene.sees(&verts[i], Some(i))? {
                continue;
            }
        }
        push(verts[i].clone(), VisEvent::Vert { index: i }, &mut evs);
        if class_of(verts, q, i).is_some() {
            match scene.shadow_of(i)? {
                Some((edge, point)) => push(point.clone(), VisEvent::Shadow { reflex: i, edge, point }, &mut evs),
                None if endpoint => {}
                None => return Err(internal(format!("vertex {i} casts no shadow on the chain"))),
            }
        }
    }
    scene.sort(&reference, evs)
}

/// Interior vertices of `c` that are reflex with respect to the viewpoint and
/// lie strictly inside the cone spanned by the chain's endpoints.
pub fn reflex_in_cone(h: &PolygonHandle, c: &Chain) -> Result<Vec<usize>> {
    let verts = h.vertices();
    let q = h.viewpoint();
    let (_, nodes) = chain_scene(h, c);
    let start = &nodes[0].point;
    let end = &nodes[nodes.len() - 1].point;
    let reference = if c.wraps { PseudoAngle::positive_x(q.clone()) } else { PseudoAngle::towards(q.clone(), start)? };
    let mut out = Vec::new();
    for node in &nodes[1..nodes.len() - 1] {
        let i = node.vertex.expect("interior nodes are vertices");
        if class_of(verts, q, i).is_none() {
            continue;
        }
        if cmp_ccw_angle(q, &reference, &verts[i], start)? == Ordering::Equal {
            continue;
        }
        if !c.wraps && cmp_ccw_angle(q, &reference, &verts[i], end)? != Ordering::Less {
            continue;
        }
        out.push(i);
    }
    Ok(out)
}

/// Counts of reflex-in-cone vertices of `c` with angle strictly smaller and
/// strictly greater than that of `v`, offsets taken from the chain start.
pub fn rank_oracle(h: &PolygonHandle, c: &Chain, v: usize) -> Result<(usize, usize)> {
    let verts = h.vertices();
    let q = h.viewpoint();
    let reference = match &c.start {
        _ if c.wraps => PseudoAngle::positive_x(q.clone()),
        bp => PseudoAngle::towards(q.clone(), &node_point(verts, bp).point)?,
    };
    let mut smaller = 0;
    let mut greater = 0;
    for u in reflex_in_cone(h, c)? {
        match cmp_ccw_angle(q, &reference, &verts[u], &verts[v])? {
            Ordering::Less => smaller += 1,
            Ordering::Greater => greater += 1,
            Ordering::Equal => {}
        }
    }
    Ok((smaller, greater))
}

/// Number of shadows in a canonical output.
pub fn shadow_count(events: &[VisEvent]) -> usize {
    events.iter().filter(|e| matches!(e, VisEvent::Shadow { .. })).count()
}

/// The boundary vertices strictly inside the window chain of shadow event
/// `s`: between the reflex vertex and its shadow along the boundary.
pub fn window_interior(n: usize, reflex: usize, edge: usize, r_type: bool) -> Vec<usize> {
    let (from, to) = if r_type { (reflex, edge) } else { (edge, reflex) };
    // R: vertices reflex+1 ..= edge; L: edge+1 .. reflex
    let mut out = Vec::new();
    let mut i = (from + 1) % n;
    let stop = if r_type { (to + 1) % n } else { to };
    while i != stop {
        out.push(i);
        i = (i + 1) % n;
    }
    out
}

/// Type of a reflex vertex as seen from the viewpoint, by brute force.
pub fn reflex_type(h: &PolygonHandle, v: usize) -> Option<bool> {
    is_r(h.vertices(), h.viewpoint(), v)
}
