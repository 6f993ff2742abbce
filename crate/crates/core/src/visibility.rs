//! Constant-workspace visibility primitives on boundary chains.

use serde::{Deserialize, Serialize};

use crate::error::{degenerate, internal, Result};
use crate::geometry::kernel::{cmp_offset_i, dot, line_meet, orient_i, side, Frac, IPt, IVec};
use crate::geometry::Orientation;
use crate::polygon_store::{locate, BoundaryPoint, Chain, ChainWalk, EdgePoint, Node, Piece, PolygonHandle, QueryContext};

pub const FIND_P0_WORDS: u64 = 5;
pub const CLASSIFY_WORDS: u64 = 3;
pub const IS_VISIBLE_WORDS: u64 = 6;
pub const RAY_SHOOT_WORDS: u64 = 8;
pub const NEXT_REFLEX_WORDS: u64 = 10;

/// Reflex type of a vertex with respect to the viewpoint.
///
/// For a reflex vertex `v` both neighbours lie on one side of the line through
/// `q` and `v`. `ReflexR` has them clockwise of the ray (its shadow follows it
/// along the boundary), `ReflexL` counterclockwise (its shadow precedes it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    NotReflex,
    ReflexL,
    ReflexR,
}

impl VertexClass {
    pub fn is_reflex(self) -> bool {
        self != VertexClass::NotReflex
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NextReflex {
    Found { vertex: usize, class: VertexClass, shadow: EdgePoint },
    EndOfChain,
}

/// The first boundary point hit by the `+x` ray from the viewpoint.
pub fn find_p0(h: &PolygonHandle, ctx: &QueryContext) -> Result<EdgePoint> {
    let _ws = ctx.ws_scope(FIND_P0_WORDS);
    let q = h.qf();
    let n = h.n();
    let first = h.fv(0, ctx);
    let mut u = first;
    let mut best: Option<EdgePoint> = None;
    for i in 0..n {
        let w = if i + 1 == n { first } else { h.fv(i + 1, ctx) };
        if u.y == q.y && u.x > q.x {
            return Err(degenerate(format!(
                "vertex {i} is collinear with the viewpoint on the horizontal ray used for p0"
            )));
        }
        if let Some(e) = h.make_edge_point(i, u, w, IVec::PLUS_X, None, ctx) {
            if best.as_ref().is_none_or(|b| e.t < b.t) {
                best = Some(e);
            }
        }
        u = w;
    }
    best.ok_or_else(|| internal("no edge crosses the horizontal ray from the viewpoint"))
}

pub(crate) fn classify_window(q: IPt, prev: IPt, v: IPt, next: IPt, idx: usize) -> Result<VertexClass> {
    let turn = orient_i(prev, v, next);
    let sp = orient_i(q, v, prev);
    let sn = orient_i(q, v, next);
    if turn == Orientation::Collinear || sp == Orientation::Collinear || sn == Orientation::Collinear {
        return Err(degenerate(format!("vertex {idx} is collinear with a neighbour or with the viewpoint")));
    }
    Ok(match (turn, sp == sn, sp) {
        (Orientation::Cw, true, Orientation::Cw) => VertexClass::ReflexR,
        (Orientation::Cw, true, _) => VertexClass::ReflexL,
        _ => VertexClass::NotReflex,
    })
}

/// Classifies vertex `v`, reading exactly three vertices.
pub fn classify_reflex(h: &PolygonHandle, v: usize, ctx: &QueryContext) -> Result<VertexClass> {
    if v >= h.n() {
        return Err(crate::VisError::InvalidQuery(format!("vertex index {v} out of range")));
    }
    let _ws = ctx.ws_scope(CLASSIFY_WORDS);
    let prev = h.fv(h.prev(v), ctx);
    let p = h.fv(v, ctx);
    let next = h.fv(h.next(v), ctx);
    classify_window(h.qf(), prev, p, next, v)
}

/// Ray direction, target parameter, and the vertex the ray passes through.
fn target(h: &PolygonHandle, x: &BoundaryPoint, ctx: &QueryContext) -> (IVec, Frac, Option<usize>) {
    match x {
        BoundaryPoint::Vertex(i) => (h.fv(*i, ctx).minus(h.qf()), Frac::ONE, Some(*i)),
        BoundaryPoint::OnEdge(e) => (e.dir, e.t, e.provenance),
    }
}

fn check_on_chain(h: &PolygonHandle, c: &Chain, x: &BoundaryPoint) -> Result<()> {
    match locate(h, c, x) {
        Some(_) => Ok(()),
        None => Err(crate::VisError::InvalidQuery(format!("{} is not on the chain", x.describe()))),
    }
}

fn is_x(node: &Node, x: &BoundaryPoint) -> bool {
    match (node, x) {
        (Node::Vertex { idx, .. }, BoundaryPoint::Vertex(i)) => idx == i,
        (Node::Edge(e), BoundaryPoint::OnEdge(f)) => *e == f,
        _ => false,
    }
}

/// Nodes of a piece that belong to it for contact tests: `b` always, `a` only
/// for the first piece, so shared nodes are examined once.
fn own_nodes<'c>(piece: &Piece<'c>, first: bool) -> impl Iterator<Item = Node<'c>> {
    let a = first.then_some(piece.a);
    a.into_iter().chain(std::iter::once(piece.b))
}

/// True iff no part of `c` crosses the open segment from the viewpoint to `x`.
pub fn is_visible(h: &PolygonHandle, c: &Chain, x: &BoundaryPoint, ctx: &QueryContext) -> Result<bool> {
    check_on_chain(h, c, x)?;
    let _ws = ctx.ws_scope(IS_VISIBLE_WORDS);
    let q = h.qf();
    let (d, tx, through) = target(h, x, ctx);
    for (k, piece) in ChainWalk::new(h, c, ctx).enumerate() {
        let sa = side(d, piece.a.dir(q));
        let sb = side(d, piece.b.dir(q));
        if sa != Orientation::Collinear && sb != Orientation::Collinear && sa != sb {
            if let Some((t, _)) = line_meet(q, d, piece.u, piece.w) {
                if t.is_positive() && t < tx {
                    return Ok(false);
                }
            }
        }
        for node in own_nodes(&piece, k == 0) {
            let nd = node.dir(q);
            if side(d, nd) != Orientation::Collinear || dot(nd, d) <= 0 || is_x(&node, x) {
                continue;
            }
            match node {
                Node::Vertex { idx, .. } if Some(idx) == through => {}
                Node::Vertex { idx, .. } => {
                    return Err(degenerate(format!("vertex {idx} is collinear with the viewpoint and a query point")));
                }
                Node::Edge(y) => {
                    if y.dir != d {
                        return Err(degenerate("two constructed points are collinear with the viewpoint"));
                    }
                    if y.t < tx {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The first point of `c` met by the ray from the viewpoint through `x`.
///
/// A reflex vertex on the ray is grazed, not hit. A constructed chain endpoint
/// on the ray is returned as is.
pub fn ray_shoot(h: &PolygonHandle, c: &Chain, x: &BoundaryPoint, ctx: &QueryContext) -> Result<BoundaryPoint> {
    check_on_chain(h, c, x)?;
    let _ws = ctx.ws_scope(RAY_SHOOT_WORDS);
    let q = h.qf();
    let (d, _, through) = target(h, x, ctx);
    let mut best: Option<(Frac, BoundaryPoint)> = None;
    let mut offer = |t: Frac, bp: BoundaryPoint| {
        if t.is_positive() && best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            best = Some((t, bp));
        }
    };
    for (k, piece) in ChainWalk::new(h, c, ctx).enumerate() {
        let sa = side(d, piece.a.dir(q));
        let sb = side(d, piece.b.dir(q));
        if sa != Orientation::Collinear && sb != Orientation::Collinear && sa != sb {
            if let Some(e) = h.make_edge_point(piece.edge, piece.u, piece.w, d, through, ctx) {
                offer(e.t, BoundaryPoint::OnEdge(e));
            }
        }
        for node in own_nodes(&piece, k == 0) {
            let nd = node.dir(q);
            if side(d, nd) != Orientation::Collinear || dot(nd, d) <= 0 {
                continue;
            }
            match node {
                Node::Vertex { idx, interior, p } => {
                    if Some(idx) != through || nd != d {
                        return Err(degenerate(format!("vertex {idx} is collinear with the viewpoint and a query point")));
                    }
                    let class = match (interior, piece.b_next) {
                        (true, Some(next)) if piece.b.vertex() == Some(idx) => {
                            classify_window(q, piece.u, p, next, idx)?
                        }
                        _ => classify_reflex(h, idx, ctx)?,
                    };
                    if !class.is_reflex() {
                        offer(Frac::ONE, BoundaryPoint::Vertex(idx));
                    }
                }
                Node::Edge(y) => {
                    if y.dir != d {
                        return Err(degenerate("two constructed points are collinear with the viewpoint"));
                    }
                    offer(y.t, BoundaryPoint::OnEdge(y.clone()));
                }
            }
        }
    }
    best.map(|(_, bp)| bp)
        .ok_or_else(|| internal(format!("ray through {} leaves the chain without a hit", x.describe())))
}

/// The shadow of visible reflex vertex `v` on `c`.
pub fn shadow(h: &PolygonHandle, c: &Chain, v: usize, ctx: &QueryContext) -> Result<EdgePoint> {
    match ray_shoot(h, c, &BoundaryPoint::Vertex(v), ctx)? {
        BoundaryPoint::OnEdge(e) if e.provenance == Some(v) => Ok(e),
        other => Err(internal(format!("shadow of vertex {v} resolved to {}", other.describe()))),
    }
}

/// The next visible reflex vertex of `c` after `p`, with its shadow.
pub fn next_vis_reflex(h: &PolygonHandle, c: &Chain, p: &BoundaryPoint, ctx: &QueryContext) -> Result<NextReflex> {
    check_on_chain(h, c, p)?;
    let _ws = ctx.ws_scope(NEXT_REFLEX_WORDS);
    let q = h.qf();
    let mut from = p.clone();
    if let BoundaryPoint::Vertex(i) = p {
        if classify_reflex(h, *i, ctx)? == VertexClass::ReflexR {
            let s = BoundaryPoint::OnEdge(shadow(h, c, *i, ctx)?);
            if locate(h, c, &s).is_some() {
                from = s;
            }
        }
    }
    let rest = c.suffix(&from);

    let mut candidate = None;
    for piece in ChainWalk::new(h, &rest, ctx) {
        if let (Node::Vertex { idx, p, interior: true }, Some(next)) = (piece.b, piece.b_next) {
            let class = classify_window(q, piece.u, p, next, idx)?;
            if class.is_reflex() {
                candidate = Some((idx, class));
                break;
            }
        }
    }
    let Some((v, class)) = candidate else {
        return Ok(NextReflex::EndOfChain);
    };
    if is_visible(h, c, &BoundaryPoint::Vertex(v), ctx)? {
        return Ok(NextReflex::Found { vertex: v, class, shadow: shadow(h, c, v, ctx)? });
    }

    // v is hidden. Walk on from v; the chain leaves the region behind the
    // segment q-v and re-enters it at crossings of that segment. The answer is
    // the angularly first L-type vertex met while inside.
    let theta = match &from {
        BoundaryPoint::Vertex(i) => h.fv(*i, ctx).minus(q),
        BoundaryPoint::OnEdge(e) => e.dir,
    };
    let dv = h.fv(v, ctx).minus(q);
    let tail = c.suffix(&BoundaryPoint::Vertex(v));
    let mut inside = false;
    let mut best: Option<(usize, IVec)> = None;
    for piece in ChainWalk::new(h, &tail, ctx) {
        let sa = side(dv, piece.a.dir(q));
        let sb = side(dv, piece.b.dir(q));
        if sa != Orientation::Collinear && sb != Orientation::Collinear && sa != sb {
            if let Some((t, _)) = line_meet(q, dv, piece.u, piece.w) {
                if t.is_positive() && t < Frac::ONE {
                    inside = !inside;
                }
            }
        }
        if !inside {
            continue;
        }
        if let (Node::Vertex { idx, p, interior: true }, Some(next)) = (piece.b, piece.b_next) {
            if classify_window(q, piece.u, p, next, idx)? == VertexClass::ReflexL {
                let dir = p.minus(q);
                if best.is_none_or(|(_, bd)| cmp_offset_i(theta, dir, bd).is_lt()) {
                    best = Some((idx, dir));
                }
            }
        }
    }
    match best {
        Some((w, _)) => Ok(NextReflex::Found { vertex: w, class: VertexClass::ReflexL, shadow: shadow(h, c, w, ctx)? }),
        None => Err(internal(format!("no visible reflex vertex found behind hidden vertex {v}"))),
    }
}
