//! Visibility polygon with a constant number of working words.
//!
//! The boundary is swept once per visible reflex vertex: from the current
//! position the next visible reflex vertex and its shadow are located, the
//! vertices in between are reported, and the sweep resumes past the pair.

use crate::error::Result;
use crate::events::{EventSink, VisEvent};
use crate::polygon_store::{chain_shape, locate, BoundaryPoint, Chain, PolygonHandle, QueryContext, CHAIN_WORDS};
use crate::visibility::{classify_reflex, find_p0, next_vis_reflex, shadow, NextReflex, VertexClass};

/// Current position, pending stop and next points, loop counter.
pub const VIS_CHAIN_WORDS: u64 = CHAIN_WORDS + 6;

/// Reports the whole visibility polygon, starting with p0.
pub fn vis_polygon(h: &PolygonHandle, ctx: &QueryContext, sink: &mut dyn EventSink) -> Result<()> {
    let p0 = find_p0(h, ctx)?;
    sink.emit(VisEvent::P0 { point: p0.point.clone() })?;
    vis_chain(h, &Chain::closed(BoundaryPoint::OnEdge(p0)), ctx, sink)
}

pub(crate) fn event_of(bp: &BoundaryPoint) -> Option<VisEvent> {
    match bp {
        BoundaryPoint::Vertex(i) => Some(VisEvent::Vert { index: *i }),
        BoundaryPoint::OnEdge(e) if e.is_beyond_provenance() => Some(VisEvent::Shadow {
            reflex: e.provenance.expect("shadow has provenance"),
            edge: e.edge,
            point: e.point.clone(),
        }),
        BoundaryPoint::OnEdge(_) => None,
    }
}

fn emit_between(h: &PolygonHandle, c: &Chain, a: &BoundaryPoint, b: &BoundaryPoint, sink: &mut dyn EventSink) -> Result<()> {
    let shape = chain_shape(h, &c.between(a, b));
    for k in 0..shape.count {
        sink.emit(VisEvent::Vert { index: (shape.first + k) % h.n() })?;
    }
    Ok(())
}

fn emit_point(bp: &BoundaryPoint, sink: &mut dyn EventSink) -> Result<()> {
    match event_of(bp) {
        Some(e) => sink.emit(e),
        None => Ok(()),
    }
}

/// Reports the visibility events of chain `c` lying after its start, up to and
/// including its end when the end is itself an event. `c.start` must be visible.
pub fn vis_chain(h: &PolygonHandle, c: &Chain, ctx: &QueryContext, sink: &mut dyn EventSink) -> Result<()> {
    let _ws = ctx.ws_scope(VIS_CHAIN_WORDS);
    let mut cur = c.start.clone();

    match &c.start {
        BoundaryPoint::Vertex(i) if classify_reflex(h, *i, ctx)? == VertexClass::ReflexR => {
            let s = BoundaryPoint::OnEdge(shadow(h, c, *i, ctx)?);
            emit_point(&s, sink)?;
            if s == c.end {
                return Ok(());
            }
            cur = s;
        }
        BoundaryPoint::OnEdge(e) if e.is_beyond_provenance() => {
            let v = e.provenance.expect("shadow has provenance");
            let vb = BoundaryPoint::Vertex(v);
            if vb != c.end && locate(h, c, &vb).is_some() && classify_reflex(h, v, ctx)? == VertexClass::ReflexL {
                sink.emit(VisEvent::Vert { index: v })?;
                cur = vb;
            }
        }
        _ => {}
    }

    loop {
        let (stop, next) = match next_vis_reflex(h, c, &cur, ctx)? {
            NextReflex::EndOfChain => {
                emit_between(h, c, &cur, &c.end, sink)?;
                if !c.wraps && cur != c.end {
                    emit_point(&c.end, sink)?;
                }
                return Ok(());
            }
            NextReflex::Found { vertex, class: VertexClass::ReflexR, shadow } => {
                (BoundaryPoint::Vertex(vertex), BoundaryPoint::OnEdge(shadow))
            }
            NextReflex::Found { vertex, shadow, .. } => (BoundaryPoint::OnEdge(shadow), BoundaryPoint::Vertex(vertex)),
        };
        emit_between(h, c, &cur, &stop, sink)?;
        if stop != cur {
            emit_point(&stop, sink)?;
        }
        emit_point(&next, sink)?;
        if next == c.end {
            return Ok(());
        }
        cur = next;
    }
}
