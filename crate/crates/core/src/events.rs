//! Output events of a visibility computation and their encodings.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, VisError};
use crate::geometry::Point;

/// One vertex of the visibility polygon, reported in counterclockwise order
/// around the viewpoint starting at p0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VisEvent {
    /// The start point: first boundary hit of the `+x` ray from the viewpoint.
    P0 { point: Point },
    /// A visible input vertex.
    Vert { index: usize },
    /// The shadow cast by visible reflex vertex `reflex` onto edge `edge`.
    Shadow { reflex: usize, edge: usize, point: Point },
}

impl VisEvent {
    /// One-line text form: `P0 x y`, `V i`, or `S reflex edge x y`.
    pub fn to_line(&self) -> String {
        match self {
            VisEvent::P0 { point } => format!("P0 {point}"),
            VisEvent::Vert { index } => format!("V {index}"),
            VisEvent::Shadow { reflex, edge, point } => format!("S {reflex} {edge} {point}"),
        }
    }

    pub fn parse_line(line: &str, lineno: usize) -> Result<VisEvent> {
        let err = |msg: String| VisError::Parse { line: lineno, msg };
        let parts: Vec<&str> = line.split_whitespace().collect();
        let idx = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad index {s:?}")));
        match parts.as_slice() {
            ["P0", x, y] => Ok(VisEvent::P0 { point: Point::parse_pair(x, y).map_err(err)? }),
            ["V", i] => Ok(VisEvent::Vert { index: idx(i)? }),
            ["S", r, e, x, y] => Ok(VisEvent::Shadow {
                reflex: idx(r)?,
                edge: idx(e)?,
                point: Point::parse_pair(x, y).map_err(err)?,
            }),
            _ => Err(err(format!("unrecognized event line {line:?}"))),
        }
    }
}

/// Receives events as they are produced.
pub trait EventSink {
    fn emit(&mut self, e: VisEvent) -> Result<()>;
}

impl EventSink for Vec<VisEvent> {
    fn emit(&mut self, e: VisEvent) -> Result<()> {
        self.push(e);
        Ok(())
    }
}

/// Adapts a closure into a sink.
pub struct FnSink<F>(pub F);

impl<F: FnMut(VisEvent) -> Result<()>> EventSink for FnSink<F> {
    fn emit(&mut self, e: VisEvent) -> Result<()> {
        (self.0)(e)
    }
}

/// Counts events and hashes their text form without storing them.
#[derive(Default)]
pub struct DigestSink {
    hasher: Sha256,
    pub count: u64,
}

impl DigestSink {
    pub fn finish(self) -> String {
        hex(&self.hasher.finalize())
    }
}

impl EventSink for DigestSink {
    fn emit(&mut self, e: VisEvent) -> Result<()> {
        self.hasher.update(e.to_line().as_bytes());
        self.hasher.update(b"\n");
        self.count += 1;
        Ok(())
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the text encoding, one event per line.
pub fn digest(events: &[VisEvent]) -> String {
    let mut s = DigestSink::default();
    for e in events {
        s.emit(e.clone()).expect("digest sink never fails");
    }
    s.finish()
}

pub fn to_text(events: &[VisEvent]) -> String {
    events.iter().map(|e| e.to_line() + "\n").collect()
}

pub fn parse_text(text: &str) -> Result<Vec<VisEvent>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| VisEvent::parse_line(l, i + 1))
        .collect()
}

/// The visibility polygon's vertices as points, in output order.
pub fn polygon_points(events: &[VisEvent], vertices: &[Point]) -> Vec<Point> {
    events
        .iter()
        .map(|e| match e {
            VisEvent::P0 { point } | VisEvent::Shadow { point, .. } => point.clone(),
            VisEvent::Vert { index } => vertices[*index].clone(),
        })
        .collect()
}
