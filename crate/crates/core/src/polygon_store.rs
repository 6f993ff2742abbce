//! Read-only polygon storage and the instrumentation of the memory model.
//!
//! All vertex reads made by the algorithms go through [`PolygonHandle::vertex`]
//! or its frame twin, which charge the [`QueryContext`] access counter. Working
//! variables are declared with [`QueryContext::ws_scope`].

use std::cell::Cell;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{degenerate, Result, VisError};
use crate::geometry::kernel::{self, cmp_offset_i, line_meet, orient_i, Frac, IPt, IVec, FRAME_LIMIT};
use crate::geometry::{format_scalar, Orientation, Point};

/// Strict validation is on by default up to this many vertices.
pub const STRICT_DEFAULT_MAX_N: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    pub strict: bool,
    /// Reverse clockwise input instead of failing with [`VisError::NotCcw`].
    pub reverse_cw: bool,
}

impl LoadOptions {
    pub fn for_size(n: usize) -> Self {
        LoadOptions { strict: n <= STRICT_DEFAULT_MAX_N, reverse_cw: true }
    }
}

/// An immutable simple polygon in counterclockwise order plus the viewpoint.
#[derive(Clone, Debug)]
pub struct PolygonHandle {
    vertices: Vec<Point>,
    q: Point,
    frame: Vec<IPt>,
    q_frame: IPt,
    scale: BigInt,
    reversed: bool,
}

/// Loads a polygon, validating it fully when `strict` is set.
pub fn load(vertices: Vec<Point>, q: Point, strict: bool) -> Result<PolygonHandle> {
    load_with(vertices, q, LoadOptions { strict, reverse_cw: true })
}

pub fn load_with(mut vertices: Vec<Point>, q: Point, opts: LoadOptions) -> Result<PolygonHandle> {
    let n = vertices.len();
    if n < 3 {
        return Err(VisError::TooFewVertices(n));
    }
    let scale = vertices
        .iter()
        .chain(std::iter::once(&q))
        .flat_map(|p| [p.x.denom(), p.y.denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let to_frame = |p: &Point| -> Result<IPt> {
        let conv = |v: &BigRational| -> Result<i64> {
            let scaled = (v * BigRational::from_integer(scale.clone())).to_integer();
            match scaled.to_i64() {
                Some(x) if x.abs() <= FRAME_LIMIT => Ok(x),
                _ => Err(VisError::CoordinateRange),
            }
        };
        Ok(IPt::new(conv(&p.x)?, conv(&p.y)?))
    };
    let mut frame = vertices.iter().map(to_frame).collect::<Result<Vec<_>>>()?;
    let q_frame = to_frame(&q)?;

    let area2: i128 = (0..n)
        .map(|i| {
            let (a, b) = (frame[i], frame[(i + 1) % n]);
            a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
        })
        .sum();
    if area2 == 0 {
        return Err(VisError::NotSimple("polygon has zero area".into()));
    }
    let mut reversed = false;
    if area2 < 0 {
        if !opts.reverse_cw {
            return Err(VisError::NotCcw);
        }
        vertices.reverse();
        frame.reverse();
        reversed = true;
    }
    let h = PolygonHandle { vertices, q, frame, q_frame, scale, reversed };
    if opts.strict {
        h.check_simple()?;
        h.check_interior()?;
        h.check_general_position()?;
    }
    Ok(h)
}

fn seg_contains(a: IPt, b: IPt, p: IPt) -> bool {
    orient_i(a, b, p) == Orientation::Collinear
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

fn segments_touch(a: IPt, b: IPt, c: IPt, d: IPt) -> bool {
    if a.x.max(b.x) < c.x.min(d.x)
        || c.x.max(d.x) < a.x.min(b.x)
        || a.y.max(b.y) < c.y.min(d.y)
        || c.y.max(d.y) < a.y.min(b.y)
    {
        return false;
    }
    let o1 = orient_i(a, b, c);
    let o2 = orient_i(a, b, d);
    let o3 = orient_i(c, d, a);
    let o4 = orient_i(c, d, b);
    let col = Orientation::Collinear;
    if o1 != col && o2 != col && o3 != col && o4 != col {
        return o1 != o2 && o3 != o4;
    }
    seg_contains(a, b, c) || seg_contains(a, b, d) || seg_contains(c, d, a) || seg_contains(c, d, b)
}

impl PolygonHandle {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn viewpoint(&self) -> &Point {
        &self.q
    }

    /// The stored vertices without charging any context. Meant for I/O and
    /// for the full-memory reference implementation.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// True when clockwise input was reversed at load.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    /// Reads vertex `i`, charging one access.
    pub fn vertex(&self, i: usize, ctx: &QueryContext) -> Result<&Point> {
        if i >= self.n() {
            return Err(VisError::InvalidQuery(format!("vertex index {i} out of range (n = {})", self.n())));
        }
        ctx.charge_access();
        Ok(&self.vertices[i])
    }

    /// Frame coordinates of vertex `i`, charging one access.
    pub(crate) fn fv(&self, i: usize, ctx: &QueryContext) -> IPt {
        ctx.charge_access();
        self.frame[i]
    }

    pub(crate) fn qf(&self) -> IPt {
        self.q_frame
    }

    /// Frame coordinates without charging; for validation and reference code.
    pub fn frame_vertex(&self, i: usize) -> IPt {
        self.frame[i]
    }

    pub fn frame_viewpoint(&self) -> IPt {
        self.q_frame
    }

    pub(crate) fn next(&self, i: usize) -> usize {
        if i + 1 == self.n() {
            0
        } else {
            i + 1
        }
    }

    pub(crate) fn prev(&self, i: usize) -> usize {
        if i == 0 {
            self.n() - 1
        } else {
            i - 1
        }
    }

    /// Converts a frame point `q + t d` back to input coordinates.
    pub(crate) fn unframe(&self, d: IVec, t: Frac) -> Point {
        let den = BigInt::from(t.den) * &self.scale;
        let coord = |qc: i64, dc: i64| {
            BigRational::new(BigInt::from(qc) * BigInt::from(t.den) + BigInt::from(t.num) * BigInt::from(dc), den.clone())
        };
        Point::new(coord(self.q_frame.x, d.x), coord(self.q_frame.y, d.y))
    }

    /// Builds the point where the ray from `q` with direction `dir` meets the
    /// interior of edge `edge`, if it does.
    pub(crate) fn make_edge_point(
        &self,
        edge: usize,
        u: IPt,
        w: IPt,
        dir: IVec,
        provenance: Option<usize>,
        ctx: &QueryContext,
    ) -> Option<EdgePoint> {
        let (t, s) = line_meet(self.q_frame, dir, u, w)?;
        if !t.is_positive() || !s.is_positive() || s >= Frac::ONE {
            return None;
        }
        let point = self.unframe(dir, t);
        ctx.note_bits(point.x.denom().bits().max(point.x.numer().bits()));
        Some(EdgePoint { edge, point, provenance, dir, t, s })
    }

    /// Constructs the point where the ray from `q` through vertex `through`
    /// (or along `+x` when `None`) crosses the interior of edge `edge`.
    pub fn edge_point(&self, edge: usize, through: Option<usize>, ctx: &QueryContext) -> Result<EdgePoint> {
        if edge >= self.n() || through.is_some_and(|v| v >= self.n()) {
            return Err(VisError::InvalidQuery("index out of range".into()));
        }
        let dir = match through {
            Some(v) => self.fv(v, ctx).minus(self.q_frame),
            None => IVec::PLUS_X,
        };
        let u = self.fv(edge, ctx);
        let w = self.fv(self.next(edge), ctx);
        self.make_edge_point(edge, u, w, dir, through, ctx)
            .ok_or_else(|| VisError::InvalidQuery(format!("ray does not cross the interior of edge {edge}")))
    }

    fn check_simple(&self) -> Result<()> {
        let n = self.n();
        let f = &self.frame;
        for i in 0..n {
            if f[i] == f[(i + 1) % n] {
                return Err(VisError::NotSimple(format!("repeated vertex at index {i}")));
            }
        }
        for i in 0..n {
            let (a, b) = (f[i], f[(i + 1) % n]);
            for j in (i + 1)..n {
                let (c, d) = (f[j], f[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // shared vertex only; reject folding back along the same line
                    let (shared, other_ab, other_cd) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let _ = shared;
                    if seg_contains(c, d, other_ab) || seg_contains(a, b, other_cd) {
                        return Err(VisError::NotSimple(format!("edges {i} and {j} overlap")));
                    }
                    if n == 3 {
                        continue;
                    }
                } else if segments_touch(a, b, c, d) {
                    return Err(VisError::NotSimple(format!("edges {i} and {j} intersect")));
                }
            }
        }
        Ok(())
    }

    fn check_interior(&self) -> Result<()> {
        let n = self.n();
        let q = self.q_frame;
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.frame[i], self.frame[(i + 1) % n]);
            if seg_contains(a, b, q) {
                return Err(VisError::ViewpointOutside);
            }
            if (a.y > q.y) != (b.y > q.y) {
                // x of the crossing compared with q.x, sign-adjusted for edge direction
                let o = orient_i(a, b, q);
                let crosses_right = if b.y > a.y { o == Orientation::Ccw } else { o == Orientation::Cw };
                if crosses_right {
                    inside = !inside;
                }
            }
        }
        if inside {
            Ok(())
        } else {
            Err(VisError::ViewpointOutside)
        }
    }

    fn check_general_position(&self) -> Result<()> {
        let q = self.q_frame;
        let mut order: Vec<usize> = (0..self.n()).collect();
        for &i in &order {
            let p = self.frame[i];
            if p.y == q.y && p.x > q.x {
                return Err(degenerate(format!(
                    "vertex {i} lies on the horizontal ray from the viewpoint used to place p0"
                )));
            }
        }
        order.sort_by(|&a, &b| cmp_offset_i(IVec::PLUS_X, self.frame[a].minus(q), self.frame[b].minus(q)));
        for w in order.windows(2) {
            let (a, b) = (self.frame[w[0]].minus(q), self.frame[w[1]].minus(q));
            if kernel::same_direction(a, b) {
                return Err(degenerate(format!(
                    "vertices {} and {} are collinear with the viewpoint on the same side",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// Per-query meters: vertex reads, live workspace words, recursion depth.
#[derive(Debug, Default)]
pub struct QueryContext {
    access_count: Cell<u64>,
    ws_current: Cell<u64>,
    ws_peak: Cell<u64>,
    depth_current: Cell<u64>,
    depth_peak: Cell<u64>,
    max_bits: Cell<u64>,
}

impl QueryContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn access_count(&self) -> u64 {
        self.access_count.get()
    }

    pub fn ws_current(&self) -> u64 {
        self.ws_current.get()
    }

    pub fn ws_peak(&self) -> u64 {
        self.ws_peak.get()
    }

    pub fn depth_current(&self) -> u64 {
        self.depth_current.get()
    }

    pub fn depth_peak(&self) -> u64 {
        self.depth_peak.get()
    }

    /// Largest bit length seen in a constructed coordinate. Diagnostic only;
    /// the workspace meter counts a scalar as one word regardless.
    pub fn max_coordinate_bits(&self) -> u64 {
        self.max_bits.get()
    }

    fn charge_access(&self) {
        self.access_count.set(self.access_count.get() + 1);
    }

    fn note_bits(&self, bits: u64) {
        if bits > self.max_bits.get() {
            self.max_bits.set(bits);
        }
    }

    /// Declares `words` live working words until the returned token drops.
    pub fn ws_scope(&self, words: u64) -> WsScope<'_> {
        let cur = self.ws_current.get() + words;
        self.ws_current.set(cur);
        if cur > self.ws_peak.get() {
            self.ws_peak.set(cur);
        }
        WsScope { ctx: self, words }
    }

    /// Records the current recursion depth.
    pub(crate) fn set_depth(&self, d: u64) {
        self.depth_current.set(d);
        if d > self.depth_peak.get() {
            self.depth_peak.set(d);
        }
    }
}

#[must_use]
pub struct WsScope<'a> {
    ctx: &'a QueryContext,
    words: u64,
}

impl WsScope<'_> {
    pub fn words(&self) -> u64 {
        self.words
    }
}

impl Drop for WsScope<'_> {
    fn drop(&mut self) {
        self.ctx.ws_current.set(self.ctx.ws_current.get() - self.words);
    }
}

/// A point interior to an edge, constructed by a ray from the viewpoint.
#[derive(Clone, Debug)]
pub struct EdgePoint {
    /// Edge `j` is the segment from vertex `j` to vertex `j + 1 mod n`.
    pub edge: usize,
    pub point: Point,
    /// Vertex whose ray produced the point; `None` for the `+x` ray (p0).
    pub provenance: Option<usize>,
    pub(crate) dir: IVec,
    pub(crate) t: Frac,
    pub(crate) s: Frac,
}

impl PartialEq for EdgePoint {
    fn eq(&self, other: &Self) -> bool {
        self.edge == other.edge && self.s == other.s
    }
}

impl EdgePoint {
    /// True when the point lies beyond its provenance vertex on the ray, i.e.
    /// it is the shadow of that vertex rather than a crossing in front of it.
    pub fn is_beyond_provenance(&self) -> bool {
        self.provenance.is_some() && self.t > Frac::ONE
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryPoint {
    Vertex(usize),
    OnEdge(EdgePoint),
}

impl BoundaryPoint {
    /// Vertex index, or the edge index for edge points.
    pub(crate) fn anchor(&self) -> usize {
        match self {
            BoundaryPoint::Vertex(i) => *i,
            BoundaryPoint::OnEdge(e) => e.edge,
        }
    }

    pub fn as_vertex(&self) -> Option<usize> {
        match self {
            BoundaryPoint::Vertex(i) => Some(*i),
            BoundaryPoint::OnEdge(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BoundaryPoint::Vertex(i) => format!("V{i}"),
            BoundaryPoint::OnEdge(e) => {
                format!("E{}({} {})", e.edge, format_scalar(&e.point.x), format_scalar(&e.point.y))
            }
        }
    }
}

/// A counterclockwise boundary chain held by its two endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
    /// Set only for the closed chain that starts and ends at p0.
    pub wraps: bool,
}

/// Words a chain occupies: two endpoints and the wrap flag.
pub const CHAIN_WORDS: u64 = 3;

impl Chain {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Self {
        Chain { start, end, wraps: false }
    }

    pub fn closed(p0: BoundaryPoint) -> Self {
        Chain { start: p0.clone(), end: p0, wraps: true }
    }

    /// The part of `self` from `a` to `b`; both must lie on `self` in that order.
    pub fn between(&self, a: &BoundaryPoint, b: &BoundaryPoint) -> Chain {
        let wraps = self.wraps && a == &self.start && b == &self.end;
        Chain { start: a.clone(), end: b.clone(), wraps }
    }

    /// The suffix of `self` starting at `a`.
    pub fn suffix(&self, a: &BoundaryPoint) -> Chain {
        self.between(a, &self.end)
    }
}

pub(crate) struct ChainShape {
    pub first: usize,
    pub count: usize,
}

/// Number of input vertices strictly between the endpoints, and the first one.
pub(crate) fn chain_shape(h: &PolygonHandle, c: &Chain) -> ChainShape {
    let n = h.n();
    let first = h.next(c.start.anchor());
    if c.wraps {
        return ChainShape { first, count: n };
    }
    let count = match (&c.start, &c.end) {
        (BoundaryPoint::OnEdge(a), BoundaryPoint::OnEdge(b)) if a.edge == b.edge => {
            if a.s < b.s {
                0
            } else {
                n
            }
        }
        (BoundaryPoint::Vertex(i), BoundaryPoint::Vertex(k)) if i == k => n - 1,
        (start, end) => {
            let last = match end {
                BoundaryPoint::Vertex(k) => h.prev(*k),
                BoundaryPoint::OnEdge(e) => e.edge,
            };
            (last + n - start.anchor()) % n
        }
    };
    ChainShape { first, count }
}

/// Location of a boundary point on a chain: a node ordinal (0 = start,
/// `count + 1` = end) or the interior of piece `k` (between nodes `k`, `k + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Loc {
    Node(usize),
    Piece(usize),
}

pub(crate) fn locate(h: &PolygonHandle, c: &Chain, bp: &BoundaryPoint) -> Option<Loc> {
    let n = h.n();
    let shape = chain_shape(h, c);
    if bp == &c.start {
        return Some(Loc::Node(0));
    }
    if bp == &c.end {
        return Some(Loc::Node(shape.count + 1));
    }
    match bp {
        BoundaryPoint::Vertex(i) => {
            let k = (i + n - shape.first) % n + 1;
            (k <= shape.count).then_some(Loc::Node(k))
        }
        BoundaryPoint::OnEdge(e) => {
            let lo_of = |node: &BoundaryPoint| match node {
                BoundaryPoint::OnEdge(x) if x.edge == e.edge => Some(x.s),
                BoundaryPoint::Vertex(i) if *i == e.edge => Some(Frac::new(0, 1)),
                _ => None,
            };
            let hi_of = |node: &BoundaryPoint| match node {
                BoundaryPoint::OnEdge(x) if x.edge == e.edge => Some(x.s),
                BoundaryPoint::Vertex(i) if *i == h.next(e.edge) => Some(Frac::ONE),
                _ => None,
            };
            let mut candidates = Vec::with_capacity(2);
            if c.start.anchor() == e.edge {
                candidates.push(0);
            }
            let k = (e.edge + n - shape.first) % n + 1;
            if k <= shape.count {
                candidates.push(k);
            }
            for k in candidates {
                let lo = if k == 0 { lo_of(&c.start) } else { Some(Frac::new(0, 1)) };
                let hi = if k == shape.count { hi_of(&c.end) } else { Some(Frac::ONE) };
                let (Some(lo), Some(hi)) = (lo, hi) else { continue };
                if lo < e.s && e.s < hi {
                    return Some(Loc::Piece(k));
                }
            }
            None
        }
    }
}

/// The next vertex of `c` after `bp`, or `c.end` when none remains; `None` at the end.
pub fn chain_next(h: &PolygonHandle, c: &Chain, bp: &BoundaryPoint, ctx: &QueryContext) -> Result<Option<BoundaryPoint>> {
    let shape = chain_shape(h, c);
    let loc = locate(h, c, bp).ok_or_else(|| VisError::InvalidQuery(format!("{} is not on the chain", bp.describe())))?;
    let next_node = match loc {
        Loc::Node(k) if k == shape.count + 1 => return Ok(None),
        Loc::Node(k) | Loc::Piece(k) => k + 1,
    };
    if next_node == shape.count + 1 {
        return Ok(Some(c.end.clone()));
    }
    let idx = (shape.first + next_node - 1) % h.n();
    // reading the vertex is what walking to it costs
    h.fv(idx, ctx);
    Ok(Some(BoundaryPoint::Vertex(idx)))
}

/// One node of a chain walk.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Node<'c> {
    Vertex { idx: usize, p: IPt, interior: bool },
    Edge(&'c EdgePoint),
}

impl Node<'_> {
    /// Direction from the viewpoint, never zero for a valid input.
    pub fn dir(&self, q: IPt) -> IVec {
        match self {
            Node::Vertex { p, .. } => p.minus(q),
            Node::Edge(e) => e.dir,
        }
    }

    pub fn vertex(&self) -> Option<usize> {
        match self {
            Node::Vertex { idx, .. } => Some(*idx),
            Node::Edge(_) => None,
        }
    }
}

/// A piece of a chain: the part of input edge `edge` (from `u` to `w`)
/// between two consecutive chain nodes.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Piece<'c> {
    pub edge: usize,
    pub a: Node<'c>,
    pub b: Node<'c>,
    pub u: IPt,
    pub w: IPt,
    /// Successor of `b` when `b` is an interior vertex.
    pub b_next: Option<IPt>,
}

/// Words held by a walk: piece counter, bounds, and a three-slot vertex window.
pub const WALK_WORDS: u64 = 6;

/// Streams the pieces of a chain in order, reading each vertex once.
pub(crate) struct ChainWalk<'a> {
    h: &'a PolygonHandle,
    c: &'a Chain,
    ctx: &'a QueryContext,
    first: usize,
    count: usize,
    k: usize,
    cache: [(usize, IPt); 3],
    slot: usize,
    _ws: WsScope<'a>,
}

impl<'a> ChainWalk<'a> {
    pub fn new(h: &'a PolygonHandle, c: &'a Chain, ctx: &'a QueryContext) -> Self {
        let shape = chain_shape(h, c);
        ChainWalk {
            h,
            c,
            ctx,
            first: shape.first,
            count: shape.count,
            k: 0,
            cache: [(usize::MAX, IPt::new(0, 0)); 3],
            slot: 0,
            _ws: ctx.ws_scope(WALK_WORDS),
        }
    }

    fn get(&mut self, i: usize) -> IPt {
        if let Some(&(_, p)) = self.cache.iter().find(|(j, _)| *j == i) {
            return p;
        }
        let p = self.h.fv(i, self.ctx);
        self.cache[self.slot] = (i, p);
        self.slot = (self.slot + 1) % 3;
        p
    }

    fn node(&mut self, ordinal: usize) -> Node<'a> {
        let endpoint = if ordinal == 0 {
            Some(&self.c.start)
        } else if ordinal == self.count + 1 {
            Some(&self.c.end)
        } else {
            None
        };
        match endpoint {
            Some(BoundaryPoint::OnEdge(e)) => Node::Edge(e),
            Some(BoundaryPoint::Vertex(i)) => Node::Vertex { idx: *i, p: self.get(*i), interior: false },
            None => {
                let idx = (self.first + ordinal - 1) % self.h.n();
                Node::Vertex { idx, p: self.get(idx), interior: true }
            }
        }
    }
}

impl<'a> Iterator for ChainWalk<'a> {
    type Item = Piece<'a>;

    fn next(&mut self) -> Option<Piece<'a>> {
        if self.k > self.count {
            return None;
        }
        let k = self.k;
        self.k += 1;
        let edge = if k == 0 { self.c.start.anchor() } else { (self.first + k - 1) % self.h.n() };
        let u = self.get(edge);
        let w = self.get(self.h.next(edge));
        let a = self.node(k);
        let b = self.node(k + 1);
        let b_next = match b {
            Node::Vertex { idx, interior: true, .. } => Some(self.get(self.h.next(idx))),
            _ => None,
        };
        Some(Piece { edge, a, b, u, w, b_next })
    }
}

/// Parses the polygon text format: `n`, then `n` lines `x y`, then `q x y`.
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_polygon(text: &str) -> Result<(Vec<Point>, Point)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, msg: String| VisError::Parse { line, msg };
    let (line, first) = lines.next().ok_or_else(|| perr(0, "empty input".into()))?;
    let n: usize = first.parse().map_err(|_| perr(line, format!("expected vertex count, got {first:?}")))?;
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, l) = lines.next().ok_or_else(|| perr(line, format!("expected {n} vertex lines")))?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(perr(line, format!("expected `x y`, got {l:?}")));
        }
        vertices.push(Point::parse_pair(parts[0], parts[1]).map_err(|m| perr(line, m))?);
    }
    let (line, l) = lines.next().ok_or_else(|| perr(line, "missing `q x y` line".into()))?;
    let parts: Vec<&str> = l.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "q" {
        return Err(perr(line, format!("expected `q x y`, got {l:?}")));
    }
    let q = Point::parse_pair(parts[1], parts[2]).map_err(|m| perr(line, m))?;
    if let Some((line, l)) = lines.next() {
        return Err(perr(line, format!("unexpected trailing content {l:?}")));
    }
    Ok((vertices, q))
}

pub fn write_polygon(vertices: &[Point], q: &Point) -> String {
    let mut out = format!("{}\n", vertices.len());
    for v in vertices {
        out.push_str(&format!("{v}\n"));
    }
    out.push_str(&format!("q {q}\n"));
    out
}
