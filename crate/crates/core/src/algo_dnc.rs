//! Divide and conquer with a workspace of O(s) words.
//!
//! A chain with more than two reflex vertices inside its cone is split by the
//! ray through an approximate angular median of those vertices; both halves
//! are independent chains. Recursion stops at depth `depth_cap(s, r)` and the
//! leaves run the constant-workspace sweep.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::algo_constant::vis_chain;
use crate::error::{internal, Result, VisError};
use crate::events::{EventSink, VisEvent};
use crate::geometry::kernel::{cmp_offset_i, same_direction, IVec};
use crate::polygon_store::{BoundaryPoint, Chain, ChainWalk, Node, PolygonHandle, QueryContext, WsScope, CHAIN_WORDS};
use crate::rng::VisRng;
use crate::visibility::{classify_window, find_p0, ray_shoot};

/// Words held by one pending right subchain: the chain and its depth.
pub const FRAME_WORDS: u64 = CHAIN_WORDS + 1;
/// Driver state besides the pending stack: current chain, depth, cap, k, RNG.
pub const DNC_BASE_WORDS: u64 = CHAIN_WORDS + 5;
/// Cone bounds and scan cursor of a reflex-in-cone scan.
pub const CONE_SCAN_WORDS: u64 = 4;
/// Interval bounds, target rank, candidate count, loop counters.
pub const DET_BASE_WORDS: u64 = 6;
/// Each pivot holds its vertex and its rank counter.
pub const PIVOT_WORDS: u64 = 2;
pub const MAX_PIVOTS: u64 = 64;
/// Bound on `ws_peak(s) - ws_peak(s - 1)`: the pivot array grows by at most
/// `PIVOT_WORDS * MAX_PIVOTS / 2` words and the depth cap by at most two frames.
pub const FRAME_CONSTANT_F: u64 = PIVOT_WORDS * MAX_PIVOTS / 2 + 2 * FRAME_WORDS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Deterministic,
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DncConfig {
    pub s: u32,
    pub variant: Variant,
    pub seed: u64,
}

impl DncConfig {
    pub fn new(s: u32, variant: Variant, seed: u64) -> Self {
        DncConfig { s, variant, seed }
    }

    /// Pivots per pass of the deterministic selection: `min(2^s, 64)`.
    pub fn pivot_budget(&self) -> u64 {
        if self.s >= 6 {
            MAX_PIVOTS
        } else {
            1 << self.s
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub calls: u64,
    /// Random draws, the accepted one included.
    pub retries: u64,
    /// Narrowing passes of the deterministic selection.
    pub passes: u64,
    /// `(#smaller, k)` of every returned partition vertex.
    pub ranks: Vec<(u64, u64)>,
}

/// Hooks for inspecting the recursion; all default to no-ops.
pub trait DncObserver {
    fn on_partition(&mut self, _h: &PolygonHandle, _c: &Chain, _k: u64, _v: usize) {}
    fn on_split(&mut self, _h: &PolygonHandle, _c: &Chain, _v: usize, _x: &BoundaryPoint) {}
}

pub struct NoObserver;
impl DncObserver for NoObserver {}

/// Smallest `h` with `(3/2)^h >= 2^s`, capped by the smallest `h` with
/// `(3/2)^h >= max(r, 2)`. Both ceilings are exact.
pub fn depth_cap(s: u32, r: u64) -> u32 {
    let three = BigUint::from(3u32);
    let two = BigUint::from(2u32);
    let first = |target: &dyn Fn(u32) -> BigUint| {
        (0u32..).find(|&h| three.pow(h) >= target(h)).expect("unbounded search")
    };
    let by_s = first(&|h| two.pow(s + h));
    let rr = BigUint::from(r.max(2));
    let by_r = first(&|h| &rr * two.pow(h));
    by_s.min(by_r)
}

/// The open cone swept counterclockwise from the start direction to the end
/// direction; the whole plane minus the start ray for the closed chain.
struct Cone {
    reference: IVec,
    end: Option<IVec>,
}

impl Cone {
    fn of(h: &PolygonHandle, c: &Chain, ctx: &QueryContext) -> Cone {
        let dir = |bp: &BoundaryPoint| match bp {
            BoundaryPoint::Vertex(i) => h.fv(*i, ctx).minus(h.qf()),
            BoundaryPoint::OnEdge(e) => e.dir,
        };
        let reference = dir(&c.start);
        let end = (!c.wraps).then(|| dir(&c.end));
        Cone { reference, end }
    }

    fn contains(&self, d: IVec) -> bool {
        !same_direction(self.reference, d) && self.end.is_none_or(|e| cmp_offset_i(self.reference, d, e).is_lt())
    }

    fn before(&self, a: IVec, b: IVec) -> bool {
        cmp_offset_i(self.reference, a, b).is_lt()
    }
}

/// Calls `f` on every reflex-in-cone vertex of `c` in chain order until it
/// returns false.
fn scan_reflex(
    h: &PolygonHandle,
    c: &Chain,
    cone: &Cone,
    ctx: &QueryContext,
    mut f: impl FnMut(usize, IVec) -> bool,
) -> Result<()> {
    let q = h.qf();
    for piece in ChainWalk::new(h, c, ctx) {
        if let (Node::Vertex { idx, p, interior: true }, Some(next)) = (piece.b, piece.b_next) {
            let d = p.minus(q);
            if cone.contains(d) && classify_window(q, piece.u, p, next, idx)?.is_reflex() && !f(idx, d) {
                break;
            }
        }
    }
    Ok(())
}

/// Number of vertices of `c` reflex with respect to the viewpoint and lying
/// strictly inside the cone of `c`.
pub fn count_reflex_in_cone(h: &PolygonHandle, c: &Chain, ctx: &QueryContext) -> Result<u64> {
    let _ws = ctx.ws_scope(CONE_SCAN_WORDS + 1);
    let cone = Cone::of(h, c, ctx);
    let mut k = 0;
    scan_reflex(h, c, &cone, ctx, |_, _| {
        k += 1;
        true
    })?;
    Ok(k)
}

fn rank_of(h: &PolygonHandle, c: &Chain, cone: &Cone, d: IVec, ctx: &QueryContext) -> Result<(u64, u64)> {
    let (mut smaller, mut greater) = (0, 0);
    scan_reflex(h, c, cone, ctx, |_, e| {
        if cone.before(e, d) {
            smaller += 1;
        } else if cone.before(d, e) {
            greater += 1;
        }
        true
    })?;
    Ok((smaller, greater))
}

fn acceptable(smaller: u64, greater: u64, k: u64) -> bool {
    3 * smaller <= 2 * k && 3 * greater <= 2 * k
}

/// Draws reflex-in-cone vertices uniformly until one is a 2/3-median.
pub fn find_partition_vertex_rand(
    h: &PolygonHandle,
    c: &Chain,
    k: u64,
    rng: &mut VisRng,
    ctx: &QueryContext,
    stats: &mut PartitionStats,
) -> Result<usize> {
    let _ws = ctx.ws_scope(CONE_SCAN_WORDS + 4);
    let cone = Cone::of(h, c, ctx);
    for _ in 0..64 * k {
        stats.retries += 1;
        let target = 1 + rng.below(k);
        let mut seen = 0;
        let mut pick = None;
        scan_reflex(h, c, &cone, ctx, |idx, d| {
            seen += 1;
            if seen == target {
                pick = Some((idx, d));
            }
            seen < target
        })?;
        let (v, d) = pick.ok_or_else(|| internal(format!("chain holds fewer than {target} reflex vertices")))?;
        let (smaller, greater) = rank_of(h, c, &cone, d, ctx)?;
        if acceptable(smaller, greater, k) {
            stats.calls += 1;
            stats.ranks.push((smaller, k));
            return Ok(v);
        }
    }
    Err(internal(format!("no acceptable partition vertex after {} draws", 64 * k)))
}

/// Multi-pass selection of a 2/3-median with at most `p` pivots per pass.
///
/// Keeps an open angular interval known to contain the exact median. Each
/// pass takes the first `p` candidates inside it in chain order, ranks them in
/// one more pass, returns one inside the acceptance window if any, and
/// otherwise shrinks the interval to the pivots bracketing the median.
pub fn find_partition_vertex_det(
    h: &PolygonHandle,
    c: &Chain,
    k: u64,
    cfg: &DncConfig,
    ctx: &QueryContext,
    stats: &mut PartitionStats,
) -> Result<usize> {
    let p = cfg.pivot_budget() as usize;
    let _ws = ctx.ws_scope(CONE_SCAN_WORDS + DET_BASE_WORDS + PIVOT_WORDS * p as u64);
    let cone = Cone::of(h, c, ctx);
    let tau = (k - 1) / 2;
    let mut lo: Option<(IVec, u64)> = None;
    let mut hi: Option<(IVec, u64)> = None;
    let mut pivots: Vec<(usize, IVec)> = Vec::with_capacity(p);
    let mut ranks: Vec<u64> = Vec::with_capacity(p);
    for _ in 0..4 * k {
        stats.passes += 1;
        pivots.clear();
        let inside = |d: IVec| {
            lo.is_none_or(|(l, _)| cone.before(l, d)) && hi.is_none_or(|(u, _)| cone.before(d, u))
        };
        let mut m = 0usize;
        scan_reflex(h, c, &cone, ctx, |idx, d| {
            if inside(d) {
                m += 1;
                if pivots.len() < p {
                    pivots.push((idx, d));
                }
            }
            true
        })?;
        if pivots.is_empty() {
            return Err(internal("selection interval lost the median"));
        }
        ranks.clear();
        ranks.resize(pivots.len(), 0);
        scan_reflex(h, c, &cone, ctx, |_, e| {
            for (r, (_, d)) in ranks.iter_mut().zip(&pivots) {
                if cone.before(e, *d) {
                    *r += 1;
                }
            }
            true
        })?;
        let best = pivots
            .iter()
            .zip(&ranks)
            .filter(|(_, &r)| acceptable(r, k - 1 - r, k))
            .min_by_key(|(_, &r)| r.abs_diff(tau));
        if let Some((&(v, _), &r)) = best {
            stats.calls += 1;
            stats.ranks.push((r, k));
            return Ok(v);
        }
        if m <= pivots.len() {
            return Err(internal("every candidate ranked but none is a 2/3-median"));
        }
        for (&(_, d), &r) in pivots.iter().zip(&ranks) {
            if r < tau && lo.is_none_or(|(_, lr)| r > lr) {
                lo = Some((d, r));
            }
            if r > tau && hi.is_none_or(|(_, hr)| r < hr) {
                hi = Some((d, r));
            }
        }
    }
    Err(internal(format!("selection did not converge within {} passes", 4 * k)))
}

/// Reports the events of independent chain `c` after its start, like
/// [`vis_chain`], using `O(s)` words.
pub fn vis_dnc(
    h: &PolygonHandle,
    c: &Chain,
    cfg: &DncConfig,
    ctx: &QueryContext,
    sink: &mut dyn EventSink,
) -> Result<PartitionStats> {
    vis_dnc_with(h, c, cfg, ctx, sink, &mut NoObserver)
}

pub fn vis_dnc_with(
    h: &PolygonHandle,
    c: &Chain,
    cfg: &DncConfig,
    ctx: &QueryContext,
    sink: &mut dyn EventSink,
    obs: &mut dyn DncObserver,
) -> Result<PartitionStats> {
    if cfg.s == 0 {
        return Err(VisError::InvalidQuery("workspace parameter s must be at least 1".into()));
    }
    let _ws = ctx.ws_scope(DNC_BASE_WORDS);
    let mut rng = VisRng::new(cfg.seed);
    let mut stats = PartitionStats::default();
    let root_k = count_reflex_in_cone(h, c, ctx)?;
    let cap = depth_cap(cfg.s, root_k) as u64;

    let mut pending: Vec<(Chain, u64, WsScope<'_>)> = Vec::new();
    let mut cur = (c.clone(), 1u64);
    loop {
        let (chain, d) = cur;
        ctx.set_depth(d);
        if d > cap {
            return Err(internal(format!("depth {d} exceeds cap {cap}")));
        }
        let k = if d == 1 { root_k } else { count_reflex_in_cone(h, &chain, ctx)? };
        if k > 2 && d < cap {
            let v = match cfg.variant {
                Variant::Randomized => find_partition_vertex_rand(h, &chain, k, &mut rng, ctx, &mut stats)?,
                Variant::Deterministic => find_partition_vertex_det(h, &chain, k, cfg, ctx, &mut stats)?,
            };
            obs.on_partition(h, &chain, k, v);
            let x = ray_shoot(h, &chain, &BoundaryPoint::Vertex(v), ctx)?;
            if x == chain.start || x == chain.end {
                return Err(internal(format!("split through vertex {v} lands on a chain endpoint")));
            }
            obs.on_split(h, &chain, v, &x);
            let left = chain.between(&chain.start, &x);
            let right = chain.between(&x, &chain.end);
            pending.push((right, d + 1, ctx.ws_scope(FRAME_WORDS)));
            cur = (left, d + 1);
            continue;
        }
        vis_chain(h, &chain, ctx, sink)?;
        match pending.pop() {
            Some((next, nd, _frame)) => cur = (next, nd),
            None => break,
        }
    }
    ctx.set_depth(0);
    Ok(stats)
}

/// The whole visibility polygon in `O(s)` words, starting with p0.
pub fn vis_polygon_dnc(
    h: &PolygonHandle,
    cfg: &DncConfig,
    ctx: &QueryContext,
    sink: &mut dyn EventSink,
) -> Result<PartitionStats> {
    vis_polygon_dnc_with(h, cfg, ctx, sink, &mut NoObserver)
}

pub fn vis_polygon_dnc_with(
    h: &PolygonHandle,
    cfg: &DncConfig,
    ctx: &QueryContext,
    sink: &mut dyn EventSink,
    obs: &mut dyn DncObserver,
) -> Result<PartitionStats> {
    let p0 = find_p0(h, ctx)?;
    sink.emit(VisEvent::P0 { point: p0.point.clone() })?;
    vis_dnc_with(h, &Chain::closed(BoundaryPoint::OnEdge(p0)), cfg, ctx, sink, obs)
}
