//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use viswork_core::algo_dnc::{depth_cap, DncObserver, FRAME_CONSTANT_F};
use viswork_core::oracle::{oracle_vis, oracle_vis_chain, rank_oracle, reflex_in_cone, reflex_type, shadow_count, window_interior};
use viswork_core::run::{run, run_observed, Algo, RunReport};
use viswork_core::testgen::{gen_comb, gen_convex, gen_degenerate, gen_displaced_star, DegenerateKind};
use viswork_core::visibility::{find_p0, is_visible};
use viswork_core::{load, BoundaryPoint, Chain, PolygonHandle, QueryContext, VisError, VisEvent};

/// Criterion 1 wall-clock limit, seconds.
const ORACLE_TIME_LIMIT_S: f64 = 120.0;
/// Criterion 4: slack on the fitted constant, and the growth-ratio window.
const CONST_FIT_SLACK: f64 = 1.5;
const GROWTH_RANGE: (f64, f64) = (3.0, 5.0);
/// Criterion 5: slack on the fitted constants.
const DNC_FIT_SLACK: f64 = 2.0;
/// Criterion 7: randomized mean draws per call, over at least this many calls.
const MAX_MEAN_RETRIES: f64 = 5.0;
const MIN_RAND_CALLS: u64 = 1000;
const RNG_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

struct Inst {
    label: String,
    h: PolygonHandle,
    oracle: Vec<VisEvent>,
}

fn ceil_log2(r: u64) -> u32 {
    if r <= 1 {
        0
    } else {
        64 - (r - 1).leading_zeros()
    }
}

fn strict(label: String, v: Vec<viswork_core::Point>, q: viswork_core::Point) -> (String, PolygonHandle) {
    let h = load(v, q, true).unwrap_or_else(|e| panic!("{label}: strict load failed: {e}"));
    (label, h)
}

/// The fixed instance set shared by criteria 1, 2, 7 and 9.
fn suite() -> Vec<(String, PolygonHandle)> {
    let mut out = Vec::new();
    for i in 0..40usize {
        let n = 3 + 7 * i;
        let (v, q) = gen_convex(n, i as u64).unwrap();
        out.push(strict(format!("convex n={n}"), v, q));
    }
    for m in 1..=64usize {
        let (v, q) = gen_comb(m, m as u64).unwrap();
        out.push(strict(format!("comb m={m}"), v, q));
    }
    let offsets = [(0, 0), (1, 1), (3, 2), (-4, 2), (5, -1), (6, 0), (-2, -5)];
    for n in [8usize, 16, 32, 64, 128, 256] {
        for (j, &off) in offsets.iter().enumerate() {
            for seed in 0..12u64 {
                let seed = seed * 7 + j as u64;
                match gen_displaced_star(n, 8, 3, off, seed) {
                    Ok((v, q)) => out.push(strict(format!("star n={n} off={off:?} seed={seed}"), v, q)),
                    Err(VisError::OffsetOutside) => {}
                    Err(e) => panic!("star n={n}: {e}"),
                }
            }
        }
    }
    out
}

struct Line {
    ok: bool,
}

impl Line {
    fn report(n: u32, ok: bool, detail: String) -> Line {
        println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
        Line { ok }
    }
}

/// Collects every partition call of a run for later checking.
#[derive(Default)]
struct Recorder {
    partitions: Vec<(Chain, u64, usize)>,
    splits: Vec<(Chain, usize, BoundaryPoint)>,
}

impl DncObserver for Recorder {
    fn on_partition(&mut self, _h: &PolygonHandle, c: &Chain, k: u64, v: usize) {
        self.partitions.push((c.clone(), k, v));
    }
    fn on_split(&mut self, _h: &PolygonHandle, c: &Chain, v: usize, x: &BoundaryPoint) {
        self.splits.push((c.clone(), v, x.clone()));
    }
}

/// Timed from instance generation through the last algorithm run.
fn crit1(insts: &[Inst], start: Instant) -> Line {
    let mut bad = Vec::new();
    for i in insts {
        match run(&i.h, Algo::Const, 0, 0) {
            Ok(o) if o.events == i.oracle => {}
            Ok(_) => bad.push(i.label.clone()),
            Err(e) => bad.push(format!("{}: {e}", i.label)),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let shadows: usize = insts.iter().map(|i| shadow_count(&i.oracle)).sum();
    let ok = insts.len() >= 300 && bad.is_empty() && elapsed < ORACLE_TIME_LIMIT_S;
    Line::report(
        1,
        ok,
        format!(
            "instances={} shadows={shadows} mismatches={} time={elapsed:.1}s (limit {ORACLE_TIME_LIMIT_S}s){}",
            insts.len(),
            bad.len(),
            bad.first().map(|b| format!(" first={b}")).unwrap_or_default()
        ),
    )
}

struct DncSuite {
    runs: u64,
    mismatches: Vec<String>,
    partitions: u64,
    rank_violations: Vec<String>,
    rand_calls: u64,
    rand_draws: u64,
    depth_violations: Vec<String>,
}

fn check_depth(r: &RunReport, label: &str, out: &mut Vec<String>) {
    if r.algo != Algo::Const && r.depth_peak > depth_cap(r.s, r.r) as u64 {
        out.push(format!("{label} {} s={} depth {} > cap {}", r.algo, r.s, r.depth_peak, depth_cap(r.s, r.r)));
    }
}

fn dnc_suite(insts: &[Inst]) -> DncSuite {
    let mut st = DncSuite {
        runs: 0,
        mismatches: Vec::new(),
        partitions: 0,
        rank_violations: Vec::new(),
        rand_calls: 0,
        rand_draws: 0,
        depth_violations: Vec::new(),
    };
    for i in insts {
        let want = viswork_core::events::digest(&i.oracle);
        let r = run(&i.h, Algo::Const, 0, 0).unwrap().report.r;
        let mut ss = vec![1u32, 2, 4, 8, ceil_log2(r) + 1];
        ss.sort_unstable();
        ss.dedup();
        for &s in &ss {
            for (algo, seeds) in [(Algo::DncDet, &[0u64][..]), (Algo::DncRand, &RNG_SEEDS[..])] {
                for &seed in seeds {
                    let mut rec = Recorder::default();
                    st.runs += 1;
                    let tag = format!("{} {algo} s={s} seed={seed}", i.label);
                    let out = match run_observed(&i.h, algo, s, seed, &mut rec) {
                        Ok(o) => o,
                        Err(e) => {
                            st.mismatches.push(format!("{tag}: {e}"));
                            continue;
                        }
                    };
                    if out.report.digest != want {
                        st.mismatches.push(tag.clone());
                    }
                    check_depth(&out.report, &i.label, &mut st.depth_violations);
                    if algo == Algo::DncRand {
                        st.rand_calls += out.stats.calls;
                        st.rand_draws += out.stats.retries;
                    }
                    for (c, k, v) in rec.partitions {
                        st.partitions += 1;
                        let cone = reflex_in_cone(&i.h, &c).unwrap().len() as u64;
                        let (lo, hi) = rank_oracle(&i.h, &c, v).unwrap();
                        if cone != k || 3 * lo as u64 > 2 * k || 3 * hi as u64 > 2 * k {
                            st.rank_violations.push(format!("{tag}: v={v} k={k} cone={cone} smaller={lo} greater={hi}"));
                        }
                    }
                }
            }
        }
    }
    st
}

fn crit2(st: &DncSuite) -> Line {
    Line::report(
        2,
        st.mismatches.is_empty(),
        format!(
            "runs={} mismatches={}{}",
            st.runs,
            st.mismatches.len(),
            st.mismatches.first().map(|b| format!(" first={b}")).unwrap_or_default()
        ),
    )
}

fn comb(m: usize) -> PolygonHandle {
    let (v, q) = gen_comb(m, 0).unwrap();
    load(v, q, true).unwrap()
}

fn crit3() -> Line {
    let mut peaks = Vec::new();
    for m in [16usize, 256, 1024] {
        let h = comb(m);
        let rep = run(&h, Algo::Const, 0, 0).unwrap().report;
        peaks.push((m, rep.n, rep.ws_peak));
    }
    let ok = peaks.iter().all(|p| p.2 == peaks[0].2);
    let detail: Vec<String> = peaks.iter().map(|(m, n, w)| format!("m={m} n={n} ws_peak={w}")).collect();
    Line::report(3, ok, detail.join(", "))
}

fn crit4() -> Line {
    let mut rows = Vec::new();
    for m in [32usize, 64, 128] {
        let h = comb(m);
        let rep = run(&h, Algo::Const, 0, 0).unwrap().report;
        let r_out = shadow_count(&oracle_vis(&h).unwrap());
        rows.push((m, rep.n as f64, r_out as f64, rep.access_count as f64));
    }
    let c = rows[0].3 / (rows[0].1 * (rows[0].2 + 1.0));
    let bound_ok = rows[1..].iter().all(|&(_, n, ro, acc)| acc <= CONST_FIT_SLACK * c * n * (ro + 1.0));
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[1].3 / w[0].3).collect();
    let growth_ok = ratios.iter().all(|&g| (GROWTH_RANGE.0..=GROWTH_RANGE.1).contains(&g));
    let fits: Vec<String> = rows.iter().map(|&(m, n, ro, acc)| format!("m={m}:{:.3}", acc / (n * (ro + 1.0)))).collect();
    Line::report(
        4,
        bound_ok && growth_ok,
        format!(
            "C={c:.3} access/(n(r_out+1)) [{}] limit {:.3}; growth {} in [{}, {}]",
            fits.join(" "),
            CONST_FIT_SLACK * c,
            ratios.iter().map(|g| format!("{g:.2}")).collect::<Vec<_>>().join(" "),
            GROWTH_RANGE.0,
            GROWTH_RANGE.1
        ),
    )
}

fn crit5(depth_violations: &mut Vec<String>) -> Line {
    let h = comb(128);
    let r = run(&h, Algo::Const, 0, 0).unwrap().report.r;
    let top = ceil_log2(r);
    let mut acc = Vec::new();
    for s in 1..=top {
        let rep = run(&h, Algo::DncDet, s, 0).unwrap().report;
        check_depth(&rep, "comb m=128", depth_violations);
        acc.push(rep.access_count);
    }
    let monotone = acc.windows(2).all(|w| w[1] <= w[0]);

    let mut det = Vec::new();
    let mut rnd = Vec::new();
    for m in [32usize, 64, 128] {
        let h = comb(m);
        let r = run(&h, Algo::Const, 0, 0).unwrap().report.r;
        let s = ceil_log2(r);
        let lg = (r as f64).log2();
        let n = h.n() as f64;
        let d = run(&h, Algo::DncDet, s, 0).unwrap().report;
        check_depth(&d, &format!("comb m={m}"), depth_violations);
        det.push(d.access_count as f64 / (n * lg * lg));
        let mut sum = 0.0;
        for seed in RNG_SEEDS {
            let rep = run(&h, Algo::DncRand, s, seed).unwrap().report;
            check_depth(&rep, &format!("comb m={m}"), depth_violations);
            sum += rep.access_count as f64;
        }
        rnd.push(sum / RNG_SEEDS.len() as f64 / (n * lg));
    }
    let det_ok = det[1..].iter().all(|&x| x <= DNC_FIT_SLACK * det[0]);
    let rnd_ok = rnd[1..].iter().all(|&x| x <= DNC_FIT_SLACK * rnd[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" ");
    Line::report(
        5,
        monotone && det_ok && rnd_ok,
        format!(
            "comb(128) det access s=1..{top}: {acc:?} non-increasing={monotone}; det access/(n log²r) m=32,64,128 [{}] limit {:.3}; rand mean access/(n log r) [{}] limit {:.3}",
            fmt(&det),
            DNC_FIT_SLACK * det[0],
            fmt(&rnd),
            DNC_FIT_SLACK * rnd[0]
        ),
    )
}

fn crit6(depth_violations: &[String]) -> (Line, Vec<String>) {
    let h = comb(64);
    let mut extra = Vec::new();
    let mut worst = 0u64;
    let mut ok = true;
    let mut detail = Vec::new();
    for (algo, seed) in [(Algo::DncDet, 0u64), (Algo::DncRand, 1)] {
        let mut peaks = Vec::new();
        for s in 1..=10u32 {
            let rep = run(&h, algo, s, seed).unwrap().report;
            check_depth(&rep, "comb m=64", &mut extra);
            peaks.push(rep.ws_peak);
        }
        for w in peaks.windows(2) {
            let d = w[1].saturating_sub(w[0]);
            worst = worst.max(d);
            ok &= d <= FRAME_CONSTANT_F;
        }
        detail.push(format!("{algo} ws_peak s=1..10 {peaks:?}"));
    }
    let all: Vec<String> = depth_violations.iter().chain(&extra).cloned().collect();
    let line = Line::report(
        6,
        ok && all.is_empty(),
        format!(
            "{}; max increment {worst} <= F={FRAME_CONSTANT_F}; depth-cap violations={}{}",
            detail.join("; "),
            all.len(),
            all.first().map(|b| format!(" first={b}")).unwrap_or_default()
        ),
    );
    (line, all)
}

fn crit7(st: &DncSuite) -> Line {
    let mean = st.rand_draws as f64 / st.rand_calls.max(1) as f64;
    let ok = st.rank_violations.is_empty() && st.rand_calls >= MIN_RAND_CALLS && mean <= MAX_MEAN_RETRIES;
    Line::report(
        7,
        ok,
        format!(
            "partition calls checked={} rank violations={}{}; randomized calls={} (min {MIN_RAND_CALLS}) mean draws={mean:.3} (max {MAX_MEAN_RETRIES})",
            st.partitions,
            st.rank_violations.len(),
            st.rank_violations.first().map(|b| format!(" first={b}")).unwrap_or_default(),
            st.rand_calls
        ),
    )
}

fn without_p0(evs: Vec<VisEvent>) -> Vec<VisEvent> {
    evs.into_iter().filter(|e| !matches!(e, VisEvent::P0 { .. })).collect()
}

fn crit8() -> Line {
    let mut small = Vec::new();
    for m in 1..=9usize {
        let (v, q) = gen_comb(m, 100 + m as u64).unwrap();
        small.push(strict(format!("comb m={m}"), v, q));
    }
    'outer: for seed in 0..40u64 {
        for n in [8usize, 12, 16, 20, 24, 32, 40] {
            if small.len() >= 50 {
                break 'outer;
            }
            let off = [(1, 1), (3, 2), (-4, 2), (5, -1), (-2, -5)][(seed % 5) as usize];
            if let Ok((v, q)) = gen_displaced_star(n, 8, 3, off, seed) {
                small.push(strict(format!("star n={n} off={off:?} seed={seed}"), v, q));
            }
        }
    }
    let mut splits = 0;
    let mut bad = Vec::new();
    for (label, h) in &small {
        for algo in [Algo::DncDet, Algo::DncRand] {
            for s in 1..=4u32 {
                let mut rec = Recorder::default();
                if let Err(e) = run_observed(h, algo, s, 7, &mut rec) {
                    bad.push(format!("{label}: {e}"));
                    continue;
                }
                for (c, v, x) in rec.splits {
                    splits += 1;
                    let whole = without_p0(oracle_vis_chain(h, &c).unwrap());
                    let left = oracle_vis_chain(h, &c.between(&c.start, &x));
                    let right = oracle_vis_chain(h, &c.between(&x, &c.end));
                    let (Ok(left), Ok(right)) = (left, right) else {
                        bad.push(format!("{label} {algo} s={s}: piece at v={v} not independent"));
                        continue;
                    };
                    let mut seen = HashSet::new();
                    let joined: Vec<VisEvent> =
                        without_p0(left).into_iter().chain(without_p0(right)).filter(|e| seen.insert(e.to_line())).collect();
                    if joined != whole {
                        bad.push(format!("{label} {algo} s={s}: split at v={v} x={}", x.describe()));
                    }
                }
            }
        }
    }
    let n_max = small.iter().map(|(_, h)| h.n()).max().unwrap_or(0);
    Line::report(
        8,
        small.len() >= 50 && n_max <= 40 && splits > 0 && bad.is_empty(),
        format!(
            "instances={} max n={n_max} splits replayed={splits} mismatches={}{}",
            small.len(),
            bad.len(),
            bad.first().map(|b| format!(" first={b}")).unwrap_or_default()
        ),
    )
}

fn crit9(insts: &[Inst]) -> Line {
    let mut shadows = 0;
    let mut checked = 0;
    let mut bad = Vec::new();
    for i in insts {
        let ctx = QueryContext::new();
        let whole = Chain::closed(BoundaryPoint::OnEdge(find_p0(&i.h, &ctx).unwrap()));
        for e in &i.oracle {
            let VisEvent::Shadow { reflex, edge, .. } = *e else { continue };
            shadows += 1;
            let Some(r_type) = reflex_type(&i.h, reflex) else {
                bad.push(format!("{}: shadow of non-reflex vertex {reflex}", i.label));
                continue;
            };
            for u in window_interior(i.h.n(), reflex, edge, r_type) {
                checked += 1;
                if is_visible(&i.h, &whole, &BoundaryPoint::Vertex(u), &ctx).unwrap() {
                    bad.push(format!("{}: vertex {u} visible inside window of {reflex}", i.label));
                }
            }
        }
    }
    Line::report(
        9,
        bad.is_empty() && shadows > 0,
        format!(
            "shadows={shadows} window vertices checked={checked} violations={}{}",
            bad.len(),
            bad.first().map(|b| format!(" first={b}")).unwrap_or_default()
        ),
    )
}

fn crit10() -> Line {
    let mut ok = true;
    let mut detail = Vec::new();
    for kind in DegenerateKind::ALL {
        for seed in 0..5u64 {
            let (v, q) = gen_degenerate(kind, seed);
            let res = load(v, q, true);
            let good = match (kind, &res) {
                (DegenerateKind::CollinearPair, Err(VisError::DegenerateInput(m))) => m.contains("collinear"),
                (DegenerateKind::VertexOnP0Ray, Err(VisError::DegenerateInput(_))) => true,
                (DegenerateKind::QOnBoundary, Err(VisError::ViewpointOutside | VisError::DegenerateInput(_))) => true,
                _ => false,
            };
            ok &= good;
            if seed == 0 {
                detail.push(format!("{kind:?}: {}", res.err().map(|e| e.to_string()).unwrap_or_else(|| "loaded".into())));
            }
        }
    }
    Line::report(10, ok, detail.join("; "))
}

fn main() -> ExitCode {
    let t = Instant::now();
    let insts: Vec<Inst> = suite()
        .into_iter()
        .map(|(label, h)| {
            let oracle = oracle_vis(&h).unwrap_or_else(|e| panic!("{label}: oracle failed: {e}"));
            Inst { label, h, oracle }
        })
        .collect();
    let mut lines = vec![crit1(&insts, t)];
    let mut st = dnc_suite(&insts);
    lines.push(crit2(&st));
    lines.push(crit3());
    lines.push(crit4());
    lines.push(crit5(&mut st.depth_violations));
    let (l6, _) = crit6(&st.depth_violations);
    lines.push(l6);
    lines.push(crit7(&st));
    lines.push(crit8());
    lines.push(crit9(&insts));
    lines.push(crit10());
    let failed = lines.iter().filter(|l| !l.ok).count();
    println!("acceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
