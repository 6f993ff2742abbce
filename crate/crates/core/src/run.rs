//! One measured run of an algorithm on a loaded polygon.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algo_constant::vis_polygon;
use crate::algo_dnc::{count_reflex_in_cone, vis_polygon_dnc_with, DncConfig, DncObserver, NoObserver, PartitionStats, Variant};
use crate::error::Result;
use crate::events::{digest, VisEvent};
use crate::oracle::shadow_count;
use crate::polygon_store::{BoundaryPoint, Chain, PolygonHandle, QueryContext};
use crate::visibility::find_p0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algo {
    #[serde(rename = "const")]
    Const,
    #[serde(rename = "dnc-det")]
    DncDet,
    #[serde(rename = "dnc-rand")]
    DncRand,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::Const, Algo::DncDet, Algo::DncRand];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Const => "const",
            Algo::DncDet => "dnc-det",
            Algo::DncRand => "dnc-rand",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "const" => Ok(Algo::Const),
            "dnc-det" => Ok(Algo::DncDet),
            "dnc-rand" => Ok(Algo::DncRand),
            _ => Err(format!("unknown algorithm {s:?} (const, dnc-det, dnc-rand)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algo: Algo,
    /// Workspace parameter; 0 for the constant-workspace algorithm.
    pub s: u32,
    pub seed: u64,
    pub n: usize,
    /// Vertices reflex with respect to the viewpoint.
    pub r: u64,
    /// Shadow events in the output.
    pub r_out: usize,
    pub access_count: u64,
    pub ws_peak: u64,
    pub depth_peak: u64,
    pub wall_ns: u128,
    pub calls: u64,
    pub retries: u64,
    pub passes: u64,
    pub digest: String,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub events: Vec<VisEvent>,
    pub report: RunReport,
    pub stats: PartitionStats,
}

/// Number of vertices reflex with respect to the viewpoint, measured on a
/// scratch context so it is not charged to any run.
pub fn reflex_count(h: &PolygonHandle) -> Result<u64> {
    let ctx = QueryContext::new();
    let p0 = find_p0(h, &ctx)?;
    count_reflex_in_cone(h, &Chain::closed(BoundaryPoint::OnEdge(p0)), &ctx)
}

pub fn run(h: &PolygonHandle, algo: Algo, s: u32, seed: u64) -> Result<RunOutput> {
    run_observed(h, algo, s, seed, &mut NoObserver)
}

pub fn run_observed(h: &PolygonHandle, algo: Algo, s: u32, seed: u64, obs: &mut dyn DncObserver) -> Result<RunOutput> {
    let r = reflex_count(h)?;
    let ctx = QueryContext::new();
    let mut events = Vec::new();
    let start = Instant::now();
    let stats = match algo {
        Algo::Const => {
            vis_polygon(h, &ctx, &mut events)?;
            PartitionStats::default()
        }
        Algo::DncDet | Algo::DncRand => {
            let variant = if algo == Algo::DncDet { Variant::Deterministic } else { Variant::Randomized };
            vis_polygon_dnc_with(h, &DncConfig::new(s, variant, seed), &ctx, &mut events, obs)?
        }
    };
    let wall_ns = start.elapsed().as_nanos();
    let report = RunReport {
        algo,
        s: if algo == Algo::Const { 0 } else { s },
        seed: if algo == Algo::DncRand { seed } else { 0 },
        n: h.n(),
        r,
        r_out: shadow_count(&events),
        access_count: ctx.access_count(),
        ws_peak: ctx.ws_peak(),
        depth_peak: ctx.depth_peak(),
        wall_ns,
        calls: stats.calls,
        retries: stats.retries,
        passes: stats.passes,
        digest: digest(&events),
    };
    Ok(RunOutput { events, report, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l6, square};
    use crate::polygon_store::load;

    #[test]
    fn reports_of_fixtures() {
        let (v, q) = l6();
        let h = load(v, q, true).unwrap();
        let out = run(&h, Algo::Const, 0, 0).unwrap();
        assert_eq!(out.events.len(), 7);
        assert_eq!((out.report.n, out.report.r, out.report.r_out), (6, 1, 1));

        let (v, q) = square();
        let h = load(v, q, true).unwrap();
        let a = run(&h, Algo::Const, 0, 0).unwrap();
        let b = run(&h, Algo::DncRand, 4, 9).unwrap();
        assert_eq!(a.report.digest, b.report.digest);
        assert_eq!(a.report.r_out, 0);
    }

    #[test]
    fn algo_names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
        assert!("fast".parse::<Algo>().is_err());
    }
}
