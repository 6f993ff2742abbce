use rayon::prelude::*;
use serde_json::json;
use viswork_core::events::{to_text, VisEvent};
use viswork_core::oracle::oracle_vis;
use viswork_core::run::{run as run_algo, Algo};

use crate::common::{collect_instances, combos, emit, pool, CliError, CliResult};
use crate::VerifyArgs;

struct Outcome {
    instance: usize,
    algo: Algo,
    s: u32,
    seed: u64,
    expected: Vec<VisEvent>,
    got: Vec<VisEvent>,
}

fn first_diff(a: &[VisEvent], b: &[VisEvent]) -> usize {
    a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()))
}

pub fn run(a: VerifyArgs) -> CliResult<()> {
    let instances = collect_instances(&a.instances)?;
    if instances.is_empty() {
        return Err(CliError::Usage("no instances to verify".into()));
    }
    let combos = combos(&a.algo, &a.s, &a.seed);
    if combos.is_empty() {
        return Err(CliError::Usage("no algorithms to verify".into()));
    }
    let strict = a.strict;
    let fault = a.inject_fault;

    let results: CliResult<Vec<Vec<Outcome>>> = pool()?.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(i, inst)| {
                let h = inst.load(strict)?;
                let expected = oracle_vis(&h)?;
                combos
                    .iter()
                    .map(|&(algo, s, seed)| {
                        let mut got = run_algo(&h, algo, s, seed)?.events;
                        if fault && got.len() > 2 {
                            got.swap(1, 2);
                        }
                        Ok(Outcome { instance: i, algo, s, seed, expected: expected.clone(), got })
                    })
                    .collect()
            })
            .collect()
    });
    let outcomes: Vec<Outcome> = results?.into_iter().flatten().collect();

    let bad: Vec<&Outcome> = outcomes.iter().filter(|o| o.expected != o.got).collect();
    let first = bad.first().map(|o| {
        let inst = &instances[o.instance];
        let at = first_diff(&o.expected, &o.got);
        json!({
            "instance": inst.label,
            "algo": o.algo,
            "s": o.s,
            "seed": o.seed,
            "index": at,
            "expected": o.expected.get(at).map(VisEvent::to_line),
            "got": o.got.get(at).map(VisEvent::to_line),
            "polygon": inst.serialize(),
            "expected_events": to_text(&o.expected),
        })
    });
    let summary = json!({
        "instances": instances.len(),
        "runs": outcomes.len(),
        "mismatches": bad.len(),
        "first_mismatch": first,
    });
    emit(a.out.as_deref(), &(serde_json::to_string_pretty(&summary).expect("json") + "\n"))?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}
