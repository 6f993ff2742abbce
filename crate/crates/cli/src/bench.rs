use rayon::prelude::*;
use viswork_core::run::{run as run_algo, RunReport};

use crate::common::{collect_instances, combos, emit, pool, CliError, CliResult};
use crate::BenchArgs;

pub const HEADER: &str = "family,n,r,r_out,algo,s,seed,access_count,ws_peak,depth_peak,wall_ns,calls,retries,passes,digest";

fn row(family: &str, r: &RunReport) -> String {
    format!(
        "{family},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.n, r.r, r.r_out, r.algo, r.s, r.seed, r.access_count, r.ws_peak, r.depth_peak, r.wall_ns, r.calls, r.retries, r.passes, r.digest
    )
}

pub fn run(a: BenchArgs) -> CliResult<()> {
    let instances = collect_instances(&a.instances)?;
    if instances.is_empty() {
        return Err(CliError::Usage("no instances to benchmark".into()));
    }
    let combos = combos(&a.algo, &a.s, &a.seed);
    let handles = instances.iter().map(|i| i.load(a.strict)).collect::<CliResult<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for (i, _) in instances.iter().enumerate() {
        for &c in &combos {
            for rep in 0..a.reps {
                jobs.push((i, c, rep));
            }
        }
    }
    let results: CliResult<Vec<(usize, RunReport, usize)>> = pool()?.install(|| {
        jobs.par_iter()
            .map(|&(i, (algo, s, seed), rep)| Ok((i, run_algo(&handles[i], algo, s, seed)?.report, rep)))
            .collect()
    });
    let mut results = results?;
    results.sort_by(|x, y| {
        let key = |(i, r, rep): &(usize, RunReport, usize)| (instances[*i].family.clone(), r.n, *i, r.algo, r.s, r.seed, *rep);
        key(x).cmp(&key(y))
    });

    let mut out = format!("# viswork-bench v1\n{HEADER}\n");
    for (i, r, _) in &results {
        out.push_str(&row(&instances[*i].family, r));
        out.push('\n');
    }
    emit(a.out.as_deref(), &out)
}
