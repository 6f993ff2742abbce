use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use viswork_core::geometry::Point;
use viswork_core::polygon_store::{parse_polygon, write_polygon};
use viswork_core::testgen::{Family, GenSpec};
use viswork_core::run::Algo;
use viswork_core::{load, PolygonHandle, VisError};

use crate::{InstanceArgs, StrictArgs};

#[derive(Debug)]
pub enum CliError {
    Vis(VisError),
    Io(PathBuf, std::io::Error),
    Usage(String),
    /// Verification found a difference; the summary is already printed.
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Vis(e) => match e {
                VisError::DegenerateInput(_) | VisError::ViewpointOutside => 3,
                VisError::Internal(_) | VisError::ChainNotIndependent(_) => 4,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Vis(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
            CliError::Mismatch => f.write_str("mismatch against the reference"),
        }
    }
}

impl From<VisError> for CliError {
    fn from(e: VisError) -> Self {
        CliError::Vis(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A named polygon before validation.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub family: String,
    pub vertices: Vec<Point>,
    pub q: Point,
}

impl Instance {
    pub fn load(&self, strict: StrictArgs) -> CliResult<PolygonHandle> {
        let strict = strict.resolve(self.vertices.len());
        Ok(load(self.vertices.clone(), self.q.clone(), strict)?)
    }

    pub fn serialize(&self) -> String {
        write_polygon(&self.vertices, &self.q)
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn read_instance(path: &Path) -> CliResult<Instance> {
    let (vertices, q) = parse_polygon(&read_file(path)?)?;
    Ok(Instance { label: path.display().to_string(), family: "file".into(), vertices, q })
}

/// Writes to `out` or, when absent, to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pair<T: Copy>(v: &[T]) -> (T, T) {
    (v[0], v[1])
}

pub fn collect_instances(a: &InstanceArgs) -> CliResult<Vec<Instance>> {
    let mut out = Vec::new();
    for p in &a.input {
        out.push(read_instance(p)?);
    }
    if let Some(family) = a.family {
        if family == Family::Degenerate {
            return Err(CliError::Usage("the degenerate family has no size; use `gen degenerate <kind>`".into()));
        }
        for &size in &a.sizes {
            for &seed in &a.gen_seeds {
                let mut spec = GenSpec::new(family, size, seed);
                spec.offset = pair(&a.offset);
                spec.radii = pair(&a.radii);
                let (vertices, q) = spec.generate()?;
                out.push(Instance { label: format!("{family}-{size}-seed{seed}"), family: family.to_string(), vertices, q });
            }
        }
    }
    Ok(out)
}

/// Worker pool sized by `VISWORK_THREADS`, or rayon's default when unset.
pub fn pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("VISWORK_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("VISWORK_THREADS must be a number, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// The distinct (algo, s, seed) runs implied by the lists; `s` only matters
/// for the divide-and-conquer variants and `seed` only for the randomized one.
pub fn combos(algos: &[Algo], s: &[u32], seeds: &[u64]) -> Vec<(Algo, u32, u64)> {
    let mut out = Vec::new();
    for &a in algos {
        let ss: Vec<u32> = if a == Algo::Const { vec![0] } else { s.to_vec() };
        let seeds: Vec<u64> = if a == Algo::DncRand { seeds.to_vec() } else { vec![0] };
        for &s in &ss {
            for &seed in &seeds {
                if !out.contains(&(a, s, seed)) {
                    out.push((a, s, seed));
                }
            }
        }
    }
    out
}
