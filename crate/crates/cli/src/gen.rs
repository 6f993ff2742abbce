use viswork_core::testgen::{gen_degenerate, DegenerateKind, Family, GenSpec};

use crate::common::{emit, pair, CliError, CliResult, Instance};
use crate::GenArgs;

pub fn run(a: GenArgs) -> CliResult<()> {
    let (vertices, q) = if a.family == Family::Degenerate {
        let kind: DegenerateKind = a.param.parse().map_err(CliError::Usage)?;
        gen_degenerate(kind, a.seed)
    } else {
        let size: usize = a
            .param
            .parse()
            .map_err(|_| CliError::Usage(format!("size must be a non-negative integer, got {:?}", a.param)))?;
        let mut spec = GenSpec::new(a.family, size, a.seed);
        spec.offset = pair(&a.offset);
        spec.radii = pair(&a.radii);
        spec.generate()?
    };
    let inst = Instance { label: String::new(), family: a.family.to_string(), vertices, q };
    emit(a.out.as_deref(), &inst.serialize())
}
