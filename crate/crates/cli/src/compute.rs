use serde_json::json;
use viswork_core::run::run as run_algo;

use crate::common::{emit, read_instance, CliResult};
use crate::{svg, ComputeArgs, Format};

pub fn run(a: ComputeArgs) -> CliResult<()> {
    let inst = read_instance(&a.input)?;
    let h = inst.load(a.strict)?;
    let out = run_algo(&h, a.algo, a.s, a.seed)?;
    let text = match a.format {
        Format::Text => viswork_core::events::to_text(&out.events),
        Format::Json => {
            let v = json!({ "events": out.events, "report": out.report });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Svg => svg::render(h.vertices(), h.viewpoint(), &out.events),
    };
    emit(a.out.as_deref(), &text)
}
