//! Turn a replayed pipeline transcript into an executable specification,
//! then solve it. Also shows the manual import path.

use std::path::Path;

use psw::bundled::CASES;
use psw::cta::{run_pipeline, FixtureSet, LlmTransport, RunOptions};
use psw::extract::{extract_spec, import_manual_spec, ExtractOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    for case in &CASES {
        let transport = LlmTransport::replay(FixtureSet::load_dir(&root.join("data/fixtures").join(case.label))?);
        let t = run_pipeline(case.label, case.problem_text(), &transport, &RunOptions::default())?;
        let r = extract_spec(&t, &transport, &ExtractOptions::default())?;
        println!(
            "{:<20} attempts {}  space `{}`  oracle length {:?}",
            case.name,
            r.attempts,
            r.spec.space.name,
            r.solution_length()
        );
    }

    let manual = import_manual_spec(&root.join("data/specs/v_2_3_5_to_4.pspace"))?;
    println!("\nmanual import ({:?}):\n{}", manual.provenance, manual.source);
    Ok(())
}
