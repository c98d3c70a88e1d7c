//! The two single-prompt baselines, replayed from fixtures.

use std::path::Path;

use psw::bundled::case;
use psw::cta::{run_oneshot_formulate, run_oneshot_solve, FixtureSet, LlmTransport, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let case = case("f_3_5_to_4").unwrap();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/fixtures")
        .join(case.label);
    let transport = LlmTransport::replay(FixtureSet::load_dir(&dir)?);
    let opts = RunOptions::default();
    for t in [
        run_oneshot_formulate(case.label, case.problem_text(), &transport, &opts)?,
        run_oneshot_solve(case.label, case.problem_text(), &transport, &opts)?,
    ] {
        println!("===== {} =====\n{}\n", t.run_id, t.nodes[0].response);
    }
    Ok(())
}
