//! Run the six-node pipeline offline from recorded responses and save the
//! transcript.

use std::path::Path;

use psw::bundled::case;
use psw::cta::{run_pipeline, FixtureSet, LlmTransport, NodeId, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let case = case("a_4_9_to_6").unwrap();
    let fixtures = FixtureSet::load_dir(
        &Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("data/fixtures")
            .join(case.label),
    )?;
    let out = std::env::temp_dir().join("psw-replay-example");
    let t = run_pipeline(
        case.label,
        case.problem_text(),
        &LlmTransport::replay(fixtures),
        &RunOptions::in_dir(&out),
    )?;

    for n in &t.nodes {
        let first = n.response.lines().next().unwrap_or("");
        println!("{:<24} {first}", n.node.as_str());
    }
    let revised = t.response(NodeId::RefineOperators).unwrap();
    let transfer = revised.lines().filter(|l| l.contains("max(0")).collect::<Vec<_>>();
    println!("\nrevised transfer lines:\n{}", transfer.join("\n"));
    println!("\ntranscript saved under {}", out.display());
    Ok(())
}
