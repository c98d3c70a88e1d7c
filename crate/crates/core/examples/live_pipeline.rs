//! Run one pipeline node against a real endpoint. Needs PSW_LLM_API_KEY;
//! without it this only explains what it would do.

use psw::bundled::case;
use psw::cta::{run_nodes, LiveConfig, LlmTransport, NodeId, RunOptions, API_KEY_ENV};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = LiveConfig::from_env();
    if config.api_key.is_none() {
        println!(
            "{API_KEY_ENV} is not set; would call {} with model {}",
            config.endpoint, config.model_id
        );
        return Ok(());
    }
    let case = case("f_3_5_to_4").unwrap();
    let transport = LlmTransport::live(config)?;
    let t = run_nodes(
        &[NodeId::Characterize],
        case.label,
        case.problem_text(),
        &transport,
        &RunOptions::default(),
        "live",
    )?;
    println!("{}", t.nodes[0].response);
    Ok(())
}
