//! Print the system prompt each analyst node would receive for a case.

use psw::bundled::case;
use psw::cta::{system_prompt, NodeId};

fn main() {
    let label = std::env::args().nth(1).unwrap_or_else(|| "a_4_9_to_6".into());
    let case = case(&label).expect("bundled case label");
    for node in NodeId::PIPELINE
        .into_iter()
        .chain([NodeId::OneShotFormulate, NodeId::OneShotSolve])
    {
        let prompt = system_prompt(node, case.problem_text()).unwrap();
        println!("===== {node} ({} bytes) =====\n{prompt}\n", prompt.len());
    }
}
