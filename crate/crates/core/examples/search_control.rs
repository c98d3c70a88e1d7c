//! Effect of path constraints and failure detection at a fixed depth.

use psw::bundled::case;
use psw::search::{solve_iddfs, SearchConfig};

fn main() {
    let inst = case("f_9_17_to_5").unwrap().instance();
    println!("F(9,17)->5, depth limit 10");
    for constraints in [true, false] {
        for fd in [true, false] {
            let config = SearchConfig::default()
                .with_max_depth(10)
                .with_path_constraints(constraints)
                .with_failure_detection(fd);
            let out = solve_iddfs(&inst, &config, None);
            println!(
                "  constraints {:<5} failure detection {:<5} -> {:>6} expansions ({})",
                constraints, fd, out.stats.expansions, out.status
            );
        }
    }
}
