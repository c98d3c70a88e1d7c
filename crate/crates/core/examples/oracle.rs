//! Breadth-first minimum solution lengths for every bundled case.

use psw::bundled::CASES;
use psw::search::solve_bfs;

fn main() {
    for case in &CASES {
        let r = solve_bfs(&case.instance());
        let len = r.solution.map_or("unreachable".to_string(), |s| s.len().to_string());
        println!(
            "{:<20} min {len:>3}   reachable states {}",
            case.name, r.reachable_count
        );
    }
}
