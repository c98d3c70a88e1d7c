//! Solve a bundled case by iterative deepening and print the trace.
//!
//! `cargo run --example solve -- f_9_17_to_5 42` picks a case and an
//! operator-shuffling seed.

use psw::bundled::{case, CASES};
use psw::search::{render_trace, solve_iddfs, Ordering, SearchConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| CASES[0].label.to_string());
    let Some(case) = case(&label) else {
        eprintln!("unknown case {label}; try one of:");
        for c in &CASES {
            eprintln!("  {}", c.label);
        }
        std::process::exit(2);
    };
    let ordering = args
        .next()
        .and_then(|s| s.parse().ok())
        .map_or(Ordering::Lexicographic, Ordering::Seeded);

    let inst = case.instance();
    let out = solve_iddfs(&inst, &SearchConfig::default().with_ordering(ordering), None);
    println!("{}: {}", case.name, out.status);
    if let Some(sol) = &out.solution {
        print!("{}", render_trace(inst.space(), sol, Some(&out.stats)));
    }
}
