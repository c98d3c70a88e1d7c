//! The evaluation matrix over all bundled cases.
//!
//! `cargo run --release --example bench_matrix -- 5` sets the repetitions.

use psw::bench::{run_matrix, BenchMatrix};

fn main() {
    let reps = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run_matrix(&BenchMatrix::standard().with_repetitions(reps));
    print!("{}", report.to_table());
    println!();
    print!("{}", report.timing_table());
    println!("\nCSV:\n{}", report.to_csv());
}
