//! Compare the three learning modes, including a re-solve on a warm cache.

use psw::bundled::case;
use psw::search::{solve_iddfs, EvaluationCache, Learning, SearchConfig};

fn main() {
    let inst = case("f_9_17_to_5").unwrap().instance();
    for learning in [Learning::None, Learning::During] {
        let out = solve_iddfs(&inst, &SearchConfig::default().with_learning(learning), None);
        println!(
            "{learning:<8} expansions {:>5} cache hits {:>4}",
            out.stats.expansions, out.stats.cache_hits
        );
    }

    let persist = SearchConfig::default().with_learning(Learning::Persist);
    let mut cache = EvaluationCache::new();
    let cold = solve_iddfs(&inst, &persist, Some(&mut cache));
    println!(
        "persist  cold: expansions {:>5}, {} cached failures",
        cold.stats.expansions,
        cache.len()
    );
    let warm = solve_iddfs(&inst, &persist, Some(&mut cache));
    println!(
        "persist  warm: expansions {:>5}, cache hits {}, novel states {}",
        warm.stats.expansions, warm.stats.cache_hits, warm.stats.novel_states
    );
}
