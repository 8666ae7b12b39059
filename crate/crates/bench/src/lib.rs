//! Shared inputs for the benchmarks.

use cyclecvx::graph::generate::Family;
use cyclecvx::Graph;

/// Named graphs used across benchmark groups.
pub fn fixtures(specs: &[&str]) -> Vec<(String, Graph)> {
    specs
        .iter()
        .map(|s| {
            let g = s
                .parse::<Family>()
                .and_then(|f| f.build())
                .unwrap_or_else(|e| panic!("bad fixture {s}: {e}"));
            (s.to_string(), g)
        })
        .collect()
}
