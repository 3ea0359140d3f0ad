//! Benchmark fixtures; the benchmarks themselves live under `benches/`.

use hm_core::generators::{cycle_hypertree, example, ladder, Family};
use hm_core::Hypermap;

/// Named inputs of increasing size for the enumeration benchmarks.
pub fn enumeration_fixtures() -> Vec<(String, Hypermap)> {
    let mut out = vec![("fig7".to_string(), example(Family::Fig7).expect("bundled"))];
    for n in [8, 12, 16] {
        out.push((format!("ladder_{n}"), ladder(n).expect("valid size")));
    }
    out.push((
        "cycle_hypertree_12".to_string(),
        cycle_hypertree(12).expect("valid size"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_connected_and_grow() {
        let f = enumeration_fixtures();
        assert!(f.iter().all(|(_, h)| h.is_connected()));
        assert!(f
            .windows(2)
            .take(3)
            .all(|w| w[0].1.edge_count() < w[1].1.edge_count()));
    }
}
