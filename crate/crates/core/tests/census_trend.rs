//! Monotone-trend smoke test for the non-transitivity experiment: the
//! fraction of tuples with non-transitive evidence falls as the coordinate
//! bound grows. Counts are frozen in tests/golden/experiment_trend.json
//! (tolerance is exact: the pipeline is deterministic for a fixed seed).
//!
//! At these sample sizes the evidence is carried by DEGREE_DROP and
//! NOT_SQUAREFREE: random small-coordinate tuples hit special positions
//! (three collinear points force a line-plus-conic member with two nodes,
//! a double root), while a *simple* rational root needs all eight points
//! on a nodal cubic and essentially never occurs at random. The trend is
//! therefore asserted on the total non-transitive count.

use cgl_core::census::{sample_tuples, summarize, transitivity_experiment};
use cgl_core::Int;
use num_traits::Zero;

#[test]
fn nontransitive_fraction_falls_with_the_coordinate_bound() {
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/experiment_trend.json")).unwrap();
    let run = |h: i64| {
        let tuples = sample_tuples(3, h, 50, 1).unwrap();
        let records = transitivity_experiment(&tuples, 2000);
        summarize(&records, Int::zero())
    };
    let low = run(golden["low"]["coord_bound"].as_i64().unwrap());
    let high = run(golden["high"]["coord_bound"].as_i64().unwrap());
    assert_eq!(
        low.nontransitive_flagged,
        golden["low"]["nontransitive_flagged"].as_u64().unwrap()
    );
    assert_eq!(
        high.nontransitive_flagged,
        golden["high"]["nontransitive_flagged"].as_u64().unwrap()
    );
    for (summary, key) in [(&low, "low"), (&high, "high")] {
        for (flag, count) in golden[key]["flag_counts"].as_object().unwrap() {
            assert_eq!(
                summary.flag_counts.get(flag).copied().unwrap_or(0),
                count.as_u64().unwrap(),
                "{key} {flag}"
            );
        }
        assert_eq!(
            summary.degenerate,
            golden[key]["degenerate"].as_u64().unwrap()
        );
    }
    assert!(
        high.nontransitive_flagged < low.nontransitive_flagged,
        "trend violated: {} !< {}",
        high.nontransitive_flagged,
        low.nontransitive_flagged
    );
}
