//! Fixtures shared by the criterion benches.

use divpricer_core::{DividendSchedule, MarketParams};

/// The ten-year family with a dividend of 9 every year from 0.5 onwards.
pub fn multi_family(term: f64) -> (MarketParams, DividendSchedule) {
    let market = MarketParams::new(100.0, 100.0, 0.06, 0.3, term).expect("valid market");
    let pairs: Vec<(f64, f64)> = (0..11).map(|i| (0.5 + i as f64, 9.0)).collect();
    let schedule = DividendSchedule::from_pairs(&pairs).expect("valid schedule");
    (market, schedule)
}
