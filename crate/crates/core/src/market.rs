//! Market data shared by every pricer: flat market parameters, cash dividend
//! schedules, dividend policies and option kinds.

use std::fmt;
use std::str::FromStr;

use crate::error::{config, Result};

/// Flat Black-Scholes market for a single European option.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams {
    spot: f64,
    strike: f64,
    rate: f64,
    vol: f64,
    term: f64,
}

impl MarketParams {
    /// Validates and builds the parameter set. `rate` may take any finite
    /// value; spot, vol and term must be positive and the strike non-negative.
    pub fn new(spot: f64, strike: f64, rate: f64, vol: f64, term: f64) -> Result<Self> {
        if !(spot.is_finite() && spot > 0.0) {
            return Err(config(format!("spot must be positive, got {spot}")));
        }
        if !(strike.is_finite() && strike >= 0.0) {
            return Err(config(format!("strike must be non-negative, got {strike}")));
        }
        if !rate.is_finite() {
            return Err(config(format!("rate must be finite, got {rate}")));
        }
        if !(vol.is_finite() && vol > 0.0) {
            return Err(config(format!("volatility must be positive, got {vol}")));
        }
        if !(term.is_finite() && term > 0.0) {
            return Err(config(format!("term must be positive, got {term}")));
        }
        Ok(Self {
            spot,
            strike,
            rate,
            vol,
            term,
        })
    }

    pub fn spot(&self) -> f64 {
        self.spot
    }

    pub fn strike(&self) -> f64 {
        self.strike
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn vol(&self) -> f64 {
        self.vol
    }

    pub fn term(&self) -> f64 {
        self.term
    }

    pub fn with_term(&self, term: f64) -> Result<Self> {
        Self::new(self.spot, self.strike, self.rate, self.vol, term)
    }

    pub fn with_strike(&self, strike: f64) -> Result<Self> {
        Self::new(self.spot, strike, self.rate, self.vol, self.term)
    }

    pub fn with_vol(&self, vol: f64) -> Result<Self> {
        Self::new(self.spot, self.strike, self.rate, vol, self.term)
    }

    /// `exp(-r t)`.
    pub fn discount(&self, t: f64) -> f64 {
        (-self.rate * t).exp()
    }
}

/// A cash dividend of `amount` paid at `time` (years from valuation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dividend {
    pub time: f64,
    pub amount: f64,
}

impl Dividend {
    pub fn new(time: f64, amount: f64) -> Self {
        Self { time, amount }
    }
}

/// Ordered list of cash dividends with strictly increasing positive times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DividendSchedule {
    entries: Vec<Dividend>,
}

impl DividendSchedule {
    pub fn new(entries: Vec<Dividend>) -> Result<Self> {
        for (i, d) in entries.iter().enumerate() {
            if !(d.time.is_finite() && d.time > 0.0) {
                return Err(config(format!("dividend time must be positive, got {}", d.time)));
            }
            if !(d.amount.is_finite() && d.amount >= 0.0) {
                return Err(config(format!(
                    "dividend amount must be non-negative, got {}",
                    d.amount
                )));
            }
            if i > 0 && d.time <= entries[i - 1].time {
                return Err(config(format!(
                    "dividend times must be strictly increasing ({} after {})",
                    d.time,
                    entries[i - 1].time
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(t, d)| Dividend::new(t, d)).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[Dividend] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with `a < t_i <= b`.
    pub fn window(&self, a: f64, b: f64) -> &[Dividend] {
        let lo = self.entries.partition_point(|d| d.time <= a);
        let hi = self.entries.partition_point(|d| d.time <= b);
        &self.entries[lo..hi.max(lo)]
    }

    /// Entries paid during the life of an option expiring at `term`.
    pub fn up_to(&self, term: f64) -> &[Dividend] {
        self.window(0.0, term)
    }

    /// Entries with `t <= t_i <= term`, i.e. those still to be paid when
    /// standing just before time `t`.
    pub fn remaining(&self, t: f64, term: f64) -> &[Dividend] {
        let lo = self.entries.partition_point(|d| d.time < t);
        let hi = self.entries.partition_point(|d| d.time <= term);
        &self.entries[lo..hi.max(lo)]
    }

    /// Sub-schedule of the entries paid strictly before `t`.
    pub fn before(&self, t: f64) -> DividendSchedule {
        let hi = self.entries.partition_point(|d| d.time < t);
        Self {
            entries: self.entries[..hi].to_vec(),
        }
    }

    /// Sub-schedule of the entries in `(0, term]`.
    pub fn truncated(&self, term: f64) -> DividendSchedule {
        Self {
            entries: self.up_to(term).to_vec(),
        }
    }

    /// Present value at `valuation_time` of the dividends in `(a, b]`:
    /// `Σ d_i exp(-rate (t_i - valuation_time))`.
    pub fn pv_dividends(&self, rate: f64, a: f64, b: f64, valuation_time: f64) -> f64 {
        self.window(a, b)
            .iter()
            .map(|d| d.amount * (-rate * (d.time - valuation_time)).exp())
            .sum()
    }

    /// Time-weighted split `(D_S, D_K)` of the dividends in `(0, term]`.
    ///
    /// A dividend at `t_i` contributes `(term - t_i)/term` of its present
    /// value to the spot side and `t_i/term` to the strike side.
    pub fn dividend_split(&self, rate: f64, term: f64) -> (f64, f64) {
        self.up_to(term).iter().fold((0.0, 0.0), |(ds, dk), d| {
            let pv = d.amount * (-rate * d.time).exp();
            let w = d.time / term;
            (ds + (1.0 - w) * pv, dk + w * pv)
        })
    }

    /// Dividends still to come at time `t`, discounted to `t`:
    /// `Σ_{t <= t_i <= term} d_i exp(-rate (t_i - t))`.
    pub fn remaining_pv(&self, rate: f64, t: f64, term: f64) -> f64 {
        self.remaining(t, term)
            .iter()
            .map(|d| d.amount * (-rate * (d.time - t)).exp())
            .sum()
    }

    /// Hybrid split of [`remaining_pv`](Self::remaining_pv), weights relative
    /// to the option term: `(Σ (term - t_i)/term …, Σ t_i/term …)`.
    pub fn remaining_split(&self, rate: f64, t: f64, term: f64) -> (f64, f64) {
        self.remaining(t, term).iter().fold((0.0, 0.0), |(ds, dk), d| {
            let pv = d.amount * (-rate * (d.time - t)).exp();
            let w = d.time / term;
            (ds + (1.0 - w) * pv, dk + w * pv)
        })
    }
}

/// What the company pays when a scheduled dividend exceeds the share price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DividendPolicy {
    /// Pays out whatever is left, `min(S, d)`; the share is absorbed at zero.
    Liquidator,
    /// Pays the full dividend if it can, nothing otherwise.
    Survivor,
}

impl DividendPolicy {
    /// Amount actually paid when the pre-dividend price is `spot`.
    pub fn paid(self, spot: f64, scheduled: f64) -> f64 {
        match self {
            Self::Liquidator => spot.min(scheduled),
            Self::Survivor => {
                if spot >= scheduled {
                    scheduled
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for DividendPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Liquidator => "liquidator",
            Self::Survivor => "survivor",
        })
    }
}

impl FromStr for DividendPolicy {
    type Err = crate::PricingError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "liquidator" | "l" => Ok(Self::Liquidator),
            "survivor" | "s" => Ok(Self::Survivor),
            other => Err(config(format!("unknown dividend policy '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptionKind {
    Call,
    Put,
}

impl OptionKind {
    pub fn payoff(self, spot: f64, strike: f64) -> f64 {
        match self {
            Self::Call => (spot - strike).max(0.0),
            Self::Put => (strike - spot).max(0.0),
        }
    }
}

impl fmt::Display for OptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Call => "call",
            Self::Put => "put",
        })
    }
}

impl FromStr for OptionKind {
    type Err = crate::PricingError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "call" | "c" => Ok(Self::Call),
            "put" | "p" => Ok(Self::Put),
            other => Err(config(format!("unknown option kind '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn multi() -> DividendSchedule {
        DividendSchedule::from_pairs(&(0..11).map(|i| (0.5 + i as f64, 9.0)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn market_validation() {
        assert!(MarketParams::new(100.0, 100.0, 0.06, 0.3, 1.0).is_ok());
        assert!(MarketParams::new(100.0, 0.0, -0.01, 0.3, 1.0).is_ok());
        assert!(MarketParams::new(0.0, 100.0, 0.06, 0.3, 1.0).is_err());
        assert!(MarketParams::new(100.0, -1.0, 0.06, 0.3, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, 0.06, 0.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, 0.06, 0.3, 0.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, f64::NAN, 0.3, 1.0).is_err());
    }

    #[test]
    fn schedule_validation() {
        assert!(DividendSchedule::from_pairs(&[(0.5, 1.0), (0.5, 1.0)]).is_err());
        assert!(DividendSchedule::from_pairs(&[(1.0, 1.0), (0.5, 1.0)]).is_err());
        assert!(DividendSchedule::from_pairs(&[(0.0, 1.0)]).is_err());
        assert!(DividendSchedule::from_pairs(&[(0.5, -1.0)]).is_err());
        assert!(DividendSchedule::from_pairs(&[(0.5, 0.0)]).is_ok());
    }

    #[test]
    fn window_is_half_open() {
        let s = multi();
        let w = s.window(0.5, 2.5);
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].time, 1.5);
        assert_eq!(w[1].time, 2.5);
        assert!(s.window(20.0, 30.0).is_empty());
        assert_eq!(s.remaining(0.5, 2.5).len(), 3);
        assert_eq!(s.before(2.5).len(), 2);
        assert_eq!(s.truncated(11.0).len(), 11);
        assert_eq!(s.truncated(10.4).len(), 10);
    }

    #[test]
    fn pv_single_dividend() {
        let s = DividendSchedule::from_pairs(&[(364.0 / 365.0, 50.0)]).unwrap();
        let want = 50.0 * (-0.06_f64 * 364.0 / 365.0).exp();
        assert!((s.pv_dividends(0.06, 0.0, 1.0, 0.0) - want).abs() < 1e-13);
        assert!((want - 47.096).abs() < 1e-3);
        assert_eq!(DividendSchedule::empty().pv_dividends(0.06, 0.0, 1.0, 0.0), 0.0);
    }

    #[test]
    fn pv_multi_family_direct_sum() {
        let s = multi();
        let mut want = 0.0;
        for i in 0..11 {
            want += 9.0 * (-0.06 * (0.5 + i as f64)).exp();
        }
        assert!((s.pv_dividends(0.06, 0.0, 11.0, 0.0) - want).abs() < 1e-12);
    }

    #[test]
    fn split_edge_cases() {
        let r = 0.06;
        let at_expiry = DividendSchedule::from_pairs(&[(2.0, 10.0)]).unwrap();
        let (ds, dk) = at_expiry.dividend_split(r, 2.0);
        assert_eq!(ds, 0.0);
        assert!((dk - 10.0 * (-r * 2.0_f64).exp()).abs() < 1e-14);

        let mid = DividendSchedule::from_pairs(&[(1.0, 10.0)]).unwrap();
        let (ds, dk) = mid.dividend_split(r, 2.0);
        assert!((ds - dk).abs() < 1e-14);
        assert!((ds - 5.0 * (-r).exp()).abs() < 1e-14);

        let s = multi();
        let (ds, dk) = s.dividend_split(r, 11.0);
        let d = s.pv_dividends(r, 0.0, 11.0, 0.0);
        assert!((ds + dk - d).abs() < 1e-12 * d);
    }

    #[test]
    fn remaining_sums() {
        let s = DividendSchedule::from_pairs(&[(6.5, 70.0)]).unwrap();
        let r = 0.06;
        assert!((s.remaining_pv(r, 6.5, 11.0) - 70.0).abs() < 1e-12);
        assert_eq!(s.remaining_pv(r, 6.6, 11.0), 0.0);
        let want = 70.0 * (-r * 6.5_f64).exp();
        assert!((s.remaining_pv(r, 0.0, 11.0) - want).abs() < 1e-12);
        let (ds, dk) = s.remaining_split(r, 0.0, 11.0);
        assert!((ds - want * 4.5 / 11.0).abs() < 1e-12);
        assert!((dk - want * 6.5 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn policies() {
        use DividendPolicy::*;
        assert_eq!(Liquidator.paid(5.0, 9.0), 5.0);
        assert_eq!(Liquidator.paid(50.0, 9.0), 9.0);
        assert_eq!(Survivor.paid(5.0, 9.0), 0.0);
        assert_eq!(Survivor.paid(9.0, 9.0), 9.0);
        assert_eq!("Survivor".parse::<DividendPolicy>().unwrap(), Survivor);
        assert!("other".parse::<DividendPolicy>().is_err());
        assert_eq!("PUT".parse::<OptionKind>().unwrap(), OptionKind::Put);
    }

    fn schedule_strategy() -> impl Strategy<Value = DividendSchedule> {
        prop::collection::vec((0.01f64..1.0, 0.0f64..20.0), 0..8).prop_map(|gaps| {
            let mut t = 0.0;
            let entries = gaps
                .into_iter()
                .map(|(g, d)| {
                    t += g;
                    Dividend::new(t, d)
                })
                .collect();
            DividendSchedule::new(entries).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pv_linear_in_amounts(s in schedule_strategy(), k in 0.0f64..5.0, r in -0.05f64..0.2) {
            let scaled = DividendSchedule::new(
                s.entries().iter().map(|d| Dividend::new(d.time, k * d.amount)).collect(),
            ).unwrap();
            let a = s.pv_dividends(r, 0.0, 10.0, 0.0);
            let b = scaled.pv_dividends(r, 0.0, 10.0, 0.0);
            prop_assert!((b - k * a).abs() <= 1e-12 * (1.0 + b.abs()));
        }

        #[test]
        fn pv_decreasing_in_rate(s in schedule_strategy(), r in -0.05f64..0.2, dr in 0.0f64..0.1) {
            let lo = s.pv_dividends(r + dr, 0.0, 10.0, 0.0);
            let hi = s.pv_dividends(r, 0.0, 10.0, 0.0);
            prop_assert!(lo <= hi + 1e-12);
        }

        #[test]
        fn split_partitions_pv(s in schedule_strategy(), r in -0.05f64..0.2, term in 0.1f64..10.0) {
            let (ds, dk) = s.dividend_split(r, term);
            let d = s.pv_dividends(r, 0.0, term, 0.0);
            prop_assert!(ds >= 0.0 && dk >= 0.0);
            prop_assert!(ds <= d + 1e-12 && dk <= d + 1e-12);
            prop_assert!((ds + dk - d).abs() <= 1e-12 * d.max(1.0));
        }
    }
}
