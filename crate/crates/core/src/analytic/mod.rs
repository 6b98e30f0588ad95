//! Closed-form European prices under discrete cash dividends.

mod adjust;
mod bs;
mod parity;
mod va2;
mod vol;

use std::fmt;
use std::str::FromStr;

pub use adjust::{
    hybrid_inputs, price_hybrid, price_hybrid_va, price_hybrid_va2, price_spot, price_spot_va,
    price_strike, price_strike_va, spot_inputs, strike_inputs,
};
pub use bs::{bs_price, digital_put, BsInputs};
pub use parity::{
    parity_violation, parity_violation_multi, parity_violation_single, price_put_pa,
    ParityAdjustment, SurvivorRecursion,
};
pub use va2::{hybrid_alphas, implied_vol_va2, Va2Context};
pub use vol::{vol_adjust_hybrid, vol_adjust_spot, vol_adjust_strike, VolAdjustment};

use crate::error::{config, Result};
use crate::market::{DividendPolicy, DividendSchedule, MarketParams, OptionKind};

/// The catalogue of analytic approximations.
///
/// The `*Pa` variants subtract the parity violation from puts; for calls
/// they return the unadjusted base price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PricingMethod {
    Spot,
    Strike,
    Hybrid,
    SpotVa,
    StrikeVa,
    HybridVa,
    HybridVa2,
    HybridPa,
    HybridVapa,
    HybridVapa2,
}

impl PricingMethod {
    pub const ALL: [PricingMethod; 10] = [
        Self::Spot,
        Self::Strike,
        Self::Hybrid,
        Self::SpotVa,
        Self::StrikeVa,
        Self::HybridVa,
        Self::HybridVa2,
        Self::HybridPa,
        Self::HybridVapa,
        Self::HybridVapa2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::Spot => "spot",
            Self::Strike => "strike",
            Self::Hybrid => "hybrid",
            Self::SpotVa => "spot-va",
            Self::StrikeVa => "strike-va",
            Self::HybridVa => "hybrid-va",
            Self::HybridVa2 => "hybrid-va2",
            Self::HybridPa => "hybrid-pa",
            Self::HybridVapa => "hybrid-vapa",
            Self::HybridVapa2 => "hybrid-vapa2",
        }
    }

    /// The method whose inputs a parity-adjusted variant reuses.
    pub fn base(self) -> Self {
        match self {
            Self::HybridPa => Self::Hybrid,
            Self::HybridVapa => Self::HybridVa,
            Self::HybridVapa2 => Self::HybridVa2,
            other => other,
        }
    }

    pub fn is_parity_adjusted(self) -> bool {
        self.base() != self
    }

    /// Adjusted Black-Scholes inputs shared by the call and put legs.
    pub fn effective_inputs(
        self,
        market: &MarketParams,
        schedule: &DividendSchedule,
    ) -> Result<BsInputs> {
        let vol = market.vol();
        match self.base() {
            Self::Spot => spot_inputs(market, schedule, vol),
            Self::Strike => strike_inputs(market, schedule, vol),
            Self::Hybrid => hybrid_inputs(market, schedule, vol),
            Self::SpotVa => {
                spot_inputs(market, schedule, vol_adjust_spot(market, schedule, None)?.adjusted_vol)
            }
            Self::StrikeVa => strike_inputs(
                market,
                schedule,
                vol_adjust_strike(market, schedule, None)?.adjusted_vol,
            ),
            Self::HybridVa => {
                hybrid_inputs(market, schedule, vol_adjust_hybrid(market, schedule)?.adjusted_vol)
            }
            Self::HybridVa2 => {
                let alphas = hybrid_alphas(schedule, market.term());
                hybrid_inputs(market, schedule, implied_vol_va2(market, schedule, &alphas)?)
            }
            _ => unreachable!("base() strips parity adjustments"),
        }
    }

    /// Price with the default survivor recursion.
    pub fn price(
        self,
        kind: OptionKind,
        market: &MarketParams,
        schedule: &DividendSchedule,
        policy: DividendPolicy,
    ) -> Result<f64> {
        self.price_with(kind, market, schedule, policy, SurvivorRecursion::default())
    }

    pub fn price_with(
        self,
        kind: OptionKind,
        market: &MarketParams,
        schedule: &DividendSchedule,
        policy: DividendPolicy,
        recursion: SurvivorRecursion,
    ) -> Result<f64> {
        if self.is_parity_adjusted() && kind == OptionKind::Put {
            return price_put_pa(self.base(), market, schedule, policy, recursion);
        }
        bs_price(kind, &self.effective_inputs(market, schedule)?)
    }
}

impl fmt::Display for PricingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PricingMethod {
    type Err = crate::PricingError;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        Self::ALL
            .into_iter()
            .find(|m| m.id().replace('-', "") == key)
            .ok_or_else(|| config(format!("unknown pricing method '{s}'")))
    }
}

/// Put-call parity residual `C - P - (S0 - D - K e^{-rT})`.
///
/// Zero (to rounding) for every unadjusted method since both legs share their
/// inputs; equal to the parity violation `ΔP` for the `*Pa` variants.
pub fn parity_check(
    method: PricingMethod,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
) -> Result<f64> {
    let call = method.price(OptionKind::Call, market, schedule, policy)?;
    let put = method.price(OptionKind::Put, market, schedule, policy)?;
    let d = schedule.pv_dividends(market.rate(), 0.0, market.term(), 0.0);
    Ok(call - put - (market.spot() - d) + market.strike() * market.discount(market.term()))
}
