//! Spot, strike and hybrid dividend adjustments of the Black-Scholes inputs,
//! with and without volatility adjustment.

use super::bs::{bs_price, BsInputs};
use super::va2::{hybrid_alphas, implied_vol_va2};
use super::vol::{vol_adjust_hybrid, vol_adjust_spot, vol_adjust_strike};
use crate::error::{domain, Result};
use crate::market::{DividendSchedule, MarketParams, OptionKind};

fn inputs(market: &MarketParams, eff_spot: f64, eff_strike: f64, vol: f64) -> Result<BsInputs> {
    if eff_spot <= 0.0 {
        return Err(domain(format!(
            "dividends exceed spot: adjusted spot {eff_spot} is not positive"
        )));
    }
    Ok(BsInputs {
        eff_spot,
        eff_strike,
        rate: market.rate(),
        vol,
        term: market.term(),
    })
}

/// `S̃0 = S0 - D`, strike unchanged.
pub fn spot_inputs(market: &MarketParams, schedule: &DividendSchedule, vol: f64) -> Result<BsInputs> {
    let d = schedule.pv_dividends(market.rate(), 0.0, market.term(), 0.0);
    inputs(market, market.spot() - d, market.strike(), vol)
}

/// `K̃ = K + Σ d_i e^{r (T - t_i)}`, spot unchanged.
pub fn strike_inputs(market: &MarketParams, schedule: &DividendSchedule, vol: f64) -> Result<BsInputs> {
    let (r, term) = (market.rate(), market.term());
    let fwd: f64 = schedule
        .up_to(term)
        .iter()
        .map(|d| d.amount * (r * (term - d.time)).exp())
        .sum();
    inputs(market, market.spot(), market.strike() + fwd, vol)
}

/// `S̄0 = S0 - D_S`, `K̄ = K + D_K e^{rT}`.
pub fn hybrid_inputs(market: &MarketParams, schedule: &DividendSchedule, vol: f64) -> Result<BsInputs> {
    let (ds, dk) = schedule.dividend_split(market.rate(), market.term());
    inputs(
        market,
        market.spot() - ds,
        market.strike() + dk * (market.rate() * market.term()).exp(),
        vol,
    )
}

pub fn price_spot(kind: OptionKind, market: &MarketParams, schedule: &DividendSchedule) -> Result<f64> {
    bs_price(kind, &spot_inputs(market, schedule, market.vol())?)
}

pub fn price_strike(kind: OptionKind, market: &MarketParams, schedule: &DividendSchedule) -> Result<f64> {
    bs_price(kind, &strike_inputs(market, schedule, market.vol())?)
}

pub fn price_hybrid(kind: OptionKind, market: &MarketParams, schedule: &DividendSchedule) -> Result<f64> {
    bs_price(kind, &hybrid_inputs(market, schedule, market.vol())?)
}

pub fn price_spot_va(kind: OptionKind, market: &MarketParams, schedule: &DividendSchedule) -> Result<f64> {
    let vol = vol_adjust_spot(market, schedule, None)?.adjusted_vol;
    bs_price(kind, &spot_inputs(market, schedule, vol)?)
}

pub fn price_strike_va(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
) -> Result<f64> {
    let vol = vol_adjust_strike(market, schedule, None)?.adjusted_vol;
    bs_price(kind, &strike_inputs(market, schedule, vol)?)
}

pub fn price_hybrid_va(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
) -> Result<f64> {
    let vol = vol_adjust_hybrid(market, schedule)?.adjusted_vol;
    bs_price(kind, &hybrid_inputs(market, schedule, vol)?)
}

pub fn price_hybrid_va2(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
) -> Result<f64> {
    let alphas = hybrid_alphas(schedule, market.term());
    let vol = implied_vol_va2(market, schedule, &alphas)?;
    bs_price(kind, &hybrid_inputs(market, schedule, vol)?)
}
