//! Time-averaged volatility adjustments.
//!
//! Moving dividends out of the spot (or into the strike) changes the level of
//! the process the Black-Scholes formula sees, so the constant local
//! volatility of the dividend-paying stock maps to a piecewise constant local
//! volatility of the adjusted process. Averaging the variance over the option
//! life gives a single adjusted volatility.

use crate::error::{domain, Result};
use crate::market::{Dividend, DividendSchedule, MarketParams};

/// Adjusted volatility together with its relative perturbation.
///
/// For spot-style adjustments `adjusted_vol = σ (1 + epsilon)`; for
/// strike-style and hybrid adjustments `adjusted_vol = σ (1 - epsilon)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolAdjustment {
    pub adjusted_vol: f64,
    pub epsilon: f64,
}

impl VolAdjustment {
    fn unadjusted(vol: f64) -> Self {
        Self {
            adjusted_vol: vol,
            epsilon: 0.0,
        }
    }
}

/// Variance multiplier of the spot-adjusted process on `(0, horizon]`.
///
/// On `(t_{j-1}, t_j]` the local volatility is scaled by `S / (S - D_j)`
/// where `D_j` is the present value of the dividends from `j` onwards;
/// after the last dividend the scale is one.
pub(crate) fn spot_variance_factor(
    spot: f64,
    rate: f64,
    divs: &[Dividend],
    horizon: f64,
) -> Result<f64> {
    let mut remaining: f64 = divs.iter().map(|d| d.amount * (-rate * d.time).exp()).sum();
    let mut acc = 0.0;
    let mut prev = 0.0;
    for d in divs {
        let level = spot - remaining;
        if level <= 0.0 {
            return Err(domain(format!(
                "remaining dividends {remaining} exceed spot {spot} before t = {}",
                d.time
            )));
        }
        let ratio = spot / level;
        acc += ratio * ratio * (d.time - prev);
        prev = d.time;
        remaining -= d.amount * (-rate * d.time).exp();
    }
    acc += horizon - prev;
    Ok(acc / horizon)
}

/// Variance multiplier of the strike-adjusted process on `(0, horizon]`.
///
/// Before the first dividend the scale is one; on `(t_j, t_{j+1}]` (and on
/// the final `(t_N, horizon]`) it is `S / (S + D_j)` with `D_j` the present
/// value of the dividends already paid.
pub(crate) fn strike_variance_factor(
    spot: f64,
    rate: f64,
    divs: &[Dividend],
    horizon: f64,
) -> f64 {
    let Some(first) = divs.first() else {
        return 1.0;
    };
    let mut acc = first.time;
    let mut paid = 0.0;
    for (j, d) in divs.iter().enumerate() {
        paid += d.amount * (-rate * d.time).exp();
        let end = divs.get(j + 1).map_or(horizon, |n| n.time);
        let ratio = spot / (spot + paid);
        acc += ratio * ratio * (end - d.time);
    }
    acc / horizon
}

fn weighted(divs: &[Dividend], weights: Option<&[f64]>) -> Result<Vec<Dividend>> {
    match weights {
        None => Ok(divs.to_vec()),
        Some(w) if w.len() == divs.len() => Ok(divs
            .iter()
            .zip(w)
            .map(|(d, &w)| Dividend::new(d.time, w * d.amount))
            .collect()),
        Some(w) => Err(domain(format!(
            "{} dividend weights supplied for {} dividends",
            w.len(),
            divs.len()
        ))),
    }
}

/// Spot-style averaged volatility over the option life.
///
/// `spot_portions`, when given, holds one weight per dividend in `(0, T]`;
/// each amount is replaced by its weighted portion before averaging.
pub fn vol_adjust_spot(
    market: &MarketParams,
    schedule: &DividendSchedule,
    spot_portions: Option<&[f64]>,
) -> Result<VolAdjustment> {
    let divs = weighted(schedule.up_to(market.term()), spot_portions)?;
    if divs.is_empty() {
        return Ok(VolAdjustment::unadjusted(market.vol()));
    }
    let factor = spot_variance_factor(market.spot(), market.rate(), &divs, market.term())?;
    let scale = factor.sqrt();
    Ok(VolAdjustment {
        adjusted_vol: market.vol() * scale,
        epsilon: scale - 1.0,
    })
}

/// Strike-style averaged volatility over the option life.
pub fn vol_adjust_strike(
    market: &MarketParams,
    schedule: &DividendSchedule,
    strike_portions: Option<&[f64]>,
) -> Result<VolAdjustment> {
    let divs = weighted(schedule.up_to(market.term()), strike_portions)?;
    if divs.is_empty() {
        return Ok(VolAdjustment::unadjusted(market.vol()));
    }
    let scale = strike_variance_factor(market.spot(), market.rate(), &divs, market.term()).sqrt();
    Ok(VolAdjustment {
        adjusted_vol: market.vol() * scale,
        epsilon: 1.0 - scale,
    })
}

/// Hybrid adjustment: spot and strike perturbations computed independently
/// on the time-weighted dividend portions and multiplied,
/// `σ_H = σ (1 + ε_S) (1 - ε_K)`.
pub fn vol_adjust_hybrid(
    market: &MarketParams,
    schedule: &DividendSchedule,
) -> Result<VolAdjustment> {
    let term = market.term();
    let divs = schedule.up_to(term);
    if divs.is_empty() {
        return Ok(VolAdjustment::unadjusted(market.vol()));
    }
    let strike_w: Vec<f64> = divs.iter().map(|d| d.time / term).collect();
    let spot_w: Vec<f64> = strike_w.iter().map(|w| 1.0 - w).collect();
    let up = vol_adjust_spot(market, schedule, Some(&spot_w))?;
    let down = vol_adjust_strike(market, schedule, Some(&strike_w))?;
    let scale = (1.0 + up.epsilon) * (1.0 - down.epsilon);
    Ok(VolAdjustment {
        adjusted_vol: market.vol() * scale,
        epsilon: 1.0 - scale,
    })
}
