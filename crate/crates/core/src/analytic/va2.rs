//! Closed-form implied volatility of the generalised hybrid model.
//!
//! Each dividend is split into a spot portion `α_i d_i` (removed from the
//! spot while still to be paid) and a strike portion `(1 - α_i) d_i` (added
//! to the strike once paid). The adjusted process has local volatility
//! `σ (1 + (D̂_S(t) - D̂_K(t)) / Ŝ_t)`; its squared value is averaged along a
//! Brownian bridge running from the adjusted log-spot to the adjusted
//! log-forward-strike, which integrates in closed form against Gaussian
//! kernels. `α_i = 1` recovers the spot model, `α_i = 0` the strike model and
//! `α_i = (T - t_i)/T` the hybrid model.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::market::{Dividend, DividendSchedule, MarketParams};
use crate::normal::norm_cdf;

/// Bridge parameters for one (market, schedule, weights) triple.
#[derive(Debug, Clone, PartialEq)]
pub struct Va2Context {
    /// Dividends in `(0, T]` with their spot weights.
    pub dividends: Vec<Dividend>,
    pub alphas: Vec<f64>,
    /// `ln(S0 - D̂_S(0))`.
    pub s: f64,
    /// `ln((K + D̂_K(T)) e^{-rT})`.
    pub k: f64,
    pub a: f64,
    pub b: f64,
    /// `σ² T`.
    pub bridge_length: f64,
    vol: f64,
    rate: f64,
    term: f64,
}

impl Va2Context {
    pub fn new(market: &MarketParams, schedule: &DividendSchedule, alphas: &[f64]) -> Result<Self> {
        let term = market.term();
        let rate = market.rate();
        let vol = market.vol();
        let dividends = schedule.up_to(term).to_vec();
        if alphas.len() != dividends.len() {
            return Err(domain(format!(
                "{} weights supplied for {} dividends",
                alphas.len(),
                dividends.len()
            )));
        }
        if let Some(bad) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(domain(format!("dividend weight {bad} outside [0, 1]")));
        }
        let (spot_pv, strike_pv) = dividends.iter().zip(alphas).fold((0.0, 0.0), |(sp, kp), (d, a)| {
            let pv = d.amount * (-rate * d.time).exp();
            (sp + a * pv, kp + (1.0 - a) * pv)
        });
        let spot_level = market.spot() - spot_pv;
        if spot_level <= 0.0 {
            return Err(domain(format!(
                "spot portion of dividends {spot_pv} exceeds spot {}",
                market.spot()
            )));
        }
        let strike_level = market.strike() * (-rate * term).exp() + strike_pv;
        if strike_level <= 0.0 {
            return Err(domain("adjusted strike must be positive"));
        }
        let s = spot_level.ln();
        let k = strike_level.ln();
        let sd = vol * term.sqrt();
        let m = (s - k) / sd;
        Ok(Self {
            dividends,
            alphas: alphas.to_vec(),
            s,
            k,
            a: m + 0.5 * sd,
            b: m + sd,
            bridge_length: vol * vol * term,
            vol,
            rate,
            term,
        })
    }

    /// `σ(K, T)²`.
    pub fn implied_variance(&self) -> f64 {
        let (vol, rate, term) = (self.vol, self.rate, self.term);
        let root_t = term.sqrt();
        let (a, b) = (self.a, self.b);
        let pv: Vec<f64> = self
            .dividends
            .iter()
            .map(|d| d.amount * (-rate * d.time).exp())
            .collect();
        let times: Vec<f64> = self.dividends.iter().map(|d| d.time).collect();
        let end_a = norm_cdf(a - vol * root_t);
        let end_b = norm_cdf(b - 2.0 * vol * root_t);
        let at_a = |t: f64| norm_cdf(a - vol * t / root_t);
        let at_b = |t: f64| norm_cdf(b - 2.0 * vol * t / root_t);

        let mut single = 0.0;
        for ((&p, &t), &al) in pv.iter().zip(&times).zip(&self.alphas) {
            let cut = at_a(t);
            single += al * p * (norm_cdf(a) - cut) - (1.0 - al) * p * (cut - end_a);
        }

        let phi_b = norm_cdf(b);
        let mut double = 0.0;
        for i in 0..pv.len() {
            for j in 0..pv.len() {
                let pij = pv[i] * pv[j];
                let (ai, aj) = (self.alphas[i], self.alphas[j]);
                double += ai * aj * pij * (phi_b - at_b(times[i].min(times[j])));
                double += (1.0 - ai) * (1.0 - aj) * pij * (at_b(times[i].max(times[j])) - end_b);
                if i > j {
                    double -= 2.0 * ai * (1.0 - aj) * pij * (at_b(times[j]) - at_b(times[i]));
                }
            }
        }

        let pre_single = 2.0 * vol * (2.0 * PI / term).sqrt() * (0.5 * a * a - self.s).exp();
        let pre_double = vol * (PI / (2.0 * term)).sqrt() * (0.5 * b * b - 2.0 * self.s).exp();
        vol * vol + pre_single * single + pre_double * double
    }

    pub fn implied_vol(&self) -> Result<f64> {
        let v = self.implied_variance();
        if !(v > 0.0 && v.is_finite()) {
            return Err(domain(format!("bridge-averaged variance is not positive ({v})")));
        }
        Ok(v.sqrt())
    }
}

/// Hybrid weights `α_i = (T - t_i)/T` for the dividends in `(0, T]`.
pub fn hybrid_alphas(schedule: &DividendSchedule, term: f64) -> Vec<f64> {
    schedule.up_to(term).iter().map(|d| (term - d.time) / term).collect()
}

/// Brownian-bridge implied volatility for the given dividend weights.
pub fn implied_vol_va2(
    market: &MarketParams,
    schedule: &DividendSchedule,
    alphas: &[f64],
) -> Result<f64> {
    if schedule.up_to(market.term()).is_empty() {
        return Ok(market.vol());
    }
    Va2Context::new(market, schedule, alphas)?.implied_vol()
}
