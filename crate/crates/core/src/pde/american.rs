use super::european::{check_inputs, step_plan, Operator, Step};
use super::{apply_dividend_jump, GridSpec};
use crate::error::{config, PricingError, Result};
use crate::market::{DividendPolicy, DividendSchedule, MarketParams};

/// Projected SOR controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsorSettings {
    pub omega: f64,
    /// Convergence when the largest node update drops below `tolerance · K`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PsorSettings {
    fn default() -> Self {
        Self {
            omega: 1.2,
            tolerance: 1e-8,
            max_iterations: 20_000,
        }
    }
}

/// American put on the fixed grid: Crank-Nicolson steps solved by projected
/// SOR against `V >= K - S`, with `V = K - S` at `s_min` and `V = 0` at
/// `s_max` for all times.
pub fn psor_price_american_put(
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    grid: &GridSpec,
    settings: &PsorSettings,
) -> Result<f64> {
    check_inputs(market, grid)?;
    if !(settings.omega > 0.0 && settings.omega < 2.0) || settings.max_iterations == 0 {
        return Err(config("relaxation factor must lie in (0, 2) with a positive iteration cap"));
    }
    let strike = market.strike();
    let term = market.term();
    let times = grid.time_grid(term, schedule);
    let n = grid.intervals();
    let op = Operator::new(grid, market);
    let exercise: Vec<f64> = (0..=n).map(|j| strike - grid.spot(j)).collect();
    let floor = |v: Vec<f64>| -> Vec<f64> {
        let mut v: Vec<f64> = v.into_iter().zip(&exercise).map(|(x, &g)| x.max(g)).collect();
        v[0] = exercise[0];
        v[n] = 0.0;
        v
    };
    let cross = |v: Vec<f64>, t: f64| -> Vec<f64> {
        floor(
            schedule
                .entries()
                .iter()
                .filter(|d| d.time == t && d.amount > 0.0)
                .fold(v, |v, d| apply_dividend_jump(grid, &v, d.amount, policy)),
        )
    };
    let tol = settings.tolerance * strike.max(f64::MIN_POSITIVE);

    let mut v = cross(exercise.iter().map(|&x| x.max(0.0)).collect(), term);
    for Step { t_lo, h_i, h_e, node } in step_plan(&times, grid.startup_steps) {
        let rhs = op.rhs(&v, h_e, h_i, exercise[0], 0.0);
        let (sub, diag, sup) = op.implicit_bands(h_i);
        let mut iterations = 0;
        loop {
            let mut largest = 0.0_f64;
            for k in 0..n - 1 {
                let j = k + 1;
                let gs = (rhs[k] - sub[k] * if k > 0 { v[j - 1] } else { 0.0 }
                    - sup[k] * if j + 1 < n { v[j + 1] } else { 0.0 })
                    / diag[k];
                let updated = (v[j] + settings.omega * (gs - v[j])).max(exercise[j]);
                largest = largest.max((updated - v[j]).abs());
                v[j] = updated;
            }
            iterations += 1;
            if !largest.is_finite() {
                return Err(PricingError::Numerical(format!("PSOR diverged at t = {t_lo}")));
            }
            if largest < tol {
                break;
            }
            if iterations >= settings.max_iterations {
                return Err(PricingError::Convergence { iterations, last_update: largest });
            }
        }
        if node {
            v = cross(v, t_lo);
        }
    }
    Ok(grid.interpolate(&v, market.spot()))
}
