use rayon::prelude::*;

use super::{HarnessError, Scenario};
use crate::market::OptionKind;
use crate::pde::{cn_price_european, psor_price_american_put, BoundaryVariant, GridSpec, PsorSettings};

/// European puts under each lower boundary variant next to the American put,
/// for the single large dividend family.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Series {
    pub maturities: Vec<f64>,
    pub spot_bc: Vec<f64>,
    pub strike_bc: Vec<f64>,
    pub hybrid_bc: Vec<f64>,
    pub american: Vec<f64>,
}

impl Fig1Series {
    /// CSV with header `T,spot_bc,strike_bc,hybrid_bc,american`, nine
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,spot_bc,strike_bc,hybrid_bc,american\n");
        for i in 0..self.maturities.len() {
            out.push_str(&format!(
                "{},{:.9},{:.9},{:.9},{:.9}\n",
                self.maturities[i], self.spot_bc[i], self.strike_bc[i], self.hybrid_bc[i], self.american[i]
            ));
        }
        out
    }
}

/// Computes the four series and checks that the variants agree while no
/// dividend is outstanding and that the spot-adjusted European put never
/// exceeds the American one.
pub fn fig1_series(grid: &GridSpec) -> Result<Fig1Series, HarnessError> {
    let scenario = Scenario::builtin("fig1")?;
    let first_dividend = scenario.schedule.entries()[0].time;
    let rows: Vec<[f64; 4]> = scenario
        .maturities
        .par_iter()
        .map(|&term| {
            let market = scenario.market_at(term)?;
            let mut row = [0.0; 4];
            for (slot, variant) in row.iter_mut().zip(BoundaryVariant::ALL) {
                *slot = cn_price_european(OptionKind::Put, &market, &scenario.schedule, scenario.policy, variant, grid)
                    .map_err(HarnessError::cell(term, format!("CN {variant}")))?;
            }
            row[3] = psor_price_american_put(&market, &scenario.schedule, scenario.policy, grid, &PsorSettings::default())
                .map_err(HarnessError::cell(term, "PSOR"))?;
            Ok(row)
        })
        .collect::<Result<_, HarnessError>>()?;

    for (&term, row) in scenario.maturities.iter().zip(&rows) {
        if term < first_dividend && (row[1] - row[0]).abs().max((row[2] - row[0]).abs()) > 1e-6 {
            return Err(HarnessError::PostCondition(format!(
                "boundary variants disagree at T = {term} before the dividend: {row:?}"
            )));
        }
        if row[0] > row[3] + 1e-6 {
            return Err(HarnessError::PostCondition(format!(
                "European put {} exceeds American put {} at T = {term}",
                row[0], row[3]
            )));
        }
    }
    Ok(Fig1Series {
        maturities: scenario.maturities.clone(),
        spot_bc: rows.iter().map(|r| r[0]).collect(),
        strike_bc: rows.iter().map(|r| r[1]).collect(),
        hybrid_bc: rows.iter().map(|r| r[2]).collect(),
        american: rows.iter().map(|r| r[3]).collect(),
    })
}
