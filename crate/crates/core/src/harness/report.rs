use std::fmt::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::{HarnessError, Scenario};
use crate::analytic::PricingMethod;
use crate::mc::{mc_price, McEstimate};
use crate::pde::cn_price_european;

/// One maturity of a comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub maturity: f64,
    /// Crank-Nicolson benchmark price.
    pub benchmark: f64,
    pub prices: Vec<(PricingMethod, f64)>,
    pub mc: Option<McEstimate>,
}

impl ComparisonRow {
    /// `100 (price - CN) / CN`; negative when `price` is below the benchmark.
    pub fn rel_diff(&self, price: f64) -> f64 {
        100.0 * (price - self.benchmark) / self.benchmark
    }

    pub fn price(&self, method: PricingMethod) -> Option<f64> {
        self.prices.iter().find(|(m, _)| *m == method).map(|&(_, p)| p)
    }
}

/// Benchmark and every requested method at each maturity, in maturity order.
pub fn run_scenario(scenario: &Scenario) -> Result<Vec<ComparisonRow>, HarnessError> {
    scenario.validate()?;
    scenario
        .maturities
        .par_iter()
        .map(|&term| {
            let market = scenario.market_at(term)?;
            let schedule = &scenario.schedule;
            let benchmark = cn_price_european(
                scenario.kind,
                &market,
                schedule,
                scenario.policy,
                scenario.boundary,
                &scenario.grid,
            )
            .map_err(HarnessError::cell(term, "CN"))?;
            let prices = scenario
                .methods
                .iter()
                .map(|&m| {
                    m.price(scenario.kind, &market, schedule, scenario.policy)
                        .map(|p| (m, p))
                        .map_err(HarnessError::cell(term, m.id()))
                })
                .collect::<Result<_, _>>()?;
            let mc = scenario
                .mc
                .as_ref()
                .map(|cfg| mc_price(scenario.kind, &market, schedule, scenario.policy, cfg))
                .transpose()
                .map_err(HarnessError::cell(term, "MC"))?;
            Ok(ComparisonRow {
                maturity: term,
                benchmark,
                prices,
                mc,
            })
        })
        .collect()
}

/// Number formatting of [`emit_csv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrecisionMode {
    /// Nine significant digits.
    #[default]
    Full,
    /// Two decimals for prices and one for relative differences.
    Table,
}

impl FromStr for PrecisionMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(Self::Full),
            "table" => Ok(Self::Table),
            other => Err(HarnessError::Config(format!("unknown precision '{other}'"))),
        }
    }
}

/// CSV with header `T,CN,<method>,<method>_reldiff,...` (plus
/// `MC,MC_stderr,MC_reldiff` when simulated) and one line per row.
pub fn emit_csv(rows: &[ComparisonRow], mode: PrecisionMode) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    out.push_str("T,CN");
    for (m, _) in &first.prices {
        let _ = write!(out, ",{m},{m}_reldiff");
    }
    if first.mc.is_some() {
        out.push_str(",MC,MC_stderr,MC_reldiff");
    }
    out.push('\n');
    let price = |x: f64| match mode {
        PrecisionMode::Full => significant(x, 9),
        PrecisionMode::Table => format!("{x:.2}"),
    };
    let rel = |x: f64| match mode {
        PrecisionMode::Full => significant(x, 9),
        PrecisionMode::Table => format!("{x:.1}"),
    };
    for row in rows {
        let t = match mode {
            PrecisionMode::Full => significant(row.maturity, 9),
            PrecisionMode::Table => trim_zeros(format!("{:.2}", row.maturity)),
        };
        let _ = write!(out, "{t},{}", price(row.benchmark));
        for &(_, p) in &row.prices {
            let _ = write!(out, ",{},{}", price(p), rel(row.rel_diff(p)));
        }
        if let Some(mc) = row.mc {
            let _ = write!(
                out,
                ",{},{},{}",
                price(mc.price),
                significant(mc.std_error, 3),
                rel(row.rel_diff(mc.price))
            );
        }
        out.push('\n');
    }
    out
}

fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    let text = if text.starts_with("-0") && text.trim_start_matches(['-', '0', '.']).is_empty() {
        text[1..].to_string()
    } else {
        text
    };
    trim_zeros(text)
}

fn trim_zeros(text: String) -> String {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}
