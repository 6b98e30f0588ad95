use std::str::FromStr;

use chrono::NaiveDate;

use super::calendar::{months_out, parse_date, year_fraction};
use super::HarnessError;
use crate::analytic::PricingMethod;
use crate::market::{Dividend, DividendPolicy, DividendSchedule, MarketParams, OptionKind};
use crate::mc::McConfig;
use crate::pde::{BoundaryVariant, GridSpec};

/// One experiment: a family of options differing only in maturity.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    /// Spot, strike, rate and volatility; the term is replaced per maturity.
    pub market: MarketParams,
    pub schedule: DividendSchedule,
    pub policy: DividendPolicy,
    pub kind: OptionKind,
    pub maturities: Vec<f64>,
    pub methods: Vec<PricingMethod>,
    pub grid: GridSpec,
    pub boundary: BoundaryVariant,
    pub mc: Option<McConfig>,
}

pub const BUILTIN_NAMES: [&str; 4] = ["table1", "table2", "table3", "fig1"];

/// Valuation date of the builtin families; maturities are its anniversaries.
pub fn builtin_valuation_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2001, 4, 1).expect("valid date")
}

impl Scenario {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.maturities.is_empty() {
            return Err(HarnessError::Config("no maturities given".into()));
        }
        if self.maturities.windows(2).any(|w| w[1] <= w[0]) {
            return Err(HarnessError::Config("maturities must be strictly increasing".into()));
        }
        if self.maturities.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(HarnessError::Config("maturities must be positive".into()));
        }
        self.grid.validate()?;
        if let Some(mc) = &self.mc {
            mc.validate()?;
        }
        Ok(())
    }

    /// Market for the option expiring at `term`.
    pub fn market_at(&self, term: f64) -> Result<MarketParams, HarnessError> {
        Ok(self.market.with_term(term)?)
    }

    pub fn builtin(name: &str) -> Result<Self, HarnessError> {
        let start = builtin_valuation_date();
        let maturities: Vec<f64> = (1..=11).map(|y| months_out(start, 12 * y)).collect();
        let market = MarketParams::new(100.0, 100.0, 0.06, 0.3, 1.0)?;
        let multi = DividendSchedule::new(
            (0..11).map(|i| Dividend::new(months_out(start, 6 + 12 * i), 9.0)).collect(),
        )?;
        let base = |name: &str, schedule, kind, methods: &[PricingMethod]| Scenario {
            name: name.to_string(),
            market,
            schedule,
            policy: DividendPolicy::Liquidator,
            kind,
            maturities: maturities.clone(),
            methods: methods.to_vec(),
            grid: GridSpec::default(),
            boundary: BoundaryVariant::SpotBc,
            mc: None,
        };
        use PricingMethod::*;
        let calls = [SpotVa, StrikeVa, Hybrid, HybridVa, HybridVa2];
        match name {
            "table1" => Ok(base(
                name,
                // One day before the first anniversary.
                DividendSchedule::new(vec![Dividend::new(maturities[0] - 1.0 / 365.0, 50.0)])?,
                OptionKind::Call,
                &calls,
            )),
            "table2" => Ok(base(name, multi, OptionKind::Call, &calls)),
            "table3" => Ok(base(
                name,
                multi,
                OptionKind::Put,
                &[Hybrid, HybridPa, HybridVa, HybridVapa, HybridVa2, HybridVapa2],
            )),
            "fig1" => Ok(Scenario {
                mc: Some(McConfig::default()),
                ..base(
                    name,
                    DividendSchedule::new(vec![Dividend::new(months_out(start, 78), 70.0)])?,
                    OptionKind::Put,
                    &[],
                )
            }),
            other => Err(HarnessError::Config(format!(
                "unknown builtin scenario '{other}' (expected one of {})",
                BUILTIN_NAMES.join(", ")
            ))),
        }
    }

    /// Parses the flat `key = value` format. `#` starts a comment. Times are
    /// year fractions, or `YYYY-MM-DD` dates when `valuation_date` is set.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut fields: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| HarnessError::Parse {
                line: i + 1,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            fields.push((i + 1, key.trim().to_ascii_lowercase(), value.trim().to_string()));
        }

        let valuation = match fields.iter().find(|f| f.1 == "valuation_date") {
            Some((line, _, v)) => Some(parse_date(v).map_err(|e| HarnessError::at(*line, e))?),
            None => None,
        };
        let time = |line: usize, v: &str| -> Result<f64, HarnessError> {
            if let Ok(x) = v.trim().parse::<f64>() {
                return Ok(x);
            }
            let start = valuation.ok_or_else(|| HarnessError::Parse {
                line,
                message: format!("'{v}' is neither a year fraction nor a date with valuation_date set"),
            })?;
            Ok(year_fraction(start, parse_date(v).map_err(|e| HarnessError::at(line, e))?))
        };

        let mut name = "custom".to_string();
        let (mut spot, mut strike, mut rate, mut vol) = (None, None, None, None);
        let mut kind = OptionKind::Call;
        let mut policy = DividendPolicy::Liquidator;
        let mut boundary = BoundaryVariant::SpotBc;
        let mut maturities = Vec::new();
        let mut methods = Vec::new();
        let mut dividends = Vec::new();
        let mut grid = GridSpec::default();
        let mut mc: Option<McConfig> = None;
        for (line, key, v) in &fields {
            let line = *line;
            match key.as_str() {
                "name" => name = v.clone(),
                "valuation_date" => {}
                "spot" => spot = Some(number(line, v)?),
                "strike" => strike = Some(number(line, v)?),
                "rate" => rate = Some(number(line, v)?),
                "vol" => vol = Some(number(line, v)?),
                "kind" => kind = parse_enum(line, v)?,
                "policy" => policy = parse_enum(line, v)?,
                "boundary" => boundary = parse_enum(line, v)?,
                "maturities" => {
                    maturities = list(v).map(|m| time(line, m)).collect::<Result<_, _>>()?;
                }
                "methods" => {
                    methods = list(v).map(|m| parse_enum(line, m)).collect::<Result<_, _>>()?;
                }
                "dividend" => {
                    let parts: Vec<&str> = v.split_whitespace().collect();
                    let [t, d] = parts[..] else {
                        return Err(HarnessError::Parse {
                            line,
                            message: format!("expected 'dividend = <time> <amount>', got '{v}'"),
                        });
                    };
                    dividends.push(Dividend::new(time(line, t)?, number(line, d)?));
                }
                "grid.smin" => grid.s_min = number(line, v)?,
                "grid.smax" => grid.s_max = number(line, v)?,
                "grid.ds" => grid.ds = number(line, v)?,
                "grid.dt" => grid.dt = number(line, v)?,
                "grid.startup" => grid.startup_steps = integer(line, v)? as usize,
                "mc.paths" => mc.get_or_insert_with(McConfig::default).paths = integer(line, v)? as usize,
                "mc.seed" => mc.get_or_insert_with(McConfig::default).seed = integer(line, v)?,
                "mc.antithetic" => {
                    mc.get_or_insert_with(McConfig::default).antithetic = match v.to_ascii_lowercase().as_str() {
                        "true" | "yes" | "1" | "on" => true,
                        "false" | "no" | "0" | "off" => false,
                        _ => {
                            return Err(HarnessError::Parse {
                                line,
                                message: format!("expected a boolean, got '{v}'"),
                            })
                        }
                    }
                }
                other => {
                    return Err(HarnessError::Parse {
                        line,
                        message: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        let need = |x: Option<f64>, key: &str| x.ok_or_else(|| HarnessError::Config(format!("missing key '{key}'")));
        let first = maturities.first().copied().unwrap_or(1.0);
        let market = MarketParams::new(
            need(spot, "spot")?,
            need(strike, "strike")?,
            need(rate, "rate")?,
            need(vol, "vol")?,
            if first > 0.0 { first } else { 1.0 },
        )?;
        let scenario = Scenario {
            name,
            market,
            schedule: DividendSchedule::new(dividends)?,
            policy,
            kind,
            maturities,
            methods,
            grid,
            boundary,
            mc,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn number(line: usize, v: &str) -> Result<f64, HarnessError> {
    v.trim().parse::<f64>().map_err(|_| HarnessError::Parse {
        line,
        message: format!("expected a number, got '{v}'"),
    })
}

fn integer(line: usize, v: &str) -> Result<u64, HarnessError> {
    v.trim().replace('_', "").parse::<u64>().map_err(|_| HarnessError::Parse {
        line,
        message: format!("expected a non-negative integer, got '{v}'"),
    })
}

fn parse_enum<T: FromStr<Err = crate::PricingError>>(line: usize, v: &str) -> Result<T, HarnessError> {
    v.parse::<T>().map_err(|e| HarnessError::Parse {
        line,
        message: e.to_string(),
    })
}
