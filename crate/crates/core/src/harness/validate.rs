use super::{fig1_series, Scenario};
use crate::analytic::{bs_price, parity_check, parity_violation, BsInputs, PricingMethod, SurvivorRecursion};
use crate::market::{DividendPolicy, DividendSchedule, MarketParams, OptionKind};
use crate::pde::{cn_price_european, BoundaryVariant, GridSpec};

/// Result of one invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn bound(name: &'static str, worst: f64, limit: f64) -> Self {
        Self {
            name,
            passed: worst.is_finite() && worst < limit,
            detail: format!("max deviation {worst:.3e} (limit {limit:.0e})"),
        }
    }

    fn failed(name: &'static str, detail: String) -> Self {
        Self { name, passed: false, detail }
    }
}

const POLICIES: [DividendPolicy; 2] = [DividendPolicy::Liquidator, DividendPolicy::Survivor];
const KINDS: [OptionKind; 2] = [OptionKind::Call, OptionKind::Put];

/// Runs the invariant suite on the builtin families with the given grid.
pub fn validate_suite(grid: &GridSpec) -> Vec<CheckOutcome> {
    vec![
        zero_dividend_collapse(),
        parity_residuals(),
        adjusted_parity_gap(),
        call_invariance(grid),
        american_dominance(grid),
        grid_refinement(grid),
    ]
}

fn zero_dividend_collapse() -> CheckOutcome {
    let empty = DividendSchedule::empty();
    let mut worst = 0.0_f64;
    for (spot, strike, rate, vol, term) in [(100.0, 100.0, 0.06, 0.3, 1.0), (80.0, 120.0, 0.02, 0.5, 7.0), (130.0, 90.0, 0.0, 0.15, 0.25)] {
        let Ok(market) = MarketParams::new(spot, strike, rate, vol, term) else {
            return CheckOutcome::failed("zero-dividend collapse", "bad market".into());
        };
        let inputs = BsInputs { eff_spot: spot, eff_strike: strike, rate, vol, term };
        for kind in KINDS {
            let Ok(want) = bs_price(kind, &inputs) else {
                return CheckOutcome::failed("zero-dividend collapse", "vanilla price failed".into());
            };
            for method in PricingMethod::ALL {
                for policy in POLICIES {
                    match method.price(kind, &market, &empty, policy) {
                        Ok(p) => worst = worst.max((p - want).abs()),
                        Err(e) => return CheckOutcome::failed("zero-dividend collapse", format!("{method}: {e}")),
                    }
                }
            }
        }
    }
    CheckOutcome::bound("zero-dividend collapse", worst, 1e-10)
}

fn families() -> Vec<Scenario> {
    ["table1", "table2", "fig1"]
        .iter()
        .filter_map(|n| Scenario::builtin(n).ok())
        .collect()
}

fn parity_residuals() -> CheckOutcome {
    let mut worst = 0.0_f64;
    for s in families() {
        for &term in &s.maturities {
            let Ok(market) = s.market_at(term) else { continue };
            for method in PricingMethod::ALL.into_iter().filter(|m| !m.is_parity_adjusted()) {
                match parity_check(method, &market, &s.schedule, s.policy) {
                    Ok(r) => worst = worst.max(r.abs()),
                    // Spot-type adjustments are undefined once dividends exceed the spot.
                    Err(crate::PricingError::Domain(_)) => {}
                    Err(e) => return CheckOutcome::failed("put-call parity", format!("{method} T={term}: {e}")),
                }
            }
        }
    }
    CheckOutcome::bound("put-call parity", worst, 1e-9)
}

fn adjusted_parity_gap() -> CheckOutcome {
    let mut worst = 0.0_f64;
    for s in families() {
        for &term in &s.maturities {
            let Ok(market) = s.market_at(term) else { continue };
            for method in [PricingMethod::HybridPa, PricingMethod::HybridVapa, PricingMethod::HybridVapa2] {
                for policy in POLICIES {
                    let gap = parity_check(method, &market, &s.schedule, policy).and_then(|r| {
                        parity_violation(method.base(), &market, &s.schedule, policy, SurvivorRecursion::default())
                            .map(|a| r - a.delta_p)
                    });
                    match gap {
                        Ok(g) => worst = worst.max(g.abs()),
                        Err(e) => return CheckOutcome::failed("parity gap of adjusted puts", format!("{method} T={term}: {e}")),
                    }
                }
            }
        }
    }
    CheckOutcome::bound("parity gap of adjusted puts", worst, 1e-9)
}

fn call_invariance(grid: &GridSpec) -> CheckOutcome {
    let Ok(s) = Scenario::builtin("table2") else {
        return CheckOutcome::failed("CN call invariance", "missing family".into());
    };
    let mut worst = 0.0_f64;
    for &term in &s.maturities {
        let Ok(market) = s.market_at(term) else { continue };
        let mut prices = Vec::new();
        for variant in BoundaryVariant::ALL {
            for policy in POLICIES {
                match cn_price_european(OptionKind::Call, &market, &s.schedule, policy, variant, grid) {
                    Ok(p) => prices.push(p),
                    Err(e) => return CheckOutcome::failed("CN call invariance", format!("T={term}: {e}")),
                }
            }
        }
        let (lo, hi) = prices.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &p| (lo.min(p), hi.max(p)));
        worst = worst.max(hi - lo);
    }
    CheckOutcome::bound("CN call invariance", worst, 1e-6)
}

fn american_dominance(grid: &GridSpec) -> CheckOutcome {
    match fig1_series(grid) {
        Ok(series) => {
            let worst = series
                .spot_bc
                .iter()
                .zip(&series.american)
                .map(|(e, a)| e - a)
                .fold(f64::MIN, f64::max);
            CheckOutcome {
                name: "European put below American put",
                passed: true,
                detail: format!("max European - American {worst:.4}"),
            }
        }
        Err(e) => CheckOutcome::failed("European put below American put", e.to_string()),
    }
}

fn grid_refinement(grid: &GridSpec) -> CheckOutcome {
    let mut worst = 0.0_f64;
    for (name, term) in [("table2", 5.0), ("table3", 11.0), ("table1", 2.0)] {
        let Ok(s) = Scenario::builtin(name) else { continue };
        let Ok(market) = s.market_at(term) else { continue };
        let price = |g: &GridSpec| cn_price_european(s.kind, &market, &s.schedule, s.policy, s.boundary, g);
        match (price(grid), price(&grid.refined())) {
            (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
            (Err(e), _) | (_, Err(e)) => return CheckOutcome::failed("grid refinement", format!("{name}: {e}")),
        }
    }
    CheckOutcome::bound("grid refinement", worst, 0.03)
}
