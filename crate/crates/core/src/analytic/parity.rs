//! Put-call parity violation under dividend policies.
//!
//! When a scheduled dividend can exceed the share price, the dividend stream
//! actually received is smaller than scheduled, so
//! `C - P = S0 - E[PV paid] - K e^{-rT}` sits above the usual
//! `S0 - D - K e^{-rT}`. The gap `ΔP` is the value of the missing dividend
//! cash flows, and a put priced with parity-consistent inputs must be reduced
//! by it. Each missing cash flow is an "effective put" on the share struck
//! at the dividend: a vanilla put under the liquidator policy, a digital put
//! under the survivor policy.

use super::bs::{bs_price, digital_put, BsInputs};
use super::PricingMethod;
use crate::error::{domain, Result};
use crate::market::{Dividend, DividendPolicy, DividendSchedule, MarketParams, OptionKind};

/// How the survivor-policy adjustment combines the per-dividend digital puts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SurvivorRecursion {
    /// `Σ_i d_i e^{-r t_i} P(S(t_i⁻) < d_i)`: the present value of every
    /// dividend that is skipped, each probability taken from the effective
    /// digital put of the base method.
    #[default]
    DigitalSum,
    /// `Σ_i (-1)^{N-i} P_eff(t_i)` with each effective digital paying its
    /// adjusted strike.
    Alternating,
}

/// Parity violation amount for one policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityAdjustment {
    pub policy: DividendPolicy,
    pub delta_p: f64,
}

/// Effective-put inputs for the dividend `div`: strike `d`, expiry `t`, and
/// the earlier dividends adjusted by the base method on `(0, t)`.
fn effective_inputs(
    base: PricingMethod,
    market: &MarketParams,
    schedule: &DividendSchedule,
    div: Dividend,
) -> Result<BsInputs> {
    let eff_market = market.with_strike(div.amount)?.with_term(div.time)?;
    let earlier = schedule.before(div.time);
    base.effective_inputs(&eff_market, &earlier)
}

/// Single-dividend closed forms: a vanilla put struck at `D` expiring at
/// `T_D` (liquidator) or the corresponding cash-or-nothing put (survivor),
/// both with the unadjusted volatility.
pub fn parity_violation_single(
    market: &MarketParams,
    dividend: Dividend,
    policy: DividendPolicy,
) -> Result<f64> {
    if !(dividend.amount > 0.0) {
        return Err(domain(format!(
            "dividend amount must be positive, got {}",
            dividend.amount
        )));
    }
    if dividend.time > market.term() {
        return Err(domain("dividend paid after expiry"));
    }
    let inputs = BsInputs {
        eff_spot: market.spot(),
        eff_strike: dividend.amount,
        rate: market.rate(),
        vol: market.vol(),
        term: dividend.time,
    };
    match policy {
        DividendPolicy::Liquidator => bs_price(OptionKind::Put, &inputs),
        DividendPolicy::Survivor => digital_put(&inputs, dividend.amount),
    }
}

/// Parity violation for a whole schedule, with the effective puts valued by
/// `base` (one of the hybrid family).
pub fn parity_violation(
    base: PricingMethod,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    recursion: SurvivorRecursion,
) -> Result<ParityAdjustment> {
    let paid: Vec<Dividend> = schedule
        .up_to(market.term())
        .iter()
        .copied()
        .filter(|d| d.amount > 0.0)
        .collect();
    let live = DividendSchedule::new(paid.clone())?;
    let delta_p = match policy {
        DividendPolicy::Liquidator => match paid.last() {
            // Paths absorbed at an earlier dividend also miss the last one,
            // so only the final effective put is needed.
            Some(&last) => bs_price(
                OptionKind::Put,
                &effective_inputs(base, market, &live, last)?,
            )?,
            None => 0.0,
        },
        DividendPolicy::Survivor => {
            let n = paid.len();
            let mut acc = 0.0;
            for (i, &div) in paid.iter().enumerate() {
                let inputs = effective_inputs(base, market, &live, div)?;
                acc += match recursion {
                    SurvivorRecursion::DigitalSum => digital_put(&inputs, div.amount)?,
                    SurvivorRecursion::Alternating => {
                        let sign = if (n - 1 - i) % 2 == 0 { 1.0 } else { -1.0 };
                        sign * digital_put(&inputs, inputs.eff_strike)?
                    }
                };
            }
            acc
        }
    };
    Ok(ParityAdjustment { policy, delta_p })
}

/// Parity violation with Hybrid VA effective puts.
pub fn parity_violation_multi(
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
) -> Result<f64> {
    parity_violation(
        PricingMethod::HybridVa,
        market,
        schedule,
        policy,
        SurvivorRecursion::default(),
    )
    .map(|p| p.delta_p)
}

/// Put from `base` less the parity violation valued with the same method.
pub fn price_put_pa(
    base: PricingMethod,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    recursion: SurvivorRecursion,
) -> Result<f64> {
    let base = base.base();
    if !matches!(
        base,
        PricingMethod::Hybrid | PricingMethod::HybridVa | PricingMethod::HybridVa2
    ) {
        return Err(domain(format!(
            "parity adjustment is defined for the hybrid family, not {base}"
        )));
    }
    let put = base.price(OptionKind::Put, market, schedule, policy)?;
    let adj = parity_violation(base, market, schedule, policy, recursion)?;
    Ok(put - adj.delta_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::norm_cdf;

    fn market(term: f64) -> MarketParams {
        MarketParams::new(100.0, 100.0, 0.06, 0.3, term).unwrap()
    }

    fn multi() -> DividendSchedule {
        DividendSchedule::from_pairs(&(0..11).map(|i| (0.5 + i as f64, 9.0)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn single_dividend_closed_forms() {
        let m = market(1.0);
        let div = Dividend::new(364.0 / 365.0, 50.0);
        let l = parity_violation_single(&m, div, DividendPolicy::Liquidator).unwrap();
        let s = parity_violation_single(&m, div, DividendPolicy::Survivor).unwrap();
        // Independent evaluation of the two closed forms.
        let t: f64 = 364.0 / 365.0;
        let b1 = ((2.0_f64).ln() + (0.06 + 0.045) * t) / (0.3 * t.sqrt());
        let b2 = b1 - 0.3 * t.sqrt();
        let disc = 50.0 * (-0.06 * t).exp();
        assert!((l - (disc * norm_cdf(-b2) - 100.0 * norm_cdf(-b1))).abs() < 1e-12);
        assert!((s - disc * norm_cdf(-b2)).abs() < 1e-12);
        assert!((l - 0.04).abs() < 0.005, "{l}");
        assert!((s - 0.42).abs() < 0.01, "{s}");
        assert!(s >= l);
    }

    #[test]
    fn single_dividend_errors() {
        let m = market(1.0);
        assert!(parity_violation_single(&m, Dividend::new(0.5, 0.0), DividendPolicy::Liquidator).is_err());
        assert!(parity_violation_single(&m, Dividend::new(1.5, 5.0), DividendPolicy::Liquidator).is_err());
    }

    #[test]
    fn vanishing_dividend_vanishing_violation() {
        let m = market(1.0);
        let v = parity_violation_single(&m, Dividend::new(0.5, 1e-6), DividendPolicy::Survivor).unwrap();
        assert!(v < 1e-12);
    }

    #[test]
    fn one_entry_schedule_reduces_to_single() {
        let m = market(3.0);
        let div = Dividend::new(2.0, 40.0);
        let s = DividendSchedule::new(vec![div]).unwrap();
        for policy in [DividendPolicy::Liquidator, DividendPolicy::Survivor] {
            let want = parity_violation_single(&m, div, policy).unwrap();
            for recursion in [SurvivorRecursion::DigitalSum, SurvivorRecursion::Alternating] {
                for base in [PricingMethod::Hybrid, PricingMethod::HybridVa, PricingMethod::HybridVa2] {
                    let got = parity_violation(base, &m, &s, policy, recursion).unwrap().delta_p;
                    assert!((got - want).abs() < 1e-14, "{base} {policy}");
                }
            }
        }
    }

    #[test]
    fn empty_schedule_has_no_violation() {
        for policy in [DividendPolicy::Liquidator, DividendPolicy::Survivor] {
            assert_eq!(parity_violation_multi(&market(2.0), &DividendSchedule::empty(), policy).unwrap(), 0.0);
        }
    }

    #[test]
    fn decimal_year_multi_reference() {
        // Scripted evaluation of the same construction with decimal-year
        // dividend dates.
        let d = parity_violation_multi(&market(11.0), &multi(), DividendPolicy::Liquidator).unwrap();
        assert!((d - 7.601_802).abs() < 5e-6, "{d}");
        let d = parity_violation(
            PricingMethod::HybridVa2,
            &market(11.0),
            &multi(),
            DividendPolicy::Liquidator,
            SurvivorRecursion::default(),
        )
        .unwrap()
        .delta_p;
        assert!((d - 7.455_473).abs() < 5e-6, "{d}");
    }

    #[test]
    fn liquidator_below_survivor_single() {
        for (t, d) in [(0.5, 20.0), (2.0, 60.0), (0.9, 95.0)] {
            let m = market(3.0);
            let s = DividendSchedule::from_pairs(&[(t, d)]).unwrap();
            let l = parity_violation_multi(&m, &s, DividendPolicy::Liquidator).unwrap();
            let v = parity_violation_multi(&m, &s, DividendPolicy::Survivor).unwrap();
            assert!(l <= v);
        }
    }

    #[test]
    fn zero_dividends_do_not_move_adjustment() {
        let m = market(4.0);
        let a = DividendSchedule::from_pairs(&[(1.0, 30.0), (2.0, 30.0)]).unwrap();
        let b = DividendSchedule::from_pairs(&[(1.0, 30.0), (2.0, 30.0), (3.0, 0.0)]).unwrap();
        for policy in [DividendPolicy::Liquidator, DividendPolicy::Survivor] {
            let x = parity_violation_multi(&m, &a, policy).unwrap();
            let y = parity_violation_multi(&m, &b, policy).unwrap();
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn pa_requires_hybrid_family() {
        assert!(price_put_pa(
            PricingMethod::SpotVa,
            &market(2.0),
            &multi(),
            DividendPolicy::Liquidator,
            SurvivorRecursion::default()
        )
        .is_err());
    }
}
