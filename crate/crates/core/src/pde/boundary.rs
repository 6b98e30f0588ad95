use std::fmt;
use std::str::FromStr;

use crate::error::{config, PricingError, Result};
use crate::market::{Dividend, DividendSchedule, MarketParams, OptionKind};

/// Which dividend adjustment shapes the lower boundary of the put.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BoundaryVariant {
    /// `K e^{-r(T-t)} - max(S - D̃(t), 0)`
    #[default]
    SpotBc,
    /// `K e^{-r(T-t)} + D̃(t) - S`
    StrikeBc,
    /// `K e^{-r(T-t)} + D̃_K(t) - max(S - D̃_S(t), 0)`
    HybridBc,
}

impl BoundaryVariant {
    pub const ALL: [BoundaryVariant; 3] = [Self::SpotBc, Self::StrikeBc, Self::HybridBc];

    pub fn id(self) -> &'static str {
        match self {
            Self::SpotBc => "spot",
            Self::StrikeBc => "strike",
            Self::HybridBc => "hybrid",
        }
    }
}

impl fmt::Display for BoundaryVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BoundaryVariant {
    type Err = PricingError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.trim_end_matches("bc").trim_end_matches(['-', '_']);
        Self::ALL
            .into_iter()
            .find(|v| v.id() == key)
            .ok_or_else(|| config(format!("unknown boundary variant '{s}'")))
    }
}

/// Boundary value at time `t` and edge spot `s_edge`, counting dividends
/// with `t <= t_i <= T` as still to be paid.
///
/// Puts use the lower-boundary formula of `variant` near `s_min` and zero
/// at `s_max`; calls use the forward intrinsic value
/// `max(S - D̃(t) - K e^{-r(T-t)}, 0)`, which is the upper boundary far from
/// the strike and zero at `S = 0`.
pub fn boundary_value(
    variant: BoundaryVariant,
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
    t: f64,
    s_edge: f64,
) -> f64 {
    edge_value(
        variant,
        kind,
        market,
        schedule.remaining(t, market.term()),
        t,
        s_edge,
    )
}

/// `divs` are the dividends still outstanding at `t`.
pub(crate) fn edge_value(
    variant: BoundaryVariant,
    kind: OptionKind,
    market: &MarketParams,
    divs: &[Dividend],
    t: f64,
    s: f64,
) -> f64 {
    let (r, term) = (market.rate(), market.term());
    let k_disc = market.strike() * (-r * (term - t)).exp();
    let pv = |w: &dyn Fn(&Dividend) -> f64| -> f64 {
        divs.iter().map(|d| w(d) * d.amount * (-r * (d.time - t)).exp()).sum()
    };
    let total = pv(&|_| 1.0);
    match kind {
        OptionKind::Call => (s - total - k_disc).max(0.0),
        OptionKind::Put => match variant {
            BoundaryVariant::SpotBc => k_disc - (s - total).max(0.0),
            BoundaryVariant::StrikeBc => k_disc + total - s,
            BoundaryVariant::HybridBc => {
                let d_s = pv(&|d| (term - d.time) / term);
                let d_k = pv(&|d| d.time / term);
                k_disc + d_k - (s - d_s).max(0.0)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1(term: f64) -> (MarketParams, DividendSchedule) {
        (
            MarketParams::new(100.0, 100.0, 0.06, 0.3, term).unwrap(),
            DividendSchedule::from_pairs(&[(6.5, 70.0)]).unwrap(),
        )
    }

    #[test]
    fn parse_variants() {
        for v in BoundaryVariant::ALL {
            assert_eq!(v.id().parse::<BoundaryVariant>().unwrap(), v);
        }
        assert_eq!("HybridBC".parse::<BoundaryVariant>().unwrap(), BoundaryVariant::HybridBc);
        assert_eq!("spot-bc".parse::<BoundaryVariant>().unwrap(), BoundaryVariant::SpotBc);
        assert!("nope".parse::<BoundaryVariant>().is_err());
    }

    #[test]
    fn variants_coincide_at_expiry() {
        let (m, s) = fig1(11.0);
        for v in BoundaryVariant::ALL {
            assert_eq!(boundary_value(v, OptionKind::Put, &m, &s, 11.0, 1.25), 100.0 - 1.25);
        }
    }

    #[test]
    fn variants_coincide_without_dividends_ahead() {
        let (m, s) = fig1(11.0);
        for t in [6.6, 8.0, 10.0] {
            let vals: Vec<f64> = BoundaryVariant::ALL
                .iter()
                .map(|&v| boundary_value(v, OptionKind::Put, &m, &s, t, 0.0))
                .collect();
            assert!(vals.iter().all(|&x| x == vals[0]));
        }
        // Before the dividend date with expiry before it, nothing is outstanding.
        let (m, s) = fig1(6.0);
        for t in [0.0, 3.0, 5.9] {
            let a = boundary_value(BoundaryVariant::SpotBc, OptionKind::Put, &m, &s, t, 0.0);
            let b = boundary_value(BoundaryVariant::StrikeBc, OptionKind::Put, &m, &s, t, 0.0);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn strike_variant_at_zero() {
        let (m, s) = fig1(11.0);
        let v = boundary_value(BoundaryVariant::StrikeBc, OptionKind::Put, &m, &s, 0.0, 0.0);
        let want = 100.0 * (-0.66_f64).exp() + 70.0 * (-0.06_f64 * 6.5).exp();
        assert!((v - want).abs() < 1e-12);
        let spot = boundary_value(BoundaryVariant::SpotBc, OptionKind::Put, &m, &s, 0.0, 0.0);
        assert!((spot - 100.0 * (-0.66_f64).exp()).abs() < 1e-12);
        let hybrid = boundary_value(BoundaryVariant::HybridBc, OptionKind::Put, &m, &s, 0.0, 0.0);
        let dk = 70.0 * 6.5 / 11.0 * (-0.06_f64 * 6.5).exp();
        assert!((hybrid - 100.0 * (-0.66_f64).exp() - dk).abs() < 1e-12);
    }

    #[test]
    fn dividend_on_the_node_is_outstanding() {
        let (m, s) = fig1(11.0);
        let v = boundary_value(BoundaryVariant::StrikeBc, OptionKind::Put, &m, &s, 6.5, 0.0);
        assert!((v - 100.0 * (-0.06_f64 * 4.5).exp() - 70.0).abs() < 1e-12);
    }

    #[test]
    fn call_edges() {
        let (m, s) = fig1(11.0);
        for v in BoundaryVariant::ALL {
            assert_eq!(boundary_value(v, OptionKind::Call, &m, &s, 0.0, 0.0), 0.0);
            let hi = boundary_value(v, OptionKind::Call, &m, &s, 7.0, 500.0);
            assert!((hi - (500.0 - 100.0 * (-0.06_f64 * 4.0).exp())).abs() < 1e-12);
        }
    }
}
