use super::GridSpec;
use crate::market::DividendPolicy;

/// Maps values just after an ex-dividend date to values just before it,
/// `V⁻(S_j) = V⁺(S_j - paid(S_j))`, by linear interpolation on the grid.
/// Arguments below `s_min` read the `s_min` node.
pub fn apply_dividend_jump(
    grid: &GridSpec,
    values: &[f64],
    amount: f64,
    policy: DividendPolicy,
) -> Vec<f64> {
    (0..values.len())
        .map(|j| {
            let s = grid.spot(j);
            grid.interpolate(values, s - policy.paid(s, amount))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> (GridSpec, Vec<f64>) {
        (
            GridSpec::new(0.0, 40.0, 10.0, 0.1).unwrap(),
            vec![50.0, 38.0, 22.0, 9.0, 1.0],
        )
    }

    #[test]
    fn zero_dividend_is_identity() {
        let (g, v) = toy();
        for p in [DividendPolicy::Liquidator, DividendPolicy::Survivor] {
            assert_eq!(apply_dividend_jump(&g, &v, 0.0, p), v);
        }
    }

    #[test]
    fn hand_interpolation() {
        let (g, v) = toy();
        // S = 30 pays 14: reads S = 16, 60% of the way from 10 to 20.
        let out = apply_dividend_jump(&g, &v, 14.0, DividendPolicy::Liquidator);
        assert!((out[3] - (38.0 + 0.6 * (22.0 - 38.0))).abs() < 1e-12);
        assert_eq!(out[0], 50.0);
        // S = 10 < 14 is absorbed at zero.
        assert_eq!(out[1], 50.0);
        let surv = apply_dividend_jump(&g, &v, 14.0, DividendPolicy::Survivor);
        assert_eq!(surv[1], 38.0);
        assert_eq!(surv[3], out[3]);
    }

    #[test]
    fn liquidator_preserves_monotonicity() {
        let (g, v) = toy();
        for d in [3.0, 10.0, 17.5, 45.0] {
            let out = apply_dividend_jump(&g, &v, d, DividendPolicy::Liquidator);
            assert!(out.windows(2).all(|w| w[1] <= w[0]), "{d}: {out:?}");
        }
    }

    #[test]
    fn survivor_jumps_up_where_the_dividend_becomes_payable() {
        let (g, v) = toy();
        let out = apply_dividend_jump(&g, &v, 14.0, DividendPolicy::Survivor);
        assert!(out[2] > out[1]);
    }
}
