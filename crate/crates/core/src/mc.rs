//! Antithetic Monte Carlo under the jump-dividend share process.
//!
//! Between ex-dividend dates the share follows geometric Brownian motion and
//! is stepped exactly; at each date the policy decides how much is paid. Pair
//! `i` draws from the ChaCha stream `i` of the configured seed, so a result
//! depends only on the seed and the path count, never on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{config, Result};
use crate::market::{DividendPolicy, DividendSchedule, MarketParams, OptionKind};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub paths: usize,
    pub seed: u64,
    pub antithetic: bool,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            paths: 1_000_000,
            seed: 20_090_101,
            antithetic: true,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.paths == 0 {
            return Err(config("path count must be positive"));
        }
        if self.antithetic && self.paths % 2 != 0 {
            return Err(config(format!(
                "antithetic sampling needs an even path count, got {}",
                self.paths
            )));
        }
        Ok(())
    }

    /// Independent samples: pairs when antithetic, single paths otherwise.
    fn samples(&self) -> usize {
        if self.antithetic {
            self.paths / 2
        } else {
            self.paths
        }
    }
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub price: f64,
    pub std_error: f64,
}

/// Terminal state of one path.
#[derive(Debug, Clone, Copy)]
struct PathEnd {
    spot: f64,
    /// Present value of scheduled dividends that were not paid in full.
    shortfall: f64,
}

struct Simulator<'a> {
    market: &'a MarketParams,
    policy: DividendPolicy,
    /// `(time, drift, diffusion, dividend)` per simulation date.
    steps: Vec<(f64, f64, f64, f64)>,
}

impl<'a> Simulator<'a> {
    fn new(market: &'a MarketParams, schedule: &DividendSchedule, policy: DividendPolicy) -> Self {
        let (r, vol, term) = (market.rate(), market.vol(), market.term());
        let mut dates: Vec<(f64, f64)> = schedule.up_to(term).iter().map(|d| (d.time, d.amount)).collect();
        if dates.last().is_none_or(|&(t, _)| t < term) {
            dates.push((term, 0.0));
        }
        let mut prev = 0.0;
        let steps = dates
            .into_iter()
            .map(|(t, d)| {
                let dt = t - prev;
                prev = t;
                (t, (r - 0.5 * vol * vol) * dt, vol * dt.sqrt(), d)
            })
            .collect();
        Self { market, policy, steps }
    }

    fn path(&self, normals: &[f64], sign: f64) -> PathEnd {
        let r = self.market.rate();
        let mut spot = self.market.spot();
        let mut shortfall = 0.0;
        for (&(t, drift, diff, d), &z) in self.steps.iter().zip(normals) {
            spot *= (drift + diff * sign * z).exp();
            if d > 0.0 {
                let paid = self.policy.paid(spot, d);
                spot = (spot - paid).max(0.0);
                shortfall += (d - paid) * (-r * t).exp();
            }
        }
        PathEnd { spot, shortfall }
    }

    /// Mean and standard error of each component of `f` over the sample set.
    fn run<const M: usize>(&self, cfg: &McConfig, f: impl Fn(PathEnd) -> [f64; M] + Sync) -> Result<[McEstimate; M]> {
        cfg.validate()?;
        let n = cfg.samples();
        let chunks: Vec<([f64; M], [f64; M])> = (0..n.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut sum = [0.0; M];
                let mut sq = [0.0; M];
                let mut normals = vec![0.0; self.steps.len()];
                for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    rng.set_stream(i as u64);
                    for z in normals.iter_mut() {
                        *z = StandardNormal.sample(&mut rng);
                    }
                    let mut y = f(self.path(&normals, 1.0));
                    if cfg.antithetic {
                        let anti = f(self.path(&normals, -1.0));
                        for k in 0..M {
                            y[k] = 0.5 * (y[k] + anti[k]);
                        }
                    }
                    for k in 0..M {
                        sum[k] += y[k];
                        sq[k] += y[k] * y[k];
                    }
                }
                (sum, sq)
            })
            .collect();
        let mut sum = [0.0; M];
        let mut sq = [0.0; M];
        for (s, q) in chunks {
            for k in 0..M {
                sum[k] += s[k];
                sq[k] += q[k];
            }
        }
        let nf = n as f64;
        Ok(std::array::from_fn(|k| {
            let mean = sum[k] / nf;
            let var = if n > 1 {
                ((sq[k] - nf * mean * mean) / (nf - 1.0)).max(0.0)
            } else {
                0.0
            };
            McEstimate {
                price: mean,
                std_error: (var / nf).sqrt(),
            }
        }))
    }
}

/// Discounted expected payoff of a European option.
pub fn mc_price(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    cfg: &McConfig,
) -> Result<McEstimate> {
    let disc = market.discount(market.term());
    let strike = market.strike();
    let sim = Simulator::new(market, schedule, policy);
    sim.run(cfg, |end| [disc * kind.payoff(end.spot, strike)]).map(|[e]| e)
}

/// Parity-violation estimates from one set of paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McParity {
    pub call: McEstimate,
    pub put: McEstimate,
    /// `C - P - (S0 - D - K e^{-rT})`, pathwise.
    pub delta_p: McEstimate,
    /// Present value of the dividends not paid, pathwise.
    pub shortfall: McEstimate,
}

pub fn mc_parity_violation(
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    cfg: &McConfig,
) -> Result<McParity> {
    let term = market.term();
    let disc = market.discount(term);
    let strike = market.strike();
    let d = schedule.pv_dividends(market.rate(), 0.0, term, 0.0);
    let forward = market.spot() - d - strike * disc;
    let sim = Simulator::new(market, schedule, policy);
    let [call, put, delta_p, shortfall] = sim.run(cfg, |end| {
        let c = disc * OptionKind::Call.payoff(end.spot, strike);
        let p = disc * OptionKind::Put.payoff(end.spot, strike);
        [c, p, c - p - forward, end.shortfall]
    })?;
    Ok(McParity { call, put, delta_p, shortfall })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn market(term: f64) -> MarketParams {
        MarketParams::new(100.0, 100.0, 0.06, 0.3, term).unwrap()
    }

    fn cfg(paths: usize, seed: u64) -> McConfig {
        McConfig { paths, seed, antithetic: true }
    }

    #[test]
    fn config_validation() {
        assert!(cfg(0, 1).validate().is_err());
        assert!(cfg(3, 1).validate().is_err());
        assert!(McConfig { paths: 3, seed: 1, antithetic: false }.validate().is_ok());
    }

    #[test]
    fn vanilla_call_within_three_errors() {
        let e = mc_price(OptionKind::Call, &market(1.0), &DividendSchedule::empty(), DividendPolicy::Liquidator, &cfg(200_000, 7)).unwrap();
        assert!((e.price - 14.717_072_420_289_298).abs() < 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn deterministic_for_a_seed() {
        let s = DividendSchedule::from_pairs(&[(0.5, 9.0)]).unwrap();
        let a = mc_price(OptionKind::Put, &market(1.0), &s, DividendPolicy::Survivor, &cfg(20_000, 3)).unwrap();
        let b = mc_price(OptionKind::Put, &market(1.0), &s, DividendPolicy::Survivor, &cfg(20_000, 3)).unwrap();
        assert_eq!(a, b);
        let c = mc_price(OptionKind::Put, &market(1.0), &s, DividendPolicy::Survivor, &cfg(20_000, 4)).unwrap();
        assert_ne!(a.price, c.price);
    }

    #[test]
    fn discounted_spot_is_a_martingale() {
        let m = market(3.0);
        // A zero strike call pays the terminal spot.
        let m0 = MarketParams::new(100.0, 0.0, 0.06, 0.3, 3.0).unwrap();
        let e = mc_price(OptionKind::Call, &m0, &DividendSchedule::empty(), DividendPolicy::Liquidator, &cfg(100_000, 11)).unwrap();
        assert!((e.price - m.spot()).abs() < 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn antithetic_reduces_error() {
        let s = DividendSchedule::from_pairs(&[(0.5, 9.0), (1.5, 9.0)]).unwrap();
        for seed in 0..5 {
            let on = mc_price(OptionKind::Call, &market(2.0), &s, DividendPolicy::Liquidator, &cfg(40_000, seed)).unwrap();
            let off = mc_price(
                OptionKind::Call,
                &market(2.0),
                &s,
                DividendPolicy::Liquidator,
                &McConfig { antithetic: false, ..cfg(40_000, seed) },
            )
            .unwrap();
            assert!(on.std_error <= off.std_error, "seed {seed}");
        }
    }

    #[test]
    fn absorbed_paths_pay_the_discounted_strike() {
        let s = DividendSchedule::from_pairs(&[(0.5, 1e6)]).unwrap();
        let e = mc_price(OptionKind::Put, &market(2.0), &s, DividendPolicy::Liquidator, &cfg(1000, 1)).unwrap();
        assert!((e.price - 100.0 * (-0.12_f64).exp()).abs() < 1e-12);
        assert_eq!(e.std_error, 0.0);
        // A survivor share skips the payment instead.
        let v = mc_price(OptionKind::Put, &market(2.0), &s, DividendPolicy::Survivor, &cfg(1000, 1)).unwrap();
        assert!(v.price < 20.0);
    }

    #[test]
    fn parity_estimates_agree() {
        let s = DividendSchedule::from_pairs(&[(364.0 / 365.0, 50.0)]).unwrap();
        let p = mc_parity_violation(&market(1.0), &s, DividendPolicy::Liquidator, &cfg(200_000, 5)).unwrap();
        assert!((p.delta_p.price - p.shortfall.price).abs() < 3.0 * p.delta_p.std_error);
        assert!((p.shortfall.price - 0.04).abs() < 0.005, "{:?}", p.shortfall);
    }
}
