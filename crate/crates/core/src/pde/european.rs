use super::boundary::edge_value;
use super::{apply_dividend_jump, solve_tridiagonal, BoundaryVariant, GridSpec};
use crate::error::{config, PricingError, Result};
use crate::market::{DividendPolicy, DividendSchedule, MarketParams, OptionKind};

/// Value grid produced by one backward solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CnSolution {
    pub kind: OptionKind,
    pub policy: DividendPolicy,
    pub boundary: BoundaryVariant,
    pub grid: GridSpec,
    /// Ascending time nodes; `values[i]` holds `V(S_j, times[i])` on the
    /// pre-dividend side of any ex-dividend date at that node.
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    spot: f64,
}

impl CnSolution {
    /// `V(s, 0)` by linear interpolation.
    pub fn price_at(&self, s: f64) -> f64 {
        self.grid.interpolate(&self.values[0], s)
    }

    /// `V(S0, 0)`.
    pub fn price(&self) -> f64 {
        self.price_at(self.spot)
    }

    pub fn spots(&self) -> Vec<f64> {
        self.grid.spots()
    }
}

/// Central-difference coefficients of `½σ²S²V_SS + rSV_S - rV` at each node.
pub(crate) struct Operator {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl Operator {
    pub fn new(grid: &GridSpec, market: &MarketParams) -> Self {
        let (vol, r, ds) = (market.vol(), market.rate(), grid.ds);
        let n = grid.intervals();
        let mut op = Self {
            a: vec![0.0; n + 1],
            b: vec![0.0; n + 1],
            c: vec![0.0; n + 1],
        };
        for j in 0..=n {
            let s = grid.spot(j);
            let diff = 0.5 * vol * vol * s * s / (ds * ds);
            let drift = r * s / (2.0 * ds);
            op.a[j] = diff - drift;
            op.b[j] = -2.0 * diff - r;
            op.c[j] = diff + drift;
        }
        op
    }

    /// Explicit part `V + h_e L V` on the interior nodes `1..n`, with the
    /// new-time boundary contributions of the implicit part `h_i` folded in.
    pub fn rhs(&self, old: &[f64], h_e: f64, h_i: f64, lo_new: f64, hi_new: f64) -> Vec<f64> {
        let n = old.len() - 1;
        let mut rhs: Vec<f64> = (1..n)
            .map(|j| {
                old[j] + h_e * (self.a[j] * old[j - 1] + self.b[j] * old[j] + self.c[j] * old[j + 1])
            })
            .collect();
        rhs[0] += h_i * self.a[1] * lo_new;
        rhs[n - 2] += h_i * self.c[n - 1] * hi_new;
        rhs
    }

    /// Bands of `I - h_i L` on the interior nodes.
    pub fn implicit_bands(&self, h_i: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.a.len() - 1;
        let sub = (1..n).map(|j| -h_i * self.a[j]).collect();
        let diag = (1..n).map(|j| 1.0 - h_i * self.b[j]).collect();
        let sup = (1..n).map(|j| -h_i * self.c[j]).collect();
        (sub, diag, sup)
    }
}

/// One backward step ending at `t_lo`.
pub(crate) struct Step {
    pub t_lo: f64,
    /// Implicit and explicit weights of the step length.
    pub h_i: f64,
    pub h_e: f64,
    /// `t_lo` is a node of the time grid rather than an internal sub-step.
    pub node: bool,
}

/// Crank-Nicolson steps over `times` (ascending), walked backwards; the
/// first interval below expiry is replaced by `startup` fully implicit
/// sub-steps when `startup > 0`.
pub(crate) fn step_plan(times: &[f64], startup: usize) -> Vec<Step> {
    let mut plan = Vec::new();
    for (k, w) in times.windows(2).rev().enumerate() {
        let len = w[1] - w[0];
        if k == 0 && startup > 0 {
            let h = len / startup as f64;
            plan.extend((0..startup).rev().map(|i| Step {
                t_lo: if i == 0 { w[0] } else { w[0] + i as f64 * h },
                h_i: h,
                h_e: 0.0,
                node: i == 0,
            }));
        } else {
            plan.push(Step {
                t_lo: w[0],
                h_i: 0.5 * len,
                h_e: 0.5 * len,
                node: true,
            });
        }
    }
    plan
}

pub(crate) fn check_inputs(market: &MarketParams, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    let s0 = market.spot();
    if !(s0 > grid.s_min && s0 < grid.s_max) {
        return Err(config(format!(
            "spot {s0} outside the open grid range ({}, {})",
            grid.s_min, grid.s_max
        )));
    }
    Ok(())
}

/// Crank-Nicolson solve of a European option with cash dividends.
pub fn cn_solve_european(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    boundary: BoundaryVariant,
    grid: &GridSpec,
) -> Result<CnSolution> {
    check_inputs(market, grid)?;
    let term = market.term();
    let times = grid.time_grid(term, schedule);
    let n = grid.intervals();
    let op = Operator::new(grid, market);
    let lower = |divs, t| edge_value(boundary, kind, market, divs, t, grid.s_min);
    let upper = |divs, t| match kind {
        OptionKind::Put => 0.0,
        OptionKind::Call => edge_value(boundary, kind, market, divs, t, grid.s_max),
    };
    // Dividend jump at `t`, then boundary rows refreshed for the pre-dividend side.
    let cross = |v: Vec<f64>, t: f64| -> Vec<f64> {
        let mut v = schedule
            .entries()
            .iter()
            .filter(|d| d.time == t && d.amount > 0.0)
            .fold(v, |v, d| apply_dividend_jump(grid, &v, d.amount, policy));
        let divs = schedule.remaining(t, term);
        v[0] = lower(divs, t);
        v[n] = upper(divs, t);
        v
    };

    let payoff: Vec<f64> = (0..=n).map(|j| kind.payoff(grid.spot(j), market.strike())).collect();
    let mut v = cross(payoff, term);
    let mut slices = vec![v.clone()];
    for Step { t_lo, h_i, h_e, node } in step_plan(&times, grid.startup_steps) {
        let ahead = schedule.remaining(t_lo, term);
        let (lo, hi) = (lower(ahead, t_lo), upper(ahead, t_lo));
        let rhs = op.rhs(&v, h_e, h_i, lo, hi);
        let (sub, diag, sup) = op.implicit_bands(h_i);
        let inner = solve_tridiagonal(&sub, &diag, &sup, &rhs)?;
        let mut next = Vec::with_capacity(n + 1);
        next.push(lo);
        next.extend(inner);
        next.push(hi);
        if next.iter().any(|x| !x.is_finite()) {
            return Err(PricingError::Numerical(format!("non-finite value at t = {t_lo}")));
        }
        if node {
            v = cross(next, t_lo);
            slices.push(v.clone());
        } else {
            v = next;
        }
    }
    slices.reverse();
    Ok(CnSolution {
        kind,
        policy,
        boundary,
        grid: *grid,
        times,
        values: slices,
        spot: market.spot(),
    })
}

/// `V(S0, 0)` of [`cn_solve_european`].
pub fn cn_price_european(
    kind: OptionKind,
    market: &MarketParams,
    schedule: &DividendSchedule,
    policy: DividendPolicy,
    boundary: BoundaryVariant,
    grid: &GridSpec,
) -> Result<f64> {
    cn_solve_european(kind, market, schedule, policy, boundary, grid).map(|s| s.price())
}
