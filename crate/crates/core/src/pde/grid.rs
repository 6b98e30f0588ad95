use crate::error::{config, Result};
use crate::market::DividendSchedule;

/// Uniform space grid `S_j = s_min + j ds`, target time step, and the number
/// of fully implicit sub-steps that replace the first Crank-Nicolson step
/// below expiry (0 for plain Crank-Nicolson throughout).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub ds: f64,
    pub dt: f64,
    pub startup_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            s_min: 0.0,
            s_max: 500.0,
            ds: 1.25,
            dt: 0.05,
            startup_steps: 2,
        }
    }
}

impl GridSpec {
    pub fn new(s_min: f64, s_max: f64, ds: f64, dt: f64) -> Result<Self> {
        let grid = Self {
            s_min,
            s_max,
            ds,
            dt,
            ..Self::default()
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.s_min, self.s_max, self.ds, self.dt].iter().all(|x| x.is_finite());
        if !finite {
            return Err(config("grid parameters must be finite"));
        }
        if self.s_min < 0.0 || self.s_min >= self.s_max {
            return Err(config(format!(
                "grid range [{}, {}] is empty or negative",
                self.s_min, self.s_max
            )));
        }
        if !(self.ds > 0.0 && self.dt > 0.0) {
            return Err(config("grid steps must be positive"));
        }
        let n = (self.s_max - self.s_min) / self.ds;
        if (n - n.round()).abs() > 1e-9 * n.max(1.0) || n.round() < 2.0 {
            return Err(config(format!(
                "(s_max - s_min)/ds = {n} is not an integer count of at least 2 intervals"
            )));
        }
        Ok(())
    }

    /// Number of space intervals.
    pub fn intervals(&self) -> usize {
        ((self.s_max - self.s_min) / self.ds).round() as usize
    }

    pub fn spot(&self, j: usize) -> f64 {
        self.s_min + j as f64 * self.ds
    }

    pub fn spots(&self) -> Vec<f64> {
        (0..=self.intervals()).map(|j| self.spot(j)).collect()
    }

    /// Same grid with both steps halved.
    pub fn refined(&self) -> Self {
        Self {
            ds: 0.5 * self.ds,
            dt: 0.5 * self.dt,
            ..*self
        }
    }

    /// Ascending time nodes on `[0, term]`: every dividend date in `(0, term)`
    /// is a node, and each piece between consecutive dates is cut into the
    /// fewest equal steps no longer than `dt`.
    pub fn time_grid(&self, term: f64, schedule: &DividendSchedule) -> Vec<f64> {
        let mut cuts = vec![0.0];
        cuts.extend(
            schedule
                .up_to(term)
                .iter()
                .map(|d| d.time)
                .filter(|&t| t < term),
        );
        cuts.push(term);
        let mut nodes = vec![0.0];
        for w in cuts.windows(2) {
            let len = w[1] - w[0];
            let steps = ((len / self.dt) - 1e-9).ceil().max(1.0) as usize;
            for k in 1..steps {
                nodes.push(w[0] + len * k as f64 / steps as f64);
            }
            nodes.push(w[1]);
        }
        nodes
    }

    /// Linear interpolation of grid values at `s`, clamped to the range.
    pub fn interpolate(&self, values: &[f64], s: f64) -> f64 {
        let n = values.len() - 1;
        let x = ((s - self.s_min) / self.ds).clamp(0.0, n as f64);
        let j = (x.floor() as usize).min(n - 1);
        let w = x - j as f64;
        (1.0 - w) * values[j] + w * values[j + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = GridSpec::default();
        g.validate().unwrap();
        assert_eq!(g.intervals(), 400);
        assert_eq!(g.spot(80), 100.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(0.0, 500.0, 1.3, 0.05).is_err());
        assert!(GridSpec::new(10.0, 10.0, 1.0, 0.05).is_err());
        assert!(GridSpec::new(0.0, 100.0, 1.0, 0.0).is_err());
        assert!(GridSpec::new(-1.0, 100.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn time_grid_hits_dividends() {
        let g = GridSpec::default();
        let s = DividendSchedule::from_pairs(&[(0.5, 9.0), (364.0 / 365.0, 50.0), (2.0, 1.0)]).unwrap();
        let t = g.time_grid(1.0, &s);
        assert_eq!(t[0], 0.0);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!(t.contains(&0.5) && t.contains(&(364.0 / 365.0)));
        assert!(t.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 0.05 + 1e-12));
        // 10 steps to 0.5, then ceil(0.4973/0.05) = 10, then one tiny step.
        assert_eq!(t.len(), 22);
    }

    #[test]
    fn interpolation() {
        let g = GridSpec::new(0.0, 4.0, 1.0, 0.1).unwrap();
        let v = [0.0, 1.0, 4.0, 9.0, 16.0];
        assert_eq!(g.interpolate(&v, 2.5), 6.5);
        assert_eq!(g.interpolate(&v, -3.0), 0.0);
        assert_eq!(g.interpolate(&v, 4.0), 16.0);
        assert_eq!(g.interpolate(&v, 7.0), 16.0);
    }
}
