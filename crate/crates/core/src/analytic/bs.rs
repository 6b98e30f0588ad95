use crate::error::{domain, Result};
use crate::market::OptionKind;
use crate::normal::norm_cdf;

/// Inputs of a Black-Scholes evaluation after any dividend adjustment has
/// been folded into the spot and strike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsInputs {
    pub eff_spot: f64,
    pub eff_strike: f64,
    pub rate: f64,
    pub vol: f64,
    pub term: f64,
}

impl BsInputs {
    fn check(&self) -> Result<()> {
        if !(self.eff_spot > 0.0) {
            return Err(domain(format!(
                "effective spot must be positive, got {} (dividends exceed spot)",
                self.eff_spot
            )));
        }
        if !(self.eff_strike > 0.0) {
            return Err(domain(format!(
                "effective strike must be positive, got {}",
                self.eff_strike
            )));
        }
        if !(self.vol > 0.0 && self.vol.is_finite()) {
            return Err(domain(format!("volatility must be positive, got {}", self.vol)));
        }
        if !(self.term > 0.0) {
            return Err(domain(format!("term must be positive, got {}", self.term)));
        }
        Ok(())
    }

    pub fn sd(&self) -> f64 {
        self.vol * self.term.sqrt()
    }

    pub fn b1(&self) -> f64 {
        ((self.eff_spot / self.eff_strike).ln() + (self.rate + 0.5 * self.vol * self.vol) * self.term)
            / self.sd()
    }

    pub fn b2(&self) -> f64 {
        self.b1() - self.sd()
    }

    /// `eff_strike * exp(-rate * term)`.
    pub fn discounted_strike(&self) -> f64 {
        self.eff_strike * (-self.rate * self.term).exp()
    }
}

/// Black-Scholes price with the put leg written with `Φ(-b2)`.
pub fn bs_price(kind: OptionKind, inputs: &BsInputs) -> Result<f64> {
    inputs.check()?;
    let b1 = inputs.b1();
    let b2 = b1 - inputs.sd();
    let s = inputs.eff_spot;
    let k = inputs.discounted_strike();
    let v = match kind {
        OptionKind::Call => s * norm_cdf(b1) - k * norm_cdf(b2),
        OptionKind::Put => k * norm_cdf(-b2) - s * norm_cdf(-b1),
    };
    Ok(v.max(0.0))
}

/// Cash-or-nothing put paying `payout` when the effective spot ends below the
/// effective strike: `payout · exp(-rT) · Φ(-b2)`.
pub fn digital_put(inputs: &BsInputs, payout: f64) -> Result<f64> {
    inputs.check()?;
    Ok(payout * (-inputs.rate * inputs.term).exp() * norm_cdf(-inputs.b2()))
}
