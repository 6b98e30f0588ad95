//! Act/365F dates for scenarios specified on a calendar.

use chrono::{Months, NaiveDate};

use super::HarnessError;

/// Actual/365 fixed year fraction from `from` to `to`.
pub fn year_fraction(from: NaiveDate, to: NaiveDate) -> f64 {
    (to - from).num_days() as f64 / 365.0
}

/// `date` moved forward by `months` calendar months (end-of-month clamped).
pub fn add_months(date: NaiveDate, months: u32) -> NaiveDate {
    date.checked_add_months(Months::new(months))
        .expect("date within chrono range")
}

/// Year fraction of the date `months` after `start`.
pub fn months_out(start: NaiveDate, months: u32) -> f64 {
    year_fraction(start, add_months(start, months))
}

pub fn parse_date(text: &str) -> Result<NaiveDate, HarnessError> {
    NaiveDate::parse_from_str(text.trim(), "%Y-%m-%d")
        .map_err(|e| HarnessError::Config(format!("bad date '{text}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn start() -> NaiveDate {
        NaiveDate::from_ymd_opt(2001, 4, 1).unwrap()
    }

    #[test]
    fn anniversaries_count_leap_days() {
        assert_eq!(months_out(start(), 12), 1.0);
        assert_eq!(months_out(start(), 24), 2.0);
        // 2004-02-29 falls inside the third year.
        assert_eq!(months_out(start(), 36), 1096.0 / 365.0);
        assert_eq!(months_out(start(), 132), 4018.0 / 365.0);
    }

    #[test]
    fn half_years() {
        assert_eq!(months_out(start(), 6), 183.0 / 365.0);
        assert_eq!(year_fraction(start(), parse_date("2002-03-31").unwrap()), 364.0 / 365.0);
    }

    #[test]
    fn month_end_clamp() {
        let d = NaiveDate::from_ymd_opt(2001, 1, 31).unwrap();
        assert_eq!(add_months(d, 1), NaiveDate::from_ymd_opt(2001, 2, 28).unwrap());
        assert!(parse_date("2001-02-30").is_err());
    }
}
