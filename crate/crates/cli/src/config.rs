//! Run parameters shared by every suite.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("carrier cap {0} is out of range (1..=5)")]
    CarrierOutOfRange(usize),
    #[error("trial count must be positive")]
    NoTrials,
    #[error("exponent p = {0} must be a finite real greater than 1")]
    BadP(f64),
    #[error("exponent q = {0} must lie strictly between 0 and 1")]
    BadQ(f64),
}

/// Knobs for the reproduction and verification suites. Exponents are left
/// unset unless the caller chose them, so each suite can pick its own
/// default.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_carrier: usize,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, trials: 10_000, max_carrier: 4, p: None, q: None }
    }
}

impl RunConfig {
    /// Random suites sample carriers up to 5; enumeration stays smaller and
    /// is clamped per suite.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=5).contains(&self.max_carrier) {
            return Err(ConfigError::CarrierOutOfRange(self.max_carrier));
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if let Some(p) = self.p {
            if !p.is_finite() || p <= 1.0 {
                return Err(ConfigError::BadP(p));
            }
        }
        if let Some(q) = self.q {
            if !q.is_finite() || q <= 0.0 || q >= 1.0 {
                return Err(ConfigError::BadQ(q));
            }
        }
        Ok(())
    }

    pub fn p_or(&self, default: f64) -> f64 {
        self.p.unwrap_or(default)
    }

    pub fn q_or(&self, default: f64) -> f64 {
        self.q.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert_eq!(RunConfig::default().validate(), Ok(()));
    }

    #[test]
    fn bad_knobs_are_rejected() {
        let mut cfg = RunConfig::default();
        cfg.max_carrier = 6;
        assert_eq!(cfg.validate(), Err(ConfigError::CarrierOutOfRange(6)));
        cfg = RunConfig { trials: 0, ..RunConfig::default() };
        assert_eq!(cfg.validate(), Err(ConfigError::NoTrials));
        cfg = RunConfig { p: Some(1.0), ..RunConfig::default() };
        assert_eq!(cfg.validate(), Err(ConfigError::BadP(1.0)));
        cfg = RunConfig { q: Some(1.0), ..RunConfig::default() };
        assert_eq!(cfg.validate(), Err(ConfigError::BadQ(1.0)));
    }
}
