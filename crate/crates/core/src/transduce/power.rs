//! Linear shift of the fundamental mechanical frequency with guided probe
//! power, `f_1(P) = f_1^0 + beta P`, consistent with absorption-driven
//! thermal expansion relaxing the tension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerShiftModel {
    /// Bare frequency at zero probe power, Hz.
    pub f1_zero: f64,
    /// Power slope, Hz/W.
    pub beta: f64,
}

impl Default for PowerShiftModel {
    /// Fitted reference-device values: f_1^0 = 2 385 812 Hz,
    /// beta = -1.31 Hz/uW.
    fn default() -> Self {
        PowerShiftModel {
            f1_zero: 2_385_812.0,
            beta: -1.31e6,
        }
    }
}

impl PowerShiftModel {
    /// Mode frequency at probe power `p_out` (W).
    pub fn frequency(&self, p_out: f64) -> Result<f64> {
        if p_out < 0.0 {
            return Err(Error::Domain("probe power must be non-negative".into()));
        }
        Ok(self.f1_zero + self.beta * p_out)
    }
}
