//! JSON audit reports.

use serde::Serialize;
use serde_json::Value;

use crate::curve::PolylineEmbedding;
use crate::extension::{COMPRESSION_FACTOR, EXPANSION_FACTOR};
use crate::scalar::{to_f64, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Worst ratio of allowed to observed; at least 1 when the check passes.
    /// Checks without a natural ratio report 1 or 0.
    pub margin: f64,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, margin: f64, details: impl Serialize) -> Self {
        let details = serde_json::to_value(details).unwrap_or(Value::Null);
        Self { name: name.into(), pass, margin: finite(margin), details }
    }

    /// A check whose margin is `margin >= 1`.
    pub fn from_margin(name: impl Into<String>, margin: f64, details: impl Serialize) -> Self {
        Self::new(name, margin >= 1.0, margin, details)
    }
}

/// JSON has no infinities; they are clamped to the largest finite value.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(f64::MIN, f64::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants {
    #[serde(rename = "L")]
    pub lip_upper: f64,
    #[serde(rename = "l")]
    pub lip_lower: f64,
    /// `2000 L`.
    #[serde(rename = "Lp_bound")]
    pub lp_upper: f64,
    /// `l / 120`.
    #[serde(rename = "lp_bound")]
    pub lp_lower: f64,
}

impl Constants {
    pub fn of<T: Real>(curve: &PolylineEmbedding<T>) -> Self {
        let (big, small) = (to_f64(curve.lip_upper()), to_f64(curve.lip_lower()));
        Self { lip_upper: big, lip_lower: small, lp_upper: EXPANSION_FACTOR * big, lp_lower: small / COMPRESSION_FACTOR }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub curve: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub constants: Constants,
}

impl Report {
    pub fn new<T: Real>(curve_id: impl Into<String>, curve: &PolylineEmbedding<T>, seed: u64) -> Self {
        Self { curve: curve_id.into(), seed, checks: Vec::new(), constants: Constants::of(curve) }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
