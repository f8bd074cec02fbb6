use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::qexact::LaurentSeries;

/// Unit in which a report's exponents are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ExponentUnit {
    /// Exponents are powers of `q^(1/2)`; the crate-wide default.
    #[default]
    #[serde(rename = "q^(1/2)")]
    HalfQ,
    /// Exponents are powers of `q^(1/4)`, needed by spinor characters at
    /// half-integer points.
    #[serde(rename = "q^(1/4)")]
    QuarterQ,
}

/// Outcome of checking one identity at one parameter point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    /// Both sides are compared below this exponent (in `unit`s).
    pub trunc_twice: i64,
    #[serde(default, skip_serializing_if = "is_default_unit")]
    pub unit: ExponentUnit,
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
    pub diff: LaurentSeries,
    pub pass: bool,
    pub elapsed_ms: u64,
}

fn is_default_unit(u: &ExponentUnit) -> bool {
    *u == ExponentUnit::HalfQ
}

impl VerifyReport {
    /// Builds the report from the two sides; `pass` iff they agree below `trunc`.
    pub fn compare(
        identity: &str,
        params: BTreeMap<String, Value>,
        trunc: i64,
        lhs: LaurentSeries,
        rhs: LaurentSeries,
    ) -> Self {
        let lhs = lhs.truncate(trunc);
        let rhs = rhs.truncate(trunc);
        let common = lhs.trunc().unwrap_or(trunc).min(rhs.trunc().unwrap_or(trunc));
        let diff = (&lhs - &rhs).truncate(common);
        // Insufficient precision on either side is a failure, not a pass.
        let pass = diff.is_zero() && common >= trunc;
        VerifyReport {
            identity: identity.to_string(),
            params,
            trunc_twice: trunc,
            unit: ExponentUnit::HalfQ,
            lhs,
            rhs,
            diff,
            pass,
            elapsed_ms: 0,
        }
    }

    pub fn with_unit(mut self, unit: ExponentUnit) -> Self {
        self.unit = unit;
        self
    }

    pub fn with_elapsed(mut self, ms: u64) -> Self {
        self.elapsed_ms = ms;
        self
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{:<5} {:<14} {} (trunc {} in {}, {} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            params.join(" "),
            self.trunc_twice,
            match self.unit {
                ExponentUnit::HalfQ => "q^(1/2)",
                ExponentUnit::QuarterQ => "q^(1/4)",
            },
            self.elapsed_ms
        )
    }
}

#[macro_export]
macro_rules! params {
    ($($k:literal => $v:expr),* $(,)?) => {{
        let mut m = ::std::collections::BTreeMap::new();
        $( m.insert($k.to_string(), ::serde_json::json!($v)); )*
        m
    }};
}
