//! Per-rule counts for derivations in either calculus.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub const SC_RULES: [&str; 6] = ["ax", "id", "exch", "par", "tensor", "cut"];
pub const DI_RULES: [&str; 10] = [
    "ai-down",
    "i-down",
    "ai-up",
    "i-up",
    "sigma-up",
    "sigma-down",
    "alpha-up",
    "alpha-down",
    "switch",
    "sigma-switch",
];

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RuleMetrics(BTreeMap<&'static str, u64>);

impl RuleMetrics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bump(&mut self, rule: &'static str) {
        *self.0.entry(rule).or_insert(0) += 1;
    }

    pub fn get(&self, rule: &str) -> u64 {
        self.0.get(rule).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Nonzero entries, sorted by rule name.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.0.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v))
    }

    pub fn switch_family(&self) -> u64 {
        self.get("switch") + self.get("sigma-switch")
    }

    pub fn up_family(&self) -> u64 {
        self.get("i-up") + self.get("ai-up")
    }
}

impl fmt::Display for RuleMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
