//! Exact T-count bookkeeping and the report type shared by the estimators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::gates::KickbackConstant;

/// Name of the breakdown entry that holds synthesized-rotation costs.
pub const ROTATIONS: &str = "rotations";

/// Running T-count with exact integer parts and a real rotation part.
///
/// Integer contributions are kept per category in 128-bit integers so that
/// repetition counts in the tens of thousands multiply exactly. Rotation
/// costs stay real until [`CostTally::finish`] rounds them up once.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostTally {
    parts: BTreeMap<&'static str, i128>,
    rotations: f64,
}

impl CostTally {
    /// Empty tally.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an integer contribution to `category`.
    pub fn add(&mut self, category: &'static str, count: i128) -> &mut Self {
        *self.parts.entry(category).or_insert(0) += count;
        self
    }

    /// Adds a real rotation cost.
    pub fn add_rotations(&mut self, cost: f64) -> &mut Self {
        self.rotations += cost;
        self
    }

    /// Adds every entry of `other`.
    pub fn merge(&mut self, other: &CostTally) -> &mut Self {
        for (k, v) in &other.parts {
            self.add(k, *v);
        }
        self.rotations += other.rotations;
        self
    }

    /// Returns `factor` copies of this tally.
    pub fn scaled(&self, factor: u64) -> CostTally {
        CostTally {
            parts: self
                .parts
                .iter()
                .map(|(k, v)| (*k, v * i128::from(factor)))
                .collect(),
            rotations: self.rotations * factor as f64,
        }
    }

    /// Integer part of `category`.
    pub fn part(&self, category: &str) -> i128 {
        self.parts.get(category).copied().unwrap_or(0)
    }

    /// Unrounded rotation cost.
    pub fn rotations(&self) -> f64 {
        self.rotations
    }

    /// Real-valued total before rounding.
    pub fn total_real(&self) -> f64 {
        self.parts.values().sum::<i128>() as f64 + self.rotations
    }

    /// Rounds the rotation part up and returns the total and the breakdown
    /// under the given name for the rotation entry.
    ///
    /// The total equals the sum of the returned breakdown entries.
    pub fn finish_as(&self, rotation_key: &str) -> (u128, BTreeMap<String, i128>) {
        let mut breakdown: BTreeMap<String, i128> = self
            .parts
            .iter()
            .map(|(k, v)| ((*k).to_string(), *v))
            .collect();
        if self.rotations != 0.0 {
            breakdown.insert(rotation_key.to_string(), self.rotations.ceil() as i128);
        }
        let total: i128 = breakdown.values().sum();
        (total.max(0) as u128, breakdown)
    }

    /// [`CostTally::finish_as`] with the default rotation entry name.
    pub fn finish(&self) -> (u128, BTreeMap<String, i128>) {
        self.finish_as(ROTATIONS)
    }
}

/// Whether `R` uses a binary or natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    /// Logarithm of `x` in this base.
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    /// Name used in configuration and reports.
    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(format!("unknown log base `{other}` (expected 2 or e)")),
        }
    }
}

/// Accounting conventions that change reported totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Accounting {
    /// Count the two spin/isospin qubits per nucleon in the system register.
    pub include_internal: bool,
    /// Constant in the diagonal-unitary cost of the kinetic exponential.
    pub kickback: KickbackConstant,
    /// Logarithm base in the QSP repetition count.
    pub qsp_log_base: LogBase,
}

impl Accounting {
    /// System register size: `η·d·m`, plus `2η` when internal qubits count.
    pub fn system_qubits(&self, eta: u64, dm: u64) -> u64 {
        eta * dm + if self.include_internal { 2 * eta } else { 0 }
    }
}

/// T-count and qubit totals of an evolution or subroutine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    /// Total T gates, with rotation costs rounded up once.
    pub t_count: u128,
    pub system_qubits: u64,
    pub ancilla_qubits: u64,
    pub total_qubits: u64,
    /// Number of product-formula steps, when applicable.
    pub steps: Option<u64>,
    /// Named sub-costs; they sum to `t_count`.
    pub breakdown: BTreeMap<String, i128>,
    /// Named register sizes.
    pub registers: BTreeMap<String, u64>,
    /// Degenerate-input notes.
    pub warnings: Vec<String>,
}

impl CostReport {
    /// Builds a report from a tally and qubit counts.
    pub fn from_tally(tally: &CostTally, system_qubits: u64, ancilla_qubits: u64) -> Self {
        let (t_count, breakdown) = tally.finish();
        CostReport {
            t_count,
            system_qubits,
            ancilla_qubits,
            total_qubits: system_qubits + ancilla_qubits,
            steps: None,
            breakdown,
            registers: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_rounds_once() {
        let mut t = CostTally::new();
        t.add("potential", 10).add_rotations(0.3);
        let ten = t.scaled(10);
        let (total, parts) = ten.finish();
        assert_eq!(total, 103);
        assert_eq!(parts.values().sum::<i128>() as u128, total);
        let mut sum = CostTally::new();
        for _ in 0..10 {
            sum.merge(&t);
        }
        assert_eq!(sum.finish().0, 103);
    }

    #[test]
    fn tally_is_exact_beyond_f64_integers() {
        let mut t = CostTally::new();
        t.add("kinetic", (1i128 << 53) + 1);
        let (total, _) = t.scaled(3).finish();
        assert_eq!(total, 3 * ((1u128 << 53) + 1));
    }
}
