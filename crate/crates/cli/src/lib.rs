//! Report format and exit-code policy shared by the `ghw` binary and its tests.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use simplex_ghw::formulas::FormulaError;

/// Everything one `params` or `hierarchy` run produces. Field order is the
/// JSON key order; there are no floats, so output round-trips byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    /// Field order.
    pub q: u32,
    /// Extension degree over the prime field.
    pub e: u32,
    pub m: usize,
    /// Generators after normalization, 1-based, in canonical order.
    pub sets: Vec<Vec<usize>>,
    pub complement: bool,
    pub n: u128,
    pub k: usize,
    pub hierarchy: Vec<u128>,
    pub provenance: Vec<String>,
    pub method: String,
    pub elapsed_ms: u64,
    /// Per `r`, basis rows of an optimal `H` as element codes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<Vec<u32>>>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report fields are always serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,d_r,provenance,method\n");
        for (i, (d, p)) in self.hierarchy.iter().zip(&self.provenance).enumerate() {
            out.push_str(&format!("{},{d},{p},{}\n", i + 1, self.method));
        }
        out
    }
}

/// First `r` at which two methods disagree, printed when `--method both` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub q: u32,
    pub e: u32,
    pub m: usize,
    pub sets: Vec<Vec<usize>>,
    pub complement: bool,
    pub r: usize,
    pub formula: Option<u128>,
    pub formula_provenance: Option<String>,
    pub brute: Option<u128>,
    /// Basis of the optimal `H` the search found at `r`.
    pub witness: Option<Vec<Vec<u32>>>,
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE: u8 = 2;
    pub const RESOURCE_CAP: u8 = 3;
    pub const MISMATCH: u8 = 4;
    pub const NOT_APPLICABLE: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] simplex_ghw::Error),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use simplex_ghw::Error as E;
        match self {
            CliError::Usage(_) => exit::PARSE,
            CliError::Core(E::EnumerationCap { .. } | E::Overflow) => exit::RESOURCE_CAP,
            CliError::Core(_) => exit::PARSE,
            CliError::Formula(FormulaError::NotApplicable(_) | FormulaError::Precondition(_)) => {
                exit::NOT_APPLICABLE
            }
            CliError::Formula(FormulaError::Overflow) => exit::RESOURCE_CAP,
            CliError::Formula(_) => exit::MISMATCH,
            CliError::Mismatch(_) => exit::MISMATCH,
        }
    }
}
