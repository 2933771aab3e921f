//! Enumeration caps shared by every brute-force path.

use crate::error::{Error, Result};

/// Environment variable read by [`Limits::from_env`].
pub const MAX_ENUM_ENV: &str = "GHW_MAX_ENUM";

/// Default number of candidates a single enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

/// Largest field order accepted by [`crate::field::Field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of items (vectors or subspaces) enumerated per call.
    pub max_enum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_enum: DEFAULT_MAX_ENUM,
        }
    }
}

impl Limits {
    pub fn new(max_enum: u64) -> Self {
        Self { max_enum }
    }

    /// Reads `GHW_MAX_ENUM`, falling back to the default when unset.
    /// A value that does not parse as an integer is reported as an error.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(MAX_ENUM_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u64>()
                .map(Self::new)
                .map_err(|_| format!("{MAX_ENUM_ENV}={raw:?} is not a non-negative integer")),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Fails with [`Error::EnumerationCap`] when `required` exceeds the cap.
    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.max_enum as u128 {
            Err(Error::EnumerationCap {
                required,
                cap: self.max_enum,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` as an exact `u128`.
pub(crate) fn checked_pow(base: u64, exp: u32) -> Result<u128> {
    (base as u128).checked_pow(exp).ok_or(Error::Overflow)
}
