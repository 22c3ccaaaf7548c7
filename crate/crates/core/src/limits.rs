//! Processing caps for exhaustive sweeps and coset enumeration.

use std::env;

/// Environment variable overriding [`Limits::element_cap`].
pub const CAP_ENV: &str = "HALLRAD_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which element sweeps (class representatives,
    /// conjugacy searches) are exhaustive.
    pub element_cap: u128,
    /// Largest index accepted by coset enumeration.
    pub coset_cap: u128,
    /// Largest degree produced by the constructions.
    pub degree_cap: usize,
    /// Mixed into every seed; two runs with different salts make
    /// independent random choices.
    pub salt: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 100_000,
            coset_cap: 1_000_000,
            degree_cap: 100_000,
            salt: 0,
        }
    }
}

impl Limits {
    /// Defaults, with `HALLRAD_CAP` applied when it parses.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(cap) = env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.element_cap = cap;
        }
        limits
    }

    pub fn with_salt(mut self, salt: u64) -> Limits {
        self.salt = salt;
        self
    }

    pub fn with_element_cap(mut self, cap: u128) -> Limits {
        self.element_cap = cap;
        self
    }
}
