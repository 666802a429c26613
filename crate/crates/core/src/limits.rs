//! Carrier-size caps for the exhaustive procedures.

use std::env;

/// Environment variable overriding the caps. Either a single integer that
/// applies to every cap, or a comma list such as `explicit=5000,riesz=64`.
pub const BUDGET_VAR: &str = "KITELAB_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest explicit kite carrier that will be materialized.
    pub explicit_carrier: usize,
    /// Largest carrier for RIP/RDP-family checks.
    pub riesz_carrier: usize,
    /// Largest carrier for ideal enumeration.
    pub ideal_carrier: usize,
    /// Largest carrier for state polytope enumeration.
    pub state_carrier: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            explicit_carrier: 20_000,
            riesz_carrier: 40,
            ideal_carrier: 64,
            state_carrier: 24,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `KITELAB_BUDGET` when set and well-formed.
    pub fn from_env() -> Self {
        match env::var(BUDGET_VAR) {
            Ok(spec) => Self::default().with_overrides(&spec).unwrap_or_default(),
            Err(_) => Self::default(),
        }
    }

    /// Applies an override string; `None` when it does not parse.
    pub fn with_overrides(mut self, spec: &str) -> Option<Self> {
        let spec = spec.trim();
        if let Ok(all) = spec.parse::<usize>() {
            return Some(Limits {
                explicit_carrier: all,
                riesz_carrier: all,
                ideal_carrier: all,
                state_carrier: all,
            });
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=')?;
            let value: usize = value.trim().parse().ok()?;
            match key.trim() {
                "explicit" => self.explicit_carrier = value,
                "riesz" => self.riesz_carrier = value,
                "ideals" => self.ideal_carrier = value,
                "states" => self.state_carrier = value,
                _ => return None,
            }
        }
        Some(self)
    }

    /// Every cap raised to at least `n`.
    pub fn at_least(self, n: usize) -> Self {
        Limits {
            explicit_carrier: self.explicit_carrier.max(n),
            riesz_carrier: self.riesz_carrier.max(n),
            ideal_carrier: self.ideal_carrier.max(n),
            state_carrier: self.state_carrier.max(n),
        }
    }
}
