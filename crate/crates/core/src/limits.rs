//! Desk-scale guardrails. Everything here is brute force, so inputs are kept
//! small: dimension at most 6 (overridable through `NEWTON_MU_MAX_N`) and at
//! most 64 support points.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 6;
pub const MAX_SUPPORT: usize = 64;
pub const MAX_N_ENV: &str = "NEWTON_MU_MAX_N";

pub fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub fn check_dimension(n: usize) -> Result<()> {
    let limit = max_n();
    if n > limit {
        return Err(Error::Guardrail {
            what: "dimension",
            value: n,
            limit,
        });
    }
    Ok(())
}

pub fn check_support_size(size: usize) -> Result<()> {
    if size > MAX_SUPPORT {
        return Err(Error::Guardrail {
            what: "support size",
            value: size,
            limit: MAX_SUPPORT,
        });
    }
    Ok(())
}
