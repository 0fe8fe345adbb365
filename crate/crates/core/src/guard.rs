//! Size guards for exhaustive enumeration.
//!
//! Every enumeration checks its search-space size against a limit before
//! starting. Limits can be raised by setting `GDK_GUARD_OVERRIDE` to a
//! positive integer factor; unset (or `0`/`off`) keeps the defaults.

use crate::error::{Error, Result};

pub const GROUP_ORDER: u128 = 720;
pub const COCYCLE_CANDIDATES: u128 = 10_000_000;
pub const CAT_OBJECTS: u128 = 64;
pub const CAT_MORPHISMS: u128 = 4096;
pub const CAT_FAMILIES: u128 = 1_000_000;
pub const FIELD_SIZE: u128 = 10_000;
pub const MATRIX_GROUP: u128 = 50_000;
pub const SOLUTION_SPACE: u128 = 1_000_000;

pub fn factor() -> u128 {
    match std::env::var("GDK_GUARD_OVERRIDE") {
        Ok(v) => match v.trim() {
            "" | "0" | "off" => 1,
            s => s.parse::<u128>().unwrap_or(1).max(1),
        },
        Err(_) => 1,
    }
}

pub fn limit(default: u128) -> u128 {
    default.saturating_mul(factor())
}

pub fn check(what: &'static str, size: u128, default: u128) -> Result<()> {
    let limit = limit(default);
    if size > limit {
        Err(Error::Guard { what, size, limit })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating.
pub fn pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
