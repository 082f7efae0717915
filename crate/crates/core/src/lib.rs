//! Double negacirculant (DN) codes over odd-characteristic finite fields.
//!
//! A DN code of length `2n` over `F_q` has a generator matrix `(I | A)` where
//! `A` is the negacirculant matrix of a ring element `a` of
//! `R(n, F_q) = F_q[x]/(x^n + 1)`. The crate covers
//!
//! - exact arithmetic in `F_q` and `F_q[x]` ([`galois`], [`polyring`]),
//! - closed-form factorizations of `x^(2^v) + 1` and the factor-shape profile
//!   that drives self-dual counting ([`negafactor`]),
//! - code construction, exhaustive minimum distance and the dihedral symmetry
//!   witness of self-dual codes ([`dncode`]),
//! - enumeration and counting of self-dual DN codes ([`census`]),
//! - the q-ary entropy function and the `H_q(delta) = 1/4` threshold
//!   ([`asymptote`]),
//! - the `negacode` command-line front end ([`cli`]).

pub mod asymptote;
pub mod census;
pub mod cli;
pub mod dncode;
mod error;
pub mod galois;
pub mod negafactor;
pub mod polyring;

pub use error::{Error, Result};

/// Default ceiling on work units (roughly codeword-symbol operations).
pub const DEFAULT_WORK_LIMIT: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_WORK_LIMIT`] in the CLI.
pub const CAPACITY_ENV: &str = "NEGACODE_CAPACITY";

/// Work ceiling for exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            work: DEFAULT_WORK_LIMIT,
        }
    }
}

impl Budget {
    pub fn new(work: u64) -> Self {
        Budget { work }
    }

    /// Reads [`CAPACITY_ENV`]; falls back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(CAPACITY_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    /// Fails with [`Error::Capacity`] if `required` exceeds the ceiling.
    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.work as u128 {
            Err(Error::Capacity {
                required,
                limit: self.work,
            })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` as `u128`, `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
