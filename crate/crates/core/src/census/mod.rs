//! Counting and enumerating self-dual DN codes.
//!
//! [`count_self_dual`] evaluates the product formula over the factor profile
//! of `x^n + 1`; [`enumerate_self_dual_bruteforce`] is the exhaustive oracle;
//! [`enumerate_self_dual_crt`] builds the codes from the two-factor CRT
//! decomposition; [`cover_count`] counts the codes containing a given word.

mod cover;
mod crt;

use rayon::prelude::*;

use crate::dncode::{DNCode, RingElement};
use crate::galois::{sqrt_minus_one, Elem, FieldSpec};
use crate::negafactor::FactorizationProfile;
use crate::{checked_pow, Budget, Error, Result};

pub use cover::{cover_count, cover_count_crt, cover_count_exhaustive, CoverCount, CoverQuery};
pub use crt::{enumerate_self_dual_crt, CRTView, TwoFactorSplit};

/// Largest candidate space `q^n` scanned by the exhaustive routines.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

/// Number of self-dual DN codes of length `2n` predicted by the factor profile.
///
/// `n` odd: `2 prod (1 + q^d_j) prod (q^e_j - 1)` (the factor 2 comes from
/// `x + 1`); `n` even: `prod (1 + q^d_j) prod (q^e_j - 1)`.
pub fn count_self_dual(profile: &FactorizationProfile) -> Result<u128> {
    let spec = &profile.spec;
    let q = spec.order();
    if profile.n as u64 % spec.characteristic() == 0 {
        return Err(Error::NotSeparable { n: profile.n, q });
    }
    if profile.n % 2 == 1 && sqrt_minus_one(spec).is_none() {
        return Err(Error::HypothesisUnmet(format!(
            "n = {} is odd and -1 is not a square in F_{q}",
            profile.n
        )));
    }
    let overflow = || Error::Domain("self-dual count overflows u128".into());
    let pow = |e: usize| checked_pow(q, e).ok_or_else(overflow);
    let mut count: u128 = if profile.has_x_plus_1 { 2 } else { 1 };
    for g in &profile.selfrec {
        count = count.checked_mul(pow(g.d)? + 1).ok_or_else(overflow)?;
    }
    for pair in &profile.pairs {
        count = count.checked_mul(pow(pair.e)? - 1).ok_or_else(overflow)?;
    }
    Ok(count)
}

/// `q^n`, or a capacity error if it exceeds [`EXHAUSTIVE_LIMIT`] or the budget.
pub(crate) fn candidate_space(n: usize, spec: &FieldSpec, budget: Budget) -> Result<u64> {
    let size = checked_pow(spec.order(), n).unwrap_or(u128::MAX);
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::Capacity {
            required: size,
            limit: EXHAUSTIVE_LIMIT as u64,
        });
    }
    budget.check(size.saturating_mul(n as u128))?;
    Ok(size as u64)
}

/// The `idx`-th ring element in lexicographic order of `(a_0, ..., a_{n-1})`.
pub(crate) fn nth_element(n: usize, spec: &FieldSpec, mut idx: u64) -> RingElement {
    let q = spec.order();
    let mut coeffs = vec![Elem::ZERO; n];
    for slot in coeffs.iter_mut().rev() {
        *slot = Elem((idx % q) as u32);
        idx /= q;
    }
    RingElement::new(spec, coeffs)
}

/// All `a` with `A A^T = -I` (checked on the matrix), in lexicographic order.
pub fn enumerate_self_dual_bruteforce(
    n: usize,
    spec: &FieldSpec,
    budget: Budget,
) -> Result<Vec<RingElement>> {
    let size = candidate_space(n, spec, budget)?;
    Ok((0..size)
        .into_par_iter()
        .filter_map(|idx| {
            let a = nth_element(n, spec, idx);
            let code = DNCode::new(a);
            code.is_self_dual().then(|| code.a().clone())
        })
        .collect())
}

pub(crate) fn sort_lex(codes: &mut [RingElement]) {
    codes.sort_by_cached_key(RingElement::indices);
}
