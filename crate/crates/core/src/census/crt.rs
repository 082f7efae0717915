use rayon::prelude::*;

use super::{enumerate_self_dual_bruteforce, sort_lex};
use crate::dncode::{DNCode, RingElement};
use crate::galois::{Elem, FieldSpec};
use crate::negafactor::profile_for;
use crate::polyring::Polynomial;
use crate::{checked_pow, Budget, Error, Result};

/// `x^n + 1 = h' h''` with `h'' = h'*` irreducible, and the CRT data for
/// `R = F_q[x]/(x^n + 1) = K' x K''`.
#[derive(Debug, Clone)]
pub struct TwoFactorSplit {
    n: usize,
    h_prime: Polynomial,
    h_dprime: Polynomial,
    /// Idempotents: `1 mod h'`, `0 mod h''` and the reverse.
    e_prime: Polynomial,
    e_dprime: Polynomial,
    /// `x^{-1}` in `K'` and `K''`.
    x_inv_prime: Polynomial,
    x_inv_dprime: Polynomial,
}

/// Residues `(a mod h', a mod h'')` of a ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRTView {
    pub a_prime: Polynomial,
    pub a_dprime: Polynomial,
}

impl TwoFactorSplit {
    pub fn new(n: usize, spec: &FieldSpec) -> Result<Self> {
        let profile = profile_for(n, spec)?;
        if !profile.is_two_reciprocal_factors() {
            return Err(Error::HypothesisUnmet(format!(
                "x^{n}+1 over F_{} is not a product of two reciprocal irreducibles",
                spec.order()
            )));
        }
        let pair = &profile.pairs[0];
        let (h1, h2) = (pair.h.clone(), pair.h_star.clone());
        let e_prime = h2.checked_mul(&h2.inv_mod(&h1)?)?;
        let e_dprime = h1.checked_mul(&h1.inv_mod(&h2)?)?;
        let x = Polynomial::x(spec);
        Ok(TwoFactorSplit {
            n,
            x_inv_prime: x.inv_mod(&h1)?,
            x_inv_dprime: x.inv_mod(&h2)?,
            h_prime: h1,
            h_dprime: h2,
            e_prime,
            e_dprime,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        self.h_prime.spec()
    }

    pub fn h_prime(&self) -> &Polynomial {
        &self.h_prime
    }

    pub fn h_dprime(&self) -> &Polynomial {
        &self.h_dprime
    }

    /// Degree `e = n/2` of each component field.
    pub fn component_degree(&self) -> usize {
        self.n / 2
    }

    pub fn project(&self, a: &RingElement) -> Result<CRTView> {
        let p = a.to_polynomial();
        Ok(CRTView {
            a_prime: p.rem(&self.h_prime)?,
            a_dprime: p.rem(&self.h_dprime)?,
        })
    }

    pub fn recombine(&self, view: &CRTView) -> Result<RingElement> {
        let p = view
            .a_prime
            .checked_mul(&self.e_prime)?
            .checked_add(&view.a_dprime.checked_mul(&self.e_dprime)?)?;
        Ok(RingElement::from_polynomial(&p, self.n))
    }

    /// `g(x) -> g(x^{-1})` from `K'` to `K''`.
    pub fn conjugate_into_dprime(&self, g: &Polynomial) -> Result<Polynomial> {
        g.compose_mod(&self.x_inv_dprime, &self.h_dprime)
    }

    /// `g(x) -> g(x^{-1})` from `K''` to `K'`.
    pub fn conjugate_into_prime(&self, g: &Polynomial) -> Result<Polynomial> {
        g.compose_mod(&self.x_inv_prime, &self.h_prime)
    }

    /// The `a''` forced by `a a(x^{-1}) = -1` given `a' != 0`: `a'' = -1 / a'(x^{-1})`.
    pub fn partner(&self, a_prime: &Polynomial) -> Result<Polynomial> {
        let inv = self
            .conjugate_into_dprime(a_prime)?
            .inv_mod(&self.h_dprime)?;
        Ok(-&inv)
    }

    /// The `a'` forced by `a'' != 0`.
    pub fn partner_of_dprime(&self, a_dprime: &Polynomial) -> Result<Polynomial> {
        let inv = self
            .conjugate_into_prime(a_dprime)?
            .inv_mod(&self.h_prime)?;
        Ok(-&inv)
    }
}

/// Element of `K'` with index `idx` (coefficient `i` is digit `i` base `q`).
pub(crate) fn component_element(spec: &FieldSpec, e: usize, mut idx: u64) -> Polynomial {
    let q = spec.order();
    let coeffs = (0..e)
        .map(|_| {
            let c = Elem((idx % q) as u32);
            idx /= q;
            c
        })
        .collect();
    Polynomial::new(spec, coeffs)
}

/// Self-dual DN codes built from the two-factor decomposition: every nonzero
/// `a'` in `K'` paired with its forced `a''`, recombined and checked on the matrix.
pub fn enumerate_self_dual_crt(
    n: usize,
    spec: &FieldSpec,
    budget: Budget,
) -> Result<Vec<RingElement>> {
    let split = TwoFactorSplit::new(n, spec)?;
    let e = split.component_degree();
    let size = checked_pow(spec.order(), e).unwrap_or(u128::MAX);
    budget.check(size.saturating_mul(n as u128 * n as u128))?;
    let size = size as u64;
    let candidates: Vec<Result<Option<RingElement>>> = (1..size)
        .into_par_iter()
        .map(|idx| {
            let a_prime = component_element(spec, e, idx);
            let a_dprime = split.partner(&a_prime)?;
            let a = split.recombine(&CRTView { a_prime, a_dprime })?;
            let code = DNCode::new(a);
            Ok(code.is_self_dual().then(|| code.a().clone()))
        })
        .collect();
    let mut found = Vec::new();
    for c in candidates {
        found.extend(c?);
    }
    if (found.len() as u64) < size - 1 {
        log::warn!(
            "CRT construction verified {} of {} codes for q={} n={n}; falling back to exhaustive filtering",
            found.len(),
            size - 1,
            spec.order()
        );
        return enumerate_self_dual_bruteforce(n, spec, budget);
    }
    sort_lex(&mut found);
    Ok(found)
}
