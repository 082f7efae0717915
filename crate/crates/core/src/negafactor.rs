//! Closed-form factorizations of `x^(2^v) + 1` over `F_q`, `q` odd, and the
//! factor-shape profile of `x^n + 1` used to count self-dual DN codes.
//!
//! With `n = 2^v` and the [`TwoAdicProfile`] `A` of `q`:
//!
//! | case | factors |
//! |------|---------|
//! | `q = 3 mod 4`, `v < A` | `x^2 + g x + 1`, `g` a root of `D_{2^(v-1)}(x, 1)` |
//! | `q = 3 mod 4`, `v >= A` | `x^(2^(v-A+1)) + d x^(2^(v-A)) - 1`, `d` a root of `D_{2^(A-1)}(x, -1)` |
//! | `q = 1 mod 4`, `v <= A` | `x + u`, `u` of order `2^(v+1)` |
//! | `q = 1 mod 4`, `v > A` | `x^(2^(v-A)) + u`, `u` of order `2^(A+1)` |
//!
//! For `q = 1 mod 4` the profile uses `q = 2^(A+1) m + 1`, so `q = 5` has `A = 1`.

use serde::Serialize;

use crate::galois::{
    primitive_2k_roots, two_adic_profile, Elem, FieldSpec, TwoAdicBranch, TwoAdicProfile,
};
use crate::polyring::{dickson, roots_in_field, Polynomial};
use crate::{Error, Result};

/// Which closed form applies to `(q, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedFormCase {
    /// `q = 3 mod 4`, `v < A`: `2^(v-1)` trinomials `x^2 + g x + 1`.
    SplitTrinomials,
    /// `q = 3 mod 4`, `v >= A`: `2^(A-1)` trinomials of degree `2^(v-A+1)`.
    WideTrinomials,
    /// `q = 1 mod 4`, `v <= A`: `2^v` linear factors.
    Linear,
    /// `q = 1 mod 4`, `v > A`: `2^A` binomials of degree `2^(v-A)`.
    Binomials,
}

impl ClosedFormCase {
    /// Classifies `n = 2^v`, returning the case and the predicted factor count.
    pub fn classify(n: usize, q: u64) -> Result<(ClosedFormCase, TwoAdicProfile, usize)> {
        let v = power_of_two_exponent(n)?;
        let prof = two_adic_profile(q)?;
        let a = prof.a;
        Ok(match prof.branch {
            TwoAdicBranch::ThreeMod4 if v < a => {
                (ClosedFormCase::SplitTrinomials, prof, 1 << (v - 1))
            }
            TwoAdicBranch::ThreeMod4 => (ClosedFormCase::WideTrinomials, prof, 1 << (a - 1)),
            TwoAdicBranch::OneMod4 if v <= a => (ClosedFormCase::Linear, prof, 1 << v),
            TwoAdicBranch::OneMod4 => (ClosedFormCase::Binomials, prof, 1 << a),
        })
    }
}

fn power_of_two_exponent(n: usize) -> Result<u32> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::UnsupportedLength(n));
    }
    Ok(n.trailing_zeros())
}

fn expect_count<T>(items: Vec<T>, expected: usize, what: &str) -> Result<Vec<T>> {
    if items.len() == expected {
        Ok(items)
    } else {
        Err(Error::InternalTheoremViolation(format!(
            "{what}: expected {expected} elements, found {}",
            items.len()
        )))
    }
}

/// Factors `x^n + 1` for `n = 2^v`, `v >= 1`, using the closed forms only.
/// The result is sorted like [`crate::polyring::factor_xn_plus_1_generic`].
pub fn factor_closed_form(n: usize, spec: &FieldSpec) -> Result<Vec<Polynomial>> {
    let (case, prof, count) = ClosedFormCase::classify(n, spec.order())?;
    let v = n.trailing_zeros();
    let a = prof.a;
    let one = spec.element(Elem::ONE);
    let minus_one = spec.neg(Elem::ONE);
    let mut factors: Vec<Polynomial> = match case {
        ClosedFormCase::SplitTrinomials => {
            let gammas = roots_in_field(&dickson(1 << (v - 1), &one))?;
            expect_count(gammas, count, "roots of D_{2^(v-1)}(x, 1)")?
                .into_iter()
                .map(|g| Polynomial::new(spec, vec![Elem::ONE, g, Elem::ONE]))
                .collect()
        }
        ClosedFormCase::WideTrinomials => {
            let deltas = roots_in_field(&dickson(1 << (a - 1), &one.neg()))?;
            let low = 1usize << (v - a);
            expect_count(deltas, count, "roots of D_{2^(A-1)}(x, -1)")?
                .into_iter()
                .map(|d| {
                    let mut c = vec![Elem::ZERO; 2 * low + 1];
                    c[0] = minus_one;
                    c[low] = d;
                    c[2 * low] = Elem::ONE;
                    Polynomial::new(spec, c)
                })
                .collect()
        }
        ClosedFormCase::Linear => expect_count(primitive_2k_roots(spec, v + 1), count, "U_{v+1}")?
            .into_iter()
            .map(|u| Polynomial::binomial(spec, 1, u))
            .collect(),
        ClosedFormCase::Binomials => {
            expect_count(primitive_2k_roots(spec, a + 1), count, "U_{A+1}")?
                .into_iter()
                .map(|u| Polynomial::binomial(spec, 1 << (v - a), u))
                .collect()
        }
    };
    factors.sort();
    Ok(factors)
}

/// A self-reciprocal irreducible factor `g` of degree `2d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfReciprocal {
    pub g: Polynomial,
    pub d: usize,
}

/// A reciprocal pair `(h, h*)` of distinct irreducibles of degree `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalPair {
    pub h: Polynomial,
    pub h_star: Polynomial,
    pub e: usize,
}

/// Shape of the factorization `x^n + 1 = alpha * prod g_j * prod h_j h_j*`.
///
/// `x + 1` (present exactly when `n` is odd) is tracked by `has_x_plus_1`
/// rather than listed in `selfrec`; [`FactorizationProfile::s`] counts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationProfile {
    pub spec: FieldSpec,
    pub n: usize,
    pub selfrec: Vec<SelfReciprocal>,
    pub pairs: Vec<ReciprocalPair>,
    pub has_x_plus_1: bool,
    pub alpha_lead: Elem,
}

/// JSON form of a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRecord {
    pub q: u64,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub d: Vec<usize>,
    pub e: Vec<usize>,
    pub has_x_plus_1: bool,
}

impl FactorizationProfile {
    /// Number of self-reciprocal factors, `x + 1` included.
    pub fn s(&self) -> usize {
        self.selfrec.len() + usize::from(self.has_x_plus_1)
    }

    /// Number of reciprocal pairs.
    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    /// All factors, sorted.
    pub fn factors(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = self.selfrec.iter().map(|g| g.g.clone()).collect();
        if self.has_x_plus_1 {
            out.push(Polynomial::binomial(&self.spec, 1, Elem::ONE));
        }
        for pair in &self.pairs {
            out.push(pair.h.clone());
            out.push(pair.h_star.clone());
        }
        out.sort();
        out
    }

    /// `sum deg g_j + 2 sum e_j (+1 for x + 1)`.
    pub fn total_degree(&self) -> usize {
        self.selfrec.iter().map(|g| 2 * g.d).sum::<usize>()
            + 2 * self.pairs.iter().map(|p| p.e).sum::<usize>()
            + usize::from(self.has_x_plus_1)
    }

    /// True for the shape `x^n + 1 = h h*` with `h` irreducible.
    pub fn is_two_reciprocal_factors(&self) -> bool {
        self.selfrec.is_empty() && !self.has_x_plus_1 && self.pairs.len() == 1
    }

    pub fn record(&self) -> ProfileRecord {
        ProfileRecord {
            q: self.spec.order(),
            n: self.n,
            s: self.s(),
            t: self.t(),
            d: self.selfrec.iter().map(|g| g.d).collect(),
            e: self.pairs.iter().map(|p| p.e).collect(),
            has_x_plus_1: self.has_x_plus_1,
        }
    }
}

/// Partitions monic irreducible factors of `x^n + 1` into self-reciprocal
/// factors and reciprocal pairs.
pub fn profile_of(factors: &[Polynomial], n: usize) -> Result<FactorizationProfile> {
    let spec = factors
        .first()
        .map(|f| f.spec().clone())
        .ok_or_else(|| Error::MalformedFactorization("no factors".into()))?;
    let mut pool: Vec<Polynomial> = factors.iter().map(Polynomial::monic).collect();
    pool.sort();
    let x_plus_1 = Polynomial::binomial(&spec, 1, Elem::ONE);
    let mut profile = FactorizationProfile {
        spec: spec.clone(),
        n,
        selfrec: Vec::new(),
        pairs: Vec::new(),
        has_x_plus_1: false,
        alpha_lead: Elem::ONE,
    };
    while !pool.is_empty() {
        let f = pool.remove(0);
        let r = f
            .reciprocal()
            .map_err(|_| Error::MalformedFactorization(format!("{f} vanishes at 0")))?;
        if r == f {
            let deg = f.degree().unwrap_or(0);
            if f == x_plus_1 && !profile.has_x_plus_1 {
                profile.has_x_plus_1 = true;
            } else if deg % 2 == 0 && deg > 0 {
                profile.selfrec.push(SelfReciprocal { d: deg / 2, g: f });
            } else {
                return Err(Error::MalformedFactorization(format!(
                    "unexpected self-reciprocal factor {f}"
                )));
            }
        } else {
            let pos = pool.iter().position(|g| *g == r).ok_or_else(|| {
                Error::MalformedFactorization(format!("reciprocal {r} of {f} is missing"))
            })?;
            let h_star = pool.remove(pos);
            let e = f.degree().unwrap_or(0);
            profile.pairs.push(ReciprocalPair { h: f, h_star, e });
        }
    }
    if profile.total_degree() != n {
        return Err(Error::MalformedFactorization(format!(
            "factor degrees sum to {}, expected {n}",
            profile.total_degree()
        )));
    }
    Ok(profile)
}

/// Profile of `x^n + 1` from the generic factorizer (any `n` coprime to `q`).
pub fn profile_for(n: usize, spec: &FieldSpec) -> Result<FactorizationProfile> {
    profile_of(&crate::polyring::factor_xn_plus_1_generic(n, spec)?, n)
}
