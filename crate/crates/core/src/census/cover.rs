use rayon::prelude::*;

use super::crt::TwoFactorSplit;
use super::{candidate_space, nth_element};
use crate::dncode::{hamming_weight, DNCode, RingElement};
use crate::galois::{Elem, FieldSpec};
use crate::polyring::Polynomial;
use crate::{checked_pow, Budget, Error, Result};

/// A nonzero word `u = (c, d)` of length `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverQuery {
    c: RingElement,
    d: RingElement,
}

impl CoverQuery {
    pub fn new(spec: &FieldSpec, u: &[Elem]) -> Result<Self> {
        if u.len() % 2 == 1 || u.is_empty() {
            return Err(Error::Domain(format!(
                "word length {} is not of the form 2n",
                u.len()
            )));
        }
        if u.iter().all(|x| x.is_zero()) {
            return Err(Error::Domain("the zero word lies in every code".into()));
        }
        let n = u.len() / 2;
        Ok(CoverQuery {
            c: RingElement::new(spec, u[..n].to_vec()),
            d: RingElement::new(spec, u[n..].to_vec()),
        })
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn weight(&self) -> usize {
        hamming_weight(self.c.coeffs()) + hamming_weight(self.d.coeffs())
    }

    /// `u` lies in the DN code of `a` iff `d = c a` in `R`.
    fn covered_by(&self, a: &RingElement) -> bool {
        self.c.mul(a) == self.d
    }
}

/// `total` codes contain the word; `self_dual` of them are self-dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverCount {
    pub total: u128,
    pub self_dual: u128,
}

/// Scans every `a` in `R`.
pub fn cover_count_exhaustive(query: &CoverQuery, budget: Budget) -> Result<CoverCount> {
    let n = query.n();
    let spec = query.c.spec();
    let size = candidate_space(n, spec, budget)?;
    let (total, self_dual) = (0..size)
        .into_par_iter()
        .map(|idx| {
            let a = nth_element(n, spec, idx);
            if !query.covered_by(&a) {
                return (0u128, 0u128);
            }
            (1, u128::from(DNCode::new(a).is_self_dual()))
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(CoverCount { total, self_dual })
}

/// Solutions of `d = c a` in one component field.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Component {
    One(Polynomial),
    None,
    All,
}

fn solve_component(c: &Polynomial, d: &Polynomial, h: &Polynomial) -> Result<Component> {
    Ok(match (c.is_zero(), d.is_zero()) {
        (false, _) => Component::One(d.mul_mod(&c.inv_mod(h)?, h)?),
        (true, false) => Component::None,
        (true, true) => Component::All,
    })
}

/// Counts by case analysis in `K' x K''` for the two-factor shape.
pub fn cover_count_crt(query: &CoverQuery, split: &TwoFactorSplit) -> Result<CoverCount> {
    if query.n() != split.n() {
        return Err(Error::Length {
            expected: split.n(),
            got: query.n(),
        });
    }
    let cv = split.project(&query.c)?;
    let dv = split.project(&query.d)?;
    let first = solve_component(&cv.a_prime, &dv.a_prime, split.h_prime())?;
    let second = solve_component(&cv.a_dprime, &dv.a_dprime, split.h_dprime())?;
    let field_size =
        checked_pow(split.spec().order(), split.component_degree()).unwrap_or(u128::MAX);
    let size_of = |c: &Component| match c {
        Component::One(_) => 1,
        Component::None => 0,
        Component::All => field_size,
    };
    let total = size_of(&first).saturating_mul(size_of(&second));
    // Self-dual pairs are (a', partner(a')) with a' != 0.
    let self_dual = match (&first, &second) {
        (Component::None, _) | (_, Component::None) => 0,
        (Component::One(x), Component::One(y)) => {
            u128::from(!x.is_zero() && split.partner(x)? == *y)
        }
        (Component::One(x), Component::All) => u128::from(!x.is_zero()),
        (Component::All, Component::One(y)) => u128::from(!y.is_zero()),
        (Component::All, Component::All) => field_size - 1,
    };
    Ok(CoverCount { total, self_dual })
}

/// Exhaustive when `q^n` fits, otherwise the two-factor case analysis.
///
/// In the two-factor case a nonzero word of weight `< n` lies in at most
/// `q^(n/2)` DN codes and in at most one self-dual one; a violation is
/// reported as [`Error::InternalTheoremViolation`].
pub fn cover_count(query: &CoverQuery, spec: &FieldSpec, budget: Budget) -> Result<CoverCount> {
    let n = query.n();
    let split = TwoFactorSplit::new(n, spec).ok();
    let count = match cover_count_exhaustive(query, budget) {
        Ok(c) => c,
        Err(Error::Capacity { .. }) if split.is_some() => {
            cover_count_crt(query, split.as_ref().unwrap())?
        }
        Err(e) => return Err(e),
    };
    if split.is_some() && query.weight() < n {
        let bound = checked_pow(spec.order(), n / 2).unwrap_or(u128::MAX);
        if count.total > bound || count.self_dual > 1 {
            return Err(Error::InternalTheoremViolation(format!(
                "word of weight {} covered by {} codes ({} self-dual)",
                query.weight(),
                count.total,
                count.self_dual
            )));
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn word(f: &FieldSpec, v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn examples() {
        let f = field(3);
        let b = Budget::default();
        // c = 1, d = x: a = x uniquely.
        let q1 = CoverQuery::new(&f, &word(&f, &[1, 0, 0, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(cover_count(&q1, &f, b).unwrap().total, 1);
        // c = h', d = 0: a' free, a'' = 0.
        let split = TwoFactorSplit::new(4, &f).unwrap();
        let mut c: Vec<Elem> = split.h_prime().coeffs().to_vec();
        c.resize(4, Elem::ZERO);
        c.extend([Elem::ZERO; 4]);
        let q2 = CoverQuery::new(&f, &c).unwrap();
        assert_eq!(
            cover_count(&q2, &f, b).unwrap(),
            CoverCount {
                total: 9,
                self_dual: 0
            }
        );
        assert!(matches!(
            CoverQuery::new(&f, &[Elem::ZERO; 8]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn crt_counts_match_exhaustive() {
        let b = Budget::default();
        for (q, n) in [(3u64, 4usize), (5, 2)] {
            let f = field(q);
            let split = TwoFactorSplit::new(n, &f).unwrap();
            let size = f.order().pow(2 * n as u32);
            for idx in (1..size).step_by(7) {
                let u = nth_element(2 * n, &f, idx);
                let query = CoverQuery::new(&f, u.coeffs()).unwrap();
                assert_eq!(
                    cover_count_crt(&query, &split).unwrap(),
                    cover_count_exhaustive(&query, b).unwrap(),
                    "q={q} u={:?}",
                    u.indices()
                );
            }
        }
    }

    #[test]
    fn crt_path_used_beyond_capacity() {
        let f = field(3);
        let mut u = vec![Elem::ZERO; 32];
        u[0] = Elem::ONE;
        u[17] = Elem::ONE;
        let query = CoverQuery::new(&f, &u).unwrap();
        let count = cover_count(&query, &f, Budget::default()).unwrap();
        assert_eq!(
            count,
            CoverCount {
                total: 1,
                self_dual: 0
            }
        );
    }
}
