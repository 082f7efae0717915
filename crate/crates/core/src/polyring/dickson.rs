//! Dickson polynomials of the first kind.

use super::Polynomial;
use crate::galois::{Elem, FieldElement};

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// `C(n, k) mod p` for `k <= n < p`.
fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The integer `n/(n-j) * C(n-j, j)` reduced mod `p`, using
/// `n/(n-j) C(n-j, j) = C(n-j, j) + C(n-j-1, j-1)` for `j >= 1`.
pub fn dickson_coefficient_mod_p(n: u64, j: u64, p: u64) -> u64 {
    if j == 0 {
        return 1 % p;
    }
    debug_assert!(2 * j <= n);
    (binomial_mod_p(n - j, j, p) + binomial_mod_p(n - j - 1, j - 1, p)) % p
}

/// `D_n(x, alpha) = sum_{j <= n/2} n/(n-j) C(n-j, j) (-alpha)^j x^(n-2j)`,
/// with `D_0 = 2`.
pub fn dickson(n: usize, alpha: &FieldElement) -> Polynomial {
    let spec = alpha.spec();
    if n == 0 {
        return Polynomial::constant(spec, spec.int(2));
    }
    let p = spec.characteristic();
    let minus_alpha = spec.neg(alpha.elem());
    let mut coeffs = vec![Elem::ZERO; n + 1];
    let mut power = Elem::ONE;
    for j in 0..=n / 2 {
        let c = spec.int(dickson_coefficient_mod_p(n as u64, j as u64, p) as i64);
        coeffs[n - 2 * j] = spec.mul(c, power);
        power = spec.mul(power, minus_alpha);
    }
    Polynomial::new(spec, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldSpec;
    use num_bigint::BigUint;

    fn exact_binomial(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::from(0u32);
        }
        (0..k).fold(BigUint::from(1u32), |acc, i| {
            acc * BigUint::from(n - i) / BigUint::from(i + 1)
        })
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [3u64, 5, 7, 13] {
            for n in 0..60 {
                for k in 0..=n {
                    let exact = exact_binomial(n, k) % BigUint::from(p);
                    assert_eq!(
                        BigUint::from(binomial_mod_p(n, k, p)),
                        exact,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn coefficient_identity_matches_rational_formula() {
        // n/(n-j) * C(n-j, j) computed exactly over the integers.
        for n in 1u64..70 {
            for j in 0..=n / 2 {
                let exact = exact_binomial(n - j, j) * BigUint::from(n) / BigUint::from(n - j);
                for p in [3u64, 5, 7, 11] {
                    assert_eq!(
                        BigUint::from(dickson_coefficient_mod_p(n, j, p)),
                        exact.clone() % BigUint::from(p),
                        "n={n} j={j} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn dickson_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let zero = dickson(0, &f3.element(Elem(1)));
        assert_eq!(zero, Polynomial::from_ints(&f3, &[2]));
        let minus_one = f3.element(f3.int(-1));
        assert_eq!(
            dickson(2, &minus_one),
            Polynomial::from_ints(&f3, &[2, 0, 1])
        );
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(
            dickson(4, &f7.element(Elem(1))),
            Polynomial::from_ints(&f7, &[2, 0, 3, 0, 1])
        );
    }

    #[test]
    fn dickson_functional_identity() {
        for q in [
            3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49,
        ] {
            let f = FieldSpec::with_order(q).unwrap();
            for n in 0..12usize {
                for alpha in f.elements().step_by(((q / 4) as usize).max(1)) {
                    let d = dickson(n, &f.element(alpha));
                    for u in f.elements().skip(1) {
                        let a_over_u = f.div(alpha, u).unwrap();
                        let lhs = d.eval(f.add(u, a_over_u));
                        let rhs = if n == 0 {
                            f.int(2)
                        } else {
                            f.add(f.pow(u, n as u64), f.pow(a_over_u, n as u64))
                        };
                        assert_eq!(lhs, rhs, "q={q} n={n} alpha={alpha} u={u}");
                    }
                }
            }
        }
    }
}
