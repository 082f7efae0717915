//! Irreducibility, roots, and a general-purpose factorization of `x^n + 1`
//! (distinct-degree then Cantor-Zassenhaus equal-degree splitting).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Polynomial;
use crate::galois::{Elem, FieldSpec};
use crate::{Error, Result};

/// Largest field scanned element by element in [`roots_in_field`].
pub const ROOT_SCAN_LIMIT: u64 = 1_000_000;

const SPLIT_SEED: u64 = 0x6e65_6761;

impl Polynomial {
    /// Ben-Or test: `f` of degree `d` is irreducible iff
    /// `gcd(f, x^(q^i) - x) = 1` for every `1 <= i <= d/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        let f = self.monic();
        let q = self.spec().order();
        let x = Polynomial::x(self.spec());
        let mut h = x.rem(&f)?;
        for _ in 1..=d / 2 {
            h = h.pow_mod(q, &f)?;
            if f.gcd(&(&h - &x))?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Distinct roots of `f` in its field, in canonical order.
pub fn roots_in_field(f: &Polynomial) -> Result<Vec<Elem>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let q = f.spec().order();
    if q > ROOT_SCAN_LIMIT {
        return Err(Error::Capacity {
            required: q as u128,
            limit: ROOT_SCAN_LIMIT,
        });
    }
    Ok(f.spec()
        .elements()
        .filter(|&x| f.eval(x).is_zero())
        .collect())
}

/// Complete factorization of `x^n + 1` into monic irreducibles, sorted by
/// degree and then coefficients. Does not use any closed form.
pub fn factor_xn_plus_1_generic(n: usize, spec: &FieldSpec) -> Result<Vec<Polynomial>> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if n as u64 % spec.characteristic() == 0 {
        return Err(Error::NotSeparable { n, q: spec.order() });
    }
    let f = Polynomial::binomial(spec, n, Elem::ONE);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (block, d) in distinct_degree(&f)? {
        equal_degree(&block, d, &mut rng, &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let spec = f.spec();
    let q = spec.order();
    let x = Polynomial::x(spec);
    let mut rest = f.monic();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divmod(&g)?.0;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

fn equal_degree(
    g: &Polynomial,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Polynomial>,
) -> Result<()> {
    let deg = g.degree().unwrap_or(0);
    if deg == d {
        out.push(g.monic());
        return Ok(());
    }
    let spec = g.spec();
    let q = spec.order();
    let one = Polynomial::one(spec);
    loop {
        let r = Polynomial::new(
            spec,
            (0..deg).map(|_| Elem(rng.gen_range(0..q as u32))).collect(),
        );
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        // r^((q^d - 1)/2) = (r * r^q * ... * r^(q^(d-1)))^((q - 1)/2)
        let mut frob = r.clone();
        let mut norm = r.clone();
        for _ in 1..d {
            frob = frob.pow_mod(q, g)?;
            norm = norm.mul_mod(&frob, g)?;
        }
        let t = norm.pow_mod((q - 1) / 2, g)?;
        let split = g.gcd(&(&t - &one))?;
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < deg {
            let other = g.divmod(&split)?.0;
            equal_degree(&split, d, rng, out)?;
            return equal_degree(&other, d, rng, out);
        }
    }
}
