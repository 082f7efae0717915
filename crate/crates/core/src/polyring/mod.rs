//! Dense univariate polynomials over a [`FieldSpec`].

mod dickson;
mod factor;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::galois::{Elem, FieldSpec};
use crate::{Error, Result};

pub use dickson::{binomial_mod_p, dickson, dickson_coefficient_mod_p};
pub use factor::{factor_xn_plus_1_generic, roots_in_field, ROOT_SCAN_LIMIT};

/// Polynomial with coefficients low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.spec)
    }
}

impl Polynomial {
    pub fn new(spec: &FieldSpec, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// Integer coefficients, low degree first, reduced into the prime subfield.
    pub fn from_ints(spec: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(spec, coeffs.iter().map(|&c| spec.int(c)).collect())
    }

    /// Coefficients given as canonical element indices, low degree first.
    pub fn from_indices(spec: &FieldSpec, coeffs: &[u64]) -> Result<Self> {
        let elems = coeffs
            .iter()
            .map(|&c| {
                spec.from_index(c).ok_or_else(|| {
                    Error::Parse(format!("coefficient {c} is not an element of {spec:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(spec, elems))
    }

    /// Parses a coefficient list such as `[1, 0, 1]` or `1,0,1` (low degree first).
    pub fn parse_coefficients(spec: &FieldSpec, text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let values = body
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(spec, &values)
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        Self::new(spec, Vec::new())
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Self::constant(spec, Elem::ONE)
    }

    pub fn constant(spec: &FieldSpec, c: Elem) -> Self {
        Self::new(spec, vec![c])
    }

    pub fn x(spec: &FieldSpec) -> Self {
        Self::monomial(spec, Elem::ONE, 1)
    }

    /// `c * x^degree`.
    pub fn monomial(spec: &FieldSpec, c: Elem, degree: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::new(spec, coeffs)
    }

    /// `x^n + c`.
    pub fn binomial(spec: &FieldSpec, n: usize, c: Elem) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = Elem::ONE;
        coeffs[0] = spec.add(coeffs[0], c);
        Self::new(spec, coeffs)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    fn check_spec(&self, other: &Polynomial) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_spec(other)?;
        let f = &self.spec;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Polynomial::new(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_spec(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.spec));
        }
        let f = &self.spec;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Polynomial::new(f, out))
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let f = &self.spec;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.spec.inv(self.leading()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Quotient and remainder with `deg(r) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_spec(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.spec;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Polynomial::zero(f), self.clone()));
        };
        let mut quot = vec![Elem::ZERO; top - dd + 1];
        for i in (dd..=top).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_spec(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `s*self + t*other = g = gcd(self, other)`, `g` monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.check_spec(other)?;
        let f = &self.spec;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (quot, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&quot * &s1);
            let t = &t0 - &(&quot * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Ok(inv) => Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv))),
            Err(_) => Ok((r0, s0, t0)),
        }
    }

    /// Inverse of `self` modulo `modulus`.
    pub fn inv_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        let (g, s, _) = self.ext_gcd(modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        s.rem(modulus)
    }

    pub fn mul_mod(&self, other: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
        self.checked_mul(other)?.rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.spec).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self(inner) mod modulus` by Horner's rule.
    pub fn compose_mod(&self, inner: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.spec);
        for &c in self.coeffs.iter().rev() {
            acc = (&acc.mul_mod(inner, modulus)? + &Polynomial::constant(&self.spec, c))
                .rem(modulus)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.spec;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Monic reciprocal `f(0)^(-1) x^deg(f) f(1/x)`.
    pub fn reciprocal(&self) -> Result<Polynomial> {
        if self.coeff(0).is_zero() {
            return Err(Error::NotInvertibleAtZero);
        }
        let rev: Vec<Elem> = self.coeffs.iter().rev().copied().collect();
        Ok(Polynomial::new(&self.spec, rev).monic())
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal().is_ok_and(|r| r == self.monic())
    }

    /// Ordering by degree, then by coefficient tuple (constant term first).
    fn sort_key(&self) -> (usize, &[Elem]) {
        (self.coeffs.len(), &self.coeffs)
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = if *c == Elem::ONE && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics if the operands live over different fields.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                let op: fn(&Polynomial, &Polynomial) -> Result<Polynomial> = $body;
                op(self, rhs).expect("polynomials over different fields")
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.checked_add(b));
forward_binop!(Sub, sub, |a, b| a.checked_add(&-b));
forward_binop!(Mul, mul, |a, b| a.checked_mul(b));

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let f = &self.spec;
        Polynomial::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn products_from_worked_examples() {
        let f3 = field(3);
        let a = Polynomial::from_ints(&f3, &[2, 1, 1]);
        let b = Polynomial::from_ints(&f3, &[2, 2, 1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&f3, &[1, 0, 0, 0, 1]));
        let f5 = field(5);
        let a = Polynomial::from_ints(&f5, &[2, 0, 1]);
        let b = Polynomial::from_ints(&f5, &[3, 0, 1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&f5, &[1, 0, 0, 0, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f7 = field(7);
        let f = Polynomial::from_ints(&f7, &[1, 2, 3]);
        assert_eq!(f.gcd(&Polynomial::zero(&f7)).unwrap(), f.monic());
        assert_eq!(Polynomial::zero(&f7).gcd(&f).unwrap(), f.monic());
    }

    #[test]
    fn division_errors() {
        let f3 = field(3);
        let f5 = field(5);
        let f = Polynomial::from_ints(&f3, &[1, 1]);
        assert_eq!(
            f.divmod(&Polynomial::zero(&f3)).unwrap_err(),
            Error::DivisionByZero
        );
        let g = Polynomial::from_ints(&f5, &[1, 1]);
        assert_eq!(f.divmod(&g).unwrap_err(), Error::SpecMismatch);
        assert_eq!(f.checked_mul(&g).unwrap_err(), Error::SpecMismatch);
    }

    #[test]
    fn reciprocal_examples() {
        let f3 = field(3);
        assert_eq!(
            Polynomial::from_ints(&f3, &[2, 1, 1]).reciprocal().unwrap(),
            Polynomial::from_ints(&f3, &[2, 2, 1])
        );
        let one_plus_x = Polynomial::from_ints(&f3, &[1, 1]);
        assert_eq!(one_plus_x.reciprocal().unwrap(), one_plus_x);
        let f5 = field(5);
        assert_eq!(
            Polynomial::from_ints(&f5, &[2, 1]).reciprocal().unwrap(),
            Polynomial::from_ints(&f5, &[3, 1])
        );
        assert_eq!(
            Polynomial::from_ints(&f5, &[0, 1])
                .reciprocal()
                .unwrap_err(),
            Error::NotInvertibleAtZero
        );
    }

    #[test]
    fn display_and_parse() {
        let f3 = field(3);
        let f = Polynomial::from_ints(&f3, &[2, 0, 2, 0, 1]);
        assert_eq!(f.to_string(), "x^4+2x^2+2");
        assert_eq!(Polynomial::from_ints(&f3, &[0, 1]).to_string(), "x");
        assert_eq!(Polynomial::zero(&f3).to_string(), "0");
        assert_eq!(
            Polynomial::parse_coefficients(&f3, "[2, 0, 2, 0, 1]").unwrap(),
            f
        );
        assert_eq!(Polynomial::parse_coefficients(&f3, "2,0,2,0,1").unwrap(), f);
        assert!(Polynomial::parse_coefficients(&f3, "[3]").is_err());
        assert!(Polynomial::parse_coefficients(&f3, "[a]").is_err());
    }

    #[test]
    fn inverse_modulo() {
        let f3 = field(3);
        let m = Polynomial::from_ints(&f3, &[2, 1, 1]);
        let a = Polynomial::from_ints(&f3, &[1, 1]);
        let inv = a.inv_mod(&m).unwrap();
        assert_eq!(a.mul_mod(&inv, &m).unwrap(), Polynomial::one(&f3));
        let not_coprime = Polynomial::from_ints(&f3, &[2, 1, 1]);
        assert_eq!(not_coprime.inv_mod(&m).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn ordering_is_degree_then_coefficients() {
        let f5 = field(5);
        let mut v = [
            Polynomial::from_ints(&f5, &[3, 0, 1]),
            Polynomial::from_ints(&f5, &[4, 1]),
            Polynomial::from_ints(&f5, &[2, 0, 1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x+4", "x^2+2", "x^2+3"]);
    }

    fn poly_strategy() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>)> {
        (
            prop::sample::select(vec![3u64, 5, 7, 9, 11, 13]),
            1usize..=9,
            1usize..=6,
        )
            .prop_flat_map(|(q, la, lb)| {
                (
                    Just(q),
                    prop::collection::vec(0i64..13, la),
                    prop::collection::vec(0i64..13, lb),
                )
            })
    }

    proptest! {
        #[test]
        fn divmod_reconstructs((q, a, b) in poly_strategy()) {
            let f = field(q);
            let a = Polynomial::from_indices(&f, &a.iter().map(|&c| (c as u64) % q).collect::<Vec<_>>()).unwrap();
            let b = Polynomial::from_indices(&f, &b.iter().map(|&c| (c as u64) % q).collect::<Vec<_>>()).unwrap();
            prop_assume!(!b.is_zero());
            let (quot, r) = a.divmod(&b).unwrap();
            prop_assert!(r.is_zero() || r.degree() < b.degree());
            prop_assert_eq!(&(&quot * &b) + &r, a);
        }

        #[test]
        fn reciprocal_is_an_involution((q, a, _b) in poly_strategy()) {
            let f = field(q);
            let a = Polynomial::from_indices(&f, &a.iter().map(|&c| (c as u64) % q).collect::<Vec<_>>()).unwrap();
            prop_assume!(!a.coeff(0).is_zero());
            prop_assert_eq!(a.reciprocal().unwrap().reciprocal().unwrap(), a.monic());
        }

        #[test]
        fn ext_gcd_bezout((q, a, b) in poly_strategy()) {
            let f = field(q);
            let a = Polynomial::from_indices(&f, &a.iter().map(|&c| (c as u64) % q).collect::<Vec<_>>()).unwrap();
            let b = Polynomial::from_indices(&f, &b.iter().map(|&c| (c as u64) % q).collect::<Vec<_>>()).unwrap();
            let (g, s, t) = a.ext_gcd(&b).unwrap();
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert_eq!(g, a.gcd(&b).unwrap());
        }
    }
}
