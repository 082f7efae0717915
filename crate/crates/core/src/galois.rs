//! Exact arithmetic in odd-characteristic finite fields `F_q`, `q = p^k`.
//!
//! Elements are stored as compact indices ([`Elem`]): the element
//! `c_0 + c_1 y + ... + c_{k-1} y^{k-1}` of `F_p[y]/(modulus)` has index
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Index order is the canonical element
//! order (coefficient tuples compared most-significant last), and the integer
//! `c` of the prime subfield has index `c`.
//!
//! The module also carries the 2-adic facts about `q` used by the closed-form
//! factorizations of `x^(2^v) + 1`: the [`TwoAdicProfile`], multiplicative
//! orders modulo powers of two and the sets of primitive `2^k`-th roots of
//! unity.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::polyring::Polynomial;
use crate::{Error, Result};

/// Largest supported prime field.
pub const MAX_PRIME_FIELD: u64 = 1_000_000;
/// Largest supported proper extension field (multiplication is table driven).
pub const MAX_EXTENSION_FIELD: u64 = 1 << 16;

/// A field element index, meaningful only together with its [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over `F_p`, low degree first. `x` for prime fields.
    modulus: Vec<u32>,
    /// Discrete exp/log tables, only populated when `k > 1`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_q` with `q = p^k`, `p` odd. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Distinct prime divisors of `n`.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// 2-adic valuation; `n` must be nonzero.
pub fn two_adic_valuation(n: u64) -> u32 {
    n.trailing_zeros()
}

impl FieldSpec {
    /// Builds `F_{p^k}` with the smallest monic irreducible modulus of degree
    /// `k` in canonical order.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidDegree);
        }
        if k == 1 {
            if p > MAX_PRIME_FIELD {
                return Err(Error::Capacity {
                    required: p as u128,
                    limit: MAX_PRIME_FIELD,
                });
            }
            return Ok(Self::prime_unchecked(p as u32));
        }
        let q = crate::checked_pow(p, k as usize).unwrap_or(u128::MAX);
        if q > MAX_EXTENSION_FIELD as u128 {
            return Err(Error::Capacity {
                required: q,
                limit: MAX_EXTENSION_FIELD,
            });
        }
        let prime = Self::prime_unchecked(p as u32);
        let modulus = smallest_irreducible(&prime, k as usize);
        Ok(Self::extension(p as u32, k, q as u32, modulus))
    }

    /// Builds the field of order `q`, which must be an odd prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((2, _)) => Err(Error::EvenCharacteristic(2)),
            Some((p, k)) => Self::new(p, k),
            None => Err(Error::NotPrimePower(q)),
        }
    }

    fn prime_unchecked(p: u32) -> Self {
        FieldSpec(Arc::new(Inner {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
        }))
    }

    fn extension(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mulmod = |a: &[u32], b: &[u32]| poly_mulmod_raw(p, &modulus, a, b);
        let digits = |v: u32| to_digits(p, k, v);
        let order = (q - 1) as u64;
        let cofactors: Vec<u64> = prime_divisors(order)
            .into_iter()
            .map(|r| order / r)
            .collect();
        let pow_digits = |g: &[u32], mut e: u64| {
            let mut acc = digits(1);
            let mut base = g.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            acc
        };
        let one = digits(1);
        let generator = (2..q)
            .map(digits)
            .find(|g| cofactors.iter().all(|&c| pow_digits(g, c) != one))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = one;
        for i in 0..order as u32 {
            let idx = from_digits(p, &cur);
            exp.push(idx);
            log[idx as usize] = i;
            cur = mulmod(&cur, &generator);
        }
        FieldSpec(Arc::new(Inner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Modulus coefficients over `F_p`, low degree first (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    /// Element with the given index, if in range.
    pub fn from_index(&self, idx: u64) -> Option<Elem> {
        (idx < self.0.q as u64).then_some(Elem(idx as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::Length {
                expected: self.0.k as usize,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Domain(format!(
                "coefficient out of range for p = {}",
                self.0.p
            )));
        }
        Ok(Elem(from_digits(self.0.p, coeffs)))
    }

    /// Coefficients of `a` in the modulus basis, little-endian, length `k`.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        to_digits(self.0.p, self.0.k, a.0)
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            elem: a,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 + b.0;
            Elem(if s >= p { s - p } else { s })
        } else {
            let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
            while x > 0 || y > 0 {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place = place.wrapping_mul(p);
            }
            Elem(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            Elem(if a.0 == 0 { 0 } else { p - a.0 })
        } else {
            let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
            while x > 0 {
                out += ((p - x % p) % p) * place;
                x /= p;
                place = place.wrapping_mul(p);
            }
            Elem(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.0.k == 1 {
            Elem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32)
        } else if a.0 == 0 || b.0 == 0 {
            Elem::ZERO
        } else {
            let order = self.0.q - 1;
            let l = (self.0.log[a.0 as usize] + self.0.log[b.0 as usize]) % order;
            Elem(self.0.exp[l as usize])
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.k > 1 {
            let order = (self.0.q - 1) as u64;
            let l = (self.0.log[a.0 as usize] as u64 * (e % order)) % order;
            return Elem(self.0.exp[l as usize]);
        }
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.order() - 1;
        for r in prime_divisors(order) {
            while order % r == 0 && self.pow(a, order / r) == Elem::ONE {
                order /= r;
            }
        }
        Ok(order)
    }
}

fn to_digits(p: u32, k: u32, mut v: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn from_digits(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two residues modulo a monic `modulus` over `F_p`.
fn poly_mulmod_raw(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + (p64 - c) * m as u64) % p64;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Smallest monic irreducible of degree `k` over the prime field, ordering
/// candidates by the index of their lower coefficients.
fn smallest_irreducible(prime: &FieldSpec, k: usize) -> Vec<u32> {
    let p = prime.order();
    let total = p.pow(k as u32);
    for idx in 0..total {
        let mut coeffs: Vec<Elem> = to_digits(p as u32, k as u32, idx as u32)
            .into_iter()
            .map(Elem)
            .collect();
        coeffs.push(Elem::ONE);
        let poly = Polynomial::new(prime, coeffs);
        if poly.is_irreducible().unwrap_or(false) {
            return poly.coeffs().iter().map(|c| c.0).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field element bundled with its field, for checked arithmetic across
/// possibly different fields.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    elem: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.elem.0, self.spec)
    }
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.spec.coefficients(self.elem)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.spec.element(self.spec.add(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.spec.element(self.spec.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> FieldElement {
        self.spec.element(self.spec.neg(self.elem))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.spec.element(self.spec.inv(self.elem)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.spec.element(self.spec.pow(self.elem, e))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.coefficients();
        let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
        for c in coeffs {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

/// The smaller square root of `-1`, if `-1` is a square in `F_q`.
pub fn sqrt_minus_one(spec: &FieldSpec) -> Option<Elem> {
    let minus_one = spec.neg(Elem::ONE);
    spec.elements().find(|&x| spec.mul(x, x) == minus_one)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TwoAdicBranch {
    OneMod4,
    ThreeMod4,
}

/// Decomposition `q = 2^(A+1) m + 1` (q = 1 mod 4) or `q = 2^A m - 1`
/// (q = 3 mod 4), `m` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TwoAdicProfile {
    pub q: u64,
    /// 2-adic valuation of `q - 1` (OneMod4) or `q + 1` (ThreeMod4).
    pub v: u32,
    pub a: u32,
    pub m: u64,
    pub branch: TwoAdicBranch,
}

impl TwoAdicProfile {
    /// Recomputes `q` from `(A, m, branch)`.
    pub fn reconstruct(&self) -> u64 {
        match self.branch {
            TwoAdicBranch::OneMod4 => (self.m << (self.a + 1)) + 1,
            TwoAdicBranch::ThreeMod4 => (self.m << self.a) - 1,
        }
    }
}

pub fn two_adic_profile(q: u64) -> Result<TwoAdicProfile> {
    if q % 2 == 0 || q < 3 {
        return Err(Error::Domain(format!("q = {q} must be odd and at least 3")));
    }
    Ok(if q % 4 == 1 {
        let v = two_adic_valuation(q - 1);
        TwoAdicProfile {
            q,
            v,
            a: v - 1,
            m: (q - 1) >> v,
            branch: TwoAdicBranch::OneMod4,
        }
    } else {
        let v = two_adic_valuation(q + 1);
        TwoAdicProfile {
            q,
            v,
            a: v,
            m: (q + 1) >> v,
            branch: TwoAdicBranch::ThreeMod4,
        }
    })
}

/// `ord_modulus(q)` by repeated multiplication; `modulus` must be a power of
/// two, at least 4, and `q` odd.
pub fn mult_order(q: u64, modulus: u64) -> Result<u64> {
    if q % 2 == 0 {
        return Err(Error::Domain(format!("q = {q} must be odd")));
    }
    if modulus < 4 || !modulus.is_power_of_two() {
        return Err(Error::Domain(format!(
            "modulus {modulus} is not a power of two >= 4"
        )));
    }
    let r = q % modulus;
    let mut acc = r;
    let mut i = 1;
    while acc != 1 {
        acc = ((acc as u128 * r as u128) % modulus as u128) as u64;
        i += 1;
    }
    Ok(i)
}

/// Elements of multiplicative order exactly `2^k`, in canonical order.
pub fn primitive_2k_roots(spec: &FieldSpec, k: u32) -> Vec<Elem> {
    if k >= 63 || (spec.order() - 1) % (1u64 << k) != 0 {
        return Vec::new();
    }
    let full = 1u64 << k;
    spec.elements()
        .skip(1)
        .filter(|&x| {
            spec.pow(x, full) == Elem::ONE && (k == 0 || spec.pow(x, full / 2) != Elem::ONE)
        })
        .collect()
}
