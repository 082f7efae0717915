//! Double negacirculant codes `C_a` with generator `(I | A)`, where `A` is the
//! negacirculant matrix whose first row is the coefficient vector of
//! `a in R(n, F_q) = F_q[x]/(x^n + 1)`.

mod monomial;
mod record;
mod symmetry;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::galois::{Elem, FieldSpec};
use crate::polyring::Polynomial;
use crate::{Budget, Error, Result};

pub use monomial::MonomialMatrix;
pub use record::CodeRecord;
pub use symmetry::{
    consta_dihedral_witness, consta_dihedral_witness_seeded, lemma1_p, lemma1_p_seeded,
    DihedralWitness, WitnessCheck, WitnessOutcome,
};

/// `(x_0, ..., x_{n-1}) -> (-x_{n-1}, x_0, ..., x_{n-2})`, i.e. multiplication by `x` in `R(n, F_q)`.
pub fn negashift(spec: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
    let Some((&last, rest)) = v.split_last() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(v.len());
    out.push(spec.neg(last));
    out.extend_from_slice(rest);
    out
}

/// Number of nonzero coordinates.
pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Element of `R(n, F_q) = F_q[x]/(x^n + 1)` given by its `n` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElement {
    spec: FieldSpec,
    coeffs: Vec<Elem>,
}

impl RingElement {
    pub fn new(spec: &FieldSpec, coeffs: Vec<Elem>) -> Self {
        RingElement {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn zero(spec: &FieldSpec, n: usize) -> Self {
        Self::new(spec, vec![Elem::ZERO; n])
    }

    /// Coefficients as canonical element indices; must have length exactly `n`.
    pub fn from_indices(spec: &FieldSpec, n: usize, coeffs: &[u64]) -> Result<Self> {
        if coeffs.len() != n {
            return Err(Error::Length {
                expected: n,
                got: coeffs.len(),
            });
        }
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

    /// Reduces `p` modulo `x^n + 1`.
    pub fn from_polynomial(p: &Polynomial, n: usize) -> Self {
        let spec = p.spec();
        let mut coeffs = vec![Elem::ZERO; n];
        for (i, &c) in p.coeffs().iter().enumerate() {
            let (slot, wraps) = (i % n, (i / n) % 2 == 1);
            let c = if wraps { spec.neg(c) } else { c };
            coeffs[slot] = spec.add(coeffs[slot], c);
        }
        Self::new(spec, coeffs)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(&self.spec, self.coeffs.clone())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.index() as u64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let f = &self.spec;
        RingElement::new(
            f,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    /// Negacyclic convolution.
    pub fn mul(&self, other: &RingElement) -> RingElement {
        let f = &self.spec;
        let n = self.n();
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = f.mul(a, b);
                let k = i + j;
                if k < n {
                    out[k] = f.add(out[k], prod);
                } else {
                    out[k - n] = f.sub(out[k - n], prod);
                }
            }
        }
        RingElement::new(f, out)
    }

    /// `a(x^{-1})`, the ring image of the transposed negacirculant matrix.
    pub fn conjugate(&self) -> RingElement {
        let f = &self.spec;
        let n = self.n();
        let mut out = vec![Elem::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i == 0 {
                out[0] = c;
            } else {
                out[n - i] = f.neg(c);
            }
        }
        RingElement::new(f, out)
    }

    /// `a(x) a(x^{-1}) = -1`, the ring form of `A A^T = -I`.
    pub fn is_self_dual_fast(&self) -> bool {
        let prod = self.mul(&self.conjugate());
        let minus_one = self.spec.neg(Elem::ONE);
        prod.coeffs[0] == minus_one && prod.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// Result of a minimum distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    /// False when an early-exit bound stopped the scan; `d` is then an upper bound.
    pub exact: bool,
}

/// The `[2n, n]` code generated by `(I | A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DNCode {
    a: RingElement,
    matrix: Vec<Vec<Elem>>,
}

impl DNCode {
    pub fn new(a: RingElement) -> Self {
        let mut matrix = Vec::with_capacity(a.n());
        let mut row = a.coeffs.clone();
        for _ in 0..a.n() {
            let next = negashift(&a.spec, &row);
            matrix.push(std::mem::replace(&mut row, next));
        }
        DNCode { a, matrix }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.a.spec
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &RingElement {
        &self.a
    }

    /// The negacirculant matrix `A`.
    pub fn matrix(&self) -> &[Vec<Elem>] {
        &self.matrix
    }

    /// Rows of `(I | A)`.
    pub fn generator(&self) -> Vec<Vec<Elem>> {
        let n = self.n();
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut g = vec![Elem::ZERO; 2 * n];
                g[i] = Elem::ONE;
                g[n..].copy_from_slice(row);
                g
            })
            .collect()
    }

    /// `m A` for a message of length `n`.
    fn times_matrix(&self, m: &[Elem]) -> Vec<Elem> {
        let f = self.spec();
        let mut out = vec![Elem::ZERO; self.n()];
        for (&mi, row) in m.iter().zip(&self.matrix) {
            if mi.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(mi, r));
            }
        }
        out
    }

    /// Codeword `(m, m A)`.
    pub fn encode(&self, m: &[Elem]) -> Result<Vec<Elem>> {
        if m.len() != self.n() {
            return Err(Error::Length {
                expected: self.n(),
                got: m.len(),
            });
        }
        let mut word = m.to_vec();
        word.extend(self.times_matrix(m));
        Ok(word)
    }

    /// `A A^T = -I`, computed entrywise.
    pub fn is_self_dual(&self) -> bool {
        let f = self.spec();
        let minus_one = f.neg(Elem::ONE);
        self.matrix.iter().enumerate().all(|(i, ri)| {
            self.matrix.iter().enumerate().all(|(j, rj)| {
                let dot = ri
                    .iter()
                    .zip(rj)
                    .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                dot == if i == j { minus_one } else { Elem::ZERO }
            })
        })
    }

    /// Whether `u = (c, d)` satisfies `d = c A`.
    pub fn contains(&self, u: &[Elem]) -> Result<bool> {
        let n = self.n();
        if u.len() != 2 * n {
            return Err(Error::Length {
                expected: 2 * n,
                got: u.len(),
            });
        }
        Ok(self.times_matrix(&u[..n]) == u[n..])
    }

    /// Work estimate `n q^n` for exhaustive scans.
    pub fn scan_cost(&self) -> u128 {
        crate::checked_pow(self.spec().order(), self.n())
            .and_then(|c| c.checked_mul(self.n() as u128))
            .unwrap_or(u128::MAX)
    }

    /// Minimum weight over all nonzero codewords. With `early_exit = Some(b)`,
    /// the scan may stop at the first codeword of weight `<= b`.
    pub fn min_distance(&self, early_exit: Option<usize>, budget: Budget) -> Result<Distance> {
        budget.check(self.scan_cost())?;
        let best = AtomicUsize::new(usize::MAX);
        let stop = AtomicBool::new(false);
        self.chunks().into_par_iter().for_each(|(lo, hi)| {
            let mut walk = GrayWalk::new(self, lo);
            let mut local = usize::MAX;
            for t in lo..hi {
                if t != 0 {
                    local = local.min(walk.weight);
                    if early_exit.is_some_and(|b| walk.weight <= b) {
                        stop.store(true, Ordering::Relaxed);
                    }
                }
                if (t & 0x3ff) == 0 && stop.load(Ordering::Relaxed) {
                    break;
                }
                if t + 1 < hi {
                    walk.step();
                }
            }
            best.fetch_min(local, Ordering::Relaxed);
        });
        let d = best.into_inner();
        let stopped = stop.into_inner();
        Ok(Distance {
            d: if d == usize::MAX { 0 } else { d },
            exact: !stopped,
        })
    }

    /// `W[w]` = number of codewords of weight `w`, `0 <= w <= 2n`.
    pub fn weight_enumerator(&self, budget: Budget) -> Result<Vec<u64>> {
        budget.check(self.scan_cost())?;
        let len = 2 * self.n() + 1;
        Ok(self
            .chunks()
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut hist = vec![0u64; len];
                let mut walk = GrayWalk::new(self, lo);
                for t in lo..hi {
                    hist[walk.weight] += 1;
                    if t + 1 < hi {
                        walk.step();
                    }
                }
                hist
            })
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            ))
    }

    /// Disjoint ranges of the message counter covering `[0, q^n)`.
    fn chunks(&self) -> Vec<(u64, u64)> {
        let total =
            crate::checked_pow(self.spec().order(), self.n()).expect("within budget") as u64;
        let pieces = total.clamp(1, 256);
        let step = total.div_ceil(pieces);
        (0..pieces)
            .map(|i| (i * step, ((i + 1) * step).min(total)))
            .filter(|(lo, hi)| lo < hi)
            .collect()
    }
}

/// Walks codewords in modular q-ary Gray order: message `m_i = (t_i - t_{i+1}) mod q`
/// for counter digits `t_i`, so consecutive messages differ in one symbol.
struct GrayWalk<'a> {
    code: &'a DNCode,
    counter: Vec<u32>,
    message: Vec<u32>,
    word: Vec<Elem>,
    weight: usize,
}

impl<'a> GrayWalk<'a> {
    fn new(code: &'a DNCode, start: u64) -> Self {
        let q = code.spec().order();
        let n = code.n();
        let mut rest = start;
        let counter: Vec<u32> = (0..n)
            .map(|_| {
                let d = (rest % q) as u32;
                rest /= q;
                d
            })
            .collect();
        let message: Vec<u32> = (0..n)
            .map(|i| {
                let next = counter.get(i + 1).copied().unwrap_or(0);
                ((counter[i] as u64 + q - next as u64) % q) as u32
            })
            .collect();
        let m: Vec<Elem> = message.iter().map(|&g| Elem(g)).collect();
        let word = code.encode(&m).expect("message length matches");
        let weight = hamming_weight(&word);
        GrayWalk {
            code,
            counter,
            message,
            word,
            weight,
        }
    }

    fn step(&mut self) {
        let q = self.code.spec().order() as u32;
        let f = self.code.spec();
        let n = self.code.n();
        let j = self.counter.iter().take_while(|&&d| d == q - 1).count();
        for d in &mut self.counter[..j] {
            *d = 0;
        }
        if j == n {
            return;
        }
        self.counter[j] += 1;
        let old = Elem(self.message[j]);
        self.message[j] = (self.message[j] + 1) % q;
        let delta = f.sub(Elem(self.message[j]), old);
        self.update(j, delta);
        for k in 0..n {
            let r = self.code.matrix[j][k];
            if !r.is_zero() {
                self.update(n + k, f.mul(delta, r));
            }
        }
    }

    fn update(&mut self, pos: usize, delta: Elem) {
        let before = self.word[pos];
        let after = self.code.spec().add(before, delta);
        self.word[pos] = after;
        match (before.is_zero(), after.is_zero()) {
            (true, false) => self.weight += 1,
            (false, true) => self.weight -= 1,
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn code(q: u64, a: &[u64]) -> DNCode {
        let f = field(q);
        DNCode::new(RingElement::from_indices(&f, a.len(), a).unwrap())
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    fn tetracode() -> DNCode {
        code(3, &[1, 1])
    }

    #[test]
    fn negashift_examples() {
        assert_eq!(negashift(&field(3), &elems(&[1, 0, 0])), elems(&[0, 1, 0]));
        assert_eq!(negashift(&field(3), &elems(&[0, 0, 1])), elems(&[2, 0, 0]));
        assert_eq!(
            negashift(&field(5), &elems(&[1, 2, 3, 4])),
            elems(&[1, 1, 2, 3])
        );
    }

    #[test]
    fn negashift_orders() {
        let f = field(7);
        let v = elems(&[1, 2, 3, 4, 5]);
        let mut w = v.clone();
        for i in 1..=10 {
            w = negashift(&f, &w);
            if i == 5 {
                assert_eq!(w, v.iter().map(|&c| f.neg(c)).collect::<Vec<_>>());
            }
        }
        assert_eq!(w, v);
    }

    #[test]
    fn negashift_is_multiplication_by_x() {
        let f = field(5);
        let a = RingElement::from_indices(&f, 4, &[1, 2, 3, 4]).unwrap();
        let x = RingElement::from_indices(&f, 4, &[0, 1, 0, 0]).unwrap();
        assert_eq!(a.mul(&x).coeffs(), negashift(&f, a.coeffs()).as_slice());
    }

    #[test]
    fn code_make_examples() {
        let c = tetracode();
        assert_eq!(c.matrix(), &[elems(&[1, 1]), elems(&[2, 1])]);
        let zero = code(3, &[0, 0]);
        assert!(zero.matrix().iter().flatten().all(|e| e.is_zero()));
        assert_eq!(zero.generator()[1], elems(&[0, 1, 0, 0]));
        assert_eq!(code(5, &[2, 0]).matrix(), &[elems(&[2, 0]), elems(&[0, 2])]);
    }

    #[test]
    fn self_duality_examples() {
        assert!(tetracode().is_self_dual());
        assert!(!code(3, &[0, 1]).is_self_dual());
        assert!(code(5, &[2, 0]).is_self_dual());
    }

    #[test]
    fn membership_examples() {
        let c = tetracode();
        assert!(c.contains(&c.generator()[0]).unwrap());
        assert!(c.contains(&elems(&[0, 0, 0, 0])).unwrap());
        assert!(!c.contains(&elems(&[1, 0, 0, 0])).unwrap());
        assert_eq!(
            c.contains(&elems(&[1, 0])).unwrap_err(),
            Error::Length {
                expected: 4,
                got: 2
            }
        );
    }

    #[test]
    fn distance_examples() {
        let b = Budget::default();
        assert_eq!(
            tetracode().min_distance(None, b).unwrap(),
            Distance { d: 3, exact: true }
        );
        assert_eq!(code(3, &[0, 0]).min_distance(None, b).unwrap().d, 1);
        assert_eq!(code(5, &[2, 0]).min_distance(None, b).unwrap().d, 2);
    }

    #[test]
    fn weight_enumerator_examples() {
        let b = Budget::default();
        assert_eq!(
            tetracode().weight_enumerator(b).unwrap(),
            vec![1, 0, 0, 8, 0]
        );
        assert_eq!(
            code(3, &[0, 0]).weight_enumerator(b).unwrap(),
            vec![1, 4, 4, 0, 0]
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let c = code(7, &[1, 2, 3, 4, 5]);
        let err = c.min_distance(None, Budget::new(1000)).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                required: 5 * 7u128.pow(5),
                limit: 1000
            }
        );
        assert!(c.weight_enumerator(Budget::new(1000)).is_err());
    }

    #[test]
    fn early_exit_returns_an_upper_bound() {
        let c = code(3, &[1, 2, 0, 1, 1]);
        let exact = c.min_distance(None, Budget::default()).unwrap();
        let bounded = c.min_distance(Some(2 * c.n()), Budget::default()).unwrap();
        assert!(!bounded.exact);
        assert!(bounded.d >= exact.d && bounded.d <= 2 * c.n());
    }

    /// Plain enumeration of every message, independent of the Gray walk.
    fn naive_enumerator(c: &DNCode) -> Vec<u64> {
        let q = c.spec().order();
        let n = c.n();
        let mut hist = vec![0u64; 2 * n + 1];
        for idx in 0..q.pow(n as u32) {
            let m: Vec<Elem> = (0..n)
                .map(|i| Elem((idx / q.pow(i as u32) % q) as u32))
                .collect();
            hist[hamming_weight(&c.encode(&m).unwrap())] += 1;
        }
        hist
    }

    #[test]
    fn gray_walk_matches_naive_enumeration() {
        for (q, a) in [
            (3u64, vec![1u64, 2, 0, 1, 1]),
            (5, vec![2, 0, 3]),
            (9, vec![4, 7]),
            (7, vec![0, 3, 5]),
        ] {
            let c = code(q, &a);
            let w = c.weight_enumerator(Budget::default()).unwrap();
            assert_eq!(w, naive_enumerator(&c), "q={q} a={a:?}");
            assert_eq!(w.iter().sum::<u64>(), q.pow(a.len() as u32));
            let d = c.min_distance(None, Budget::default()).unwrap().d;
            assert_eq!(d, (1..w.len()).find(|&i| w[i] > 0).unwrap());
        }
    }

    #[test]
    fn distance_bounded_by_row_weights() {
        let f = field(3);
        for idx in 0..81u64 {
            let a: Vec<u64> = (0..4).map(|i| idx / 3u64.pow(i) % 3).collect();
            let c = DNCode::new(RingElement::from_indices(&f, 4, &a).unwrap());
            let d = c.min_distance(None, Budget::default()).unwrap().d;
            assert!(c.generator().iter().all(|row| d <= hamming_weight(row)));
            assert!(c.weight_enumerator(Budget::default()).unwrap()[d] >= 1);
        }
    }

    #[test]
    fn every_dn_code_is_negashift_invariant() {
        let f = field(3);
        for n in 1..=4usize {
            for idx in 0..3u64.pow(n as u32) {
                let a: Vec<u64> = (0..n).map(|i| idx / 3u64.pow(i as u32) % 3).collect();
                let c = DNCode::new(RingElement::from_indices(&f, n, &a).unwrap());
                for m in c.generator().iter().map(|g| g[..n].to_vec()) {
                    let word = c.encode(&m).unwrap();
                    let mut shifted = negashift(&f, &word[..n]);
                    shifted.extend(negashift(&f, &word[n..]));
                    assert!(c.contains(&shifted).unwrap());
                }
            }
        }
    }

    #[test]
    fn self_duality_agrees_with_gram_matrix_and_ring_form() {
        for (q, n) in [(3u64, 2usize), (3, 4), (5, 2), (5, 3), (7, 3), (3, 5)] {
            let f = field(q);
            for idx in 0..q.pow(n as u32) {
                let a: Vec<u64> = (0..n).map(|i| idx / q.pow(i as u32) % q).collect();
                let c = DNCode::new(RingElement::from_indices(&f, n, &a).unwrap());
                let g = c.generator();
                let gram_zero = g.iter().all(|r| {
                    g.iter().all(|s| {
                        r.iter()
                            .zip(s)
                            .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
                            .is_zero()
                    })
                });
                assert_eq!(c.is_self_dual(), gram_zero, "q={q} a={a:?}");
                assert_eq!(c.is_self_dual(), c.a().is_self_dual_fast(), "q={q} a={a:?}");
            }
        }
    }

    #[test]
    fn reduction_modulo_x_n_plus_1() {
        let f = field(5);
        // x^5 = -x in R(4): 1 + x^5 -> 1 - x.
        let p = Polynomial::from_ints(&f, &[1, 0, 0, 0, 0, 1]);
        assert_eq!(
            RingElement::from_polynomial(&p, 4).indices(),
            vec![1, 4, 0, 0]
        );
        // x^8 = 1
        let p = Polynomial::monomial(&f, Elem::ONE, 8);
        assert_eq!(
            RingElement::from_polynomial(&p, 4).indices(),
            vec![1, 0, 0, 0]
        );
    }
}
