use std::collections::HashSet;

use serde::Serialize;

use crate::galois::{Elem, FieldSpec};
use crate::{Error, Result};

/// Monomial (generalized permutation) matrix: row `i` has the single nonzero
/// entry `signs[i]` in column `perm[i]`. Acts on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    spec: FieldSpec,
    perm: Vec<usize>,
    signs: Vec<Elem>,
}

#[derive(Serialize)]
struct MonomialRecord<'a> {
    perm: &'a [usize],
    signs: Vec<u32>,
}

impl Serialize for MonomialMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MonomialRecord {
            perm: &self.perm,
            signs: self.signs.iter().map(|s| s.index()).collect(),
        }
        .serialize(serializer)
    }
}

impl MonomialMatrix {
    pub fn new(spec: &FieldSpec, perm: Vec<usize>, signs: Vec<Elem>) -> Result<Self> {
        let g = perm.len();
        if signs.len() != g {
            return Err(Error::Length {
                expected: g,
                got: signs.len(),
            });
        }
        let mut seen = vec![false; g];
        for &p in &perm {
            if p >= g || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.iter().any(|s| s.is_zero()) {
            return Err(Error::Domain("monomial entries must be nonzero".into()));
        }
        Ok(MonomialMatrix {
            spec: spec.clone(),
            perm,
            signs,
        })
    }

    pub fn identity(spec: &FieldSpec, g: usize) -> Self {
        Self::scalar(spec, g, Elem::ONE)
    }

    pub fn scalar(spec: &FieldSpec, g: usize, c: Elem) -> Self {
        MonomialMatrix {
            spec: spec.clone(),
            perm: (0..g).collect(),
            signs: vec![c; g],
        }
    }

    /// The negashift `(v_0..v_{n-1}) -> (-v_{n-1}, v_0, ..., v_{n-2})`.
    pub fn negashift(spec: &FieldSpec, n: usize) -> Self {
        let perm = (0..n).map(|i| (i + 1) % n).collect();
        let mut signs = vec![Elem::ONE; n];
        if let Some(last) = signs.last_mut() {
            *last = spec.neg(Elem::ONE);
        }
        MonomialMatrix {
            spec: spec.clone(),
            perm,
            signs,
        }
    }

    /// The antiswap `(x, y) -> (y, -x)` on vectors of length `2n`.
    pub fn antiswap(spec: &FieldSpec, n: usize) -> Self {
        let perm = (0..2 * n)
            .map(|i| if i < n { i + n } else { i - n })
            .collect();
        let signs = (0..2 * n)
            .map(|i| {
                if i < n {
                    spec.neg(Elem::ONE)
                } else {
                    Elem::ONE
                }
            })
            .collect();
        MonomialMatrix {
            spec: spec.clone(),
            perm,
            signs,
        }
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &MonomialMatrix) -> Self {
        let offset = self.size();
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|p| p + offset));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        MonomialMatrix {
            spec: self.spec.clone(),
            perm,
            signs,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[Elem] {
        &self.signs
    }

    /// `v M`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = self.spec.mul(x, self.signs[i]);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &MonomialMatrix) -> Self {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| self.spec.mul(s, other.signs[p]))
            .collect();
        MonomialMatrix {
            spec: self.spec.clone(),
            perm,
            signs,
        }
    }

    pub fn inverse(&self) -> Self {
        let g = self.size();
        let mut perm = vec![0; g];
        let mut signs = vec![Elem::ZERO; g];
        for i in 0..g {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self
                .spec
                .inv(self.signs[i])
                .expect("monomial entries are nonzero");
        }
        MonomialMatrix {
            spec: self.spec.clone(),
            perm,
            signs,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(&self.spec, self.size()), |acc, _| {
            acc.compose(self)
        })
    }

    /// `c` such that `self = c * other`, if any.
    pub fn scalar_ratio(&self, other: &MonomialMatrix) -> Option<Elem> {
        if self.perm != other.perm {
            return None;
        }
        let c = self.spec.div(self.signs[0], other.signs[0]).ok()?;
        self.signs
            .iter()
            .zip(&other.signs)
            .all(|(&a, &b)| a == self.spec.mul(c, b))
            .then_some(c)
    }

    pub fn to_dense(&self) -> Vec<Vec<Elem>> {
        let g = self.size();
        (0..g)
            .map(|i| {
                let mut row = vec![Elem::ZERO; g];
                row[self.perm[i]] = self.signs[i];
                row
            })
            .collect()
    }
}

/// Composition `(a then b)` of permutations acting on positions.
fn then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

/// Order of the permutation group generated by `gens`.
pub(crate) fn permutation_group_order(gens: &[&[usize]]) -> usize {
    let Some(first) = gens.first() else {
        return 1;
    };
    let id: Vec<usize> = (0..first.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let next = then(&g, h);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

pub(crate) fn permutation_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut k = 1;
    while cur != id {
        cur = then(&cur, p);
        k += 1;
    }
    k
}

pub(crate) fn permutation_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub(crate) fn permutation_then(a: &[usize], b: &[usize]) -> Vec<usize> {
    then(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldSpec {
        FieldSpec::new(7, 1).unwrap()
    }

    fn dense_mul(f: &FieldSpec, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let g = a.len();
        (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| (0..g).fold(Elem::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j]))))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn validation() {
        let f = f7();
        assert!(MonomialMatrix::new(&f, vec![0, 0], vec![Elem(1), Elem(1)]).is_err());
        assert!(MonomialMatrix::new(&f, vec![1, 0], vec![Elem(1), Elem(0)]).is_err());
        assert!(MonomialMatrix::new(&f, vec![1, 0], vec![Elem(1)]).is_err());
        assert!(MonomialMatrix::new(&f, vec![1, 0], vec![Elem(3), Elem(5)]).is_ok());
    }

    #[test]
    fn compose_matches_dense_product() {
        let f = f7();
        let a = MonomialMatrix::new(&f, vec![2, 0, 1], vec![Elem(3), Elem(6), Elem(2)]).unwrap();
        let b = MonomialMatrix::new(&f, vec![1, 2, 0], vec![Elem(5), Elem(1), Elem(4)]).unwrap();
        assert_eq!(
            a.compose(&b).to_dense(),
            dense_mul(&f, &a.to_dense(), &b.to_dense())
        );
        assert_eq!(a.compose(&a.inverse()), MonomialMatrix::identity(&f, 3));
        let v = vec![Elem(1), Elem(2), Elem(3)];
        assert_eq!(a.compose(&b).apply(&v), b.apply(&a.apply(&v)));
    }

    #[test]
    fn negashift_and_antiswap_orders() {
        let f = f7();
        let x = MonomialMatrix::negashift(&f, 5);
        assert_eq!(x.pow(5), MonomialMatrix::scalar(&f, 5, Elem(6)));
        assert_eq!(x.pow(10), MonomialMatrix::identity(&f, 5));
        let s = MonomialMatrix::antiswap(&f, 3);
        assert_eq!(s.pow(2), MonomialMatrix::scalar(&f, 6, Elem(6)));
        let v: Vec<Elem> = (1..=6).map(Elem).collect();
        assert_eq!(
            s.apply(&v),
            vec![Elem(4), Elem(5), Elem(6), Elem(6), Elem(5), Elem(4)]
        );
    }

    #[test]
    fn scalar_ratio_detects_multiples() {
        let f = f7();
        let x = MonomialMatrix::negashift(&f, 4);
        let minus = x.compose(&MonomialMatrix::scalar(&f, 4, Elem(6)));
        assert_eq!(minus.scalar_ratio(&x), Some(Elem(6)));
        assert_eq!(x.pow(2).scalar_ratio(&x), None);
    }

    #[test]
    fn dihedral_group_orders() {
        let r: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        let s: Vec<usize> = (0..5).map(|i| (5 - i) % 5).collect();
        assert_eq!(permutation_order(&r), 5);
        assert_eq!(permutation_order(&s), 2);
        assert_eq!(permutation_group_order(&[&r, &s]), 10);
        assert_eq!(
            permutation_then(&permutation_then(&s, &r), &s),
            permutation_inverse(&r)
        );
    }
}
