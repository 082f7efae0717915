//! Transpose-conjugating matrix `P` for negacirculants and the dihedral
//! symmetry witness of self-dual DN codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::monomial::{
    permutation_group_order, permutation_inverse, permutation_order, permutation_then,
};
use super::{DNCode, MonomialMatrix, RingElement};
use crate::galois::{Elem, FieldSpec};
use crate::{Error, Result};

const RANDOM_SAMPLES: usize = 8;

/// `P` with `P A P = A^T` for every `n x n` negacirculant `A`, `n` odd.
///
/// `P` fixes position 0, swaps `i <-> n - i`, and carries sign `-1` on every
/// moved row. The identity is checked on the basis `x^i` (which proves it for
/// all `A` by linearity) and on a seeded random sample.
pub fn lemma1_p(n: usize, spec: &FieldSpec) -> Result<MonomialMatrix> {
    lemma1_p_seeded(n, spec, 0)
}

pub fn lemma1_p_seeded(n: usize, spec: &FieldSpec, seed: u64) -> Result<MonomialMatrix> {
    if n % 2 == 0 {
        return Err(Error::UnsupportedShape(format!("n = {n} must be odd")));
    }
    let minus_one = spec.neg(Elem::ONE);
    let perm = (0..n).map(|i| (n - i) % n).collect();
    let signs = (0..n)
        .map(|i| if i == 0 { Elem::ONE } else { minus_one })
        .collect();
    let p = MonomialMatrix::new(spec, perm, signs)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = spec.order() as u32;
    let basis = (0..n).map(|i| {
        let mut c = vec![Elem::ZERO; n];
        c[i] = Elem::ONE;
        c
    });
    let random = (0..RANDOM_SAMPLES).map(|_| {
        (0..n)
            .map(|_| Elem(rng.gen_range(0..q)))
            .collect::<Vec<_>>()
    });
    for coeffs in basis.chain(random) {
        let code = DNCode::new(RingElement::new(spec, coeffs));
        if !conjugates_to_transpose(&p, code.matrix()) {
            return Err(Error::InternalTheoremViolation(format!(
                "P A P != A^T for a = {:?}",
                code.a().indices()
            )));
        }
    }
    Ok(p)
}

/// Whether `P A P = A^T`.
pub(crate) fn conjugates_to_transpose(p: &MonomialMatrix, a: &[Vec<Elem>]) -> bool {
    // (P A P)_{ij} = s_i s_j A_{pi(i), pi(j)} for P with row i = s_i e_{pi(i)}.
    let n = a.len();
    let (perm, signs) = (p.perm(), p.signs());
    let spec = p.spec();
    (0..n).all(|i| {
        (0..n).all(|j| spec.mul(spec.mul(signs[i], signs[j]), a[perm[i]][perm[j]]) == a[j][i])
    })
}

/// Checks run by [`consta_dihedral_witness`], in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessCheck {
    TauInvariance,
    SigmaInvariance,
    ConjugationRelation,
    AntiswapSquare,
    DihedralPermutationGroup,
}

/// Monomial generators `tau`, `sigma` preserving a self-dual DN code.
#[derive(Debug, Clone, Serialize)]
pub struct DihedralWitness {
    /// Negashift applied to both halves.
    pub tau: MonomialMatrix,
    /// `diag(P, P)` followed by the antiswap `(x, y) -> (y, -x)`.
    pub sigma: MonomialMatrix,
    /// `sigma tau sigma^{-1} = relation_sign * tau^{-1}`, `relation_sign` in `{1, -1}`.
    pub relation_sign: i8,
    /// Order of the group generated by the permutation parts of `tau`, `sigma`.
    pub permutation_group_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub enum WitnessOutcome {
    Found(DihedralWitness),
    NotFound(WitnessCheck),
}

fn preserves(code: &DNCode, m: &MonomialMatrix) -> bool {
    code.generator()
        .iter()
        .all(|row| code.contains(&m.apply(row)).unwrap_or(false))
}

/// Builds and verifies the dihedral witness for a self-dual DN code with `n` odd, `n >= 3`.
pub fn consta_dihedral_witness(code: &DNCode) -> Result<WitnessOutcome> {
    consta_dihedral_witness_seeded(code, 0)
}

/// As [`consta_dihedral_witness`], with `seed` driving the random checks on `P`.
pub fn consta_dihedral_witness_seeded(code: &DNCode, seed: u64) -> Result<WitnessOutcome> {
    let n = code.n();
    if n % 2 == 0 || n < 3 {
        return Err(Error::UnsupportedShape(format!(
            "n = {n} must be odd and at least 3"
        )));
    }
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let spec = code.spec();
    let shift = MonomialMatrix::negashift(spec, n);
    let tau = shift.block_diag(&shift);
    let p = lemma1_p_seeded(n, spec, seed)?;
    let antiswap = MonomialMatrix::antiswap(spec, n);
    let sigma = p.block_diag(&p).compose(&antiswap);

    if !preserves(code, &tau) {
        return Ok(WitnessOutcome::NotFound(WitnessCheck::TauInvariance));
    }
    if !preserves(code, &sigma) {
        return Ok(WitnessOutcome::NotFound(WitnessCheck::SigmaInvariance));
    }
    let conjugated = sigma.compose(&tau).compose(&sigma.inverse());
    let minus_one = spec.neg(Elem::ONE);
    let relation_sign = match conjugated.scalar_ratio(&tau.inverse()) {
        Some(Elem::ONE) => 1,
        Some(c) if c == minus_one => -1,
        _ => return Ok(WitnessOutcome::NotFound(WitnessCheck::ConjugationRelation)),
    };
    if antiswap.pow(2) != MonomialMatrix::scalar(spec, 2 * n, minus_one) {
        return Ok(WitnessOutcome::NotFound(WitnessCheck::AntiswapSquare));
    }
    let (r, s) = (tau.perm(), sigma.perm());
    let group_order = permutation_group_order(&[r, s]);
    let dihedral = permutation_order(r) == n
        && permutation_order(s) == 2
        && permutation_then(&permutation_then(&permutation_inverse(s), r), s)
            == permutation_inverse(r)
        && group_order == 2 * n;
    if !dihedral {
        return Ok(WitnessOutcome::NotFound(
            WitnessCheck::DihedralPermutationGroup,
        ));
    }
    Ok(WitnessOutcome::Found(DihedralWitness {
        tau,
        sigma,
        relation_sign,
        permutation_group_order: group_order,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn transpose_conjugator_for_n3() {
        let f = field(7);
        let p = lemma1_p(3, &f).unwrap();
        assert_eq!(
            p.to_dense(),
            vec![
                vec![Elem(1), Elem(0), Elem(0)],
                vec![Elem(0), Elem(0), Elem(6)],
                vec![Elem(0), Elem(6), Elem(0)],
            ]
        );
    }

    #[test]
    fn transpose_conjugator_specific_and_trivial() {
        let f = field(3);
        let p = lemma1_p(5, &f).unwrap();
        let code = DNCode::new(RingElement::from_indices(&f, 5, &[1, 2, 0, 1, 1]).unwrap());
        assert!(conjugates_to_transpose(&p, code.matrix()));
        let one = lemma1_p(1, &f).unwrap();
        assert_eq!(one, MonomialMatrix::identity(&f, 1));
        assert!(matches!(lemma1_p(4, &f), Err(Error::UnsupportedShape(_))));
    }

    /// Brute-force search over sign choices alpha with alpha^2 = 1: only -1 works.
    #[test]
    fn sign_search_finds_only_minus_one() {
        for q in [3u64, 5, 7, 13] {
            let f = field(q);
            for n in [3usize, 5, 7] {
                let solutions: Vec<Elem> = f
                    .elements()
                    .filter(|&alpha| f.mul(alpha, alpha) == Elem::ONE)
                    .filter(|&alpha| {
                        let perm = (0..n).map(|i| (n - i) % n).collect();
                        let signs = (0..n)
                            .map(|i| if i == 0 { Elem::ONE } else { alpha })
                            .collect();
                        let p = MonomialMatrix::new(&f, perm, signs).unwrap();
                        (0..n).all(|i| {
                            let mut c = vec![Elem::ZERO; n];
                            c[i] = Elem::ONE;
                            conjugates_to_transpose(
                                &p,
                                DNCode::new(RingElement::new(&f, c)).matrix(),
                            )
                        })
                    })
                    .collect();
                assert_eq!(solutions, vec![f.neg(Elem::ONE)], "q={q} n={n}");
            }
        }
    }

    #[test]
    fn witness_for_scalar_code() {
        let f = field(5);
        let code = DNCode::new(RingElement::from_indices(&f, 3, &[2, 0, 0]).unwrap());
        let WitnessOutcome::Found(w) = consta_dihedral_witness(&code).unwrap() else {
            panic!("witness expected");
        };
        assert_eq!(w.permutation_group_order, 6);
        // sigma maps (m, 2m) to (2m', -m') style codewords; spot check membership.
        let word = code.encode(&[Elem(1), Elem(3), Elem(0)]).unwrap();
        assert!(code.contains(&w.sigma.apply(&word)).unwrap());
    }

    #[test]
    fn witness_preconditions() {
        let f3 = field(3);
        let tetra = DNCode::new(RingElement::from_indices(&f3, 2, &[1, 1]).unwrap());
        assert!(matches!(
            consta_dihedral_witness(&tetra),
            Err(Error::UnsupportedShape(_))
        ));
        let f5 = field(5);
        let zero = DNCode::new(RingElement::zero(&f5, 3));
        assert_eq!(
            consta_dihedral_witness(&zero).unwrap_err(),
            Error::NotSelfDual
        );
    }

    #[test]
    fn sigma_fails_for_non_self_dual_code() {
        // Bypass the precondition to confirm the invariance check is not vacuous.
        let f = field(5);
        let code = DNCode::new(RingElement::from_indices(&f, 3, &[1, 1, 0]).unwrap());
        let n = 3;
        let p = lemma1_p(n, &f).unwrap();
        let sigma = p.block_diag(&p).compose(&MonomialMatrix::antiswap(&f, n));
        assert!(!preserves(&code, &sigma));
        let shift = MonomialMatrix::negashift(&f, n);
        assert!(preserves(&code, &shift.block_diag(&shift)));
    }
}
