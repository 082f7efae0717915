//! The q-ary entropy function, the threshold `H_q(delta) = 1/4`, and
//! finite-length checks of the counting argument behind it.

use serde::Serialize;

use crate::census::{
    count_self_dual, enumerate_self_dual_bruteforce, enumerate_self_dual_crt, TwoFactorSplit,
};
use crate::dncode::DNCode;
use crate::negafactor::profile_for;
use crate::{checked_pow, Budget, Error, Result};

/// Default bisection tolerance on `|H_q(delta) - 1/4|`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Exponent differences smaller than this are treated as ties.
pub const EXPONENT_TOL: f64 = 1e-6;

const TARGET: f64 = 0.25;

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)` on `[0, (q-1)/q]`.
pub fn entropy_q(x: f64, q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::Domain(format!("q = {q} must be at least 2")));
    }
    let qf = q as f64;
    let max = (qf - 1.0) / qf;
    if !(0.0..=max).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, {max}]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln_q = qf.ln();
    Ok((x * (qf - 1.0).ln() - x * x.ln() - (1.0 - x) * (-x).ln_1p()) / ln_q)
}

/// The `delta` in `(0, (q-1)/q)` with `H_q(delta) = 1/4`, by bisection.
pub fn gv_threshold(q: u64, tol: f64) -> Result<f64> {
    gv_threshold_in(q, tol, 0.0, (q as f64 - 1.0) / q as f64)
}

/// Bisection from a caller-supplied bracket `[lo, hi]` with `H_q(lo) < 1/4 < H_q(hi)`.
pub fn gv_threshold_in(q: u64, tol: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    if q < 3 {
        return Err(Error::Domain(format!("q = {q} must be at least 3")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if !(entropy_q(lo, q)? < TARGET && entropy_q(hi, q)? > TARGET) {
        return Err(Error::Domain(format!(
            "[{lo}, {hi}] does not bracket H_q = 1/4"
        )));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        let h = entropy_q(mid, q)?;
        if (h - TARGET).abs() <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if h < TARGET {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `lhs_exponent < rhs_exponent` as base-`q` exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentComparison {
    pub lhs_exponent: f64,
    pub rhs_exponent: f64,
    pub strict: bool,
}

impl ExponentComparison {
    fn new(lhs_exponent: f64, rhs_exponent: f64) -> Self {
        ExponentComparison {
            lhs_exponent,
            rhs_exponent,
            strict: lhs_exponent < rhs_exponent - EXPONENT_TOL,
        }
    }
}

/// Counting comparison at a fixed length.
///
/// Case (i): DN codes containing some word of relative weight `<= delta`
/// (at most `q^(2n H) q^(n/2)`) versus all DN codes (`q^n`).
/// Case (ii): self-dual DN codes containing such a word (at most `q^(2n H)`)
/// versus all self-dual DN codes (`q^(n/2)` up to a constant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GvCheck {
    pub q: u64,
    pub n: usize,
    pub delta: f64,
    pub entropy: f64,
    pub case_i: ExponentComparison,
    pub case_ii: ExponentComparison,
    /// Number of DN codes of length `2n`: one per `a` in `R`.
    pub total_count: u128,
    pub self_dual_count: u128,
    /// True if `self_dual_count` came from enumeration rather than the formula.
    pub self_dual_enumerated: bool,
    /// Case (i) with `log_q(total_count)` on the right.
    pub case_i_exact: ExponentComparison,
    /// Case (ii) with `log_q(self_dual_count)` on the right.
    pub case_ii_exact: ExponentComparison,
}

/// Evaluates both comparisons at `(q, n, delta)` for the two-factor shape.
pub fn gv_counting_check(q: u64, n: usize, delta: f64, budget: Budget) -> Result<GvCheck> {
    let spec = crate::galois::FieldSpec::with_order(q)?;
    TwoFactorSplit::new(n, &spec)?;
    let entropy = entropy_q(delta, q)?;
    let half = n as f64 / 2.0;
    let ball = 2.0 * n as f64 * entropy;
    let total_count =
        checked_pow(q, n).ok_or_else(|| Error::Domain("q^n overflows u128".into()))?;
    let (self_dual_count, self_dual_enumerated) = match enumerate_self_dual_crt(n, &spec, budget) {
        Ok(codes) => (codes.len() as u128, true),
        Err(Error::Capacity { .. }) => (count_self_dual(&profile_for(n, &spec)?)?, false),
        Err(e) => return Err(e),
    };
    let log_q = |c: u128| (c as f64).ln() / (q as f64).ln();
    Ok(GvCheck {
        q,
        n,
        delta,
        entropy,
        case_i: ExponentComparison::new(half + ball, n as f64),
        case_ii: ExponentComparison::new(ball, half),
        total_count,
        self_dual_count,
        self_dual_enumerated,
        case_i_exact: ExponentComparison::new(half + ball, log_q(total_count)),
        case_ii_exact: ExponentComparison::new(ball, log_q(self_dual_count)),
    })
}

/// `sum_{i <= radius} C(n, i) (q-1)^i`.
pub fn hamming_ball_volume(q: u64, n: usize, radius: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut scale: u128 = 1;
    for i in 0..=radius.min(n) {
        if i > 0 {
            binom = binom.checked_mul((n - i + 1) as u128)? / i as u128;
            scale = scale.checked_mul(q as u128 - 1)?;
        }
        total = total.checked_add(binom.checked_mul(scale)?)?;
    }
    Some(total)
}

/// `|log_q(V_q(n, floor(x n))) / n - H_q(x)|`.
pub fn ball_entropy_gap(q: u64, n: usize, x: f64) -> Result<f64> {
    let h = entropy_q(x, q)?;
    let radius = (x * n as f64 + 1e-9).floor() as usize;
    let vol = hamming_ball_volume(q, n, radius)
        .ok_or_else(|| Error::Domain("ball volume overflows u128".into()))?;
    Ok(((vol as f64).ln() / (q as f64).ln() / n as f64 - h).abs())
}

/// One row of the family table: the best self-dual DN code of length `2n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub q: u64,
    pub n: usize,
    pub count_formula: Option<u128>,
    pub count_enum: Option<usize>,
    pub best_d: Option<usize>,
    pub delta: Option<f64>,
    #[serde(rename = "H_q_delta")]
    pub h_q_delta: Option<f64>,
    pub rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl FamilyRow {
    pub const CSV_HEADER: &'static str = "q,n,count_formula,count_enum,best_d,delta,H_q_delta";

    pub fn csv(&self) -> String {
        fn cell<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{}",
            self.q,
            self.n,
            cell(&self.count_formula),
            cell(&self.count_enum),
            cell(&self.best_d),
            cell(&self.delta),
            cell(&self.h_q_delta)
        )
    }
}

fn family_row(q: u64, n: usize, budget: Budget) -> Result<FamilyRow> {
    let spec = crate::galois::FieldSpec::with_order(q)?;
    let mut row = FamilyRow {
        q,
        n,
        count_formula: None,
        count_enum: None,
        best_d: None,
        delta: None,
        h_q_delta: None,
        rate: 0.5,
        skipped: None,
    };
    match profile_for(n, &spec).and_then(|p| count_self_dual(&p)) {
        Ok(c) => row.count_formula = Some(c),
        Err(Error::HypothesisUnmet(_)) => {}
        Err(e) => return Err(e),
    }
    let codes = match enumerate_self_dual_bruteforce(n, &spec, budget) {
        Err(Error::Capacity { .. }) => enumerate_self_dual_crt(n, &spec, budget)?,
        other => other?,
    };
    row.count_enum = Some(codes.len());
    let mut best = None;
    for a in codes {
        let d = DNCode::new(a).min_distance(None, budget)?.d;
        best = best.max(Some(d));
    }
    if let Some(d) = best {
        let delta = d as f64 / (2 * n) as f64;
        row.best_d = Some(d);
        row.delta = Some(delta);
        // H_q is only defined up to (q-1)/q; larger delta has no entropy value.
        row.h_q_delta = entropy_q(delta, q).ok();
    }
    Ok(row)
}

/// Family table over `n_list`; rows over capacity are marked skipped.
pub fn family_report(q: u64, n_list: &[usize], budget: Budget) -> Result<Vec<FamilyRow>> {
    crate::galois::FieldSpec::with_order(q)?;
    n_list
        .iter()
        .map(|&n| match family_row(q, n, budget) {
            Err(
                e @ (Error::Capacity { .. }
                | Error::HypothesisUnmet(_)
                | Error::NotSeparable { .. }),
            ) => {
                log::warn!("skipping n = {n}: {e}");
                Ok(FamilyRow {
                    q,
                    n,
                    count_formula: None,
                    count_enum: None,
                    best_d: None,
                    delta: None,
                    h_q_delta: None,
                    rate: 0.5,
                    skipped: Some(e.to_string()),
                })
            }
            other => other,
        })
        .collect()
}
