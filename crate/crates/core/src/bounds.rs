//! Probability thresholds for random t-colorings.
//!
//! For a uniform coloring of the cross pairs of the doubled structure with `n`
//! colors:
//!
//! * a fixed a-edge misses a fixed `(t_i, t_j)` witness with probability
//!   `(1 - 1/n^2)^(q^2)`;
//! * a fixed t-edge misses a fixed `(a_k, t_j)` witness in one orientation
//!   with probability `(1 - 1/n)^(q - 1)`.
//!
//! Summing over all edges gives the union bound
//!
//! ```text
//! 2 C(q^2, 2) n^2 (1 - 1/n^2)^(q^2) + q^4 2n (q + 1) (1 - 1/n)^(q - 1)
//! ```
//!
//! and with `p = 2n(q + 1)(1 - 1/n)^(q - 1)` and `d = 4q^2` the local lemma
//! asks for `e d p <= 1`, or in logarithms
//!
//! ```text
//! 1 + ln 8 + ln n + 2 ln q + ln(q + 1) <= (q - 1) ln(n / (n - 1)).
//! ```
//!
//! Logarithms are natural throughout.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{E, LN_2};
use core::fmt::Write;

use libm::{ceil, exp, log, log1p, pow};

use crate::primes::prime_powers_from;
use crate::{Error, Result};

/// How far past a candidate the epsilon search requires the inequality to
/// keep holding.
pub const PERSISTENCE: u64 = 100;

/// Default upper limit on `n` for [`min_n_for_epsilon`].
pub const DEFAULT_EPSILON_CAP: u64 = 10_000_000;

/// Natural logs of the two addends of the union bound (a-edges, t-edges).
/// Both are `-inf` for `n = 1`.
pub fn union_bound_log_terms(q: u64, n: u64) -> (f64, f64) {
    if n <= 1 {
        return (f64::NEG_INFINITY, f64::NEG_INFINITY);
    }
    let (qf, nf) = (q as f64, n as f64);
    let ln_q = log(qf);
    let ln_n = log(nf);
    // 2 * C(q^2, 2) = q^2 (q^2 - 1)
    let att = 2.0 * ln_q + log(qf * qf - 1.0) + 2.0 * ln_n + qf * qf * log1p(-1.0 / (nf * nf));
    let tatta = 4.0 * ln_q + LN_2 + ln_n + log(qf + 1.0) + (qf - 1.0) * log1p(-1.0 / nf);
    (att, tatta)
}

/// The union bound on the probability that some edge fails.
pub fn union_bound_value(q: u64, n: u64) -> f64 {
    let (att, tatta) = union_bound_log_terms(q, n);
    exp(att) + exp(tatta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LllCheck {
    pub satisfied: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// The local lemma inequality in logarithmic form.
pub fn lll_satisfied(q: u64, n: u64) -> LllCheck {
    let (qf, nf) = (q as f64, n as f64);
    let lhs = 1.0 + log(8.0) + log(nf) + 2.0 * log(qf) + log(qf + 1.0);
    let rhs = (qf - 1.0) * log(nf / (nf - 1.0));
    LllCheck {
        satisfied: lhs <= rhs,
        lhs,
        rhs,
    }
}

/// Probability that a fixed a-edge misses a fixed `(t_i, t_j)` witness.
pub fn att_event_probability(q: u64, n: u64) -> f64 {
    let (qf, nf) = (q as f64, n as f64);
    pow(1.0 - 1.0 / (nf * nf), qf * qf)
}

/// Probability that a fixed t-edge misses a fixed `(a_k, t_j)` witness in one
/// orientation.
pub fn tatta_event_probability(q: u64, n: u64) -> f64 {
    let (qf, nf) = (q as f64, n as f64);
    pow(1.0 - 1.0 / nf, qf - 1.0)
}

/// Union bound over all needs of one a-edge, `n^2 (1 - 1/n^2)^(q^2)`.
pub fn att_edge_probability(q: u64, n: u64) -> f64 {
    (n * n) as f64 * att_event_probability(q, n)
}

/// Union bound over all needs of one t-edge, `2n (q + 1) (1 - 1/n)^(q - 1)`.
pub fn tatta_edge_probability(q: u64, n: u64) -> f64 {
    2.0 * n as f64 * (q as f64 + 1.0) * tatta_event_probability(q, n)
}

/// Dependency bound `4 q^2`.
pub fn dependency_bound(q: u64) -> f64 {
    4.0 * (q as f64) * (q as f64)
}

/// `e d p` evaluated directly, with `p` the t-edge probability.
pub fn lll_product(q: u64, n: u64) -> f64 {
    E * dependency_bound(q) * tatta_edge_probability(q, n)
}

/// `e d p` with `p` the larger of the a-edge and t-edge probabilities.
pub fn lll_product_with_att(q: u64, n: u64) -> f64 {
    E * dependency_bound(q) * att_edge_probability(q, n).max(tatta_edge_probability(q, n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub q: u64,
    pub n: u64,
    pub union_bound_value: f64,
    pub lll_lhs: f64,
    pub lll_rhs: f64,
    pub union_ok: bool,
    pub lll_ok: bool,
    /// `q > 2304 n^2 + 1`, the older sufficient condition.
    pub legacy_ok: bool,
    /// `2n > q`: no representation exists.
    pub infeasible: bool,
    pub att_edge_probability: f64,
    pub tatta_edge_probability: f64,
    /// The product condition with the larger of the two edge probabilities.
    pub lll_ok_with_att: bool,
}

pub fn bounds_report(q: u64, n: u64) -> Result<BoundsReport> {
    if q < 2 || n < 2 {
        return Err(Error::InvalidParameter("bounds need q >= 2 and n >= 2"));
    }
    let ub = union_bound_value(q, n);
    let lll = lll_satisfied(q, n);
    Ok(BoundsReport {
        q,
        n,
        union_bound_value: ub,
        lll_lhs: lll.lhs,
        lll_rhs: lll.rhs,
        union_ok: ub < 1.0,
        lll_ok: lll.satisfied,
        legacy_ok: q > 2304 * n * n + 1,
        infeasible: 2 * n > q,
        att_edge_probability: att_edge_probability(q, n),
        tatta_edge_probability: tatta_edge_probability(q, n),
        lll_ok_with_att: lll_product_with_att(q, n) <= 1.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub n: u64,
    /// Smallest prime power with union bound below one.
    pub q_union: u64,
    /// Smallest prime power satisfying the local lemma inequality.
    pub q_lll: u64,
}

/// Smallest prime power `q >= 2` with `pred(q)`.
pub fn smallest_prime_power(mut pred: impl FnMut(u64) -> bool) -> u64 {
    prime_powers_from(2)
        .find(|&q| pred(q))
        .expect("prime powers are unbounded")
}

/// One row per `n` in `n_min..=n_max`; empty if `n_max < n_min`.
pub fn threshold_table(n_min: u64, n_max: u64) -> Result<Vec<ThresholdRow>> {
    if n_min < 2 {
        return Err(Error::InvalidParameter("n_min must be at least 2"));
    }
    Ok((n_min..=n_max)
        .map(|n| ThresholdRow {
            n,
            q_union: smallest_prime_power(|q| union_bound_value(q, n) < 1.0),
            q_lll: smallest_prime_power(|q| lll_satisfied(q, n).satisfied),
        })
        .collect())
}

/// Smallest prime power meeting the product condition when the a-edge
/// probability is also taken into account.
pub fn q_lll_with_att(n: u64) -> u64 {
    smallest_prime_power(|q| lll_product_with_att(q, n) <= 1.0)
}

/// `ceil(n (ln n)^(1 + eps))`.
pub fn epsilon_q(n: u64, eps: f64) -> u64 {
    let nf = n as f64;
    ceil(nf * pow(log(nf), 1.0 + eps)) as u64
}

/// Whether the local lemma inequality holds at `q = ceil(n (ln n)^(1+eps))`.
pub fn epsilon_predicate(n: u64, eps: f64) -> bool {
    lll_satisfied(epsilon_q(n, eps), n).satisfied
}

/// Smallest `n >= 2` with [`epsilon_predicate`] true at `n` and at the next
/// [`PERSISTENCE`] integers, or `None` if no such `n <= cap` exists.
pub fn min_n_for_epsilon(eps: f64, cap: u64) -> Result<Option<u64>> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter("epsilon must be positive"));
    }
    let mut start = 2;
    let mut run = 0;
    let mut n = 2;
    while start <= cap {
        if epsilon_predicate(n, eps) {
            if run == 0 {
                start = n;
            }
            run += 1;
            if run > PERSISTENCE {
                return Ok(Some(start));
            }
        } else {
            run = 0;
            start = n + 1;
        }
        n += 1;
    }
    Ok(None)
}

/// `n,q_union,q_lll` rows.
pub fn figure1_csv(n_min: u64, n_max: u64) -> Result<String> {
    let mut out = String::from("n,q_union,q_lll\n");
    if n_max >= n_min {
        for row in threshold_table(n_min, n_max)? {
            let _ = writeln!(out, "{},{},{}", row.n, row.q_union, row.q_lll);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonRow {
    pub eps: f64,
    pub n_min: Option<u64>,
    pub cap: u64,
}

pub fn figure2_rows(eps_grid: &[f64], cap: u64) -> Result<Vec<EpsilonRow>> {
    eps_grid
        .iter()
        .map(|&eps| {
            Ok(EpsilonRow {
                eps,
                n_min: min_n_for_epsilon(eps, cap)?,
                cap,
            })
        })
        .collect()
}

/// `eps,n_min,status` rows; `status` is `ok` or `exceeds_cap`.
pub fn figure2_csv(eps_grid: &[f64], cap: u64) -> Result<String> {
    let mut out = String::from("eps,n_min,status\n");
    for row in figure2_rows(eps_grid, cap)? {
        let line = match row.n_min {
            Some(n) => format!("{},{},ok", row.eps, n),
            None => format!("{},,exceeds_cap", row.eps),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
