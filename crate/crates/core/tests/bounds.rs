use lqn_core::bounds::*;
use lqn_core::primes::is_prime_power;

fn ln_union_bound(q: u64, n: u64) -> f64 {
    let (a, t) = union_bound_log_terms(q, n);
    let hi = a.max(t);
    hi + ((a - hi).exp() + (t - hi).exp()).ln()
}

/// The first `q` from which the union bound keeps falling up to 2000.
fn last_rise(n: u64) -> u64 {
    (3..=2000)
        .filter(|&q| ln_union_bound(q, n) >= ln_union_bound(q - 1, n))
        .max()
        .unwrap_or(2)
}

#[test]
fn union_bound_decreases_in_q() {
    let mut rises = Vec::new();
    for n in 2..=50u64 {
        for q in 3..=2000u64 {
            if ln_union_bound(q, n) >= ln_union_bound(q - 1, n) {
                rises.push((n, q));
            }
        }
    }
    assert!(
        rises.is_empty(),
        "{} non-decreasing steps, e.g. (n, q) = {:?}; last rise for n = 2 at q = {}, for n = 50 at q = {}",
        rises.len(),
        &rises[..rises.len().min(5)],
        last_rise(2),
        last_rise(50),
    );
}

#[test]
fn union_bound_decreases_past_its_peak() {
    for n in 2..=50u64 {
        let peak = last_rise(n);
        // the peak sits well below the local lemma threshold
        assert!(
            peak < threshold_table(n, n).unwrap()[0].q_lll,
            "n={n} peak={peak}"
        );
        for q in peak + 1..=2000 {
            assert!(ln_union_bound(q, n) < ln_union_bound(q - 1, n));
        }
    }
}

#[test]
fn log_and_product_forms_agree() {
    for n in 2..=100u64 {
        for q in 2..=2000u64 {
            let c = lll_satisfied(q, n);
            let direct = lll_product(q, n);
            if tatta_event_probability(q, n).is_normal() {
                assert!(
                    ((c.lhs - c.rhs) - direct.ln()).abs() < 1e-9 * (1.0 + direct.ln().abs()),
                    "q={q} n={n}"
                );
            }
            if (c.lhs - c.rhs).abs() > 1e-9 {
                assert_eq!(c.satisfied, direct <= 1.0, "q={q} n={n}");
            }
        }
    }
}

#[test]
fn thresholds_are_ordered() {
    for row in threshold_table(2, 60).unwrap() {
        assert!(is_prime_power(row.q_union) && is_prime_power(row.q_lll));
        assert!(row.q_lll < row.q_union, "{row:?}");
        assert!(row.q_lll <= 2304 * row.n * row.n + 1);
        assert!(2 * row.n <= row.q_lll);
        // minimality
        let below = (2..row.q_lll).filter(|&q| is_prime_power(q));
        assert!(below.clone().all(|q| !lll_satisfied(q, row.n).satisfied));
    }
}

#[test]
fn including_the_a_edge_term_does_not_move_thresholds() {
    for n in 2..=20 {
        let row = &threshold_table(n, n).unwrap()[0];
        assert_eq!(q_lll_with_att(n), row.q_lll, "n={n}");
    }
}

#[test]
fn thresholds_grow_with_n() {
    let rows = threshold_table(2, 200).unwrap();
    for w in rows.windows(2) {
        assert!(w[0].q_lll <= w[1].q_lll && w[0].q_union <= w[1].q_union);
    }
}

#[test]
fn epsilon_search_is_monotone() {
    let cap = 200_000;
    let key = |e| min_n_for_epsilon(e, cap).unwrap().unwrap_or(u64::MAX);
    let grid = [0.5, 1.0, 1.5, 2.0, 3.0];
    let found: Vec<u64> = grid.iter().map(|&e| key(e)).collect();
    assert!(found.windows(2).all(|w| w[0] >= w[1]), "{found:?}");
    assert_eq!(found[0], u64::MAX);
    assert!(min_n_for_epsilon(0.0, 10).is_err());
}
