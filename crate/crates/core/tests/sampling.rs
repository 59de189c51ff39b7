use lqn_core::algebra::AtomStructure;
use lqn_core::bounds::{att_event_probability, tatta_event_probability};
use lqn_core::coloring::{
    event_counts, fill_random_colors, monte_carlo_trial, represent, rng_for, Outcome,
};
use lqn_core::geometry::build_doubled;
use lqn_core::verify::{verify_full, Report};

fn within(hits: u64, trials: u64, p: f64, k: f64) -> bool {
    let freq = hits as f64 / trials as f64;
    (freq - p).abs() <= k * (p * (1.0 - p) / trials as f64).sqrt()
}

#[test]
fn colors_are_uniform() {
    let mut m = build_doubled(5).unwrap().with_n(2).unwrap();
    let plane = m.plane_size();
    let mut ones = 0u64;
    let mut total = 0u64;
    for seed in 0..40 {
        fill_random_colors(&mut m, &mut rng_for(seed, 0));
        for x in 0..plane {
            for y in plane..2 * plane {
                total += 1;
                ones += u64::from(m.get(x, y) == 8);
            }
        }
    }
    assert!(within(ones, total, 0.5, 3.0), "{ones}/{total}");
}

#[test]
fn fixed_events_match_their_probabilities() {
    let doubled = build_doubled(3).unwrap();
    let trials = 4000;
    let (mut att, mut tatta) = (0, 0);
    for t in 0..trials {
        let o = monte_carlo_trial(&doubled, 2, 11, t).unwrap();
        att += u64::from(o.att_fixed);
        tatta += u64::from(o.tatta_fixed);
    }
    assert!(
        within(att, trials, att_event_probability(3, 2), 3.0),
        "att {att}"
    );
    assert!(
        within(tatta, trials, tatta_event_probability(3, 2), 3.0),
        "tatta {tatta}"
    );
}

#[test]
fn pooled_failure_rate_falls_with_q() {
    // Mean number of unmet t-edge needs per event, against its expectation.
    let rate = |q: u64, trials: u64| {
        let doubled = build_doubled(q).unwrap();
        let (_, events) = event_counts(q as u32, 2);
        let hits: u64 = (0..trials)
            .map(|t| monte_carlo_trial(&doubled, 2, 3, t).unwrap().tatta_failures)
            .sum();
        hits as f64 / (events * trials) as f64
    };
    let (r5, r11) = (rate(5, 200), rate(11, 10));
    assert!((r5 - tatta_event_probability(5, 2)).abs() < 0.01, "{r5}");
    assert!(
        (r11 - tatta_event_probability(11, 2)).abs() < 0.002,
        "{r11}"
    );
    assert!(r11 < r5);
}

#[test]
fn more_colors_need_larger_planes() {
    // At q = 5 two colors are attainable far more often than four, which
    // cannot work at all (2n > q).
    let successes = |n: u32| {
        (0..20)
            .filter(|&seed| represent(5, n, seed, Some(300)).unwrap().1.outcome == Outcome::Success)
            .count()
    };
    assert_eq!(successes(4), 0);
    assert_eq!(successes(1), 20);
}

#[test]
fn successful_runs_verify() {
    for seed in 0..3 {
        let (m, run) = represent(3, 1, seed, None).unwrap();
        assert_eq!(run.outcome, Outcome::Success);
        let s = AtomStructure::new(3, 1).unwrap();
        assert!(verify_full(&m, &s, Report::First).unwrap().valid);
    }
}

#[test]
#[ignore = "about five minutes; run with --ignored"]
fn success_rate_at_23_beats_5() {
    let rate = |q: u64| {
        (0..50)
            .filter(|&seed| represent(q, 2, seed, None).unwrap().1.outcome == Outcome::Success)
            .count()
    };
    let (small, large) = (rate(5), rate(23));
    assert!(large >= small, "q=5: {small}/50, q=23: {large}/50");
}
