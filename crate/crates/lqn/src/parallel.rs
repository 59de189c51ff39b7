//! Thread-parallel verification and Monte Carlo estimation.
//!
//! Work is split over vertices (verification) or trials (Monte Carlo) and
//! merged in index order, so results do not depend on the thread count.

use rayon::prelude::*;

use lqn_core::algebra::AtomStructure;
use lqn_core::bounds::{att_event_probability, tatta_event_probability, union_bound_value};
use lqn_core::coloring::{event_counts, monte_carlo_trial, TrialOutcome};
use lqn_core::geometry::{build_doubled, LabelMatrix};
use lqn_core::verify::{Report, Verifier, VerifyReport};
use lqn_core::{Error, Result};

/// Runs `f` on a pool of `threads` workers, or rayon's default width.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    builder.build().expect("thread pool").install(f)
}

/// Same result as [`lqn_core::verify::verify_full`], computed in parallel
/// over the smallest vertex of each pair.
pub fn verify_parallel(m: &LabelMatrix, s: &AtomStructure, report: Report) -> Result<VerifyReport> {
    let verifier = Verifier::new(m, s)?;
    let per_vertex: Vec<_> = (0..verifier.vertex_count())
        .into_par_iter()
        .map(|x| verifier.check_vertex(x, report))
        .collect();
    let violations = match report {
        Report::All => per_vertex.into_iter().flatten().collect(),
        Report::First => per_vertex
            .into_iter()
            .find(|v| !v.is_empty())
            .unwrap_or_default(),
    };
    Ok(VerifyReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// Empirical frequency of an event and the analytic probability it is
/// compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub hits: u64,
    pub samples: u64,
    pub empirical: f64,
    pub analytic: f64,
    /// Binomial standard error of the empirical frequency under `analytic`.
    pub sigma: f64,
}

impl Estimate {
    fn new(hits: u64, samples: u64, analytic: f64) -> Self {
        let empirical = hits as f64 / samples as f64;
        Estimate {
            hits,
            samples,
            empirical,
            analytic,
            sigma: (analytic * (1.0 - analytic) / samples as f64).sqrt(),
        }
    }

    pub fn within_sigmas(&self, k: f64) -> bool {
        (self.empirical - self.analytic).abs() <= k * self.sigma
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloSummary {
    pub q: u64,
    pub n: u32,
    pub seed: u64,
    pub trials: u64,
    /// Fixed a-edge, fixed color pair.
    pub att: Estimate,
    /// Fixed t-edge, fixed slope and color, one orientation.
    pub tatta: Estimate,
    /// Averages over every event of each kind; `sigma` is that of a single
    /// event, an upper bound for the average.
    pub att_pooled: Estimate,
    pub tatta_pooled: Estimate,
    /// Some edge fails.
    pub any_failure: f64,
    /// Standard error of `any_failure`.
    pub any_failure_sigma: f64,
    pub union_bound: f64,
}

impl MonteCarloSummary {
    pub fn union_bound_respected(&self, k: f64) -> bool {
        self.any_failure <= self.union_bound + k * self.any_failure_sigma
    }
}

/// `trials` independent colorings of the doubled `q` structure with `n`
/// colors, trial `t` drawing from stream `t` of `seed`.
pub fn monte_carlo(q: u64, n: u32, trials: u64, seed: u64) -> Result<MonteCarloSummary> {
    if n < 2 || trials == 0 {
        return Err(Error::InvalidParameter(
            "Monte Carlo needs n >= 2 and trials >= 1",
        ));
    }
    let doubled = build_doubled(q)?;
    let totals = (0..trials)
        .into_par_iter()
        .map(|t| monte_carlo_trial(&doubled, n, seed, t))
        .try_fold(Totals::default, |acc, r| r.map(|o| acc.add(&o)))
        .try_reduce(Totals::default, |a, b| Ok(a.merge(&b)))?;
    let (att_events, tatta_events) = event_counts(doubled.q(), n);
    let nn = u64::from(n);
    let p_att = att_event_probability(q, nn);
    let p_tatta = tatta_event_probability(q, nn);
    let any = totals.any as f64 / trials as f64;
    Ok(MonteCarloSummary {
        q,
        n,
        seed,
        trials,
        att: Estimate::new(totals.att_fixed, trials, p_att),
        tatta: Estimate::new(totals.tatta_fixed, trials, p_tatta),
        att_pooled: Estimate::new(totals.att_all, trials * att_events, p_att)
            .with_sigma_of(trials, p_att),
        tatta_pooled: Estimate::new(totals.tatta_all, trials * tatta_events, p_tatta)
            .with_sigma_of(trials, p_tatta),
        any_failure: any,
        any_failure_sigma: (any * (1.0 - any) / trials as f64).sqrt(),
        union_bound: union_bound_value(q, nn),
    })
}

impl Estimate {
    fn with_sigma_of(mut self, trials: u64, p: f64) -> Self {
        self.sigma = (p * (1.0 - p) / trials as f64).sqrt();
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Totals {
    att_fixed: u64,
    tatta_fixed: u64,
    att_all: u64,
    tatta_all: u64,
    any: u64,
}

impl Totals {
    fn add(self, o: &TrialOutcome) -> Self {
        Totals {
            att_fixed: self.att_fixed + u64::from(o.att_fixed),
            tatta_fixed: self.tatta_fixed + u64::from(o.tatta_fixed),
            att_all: self.att_all + o.att_failures,
            tatta_all: self.tatta_all + o.tatta_failures,
            any: self.any + u64::from(o.any_failure),
        }
    }

    fn merge(self, o: &Totals) -> Self {
        Totals {
            att_fixed: self.att_fixed + o.att_fixed,
            tatta_fixed: self.tatta_fixed + o.tatta_fixed,
            att_all: self.att_all + o.att_all,
            tatta_all: self.tatta_all + o.tatta_all,
            any: self.any + o.any,
        }
    }
}
