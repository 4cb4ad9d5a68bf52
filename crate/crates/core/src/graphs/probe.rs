use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::WeightedGraph;
use crate::lp::optimal_sum_decomposition;
use crate::rational::{self, Rational};
use crate::{Error, Result};

pub const PROBE_MAX_VERTICES: usize = 8;

/// One sampled pair `w' <= w` and the two optimal sum-decomposition values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeTrial {
    #[serde(with = "rational::vec_as_str")]
    pub weights: Vec<Rational>,
    #[serde(with = "rational::vec_as_str")]
    pub reduced_weights: Vec<Rational>,
    #[serde(with = "rational::as_str")]
    pub norm: Rational,
    #[serde(with = "rational::as_str")]
    pub reduced_norm: Rational,
    /// `norm - reduced_norm`; negative means a counterexample.
    #[serde(with = "rational::as_str")]
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub trials: Vec<ProbeTrial>,
    /// Index of the first trial with negative slack.
    pub violation: Option<usize>,
    #[serde(with = "rational::opt_as_str")]
    pub min_slack: Option<Rational>,
}

fn small_fraction(rng: &mut ChaCha8Rng) -> Rational {
    let a: i64 = rng.random_range(0..=8);
    let b: i64 = rng.random_range(1..=4);
    rational::frac(a, b)
}

fn unit_fraction(rng: &mut ChaCha8Rng) -> Rational {
    let b: i64 = rng.random_range(1..=4);
    let a: i64 = rng.random_range(0..=b);
    rational::frac(a, b)
}

/// Tests whether lowering edge weights can raise the optimal sum-decomposition
/// value of the cut function. Each trial draws `w(e) = a/b` with `a <= 8`,
/// `b <= 4`, and `w'(e) = w(e) * a'/b'` with `a' <= b' <= 4`, on the edges of `g`.
pub fn conjecture_probe(g: &WeightedGraph, trials: usize, seed: u64) -> Result<ProbeReport> {
    if g.n() > PROBE_MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "probe supports at most {PROBE_MAX_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        seed,
        trials: Vec::with_capacity(trials),
        violation: None,
        min_slack: None,
    };
    for t in 0..trials {
        let weights: Vec<Rational> = g.edges().iter().map(|_| small_fraction(&mut rng)).collect();
        let reduced: Vec<Rational> = weights
            .iter()
            .map(|w| w * unit_fraction(&mut rng))
            .collect();
        let norm =
            optimal_sum_decomposition(&g.reweighted(weights.clone())?.cut_function())?.objective;
        let reduced_norm =
            optimal_sum_decomposition(&g.reweighted(reduced.clone())?.cut_function())?.objective;
        let slack = &norm - &reduced_norm;
        if slack.is_negative() && report.violation.is_none() {
            report.violation = Some(t);
        }
        if report.min_slack.as_ref().is_none_or(|m| slack < *m) {
            report.min_slack = Some(slack.clone());
        }
        report.trials.push(ProbeTrial {
            weights,
            reduced_weights: reduced,
            norm,
            reduced_norm,
            slack,
        });
    }
    Ok(report)
}
