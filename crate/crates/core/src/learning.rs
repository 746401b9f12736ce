//! Learning a threshold policy from samples of the scenario distribution.
//!
//! The pipeline draws `r` empirical instances, keeps the one with the smallest
//! empirical `E[min_b v_b]`, runs partial-update Weitzman on it, pads and caps
//! the resulting thresholds, and prices the policy on the true distribution.
//! Full updates are not learnable from samples and are not offered here.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::benchmarks::{pa_opt_bruteforce, DEFAULT_MAX_BOXES};
use crate::error::{Error, Result};
use crate::gen::rng;
use crate::model::{Instance, Scenario};
use crate::solver::{expected_policy_cost, run_partial, ThresholdPolicy};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LearningConfig {
    pub sample_count: usize,
    pub epsilon: f64,
    pub delta: f64,
    /// Constant `C` in `r = ceil(C · ln(1/δ) / ε)`.
    pub repeat_constant: f64,
    pub seed: u64,
}

impl LearningConfig {
    pub fn new(sample_count: usize, epsilon: f64, delta: f64, seed: u64) -> Result<Self> {
        let cfg = LearningConfig { sample_count, epsilon, delta, repeat_constant: 1.0, seed };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::Param("sample count must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Param(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Param(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !(self.repeat_constant > 0.0) {
            return Err(Error::Param("repeat constant must be positive".into()));
        }
        Ok(())
    }

    pub fn repeat_count(&self) -> usize {
        ((self.repeat_constant * (1.0 / self.delta).ln() / self.epsilon).ceil() as usize).max(1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LearningReport {
    /// Padded and capped policy that is evaluated on the source.
    pub policy: ThresholdPolicy,
    /// Policy extracted from the selected empirical run, before padding and capping.
    pub raw_policy: ThresholdPolicy,
    pub empirical_cost: f64,
    pub true_cost: f64,
    /// Partial-update cost when run directly on the source distribution.
    pub source_alg_cost: f64,
    pub sa_opt: Option<f64>,
    pub ratio: Option<f64>,
    pub repeat_min_values: Vec<f64>,
    pub selected_repeat: usize,
    pub warnings: Vec<String>,
}

/// `m` i.i.d. draws by weight, each kept as its own unit-weight scenario.
pub fn sample_empirical(source: &Instance, m: usize, seed: u64) -> Result<Instance> {
    if m == 0 {
        return Err(Error::Param("sample count must be at least 1".into()));
    }
    source.ensure_valid()?;
    let dist = WeightedIndex::new(source.scenarios.iter().map(|s| s.weight))
        .map_err(|e| Error::Param(e.to_string()))?;
    let mut rng = rng(seed);
    let scenarios = (0..m)
        .map(|_| Scenario::new(1.0, source.scenarios[dist.sample(&mut rng)].values.clone()))
        .collect();
    Ok(Instance::new(source.costs.clone(), scenarios))
}

/// `τ'_b = min(τ_b, n/ε)`.
pub fn clip_thresholds(policy: &ThresholdPolicy, n: usize, epsilon: f64) -> ThresholdPolicy {
    let cap = n as f64 / epsilon;
    ThresholdPolicy {
        permutation: policy.permutation.clone(),
        thresholds: policy.thresholds.iter().map(|&t| t.min(cap)).collect(),
    }
}

/// Appends boxes missing from the permutation in index order with the given
/// threshold. A box is opened only while the best value seen exceeds its
/// threshold, so a high threshold makes it a last resort.
pub fn pad_policy(policy: &ThresholdPolicy, n: usize, threshold: f64) -> ThresholdPolicy {
    let mut out = policy.clone();
    for b in 0..n {
        if !out.permutation.contains(&b) {
            out.permutation.push(b);
            out.thresholds.push(threshold);
        }
    }
    out
}

fn cost_warnings(source: &Instance) -> Vec<String> {
    let n = source.box_count() as f64;
    let max = source.costs.iter().copied().fold(0.0, f64::max);
    let min = source.costs.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = if min > 0.0 { max / min } else { f64::INFINITY };
    if spread > n.powi(3) {
        vec![format!(
            "cost spread max/min = {spread} exceeds n^3 = {}; sample-based guarantees need bounded costs",
            n.powi(3)
        )]
    } else {
        Vec::new()
    }
}

pub fn learn(source: &Instance, config: &LearningConfig) -> Result<LearningReport> {
    config.check()?;
    source.ensure_valid()?;
    let n = source.box_count();
    let mut master = rng(config.seed);
    let seeds: Vec<u64> = (0..config.repeat_count()).map(|_| master.gen()).collect();

    let samples = seeds
        .par_iter()
        .map(|&s| sample_empirical(source, config.sample_count, s))
        .collect::<Result<Vec<_>>>()?;
    let repeat_min_values: Vec<f64> = samples.iter().map(Instance::expected_min_value).collect();
    let selected_repeat = repeat_min_values
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < repeat_min_values[best] { i } else { best });
    let empirical = &samples[selected_repeat];

    let raw_policy = run_partial(empirical)?.policy;
    let cap = n as f64 / config.epsilon;
    let policy = pad_policy(&clip_thresholds(&raw_policy, n, config.epsilon), n, cap);
    let empirical_cost = expected_policy_cost(&policy, empirical).total;
    let true_cost = expected_policy_cost(&policy, source).total;
    let source_alg_cost = run_partial(source)?.cost.total;
    let sa_opt = if n <= DEFAULT_MAX_BOXES { Some(pa_opt_bruteforce(source, DEFAULT_MAX_BOXES)?.0) } else { None };
    let ratio = sa_opt.map(|opt| if opt > 0.0 { true_cost / opt } else { 1.0 });

    Ok(LearningReport {
        policy,
        raw_policy,
        empirical_cost,
        true_cost,
        source_alg_cost,
        sa_opt,
        ratio,
        repeat_min_values,
        selected_repeat,
        warnings: cost_warnings(source),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub m: usize,
    pub seed: u64,
    pub empirical_cost: f64,
    pub true_cost: f64,
    pub ratio: f64,
}

/// Runs [`learn`] for every `(m, seed)` pair, in input order.
pub fn sweep(source: &Instance, base: &LearningConfig, ms: &[usize], seeds: &[u64]) -> Result<Vec<SweepRow>> {
    let jobs: Vec<(usize, u64)> = ms.iter().flat_map(|&m| seeds.iter().map(move |&s| (m, s))).collect();
    jobs.par_iter()
        .map(|&(m, seed)| {
            let cfg = LearningConfig { sample_count: m, seed, ..base.clone() };
            let r = learn(source, &cfg)?;
            Ok(SweepRow {
                m,
                seed,
                empirical_cost: r.empirical_cost,
                true_cost: r.true_cost,
                ratio: r.ratio.unwrap_or(f64::NAN),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("m,seed,empirical_cost,true_cost,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.m, r.seed, r.empirical_cost, r.true_cost, r.ratio));
    }
    out
}
