//! Exact desk-scale benchmarks: scenario-aware permutation cost, the brute-force
//! optimum over permutations, the min-sum set cover greedy, and product
//! (independent) instance construction.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, Scenario};
use crate::solver::{run_full, run_partial};
use crate::value::Value;

pub const DEFAULT_MAX_BOXES: usize = 9;
pub const PRODUCT_GUARD: usize = 100_000;

/// Variant-1 ceiling against the permutation benchmark.
pub const PARTIAL_BOUND: f64 = 4.428;
/// Variant-2 ceiling, `3 + 2√2` rounded up at the fourth decimal.
pub const FULL_BOUND: f64 = 5.8285;

/// Cost of a scenario that must visit boxes in `permutation` order but stops at
/// the best prefix with hindsight.
pub fn sa_scenario_cost(permutation: &[usize], scenario: &Scenario, instance: &Instance) -> Value {
    let mut paid = 0.0;
    let mut best_val = Value::Infinite;
    let mut best = Value::Infinite;
    for &b in permutation {
        paid += instance.costs[b];
        best_val = best_val.min(scenario.values[b]);
        best = best.min(best_val + paid);
    }
    best
}

/// Weight-averaged scenario-aware cost `E[SA(π)]`.
pub fn sa_cost(permutation: &[usize], instance: &Instance) -> f64 {
    let total = instance.total_weight();
    instance
        .scenarios
        .iter()
        .map(|s| s.weight * sa_scenario_cost(permutation, s, instance).to_f64())
        .sum::<f64>()
        / total
}

fn better(a: &(f64, Vec<usize>), b: &(f64, Vec<usize>)) -> bool {
    if (a.0 - b.0).abs() <= 1e-12 {
        a.1 < b.1
    } else {
        a.0 < b.0
    }
}

/// `min_π E[SA(π)]` by enumerating every permutation. Ties resolve to the
/// lexicographically smallest permutation.
pub fn pa_opt_bruteforce(instance: &Instance, max_boxes: usize) -> Result<(f64, Vec<usize>)> {
    instance.ensure_valid()?;
    let n = instance.box_count();
    if n > max_boxes {
        return Err(Error::Guard(format!(
            "{n} boxes exceeds the brute-force limit of {max_boxes}; \
             enumerating {n}! permutations is not feasible at desk scale"
        )));
    }
    let best = (0..n)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..n).filter(|&b| b != first).collect();
            let mut local: Option<(f64, Vec<usize>)> = None;
            for tail in rest.iter().copied().permutations(rest.len()) {
                let mut perm = Vec::with_capacity(n);
                perm.push(first);
                perm.extend(tail);
                let cand = (sa_cost(&perm, instance), perm);
                if local.as_ref().is_none_or(|cur| better(&cand, cur)) {
                    local = Some(cand);
                }
            }
            local.expect("at least one permutation")
        })
        .reduce_with(|a, b| if better(&b, &a) { b } else { a })
        .expect("instance has boxes");
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchmarkReport {
    pub alg_cost: f64,
    pub alg_full_cost: f64,
    pub sa_opt: f64,
    pub ratio_partial: f64,
    pub ratio_full: f64,
    pub best_permutation: Vec<usize>,
    pub partial_bound: f64,
    pub full_bound: f64,
}

impl BenchmarkReport {
    /// True when either ratio exceeds its ceiling by more than `slack`.
    pub fn violates_bounds(&self, slack: f64) -> bool {
        self.ratio_partial > self.partial_bound + slack || self.ratio_full > self.full_bound + slack
    }
}

fn ratio(alg: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        alg / opt
    } else if alg <= 1e-12 {
        1.0
    } else {
        f64::INFINITY
    }
}

pub fn benchmark(instance: &Instance, max_boxes: usize) -> Result<BenchmarkReport> {
    let (sa_opt, best_permutation) = pa_opt_bruteforce(instance, max_boxes)?;
    let alg_cost = run_partial(instance)?.cost.total;
    let alg_full_cost = run_full(instance)?.cost.total;
    Ok(BenchmarkReport {
        alg_cost,
        alg_full_cost,
        sa_opt,
        ratio_partial: ratio(alg_cost, sa_opt),
        ratio_full: ratio(alg_full_cost, sa_opt),
        best_permutation,
        partial_bound: PARTIAL_BOUND,
        full_bound: FULL_BOUND,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MsscCover {
    pub order: Vec<usize>,
    /// 1-based step at which each scenario is covered.
    pub cover_step: Vec<usize>,
    pub expected_cover_time: f64,
}

/// True for unit costs and values in `{0, inf}`.
pub fn is_mssc(instance: &Instance) -> bool {
    mssc_check(instance).is_ok()
}

fn mssc_check(instance: &Instance) -> Result<()> {
    if let Some(b) = instance.costs.iter().position(|&c| c != 1.0) {
        return Err(Error::NotMssc(format!("box {b} does not have unit cost")));
    }
    for (s, sc) in instance.scenarios.iter().enumerate() {
        if sc.values.iter().any(|&v| v != Value::ZERO && v != Value::Infinite) {
            return Err(Error::NotMssc(format!("scenario {s} has a value outside {{0, inf}}")));
        }
    }
    Ok(())
}

/// Greedy min-sum set cover: repeatedly take the box whose zero-set covers the
/// most surviving weight, lowest index on ties.
pub fn mssc_greedy(instance: &Instance) -> Result<MsscCover> {
    instance.ensure_valid()?;
    mssc_check(instance)?;
    let m = instance.scenario_count();
    let mut cover_step = vec![0usize; m];
    let mut alive: Vec<usize> = (0..m).collect();
    let mut order = Vec::new();
    while !alive.is_empty() {
        let gain = |b: usize| -> f64 {
            alive.iter().filter(|&&s| instance.value(s, b) == Value::ZERO).map(|&s| instance.weight(s)).sum()
        };
        let (best_box, best_gain) = (0..instance.box_count())
            .map(|b| (b, gain(b)))
            .fold((usize::MAX, 0.0), |acc, (b, g)| if g > acc.1 { (b, g) } else { acc });
        if best_gain <= 0.0 {
            return Err(Error::Uncoverable);
        }
        order.push(best_box);
        let step = order.len();
        alive.retain(|&s| {
            if instance.value(s, best_box) == Value::ZERO {
                cover_step[s] = step;
                false
            } else {
                true
            }
        });
    }
    let expected_cover_time = (0..m).map(|s| instance.weight(s) * cover_step[s] as f64).sum::<f64>()
        / instance.total_weight();
    Ok(MsscCover { order, cover_step, expected_cover_time })
}

/// Explicit cross product of independent per-box supports `(value, probability)`.
///
/// Scenarios are listed with the last box varying fastest.
pub fn product_instance(costs: Vec<f64>, supports: &[Vec<(Value, f64)>]) -> Result<Instance> {
    if costs.len() != supports.len() {
        return Err(Error::Param(format!("{} costs for {} supports", costs.len(), supports.len())));
    }
    let mut size: usize = 1;
    for (b, sup) in supports.iter().enumerate() {
        if sup.is_empty() {
            return Err(Error::Param(format!("box {b} has an empty support")));
        }
        let mass: f64 = sup.iter().map(|p| p.1).sum();
        if (mass - 1.0).abs() > 1e-9 {
            return Err(Error::Param(format!("box {b} probabilities sum to {mass}, not 1")));
        }
        size = size.saturating_mul(sup.len());
        if size > PRODUCT_GUARD {
            return Err(Error::Guard(format!("product support exceeds {PRODUCT_GUARD} scenarios")));
        }
    }
    let scenarios = supports
        .iter()
        .map(|sup| sup.iter())
        .multi_cartesian_product()
        .map(|combo| {
            let weight = combo.iter().map(|p| p.1).product();
            Scenario::new(weight, combo.iter().map(|p| p.0).collect())
        })
        .collect();
    let inst = Instance::new(costs, scenarios);
    inst.ensure_valid()?;
    Ok(inst)
}
