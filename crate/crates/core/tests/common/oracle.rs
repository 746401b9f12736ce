//! Exponential reference implementations, independent of the library's code paths.

use pandora::Instance;

/// Minimum over every nonempty subset of `alive` of
/// `(cost · W(alive) + Σ w v) / W(A)`; `None` when no subset has finite values.
pub fn brute_sigma(inst: &Instance, alive: &[usize], cost: f64, b: usize) -> Option<f64> {
    let total: f64 = alive.iter().map(|&s| inst.scenarios[s].weight).sum();
    let mut best: Option<f64> = None;
    for mask in 1u64..(1 << alive.len()) {
        let mut num = cost * total;
        let mut den = 0.0;
        let mut finite = true;
        for (i, &s) in alive.iter().enumerate() {
            if mask >> i & 1 == 1 {
                match inst.scenarios[s].values[b].as_finite() {
                    Some(v) => {
                        num += inst.scenarios[s].weight * v;
                        den += inst.scenarios[s].weight;
                    }
                    None => finite = false,
                }
            }
        }
        if finite {
            let r = num / den;
            best = Some(best.map_or(r, |x: f64| x.min(r)));
        }
    }
    best
}

/// One greedy step: `(box, sigma, covered)` with lowest-index ties.
fn pick(inst: &Instance, alive: &[usize], costs: &[f64]) -> (usize, f64, Vec<usize>) {
    let mut best: Option<(usize, f64)> = None;
    for b in 0..inst.costs.len() {
        if let Some(sig) = brute_sigma(inst, alive, costs[b], b) {
            if best.is_none_or(|(_, cur)| sig < cur - 1e-9) {
                best = Some((b, sig));
            }
        }
    }
    let (b, sig) = best.expect("coverable");
    let covered = alive
        .iter()
        .copied()
        .filter(|&s| inst.scenarios[s].values[b].as_finite().is_some_and(|v| v <= sig + 1e-9))
        .collect();
    (b, sig, covered)
}

/// Expected cost of partial-update Weitzman by direct per-scenario simulation.
pub fn reference_partial(inst: &Instance) -> f64 {
    let mut alive: Vec<usize> = (0..inst.scenarios.len()).collect();
    let mut costs = inst.costs.clone();
    let mut paid = vec![0.0; inst.scenarios.len()];
    let mut value = vec![0.0; inst.scenarios.len()];
    while !alive.is_empty() {
        let (b, _, covered) = pick(inst, &alive, &costs);
        for &s in &alive {
            paid[s] += costs[b];
        }
        for &s in &covered {
            value[s] = inst.scenarios[s].values[b].to_f64();
        }
        costs[b] = 0.0;
        alive.retain(|s| !covered.contains(s));
    }
    weighted(inst, &paid, &value)
}

/// Expected cost of full-update Weitzman, recursing on observed values.
pub fn reference_full(inst: &Instance) -> f64 {
    let n = inst.scenarios.len();
    let mut paid = vec![0.0; n];
    let mut value = vec![0.0; n];
    full_rec(inst, (0..n).collect(), inst.costs.clone(), 0.0, &mut paid, &mut value);
    weighted(inst, &paid, &value)
}

fn full_rec(inst: &Instance, alive: Vec<usize>, mut costs: Vec<f64>, so_far: f64, paid: &mut [f64], value: &mut [f64]) {
    if alive.is_empty() {
        return;
    }
    let (b, _, covered) = pick(inst, &alive, &costs);
    let spent = so_far + costs[b];
    for &s in &covered {
        paid[s] = spent;
        value[s] = inst.scenarios[s].values[b].to_f64();
    }
    costs[b] = 0.0;
    let rest: Vec<usize> = alive.into_iter().filter(|s| !covered.contains(s)).collect();
    let mut done = vec![false; rest.len()];
    for i in 0..rest.len() {
        if done[i] {
            continue;
        }
        let key = inst.scenarios[rest[i]].values[b];
        let group: Vec<usize> = (i..rest.len())
            .filter(|&j| inst.scenarios[rest[j]].values[b] == key)
            .inspect(|&j| done[j] = true)
            .map(|j| rest[j])
            .collect();
        full_rec(inst, group, costs.clone(), spent, paid, value);
    }
}

fn weighted(inst: &Instance, paid: &[f64], value: &[f64]) -> f64 {
    let total: f64 = inst.scenarios.iter().map(|s| s.weight).sum();
    inst.scenarios.iter().enumerate().map(|(s, sc)| sc.weight * (paid[s] + value[s])).sum::<f64>() / total
}

/// `min_π E[SA(π)]` by recursive enumeration, lexicographic order, first minimum kept.
pub fn sa_opt(inst: &Instance) -> (f64, Vec<usize>) {
    fn rec(inst: &Instance, prefix: &mut Vec<usize>, best: &mut (f64, Vec<usize>)) {
        let n = inst.costs.len();
        if prefix.len() == n {
            let total: f64 = inst.scenarios.iter().map(|s| s.weight).sum();
            let cost = inst
                .scenarios
                .iter()
                .map(|sc| {
                    let mut open = 0.0;
                    let mut best_val = f64::INFINITY;
                    let mut best_stop = f64::INFINITY;
                    for &b in prefix.iter() {
                        open += inst.costs[b];
                        best_val = best_val.min(sc.values[b].to_f64());
                        best_stop = best_stop.min(open + best_val);
                    }
                    sc.weight * best_stop
                })
                .sum::<f64>()
                / total;
            if cost < best.0 - 1e-12 {
                *best = (cost, prefix.clone());
            }
            return;
        }
        for b in 0..n {
            if !prefix.contains(&b) {
                prefix.push(b);
                rec(inst, prefix, best);
                prefix.pop();
            }
        }
    }
    let mut best = (f64::INFINITY, Vec::new());
    rec(inst, &mut Vec::new(), &mut best);
    best
}
