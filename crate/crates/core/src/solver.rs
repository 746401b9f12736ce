//! Weitzman's rule on correlated scenarios, in both update variants.
//!
//! * Partial updates ([`run_partial`]): after opening `b` the posterior is only
//!   conditioned on "not stopped yet", so every surviving scenario sees the same
//!   opening order. The run is a linear trace and reduces to a [`ThresholdPolicy`].
//! * Full updates ([`run_full`]): the posterior is conditioned on the exact value
//!   observed, so execution branches into a [`PolicyTree`].
//!
//! In both variants an opened box becomes free and may be selected again.

use serde::Serialize;
use serde_json::{json, Map};

use crate::error::{Error, Result};
use crate::model::{CostBreakdown, Instance, ResidualState, Scenario, TOL};
use crate::reservation::{all_sigmas, argmin_sigma};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    #[serde(rename = "box")]
    pub box_index: usize,
    pub sigma: f64,
    pub covered: Vec<usize>,
    pub alive_before: Vec<usize>,
    /// Zero when the box was already open.
    pub paid: f64,
    /// Reservation value of every box at this round, indexed by box.
    pub sigmas: Vec<Value>,
}

/// Where and at what price a scenario ended up being covered.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScenarioOutcome {
    pub opening: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct ThresholdPolicy {
    pub permutation: Vec<usize>,
    pub thresholds: Vec<f64>,
}

impl ThresholdPolicy {
    pub fn new(permutation: Vec<usize>, thresholds: Vec<f64>) -> Result<Self> {
        if permutation.len() != thresholds.len() {
            return Err(Error::Param(format!(
                "{} boxes but {} thresholds",
                permutation.len(),
                thresholds.len()
            )));
        }
        let mut seen = permutation.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Param("permutation repeats a box".into()));
        }
        if let Some(t) = thresholds.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(Error::Param(format!("threshold {t} is not a finite non-negative real")));
        }
        Ok(ThresholdPolicy { permutation, thresholds })
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialRun {
    pub trace: Vec<TraceStep>,
    pub policy: ThresholdPolicy,
    pub cost: CostBreakdown,
    pub outcomes: Vec<ScenarioOutcome>,
}

impl PartialRun {
    /// Σ_t W(A_t)·σ_t / W(S).
    pub fn sigma_identity(&self, instance: &Instance) -> f64 {
        self.trace.iter().map(|t| instance.weight_of(&t.covered) * t.sigma).sum::<f64>()
            / instance.total_weight()
    }

    pub fn box_sequence(&self) -> Vec<usize> {
        self.trace.iter().map(|t| t.box_index).collect()
    }
}

fn step_cap(instance: &Instance) -> usize {
    instance.box_count() + instance.scenario_count()
}

/// Variant 1: condition on `V_b > sigma_b` after every opening.
pub fn run_partial(instance: &Instance) -> Result<PartialRun> {
    instance.ensure_valid()?;
    let cap = step_cap(instance);
    let mut state = ResidualState::initial(instance);
    let mut outcomes = vec![ScenarioOutcome { opening: 0.0, value: 0.0 }; instance.scenario_count()];
    let mut trace = Vec::new();
    let mut policy = (Vec::new(), Vec::new());

    while !state.is_empty() {
        if trace.len() >= cap {
            return Err(Error::StepCap { cap });
        }
        let sigmas = all_sigmas(&state, instance)?;
        let pick = argmin_sigma(&state, instance)?;
        let b = pick.box_index;
        let sigma = pick.sigma.as_finite().expect("argmin returns a finite sigma");
        let paid = state.residual_costs[b];
        for &s in &state.alive {
            outcomes[s].opening += paid;
        }
        for &s in &pick.covered {
            outcomes[s].value = instance.value(s, b).to_f64();
        }
        if !state.opened[b] {
            policy.0.push(b);
            policy.1.push(sigma);
        }
        trace.push(TraceStep {
            step: trace.len(),
            box_index: b,
            sigma,
            covered: pick.covered.clone(),
            alive_before: state.alive.clone(),
            paid,
            sigmas,
        });
        state.open(b);
        state.remove(&pick.covered);
        debug_assert!(state.is_consistent(instance));
    }

    let pairs: Vec<_> = outcomes.iter().map(|o| (o.opening, o.value)).collect();
    Ok(PartialRun {
        trace,
        policy: ThresholdPolicy::new(policy.0, policy.1)?,
        cost: CostBreakdown::weighted(instance, &pairs),
        outcomes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeNode {
    /// Scenarios consistent with the path to this node.
    pub scenarios: Vec<usize>,
    #[serde(rename = "box")]
    pub box_index: usize,
    pub sigma: f64,
    pub covered: Vec<usize>,
    pub paid: f64,
    /// `(observed value, child index)`, ascending by value.
    pub children: Vec<(Value, usize)>,
    pub parent: Option<usize>,
}

/// Decision tree produced by full updates. Node 0 is the root.
#[derive(Clone, Debug, PartialEq)]
pub struct PolicyTree {
    pub nodes: Vec<TreeNode>,
}

impl PolicyTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    /// Σ_u W(A_u)·σ_u / W(S).
    pub fn sigma_identity(&self, instance: &Instance) -> f64 {
        self.nodes.iter().map(|u| instance.weight_of(&u.covered) * u.sigma).sum::<f64>()
            / instance.total_weight()
    }

    /// Nested JSON: `{"box", "sigma", "covered", "paid", "children": {value: subtree}}`.
    pub fn to_json(&self) -> serde_json::Value {
        self.node_json(0)
    }

    fn node_json(&self, idx: usize) -> serde_json::Value {
        let u = &self.nodes[idx];
        let mut children = Map::new();
        for &(v, c) in &u.children {
            children.insert(v.to_string(), self.node_json(c));
        }
        json!({
            "box": u.box_index,
            "sigma": u.sigma,
            "scenarios": u.scenarios,
            "covered": u.covered,
            "paid": u.paid,
            "children": children,
        })
    }

    /// Boxes opened on the root-to-node path, including the node's own box.
    pub fn path_boxes(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![self.nodes[idx].box_index];
        while let Some(p) = self.nodes[idx].parent {
            out.push(self.nodes[p].box_index);
            idx = p;
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Debug)]
pub struct FullRun {
    pub tree: PolicyTree,
    pub cost: CostBreakdown,
    pub outcomes: Vec<ScenarioOutcome>,
}

/// Variant 2: condition on the exact value observed at every opening.
pub fn run_full(instance: &Instance) -> Result<FullRun> {
    instance.ensure_valid()?;
    let mut nodes = Vec::new();
    let mut outcomes = vec![ScenarioOutcome { opening: 0.0, value: 0.0 }; instance.scenario_count()];
    let root = ResidualState::initial(instance);
    expand(instance, root, None, 0, 0.0, &mut nodes, &mut outcomes)?;
    let pairs: Vec<_> = outcomes.iter().map(|o| (o.opening, o.value)).collect();
    Ok(FullRun {
        tree: PolicyTree { nodes },
        cost: CostBreakdown::weighted(instance, &pairs),
        outcomes,
    })
}

fn expand(
    instance: &Instance,
    mut state: ResidualState,
    parent: Option<usize>,
    depth: usize,
    paid_so_far: f64,
    nodes: &mut Vec<TreeNode>,
    outcomes: &mut [ScenarioOutcome],
) -> Result<usize> {
    let cap = step_cap(instance);
    if depth >= cap {
        return Err(Error::StepCap { cap });
    }
    let pick = argmin_sigma(&state, instance)?;
    let b = pick.box_index;
    let paid = state.residual_costs[b];
    let opening = paid_so_far + paid;
    for &s in &pick.covered {
        outcomes[s] = ScenarioOutcome { opening, value: instance.value(s, b).to_f64() };
    }

    let idx = nodes.len();
    nodes.push(TreeNode {
        scenarios: state.alive.clone(),
        box_index: b,
        sigma: pick.sigma.as_finite().expect("argmin returns a finite sigma"),
        covered: pick.covered.clone(),
        paid,
        children: Vec::new(),
        parent,
    });

    state.open(b);
    state.remove(&pick.covered);
    let mut survivors = state.alive.clone();
    survivors.sort_by(|&x, &y| instance.value(x, b).total_cmp(&instance.value(y, b)).then(x.cmp(&y)));
    let mut children = Vec::new();
    for group in survivors.chunk_by(|&x, &y| instance.value(x, b) == instance.value(y, b)) {
        let key = instance.value(group[0], b);
        let mut child = state.clone();
        child.alive = group.to_vec();
        child.alive.sort_unstable();
        let c = expand(instance, child, Some(idx), depth + 1, opening, nodes, outcomes)?;
        children.push((key, c));
    }
    nodes[idx].children = children;
    Ok(idx)
}

/// Opening cost and accepted value of one scenario under a threshold policy.
///
/// Open `π_i` while the best value seen exceeds `τ_i`; accept the best value
/// when the rule says stop or the list runs out.
pub fn simulate_threshold_policy(policy: &ThresholdPolicy, scenario: &Scenario, instance: &Instance) -> (f64, Value) {
    let mut best = Value::Infinite;
    let mut opening = 0.0;
    for (&b, &tau) in policy.permutation.iter().zip(&policy.thresholds) {
        if best.le_tol(Value::Finite(tau), TOL) {
            break;
        }
        opening += instance.costs[b];
        best = best.min(scenario.values[b]);
    }
    (opening, best)
}

/// Realized cost of one scenario; `inf` when no listed box holds a finite value.
pub fn evaluate_threshold_policy(policy: &ThresholdPolicy, scenario: &Scenario, instance: &Instance) -> Value {
    let (opening, best) = simulate_threshold_policy(policy, scenario, instance);
    best + opening
}

pub fn expected_policy_cost(policy: &ThresholdPolicy, instance: &Instance) -> CostBreakdown {
    let pairs: Vec<_> = instance
        .scenarios
        .iter()
        .map(|s| {
            let (o, v) = simulate_threshold_policy(policy, s, instance);
            (o, v.to_f64())
        })
        .collect();
    CostBreakdown::weighted(instance, &pairs)
}
