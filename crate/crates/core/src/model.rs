//! Instances, scenario distributions and residual solver state.
//!
//! An [`Instance`] is a set of boxes with known opening costs and a finite,
//! weighted list of [`Scenario`]s. Each scenario fixes the value of every box;
//! the weights are probability masses up to normalization.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::Value;

/// Absolute tolerance used by every comparison inside the solvers.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub weight: f64,
    pub values: Vec<Value>,
}

impl Scenario {
    pub fn new(weight: f64, values: Vec<Value>) -> Self {
        Scenario { weight, values }
    }

    /// Unit-weight scenario from plain floats (`f64::INFINITY` becomes `inf`).
    pub fn uniform(values: &[f64]) -> Self {
        Scenario::new(1.0, values.iter().copied().map(Value::from).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub costs: Vec<f64>,
    pub scenarios: Vec<Scenario>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NegativeCost { box_index: usize },
    NonFiniteCost { box_index: usize },
    NoScenarios,
    NoBoxes,
    LengthMismatch { scenario: usize, len: usize, expected: usize },
    NoFiniteValue { scenario: usize },
    NegativeValue { scenario: usize, box_index: usize },
    NonPositiveWeight { scenario: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NegativeCost { box_index } => write!(f, "negative cost box {box_index}"),
            Violation::NonFiniteCost { box_index } => write!(f, "non-finite cost box {box_index}"),
            Violation::NoScenarios => f.write_str("instance has no scenarios"),
            Violation::NoBoxes => f.write_str("instance has no boxes"),
            Violation::LengthMismatch { scenario, len, expected } => write!(
                f,
                "scenario {scenario} has {len} values, expected {expected}"
            ),
            Violation::NoFiniteValue { scenario } => {
                write!(f, "scenario {scenario} has no finite value")
            }
            Violation::NegativeValue { scenario, box_index } => {
                write!(f, "scenario {scenario} has a negative value in box {box_index}")
            }
            Violation::NonPositiveWeight { scenario } => {
                write!(f, "scenario {scenario} has non-positive weight")
            }
        }
    }
}

impl Instance {
    pub fn new(costs: Vec<f64>, scenarios: Vec<Scenario>) -> Self {
        Instance { costs, scenarios }
    }

    /// Builds and validates in one go.
    pub fn checked(costs: Vec<f64>, scenarios: Vec<Scenario>) -> Result<Self> {
        let inst = Instance::new(costs, scenarios);
        inst.ensure_valid()?;
        Ok(inst)
    }

    pub fn box_count(&self) -> usize {
        self.costs.len()
    }

    pub fn scenario_count(&self) -> usize {
        self.scenarios.len()
    }

    pub fn value(&self, scenario: usize, box_index: usize) -> Value {
        self.scenarios[scenario].values[box_index]
    }

    pub fn weight(&self, scenario: usize) -> f64 {
        self.scenarios[scenario].weight
    }

    pub fn total_weight(&self) -> f64 {
        self.scenarios.iter().map(|s| s.weight).sum()
    }

    /// `W(set)`: summed weight of a subset of scenarios.
    pub fn weight_of(&self, set: &[usize]) -> f64 {
        set.iter().map(|&s| self.scenarios[s].weight).sum()
    }

    /// Every invariant breach, in scan order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.costs.len();
        if n == 0 {
            out.push(Violation::NoBoxes);
        }
        if self.scenarios.is_empty() {
            out.push(Violation::NoScenarios);
        }
        for (b, &c) in self.costs.iter().enumerate() {
            if !c.is_finite() {
                out.push(Violation::NonFiniteCost { box_index: b });
            } else if c < 0.0 {
                out.push(Violation::NegativeCost { box_index: b });
            }
        }
        for (s, sc) in self.scenarios.iter().enumerate() {
            if sc.values.len() != n {
                out.push(Violation::LengthMismatch { scenario: s, len: sc.values.len(), expected: n });
            }
            for (b, v) in sc.values.iter().enumerate() {
                if let Value::Finite(x) = *v {
                    if x.is_nan() || x < 0.0 {
                        out.push(Violation::NegativeValue { scenario: s, box_index: b });
                    }
                }
            }
            if !sc.values.iter().any(|v| v.is_finite()) {
                out.push(Violation::NoFiniteValue { scenario: s });
            }
            if !(sc.weight > 0.0) || !sc.weight.is_finite() {
                out.push(Violation::NonPositiveWeight { scenario: s });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Rescales weights to sum to one, keeping scenario order and costs.
    pub fn normalize(&self) -> Result<Instance> {
        let total = self.total_weight();
        if !(total > 0.0) {
            return Err(Error::ZeroWeight);
        }
        let scenarios = self
            .scenarios
            .iter()
            .map(|s| Scenario::new(s.weight / total, s.values.clone()))
            .collect();
        Ok(Instance::new(self.costs.clone(), scenarios))
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let text = std::fs::read_to_string(path)?;
        Instance::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// `E[min_b v_b]` under the instance weights.
    pub fn expected_min_value(&self) -> f64 {
        let total = self.total_weight();
        self.scenarios
            .iter()
            .map(|s| {
                let best = s.values.iter().fold(Value::Infinite, |a, &v| a.min(v));
                s.weight * best.to_f64()
            })
            .sum::<f64>()
            / total
    }
}

/// Surviving scenarios plus per-box residual costs (opened boxes are free).
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualState {
    /// Sorted ascending.
    pub alive: Vec<usize>,
    pub residual_costs: Vec<f64>,
    pub opened: Vec<bool>,
}

impl ResidualState {
    pub fn initial(instance: &Instance) -> Self {
        ResidualState {
            alive: (0..instance.scenario_count()).collect(),
            residual_costs: instance.costs.clone(),
            opened: vec![false; instance.box_count()],
        }
    }

    /// State with an explicit surviving set and the given boxes already opened.
    pub fn with(instance: &Instance, alive: Vec<usize>, opened_boxes: &[usize]) -> Self {
        let mut st = ResidualState::initial(instance);
        let mut alive = alive;
        alive.sort_unstable();
        alive.dedup();
        st.alive = alive;
        for &b in opened_boxes {
            st.open(b);
        }
        st
    }

    pub fn open(&mut self, box_index: usize) {
        self.opened[box_index] = true;
        self.residual_costs[box_index] = 0.0;
    }

    /// Drops `covered` (sorted or not) from the surviving set.
    pub fn remove(&mut self, covered: &[usize]) {
        self.alive.retain(|s| !covered.contains(s));
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    /// Residual cost is zero exactly on opened boxes and the original cost elsewhere.
    pub fn is_consistent(&self, instance: &Instance) -> bool {
        self.opened.iter().enumerate().all(|(b, &o)| {
            if o {
                self.residual_costs[b] == 0.0
            } else {
                self.residual_costs[b] == instance.costs[b]
            }
        }) && self.alive.iter().all(|&s| s < instance.scenario_count())
    }

    /// Posterior mass of each surviving scenario.
    pub fn conditional_weight(&self, instance: &Instance) -> Result<Vec<(usize, f64)>> {
        if self.alive.is_empty() {
            return Err(Error::NoSurvivors);
        }
        let total = instance.weight_of(&self.alive);
        Ok(self.alive.iter().map(|&s| (s, instance.weight(s) / total)).collect())
    }
}

/// Expected cost split into opening cost and accepted value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub opening: f64,
    pub value: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn new(opening: f64, value: f64) -> Self {
        CostBreakdown { opening, value, total: opening + value }
    }

    /// Weight-averages per-scenario `(opening, value)` pairs.
    pub fn weighted(instance: &Instance, per_scenario: &[(f64, f64)]) -> Self {
        let total = instance.total_weight();
        let (mut o, mut v) = (0.0, 0.0);
        for (s, &(po, pv)) in per_scenario.iter().enumerate() {
            o += instance.weight(s) * po;
            v += instance.weight(s) * pv;
        }
        CostBreakdown::new(o / total, v / total)
    }
}
