//! Generalized reservation values over a residual scenario set.
//!
//! For box `b` with residual cost `c` and surviving set `R`,
//!
//! ```text
//! sigma_b = min over nonempty A ⊆ R of (c·W(R) + Σ_{s∈A} w_s v_b^s) / W(A)
//! ```
//!
//! which is also the root of `E_{s ~ D|R}[(sigma - v_b^s)^+] = c`. Both routes
//! are provided; the solvers use the subset form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, ResidualState, TOL};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReservationResult {
    pub sigma: Value,
    #[serde(rename = "box")]
    pub box_index: usize,
    /// `{ s ∈ alive : v_b^s <= sigma }`, sorted ascending.
    pub covered: Vec<usize>,
}

/// Finite `(value, weight)` pairs of the surviving scenarios at `box_index`, value-sorted.
fn sorted_finite(box_index: usize, state: &ResidualState, instance: &Instance) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = state
        .alive
        .iter()
        .filter_map(|&s| instance.value(s, box_index).as_finite().map(|v| (v, instance.weight(s))))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts
}

fn check(box_index: usize, state: &ResidualState, instance: &Instance) -> Result<()> {
    if box_index >= instance.box_count() {
        return Err(Error::UnknownBox(box_index));
    }
    if state.alive.is_empty() {
        return Err(Error::NoSurvivors);
    }
    Ok(())
}

/// Subset-minimization form, evaluated as a weighted prefix scan over value order.
///
/// For a fixed subset weight the numerator is smallest when the subset holds the
/// smallest values, so only prefixes need to be scanned.
pub fn sigma_closed_form(
    box_index: usize,
    state: &ResidualState,
    instance: &Instance,
) -> Result<ReservationResult> {
    check(box_index, state, instance)?;
    let pts = sorted_finite(box_index, state, instance);
    if pts.is_empty() {
        return Ok(ReservationResult { sigma: Value::Infinite, box_index, covered: Vec::new() });
    }
    let cost = state.residual_costs[box_index];
    let mut num = cost * instance.weight_of(&state.alive);
    let mut den = 0.0;
    let mut best = f64::INFINITY;
    for &(v, w) in &pts {
        num += w * v;
        den += w;
        let ratio = num / den;
        if ratio < best {
            best = ratio;
        }
    }
    let sigma = Value::Finite(best);
    let covered = state
        .alive
        .iter()
        .copied()
        .filter(|&s| instance.value(s, box_index).le_tol(sigma, TOL))
        .collect();
    Ok(ReservationResult { sigma, box_index, covered })
}

/// Root of the piecewise-linear equation `Σ_s p_s (sigma - v_s)^+ = c` with
/// `p` the posterior on the surviving set.
///
/// The left side is zero below the smallest finite value and gains slope `p_s`
/// at each breakpoint `v_s`; the root is found on the first segment whose
/// linear solution does not pass the next breakpoint.
pub fn sigma_fixed_point(box_index: usize, state: &ResidualState, instance: &Instance) -> Result<Value> {
    check(box_index, state, instance)?;
    let total = instance.weight_of(&state.alive);
    let pts = sorted_finite(box_index, state, instance);
    if pts.is_empty() {
        return Ok(Value::Infinite);
    }
    let cost = state.residual_costs[box_index];
    let mut mass = 0.0;
    let mut first_moment = 0.0;
    for (j, &(v, w)) in pts.iter().enumerate() {
        let p = w / total;
        mass += p;
        first_moment += p * v;
        let root = (cost + first_moment) / mass;
        match pts.get(j + 1) {
            Some(&(next, _)) if root > next => continue,
            _ => return Ok(Value::Finite(root)),
        }
    }
    unreachable!("last segment always returns")
}

/// Reservation value of every box against the state, indexed by box.
pub fn all_sigmas(state: &ResidualState, instance: &Instance) -> Result<Vec<Value>> {
    (0..instance.box_count())
        .map(|b| sigma_closed_form(b, state, instance).map(|r| r.sigma))
        .collect()
}

/// Box with the smallest reservation value; ties go to the lowest index.
pub fn argmin_sigma(state: &ResidualState, instance: &Instance) -> Result<ReservationResult> {
    if state.alive.is_empty() {
        return Err(Error::NoSurvivors);
    }
    let mut best: Option<ReservationResult> = None;
    for b in 0..instance.box_count() {
        let r = sigma_closed_form(b, state, instance)?;
        let better = match &best {
            None => true,
            Some(cur) => match (r.sigma, cur.sigma) {
                (Value::Finite(x), Value::Finite(y)) => x < y - TOL,
                (Value::Finite(_), Value::Infinite) => true,
                _ => false,
            },
        };
        if better {
            best = Some(r);
        }
    }
    match best {
        Some(r) if r.sigma.is_finite() => Ok(r),
        _ => Err(Error::Uncoverable),
    }
}
