//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, Scenario};
use crate::value::Value;

pub const MAX_BOXES: usize = 12;
pub const MAX_SCENARIOS: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn guard(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > MAX_BOXES {
        return Err(Error::Param(format!("box count must be in 1..={MAX_BOXES}, got {n}")));
    }
    if m == 0 || m > MAX_SCENARIOS {
        return Err(Error::Param(format!("scenario count must be in 1..={MAX_SCENARIOS}, got {m}")));
    }
    Ok(())
}

/// Costs `U[0.5, 2]`, values uniform on `{0..9}` with `inf` at probability 0.1,
/// unit weights. A scenario drawn all-infinite gets one box resampled finite.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Result<Instance> {
    guard(n, m)?;
    let mut rng = rng(seed);
    Ok(random_with(&mut rng, n, m, 0.5..2.0))
}

/// Same distribution as [`random_instance`] with a caller-chosen cost range.
pub fn random_with<R: Rng>(rng: &mut R, n: usize, m: usize, costs: std::ops::Range<f64>) -> Instance {
    let costs: Vec<f64> = (0..n).map(|_| rng.gen_range(costs.clone())).collect();
    let scenarios = (0..m)
        .map(|_| {
            let mut values: Vec<Value> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        Value::Infinite
                    } else {
                        Value::Finite(f64::from(rng.gen_range(0u32..10)))
                    }
                })
                .collect();
            if !values.iter().any(|v| v.is_finite()) {
                let b = rng.gen_range(0..n);
                values[b] = Value::Finite(f64::from(rng.gen_range(0u32..10)));
            }
            Scenario::new(1.0, values)
        })
        .collect();
    Instance::new(costs, scenarios)
}

/// Unit costs and a `{0, inf}` matrix where every scenario has at least one zero.
pub fn mssc_instance(n: usize, m: usize, seed: u64) -> Result<Instance> {
    guard(n, m)?;
    let mut rng = rng(seed);
    Ok(mssc_with(&mut rng, n, m))
}

pub fn mssc_with<R: Rng>(rng: &mut R, n: usize, m: usize) -> Instance {
    let scenarios = (0..m)
        .map(|_| {
            let mut values: Vec<Value> =
                (0..n).map(|_| if rng.gen_bool(0.35) { Value::ZERO } else { Value::Infinite }).collect();
            if !values.contains(&Value::ZERO) {
                values[rng.gen_range(0..n)] = Value::ZERO;
            }
            Scenario::new(1.0, values)
        })
        .collect();
    Instance::new(vec![1.0; n], scenarios)
}

/// Box 0 is nearly free and almost always holds 0; with total probability `1/h`
/// it is empty and one of the expensive boxes (cost `h`) must be found instead.
pub fn adversarial_cost_instance(n: usize, h: f64, seed: u64) -> Result<Instance> {
    guard(n, 1)?;
    if n < 2 {
        return Err(Error::Param("adversarial-cost needs at least 2 boxes".into()));
    }
    if !(h > 1.0) {
        return Err(Error::Param(format!("h must exceed 1, got {h}")));
    }
    let mut rng = rng(seed);
    let mut costs = vec![h; n];
    costs[0] = 1.0 / h;
    let rare = (n - 1) as f64;
    let mut common: Vec<Value> = (0..n).map(|_| Value::Finite(f64::from(rng.gen_range(0u32..10)))).collect();
    common[0] = Value::ZERO;
    let mut scenarios = vec![Scenario::new((h - 1.0) * rare, common)];
    for j in 1..n {
        let values = (0..n).map(|b| if b == j { Value::ZERO } else { Value::Infinite }).collect();
        scenarios.push(Scenario::new(1.0, values));
    }
    Ok(Instance::new(costs, scenarios))
}

/// Parses `"0:0.5,2:0.5;1:1.0"`: boxes separated by `;`, `value:probability`
/// atoms separated by `,`. Values may be `inf`.
pub fn parse_supports(text: &str) -> Result<Vec<Vec<(Value, f64)>>> {
    text.split(';')
        .map(|box_text| {
            box_text
                .split(',')
                .map(|atom| {
                    let (v, p) = atom
                        .trim()
                        .split_once(':')
                        .ok_or_else(|| Error::Param(format!("support atom {atom:?} is not value:probability")))?;
                    let value = match v.trim() {
                        "inf" => Value::Infinite,
                        x => Value::Finite(x.parse().map_err(|_| Error::Param(format!("bad value {x:?}")))?),
                    };
                    let prob: f64 = p.trim().parse().map_err(|_| Error::Param(format!("bad probability {p:?}")))?;
                    Ok((value, prob))
                })
                .collect()
        })
        .collect()
}
