//! Weighted trees and the percentile-substitution inequality
//! `ρ · cost(T^(ρ)) <= Q(ρ | T) <= cost(T)`.
//!
//! `T^(ρ)` replaces every weight at node `u` with `q^ρ` of the weights in the
//! subtree rooted at `u`; `Q(ρ | T)` is the area under the top `ρ` fraction of
//! the ascending step histogram of all weights in `T`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, TOL};
use crate::solver::PolicyTree;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedNode {
    pub weights: Vec<f64>,
    pub children: Vec<usize>,
}

/// Arena tree rooted at node 0.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    nodes: Vec<WeightedNode>,
}

/// Nested JSON shape: `{"weights": [..], "children": [..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub weights: Vec<f64>,
    #[serde(default)]
    pub children: Vec<TreeSpec>,
}

impl WeightedTree {
    /// Builds from `(weights, parent)` pairs; node 0 is the root and every other
    /// node must name an earlier node as its parent.
    pub fn from_parents(entries: Vec<(Vec<f64>, Option<usize>)>) -> Result<Self> {
        let mut nodes: Vec<WeightedNode> = Vec::with_capacity(entries.len());
        for (i, (weights, parent)) in entries.into_iter().enumerate() {
            if weights.is_empty() {
                return Err(Error::EmptyWeights);
            }
            if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
                return Err(Error::Param(format!("node {i} has invalid weight {w}")));
            }
            match (i, parent) {
                (0, None) => {}
                (0, Some(_)) => return Err(Error::Param("root cannot have a parent".into())),
                (_, Some(p)) if p < i => nodes[p].children.push(i),
                (_, _) => return Err(Error::Param(format!("node {i} needs an earlier parent"))),
            }
            nodes.push(WeightedNode { weights, children: Vec::new() });
        }
        if nodes.is_empty() {
            return Err(Error::Param("tree has no nodes".into()));
        }
        Ok(WeightedTree { nodes })
    }

    pub fn from_spec(spec: &TreeSpec) -> Result<Self> {
        let mut entries = Vec::new();
        let mut stack = vec![(spec, None)];
        while let Some((node, parent)) = stack.pop() {
            let idx = entries.len();
            entries.push((node.weights.clone(), parent));
            for child in node.children.iter().rev() {
                stack.push((child, Some(idx)));
            }
        }
        WeightedTree::from_parents(entries)
    }

    pub fn to_spec(&self) -> TreeSpec {
        self.spec_at(0)
    }

    fn spec_at(&self, idx: usize) -> TreeSpec {
        let u = &self.nodes[idx];
        TreeSpec { weights: u.weights.clone(), children: u.children.iter().map(|&c| self.spec_at(c)).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        WeightedTree::from_spec(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("tree serializes")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, idx: usize) -> Option<&WeightedNode> {
        self.nodes.get(idx)
    }

    /// Multiset of all weights in the subtree rooted at `node`.
    pub fn subtree_weights(&self, node: usize) -> Result<Vec<f64>> {
        if node >= self.nodes.len() {
            return Err(Error::UnknownNode(node));
        }
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(u) = stack.pop() {
            out.extend_from_slice(&self.nodes[u].weights);
            stack.extend(self.nodes[u].children.iter().rev());
        }
        Ok(out)
    }

    /// `cost(T)`: sum of every weight.
    pub fn cost(&self) -> f64 {
        self.nodes.iter().flat_map(|u| u.weights.iter()).sum()
    }

    /// Weights `(w_s · σ_u)_{s ∈ A_u}` at every node of a full-update policy tree,
    /// so that `cost(T) = W(S) · expected cost`.
    pub fn from_policy_tree(tree: &PolicyTree, instance: &Instance) -> Result<Self> {
        let entries = tree
            .nodes
            .iter()
            .map(|u| (u.covered.iter().map(|&s| instance.weight(s) * u.sigma).collect(), u.parent))
            .collect();
        WeightedTree::from_parents(entries)
    }

    /// Random tree: parent of node `i` uniform among earlier nodes, weights `U[0, max_weight)`.
    pub fn random<R: Rng>(rng: &mut R, max_nodes: usize, max_weights: usize, max_weight: f64) -> Self {
        let count = rng.gen_range(1..=max_nodes);
        let entries = (0..count)
            .map(|i| {
                let k = rng.gen_range(1..=max_weights);
                let w = (0..k).map(|_| rng.gen_range(0.0..max_weight)).collect();
                (w, if i == 0 { None } else { Some(rng.gen_range(0..i)) })
            })
            .collect();
        WeightedTree::from_parents(entries).expect("generated tree is well formed")
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::BadRho(rho))
    }
}

/// 1-based descending rank `ceil(ρ·N)`, with float noise in `ρ·N` ignored.
fn top_rank(rho: f64, len: usize) -> usize {
    let raw = rho * len as f64;
    let r = raw.round();
    let rank = if (raw - r).abs() < 1e-9 { r } else { raw.ceil() };
    (rank as usize).clamp(1, len)
}

/// `q^ρ`: the smallest weight inside the top `ρ` fraction, i.e. the element at
/// descending rank `ceil(ρ·|W|)`.
pub fn top_percentile(weights: &[f64], rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let mut sorted = weights.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(sorted[top_rank(rho, sorted.len()) - 1])
}

/// `cost(T^(ρ)) = Σ_u |w_u| · q^ρ(W(T_u))`.
pub fn percentile_tree_cost(tree: &WeightedTree, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let mut total = 0.0;
    for (u, node) in tree.nodes.iter().enumerate() {
        let q = top_percentile(&tree.subtree_weights(u)?, rho)?;
        total += node.weights.len() as f64 * q;
    }
    Ok(total)
}

/// `Q(ρ | W) = ∫_{(1-ρ)|W|}^{|W|} H(x) dx` for the ascending unit-width step histogram `H`.
pub fn quantile_area(weights: &[f64], rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let mut sorted = weights.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let len = sorted.len() as f64;
    let start = (1.0 - rho) * len;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(k, &w)| {
            let lo = (k as f64).max(start);
            let hi = (k + 1) as f64;
            if hi > lo {
                w * (hi - lo)
            } else {
                0.0
            }
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub rho: f64,
    /// `ρ · cost(T^(ρ))`
    pub lhs: f64,
    /// `Q(ρ | T)`
    pub mid: f64,
    /// `cost(T)`
    pub rhs: f64,
    pub holds: bool,
}

pub fn lemma_check(tree: &WeightedTree, rho: f64) -> Result<LemmaCheck> {
    let lhs = rho * percentile_tree_cost(tree, rho)?;
    let mid = quantile_area(&tree.subtree_weights(0)?, rho)?;
    let rhs = tree.cost();
    Ok(LemmaCheck { rho, lhs, mid, rhs, holds: lhs <= mid + TOL && mid <= rhs + TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::rng;

    fn path() -> WeightedTree {
        WeightedTree::from_parents(vec![(vec![1.0], None), (vec![3.0], Some(0))]).unwrap()
    }

    fn star() -> WeightedTree {
        WeightedTree::from_parents(vec![
            (vec![0.0], None),
            (vec![1.0], Some(0)),
            (vec![2.0], Some(0)),
            (vec![3.0], Some(0)),
        ])
        .unwrap()
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn subtree_weight_examples() {
        let leaf = WeightedTree::from_parents(vec![(vec![2.0, 2.0], None)]).unwrap();
        assert_eq!(leaf.subtree_weights(0).unwrap(), vec![2.0, 2.0]);
        assert_eq!(sorted(path().subtree_weights(0).unwrap()), vec![1.0, 3.0]);
        assert_eq!(sorted(star().subtree_weights(0).unwrap()), vec![0.0, 1.0, 2.0, 3.0]);
        assert!(matches!(star().subtree_weights(9), Err(Error::UnknownNode(9))));
    }

    #[test]
    fn percentile_examples() {
        assert_eq!(top_percentile(&[1.0, 3.0], 0.5).unwrap(), 3.0);
        assert_eq!(top_percentile(&[5.0], 0.01).unwrap(), 5.0);
        assert_eq!(top_percentile(&[1.0, 2.0, 3.0, 4.0], 0.75).unwrap(), 2.0);
        // 0.3 * 10 is 3.0000000000000004 in floating point; rank must stay 3
        let ten: Vec<f64> = (1..=10).map(f64::from).collect();
        assert_eq!(top_percentile(&ten, 0.3).unwrap(), 8.0);
        assert!(matches!(top_percentile(&[1.0], 0.0), Err(Error::BadRho(_))));
        assert!(matches!(top_percentile(&[1.0], 1.5), Err(Error::BadRho(_))));
        assert!(matches!(top_percentile(&[], 0.5), Err(Error::EmptyWeights)));
    }

    #[test]
    fn percentile_cost_examples() {
        assert_eq!(percentile_tree_cost(&path(), 0.5).unwrap(), 6.0);
        let single = WeightedTree::from_parents(vec![(vec![4.5], None)]).unwrap();
        assert_eq!(percentile_tree_cost(&single, 0.3).unwrap(), 4.5);
        assert_eq!(percentile_tree_cost(&star(), 1.0).unwrap(), 6.0);
    }

    #[test]
    fn quantile_area_examples() {
        assert_eq!(quantile_area(&[1.0, 3.0], 0.5).unwrap(), 3.0);
        assert_eq!(quantile_area(&[3.0, 1.0], 0.75).unwrap(), 3.5);
        assert_eq!(quantile_area(&[7.0], 1.0).unwrap(), 7.0);
    }

    #[test]
    fn lemma_examples() {
        let c = lemma_check(&path(), 0.5).unwrap();
        assert_eq!((c.lhs, c.mid, c.rhs, c.holds), (3.0, 3.0, 4.0, true));
        let single = WeightedTree::from_parents(vec![(vec![2.0], None)]).unwrap();
        let c = lemma_check(&single, 0.4).unwrap();
        // Q(rho | {w}) integrates the single step over [1 - rho, 1], giving rho * w
        assert!(c.holds && (c.lhs - 0.8).abs() < 1e-15 && (c.mid - 0.8).abs() < 1e-15 && c.rhs == 2.0);
    }

    #[test]
    fn quantile_shape() {
        let mut r = rng(11);
        for _ in 0..200 {
            let t = WeightedTree::random(&mut r, 20, 5, 10.0);
            let w = t.subtree_weights(0).unwrap();
            assert!((quantile_area(&w, 1.0).unwrap() - t.cost()).abs() < 1e-9);
            let grid: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
            for pair in grid.windows(2) {
                assert!(quantile_area(&w, pair[0]).unwrap() <= quantile_area(&w, pair[1]).unwrap() + 1e-12);
                assert!(top_percentile(&w, pair[0]).unwrap() >= top_percentile(&w, pair[1]).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"weights":[0.0],"children":[{"weights":[1.0]},{"weights":[2.0],"children":[{"weights":[3.0,4.0]}]}]}"#;
        let t = WeightedTree::from_json(text).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.cost(), 10.0);
        assert_eq!(WeightedTree::from_json(&t.to_json()).unwrap(), t);
        assert!(WeightedTree::from_json(r#"{"weights":[]}"#).is_err());
    }
}
