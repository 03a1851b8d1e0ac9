#![allow(dead_code)]

use prefcone::PreferenceInstance;
use proptest::prelude::*;

/// Valid instances with `p ≤ max_p`, `t ≤ max_t`, up to two extra
/// alternatives, and integer coordinates in `[-3, 3]`.
pub fn instance(max_p: usize, max_t: usize) -> impl Strategy<Value = PreferenceInstance> {
    (1..=max_p, 1..=max_t, 0..=2usize)
        .prop_flat_map(|(p, t, extra)| {
            let capacity = 7usize.pow(p as u32);
            let t = t.min(capacity - 1);
            let m = (t + 1 + extra).min(capacity);
            let points = prop::collection::hash_set(prop::collection::vec(-3i32..=3, p), m);
            let order = Just((0..m).collect::<Vec<_>>()).prop_shuffle();
            (points, order, Just(t))
        })
        .prop_map(|(points, order, t)| {
            let mut points: Vec<Vec<i32>> = points.into_iter().collect();
            points.sort();
            let alternatives = points
                .into_iter()
                .map(|x| x.into_iter().map(f64::from).collect())
                .collect();
            PreferenceInstance::new(alternatives, order[0], order[1..=t].to_vec())
        })
}

pub fn example1() -> PreferenceInstance {
    PreferenceInstance::new(
        vec![vec![0.0, 2.0], vec![0.0, 1.5], vec![0.0, 3.0], vec![1.0, 1.0]],
        3,
        vec![0, 1, 2],
    )
}

pub fn example3() -> PreferenceInstance {
    PreferenceInstance::new(vec![vec![0.0, 2.0], vec![2.0, 0.0], vec![1.0, 1.0]], 2, vec![0, 1])
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
