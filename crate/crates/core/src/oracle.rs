//! Brute-force verifiers and random fixture generators for the test suite.
//!
//! Nothing here shares code paths with the engine routines it checks: cone
//! distances use random sampling plus coordinate descent (or plane
//! geometry in 2D), LP optima use basis enumeration, and value-function
//! properties are checked by sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cones::{self, GeneratorCone, MembershipClass};
use crate::instance::PreferenceInstance;
use crate::lp::StandardLp;
use crate::valuefn::{ValueFunction, ValueFunctionKind};

pub const CONCAVITY_TOL: f64 = 1e-7;
pub const LIPSCHITZ_TOL: f64 = 1e-9;
pub const MONOTONICITY_TOL: f64 = 1e-9;
pub const BOUNDARY_TOL: f64 = 1e-8;
pub const STRICT_MARGIN: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("LP too large for enumeration: {rows} rows, {vars} variables")]
    TooLarge { rows: usize, vars: usize },
    #[error("no basic feasible solution")]
    Infeasible,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn combine(gens: &[&Vec<f64>], lambda: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (g, &l) in gens.iter().zip(lambda) {
        out.iter_mut().zip(g.iter()).for_each(|(o, v)| *o += l * v);
    }
    out
}

/// Upper bound on the distance from `y` to the cone: best of `samples`
/// random nonnegative combinations, then `refine_rounds` sweeps of exact
/// coordinate minimization on `λ ≥ 0`.
pub fn brute_dist_to_cone(y: &[f64], cone: &GeneratorCone, samples: usize, refine_rounds: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let gens: Vec<&Vec<f64>> = cone.all_generators().collect();
    let dim = y.len();
    let n = gens.len();
    let ynorm = norm(y).max(1e-12);
    let resid = |lambda: &[f64]| {
        let z = combine(&gens, lambda, dim);
        norm(&y.iter().zip(&z).map(|(a, b)| a - b).collect::<Vec<_>>())
    };

    let mut best = vec![0.0; n];
    let mut best_val = resid(&best);
    for _ in 0..samples {
        let mut lambda = vec![0.0; n];
        let support = rng.gen_range(1..=n.min(dim + 1));
        for _ in 0..support {
            let i = rng.gen_range(0..n);
            let scale = ynorm / norm(gens[i]).max(1e-12);
            lambda[i] += rng.gen::<f64>() * 2.0 * scale;
        }
        let v = resid(&lambda);
        if v < best_val {
            best_val = v;
            best = lambda;
        }
    }

    let refine = |mut lambda: Vec<f64>| {
        let mut r: Vec<f64> = {
            let z = combine(&gens, &lambda, dim);
            y.iter().zip(&z).map(|(a, b)| a - b).collect()
        };
        for _ in 0..refine_rounds {
            for i in 0..n {
                let g = gens[i];
                let gg = dot(g, g);
                if gg == 0.0 {
                    continue;
                }
                let new = (lambda[i] + dot(g, &r) / gg).max(0.0);
                let delta = new - lambda[i];
                if delta != 0.0 {
                    r.iter_mut().zip(g.iter()).for_each(|(ri, gi)| *ri -= delta * gi);
                    lambda[i] = new;
                }
            }
        }
        lambda
    };
    let from_best = refine(best);
    let from_zero = refine(vec![0.0; n]);
    resid(&from_best).min(resid(&from_zero)).min(best_val)
}

/// Distance from `y` to the cone generated by 2D vectors, by angular
/// analysis: the cone is the plane, a half-plane, or a wedge bounded by two
/// rays, and the distance from an outside point is the distance to the
/// nearer bounding ray.
pub fn analytic_dist_2d(y: [f64; 2], gens: &[[f64; 2]]) -> f64 {
    use std::f64::consts::PI;
    let two_pi = 2.0 * PI;
    let ray_dist = |r: [f64; 2]| {
        let n = (r[0] * r[0] + r[1] * r[1]).sqrt();
        let u = [r[0] / n, r[1] / n];
        let proj = y[0] * u[0] + y[1] * u[1];
        if proj <= 0.0 {
            (y[0] * y[0] + y[1] * y[1]).sqrt()
        } else {
            (u[0] * y[1] - u[1] * y[0]).abs()
        }
    };
    let mut angles: Vec<f64> = gens
        .iter()
        .filter(|g| g[0] != 0.0 || g[1] != 0.0)
        .map(|g| g[1].atan2(g[0]).rem_euclid(two_pi))
        .collect();
    if angles.is_empty() {
        return (y[0] * y[0] + y[1] * y[1]).sqrt();
    }
    angles.sort_by(f64::total_cmp);
    let k = angles.len();
    let (mut gap, mut at) = (-1.0, 0);
    for i in 0..k {
        let g = if i + 1 < k {
            angles[i + 1] - angles[i]
        } else {
            angles[0] + two_pi - angles[i]
        };
        if g > gap {
            gap = g;
            at = i;
        }
    }
    if gap < PI - 1e-12 {
        return 0.0;
    }
    let start = angles[(at + 1) % k];
    let end = angles[at];
    let span = two_pi - gap;
    if y == [0.0, 0.0] {
        return 0.0;
    }
    let phi = y[1].atan2(y[0]);
    if (phi - start).rem_euclid(two_pi) <= span + 1e-15 {
        return 0.0;
    }
    ray_dist([start.cos(), start.sin()]).min(ray_dist([end.cos(), end.sin()]))
}

/// Exact LP optimum by enumerating every basis of at most 6 rows and 14
/// variables.
pub fn enumerate_lp_optimum(lp: &StandardLp) -> Result<f64, OracleError> {
    let (m, n) = (lp.rhs.len(), lp.objective.len());
    if m > 6 || n > 14 {
        return Err(OracleError::TooLarge { rows: m, vars: n });
    }
    let mut best: Option<f64> = None;
    let mut cols: Vec<usize> = (0..m).collect();
    loop {
        if let Some(x) = solve_basis(lp, &cols) {
            if x.iter().all(|&v| v >= -1e-9) {
                let obj: f64 = cols.iter().zip(&x).map(|(&c, v)| lp.objective[c] * v).sum();
                best = Some(best.map_or(obj, |b: f64| b.min(obj)));
            }
        }
        // Next combination in lexicographic order.
        let mut i = m;
        loop {
            if i == 0 {
                return best.ok_or(OracleError::Infeasible);
            }
            i -= 1;
            if cols[i] < n - m + i {
                break;
            }
        }
        cols[i] += 1;
        for j in (i + 1)..m {
            cols[j] = cols[j - 1] + 1;
        }
        if m == 0 {
            return best.ok_or(OracleError::Infeasible);
        }
    }
}

fn solve_basis(lp: &StandardLp, cols: &[usize]) -> Option<Vec<f64>> {
    let m = cols.len();
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|r| {
            let mut row: Vec<f64> = cols.iter().map(|&c| lp.constraint_matrix[r][c]).collect();
            row.push(lp.rhs[r]);
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-10 {
            return None;
        }
        a.swap(c, p);
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c {
                let f = row[c] / pivot_row[c];
                row[c..]
                    .iter_mut()
                    .zip(&pivot_row[c..])
                    .for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    Some((0..m).map(|r| a[r][m] / a[r][r]).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyViolation {
    pub property: &'static str,
    pub witness: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

struct Recorder {
    violations: Vec<PropertyViolation>,
}

impl Recorder {
    /// Records a violation of `lhs ≥ rhs − tol`.
    fn at_least(&mut self, property: &'static str, witness: &[&[f64]], lhs: f64, rhs: f64, tol: f64) {
        let gap = rhs - lhs;
        if gap > tol || lhs.is_nan() || rhs.is_nan() {
            self.violations.push(PropertyViolation {
                property,
                witness: witness.iter().map(|w| w.to_vec()).collect(),
                lhs,
                rhs,
                gap,
            });
        }
    }
}

/// Samples every value-function property: concavity, Lipschitz modulus 2
/// (distance functions), componentwise monotonicity, monotonicity along the
/// cone, the sign pattern relative to `x_k + E`, and weak or strict
/// consistency with the judgements. Deterministic for a fixed seed.
pub fn check_properties(
    h: &ValueFunction,
    inst: &PreferenceInstance,
    n_samples: usize,
    seed: u64,
) -> Vec<PropertyViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder { violations: Vec::new() };
    let p = h.dim();
    let xk = h.reference().to_vec();
    let eval = |x: &[f64]| h.evaluate(x).unwrap_or(f64::NAN);

    let samples: Vec<Vec<f64>> = (0..n_samples)
        .map(|i| {
            if i % 2 == 0 {
                (0..p).map(|_| rng.gen_range(-10.0..=10.0)).collect()
            } else {
                xk.iter().map(|c| c + rng.gen_range(-3.0..=3.0)).collect()
            }
        })
        .collect();
    let values: Vec<f64> = samples.iter().map(|x| eval(x)).collect();

    let cone_gens: Vec<Vec<f64>> = match h.gen_cone() {
        Some(c) => c.all_generators().cloned().collect(),
        None => GeneratorCone::from_instance(inst, 0.0)
            .all_generators()
            .cloned()
            .collect(),
    };
    let is_distance = h.kind() != ValueFunctionKind::Linear;

    for i in 0..n_samples {
        let (a, fa) = (&samples[i], values[i]);
        let j = rng.gen_range(0..n_samples);
        let (b, fb) = (&samples[j], values[j]);

        let lambda: f64 = rng.gen();
        let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect();
        rec.at_least(
            "concavity",
            &[a, b, &mid],
            eval(&mid),
            lambda * fa + (1.0 - lambda) * fb,
            CONCAVITY_TOL,
        );

        let dist = norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>());
        if is_distance {
            rec.at_least("lipschitz", &[a, b], 2.0 * dist, (fa - fb).abs(), LIPSCHITZ_TOL);
        }

        let up: Vec<f64> = a.iter().map(|x| x + rng.gen_range(0.0..3.0)).collect();
        rec.at_least("monotonicity", &[a, &up], eval(&up), fa, MONOTONICITY_TOL);

        let mut z = vec![0.0; p];
        for g in &cone_gens {
            if rng.gen_bool(0.5) {
                let l = rng.gen_range(0.0..2.0);
                z.iter_mut().zip(g).for_each(|(zi, gi)| *zi += l * gi);
            }
        }
        let shifted: Vec<f64> = a.iter().zip(&z).map(|(x, y)| x + y).collect();
        rec.at_least(
            "cone_monotonicity",
            &[a, &shifted],
            eval(&shifted),
            fa,
            MONOTONICITY_TOL,
        );
    }

    if let (Some(facets), Some(cone)) = (h.facet_cone(), h.gen_cone()) {
        for (x, &fx) in samples.iter().zip(&values) {
            let y: Vec<f64> = x.iter().zip(&xk).map(|(a, b)| a - b).collect();
            let Ok(class) = cones::classify(&y, facets) else {
                continue;
            };
            let to_cone = cones::dist_to_cone(&y, cone).unwrap_or(f64::NAN);
            let scale = 1.0 + norm(&y);
            match class {
                MembershipClass::Interior => {
                    rec.at_least("sign_interior", &[x], fx, STRICT_MARGIN, 0.0);
                    rec.at_least("membership_agreement", &[x], 1e-7 * scale, to_cone, 0.0);
                }
                MembershipClass::Boundary => {
                    rec.at_least("sign_boundary", &[x], BOUNDARY_TOL, fx.abs(), 0.0);
                }
                MembershipClass::Exterior => {
                    rec.at_least("sign_exterior", &[x], -fx, STRICT_MARGIN, 0.0);
                    rec.at_least("membership_agreement", &[x], to_cone, STRICT_MARGIN, 0.0);
                }
            }
        }
        for a in &facets.facet_normals {
            for x in samples.iter().take(n_samples / 4) {
                let y: Vec<f64> = x.iter().zip(&xk).map(|(u, v)| u - v).collect();
                let ay = dot(a, &y);
                let on: Vec<f64> = y.iter().zip(a).map(|(yi, ai)| yi - ay * ai).collect();
                if matches!(cones::classify(&on, facets), Ok(MembershipClass::Boundary)) {
                    let point: Vec<f64> = on.iter().zip(&xk).map(|(u, v)| u + v).collect();
                    rec.at_least("sign_boundary", &[&point], BOUNDARY_TOL, eval(&point).abs(), 0.0);
                }
            }
        }
    }

    let at_ref = eval(&xk);
    match h.kind() {
        ValueFunctionKind::Psi => {
            rec.at_least("reference_value_zero", &[&xk], BOUNDARY_TOL, at_ref.abs(), 0.0);
            for xj in inst.preferred() {
                rec.at_least("weak_consistency", &[xj], eval(xj), at_ref, 0.0);
            }
        }
        ValueFunctionKind::Vartheta | ValueFunctionKind::Linear => {
            if h.kind() == ValueFunctionKind::Vartheta {
                rec.at_least("reference_value_zero", &[&xk], BOUNDARY_TOL, at_ref.abs(), 0.0);
            }
            for xj in inst.preferred() {
                rec.at_least("strict_consistency", &[xj], eval(xj), at_ref + STRICT_MARGIN, 0.0);
            }
        }
    }

    // Points of x_k + E that use at least one preference generator are
    // interior to the perturbed cone.
    if h.kind() == ValueFunctionKind::Vartheta {
        let gens = inst.generators(0.0);
        for _ in 0..(n_samples / 10).max(1) {
            let mut y = vec![0.0; p];
            for g in &gens {
                let l = rng.gen_range(0.0..1.0);
                y.iter_mut().zip(g).for_each(|(yi, gi)| *yi += l * gi);
            }
            let k = rng.gen_range(0..gens.len());
            y.iter_mut().zip(&gens[k]).for_each(|(yi, gi)| *yi += 0.5 * gi);
            for yi in y.iter_mut() {
                *yi += rng.gen_range(0.0..1.0);
            }
            let x: Vec<f64> = y.iter().zip(&xk).map(|(a, b)| a + b).collect();
            rec.at_least("strict_positivity_on_cone", &[&x], eval(&x), STRICT_MARGIN, 0.0);
        }
    }

    rec.violations
}

/// Random valid instance: `p ∈ [1, max_p]`, `t ∈ [1, max_t]`, integer
/// coordinates in `[-range, range]`, pairwise distinct alternatives.
pub fn random_instance<R: Rng>(rng: &mut R, max_p: usize, max_t: usize, range: i32) -> PreferenceInstance {
    let p = rng.gen_range(1..=max_p);
    let capacity = ((2 * range + 1) as f64).powi(p as i32) as usize;
    let t = rng.gen_range(1..=max_t.min(capacity - 1));
    let extra = rng.gen_range(0..=2usize).min(capacity - t - 1);
    let m = t + 1 + extra;
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(m);
    while points.len() < m {
        let x: Vec<f64> = (0..p).map(|_| rng.gen_range(-range..=range) as f64).collect();
        if !points.contains(&x) {
            points.push(x);
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    PreferenceInstance::new(points, order[0], order[1..=t].to_vec())
}

/// Instance whose judgements all come from the linear value function
/// `w·x` with random weights `w > 0`.
pub fn synthetic_dm_instance<R: Rng>(
    rng: &mut R,
    max_p: usize,
    max_t: usize,
    range: i32,
) -> (PreferenceInstance, Vec<f64>) {
    loop {
        let p = rng.gen_range(1..=max_p);
        let w: Vec<f64> = (0..p).map(|_| rng.gen_range(0.1..2.0)).collect();
        let m = rng.gen_range(3..=max_t + 3);
        let mut points: Vec<Vec<f64>> = Vec::new();
        for _ in 0..m * 4 {
            if points.len() == m {
                break;
            }
            let x: Vec<f64> = (0..p).map(|_| rng.gen_range(-range..=range) as f64).collect();
            if !points.contains(&x) {
                points.push(x);
            }
        }
        let k = rng.gen_range(0..points.len());
        let vk = dot(&w, &points[k]);
        let mut better: Vec<usize> = (0..points.len()).filter(|&i| dot(&w, &points[i]) > vk).collect();
        if better.is_empty() {
            continue;
        }
        better.shuffle(rng);
        better.truncate(rng.gen_range(1..=max_t.min(better.len())));
        return (PreferenceInstance::new(points, k, better), w);
    }
}
