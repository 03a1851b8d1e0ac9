//! Double description conversion for homogeneous cones `{d : a_i·d ≥ 0}`.
//!
//! The cone is built up one inequality at a time starting from the whole
//! space, tracking a lineality basis and a set of extreme rays. Adjacency of
//! ray pairs is decided combinatorially from their zero sets.

use log::debug;

use crate::linalg::{dot, norm, unit};

/// Relative tolerance for deciding `a·r = 0`.
const ZERO_TOL: f64 = 1e-9;

/// Rays closer than this (as unit vectors) are merged.
pub const DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RayDecomposition {
    /// Unit extreme rays, modulo the lineality space.
    pub rays: Vec<Vec<f64>>,
    /// Orthonormal basis of the lineality space.
    pub lineality: Vec<Vec<f64>>,
}

struct Ray {
    v: Vec<f64>,
    /// Indices (into the processed row order) of rows tight at this ray.
    zeros: Vec<usize>,
}

fn normalize(v: &mut [f64]) -> bool {
    let n = norm(v);
    if n <= 1e-14 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= n);
    true
}

fn is_axis_row(row: &[f64]) -> bool {
    let nonzero: Vec<&f64> = row.iter().filter(|v| **v != 0.0).collect();
    nonzero.len() == 1 && *nonzero[0] > 0.0
}

/// Processing order: positive axis rows first, then the rest by decreasing
/// cosine with the all-ones direction (stable on ties).
fn insertion_order(rows: &[Vec<f64>], dim: usize) -> Vec<usize> {
    let ones = vec![1.0 / (dim as f64).sqrt(); dim];
    let cosine = |r: &[f64]| {
        let n = norm(r);
        if n == 0.0 {
            0.0
        } else {
            dot(r, &ones) / n
        }
    };
    let mut axis: Vec<usize> = (0..rows.len()).filter(|&i| is_axis_row(&rows[i])).collect();
    axis.sort_by_key(|&i| rows[i].iter().position(|v| *v != 0.0));
    let mut rest: Vec<usize> = (0..rows.len()).filter(|&i| !is_axis_row(&rows[i])).collect();
    rest.sort_by(|&a, &b| cosine(&rows[b]).total_cmp(&cosine(&rows[a])));
    axis.extend(rest);
    axis
}

pub fn convert(rows: &[Vec<f64>], dim: usize) -> RayDecomposition {
    let order = insertion_order(rows, dim);
    let scaled: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| {
            let mut r = rows[i].clone();
            normalize(&mut r);
            r
        })
        .collect();

    let mut lineality: Vec<Vec<f64>> = (0..dim).map(|i| unit(i, dim)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in scaled.iter().enumerate() {
        if norm(a) == 0.0 {
            // 0·d ≥ 0 is vacuous but still tight everywhere.
            rays.iter_mut().for_each(|r| r.zeros.push(k));
            continue;
        }

        // A lineality direction not orthogonal to `a` becomes a ray.
        if let Some(pos) = lineality.iter().position(|l| dot(a, l).abs() > ZERO_TOL) {
            let mut l0 = lineality.swap_remove(pos);
            let al0 = dot(a, &l0);
            if al0 < 0.0 {
                l0.iter_mut().for_each(|x| *x = -*x);
            }
            let al0 = al0.abs();
            for l in lineality.iter_mut() {
                let f = dot(a, l) / al0;
                l.iter_mut().zip(&l0).for_each(|(x, y)| *x -= f * y);
            }
            orthonormalize(&mut lineality);
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / al0;
                r.v.iter_mut().zip(&l0).for_each(|(x, y)| *x -= f * y);
                normalize(&mut r.v);
                r.zeros.push(k);
            }
            // Rows processed earlier are tight on every lineality vector.
            let mut new_ray = l0;
            normalize(&mut new_ray);
            rays.push(Ray {
                v: new_ray,
                zeros: (0..k).collect(),
            });
            continue;
        }

        let values: Vec<f64> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > ZERO_TOL).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < -ZERO_TOL).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.abs() <= ZERO_TOL {
                    r.zeros.push(k);
                }
            }
            continue;
        }

        let mut next: Vec<Ray> = Vec::new();
        for &i in &pos {
            next.push(Ray {
                v: rays[i].v.clone(),
                zeros: rays[i].zeros.clone(),
            });
        }
        for (i, r) in rays.iter().enumerate() {
            if values[i].abs() <= ZERO_TOL {
                let mut zeros = r.zeros.clone();
                zeros.push(k);
                next.push(Ray { v: r.v.clone(), zeros });
            }
        }
        let free_dim = dim - lineality.len();
        for &i in &pos {
            for &j in &neg {
                let common: Vec<usize> = rays[i]
                    .zeros
                    .iter()
                    .copied()
                    .filter(|z| rays[j].zeros.contains(z))
                    .collect();
                if free_dim >= 2 && common.len() + 2 < free_dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&l| l != i && l != j)
                    .all(|l| !common.iter().all(|z| rays[l].zeros.contains(z)));
                if !adjacent {
                    continue;
                }
                let (vi, vj) = (values[i], values[j]);
                let mut v: Vec<f64> = rays[j]
                    .v
                    .iter()
                    .zip(&rays[i].v)
                    .map(|(rj, ri)| vi * rj - vj * ri)
                    .collect();
                if !normalize(&mut v) {
                    continue;
                }
                let mut zeros = common;
                zeros.push(k);
                next.push(Ray { v, zeros });
            }
        }
        rays = next;
        debug!(
            "dd: row {k} processed, {} rays, lineality {}",
            rays.len(),
            lineality.len()
        );
    }

    let mut out: Vec<Vec<f64>> = Vec::new();
    for r in rays {
        let mut v = r.v;
        for x in v.iter_mut() {
            if x.abs() < 1e-15 {
                *x = 0.0;
            }
        }
        if !normalize(&mut v) {
            continue;
        }
        if out
            .iter()
            .all(|o| o.iter().zip(&v).any(|(a, b)| (a - b).abs() > DEDUP_TOL))
        {
            out.push(v);
        }
    }
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    RayDecomposition { rays: out, lineality }
}

fn orthonormalize(vectors: &mut Vec<Vec<f64>>) {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors.drain(..) {
        let mut w = v;
        for b in &basis {
            let f = dot(&w, b);
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= f * y);
        }
        if normalize(&mut w) {
            basis.push(w);
        }
    }
    *vectors = basis;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_contains(rays: &[Vec<f64>], target: &[f64]) -> bool {
        let mut t = target.to_vec();
        normalize(&mut t);
        rays.iter().any(|r| r.iter().zip(&t).all(|(a, b)| (a - b).abs() < 1e-9))
    }

    #[test]
    fn orthant_is_self_dual() {
        let dec = convert(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2);
        assert!(dec.lineality.is_empty());
        assert_eq!(dec.rays, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn empty_rows_give_whole_space() {
        let dec = convert(&[], 3);
        assert!(dec.rays.is_empty());
        assert_eq!(dec.lineality.len(), 3);
    }

    #[test]
    fn halfspace_has_one_ray_and_lineality() {
        let dec = convert(&[vec![1.0, 1.0]], 2);
        assert_eq!(dec.rays.len(), 1);
        assert_eq!(dec.lineality.len(), 1);
        let (r, l) = (&dec.rays[0], &dec.lineality[0]);
        assert!(r[0] + r[1] > 1e-9);
        assert!((l[0] + l[1]).abs() < 1e-12);
    }

    #[test]
    fn cube_corner_with_cut() {
        // d ≥ 0 in R^3 with d1 ≤ d2 (−d1 + d2 ≥ 0).
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![-1.0, 1.0, 0.0],
        ];
        let dec = convert(&rows, 3);
        assert_eq!(dec.rays.len(), 3);
        assert!(approx_contains(&dec.rays, &[0.0, 1.0, 0.0]));
        assert!(approx_contains(&dec.rays, &[0.0, 0.0, 1.0]));
        assert!(approx_contains(&dec.rays, &[1.0, 1.0, 0.0]));
    }

    #[test]
    fn pointed_apex_only() {
        // d ≥ 0 and −d1 − d2 ≥ 0 leaves only the origin.
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, -1.0]];
        let dec = convert(&rows, 2);
        assert!(dec.rays.is_empty());
        assert!(dec.lineality.is_empty());
    }

    #[test]
    fn square_pyramid_needs_adjacency_test() {
        // Cone over a square in R^3: four facets, four rays; a naive pairing
        // of all +/- rays would create a spurious interior ray.
        let rows = vec![
            vec![1.0, 0.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, -1.0, 1.0],
        ];
        let dec = convert(&rows, 3);
        assert_eq!(dec.rays.len(), 4, "{:?}", dec.rays);
        for target in [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]] {
            assert!(approx_contains(&dec.rays, &target));
        }
    }
}
