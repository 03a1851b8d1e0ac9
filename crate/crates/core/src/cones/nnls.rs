//! Lawson–Hanson active set method for `min ‖G·λ − y‖` over `λ ≥ 0`.

use crate::error::{Error, Result};
use crate::linalg::{dot, least_squares, norm};

#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution {
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// `columns` are the generators `g_i` (each of length `y.len()`).
/// Fails with `NnlsMaxIter` after `max_iter` passive-set updates.
pub fn nnls(columns: &[Vec<f64>], y: &[f64], max_iter: usize) -> Result<NnlsSolution> {
    let n = columns.len();
    let scale = columns.iter().map(|c| norm(c)).fold(0.0, f64::max).max(1.0) * (1.0 + norm(y));
    let tol = 1e-12 * scale;

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    // Columns rejected as numerically dependent since the last change of x.
    let mut blocked = vec![false; n];
    let mut iterations = 0;

    let residual = |x: &[f64]| -> Vec<f64> {
        let mut r = y.to_vec();
        for (c, &xi) in columns.iter().zip(x) {
            if xi != 0.0 {
                r.iter_mut().zip(c).for_each(|(ri, ci)| *ri -= xi * ci);
            }
        }
        r
    };

    loop {
        let r = residual(&x);
        let w: Vec<f64> = columns.iter().map(|c| dot(c, &r)).collect();
        let candidate = (0..n)
            .filter(|&j| !passive[j] && !blocked[j] && w[j] > tol)
            .max_by(|&a, &b| w[a].total_cmp(&w[b]));
        let Some(j) = candidate else { break };

        iterations += 1;
        if iterations > max_iter {
            return Err(Error::NnlsMaxIter(max_iter));
        }
        passive[j] = true;

        let mut entered = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let cols: Vec<&[f64]> = idx.iter().map(|&i| columns[i].as_slice()).collect();
            let z = least_squares(&cols, y);
            let Some(z) = z.filter(|z| !entered || z[idx.iter().position(|&i| i == j).unwrap()] > 0.0) else {
                // The new column is dependent on the passive set or would
                // enter with a nonpositive coefficient: reject it for now.
                passive[j] = false;
                blocked[j] = true;
                break;
            };
            entered = false;

            if z.iter().all(|&v| v > 0.0) {
                x.iter_mut().for_each(|v| *v = 0.0);
                for (&i, &v) in idx.iter().zip(&z) {
                    x[i] = v;
                }
                blocked.iter_mut().for_each(|b| *b = false);
                break;
            }

            let mut alpha = f64::INFINITY;
            for (&i, &zi) in idx.iter().zip(&z) {
                if zi <= 0.0 {
                    let step = x[i] / (x[i] - zi);
                    alpha = alpha.min(step);
                }
            }
            for (&i, &zi) in idx.iter().zip(&z) {
                x[i] += alpha * (zi - x[i]);
            }
            for &i in &idx {
                if x[i] <= tol * 1e-3 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            blocked.iter_mut().for_each(|b| *b = false);
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::NnlsMaxIter(max_iter));
            }
        }
    }

    let residual_norm = norm(&residual(&x));
    Ok(NnlsSolution {
        coefficients: x,
        residual_norm,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_inside_cone_has_zero_residual() {
        let cols = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let sol = nnls(&cols, &[2.0, 3.0], 100).unwrap();
        assert!(sol.residual_norm < 1e-12);
        assert!((sol.coefficients[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn antipodal_ray_projects_to_origin() {
        let sol = nnls(&[vec![1.0, 0.0]], &[-1.0, 0.0], 100).unwrap();
        assert_eq!(sol.coefficients, vec![0.0]);
        assert!((sol.residual_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example_one_exterior_point() {
        let cols = vec![
            vec![-1.0, 1.0],
            vec![-1.0, 0.5],
            vec![-1.0, 2.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ];
        let sol = nnls(&cols, &[-3.0, -3.0], 100).unwrap();
        assert!((sol.residual_norm - 9.0 / 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn redundant_generators_are_handled() {
        // Parallel and opposite generators spanning the half-plane y1 + y2 ≥ 0.
        let cols = vec![
            vec![-1.0, 1.0],
            vec![-2.0, 2.0],
            vec![1.0, -1.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ];
        let sol = nnls(&cols, &[-3.0, 1.0], 100).unwrap();
        assert!((sol.residual_norm - 2f64.sqrt()).abs() < 1e-12);
        let sol = nnls(&cols, &[-3.0, 5.0], 100).unwrap();
        assert!(sol.residual_norm < 1e-12);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let cols = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(matches!(nnls(&cols, &[1.0, 1.0], 1), Err(Error::NnlsMaxIter(1))));
    }
}
