//! Small dense vector helpers shared by the geometric routines.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn unit(i: usize, p: usize) -> Vec<f64> {
    let mut e = vec![0.0; p];
    e[i] = 1.0;
    e
}

/// Rank of a set of vectors, by Gaussian elimination with partial pivoting.
pub(crate) fn rank(vectors: &[Vec<f64>], dim: usize, tol: f64) -> usize {
    let mut rows: Vec<Vec<f64>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..dim {
        let pivot = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()));
        let Some(pivot) = pivot else { break };
        if rows[pivot][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, pivot);
        for r in (rank + 1)..rows.len() {
            let factor = rows[r][col] / rows[rank][col];
            if factor != 0.0 {
                let pivot_row = rows[rank][col..dim].to_vec();
                rows[r][col..dim]
                    .iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, pv)| *v -= factor * pv);
            }
        }
        rank += 1;
    }
    rank
}

/// Least squares solution of `cols · z ≈ rhs` via Householder QR.
///
/// `cols` holds the matrix column by column, each of length `rhs.len()`.
/// Returns `None` when the columns are numerically rank deficient.
pub(crate) fn least_squares(cols: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rhs.len();
    let n = cols.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if n > m {
        return None;
    }
    let mut a: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut b = rhs.to_vec();
    let scale = a.iter().map(|c| norm(c)).fold(0.0, f64::max).max(1.0);

    for k in 0..n {
        let alpha = norm(&a[k][k..]);
        if alpha <= 1e-12 * scale {
            return None;
        }
        let alpha = if a[k][k] > 0.0 { -alpha } else { alpha };
        let mut v = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k) {
            let f = 2.0 * dot(&v, &col[k..]) / vnorm2;
            for (x, vi) in col[k..].iter_mut().zip(&v) {
                *x -= f * vi;
            }
        }
        let f = 2.0 * dot(&v, &b[k..]) / vnorm2;
        for (x, vi) in b[k..].iter_mut().zip(&v) {
            *x -= f * vi;
        }
    }

    let mut z = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in (i + 1)..n {
            s -= a[j][i] * z[j];
        }
        z[i] = s / a[i][i];
    }
    if m > 0 && z.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(z)
}
