#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a real symmetric matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Option<Vec<Vec<f64>>>,
}

fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Cyclic Jacobi rotations on a private copy of `m`.
///
/// Stops once the off-diagonal Frobenius mass drops below `1e-13 · ‖M‖_F`.
pub fn eig_symmetric(m: &[Vec<f64>], want_vectors: bool) -> Result<EigenDecomposition> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    let norm = frobenius(m);
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            asym = asym.max((m[i][j] - m[j][i]).abs());
        }
    }
    if asym > 1e-12 * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut v: Option<Vec<Vec<f64>>> = want_vectors.then(|| {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    });
    let target = 1e-13 * norm;

    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s, t);
                if let Some(v) = v.as_mut() {
                    for row in v.iter_mut() {
                        let (vp, vq) = (row[p], row[q]);
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = v.map(|v| {
        order
            .iter()
            .map(|&k| (0..n).map(|r| v[r][k]).collect())
            .collect()
    });
    Ok(EigenDecomposition { values, vectors })
}

/// Applies the rotation that annihilates `a[p][q]` (and `a[q][p]`).
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64, t: f64) {
    let n = a.len();
    let apq = a[p][q];
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let (arp, arq) = (a[r][p], a[r][q]);
        let np = c * arp - s * arq;
        let nq = s * arp + c * arq;
        a[r][p] = np;
        a[p][r] = np;
        a[r][q] = nq;
        a[q][r] = nq;
    }
    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}
