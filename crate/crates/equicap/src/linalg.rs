//! Small dense-matrix helpers shared by the representation and separability
//! code. Matrices here are tiny (a few thousand entries at most), so plain
//! O(n³) algorithms with partial/cyclic pivoting are plenty.

use ndarray::{Array1, Array2};

/// Max absolute entry.
pub(crate) fn inf_norm(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
}

pub(crate) fn vec_norm(a: &Array1<f64>) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Determinant by LU with partial pivoting.
pub(crate) fn determinant(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of non-square matrix");
    let mut m = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[[row, col]].abs() > m[[pivot, col]].abs() {
                pivot = row;
            }
        }
        if m[[pivot, col]] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                m.swap([pivot, k], [col, k]);
            }
            det = -det;
        }
        det *= m[[col, col]];
        for row in col + 1..n {
            let f = m[[row, col]] / m[[col, col]];
            for k in col..n {
                m[[row, k]] -= f * m[[col, k]];
            }
        }
    }
    det
}

/// Solve `a·x = b` by LU with partial pivoting. `None` if the pivot
/// collapses below `tol` times the matrix scale.
pub(crate) fn solve(a: &Array2<f64>, b: &Array1<f64>, tol: f64) -> Option<Array1<f64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.len());
    let scale = inf_norm(a).max(1e-300);
    let mut m = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[[row, col]].abs() > m[[pivot, col]].abs() {
                pivot = row;
            }
        }
        if m[[pivot, col]].abs() <= tol * scale {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                m.swap([pivot, k], [col, k]);
            }
            x.swap(pivot, col);
        }
        for row in col + 1..n {
            let f = m[[row, col]] / m[[col, col]];
            for k in col..n {
                m[[row, k]] -= f * m[[col, k]];
            }
            x[row] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s -= m[[col, k]] * x[k];
        }
        x[col] = s / m[[col, col]];
    }
    Some(x)
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Returns unsorted diagonal values and the orthogonal matrix
/// whose columns are the matching eigenvectors.
pub(crate) fn sym_eigen(a: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    // Callers pass numerically symmetric input; enforce it exactly.
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (m[[i, j]] + m[[j, i]]);
            m[[i, j]] = v;
            m[[j, i]] = v;
        }
    }
    let mut vectors = Array2::eye(n);
    let scale = inf_norm(&m).max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(m[[i, j]].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[[p, q]];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[[q, q]] - m[[p, p]]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = vectors[[k, p]];
                    let vkq = vectors[[k, q]];
                    vectors[[k, p]] = c * vkp - s * vkq;
                    vectors[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| m[[i, i]]).collect(), vectors)
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub(crate) fn sym_eigenvalues(a: &Array2<f64>) -> Vec<f64> {
    let (mut eig, _) = sym_eigen(a);
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig
}

/// Minimum-norm solution of a symmetric (possibly singular but consistent)
/// system via the eigendecomposition pseudo-inverse. Eigenvalues below
/// `rel_tol` times the largest magnitude are treated as zero.
pub(crate) fn sym_pseudo_solve(a: &Array2<f64>, b: &Array1<f64>, rel_tol: f64) -> Array1<f64> {
    let (eig, q) = sym_eigen(a);
    let cutoff = eig.iter().fold(0.0_f64, |m, &e| m.max(e.abs())) * rel_tol;
    let qtb = q.t().dot(b);
    let scaled = Array1::from_iter(eig.iter().zip(qtb.iter()).map(|(&e, &v)| {
        if e.abs() > cutoff {
            v / e
        } else {
            0.0
        }
    }));
    q.dot(&scaled)
}

/// Singular values of a rectangular matrix, sorted descending.
///
/// Uses the symmetric augmented form [[0, A], [Aᵀ, 0]], whose eigenvalues
/// are ±σ_i. Unlike the Gram-matrix route this does not square the
/// conditioning, so small singular values keep machine accuracy — which is
/// what makes an absolute rank tolerance of 1e-8 trustworthy.
pub(crate) fn singular_values(a: &Array2<f64>) -> Vec<f64> {
    let (r, c) = (a.nrows(), a.ncols());
    let n = r + c;
    let mut aug = Array2::zeros((n, n));
    for i in 0..r {
        for j in 0..c {
            aug[[i, r + j]] = a[[i, j]];
            aug[[r + j, i]] = a[[i, j]];
        }
    }
    sym_eigenvalues(&aug)
        .into_iter()
        .take(r.min(c))
        .map(|e| e.max(0.0))
        .collect()
}

/// Number of singular values strictly above `tol`.
pub(crate) fn numerical_rank(a: &Array2<f64>, tol: f64) -> usize {
    singular_values(a).into_iter().filter(|&s| s > tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn determinant_of_rotation_is_one() {
        let a = array![[0.0, -1.0], [1.0, 0.0]];
        assert!((determinant(&a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = array![[2.0, 1.0], [1.0, 3.0]];
        let x = array![1.0, -2.0];
        let b = a.dot(&x);
        let got = solve(&a, &b, 1e-12).unwrap();
        assert!((got - x).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn solve_rejects_singular() {
        let a = array![[1.0, 2.0], [2.0, 4.0]];
        let b = array![1.0, 1.0];
        assert!(solve(&a, &b, 1e-12).is_none());
    }

    #[test]
    fn eigenvalues_of_projection() {
        // Rank-1 projection onto span{(1,1,1)}.
        let third = 1.0 / 3.0;
        let a = Array2::from_elem((3, 3), third);
        let eig = sym_eigenvalues(&a);
        assert!((eig[0] - 1.0).abs() < 1e-12);
        assert!(eig[1].abs() < 1e-12);
        assert!(eig[2].abs() < 1e-12);
    }

    #[test]
    fn rank_of_tall_matrix() {
        let a = array![[1.0, 0.0], [0.0, 2.0], [1.0, 2.0]];
        assert_eq!(numerical_rank(&a, 1e-10), 2);
        let b = array![[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]];
        assert_eq!(numerical_rank(&b, 1e-10), 1);
    }
}
