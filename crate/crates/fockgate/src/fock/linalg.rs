//! Eigendecomposition of complex Hermitian matrices by cyclic Jacobi
//! rotations.
//!
//! Density matrices here are often numerically rank-deficient with entries
//! spanning down to underflow (a weak coherent state through heavy loss,
//! say), a regime where QL-style tridiagonalization solvers can emit NaNs.
//! Jacobi sweeps have no such failure mode: a rotation either reduces the
//! off-diagonal norm or is skipped, every quantity stays finite, and for
//! positive semi-definite matrices the eigenvalues come out with high
//! relative accuracy.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues and eigenvectors of a Hermitian matrix; `values[k]` pairs
/// with column `k` of `vectors`. Values are unsorted.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

/// Cyclic-Jacobi eigendecomposition. The strict upper triangle of `a` is
/// read as the Hermitian data; the caller guarantees Hermiticity.
pub fn hermitian_eigen(a: &DMatrix<Complex64>) -> HermitianEigen {
    let n = a.nrows();
    assert!(a.is_square(), "hermitian_eigen requires a square matrix");
    let mut m = a.clone();
    let mut vectors = DMatrix::<Complex64>::identity(n, n);

    let frobenius = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = 1e-15 * frobenius.max(f64::MIN_POSITIVE);

    // each sweep visits every off-diagonal pair once; convergence is
    // quadratic once the off-diagonal mass is small
    for _sweep in 0..64 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let abs_apq = apq.norm();
                if abs_apq <= tol / (n as f64) {
                    continue;
                }
                // phase that makes the (p, q) entry real, then the classic
                // real rotation that zeroes it
                let phase = apq / abs_apq;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau.is_infinite() {
                    0.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // G restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -s * phase.conj();
                let g_qq = c * phase.conj();

                // columns: M <- M G
                for row in 0..n {
                    let mp = m[(row, p)];
                    let mq = m[(row, q)];
                    m[(row, p)] = mp * g_pp + mq * g_qp;
                    m[(row, q)] = mp * g_pq + mq * g_qq;
                }
                // rows: M <- G^dag M
                for col in 0..n {
                    let mp = m[(p, col)];
                    let mq = m[(q, col)];
                    m[(p, col)] = g_pp.conj() * mp + g_qp.conj() * mq;
                    m[(q, col)] = g_pq.conj() * mp + g_qq.conj() * mq;
                }
                // keep Hermitian structure exact where it matters
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                for row in 0..n {
                    let vp = vectors[(row, p)];
                    let vq = vectors[(row, q)];
                    vectors[(row, p)] = vp * g_pp + vq * g_qp;
                    vectors[(row, q)] = vp * g_pq + vq * g_qq;
                }
            }
        }
    }

    let values = (0..n).map(|i| m[(i, i)].re).collect();
    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reconstruct(eig: &HermitianEigen) -> DMatrix<Complex64> {
        let n = eig.values.len();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            eig.values.iter().map(|v| Complex64::new(*v, 0.0)),
        ));
        &eig.vectors * lambda * eig.vectors.adjoint()
    }

    #[test]
    fn diagonalizes_a_dense_hermitian_matrix() {
        let n = 12;
        let mut a = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let z = Complex64::new(
                    ((i * 7 + j * 3) % 11) as f64 / 11.0,
                    if i == j {
                        0.0
                    } else {
                        ((i * 5 + j) % 7) as f64 / 7.0
                    },
                );
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let eig = hermitian_eigen(&a);
        assert_abs_diff_eq!((reconstruct(&eig) - &a).norm(), 0.0, epsilon = 1e-12);
        let unit = eig.vectors.adjoint() * &eig.vectors;
        assert_abs_diff_eq!(
            (unit - DMatrix::<Complex64>::identity(n, n)).norm(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn survives_underflow_rank_one_matrices() {
        // weak coherent state: entries decay to exact zero; QL-style solvers
        // can emit NaN here
        let n = 32;
        let b = Complex64::new(0.0, 0.0029);
        let mut amps = nalgebra::DVector::<Complex64>::zeros(n);
        let mut amp = Complex64::new((-b.norm_sqr() / 2.0).exp(), 0.0);
        amps[0] = amp;
        for k in 1..n {
            amp *= b / (k as f64).sqrt();
            amps[k] = amp;
        }
        let mut a = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        let eig = hermitian_eigen(&a);
        assert!(eig.values.iter().all(|v| v.is_finite()));
        let min = eig.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = eig.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(min >= -1e-14, "min eigenvalue {min:.3e}");
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let eig = hermitian_eigen(&DMatrix::<Complex64>::zeros(5, 5));
        assert!(eig.values.iter().all(|v| *v == 0.0));
    }
}
