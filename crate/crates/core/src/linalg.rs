// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense complex linear algebra on stack-allocated `[[Complex64; N]; N]`
//! matrices.
//!
//! The whole crate only ever needs 3×3 and 4×4 Hermitian problems, so a
//! cyclic complex Jacobi eigensolver is both simpler and more accurate here
//! than pulling in a general-purpose LAPACK binding. Jacobi converges
//! quadratically and keeps eigenvalue errors at a few ulps of the matrix
//! norm for these sizes.

use num_complex::Complex64;

use crate::math;

pub(crate) type Matrix<const N: usize> = [[Complex64; N]; N];

pub(crate) const fn zero<const N: usize>() -> Matrix<N> {
    [[Complex64::new(0.0, 0.0); N]; N]
}

pub(crate) fn identity<const N: usize>() -> Matrix<N> {
    let mut m = zero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub(crate) fn matmul<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    let mut out = zero();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub(crate) fn adjoint<const N: usize>(a: &Matrix<N>) -> Matrix<N> {
    let mut out = zero();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub(crate) fn transpose<const N: usize>(a: &Matrix<N>) -> Matrix<N> {
    let mut out = zero();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub(crate) fn trace<const N: usize>(a: &Matrix<N>) -> Complex64 {
    let mut t = Complex64::new(0.0, 0.0);
    for (i, row) in a.iter().enumerate() {
        t += row[i];
    }
    t
}

/// Largest |a_ij − conj(a_ji)| over all index pairs.
pub(crate) fn hermiticity_defect<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            let d = (a[i][j] - a[j][i].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn frobenius<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut s = 0.0;
    for row in a {
        for e in row {
            s += e.norm_sqr();
        }
    }
    math::sqrt(s)
}

fn off_diagonal_norm_sqr<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[i][j].norm_sqr();
            }
        }
    }
    s
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Returns eigenvalues in ascending order together with the matching
/// eigenvector columns (`v[.][k]` is the k-th eigenvector component-wise).
/// The input is symmetrized first, so tiny Hermiticity defects from upstream
/// arithmetic do not leak into the spectrum.
pub(crate) fn hermitian_eigen<const N: usize>(m: &Matrix<N>) -> ([f64; N], Matrix<N>) {
    // Work on the Hermitian part; diagonals become exactly real.
    let mut a = zero();
    for i in 0..N {
        for j in 0..N {
            a[i][j] = 0.5 * (m[i][j] + m[j][i].conj());
        }
    }
    let mut v = identity();
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);
    let tol = (1e-15 * scale) * (1e-15 * scale);

    for _sweep in 0..60 {
        if off_diagonal_norm_sqr(&a) <= tol {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    a[p][q] = Complex64::new(0.0, 0.0);
                    a[q][p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / mag;
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                // Unitary rotation U = [[c, s·phase], [−s·conj(phase), c]]
                // acting on the (p, q) plane; A ← U† A U, V ← V U.
                let alpha = phase.scale(s);
                for i in 0..N {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = aip.scale(c) - aiq * alpha.conj();
                    a[i][q] = aip * alpha + aiq.scale(c);
                    a[p][i] = a[i][p].conj();
                    a[q][i] = a[i][q].conj();
                }
                let new_pp = c * c * app + s * s * aqq - 2.0 * c * s * mag;
                let new_qq = s * s * app + c * c * aqq + 2.0 * c * s * mag;
                a[p][p] = Complex64::new(new_pp, 0.0);
                a[q][q] = Complex64::new(new_qq, 0.0);
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
                for i in 0..N {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = vip.scale(c) - viq * alpha.conj();
                    v[i][q] = vip * alpha + viq.scale(c);
                }
            }
        }
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    // Insertion sort by eigenvalue; N ≤ 4 so anything fancier is pointless.
    for i in 1..N {
        let mut j = i;
        while j > 0 && a[order[j - 1]][order[j - 1]].re > a[order[j]][order[j]].re {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut values = [0.0_f64; N];
    let mut vectors = zero();
    for (k, &col) in order.iter().enumerate() {
        values[k] = a[col][col].re;
        for i in 0..N {
            vectors[i][k] = v[i][col];
        }
    }
    (values, vectors)
}

/// Eigenvalues only, ascending.
pub(crate) fn hermitian_eigenvalues<const N: usize>(m: &Matrix<N>) -> [f64; N] {
    hermitian_eigen(m).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let mut m = zero::<4>();
        for (i, d) in [3.0, -1.0, 0.5, 2.0].iter().enumerate() {
            m[i][i] = c(*d, 0.0);
        }
        let vals = hermitian_eigenvalues(&m);
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[2], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[3], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_hermitian_2x2_block() {
        // [[0, -i], [i, 0]] has eigenvalues ±1.
        let mut m = zero::<3>();
        m[0][1] = c(0.0, -1.0);
        m[1][0] = c(0.0, 1.0);
        m[2][2] = c(5.0, 0.0);
        let vals = hermitian_eigenvalues(&m);
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[2], 5.0, epsilon = 1e-14);
    }

    #[test]
    fn reconstruction_from_eigenpairs() {
        let m: Matrix<4> = [
            [c(2.0, 0.0), c(0.3, 0.1), c(0.0, -0.2), c(0.1, 0.0)],
            [c(0.3, -0.1), c(1.0, 0.0), c(0.4, 0.0), c(0.0, 0.3)],
            [c(0.0, 0.2), c(0.4, 0.0), c(-1.0, 0.0), c(0.2, -0.1)],
            [c(0.1, 0.0), c(0.0, -0.3), c(0.2, 0.1), c(0.5, 0.0)],
        ];
        let (vals, vecs) = hermitian_eigen(&m);
        // Σ_k λ_k v_k v_k† must reproduce the input.
        let mut rebuilt = zero::<4>();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    rebuilt[i][j] += vecs[i][k] * vecs[j][k].conj() * vals[k];
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(rebuilt[i][j].re, m[i][j].re, epsilon = 1e-13);
                assert_abs_diff_eq!(rebuilt[i][j].im, m[i][j].im, epsilon = 1e-13);
            }
        }
        // Trace and eigenvalue sum agree.
        let t: f64 = vals.iter().sum();
        assert_abs_diff_eq!(t, trace(&m).re, epsilon = 1e-13);
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let m: Matrix<3> = [
            [c(1.0, 0.0), c(0.2, 0.5), c(0.0, 0.1)],
            [c(0.2, -0.5), c(-0.3, 0.0), c(0.7, 0.0)],
            [c(0.0, -0.1), c(0.7, 0.0), c(0.9, 0.0)],
        ];
        let (_, vecs) = hermitian_eigen(&m);
        let gram = matmul(&adjoint(&vecs), &vecs);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(gram[i][j].re, want, epsilon = 1e-13);
                assert_abs_diff_eq!(gram[i][j].im, 0.0, epsilon = 1e-13);
            }
        }
    }
}
