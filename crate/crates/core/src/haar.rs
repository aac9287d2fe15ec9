//! Haar-random unitaries from QR of a complex Ginibre matrix.

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{ComplexMatrix, UnitaryMatrix};
use crate::rng;

/// Draws an `n × n` Haar-random unitary, deterministic in `seed`.
///
/// Entries of the Ginibre matrix are `(a + ib)/√2` with `a, b ~ N(0, 1)`,
/// drawn row-major. After a Householder QR the columns of `Q` are rephased
/// by `r_jj / |r_jj|`, which is what makes the result Haar-distributed rather
/// than biased by the QR sign convention.
pub fn haar_unitary(n: usize, seed: u64) -> UnitaryMatrix {
    assert!(n >= 1, "haar_unitary needs n >= 1");
    let mut rng = rng::stream(seed, 0);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let data: Vec<Complex64> = (0..n * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let ginibre = ComplexMatrix::from_vec(n, n, data).expect("finite gaussian entries");
    let (mut q, r_diag) = householder_qr(ginibre);
    for (j, r) in r_diag.iter().enumerate() {
        let norm = r.norm();
        let phase = if norm > 0.0 { r / norm } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    UnitaryMatrix::new(q).expect("QR factor is unitary")
}

/// Returns `Q` and the diagonal of `R` for a square `a = QR`.
fn householder_qr(mut a: ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    let n = a.rows();
    let mut q = ComplexMatrix::identity(n);
    let mut diag = Vec::with_capacity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        let norm_x = (j..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        let x0 = a[(j, j)];
        if norm_x == 0.0 {
            diag.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm_x;
        for i in j..n {
            v[i] = a[(i, j)];
        }
        v[j] -= alpha;
        let vnorm2: f64 = (j..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            diag.push(a[(j, j)]);
            continue;
        }
        // a <- (I - 2 v v† / v†v) a on the trailing block
        for c in j..n {
            let dot: Complex64 = (j..n).map(|i| v[i].conj() * a[(i, c)]).sum();
            let f = dot * (2.0 / vnorm2);
            for i in j..n {
                let vi = v[i];
                a[(i, c)] -= vi * f;
            }
        }
        // q <- q (I - 2 v v† / v†v)
        for rix in 0..n {
            let dot: Complex64 = (j..n).map(|i| q[(rix, i)] * v[i]).sum();
            let f = dot * (2.0 / vnorm2);
            for i in j..n {
                let vc = v[i].conj();
                q[(rix, i)] -= f * vc;
            }
        }
        diag.push(alpha);
    }
    (q, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs_input() {
        let a = ComplexMatrix::from_rows(&[
            [Complex64::new(1.0, 2.0), Complex64::new(0.5, -1.0), Complex64::new(0.0, 0.3)],
            [Complex64::new(-0.7, 0.1), Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0)],
            [Complex64::new(0.2, 0.2), Complex64::new(-1.0, 0.4), Complex64::new(0.9, -0.5)],
        ])
        .unwrap();
        let (q, diag) = householder_qr(a.clone());
        assert!(q.unitarity_deviation() < 1e-13);
        let r = q.adjoint().matmul(&a).unwrap();
        for i in 0..3 {
            assert!((r[(i, i)] - diag[i]).norm() < 1e-12);
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-12, "R not upper triangular");
            }
        }
    }

    #[test]
    fn single_mode_is_a_phase() {
        let u = haar_unitary(1, 42);
        assert!((u.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(haar_unitary(16, 3), haar_unitary(16, 3));
        assert_ne!(haar_unitary(16, 3), haar_unitary(16, 4));
    }

    #[test]
    fn always_unitary() {
        for n in [2, 5, 16, 32, 48] {
            assert!(haar_unitary(n, n as u64).matrix().unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn first_moment_matches_haar() {
        // E|u_ij|^2 = 1/n; Var|u_ij|^2 = (n-1)/(n^2 (n+1)).
        let n = 8;
        let draws = 10_000;
        let mut sums = vec![0.0; n * n];
        for s in 0..draws {
            let u = haar_unitary(n, s as u64);
            for (acc, z) in sums.iter_mut().zip(u.matrix().as_slice()) {
                *acc += z.norm_sqr();
            }
        }
        let nf = n as f64;
        let sigma = ((nf - 1.0) / (nf * nf * (nf + 1.0)) / draws as f64).sqrt();
        for s in sums {
            let mean = s / draws as f64;
            assert!((mean - 1.0 / nf).abs() < 3.0 * sigma, "mean {mean}");
        }
    }

    #[test]
    fn phases_are_not_biased() {
        // Without the R-diagonal fix the diagonal of Q has a systematic phase;
        // with it E[u_00] = 0.
        let draws = 4000;
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..draws {
            acc += haar_unitary(4, 1000 + s).matrix()[(0, 0)];
        }
        let mean = acc / draws as f64;
        // |u_00|^2 has mean 1/4, so sd of the complex mean is about sqrt(1/4/draws)
        assert!(mean.norm() < 4.0 * (0.25 / draws as f64).sqrt(), "{mean}");
    }
}
