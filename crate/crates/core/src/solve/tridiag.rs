//! Symmetric tridiagonal eigenvalue tools for the Lanczos inner problem.
//!
//! Eigenvalues come from the implicit-shift QL iteration; selected
//! eigenvectors from inverse iteration with a pivoting tridiagonal solve.
//! Both are deterministic.

/// All eigenvalues of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (len = diag.len() - 1), ascending.
pub fn eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n > 0 && off.len() + 1 == n);
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Look for a negligible subdiagonal element to split at.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            debug_assert!(iter <= 80, "QL iteration failed to deflate");
            if iter > 80 {
                break;
            }

            // Implicit shift from the 2x2 at l.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut underflowed = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = 0.0;
                let _ = f;
            }
            if underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Solve (T - shift)·x = b for tridiagonal T using Gaussian elimination
/// with partial pivoting; `b` is consumed as the right-hand side.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, mut b: Vec<f64>) -> Vec<f64> {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|&x| x - shift).collect();
    let mut dl = off.to_vec();
    let mut du = off.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let tiny = f64::MIN_POSITIVE.sqrt();

    for i in 0..n.saturating_sub(1) {
        if dl[i].abs() <= d[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            if i + 2 < n {
                du2[i] = 0.0;
            }
        } else {
            // Swap rows i and i+1.
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            du[i] = temp;
            let bi = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bi - fact * b[i];
        }
    }

    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = b;
    x[n - 1] /= d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    x
}

/// Eigenvector of the tridiagonal for a converged eigenvalue `theta`,
/// by two (or three) rounds of inverse iteration from a seeded start.
pub fn eigenvector(diag: &[f64], off: &[f64], theta: f64, seed_salt: u64) -> Vec<f64> {
    let n = diag.len();
    let mut rng = crate::solve::SplitMix64::new(0x5851_f42d_4c95_7f2d ^ seed_salt);
    let mut x: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
    normalize(&mut x);
    for _ in 0..3 {
        x = solve_shifted(diag, off, theta, x);
        normalize(&mut x);
    }
    x
}

fn normalize(x: &mut [f64]) {
    let n: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_by_two_analytic() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let vals = eigenvalues(&[2.0, 2.0], &[1.0]);
        assert_relative_eq!(vals[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(vals[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let vals = eigenvalues(&[3.0, -1.0, 7.0, 0.5], &[0.0, 0.0, 0.0]);
        assert_eq!(vals, vec![-1.0, 0.5, 3.0, 7.0]);
    }

    #[test]
    fn laplacian_chain_matches_closed_form() {
        // Dirichlet 1D Laplacian: eigenvalues 2 - 2cos(kπ/(n+1)).
        let n = 40;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let vals = eigenvalues(&diag, &off);
        for (k, v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_relative_eq!(*v, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn inverse_iteration_recovers_eigenvector() {
        let n = 60;
        let diag: Vec<f64> = (0..n).map(|i| (i as f64) * 0.3).collect();
        let off = vec![0.7; n - 1];
        let vals = eigenvalues(&diag, &off);
        let theta = vals[0];
        let x = eigenvector(&diag, &off, theta, 0);
        // residual of (T - theta) x
        let mut res: f64 = 0.0;
        for i in 0..n {
            let mut t = (diag[i] - theta) * x[i];
            if i > 0 {
                t += off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                t += off[i] * x[i + 1];
            }
            res += t * t;
        }
        assert!(res.sqrt() < 1e-10, "residual {}", res.sqrt());
    }
}
