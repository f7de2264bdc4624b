//! Pascal matrices `A_{ij} = C(i+j, i)`.
//!
//! Their characteristic polynomial is palindromic, so the smallest
//! eigenvalue is the reciprocal of the largest one; the largest is the
//! well-conditioned quantity for a floating eigensolver.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::certified::CertifiedValue;
use crate::error::{Error, Result};

pub const MAX_PASCAL: usize = 12;

fn check_size(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("Pascal matrix size must be at least 1".into()));
    }
    if m > MAX_PASCAL {
        return Err(Error::SizeLimit {
            what: "pascal size",
            value: m,
            max: MAX_PASCAL,
        });
    }
    Ok(())
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

pub fn pascal_exact(m: usize) -> Vec<Vec<BigInt>> {
    (0..m)
        .map(|i| (0..m).map(|j| binomial_big(i + j, i)).collect())
        .collect()
}

pub fn pascal_matrix(m: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] = if i == 0 || j == 0 {
                1.0
            } else {
                a[(i - 1, j)] + a[(i, j - 1)]
            };
        }
    }
    a
}

/// Smallest eigenvalue `μ_m` of the `m × m` Pascal matrix.
///
/// The value is `1/μ_max`; the error is the disagreement with the directly
/// computed smallest eigenvalue plus a rounding allowance.
pub fn pascal_min_eigenvalue(m: usize) -> Result<CertifiedValue> {
    check_size(m)?;
    let eig = SymmetricEigen::new(pascal_matrix(m));
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    let mu = 1.0 / max;
    let err = (mu - min).abs() + 16.0 * m as f64 * f64::EPSILON * mu;
    Ok(CertifiedValue::real(mu, err))
}

pub fn pascal_largest_eigenvalue(m: usize) -> Result<f64> {
    check_size(m)?;
    Ok(SymmetricEigen::new(pascal_matrix(m)).eigenvalues.max())
}

/// Unit eigenvector for the smallest eigenvalue.
pub fn pascal_min_eigenvector(m: usize) -> Result<Vec<f64>> {
    check_size(m)?;
    let eig = SymmetricEigen::new(pascal_matrix(m));
    let imin = eig.eigenvalues.imin();
    Ok(eig.eigenvectors.column(imin).iter().copied().collect())
}

/// `3 / (4^m - 1)`.
pub fn pascal_eigenvalue_lower_bound(m: usize) -> f64 {
    3.0 / (4f64.powi(m as i32) - 1.0)
}

/// Closed form of `∫₀^∞ |Σ z_j t^j/j!|² e^{-at} dt` and the lower bound
/// `μ_m Σ |z_j|² a^{-2j-1}`.
pub fn pascal_quadratic_lower_bound(z: &[Complex64], a: f64) -> Result<(f64, f64)> {
    let m = z.len();
    check_size(m)?;
    if !(a >= 1e-6) {
        return Err(Error::Domain(format!("need a >= 1e-6, got {a}")));
    }
    let mut fact = vec![1.0f64; 2 * m];
    for k in 1..2 * m {
        fact[k] = fact[k - 1] * k as f64;
    }
    let mut s = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let v = fact[i + j] / (fact[i] * fact[j]) / a.powi((i + j + 1) as i32);
            s[(i, j)] = Complex64::new(v, 0.0);
        }
    }
    let zv = DVector::from_column_slice(z);
    let lhs = (zv.adjoint() * &s * &zv)[(0, 0)].re;
    let mu = pascal_min_eigenvalue(m)?.value.re;
    let rhs = mu
        * z.iter()
            .enumerate()
            .map(|(j, zj)| zj.norm_sqr() / a.powi(2 * j as i32 + 1))
            .sum::<f64>();
    Ok((lhs, rhs))
}

/// Characteristic polynomial `det(X·I - A)` by Faddeev–LeVerrier in exact
/// integer arithmetic; coefficients from `X^0` up to `X^m`.
pub fn pascal_char_poly_exact(m: usize) -> Result<Vec<BigInt>> {
    check_size(m)?;
    let a = pascal_exact(m);
    let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| &x[i][k] * &y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    // c[m] = 1; M_1 = I; c_{m-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{m-k} I
    let mut c = vec![BigInt::zero(); m + 1];
    c[m] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    for k in 1..=m {
        let am = mul(&a, &mk);
        let tr: BigInt = (0..m).map(|i| am[i][i].clone()).sum();
        let ck = -tr / BigInt::from(k);
        c[m - k] = ck.clone();
        mk = am;
        for i in 0..m {
            mk[i][i] += &ck;
        }
    }
    Ok(c)
}

/// Leading principal minors by fraction-free (Bareiss) elimination; the last
/// entry is the determinant.
pub fn pascal_leading_minors_exact(m: usize) -> Result<Vec<BigInt>> {
    check_size(m)?;
    let mut a = pascal_exact(m);
    let mut minors = Vec::with_capacity(m);
    let mut prev = BigInt::one();
    for k in 0..m {
        minors.push(a[k][k].clone());
        if a[k][k].is_zero() {
            return Err(Error::Degenerate("zero pivot in Bareiss elimination".into()));
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(minors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_eigenvalues() {
        assert!((pascal_min_eigenvalue(1).unwrap().value.re - 1.0).abs() < 1e-15);
        let m2 = pascal_min_eigenvalue(2).unwrap();
        assert!((m2.value.re - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            pascal_min_eigenvalue(13),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn char_poly_m2() {
        // [[1,1],[1,2]]: X² - 3X + 1
        let c = pascal_char_poly_exact(2).unwrap();
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn minors_are_one() {
        for m in 1..=8 {
            for d in pascal_leading_minors_exact(m).unwrap() {
                assert_eq!(d, BigInt::one());
            }
        }
    }
}
