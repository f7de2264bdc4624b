//! The system `Σ_j j^{i-1} x_j = y_i` solved through its explicit inverse,
//! built exactly from elementary symmetric polynomials.

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub const MAX_VANDERMONDE: usize = 12;

type Q = Ratio<i128>;

fn check(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("Vandermonde size must be at least 1".into()));
    }
    if m > MAX_VANDERMONDE {
        return Err(Error::SizeLimit {
            what: "vandermonde size",
            value: m,
            max: MAX_VANDERMONDE,
        });
    }
    Ok(())
}

/// Elementary symmetric polynomials σ_0..σ_n of the given integers.
fn elementary(values: &[i128]) -> Vec<i128> {
    let mut e = vec![0i128; values.len() + 1];
    e[0] = 1;
    for (n, &v) in values.iter().enumerate() {
        for k in (1..=n + 1).rev() {
            e[k] += v * e[k - 1];
        }
    }
    e
}

/// Exact inverse `W_m`; entry `[i-1][j-1]` is `w_{i,j}`.
pub fn vandermonde_inverse_exact(m: usize) -> Result<Vec<Vec<Q>>> {
    check(m)?;
    let mut w = vec![vec![Q::from_integer(0); m]; m];
    for i in 1..=m {
        let others: Vec<i128> = (1..=m).filter(|&k| k != i).map(|k| k as i128).collect();
        let sigma = elementary(&others);
        let denom: i128 = others.iter().map(|&k| i as i128 - k).product();
        for j in 1..=m {
            let sign = if (m - j) % 2 == 0 { 1 } else { -1 };
            w[i - 1][j - 1] = Q::new(sign * sigma[m - j], denom);
        }
    }
    Ok(w)
}

/// `Σ_{i,j} |w_{i,j}|`, exactly.
pub fn vandermonde_abs_sum_exact(m: usize) -> Result<Q> {
    Ok(vandermonde_inverse_exact(m)?
        .iter()
        .flatten()
        .map(|q| if *q < Q::from_integer(0) { -q } else { *q })
        .sum())
}

/// `Σ_j |w_{i,j}|` for each row, exactly.
pub fn vandermonde_row_sums_exact(m: usize) -> Result<Vec<Q>> {
    Ok(vandermonde_inverse_exact(m)?
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| if *q < Q::from_integer(0) { -q } else { *q })
                .sum()
        })
        .collect())
}

/// `(m-1)2^m + 1`
pub fn vandermonde_constant(m: usize) -> f64 {
    (m as f64 - 1.0) * 2f64.powi(m as i32) + 1.0
}

/// Solve the system; also returns `((m-1)2^m+1)·max|y_j|`, which bounds `Σ|x_i|`.
pub fn solve_vandermonde(y: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let m = y.len();
    let w = vandermonde_inverse_exact(m)?;
    let x = w
        .iter()
        .map(|row| {
            row.iter()
                .zip(y)
                .map(|(q, &yj)| yj * (*q.numer() as f64 / *q.denom() as f64))
                .sum()
        })
        .collect();
    let ymax = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((x, vandermonde_constant(m) * ymax))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_by_hand() {
        let one = Complex64::new(1.0, 0.0);
        let (x, b) = solve_vandermonde(&[one, one]).unwrap();
        assert!((x[0] - one).norm() < 1e-15 && x[1].norm() < 1e-15);
        assert_eq!(b, 5.0);
    }

    #[test]
    fn inverse_is_inverse() {
        for m in 1..=8 {
            let w = vandermonde_inverse_exact(m).unwrap();
            for i in 0..m {
                for k in 0..m {
                    // (W V)_{ik} = Σ_j w_{ij} (k+1)^j
                    let mut s = Q::from_integer(0);
                    for j in 0..m {
                        s += w[i][j] * Q::from_integer(((k + 1) as i128).pow(j as u32));
                    }
                    let expect = if i == k { 1 } else { 0 };
                    assert_eq!(s, Q::from_integer(expect));
                }
            }
        }
    }
}
