//! Exact Bernoulli numbers, used by the Euler–Maclaurin routines.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Number of even-index coefficients kept (`B_2 … B_{2·MAX}`).
pub const MAX_TERMS: usize = 40;

/// `B_{2k} / (2k)!` for `k = 1..=MAX_TERMS` (index 0 holds `k = 1`).
pub fn scaled_even_bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = 2 * MAX_TERMS;
        let b = bernoulli_numbers(n_max);
        let mut fact = BigInt::from(1u32);
        let mut out = Vec::with_capacity(MAX_TERMS);
        for n in 1..=n_max {
            fact *= BigInt::from(n);
            if n % 2 == 0 {
                let q = &b[n] / BigRational::from_integer(fact.clone());
                out.push(q.to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Akiyama–Tanigawa; returns `B_0 … B_n` with `B_1 = +1/2`.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = vec![BigRational::zero(); n + 1];
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a[m] = BigRational::new(BigInt::from(1), BigInt::from(m as u64 + 1));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j as u64));
        }
        out.push(a[0].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let t = scaled_even_bernoulli();
        assert!((t[0] - 1.0 / 12.0).abs() < 1e-17); // B2/2!
        assert!((t[1] + 1.0 / 720.0).abs() < 1e-18); // B4/4! = -1/720
        assert!((t[2] - 1.0 / 30240.0).abs() < 1e-19); // B6/6!
        assert_eq!(t.len(), MAX_TERMS);
    }
}
