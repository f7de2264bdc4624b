//! Completing a sequence with `α'_j = e^{-j}` so that the first `m` moments
//! `Σ c_j α_j (log α_j)^k` vanish.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_vandermonde;
use crate::model::{moments, Sequence};

#[derive(Debug, Clone, Serialize)]
pub struct Completion {
    /// `A'`
    pub completion: Sequence,
    /// `A ⊕ A'`
    pub combined: Sequence,
    /// Moments of `A`.
    pub y: Vec<Complex64>,
    /// `((m-1)2^m+1) max|y_k|`, bounding `Σ|c'_j α'_j|`.
    pub weighted_bound: f64,
    /// `e^m ((m-1)2^m+1) max|y_k|`, bounding `Σ|c'_j|`.
    pub coeff_bound: f64,
}

pub fn complete_to_admissible(a: &Sequence, m: usize) -> Result<Sequence> {
    Ok(completion_report(a, m)?.completion)
}

pub fn completion_report(a: &Sequence, m: usize) -> Result<Completion> {
    if m == 0 {
        return Err(Error::Domain("completion order must be at least 1".into()));
    }
    let y = moments(a, m);
    // log α'_j = -j turns the conditions into Σ_j j^k x_j = -(-1)^k y_k.
    let rhs: Vec<Complex64> = y
        .iter()
        .enumerate()
        .map(|(k, &yk)| if k % 2 == 0 { -yk } else { yk })
        .collect();
    let (x, weighted_bound) = solve_vandermonde(&rhs)?;
    let alpha: Vec<f64> = (1..=m).map(|j| (-(j as f64)).exp()).collect();
    let c: Vec<Complex64> = x
        .iter()
        .zip(&alpha)
        .map(|(xj, al)| xj / al)
        .collect();
    let completion = Sequence::new(alpha, c)?;
    Ok(Completion {
        combined: a.concat(&completion),
        completion,
        y,
        weighted_bound,
        coeff_bound: (m as f64).exp() * weighted_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::admissibility;

    #[test]
    fn unit_m1_by_hand() {
        let r = completion_report(&Sequence::unit(), 1).unwrap();
        let a = r.completion;
        assert!((a.alpha()[0] - (-1.0f64).exp()).abs() < 1e-16);
        assert!((a.c()[0] + Complex64::new(std::f64::consts::E, 0.0)).norm() < 1e-14);
        assert!(admissibility(&r.combined, 1, 1e-12).unwrap().is_admissible);
    }

    #[test]
    fn already_admissible_gives_zero() {
        let e = std::f64::consts::E;
        let a = Sequence::new(
            vec![1.0, 1.0 / e],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-e, 0.0)],
        )
        .unwrap();
        let r = completion_report(&a, 1).unwrap();
        assert!(r.completion.c()[0].norm() < 1e-15);
    }

    #[test]
    fn higher_order() {
        let a = Sequence::new(
            vec![1.0, 0.5, 0.3],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-0.7, 0.1)],
        )
        .unwrap();
        for m in 1..=4 {
            let r = completion_report(&a, m).unwrap();
            let rep = admissibility(&r.combined, m, 1e-10).unwrap();
            assert!(rep.is_admissible, "m={m}: {:?}", rep.moments);
        }
    }
}
