//! Commuting generator families and the pairwise commutation check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axis::GeneratorFamily;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A family commutes when every pairwise commutator is at most this large.
pub const COMMUTE_TOL: f64 = 1e-10;

/// Range of the diagonal entries drawn by [`family_diagonal_random`].
pub const DIAGONAL_RANGE: (f64, f64) = (0.5, 2.0);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationReport {
    /// Largest `|R_i R_j − R_j R_i|` entry over all pairs.
    pub max_commutator: f64,
    pub pairs_checked: usize,
}

pub fn verify_commuting<T: Scalar>(family: &[Matrix<T>]) -> Result<CommutationReport> {
    if let [first, rest @ ..] = family {
        if let Some(m) = rest.iter().find(|m| m.dim() != first.dim()) {
            return Err(Error::DimensionMismatch { expected: first.dim(), found: m.dim() });
        }
    }
    let mut max_commutator = 0.0f64;
    let mut pairs_checked = 0;
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            max_commutator = max_commutator.max(a.commutator_norm(b)?);
            pairs_checked += 1;
        }
    }
    Ok(CommutationReport { max_commutator, pairs_checked })
}

/// `[base^e₁, …, base^e_D]`. Powers of one matrix always commute.
pub fn family_from_powers<T: Scalar>(base: &Matrix<T>, exps: &[i64]) -> Result<GeneratorFamily<T>> {
    let axes = exps.iter().map(|&e| base.pow(e)).collect::<Result<Vec<_>>>()?;
    GeneratorFamily::new(axes)
}

/// `axes` diagonal `dim×dim` generators with entries uniform in
/// [`DIAGONAL_RANGE`], reproducible from `seed`.
pub fn family_diagonal_random(dim: usize, axes: usize, seed: u64) -> Result<GeneratorFamily<f64>> {
    family_diagonal_with(dim, axes, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn family_diagonal_with(dim: usize, axes: usize, rng: &mut impl Rng) -> Result<GeneratorFamily<f64>> {
    if dim == 0 || axes == 0 {
        return Err(Error::InvalidArgument("dimension and axis count must be at least 1".into()));
    }
    let (lo, hi) = DIAGONAL_RANGE;
    let gens = (0..axes)
        .map(|_| {
            let d: Vec<f64> = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
            Matrix::diag(&d)
        })
        .collect();
    GeneratorFamily::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_identity() {
        let f = family_from_powers(&Matrix::<i64>::identity(3), &[1, 5, -2]).unwrap();
        assert!(f.axes().iter().all(|m| *m == Matrix::identity(3)));
    }

    #[test]
    fn powers_of_diagonal() {
        let f = family_from_powers(&Matrix::diag(&[2i64, 3]), &[1, 2]).unwrap();
        assert_eq!(f.axes(), &[Matrix::diag(&[2, 3]), Matrix::diag(&[4, 9])]);
        assert_eq!(f.commutation().max_commutator, 0.0);
        assert_eq!(f.commutation().pairs_checked, 1);
        assert!(f.commuting());
    }

    #[test]
    fn powers_of_singular_base() {
        let s = Matrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(family_from_powers(&s, &[2, 3]).is_ok());
        assert!(matches!(family_from_powers(&s, &[1, -1]), Err(Error::Singular { .. })));
    }

    #[test]
    fn verify_examples() {
        let i = Matrix::<i64>::identity(2);
        assert_eq!(verify_commuting(&[i.clone(), i]).unwrap().max_commutator, 0.0);
        let swap = Matrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]).unwrap();
        let r = verify_commuting(&[Matrix::diag(&[1, 2]), swap]).unwrap();
        assert_eq!(r.max_commutator, 1.0);
        let m = Matrix::from_rows(vec![vec![0.3, -1.2], vec![0.7, 0.4]]).unwrap();
        let r = verify_commuting(&[m.clone(), m.pow(2).unwrap()]).unwrap();
        assert!(r.max_commutator <= 1e-12);
    }

    #[test]
    fn verify_dimension_mismatch() {
        let err = verify_commuting(&[Matrix::<f64>::identity(2), Matrix::identity(3)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn random_diagonal_family() {
        let a = family_diagonal_random(4, 3, 9).unwrap();
        let b = family_diagonal_random(4, 3, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.commutation().max_commutator, 0.0);
        assert_eq!(a.commutation().pairs_checked, 3);
        for m in a.axes() {
            for i in 0..4 {
                for j in 0..4 {
                    let x = m.get(i, j);
                    if i == j {
                        assert!((0.5..=2.0).contains(&x));
                    } else {
                        assert_eq!(x, 0.0);
                    }
                }
            }
        }
        assert_ne!(a, family_diagonal_random(4, 3, 10).unwrap());
        assert!(family_diagonal_random(0, 1, 0).is_err());
    }
}
