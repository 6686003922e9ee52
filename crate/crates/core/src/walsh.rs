//! Sequency-ordered Walsh transform `W = P·H_n`.
//!
//! `P` selects Sylvester row `bitrev(gray(k))` for output row `k`, which puts
//! the rows in order of increasing sign changes. The permutation is derived
//! by formula and then checked against direct sign-change counts.
//!
//! In fold form, conjugating the Hadamard embedding by `P`
//! (`R' = P R P⁻¹`, `v'ᵢ = P vᵢ`) gives `Σ R'^i v'ᵢ = P Σ R^i vᵢ = W x`.

use crate::error::{Error, Result};
use crate::hadamard::{build_v, fold_with_signs, log2_exact, sylvester, HadamardPlan};
use crate::linalg::{Matrix, Permutation, Scalar};

/// Number of adjacent sign flips in a row of ±1 entries.
pub fn sequency_of_row<T: Scalar>(row: &[T]) -> Result<usize> {
    let one = T::one();
    if let Some(index) = row.iter().position(|&x| x != one && x != -one) {
        return Err(Error::NotSign { index });
    }
    Ok(row.windows(2).filter(|w| w[0] != w[1]).count())
}

pub fn gray_code(k: usize) -> usize {
    k ^ (k >> 1)
}

/// Reverses the low `bits` bits of `x`.
pub fn bit_reverse(x: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        x.reverse_bits() >> (usize::BITS - bits)
    }
}

/// `image[k] = bitrev(gray(k))` over `log₂ n` bits.
pub fn sequency_permutation(n: usize) -> Result<Permutation> {
    let bits = log2_exact(n)?;
    Permutation::new((0..n).map(|k| bit_reverse(gray_code(k), bits)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalshPlan {
    n: usize,
    perm: Permutation,
    walsh: Matrix<i64>,
}

impl WalshPlan {
    /// Builds `P` and `W = P·H_n` and checks that row `k` of `W` has exactly
    /// `k` sign changes.
    pub fn new(n: usize) -> Result<Self> {
        let perm = sequency_permutation(n)?;
        let h = sylvester(n)?;
        let walsh = perm.to_matrix::<i64>().mul(&h)?;
        for (k, row) in walsh.rows().enumerate() {
            let s = sequency_of_row(row)?;
            assert_eq!(s, k, "row {k} of the n={n} Walsh matrix has sequency {s}");
        }
        Ok(WalshPlan { n, perm, walsh })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.walsh
    }
}

pub fn walsh_matrix(n: usize) -> Result<Matrix<i64>> {
    Ok(WalshPlan::new(n)?.walsh)
}

/// Both sides of the conjugation identity for input `x`:
/// `(Σ R'^i v'ᵢ, P·Σ R^i vᵢ)`.
pub fn conjugation_sides<T: Scalar>(x: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let hp = HadamardPlan::<T>::new(x.len())?;
    let perm = sequency_permutation(x.len())?;
    let v = build_v(x, &hp)?;
    let conjugated = conjugated_fold(&hp, &perm, &v)?;
    let plain = fold_with_signs(v, hp.signs())?;
    Ok((conjugated, perm.apply(plain.as_slice())?))
}

fn conjugated_fold<T: Scalar>(
    hp: &HadamardPlan<T>,
    perm: &Permutation,
    v: &[crate::linalg::Vector<T>],
) -> Result<Vec<T>> {
    let signs = hp.signs().conjugate_by(perm)?;
    let permuted = v.iter().map(|vi| perm.apply_vec(vi)).collect::<Result<Vec<_>>>()?;
    Ok(fold_with_signs(permuted, &signs)?.into_inner())
}

/// `W x` through the conjugated fold alone.
pub fn walsh_fold<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let hp = HadamardPlan::<T>::new(x.len())?;
    let perm = sequency_permutation(x.len())?;
    conjugated_fold(&hp, &perm, &build_v(x, &hp)?)
}

/// `W x` through the conjugated fold, cross-checked against the permuted
/// Hadamard fold. The two must agree exactly.
pub fn walsh_embedding<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let (conjugated, permuted) = conjugation_sides(x)?;
    if let Some(index) = conjugated.iter().zip(&permuted).position(|(a, b)| a != b) {
        return Err(Error::ConjugationMismatch { index });
    }
    Ok(conjugated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::wht_embedding;

    #[test]
    fn sequency_examples() {
        assert_eq!(sequency_of_row(&[1i64, 1, 1, 1]).unwrap(), 0);
        assert_eq!(sequency_of_row(&[1i64, -1, 1, -1]).unwrap(), 3);
        assert_eq!(sequency_of_row(&[1i64, -1, -1, 1]).unwrap(), 2);
        assert_eq!(sequency_of_row(&[1i64, 0, 1]).unwrap_err(), Error::NotSign { index: 1 });
        assert_eq!(sequency_of_row(&[1.0, -1.0]).unwrap(), 1);
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(sequency_permutation(1).unwrap().image(), &[0]);
        assert_eq!(sequency_permutation(2).unwrap().image(), &[0, 1]);
        assert_eq!(sequency_permutation(4).unwrap().image(), &[0, 2, 3, 1]);
        assert_eq!(sequency_permutation(8).unwrap().image(), &[0, 4, 6, 2, 3, 7, 5, 1]);
        assert_eq!(sequency_permutation(6).unwrap_err(), Error::NotPowerOfTwo(6));
    }

    #[test]
    fn bit_helpers() {
        assert_eq!((0..8).map(gray_code).collect::<Vec<_>>(), vec![0, 1, 3, 2, 6, 7, 5, 4]);
        assert_eq!(bit_reverse(0b001, 3), 0b100);
        assert_eq!(bit_reverse(0b110, 3), 0b011);
        assert_eq!(bit_reverse(5, 0), 0);
    }

    #[test]
    fn walsh_matrix_examples() {
        assert_eq!(walsh_matrix(2).unwrap(), sylvester(2).unwrap());
        let w4 = walsh_matrix(4).unwrap();
        let rows: Vec<_> = w4.rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, vec![vec![1, 1, 1, 1], vec![1, 1, -1, -1], vec![1, -1, -1, 1], vec![1, -1, 1, -1]]);
        assert_eq!(w4.mul(&w4.transpose()).unwrap(), Matrix::identity(4).scale(4));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(walsh_embedding(&[1i64, 2, 3, 4]).unwrap(), vec![10, -4, 0, -2]);
        let mut e = vec![0i64; 8];
        e[0] = 1;
        assert_eq!(walsh_embedding(&e).unwrap(), vec![1; 8]);
        assert_eq!(walsh_embedding(&[7i64, -3]).unwrap(), wht_embedding(&[7i64, -3]).unwrap());
        assert_eq!(walsh_fold(&[1i64, 2, 3, 4]).unwrap(), vec![10, -4, 0, -2]);
        assert!(walsh_embedding(&[1i64, 2, 3]).is_err());
    }
}
