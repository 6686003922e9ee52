//! The Sylvester-ordered Hadamard transform as a fold with the alternating
//! sign operator `R = diag(1, −1, 1, −1, …)`.
//!
//! `R² = I`, so `R^i` is `I` for even `i` and `R` for odd `i`. Choosing
//! `vᵢ = xᵢ · R^i hᵢ` (with `hᵢ` column `i` of `H_n`, zero-based) makes
//! each term `R^i vᵢ = xᵢ hᵢ`, hence `Σ R^i vᵢ = H_n x`.
//!
//! The 2-sparse rule `xᵢ(e_i + e_{i+n/2})` / `xᵢ(e_{i−n/2} − e_i)` does not
//! have this property (not even at `n = 2`); [`sparse_v`] keeps it around for
//! regression tests.

use crate::error::{Error, Result};
use crate::linalg::{Diagonal, LinearOp, Matrix, Scalar, Vector};
use crate::monoid::{fold_sequence, MonoidElement};

/// `log₂ n` for a power of two `n ≥ 1`.
pub fn log2_exact(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

/// `H₁ = (1)`, `H_{2n} = [[H_n, H_n], [H_n, −H_n]]`.
pub fn sylvester(n: usize) -> Result<Matrix<i64>> {
    log2_exact(n)?;
    let mut h = vec![vec![1i64]];
    while h.len() < n {
        let top = h.iter().map(|r| r.iter().chain(r.iter()).copied().collect());
        let bottom = h.iter().map(|r| r.iter().copied().chain(r.iter().map(|&x| -x)).collect());
        h = top.chain(bottom).collect();
    }
    Matrix::from_rows(h)
}

/// `diag(1, −1, 1, −1, …)` of length `n`.
pub fn alternating_signs<T: Scalar>(n: usize) -> Result<Diagonal<T>> {
    Diagonal::new((0..n).map(|i| if i % 2 == 0 { T::one() } else { -T::one() }).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HadamardPlan<T> {
    n: usize,
    signs: Diagonal<T>,
    sylvester: Matrix<i64>,
}

impl<T: Scalar> HadamardPlan<T> {
    pub fn new(n: usize) -> Result<Self> {
        Ok(HadamardPlan { n, signs: alternating_signs(n)?, sylvester: sylvester(n)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &Diagonal<T> {
        &self.signs
    }

    pub fn sylvester(&self) -> &Matrix<i64> {
        &self.sylvester
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found });
        }
        Ok(())
    }

    /// Column `i` of `H_n` in scalar kind `T`.
    fn column(&self, i: usize) -> Vec<T> {
        (0..self.n).map(|r| T::from_i64(self.sylvester.get(r, i))).collect()
    }
}

/// `vᵢ = xᵢ · R^i hᵢ`.
pub fn build_v<T: Scalar>(x: &[T], plan: &HadamardPlan<T>) -> Result<Vec<Vector<T>>> {
    plan.check_len(x.len())?;
    x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let col = Vector::new(plan.column(i))?;
            let shifted = if i % 2 == 0 { col } else { plan.signs.apply(&col)? };
            Ok(shifted.scale(xi))
        })
        .collect()
}

/// The 2-sparse embedding `xᵢ(e_i + e_{i+n/2})` for the first half and
/// `xᵢ(e_{i−n/2} − e_i)` for the second. Its fold is not `H_n x`.
pub fn sparse_v<T: Scalar>(x: &[T]) -> Result<Vec<Vector<T>>> {
    let n = x.len();
    log2_exact(n)?;
    if n < 2 {
        return Err(Error::InvalidArgument("sparse rule needs n >= 2".into()));
    }
    let half = n / 2;
    Ok(x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let mut v = vec![T::zero(); n];
            if i < half {
                v[i] = xi;
                v[i + half] = xi;
            } else {
                v[i - half] = xi;
                v[i] = -xi;
            }
            Vector::new(v).expect("n >= 2")
        })
        .collect())
}

/// `Σ R^i vᵢ` via the monoid fold with constant operator `R`.
pub fn fold_with_signs<T: Scalar>(vectors: Vec<Vector<T>>, signs: &Diagonal<T>) -> Result<Vector<T>> {
    let elems = vectors
        .into_iter()
        .map(|v| MonoidElement::new(v, signs.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(fold_sequence(&elems)?.into_parts().0)
}

/// `H_n x` as a single fold of `n` embedded positions. Θ(n²) scalar work.
pub fn wht_embedding<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let plan = HadamardPlan::new(x.len())?;
    wht_embedding_with(&plan, x)
}

pub fn wht_embedding_with<T: Scalar>(plan: &HadamardPlan<T>, x: &[T]) -> Result<Vec<T>> {
    Ok(fold_with_signs(build_v(x, plan)?, &plan.signs)?.into_inner())
}

/// `H_n x` as `log₂ n` passes over the bits of the index, least significant
/// first. Each butterfly is the two-point fold `(a·1, R₂) ∘ (b·1, R₂)` with
/// `R₂ = diag(1, −1)`, which yields `(a + b, a − b)`.
pub fn wht_staged<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let m = log2_exact(x.len())?;
    let r2 = alternating_signs::<T>(2)?;
    let mut data = x.to_vec();
    for bit in 0..m {
        let stride = 1usize << bit;
        for i in (0..data.len()).filter(|i| i & stride == 0) {
            let (a, b) = (data[i], data[i + stride]);
            let lo = MonoidElement::new(Vector::new(vec![a, a])?, r2.clone())?;
            let hi = MonoidElement::new(Vector::new(vec![b, b])?, r2.clone())?;
            let out = lo.compose(&hi)?;
            data[i] = out.vec()[0];
            data[i + stride] = out.vec()[1];
        }
    }
    Ok(data)
}

/// Applies `f` to every row, then to every column of the result.
pub fn separable_2d<T: Scalar>(
    grid: &[Vec<T>],
    f: impl Fn(&[T]) -> Result<Vec<T>>,
) -> Result<Vec<Vec<T>>> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::Empty("array"));
    }
    let mut out = grid
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            f(r)
        })
        .collect::<Result<Vec<_>>>()?;
    for c in 0..cols {
        let column: Vec<T> = out.iter().map(|r| r[c]).collect();
        for (r, v) in f(&column)?.into_iter().enumerate() {
            out[r][c] = v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::count_ops;

    fn fold_of(v: Vec<Vector<i64>>, n: usize) -> Vec<i64> {
        fold_with_signs(v, &alternating_signs(n).unwrap()).unwrap().into_inner()
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester(2).unwrap(), Matrix::from_rows(vec![vec![1, 1], vec![1, -1]]).unwrap());
        let h4 = sylvester(4).unwrap();
        let rows: Vec<_> = h4.rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, vec![vec![1, 1, 1, 1], vec![1, -1, 1, -1], vec![1, 1, -1, -1], vec![1, -1, -1, 1]]);
        for n in [1, 2, 4, 8, 16, 32, 64, 128, 256] {
            let h = sylvester(n).unwrap();
            assert_eq!(h.mul(&h.transpose()).unwrap(), Matrix::identity(n).scale(n as i64));
        }
        assert_eq!(sylvester(6).unwrap_err(), Error::NotPowerOfTwo(6));
        assert_eq!(sylvester(0).unwrap_err(), Error::NotPowerOfTwo(0));
    }

    #[test]
    fn signs_square_to_identity() {
        let r = alternating_signs::<i64>(8).unwrap();
        assert_eq!(r.product(&r).unwrap(), r.identity_like());
    }

    #[test]
    fn build_v_examples() {
        let plan = HadamardPlan::<i64>::new(2).unwrap();
        let v = build_v(&[3, 5], &plan).unwrap();
        assert_eq!(v[0].as_slice(), &[3, 3]);
        assert_eq!(v[1].as_slice(), &[5, 5]);
        assert_eq!(fold_of(v, 2), vec![8, -2]);

        let plan4 = HadamardPlan::<i64>::new(4).unwrap();
        assert!(build_v(&[0; 4], &plan4).unwrap().iter().all(|v| v.as_slice() == [0; 4]));
        assert_eq!(fold_of(build_v(&[1, 2, 3, 4], &plan4).unwrap(), 4), vec![10, -2, -4, 0]);
        assert!(build_v(&[1, 2], &plan4).is_err());
    }

    #[test]
    fn sparse_rule_regression_at_two() {
        let (x1, x2) = (3i64, 5i64);
        let sparse = fold_of(sparse_v(&[x1, x2]).unwrap(), 2);
        assert_eq!(sparse, vec![x1 + x2, x1 + x2]);
        let plan = HadamardPlan::new(2).unwrap();
        assert_eq!(fold_of(build_v(&[x1, x2], &plan).unwrap(), 2), vec![x1 + x2, x1 - x2]);
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(wht_embedding(&[3i64, 5]).unwrap(), vec![8, -2]);
        assert_eq!(wht_embedding(&[1i64, 2, 3, 4]).unwrap(), vec![10, -2, -4, 0]);
        let mut e = vec![0i64; 16];
        e[0] = 1;
        assert_eq!(wht_embedding(&e).unwrap(), vec![1; 16]);
        assert_eq!(wht_embedding(&[1i64, 2, 3]).unwrap_err(), Error::NotPowerOfTwo(3));
    }

    #[test]
    fn staged_examples() {
        assert_eq!(wht_staged(&[3i64, 5]).unwrap(), wht_embedding(&[3i64, 5]).unwrap());
        let mut e = vec![0i64; 8];
        e[0] = 1;
        assert_eq!(wht_staged(&e).unwrap(), vec![1; 8]);
        let x = [4i64, -7, 1, 0, 9, 2, -3, 5];
        let h = sylvester(8).unwrap();
        assert_eq!(wht_staged(&x).unwrap(), h.mul_vec(&Vector::new(x.to_vec()).unwrap()).unwrap().into_inner());
        assert_eq!(wht_staged(&[1i64; 12]).unwrap_err(), Error::NotPowerOfTwo(12));
    }

    #[test]
    fn floats_follow_the_same_path() {
        assert_eq!(wht_embedding(&[0.5, 1.5]).unwrap(), vec![2.0, -1.0]);
        assert_eq!(wht_staged(&[0.5, 1.5]).unwrap(), vec![2.0, -1.0]);
    }

    #[test]
    fn staged_is_n_log_n() {
        for n in [2usize, 16, 256] {
            let x = vec![1i64; n];
            let (_, staged) = count_ops(|| wht_staged(&x).unwrap());
            let (_, embedded) = count_ops(|| wht_embedding(&x).unwrap());
            let bound = 4 * n as u64 * n.trailing_zeros() as u64;
            assert!(staged <= bound, "n={n}: {staged} > {bound}");
            assert!(embedded >= (n * n) as u64);
        }
    }

    #[test]
    fn separable_2d_applies_both_axes() {
        let grid = vec![vec![1i64, 2], vec![3, 4]];
        // H₂ X H₂ᵀ
        assert_eq!(separable_2d(&grid, wht_staged).unwrap(), vec![vec![10, -2], vec![-4, 0]]);
        assert!(separable_2d(&[vec![1i64, 2], vec![3]], wht_staged).is_err());
    }
}
