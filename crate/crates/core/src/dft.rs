//! The DFT as a fold of rotation-block embeddings.
//!
//! For a length-`n` signal every position shares the operator
//! `R = diag(R₀, …, R_{n−1})`, where `R_k` rotates the plane by `2πk/n`.
//! Position `i` contributes `vᵢ = (aᵢ, 0, aᵢ, 0, …)`, so block `k` of
//! `Σ R^i vᵢ` is `Σ aᵢ e^{+j2πik/n}`: the real and imaginary parts of `X_k`.
//!
//! The kernel is positive-exponent, the conjugate of the usual engineering
//! convention. [`ComplexSpectrum::conjugate`] converts.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rotation, BlockDiagonal, Matrix, Vector};
use crate::monoid::{fold_sequence, MonoidElement};

/// Tolerance on `R^n = I` for a freshly built plan.
pub const PERIOD_TOL: f64 = 1e-9;

pub type Complex = (f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct DftPlan {
    n: usize,
    rotation: BlockDiagonal<f64>,
    period_error: f64,
}

impl DftPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The `2n×2n` block-diagonal rotation operator.
    pub fn rotation(&self) -> &BlockDiagonal<f64> {
        &self.rotation
    }

    /// `max |R^n − I|` measured when the plan was built.
    pub fn period_error(&self) -> f64 {
        self.period_error
    }
}

pub fn build_plan(n: usize) -> Result<DftPlan> {
    if n == 0 {
        return Err(Error::InvalidArgument("transform length must be at least 1".into()));
    }
    let step = TAU / n as f64;
    let blocks = (0..n).map(|k| rotation((k as f64 * step) % TAU)).collect();
    let rotation = BlockDiagonal::new(blocks)?;
    let period_error = rotation
        .pow(n as i64)?
        .blocks()
        .iter()
        .map(|b| b.max_abs_diff(&Matrix::identity(2)))
        .try_fold(0.0f64, |acc, e| e.map(|e| acc.max(e)))?;
    debug_assert!(period_error <= PERIOD_TOL, "R^{n} deviates from I by {period_error:e}");
    Ok(DftPlan { n, rotation, period_error })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ComplexSpectrum {
    pub coefficients: Vec<Complex>,
}

impl ComplexSpectrum {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Flips imaginary parts, giving the `e^{−j…}` convention.
    pub fn conjugate(&self) -> Self {
        ComplexSpectrum { coefficients: self.coefficients.iter().map(|&(re, im)| (re, -im)).collect() }
    }

    pub fn max_abs_diff(&self, other: &[Complex]) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(max_complex_diff(&self.coefficients, other))
    }

    /// `Σ |X_k|²`.
    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|&(re, im)| re * re + im * im).sum()
    }
}

pub(crate) fn max_complex_diff(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.0 - y.0).abs().max((x.1 - y.1).abs()))
        .fold(0.0, f64::max)
}

/// Repeats `(aᵢ, 0)` across every block.
pub fn embed_input(a: &[f64], plan: &DftPlan) -> Result<Vec<Vector<f64>>> {
    check_len(plan, a.len())?;
    a.iter().map(|&x| repeat_block(plan.n, (x, 0.0))).collect()
}

/// Repeats `(Re cᵢ, Im cᵢ)` across every block, so the rotation blocks act
/// on `cᵢ` by complex multiplication.
pub fn embed_complex(c: &[Complex], plan: &DftPlan) -> Result<Vec<Vector<f64>>> {
    check_len(plan, c.len())?;
    c.iter().map(|&z| repeat_block(plan.n, z)).collect()
}

fn repeat_block(n: usize, (re, im): Complex) -> Result<Vector<f64>> {
    Vector::new(std::iter::repeat_n([re, im], n).flatten().collect())
}

fn check_len(plan: &DftPlan, found: usize) -> Result<()> {
    if found != plan.n {
        return Err(Error::DimensionMismatch { expected: plan.n, found });
    }
    Ok(())
}

/// Folds `(v₁, R) ∘ … ∘ (v_m, R)` for `m ≤ n` embedded vectors. For a full
/// fold the operator part is `R^n ≈ I`; for shorter prefixes it is `R^m`.
pub fn fold_embedded(
    vectors: Vec<Vector<f64>>,
    plan: &DftPlan,
) -> Result<MonoidElement<f64, BlockDiagonal<f64>>> {
    let elems = vectors
        .into_iter()
        .map(|v| MonoidElement::new(v, plan.rotation.clone()))
        .collect::<Result<Vec<_>>>()?;
    fold_sequence(&elems)
}

/// Reads block `k` of `V` as `(Re X_k, Im X_k)`.
pub fn decode(v: &Vector<f64>) -> ComplexSpectrum {
    ComplexSpectrum { coefficients: v.as_slice().chunks(2).map(|b| (b[0], b[1])).collect() }
}

pub fn dft_1d(a: &[f64]) -> Result<ComplexSpectrum> {
    if a.is_empty() {
        return Err(Error::Empty("signal"));
    }
    dft_1d_with(&build_plan(a.len())?, a)
}

pub fn dft_1d_with(plan: &DftPlan, a: &[f64]) -> Result<ComplexSpectrum> {
    let folded = fold_embedded(embed_input(a, plan)?, plan)?;
    Ok(decode(folded.vec()))
}

/// Transforms a complex sequence with the same plan.
pub fn dft_complex_with(plan: &DftPlan, c: &[Complex]) -> Result<ComplexSpectrum> {
    let folded = fold_embedded(embed_complex(c, plan)?, plan)?;
    Ok(decode(folded.vec()))
}

/// 2D transform of an `n×n` array; `out[p][k]` pairs frequency `p` along
/// rows (first index) with `k` along columns.
///
/// Each row is folded into its spectrum, then for every `k` the column of
/// row spectra is folded as a complex sequence. Rows and columns are
/// independent and may run in parallel; each fold stays sequential.
pub fn dft_2d(a: &[Vec<f64>]) -> Result<Vec<Vec<Complex>>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Empty("array"));
    }
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
    }
    let plan = build_plan(n)?;
    let rows = a
        .par_iter()
        .map(|row| dft_1d_with(&plan, row))
        .collect::<Result<Vec<_>>>()?;
    let cols = (0..n)
        .into_par_iter()
        .map(|k| {
            let column: Vec<Complex> = rows.iter().map(|r| r.coefficients[k]).collect();
            dft_complex_with(&plan, &column)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|p| cols.iter().map(|c| c.coefficients[p]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::LinearOp;

    fn close(a: &[Complex], b: &[Complex], tol: f64) -> bool {
        a.len() == b.len() && max_complex_diff(a, b) <= tol
    }

    #[test]
    fn plan_examples() {
        let p1 = build_plan(1).unwrap();
        assert_eq!(p1.rotation().to_dense(), Matrix::identity(2));

        let p2 = build_plan(2).unwrap();
        let expect = Matrix::diag(&[1.0, 1.0, -1.0, -1.0]);
        assert!(p2.rotation().to_dense().approx_eq(&expect, 1e-15).unwrap());

        let p4 = build_plan(4).unwrap();
        let quarter = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!(p4.rotation().blocks()[1].approx_eq(&quarter, 1e-15).unwrap());
        assert!(build_plan(0).is_err());
    }

    #[test]
    fn embed_examples() {
        let p2 = build_plan(2).unwrap();
        let v = embed_input(&[1.0, 1.0], &p2).unwrap();
        assert_eq!(v[0].as_slice(), &[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(v[1], v[0]);

        let p4 = build_plan(4).unwrap();
        let z = embed_input(&[0.0; 4], &p4).unwrap();
        assert!(z.iter().all(|v| v.as_slice().iter().all(|&x| x == 0.0)));
        let imp = embed_input(&[1.0, 0.0, 0.0, 0.0], &p4).unwrap();
        assert_eq!(imp[0].as_slice(), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(embed_input(&[1.0; 3], &p4).unwrap_err(), Error::DimensionMismatch { expected: 4, found: 3 });
    }

    #[test]
    fn dft_examples() {
        let x = dft_1d(&[1.0, 1.0]).unwrap();
        assert!(close(&x.coefficients, &[(2.0, 0.0), (0.0, 0.0)], 1e-12));

        let x = dft_1d(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(&x.coefficients, &[(1.0, 0.0); 4], 0.0));

        let x = dft_1d(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let expect = [(10.0, 0.0), (-2.0, -2.0), (-2.0, 0.0), (-2.0, 2.0)];
        assert!(close(&x.coefficients, &expect, 1e-12));
        let conj = [(10.0, 0.0), (-2.0, 2.0), (-2.0, 0.0), (-2.0, -2.0)];
        assert!(close(&x.conjugate().coefficients, &conj, 1e-12));
        assert!(dft_1d(&[]).is_err());
    }

    #[test]
    fn partial_fold_keeps_operator() {
        let plan = build_plan(4).unwrap();
        let v = embed_input(&[1.0, 2.0, 3.0, 4.0], &plan).unwrap();
        let full = fold_embedded(v.clone(), &plan).unwrap();
        assert!(full.op().to_dense().approx_eq(&Matrix::identity(8), 1e-12).unwrap());
        let prefix = fold_embedded(v[..3].to_vec(), &plan).unwrap();
        let r3 = plan.rotation().pow(3).unwrap();
        assert!(prefix.op().to_dense().approx_eq(&r3.to_dense(), 1e-12).unwrap());
    }

    #[test]
    fn dft_2d_examples() {
        let y = dft_2d(&[vec![2.5]]).unwrap();
        assert_eq!(y, vec![vec![(2.5, 0.0)]]);

        let y = dft_2d(&[vec![0.0; 3], vec![0.0; 3], vec![0.0; 3]]).unwrap();
        assert!(y.iter().flatten().all(|&(re, im)| re == 0.0 && im == 0.0));

        // 2×2: e^{jπ(...)} = ±1, so Y[p][k] = Σ a_im (−1)^{mk + ip}.
        let y = dft_2d(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let expect = [[(10.0, 0.0), (-2.0, 0.0)], [(-4.0, 0.0), (0.0, 0.0)]];
        for p in 0..2 {
            assert!(close(&y[p], &expect[p], 1e-12));
        }
        assert!(matches!(dft_2d(&[vec![1.0, 2.0]]), Err(Error::DimensionMismatch { .. })));
        assert!(dft_2d(&[]).is_err());
    }
}
