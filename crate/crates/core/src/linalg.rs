//! Small dense linear algebra over two scalar kinds.
//!
//! `f64` is the floating kind; `i64` is the exact integer kind. The kind is a
//! type parameter, so mixing kinds is rejected at compile time and integer
//! values never silently become floats.
//!
//! Besides the dense [`Matrix`], two structured operators implement
//! [`LinearOp`]: [`Diagonal`] and [`BlockDiagonal`]. They are what the
//! transform folds run on, since a dense product per fold step would be
//! cubic in the embedding dimension.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ops::tally;

/// Floating inversion refuses matrices with |det| below this.
pub const SINGULAR_DET: f64 = 1e-12;

pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Exact kinds compare by equality and ignore tolerances.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(self) -> f64;

    fn invert(m: &Matrix<Self>) -> Result<Matrix<Self>>;

    fn distance(self, other: Self) -> f64 {
        (self.to_f64() - other.to_f64()).abs()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(self) -> f64 {
        self
    }

    fn invert(m: &Matrix<f64>) -> Result<Matrix<f64>> {
        let d = m.dim;
        let mut a = m.data.clone();
        let mut inv = Matrix::<f64>::identity(d).data;
        let mut det = 1.0;
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&x, &y| a[x * d + col].abs().total_cmp(&a[y * d + col].abs()))
                .unwrap_or(col);
            if pivot != col {
                for j in 0..d {
                    a.swap(col * d + j, pivot * d + j);
                    inv.swap(col * d + j, pivot * d + j);
                }
                det = -det;
            }
            let p = a[col * d + col];
            det *= p;
            if p == 0.0 {
                break;
            }
            for j in 0..d {
                a[col * d + j] /= p;
                inv[col * d + j] /= p;
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let f = a[row * d + col];
                if f != 0.0 {
                    for j in 0..d {
                        a[row * d + j] -= f * a[col * d + j];
                        inv[row * d + j] -= f * inv[col * d + j];
                    }
                }
            }
        }
        if det.is_nan() || det.abs() < SINGULAR_DET {
            return Err(Error::Singular { det: det.abs() });
        }
        Ok(Matrix { dim: d, data: inv })
    }
}

impl Scalar for i64 {
    const EXACT: bool = true;

    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self as f64
    }

    fn invert(m: &Matrix<i64>) -> Result<Matrix<i64>> {
        // Gauss-Jordan over the rationals; only unimodular matrices survive.
        let d = m.dim;
        let mut a: Vec<Ratio<i128>> = m.data.iter().map(|&v| Ratio::from_integer(v as i128)).collect();
        let mut inv: Vec<Ratio<i128>> = Matrix::<i64>::identity(d)
            .data
            .iter()
            .map(|&v| Ratio::from_integer(v as i128))
            .collect();
        let zero = Ratio::from_integer(0);
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| a[r * d + col] != zero) else {
                return Err(Error::Singular { det: 0.0 });
            };
            if pivot != col {
                for j in 0..d {
                    a.swap(col * d + j, pivot * d + j);
                    inv.swap(col * d + j, pivot * d + j);
                }
            }
            let p = a[col * d + col];
            for j in 0..d {
                a[col * d + j] /= p;
                inv[col * d + j] /= p;
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let f = a[row * d + col];
                if f != zero {
                    for j in 0..d {
                        let (ac, ic) = (a[col * d + j], inv[col * d + j]);
                        a[row * d + j] -= f * ac;
                        inv[row * d + j] -= f * ic;
                    }
                }
            }
        }
        let data = inv
            .into_iter()
            .map(|r| {
                if r.is_integer() {
                    i64::try_from(r.to_integer()).map_err(|_| Error::NonIntegralInverse)
                } else {
                    Err(Error::NonIntegralInverse)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { dim: d, data })
    }
}

/// A column vector of fixed dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector"));
        }
        Ok(Vector { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Vector { entries: vec![T::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<T> {
        self.entries
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        tally(self.dim());
        Ok(Vector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: T) -> Self {
        tally(self.dim());
        Vector { entries: self.entries.iter().map(|&a| s * a).collect() }
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(max_distance(&self.entries, &rhs.entries))
    }

    /// Entrywise comparison; exact kinds ignore `tol`.
    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> Result<bool> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(within(&self.entries, &rhs.entries, tol))
    }
}

impl<T> std::ops::Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty("matrix"));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, expected: dim, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn diag(entries: &[T]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * dim + i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(self.data[j * d + i]);
            }
        }
        Matrix { dim: d, data }
    }

    pub fn scale(&self, s: T) -> Self {
        Matrix { dim: self.dim, data: self.data.iter().map(|&a| s * a).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim, rhs.dim)?;
        Ok(Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim, rhs.dim)?;
        let d = self.dim;
        let mut data = vec![T::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                let row = &rhs.data[k * d..(k + 1) * d];
                for (out, &b) in data[i * d..(i + 1) * d].iter_mut().zip(row) {
                    *out = *out + a * b;
                }
            }
        }
        tally(d * d * (2 * d - 1));
        Ok(Matrix { dim: d, data })
    }

    /// Matrix-vector product `self · x`.
    pub fn mul_vec(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let entries = self
            .rows()
            .map(|row| dot(row, x.as_slice()))
            .collect();
        tally(self.dim * (2 * self.dim - 1));
        Ok(Vector { entries })
    }

    pub fn inverse(&self) -> Result<Self> {
        T::invert(self)
    }

    /// `self^p`; negative `p` inverts first.
    pub fn pow(&self, p: i64) -> Result<Self> {
        let base = if p < 0 { self.inverse()? } else { self.clone() };
        let mut e = p.unsigned_abs();
        let mut acc = Self::identity(self.dim);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Max-norm of `self · rhs − rhs · self`.
    pub fn commutator_norm(&self, rhs: &Self) -> Result<f64> {
        let ab = self.mul(rhs)?;
        let ba = rhs.mul(self)?;
        Ok(max_distance(&ab.data, &ba.data))
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        check_dim(self.dim, rhs.dim)?;
        Ok(max_distance(&self.data, &rhs.data))
    }

    /// Entrywise comparison; exact kinds ignore `tol`.
    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> Result<bool> {
        check_dim(self.dim, rhs.dim)?;
        Ok(within(&self.data, &rhs.data, tol))
    }
}

/// Assembles square blocks along the diagonal.
pub fn block_diag<T: Scalar>(blocks: &[Matrix<T>]) -> Result<Matrix<T>> {
    if blocks.is_empty() {
        return Err(Error::Empty("block list"));
    }
    let dim = blocks.iter().map(Matrix::dim).sum();
    let mut out = Matrix::zeros(dim);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.dim {
            for j in 0..b.dim {
                out.data[(off + i) * dim + off + j] = b.get(i, j);
            }
        }
        off += b.dim;
    }
    Ok(out)
}

/// Counter-clockwise rotation of the plane by `angle` radians.
pub fn rotation(angle: f64) -> Matrix<f64> {
    let (s, c) = angle.sin_cos();
    Matrix { dim: 2, data: vec![c, -s, s, c] }
}

/// A bijection on `0..n`, applied by row selection: `(P x)[i] = x[image[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::Empty("permutation"));
        }
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n {
                return Err(Error::InvalidPermutation(format!("index {i} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("index {i} repeated")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { image: inv }
    }

    pub fn apply<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        check_dim(self.len(), x.len())?;
        Ok(self.image.iter().map(|&p| x[p]).collect())
    }

    pub fn apply_vec<T: Scalar>(&self, x: &Vector<T>) -> Result<Vector<T>> {
        Ok(Vector { entries: self.apply(x.as_slice())? })
    }

    /// Row `i` holds a single one at column `image[i]`.
    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let n = self.len();
        let mut m = Matrix::zeros(n);
        for (i, &p) in self.image.iter().enumerate() {
            m.data[i * n + p] = T::one();
        }
        m
    }
}

/// Linear operators that can act as the operator half of a monoid element.
pub trait LinearOp<T: Scalar>: Clone + Debug + PartialEq + Send + Sync {
    fn dim(&self) -> usize;

    /// Identity with the same structure as `self`.
    fn identity_like(&self) -> Self;

    /// Operator product `self · rhs`.
    fn product(&self, rhs: &Self) -> Result<Self>;

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>>;

    fn to_dense(&self) -> Matrix<T>;
}

impl<T: Scalar> LinearOp<T> for Matrix<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn identity_like(&self) -> Self {
        Matrix::identity(self.dim)
    }
    fn product(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)
    }
    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.mul_vec(x)
    }
    fn to_dense(&self) -> Matrix<T> {
        self.clone()
    }
}

/// A diagonal operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonal<T> {
    entries: Vec<T>,
}

impl<T: Scalar> Diagonal<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("diagonal"));
        }
        Ok(Diagonal { entries })
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// `P · self · P⁻¹`, which stays diagonal with entries reordered by `p`.
    pub fn conjugate_by(&self, p: &Permutation) -> Result<Self> {
        Ok(Diagonal { entries: p.apply(&self.entries)? })
    }
}

impl<T: Scalar> LinearOp<T> for Diagonal<T> {
    fn dim(&self) -> usize {
        self.entries.len()
    }
    fn identity_like(&self) -> Self {
        Diagonal { entries: vec![T::one(); self.entries.len()] }
    }
    fn product(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        tally(self.dim());
        Ok(Diagonal {
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a * b).collect(),
        })
    }
    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        tally(self.dim());
        Ok(Vector {
            entries: self.entries.iter().zip(x.as_slice()).map(|(&a, &b)| a * b).collect(),
        })
    }
    fn to_dense(&self) -> Matrix<T> {
        Matrix::diag(&self.entries)
    }
}

/// A block-diagonal operator kept as its list of square blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonal<T> {
    blocks: Vec<Matrix<T>>,
    dim: usize,
}

impl<T: Scalar> BlockDiagonal<T> {
    pub fn new(blocks: Vec<Matrix<T>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Empty("block list"));
        }
        let dim = blocks.iter().map(Matrix::dim).sum();
        Ok(BlockDiagonal { blocks, dim })
    }

    pub fn blocks(&self) -> &[Matrix<T>] {
        &self.blocks
    }

    pub fn pow(&self, p: i64) -> Result<Self> {
        let blocks = self.blocks.iter().map(|b| b.pow(p)).collect::<Result<Vec<_>>>()?;
        Ok(BlockDiagonal { blocks, dim: self.dim })
    }

    fn same_layout(&self, rhs: &Self) -> Result<()> {
        check_dim(self.dim, rhs.dim)?;
        check_dim(self.blocks.len(), rhs.blocks.len())?;
        for (a, b) in self.blocks.iter().zip(&rhs.blocks) {
            check_dim(a.dim, b.dim)?;
        }
        Ok(())
    }
}

impl<T: Scalar> LinearOp<T> for BlockDiagonal<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn identity_like(&self) -> Self {
        BlockDiagonal {
            blocks: self.blocks.iter().map(|b| Matrix::identity(b.dim)).collect(),
            dim: self.dim,
        }
    }
    fn product(&self, rhs: &Self) -> Result<Self> {
        self.same_layout(rhs)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&rhs.blocks)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockDiagonal { blocks, dim: self.dim })
    }
    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let mut entries = Vec::with_capacity(self.dim);
        let mut off = 0;
        for b in &self.blocks {
            let seg = &x.as_slice()[off..off + b.dim];
            entries.extend(b.rows().map(|row| dot(row, seg)));
            tally(b.dim * (2 * b.dim - 1));
            off += b.dim;
        }
        Ok(Vector { entries })
    }
    fn to_dense(&self) -> Matrix<T> {
        block_diag(&self.blocks).expect("nonempty by construction")
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut it = a.iter().zip(b);
    let Some((&x, &y)) = it.next() else {
        return T::zero();
    };
    it.fold(x * y, |acc, (&x, &y)| acc + x * y)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn max_distance<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x.distance(y)).fold(0.0, f64::max)
}

fn within<T: Scalar>(a: &[T], b: &[T], tol: f64) -> bool {
    if T::EXACT {
        a == b
    } else {
        a.iter().zip(b).all(|(&x, &y)| x.distance(y) <= tol)
    }
}
