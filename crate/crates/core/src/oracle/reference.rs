//! Brute-force references.
//!
//! Nothing here calls into the fold machinery: these evaluate each transform
//! straight from its defining sum on plain slices. Every multiply and add is
//! reported to the op counter so bench output can compare paths.

use std::f64::consts::TAU;

use crate::dft::Complex;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::ops::tally;

/// `e^{+j2π·num/n}` with the phase reduced modulo `n` first.
fn twiddle(num: usize, n: usize) -> Complex {
    let angle = TAU * ((num % n) as f64) / n as f64;
    let (s, c) = angle.sin_cos();
    (c, s)
}

fn cmul(a: Complex, b: Complex) -> Complex {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// `X_k = Σᵢ aᵢ e^{+j2πik/n}` by direct summation.
pub fn naive_dft(a: &[Complex]) -> Result<Vec<Complex>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Empty("signal"));
    }
    Ok((0..n)
        .map(|k| {
            let mut acc = (0.0, 0.0);
            for (i, &x) in a.iter().enumerate() {
                let t = cmul(x, twiddle(i * k, n));
                acc = (acc.0 + t.0, acc.1 + t.1);
            }
            tally(8 * n);
            acc
        })
        .collect())
}

pub fn naive_dft_real(a: &[f64]) -> Result<Vec<Complex>> {
    naive_dft(&a.iter().map(|&x| (x, 0.0)).collect::<Vec<_>>())
}

/// `Y[p][k] = Σᵢ Σₘ a[i][m] e^{+j2π(mk + ip)/n}` as an explicit quadruple loop.
pub fn naive_dft2(a: &[Vec<f64>]) -> Result<Vec<Vec<Complex>>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Empty("array"));
    }
    if let Some(r) = a.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: r.len() });
    }
    let mut out = vec![vec![(0.0, 0.0); n]; n];
    for (p, out_row) in out.iter_mut().enumerate() {
        for (k, cell) in out_row.iter_mut().enumerate() {
            let mut acc = (0.0, 0.0);
            for (i, row) in a.iter().enumerate() {
                for (m, &x) in row.iter().enumerate() {
                    let (c, s) = twiddle(m * k + i * p, n);
                    acc = (acc.0 + x * c, acc.1 + x * s);
                }
            }
            tally(4 * n * n);
            *cell = acc;
        }
    }
    Ok(out)
}

/// Sylvester-order Hadamard entry: `(−1)^{popcount(i & j)}`.
pub fn hadamard_entry(i: usize, j: usize) -> i64 {
    if (i & j).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_pow2(n: usize) -> Result<()> {
    if n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

/// Dense `H_n x` from the entry formula.
pub fn naive_hadamard<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let n = x.len();
    check_pow2(n)?;
    Ok((0..n).map(|i| row_times(|j| hadamard_entry(i, j), x)).collect())
}

fn row_times<T: Scalar>(entry: impl Fn(usize) -> i64, x: &[T]) -> T {
    tally(2 * x.len());
    x.iter()
        .enumerate()
        .fold(T::zero(), |acc, (j, &xj)| acc + T::from_i64(entry(j)) * xj)
}

fn sign_changes(row: &[i64]) -> usize {
    row.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Hadamard row indices sorted by increasing sign-change count.
pub fn sequency_sort(n: usize) -> Result<Vec<usize>> {
    check_pow2(n)?;
    let mut keyed: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let row: Vec<i64> = (0..n).map(|j| hadamard_entry(i, j)).collect();
            (sign_changes(&row), i)
        })
        .collect();
    keyed.sort_unstable();
    if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidArgument(format!("tied sequencies at n={n}")));
    }
    Ok(keyed.into_iter().map(|(_, i)| i).collect())
}

/// Dense `W x` with rows of `H_n` reordered by [`sequency_sort`].
pub fn naive_walsh<T: Scalar>(x: &[T]) -> Result<Vec<T>> {
    let order = sequency_sort(x.len())?;
    Ok(order.iter().map(|&i| row_times(|j| hadamard_entry(i, j), x)).collect())
}
