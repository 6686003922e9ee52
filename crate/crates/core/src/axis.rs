//! Multi-axis elements `(a, R₁^{n₁}, …, R_D^{n_D})` over a shared family of
//! per-axis generators.
//!
//! Composition along axis `i` is
//!
//! ```text
//! (a, …, R_i^{n}, …) ∘_i (b, …, R_i^{k}, …) = (a + R_i^{n} b, …, R_i^{n+k}, …)
//! ```
//!
//! and is only defined when the two elements agree on every other exponent.
//! Elements keep exponents rather than expanded matrices. When the generators
//! commute pairwise, every pair of axes satisfies the interchange law and any
//! valid reduction order over a grid yields the same element.
//!
//! Grid axis 0 runs down the rows (index `i`), axis 1 along the columns
//! (index `j`), so cell `(i, j)` is weighted by `R₀^i R₁^j`.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{verify_commuting, CommutationReport, COMMUTE_TOL};
use crate::linalg::{Matrix, Scalar, Vector};
use crate::report::{OracleReport, Witness};

/// Tolerance for both sides of the interchange law.
pub const INTERCHANGE_TOL: f64 = 1e-9;

/// One generator per axis, all of the same dimension.
#[derive(Clone, Debug)]
pub struct GeneratorFamily<T> {
    axes: Vec<Matrix<T>>,
    commutation: CommutationReport,
}

impl<T: Scalar> GeneratorFamily<T> {
    pub fn new(axes: Vec<Matrix<T>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Empty("generator family"));
        }
        let commutation = verify_commuting(&axes)?;
        Ok(GeneratorFamily { axes, commutation })
    }

    pub fn axes(&self) -> &[Matrix<T>] {
        &self.axes
    }

    pub fn axis_count(&self) -> usize {
        self.axes.len()
    }

    pub fn dim(&self) -> usize {
        self.axes[0].dim()
    }

    pub fn commutation(&self) -> &CommutationReport {
        &self.commutation
    }

    pub fn commuting(&self) -> bool {
        self.commutation.max_commutator <= COMMUTE_TOL
    }

    pub fn generator(&self, axis: usize) -> Result<&Matrix<T>> {
        self.axes
            .get(axis)
            .ok_or(Error::AxisOutOfRange { axis, axes: self.axes.len() })
    }

    /// `R_axis^exponent`.
    pub fn power(&self, axis: usize, exponent: i64) -> Result<Matrix<T>> {
        self.generator(axis)?.pow(exponent)
    }

    /// `[R^0, R^1, …, R^{count−1}]` for one axis, by repeated multiplication.
    pub fn prefix_powers(&self, axis: usize, count: usize) -> Result<Vec<Matrix<T>>> {
        let g = self.generator(axis)?;
        let mut out = Vec::with_capacity(count);
        let mut acc = Matrix::identity(self.dim());
        for _ in 0..count {
            let next = acc.mul(g)?;
            out.push(std::mem::replace(&mut acc, next));
        }
        Ok(out)
    }
}

impl<T: Scalar> PartialEq for GeneratorFamily<T> {
    fn eq(&self, other: &Self) -> bool {
        self.axes == other.axes
    }
}

#[derive(Clone, Debug)]
pub struct AxisElement<T> {
    vec: Vector<T>,
    exponents: Vec<i64>,
    family: Arc<GeneratorFamily<T>>,
}

impl<T: Scalar> AxisElement<T> {
    pub fn new(vec: Vector<T>, exponents: Vec<i64>, family: &Arc<GeneratorFamily<T>>) -> Result<Self> {
        if vec.dim() != family.dim() {
            return Err(Error::DimensionMismatch { expected: family.dim(), found: vec.dim() });
        }
        if exponents.len() != family.axis_count() {
            return Err(Error::DimensionMismatch {
                expected: family.axis_count(),
                found: exponents.len(),
            });
        }
        Ok(AxisElement { vec, exponents, family: Arc::clone(family) })
    }

    /// Neutral element for `∘_axis` against `partner`: zero vector, zero
    /// exponent on `axis`, every other exponent copied.
    pub fn identity_on(axis: usize, partner: &Self) -> Result<Self> {
        partner.family.generator(axis)?;
        let mut exponents = partner.exponents.clone();
        exponents[axis] = 0;
        Ok(AxisElement {
            vec: Vector::zeros(partner.vec.dim()),
            exponents,
            family: Arc::clone(&partner.family),
        })
    }

    pub fn vec(&self) -> &Vector<T> {
        &self.vec
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn family(&self) -> &Arc<GeneratorFamily<T>> {
        &self.family
    }

    /// `self ∘_axis rhs`.
    pub fn compose_axis(&self, rhs: &Self, axis: usize) -> Result<Self> {
        if !Arc::ptr_eq(&self.family, &rhs.family) && *self.family != *rhs.family {
            return Err(Error::FamilyMismatch);
        }
        self.family.generator(axis)?;
        for (j, (&l, &r)) in self.exponents.iter().zip(&rhs.exponents).enumerate() {
            if j != axis && l != r {
                return Err(Error::AxisMismatch { along: axis, axis: j, left: l, right: r });
            }
        }
        let shift = self.family.power(axis, self.exponents[axis])?;
        let vec = self.vec.add(&shift.mul_vec(&rhs.vec)?)?;
        let mut exponents = self.exponents.clone();
        exponents[axis] += rhs.exponents[axis];
        Ok(AxisElement { vec, exponents, family: Arc::clone(&self.family) })
    }

    /// Same family (by value), same exponents, vectors within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(*self.family == *other.family
            && self.exponents == other.exponents
            && self.vec.approx_eq(&other.vec, tol)?)
    }
}

/// Evaluates both sides of
/// `(a ∘₁ b) ∘₂ (c ∘₁ d) = (a ∘₂ c) ∘₁ (b ∘₂ d)` for axes `ax1`, `ax2`.
pub fn check_interchange<T: Scalar>(
    a: &AxisElement<T>,
    b: &AxisElement<T>,
    c: &AxisElement<T>,
    d: &AxisElement<T>,
    ax1: usize,
    ax2: usize,
) -> Result<OracleReport> {
    let lhs = a.compose_axis(b, ax1)?.compose_axis(&c.compose_axis(d, ax1)?, ax2)?;
    let rhs = a.compose_axis(c, ax2)?.compose_axis(&b.compose_axis(d, ax2)?, ax1)?;
    let mut report = OracleReport::new(format!("interchange[{ax1},{ax2}]"), INTERCHANGE_TOL);
    let err = if lhs.exponents == rhs.exponents {
        lhs.vec.max_abs_diff(&rhs.vec)?
    } else {
        f64::INFINITY
    };
    report.record(err, || Witness {
        inputs: [a, b, c, d].iter().map(|e| to_f64(&e.vec)).collect(),
        lhs: to_f64(&lhs.vec),
        rhs: to_f64(&rhs.vec),
    });
    Ok(report)
}

pub(crate) fn to_f64<T: Scalar>(v: &Vector<T>) -> Vec<f64> {
    v.as_slice().iter().map(|x| x.to_f64()).collect()
}

fn grid_shape<T: Scalar>(grid: &[Vec<Vector<T>>], dim: usize) -> Result<(usize, usize)> {
    let h = grid.len();
    let w = grid.first().map_or(0, Vec::len);
    if h == 0 || w == 0 {
        return Err(Error::Empty("grid"));
    }
    for row in grid {
        if row.len() != w {
            return Err(Error::DimensionMismatch { expected: w, found: row.len() });
        }
        for v in row {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
        }
    }
    Ok((h, w))
}

/// `(Σᵢ Σⱼ R₀^i R₁^j v_ij, R₀^H R₁^W)` for an `H×W` grid.
///
/// Refuses non-commuting families: the result would depend on reduction
/// order. Rows are summed independently (possibly in parallel), each in
/// column order, then combined in row order, so the result does not depend
/// on thread scheduling.
pub fn fold_grid<T: Scalar>(
    grid: &[Vec<Vector<T>>],
    family: &Arc<GeneratorFamily<T>>,
) -> Result<AxisElement<T>> {
    if family.axis_count() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: family.axis_count() });
    }
    if !family.commuting() {
        return Err(Error::NonCommuting { max_commutator: family.commutation().max_commutator });
    }
    let (h, w) = grid_shape(grid, family.dim())?;
    let row_powers = family.prefix_powers(0, h)?;
    let col_powers = family.prefix_powers(1, w)?;

    let rows = grid
        .par_iter()
        .zip(row_powers.par_iter())
        .map(|(row, rp)| {
            let mut acc = Vector::zeros(family.dim());
            for (v, cp) in row.iter().zip(&col_powers) {
                acc = acc.add(&cp.mul_vec(v)?)?;
            }
            rp.mul_vec(&acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = Vector::zeros(family.dim());
    for r in &rows {
        total = total.add(r)?;
    }
    AxisElement::new(total, vec![h as i64, w as i64], family)
}

/// `(Σᵢ R^i vᵢ, R^T)` over a single-axis family.
pub fn fold_line<T: Scalar>(
    line: &[Vector<T>],
    family: &Arc<GeneratorFamily<T>>,
) -> Result<AxisElement<T>> {
    if family.axis_count() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: family.axis_count() });
    }
    if line.is_empty() {
        return Err(Error::Empty("line"));
    }
    let powers = family.prefix_powers(0, line.len())?;
    let mut total = Vector::zeros(family.dim());
    for (v, p) in line.iter().zip(&powers) {
        total = total.add(&p.mul_vec(v)?)?;
    }
    AxisElement::new(total, vec![line.len() as i64], family)
}

/// A binary reduction tree over the cells of a grid.
///
/// `Join { axis, first, second }` composes `first ∘_axis second`. A valid
/// tree covers every cell exactly once, and each join places `first`
/// directly before `second` along `axis` with matching extent on the other
/// axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    Leaf { row: usize, col: usize },
    Join { axis: usize, first: Box<Schedule>, second: Box<Schedule> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rect {
    row: usize,
    col: usize,
    height: usize,
    width: usize,
}

impl Schedule {
    pub fn join(axis: usize, first: Schedule, second: Schedule) -> Self {
        Schedule::Join { axis, first: Box::new(first), second: Box::new(second) }
    }

    /// Fold each row along axis 1, then combine rows along axis 0.
    pub fn rows_then_columns(height: usize, width: usize) -> Self {
        let rows = (0..height).map(|r| chain(1, (0..width).map(|c| Schedule::Leaf { row: r, col: c })));
        chain(0, rows)
    }

    /// Fold each column along axis 0, then combine columns along axis 1.
    pub fn columns_then_rows(height: usize, width: usize) -> Self {
        let cols = (0..width).map(|c| chain(0, (0..height).map(|r| Schedule::Leaf { row: r, col: c })));
        chain(1, cols)
    }

    /// A random guillotine tree: each rectangle is split on a random axis at
    /// a random cut until single cells remain.
    pub fn random(height: usize, width: usize, rng: &mut impl Rng) -> Self {
        fn split(r: Rect, rng: &mut impl Rng) -> Schedule {
            let can_rows = r.height > 1;
            let can_cols = r.width > 1;
            if !can_rows && !can_cols {
                return Schedule::Leaf { row: r.row, col: r.col };
            }
            let along_rows = can_rows && (!can_cols || rng.random_bool(0.5));
            if along_rows {
                let cut = rng.random_range(1..r.height);
                let top = Rect { height: cut, ..r };
                let bottom = Rect { row: r.row + cut, height: r.height - cut, ..r };
                Schedule::join(0, split(top, rng), split(bottom, rng))
            } else {
                let cut = rng.random_range(1..r.width);
                let left = Rect { width: cut, ..r };
                let right = Rect { col: r.col + cut, width: r.width - cut, ..r };
                Schedule::join(1, split(left, rng), split(right, rng))
            }
        }
        split(Rect { row: 0, col: 0, height, width }, rng)
    }

    fn extent(&self) -> Result<Rect> {
        match self {
            Schedule::Leaf { row, col } => Ok(Rect { row: *row, col: *col, height: 1, width: 1 }),
            Schedule::Join { axis, first, second } => {
                let (f, s) = (first.extent()?, second.extent()?);
                let adjacent = match axis {
                    0 => f.col == s.col && f.width == s.width && f.row + f.height == s.row,
                    1 => f.row == s.row && f.height == s.height && f.col + f.width == s.col,
                    _ => return Err(Error::InvalidSchedule(format!("axis {axis} on a 2-axis grid"))),
                };
                if !adjacent {
                    return Err(Error::InvalidSchedule(format!(
                        "join along axis {axis} of non-adjacent blocks {f:?} and {s:?}"
                    )));
                }
                Ok(if *axis == 0 {
                    Rect { height: f.height + s.height, ..f }
                } else {
                    Rect { width: f.width + s.width, ..f }
                })
            }
        }
    }
}

fn chain(axis: usize, items: impl DoubleEndedIterator<Item = Schedule>) -> Schedule {
    // Right-nested, matching the right-to-left fold.
    let mut it = items.rev();
    let last = it.next().expect("nonempty chain");
    it.fold(last, |acc, s| Schedule::join(axis, s, acc))
}

/// Folds the grid by an explicit reduction tree. Unlike [`fold_grid`] this
/// accepts non-commuting families, whose result then depends on the tree.
/// Leaves start as `(v_ij, exponents (1, 1))`.
pub fn fold_grid_scheduled<T: Scalar>(
    grid: &[Vec<Vector<T>>],
    family: &Arc<GeneratorFamily<T>>,
    schedule: &Schedule,
) -> Result<AxisElement<T>> {
    if family.axis_count() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: family.axis_count() });
    }
    let (h, w) = grid_shape(grid, family.dim())?;
    let full = Rect { row: 0, col: 0, height: h, width: w };
    if schedule.extent()? != full {
        return Err(Error::InvalidSchedule(format!("schedule does not cover the {h}x{w} grid")));
    }
    eval(grid, family, schedule)
}

fn eval<T: Scalar>(
    grid: &[Vec<Vector<T>>],
    family: &Arc<GeneratorFamily<T>>,
    node: &Schedule,
) -> Result<AxisElement<T>> {
    match node {
        Schedule::Leaf { row, col } => AxisElement::new(grid[*row][*col].clone(), vec![1, 1], family),
        Schedule::Join { axis, first, second } => {
            let f = eval(grid, family, first)?;
            let s = eval(grid, family, second)?;
            f.compose_axis(&s, *axis).map_err(|e| match e {
                Error::AxisMismatch { .. } => Error::InvalidSchedule(e.to_string()),
                other => other,
            })
        }
    }
}
