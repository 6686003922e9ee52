//! Pairs `(a, A)` under `(a, A) ∘ (b, B) = (a + A b, A B)`.
//!
//! The vector half accumulates position-weighted contributions while the
//! operator half records the running product. The operation is associative
//! with identity `(0, I)` and, in general, not commutative.

use crate::error::{Error, Result};
use crate::linalg::{LinearOp, Matrix, Scalar, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct MonoidElement<T, Op = Matrix<T>> {
    vec: Vector<T>,
    op: Op,
}

impl<T: Scalar, Op: LinearOp<T>> MonoidElement<T, Op> {
    /// The operator need not be invertible; composition never inverts.
    pub fn new(vec: Vector<T>, op: Op) -> Result<Self> {
        if vec.dim() != op.dim() {
            return Err(Error::DimensionMismatch { expected: op.dim(), found: vec.dim() });
        }
        Ok(MonoidElement { vec, op })
    }

    /// `(0, I)` shaped like `like`'s operator.
    pub fn identity_like(like: &Op) -> Self {
        MonoidElement { vec: Vector::zeros(like.dim()), op: like.identity_like() }
    }

    pub fn vec(&self) -> &Vector<T> {
        &self.vec
    }

    pub fn op(&self) -> &Op {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn into_parts(self) -> (Vector<T>, Op) {
        (self.vec, self.op)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        let vec = self.vec.add(&self.op.apply(&rhs.vec)?)?;
        let op = self.op.product(&rhs.op)?;
        Ok(MonoidElement { vec, op })
    }
}

impl<T: Scalar> MonoidElement<T, Matrix<T>> {
    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        Ok(Self::identity_like(&Matrix::identity(dim)))
    }
}

/// `e₁ ∘ (e₂ ∘ (… ∘ e_T))`, evaluated right to left.
pub fn fold_sequence<T: Scalar, Op: LinearOp<T>>(
    elems: &[MonoidElement<T, Op>],
) -> Result<MonoidElement<T, Op>> {
    let (last, rest) = elems.split_last().ok_or(Error::Empty("element sequence"))?;
    rest.iter().rev().try_fold(last.clone(), |acc, e| e.compose(&acc))
}

/// `((e₁ ∘ e₂) ∘ …) ∘ e_T`, evaluated left to right.
pub fn fold_left<T: Scalar, Op: LinearOp<T>>(
    elems: &[MonoidElement<T, Op>],
) -> Result<MonoidElement<T, Op>> {
    let (first, rest) = elems.split_first().ok_or(Error::Empty("element sequence"))?;
    rest.iter().try_fold(first.clone(), |acc, e| acc.compose(e))
}

/// Expanded form `(Σᵢ R₁⋯R_{i−1} vᵢ, R₁⋯R_T)` built from running prefix
/// products.
pub fn closed_form<T: Scalar, Op: LinearOp<T>>(
    elems: &[MonoidElement<T, Op>],
) -> Result<MonoidElement<T, Op>> {
    let first = elems.first().ok_or(Error::Empty("element sequence"))?;
    let mut prefix = first.op.identity_like();
    let mut sum = Vector::zeros(first.dim());
    for e in elems {
        sum = sum.add(&prefix.apply(&e.vec)?)?;
        prefix = prefix.product(&e.op)?;
    }
    Ok(MonoidElement { vec: sum, op: prefix })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(v: &[i64], rows: &[&[i64]]) -> MonoidElement<i64> {
        MonoidElement::new(
            Vector::new(v.to_vec()).unwrap(),
            Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn compose_identity_and_witness() {
        let swap: &[&[i64]] = &[&[0, 1], &[1, 0]];
        let a = elem(&[1, 0], swap);
        let b = elem(&[0, 2], &[&[1, 0], &[0, 1]]);
        let id = MonoidElement::identity(2).unwrap();
        assert_eq!(id.compose(&b).unwrap(), b);

        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, elem(&[3, 0], swap));
        let ba = b.compose(&a).unwrap();
        assert_eq!(ba, elem(&[1, 2], swap));
        assert_ne!(ab, ba);
    }

    #[test]
    fn identity_element_shape() {
        let id = MonoidElement::<i64>::identity(2).unwrap();
        assert_eq!(id, elem(&[0, 0], &[&[1, 0], &[0, 1]]));
        assert!(MonoidElement::<f64>::identity(0).is_err());
        let e = elem(&[4, -1], &[&[2, 1], &[0, 3]]);
        assert_eq!(e.compose(&id).unwrap(), e);
        assert_eq!(id.compose(&e).unwrap(), e);
    }

    #[test]
    fn compose_dimension_mismatch() {
        let a = MonoidElement::<f64>::identity(2).unwrap();
        let b = MonoidElement::<f64>::identity(3).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
        assert!(MonoidElement::new(Vector::<f64>::zeros(2), Matrix::identity(3)).is_err());
    }

    #[test]
    fn folds_small_cases() {
        let e1 = elem(&[1, 2], &[&[0, 1], &[1, 0]]);
        let e2 = elem(&[5, 7], &[&[2, 0], &[1, 1]]);
        assert_eq!(fold_sequence(std::slice::from_ref(&e1)).unwrap(), e1);
        assert_eq!(closed_form(std::slice::from_ref(&e1)).unwrap(), e1);
        // (v₁ + R₁v₂, R₁R₂)
        let expect = elem(&[8, 7], &[&[1, 1], &[2, 0]]);
        assert_eq!(fold_sequence(&[e1.clone(), e2.clone()]).unwrap(), expect);
        assert_eq!(fold_left(&[e1.clone(), e2.clone()]).unwrap(), expect);
        assert_eq!(closed_form(&[e1, e2]).unwrap(), expect);
    }

    #[test]
    fn identity_operators_reduce_to_sum() {
        let id: &[&[i64]] = &[&[1, 0], &[0, 1]];
        let es = [elem(&[1, 2], id), elem(&[3, 4], id), elem(&[-2, 10], id)];
        assert_eq!(closed_form(&es).unwrap(), elem(&[2, 16], id));
    }

    #[test]
    fn empty_folds_fail() {
        let none: [MonoidElement<f64>; 0] = [];
        assert_eq!(fold_sequence(&none), Err(Error::Empty("element sequence")));
        assert_eq!(fold_left(&none), Err(Error::Empty("element sequence")));
        assert_eq!(closed_form(&none), Err(Error::Empty("element sequence")));
    }
}
