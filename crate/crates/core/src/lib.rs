//! Directional monoidal composition and the transforms that fall out of it.
//!
//! The basic object is a pair `(a, A)` composed by `(a, A) ∘ (b, B) =
//! (a + A b, A B)` ([`monoid`]). Giving each axis its own generator and
//! tracking integer exponents yields one composition per axis ([`axis`]);
//! when the generators commute, the per-axis compositions satisfy the
//! interchange law and grid folds are independent of reduction order.
//!
//! Folding a sequence of `(vᵢ, R)` with a shared `R` produces `Σ R^i vᵢ`.
//! With suitable `R` and `vᵢ` this sum is the DFT ([`dft`]), the Hadamard
//! transform ([`hadamard`]) or the sequency-ordered Walsh transform
//! ([`walsh`]). [`oracle`] checks each of these against brute-force
//! references.

pub mod axis;
pub mod cli;
pub mod dft;
pub mod error;
pub mod generators;
pub mod hadamard;
pub mod linalg;
pub mod monoid;
pub mod ops;
pub mod oracle;
pub mod report;
pub mod walsh;

pub use axis::{AxisElement, GeneratorFamily, Schedule};
pub use error::{Error, Result};
pub use linalg::{Matrix, Permutation, Scalar, Vector};
pub use monoid::MonoidElement;
pub use report::{OracleReport, Witness};
