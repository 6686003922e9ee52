//! Scalar operation counting.
//!
//! Arithmetic kernels in [`crate::linalg`] report every scalar multiply and
//! add to a thread-local tally. [`count_ops`] scopes a measurement; work done
//! on other threads is not observed.

use std::cell::Cell;

thread_local! {
    static TALLY: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn tally(n: usize) {
    TALLY.with(|t| t.set(t.get().wrapping_add(n as u64)));
}

/// Runs `f` and returns its result along with the number of scalar
/// operations it performed on the current thread. Nests correctly.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let outer = TALLY.with(|t| t.replace(0));
    let out = f();
    let inner = TALLY.with(|t| t.get());
    TALLY.with(|t| t.set(outer.wrapping_add(inner)));
    (out, inner)
}
