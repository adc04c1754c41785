//! Basic-step instrumentation.
//!
//! A basic step is one scalar assignment, one scalar arithmetic operation, or
//! one comparison. Bignum operations count as one step regardless of limb
//! count; the peak scalar bit size is tracked separately.
//!
//! Counting is active only inside [`measure`] and is local to the calling
//! thread, so independent measurements on different threads never interfere.

use std::cell::RefCell;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct StepCounter {
    pub assignments: u64,
    pub arith_ops: u64,
    pub comparisons: u64,
    /// Largest [`bit_size`](crate::GaussianRational::bit_size) of any scalar
    /// produced by an arithmetic operation.
    pub peak_bits: u64,
}

impl StepCounter {
    pub fn total(&self) -> u64 {
        self.assignments + self.arith_ops + self.comparisons
    }

    fn absorb(&mut self, other: &StepCounter) {
        self.assignments += other.assignments;
        self.arith_ops += other.arith_ops;
        self.comparisons += other.comparisons;
        self.peak_bits = self.peak_bits.max(other.peak_bits);
    }
}

thread_local! {
    static ACTIVE: RefCell<Option<StepCounter>> = const { RefCell::new(None) };
}

#[inline]
fn with_active(f: impl FnOnce(&mut StepCounter)) {
    ACTIVE.with(|cell| {
        if let Some(c) = cell.borrow_mut().as_mut() {
            f(c);
        }
    });
}

#[inline]
pub(crate) fn arith(n: u64) {
    with_active(|c| c.arith_ops += n);
}

#[inline]
pub(crate) fn assign(n: u64) {
    with_active(|c| c.assignments += n);
}

#[inline]
pub(crate) fn compare(n: u64) {
    with_active(|c| c.comparisons += n);
}

#[inline]
pub(crate) fn bits(b: u64) {
    with_active(|c| c.peak_bits = c.peak_bits.max(b));
}

/// Runs `f` with counting enabled and returns the steps it executed.
///
/// Nested calls are supported: the inner measurement is also added to the
/// enclosing one.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, StepCounter) {
    let outer = ACTIVE.with(|cell| cell.borrow_mut().replace(StepCounter::default()));
    let result = f();
    let inner = ACTIVE.with(|cell| {
        let mut slot = cell.borrow_mut();
        let inner = slot.take().unwrap_or_default();
        if let Some(mut o) = outer {
            o.absorb(&inner);
            *slot = Some(o);
        }
        inner
    });
    (result, inner)
}
