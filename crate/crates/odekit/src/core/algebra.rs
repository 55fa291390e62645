//! The iteration contract steppers are written against.
//!
//! A stepper never loops over state indices itself. It hands aligned state
//! slices plus an [`ElementOp`] to `for_eachN`, and the backend decides how
//! the index range is traversed: one serial sweep, or a set of disjoint
//! chunks on a worker pool. Because every kernel is a pure per-element
//! function, all backends produce bitwise-identical results.

use std::ops::Range;

use crate::core::ops::ElementOp;
use crate::{Error, Result};

/// A unit of work over one chunk of a pass. Tasks passed to
/// [`Algebra::run_tasks`] touch disjoint data and may run in any order.
pub type Task<'a> = Box<dyn FnOnce() + Send + 'a>;

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

macro_rules! define_for_each {
    ($name:ident, $in_place:ident, $k:literal, $first:ident $(, $rest:ident)*) => {
        /// Applies `op` to every index of the aligned states, writing the
        /// first argument. Rejects length mismatches before touching any
        /// element.
        fn $name<O: ElementOp<$k>>(
            &self,
            target: &mut [f64],
            $first: &[f64],
            $($rest: &[f64],)*
            op: O,
        ) -> Result<()> {
            let n = target.len();
            check_len(n, $first.len())?;
            $(check_len(n, $rest.len())?;)*
            let op = &op;
            self.run_tasks(split_into_tasks(self.pass_chunks(n), target, move |start, chunk| {
                for (j, t) in chunk.iter_mut().enumerate() {
                    let i = start + j;
                    op.apply(t, [$first[i] $(, $rest[i])*]);
                }
            }));
            Ok(())
        }

        /// Like the distinct-state form, but the target doubles as the first
        /// operand: each element's previous value feeds the kernel. This is
        /// the in-place update steppers use for `x = a*x + b*v`.
        fn $in_place<O: ElementOp<$k>>(
            &self,
            target: &mut [f64],
            $($rest: &[f64],)*
            op: O,
        ) -> Result<()> {
            let n = target.len();
            $(check_len(n, $rest.len())?;)*
            let op = &op;
            self.run_tasks(split_into_tasks(self.pass_chunks(n), target, move |start, chunk| {
                for (j, t) in chunk.iter_mut().enumerate() {
                    let i = start + j;
                    let _ = i;
                    let old = *t;
                    op.apply(t, [old $(, $rest[i])*]);
                }
            }));
            Ok(())
        }
    };
}

/// How state vectors are traversed.
///
/// Implementors provide scheduling only ([`run_tasks`](Self::run_tasks) and
/// [`pass_chunks`](Self::pass_chunks)); the arithmetic of every pass is fixed
/// by the provided `for_eachN` methods and the kernels they receive.
pub trait Algebra: Send + Sync {
    /// Runs independent tasks to completion. The serial backend executes them
    /// in order on the calling thread; the parallel backend distributes them
    /// over its pool and blocks until all finish.
    fn run_tasks(&self, tasks: Vec<Task<'_>>);

    /// Splits a pass over `n` elements into contiguous chunk ranges.
    fn pass_chunks(&self, n: usize) -> Vec<Range<usize>> {
        vec![0..n]
    }

    define_for_each!(for_each2, for_each2_in_place, 1, s2);
    define_for_each!(for_each3, for_each3_in_place, 2, s2, s3);
    define_for_each!(for_each4, for_each4_in_place, 3, s2, s3, s4);
    define_for_each!(for_each5, for_each5_in_place, 4, s2, s3, s4, s5);
    define_for_each!(for_each6, for_each6_in_place, 5, s2, s3, s4, s5, s6);

    /// Single-target pass with an arbitrary per-element body receiving the
    /// global index. Used by stencil and sparse matrix-vector kernels, which
    /// read outside the written index but still write disjoint chunks.
    fn for_each_indexed(&self, target: &mut [f64], body: &(dyn Fn(usize, &mut f64) + Sync)) {
        let n = target.len();
        self.run_tasks(split_into_tasks(
            self.pass_chunks(n),
            target,
            move |start, chunk| {
                for (j, t) in chunk.iter_mut().enumerate() {
                    body(start + j, t);
                }
            },
        ));
    }
}

/// Splits `target` at the chunk boundaries and boxes one task per chunk.
/// `body(start, chunk)` receives the chunk's global start index.
fn split_into_tasks<'a, F>(ranges: Vec<Range<usize>>, target: &'a mut [f64], body: F) -> Vec<Task<'a>>
where
    F: Fn(usize, &mut [f64]) + Send + Sync + 'a,
{
    let mut tasks: Vec<Task<'a>> = Vec::with_capacity(ranges.len());
    let mut rest = target;
    let mut consumed = 0;
    let body = std::sync::Arc::new(body);
    for r in ranges {
        debug_assert_eq!(r.start, consumed);
        let (chunk, tail) = rest.split_at_mut(r.end - consumed);
        consumed = r.end;
        rest = tail;
        let body = body.clone();
        tasks.push(Box::new(move || body(r.start, chunk)));
    }
    tasks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::SerialBackend;
    use crate::core::ops::ScaleSum;
    use proptest::prelude::*;

    // Reference evaluation for the aliased form: copy the target, evaluate
    // into a fresh output, compare.
    fn fresh_copy_oracle<const K: usize>(
        target: &[f64],
        others: &[&[f64]],
        op: ScaleSum<K>,
    ) -> Vec<f64> {
        (0..target.len())
            .map(|i| {
                let mut operands = [0.0; K];
                operands[0] = target[i];
                for (k, o) in others.iter().enumerate() {
                    operands[k + 1] = o[i];
                }
                let mut t = 0.0;
                op.apply(&mut t, operands);
                t
            })
            .collect()
    }

    #[test]
    fn for_each3_applies_scale_sum() {
        let a = SerialBackend;
        let mut s1 = vec![0.0, 0.0];
        a.for_each3(&mut s1, &[1.0, 2.0], &[10.0, 20.0], ScaleSum::new([1.0, 0.1]))
            .unwrap();
        assert_eq!(s1, [2.0, 4.0]);
    }

    #[test]
    fn for_each3_identity_coefficients_copy_second_state() {
        let a = SerialBackend;
        let mut s1 = vec![0.0];
        a.for_each3(&mut s1, &[5.0], &[9.0], ScaleSum::new([1.0, 0.0]))
            .unwrap();
        assert_eq!(s1, [5.0]);
    }

    #[test]
    fn for_each3_in_place_matches_fresh_copy_evaluation() {
        let a = SerialBackend;
        let mut x = vec![1.0, -2.0, 0.25, 3.5];
        let dxdt = vec![10.0, 4.0, -8.0, 0.5];
        let op = ScaleSum::new([1.0, 0.1]);
        let expected = fresh_copy_oracle(&x, &[&dxdt], op);
        a.for_each3_in_place(&mut x, &dxdt, op).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn for_each3_rejects_length_mismatch_untouched() {
        let a = SerialBackend;
        let mut s1 = vec![7.0, 7.0];
        let err = a
            .for_each3(&mut s1, &[1.0], &[1.0, 1.0], ScaleSum::new([1.0, 1.0]))
            .unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { expected: 2, got: 1 }));
        assert_eq!(s1, [7.0, 7.0]);
    }

    // The same trivial/identity/aliased trio for the remaining arities.
    #[test]
    fn for_each2_contract() {
        let a = SerialBackend;
        let mut s1 = vec![0.0, 0.0];
        a.for_each2(&mut s1, &[2.0, -4.0], ScaleSum::new([0.5])).unwrap();
        assert_eq!(s1, [1.0, -2.0]);

        let mut s1 = vec![3.0];
        a.for_each2(&mut s1, &[8.0], ScaleSum::new([1.0])).unwrap();
        assert_eq!(s1, [8.0]);

        let mut x = vec![1.5, -0.5];
        let op = ScaleSum::new([2.0]);
        let expected = fresh_copy_oracle(&x, &[], op);
        a.for_each2_in_place(&mut x, op).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn for_each4_contract() {
        let a = SerialBackend;
        let mut s1 = vec![0.0];
        a.for_each4(&mut s1, &[1.0], &[2.0], &[4.0], ScaleSum::new([1.0, 1.0, 0.25]))
            .unwrap();
        assert_eq!(s1, [4.0]);

        let mut s1 = vec![0.0];
        a.for_each4(&mut s1, &[5.0], &[9.0], &[9.0], ScaleSum::new([1.0, 0.0, 0.0]))
            .unwrap();
        assert_eq!(s1, [5.0]);

        let mut x = vec![2.0, 3.0];
        let b = vec![1.0, -1.0];
        let c = vec![0.5, 0.25];
        let op = ScaleSum::new([1.0, 0.5, -2.0]);
        let expected = fresh_copy_oracle(&x, &[&b, &c], op);
        a.for_each4_in_place(&mut x, &b, &c, op).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn for_each5_contract() {
        let a = SerialBackend;
        let mut s1 = vec![0.0];
        a.for_each5(
            &mut s1,
            &[1.0],
            &[1.0],
            &[1.0],
            &[1.0],
            ScaleSum::new([1.0, 2.0, 3.0, 4.0]),
        )
        .unwrap();
        assert_eq!(s1, [10.0]);

        let mut s1 = vec![0.0];
        a.for_each5(
            &mut s1,
            &[5.0],
            &[9.0],
            &[9.0],
            &[9.0],
            ScaleSum::new([1.0, 0.0, 0.0, 0.0]),
        )
        .unwrap();
        assert_eq!(s1, [5.0]);

        let mut x = vec![1.0, 2.0];
        let b = vec![3.0, 4.0];
        let c = vec![5.0, 6.0];
        let d = vec![7.0, 8.0];
        let op = ScaleSum::new([0.5, 0.25, -1.0, 2.0]);
        let expected = fresh_copy_oracle(&x, &[&b, &c, &d], op);
        a.for_each5_in_place(&mut x, &b, &c, &d, op).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn for_each6_contract() {
        let a = SerialBackend;
        let mut s1 = vec![0.0];
        a.for_each6(
            &mut s1,
            &[1.0],
            &[1.0],
            &[1.0],
            &[1.0],
            &[1.0],
            ScaleSum::new([1.0, 2.0, 3.0, 4.0, 5.0]),
        )
        .unwrap();
        assert_eq!(s1, [15.0]);

        let mut s1 = vec![0.0];
        a.for_each6(
            &mut s1,
            &[5.0],
            &[9.0],
            &[9.0],
            &[9.0],
            &[9.0],
            ScaleSum::new([1.0, 0.0, 0.0, 0.0, 0.0]),
        )
        .unwrap();
        assert_eq!(s1, [5.0]);

        let mut x = vec![1.0, -1.0];
        let k1 = vec![0.1, 0.2];
        let k2 = vec![0.3, 0.4];
        let k3 = vec![0.5, 0.6];
        let k4 = vec![0.7, 0.8];
        let op = ScaleSum::new([1.0, 0.25, 0.5, 0.5, 0.25]);
        let expected = fresh_copy_oracle(&x, &[&k1, &k2, &k3, &k4], op);
        a.for_each6_in_place(&mut x, &k1, &k2, &k3, &k4, op).unwrap();
        assert_eq!(x, expected);
    }

    proptest! {
        // Elementwise independence: applying a pass commutes with any
        // permutation of the index space.
        #[test]
        fn pass_commutes_with_permutation(
            xs in proptest::collection::vec(-1e3f64..1e3, 1..40),
            ys in proptest::collection::vec(-1e3f64..1e3, 1..40),
            a in -10.0f64..10.0,
            b in -10.0f64..10.0,
            seed in 0u64..1000,
        ) {
            let n = xs.len().min(ys.len());
            let xs = &xs[..n];
            let ys = &ys[..n];
            // Deterministic permutation from the seed.
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed.wrapping_mul(2654435761).wrapping_add(1);
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }

            let alg = SerialBackend;
            let op = ScaleSum::new([a, b]);

            let mut direct = vec![0.0; n];
            alg.for_each3(&mut direct, xs, ys, op).unwrap();
            let permuted_after: Vec<f64> = perm.iter().map(|&i| direct[i]).collect();

            let px: Vec<f64> = perm.iter().map(|&i| xs[i]).collect();
            let py: Vec<f64> = perm.iter().map(|&i| ys[i]).collect();
            let mut applied_after = vec![0.0; n];
            alg.for_each3(&mut applied_after, &px, &py, op).unwrap();

            for i in 0..n {
                prop_assert_eq!(permuted_after[i].to_bits(), applied_after[i].to_bits());
            }
        }
    }
}
