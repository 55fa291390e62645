//! Explicit Euler: `x ← 1·x + dt·f(x, t)` as a single scale-sum pass.

use crate::core::{first_non_finite, Algebra, ScaleSum};
use crate::steppers::{Stepper, System};
use crate::{Error, Result};

/// First-order explicit stepper. One right-hand-side evaluation and one
/// combination pass per step.
pub struct ExplicitEuler<A> {
    algebra: A,
    dxdt: Vec<f64>,
    validate: bool,
}

impl<A: Algebra> ExplicitEuler<A> {
    pub fn new(algebra: A) -> Self {
        Self {
            algebra,
            dxdt: Vec::new(),
            validate: true,
        }
    }

    /// Disables the finiteness sweep over right-hand-side output. Timing
    /// loops use this so the extra read pass never lands in the measurement.
    pub fn without_validation(mut self) -> Self {
        self.validate = false;
        self
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    /// Fills scratch with NaN. Correct steppers overwrite scratch fully
    /// before reading it, so poisoning must not change any result; tests
    /// rely on this to catch stale-scratch reads.
    pub fn poison_scratch(&mut self) {
        for v in &mut self.dxdt {
            *v = f64::NAN;
        }
    }

    fn ensure_scratch(&mut self, n: usize) {
        if self.dxdt.len() != n {
            self.dxdt.resize(n, 0.0);
        }
    }
}

impl<A: Algebra, Sys: System + ?Sized> Stepper<Sys> for ExplicitEuler<A> {
    type State = [f64];

    fn step(&mut self, system: &Sys, state: &mut [f64], t: f64, dt: f64) -> Result<()> {
        let n = state.len();
        if n != system.dim() {
            return Err(Error::LengthMismatch {
                expected: system.dim(),
                got: n,
            });
        }
        self.ensure_scratch(n);

        system.rhs(state, &mut self.dxdt, t)?;
        if self.validate {
            if let Some(index) = first_non_finite(&self.dxdt) {
                return Err(Error::NonFinite {
                    context: "euler rhs output",
                    index,
                });
            }
        }

        self.algebra
            .for_each3_in_place(state, &self.dxdt, ScaleSum::new([1.0, dt]))
    }
}
