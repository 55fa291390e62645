//! Classical fourth-order Runge–Kutta.
//!
//! The four stage combinations are expressed as scale-sum passes of
//! increasing arity over the accumulated stage slopes, the way a generic
//! tableau-driven implementation would emit them. Stages that the classical
//! tableau does not use enter with coefficient zero, which adds `0.0 * k`
//! to the accumulator and leaves the sum bitwise unchanged.

use crate::core::{first_non_finite, Algebra, ScaleSum};
use crate::steppers::{Stepper, System};
use crate::{Error, Result};

/// Fourth-order explicit stepper. Four right-hand-side evaluations and four
/// combination passes per step.
pub struct RungeKutta4<A> {
    algebra: A,
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    x_tmp: Vec<f64>,
    validate: bool,
}

impl<A: Algebra> RungeKutta4<A> {
    pub fn new(algebra: A) -> Self {
        Self {
            algebra,
            k1: Vec::new(),
            k2: Vec::new(),
            k3: Vec::new(),
            k4: Vec::new(),
            x_tmp: Vec::new(),
            validate: true,
        }
    }

    /// Disables the finiteness sweep over stage outputs; see
    /// [`ExplicitEuler::without_validation`](crate::steppers::ExplicitEuler::without_validation).
    pub fn without_validation(mut self) -> Self {
        self.validate = false;
        self
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    /// Fills all five scratch buffers with NaN; see
    /// [`ExplicitEuler::poison_scratch`](crate::steppers::ExplicitEuler::poison_scratch).
    pub fn poison_scratch(&mut self) {
        for buf in [
            &mut self.k1,
            &mut self.k2,
            &mut self.k3,
            &mut self.k4,
            &mut self.x_tmp,
        ] {
            for v in buf.iter_mut() {
                *v = f64::NAN;
            }
        }
    }

    fn ensure_scratch(&mut self, n: usize) {
        for buf in [
            &mut self.k1,
            &mut self.k2,
            &mut self.k3,
            &mut self.k4,
            &mut self.x_tmp,
        ] {
            if buf.len() != n {
                buf.resize(n, 0.0);
            }
        }
    }

    fn check(&self, slope: &[f64]) -> Result<()> {
        if self.validate {
            if let Some(index) = first_non_finite(slope) {
                return Err(Error::NonFinite {
                    context: "rk4 stage output",
                    index,
                });
            }
        }
        Ok(())
    }
}

impl<A: Algebra, Sys: System + ?Sized> Stepper<Sys> for RungeKutta4<A> {
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
        let half = dt / 2.0;

        system.rhs(state, &mut self.k1, t)?;
        self.check(&self.k1)?;
        self.algebra
            .for_each3(&mut self.x_tmp, state, &self.k1, ScaleSum::new([1.0, half]))?;

        system.rhs(&self.x_tmp, &mut self.k2, t + half)?;
        self.check(&self.k2)?;
        self.algebra.for_each4(
            &mut self.x_tmp,
            state,
            &self.k1,
            &self.k2,
            ScaleSum::new([1.0, 0.0, half]),
        )?;

        system.rhs(&self.x_tmp, &mut self.k3, t + half)?;
        self.check(&self.k3)?;
        self.algebra.for_each5(
            &mut self.x_tmp,
            state,
            &self.k1,
            &self.k2,
            &self.k3,
            ScaleSum::new([1.0, 0.0, 0.0, dt]),
        )?;

        system.rhs(&self.x_tmp, &mut self.k4, t + dt)?;
        self.check(&self.k4)?;
        self.algebra.for_each6_in_place(
            state,
            &self.k1,
            &self.k2,
            &self.k3,
            &self.k4,
            ScaleSum::new([1.0, dt / 6.0, dt / 3.0, dt / 3.0, dt / 6.0]),
        )
    }
}
