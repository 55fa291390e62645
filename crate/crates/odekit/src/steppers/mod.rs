//! Time steppers, written once against the algebra contract.
//!
//! Each stepper owns its scratch buffers (resized lazily to the state length)
//! and an algebra that decides how state passes are traversed. Right-hand
//! sides are validated after every evaluation by default; a stepper built
//! with validation off skips the extra read sweep, which benchmark timing
//! relies on.

mod driver;
mod euler;
mod rk4;
mod verlet;

pub use driver::integrate_n_steps;
pub use euler::ExplicitEuler;
pub use rk4::RungeKutta4;
pub use verlet::{PhaseState, StormerVerlet};

use crate::Result;

/// A first-order system `dx/dt = f(x, t)`.
///
/// `rhs` must fully overwrite `dxdt` and may not mutate anything else
/// observable; it is free to use interior scratch.
pub trait System {
    /// Flat state length the system expects.
    fn dim(&self) -> usize;

    fn rhs(&self, x: &[f64], dxdt: &mut [f64], t: f64) -> Result<()>;
}

/// A separable Hamiltonian system: `dq/dt = p`, `dp/dt = rhs_dp(q)`.
/// The force is autonomous — it depends on `q` only.
pub trait HamiltonianSystem {
    fn dim(&self) -> usize;

    fn rhs_dp(&self, q: &[f64], dp: &mut [f64]) -> Result<()>;
}

/// Adapter turning a closure into a [`System`]; handy for tests and small
/// problems.
pub struct FnSystem<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64], f64)> FnSystem<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64], f64)> System for FnSystem<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rhs(&self, x: &[f64], dxdt: &mut [f64], t: f64) -> Result<()> {
        (self.f)(x, dxdt, t);
        Ok(())
    }
}

/// Closure adapter for [`HamiltonianSystem`].
pub struct FnHamiltonian<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnHamiltonian<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> HamiltonianSystem for FnHamiltonian<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rhs_dp(&self, q: &[f64], dp: &mut [f64]) -> Result<()> {
        (self.f)(q, dp);
        Ok(())
    }
}

/// One-step integration method over some state representation.
pub trait Stepper<Sys: ?Sized> {
    /// `[f64]` for first-order steppers, a (q, p) pair for symplectic ones.
    type State: ?Sized;

    /// Advances `state` from `t` to `t + dt`.
    fn step(&mut self, system: &Sys, state: &mut Self::State, t: f64, dt: f64) -> Result<()>;
}
