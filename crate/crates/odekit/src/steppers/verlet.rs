//! Velocity Störmer–Verlet for separable Hamiltonian systems.
//!
//! Kick–drift–kick: a half step of momentum, a full step of position, a
//! fresh force evaluation, and the closing half step of momentum. Two force
//! evaluations and three combination passes per step. The scheme is
//! symplectic and time-reversible, so energy oscillates around its initial
//! value instead of drifting.

use crate::core::{first_non_finite, Algebra, ScaleSum, StateVector};
use crate::steppers::{HamiltonianSystem, Stepper};
use crate::{Error, Result};

/// Position/momentum pair with matching lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub q: StateVector,
    pub p: StateVector,
}

impl PhaseState {
    pub fn new(q: StateVector, p: StateVector) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::LengthMismatch {
                expected: q.len(),
                got: p.len(),
            });
        }
        Ok(Self { q, p })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            q: StateVector::zeros(n),
            p: StateVector::zeros(n),
        }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.len() == 0
    }
}

/// Second-order symplectic stepper. Exactly two force evaluations per step.
pub struct StormerVerlet<A> {
    algebra: A,
    accel: Vec<f64>,
    validate: bool,
}

impl<A: Algebra> StormerVerlet<A> {
    pub fn new(algebra: A) -> Self {
        Self {
            algebra,
            accel: Vec::new(),
            validate: true,
        }
    }

    /// Disables the finiteness sweep over force output; see
    /// [`ExplicitEuler::without_validation`](crate::steppers::ExplicitEuler::without_validation).
    pub fn without_validation(mut self) -> Self {
        self.validate = false;
        self
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    /// Fills the force scratch with NaN; see
    /// [`ExplicitEuler::poison_scratch`](crate::steppers::ExplicitEuler::poison_scratch).
    pub fn poison_scratch(&mut self) {
        for v in &mut self.accel {
            *v = f64::NAN;
        }
    }

    fn ensure_scratch(&mut self, n: usize) {
        if self.accel.len() != n {
            self.accel.resize(n, 0.0);
        }
    }

    fn check(&self) -> Result<()> {
        if self.validate {
            if let Some(index) = first_non_finite(&self.accel) {
                return Err(Error::NonFinite {
                    context: "verlet force output",
                    index,
                });
            }
        }
        Ok(())
    }
}

impl<A: Algebra, Sys: HamiltonianSystem + ?Sized> Stepper<Sys> for StormerVerlet<A> {
    type State = PhaseState;

    fn step(&mut self, system: &Sys, state: &mut PhaseState, _t: f64, dt: f64) -> Result<()> {
        let n = state.len();
        if n != system.dim() || state.p.len() != n {
            return Err(Error::LengthMismatch {
                expected: system.dim(),
                got: n,
            });
        }
        self.ensure_scratch(n);
        let half = dt / 2.0;
        let half_kick = ScaleSum::new([1.0, half]);

        system.rhs_dp(&state.q, &mut self.accel)?;
        self.check()?;
        self.algebra
            .for_each3_in_place(&mut state.p, &self.accel, half_kick)?;

        self.algebra
            .for_each3_in_place(&mut state.q, &state.p, ScaleSum::new([1.0, dt]))?;

        system.rhs_dp(&state.q, &mut self.accel)?;
        self.check()?;
        self.algebra
            .for_each3_in_place(&mut state.p, &self.accel, half_kick)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::SerialBackend;
    use crate::steppers::FnHamiltonian;
    use approx::assert_relative_eq;
    use std::cell::Cell;

    fn harmonic() -> FnHamiltonian<impl Fn(&[f64], &mut [f64])> {
        FnHamiltonian::new(1, |q, dp| dp[0] = -q[0])
    }

    #[test]
    fn harmonic_step_matches_hand_values() {
        // q0 = 1, p0 = 0, dt = 0.1 with force -q:
        //   p_half = 0 + 0.05*(-1)        = -0.05
        //   q1     = 1 + 0.1*(-0.05)      = 0.995
        //   p1     = -0.05 + 0.05*(-0.995) = -0.09975
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut state = PhaseState::new(vec![1.0].into(), vec![0.0].into()).unwrap();
        stepper.step(&harmonic(), &mut state, 0.0, 0.1).unwrap();
        assert_relative_eq!(state.q[0], 0.995, max_relative = 1e-15);
        assert_relative_eq!(state.p[0], -0.09975, max_relative = 1e-15);
    }

    #[test]
    fn exactly_two_force_evaluations_per_step() {
        let calls = Cell::new(0usize);
        let sys = FnHamiltonian::new(1, |q: &[f64], dp: &mut [f64]| {
            calls.set(calls.get() + 1);
            dp[0] = -q[0];
        });
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut state = PhaseState::new(vec![1.0].into(), vec![0.0].into()).unwrap();
        stepper.step(&sys, &mut state, 0.0, 0.1).unwrap();
        assert_eq!(calls.get(), 2);
        stepper.step(&sys, &mut state, 0.1, 0.1).unwrap();
        assert_eq!(calls.get(), 4);
    }

    #[test]
    fn energy_oscillates_without_drift() {
        let sys = harmonic();
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut state = PhaseState::new(vec![1.0].into(), vec![0.0].into()).unwrap();
        let energy =
            |s: &PhaseState| 0.5 * (s.p[0] * s.p[0] + s.q[0] * s.q[0]);
        let e0 = energy(&state);
        let mut worst = 0.0f64;
        for i in 0..1000 {
            stepper.step(&sys, &mut state, 0.01 * i as f64, 0.01).unwrap();
            worst = worst.max((energy(&state) - e0).abs());
        }
        // Symplectic bound: deviation stays O(dt^2) forever rather than
        // accumulating linearly in the step count.
        assert!(worst < 1e-4, "energy deviated by {worst}");
    }

    #[test]
    fn reversing_the_step_returns_to_the_start() {
        let sys = harmonic();
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut state = PhaseState::new(vec![0.8].into(), vec![0.3].into()).unwrap();
        for _ in 0..50 {
            stepper.step(&sys, &mut state, 0.0, 0.05).unwrap();
        }
        for _ in 0..50 {
            stepper.step(&sys, &mut state, 0.0, -0.05).unwrap();
        }
        assert_relative_eq!(state.q[0], 0.8, max_relative = 1e-12);
        assert_relative_eq!(state.p[0], 0.3, max_relative = 1e-12);
    }

    #[test]
    fn poisoned_scratch_does_not_leak_into_results() {
        let sys = harmonic();
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut a = PhaseState::new(vec![1.0].into(), vec![0.0].into()).unwrap();
        stepper.step(&sys, &mut a, 0.0, 0.1).unwrap();

        let mut b = PhaseState::new(vec![1.0].into(), vec![0.0].into()).unwrap();
        stepper.poison_scratch();
        stepper.step(&sys, &mut b, 0.0, 0.1).unwrap();
        assert_eq!(a.q[0].to_bits(), b.q[0].to_bits());
        assert_eq!(a.p[0].to_bits(), b.p[0].to_bits());
    }

    #[test]
    fn mismatched_phase_lengths_are_rejected() {
        assert!(matches!(
            PhaseState::new(vec![1.0, 2.0].into(), vec![0.0].into()),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn non_finite_force_is_reported() {
        let sys = FnHamiltonian::new(1, |_q, dp| dp[0] = f64::NAN);
        let mut stepper = StormerVerlet::new(SerialBackend);
        let mut state = PhaseState::zeros(1);
        let err = stepper.step(&sys, &mut state, 0.0, 0.1).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }));
    }
}
