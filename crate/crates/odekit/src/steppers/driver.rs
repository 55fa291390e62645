//! Fixed-step integration loop shared by every stepper.

use crate::steppers::Stepper;
use crate::{Error, Result};

/// Advances `state` through `n_steps` steps of size `dt`, starting at `t0`.
///
/// The time handed to each step is computed as `t0 + i * dt` rather than by
/// accumulation, so long runs do not pick up additive drift in `t`. The
/// observer fires once after every completed step with the post-step state
/// and time. Returns the final time `t0 + n_steps * dt`; a failing step
/// surfaces as [`Error::StepFailed`] carrying the zero-based step index.
pub fn integrate_n_steps<Sys, St>(
    stepper: &mut St,
    system: &Sys,
    state: &mut St::State,
    t0: f64,
    dt: f64,
    n_steps: usize,
    mut observer: impl FnMut(&St::State, f64),
) -> Result<f64>
where
    Sys: ?Sized,
    St: Stepper<Sys>,
{
    for i in 0..n_steps {
        let t = t0 + i as f64 * dt;
        stepper
            .step(system, state, t, dt)
            .map_err(|source| Error::StepFailed {
                step: i,
                source: Box::new(source),
            })?;
        observer(&*state, t0 + (i + 1) as f64 * dt);
    }
    Ok(t0 + n_steps as f64 * dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::SerialBackend;
    use crate::steppers::{ExplicitEuler, FnSystem, PhaseState, StormerVerlet};
    use crate::steppers::{FnHamiltonian, Stepper};

    fn exponential() -> FnSystem<impl Fn(&[f64], &mut [f64], f64)> {
        FnSystem::new(1, |x, dxdt, _t| dxdt[0] = x[0])
    }

    #[test]
    fn observer_fires_once_per_step_with_advancing_time() {
        let sys = exponential();
        let mut stepper = ExplicitEuler::new(SerialBackend);
        let mut x = [1.0];
        let mut times = Vec::new();
        let t_end = integrate_n_steps(&mut stepper, &sys, &mut x[..], 2.0, 0.5, 4, |_s, t| {
            times.push(t)
        })
        .unwrap();
        assert_eq!(times, vec![2.5, 3.0, 3.5, 4.0]);
        assert_eq!(t_end, 4.0);
    }

    #[test]
    fn zero_steps_returns_start_time_and_state() {
        let sys = exponential();
        let mut stepper = ExplicitEuler::new(SerialBackend);
        let mut x = [7.25];
        let mut fired = false;
        let t_end =
            integrate_n_steps(&mut stepper, &sys, &mut x[..], 1.5, 0.1, 0, |_, _| fired = true)
                .unwrap();
        assert_eq!(t_end, 1.5);
        assert_eq!(x[0], 7.25);
        assert!(!fired);
    }

    #[test]
    fn euler_run_converges_at_first_order() {
        let sys = exponential();
        let run = |dt: f64, n: usize| {
            let mut stepper = ExplicitEuler::new(SerialBackend);
            let mut x = [1.0];
            integrate_n_steps(&mut stepper, &sys, &mut x[..], 0.0, dt, n, |_, _| {}).unwrap();
            (x[0] - std::f64::consts::E).abs()
        };
        let coarse = run(1e-3, 1000);
        let fine = run(5e-4, 2000);
        assert!(coarse < 2e-3, "coarse error {coarse}");
        // First order: halving dt should roughly halve the error.
        let ratio = coarse / fine;
        assert!((1.8..2.2).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn failing_step_reports_its_index() {
        // Finite for the first few steps, then NaN once x crosses 1.25.
        // The threshold sits between grid points so accumulated roundoff
        // in x cannot shift which step trips it.
        let sys = FnSystem::new(1, |x, d, _t| {
            d[0] = if x[0] > 1.25 { f64::NAN } else { 1.0 };
        });
        let mut stepper = ExplicitEuler::new(SerialBackend);
        let mut x = [1.0];
        // x after k steps of dt=0.1 is 1 + 0.1k; the rhs first sees
        // x > 1.25 at the start of step 3 (x ~ 1.3).
        let err =
            integrate_n_steps(&mut stepper, &sys, &mut x[..], 0.0, 0.1, 10, |_, _| {}).unwrap_err();
        match err {
            Error::StepFailed { step, source } => {
                assert_eq!(step, 3);
                assert!(matches!(*source, Error::NonFinite { .. }));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn driver_matches_a_manual_loop_bitwise_for_phase_states() {
        let sys = FnHamiltonian::new(2, |q, dp| {
            dp[0] = -q[0] - 0.1 * q[1];
            dp[1] = -q[1] - 0.1 * q[0];
        });
        let init = || {
            PhaseState::new(vec![1.0, -0.5].into(), vec![0.0, 0.25].into()).unwrap()
        };

        let mut manual = init();
        let mut stepper = StormerVerlet::new(SerialBackend);
        for i in 0..20 {
            stepper.step(&sys, &mut manual, 0.05 * i as f64, 0.05).unwrap();
        }

        let mut driven = init();
        let mut stepper2 = StormerVerlet::new(SerialBackend);
        integrate_n_steps(&mut stepper2, &sys, &mut driven, 0.0, 0.05, 20, |_, _| {}).unwrap();

        for i in 0..2 {
            assert_eq!(manual.q[i].to_bits(), driven.q[i].to_bits());
            assert_eq!(manual.p[i].to_bits(), driven.p[i].to_bits());
        }
    }
}
