//! Observed convergence orders of the explicit steppers.
//!
//! Integrates x' = -x from x(0) = 1 to t = 1 with step sizes halving from
//! 0.1, measures the final-value error against e^-1, and reports the
//! order implied by each halving. Euler lands near 1, classical
//! Runge-Kutta near 4.

use odekit::prelude::*;
use odekit::steppers::FnSystem;

type Decay = FnSystem<fn(&[f64], &mut [f64], f64)>;

fn decay() -> Decay {
    FnSystem::new(1, |x: &[f64], dxdt: &mut [f64], _t| dxdt[0] = -x[0])
}

/// Final-value errors for five runs with dt = 0.1 / 2^k.
fn errors(mut advance: impl FnMut(f64, usize, &mut [f64]) -> Result<()>) -> Result<Vec<(f64, f64)>> {
    let exact = (-1.0f64).exp();
    let mut out = Vec::new();
    for k in 0..5 {
        let dt = 0.1 / f64::powi(2.0, k);
        let steps = (1.0 / dt).round() as usize;
        let mut x = [1.0];
        advance(dt, steps, &mut x)?;
        out.push((dt, (x[0] - exact).abs()));
    }
    Ok(out)
}

fn report(name: &str, errors: &[(f64, f64)]) {
    println!("{name}:");
    println!("  {:>10} {:>14} {:>8}", "dt", "error", "order");
    let mut previous: Option<f64> = None;
    for &(dt, err) in errors {
        match previous {
            Some(prev) => {
                let order = (prev / err).log2();
                println!("  {dt:>10.5} {err:>14.3e} {order:>8.3}");
            }
            None => println!("  {dt:>10.5} {err:>14.3e} {:>8}", "-"),
        }
        previous = Some(err);
    }
    println!();
}

fn main() -> Result<()> {
    let system = decay();
    let exec = ExecBackend::serial();

    let euler = errors(|dt, steps, x| {
        let mut stepper = ExplicitEuler::new(exec.clone());
        integrate_n_steps(&mut stepper, &system, x, 0.0, dt, steps, |_, _| {}).map(|_| ())
    })?;
    let rk4 = errors(|dt, steps, x| {
        let mut stepper = RungeKutta4::new(exec.clone());
        integrate_n_steps(&mut stepper, &system, x, 0.0, dt, steps, |_, _| {}).map(|_| ())
    })?;

    report("explicit Euler", &euler);
    report("classical Runge-Kutta 4", &rk4);
    Ok(())
}
