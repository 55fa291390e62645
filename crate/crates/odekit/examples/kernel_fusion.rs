//! Fused versus unfused right-hand-side evaluation.
//!
//! The Lorenz derivative is three coupled assignments. Evaluated naively
//! they make three passes over the ensemble state; the expression engine
//! can execute all three in a single pass, touching every input stream
//! once. Both routes produce bitwise-identical derivatives — fusion
//! changes traffic, never arithmetic.

use odekit::core::MultiState;
use odekit::prelude::*;

fn main() -> Result<()> {
    let m = 100_000;
    let system = LorenzEnsemble::with_r_sweep(m)?;
    let exec = ExecBackend::serial();
    let state = system.default_initial_state();

    let mut fused = MultiState::zeros(3, m);
    let mut unfused = MultiState::zeros(3, m);

    let before = system.passes();
    system.rhs(&exec, RhsMode::Fused, &state, &mut fused, 0.0)?;
    let fused_passes = system.passes() - before;

    let before = system.passes();
    system.rhs(&exec, RhsMode::Unfused, &state, &mut unfused, 0.0)?;
    let unfused_passes = system.passes() - before;

    println!("Lorenz ensemble, {m} members, one derivative evaluation:");
    println!("  fused   : {fused_passes} pass over the state");
    println!("  unfused : {unfused_passes} passes over the state");

    let identical = fused
        .as_flat()
        .iter()
        .zip(unfused.as_flat())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    println!("  outputs bitwise identical: {identical}");
    assert!(identical);

    // Time both modes through the full stepper for a rough feel. This is
    // a demonstration, not a benchmark — the bench command does it right.
    for (label, mode) in [("fused", RhsMode::Fused), ("unfused", RhsMode::Unfused)] {
        let rhs = LorenzRhs::new(&system, &exec, mode);
        let mut work = system.default_initial_state();
        let mut stepper = RungeKutta4::new(exec.clone());
        let start = std::time::Instant::now();
        integrate_n_steps(&mut stepper, &rhs, work.as_flat_mut(), 0.0, 0.01, 50, |_, _| {})?;
        println!("  50 steps, {label:>7}: {:?}", start.elapsed());
    }
    Ok(())
}
