//! Backend-agnostic ODE integration with deterministic parallelism and
//! kernel fusion.
//!
//! The building blocks separate *what* is computed from *how* the data is
//! traversed:
//!
//! - [`core`] defines state containers and the [`core::Algebra`] iteration
//!   contract steppers are written against, plus the fixed-order
//!   scale-and-sum kernels that make results bitwise reproducible.
//! - [`backends`] provides the traversal engines: a serial scheduler, a
//!   deterministically chunked thread-pool scheduler, and an expression
//!   engine that can execute a group of elementwise statements in a single
//!   fused pass over the data.
//! - [`steppers`] implements explicit Euler, classical Runge–Kutta 4, and
//!   the symplectic Störmer–Verlet scheme, along with a fixed-step driver.
//! - [`linalg`] supplies CSR/ELL sparse matrices, a clamped-boundary
//!   nearest-neighbour stencil, and the disordered-lattice operator.
//! - [`systems`] packages three ready-made right-hand sides: a Lorenz
//!   parameter-sweep ensemble, a nearest-neighbour coupled phase chain,
//!   and a nonlinear disordered oscillator lattice.
//! - [`bench`] and [`cli`] wrap everything in a timing harness (median-of-N
//!   with a bytes-moved throughput model) and a command-line front end.
//!
//! Every backend produces bitwise-identical results for the same inputs;
//! swapping serial for parallel execution, or three-pass for single-pass
//! fused evaluation, never changes a single bit of the trajectory.
//!
//! ```
//! use odekit::prelude::*;
//!
//! // Integrate the classic Lorenz system (a one-member ensemble).
//! let system = LorenzEnsemble::with_r_sweep(1)?;
//! let exec = ExecBackend::serial();
//! let rhs = LorenzRhs::new(&system, &exec, RhsMode::Fused);
//! let mut state = system.default_initial_state();
//! let mut stepper = RungeKutta4::new(exec.clone());
//! integrate_n_steps(&mut stepper, &rhs, state.as_flat_mut(), 0.0, 0.01, 100, |_, _| {})?;
//! assert!(state.as_flat().iter().all(|v| v.is_finite()));
//! # Ok::<(), odekit::Error>(())
//! ```

pub mod backends;
pub mod bench;
pub mod cli;
pub mod core;
pub mod linalg;
pub mod steppers;
pub mod systems;

mod error;
pub use error::{Error, Result};

/// One-stop imports for typical use: backends, steppers, systems, and the
/// state types they operate on.
pub mod prelude {
    pub use crate::backends::{BackendKind, ExecBackend, RhsMode};
    pub use crate::core::{Algebra, MultiState, ScaleSum, StateVector};
    pub use crate::steppers::{
        integrate_n_steps, ExplicitEuler, PhaseState, RungeKutta4, StormerVerlet,
    };
    pub use crate::systems::{
        LatticeForce, LatticeParams, LorenzEnsemble, LorenzRhs, PhaseChain, PhaseChainRhs,
        SystemId,
    };
    pub use crate::{Error, Result};
}
