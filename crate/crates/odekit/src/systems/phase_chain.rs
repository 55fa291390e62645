//! Chain of nearest-neighbor coupled phase oscillators:
//!
//! ```text
//! dphi[i] = omega[i] + sin(phi[i+1] - phi[i]) + sin(phi[i] - phi[i-1])
//! ```
//!
//! with clamped chain ends (the missing neighbor replicates the end value,
//! so its coupling term is sin(0) = 0). The coupling is exactly the
//! radius-one stencil from the linear-algebra module, realized here as
//! shifted vector reads so that even the neighbor-coupled derivative runs
//! as a single fused pass.

use crate::backends::{Bindings, Expr, FusedGroup, RhsMode, Slot, Statement, UnfusedProgram};
use crate::core::{Algebra, StateVector};
use crate::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

const OMEGA: Slot = Slot(0);
const PHI: Slot = Slot(1);
const DPHI: Slot = Slot(2);
const SLOT_COUNT: usize = 3;

/// The two sine coupling terms around element i, built from clamped
/// shifted reads of the phase vector.
fn coupling() -> Expr {
    let right = (Expr::var_shifted(PHI, 1) - Expr::var(PHI)).sin();
    let left = (Expr::var(PHI) - Expr::var_shifted(PHI, -1)).sin();
    right + left
}

pub struct PhaseChain {
    omega: StateVector,
    fused: FusedGroup,
    unfused: UnfusedProgram,
    passes: AtomicU64,
}

impl PhaseChain {
    pub fn new(omega: StateVector) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::InvalidConfig(
                "a phase chain needs at least one oscillator".into(),
            ));
        }
        // Fused: the whole derivative in one statement, one pass.
        let fused = FusedGroup::new(
            SLOT_COUNT,
            vec![Statement::new(DPHI, Expr::var(OMEGA) + coupling())],
        )?;
        // Unfused: the stencil pass first, then the velocity added in a
        // second pass reading the target back (unshifted, hence legal).
        // The element arithmetic is identical to the fused statement, so
        // the two modes agree bitwise.
        let unfused = UnfusedProgram::new(
            SLOT_COUNT,
            vec![
                Statement::new(DPHI, coupling()),
                Statement::new(DPHI, Expr::var(OMEGA) + Expr::var(DPHI)),
            ],
        )?;
        Ok(Self {
            omega,
            fused,
            unfused,
            passes: AtomicU64::new(0),
        })
    }

    /// Chain of `n` oscillators sharing one phase velocity.
    pub fn uniform_velocity(n: usize, omega: f64) -> Result<Self> {
        Self::new(vec![omega; n].into())
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// All phases at zero.
    pub fn default_initial_state(&self) -> StateVector {
        StateVector::zeros(self.len())
    }

    /// Elementwise passes executed so far (1 per fused call, 2 per
    /// unfused call).
    pub fn passes(&self) -> u64 {
        self.passes.load(Ordering::Relaxed)
    }

    /// The derivative statements as the fused group runs them, for
    /// traffic-accounting cross-checks.
    pub fn fused_statements(&self) -> &[Statement] {
        self.fused.statements()
    }

    /// The derivative statements as the unfused program runs them.
    pub fn unfused_statements(&self) -> &[Statement] {
        self.unfused.statements()
    }

    /// Derivative of all phases; `t` is unused (autonomous).
    pub fn rhs<A: Algebra>(
        &self,
        exec: &A,
        mode: RhsMode,
        phi: &[f64],
        dphidt: &mut [f64],
        _t: f64,
    ) -> Result<()> {
        let n = self.len();
        for len in [phi.len(), dphidt.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        let mut bindings = Bindings::new(SLOT_COUNT);
        bindings.bind_read(OMEGA, &self.omega);
        bindings.bind_read(PHI, phi);
        bindings.bind_write(DPHI, dphidt);
        let passes = match mode {
            RhsMode::Fused => self.fused.execute(&mut bindings, exec)?,
            RhsMode::Unfused => self.unfused.execute(&mut bindings, exec)?,
        };
        self.passes.fetch_add(passes, Ordering::Relaxed);
        Ok(())
    }
}

/// Borrowed view implementing the generic first-order interface.
pub struct PhaseChainRhs<'a, A> {
    system: &'a PhaseChain,
    exec: &'a A,
    mode: RhsMode,
}

impl<'a, A: Algebra> PhaseChainRhs<'a, A> {
    pub fn new(system: &'a PhaseChain, exec: &'a A, mode: RhsMode) -> Self {
        Self { system, exec, mode }
    }
}

impl<A: Algebra> crate::steppers::System for PhaseChainRhs<'_, A> {
    fn dim(&self) -> usize {
        self.system.len()
    }

    fn rhs(&self, x: &[f64], dxdt: &mut [f64], t: f64) -> Result<()> {
        self.system.rhs(self.exec, self.mode, x, dxdt, t)
    }
}
