//! Ensemble of independent Lorenz systems.
//!
//! Each member `m` integrates
//!
//! ```text
//! dX = sigma * (Y - X)
//! dY = R[m] * X - Y - X * Z
//! dZ = X * Y - b * Z
//! ```
//!
//! with a per-member Rayleigh parameter `R[m]`. The ensemble is laid out
//! component-contiguously — an X block, a Y block and a Z block of length
//! M — so every derivative is a uniform elementwise pass over the blocks.
//! Members never interact: chunked execution and the fused/unfused split
//! are both exact.

use crate::backends::{Bindings, FusedGroup, RhsMode, Slot, Statement, UnfusedProgram};
use crate::core::{Algebra, MultiState, StateVector};
use crate::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

const R: Slot = Slot(0);
const X: Slot = Slot(1);
const Y: Slot = Slot(2);
const Z: Slot = Slot(3);
const DX: Slot = Slot(4);
const DY: Slot = Slot(5);
const DZ: Slot = Slot(6);
const SLOT_COUNT: usize = 7;

/// Community-standard Prandtl parameter.
pub const DEFAULT_SIGMA: f64 = 10.0;
/// Community-standard geometry parameter.
pub const DEFAULT_B: f64 = 8.0 / 3.0;
/// The Rayleigh sweep covers `[0, 56]`; its midpoint is the classic
/// chaotic value 28.
pub const DEFAULT_R_RANGE: (f64, f64) = (0.0, 56.0);

/// The three derivative statements shared by both execution modes; the
/// fused group runs them in one pass, the unfused program as three.
fn statements(sigma: f64, b: f64) -> Vec<Statement> {
    use crate::backends::Expr as E;
    vec![
        Statement::new(DX, E::constant(sigma) * (E::var(Y) - E::var(X))),
        Statement::new(
            DY,
            E::var(R) * E::var(X) - E::var(Y) - E::var(X) * E::var(Z),
        ),
        Statement::new(DZ, E::var(X) * E::var(Y) - E::constant(b) * E::var(Z)),
    ]
}

pub struct LorenzEnsemble {
    sigma: f64,
    b: f64,
    r: StateVector,
    fused: FusedGroup,
    unfused: UnfusedProgram,
    passes: AtomicU64,
}

impl LorenzEnsemble {
    pub fn new(sigma: f64, b: f64, r: StateVector) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::InvalidConfig(
                "a Lorenz ensemble needs at least one member".into(),
            ));
        }
        if let Some(index) = crate::core::first_non_finite(&r) {
            return Err(Error::NonFinite {
                context: "lorenz R parameters",
                index,
            });
        }
        Ok(Self {
            sigma,
            b,
            r,
            fused: FusedGroup::new(SLOT_COUNT, statements(sigma, b))?,
            unfused: UnfusedProgram::new(SLOT_COUNT, statements(sigma, b))?,
            passes: AtomicU64::new(0),
        })
    }

    /// Ensemble of `m` members with default constants and the Rayleigh
    /// parameter swept across cell centers of `DEFAULT_R_RANGE`, so a
    /// single member lands exactly on the midpoint 28.
    pub fn with_r_sweep(m: usize) -> Result<Self> {
        let (lo, hi) = DEFAULT_R_RANGE;
        let r: StateVector = (0..m)
            .map(|k| lo + (k as f64 + 0.5) * (hi - lo) / m as f64)
            .collect();
        Self::new(DEFAULT_SIGMA, DEFAULT_B, r)
    }

    /// Members in the ensemble.
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// Every member starting from the classic (1, 1, 1) point.
    pub fn default_initial_state(&self) -> MultiState {
        let m = self.len();
        let mut state = MultiState::zeros(3, m);
        state.as_flat_mut().fill(1.0);
        state
    }

    /// Elementwise passes executed so far (1 per fused call, 3 per
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

    /// Derivative of the whole ensemble; `t` is unused (autonomous).
    pub fn rhs<A: Algebra>(
        &self,
        exec: &A,
        mode: RhsMode,
        x: &MultiState,
        dxdt: &mut MultiState,
        t: f64,
    ) -> Result<()> {
        let m = self.len();
        for state in [&*x, &*dxdt] {
            if state.components() != 3 || state.component_len() != m {
                return Err(Error::LengthMismatch {
                    expected: 3 * m,
                    got: state.components() * state.component_len(),
                });
            }
        }
        self.rhs_flat(exec, mode, x.as_flat(), dxdt.as_flat_mut(), t)
    }

    /// Same derivative over the flat `[X block | Y block | Z block]`
    /// layout steppers see. Allocation-free.
    pub fn rhs_flat<A: Algebra>(
        &self,
        exec: &A,
        mode: RhsMode,
        x: &[f64],
        dxdt: &mut [f64],
        _t: f64,
    ) -> Result<()> {
        let m = self.len();
        for len in [x.len(), dxdt.len()] {
            if len != 3 * m {
                return Err(Error::LengthMismatch {
                    expected: 3 * m,
                    got: len,
                });
            }
        }
        let (xs, rest) = x.split_at(m);
        let (ys, zs) = rest.split_at(m);
        let (dx, rest) = dxdt.split_at_mut(m);
        let (dy, dz) = rest.split_at_mut(m);

        let mut bindings = Bindings::new(SLOT_COUNT);
        bindings.bind_read(R, &self.r);
        bindings.bind_read(X, xs);
        bindings.bind_read(Y, ys);
        bindings.bind_read(Z, zs);
        bindings.bind_write(DX, dx);
        bindings.bind_write(DY, dy);
        bindings.bind_write(DZ, dz);

        let passes = match mode {
            RhsMode::Fused => self.fused.execute(&mut bindings, exec)?,
            RhsMode::Unfused => self.unfused.execute(&mut bindings, exec)?,
        };
        self.passes.fetch_add(passes, Ordering::Relaxed);
        Ok(())
    }
}

/// Borrowed view implementing the generic first-order interface over the
/// flat `[X block | Y block | Z block]` layout.
pub struct LorenzRhs<'a, A> {
    system: &'a LorenzEnsemble,
    exec: &'a A,
    mode: RhsMode,
}

impl<'a, A: Algebra> LorenzRhs<'a, A> {
    pub fn new(system: &'a LorenzEnsemble, exec: &'a A, mode: RhsMode) -> Self {
        Self { system, exec, mode }
    }
}

impl<A: Algebra> crate::steppers::System for LorenzRhs<'_, A> {
    fn dim(&self) -> usize {
        3 * self.system.len()
    }

    fn rhs(&self, x: &[f64], dxdt: &mut [f64], t: f64) -> Result<()> {
        self.system.rhs_flat(self.exec, self.mode, x, dxdt, t)
    }
}
