//! Disordered nonlinear oscillator lattice.
//!
//! Second-order dynamics on an `nx x ny` grid:
//!
//! ```text
//! dq[ij] = p[ij]
//! dp[ij] = -omega2[ij] q[ij] - beta q[ij]^3 + (discrete Laplacian of q)[ij]
//! ```
//!
//! The linear part is the sparse lattice operator `A`; the force splits
//! into one sparse matrix-vector pass and an elementwise tail
//! `dp = A q - beta * q^3`. The tail runs fused (one pass) or unfused
//! (cube first, then combine — two passes), always bitwise-equal.

use crate::backends::{Bindings, Expr, FusedGroup, RhsMode, Slot, Statement, UnfusedProgram};
use crate::core::{Algebra, StateVector};
use crate::linalg::{build_lattice_operator, LatticeOperator};
use crate::steppers::PhaseState;
use crate::systems::disorder::make_disorder;
use crate::{Error, Result};
use std::cell::RefCell;
use std::sync::atomic::{AtomicU64, Ordering};

const Q: Slot = Slot(0);
const Y: Slot = Slot(1);
const TMP: Slot = Slot(2);
const DP: Slot = Slot(3);
const SLOT_COUNT: usize = 4;

/// Default disorder range for the squared frequencies.
pub const DEFAULT_DISORDER_RANGE: (f64, f64) = (0.5, 1.5);
/// Default nonlinearity strength.
pub const DEFAULT_BETA: f64 = 1.0;
/// Default amplitude of the random initial displacement field.
pub const DEFAULT_Q_AMPLITUDE: f64 = 0.1;

/// Everything needed to reconstruct a lattice exactly: grid extents,
/// nonlinearity, disorder seed and disorder range.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeParams {
    pub nx: usize,
    pub ny: usize,
    pub beta: f64,
    pub seed: u64,
    pub w_lo: f64,
    pub w_hi: f64,
}

impl LatticeParams {
    pub fn new(nx: usize, ny: usize, seed: u64) -> Self {
        let (w_lo, w_hi) = DEFAULT_DISORDER_RANGE;
        Self {
            nx,
            ny,
            beta: DEFAULT_BETA,
            seed,
            w_lo,
            w_hi,
        }
    }

    pub fn build(&self) -> Result<LatticeSystem> {
        let omega2 = make_disorder(self.seed, self.nx, self.ny, self.w_lo, self.w_hi)?;
        LatticeSystem::with_omega2(self.nx, self.ny, self.beta, omega2)
    }
}

struct Scratch {
    y: Vec<f64>,
    tmp: Vec<f64>,
}

pub struct LatticeSystem {
    nx: usize,
    ny: usize,
    beta: f64,
    omega2: Vec<f64>,
    operator: LatticeOperator,
    scratch: RefCell<Scratch>,
    fused: FusedGroup,
    unfused: UnfusedProgram,
    passes: AtomicU64,
}

impl LatticeSystem {
    /// Builds the lattice from an explicit squared-frequency field.
    pub fn with_omega2(nx: usize, ny: usize, beta: f64, omega2: Vec<f64>) -> Result<Self> {
        let operator = build_lattice_operator(nx, ny, &omega2)?;
        // Elementwise tail after the sparse product (bound to slot Y):
        // fused computes dp = y - beta*(q*q*q) in one statement, unfused
        // stages the cube through TMP with the same per-element ops.
        let fused = FusedGroup::new(
            SLOT_COUNT,
            vec![Statement::new(
                DP,
                Expr::var(Y) - Expr::constant(beta) * Expr::var(Q).pow3(),
            )],
        )?;
        let unfused = UnfusedProgram::new(
            SLOT_COUNT,
            vec![
                Statement::new(TMP, Expr::var(Q).pow3()),
                Statement::new(DP, Expr::var(Y) - Expr::constant(beta) * Expr::var(TMP)),
            ],
        )?;
        Ok(Self {
            nx,
            ny,
            beta,
            omega2,
            operator,
            scratch: RefCell::new(Scratch {
                y: Vec::new(),
                tmp: Vec::new(),
            }),
            fused,
            unfused,
            passes: AtomicU64::new(0),
        })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn n_nodes(&self) -> usize {
        self.nx * self.ny
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn omega2(&self) -> &[f64] {
        &self.omega2
    }

    pub fn operator(&self) -> &LatticeOperator {
        &self.operator
    }

    /// Small random displacements, zero momenta. The displacement draw
    /// uses `seed + 1` so it never overlaps the disorder stream that a
    /// `LatticeParams` with the same seed produces.
    pub fn default_initial_state(&self, seed: u64) -> PhaseState {
        let q: StateVector = crate::systems::disorder::seeded_uniform(
            seed.wrapping_add(1),
            self.n_nodes(),
            -DEFAULT_Q_AMPLITUDE,
            DEFAULT_Q_AMPLITUDE,
        )
        .into();
        PhaseState::new(q, StateVector::zeros(self.n_nodes()))
            .expect("displacement and momentum fields have equal length")
    }

    /// Total energy `sum(p^2)/2 - q.A.q/2 + beta*sum(q^4)/4`. The linear
    /// part `-A` is positive definite (diagonal dominance with positive
    /// frequencies), so the energy is bounded below and conserved flows
    /// stay bounded.
    pub fn energy(&self, state: &PhaseState) -> f64 {
        let kinetic: f64 = state.p.iter().map(|p| p * p).sum::<f64>() / 2.0;
        let aq = self
            .operator
            .csr()
            .spmv(&state.q)
            .expect("state length is validated by construction");
        let coupling: f64 = state.q.iter().zip(&aq).map(|(q, a)| q * a).sum::<f64>() / 2.0;
        let quartic: f64 = self.beta * state.q.iter().map(|q| q.powi(4)).sum::<f64>() / 4.0;
        kinetic - coupling + quartic
    }

    /// Passes executed so far (2 per fused call, 3 per unfused call; the
    /// sparse product counts as one pass in both modes).
    pub fn passes(&self) -> u64 {
        self.passes.load(Ordering::Relaxed)
    }

    /// The elementwise tail statements of the fused mode (the sparse
    /// product pass is not statement-based), for traffic-accounting
    /// cross-checks.
    pub fn fused_statements(&self) -> &[Statement] {
        self.fused.statements()
    }

    /// The elementwise tail statements of the unfused mode.
    pub fn unfused_statements(&self) -> &[Statement] {
        self.unfused.statements()
    }

    /// Momentum derivative `dp = A q - beta q^3`.
    pub fn rhs_dp<A: Algebra>(
        &self,
        exec: &A,
        mode: RhsMode,
        q: &[f64],
        dp: &mut [f64],
    ) -> Result<()> {
        let n = self.n_nodes();
        for len in [q.len(), dp.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        let mut scratch = self.scratch.borrow_mut();
        let Scratch { y, tmp } = &mut *scratch;
        if y.len() != n {
            y.resize(n, 0.0);
        }
        if tmp.len() != n {
            tmp.resize(n, 0.0);
        }

        self.operator.csr().spmv_into(exec, y, q)?;

        let mut bindings = Bindings::new(SLOT_COUNT);
        bindings.bind_read(Q, q);
        bindings.bind_read(Y, y);
        bindings.bind_write(DP, dp);
        let tail_passes = match mode {
            RhsMode::Fused => self.fused.execute(&mut bindings, exec)?,
            RhsMode::Unfused => {
                bindings.bind_write(TMP, tmp);
                self.unfused.execute(&mut bindings, exec)?
            }
        };
        self.passes.fetch_add(1 + tail_passes, Ordering::Relaxed);
        Ok(())
    }
}

/// Borrowed view implementing the separable Hamiltonian interface.
pub struct LatticeForce<'a, A> {
    system: &'a LatticeSystem,
    exec: &'a A,
    mode: RhsMode,
}

impl<'a, A: Algebra> LatticeForce<'a, A> {
    pub fn new(system: &'a LatticeSystem, exec: &'a A, mode: RhsMode) -> Self {
        Self { system, exec, mode }
    }
}

impl<A: Algebra> crate::steppers::HamiltonianSystem for LatticeForce<'_, A> {
    fn dim(&self) -> usize {
        self.system.n_nodes()
    }

    fn rhs_dp(&self, q: &[f64], dp: &mut [f64]) -> Result<()> {
        self.system.rhs_dp(self.exec, self.mode, q, dp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{ExecBackend, SerialBackend};
    use crate::steppers::{integrate_n_steps, StormerVerlet};
    use approx::assert_relative_eq;

    fn eight_by_eight(beta: f64) -> LatticeSystem {
        LatticeParams {
            beta,
            ..LatticeParams::new(8, 8, 42)
        }
        .build()
        .unwrap()
    }

    fn eval(sys: &LatticeSystem, mode: RhsMode, q: &[f64]) -> Vec<f64> {
        let mut dp = vec![0.0; q.len()];
        sys.rhs_dp(&SerialBackend, mode, q, &mut dp).unwrap();
        dp
    }

    #[test]
    fn zero_displacement_gives_zero_force() {
        let sys = eight_by_eight(1.0);
        let dp = eval(&sys, RhsMode::Fused, &vec![0.0; 64]);
        assert!(dp.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_node_matches_hand_value() {
        // 1x1 grid, omega2 = 2, beta = 1, q = 1: A = [-6], so
        // dp = -6*1 - 1*1^3 = -7.
        let sys = LatticeSystem::with_omega2(1, 1, 1.0, vec![2.0]).unwrap();
        assert_eq!(eval(&sys, RhsMode::Fused, &[1.0]), vec![-7.0]);
        assert_eq!(eval(&sys, RhsMode::Unfused, &[1.0]), vec![-7.0]);
    }

    #[test]
    fn force_matches_dense_oracle() {
        let sys = eight_by_eight(0.5);
        let q: Vec<f64> = (0..64).map(|i| ((i as f64) * 0.37).sin() * 0.8).collect();
        let dp = eval(&sys, RhsMode::Fused, &q);
        // Dense oracle: brute-force A*q from triplets plus a scalar cube.
        let mut expected = vec![0.0; 64];
        for r in 0..64 {
            let (cols, vals) = sys.operator().csr().row(r);
            for (c, v) in cols.iter().zip(vals) {
                expected[r] += v * q[*c as usize];
            }
            expected[r] -= 0.5 * q[r] * q[r] * q[r];
        }
        for (a, b) in dp.iter().zip(&expected) {
            assert_relative_eq!(a, b, max_relative = 1e-14, epsilon = 1e-14);
        }
    }

    #[test]
    fn fused_and_unfused_agree_bitwise() {
        let sys = eight_by_eight(1.0);
        let q: Vec<f64> = (0..64).map(|i| ((i as f64) * 1.7).cos() * 0.3).collect();
        let a = eval(&sys, RhsMode::Fused, &q);
        let b = eval(&sys, RhsMode::Unfused, &q);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn parallel_execution_is_bitwise_identical_to_serial() {
        let sys = LatticeParams::new(17, 19, 7).build().unwrap();
        let n = sys.n_nodes();
        let q: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.23).sin() * 0.2).collect();
        let serial = eval(&sys, RhsMode::Fused, &q);
        let mut parallel = vec![0.0; n];
        sys.rhs_dp(&ExecBackend::parallel(4).unwrap(), RhsMode::Fused, &q, &mut parallel)
            .unwrap();
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn pass_counter_distinguishes_modes() {
        let sys = LatticeSystem::with_omega2(2, 2, 1.0, vec![1.0; 4]).unwrap();
        let q = [0.1; 4];
        let mut dp = [0.0; 4];
        sys.rhs_dp(&SerialBackend, RhsMode::Fused, &q, &mut dp).unwrap();
        assert_eq!(sys.passes(), 2);
        sys.rhs_dp(&SerialBackend, RhsMode::Unfused, &q, &mut dp).unwrap();
        assert_eq!(sys.passes(), 5);
    }

    #[test]
    fn disorder_field_stays_in_range_and_reproduces() {
        let a = LatticeParams::new(6, 6, 9).build().unwrap();
        let b = LatticeParams::new(6, 6, 9).build().unwrap();
        assert!(a.omega2().iter().all(|&w| (0.5..=1.5).contains(&w)));
        for (x, y) in a.omega2().iter().zip(b.omega2()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        let sa = a.default_initial_state(3);
        let sb = b.default_initial_state(3);
        assert_eq!(sa, sb);
        assert!(sa.q.iter().all(|&q| q.abs() <= 0.1));
        assert!(sa.p.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn linear_lattice_energy_stays_bounded_under_verlet() {
        // beta = 0 makes the system linear; symplectic integration keeps
        // H within O(dt^2) of its initial value indefinitely.
        let sys = LatticeParams {
            beta: 0.0,
            ..LatticeParams::new(6, 6, 11)
        }
        .build()
        .unwrap();
        let exec = ExecBackend::serial();
        let force = LatticeForce::new(&sys, &exec, RhsMode::Fused);
        let mut state = sys.default_initial_state(11);
        let e0 = sys.energy(&state);
        assert!(e0 > 0.0);
        let mut stepper = StormerVerlet::new(ExecBackend::serial());
        let mut worst = 0.0f64;
        integrate_n_steps(&mut stepper, &force, &mut state, 0.0, 0.02, 2000, |s, _| {
            worst = worst.max(((sys.energy(s) - e0) / e0).abs());
        })
        .unwrap();
        assert!(worst < 1e-3, "relative energy deviation {worst}");
    }

    #[test]
    fn nonlinear_lattice_energy_stays_bounded_under_verlet() {
        let sys = eight_by_eight(1.0);
        let exec = ExecBackend::serial();
        let force = LatticeForce::new(&sys, &exec, RhsMode::Unfused);
        let mut state = sys.default_initial_state(5);
        let e0 = sys.energy(&state);
        let mut stepper = StormerVerlet::new(ExecBackend::serial());
        let mut worst = 0.0f64;
        integrate_n_steps(&mut stepper, &force, &mut state, 0.0, 0.02, 1000, |s, _| {
            worst = worst.max(((sys.energy(s) - e0) / e0).abs());
        })
        .unwrap();
        assert!(worst < 1e-3, "relative energy deviation {worst}");
    }

    #[test]
    fn dimension_errors_are_reported() {
        let sys = LatticeSystem::with_omega2(2, 3, 1.0, vec![1.0; 6]).unwrap();
        let mut dp = [0.0; 6];
        assert!(matches!(
            sys.rhs_dp(&SerialBackend, RhsMode::Fused, &[0.0; 5], &mut dp),
            Err(Error::LengthMismatch { expected: 6, got: 5 })
        ));
        assert!(LatticeSystem::with_omega2(2, 3, 1.0, vec![1.0; 5]).is_err());
    }
}
