//! The three benchmark systems, each evaluable in fused or unfused form
//! on any execution backend: an ensemble of independent Lorenz systems, a
//! chain of nearest-neighbor coupled phase oscillators, and a disordered
//! nonlinear oscillator lattice driven by a sparse operator.

mod disorder;
mod lattice;
mod lorenz;
mod phase_chain;

pub use disorder::{make_disorder, seeded_uniform};
pub use lattice::{
    LatticeForce, LatticeParams, LatticeSystem, DEFAULT_BETA, DEFAULT_DISORDER_RANGE,
    DEFAULT_Q_AMPLITUDE,
};
pub use lorenz::{LorenzEnsemble, LorenzRhs, DEFAULT_B, DEFAULT_R_RANGE, DEFAULT_SIGMA};
pub use phase_chain::{PhaseChain, PhaseChainRhs};

use crate::Error;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Names the benchmark system a run exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemId {
    /// First-order Lorenz ensemble, three components per member.
    Lorenz,
    /// First-order oscillator chain with stencil coupling.
    Phase,
    /// Second-order disordered lattice with a sparse linear part.
    Lattice,
}

impl SystemId {
    pub const ALL: [SystemId; 3] = [SystemId::Lorenz, SystemId::Phase, SystemId::Lattice];

    pub fn name(&self) -> &'static str {
        match self {
            SystemId::Lorenz => "lorenz",
            SystemId::Phase => "phase",
            SystemId::Lattice => "lattice",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lorenz" => Ok(SystemId::Lorenz),
            "phase" => Ok(SystemId::Phase),
            "lattice" => Ok(SystemId::Lattice),
            other => Err(Error::UnknownSystem(other.to_string())),
        }
    }
}
