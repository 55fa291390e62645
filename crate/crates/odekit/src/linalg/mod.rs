//! Linear operators used by the benchmark systems: a radius-one stencil
//! with clamped ends, and CSR/ELL sparse matrices with matrix-vector
//! products. Everything here is immutable after construction; the products
//! take an execution backend because rows are independent and can be
//! chunked like any other pass.

mod csr;
mod ell;
mod lattice;
mod stencil;

pub use csr::SparseCsr;
pub use ell::SparseEll;
pub use lattice::{build_lattice_operator, LatticeOperator};
pub use stencil::{phase_coupling_stencil, Stencil1D};
