//! Linear part of the nonlinear oscillator lattice.
//!
//! On an `Nx x Ny` grid, the operator couples each node to its four
//! neighbors through a discrete Laplacian and to itself through its local
//! frequency: row (i, j) carries diagonal `-omega2[i,j] - 4` plus `+1` per
//! existing neighbor. Missing neighbors at the boundary are simply dropped
//! (a zero Dirichlet border). Nodes are numbered row-major with j fastest:
//! node (i, j) is row `i * ny + j`.

use crate::linalg::{SparseCsr, SparseEll};
use crate::{Error, Result};

/// The lattice coupling matrix in both sparse formats. The CSR form drives
/// serial products; the ELL conversion is kept alongside because its padded
/// layout has a different bytes-per-row profile worth benchmarking.
#[derive(Debug, Clone)]
pub struct LatticeOperator {
    nx: usize,
    ny: usize,
    csr: SparseCsr,
    ell: SparseEll,
}

impl LatticeOperator {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn n_nodes(&self) -> usize {
        self.nx * self.ny
    }

    pub fn csr(&self) -> &SparseCsr {
        &self.csr
    }

    pub fn ell(&self) -> &SparseEll {
        &self.ell
    }
}

/// Builds the operator for an `nx x ny` grid with per-node squared
/// frequencies `omega2` (row-major, j fastest).
pub fn build_lattice_operator(nx: usize, ny: usize, omega2: &[f64]) -> Result<LatticeOperator> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidMatrix(format!(
            "lattice dimensions must be positive, got {nx} x {ny}"
        )));
    }
    let n = nx * ny;
    if omega2.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: omega2.len(),
        });
    }

    let node = |i: usize, j: usize| i * ny + j;
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut col_idx = Vec::with_capacity(5 * n);
    let mut vals = Vec::with_capacity(5 * n);
    row_ptr.push(0);
    for i in 0..nx {
        for j in 0..ny {
            // Emit in ascending column order: up, left, diagonal, right, down.
            if i > 0 {
                col_idx.push(node(i - 1, j) as u32);
                vals.push(1.0);
            }
            if j > 0 {
                col_idx.push(node(i, j - 1) as u32);
                vals.push(1.0);
            }
            col_idx.push(node(i, j) as u32);
            vals.push(-omega2[node(i, j)] - 4.0);
            if j + 1 < ny {
                col_idx.push(node(i, j + 1) as u32);
                vals.push(1.0);
            }
            if i + 1 < nx {
                col_idx.push(node(i + 1, j) as u32);
                vals.push(1.0);
            }
            row_ptr.push(col_idx.len());
        }
    }
    let csr = SparseCsr::new(n, n, row_ptr, col_idx, vals)?;
    let ell = csr.to_ell();
    Ok(LatticeOperator { nx, ny, csr, ell })
}
