//! The same sparse operator in two storage formats.
//!
//! The disordered-lattice coupling matrix is assembled once in CSR
//! (row-pointer) form, converted to ELL (fixed-width, column-major) form,
//! and both are applied to the same vector. ELL pads short rows with
//! explicit zeros whose column index points back at the row itself, so the
//! padded entries are harmless by construction.

use odekit::linalg::build_lattice_operator;
use odekit::prelude::*;

fn main() -> Result<()> {
    let (nx, ny) = (4, 3);
    let omega2 = vec![1.0; nx * ny];
    let operator = build_lattice_operator(nx, ny, &omega2)?;
    let csr = operator.csr();
    let ell = operator.ell();

    println!(
        "{nx}x{ny} lattice operator: {} rows, {} nonzeros, ELL width {}",
        csr.n_rows(),
        csr.nnz(),
        ell.width()
    );
    println!();
    println!("row populations (corners couple to 2 neighbours, edges 3, interior 4):");
    for row in 0..csr.n_rows() {
        let (cols, vals) = csr.row(row);
        let rendered: Vec<String> = cols
            .iter()
            .zip(vals)
            .map(|(c, v)| format!("({c}, {v:+.1})"))
            .collect();
        println!("  row {row:>2}: {}", rendered.join(" "));
    }

    let exec = ExecBackend::serial();
    let x: Vec<f64> = (0..csr.n_rows()).map(|i| (i as f64 * 0.37).sin()).collect();
    let mut y_csr = vec![0.0; csr.n_rows()];
    let mut y_ell = vec![0.0; csr.n_rows()];
    csr.spmv_into(&exec, &mut y_csr, &x)?;
    ell.spmv_into(&exec, &mut y_ell, &x)?;

    let worst = y_csr
        .iter()
        .zip(&y_ell)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!();
    println!("CSR vs ELL on a shared input: largest difference {worst:.2e}");
    Ok(())
}
