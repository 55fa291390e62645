//! Padded ELL sparse storage.
//!
//! Every row gets the same number of slots (the maximum row population);
//! short rows are padded with explicit zeros. The slot arrays are stored
//! column-major — slot s of row r lives at `s * n_rows + r` — so walking
//! one slot across all rows is a contiguous sweep. Padding entries carry
//! value 0 and point a row back at its own index, keeping every stored
//! column in range without affecting any product.

use crate::core::Algebra;
use crate::linalg::SparseCsr;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseEll {
    n_rows: usize,
    n_cols: usize,
    width: usize,
    col_idx: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseEll {
    /// Converts CSR storage: slot k of a row holds that row's k-th stored
    /// entry (same order), remaining slots are padding.
    pub fn from_csr(csr: &SparseCsr) -> Self {
        let n_rows = csr.n_rows();
        let n_cols = csr.n_cols();
        let width = (0..n_rows)
            .map(|r| csr.row(r).0.len())
            .max()
            .unwrap_or(0);
        let mut col_idx = vec![0u32; n_rows * width];
        let mut vals = vec![0.0; n_rows * width];
        for r in 0..n_rows {
            let (cols, values) = csr.row(r);
            for s in 0..width {
                let slot = s * n_rows + r;
                if s < cols.len() {
                    col_idx[slot] = cols[s];
                    vals[slot] = values[s];
                } else {
                    // Self-referencing padding, clamped into range for
                    // matrices narrower than they are tall.
                    col_idx[slot] = r.min(n_cols - 1) as u32;
                }
            }
        }
        Self {
            n_rows,
            n_cols,
            width,
            col_idx,
            vals,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Slots per row (the maximum row population of the source matrix).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn col_idx(&self) -> &[u32] {
        &self.col_idx
    }

    pub fn vals(&self) -> &[f64] {
        &self.vals
    }

    /// Stored entries of row `r` in slot order, padding included.
    pub fn row_slots(&self, r: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        (0..self.width).map(move |s| {
            let slot = s * self.n_rows + r;
            (self.col_idx[slot], self.vals[slot])
        })
    }

    /// Number of padding slots in row `r` (zero-valued tail entries).
    pub fn padding_of_row(&self, r: usize, csr: &SparseCsr) -> usize {
        self.width - csr.row(r).0.len()
    }

    /// `y = A x`, accumulating slot order 0..width-1 within each row.
    /// Padding contributes `0 * x[row]`, which never changes the sum.
    pub fn spmv_into<A: Algebra>(&self, exec: &A, y: &mut [f64], x: &[f64]) -> Result<()> {
        if x.len() != self.n_cols {
            return Err(Error::LengthMismatch {
                expected: self.n_cols,
                got: x.len(),
            });
        }
        if y.len() != self.n_rows {
            return Err(Error::LengthMismatch {
                expected: self.n_rows,
                got: y.len(),
            });
        }
        let n_rows = self.n_rows;
        exec.for_each_indexed(y, &|r, t| {
            let mut acc = 0.0;
            for s in 0..self.width {
                let slot = s * n_rows + r;
                acc += self.vals[slot] * x[self.col_idx[slot] as usize];
            }
            *t = acc;
        });
        Ok(())
    }

    /// Serial convenience wrapper allocating the output.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n_rows];
        self.spmv_into(&crate::backends::SerialBackend, &mut y, x)?;
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_product_returns_input() {
        let ell = SparseCsr::identity(4).to_ell();
        assert_eq!(ell.width(), 1);
        let x = [0.5, -1.5, 2.5, -3.5];
        let y = ell.spmv(&x).unwrap();
        for (yi, xi) in y.iter().zip(&x) {
            assert_eq!(yi.to_bits(), xi.to_bits());
        }
    }

    #[test]
    fn diagonal_matrix_has_no_padding() {
        let csr = SparseCsr::from_rows(3, &[vec![(0, 2.0)], vec![(1, 3.0)], vec![(2, 4.0)]])
            .unwrap();
        let ell = csr.to_ell();
        assert_eq!(ell.width(), 1);
        assert!((0..3).all(|r| ell.padding_of_row(r, &csr) == 0));
    }

    #[test]
    fn empty_matrix_has_zero_width() {
        let csr = SparseCsr::from_rows(4, &[vec![], vec![]]).unwrap();
        let ell = csr.to_ell();
        assert_eq!(ell.width(), 0);
        assert_eq!(ell.spmv(&[1.0; 4]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn structurally_empty_row_products_are_zero() {
        let csr =
            SparseCsr::from_rows(3, &[vec![(0, 1.0), (1, 2.0)], vec![], vec![(2, 5.0)]]).unwrap();
        let ell = csr.to_ell();
        let y = ell.spmv(&[10.0, 100.0, 1000.0]).unwrap();
        assert_eq!(y[1], 0.0);
        assert_relative_eq!(y[0], 210.0, max_relative = 1e-15);
        assert_relative_eq!(y[2], 5000.0, max_relative = 1e-15);
    }

    #[test]
    fn layout_is_column_major_with_self_referencing_padding() {
        // Row 0 holds two entries, row 1 holds one: width 2, and row 1's
        // second slot is padding pointing at column 1 with value 0.
        let csr = SparseCsr::from_rows(2, &[vec![(0, 7.0), (1, 8.0)], vec![(0, 9.0)]]).unwrap();
        let ell = csr.to_ell();
        assert_eq!(ell.width(), 2);
        // Slot-major arrays: [slot0 row0, slot0 row1, slot1 row0, slot1 row1].
        assert_eq!(ell.col_idx(), &[0, 0, 1, 1]);
        assert_eq!(ell.vals(), &[7.0, 9.0, 8.0, 0.0]);
        assert_eq!(ell.padding_of_row(0, &csr), 0);
        assert_eq!(ell.padding_of_row(1, &csr), 1);
    }

    #[test]
    fn csr_and_ell_products_agree_on_an_irregular_matrix() {
        let rows: Vec<Vec<(usize, f64)>> = (0..40)
            .map(|r| {
                (0..40)
                    .filter(|c| (r * 7 + c * 3) % 11 == 0)
                    .map(|c| (c, ((r + 1) * (c + 2)) as f64 * 0.01))
                    .collect()
            })
            .collect();
        let csr = SparseCsr::from_rows(40, &rows).unwrap();
        let ell = csr.to_ell();
        let x: Vec<f64> = (0..40).map(|i| ((i * i) % 17) as f64 - 8.0).collect();
        let yc = csr.spmv(&x).unwrap();
        let ye = ell.spmv(&x).unwrap();
        for (a, b) in yc.iter().zip(&ye) {
            assert_relative_eq!(a, b, max_relative = 1e-14);
        }
    }

    #[test]
    fn product_rejects_mismatched_vector_lengths() {
        let ell = SparseCsr::identity(3).to_ell();
        assert!(matches!(
            ell.spmv(&[1.0]),
            Err(Error::LengthMismatch { expected: 3, got: 1 })
        ));
    }
}
