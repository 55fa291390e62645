//! Compressed sparse row storage.

use crate::core::Algebra;
use crate::linalg::SparseEll;
use crate::{Error, Result};
use std::fmt::Write as _;

/// Sparse matrix in CSR form: `row_ptr` delimits each row's slice of the
/// parallel `col_idx`/`vals` arrays. Column indices are stored as `u32`
/// (4 bytes each — half the footprint of the values they address) and are
/// strictly increasing within every row, so products accumulate in sorted
/// column order.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCsr {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseCsr {
    /// Validates the structural invariants before accepting the arrays:
    /// `row_ptr` spans `[0, nnz]` monotonically, columns are in range and
    /// strictly increasing per row, and the entry arrays line up.
    pub fn new(
        n_rows: usize,
        n_cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<u32>,
        vals: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != n_rows + 1 {
            return Err(Error::InvalidMatrix(format!(
                "row_ptr has {} entries, expected n_rows + 1 = {}",
                row_ptr.len(),
                n_rows + 1
            )));
        }
        if row_ptr[0] != 0 {
            return Err(Error::InvalidMatrix(format!(
                "row_ptr starts at {}, expected 0",
                row_ptr[0]
            )));
        }
        if col_idx.len() != vals.len() {
            return Err(Error::InvalidMatrix(format!(
                "col_idx has {} entries but vals has {}",
                col_idx.len(),
                vals.len()
            )));
        }
        if row_ptr[n_rows] != vals.len() {
            return Err(Error::InvalidMatrix(format!(
                "row_ptr ends at {}, expected nnz = {}",
                row_ptr[n_rows],
                vals.len()
            )));
        }
        for r in 0..n_rows {
            let (start, end) = (row_ptr[r], row_ptr[r + 1]);
            if start > end {
                return Err(Error::InvalidMatrix(format!(
                    "row_ptr decreases at row {r}"
                )));
            }
            let mut prev: Option<u32> = None;
            for k in start..end {
                let c = col_idx[k];
                if c as usize >= n_cols {
                    return Err(Error::InvalidMatrix(format!(
                        "row {r} references column {c}, but the matrix has {n_cols} columns"
                    )));
                }
                if let Some(p) = prev {
                    if c <= p {
                        return Err(Error::InvalidMatrix(format!(
                            "row {r} columns are not strictly increasing ({p} then {c})"
                        )));
                    }
                }
                prev = Some(c);
            }
        }
        Ok(Self {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            vals,
        })
    }

    /// Builds a matrix from per-row `(col, value)` entry lists, which may
    /// be given in any order within a row.
    pub fn from_rows(n_cols: usize, rows: &[Vec<(usize, f64)>]) -> Result<Self> {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            let mut entries = row.clone();
            entries.sort_by_key(|&(c, _)| c);
            for (c, v) in entries {
                let c32 = u32::try_from(c).map_err(|_| {
                    Error::InvalidMatrix(format!("column index {c} exceeds u32 range"))
                })?;
                col_idx.push(c32);
                vals.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        Self::new(rows.len(), n_cols, row_ptr, col_idx, vals)
    }

    pub fn identity(n: usize) -> Self {
        let row_ptr = (0..=n).collect();
        let col_idx = (0..n as u32).collect();
        let vals = vec![1.0; n];
        Self::new(n, n, row_ptr, col_idx, vals).expect("identity satisfies all invariants")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[u32] {
        &self.col_idx
    }

    pub fn vals(&self) -> &[f64] {
        &self.vals
    }

    /// Entries of one row as parallel `(columns, values)` slices.
    pub fn row(&self, r: usize) -> (&[u32], &[f64]) {
        let (start, end) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.col_idx[start..end], &self.vals[start..end])
    }

    /// `y = A x`, each row accumulated in stored (sorted-column) order.
    /// Rows are independent, so the output is chunked by the backend.
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
        exec.for_each_indexed(y, &|r, t| {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.col_idx[k] as usize];
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

    /// Converts to padded ELL storage; see [`SparseEll`].
    pub fn to_ell(&self) -> SparseEll {
        SparseEll::from_csr(self)
    }

    /// Debug dump as one `row col value` line per stored entry, with
    /// 17-significant-digit values so the matrix can be reconstructed
    /// exactly by an external checker.
    pub fn dump_triplets(&self) -> String {
        let mut out = String::new();
        for r in 0..self.n_rows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                writeln!(out, "{} {} {:.16e}", r, self.col_idx[k], self.vals[k])
                    .expect("string writes cannot fail");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::ExecBackend;
    use approx::assert_relative_eq;

    #[test]
    fn identity_product_is_bitwise_exact() {
        let a = SparseCsr::identity(5);
        let x = [1.5, -2.25, 3.125, 0.1, 123456.789];
        let y = a.spmv(&x).unwrap();
        for (yi, xi) in y.iter().zip(&x) {
            assert_eq!(yi.to_bits(), xi.to_bits());
        }
    }

    #[test]
    fn small_rectangular_product_matches_hand_multiply() {
        // [ 2 0 1 ]   [1]   [ 2*1 + 1*3 ]   [ 5 ]
        // [ 0 4 0 ] x [2] = [ 4*2       ] = [ 8 ]
        //             [3]
        let a = SparseCsr::from_rows(3, &[vec![(0, 2.0), (2, 1.0)], vec![(1, 4.0)]]).unwrap();
        let y = a.spmv(&[1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(y[0], 5.0, max_relative = 1e-15);
        assert_relative_eq!(y[1], 8.0, max_relative = 1e-15);
    }

    #[test]
    fn empty_rows_produce_zero() {
        let a = SparseCsr::from_rows(2, &[vec![], vec![(0, 3.0)], vec![]]).unwrap();
        let y = a.spmv(&[2.0, 7.0]).unwrap();
        assert_eq!(y, vec![0.0, 6.0, 0.0]);
    }

    #[test]
    fn construction_rejects_structural_violations() {
        // row_ptr not starting at zero.
        let e = SparseCsr::new(1, 1, vec![1, 1], vec![], vec![]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        // row_ptr end disagreeing with nnz.
        let e = SparseCsr::new(1, 1, vec![0, 2], vec![0], vec![1.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        // decreasing offsets.
        let e = SparseCsr::new(2, 2, vec![0, 1, 0], vec![0], vec![1.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        // column out of range.
        let e = SparseCsr::new(1, 2, vec![0, 1], vec![2], vec![1.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        // duplicate / unsorted columns within a row.
        let e = SparseCsr::new(1, 3, vec![0, 2], vec![1, 1], vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        let e = SparseCsr::new(1, 3, vec![0, 2], vec![2, 0], vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
        // entry arrays of different length.
        let e = SparseCsr::new(1, 3, vec![0, 1], vec![0], vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(e, Error::InvalidMatrix(_)));
    }

    #[test]
    fn product_rejects_mismatched_vector_lengths() {
        let a = SparseCsr::identity(3);
        assert!(matches!(
            a.spmv(&[1.0, 2.0]),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        ));
        let mut y = vec![0.0; 2];
        assert!(matches!(
            a.spmv_into(&crate::backends::SerialBackend, &mut y, &[1.0, 2.0, 3.0]),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn parallel_product_is_bitwise_identical_to_serial() {
        // A banded matrix large enough to span several chunks.
        let n = 500;
        let rows: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|r| {
                let mut row = vec![(r, -2.0 + (r as f64) * 1e-3)];
                if r > 0 {
                    row.push((r - 1, 0.5));
                }
                if r + 1 < n {
                    row.push((r + 1, 0.75));
                }
                row
            })
            .collect();
        let a = SparseCsr::from_rows(n, &rows).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.11).cos()).collect();
        let serial = a.spmv(&x).unwrap();
        let mut parallel = vec![0.0; n];
        a.spmv_into(&ExecBackend::parallel(4).unwrap(), &mut parallel, &x)
            .unwrap();
        for (s, p) in serial.iter().zip(&parallel) {
            assert_eq!(s.to_bits(), p.to_bits());
        }
    }

    #[test]
    fn triplet_dump_is_reconstructible() {
        let a = SparseCsr::from_rows(3, &[vec![(0, 1.5), (2, -0.125)], vec![(1, 1e-300)]]).unwrap();
        let dump = a.dump_triplets();
        let mut entries = Vec::new();
        for line in dump.lines() {
            let mut parts = line.split_whitespace();
            let r: usize = parts.next().unwrap().parse().unwrap();
            let c: usize = parts.next().unwrap().parse().unwrap();
            let v: f64 = parts.next().unwrap().parse().unwrap();
            entries.push((r, c, v));
        }
        // 17 significant digits round-trip every f64 exactly.
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0], (0, 0, 1.5));
        assert_eq!(entries[1], (0, 2, -0.125));
        assert_eq!(entries[2], (1, 1, 1e-300));
    }
}
