//! Deterministic disorder generation.
//!
//! Frequencies and initial conditions come from a named, versioned PRNG
//! (ChaCha8) so a seed identifies the exact field on every platform and in
//! every build. The u64-to-unit-interval mapping is done by hand — take the
//! top 53 bits — instead of going through a distribution type whose
//! rounding details could change between library versions.

use crate::{Error, Result};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` uniform samples in `[lo, hi)`, fully determined by the seed.
pub fn seeded_uniform(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            // Top 53 bits scaled by 2^-53: exact, unbiased, in [0, 1).
            let unit = (rng.next_u64() >> 11) as f64 * 2.0f64.powi(-53);
            lo + unit * (hi - lo)
        })
        .collect()
}

/// Per-node squared frequencies for an `nx x ny` grid, drawn uniformly
/// from `[w_lo, w_hi]`, row-major (j fastest) like the lattice operator.
pub fn make_disorder(seed: u64, nx: usize, ny: usize, w_lo: f64, w_hi: f64) -> Result<Vec<f64>> {
    if w_lo > w_hi {
        return Err(Error::InvalidConfig(format!(
            "disorder range is inverted: [{w_lo}, {w_hi}]"
        )));
    }
    Ok(seeded_uniform(seed, nx * ny, w_lo, w_hi))
}
