//! State containers.
//!
//! A [`StateVector`] is a contiguous run of `f64` values; a [`MultiState`]
//! keeps `k` equal-length components back to back in one allocation so that a
//! stepper can treat the whole thing as a single flat vector while a
//! right-hand side addresses the components individually.

use std::ops::{Deref, DerefMut};

use crate::{Error, Result};

/// Contiguous vector of scalar state values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StateVector {
    data: Vec<f64>,
}

impl StateVector {
    pub fn new(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            data: vec![0.0; len],
        }
    }

    /// Builds a vector by evaluating `f` at every index.
    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self {
            data: (0..len).map(f).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

impl Deref for StateVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.data
    }
}

impl DerefMut for StateVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

impl From<Vec<f64>> for StateVector {
    fn from(data: Vec<f64>) -> Self {
        Self { data }
    }
}

impl FromIterator<f64> for StateVector {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Self {
            data: iter.into_iter().collect(),
        }
    }
}

/// `k` equal-length components stored contiguously, component by component.
///
/// Component `c`, element `i` lives at flat index `c * component_len + i`, so
/// elementwise kernels can sweep the flat buffer once while per-component
/// views stay cheap slices.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiState {
    data: Vec<f64>,
    components: usize,
    component_len: usize,
}

impl MultiState {
    pub fn zeros(components: usize, component_len: usize) -> Self {
        Self {
            data: vec![0.0; components * component_len],
            components,
            component_len,
        }
    }

    /// Assembles a multi-state from separate components of identical length.
    pub fn from_components(parts: &[StateVector]) -> Result<Self> {
        let component_len = parts.first().map_or(0, |p| p.len());
        let mut data = Vec::with_capacity(parts.len() * component_len);
        for p in parts {
            if p.len() != component_len {
                return Err(Error::LengthMismatch {
                    expected: component_len,
                    got: p.len(),
                });
            }
            data.extend_from_slice(p);
        }
        Ok(Self {
            data,
            components: parts.len(),
            component_len,
        })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn component_len(&self) -> usize {
        self.component_len
    }

    pub fn component(&self, c: usize) -> &[f64] {
        let start = c * self.component_len;
        &self.data[start..start + self.component_len]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [f64] {
        let start = c * self.component_len;
        &mut self.data[start..start + self.component_len]
    }

    /// The whole state as one flat slice, component-contiguous.
    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn as_flat_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Index of the first non-finite entry, if any.
pub fn first_non_finite(values: &[f64]) -> Option<usize> {
    values.iter().position(|v| !v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_state_layout_is_component_contiguous() {
        let mut s = MultiState::zeros(3, 4);
        s.component_mut(0).fill(1.0);
        s.component_mut(1).fill(2.0);
        s.component_mut(2).fill(3.0);
        assert_eq!(s.as_flat()[..4], [1.0; 4]);
        assert_eq!(s.as_flat()[4..8], [2.0; 4]);
        assert_eq!(s.as_flat()[8..], [3.0; 4]);
    }

    #[test]
    fn from_components_rejects_ragged_input() {
        let parts = [StateVector::zeros(2), StateVector::zeros(3)];
        assert!(matches!(
            MultiState::from_components(&parts),
            Err(Error::LengthMismatch {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn non_finite_scan_finds_first_bad_entry() {
        assert_eq!(first_non_finite(&[1.0, 2.0]), None);
        assert_eq!(first_non_finite(&[1.0, f64::NAN, f64::INFINITY]), Some(1));
        assert_eq!(first_non_finite(&[]), None);
    }
}
