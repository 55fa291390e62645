//! Per-element kernels applied by the algebra iteration methods.

/// A kernel that writes one target element from `K` operand values.
///
/// Kernels must be pure functions of their operands: the same operand values
/// always produce the same target bits, regardless of index or backend.
pub trait ElementOp<const K: usize>: Send + Sync {
    fn apply(&self, target: &mut f64, operands: [f64; K]);
}

/// `target = c[0] * s[0] + c[1] * s[1] + ...`, accumulated strictly left to
/// right so results are bitwise reproducible across backends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleSum<const K: usize> {
    pub coeffs: [f64; K],
}

impl<const K: usize> ScaleSum<K> {
    pub fn new(coeffs: [f64; K]) -> Self {
        Self { coeffs }
    }
}

pub type ScaleSum2 = ScaleSum<2>;
pub type ScaleSum3 = ScaleSum<3>;
pub type ScaleSum4 = ScaleSum<4>;
pub type ScaleSum5 = ScaleSum<5>;

impl<const K: usize> ElementOp<K> for ScaleSum<K> {
    #[inline]
    fn apply(&self, target: &mut f64, operands: [f64; K]) {
        let mut acc = self.coeffs[0] * operands[0];
        for j in 1..K {
            acc += self.coeffs[j] * operands[j];
        }
        *target = acc;
    }
}

impl<const K: usize, T: ElementOp<K> + ?Sized> ElementOp<K> for &T {
    #[inline]
    fn apply(&self, target: &mut f64, operands: [f64; K]) {
        (**self).apply(target, operands)
    }
}
