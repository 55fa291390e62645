//! State containers, per-element kernels and the algebra iteration contract.

mod algebra;
mod ops;
mod state;

pub use algebra::{Algebra, Task};
pub use ops::{ElementOp, ScaleSum, ScaleSum2, ScaleSum3, ScaleSum4, ScaleSum5};
pub use state::{first_non_finite, MultiState, StateVector};
