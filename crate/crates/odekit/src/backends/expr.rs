//! Elementwise expression graphs.
//!
//! An [`Expr`] describes one scalar value per index in terms of bound vectors
//! and constants. Graphs are immutable after construction and carry no data;
//! vectors are attached at execution time through slot bindings, so the same
//! graph can be replayed against fresh buffers every step.

use std::collections::BTreeSet;
use std::ops;

/// Handle to a vector bound at execution time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot(pub usize);

/// One node of an elementwise expression.
///
/// Operands evaluate left to right, so the floating-point result of a graph
/// is completely determined by its shape.
#[derive(Clone, Debug)]
pub enum Expr {
    /// Reads a bound vector at `index + shift`, clamped to the vector's ends
    /// (position `-1` reads the first entry, position `n` reads the last).
    Var { slot: Slot, shift: i64 },
    Const(f64),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    /// Cube, computed as `(v * v) * v`.
    Pow3(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(slot: Slot) -> Self {
        Expr::Var { slot, shift: 0 }
    }

    /// A clamped shifted read; `shift` is usually -1 or +1 for stencils.
    pub fn var_shifted(slot: Slot, shift: i64) -> Self {
        Expr::Var { slot, shift }
    }

    pub fn constant(value: f64) -> Self {
        Expr::Const(value)
    }

    pub fn sin(self) -> Self {
        Expr::Sin(Box::new(self))
    }

    pub fn pow3(self) -> Self {
        Expr::Pow3(Box::new(self))
    }

    /// Evaluates the expression at index `i` of an `n`-element pass.
    /// `fetch(slot, idx)` resolves vector reads; `idx` is already clamped.
    pub fn eval<F: Fn(Slot, usize) -> f64>(&self, i: usize, n: usize, fetch: &F) -> f64 {
        match self {
            Expr::Var { slot, shift } => {
                let idx = (i as i64 + shift).clamp(0, n as i64 - 1) as usize;
                fetch(*slot, idx)
            }
            Expr::Const(c) => *c,
            Expr::Neg(e) => -e.eval(i, n, fetch),
            Expr::Sin(e) => e.eval(i, n, fetch).sin(),
            Expr::Pow3(e) => {
                let v = e.eval(i, n, fetch);
                (v * v) * v
            }
            Expr::Add(a, b) => a.eval(i, n, fetch) + b.eval(i, n, fetch),
            Expr::Sub(a, b) => a.eval(i, n, fetch) - b.eval(i, n, fetch),
            Expr::Mul(a, b) => a.eval(i, n, fetch) * b.eval(i, n, fetch),
        }
    }

    /// Collects every slot the expression reads.
    pub fn collect_slots(&self, out: &mut BTreeSet<Slot>) {
        match self {
            Expr::Var { slot, .. } => {
                out.insert(*slot);
            }
            Expr::Const(_) => {}
            Expr::Neg(e) | Expr::Sin(e) | Expr::Pow3(e) => e.collect_slots(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_slots(out);
                b.collect_slots(out);
            }
        }
    }

    /// Whether `slot` is read anywhere with a nonzero shift.
    pub fn reads_shifted(&self, slot: Slot) -> bool {
        match self {
            Expr::Var { slot: s, shift } => *s == slot && *shift != 0,
            Expr::Const(_) => false,
            Expr::Neg(e) | Expr::Sin(e) | Expr::Pow3(e) => e.reads_shifted(slot),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.reads_shifted(slot) || b.reads_shifted(slot)
            }
        }
    }

    /// Largest slot index referenced, if any.
    pub fn max_slot(&self) -> Option<usize> {
        let mut slots = BTreeSet::new();
        self.collect_slots(&mut slots);
        slots.iter().next_back().map(|s| s.0)
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}
