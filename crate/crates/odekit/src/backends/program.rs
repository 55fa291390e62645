//! Statement groups: fused single-pass and per-statement execution.
//!
//! A [`Statement`] assigns an [`Expr`] to a target slot for every index. A
//! [`FusedGroup`] evaluates all of its statements inside one traversal of the
//! index space — the memory-bound win this crate is built around — and
//! therefore forbids any statement from reading another's target. An
//! [`UnfusedProgram`] runs one full pass per statement instead, which permits
//! sequential aliasing and serves as the reference the fused path is checked
//! against.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::backends::expr::{Expr, Slot};
use crate::core::{Algebra, Task};
use crate::{Error, Result};

/// `target[i] = expr(i)` for every index `i`.
#[derive(Clone, Debug)]
pub struct Statement {
    pub target: Slot,
    pub expr: Expr,
}

impl Statement {
    pub fn new(target: Slot, expr: Expr) -> Self {
        Self { target, expr }
    }

    /// Distinct slots the expression reads.
    pub fn input_slots(&self) -> BTreeSet<Slot> {
        let mut slots = BTreeSet::new();
        self.expr.collect_slots(&mut slots);
        slots
    }
}

/// A vector attached to a slot for the duration of one execution.
pub enum SlotBinding<'a> {
    Read(&'a [f64]),
    Write(&'a mut [f64]),
}

/// Per-call attachment of vectors to slots. Programs are immutable; bindings
/// are rebuilt (or rebound) every evaluation with the current buffers.
pub struct Bindings<'a> {
    slots: Vec<Option<SlotBinding<'a>>>,
}

impl<'a> Bindings<'a> {
    pub fn new(slot_count: usize) -> Self {
        let mut slots = Vec::with_capacity(slot_count);
        slots.resize_with(slot_count, || None);
        Self { slots }
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn bind_read(&mut self, slot: Slot, data: &'a [f64]) {
        assert!(slot.0 < self.slots.len(), "slot {} out of range", slot.0);
        self.slots[slot.0] = Some(SlotBinding::Read(data));
    }

    pub fn bind_write(&mut self, slot: Slot, data: &'a mut [f64]) {
        assert!(slot.0 < self.slots.len(), "slot {} out of range", slot.0);
        self.slots[slot.0] = Some(SlotBinding::Write(data));
    }

    fn len_of(&self, slot: Slot) -> Option<usize> {
        match self.slots.get(slot.0)? {
            Some(SlotBinding::Read(r)) => Some(r.len()),
            Some(SlotBinding::Write(w)) => Some(w.len()),
            None => None,
        }
    }

    /// Evaluates a free-standing expression at index `i` against the current
    /// bindings. All referenced slots must be bound with a common length.
    pub fn eval(&self, expr: &Expr, i: usize) -> Result<f64> {
        let mut slots = BTreeSet::new();
        expr.collect_slots(&mut slots);
        let mut n: Option<usize> = None;
        for s in &slots {
            let len = self.len_of(*s).ok_or(Error::UnboundSlot { slot: s.0 })?;
            match n {
                None => n = Some(len),
                Some(expected) if expected != len => {
                    return Err(Error::LengthMismatch { expected, got: len })
                }
                _ => {}
            }
        }
        let n = n.unwrap_or(i + 1);
        if i >= n {
            return Err(Error::LengthMismatch { expected: n, got: i });
        }
        Ok(expr.eval(i, n, &|slot: Slot, idx: usize| match &self.slots[slot.0] {
            Some(SlotBinding::Read(r)) => r[idx],
            Some(SlotBinding::Write(w)) => w[idx],
            None => unreachable!("slot bindings were checked above"),
        }))
    }

    /// Shared read view of every currently bound slot.
    fn read_view(&self) -> Vec<Option<&[f64]>> {
        self.slots
            .iter()
            .map(|b| match b {
                Some(SlotBinding::Read(r)) => Some(*r),
                Some(SlotBinding::Write(w)) => Some(&**w),
                None => None,
            })
            .collect()
    }
}

/// Checks that every slot a program touches is bound appropriately and
/// returns the common pass length. Runs before any element is written.
fn validate_bindings(
    statements: &[Statement],
    slot_count: usize,
    bindings: &Bindings<'_>,
) -> Result<usize> {
    if bindings.slot_count() != slot_count {
        return Err(Error::InvalidConfig(format!(
            "binding table has {} slots but the program declares {}",
            bindings.slot_count(),
            slot_count
        )));
    }
    let mut n: Option<usize> = None;
    let mut check_common = |len: usize| -> Result<()> {
        match n {
            None => {
                n = Some(len);
                Ok(())
            }
            Some(expected) if expected != len => Err(Error::LengthMismatch { expected, got: len }),
            _ => Ok(()),
        }
    };
    for stmt in statements {
        match bindings.slots.get(stmt.target.0) {
            Some(Some(SlotBinding::Write(w))) => check_common(w.len())?,
            Some(Some(SlotBinding::Read(_))) => {
                return Err(Error::SlotNotWritable {
                    slot: stmt.target.0,
                })
            }
            _ => {
                return Err(Error::UnboundSlot {
                    slot: stmt.target.0,
                })
            }
        }
        for input in stmt.input_slots() {
            let len = bindings
                .len_of(input)
                .ok_or(Error::UnboundSlot { slot: input.0 })?;
            check_common(len)?;
        }
    }
    Ok(n.unwrap_or(0))
}

fn check_slot_range(statements: &[Statement], slot_count: usize) -> Result<()> {
    for stmt in statements {
        if stmt.target.0 >= slot_count {
            return Err(Error::SlotOutOfRange {
                slot: stmt.target.0,
                slot_count,
            });
        }
        if let Some(max) = stmt.expr.max_slot() {
            if max >= slot_count {
                return Err(Error::SlotOutOfRange {
                    slot: max,
                    slot_count,
                });
            }
        }
    }
    Ok(())
}

/// An ordered list of statements evaluated together in a single pass: for
/// each index, every right-hand side is evaluated and written in statement
/// order before moving to the next index.
#[derive(Debug)]
pub struct FusedGroup {
    statements: Vec<Statement>,
    slot_count: usize,
    passes: AtomicU64,
}

impl FusedGroup {
    /// Builds the group, rejecting it if any statement's target is read by
    /// any statement in the group (including itself) or written twice.
    pub fn new(slot_count: usize, statements: Vec<Statement>) -> Result<Self> {
        check_slot_range(&statements, slot_count)?;
        let mut targets = BTreeSet::new();
        for stmt in &statements {
            if !targets.insert(stmt.target) {
                return Err(Error::DuplicateTarget {
                    slot: stmt.target.0,
                });
            }
        }
        for stmt in &statements {
            for input in stmt.input_slots() {
                if targets.contains(&input) {
                    return Err(Error::AliasedTarget { slot: input.0 });
                }
            }
        }
        Ok(Self {
            statements,
            slot_count,
            passes: AtomicU64::new(0),
        })
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    /// Total passes executed over this group's lifetime.
    pub fn pass_count(&self) -> u64 {
        self.passes.load(Ordering::Relaxed)
    }

    /// Runs all statements in one traversal. Returns the number of passes
    /// this execution performed: 1, or 0 for an empty group.
    pub fn execute<A: Algebra>(&self, bindings: &mut Bindings<'_>, exec: &A) -> Result<u64> {
        if self.statements.is_empty() {
            return Ok(0);
        }
        let n = validate_bindings(&self.statements, self.slot_count, bindings)?;

        // Pull the target slices out of the binding table so the remainder
        // can serve as a shared read view; they are restored below.
        let mut taken: Vec<(usize, &mut [f64])> = Vec::with_capacity(self.statements.len());
        for stmt in &self.statements {
            match bindings.slots[stmt.target.0].take() {
                Some(SlotBinding::Write(w)) => taken.push((stmt.target.0, w)),
                _ => unreachable!("targets were validated as writable"),
            }
        }

        {
            let reads = bindings.read_view();
            let ranges = exec.pass_chunks(n);
            // Split every target at the same chunk boundaries.
            let mut chunk_targets: Vec<Vec<&mut [f64]>> =
                ranges.iter().map(|_| Vec::with_capacity(taken.len())).collect();
            for (_, w) in taken.iter_mut() {
                let mut rest: &mut [f64] = w;
                let mut consumed = 0;
                for (ci, r) in ranges.iter().enumerate() {
                    let (head, tail) = rest.split_at_mut(r.end - consumed);
                    consumed = r.end;
                    rest = tail;
                    chunk_targets[ci].push(head);
                }
            }

            let statements = &self.statements;
            let reads = &reads;
            let mut tasks: Vec<Task<'_>> = Vec::with_capacity(ranges.len());
            for (r, mut targets) in ranges.into_iter().zip(chunk_targets) {
                tasks.push(Box::new(move || {
                    for i in r.clone() {
                        for (k, stmt) in statements.iter().enumerate() {
                            let v = stmt.expr.eval(i, n, &|slot: Slot, idx: usize| {
                                reads[slot.0].expect("validated binding")[idx]
                            });
                            targets[k][i - r.start] = v;
                        }
                    }
                }));
            }
            exec.run_tasks(tasks);
        }

        for (slot, w) in taken {
            bindings.slots[slot] = Some(SlotBinding::Write(w));
        }
        self.passes.fetch_add(1, Ordering::Relaxed);
        Ok(1)
    }
}

/// The same statement list executed one full pass per statement. Later
/// statements see earlier results, and a statement may update its target in
/// place as long as it reads it unshifted.
#[derive(Debug)]
pub struct UnfusedProgram {
    statements: Vec<Statement>,
    slot_count: usize,
    passes: AtomicU64,
}

impl UnfusedProgram {
    pub fn new(slot_count: usize, statements: Vec<Statement>) -> Result<Self> {
        check_slot_range(&statements, slot_count)?;
        for stmt in &statements {
            if stmt.input_slots().contains(&stmt.target) && stmt.expr.reads_shifted(stmt.target) {
                return Err(Error::ShiftedInPlaceRead {
                    slot: stmt.target.0,
                });
            }
        }
        Ok(Self {
            statements,
            slot_count,
            passes: AtomicU64::new(0),
        })
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn pass_count(&self) -> u64 {
        self.passes.load(Ordering::Relaxed)
    }

    /// Runs the statements sequentially. Returns the number of passes, which
    /// equals the number of statements.
    pub fn execute<A: Algebra>(&self, bindings: &mut Bindings<'_>, exec: &A) -> Result<u64> {
        if self.statements.is_empty() {
            return Ok(0);
        }
        let n = validate_bindings(&self.statements, self.slot_count, bindings)?;

        for stmt in &self.statements {
            let t = stmt.target.0;
            let Some(SlotBinding::Write(w)) = bindings.slots[t].take() else {
                unreachable!("targets were validated as writable")
            };
            {
                let reads = bindings.read_view();
                let reads = &reads;
                let ranges = exec.pass_chunks(n);
                let mut chunks: Vec<(usize, &mut [f64])> = Vec::with_capacity(ranges.len());
                let mut rest: &mut [f64] = &mut *w;
                let mut consumed = 0;
                for r in &ranges {
                    let (head, tail) = rest.split_at_mut(r.end - consumed);
                    consumed = r.end;
                    rest = tail;
                    chunks.push((r.start, head));
                }

                let mut tasks: Vec<Task<'_>> = Vec::with_capacity(chunks.len());
                for (start, chunk) in chunks {
                    tasks.push(Box::new(move || {
                        for j in 0..chunk.len() {
                            let i = start + j;
                            let v = {
                                let current: &[f64] = &*chunk;
                                stmt.expr.eval(i, n, &|slot: Slot, idx: usize| {
                                    if slot.0 == t {
                                        // In-place read of the target's previous
                                        // value; unshifted, so it stays chunk-local.
                                        current[idx - start]
                                    } else {
                                        reads[slot.0].expect("validated binding")[idx]
                                    }
                                })
                            };
                            chunk[j] = v;
                        }
                    }));
                }
                exec.run_tasks(tasks);
            }
            bindings.slots[t] = Some(SlotBinding::Write(w));
        }

        let count = self.statements.len() as u64;
        self.passes.fetch_add(count, Ordering::Relaxed);
        Ok(count)
    }
}
