use crate::core::{Algebra, Task};

/// Runs every pass as one sweep in index order on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct SerialBackend;

impl SerialBackend {
    pub fn new() -> Self {
        Self
    }
}

impl Algebra for SerialBackend {
    fn run_tasks(&self, tasks: Vec<Task<'_>>) {
        for task in tasks {
            task();
        }
    }
}
