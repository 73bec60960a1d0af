//! Check reports: verdicts with pinpointed defects.

use crate::exactlin::{Field, GradedMap};
use std::fmt;

/// A failed instance of an identity: the arity, the object sequence, and the
/// nonzero defect map.
#[derive(Clone, Debug)]
pub struct Defect<F: Field> {
    pub arity: usize,
    pub objects: Vec<String>,
    pub detail: String,
    pub defect: GradedMap<F>,
}

/// Result of checking one identity family through a truncation.
#[derive(Clone, Debug)]
pub struct Report<F: Field> {
    pub identity: String,
    pub max_arity: usize,
    pub failures: Vec<Defect<F>>,
}

impl<F: Field> Report<F> {
    pub fn new(identity: impl Into<String>, max_arity: usize) -> Self {
        Report {
            identity: identity.into(),
            max_arity,
            failures: Vec::new(),
        }
    }

    pub fn push_defect(
        &mut self,
        arity: usize,
        objects: Vec<String>,
        detail: impl Into<String>,
        defect: GradedMap<F>,
    ) {
        self.failures.push(Defect {
            arity,
            objects,
            detail: detail.into(),
            defect,
        });
    }

    /// Record a defect when the map is nonzero.
    pub fn check_zero(
        &mut self,
        arity: usize,
        objects: Vec<String>,
        detail: impl Into<String>,
        map: GradedMap<F>,
    ) {
        if !map.is_zero() {
            self.push_defect(arity, objects, detail, map);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Merge another report into this one.
    pub fn absorb(&mut self, other: Report<F>) {
        self.failures.extend(other.failures);
    }
}

impl<F: Field> fmt::Display for Report<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} (through arity {})",
            self.identity,
            if self.passed() { "pass" } else { "FAIL" },
            self.max_arity
        )?;
        for d in &self.failures {
            writeln!(
                f,
                "  defect at arity {} on ({}) [{}]:",
                d.arity,
                d.objects.join(", "),
                d.detail
            )?;
            for (deg, blk) in d.defect.nonzero_blocks() {
                writeln!(f, "    source degree {deg}: {blk:?}")?;
            }
        }
        Ok(())
    }
}
