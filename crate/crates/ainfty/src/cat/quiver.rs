//! Graded quivers: finite object sets with a graded hom module per pair.

use crate::exactlin::{GradedModule, TensorSpace};
use std::collections::BTreeMap;

/// A sequence of object indices (X_0, ..., X_n); arity = len - 1.
pub type ObjSeq = Vec<usize>;

/// A graded quiver. Hom modules are interpreted as the *shifted* homs
/// sA(X, Y); pairs without an entry have the zero module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), GradedModule>,
}

impl Quiver {
    pub fn new(objects: Vec<String>, homs: BTreeMap<(usize, usize), GradedModule>) -> Self {
        let n = objects.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for o in &objects {
                assert!(seen.insert(o.clone()), "duplicate object label `{o}`");
            }
        }
        for (x, y) in homs.keys() {
            assert!(*x < n && *y < n, "hom indices out of range");
        }
        let homs = homs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Quiver { objects, homs }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom(&self, x: usize, y: usize) -> GradedModule {
        self.homs
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(GradedModule::zero)
    }

    pub fn hom_entries(&self) -> impl Iterator<Item = (&(usize, usize), &GradedModule)> {
        self.homs.iter()
    }

    /// The hom modules along a sequence; `None` if any is zero (the tensor
    /// vanishes and every component over the sequence is forced zero).
    pub fn seq_modules(&self, seq: &[usize]) -> Option<Vec<GradedModule>> {
        let mut out = Vec::with_capacity(seq.len().saturating_sub(1));
        for w in seq.windows(2) {
            let m = self.hom(w[0], w[1]);
            if m.is_zero() {
                return None;
            }
            out.push(m);
        }
        Some(out)
    }

    /// The tensor space T^n sA over a sequence of n+1 objects.
    pub fn tensor_space(&self, seq: &[usize]) -> Option<TensorSpace> {
        self.seq_modules(seq).map(TensorSpace::new)
    }

    /// All object sequences of the given arity whose tensor module is nonzero.
    pub fn sequences(&self, arity: usize) -> Vec<ObjSeq> {
        let n = self.objects.len();
        let mut out = Vec::new();
        let mut cur = vec![0usize; arity + 1];
        'outer: loop {
            if self.seq_modules(&cur).is_some() {
                out.push(cur.clone());
            }
            // odometer over object tuples
            let mut i = arity + 1;
            while i > 0 {
                i -= 1;
                cur[i] += 1;
                if cur[i] < n {
                    continue 'outer;
                }
                cur[i] = 0;
            }
            break;
        }
        out
    }

    pub fn seq_labels(&self, seq: &[usize]) -> Vec<String> {
        seq.iter().map(|&i| self.objects[i].clone()).collect()
    }
}
