//! Finitely supported graded modules with ordered, labelled bases.

use std::collections::BTreeMap;
use std::fmt;

/// Internal degree type; the engine works with Z-gradings of small absolute value.
pub type Degree = i32;

/// A graded module with finitely many nonzero components, each carrying an
/// ordered basis of labels. Labels are cosmetic (printing, fixtures); all
/// arithmetic is positional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedModule {
    components: BTreeMap<Degree, Vec<String>>,
}

impl GradedModule {
    pub fn zero() -> Self {
        GradedModule {
            components: BTreeMap::new(),
        }
    }

    /// The ground field as a module: one basis vector in degree 0.
    pub fn unit() -> Self {
        Self::concentrated(0, vec!["1".to_string()])
    }

    pub fn concentrated(degree: Degree, labels: Vec<String>) -> Self {
        let mut components = BTreeMap::new();
        if !labels.is_empty() {
            components.insert(degree, labels);
        }
        GradedModule { components }
    }

    pub fn from_components(components: BTreeMap<Degree, Vec<String>>) -> Self {
        let components: BTreeMap<_, _> = components
            .into_iter()
            .filter(|(_, l)| !l.is_empty())
            .collect();
        for labels in components.values() {
            let mut seen = std::collections::BTreeSet::new();
            for l in labels {
                assert!(seen.insert(l.clone()), "duplicate basis label `{l}`");
            }
        }
        GradedModule { components }
    }

    /// Dimensions only, basis labels synthesized as e0, e1, ...
    pub fn from_dims(dims: &[(Degree, usize)]) -> Self {
        let mut components = BTreeMap::new();
        for &(d, n) in dims {
            if n > 0 {
                components.insert(d, (0..n).map(|i| format!("e{i}")).collect());
            }
        }
        GradedModule { components }
    }

    pub fn dim(&self, degree: Degree) -> usize {
        self.components.get(&degree).map_or(0, |l| l.len())
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|l| l.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.components.keys().cloned()
    }

    pub fn labels(&self, degree: Degree) -> &[String] {
        self.components
            .get(&degree)
            .map_or(&[][..], |l| l.as_slice())
    }

    /// Same dimensions in every degree (labels may differ).
    pub fn shape_eq(&self, other: &Self) -> bool {
        let ds: std::collections::BTreeSet<Degree> =
            self.degrees().chain(other.degrees()).collect();
        ds.into_iter().all(|d| self.dim(d) == other.dim(d))
    }

    /// The shift M[n]: `(M[n])^k = M^{k+n}` (an old degree d lives in new degree d-n).
    pub fn shift(&self, n: Degree) -> Self {
        GradedModule {
            components: self
                .components
                .iter()
                .map(|(d, l)| (d - n, l.clone()))
                .collect(),
        }
    }

    /// Direct sum; labels are prefixed to stay unique.
    pub fn direct_sum(summands: &[(&str, &GradedModule)]) -> Self {
        let mut components: BTreeMap<Degree, Vec<String>> = BTreeMap::new();
        for (prefix, m) in summands {
            for d in m.degrees() {
                let entry = components.entry(d).or_default();
                for l in m.labels(d) {
                    entry.push(format!("{prefix}{l}"));
                }
            }
        }
        GradedModule { components }
    }

    /// Offset of a summand's degree-d component inside the direct sum, in the
    /// order the summands were given.
    pub fn summand_offset(summands: &[&GradedModule], which: usize, degree: Degree) -> usize {
        summands[..which].iter().map(|m| m.dim(degree)).sum()
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(d, l)| format!("k^{}[{d}]", l.len()))
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_moves_degrees() {
        let m = GradedModule::from_dims(&[(0, 2), (1, 1)]);
        let s = m.shift(1);
        assert_eq!(s.dim(-1), 2);
        assert_eq!(s.dim(0), 1);
        assert_eq!(s.dim(1), 0);
    }

    #[test]
    fn direct_sum_dims() {
        let a = GradedModule::from_dims(&[(0, 2)]);
        let b = GradedModule::from_dims(&[(0, 1), (1, 3)]);
        let s = GradedModule::direct_sum(&[("a:", &a), ("b:", &b)]);
        assert_eq!(s.dim(0), 3);
        assert_eq!(s.dim(1), 3);
        assert_eq!(GradedModule::summand_offset(&[&a, &b], 1, 0), 2);
    }
}
