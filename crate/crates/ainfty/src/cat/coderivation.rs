//! (f,g)-coderivations: A∞-transformations determined by components r_n of a
//! fixed degree, n >= 0. The degree is the natural degree of the map on the
//! shifted quivers; the +1-shifted degree of the functor category never
//! appears in data.

use super::expand::{expand_block, ChainLike, SeqBlockMap};
use super::functor::AInfFunctor;
use super::quiver::{ObjSeq, Quiver};
use crate::error::CatError;
use crate::exactlin::{Field, GradedMap, GradedModule};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Coderivation<F: Field> {
    from: Arc<AInfFunctor<F>>,
    to: Arc<AInfFunctor<F>>,
    degree: i32,
    components: BTreeMap<ObjSeq, GradedMap<F>>,
}

impl<F: Field> PartialEq for Coderivation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.components == other.components
            && self.from.as_ref() == other.from.as_ref()
            && self.to.as_ref() == other.to.as_ref()
    }
}

impl<F: Field> Coderivation<F> {
    pub fn zero(from: Arc<AInfFunctor<F>>, to: Arc<AInfFunctor<F>>, degree: i32) -> Self {
        assert!(
            from.source().as_ref() == to.source().as_ref()
                && from.target().as_ref() == to.target().as_ref(),
            "coderivation endpoints must share categories"
        );
        Coderivation {
            from,
            to,
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn set_component(&mut self, seq: &[usize], map: GradedMap<F>) -> Result<(), CatError> {
        let n = seq.len().checked_sub(1).expect("sequence needs an object");
        if n > self.max_arity() {
            return Err(CatError::ArityOverflow {
                arity: n,
                max_arity: self.max_arity(),
            });
        }
        if map.degree() != self.degree {
            return Err(CatError::Precondition(format!(
                "r_{n} must have degree {}, got {}",
                self.degree,
                map.degree()
            )));
        }
        let source_shape = match self.from.source().quiver().tensor_space(seq) {
            Some(s) => s.module().clone(),
            None => {
                if !map.is_zero() {
                    return Err(CatError::Precondition(
                        "nonzero component over a vanishing tensor slot".into(),
                    ));
                }
                return Ok(());
            }
        };
        let target = self
            .from
            .target()
            .quiver()
            .hom(self.from.object(seq[0]), self.to.object(seq[n]));
        if !map.source().shape_eq(&source_shape) || !map.target().shape_eq(&target) {
            return Err(CatError::Precondition(format!(
                "r_{n} block shapes do not match the quivers over {:?}",
                self.from.source().quiver().seq_labels(seq)
            )));
        }
        if map.is_zero() {
            self.components.remove(seq);
        } else {
            self.components.insert(seq.to_vec(), map);
        }
        Ok(())
    }

    pub fn from_functor(&self) -> &Arc<AInfFunctor<F>> {
        &self.from
    }

    pub fn to_functor(&self) -> &Arc<AInfFunctor<F>> {
        &self.to
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<ObjSeq, GradedMap<F>> {
        &self.components
    }

    pub fn max_arity(&self) -> usize {
        self.from.max_arity()
    }

    /// The bare component r_n, materialized with the correct shape. The
    /// arity-0 component over an object X is keyed by the sequence [X].
    pub fn bare(&self, seq: &[usize]) -> GradedMap<F> {
        if let Some(m) = self.components.get(seq) {
            return m.clone();
        }
        let n = seq.len() - 1;
        let source = match self.from.source().quiver().tensor_space(seq) {
            Some(s) => s.module().clone(),
            None => GradedModule::zero(),
        };
        let target = self
            .from
            .target()
            .quiver()
            .hom(self.from.object(seq[0]), self.to.object(seq[n]));
        GradedMap::zero(source, target, self.degree)
    }

    /// The block r_{kl} = Σ f_{i_1}⊗..⊗f_{i_q}⊗r_j⊗g_{j_1}⊗..⊗g_{j_t}.
    /// Vanishes unless 1 <= l <= k+1; r_{01} = r_0.
    pub fn expand_r(&self, seq: &[usize], target_arity: usize) -> Result<SeqBlockMap<F>, CatError> {
        let k = seq.len() - 1;
        if k > self.max_arity() + 1 {
            return Err(CatError::ArityOverflow {
                arity: k,
                max_arity: self.max_arity(),
            });
        }
        Ok(expand_block(&CoderChain(self), seq, target_arity))
    }

    pub fn add(&self, other: &Coderivation<F>) -> Coderivation<F> {
        assert!(self.degree == other.degree, "degree mismatch in add");
        assert!(
            self.from.as_ref() == other.from.as_ref() && self.to.as_ref() == other.to.as_ref(),
            "coderivation endpoints differ in add"
        );
        let mut out = self.clone();
        for (seq, m) in &other.components {
            let cur = out.bare(seq);
            let sum = cur.add(m);
            if sum.is_zero() {
                out.components.remove(seq);
            } else {
                out.components.insert(seq.clone(), sum);
            }
        }
        out
    }

    pub fn sub(&self, other: &Coderivation<F>) -> Coderivation<F> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Coderivation<F> {
        let mut out = self.clone();
        if c.is_zero() {
            out.components.clear();
            return out;
        }
        for m in out.components.values_mut() {
            *m = m.scale(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|m| m.is_zero())
    }

    /// Truncate to components of arity < n (the paper's ĩ device: the partial
    /// coderivation with components (r_0, ..., r_{n-1}, 0, ...)).
    pub fn truncated_below(&self, n: usize) -> Coderivation<F> {
        let mut out = self.clone();
        out.components.retain(|seq, _| seq.len() - 1 < n);
        out
    }
}

/// A single coderivation viewed as a chain of length 1.
pub(crate) struct CoderChain<'a, F: Field>(pub &'a Coderivation<F>);

impl<F: Field> ChainLike<F> for CoderChain<'_, F> {
    fn levels(&self) -> usize {
        1
    }
    fn source_quiver(&self) -> &Quiver {
        self.0.from.source().quiver()
    }
    fn functor_object(&self, p: usize, x: usize) -> usize {
        if p == 0 {
            self.0.from.object(x)
        } else {
            self.0.to.object(x)
        }
    }
    fn functor_component(&self, p: usize, seq: &[usize]) -> GradedMap<F> {
        if p == 0 {
            self.0.from.bare(seq)
        } else {
            self.0.to.bare(seq)
        }
    }
    fn coderivation_component(&self, _p: usize, seq: &[usize]) -> GradedMap<F> {
        self.0.bare(seq)
    }
    fn coderivation_degree(&self, _p: usize) -> i32 {
        self.0.degree
    }
}
