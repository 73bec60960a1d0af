//! A∞-functors: cocategory homomorphisms commuting with the differential,
//! determined by an object map and degree-0 components f_n, n >= 1.

use super::category::AInfCategory;
use super::expand::{expand_block, ChainLike, SeqBlockMap};
use super::quiver::{ObjSeq, Quiver};
use super::report::Report;
use crate::error::CatError;
use crate::exactlin::{Field, GradedMap, GradedModule};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct AInfFunctor<F: Field> {
    source: Arc<AInfCategory<F>>,
    target: Arc<AInfCategory<F>>,
    object_map: Vec<usize>,
    components: BTreeMap<ObjSeq, GradedMap<F>>,
}

impl<F: Field> PartialEq for AInfFunctor<F> {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.components == other.components
            && self.source == other.source
            && self.target == other.target
    }
}

pub struct AInfFunctorBuilder<F: Field> {
    source: Arc<AInfCategory<F>>,
    target: Arc<AInfCategory<F>>,
    object_map: Vec<usize>,
    components: BTreeMap<ObjSeq, GradedMap<F>>,
}

impl<F: Field> AInfFunctorBuilder<F> {
    pub fn new(
        source: Arc<AInfCategory<F>>,
        target: Arc<AInfCategory<F>>,
        object_map: Vec<usize>,
    ) -> Self {
        assert!(object_map.len() == source.quiver().object_count());
        assert!(object_map
            .iter()
            .all(|&x| x < target.quiver().object_count()));
        AInfFunctorBuilder {
            source,
            target,
            object_map,
            components: BTreeMap::new(),
        }
    }

    pub fn component(mut self, seq: &[usize], map: GradedMap<F>) -> Self {
        self.set_component(seq, map).expect("invalid component");
        self
    }

    pub fn set_component(&mut self, seq: &[usize], map: GradedMap<F>) -> Result<(), CatError> {
        let n = seq.len().checked_sub(1).expect("sequence needs an object");
        if n == 0 || n > self.source.max_arity() {
            return Err(CatError::ArityOverflow {
                arity: n,
                max_arity: self.source.max_arity(),
            });
        }
        if map.degree() != 0 {
            return Err(CatError::Precondition(format!(
                "f_{n} must have degree 0, got {}",
                map.degree()
            )));
        }
        let Some(space) = self.source.quiver().tensor_space(seq) else {
            if !map.is_zero() {
                return Err(CatError::Precondition(
                    "nonzero component over a vanishing tensor slot".into(),
                ));
            }
            return Ok(());
        };
        let target = self
            .target
            .quiver()
            .hom(self.object_map[seq[0]], self.object_map[seq[n]]);
        if !map.source().shape_eq(space.module()) || !map.target().shape_eq(&target) {
            return Err(CatError::Precondition(format!(
                "f_{n} block shapes do not match the quivers over {:?}",
                self.source.quiver().seq_labels(seq)
            )));
        }
        if !map.is_zero() {
            self.components.insert(seq.to_vec(), map);
        }
        Ok(())
    }

    pub fn build(self) -> AInfFunctor<F> {
        AInfFunctor {
            source: self.source,
            target: self.target,
            object_map: self.object_map,
            components: self.components,
        }
    }
}

impl<F: Field> AInfFunctor<F> {
    /// The identity functor: f_1 = id, f_{>=2} = 0.
    pub fn identity(cat: &Arc<AInfCategory<F>>) -> Self {
        let mut components = BTreeMap::new();
        for (&(x, y), hom) in cat.quiver().hom_entries() {
            components.insert(vec![x, y], GradedMap::identity(hom));
        }
        AInfFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.quiver().object_count()).collect(),
            components,
        }
    }

    pub fn source(&self) -> &Arc<AInfCategory<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInfCategory<F>> {
        &self.target
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn components(&self) -> &BTreeMap<ObjSeq, GradedMap<F>> {
        &self.components
    }

    pub fn max_arity(&self) -> usize {
        self.source.max_arity().min(self.target.max_arity())
    }

    /// The bare component f_n, materialized with the correct shape.
    pub fn bare(&self, seq: &[usize]) -> GradedMap<F> {
        if let Some(m) = self.components.get(seq) {
            return m.clone();
        }
        let n = seq.len() - 1;
        let source = match self.source.quiver().tensor_space(seq) {
            Some(s) => s.module().clone(),
            None => GradedModule::zero(),
        };
        let target = self
            .target
            .quiver()
            .hom(self.object_map[seq[0]], self.object_map[seq[n]]);
        GradedMap::zero(source, target, 0)
    }

    /// The block f_{kl} = Σ_{i_1+..+i_l=k} f_{i_1} ⊗ ... ⊗ f_{i_l}.
    /// f_{00} is the identity of the ground field; zero when k < l.
    pub fn expand_f(&self, seq: &[usize], target_arity: usize) -> Result<SeqBlockMap<F>, CatError> {
        let k = seq.len() - 1;
        if k > self.max_arity() + 1 {
            return Err(CatError::ArityOverflow {
                arity: k,
                max_arity: self.max_arity(),
            });
        }
        Ok(expand_block(&FunctorChain(self), seq, target_arity))
    }

    /// Verify the functor equation
    /// Σ (f_{i_1}⊗..⊗f_{i_l}) b_l = Σ (1^{⊗r}⊗b_n⊗1^{⊗t}) f_{r+1+t}
    /// for all 1 <= k <= max_arity and all object sequences.
    pub fn check_functor(&self, max_arity: usize) -> Report<F> {
        let mut report = Report::new("functor", max_arity);
        for k in 1..=max_arity {
            for seq in self.source.quiver().sequences(k) {
                let space = self.source.quiver().tensor_space(&seq).unwrap();
                let target = self
                    .target
                    .quiver()
                    .hom(self.object_map[seq[0]], self.object_map[seq[k]]);
                let zero = GradedMap::zero(space.module().clone(), target, 1);
                let mut lhs = zero.clone();
                for l in 1..=k {
                    if let Ok(block) = self.expand_f(&seq, l) {
                        lhs = lhs.add(&block.contract_with(|tseq| self.target.bare(tseq), zero.clone()));
                    }
                }
                let mut rhs = zero.clone();
                for l in 1..=k {
                    if let Ok(block) = self.source.expand_b(&seq, l) {
                        rhs = rhs.add(&block.contract_with(|tseq| self.bare(tseq), zero.clone()));
                    }
                }
                report.check_zero(
                    k,
                    self.source.quiver().seq_labels(&seq),
                    "fb - bf component",
                    lhs.sub(&rhs),
                );
            }
        }
        report
    }
}

/// Adapter giving a bare functor the chain interface (a chain of length 0).
pub(crate) struct FunctorChain<'a, F: Field>(pub &'a AInfFunctor<F>);

impl<F: Field> ChainLike<F> for FunctorChain<'_, F> {
    fn levels(&self) -> usize {
        0
    }
    fn source_quiver(&self) -> &Quiver {
        self.0.source.quiver()
    }
    fn functor_object(&self, _p: usize, x: usize) -> usize {
        self.0.object(x)
    }
    fn functor_component(&self, _p: usize, seq: &[usize]) -> GradedMap<F> {
        self.0.bare(seq)
    }
    fn coderivation_component(&self, _p: usize, _seq: &[usize]) -> GradedMap<F> {
        unreachable!("length-0 chains have no coderivations")
    }
    fn coderivation_degree(&self, _p: usize) -> i32 {
        unreachable!()
    }
}

/// Compose A∞-functors: (fg)_n = Σ_l f_{nl} g_l, object map composed.
pub fn compose_functors<F: Field>(
    f: &AInfFunctor<F>,
    g: &AInfFunctor<F>,
) -> Result<AInfFunctor<F>, CatError> {
    if f.target.as_ref() != g.source.as_ref() {
        return Err(CatError::CategoryMismatch(
            "target of the first functor is not the source of the second".into(),
        ));
    }
    let object_map: Vec<usize> = f.object_map.iter().map(|&x| g.object(x)).collect();
    let max_arity = f.max_arity().min(g.max_arity());
    let mut components = BTreeMap::new();
    for n in 1..=max_arity {
        for seq in f.source.quiver().sequences(n) {
            let space = f.source.quiver().tensor_space(&seq).unwrap();
            let target = g
                .target
                .quiver()
                .hom(object_map[seq[0]], object_map[seq[n]]);
            if target.is_zero() {
                continue;
            }
            let zero = GradedMap::zero(space.module().clone(), target, 0);
            let mut acc = zero.clone();
            for l in 1..=n {
                let block = f.expand_f(&seq, l)?;
                acc = acc.add(&block.contract_with(|tseq| g.bare(tseq), zero.clone()));
            }
            if !acc.is_zero() {
                components.insert(seq, acc);
            }
        }
    }
    Ok(AInfFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        object_map,
        components,
    })
}
