//! A∞-categories as truncated families of differential components.

use super::expand::SeqBlockMap;
use super::quiver::{ObjSeq, Quiver};
use super::report::Report;
use crate::error::CatError;
use crate::exactlin::{tensor_apply, Complex, Field, GradedMap, TensorFactor};
use std::collections::BTreeMap;

/// An A∞-category: a graded quiver (shifted homs) with components b_n of
/// degree +1 for 1 <= n <= max_arity, indexed by object sequences.
///
/// b_0 = 0 is structural. The Stasheff identities are *verified* through the
/// truncation by [`AInfCategory::check_stasheff`], never assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AInfCategory<F: Field> {
    quiver: Quiver,
    max_arity: usize,
    components: BTreeMap<ObjSeq, GradedMap<F>>,
}

pub struct AInfCategoryBuilder<F: Field> {
    quiver: Quiver,
    max_arity: usize,
    components: BTreeMap<ObjSeq, GradedMap<F>>,
}

impl<F: Field> AInfCategoryBuilder<F> {
    pub fn new(quiver: Quiver, max_arity: usize) -> Self {
        assert!(max_arity >= 1, "truncation must be at least 1");
        AInfCategoryBuilder {
            quiver,
            max_arity,
            components: BTreeMap::new(),
        }
    }

    /// Install the component b_n over a sequence of n+1 objects.
    pub fn component(mut self, seq: &[usize], map: GradedMap<F>) -> Self {
        self.set_component(seq, map).expect("invalid component");
        self
    }

    pub fn set_component(&mut self, seq: &[usize], map: GradedMap<F>) -> Result<(), CatError> {
        let n = seq.len().checked_sub(1).expect("sequence needs an object");
        if n == 0 || n > self.max_arity {
            return Err(CatError::ArityOverflow {
                arity: n,
                max_arity: self.max_arity,
            });
        }
        if map.degree() != 1 {
            return Err(CatError::Precondition(format!(
                "b_{n} must have degree +1, got {}",
                map.degree()
            )));
        }
        let Some(space) = self.quiver.tensor_space(seq) else {
            if !map.is_zero() {
                return Err(CatError::Precondition(
                    "nonzero component over a vanishing tensor slot".into(),
                ));
            }
            return Ok(());
        };
        let target = self.quiver.hom(seq[0], seq[n]);
        if !map.source().shape_eq(space.module()) || !map.target().shape_eq(&target) {
            return Err(CatError::Precondition(format!(
                "b_{n} block shapes do not match the quiver over {:?}",
                self.quiver.seq_labels(seq)
            )));
        }
        if !map.is_zero() {
            self.components.insert(seq.to_vec(), map);
        }
        Ok(())
    }

    pub fn build(self) -> AInfCategory<F> {
        AInfCategory {
            quiver: self.quiver,
            max_arity: self.max_arity,
            components: self.components,
        }
    }
}

impl<F: Field> AInfCategory<F> {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn components(&self) -> &BTreeMap<ObjSeq, GradedMap<F>> {
        &self.components
    }

    /// The bare component b_n over a sequence, materialized with the correct
    /// shape (zero when absent).
    pub fn bare(&self, seq: &[usize]) -> GradedMap<F> {
        if let Some(m) = self.components.get(seq) {
            return m.clone();
        }
        let n = seq.len() - 1;
        let source = match self.quiver.tensor_space(seq) {
            Some(s) => s.module().clone(),
            None => crate::exactlin::GradedModule::zero(),
        };
        let target = self.quiver.hom(seq[0], seq[n]);
        GradedMap::zero(source, target, 1)
    }

    /// The hom complex (sA(X,Y), b_1).
    pub fn hom_complex(&self, x: usize, y: usize) -> Complex<F> {
        let m = self.quiver.hom(x, y);
        let d = self.bare(&[x, y]);
        Complex::new(m, d).expect("b_1 squares to zero")
    }

    /// The block b_{kl} = Σ_{r+n+t=k, r+1+t=l} 1^{⊗r} ⊗ b_n ⊗ 1^{⊗t} over a
    /// source sequence. Zero when k < l or l = 0.
    pub fn expand_b(&self, seq: &[usize], target_arity: usize) -> Result<SeqBlockMap<F>, CatError> {
        let k = seq.len() - 1;
        let l = target_arity;
        if k > self.max_arity + 1 || k == 0 {
            return Err(CatError::ArityOverflow {
                arity: k,
                max_arity: self.max_arity,
            });
        }
        let mut out = SeqBlockMap::new(seq.to_vec(), l);
        if l == 0 || k < l {
            return Ok(out);
        }
        let n = k - l + 1;
        if n > self.max_arity {
            return Ok(out); // components beyond the truncation are zero
        }
        let Some(space) = self.quiver.tensor_space(seq) else {
            return Ok(out);
        };
        for r in 0..l {
            let inner = &seq[r..=r + n];
            let b = self.bare(inner);
            if b.is_zero() {
                continue;
            }
            let mut maps: Vec<GradedMap<F>> = Vec::with_capacity(l);
            let mut consume = Vec::with_capacity(l);
            for slot in 0..r {
                maps.push(GradedMap::identity(&self.quiver.hom(seq[slot], seq[slot + 1])));
                consume.push(1);
            }
            maps.push(b);
            consume.push(n);
            for slot in r + n..k {
                maps.push(GradedMap::identity(&self.quiver.hom(seq[slot], seq[slot + 1])));
                consume.push(1);
            }
            let tf: Vec<TensorFactor<F>> = maps
                .iter()
                .zip(consume.iter())
                .map(|(m, c)| TensorFactor { map: m, consume: *c })
                .collect();
            let evaluated = tensor_apply(&space, &tf);
            let mut tseq: ObjSeq = seq[..=r].to_vec();
            tseq.extend_from_slice(&seq[r + n..]);
            out.add_block(tseq, evaluated);
        }
        Ok(out)
    }

    /// Verify Σ_{r+n+t=k} (1^{⊗r} ⊗ b_n ⊗ 1^{⊗t}) b_{r+1+t} = 0 for all
    /// 1 <= k <= max_arity and all object sequences.
    pub fn check_stasheff(&self, max_arity: usize) -> Report<F> {
        let mut report = Report::new("stasheff", max_arity);
        for k in 1..=max_arity {
            for seq in self.quiver.sequences(k) {
                let space = self.quiver.tensor_space(&seq).unwrap();
                let target = self.quiver.hom(seq[0], seq[k]);
                let zero = GradedMap::zero(space.module().clone(), target, 2);
                let mut acc = zero.clone();
                for l in 1..=k {
                    let block = match self.expand_b(&seq, l) {
                        Ok(b) => b,
                        Err(_) => continue,
                    };
                    acc = acc.add(&block.contract_with(|tseq| self.bare(tseq), zero.clone()));
                }
                report.check_zero(k, self.quiver.seq_labels(&seq), "b² component", acc);
            }
        }
        report
    }

    /// All sequences of a given arity with nonvanishing tensor slot.
    pub fn sequences(&self, arity: usize) -> Vec<ObjSeq> {
        self.quiver.sequences(arity)
    }
}
