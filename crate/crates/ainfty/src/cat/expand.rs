//! Block expansions of coderivations and cocategory homomorphisms.
//!
//! A map T sA -> T sB determined by components is evaluated blockwise: for a
//! fixed source sequence and target arity l, the block is a sum of grouped
//! tensor applications, one per interleaving of components. Each summand
//! lands in a specific target object sequence; blocks are collected per
//! sequence.

use super::quiver::{ObjSeq, Quiver};
use crate::exactlin::{tensor_apply, Field, GradedMap, TensorFactor, TensorSpace};
use std::collections::BTreeMap;

/// A map from the tensor slot over one source sequence into the direct sum
/// of all T^l-slots of the target, stored per target sequence.
#[derive(Clone, Debug)]
pub struct SeqBlockMap<F: Field> {
    pub source_seq: ObjSeq,
    pub target_arity: usize,
    pub blocks: BTreeMap<ObjSeq, GradedMap<F>>,
}

impl<F: Field> SeqBlockMap<F> {
    pub fn new(source_seq: ObjSeq, target_arity: usize) -> Self {
        SeqBlockMap {
            source_seq,
            target_arity,
            blocks: BTreeMap::new(),
        }
    }

    pub fn add_block(&mut self, seq: ObjSeq, map: GradedMap<F>) {
        assert!(seq.len() == self.target_arity + 1, "target arity mismatch");
        if map.is_zero() {
            return;
        }
        match self.blocks.get_mut(&seq) {
            None => {
                self.blocks.insert(seq, map);
            }
            Some(cur) => *cur = cur.add(&map),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Post-compose every block with a bare component selected per target
    /// sequence, and sum the results into a single graded map.
    pub fn contract_with(
        &self,
        mut bare: impl FnMut(&ObjSeq) -> GradedMap<F>,
        zero: GradedMap<F>,
    ) -> GradedMap<F> {
        let mut acc = zero;
        for (seq, blk) in &self.blocks {
            let comp = bare(seq);
            if comp.is_zero() {
                continue;
            }
            acc = acc.add(&blk.then(&comp));
        }
        acc
    }
}

/// One factor in an interleaving: which component map to apply and how many
/// source slots it consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermFactor {
    /// Functor component: (chain level, arity consumed).
    Functor(usize, usize),
    /// Coderivation component: (chain level 1..=n, arity consumed).
    Coder(usize, usize),
}

/// The data needed to expand maps determined by components: bare component
/// lookups for a chain f^0 -r^1-> f^1 ... -r^n-> f^n.
pub trait ChainLike<F: Field> {
    fn levels(&self) -> usize;
    fn source_quiver(&self) -> &Quiver;
    /// Object map of the p-th functor (0 ..= levels).
    fn functor_object(&self, p: usize, x: usize) -> usize;
    /// Bare functor component of level p on a source sequence (arity >= 1).
    fn functor_component(&self, p: usize, seq: &[usize]) -> GradedMap<F>;
    /// Bare coderivation component of level p (1 ..= levels) on a sequence
    /// (arity >= 0).
    fn coderivation_component(&self, p: usize, seq: &[usize]) -> GradedMap<F>;
    /// Degree of the p-th coderivation.
    fn coderivation_degree(&self, p: usize) -> i32;
}

/// Enumerate all interleavings for the block T^k(source_seq) -> T^l and
/// evaluate them. Each term is reported to `sink` (term descriptor, target
/// sequence, evaluated map); the caller accumulates.
pub fn expand_terms<F: Field, C: ChainLike<F>>(
    chain: &C,
    source_seq: &[usize],
    target_arity: usize,
    sink: &mut impl FnMut(&[TermFactor], ObjSeq, GradedMap<F>),
) {
    let n = chain.levels();
    let k = source_seq.len() - 1;
    let l = target_arity;
    // θ_{kl} vanishes unless n <= l <= k + n
    if l < n || l > k + n {
        return;
    }
    let Some(space) = chain.source_quiver().tensor_space(source_seq) else {
        return;
    };
    // recursive enumeration over factor kinds and arities
    let mut factors: Vec<TermFactor> = Vec::new();
    rec_expand(
        chain,
        source_seq,
        &space,
        l,
        0,
        0,
        &mut factors,
        sink,
    );
}

#[allow(clippy::too_many_arguments)]
fn rec_expand<F: Field, C: ChainLike<F>>(
    chain: &C,
    seq: &[usize],
    space: &TensorSpace,
    slots_left_to_emit: usize,
    level: usize,
    pos: usize,
    factors: &mut Vec<TermFactor>,
    sink: &mut impl FnMut(&[TermFactor], ObjSeq, GradedMap<F>),
) {
    let n = chain.levels();
    let k = seq.len() - 1;
    if slots_left_to_emit == 0 {
        if level == n && pos == k {
            evaluate_term(chain, seq, space, factors, sink);
        }
        return;
    }
    let remaining_r = n - level;
    // a functor component of the current level: arity >= 1
    // (only useful if enough emissions remain for the pending coderivations)
    if slots_left_to_emit > remaining_r {
        for arity in 1..=(k - pos) {
            factors.push(TermFactor::Functor(level, arity));
            rec_expand(
                chain,
                seq,
                space,
                slots_left_to_emit - 1,
                level,
                pos + arity,
                factors,
                sink,
            );
            factors.pop();
        }
    }
    // the next coderivation: arity >= 0
    if level < n {
        for arity in 0..=(k - pos) {
            factors.push(TermFactor::Coder(level + 1, arity));
            rec_expand(
                chain,
                seq,
                space,
                slots_left_to_emit - 1,
                level + 1,
                pos + arity,
                factors,
                sink,
            );
            factors.pop();
        }
    }
}

fn evaluate_term<F: Field, C: ChainLike<F>>(
    chain: &C,
    seq: &[usize],
    space: &TensorSpace,
    factors: &[TermFactor],
    sink: &mut impl FnMut(&[TermFactor], ObjSeq, GradedMap<F>),
) {
    // resolve components and the target object sequence
    let mut maps: Vec<GradedMap<F>> = Vec::with_capacity(factors.len());
    let mut consume: Vec<usize> = Vec::with_capacity(factors.len());
    let mut target_seq: ObjSeq = Vec::with_capacity(factors.len() + 1);
    let mut pos = 0usize;
    target_seq.push(chain.functor_object(0, seq[0]));
    for f in factors {
        let (map, arity) = match f {
            TermFactor::Functor(p, a) => {
                let sub = &seq[pos..=pos + a];
                (chain.functor_component(*p, sub), *a)
            }
            TermFactor::Coder(p, a) => {
                let sub = &seq[pos..=pos + a];
                (chain.coderivation_component(*p, sub), *a)
            }
        };
        if map.is_zero() {
            return;
        }
        pos += arity;
        let level_after = match f {
            TermFactor::Functor(p, _) => *p,
            TermFactor::Coder(p, _) => *p,
        };
        target_seq.push(chain.functor_object(level_after, seq[pos]));
        maps.push(map);
        consume.push(arity);
    }
    let tf: Vec<TensorFactor<F>> = maps
        .iter()
        .zip(consume.iter())
        .map(|(m, c)| TensorFactor {
            map: m,
            consume: *c,
        })
        .collect();
    let evaluated = tensor_apply(space, &tf);
    if !evaluated.is_zero() {
        sink(factors, target_seq, evaluated);
    }
}

/// Expand the block of a chain (θ for chains, f_{kl} for bare functors,
/// r_{kl} for single coderivations) into a `SeqBlockMap`.
pub fn expand_block<F: Field, C: ChainLike<F>>(
    chain: &C,
    source_seq: &[usize],
    target_arity: usize,
) -> SeqBlockMap<F> {
    let mut out = SeqBlockMap::new(source_seq.to_vec(), target_arity);
    expand_terms(chain, source_seq, target_arity, &mut |_, tseq, map| {
        out.add_block(tseq, map)
    });
    out
}
