//! Translation between the shifted components b_n and the traditional
//! m_n = s^{⊗n} b_n s^{-1} on the unshifted quiver. The round trip is exact;
//! the m-family satisfies the signed Stasheff identity iff the b-family
//! satisfies b² = 0.

use super::category::AInfCategory;
use super::quiver::ObjSeq;
use crate::exactlin::{tensor_apply, Field, GradedMap, GradedModule, TensorFactor, TensorSpace};
use std::collections::BTreeMap;

/// The traditional component family m_n on the unshifted quiver, with
/// m_n of degree 2 - n.
#[derive(Clone, Debug, PartialEq)]
pub struct MComponents<F: Field> {
    /// unshifted hom modules per pair
    pub homs: BTreeMap<(usize, usize), GradedModule>,
    /// seq -> m_n
    pub components: BTreeMap<ObjSeq, GradedMap<F>>,
}

fn unshifted_hom<F: Field>(cat: &AInfCategory<F>, x: usize, y: usize) -> GradedModule {
    cat.quiver().hom(x, y).shift(-1)
}

/// The iterated suspension s^{⊗n} over a sequence, as a concrete graded map
/// from the unshifted tensor slot to the shifted one (Koszul signs included).
fn suspension_power<F: Field>(cat: &AInfCategory<F>, seq: &[usize]) -> GradedMap<F> {
    let unshifted: Vec<GradedModule> = seq
        .windows(2)
        .map(|w| unshifted_hom(cat, w[0], w[1]))
        .collect();
    let space = TensorSpace::new(unshifted.clone());
    let maps: Vec<GradedMap<F>> = unshifted
        .iter()
        .map(|m| GradedMap::suspension(m))
        .collect();
    let tf: Vec<TensorFactor<F>> = maps
        .iter()
        .map(|m| TensorFactor { map: m, consume: 1 })
        .collect();
    tensor_apply(&space, &tf)
}

/// m_n = s^{⊗n} b_n s^{-1}, computed per sequence.
pub fn m_components_from_b<F: Field>(cat: &AInfCategory<F>) -> MComponents<F> {
    let mut homs = BTreeMap::new();
    for (&(x, y), _) in cat.quiver().hom_entries() {
        homs.insert((x, y), unshifted_hom(cat, x, y));
    }
    let mut components = BTreeMap::new();
    for (seq, b) in cat.components() {
        let n = seq.len() - 1;
        let sn = suspension_power(cat, seq);
        let s_inv = GradedMap::<F>::suspension(&unshifted_hom(cat, seq[0], seq[n]))
            .inverse()
            .expect("suspension invertible");
        let m = sn.then(b).then(&s_inv);
        if !m.is_zero() {
            components.insert(seq.clone(), m);
        }
    }
    MComponents { homs, components }
}

/// b_n = (s^{⊗n})^{-1} m_n s, inverse to [`m_components_from_b`].
pub fn b_components_from_m<F: Field>(
    cat_shape: &AInfCategory<F>,
    m: &MComponents<F>,
) -> BTreeMap<ObjSeq, GradedMap<F>> {
    let mut out = BTreeMap::new();
    for (seq, mn) in &m.components {
        let n = seq.len() - 1;
        let sn_inv = suspension_power(cat_shape, seq)
            .inverse()
            .expect("suspension power invertible");
        let s = GradedMap::<F>::suspension(&unshifted_hom(cat_shape, seq[0], seq[n]));
        let b = sn_inv.then(mn).then(&s);
        if !b.is_zero() {
            out.insert(seq.clone(), b);
        }
    }
    out
}
