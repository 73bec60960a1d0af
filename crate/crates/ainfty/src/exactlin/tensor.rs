//! Tensor products of graded modules and the Koszul-signed tensor calculus.
//!
//! The sign convention is the Getzler-Jones / right-operator rule
//! `(x ⊗ y)(f ⊗ g) = (-1)^{deg y · deg f} xf ⊗ yg`: an operator passes every
//! element standing to its right. For a multi-factor application the sign
//! exponent is `Σ_{i<j} deg(factor_i) · deg(group_j)` where group j is the
//! slice of elements consumed by factor j.

use super::field::Field;
use super::gmap::GradedMap;
use super::matrix::Matrix;
use super::module::{Degree, GradedModule};
use std::collections::BTreeMap;

/// The tensor product of an ordered list of graded modules, with a canonical
/// deterministic basis enumeration: tuples ordered lexicographically by the
/// factors' (degree, index) pairs, first factor most significant, grouped by
/// total degree.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    factors: Vec<GradedModule>,
    module: GradedModule,
    /// total degree -> ordered tuples of per-factor (degree, index)
    tuples: BTreeMap<Degree, Vec<Vec<(Degree, usize)>>>,
    index: BTreeMap<Vec<(Degree, usize)>, usize>,
}

impl TensorSpace {
    pub fn new(factors: Vec<GradedModule>) -> Self {
        // enumerate per-factor bases in (degree, index) order
        let per_factor: Vec<Vec<(Degree, usize)>> = factors
            .iter()
            .map(|m| {
                let mut v = Vec::new();
                for d in m.degrees() {
                    for i in 0..m.dim(d) {
                        v.push((d, i));
                    }
                }
                v
            })
            .collect();
        let mut tuples: BTreeMap<Degree, Vec<Vec<(Degree, usize)>>> = BTreeMap::new();
        // cartesian product, first factor most significant
        let mut stack: Vec<Vec<(Degree, usize)>> = vec![Vec::new()];
        for choices in &per_factor {
            let mut next = Vec::with_capacity(stack.len() * choices.len());
            for prefix in &stack {
                for c in choices {
                    let mut t = prefix.clone();
                    t.push(*c);
                    next.push(t);
                }
            }
            stack = next;
        }
        for t in stack {
            let total: Degree = t.iter().map(|(d, _)| d).sum();
            tuples.entry(total).or_default().push(t);
        }
        let mut index = BTreeMap::new();
        let mut components = BTreeMap::new();
        for (total, ts) in &tuples {
            let mut labels = Vec::with_capacity(ts.len());
            for (i, t) in ts.iter().enumerate() {
                index.insert(t.clone(), i);
                let label = if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter()
                        .enumerate()
                        .map(|(k, (d, j))| factors[k].labels(*d)[*j].clone())
                        .collect::<Vec<_>>()
                        .join("⊗")
                };
                labels.push(label);
            }
            components.insert(*total, labels);
        }
        // ensure labels are unique within a degree: if any clash, suffix all
        // labels of that degree with their row index
        for labels in components.values_mut() {
            let distinct: std::collections::BTreeSet<&String> = labels.iter().collect();
            if distinct.len() != labels.len() {
                for (i, l) in labels.iter_mut().enumerate() {
                    *l = format!("{l}#{i}");
                }
            }
        }
        TensorSpace {
            factors,
            module: GradedModule::from_components(components),
            tuples,
            index,
        }
    }

    pub fn factors(&self) -> &[GradedModule] {
        &self.factors
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn tuples(&self, total: Degree) -> &[Vec<(Degree, usize)>] {
        self.tuples.get(&total).map_or(&[][..], |v| v.as_slice())
    }

    pub fn index_of(&self, tuple: &[(Degree, usize)]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Permutation identifying `self.module` with the 2-factor tensor of the
    /// first `k` factors and the rest (pure regrouping, no signs).
    pub fn regroup<F: Field>(&self, k: usize) -> (TensorSpace, TensorSpace, GradedMap<F>) {
        let pre = TensorSpace::new(self.factors[..k].to_vec());
        let suf = TensorSpace::new(self.factors[k..].to_vec());
        let pair = TensorSpace::new(vec![pre.module.clone(), suf.module.clone()]);
        let mut map = GradedMap::zero(self.module.clone(), pair.module.clone(), 0);
        for total in self.module.degrees() {
            let mut m = Matrix::zero(self.module.dim(total), pair.module.dim(total));
            for (i, t) in self.tuples(total).iter().enumerate() {
                let (tp, ts) = t.split_at(k);
                let dp: Degree = tp.iter().map(|(d, _)| d).sum();
                let ds: Degree = ts.iter().map(|(d, _)| d).sum();
                let ip = pre.index_of(tp).expect("prefix tuple");
                let is_ = suf.index_of(ts).expect("suffix tuple");
                let j = pair
                    .index_of(&[(dp, ip), (ds, is_)])
                    .expect("pair tuple");
                m.set(i, j, F::one());
            }
            if !m.is_zero() {
                map.set_block(total, m);
            }
        }
        (pre, suf, map)
    }
}

/// One factor of a grouped tensor application: a map together with the number
/// of source slots it consumes (0 = it is fed the ground field).
pub struct TensorFactor<'a, F: Field> {
    pub map: &'a GradedMap<F>,
    pub consume: usize,
}

/// Apply `factors[0] ⊗ ... ⊗ factors[m-1]` to the tensor space `src`, where
/// factor i consumes `consume_i` consecutive slots. Returns the map from
/// `src.module()` to the tensor of the factor targets, with Koszul signs.
///
/// Each factor's source module must match the tensor of its consumed slots
/// (the slot module itself for one slot, the unit module for zero slots).
pub fn tensor_apply<F: Field>(src: &TensorSpace, factors: &[TensorFactor<F>]) -> GradedMap<F> {
    let total_consumed: usize = factors.iter().map(|f| f.consume).sum();
    assert!(
        total_consumed == src.factors().len(),
        "factors consume {total_consumed} slots, source has {}",
        src.factors().len()
    );
    // group boundaries and per-group index spaces
    let mut starts = Vec::with_capacity(factors.len());
    let mut acc = 0;
    for f in factors {
        starts.push(acc);
        acc += f.consume;
    }
    let group_spaces: Vec<Option<TensorSpace>> = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if f.consume == 1 {
                assert!(
                    f.map.source().shape_eq(&src.factors()[starts[i]]),
                    "factor {i} source does not match its slot"
                );
                None
            } else {
                let ts = TensorSpace::new(
                    src.factors()[starts[i]..starts[i] + f.consume].to_vec(),
                );
                assert!(
                    f.map.source().shape_eq(ts.module()),
                    "factor {i} source does not match its {} slots",
                    f.consume
                );
                Some(ts)
            }
        })
        .collect();
    let target_space = TensorSpace::new(factors.iter().map(|f| f.map.target().clone()).collect());
    let mut out = GradedMap::zero(
        src.module().clone(),
        target_space.module().clone(),
        factors.iter().map(|f| f.map.degree()).sum(),
    );

    let mut blocks: BTreeMap<Degree, Matrix<F>> = BTreeMap::new();
    for total in src.module().degrees() {
        for (row, tuple) in src.tuples(total).iter().enumerate() {
            // group elements and degrees
            let mut group_deg = Vec::with_capacity(factors.len());
            let mut group_idx = Vec::with_capacity(factors.len());
            for (i, f) in factors.iter().enumerate() {
                let slots = &tuple[starts[i]..starts[i] + f.consume];
                let d: Degree = slots.iter().map(|(d, _)| d).sum();
                let idx = match &group_spaces[i] {
                    None => slots[0].1,
                    Some(ts) => {
                        if f.consume == 0 {
                            0
                        } else {
                            ts.index_of(slots).expect("group tuple")
                        }
                    }
                };
                group_deg.push(d);
                group_idx.push(idx);
            }
            // Koszul sign: factor i (its map degree) passes groups j > i
            let mut exponent: i64 = 0;
            for (i, f) in factors.iter().enumerate() {
                let passed: Degree = group_deg[i + 1..].iter().sum();
                exponent += (f.map.degree() as i64) * (passed as i64);
            }
            let sign = if exponent.rem_euclid(2) == 0 {
                F::one()
            } else {
                F::one().neg()
            };
            // per-factor images as sparse vectors in (target degree, index, coeff)
            let mut images: Vec<Vec<(Degree, usize, F)>> = Vec::with_capacity(factors.len());
            let mut dead = false;
            for (i, f) in factors.iter().enumerate() {
                let sd = group_deg[i];
                let block = f.map.block(sd);
                let td = sd + f.map.degree();
                let mut img = Vec::new();
                if block.rows() > 0 {
                    for j in 0..block.cols() {
                        let v = block.get(group_idx[i], j);
                        if !v.is_zero() {
                            img.push((td, j, v));
                        }
                    }
                }
                if img.is_empty() {
                    dead = true;
                    break;
                }
                images.push(img);
            }
            if dead {
                continue;
            }
            // expand the product of images into target tuples (odometer)
            let total_out = total + out.degree();
            let mut picks = vec![0usize; factors.len()];
            'odometer: loop {
                let mut coeff = sign.clone();
                let mut ttuple = Vec::with_capacity(factors.len());
                for (i, &p) in picks.iter().enumerate() {
                    let (d, j, ref v) = images[i][p];
                    coeff = coeff.mul(v);
                    ttuple.push((d, j));
                }
                debug_assert!(ttuple.iter().map(|(d, _)| d).sum::<Degree>() == total_out);
                let col = target_space.index_of(&ttuple).expect("target tuple");
                let block = blocks.entry(total).or_insert_with(|| {
                    Matrix::zero(
                        src.module().dim(total),
                        target_space.module().dim(total_out),
                    )
                });
                block.add_assign_at(row, col, &coeff);
                // advance
                let mut k = factors.len();
                while k > 0 {
                    k -= 1;
                    picks[k] += 1;
                    if picks[k] < images[k].len() {
                        continue 'odometer;
                    }
                    picks[k] = 0;
                }
                break;
            }
        }
    }
    for (d, m) in blocks {
        if !m.is_zero() {
            out.set_block(d, m);
        }
    }
    out
}

/// Binary Koszul tensor product of maps, as an operation on the canonical
/// two-factor tensor spaces.
pub fn tensor_maps<F: Field>(f: &GradedMap<F>, g: &GradedMap<F>) -> GradedMap<F> {
    let src = TensorSpace::new(vec![f.source().clone(), g.source().clone()]);
    tensor_apply(
        &src,
        &[
            TensorFactor { map: f, consume: 1 },
            TensorFactor { map: g, consume: 1 },
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{Field, Rat};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn rand_map(
        src: &GradedModule,
        tgt: &GradedModule,
        degree: Degree,
        seed: &mut u64,
    ) -> GradedMap<Rat> {
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*seed >> 33) % 7) as i64 - 3
        };
        GradedMap::from_block_fn(src.clone(), tgt.clone(), degree, |d| {
            Matrix::from_fn(src.dim(d), tgt.dim(d + degree), |_, _| q(next(), 1))
        })
    }

    #[test]
    fn no_sign_when_degrees_even() {
        // deg f = 0 or deg y = 0 -> no sign
        let a = GradedModule::from_dims(&[(0, 1)]);
        let b = GradedModule::from_dims(&[(0, 1)]);
        let f = GradedMap::from_block_fn(a.clone(), a.clone(), 0, |_| {
            Matrix::from_fn(1, 1, |_, _| q(2, 1))
        });
        let g = GradedMap::from_block_fn(b.clone(), b.clone(), 0, |_| {
            Matrix::from_fn(1, 1, |_, _| q(3, 1))
        });
        let t = tensor_maps(&f, &g);
        assert_eq!(t.block(0).get(0, 0), q(6, 1));
    }

    #[test]
    fn koszul_sign_on_odd_odd() {
        // deg f = 1, deg y = 1 -> sign -1 on that block
        let a = GradedModule::from_dims(&[(0, 1), (1, 1)]);
        let f = GradedMap::from_block_fn(a.clone(), a.clone(), 1, |d| {
            Matrix::from_fn(a.dim(d), a.dim(d + 1), |_, _| q(1, 1))
        });
        let idb = GradedMap::<Rat>::identity(&a);
        let t = tensor_maps(&f, &idb);
        // source slot degrees (0,1): element x⊗y with deg y = 1, deg f = 1
        let src = TensorSpace::new(vec![a.clone(), a.clone()]);
        let row = src.index_of(&[(0, 0), (1, 0)]).unwrap();
        let tgt = TensorSpace::new(vec![a.clone(), a.clone()]);
        let col = tgt.index_of(&[(1, 0), (1, 0)]).unwrap();
        assert_eq!(t.block(1).get(row, col), q(-1, 1));
        // element x⊗y with deg y = 0: no sign
        let row2 = src.index_of(&[(0, 0), (0, 0)]).unwrap();
        let col2 = tgt.index_of(&[(1, 0), (0, 0)]).unwrap();
        assert_eq!(t.block(0).get(row2, col2), q(1, 1));
    }

    #[test]
    fn interchange_with_sign() {
        // (f⊗g)(f'⊗g') = (-1)^{deg g · deg f'} (ff')⊗(gg')
        let mut seed = 42u64;
        let m = GradedModule::from_dims(&[(-1, 2), (0, 1), (1, 2)]);
        for (dg_f, dg_g, dg_f2, dg_g2) in
            [(1, 1, 1, 1), (0, 1, 1, 0), (1, -1, 1, 1), (-1, 1, -1, -1)]
        {
            let f = rand_map(&m, &m, dg_f, &mut seed);
            let g = rand_map(&m, &m, dg_g, &mut seed);
            let f2 = rand_map(&m, &m, dg_f2, &mut seed);
            let g2 = rand_map(&m, &m, dg_g2, &mut seed);
            let lhs = tensor_maps(&f, &g).then(&tensor_maps(&f2, &g2));
            let mut rhs = tensor_maps(&f.then(&f2), &g.then(&g2));
            if (dg_g * dg_f2).rem_euclid(2) == 1 {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "interchange failed for degrees {dg_f},{dg_g},{dg_f2},{dg_g2}");
        }
    }

    #[test]
    fn tensor_differential_squares_to_zero() {
        // d⊗1 + 1⊗d squares to zero thanks to the Koszul sign
        let m = GradedModule::from_dims(&[(0, 2), (1, 2)]);
        let mut seed = 7u64;
        let d = rand_map(&m, &m, 1, &mut seed);
        // force d^2 = 0: with support only in degrees 0->1 this is automatic
        assert!(d.then(&d).is_zero());
        let id = GradedMap::<Rat>::identity(&m);
        let big = tensor_maps(&d, &id).add(&tensor_maps(&id, &d));
        assert!(big.then(&big).is_zero());
    }

    #[test]
    fn zero_slot_factors_feed_unit() {
        // an element factor (consume 0) inserted between identities
        let m = GradedModule::from_dims(&[(-1, 2)]);
        let e = GradedMap::element(&m, -1, vec![q(1, 1), q(2, 1)]);
        let src = TensorSpace::new(vec![m.clone()]);
        let out = tensor_apply(
            &src,
            &[
                TensorFactor { map: &e, consume: 0 },
                TensorFactor {
                    map: &GradedMap::identity(&m),
                    consume: 1,
                },
            ],
        );
        // sign: e (degree -1) passes one element of degree -1 -> -1
        let tgt = TensorSpace::new(vec![m.clone(), m.clone()]);
        let col = tgt.index_of(&[(-1, 0), (-1, 0)]).unwrap();
        assert_eq!(out.block(-1).get(0, col), q(-1, 1));
        // insertion after: no sign
        let out2 = tensor_apply(
            &src,
            &[
                TensorFactor {
                    map: &GradedMap::identity(&m),
                    consume: 1,
                },
                TensorFactor { map: &e, consume: 0 },
            ],
        );
        assert_eq!(out2.block(-1).get(0, col), q(1, 1));
    }

    #[test]
    fn regroup_is_permutation() {
        let a = GradedModule::from_dims(&[(0, 1), (1, 1)]);
        let ts = TensorSpace::new(vec![a.clone(), a.clone(), a.clone()]);
        let (_, _, re) = ts.regroup::<Rat>(1);
        for d in ts.module().degrees() {
            let m = re.block(d);
            // each row has exactly one 1
            for i in 0..m.rows() {
                let ones: Vec<_> = (0..m.cols()).filter(|&j| !m.get(i, j).is_zero()).collect();
                assert_eq!(ones.len(), 1);
                assert!(m.get(i, ones[0]).is_one());
            }
        }
    }
}
