//! Built-in instances: small differential graded categories presented in the
//! traditional (unshifted) form and converted through the m -> b boundary.
//!
//! * `dual` — the dual numbers k[ε]/(ε²) as a one-object DG algebra.
//! * `broken_dual` — the same quiver with a planted non-associative product;
//!   the Stasheff check must fail exactly at arity 3.
//! * `two_obj_dg` — upper-triangular 2x2 matrices split into two objects,
//!   with the off-diagonal generator placed in degree 1.
//! * `two_complexes` — the DG category of two quasi-isomorphic complexes
//!   (hom complexes with composition), the H⁰ showcase.

use crate::cat::{
    b_components_from_m, AInfCategory, AInfCategoryBuilder, MComponents, ObjSeq, Quiver,
};
use crate::exactlin::{
    Complex, Field, GradedMap, GradedModule, HomComplexOf, Matrix, TensorSpace,
};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Assemble an A∞-category from unshifted DG data: hom modules, differentials
/// m_1 and compositions m_2 (all other m_n zero).
pub fn dg_category<F: Field>(
    objects: Vec<String>,
    homs_unshifted: BTreeMap<(usize, usize), GradedModule>,
    m1: BTreeMap<(usize, usize), GradedMap<F>>,
    m2: BTreeMap<ObjSeq, GradedMap<F>>,
    max_arity: usize,
) -> AInfCategory<F> {
    let shifted: BTreeMap<(usize, usize), GradedModule> = homs_unshifted
        .iter()
        .map(|(&k, m)| (k, m.shift(1)))
        .collect();
    let quiver = Quiver::new(objects, shifted);
    let shape = AInfCategoryBuilder::<F>::new(quiver.clone(), max_arity).build();
    let mut mcomps = MComponents {
        homs: homs_unshifted,
        components: BTreeMap::new(),
    };
    for ((x, y), m) in m1 {
        assert!(m.degree() == 1);
        if !m.is_zero() {
            mcomps.components.insert(vec![x, y], m);
        }
    }
    for (seq, m) in m2 {
        assert!(seq.len() == 3 && m.degree() == 0);
        if !m.is_zero() {
            mcomps.components.insert(seq, m);
        }
    }
    let b = b_components_from_m(&shape, &mcomps);
    let mut builder = AInfCategoryBuilder::new(quiver, max_arity);
    for (seq, map) in b {
        builder.set_component(&seq, map).expect("converted component");
    }
    builder.build()
}

/// A composition table on unshifted homs: rows are basis pairs of the tensor
/// square in canonical order.
fn m2_from_table<F: Field>(
    left: &GradedModule,
    right: &GradedModule,
    target: &GradedModule,
    mut product: impl FnMut(&str, &str) -> Vec<(String, F)>,
) -> GradedMap<F> {
    let space = TensorSpace::new(vec![left.clone(), right.clone()]);
    GradedMap::from_block_fn(space.module().clone(), target.clone(), 0, |d| {
        let tuples = space.tuples(d);
        Matrix::from_fn(tuples.len(), target.dim(d), |row, col| {
            let t = &tuples[row];
            let (ld, li) = t[0];
            let (rd, ri) = t[1];
            let lname = &left.labels(ld)[li];
            let rname = &right.labels(rd)[ri];
            let image = product(lname, rname);
            image
                .iter()
                .filter(|(n, _)| target.labels(d).get(col) == Some(n))
                .fold(F::zero(), |acc, (_, c)| acc.add(c))
        })
    })
}

/// The dual numbers k[ε]/(ε²): one object, hom = span{1, ε} in degree 0.
pub fn dual<F: Field>(max_arity: usize) -> Arc<AInfCategory<F>> {
    let hom = GradedModule::concentrated(0, vec!["1".into(), "e".into()]);
    let mut homs = BTreeMap::new();
    homs.insert((0, 0), hom.clone());
    let m2 = m2_from_table::<F>(&hom, &hom, &hom, |a, b| match (a, b) {
        ("1", "1") => vec![("1".to_string(), F::one())],
        ("1", "e") | ("e", "1") => vec![("e".to_string(), F::one())],
        _ => vec![],
    });
    let mut m2s = BTreeMap::new();
    m2s.insert(vec![0, 0, 0], m2);
    Arc::new(dg_category(
        vec!["*".into()],
        homs,
        BTreeMap::new(),
        m2s,
        max_arity,
    ))
}

/// The dual numbers with a planted non-associative product: ε·ε = 1.
/// check_stasheff fails exactly at arity 3.
pub fn broken_dual<F: Field>(max_arity: usize) -> Arc<AInfCategory<F>> {
    let hom = GradedModule::concentrated(0, vec!["1".into(), "e".into()]);
    let mut homs = BTreeMap::new();
    homs.insert((0, 0), hom.clone());
    let m2 = m2_from_table::<F>(&hom, &hom, &hom, |a, b| match (a, b) {
        ("1", "1") => vec![("1".to_string(), F::one())],
        ("1", "e") | ("e", "1") => vec![("e".to_string(), F::one())],
        ("e", "e") => vec![("1".to_string(), F::one())],
        _ => vec![],
    });
    let mut m2s = BTreeMap::new();
    m2s.insert(vec![0, 0, 0], m2);
    Arc::new(dg_category(
        vec!["*".into()],
        homs,
        BTreeMap::new(),
        m2s,
        max_arity,
    ))
}

/// Upper-triangular 2x2 matrices as a two-object DG category with zero
/// differential; the off-diagonal arrow sits in degree 1 so Koszul signs are
/// exercised throughout.
pub fn two_obj_dg<F: Field>(max_arity: usize) -> Arc<AInfCategory<F>> {
    let epp = GradedModule::concentrated(0, vec!["e11".into()]);
    let eqq = GradedModule::concentrated(0, vec!["e22".into()]);
    let epq = GradedModule::concentrated(1, vec!["e12".into()]);
    let mut homs = BTreeMap::new();
    homs.insert((0, 0), epp.clone());
    homs.insert((1, 1), eqq.clone());
    homs.insert((0, 1), epq.clone());
    let table = |a: &str, b: &str| -> Vec<(String, F)> {
        let prod = match (a, b) {
            ("e11", "e11") => Some("e11"),
            ("e22", "e22") => Some("e22"),
            ("e11", "e12") => Some("e12"),
            ("e12", "e22") => Some("e12"),
            _ => None,
        };
        prod.map(|p| vec![(p.to_string(), F::one())])
            .unwrap_or_default()
    };
    let mut m2s = BTreeMap::new();
    let pick = |x: usize, y: usize| -> &GradedModule {
        match (x, y) {
            (0, 0) => &epp,
            (1, 1) => &eqq,
            (0, 1) => &epq,
            _ => unreachable!(),
        }
    };
    for seq in [
        vec![0usize, 0, 0],
        vec![0, 0, 1],
        vec![0, 1, 1],
        vec![1, 1, 1],
    ] {
        let m2 = m2_from_table::<F>(
            pick(seq[0], seq[1]),
            pick(seq[1], seq[2]),
            pick(seq[0], seq[2]),
            table,
        );
        m2s.insert(seq, m2);
    }
    Arc::new(dg_category(
        vec!["P".into(), "Q".into()],
        homs,
        BTreeMap::new(),
        m2s,
        max_arity,
    ))
}

/// The DG category of a finite family of complexes: homs are the inner hom
/// complexes, composition is composition of graded maps.
pub fn dg_category_of_complexes<F: Field>(
    named: Vec<(String, Complex<F>)>,
    max_arity: usize,
) -> Arc<AInfCategory<F>> {
    let n = named.len();
    let mut homs = BTreeMap::new();
    let mut m1 = BTreeMap::new();
    let mut hom_of: BTreeMap<(usize, usize), HomComplexOf<F>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let h = HomComplexOf::new(&named[x].1, &named[y].1);
            if h.complex.module().is_zero() {
                continue;
            }
            homs.insert((x, y), h.complex.module().clone());
            m1.insert((x, y), h.complex.d().clone());
            hom_of.insert((x, y), h);
        }
    }
    let mut m2s = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (Some(hxy), Some(hyz), Some(hxz)) = (
                    hom_of.get(&(x, y)),
                    hom_of.get(&(y, z)),
                    hom_of.get(&(x, z)),
                ) else {
                    continue;
                };
                // composition on basis pairs of hom elements
                let left = hxy.complex.module().clone();
                let right = hyz.complex.module().clone();
                let target = hxz.complex.module().clone();
                let space = TensorSpace::new(vec![left.clone(), right.clone()]);
                let m2 = GradedMap::from_block_fn(
                    space.module().clone(),
                    target.clone(),
                    0,
                    |d| {
                        let tuples = space.tuples(d);
                        let mut mat = Matrix::zero(tuples.len(), target.dim(d));
                        for (row, t) in tuples.iter().enumerate() {
                            let (ld, li) = t[0];
                            let (rd, ri) = t[1];
                            let f = hxy.decode(&GradedMap::element(
                                &left,
                                ld,
                                unit_coords(left.dim(ld), li),
                            ));
                            let g = hyz.decode(&GradedMap::element(
                                &right,
                                rd,
                                unit_coords(right.dim(rd), ri),
                            ));
                            let fg = f.then(&g);
                            let enc = hxz.encode(&fg).element_coords();
                            for (col, v) in enc.into_iter().enumerate() {
                                if !v.is_zero() {
                                    mat.add_assign_at(row, col, &v);
                                }
                            }
                        }
                        mat
                    },
                );
                if !m2.is_zero() {
                    m2s.insert(vec![x, y, z], m2);
                }
            }
        }
    }
    Arc::new(dg_category(
        named.into_iter().map(|(name, _)| name).collect(),
        homs,
        m1,
        m2s,
        max_arity,
    ))
}

fn unit_coords<F: Field>(len: usize, which: usize) -> Vec<F> {
    (0..len)
        .map(|i| if i == which { F::one() } else { F::zero() })
        .collect()
}

/// Two quasi-isomorphic complexes: K = k@0 ⊕ (k -> k)@(1,2) and L = k@0,
/// as a DG category. H⁰ of this category contains an isomorphism K ≅ L.
pub fn two_complexes<F: Field>(max_arity: usize) -> Arc<AInfCategory<F>> {
    let km = GradedModule::from_components(
        [
            (0, vec!["x".to_string()]),
            (1, vec!["u".to_string()]),
            (2, vec!["v".to_string()]),
        ]
        .into_iter()
        .collect(),
    );
    let mut d = GradedMap::zero(km.clone(), km.clone(), 1);
    let mut blk = Matrix::zero(1, 1);
    blk.set(0, 0, F::one());
    d.set_block(1, blk);
    let k = Complex::new(km, d).unwrap();
    let lm = GradedModule::concentrated(0, vec!["y".to_string()]);
    let l = Complex::<F>::with_zero_differential(lm);
    dg_category_of_complexes(vec![("K".into(), k), ("L".into(), l)], max_arity)
}
