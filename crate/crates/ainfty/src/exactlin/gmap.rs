//! Degree-homogeneous linear maps between graded modules.
//!
//! A `GradedMap` is the universal carrier for every component map in the
//! engine: differentials b_n, functor components f_n, coderivation
//! components r_n, homotopies, unit elements. Maps are right operators:
//! elements are row vectors and `x.compose(f).compose(g)` is `x f g`.

use super::field::Field;
use super::matrix::Matrix;
use super::module::{Degree, GradedModule};
use crate::error::ExactLinError;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap<F: Field> {
    source: GradedModule,
    target: GradedModule,
    degree: Degree,
    /// source degree d -> matrix from source_d to target_{d+degree}; missing = zero
    blocks: BTreeMap<Degree, Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for GradedMap<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "GradedMap(deg {}) {} -> {}",
            self.degree, self.source, self.target
        )?;
        for (d, m) in &self.blocks {
            writeln!(f, " @{d}: {m:?}")?;
        }
        Ok(())
    }
}

impl<F: Field> GradedMap<F> {
    pub fn zero(source: GradedModule, target: GradedModule, degree: Degree) -> Self {
        GradedMap {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(module: &GradedModule) -> Self {
        let mut blocks = BTreeMap::new();
        for d in module.degrees() {
            blocks.insert(d, Matrix::identity(module.dim(d)));
        }
        GradedMap {
            source: module.clone(),
            target: module.clone(),
            degree: 0,
            blocks,
        }
    }

    /// Build from explicit blocks; shapes are checked, zero blocks dropped.
    pub fn from_blocks(
        source: GradedModule,
        target: GradedModule,
        degree: Degree,
        blocks: BTreeMap<Degree, Matrix<F>>,
    ) -> Result<Self, ExactLinError> {
        for (d, m) in &blocks {
            let (r, c) = (source.dim(*d), target.dim(d + degree));
            if m.rows() != r || m.cols() != c {
                return Err(ExactLinError::ShapeMismatch {
                    source_degree: *d,
                    expected: (r, c),
                    got: (m.rows(), m.cols()),
                });
            }
        }
        let blocks = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(GradedMap {
            source,
            target,
            degree,
            blocks,
        })
    }

    pub fn from_block_fn(
        source: GradedModule,
        target: GradedModule,
        degree: Degree,
        mut f: impl FnMut(Degree) -> Matrix<F>,
    ) -> Self {
        let mut blocks = BTreeMap::new();
        for d in source.degrees() {
            if target.dim(d + degree) == 0 {
                continue;
            }
            let m = f(d);
            assert!(
                m.rows() == source.dim(d) && m.cols() == target.dim(d + degree),
                "block shape mismatch at degree {d}"
            );
            if !m.is_zero() {
                blocks.insert(d, m);
            }
        }
        GradedMap {
            source,
            target,
            degree,
            blocks,
        }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// The block at a source degree, materialized (zero if absent).
    pub fn block(&self, d: Degree) -> Matrix<F> {
        match self.blocks.get(&d) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.dim(d), self.target.dim(d + self.degree)),
        }
    }

    pub fn nonzero_blocks(&self) -> impl Iterator<Item = (&Degree, &Matrix<F>)> {
        self.blocks.iter()
    }

    pub fn set_block(&mut self, d: Degree, m: Matrix<F>) {
        assert!(
            m.rows() == self.source.dim(d) && m.cols() == self.target.dim(d + self.degree),
            "block shape mismatch at degree {d}"
        );
        if m.is_zero() {
            self.blocks.remove(&d);
        } else {
            self.blocks.insert(d, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Right-operator composition `self` then `g`; fails if the middle
    /// modules disagree, naming the offending degree.
    pub fn compose(&self, g: &GradedMap<F>) -> Result<GradedMap<F>, ExactLinError> {
        if !self.target.shape_eq(&g.source) {
            let bad = self
                .target
                .degrees()
                .chain(g.source.degrees())
                .find(|&d| self.target.dim(d) != g.source.dim(d))
                .unwrap_or(0);
            return Err(ExactLinError::ComposeMismatch {
                degree: bad,
                left_dim: self.target.dim(bad),
                right_dim: g.source.dim(bad),
            });
        }
        let degree = self.degree + g.degree;
        let mut blocks = BTreeMap::new();
        for (d, m) in &self.blocks {
            let mid = d + self.degree;
            let gm = g.block(mid);
            let prod = m.mul(&gm);
            if !prod.is_zero() {
                blocks.insert(*d, prod);
            }
        }
        Ok(GradedMap {
            source: self.source.clone(),
            target: g.target.clone(),
            degree,
            blocks,
        })
    }

    /// `self` then `g`, panicking on shape mismatch (internal plumbing).
    pub fn then(&self, g: &GradedMap<F>) -> GradedMap<F> {
        self.compose(g).expect("composition shape mismatch")
    }

    pub fn add(&self, other: &GradedMap<F>) -> GradedMap<F> {
        assert!(
            self.degree == other.degree
                && self.source.shape_eq(&other.source)
                && self.target.shape_eq(&other.target),
            "add on incompatible maps"
        );
        let mut out = self.clone();
        for (d, m) in &other.blocks {
            let cur = out.block(*d);
            out.set_block(*d, cur.add(m));
        }
        out
    }

    pub fn sub(&self, other: &GradedMap<F>) -> GradedMap<F> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> GradedMap<F> {
        if c.is_zero() {
            return GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        }
        let mut out = self.clone();
        let keys: Vec<Degree> = out.blocks.keys().cloned().collect();
        for d in keys {
            let m = out.blocks.get(&d).unwrap().scale(c);
            out.set_block(d, m);
        }
        out
    }

    pub fn neg(&self) -> GradedMap<F> {
        self.scale(&F::one().neg())
    }

    /// Blockwise two-sided inverse (requires equal dims in matched degrees).
    pub fn inverse(&self) -> Option<GradedMap<F>> {
        let mut blocks = BTreeMap::new();
        for d in self.source.degrees() {
            let td = d + self.degree;
            if self.source.dim(d) != self.target.dim(td) {
                return None;
            }
            if self.source.dim(d) == 0 {
                continue;
            }
            let inv = self.block(d).inverse()?;
            blocks.insert(td, inv);
        }
        // every target degree must be hit
        for td in self.target.degrees() {
            if self.target.dim(td) > 0 && self.source.dim(td - self.degree) != self.target.dim(td)
            {
                return None;
            }
        }
        Some(GradedMap {
            source: self.target.clone(),
            target: self.source.clone(),
            degree: -self.degree,
            blocks,
        })
    }

    /// The suspension `s: M -> M[1]` of degree -1 (identity on the underlying module).
    pub fn suspension(module: &GradedModule) -> GradedMap<F> {
        let shifted = module.shift(1);
        let mut blocks = BTreeMap::new();
        for d in module.degrees() {
            blocks.insert(d, Matrix::identity(module.dim(d)));
        }
        GradedMap {
            source: module.clone(),
            target: shifted,
            degree: -1,
            blocks,
        }
    }

    /// View an element as a map from the ground field: degree = element degree.
    pub fn element(target: &GradedModule, degree: Degree, coords: Vec<F>) -> GradedMap<F> {
        assert!(coords.len() == target.dim(degree), "coordinate length");
        let mut blocks = BTreeMap::new();
        let m = Matrix::from_rows(vec![coords]);
        if !m.is_zero() {
            blocks.insert(0, m);
        }
        GradedMap {
            source: GradedModule::unit(),
            target: target.clone(),
            degree,
            blocks,
        }
    }

    /// Coordinates of an element-map (source must be the unit module).
    pub fn element_coords(&self) -> Vec<F> {
        assert!(
            self.source.shape_eq(&GradedModule::unit()),
            "not an element"
        );
        let m = self.block(0);
        (0..m.cols()).map(|j| m.get(0, j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn identity_composes() {
        let m = GradedModule::from_dims(&[(0, 2), (1, 1)]);
        let id = GradedMap::<Rat>::identity(&m);
        let f = GradedMap::from_block_fn(m.clone(), m.clone(), 1, |d| {
            Matrix::from_fn(m.dim(d), m.dim(d + 1), |i, j| q((i + j) as i64, 1))
        });
        assert_eq!(id.then(&f), f);
        assert_eq!(f.then(&id), f);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn compose_error_names_degree() {
        let a = GradedModule::from_dims(&[(0, 2)]);
        let b = GradedModule::from_dims(&[(0, 3)]);
        let f = GradedMap::<Rat>::zero(a.clone(), a.clone(), 0);
        let g = GradedMap::<Rat>::zero(b.clone(), b.clone(), 0);
        let err = f.compose(&g).unwrap_err();
        match err {
            ExactLinError::ComposeMismatch {
                degree,
                left_dim,
                right_dim,
            } => {
                assert_eq!(degree, 0);
                assert_eq!((left_dim, right_dim), (2, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn degree_arithmetic() {
        // degree 1 then degree -1 composes to degree 0
        let m = GradedModule::from_dims(&[(0, 1), (1, 1)]);
        let up = GradedMap::from_block_fn(m.clone(), m.clone(), 1, |d| {
            Matrix::from_fn(m.dim(d), m.dim(d + 1), |_, _| q(2, 1))
        });
        let down = GradedMap::from_block_fn(m.clone(), m.clone(), -1, |d| {
            Matrix::from_fn(m.dim(d), m.dim(d - 1), |_, _| q(3, 1))
        });
        let c = up.then(&down);
        assert_eq!(c.degree(), 0);
        assert_eq!(c.block(0).get(0, 0), q(6, 1));
    }

    #[test]
    fn suspension_is_invertible() {
        let m = GradedModule::from_dims(&[(-1, 2), (3, 1)]);
        let s = GradedMap::<Rat>::suspension(&m);
        let s_inv = s.inverse().unwrap();
        assert_eq!(s.then(&s_inv), GradedMap::identity(&m));
        assert_eq!(s_inv.degree(), 1);
    }
}
