//! Complexes, cohomology, homotopy solving, cones and contractions.
//!
//! Everything is exact. A chain map of bounded finite-dimensional complexes
//! over a field is homotopy invertible iff it is a quasi-isomorphism; the
//! explicit contraction of the cone of such a map is the lifting device for
//! every inductive construction in the engine.

use super::field::Field;
use super::gmap::GradedMap;
use super::matrix::{LinearSystem, Matrix};
use super::module::{Degree, GradedModule};
use crate::error::ExactLinError;
use std::collections::BTreeMap;

/// A graded module with a square-zero degree +1 differential.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex<F: Field> {
    module: GradedModule,
    d: GradedMap<F>,
}

impl<F: Field> Complex<F> {
    pub fn new(module: GradedModule, d: GradedMap<F>) -> Result<Self, ExactLinError> {
        assert!(d.source().shape_eq(&module) && d.target().shape_eq(&module));
        assert!(d.degree() == 1, "differential must have degree +1");
        let dd = d.then(&d);
        if let Some((deg, _)) = dd.nonzero_blocks().next() {
            return Err(ExactLinError::NotAComplex { degree: *deg });
        }
        Ok(Complex { module, d })
    }

    /// Zero differential.
    pub fn with_zero_differential(module: GradedModule) -> Self {
        let d = GradedMap::zero(module.clone(), module.clone(), 1);
        Complex { module, d }
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn d(&self) -> &GradedMap<F> {
        &self.d
    }
}

/// A degree 0 map commuting with the differentials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap<F: Field> {
    source: Complex<F>,
    target: Complex<F>,
    map: GradedMap<F>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(
        source: Complex<F>,
        target: Complex<F>,
        map: GradedMap<F>,
    ) -> Result<Self, ExactLinError> {
        assert!(map.source().shape_eq(&source.module) && map.target().shape_eq(&target.module));
        assert!(map.degree() == 0, "chain map must have degree 0");
        let defect = map.then(&target.d).sub(&source.d.then(&map));
        if let Some((deg, _)) = defect.nonzero_blocks().next() {
            return Err(ExactLinError::NotAChainMap { degree: *deg });
        }
        Ok(ChainMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(c: &Complex<F>) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            map: GradedMap::identity(&c.module),
        }
    }

    pub fn source(&self) -> &Complex<F> {
        &self.source
    }

    pub fn target(&self) -> &Complex<F> {
        &self.target
    }

    pub fn map(&self) -> &GradedMap<F> {
        &self.map
    }
}

/// Per-degree cohomology data: dimension, representative cocycles, and a
/// projection onto cohomology coordinates that kills coboundaries.
#[derive(Clone, Debug)]
pub struct Cohomology<F: Field> {
    /// degree -> (representative rows, projection matrix component -> H)
    data: BTreeMap<Degree, (Vec<Vec<F>>, Matrix<F>)>,
}

impl<F: Field> Cohomology<F> {
    pub fn dim(&self, degree: Degree) -> usize {
        self.data.get(&degree).map_or(0, |(reps, _)| reps.len())
    }

    pub fn total_dim(&self) -> usize {
        self.data.values().map(|(r, _)| r.len()).sum()
    }

    pub fn representatives(&self, degree: Degree) -> &[Vec<F>] {
        self.data.get(&degree).map_or(&[][..], |(r, _)| r)
    }

    /// Coordinates of a component vector's class on the chosen representatives.
    pub fn project(&self, degree: Degree, x: &[F]) -> Vec<F> {
        match self.data.get(&degree) {
            None => Vec::new(),
            Some((_, p)) => p.apply(x),
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.data
            .iter()
            .filter(|(_, (r, _))| !r.is_empty())
            .map(|(d, _)| *d)
    }
}

/// Cohomology of a complex: dimensions are rank(ker d_k) - rank(im d_{k-1}),
/// representatives are cocycles, the projection kills coboundaries.
pub fn cohomology<F: Field>(c: &Complex<F>) -> Cohomology<F> {
    let mut data = BTreeMap::new();
    for k in c.module.degrees() {
        let n = c.module.dim(k);
        if n == 0 {
            continue;
        }
        let dk = c.d.block(k);
        let dprev = c.d.block(k - 1);
        let cocycles = dk.left_kernel_basis();
        // independent spanning rows of im d_{k-1}, picked greedily in order
        let mut boundary: Vec<Vec<F>> = Vec::new();
        let mut rank = 0usize;
        let grows = |rows: &[Vec<F>]| {
            Matrix::from_fn(rows.len(), n, |i, j| rows[i][j].clone()).rank()
        };
        for i in 0..dprev.rows() {
            let row: Vec<F> = (0..n).map(|j| dprev.get(i, j)).collect();
            if row.iter().all(|v| v.is_zero()) {
                continue;
            }
            boundary.push(row);
            let r = grows(&boundary);
            if r > rank {
                rank = r;
            } else {
                boundary.pop();
            }
        }
        let boundary_count = boundary.len();
        // pick representatives: cocycles that extend the boundary row space
        let mut reps: Vec<Vec<F>> = Vec::new();
        let mut stack = boundary.clone();
        for z in &cocycles {
            stack.push(z.clone());
            let r = grows(&stack);
            if r > rank {
                rank = r;
                reps.push(z.clone());
            } else {
                stack.pop();
            }
        }
        // projection: extend [boundaries; reps] to a basis by standard vectors,
        // express x in that basis, read off the rep coordinates
        let mut basis: Vec<Vec<F>> = boundary;
        basis.extend(reps.iter().cloned());
        let mut brank = basis.len();
        for e in 0..n {
            if brank == n {
                break;
            }
            let mut v = vec![F::zero(); n];
            v[e] = F::one();
            basis.push(v);
            let r = grows(&basis);
            if r > brank {
                brank = r;
            } else {
                basis.pop();
            }
        }
        debug_assert!(brank == n);
        // change of basis: B (rows = basis vectors); x = c * B; proj = rep coords of c
        let bmat = Matrix::from_fn(basis.len(), n, |i, j| basis[i][j].clone());
        let binv = bmat.inverse().expect("basis change invertible");
        // c = x * B^{-1}; rep coordinates live at positions boundary_count..boundary_count+reps
        let proj = Matrix::from_fn(n, reps.len(), |i, j| binv.get(i, boundary_count + j));
        data.insert(k, (reps, proj));
    }
    Cohomology { data }
}

/// True iff `u` induces an isomorphism on cohomology in every degree.
pub fn is_homotopy_invertible<F: Field>(u: &ChainMap<F>) -> bool {
    let hs = cohomology(&u.source);
    let ht = cohomology(&u.target);
    let degrees: std::collections::BTreeSet<Degree> = hs.degrees().chain(ht.degrees()).collect();
    for k in degrees {
        if hs.dim(k) != ht.dim(k) {
            return false;
        }
        let n = hs.dim(k);
        if n == 0 {
            continue;
        }
        let block = u.map.block(k);
        let m = Matrix::from_fn(n, n, |i, j| {
            let img = block.apply(&hs.representatives(k)[i]);
            ht.project(k, &img)[j].clone()
        });
        if m.rank() != n {
            return false;
        }
    }
    true
}

fn homotopy_var_degrees<F: Field>(src: &Complex<F>, tgt: &Complex<F>) -> Vec<Degree> {
    src.module
        .degrees()
        .filter(|&k| tgt.module.dim(k - 1) > 0)
        .collect()
}

/// Solve `f - g = h d + d h` for a degree -1 map h, deterministically.
/// `f` and `g` are degree-0 graded maps between the complexes' modules
/// (they need not individually be chain maps). Returns `None` when the
/// two maps are not homotopic.
pub fn find_chain_homotopy<F: Field>(
    src: &Complex<F>,
    tgt: &Complex<F>,
    f: &GradedMap<F>,
    g: &GradedMap<F>,
) -> Option<GradedMap<F>> {
    assert!(f.degree() == 0 && g.degree() == 0);
    assert!(f.source().shape_eq(&src.module) && f.target().shape_eq(&tgt.module));
    assert!(g.source().shape_eq(&src.module) && g.target().shape_eq(&tgt.module));
    let mut sys = LinearSystem::<F>::new();
    // unknowns: entries of h_k: src^k -> tgt^{k-1}
    let hdegs = homotopy_var_degrees(src, tgt);
    let mut hvars: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for &k in &hdegs {
        let n = src.module.dim(k) * tgt.module.dim(k - 1);
        hvars.insert(k, sys.new_vars(n).collect());
    }
    let var = |hvars: &BTreeMap<Degree, Vec<usize>>, k: Degree, i: usize, j: usize, cols: usize| {
        hvars.get(&k).map(|v| v[i * cols + j])
    };
    // equations per degree k: (f-g)_k = h_k d^{k-1}_tgt + d^k_src h_{k+1}
    let degrees: std::collections::BTreeSet<Degree> = src
        .module
        .degrees()
        .chain(hdegs.iter().map(|&k| k - 1).chain(hdegs.iter().map(|&k| k)))
        .collect();
    let diff = f.sub(g);
    for k in degrees {
        let rows = src.module.dim(k);
        let cols = tgt.module.dim(k);
        if rows == 0 || cols == 0 {
            continue;
        }
        let rhs = diff.block(k);
        let dtgt = tgt.d.block(k - 1); // tgt^{k-1} -> tgt^k
        let dsrc = src.d.block(k); // src^k -> src^{k+1}
        for i in 0..rows {
            for j in 0..cols {
                let mut coeffs: Vec<(usize, F)> = Vec::new();
                // (h_k d)_{ij} = sum_m h_k[i,m] d[m,j]
                let hk_cols = tgt.module.dim(k - 1);
                for m in 0..hk_cols {
                    let c = dtgt.get(m, j);
                    if !c.is_zero() {
                        if let Some(v) = var(&hvars, k, i, m, hk_cols) {
                            coeffs.push((v, c));
                        }
                    }
                }
                // (d h_{k+1})_{ij} = sum_m d[i,m] h_{k+1}[m,j]
                let hk1_cols = tgt.module.dim(k);
                for m in 0..src.module.dim(k + 1) {
                    let c = dsrc.get(i, m);
                    if !c.is_zero() {
                        if let Some(v) = var(&hvars, k + 1, m, j, hk1_cols) {
                            coeffs.push((v, c));
                        }
                    }
                }
                sys.add_equation(coeffs, rhs.get(i, j));
            }
        }
    }
    let sol = sys.solve()?;
    let mut h = GradedMap::zero(src.module.clone(), tgt.module.clone(), -1);
    for &k in &hdegs {
        let rows = src.module.dim(k);
        let cols = tgt.module.dim(k - 1);
        let vars = &hvars[&k];
        let m = Matrix::from_fn(rows, cols, |i, j| sol[vars[i * cols + j]].clone());
        h.set_block(k, m);
    }
    Some(h)
}

/// A homotopy inverse with its homotopies: `u v = 1 + h' d + d h'` on the
/// source and `v u = 1 + h'' d + d h''` on the target, all exact.
pub struct HomotopyInverse<F: Field> {
    pub v: GradedMap<F>,
    pub h_prime: GradedMap<F>,
    pub h_double_prime: GradedMap<F>,
}

/// Find a chain map `v` homotopy inverse to `u`, together with both
/// homotopies, by one joint deterministic solve. `None` iff `u` is not a
/// homotopy equivalence (over a field: not a quasi-isomorphism).
pub fn homotopy_inverse<F: Field>(u: &ChainMap<F>) -> Option<HomotopyInverse<F>> {
    let a = &u.source;
    let c = &u.target;
    let mut sys = LinearSystem::<F>::new();
    let mut vvars: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for k in c.module.degrees() {
        let n = c.module.dim(k) * a.module.dim(k);
        if n > 0 {
            vvars.insert(k, sys.new_vars(n).collect());
        }
    }
    let mut hvars: BTreeMap<Degree, Vec<usize>> = BTreeMap::new(); // h': a^k -> a^{k-1}
    for k in a.module.degrees() {
        let n = a.module.dim(k) * a.module.dim(k - 1);
        if n > 0 {
            hvars.insert(k, sys.new_vars(n).collect());
        }
    }
    let mut hhvars: BTreeMap<Degree, Vec<usize>> = BTreeMap::new(); // h'': c^k -> c^{k-1}
    for k in c.module.degrees() {
        let n = c.module.dim(k) * c.module.dim(k - 1);
        if n > 0 {
            hhvars.insert(k, sys.new_vars(n).collect());
        }
    }
    let getv = |vars: &BTreeMap<Degree, Vec<usize>>, k: Degree, i: usize, j: usize, cols: usize| {
        vars.get(&k).map(|v| v[i * cols + j])
    };
    let all_degrees: std::collections::BTreeSet<Degree> =
        a.module.degrees().chain(c.module.degrees()).collect();
    // (1) v is a chain map: v_k d_a^k - d_c^k v_{k+1} = 0 : c^k -> a^{k+1}
    for &k in &all_degrees {
        let rows = c.module.dim(k);
        let cols = a.module.dim(k + 1);
        if rows == 0 || cols == 0 {
            continue;
        }
        let da = a.d.block(k);
        let dc = c.d.block(k);
        for i in 0..rows {
            for j in 0..cols {
                let mut coeffs: Vec<(usize, F)> = Vec::new();
                let vk_cols = a.module.dim(k);
                for m in 0..vk_cols {
                    let cc = da.get(m, j);
                    if !cc.is_zero() {
                        if let Some(v) = getv(&vvars, k, i, m, vk_cols) {
                            coeffs.push((v, cc));
                        }
                    }
                }
                let vk1_cols = a.module.dim(k + 1);
                for m in 0..c.module.dim(k + 1) {
                    let cc = dc.get(i, m).neg();
                    if !cc.is_zero() {
                        if let Some(v) = getv(&vvars, k + 1, m, j, vk1_cols) {
                            coeffs.push((v, cc));
                        }
                    }
                }
                sys.add_equation(coeffs, F::zero());
            }
        }
    }
    // (2) u_k v_k - 1 = h'_k d_a^{k-1} + d_a^k h'_{k+1} : a^k -> a^k
    // (3) v_k u_k - 1 = h''_k d_c^{k-1} + d_c^k h''_{k+1} : c^k -> c^k
    for &k in &all_degrees {
        // (2)
        let n = a.module.dim(k);
        if n > 0 {
            let ub = u.map.block(k);
            let da_prev = a.d.block(k - 1);
            let da_k = a.d.block(k);
            for i in 0..n {
                for j in 0..n {
                    let mut coeffs: Vec<(usize, F)> = Vec::new();
                    // -(u v)_{ij}: v_k entries contribute u[i,m] * v[m,j]
                    let vk_cols = a.module.dim(k);
                    for m in 0..c.module.dim(k) {
                        let cc = ub.get(i, m);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&vvars, k, m, j, vk_cols) {
                                coeffs.push((v, cc.neg()));
                            }
                        }
                    }
                    let hk_cols = a.module.dim(k - 1);
                    for m in 0..hk_cols {
                        let cc = da_prev.get(m, j);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&hvars, k, i, m, hk_cols) {
                                coeffs.push((v, cc));
                            }
                        }
                    }
                    let hk1_cols = a.module.dim(k);
                    for m in 0..a.module.dim(k + 1) {
                        let cc = da_k.get(i, m);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&hvars, k + 1, m, j, hk1_cols) {
                                coeffs.push((v, cc));
                            }
                        }
                    }
                    let rhs = if i == j { F::one().neg() } else { F::zero() };
                    sys.add_equation(coeffs, rhs);
                }
            }
        }
        // (3)
        let n = c.module.dim(k);
        if n > 0 {
            let dc_prev = c.d.block(k - 1);
            let dc_k = c.d.block(k);
            let ub_k = u.map.block(k);
            for i in 0..n {
                for j in 0..n {
                    let mut coeffs: Vec<(usize, F)> = Vec::new();
                    // -(v u)_{ij} = - sum_m v[i,m] u[m,j]
                    let vk_cols = a.module.dim(k);
                    for m in 0..a.module.dim(k) {
                        let cc = ub_k.get(m, j);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&vvars, k, i, m, vk_cols) {
                                coeffs.push((v, cc.neg()));
                            }
                        }
                    }
                    let hk_cols = c.module.dim(k - 1);
                    for m in 0..hk_cols {
                        let cc = dc_prev.get(m, j);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&hhvars, k, i, m, hk_cols) {
                                coeffs.push((v, cc));
                            }
                        }
                    }
                    let hk1_cols = c.module.dim(k);
                    for m in 0..c.module.dim(k + 1) {
                        let cc = dc_k.get(i, m);
                        if !cc.is_zero() {
                            if let Some(v) = getv(&hhvars, k + 1, m, j, hk1_cols) {
                                coeffs.push((v, cc));
                            }
                        }
                    }
                    let rhs = if i == j { F::one().neg() } else { F::zero() };
                    sys.add_equation(coeffs, rhs);
                }
            }
        }
    }
    let sol = sys.solve()?;
    let extract = |vars: &BTreeMap<Degree, Vec<usize>>,
                   srcm: &GradedModule,
                   tgtm: &GradedModule,
                   degree: Degree| {
        let mut g = GradedMap::zero(srcm.clone(), tgtm.clone(), degree);
        for (k, vs) in vars {
            let rows = srcm.dim(*k);
            let cols = tgtm.dim(k + degree);
            let m = Matrix::from_fn(rows, cols, |i, j| sol[vs[i * cols + j]].clone());
            g.set_block(*k, m);
        }
        g
    };
    Some(HomotopyInverse {
        v: extract(&vvars, &c.module, &a.module, 0),
        h_prime: extract(&hvars, &a.module, &a.module, -1),
        h_double_prime: extract(&hhvars, &c.module, &c.module, -1),
    })
}

/// The cone of a chain map `u: A -> C`, with its two summand embeddings.
/// `Cone^k(u) = C^k ⊕ A^{k+1}`, `(c, a) d = (c d^C + a u, -a d^A)`.
#[derive(Clone)]
pub struct Cone<F: Field> {
    pub complex: Complex<F>,
    /// embedding C -> Cone (degree 0) and projection Cone -> C
    pub incl_c: GradedMap<F>,
    pub proj_c: GradedMap<F>,
    /// embedding A[1] part: degree -1 map A -> Cone and degree +1 projection
    pub incl_a: GradedMap<F>,
    pub proj_a: GradedMap<F>,
}

pub fn cone<F: Field>(u: &ChainMap<F>) -> Cone<F> {
    let a = &u.source;
    let c = &u.target;
    let a1 = a.module.shift(1);
    let module = GradedModule::direct_sum(&[("c·", &c.module), ("a·", &a1)]);
    let mut d = GradedMap::zero(module.clone(), module.clone(), 1);
    for k in module.degrees().collect::<Vec<_>>() {
        let (cn, an) = (c.module.dim(k), a.module.dim(k + 1));
        let (cn1, an1) = (c.module.dim(k + 1), a.module.dim(k + 2));
        let mut m = Matrix::zero(cn + an, cn1 + an1);
        let dc = c.d.block(k);
        for (i, j, v) in dc.entries() {
            m.set(i, j, v);
        }
        let ub = u.map.block(k + 1);
        for (i, j, v) in ub.entries() {
            m.set(cn + i, j, v);
        }
        let da = a.d.block(k + 1);
        for (i, j, v) in da.entries() {
            m.set(cn + i, cn1 + j, v.neg());
        }
        if !m.is_zero() {
            d.set_block(k, m);
        }
    }
    let complex = Complex::new(module.clone(), d).expect("cone differential squares to zero");
    // embeddings / projections
    let mut incl_c = GradedMap::zero(c.module.clone(), module.clone(), 0);
    let mut proj_c = GradedMap::zero(module.clone(), c.module.clone(), 0);
    let mut incl_a = GradedMap::zero(a.module.clone(), module.clone(), -1);
    let mut proj_a = GradedMap::zero(module.clone(), a.module.clone(), 1);
    for k in module.degrees().collect::<Vec<_>>() {
        let (cn, an) = (c.module.dim(k), a.module.dim(k + 1));
        let mut ic = Matrix::zero(c.module.dim(k), cn + an);
        for i in 0..cn {
            ic.set(i, i, F::one());
        }
        if !ic.is_zero() {
            incl_c.set_block(k, ic);
        }
        let mut pc = Matrix::zero(cn + an, c.module.dim(k));
        for i in 0..cn {
            pc.set(i, i, F::one());
        }
        if !pc.is_zero() {
            proj_c.set_block(k, pc);
        }
        let mut pa = Matrix::zero(cn + an, a.module.dim(k + 1));
        for i in 0..an {
            pa.set(cn + i, i, F::one());
        }
        if !pa.is_zero() {
            proj_a.set_block(k, pa);
        }
    }
    for k in a.module.degrees().collect::<Vec<_>>() {
        let cn = c.module.dim(k - 1);
        let an = a.module.dim(k);
        let mut ia = Matrix::zero(an, cn + an);
        for i in 0..an {
            ia.set(i, cn + i, F::one());
        }
        if !ia.is_zero() {
            incl_a.set_block(k, ia);
        }
    }
    Cone {
        complex,
        incl_c,
        proj_c,
        incl_a,
        proj_a,
    }
}

/// The explicit contraction of the cone of a homotopy-invertible chain map:
/// `(c,a) h = (-c h'', c v + a h')`, `(c,a) f = (a u h'' - a h' u, 0)`,
/// `h̄ = h + h f`, and `id = h̄ d + d h̄` exactly.
#[derive(Clone)]
pub struct ConeContraction<F: Field> {
    pub u: ChainMap<F>,
    pub v: GradedMap<F>,
    pub h_prime: GradedMap<F>,
    pub h_double_prime: GradedMap<F>,
    pub cone: Cone<F>,
    pub h_bar: GradedMap<F>,
}

pub fn build_cone_contraction<F: Field>(
    u: &ChainMap<F>,
    v: &GradedMap<F>,
    h_prime: &GradedMap<F>,
    h_double_prime: &GradedMap<F>,
) -> Result<ConeContraction<F>, ExactLinError> {
    let a = u.source.clone();
    let c = u.target.clone();
    assert!(v.degree() == 0 && h_prime.degree() == -1 && h_double_prime.degree() == -1);
    // preconditions: u v = 1 + h' d^A + d^A h',  v u = 1 + h'' d^C + d^C h''
    let uv = u.map.then(v);
    let lhs = uv
        .sub(&GradedMap::identity(&a.module))
        .sub(&h_prime.then(&a.d))
        .sub(&a.d.then(h_prime));
    if let Some((deg, _)) = lhs.nonzero_blocks().next() {
        return Err(ExactLinError::ContractionPrecondition {
            which: "uv = 1 + h'd + dh'",
            degree: *deg,
        });
    }
    let vu = v.then(&u.map);
    let lhs = vu
        .sub(&GradedMap::identity(&c.module))
        .sub(&h_double_prime.then(&c.d))
        .sub(&c.d.then(h_double_prime));
    if let Some((deg, _)) = lhs.nonzero_blocks().next() {
        return Err(ExactLinError::ContractionPrecondition {
            which: "vu = 1 + h''d + dh''",
            degree: *deg,
        });
    }
    let cone = cone(u);
    // h: (c,a) -> (-c h'', c v + a h')
    let h = cone
        .proj_c
        .then(&h_double_prime.neg())
        .then(&cone.incl_c)
        .add(&cone.proj_c.then(v).then(&cone.incl_a))
        .add(&cone.proj_a.then(h_prime).then(&cone.incl_a));
    // f: (c,a) -> (a u h'' - a h' u, 0)
    let f = cone
        .proj_a
        .then(&u.map)
        .then(h_double_prime)
        .then(&cone.incl_c)
        .sub(&cone.proj_a.then(h_prime).then(&u.map).then(&cone.incl_c));
    let h_bar = h.add(&h.then(&f));
    // exact contract: id = h̄ d + d h̄
    let check = h_bar
        .then(cone.complex.d())
        .add(&cone.complex.d().then(&h_bar))
        .sub(&GradedMap::identity(cone.complex.module()));
    if let Some((deg, _)) = check.nonzero_blocks().next() {
        return Err(ExactLinError::ContractionPrecondition {
            which: "id = h̄d + dh̄",
            degree: *deg,
        });
    }
    Ok(ConeContraction {
        u: u.clone(),
        v: v.clone(),
        h_prime: h_prime.clone(),
        h_double_prime: h_double_prime.clone(),
        cone,
        h_bar,
    })
}

/// Contract a cycle: returns `w = z h̄` with `w d = z`.
pub fn contract_cycle<F: Field>(
    z: &GradedMap<F>,
    contraction: &ConeContraction<F>,
) -> Result<GradedMap<F>, ExactLinError> {
    let d = contraction.cone.complex.d();
    if !z.then(d).is_zero() {
        return Err(ExactLinError::NotACycle);
    }
    let w = z.then(&contraction.h_bar);
    debug_assert!(w.then(d) == *z);
    Ok(w)
}

/// The inner hom complex `Hom(N, M)`: basis matrix units, differential
/// `λ ↦ λ d_M - (-1)^{deg λ} d_N λ`.
pub struct HomComplexOf<F: Field> {
    pub n: Complex<F>,
    pub m: Complex<F>,
    pub complex: Complex<F>,
    /// hom degree -> ordered (source degree, src index, tgt index)
    units: BTreeMap<Degree, Vec<(Degree, usize, usize)>>,
}

impl<F: Field> HomComplexOf<F> {
    pub fn new(n: &Complex<F>, m: &Complex<F>) -> Self {
        let mut units: BTreeMap<Degree, Vec<(Degree, usize, usize)>> = BTreeMap::new();
        for k in n.module.degrees() {
            for t in m.module.degrees() {
                let p = t - k;
                for i in 0..n.module.dim(k) {
                    for j in 0..m.module.dim(t) {
                        units.entry(p).or_default().push((k, i, j));
                    }
                }
            }
        }
        for v in units.values_mut() {
            v.sort();
        }
        let mut comps = BTreeMap::new();
        for (p, us) in &units {
            comps.insert(
                *p,
                us.iter()
                    .map(|(k, i, j)| format!("E[{k}:{i}->{j}]"))
                    .collect(),
            );
        }
        let module = GradedModule::from_components(comps);
        // differential
        let mut d = GradedMap::zero(module.clone(), module.clone(), 1);
        for (p, us) in &units {
            let rows = us.len();
            let cols = units.get(&(p + 1)).map_or(0, |v| v.len());
            if rows == 0 || cols == 0 {
                continue;
            }
            let target_units = &units[&(p + 1)];
            let mut mat = Matrix::zero(rows, cols);
            let sign = if p.rem_euclid(2) == 0 {
                F::one().neg()
            } else {
                F::one()
            };
            for (row, (k, i, j)) in us.iter().enumerate() {
                // λ d_M: unit (k,i,j) composed with d_M: contributes to (k, i, j')
                let dm = m.d.block(k + p);
                for jp in 0..m.module.dim(k + p + 1) {
                    let c = dm.get(*j, jp);
                    if !c.is_zero() {
                        let col = target_units
                            .binary_search(&(*k, *i, jp))
                            .expect("target unit");
                        mat.add_assign_at(row, col, &c);
                    }
                }
                // -(-1)^p d_N λ: unit (k,i,j) pulled back along d_N: contributes to (k-1, i', j)
                let dn = n.d.block(k - 1);
                for ip in 0..n.module.dim(k - 1) {
                    let c = dn.get(ip, *i);
                    if !c.is_zero() {
                        let col = target_units
                            .binary_search(&(k - 1, ip, *j))
                            .expect("target unit");
                        mat.add_assign_at(row, col, &c.mul(&sign));
                    }
                }
            }
            if !mat.is_zero() {
                d.set_block(*p, mat);
            }
        }
        let complex = Complex::new(module, d).expect("hom differential squares to zero");
        HomComplexOf {
            n: n.clone(),
            m: m.clone(),
            complex,
            units,
        }
    }

    /// Encode a graded map `N -> M` of degree p as an element of `Hom^p`.
    pub fn encode(&self, f: &GradedMap<F>) -> GradedMap<F> {
        assert!(f.source().shape_eq(&self.n.module) && f.target().shape_eq(&self.m.module));
        let p = f.degree();
        let us = self.units.get(&p).map_or(&[][..], |v| v.as_slice());
        let coords: Vec<F> = us
            .iter()
            .map(|(k, i, j)| f.block(*k).get(*i, *j))
            .collect();
        GradedMap::element(&self.complex.module().clone(), p, coords)
    }

    /// Decode an element of `Hom^p` back into a graded map.
    pub fn decode(&self, e: &GradedMap<F>) -> GradedMap<F> {
        let p = e.degree();
        let coords = e.element_coords();
        let us = self.units.get(&p).map_or(&[][..], |v| v.as_slice());
        assert!(coords.len() == us.len());
        let mut out = GradedMap::zero(self.n.module.clone(), self.m.module.clone(), p);
        for ((k, i, j), v) in us.iter().zip(coords) {
            if !v.is_zero() {
                let mut blk = out.block(*k);
                blk.add_assign_at(*i, *j, &v);
                out.set_block(*k, blk);
            }
        }
        out
    }

    /// Post-composition `Hom(N, w): Hom(N, M) -> Hom(N, M')` for `w: M -> M'`.
    /// For a degree-0 chain map this is a chain map; homotopies lift verbatim.
    pub fn push(&self, other: &HomComplexOf<F>, w: &GradedMap<F>) -> GradedMap<F> {
        assert!(self.n.module.shape_eq(&other.n.module), "same N required");
        assert!(w.source().shape_eq(&self.m.module) && w.target().shape_eq(&other.m.module));
        let q = w.degree();
        let mut out = GradedMap::zero(
            self.complex.module().clone(),
            other.complex.module().clone(),
            q,
        );
        for (p, us) in &self.units {
            let cols_units = match other.units.get(&(p + q)) {
                Some(v) => v,
                None => continue,
            };
            let mut mat = Matrix::zero(us.len(), cols_units.len());
            for (row, (k, i, j)) in us.iter().enumerate() {
                let wb = w.block(k + p);
                for jp in 0..other.m.module.dim(k + p + q) {
                    let c = wb.get(*j, jp);
                    if !c.is_zero() {
                        let col = cols_units
                            .binary_search(&(*k, *i, jp))
                            .expect("pushed unit");
                        mat.add_assign_at(row, col, &c);
                    }
                }
            }
            if !mat.is_zero() {
                out.set_block(*p, mat);
            }
        }
        out
    }
}

impl<F: Field> std::fmt::Debug for ConeContraction<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConeContraction over {}", self.cone.complex.module())
    }
}
