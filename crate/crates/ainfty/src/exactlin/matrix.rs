//! Exact matrices over a field and the deterministic linear solver.
//!
//! Matrices act on row vectors from the right (`y = x * M`), matching the
//! right-operator composition convention used throughout the engine. Blocks
//! below 16x16 are stored dense, larger blocks as sorted triplets; the
//! representation is internal and never observable in results.
//!
//! The solver is reduced row echelon form with leftmost pivot columns and
//! first-nonzero row tie-breaking; particular solutions set free variables
//! to zero. This makes every output reproducible across runs and platforms.

use super::field::Field;

const DENSE_LIMIT: usize = 16;

#[derive(Clone, PartialEq, Eq)]
enum Repr<F> {
    Dense(Vec<F>),
    /// Row-major sorted, no explicit zeros, no duplicate positions.
    Sparse(Vec<(usize, usize, F)>),
}

/// A `rows x cols` matrix; `(i, j)` is the coefficient of output `j` on input `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    repr: Repr<F>,
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        if rows * cols <= DENSE_LIMIT * DENSE_LIMIT {
            Matrix {
                rows,
                cols,
                repr: Repr::Dense(vec![F::zero(); rows * cols]),
            }
        } else {
            Matrix {
                rows,
                cols,
                repr: Repr::Sparse(Vec::new()),
            }
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.repr {
            Repr::Dense(d) => d[i * self.cols + j].clone(),
            Repr::Sparse(t) => match t.binary_search_by(|(a, b, _)| (*a, *b).cmp(&(i, j))) {
                Ok(k) => t[k].2.clone(),
                Err(_) => F::zero(),
            },
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &mut self.repr {
            Repr::Dense(d) => d[i * self.cols + j] = v,
            Repr::Sparse(t) => match t.binary_search_by(|(a, b, _)| (*a, *b).cmp(&(i, j))) {
                Ok(k) => {
                    if v.is_zero() {
                        t.remove(k);
                    } else {
                        t[k].2 = v;
                    }
                }
                Err(k) => {
                    if !v.is_zero() {
                        t.insert(k, (i, j, v));
                    }
                }
            },
        }
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &F) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur.add(v));
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Dense(d) => d.iter().all(|v| v.is_zero()),
            Repr::Sparse(t) => t.iter().all(|(_, _, v)| v.is_zero()),
        }
    }

    pub fn entries(&self) -> Vec<(usize, usize, F)> {
        match &self.repr {
            Repr::Dense(d) => {
                let mut out = Vec::new();
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let v = &d[i * self.cols + j];
                        if !v.is_zero() {
                            out.push((i, j, v.clone()));
                        }
                    }
                }
                out
            }
            Repr::Sparse(t) => t.iter().filter(|(_, _, v)| !v.is_zero()).cloned().collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch in add: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_assign_at(i, j, &v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, v.mul(c));
        }
        out
    }

    /// Matrix product `self * other` (apply `self` first on row vectors).
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            self.cols == other.rows,
            "shape mismatch in mul: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = Self::zero(self.rows, other.cols);
        // group other's entries by row for sparse-friendly access
        let rhs = other.entries();
        let mut rhs_rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in rhs {
            rhs_rows[i].push((j, v));
        }
        for (i, k, a) in self.entries() {
            for (j, b) in &rhs_rows[k] {
                out.add_assign_at(i, *j, &a.mul(b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.set(j, i, v);
        }
        out
    }

    /// Apply to a row vector: `x * self`.
    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert!(x.len() == self.rows, "vector length mismatch");
        let mut out = vec![F::zero(); self.cols];
        for (i, j, v) in self.entries() {
            if !x[i].is_zero() {
                out[j] = out[j].add(&x[i].mul(&v));
            }
        }
        out
    }

    fn to_dense_rows(&self) -> Vec<Vec<F>> {
        let mut rows = vec![vec![F::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            rows[i][j] = v;
        }
        rows
    }

    /// Reduced row echelon form. Returns (rref rows, pivot column per pivot row).
    pub fn rref(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut rows = self.to_dense_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r >= self.rows {
                break;
            }
            // leftmost pivot, first nonzero row at or below r
            let Some(p) = (r..self.rows).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].inv();
            for v in rows[r].iter_mut() {
                *v = v.mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !rows[i][col].is_zero() {
                    let c = rows[i][col].clone();
                    for j in 0..self.cols {
                        let t = rows[r][j].mul(&c);
                        rows[i][j] = rows[i][j].sub(&t);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : x * self = 0}` (row vectors), from the RREF of the transpose.
    pub fn left_kernel_basis(&self) -> Vec<Vec<F>> {
        // x * M = 0  <=>  M^T x^T = 0, i.e. x is in the (column) null space of M^T.
        let (rref, pivots) = self.transpose().rref();
        let n = self.rows;
        let mut basis = Vec::new();
        let piv_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
        for free in 0..n {
            if piv_set.contains(&free) {
                continue;
            }
            let mut x = vec![F::zero(); n];
            x[free] = F::one();
            for (prow, pcol) in pivots.iter().enumerate() {
                // row prow of rref reads: x[pcol] + sum_{free j} rref[prow][j] x[j] = 0
                x[*pcol] = rref[prow][free].neg();
            }
            basis.push(x);
        }
        basis
    }

    /// Deterministic particular solution of `x * self = b`, free variables zero.
    pub fn solve_left(&self, b: &[F]) -> Option<Vec<F>> {
        assert!(b.len() == self.cols, "rhs length mismatch");
        // x * M = b  <=>  M^T x^T = b^T: solve the column system on M^T.
        let mt = self.transpose();
        let mut rows = mt.to_dense_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(b[i].clone());
        }
        let aug = Matrix {
            rows: mt.rows,
            cols: mt.cols + 1,
            repr: Repr::Dense(rows.into_iter().flatten().collect()),
        };
        let (rref, pivots) = aug.rref();
        let n = mt.cols;
        if pivots.contains(&n) {
            return None; // inconsistent
        }
        let mut x = vec![F::zero(); n];
        for (prow, pcol) in pivots.iter().enumerate() {
            x[*pcol] = rref[prow][n].clone();
        }
        Some(x)
    }

    /// Two-sided inverse, if square and invertible.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows = self.to_dense_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { F::one() } else { F::zero() });
            }
        }
        let aug = Matrix {
            rows: n,
            cols: 2 * n,
            repr: Repr::Dense(rows.into_iter().flatten().collect()),
        };
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, p)| *p != i) {
            return None;
        }
        // rref = [I | A^{-T}]: rref solves rows of A^T... recompute directly:
        // we reduced [A | I] to [I | B] with B = A^{-1} in the row-vector sense
        // (row ops on the left), i.e. B * A = I and A * B = I.
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = rref[i][n + j].clone();
                if !v.is_zero() {
                    inv.set(i, j, v);
                }
            }
        }
        Some(inv)
    }
}

/// Incremental sparse linear system `x * A = b` over named variables,
/// solved deterministically (free variables zero).
pub struct LinearSystem<F: Field> {
    num_vars: usize,
    /// one equation = (coefficients on variables, rhs)
    equations: Vec<(Vec<(usize, F)>, F)>,
}

impl<F: Field> Default for LinearSystem<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> LinearSystem<F> {
    pub fn new() -> Self {
        LinearSystem {
            num_vars: 0,
            equations: Vec::new(),
        }
    }

    pub fn new_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn new_vars(&mut self, n: usize) -> std::ops::Range<usize> {
        let start = self.num_vars;
        self.num_vars += n;
        start..self.num_vars
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add_equation(&mut self, coeffs: Vec<(usize, F)>, rhs: F) {
        self.equations.push((coeffs, rhs));
    }

    /// Deterministic solution or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<F>> {
        let n = self.num_vars;
        let m = self.equations.len();
        // Equations as rows of [A^T | b]: variable j is column j after transpose,
        // so build the matrix with equations as rows directly and solve columns.
        let mut mat = Matrix::zero(m, n + 1);
        for (i, (coeffs, rhs)) in self.equations.iter().enumerate() {
            for (j, c) in coeffs {
                mat.add_assign_at(i, *j, c);
            }
            mat.set(i, n, rhs.clone());
        }
        let (rref, pivots) = mat.rref();
        if pivots.contains(&n) {
            return None;
        }
        let mut x = vec![F::zero(); n];
        for (prow, pcol) in pivots.iter().enumerate() {
            x[*pcol] = rref[prow][n].clone();
        }
        Some(x)
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
    fn mul_matches_entrywise() {
        let a = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(1, 2)]]);
        let b = Matrix::from_rows(vec![vec![q(3, 1), q(0, 1)], vec![q(1, 1), q(-1, 1)]]);
        let c = a.mul(&b);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Rat::zero();
                for k in 0..2 {
                    acc = acc.add(&a.get(i, k).mul(&b.get(k, j)));
                }
                assert_eq!(c.get(i, j), acc);
            }
        }
    }

    #[test]
    fn sparse_threshold_roundtrip() {
        let mut m: Matrix<Rat> = Matrix::zero(20, 20); // sparse
        m.set(3, 17, q(5, 3));
        m.set(19, 0, q(-1, 7));
        assert_eq!(m.get(3, 17), q(5, 3));
        assert_eq!(m.get(0, 0), Rat::zero());
        let id = Matrix::identity(20);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }

    #[test]
    fn rref_rank_kernel() {
        // rank-1 matrix 2x2
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert_eq!(m.rank(), 1);
        let ker = m.left_kernel_basis();
        assert_eq!(ker.len(), 1);
        let y = m.apply(&ker[0]);
        assert!(y.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solve_left_deterministic() {
        // underdetermined: x * [[1],[1]] = [5]; free variable -> 0
        let m = Matrix::from_rows(vec![vec![q(1, 1)], vec![q(1, 1)]]);
        let x = m.solve_left(&[q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(5, 1), q(0, 1)]);
        // inconsistent
        let z: Matrix<Rat> = Matrix::zero(2, 1);
        assert!(z.solve_left(&[q(1, 1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(inv.mul(&m), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn linear_system_free_vars_zero() {
        let mut sys = LinearSystem::<Rat>::new();
        let v = sys.new_vars(3);
        let vars: Vec<usize> = v.collect();
        // x0 + x1 = 2
        sys.add_equation(vec![(vars[0], q(1, 1)), (vars[1], q(1, 1))], q(2, 1));
        let x = sys.solve().unwrap();
        assert_eq!(x, vec![q(2, 1), q(0, 1), q(0, 1)]);
    }
}
