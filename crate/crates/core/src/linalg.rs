//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices act on column vectors. Subspaces are stored as a basis of row
//! vectors in reduced row echelon form, which makes them canonical: two
//! subspaces are equal iff their stored bases are equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn diag(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b;
                        out[(i, j)] = out[(i, j)].clone() + &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape");
        let mut out = vec![F::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, a) in self.row(r).iter().enumerate() {
                if !a.is_zero() {
                    out[c] = out[c].clone() + &(x.clone() * a);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s).collect() }
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() - lambda;
        }
        m
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().unwrap();
            for c in col..m.cols {
                let v = m[(row, c)].clone();
                if !v.is_zero() {
                    m[(row, c)] = v * &inv;
                }
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = &m.data[row * m.cols + c];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = f.clone() * pv;
                    let idx = r * m.cols + c;
                    m.data[idx] = m.data[idx].clone() - &t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y·self = 0}` (row vectors).
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * &piv;
            let inv = piv.inv().unwrap();
            for r in col + 1..n {
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for c in col..n {
                    let t = f.clone() * &m[(col, c)];
                    m[(r, c)] = m[(r, c)].clone() - &t;
                }
            }
        }
        det
    }

    /// A solution of `self·x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let aug = self.hstack(&Self::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(x·I - self)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly<F> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&r| !h[(r, j)].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + j + 1);
                }
            }
            let inv = h[(j + 1, j)].inv().unwrap();
            for i in j + 2..n {
                let f = h[(i, j)].clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let t = f.clone() * &h[(j + 1, c)];
                    h[(i, c)] = h[(i, c)].clone() - &t;
                }
                for r in 0..n {
                    let t = f.clone() * &h[(r, i)];
                    h[(r, j + 1)] = h[(r, j + 1)].clone() + &t;
                }
            }
        }
        // p_k = det(x - H[..k, ..k])
        let mut ps: Vec<Poly<F>> = vec![Poly::one()];
        for k in 0..n {
            let xk = Poly::new(vec![-h[(k, k)].clone(), F::one()]);
            let mut pk = xk.mul(&ps[k]);
            let mut prod = F::one();
            for i in (0..k).rev() {
                prod = prod * &h[(i + 1, i)];
                if prod.is_zero() {
                    break;
                }
                let c = prod.clone() * &h[(i, k)];
                pk = pk.sub(&ps[i].scale(&c));
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// Eigenvalues with algebraic multiplicity. Fails if the characteristic
    /// polynomial has a factor without roots in the field.
    pub fn eigenvalues(&self) -> Result<Vec<F>> {
        let (roots, rest) = self.charpoly().roots();
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::RootNotInField(format!(
                "characteristic polynomial factor {rest} has no root in the session field"
            )));
        }
        Ok(roots)
    }
}

/// A subspace of `F^n`, stored as an RREF basis of row vectors.
#[derive(Clone, PartialEq)]
pub struct Subspace<F: Field> {
    n: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.n)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, &Matrix::<F>::identity(n).to_rows())
    }

    pub fn span(n: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { n, basis, pivots }
    }

    /// Kernel of the linear map whose matrix is `m` (`m·x = 0`).
    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::span(m.ncols(), &m.nullspace())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.n
    }

    /// `v` minus its component along the basis, read off at pivot columns.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wi, bi) in w.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *wi = wi.clone() - &(c.clone() * bi);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member vector in the stored basis.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.n, &v)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::kernel(&self.annihilator_matrix().vstack(&other.annihilator_matrix()))
    }

    /// Rows span the linear functionals vanishing on the subspace.
    pub fn annihilator_matrix(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            return Matrix::identity(self.n);
        }
        let rows = Matrix::from_rows(self.basis.clone()).nullspace();
        if rows.is_empty() {
            Matrix::zeros(0, self.n)
        } else {
            Matrix::from_rows(rows)
        }
    }

    /// Image under the matrix `m` (`v ↦ m·v`).
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let imgs: Vec<Vec<F>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.nrows(), &imgs)
    }

    pub fn is_invariant(&self, m: &Matrix<F>) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Matrix of an operator restricted to this (invariant) subspace, in the
    /// stored basis.
    pub fn restrict(&self, m: &Matrix<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self.basis.iter().map(|v| self.coords(&m.mul_vec(v))).collect();
        Matrix::from_cols(self.dim(), &cols)
    }

    /// Indices of the standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + self` in the quotient, relative to the standard
    /// complement from [`Subspace::complement_indices`].
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let w = self.reduce(v);
        self.complement_indices().into_iter().map(|c| w[c].clone()).collect()
    }

    /// Matrix of the operator induced on the quotient by an operator that
    /// preserves the subspace.
    pub fn quotient_operator(&self, m: &Matrix<F>) -> Matrix<F> {
        let comp = self.complement_indices();
        let cols: Vec<Vec<F>> = comp
            .iter()
            .map(|&c| {
                let mut e = vec![F::zero(); self.n];
                e[c] = F::one();
                self.quotient_coords(&m.mul_vec(&e))
            })
            .collect();
        Matrix::from_cols(comp.len(), &cols)
    }

    /// Matrix of the projection onto the quotient (rows = quotient coords).
    pub fn quotient_projection(&self) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.n)
            .map(|c| {
                let mut e = vec![F::zero(); self.n];
                e[c] = F::one();
                self.quotient_coords(&e)
            })
            .collect();
        Matrix::from_cols(self.n - self.dim(), &cols)
    }
}

/// Joint eigenspaces of commuting operators.
///
/// Returns `(eigenvalues, eigenspace)` pairs, one eigenvalue per operator.
/// With `generalized` the generalized eigenspaces are returned and they sum
/// to the whole space; otherwise only true common eigenvectors are kept.
pub fn joint_eigenspaces<F: Field>(
    n: usize,
    ops: &[Matrix<F>],
    generalized: bool,
) -> Result<Vec<(Vec<F>, Subspace<F>)>> {
    let mut parts: Vec<(Vec<F>, Subspace<F>)> = vec![(Vec::new(), Subspace::full(n))];
    for op in ops {
        let mut next = Vec::new();
        // Common eigenvectors need not span op-invariant subspaces, so in
        // that mode solve (op - λ)Bc = 0 over eigenvalues of op itself.
        let mut global = None;
        for (vals, space) in parts {
            if space.is_zero() {
                continue;
            }
            let r = space.restrict(op);
            let mut evs = if generalized {
                r.eigenvalues()?
            } else {
                if global.is_none() {
                    global = Some(op.eigenvalues()?);
                }
                global.clone().unwrap_or_default()
            };
            dedup(&mut evs);
            let b = Matrix::from_cols(n, space.basis());
            for lam in evs {
                let k = if generalized { r.shift(&lam).pow(space.dim()) } else { op.shift(&lam).mul(&b) };
                let sub: Vec<Vec<F>> = k
                    .nullspace()
                    .into_iter()
                    .map(|c| {
                        let mut v = vec![F::zero(); n];
                        for (ci, b) in c.iter().zip(space.basis()) {
                            if ci.is_zero() {
                                continue;
                            }
                            for (vi, bi) in v.iter_mut().zip(b) {
                                *vi = vi.clone() + &(ci.clone() * bi);
                            }
                        }
                        v
                    })
                    .collect();
                let mut vals = vals.clone();
                vals.push(lam);
                next.push((vals, Subspace::span(n, &sub)));
            }
        }
        parts = next;
    }
    parts.retain(|(_, s)| !s.is_zero());
    Ok(parts)
}

fn dedup<F: Field>(v: &mut Vec<F>) {
    let mut out: Vec<F> = Vec::new();
    for x in v.drain(..) {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    *v = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
    }

    fn r(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn rref_rank_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(a.det(), r(18));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_matches_det_expansion() {
        let a = m(&[&[0, 1, 2, 0], &[3, 1, 0, 1], &[1, 0, 2, 5], &[2, 2, 1, 0]]);
        let p = a.charpoly();
        // compare with det(t·I - a) at several integer points
        for t in -3..4 {
            let d = Matrix::<Rational>::identity(4).scale(&r(t)).sub(&a).det();
            assert_eq!(p.eval(&r(t)), d, "t = {t}");
        }
    }

    #[test]
    fn subspace_ops() {
        let s = Subspace::span(3, &[vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]]);
        let t = Subspace::span(3, &[vec![r(1), r(0), r(0)], vec![r(0), r(0), r(1)]]);
        let i = s.intersect(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[r(1), r(0), r(-1)]));
        assert!(s.sum(&t).is_full());
        let q = s.quotient_coords(&[r(1), r(2), r(1)]);
        assert!(q.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn joint_eigen() {
        let a = Matrix::diag(&[r(1), r(1), r(2)]);
        let b = Matrix::diag(&[r(3), r(4), r(3)]);
        let parts = joint_eigenspaces(3, &[a, b], false).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|(_, s)| s.dim() == 1));
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert!(matches!(rot.eigenvalues(), Err(Error::RootNotInField(_))));
    }
}
