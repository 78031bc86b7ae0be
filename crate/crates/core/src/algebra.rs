//! Finite-dimensional algebras, coalgebras and Hopf algebras given by sparse
//! structure tensors, with axiom verification, duals and op/cop variants.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{joint_eigenspaces, Matrix, Subspace};
use crate::report::Report;

/// Largest dimension for which group-likes are solved for.
pub const GROUPLIKE_DIM_CAP: usize = 100;

pub fn basis_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// `out += c · terms`, for a sparse vector of terms.
pub(crate) fn axpy<F: Field>(out: &mut [F], c: &F, terms: &[(usize, F)]) {
    for (k, t) in terms {
        out[*k] = out[*k].clone() + &(c.clone() * t);
    }
}

pub(crate) fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) fn sparse<F: Field>(v: &[F]) -> Vec<(usize, F)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Dense dot product.
pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + &(x.clone() * y);
        }
    }
    acc
}

fn check_index(what: &str, idx: usize, n: usize) -> Result<()> {
    if idx >= n {
        return Err(Error::Shape(format!("{what} index {idx} out of range for dimension {n}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraData<F: Field> {
    dim: usize,
    /// `mult[i*dim + j]` is `e_i e_j` as sparse `(k, c)` terms.
    mult: Vec<Vec<(usize, F)>>,
    unit: Vec<F>,
}

impl<F: Field> AlgebraData<F> {
    /// Build from `(i, j, k, c)` entries meaning `e_i e_j ∋ c e_k`; repeated
    /// entries add up.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, F)>, unit: Vec<F>) -> Result<Self> {
        if unit.len() != dim {
            return Err(Error::Shape(format!("unit has length {}, expected {dim}", unit.len())));
        }
        let mut mult = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            check_index("multiplication", i.max(j).max(k), dim)?;
            mult[i * dim + j].push((k, c));
        }
        for terms in mult.iter_mut() {
            if terms.len() > 1 {
                let mut v = vec![F::zero(); dim];
                axpy(&mut v, &F::one(), terms);
                *terms = sparse(&v);
            } else {
                terms.retain(|(_, c)| !c.is_zero());
            }
        }
        Ok(AlgebraData { dim, mult, unit })
    }

    /// Build from a product rule on basis indices.
    pub fn from_fn(dim: usize, unit: Vec<F>, f: impl Fn(usize, usize) -> Vec<F> + Sync) -> Result<Self> {
        if unit.len() != dim {
            return Err(Error::Shape(format!("unit has length {}, expected {dim}", unit.len())));
        }
        let mult: Vec<Vec<(usize, F)>> =
            (0..dim * dim).into_par_iter().map(|ij| sparse(&f(ij / dim, ij % dim))).collect();
        Ok(AlgebraData { dim, mult, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// `e_i e_j` as sparse terms.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.mult[i * self.dim + j]
    }

    /// `e_i e_j` as a dense vector.
    pub fn product_vec(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        axpy(&mut v, &F::one(), self.product(i, j));
        v
    }

    /// Sparse `(i, j, k, c)` entries in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim;
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(ij, t)| t.iter().map(move |(k, c)| (ij / n, ij % n, *k, c.clone())))
            .collect()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi.clone() * yj), self.product(i, j));
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ x v`.
    pub fn left_matrix(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(x, &basis_vec(self.dim, j))).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// Matrix of `v ↦ v x`.
    pub fn right_matrix(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(&basis_vec(self.dim, j), x)).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    /// The opposite algebra.
    pub fn op(&self) -> Self {
        let n = self.dim;
        let mult = (0..n * n).map(|ij| self.mult[(ij % n) * n + ij / n].clone()).collect();
        AlgebraData { dim: n, mult, unit: self.unit.clone() }
    }

    /// Smallest subspace containing `start` and stable under left
    /// multiplication by each of `gens`.
    pub fn left_closure(&self, start: &[Vec<F>], gens: &[Vec<F>]) -> Subspace<F> {
        let mats: Vec<Matrix<F>> = gens.iter().map(|g| self.left_matrix(g)).collect();
        closure(self.dim, start, &mats)
    }

    /// Two-sided ideal generated by the given vectors, assuming `gens`
    /// generate the algebra.
    pub fn ideal(&self, vectors: &[Vec<F>], gens: &[Vec<F>]) -> Subspace<F> {
        let mut mats: Vec<Matrix<F>> = gens.iter().map(|g| self.left_matrix(g)).collect();
        mats.extend(gens.iter().map(|g| self.right_matrix(g)));
        closure(self.dim, vectors, &mats)
    }

    /// Basis indices generating the algebra, chosen greedily in index order.
    /// `None` if even the whole basis fails to generate (no unit in span).
    pub fn generators(&self) -> Option<Vec<usize>> {
        let mut gens: Vec<usize> = Vec::new();
        let mut mats: Vec<Matrix<F>> = Vec::new();
        let mut span = closure(self.dim, std::slice::from_ref(&self.unit), &mats);
        for i in 0..self.dim {
            if span.is_full() {
                break;
            }
            let e = basis_vec(self.dim, i);
            if span.contains(&e) {
                continue;
            }
            gens.push(i);
            mats.push(self.left_matrix(&e));
            span = closure(self.dim, std::slice::from_ref(&self.unit), &mats);
        }
        span.is_full().then_some(gens)
    }

    /// Unit laws on all basis elements and associativity.
    ///
    /// Associativity is checked on triples `(g, y, z)` with `g` from a
    /// generating set: the elements `x` with `(xy)z = x(yz)` for all `y, z`
    /// form a subalgebra, so this suffices once the unit laws hold.
    pub fn verify(&self) -> Report {
        let n = self.dim;
        let mut rep = Report::new();
        for i in 0..n {
            let e = basis_vec(n, i);
            rep.check(self.mul(&self.unit, &e) == e, || format!("unit: 1·e_{i} != e_{i}"));
            rep.check(self.mul(&e, &self.unit) == e, || format!("unit: e_{i}·1 != e_{i}"));
        }
        let firsts: Vec<usize> = match (rep.is_ok(), self.generators()) {
            (true, Some(g)) => g,
            _ => (0..n).collect(),
        };
        let fails: Vec<String> = firsts
            .par_iter()
            .flat_map_iter(|&i| {
                let mut out = Vec::new();
                for j in 0..n {
                    let ij = self.product(i, j);
                    for k in 0..n {
                        let mut lhs = vec![F::zero(); n];
                        for (l, c) in ij {
                            axpy(&mut lhs, c, self.product(*l, k));
                        }
                        let mut rhs = vec![F::zero(); n];
                        for (l, c) in self.product(j, k) {
                            axpy(&mut rhs, c, self.product(i, *l));
                        }
                        if lhs != rhs {
                            out.push(format!("associativity fails at (e_{i} e_{j}) e_{k}"));
                        }
                    }
                }
                out
            })
            .collect();
        for f in fails {
            rep.fail(f);
        }
        rep
    }

    /// Whether `chi` (values on the basis) is a unital algebra map to the field.
    pub fn is_character(&self, chi: &[F]) -> bool {
        if chi.len() != self.dim || dot(chi, &self.unit) != F::one() {
            return false;
        }
        let n = self.dim;
        (0..n * n).into_par_iter().all(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut v = F::zero();
            for (k, c) in self.product(i, j) {
                v = v + &(c.clone() * &chi[*k]);
            }
            v == chi[i].clone() * &chi[j]
        })
    }

    /// All algebra maps to the field, as value vectors on the basis.
    ///
    /// Characters factor through the quotient by the commutator ideal, a
    /// commutative algebra whose characters are the joint eigenvalues of its
    /// multiplication operators.
    pub fn characters(&self) -> Result<Vec<Vec<F>>> {
        let n = self.dim;
        let gens_idx =
            self.generators().ok_or_else(|| Error::Invalid("algebra is not generated by its basis".into()))?;
        let gens: Vec<Vec<F>> = gens_idx.iter().map(|&i| basis_vec(n, i)).collect();
        let mut comms = Vec::new();
        for (a, x) in gens.iter().enumerate() {
            for y in &gens[a + 1..] {
                let mut c = self.mul(x, y);
                for (ci, d) in c.iter_mut().zip(self.mul(y, x)) {
                    *ci = ci.clone() - &d;
                }
                if !is_zero_vec(&c) {
                    comms.push(c);
                }
            }
        }
        let ideal = self.ideal(&comms, &gens);
        if ideal.is_full() {
            return Ok(Vec::new());
        }
        let ops: Vec<Matrix<F>> = gens.iter().map(|g| ideal.quotient_operator(&self.left_matrix(g))).collect();
        let qdim = n - ideal.dim();
        let parts = joint_eigenspaces(qdim, &ops, true)?;
        let mut out = Vec::new();
        for (_, space) in parts {
            let d = F::from_int(space.dim() as i64);
            let chi: Vec<F> = (0..n)
                .map(|k| {
                    let op = ideal.quotient_operator(&self.left_matrix(&basis_vec(n, k)));
                    let r = space.restrict(&op);
                    let tr = (0..r.nrows()).fold(F::zero(), |acc, i| acc + &r[(i, i)]);
                    tr * &d.inv().unwrap()
                })
                .collect();
            if !self.is_character(&chi) {
                return Err(Error::CheckFailed("computed character is not multiplicative".into()));
            }
            out.push(chi);
        }
        Ok(out)
    }
}

/// Smallest subspace containing `start` and invariant under every matrix.
pub(crate) fn closure<F: Field>(n: usize, start: &[Vec<F>], mats: &[Matrix<F>]) -> Subspace<F> {
    let mut space = Subspace::span(n, start);
    let mut frontier: Vec<Vec<F>> = space.basis().to_vec();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for v in &frontier {
            for m in mats {
                let w = m.mul_vec(v);
                if !space.contains(&w) {
                    space = space.sum(&Subspace::span(n, std::slice::from_ref(&w)));
                    fresh.push(w);
                }
            }
        }
        frontier = fresh;
    }
    space
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoalgebraData<F: Field> {
    dim: usize,
    /// `comult[i]` is `Δ(e_i)` as sparse `(j, k, c)` terms.
    comult: Vec<Vec<(usize, usize, F)>>,
    counit: Vec<F>,
}

impl<F: Field> CoalgebraData<F> {
    /// Build from `(i, j, k, c)` entries meaning `Δ(e_i) ∋ c e_j⊗e_k`.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
        counit: Vec<F>,
    ) -> Result<Self> {
        if counit.len() != dim {
            return Err(Error::Shape(format!("counit has length {}, expected {dim}", counit.len())));
        }
        let mut comult = vec![Vec::new(); dim];
        for (i, j, k, c) in entries {
            check_index("comultiplication", i.max(j).max(k), dim)?;
            comult[i].push((j, k, c));
        }
        for terms in comult.iter_mut() {
            *terms = normalize_pairs(std::mem::take(terms));
        }
        Ok(CoalgebraData { dim, comult, counit })
    }

    /// Build from a coproduct rule returning dense `dim²` tensors
    /// indexed `j*dim + k`.
    pub fn from_fn(dim: usize, counit: Vec<F>, f: impl Fn(usize) -> Vec<F> + Sync) -> Result<Self> {
        if counit.len() != dim {
            return Err(Error::Shape(format!("counit has length {}, expected {dim}", counit.len())));
        }
        let comult = (0..dim)
            .into_par_iter()
            .map(|i| sparse(&f(i)).into_iter().map(|(jk, c)| (jk / dim, jk % dim, c)).collect())
            .collect();
        Ok(CoalgebraData { dim, comult, counit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn counit(&self) -> &[F] {
        &self.counit
    }

    pub fn coproduct(&self, i: usize) -> &[(usize, usize, F)] {
        &self.comult[i]
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, F)> {
        self.comult
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.iter().map(move |(j, k, c)| (i, *j, *k, c.clone())))
            .collect()
    }

    /// `Δ(x)` as a dense tensor indexed `j*dim + k`.
    pub fn comul(&self, x: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n * n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, k, c) in self.coproduct(i) {
                out[j * n + k] = out[j * n + k].clone() + &(xi.clone() * c);
            }
        }
        out
    }

    /// `(Δ⊗id)Δ(e_i)` as sparse `(j, k, l, c)` terms.
    pub fn coproduct3(&self, i: usize) -> Vec<(usize, usize, usize, F)> {
        let mut acc: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
        for (a, l, c) in self.coproduct(i) {
            for (j, k, d) in self.coproduct(*a) {
                let e = acc.entry((*j, *k, *l)).or_insert_with(F::zero);
                *e = e.clone() + &(c.clone() * d);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, k, l), c)| (j, k, l, c)).collect()
    }

    /// The co-opposite coalgebra.
    pub fn cop(&self) -> Self {
        let comult = self
            .comult
            .iter()
            .map(|t| normalize_pairs(t.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect()))
            .collect();
        CoalgebraData { dim: self.dim, comult, counit: self.counit.clone() }
    }

    /// Coassociativity and counit laws on every basis element.
    pub fn verify(&self) -> Report {
        let n = self.dim;
        let fails: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut out = Vec::new();
                let mut right: BTreeMap<(usize, usize, usize), F> = Default::default();
                for (j, a, c) in self.coproduct(i) {
                    for (k, l, d) in self.coproduct(*a) {
                        let e = right.entry((*j, *k, *l)).or_insert_with(F::zero);
                        *e = e.clone() + &(c.clone() * d);
                    }
                }
                right.retain(|_, c| !c.is_zero());
                let left: BTreeMap<_, _> = self.coproduct3(i).into_iter().map(|(j, k, l, c)| ((j, k, l), c)).collect();
                if left != right {
                    out.push(format!("coassociativity fails at e_{i}"));
                }
                let e = basis_vec::<F>(n, i);
                let mut l = vec![F::zero(); n];
                let mut r = vec![F::zero(); n];
                for (j, k, c) in self.coproduct(i) {
                    l[*k] = l[*k].clone() + &(self.counit[*j].clone() * c);
                    r[*j] = r[*j].clone() + &(self.counit[*k].clone() * c);
                }
                if l != e || r != e {
                    out.push(format!("counit law fails at e_{i}"));
                }
                out
            })
            .collect();
        fails.into_iter().collect()
    }
}

fn normalize_pairs<F: Field>(terms: Vec<(usize, usize, F)>) -> Vec<(usize, usize, F)> {
    let mut acc: BTreeMap<(usize, usize), F> = Default::default();
    for (j, k, c) in terms {
        let e = acc.entry((j, k)).or_insert_with(F::zero);
        *e = e.clone() + &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, k), c)| (j, k, c)).collect()
}

/// A bialgebra, with an antipode when it is a Hopf algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfData<F: Field> {
    pub algebra: AlgebraData<F>,
    pub coalgebra: CoalgebraData<F>,
    /// Column `i` is `S(e_i)`.
    antipode: Option<Matrix<F>>,
}

impl<F: Field> HopfData<F> {
    pub fn new(algebra: AlgebraData<F>, coalgebra: CoalgebraData<F>, antipode: Option<Matrix<F>>) -> Result<Self> {
        let n = algebra.dim();
        if coalgebra.dim() != n {
            return Err(Error::Shape(format!("algebra has dimension {n}, coalgebra {}", coalgebra.dim())));
        }
        if let Some(s) = &antipode {
            if s.nrows() != n || s.ncols() != n {
                return Err(Error::Shape(format!("antipode must be {n}×{n}")));
            }
        }
        Ok(HopfData { algebra, coalgebra, antipode })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn antipode(&self) -> Option<&Matrix<F>> {
        self.antipode.as_ref()
    }

    pub fn with_antipode(mut self, s: Option<Matrix<F>>) -> Self {
        self.antipode = s;
        self
    }

    /// The inverse of the antipode, when it exists.
    pub fn antipode_inverse(&self) -> Option<Matrix<F>> {
        self.antipode.as_ref().and_then(|s| s.inverse())
    }

    pub fn unit(&self) -> &[F] {
        self.algebra.unit()
    }

    pub fn counit(&self) -> &[F] {
        self.coalgebra.counit()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.algebra.mul(x, y)
    }

    /// `Δ(x)Δ(y)` in `H⊗H` as a dense tensor.
    fn tensor_mul(&self, x: &[(usize, usize, F)], y: &[(usize, usize, F)]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n * n];
        for (a, b, c) in x {
            for (a2, b2, c2) in y {
                let cc = c.clone() * c2;
                for (k, p) in self.algebra.product(*a, *a2) {
                    let cp = cc.clone() * p;
                    for (l, r) in self.algebra.product(*b, *b2) {
                        out[k * n + l] = out[k * n + l].clone() + &(cp.clone() * r);
                    }
                }
            }
        }
        out
    }

    /// Algebra and coalgebra axioms, then multiplicativity of `Δ` and `ε`
    /// and unit preservation.
    pub fn verify_bialgebra(&self) -> Report {
        let n = self.dim();
        let mut rep = Report::new();
        rep.merge("algebra", self.algebra.verify());
        rep.merge("coalgebra", self.coalgebra.verify());
        let unit = self.unit();
        let du = self.coalgebra.comul(unit);
        let mut uu = vec![F::zero(); n * n];
        for (i, a) in unit.iter().enumerate() {
            for (j, b) in unit.iter().enumerate() {
                uu[i * n + j] = a.clone() * b;
            }
        }
        rep.check(du == uu, || "Δ(1) != 1⊗1".into());
        rep.check(dot(self.counit(), unit).is_one(), || "ε(1) != 1".into());
        let eps = self.counit();
        for i in 0..n {
            for j in 0..n {
                let mut v = F::zero();
                for (k, c) in self.algebra.product(i, j) {
                    v = v + &(c.clone() * &eps[*k]);
                }
                rep.check(v == eps[i].clone() * &eps[j], || format!("ε not multiplicative at (e_{i}, e_{j})"));
            }
        }
        // Δ(xy) = Δ(x)Δ(y) for x in a generating set suffices by induction.
        let firsts = self.algebra.generators().unwrap_or_else(|| (0..n).collect());
        let fails: Vec<String> = firsts
            .par_iter()
            .flat_map_iter(|&i| {
                (0..n).filter_map(move |j| {
                    let mut lhs = vec![F::zero(); n * n];
                    for (k, c) in self.algebra.product(i, j) {
                        for (a, b, d) in self.coalgebra.coproduct(*k) {
                            lhs[a * n + b] = lhs[a * n + b].clone() + &(c.clone() * d);
                        }
                    }
                    let rhs = self.tensor_mul(self.coalgebra.coproduct(i), self.coalgebra.coproduct(j));
                    (lhs != rhs).then(|| format!("Δ not multiplicative at (e_{i}, e_{j})"))
                })
            })
            .collect();
        for f in fails {
            rep.fail(f);
        }
        rep
    }

    /// Bialgebra axioms plus `S(x_(1))x_(2) = ε(x)1 = x_(1)S(x_(2))`.
    pub fn verify_hopf(&self) -> Result<Report> {
        let s = self.antipode.as_ref().ok_or_else(|| Error::Invalid("no antipode to verify".into()))?;
        let mut rep = self.verify_bialgebra();
        rep.merge("antipode", antipode_report(self, s));
        Ok(rep)
    }

    /// The dual Hopf algebra in the dual basis: multiplication is the
    /// transpose of `Δ`, comultiplication the transpose of the product.
    pub fn dual(&self) -> Self {
        let n = self.dim();
        let mult = self.coalgebra.entries().into_iter().map(|(i, j, k, c)| (j, k, i, c));
        let comult = self.algebra.entries().into_iter().map(|(i, j, k, c)| (k, i, j, c));
        HopfData {
            algebra: AlgebraData::new(n, mult, self.counit().to_vec()).unwrap(),
            coalgebra: CoalgebraData::new(n, comult, self.unit().to_vec()).unwrap(),
            antipode: self.antipode.as_ref().map(|s| s.transpose()),
        }
    }

    /// Opposite multiplication; the antipode becomes `S⁻¹`.
    pub fn op(&self) -> Self {
        HopfData { algebra: self.algebra.op(), coalgebra: self.coalgebra.clone(), antipode: self.antipode_inverse() }
    }

    /// Opposite comultiplication; the antipode becomes `S⁻¹`.
    pub fn cop(&self) -> Self {
        HopfData { algebra: self.algebra.clone(), coalgebra: self.coalgebra.cop(), antipode: self.antipode_inverse() }
    }

    /// `H^{*cop}`.
    pub fn dual_cop(&self) -> Self {
        self.dual().cop()
    }

    /// Algebra characters, as value vectors on the basis.
    pub fn characters(&self) -> Result<Vec<Vec<F>>> {
        self.algebra.characters()
    }

    pub fn is_grouplike(&self, v: &[F]) -> bool {
        let n = self.dim();
        if !dot(self.counit(), v).is_one() {
            return false;
        }
        let d = self.coalgebra.comul(v);
        (0..n * n).all(|jk| d[jk] == v[jk / n].clone() * &v[jk % n])
    }

    /// All group-like elements: they are exactly the algebra characters of
    /// the dual.
    pub fn grouplikes(&self) -> Result<Vec<Vec<F>>> {
        let n = self.dim();
        if n > GROUPLIKE_DIM_CAP {
            return Err(Error::DimensionCap { dim: n, cap: GROUPLIKE_DIM_CAP });
        }
        let dual_alg = AlgebraData::new(
            n,
            self.coalgebra.entries().into_iter().map(|(i, j, k, c)| (j, k, i, c)),
            self.counit().to_vec(),
        )?;
        let gs = dual_alg.characters()?;
        for g in &gs {
            if !self.is_grouplike(g) {
                return Err(Error::CheckFailed("dual character is not group-like".into()));
            }
        }
        Ok(gs)
    }
}

fn antipode_report<F: Field>(h: &HopfData<F>, s: &Matrix<F>) -> Report {
    let n = h.dim();
    let scols: Vec<Vec<(usize, F)>> = (0..n).map(|i| sparse(&s.col(i))).collect();
    let fails: Vec<String> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut l = vec![F::zero(); n];
            let mut r = vec![F::zero(); n];
            for (a, b, c) in h.coalgebra.coproduct(i) {
                for (p, sp) in &scols[*a] {
                    axpy(&mut l, &(c.clone() * sp), h.algebra.product(*p, *b));
                }
                for (p, sp) in &scols[*b] {
                    axpy(&mut r, &(c.clone() * sp), h.algebra.product(*a, *p));
                }
            }
            let mut e = h.unit().to_vec();
            for x in e.iter_mut() {
                *x = x.clone() * &h.counit()[i];
            }
            (l != e || r != e).then(|| format!("antipode identity fails at e_{i}"))
        })
        .collect();
    fails.into_iter().collect()
}
