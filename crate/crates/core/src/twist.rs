//! Pairings `τ : U⊗A → k`, the twisted tensor product `H = (U⊗A)^σ`,
//! Drinfeld doubles and the comparison map `H → D(A)`.
//!
//! Basis element `e_i⊗f_j` of `U⊗A` has index `i·dim A + j`.

use rayon::prelude::*;

use crate::algebra::{axpy, basis_vec, dot, sparse, AlgebraData, CoalgebraData, HopfData};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::report::Report;

type Triple<F> = Vec<(usize, usize, usize, F)>;

fn coproducts3<F: Field>(h: &HopfData<F>) -> Vec<Triple<F>> {
    (0..h.dim()).into_par_iter().map(|i| h.coalgebra.coproduct3(i)).collect()
}

/// Checks of the four pairing axioms on all basis pairs:
/// `τ(u, aa') = τ(u_(2), a)τ(u_(1), a')`, `τ(1, a) = ε(a)`,
/// `τ(uu', a) = τ(u, a_(1))τ(u', a_(2))`, `τ(u, 1) = ε(u)`.
pub fn verify_pairing_axioms<F: Field>(u: &HopfData<F>, a: &HopfData<F>, m: &Matrix<F>) -> Report {
    let (du, da) = (u.dim(), a.dim());
    let mut rep = Report::new();
    if m.nrows() != du || m.ncols() != da {
        rep.fail(format!("pairing matrix must be {du}×{da}"));
        return rep;
    }
    for i in 0..du {
        for j in 0..da {
            for k in 0..da {
                let mut lhs = F::zero();
                for (l, c) in a.algebra.product(j, k) {
                    lhs = lhs + &(c.clone() * &m[(i, *l)]);
                }
                let mut rhs = F::zero();
                for (p, q, c) in u.coalgebra.coproduct(i) {
                    rhs = rhs + &(c.clone() * &m[(*q, j)] * &m[(*p, k)]);
                }
                rep.check(lhs == rhs, || format!("(A.1) fails at u = e_{i}, a = f_{j}, a' = f_{k}"));
            }
        }
    }
    for j in 0..da {
        let v = (0..du).fold(F::zero(), |acc, i| acc + &(u.unit()[i].clone() * &m[(i, j)]));
        rep.check(v == a.counit()[j], || format!("(A.2) fails at a = f_{j}"));
    }
    for i in 0..du {
        for k in 0..du {
            for j in 0..da {
                let mut lhs = F::zero();
                for (l, c) in u.algebra.product(i, k) {
                    lhs = lhs + &(c.clone() * &m[(*l, j)]);
                }
                let mut rhs = F::zero();
                for (p, q, c) in a.coalgebra.coproduct(j) {
                    rhs = rhs + &(c.clone() * &m[(i, *p)] * &m[(k, *q)]);
                }
                rep.check(lhs == rhs, || format!("(A.3) fails at u = e_{i}, u' = e_{k}, a = f_{j}"));
            }
        }
    }
    for i in 0..du {
        let v = (0..da).fold(F::zero(), |acc, j| acc + &(a.unit()[j].clone() * &m[(i, j)]));
        rep.check(v == u.counit()[i], || format!("(A.4) fails at u = e_{i}"));
    }
    rep
}

/// Whether `τ_ℓ : U → A^{*cop}` is a unital, counital algebra and coalgebra
/// map, computed through the dual Hopf structure of `A`.
pub fn tau_ell_report<F: Field>(u: &HopfData<F>, a: &HopfData<F>, m: &Matrix<F>) -> Report {
    let target = a.dual_cop();
    let t = m.transpose();
    let (du, da) = (u.dim(), a.dim());
    let mut rep = Report::new();
    let img: Vec<Vec<F>> = (0..du).map(|i| t.col(i)).collect();
    rep.check(t.mul_vec(u.unit()) == target.unit(), || "τ_ℓ(1) != ε_A".into());
    for i in 0..du {
        rep.check(dot(target.counit(), &img[i]) == u.counit()[i], || format!("ε(τ_ℓ(e_{i})) != ε(e_{i})"));
        for k in 0..du {
            let lhs = t.mul_vec(&u.algebra.product_vec(i, k));
            rep.check(lhs == target.mul(&img[i], &img[k]), || format!("τ_ℓ not multiplicative at (e_{i}, e_{k})"));
        }
        let lhs = target.coalgebra.comul(&img[i]);
        let mut rhs = vec![F::zero(); da * da];
        for (p, q, c) in u.coalgebra.coproduct(i) {
            for (x, cx) in sparse(&img[*p]) {
                for (y, cy) in sparse(&img[*q]) {
                    rhs[x * da + y] = rhs[x * da + y].clone() + &(c.clone() * &cx * &cy);
                }
            }
        }
        rep.check(lhs == rhs, || format!("τ_ℓ not comultiplicative at e_{i}"));
    }
    rep
}

/// The convolution inverse: `τ(S(u), a)` when `U` has an antipode, else
/// `τ(u, T(a))` with `T` the antipode of `A^{op}`.
pub fn pairing_inverse<F: Field>(u: &HopfData<F>, a: &HopfData<F>, m: &Matrix<F>) -> Result<Matrix<F>> {
    if let Some(s) = u.antipode() {
        return Ok(s.transpose().mul(m));
    }
    if let Some(t) = a.op().antipode() {
        return Ok(m.mul(t));
    }
    Err(Error::Invalid("neither U nor A^op has an antipode".into()))
}

/// Convolution product of two forms on `U⊗A`: `(α*β)(u, a) = α(u_(1), a_(1))β(u_(2), a_(2))`.
pub fn convolve<F: Field>(u: &HopfData<F>, a: &HopfData<F>, x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(u.dim(), a.dim(), |i, j| {
        let mut acc = F::zero();
        for (p, q, c) in u.coalgebra.coproduct(i) {
            for (s, t, d) in a.coalgebra.coproduct(j) {
                acc = acc + &(c.clone() * d * &x[(*p, *s)] * &y[(*q, *t)]);
            }
        }
        acc
    })
}

/// `ε⊗ε` as a matrix.
pub fn counit_form<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> Matrix<F> {
    Matrix::from_fn(u.dim(), a.dim(), |i, j| u.counit()[i].clone() * &a.counit()[j])
}

/// A verified pairing with its convolution inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing<F: Field> {
    u: HopfData<F>,
    a: HopfData<F>,
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

impl<F: Field> Pairing<F> {
    pub fn new(u: HopfData<F>, a: HopfData<F>, matrix: Matrix<F>) -> Result<Self> {
        verify_pairing_axioms(&u, &a, &matrix).into_result("pairing axioms")?;
        tau_ell_report(&u, &a, &matrix).into_result("τ_ℓ bialgebra map")?;
        let inverse = pairing_inverse(&u, &a, &matrix)?;
        let e = counit_form(&u, &a);
        if convolve(&u, &a, &matrix, &inverse) != e || convolve(&u, &a, &inverse, &matrix) != e {
            return Err(Error::CheckFailed("pairing inverse is not a convolution inverse".into()));
        }
        Ok(Pairing { u, a, matrix, inverse })
    }

    /// `τ = ε⊗ε`.
    pub fn trivial(u: HopfData<F>, a: HopfData<F>) -> Result<Self> {
        let m = counit_form(&u, &a);
        Self::new(u, a, m)
    }

    /// `U = A^{*cop}` with `τ(p, a) = p(a)`.
    pub fn evaluation(a: HopfData<F>) -> Result<Self> {
        let u = a.dual_cop();
        let m = Matrix::identity(a.dim());
        Self::new(u, a, m)
    }

    pub fn u(&self) -> &HopfData<F> {
        &self.u
    }

    pub fn a(&self) -> &HopfData<F> {
        &self.a
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix<F> {
        &self.inverse
    }

    /// `τ_ℓ` as a `dim A × dim U` matrix: column `i` is `τ(e_i, ·)` in the
    /// dual basis of `A`.
    pub fn tau_ell(&self) -> Matrix<F> {
        self.matrix.transpose()
    }
}

/// `H = (U⊗A)^σ` together with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedAlgebra<F: Field> {
    pairing: Pairing<F>,
    h: HopfData<F>,
}

impl<F: Field> TwistedAlgebra<F> {
    pub fn pairing(&self) -> &Pairing<F> {
        &self.pairing
    }

    pub fn u(&self) -> &HopfData<F> {
        &self.pairing.u
    }

    pub fn a(&self) -> &HopfData<F> {
        &self.pairing.a
    }

    pub fn h(&self) -> &HopfData<F> {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn dim_u(&self) -> usize {
        self.pairing.u.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.pairing.a.dim()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dim_a() + j
    }

    /// `u⊗v` as a vector of `H`.
    pub fn tensor(&self, u: &[F], a: &[F]) -> Vec<F> {
        let da = self.dim_a();
        let mut out = vec![F::zero(); self.dim()];
        for (i, x) in sparse(u) {
            for (j, y) in sparse(a) {
                out[i * da + j] = x.clone() * &y;
            }
        }
        out
    }

    /// `u⊗1`.
    pub fn embed_u(&self, u: &[F]) -> Vec<F> {
        self.tensor(u, self.a().unit())
    }

    /// `1⊗a`.
    pub fn embed_a(&self, a: &[F]) -> Vec<F> {
        self.tensor(self.u().unit(), a)
    }

    /// `(1⊗f_j)(e_k⊗1)` as a vector of `H`.
    pub fn cross(&self, j: usize, k: usize) -> Vec<F> {
        let (du, da) = (self.dim_u(), self.dim_a());
        self.h.mul(&self.embed_a(&basis_vec(da, j)), &self.embed_u(&basis_vec(du, k)))
    }

    /// Apply `φ⊗ψ` to a vector of `H`, giving a scalar.
    pub fn apply_pair(&self, phi: &[F], psi: &[F], x: &[F]) -> F {
        let da = self.dim_a();
        let mut acc = F::zero();
        for (ij, c) in sparse(x) {
            acc = acc + &(c * &phi[ij / da] * &psi[ij % da]);
        }
        acc
    }

    /// `(I⊗ψ)(x)`, a vector of `U`.
    pub fn contract_a(&self, psi: &[F], x: &[F]) -> Vec<F> {
        let da = self.dim_a();
        let mut out = vec![F::zero(); self.dim_u()];
        for (ij, c) in sparse(x) {
            out[ij / da] = out[ij / da].clone() + &(c * &psi[ij % da]);
        }
        out
    }

    /// `(φ⊗I)(x)`, a vector of `A`.
    pub fn contract_u(&self, phi: &[F], x: &[F]) -> Vec<F> {
        let da = self.dim_a();
        let mut out = vec![F::zero(); da];
        for (ij, c) in sparse(x) {
            out[ij % da] = out[ij % da].clone() + &(c * &phi[ij / da]);
        }
        out
    }

    /// `(u⊗1)(u'⊗a') = uu'⊗a'` and `(u⊗a)(1⊗a') = u⊗aa'` on all basis
    /// elements.
    pub fn side_products_report(&self) -> Report {
        side_products_report(&self.h.algebra, &self.u().algebra, &self.a().algebra)
    }

    /// The algebra `A^{op}⊗U^{op}` on the space `A⊗U` (basis index
    /// `j·dim U + i`) making the flip `A⊗U → (U⊗A)^{op}` an algebra map.
    pub fn op_reversal(&self) -> AlgebraData<F> {
        let (du, da) = (self.dim_u(), self.dim_a());
        let n = du * da;
        let flip = |x: usize| (x % da) * du + x / da;
        let unit: Vec<F> = {
            let mut v = vec![F::zero(); n];
            for (x, c) in sparse(self.h.unit()) {
                v[flip(x)] = c;
            }
            v
        };
        AlgebraData::from_fn(n, unit, |p, q| {
            // p = (j, i) ↦ e_i⊗f_j
            let (hp, hq) = ((p % du) * da + p / du, (q % du) * da + q / du);
            let mut v = vec![F::zero(); n];
            for (x, c) in self.h.algebra.product(hq, hp) {
                v[flip(*x)] = c.clone();
            }
            v
        })
        .expect("shapes agree")
    }

    /// The 2-cocycle identity for `σ(u⊗a, u'⊗a') = ε(u)τ(u', a)ε(a')` on the
    /// tensor product bialgebra, on all basis triples, and agreement of
    /// `σ(x_(1), y_(1))x_(2)y_(2)σ⁻¹(x_(3), y_(3))` with the product of `H`.
    pub fn cocycle_report(&self) -> Report {
        let plain = tensor_bialgebra(self.u(), self.a());
        let (du, da) = (self.dim_u(), self.dim_a());
        let n = du * da;
        let form = |t: &Matrix<F>| {
            Matrix::from_fn(n, n, |x, y| {
                let (i, j) = (x / da, x % da);
                let (k, l) = (y / da, y % da);
                self.u().counit()[i].clone() * &t[(k, j)] * &self.a().counit()[l]
            })
        };
        let sigma = form(&self.pairing.matrix);
        let sigma_inv = form(&self.pairing.inverse);
        let eval_right =
            |w: &[(usize, F)], z: usize| w.iter().fold(F::zero(), |acc, (x, c)| acc + &(c.clone() * &sigma[(*x, z)]));
        let eval_left =
            |x: usize, w: &[(usize, F)]| w.iter().fold(F::zero(), |acc, (y, c)| acc + &(c.clone() * &sigma[(x, *y)]));
        let fails: Vec<String> = (0..n * n)
            .into_par_iter()
            .flat_map_iter(|xy| {
                let (x, y) = (xy / n, xy % n);
                let mut out = Vec::new();
                for z in 0..n {
                    let mut lhs = F::zero();
                    for (x1, x2, c) in plain.coalgebra.coproduct(x) {
                        for (y1, y2, d) in plain.coalgebra.coproduct(y) {
                            let s = &sigma[(*x1, *y1)];
                            if s.is_zero() {
                                continue;
                            }
                            lhs = lhs + &(c.clone() * d * s * &eval_right(plain.algebra.product(*x2, *y2), z));
                        }
                    }
                    let mut rhs = F::zero();
                    for (y1, y2, c) in plain.coalgebra.coproduct(y) {
                        for (z1, z2, d) in plain.coalgebra.coproduct(z) {
                            let s = &sigma[(*y1, *z1)];
                            if s.is_zero() {
                                continue;
                            }
                            rhs = rhs + &(c.clone() * d * s * &eval_left(x, plain.algebra.product(*y2, *z2)));
                        }
                    }
                    if lhs != rhs {
                        out.push(format!("cocycle identity fails at ({x}, {y}, {z})"));
                    }
                }
                out
            })
            .collect();
        let mut rep: Report = fails.into_iter().collect();
        // m^σ against the product of H
        let c3: Vec<Triple<F>> = coproducts3(&plain);
        let fails: Vec<String> = (0..n * n)
            .into_par_iter()
            .filter_map(|xy| {
                let (x, y) = (xy / n, xy % n);
                let mut v = vec![F::zero(); n];
                for (x1, x2, x3, c) in &c3[x] {
                    for (y1, y2, y3, d) in &c3[y] {
                        let s = sigma[(*x1, *y1)].clone() * &sigma_inv[(*x3, *y3)];
                        if s.is_zero() {
                            continue;
                        }
                        axpy(&mut v, &(s * c * d), plain.algebra.product(*x2, *y2));
                    }
                }
                (v != self.h.algebra.product_vec(x, y)).then(|| format!("twisted product differs at ({x}, {y})"))
            })
            .collect();
        for f in fails {
            rep.fail(f);
        }
        rep
    }

    /// Pairs `(u, g)` with `u` from `candidates` (default: group-likes of
    /// `U`) and `g` a group-like of `A` such that `u⊗g` is central.
    pub fn central_grouplike_scan(&self, candidates: Option<Vec<Vec<F>>>) -> Result<Vec<(Vec<F>, Vec<F>)>> {
        let us = match candidates {
            Some(c) => c,
            None => self.u().grouplikes()?,
        };
        let gs = self.a().grouplikes()?;
        let n = self.dim();
        let gens = self.h.algebra.generators().unwrap_or_else(|| (0..n).collect());
        let mut out = Vec::new();
        for u in &us {
            for g in &gs {
                let x = self.tensor(u, g);
                let central = gens.iter().all(|&b| {
                    let e = basis_vec(n, b);
                    self.h.mul(&x, &e) == self.h.mul(&e, &x)
                });
                if central {
                    out.push((u.clone(), g.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn is_central(&self, x: &[F]) -> bool {
        let n = self.dim();
        (0..n).all(|b| {
            let e = basis_vec(n, b);
            self.h.mul(x, &e) == self.h.mul(&e, x)
        })
    }
}

/// One-sided products for an algebra on `L⊗R` with basis index `i·dim R + j`.
pub fn side_products_report<F: Field>(h: &AlgebraData<F>, left: &AlgebraData<F>, right: &AlgebraData<F>) -> Report {
    let (dl, dr) = (left.dim(), right.dim());
    let tensor = |u: &[F], a: &[F]| {
        let mut out = vec![F::zero(); dl * dr];
        for (i, x) in sparse(u) {
            for (j, y) in sparse(a) {
                out[i * dr + j] = x.clone() * &y;
            }
        }
        out
    };
    let fails: Vec<String> = (0..dl)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let ei = basis_vec(dl, i);
            for k in 0..dl {
                let ek = basis_vec(dl, k);
                for l in 0..dr {
                    let fl = basis_vec(dr, l);
                    let lhs = h.mul(&tensor(&ei, right.unit()), &tensor(&ek, &fl));
                    if lhs != tensor(&left.mul(&ei, &ek), &fl) {
                        out.push(format!("(e_{i}⊗1)(e_{k}⊗f_{l}) != e_{i}e_{k}⊗f_{l}"));
                    }
                }
            }
            for j in 0..dr {
                let fj = basis_vec(dr, j);
                for l in 0..dr {
                    let fl = basis_vec(dr, l);
                    let lhs = h.mul(&tensor(&ei, &fj), &tensor(left.unit(), &fl));
                    if lhs != tensor(&ei, &right.mul(&fj, &fl)) {
                        out.push(format!("(e_{i}⊗f_{j})(1⊗f_{l}) != e_{i}⊗f_{j}f_{l}"));
                    }
                }
            }
            out
        })
        .collect();
    fails.into_iter().collect()
}

/// Tensor product coalgebra of `U` and `A`.
fn tensor_coalgebra<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> CoalgebraData<F> {
    let da = a.dim();
    let mut entries = Vec::new();
    for i in 0..u.dim() {
        for j in 0..da {
            for (p, q, c) in u.coalgebra.coproduct(i) {
                for (s, t, d) in a.coalgebra.coproduct(j) {
                    entries.push((i * da + j, p * da + s, q * da + t, c.clone() * d));
                }
            }
        }
    }
    let counit = (0..u.dim() * da).map(|x| u.counit()[x / da].clone() * &a.counit()[x % da]).collect();
    CoalgebraData::new(u.dim() * da, entries, counit).expect("shapes agree")
}

fn tensor_unit<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> Vec<F> {
    let da = a.dim();
    (0..u.dim() * da).map(|x| u.unit()[x / da].clone() * &a.unit()[x % da]).collect()
}

/// The tensor product bialgebra `U⊗A` with the untwisted product.
pub fn tensor_bialgebra<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> HopfData<F> {
    let da = a.dim();
    let algebra = AlgebraData::from_fn(u.dim() * da, tensor_unit(u, a), |x, y| {
        let mut v = vec![F::zero(); u.dim() * da];
        for (p, c) in u.algebra.product(x / da, y / da) {
            for (q, d) in a.algebra.product(x % da, y % da) {
                v[p * da + q] = v[p * da + q].clone() + &(c.clone() * d);
            }
        }
        v
    })
    .expect("shapes agree");
    HopfData::new(algebra, tensor_coalgebra(u, a), None).expect("shapes agree")
}

/// `U⊗A` as a Hopf algebra with antipode `S_U⊗S_A`.
pub fn tensor_hopf<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> Result<HopfData<F>> {
    let (su, sa) = match (u.antipode(), a.antipode()) {
        (Some(su), Some(sa)) => (su, sa),
        _ => return Err(Error::Invalid("both factors need an antipode".into())),
    };
    let da = a.dim();
    let n = u.dim() * da;
    let s = Matrix::from_fn(n, n, |r, c| su[(r / da, c / da)].clone() * &sa[(r % da, c % da)]);
    Ok(tensor_bialgebra(u, a).with_antipode(Some(s)))
}

/// Assemble `H` from cross products `M[j][k] = (1⊗f_j)(e_k⊗1)`, given as
/// sparse terms over the basis of `U⊗A`, using one-sided products:
/// `(e_i⊗f_j)(e_k⊗f_l) = (e_i⊗1)·M[j][k]·(1⊗f_l)`.
fn assemble<F: Field>(u: &HopfData<F>, a: &HopfData<F>, cross: &[Vec<(usize, F)>]) -> Result<HopfData<F>> {
    let (du, da) = (u.dim(), a.dim());
    let n = du * da;
    let algebra = AlgebraData::from_fn(n, tensor_unit(u, a), |x, y| {
        let (i, j, k, l) = (x / da, x % da, y / da, y % da);
        let mut v = vec![F::zero(); n];
        for (qt, m) in &cross[j * du + k] {
            let (q, t) = (qt / da, qt % da);
            for (p, c) in u.algebra.product(i, q) {
                let mc = m.clone() * c;
                for (s, d) in a.algebra.product(t, l) {
                    v[p * da + s] = v[p * da + s].clone() + &(mc.clone() * d);
                }
            }
        }
        v
    })?;
    let mut h = HopfData::new(algebra, tensor_coalgebra(u, a), None)?;
    // S(u⊗a) = S(1⊗a)S(u⊗1) = (1⊗S_A a)(S_U u⊗1)
    if let (Some(su), Some(sa)) = (u.antipode(), a.antipode()) {
        let cols: Vec<Vec<F>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let (i, j) = (x / da, x % da);
                let left = outer(u.unit(), &sa.col(j), da);
                let right = outer(&su.col(i), a.unit(), da);
                h.mul(&left, &right)
            })
            .collect();
        h = h.with_antipode(Some(Matrix::from_cols(n, &cols)));
    }
    Ok(h)
}

fn outer<F: Field>(u: &[F], a: &[F], da: usize) -> Vec<F> {
    let mut out = vec![F::zero(); u.len() * da];
    for (i, x) in sparse(u) {
        for (j, y) in sparse(a) {
            out[i * da + j] = x.clone() * &y;
        }
    }
    out
}

/// `(u⊗a)(u'⊗a') = u τ(u'_(1), a_(1)) u'_(2) ⊗ a_(2) τ⁻¹(u'_(3), a_(3)) a'`.
pub fn build_twisted<F: Field>(pairing: Pairing<F>) -> Result<TwistedAlgebra<F>> {
    let h = twisted_hopf(&pairing)?;
    let t = TwistedAlgebra { pairing, h };
    t.h.verify_bialgebra().into_result("twisted bialgebra")?;
    t.side_products_report().into_result("one-sided products")?;
    Ok(t)
}

fn twisted_hopf<F: Field>(pairing: &Pairing<F>) -> Result<HopfData<F>> {
    let (u, a) = (&pairing.u, &pairing.a);
    let (du, da) = (u.dim(), a.dim());
    let (tau, inv) = (&pairing.matrix, &pairing.inverse);
    let cu = coproducts3(u);
    let ca = coproducts3(a);
    let cross: Vec<Vec<(usize, F)>> = (0..da * du)
        .into_par_iter()
        .map(|jk| {
            let (j, k) = (jk / du, jk % du);
            let mut v = vec![F::zero(); du * da];
            for (p, q, r, c) in &cu[k] {
                for (s, t, w, d) in &ca[j] {
                    let coef = tau[(*p, *s)].clone() * &inv[(*r, *w)];
                    if !coef.is_zero() {
                        v[q * da + t] = v[q * da + t].clone() + &(coef * c * d);
                    }
                }
            }
            sparse(&v)
        })
        .collect();
    assemble(u, a, &cross)
}

/// The product of `D(A)` straight from
/// `(p⊗a)(q⊗b) = p·(x ↦ q(S⁻¹(a_(3)) x a_(1))) ⊗ a_(2)b`, on `A^{*cop}⊗A`.
pub fn double_direct<F: Field>(a: &HopfData<F>) -> Result<HopfData<F>> {
    let u = a.dual_cop();
    let da = a.dim();
    let sinv = a.antipode_inverse().ok_or_else(|| Error::Invalid("antipode is missing or singular".into()))?;
    let sinv_cols: Vec<Vec<(usize, F)>> = (0..da).map(|w| sparse(&sinv.col(w))).collect();
    let ca = coproducts3(a);
    // conj[(w*da + s)*da + m] = S⁻¹(f_w) f_m f_s
    let conj: Vec<Vec<F>> = (0..da * da * da)
        .into_par_iter()
        .map(|x| {
            let (ws, m) = (x / da, x % da);
            let (w, s) = (ws / da, ws % da);
            let mut left = vec![F::zero(); da];
            for (v, c) in &sinv_cols[w] {
                axpy(&mut left, c, a.algebra.product(*v, m));
            }
            a.mul(&left, &basis_vec(da, s))
        })
        .collect();
    let cross: Vec<Vec<(usize, F)>> = (0..da * da)
        .into_par_iter()
        .map(|jk| {
            let (j, k) = (jk / da, jk % da);
            let mut v = vec![F::zero(); da * da];
            for (s, t, w, d) in &ca[j] {
                for m in 0..da {
                    let c = &conj[(w * da + s) * da + m][k];
                    if !c.is_zero() {
                        v[m * da + t] = v[m * da + t].clone() + &(c.clone() * d);
                    }
                }
            }
            sparse(&v)
        })
        .collect();
    assemble(&u, a, &cross)
}

/// `D(A)`, built from the double formula and checked entrywise against the
/// twist of `A^{*cop}⊗A` by the evaluation pairing.
pub fn drinfeld_double<F: Field>(a: &HopfData<F>) -> Result<TwistedAlgebra<F>> {
    let direct = double_direct(a)?;
    let twisted = build_twisted(Pairing::evaluation(a.clone())?)?;
    if direct.algebra != twisted.h.algebra {
        return Err(Error::CheckFailed("double formula and twisted product disagree".into()));
    }
    Ok(twisted)
}

/// `f(u⊗a) = τ_ℓ(u)⊗a` from `H` to `D(A)`, verified to be a bialgebra map.
#[derive(Clone, Debug)]
pub struct ComparisonMap<F: Field> {
    pub matrix: Matrix<F>,
    pub double: TwistedAlgebra<F>,
}

pub fn comparison_map<F: Field>(h: &TwistedAlgebra<F>) -> Result<ComparisonMap<F>> {
    let d = drinfeld_double(h.a())?;
    let matrix = comparison_matrix(h);
    let rep = morphism_report(h.h(), d.h(), &matrix);
    rep.into_result("comparison map")?;
    Ok(ComparisonMap { matrix, double: d })
}

/// Matrix of `u⊗a ↦ τ_ℓ(u)⊗a`.
pub fn comparison_matrix<F: Field>(h: &TwistedAlgebra<F>) -> Matrix<F> {
    let (du, da) = (h.dim_u(), h.dim_a());
    let tau = h.pairing.matrix();
    Matrix::from_fn(da * da, du * da, |r, c| {
        let (p, b) = (r / da, r % da);
        let (i, j) = (c / da, c % da);
        if b == j {
            tau[(i, p)].clone()
        } else {
            F::zero()
        }
    })
}

/// Whether a linear map (columns = images of basis vectors) is a unital,
/// counital algebra and coalgebra map, checked on all basis pairs.
pub fn morphism_report<F: Field>(src: &HopfData<F>, dst: &HopfData<F>, f: &Matrix<F>) -> Report {
    let (n, m) = (src.dim(), dst.dim());
    let mut rep = Report::new();
    if f.nrows() != m || f.ncols() != n {
        rep.fail(format!("map must be {m}×{n}"));
        return rep;
    }
    let imgs: Vec<Vec<F>> = (0..n).map(|i| f.col(i)).collect();
    rep.check(f.mul_vec(src.unit()) == dst.unit(), || "unit not preserved".into());
    let fails: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                let lhs = f.mul_vec(&src.algebra.product_vec(i, j));
                if lhs != dst.mul(&imgs[i], &imgs[j]) {
                    out.push(format!("not multiplicative at ({i}, {j})"));
                }
            }
            if dot(dst.counit(), &imgs[i]) != src.counit()[i] {
                out.push(format!("counit not preserved at {i}"));
            }
            let lhs = dst.coalgebra.comul(&imgs[i]);
            let mut rhs = vec![F::zero(); m * m];
            for (p, q, c) in src.coalgebra.coproduct(i) {
                for (x, cx) in sparse(&imgs[*p]) {
                    for (y, cy) in sparse(&imgs[*q]) {
                        rhs[x * m + y] = rhs[x * m + y].clone() + &(c.clone() * &cx * &cy);
                    }
                }
            }
            if lhs != rhs {
                out.push(format!("not comultiplicative at {i}"));
            }
            out
        })
        .collect();
    for f in fails {
        rep.fail(f);
    }
    rep
}

/// The action `b ≻_β m = (b₂↼β) m T(b₁)` of `B` on itself, with `T` the
/// inverse antipode and `b↼β = β(b₁)b₂`. With `drop_t` the factor `T(b₁)`
/// is replaced by `ε(b₁)`, which in general breaks compatibility.
pub fn yd_action<F: Field>(b: &HopfData<F>, beta: &[F], drop_t: bool) -> Result<Vec<Matrix<F>>> {
    let n = b.dim();
    let t = b.antipode_inverse().ok_or_else(|| Error::Invalid("B^op has no antipode".into()))?;
    let t_cols: Vec<Vec<F>> = (0..n).map(|k| t.col(k)).collect();
    Ok((0..n)
        .into_par_iter()
        .map(|x| {
            let cols: Vec<Vec<F>> = (0..n)
                .map(|m| {
                    let mut out = vec![F::zero(); n];
                    for (b1, b2, b3, c) in b.coalgebra.coproduct3(x) {
                        let w = c * &beta[b2];
                        if w.is_zero() {
                            continue;
                        }
                        let left = b.algebra.product_vec(b3, m);
                        let v = if drop_t {
                            left.into_iter().map(|y| y * &b.counit()[b1]).collect()
                        } else {
                            b.mul(&left, &t_cols[b1])
                        };
                        for k in 0..n {
                            out[k] = out[k].clone() + &(w.clone() * &v[k]);
                        }
                    }
                    out
                })
                .collect();
            Matrix::from_cols(n, &cols)
        })
        .collect())
}

/// `Δ(b ≻ m) = (b₂ ≻ m₁) ⊗ b₃ m₂ T(b₁)` on all basis pairs, for `B` acting
/// on itself through `≻_β` with coaction `Δ`.
pub fn yd_compat_check<F: Field>(b: &HopfData<F>, beta: &[F], drop_t: bool) -> Result<Report> {
    let n = b.dim();
    if !b.algebra.is_character(beta) {
        return Err(Error::Invalid("β is not a character".into()));
    }
    let act = yd_action(b, beta, drop_t)?;
    let t = b.antipode_inverse().expect("checked by yd_action");
    let t_cols: Vec<Vec<F>> = (0..n).map(|k| t.col(k)).collect();
    let fails: Vec<String> = (0..n * n)
        .into_par_iter()
        .filter_map(|xm| {
            let (x, m) = (xm / n, xm % n);
            let lhs = b.coalgebra.comul(&act[x].col(m));
            let mut rhs = vec![F::zero(); n * n];
            for (b1, b2, b3, c) in b.coalgebra.coproduct3(x) {
                for (m1, m2, d) in b.coalgebra.coproduct(m) {
                    let left = act[b2].col(*m1);
                    let right = b.mul(&b.algebra.product_vec(b3, *m2), &t_cols[b1]);
                    let w = c.clone() * d;
                    for (i, li) in sparse(&left) {
                        for (j, rj) in sparse(&right) {
                            rhs[i * n + j] = rhs[i * n + j].clone() + &(w.clone() * &li * &rj);
                        }
                    }
                }
            }
            (lhs != rhs).then(|| format!("compatibility fails at b = e_{x}, m = e_{m}"))
        })
        .collect();
    Ok(fails.into_iter().collect())
}
