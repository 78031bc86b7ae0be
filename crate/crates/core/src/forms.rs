//! The bilinear form `Ψ(a, u) = (ρ⊗χ)((1⊗a)(u⊗1))` on `A × U`, its
//! radicals, the induced form on `R(χ, ρ) × L(ρ, χ)`, and closed formulas
//! for `Ψ` when `U` and `A` are Hopf algebras.

use rayon::prelude::*;

use crate::algebra::{basis_vec, dot, HopfData};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::modules::HModules;
use crate::report::Report;
use crate::twist::{comparison_matrix, convolve};

/// `Ψ` as a `dim A × dim U` matrix with entry `(j, i) = Ψ(f_j, e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingForm<F: Field> {
    pub matrix: Matrix<F>,
    pub rho: Vec<F>,
    pub chi: Vec<F>,
}

impl<F: Field> PairingForm<F> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `Ψ` from its definition, with the other two expressions
/// `ρ((1⊗a)·_χ u)` and `χ(a·_ρ(u⊗1))` and balancedness
/// `Ψ(a·h, u) = Ψ(a, h·u)` for every basis `h` checked in the report.
pub fn psi_form_report<F: Field>(ctx: &HModules<'_, F>, rho: &[F], chi: &[F]) -> Result<(PairingForm<F>, Report)> {
    let t = ctx.twisted();
    let (du, da) = (t.dim_u(), t.dim_a());
    let matrix = Matrix::from_fn(da, du, |j, i| t.apply_pair(rho, chi, &t.cross(j, i)));
    let u_chi = ctx.induced_u_chi(chi)?;
    let a_rho = ctx.induced_a_rho(rho)?;
    let mut rep = Report::new();
    for j in 0..da {
        let left = u_chi.act(&t.embed_a(&basis_vec(da, j)))?;
        for i in 0..du {
            let via_u = dot(rho, &left.col(i));
            rep.check(via_u == matrix[(j, i)], || format!("ρ((1⊗f_{j})·e_{i}) != Ψ(f_{j}, e_{i})"));
        }
    }
    for i in 0..du {
        let right = a_rho.act(&t.embed_u(&basis_vec(du, i)))?;
        for j in 0..da {
            let via_a = dot(chi, &right.col(j));
            rep.check(via_a == matrix[(j, i)], || format!("χ(f_{j}·(e_{i}⊗1)) != Ψ(f_{j}, e_{i})"));
        }
    }
    let ub = u_chi.basis_actions().expect("induced modules carry basis actions");
    let ab = a_rho.basis_actions().expect("induced modules carry basis actions");
    let fails: Vec<String> = (0..t.dim())
        .into_par_iter()
        .filter(|&h| ab[h].transpose().mul(&matrix) != matrix.mul(&ub[h]))
        .map(|h| format!("Ψ is not balanced at basis element {h}"))
        .collect();
    for f in fails {
        rep.fail(f);
    }
    Ok((PairingForm { matrix, rho: rho.to_vec(), chi: chi.to_vec() }, rep))
}

pub fn psi_form<F: Field>(ctx: &HModules<'_, F>, rho: &[F], chi: &[F]) -> Result<PairingForm<F>> {
    let (form, rep) = psi_form_report(ctx, rho, chi)?;
    rep.into_result("Ψ")?;
    Ok(form)
}

/// `(A^⊥, U^⊥)`: vectors of `A` pairing to zero with all of `U`, and vectors
/// of `U` pairing to zero with all of `A`.
pub fn radicals<F: Field>(form: &PairingForm<F>) -> (Subspace<F>, Subspace<F>) {
    (Subspace::kernel(&form.matrix.transpose()), Subspace::kernel(&form.matrix))
}

/// Whether the radicals equal `J(χ, ρ)` and `I(ρ, χ)` as computed from the
/// modules.
pub fn radicals_report<F: Field>(ctx: &HModules<'_, F>, form: &PairingForm<F>) -> Result<Report> {
    let (left, right) = radicals(form);
    let i = ctx.i_space(&form.rho, &form.chi)?;
    let j = ctx.j_space(&form.chi, &form.rho)?;
    let mut rep = Report::new();
    rep.check(right == i, || format!("U-side radical has dim {} but I has dim {}", right.dim(), i.dim()));
    rep.check(left == j, || format!("A-side radical has dim {} but J has dim {}", left.dim(), j.dim()));
    Ok(rep)
}

/// The form induced on `R(χ, ρ) × L(ρ, χ)` in quotient coordinates. Errors
/// unless it is square and invertible and balanced for the quotient actions.
pub fn induced_form<F: Field>(ctx: &HModules<'_, F>, form: &PairingForm<F>) -> Result<Matrix<F>> {
    let (left, right) = radicals(form);
    let m = form.matrix.select_rows(&left.complement_indices()).select_cols(&right.complement_indices());
    if !m.is_square() {
        return Err(Error::CheckFailed(format!("induced form is {}×{}", m.nrows(), m.ncols())));
    }
    if m.inverse().is_none() {
        return Err(Error::CheckFailed("induced form is singular".into()));
    }
    let l = ctx.build_l(&form.rho, &form.chi)?;
    let r = ctx.build_r(&form.chi, &form.rho)?;
    if l.dim() != m.nrows() || r.dim() != m.nrows() {
        return Err(Error::CheckFailed(format!(
            "dim L = {}, dim R = {}, induced form has size {}",
            l.dim(),
            r.dim(),
            m.nrows()
        )));
    }
    let lb = l.module.basis_actions().expect("basis actions");
    let rb = r.module.basis_actions().expect("basis actions");
    for h in 0..lb.len() {
        if rb[h].transpose().mul(&m) != m.mul(&lb[h]) {
            return Err(Error::CheckFailed(format!("induced form is not balanced at basis element {h}")));
        }
    }
    Ok(m)
}

fn antipodes<F: Field>(u: &HopfData<F>, a: &HopfData<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let su = u.antipode().cloned().ok_or_else(|| Error::Invalid("U has no antipode".into()))?;
    let sa_inv = a.antipode_inverse().ok_or_else(|| Error::Invalid("A has no invertible antipode".into()))?;
    Ok((su, sa_inv))
}

/// `Ψ` computed three more ways and compared with the definition:
/// conjugation of `ρ⊗χ` by `τ` under convolution on `U⊗A`; the functional
/// `Ψ(·, u) = τ_ℓ(ρ⇀u₁) χ S⁻¹(τ_ℓ(u₂)) = τ_ℓ(u₁) χ S⁻¹(τ_ℓ(u₂↼ρ))` in `A*`;
/// and `Ψ(a, ·) = τ_r(a₁) ρ S(τ_r(a₂↼χ))` in `U*`.
pub fn bialgebra_formula_crosscheck<F: Field>(ctx: &HModules<'_, F>, form: &PairingForm<F>) -> Result<Report> {
    let t = ctx.twisted();
    let (u, a) = (t.u(), t.a());
    let (du, da) = (u.dim(), a.dim());
    let (su, sa_inv) = antipodes(u, a)?;
    let (rho, chi) = (&form.rho, &form.chi);
    let tau = t.pairing().matrix();
    let p = &form.matrix;
    let mut rep = Report::new();

    let rc = Matrix::from_fn(du, da, |i, j| rho[i].clone() * &chi[j]);
    let conj = convolve(u, a, &convolve(u, a, tau, &rc), t.pairing().inverse());
    rep.check(conj.transpose() == *p, || "conjugation formula differs from Ψ".into());

    let a_dual = a.dual();
    let tau_ell = |v: &[F]| tau.vec_mul(v);
    let s_inv_a = |phi: &[F]| sa_inv.vec_mul(phi);
    let mul3 = |x: &[F], y: &[F], z: &[F]| a_dual.mul(&a_dual.mul(x, y), z);
    // ρ⇀u = u₁ρ(u₂), u↼ρ = ρ(u₁)u₂
    let hit_left = |i: usize| {
        let mut v = vec![F::zero(); du];
        for (x, y, c) in u.coalgebra.coproduct(i) {
            v[*x] = v[*x].clone() + &(c.clone() * &rho[*y]);
        }
        v
    };
    let hit_right = |i: usize| {
        let mut v = vec![F::zero(); du];
        for (x, y, c) in u.coalgebra.coproduct(i) {
            v[*y] = v[*y].clone() + &(c.clone() * &rho[*x]);
        }
        v
    };
    for i in 0..du {
        let mut f1 = vec![F::zero(); da];
        let mut f2 = vec![F::zero(); da];
        for (x, y, c) in u.coalgebra.coproduct(i) {
            let ey = basis_vec(du, *y);
            let ex = basis_vec(du, *x);
            let a1 = mul3(&tau_ell(&hit_left(*x)), chi, &s_inv_a(&tau_ell(&ey)));
            let a2 = mul3(&tau_ell(&ex), chi, &s_inv_a(&tau_ell(&hit_right(*y))));
            for k in 0..da {
                f1[k] = f1[k].clone() + &(c.clone() * &a1[k]);
                f2[k] = f2[k].clone() + &(c.clone() * &a2[k]);
            }
        }
        let col = p.col(i);
        rep.check(f1 == col, || format!("Ψ(·, e_{i}) differs from τ_ℓ(ρ⇀u₁)χS⁻¹(τ_ℓ(u₂))"));
        rep.check(f2 == col, || format!("Ψ(·, e_{i}) differs from τ_ℓ(u₁)χS⁻¹(τ_ℓ(u₂↼ρ))"));
    }

    let u_dual = u.dual();
    let tau_r = |v: &[F]| tau.mul_vec(v);
    let s_u = |phi: &[F]| su.vec_mul(phi);
    for j in 0..da {
        let mut f = vec![F::zero(); du];
        for (x, y, c) in a.coalgebra.coproduct(j) {
            // a↼χ = χ(a₁)a₂
            let mut hit = vec![F::zero(); da];
            for (s, w, d) in a.coalgebra.coproduct(*y) {
                hit[*w] = hit[*w].clone() + &(d.clone() * &chi[*s]);
            }
            let term = u_dual.mul(&u_dual.mul(&tau_r(&basis_vec(da, *x)), rho), &s_u(&tau_r(&hit)));
            for k in 0..du {
                f[k] = f[k].clone() + &(c.clone() * &term[k]);
            }
        }
        rep.check(f == p.row(j), || format!("Ψ(f_{j}, ·) differs from τ_r(a₁)ρS(τ_r(a₂↼χ))"));
    }
    Ok(rep)
}

/// For `ρ = τ(·, g)` with `g` group-like in `A`: the action of each basis
/// `h` of `H` on the functionals `Ψ(·, e_i)` (transpose of `A_ρ`) equals the
/// action of `f(h)` through the `D(A)`-module built from `A*` with
/// `b ≻ m = (b₂↼i(g)) m T(b₁)` and `(p⊗a)•m = p ≻ (i(a)⇀m)`.
///
/// `g` defaults to the group-like determined by `ρ`.
pub fn double_pullback_check<F: Field>(
    ctx: &HModules<'_, F>,
    form: &PairingForm<F>,
    g: Option<&[F]>,
) -> Result<Report> {
    let t = ctx.twisted();
    let (a, da, du) = (t.a(), t.dim_a(), t.dim_u());
    let tau = t.pairing().matrix();
    let g: Vec<F> = match g {
        Some(g) => g.to_vec(),
        None => a
            .grouplikes()?
            .into_iter()
            .find(|g| tau.mul_vec(g) == form.rho)
            .ok_or_else(|| Error::Invalid("ρ is not of the form τ(·, g) for a group-like g".into()))?,
    };
    let b = a.dual();
    let t_b = b.antipode_inverse().ok_or_else(|| Error::Invalid("A has no invertible antipode".into()))?;
    let t_cols: Vec<Vec<F>> = (0..da).map(|k| t_b.col(k)).collect();
    let c3: Vec<_> = (0..da).map(|k| b.coalgebra.coproduct3(k)).collect();
    // e*_j ≻ m
    let succ = |j: usize, m: &[F]| {
        let mut out = vec![F::zero(); da];
        for (b1, b2, b3, c) in &c3[j] {
            let w = c.clone() * &g[*b2];
            if w.is_zero() {
                continue;
            }
            let x = b.mul(&b.mul(&basis_vec(da, *b3), m), &t_cols[*b1]);
            for k in 0..da {
                out[k] = out[k].clone() + &(w.clone() * &x[k]);
            }
        }
        out
    };
    // i(f_l)⇀m = m₁ m₂(f_l)
    let hit = |l: usize, m: &[F]| {
        let mut out = vec![F::zero(); da];
        for (k, mk) in m.iter().enumerate() {
            if mk.is_zero() {
                continue;
            }
            for (x, y, c) in b.coalgebra.coproduct(k) {
                if *y == l {
                    out[*x] = out[*x].clone() + &(mk.clone() * c);
                }
            }
        }
        out
    };
    let f = comparison_matrix(t);
    let a_rho = ctx.induced_a_rho(&form.rho)?;
    let ab = a_rho.basis_actions().expect("basis actions");
    let ps: Vec<Vec<F>> = (0..du).map(|i| form.matrix.col(i)).collect();
    let fails: Vec<String> = (0..t.dim())
        .into_par_iter()
        .flat_map_iter(|h| {
            let lhs_op = ab[h].transpose();
            let fh = f.col(h);
            let mut out = Vec::new();
            for (i, p) in ps.iter().enumerate() {
                let lhs = lhs_op.mul_vec(p);
                let mut rhs = vec![F::zero(); da];
                for (jl, c) in fh.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let v = succ(jl / da, &hit(jl % da, p));
                    for k in 0..da {
                        rhs[k] = rhs[k].clone() + &(c.clone() * &v[k]);
                    }
                }
                if lhs != rhs {
                    out.push(format!("pullback identity fails for basis element {h} on Ψ(·, e_{i})"));
                }
            }
            out
        })
        .collect();
    Ok(fails.into_iter().collect())
}
