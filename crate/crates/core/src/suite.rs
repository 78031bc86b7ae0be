//! The acceptance suite: ten exact checks over the catalog objects, shared
//! by the `acceptance` test target and the command-line `selftest`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cartan::{
    character_relation_lattice, has_nonneg_relation, is_finite_type, is_q_positive_definite, q_power_decomposition,
    quadratic_form_q, simple_modules_audit, symmetrize, symmetrized, symmetrizers, verify_datum, PowerRelation,
};
use crate::catalog::{counterexample_datum, example_simple_rep, finite_type_datum, group_algebra, taft_algebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{
    bialgebra_formula_crosscheck, double_pullback_check, induced_form, psi_form_report, radicals_report,
};
use crate::groups::AbelianGroup;
use crate::linalg::{Matrix, Subspace};
use crate::modules::{
    find_codim_one_u_submodules, find_one_dim_a_submodules, functional_kernel, is_simple, largest_submodule_within,
    module_iso, skew_weight_check, submodule_lattice, HModules, Representation, TripleObject,
};
use crate::scalars::Scalar;
use crate::twist::{build_twisted, double_direct, yd_compat_check, Pairing, TwistedAlgebra};
use crate::{One, Zero};

/// Objects shared by several criteria, built once.
pub struct Fixtures {
    pub taft: Vec<crate::algebra::HopfData<Scalar>>,
    /// `(A^{*cop}⊗A)^σ` for `A = T_2, T_3`, via the evaluation pairing.
    pub doubles: Vec<TwistedAlgebra<Scalar>>,
    /// `kZ_2⊗kZ_2` and `T_2⊗kZ_2` with the trivial pairing.
    pub plain: Vec<TwistedAlgebra<Scalar>>,
}

impl Fixtures {
    pub fn build() -> Result<Self> {
        let taft =
            [2u32, 3].iter().map(|&n| taft_algebra(n as usize, &Scalar::zeta_pow(n, 1))).collect::<Result<Vec<_>>>()?;
        let doubles =
            taft.iter().map(|t| build_twisted(Pairing::evaluation(t.clone())?)).collect::<Result<Vec<_>>>()?;
        let z2 = group_algebra(&AbelianGroup::cyclic(2))?;
        let plain = vec![
            build_twisted(Pairing::trivial(z2.clone(), z2.clone())?)?,
            build_twisted(Pairing::trivial(taft[0].clone(), z2)?)?,
        ];
        Ok(Fixtures { taft, doubles, plain })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const NAMES: [&str; 10] = [
    "twist equals Drinfeld double",
    "one-sided product sweep",
    "pairing form suite",
    "injectivity and classification",
    "unique line and hyperplane",
    "duality with R",
    "central group-likes",
    "closed-formula cross-checks",
    "Cartan data suite",
    "largest submodule oracle",
];

type Body = fn(&Fixtures) -> Result<String>;

const BODIES: [Body; 10] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(msg()))
    }
}

/// Run criterion `id` (1-based), returning the outcome and elapsed time.
pub fn run(id: usize, fx: &Fixtures) -> (Outcome, Duration) {
    let start = Instant::now();
    let (pass, detail) = match BODIES[id - 1](fx) {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    (Outcome { id, name: NAMES[id - 1], pass, detail }, start.elapsed())
}

pub fn run_all(fx: &Fixtures) -> Vec<(Outcome, Duration)> {
    (1..=10).map(|i| run(i, fx)).collect()
}

/// `N` for `T_N`, from `dim A = N²`.
fn n_of(t: &TwistedAlgebra<Scalar>) -> usize {
    (1..).find(|n| n * n >= t.dim_a()).unwrap()
}

fn all_l(ctx: &HModules<'_, Scalar>) -> Result<Vec<TripleObject<Scalar>>> {
    ctx.pairs().into_iter().map(|(r, c)| ctx.build_l(&ctx.rhos()[r], &ctx.chis()[c])).collect()
}

fn c1(fx: &Fixtures) -> Result<String> {
    let mut dims = Vec::new();
    for (a, twisted) in fx.taft.iter().zip(&fx.doubles) {
        let direct = double_direct(a)?;
        let h = twisted.h();
        ensure(h.algebra == direct.algebra, || format!("products differ at dim {}", h.dim()))?;
        ensure(h.coalgebra == direct.coalgebra, || format!("coproducts differ at dim {}", h.dim()))?;
        ensure(h.unit() == direct.unit() && h.counit() == direct.counit(), || "unit or counit differs".into())?;
        dims.push(h.dim());
    }
    Ok(format!("entrywise equal at dims {dims:?}"))
}

fn c2(fx: &Fixtures) -> Result<String> {
    let all: Vec<&TwistedAlgebra<Scalar>> = fx.doubles.iter().chain(&fx.plain).collect();
    for t in &all {
        t.side_products_report().into_result(&format!("one-sided products at dim {}", t.dim()))?;
    }
    Ok(format!("{} algebras, all basis pairs", all.len()))
}

fn c3(fx: &Fixtures) -> Result<String> {
    let mut pairs = 0;
    for t in &fx.doubles {
        let ctx = HModules::new(t)?;
        for (r, c) in ctx.pairs() {
            let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
            let at = format!("N = {}, pair ({r},{c})", n_of(t));
            let (form, rep) = psi_form_report(&ctx, rho, chi)?;
            rep.into_result(&at)?;
            radicals_report(&ctx, &form)?.into_result(&at)?;
            let induced = induced_form(&ctx, &form)?;
            let (l, r_mod) = (ctx.build_l(rho, chi)?, ctx.build_r(chi, rho)?);
            ensure(induced.nrows() == l.dim() && l.dim() == r_mod.dim(), || {
                format!(
                    "{at}: induced form {}×{}, dim L {}, dim R {}",
                    induced.nrows(),
                    induced.ncols(),
                    l.dim(),
                    r_mod.dim()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} character pairs"))
}

/// Upper unitriangular with entries `1 + i + j` above the diagonal.
fn unitriangular(n: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Less => Scalar::from_int((1 + i + j) as i64),
        _ => Scalar::zero(),
    })
}

fn conjugate(t: &TripleObject<Scalar>, p: &Matrix<Scalar>) -> Result<TripleObject<Scalar>> {
    let inv = p.inverse().ok_or(Error::DivisionByZero)?;
    let n: Vec<Vec<Scalar>> = t.n.basis().iter().map(|v| inv.mul_vec(v)).collect();
    Ok(TripleObject {
        module: t.module.change_basis(p)?,
        m: inv.mul_vec(&t.m),
        n: Subspace::span(t.dim(), &n),
        rho: t.rho.clone(),
        chi: t.chi.clone(),
    })
}

fn c4(fx: &Fixtures) -> Result<String> {
    let mut counts = Vec::new();
    for t in &fx.doubles {
        let ctx = HModules::new(t)?;
        let ls = all_l(&ctx)?;
        for (i, a) in ls.iter().enumerate() {
            for (j, b) in ls.iter().enumerate() {
                let iso = module_iso(&a.module, &b.module)?.is_some();
                ensure(iso == (i == j), || format!("N = {}: pairs {i} and {j} iso = {iso}", n_of(t)))?;
            }
            let moved = conjugate(a, &unitriangular(a.dim()))?;
            moved.verify().into_result("conjugated triple")?;
            let (rho, chi) = ctx.classify_triple(&moved)?;
            ensure(rho == a.rho && chi == a.chi, || format!("triple {i} classified to other characters"))?;
            let rebuilt = ctx.build_l(&rho, &chi)?;
            ensure(module_iso(&moved.module, &rebuilt.module)?.is_some(), || format!("triple {i} not iso to its L"))?;
        }
        counts.push(ls.len());
    }
    Ok(format!("pairwise non-isomorphic: {counts:?} objects"))
}

fn c5(fx: &Fixtures) -> Result<String> {
    let mut total = 0;
    for t in &fx.doubles {
        let ctx = HModules::new(t)?;
        for l in all_l(&ctx)? {
            let lines = find_one_dim_a_submodules(&l.module)?.len();
            let planes = find_codim_one_u_submodules(&l.module)?.len();
            ensure(lines == 1 && planes == 1, || format!("{lines} lines and {planes} hyperplanes"))?;
            total += 1;
        }
    }
    Ok(format!("{total} modules"))
}

fn c6(fx: &Fixtures) -> Result<String> {
    let ctx = HModules::new(&fx.doubles[0])?;
    let mut dims = Vec::new();
    for l in all_l(&ctx)? {
        let b = ctx.duality_bullet(&l)?;
        let r = ctx.build_r(&l.chi, &l.rho)?;
        ensure(b.dim() == r.dim(), || format!("dual has dim {}, R has {}", b.dim(), r.dim()))?;
        ctx.duality_report(&b)?.into_result("annihilators")?;
        dims.push(b.dim());
    }
    Ok(format!("dims {dims:?}"))
}

fn c7(fx: &Fixtures) -> Result<String> {
    let t = &fx.doubles[0];
    let ctx = HModules::new(t)?;
    let central = t.central_grouplike_scan(None)?;
    ensure(!central.is_empty(), || "no central group-like pairs".into())?;
    for (u, g) in &central {
        for (r, c) in ctx.pairs() {
            let (zero, scalar) = ctx.central_element_check(u, g, &ctx.rhos()[r], &ctx.chis()[c])?;
            ensure(zero == scalar, || format!("pair ({r},{c}): acts as zero {zero}, scalar one {scalar}"))?;
        }
    }
    Ok(format!("{} central pairs × {} character pairs", central.len(), ctx.pairs().len()))
}

fn c8(fx: &Fixtures) -> Result<String> {
    for t in &fx.doubles {
        let ctx = HModules::new(t)?;
        for (r, c) in ctx.pairs() {
            let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
            ctx.induced_formula_report(rho, chi)?.into_result("induced actions")?;
            let form = crate::forms::psi_form(&ctx, rho, chi)?;
            bialgebra_formula_crosscheck(&ctx, &form)?.into_result("Ψ formulas")?;
            double_pullback_check(&ctx, &form, None)?.into_result("pullback")?;
        }
    }
    let t2 = &fx.taft[0];
    yd_compat_check(t2, t2.counit(), false)?.into_result("Yetter-Drinfeld compatibility")?;
    Ok("all formulas agree; YD compatible for β = ε".into())
}

fn c9(_: &Fixtures) -> Result<String> {
    // (i) the affine rank two datum
    let ex = counterexample_datum()?;
    verify_datum(&ex).into_result("datum")?;
    ensure(ex.components().len() == 1, || "not connected".into())?;
    let w = is_finite_type(&ex.a)?;
    ensure(!w.finite, || "classified as finite type".into())?;
    let lat = character_relation_lattice(&ex.chi, &ex.group)?;
    ensure(has_nonneg_relation(&lat) == Some(vec![1, 1]), || format!("relations {:?}", lat.basis))?;
    ensure(quadratic_form_q(&w.d, &ex.a, &[1, 1]) == 0, || "Q(1,1) != 0".into())?;

    // (ii) roots of unity
    for n in 2..=4u32 {
        let (rep, datum) = example_simple_rep(n as usize, &Scalar::zeta_pow(n, 1))?;
        skew_weight_check(&rep, &[vec![Scalar::zeta_pow(n, 1)]])?.into_result("skew weight condition")?;
        ensure(rep.dim() == n as usize && is_simple(&rep)?, || format!("N = {n}: not simple of dim N"))?;
        let audit = simple_modules_audit(&datum, &[], Some(&rep));
        let rou = audit.verdict("not_roots_of_unity").is_some_and(|v| v.holds);
        let line = audit.verdict("one_dim_submodule").is_some_and(|v| v.holds);
        ensure(!rou && !line, || format!("N = {n}: hypothesis or conclusion unexpectedly holds"))?;
    }

    // (iii) finite types over Q(q)
    for label in ["A2", "B2", "G2"] {
        let d = finite_type_datum(label, &Scalar::q())?;
        ensure(is_finite_type(&d.a)?.finite, || format!("{label} not finite"))?;
        let sym = symmetrize(&d.a)?;
        let b = symmetrized(&sym, &d.a);
        ensure(b[0][1] == b[1][0], || format!("{label}: d_i a_ij not symmetric"))?;
        ensure(symmetrizers(&d, None)?.d == sym, || format!("{label}: symmetrizers from q-powers differ"))?;
        ensure(is_q_positive_definite(&sym, &d.a), || format!("{label}: Q not positive definite"))?;
        ensure(character_relation_lattice(&d.chi, &d.group)?.is_zero(), || format!("{label}: relations"))?;
    }

    // (iv) common base of q² and q³
    let qp = |k| Scalar::q().pow_int(k);
    let dec = q_power_decomposition(&[qp(2), qp(3)], &[PowerRelation { i: 0, j: 1, m: 3, n: 2 }], None)?;
    ensure(dec.exponents == vec![2, 3] && dec.q_base == Scalar::q(), || format!("{dec:?}"))?;
    Ok("affine datum, N = 2,3,4, A2/B2/G2 and the q², q³ chain".into())
}

/// Sum of the enumerated submodules lying in `w`.
fn largest_within_by_lattice(lattice: &[Subspace<Scalar>], w: &Subspace<Scalar>) -> Subspace<Scalar> {
    lattice.iter().filter(|s| w.contains_space(s)).fold(Subspace::zero(w.ambient()), |acc, s| acc.sum(s))
}

fn c10(fx: &Fixtures) -> Result<String> {
    let mut modules: Vec<Representation<Scalar>> = Vec::new();
    for t in fx.doubles.iter().chain(&fx.plain) {
        let ctx = HModules::new(t)?;
        for (r, c) in ctx.pairs() {
            let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
            modules.push(ctx.induced_u_chi(chi)?);
            modules.push(ctx.induced_a_rho(rho)?);
            modules.push(ctx.build_l(rho, chi)?.module);
        }
    }
    for n in 2..=4u32 {
        modules.push(example_simple_rep(n as usize, &Scalar::zeta_pow(n, 1))?.0);
    }
    let (mut checked, mut skipped) = (0, 0);
    for m in modules.iter().filter(|m| m.dim() <= 6) {
        let lattice = match submodule_lattice(m) {
            Ok(l) => l,
            Err(Error::Unsupported(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let n = m.dim();
        let mut targets = vec![Subspace::zero(n), Subspace::full(n)];
        for k in 0..n {
            let mut phi = vec![Scalar::zero(); n];
            phi[k] = Scalar::one();
            targets.push(functional_kernel(&phi));
            let ones: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(if i <= k { 1 } else { 0 })).collect();
            targets.push(functional_kernel(&ones));
        }
        for s in &lattice {
            targets.push(s.clone());
        }
        for w in &targets {
            let fast = largest_submodule_within(m, w);
            ensure(fast == largest_within_by_lattice(&lattice, w), || format!("disagreement on a dim {n} module"))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no module checked".into())?;
    Ok(format!("{checked} subspaces agree; {skipped} modules with multiplicities skipped"))
}
