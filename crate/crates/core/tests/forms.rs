#![allow(clippy::needless_range_loop)]

use hopf_pairs::catalog::{double_taft, taft_algebra};
use hopf_pairs::forms::*;
use hopf_pairs::modules::HModules;
use hopf_pairs::twist::{build_twisted, Pairing, TwistedAlgebra};
use hopf_pairs::{Field, Scalar};
use proptest::prelude::*;
use std::sync::OnceLock;

fn zeta(n: u32) -> Scalar {
    Scalar::zeta_pow(n, 1)
}

fn d2() -> &'static TwistedAlgebra<Scalar> {
    static D: OnceLock<TwistedAlgebra<Scalar>> = OnceLock::new();
    D.get_or_init(|| double_taft(2, &zeta(2)).unwrap())
}

fn d3() -> &'static TwistedAlgebra<Scalar> {
    static D: OnceLock<TwistedAlgebra<Scalar>> = OnceLock::new();
    D.get_or_init(|| double_taft(3, &zeta(3)).unwrap())
}

fn check_all(t: &TwistedAlgebra<Scalar>) -> Vec<usize> {
    let ctx = HModules::new(t).unwrap();
    let mut ranks = Vec::new();
    for (r, c) in ctx.pairs() {
        let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
        let (form, rep) = psi_form_report(&ctx, rho, chi).unwrap();
        assert!(rep.is_ok(), "{rep}");
        assert!(radicals_report(&ctx, &form).unwrap().is_ok());
        let induced = induced_form(&ctx, &form).unwrap();
        let l = ctx.build_l(rho, chi).unwrap();
        let r_mod = ctx.build_r(chi, rho).unwrap();
        assert_eq!(induced.nrows(), l.dim());
        assert_eq!(l.dim(), r_mod.dim());
        assert_eq!(form.rank(), l.dim());
        ranks.push(form.rank());
    }
    ranks
}

#[test]
fn psi_suite_on_double_of_t2() {
    assert_eq!(check_all(d2()), vec![2, 1, 1, 2]);
}

#[test]
fn psi_suite_on_double_of_t3() {
    assert_eq!(check_all(d3()), vec![3, 2, 1, 2, 1, 3, 1, 3, 2]);
}

#[test]
fn closed_formulas_agree() {
    for t in [d2(), d3()] {
        let ctx = HModules::new(t).unwrap();
        for (r, c) in ctx.pairs() {
            let form = psi_form(&ctx, &ctx.rhos()[r], &ctx.chis()[c]).unwrap();
            let cross = bialgebra_formula_crosscheck(&ctx, &form).unwrap();
            assert!(cross.is_ok(), "{cross}");
            let pull = double_pullback_check(&ctx, &form, None).unwrap();
            assert!(pull.is_ok(), "{pull}");
        }
    }
}

#[test]
fn plain_tensor_product_form_has_rank_one() {
    let t2 = taft_algebra(2, &zeta(2)).unwrap();
    let h = build_twisted(Pairing::trivial(t2.clone(), t2.clone()).unwrap()).unwrap();
    let ctx = HModules::new(&h).unwrap();
    for (r, c) in ctx.pairs() {
        let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
        let form = psi_form(&ctx, rho, chi).unwrap();
        for j in 0..4 {
            for i in 0..4 {
                assert_eq!(form.matrix[(j, i)], rho[i].clone() * &chi[j]);
            }
        }
        assert_eq!(form.rank(), 1);
        assert_eq!(induced_form(&ctx, &form).unwrap().nrows(), 1);
    }
}

#[test]
fn pullback_detects_a_wrong_grouplike() {
    let ctx = HModules::new(d2()).unwrap();
    let t = d2();
    let gs = t.a().grouplikes().unwrap();
    let form = psi_form(&ctx, &ctx.rhos()[0], &ctx.chis()[0]).unwrap();
    let right = gs.iter().find(|g| t.pairing().matrix().mul_vec(g) == form.rho).unwrap();
    let wrong = gs.iter().find(|g| *g != right).unwrap();
    assert!(double_pullback_check(&ctx, &form, Some(right)).unwrap().is_ok());
    assert!(!double_pullback_check(&ctx, &form, Some(wrong)).unwrap().is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn balanced_on_random_elements(
        pair in 0usize..4,
        h in prop::collection::vec(-2i64..=2, 16),
        a in prop::collection::vec(-2i64..=2, 4),
        u in prop::collection::vec(-2i64..=2, 4),
    ) {
        let t = d2();
        let ctx = HModules::new(t).unwrap();
        let (r, c) = ctx.pairs()[pair];
        let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
        let form = psi_form(&ctx, rho, chi).unwrap();
        let sc = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        let (h, a, u) = (sc(&h), sc(&a), sc(&u));
        let hu = ctx.induced_u_chi(chi).unwrap().act(&h).unwrap().mul_vec(&u);
        let ah = ctx.induced_a_rho(rho).unwrap().act(&h).unwrap().mul_vec(&a);
        let psi = |x: &[Scalar], y: &[Scalar]| {
            let row = form.matrix.vec_mul(x);
            row.iter().zip(y).fold(Scalar::from_int(0), |s, (p, q)| s + &(p.clone() * q))
        };
        prop_assert_eq!(psi(&ah, &u), psi(&a, &hu));
    }
}
