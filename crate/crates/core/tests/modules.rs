#![allow(clippy::needless_range_loop)]

use hopf_pairs::algebra::basis_vec;
use hopf_pairs::catalog::{double_taft, example_simple_rep, group_algebra, taft_algebra};
use hopf_pairs::groups::AbelianGroup;
use hopf_pairs::linalg::{Matrix, Subspace};
use hopf_pairs::modules::*;
use hopf_pairs::twist::{build_twisted, drinfeld_double, tensor_hopf, Pairing, TwistedAlgebra};
use hopf_pairs::{Field, One, Scalar, Zero};
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

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

/// Sum of every submodule from the enumerated lattice that lies in `w`.
fn largest_within_oracle(rep: &Representation<Scalar>, w: &Subspace<Scalar>) -> Subspace<Scalar> {
    submodule_lattice(rep)
        .unwrap()
        .into_iter()
        .filter(|s| w.contains_space(s))
        .fold(Subspace::zero(rep.dim()), |acc, s| acc.sum(&s))
}

fn all_l(t: &TwistedAlgebra<Scalar>) -> Vec<TripleObject<Scalar>> {
    let ctx = HModules::new(t).unwrap();
    ctx.pairs().into_iter().map(|(r, c)| ctx.build_l(&ctx.rhos()[r], &ctx.chis()[c]).unwrap()).collect()
}

/// Upper unitriangular with entries `1 + i + j` above the diagonal.
fn unitriangular(n: usize) -> Matrix<Scalar> {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Less => s((1 + i + j) as i64),
        _ => Scalar::zero(),
    })
}

fn conjugate(t: &TripleObject<Scalar>, p: &Matrix<Scalar>) -> TripleObject<Scalar> {
    let inv = p.inverse().unwrap();
    let n: Vec<Vec<Scalar>> = t.n.basis().iter().map(|v| inv.mul_vec(v)).collect();
    TripleObject {
        module: t.module.change_basis(p).unwrap(),
        m: inv.mul_vec(&t.m),
        n: Subspace::span(t.dim(), &n),
        rho: t.rho.clone(),
        chi: t.chi.clone(),
    }
}

#[test]
fn induced_modules_are_cyclic_and_restrict_correctly() {
    for t in [d2(), d3()] {
        let ctx = HModules::new(t).unwrap();
        for (r, c) in ctx.pairs() {
            let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
            let u_chi = ctx.induced_u_chi(chi).unwrap();
            let a_rho = ctx.induced_a_rho(rho).unwrap();
            assert!(u_chi.verify_against(&t.h().algebra).is_ok());
            assert!(a_rho.verify_against(&t.h().algebra).is_ok());
            assert!(submodule_generated(&u_chi, t.u().unit()).is_full());
            assert!(submodule_generated(&a_rho, t.a().unit()).is_full());
            assert!(ctx.restriction_report(&u_chi, &a_rho, rho, chi).is_ok());
            assert!(ctx.induced_formula_report(rho, chi).unwrap().is_ok());
        }
    }
}

#[test]
fn plain_tensor_product_actions() {
    let t2 = taft_algebra(2, &zeta(2)).unwrap();
    let h = build_twisted(Pairing::trivial(t2.clone(), t2.clone()).unwrap()).unwrap();
    let ctx = HModules::new(&h).unwrap();
    for chi in ctx.chis() {
        let u_chi = ctx.induced_u_chi(chi).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let act = u_chi.act(&h.tensor(&basis_vec(4, i), &basis_vec(4, j))).unwrap();
                let want = t2.algebra.left_matrix(&basis_vec(4, i)).scale(&chi[j]);
                assert_eq!(act, want);
            }
        }
    }
    for rho in ctx.rhos() {
        let a_rho = ctx.induced_a_rho(rho).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let act = a_rho.act(&h.tensor(&basis_vec(4, i), &basis_vec(4, j))).unwrap();
                let want = t2.algebra.right_matrix(&basis_vec(4, j)).scale(&rho[i]);
                assert_eq!(act, want);
            }
        }
    }
    let eps = t2.counit().to_vec();
    let l = ctx.build_l(&eps, &eps).unwrap();
    assert_eq!(l.dim(), 1);
}

#[test]
fn largest_submodule_edge_cases_and_oracle() {
    let ctx = HModules::new(d2()).unwrap();
    let u_chi = ctx.induced_u_chi(&ctx.chis()[0]).unwrap();
    assert!(largest_submodule_within(&u_chi, &Subspace::full(4)).is_full());
    assert!(largest_submodule_within(&u_chi, &Subspace::zero(4)).is_zero());
    let mut checked = 0;
    for t in [d2(), d3()] {
        let ctx = HModules::new(t).unwrap();
        for (r, c) in ctx.pairs() {
            let (rho, chi) = (&ctx.rhos()[r], &ctx.chis()[c]);
            for (module, phi) in [(ctx.induced_u_chi(chi).unwrap(), rho), (ctx.induced_a_rho(rho).unwrap(), chi)] {
                if module.dim() > 6 {
                    continue;
                }
                let w = functional_kernel(phi);
                assert_eq!(largest_submodule_within(&module, &w), largest_within_oracle(&module, &w));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2 * 4);
    let i = ctx.i_space(&ctx.rhos()[0], &ctx.chis()[0]).unwrap();
    assert_eq!(i.dim(), 2);
}

#[test]
fn l_dimensions_on_double_of_t2() {
    let dims: Vec<usize> = all_l(d2()).iter().map(|l| l.dim()).collect();
    assert_eq!(dims, vec![2, 1, 1, 2]);
    for l in all_l(d2()) {
        assert!(is_simple(&l.module).unwrap());
        assert!(l.verify().is_ok());
    }
}

#[test]
fn submodule_generation() {
    let (rep, _) = example_simple_rep(3, &zeta(3)).unwrap();
    assert!(submodule_generated(&rep, &[Scalar::zero(), Scalar::zero(), Scalar::zero()]).is_zero());
    assert!(submodule_generated(&rep, &basis_vec(3, 0)).is_full());
    let double = rep.direct_sum(&rep).unwrap();
    let mut diag = basis_vec(6, 0);
    diag[3] = Scalar::one();
    assert_eq!(submodule_generated(&double, &diag).dim(), 3);
}

#[test]
fn weights_and_simplicity() {
    let (rep, _) = example_simple_rep(2, &s(-1)).unwrap();
    let w = weight_decomposition(&rep).unwrap();
    let weights: Vec<Vec<Scalar>> = w.iter().map(|(c, _)| c.clone()).collect();
    assert_eq!(w.len(), 2);
    assert!(weights.contains(&vec![s(1)]) && weights.contains(&vec![s(-1)]));
    assert!(w.iter().all(|(_, sp)| sp.dim() == 1));

    let trivial = Representation::<Scalar>::new(2, Side::Left, vec![]).unwrap();
    let w = weight_decomposition(&trivial).unwrap();
    assert_eq!(w.len(), 1);
    assert!(w[0].1.is_full());

    let one = |x: i64| {
        Representation::new(
            1,
            Side::Left,
            vec![
                Generator::new("g", Matrix::diag(&[s(x)]), Some(Role::Group)),
                Generator::new("x", Matrix::zeros(1, 1), Some(Role::Skew)),
            ],
        )
        .unwrap()
    };
    assert!(is_simple(&one(1)).unwrap());
    assert!(!is_simple(&one(1).direct_sum(&one(-1)).unwrap()).unwrap());
    assert!(matches!(is_simple(&one(1).direct_sum(&one(1)).unwrap()), Err(hopf_pairs::Error::Unsupported(_))));

    for l in all_l(d2()) {
        let parts = weight_decomposition(&l.module).unwrap();
        assert_eq!(parts.iter().map(|(_, sp)| sp.dim()).sum::<usize>(), l.dim());
    }
}

#[test]
fn isomorphism_search() {
    let l = &all_l(d2())[0];
    let id = module_iso(&l.module, &l.module).unwrap().unwrap();
    assert!(id.inverse().is_some());
    let perm = Matrix::from_fn(2, 2, |i, j| if i != j { Scalar::one() } else { Scalar::zero() });
    let swapped = l.module.change_basis(&perm).unwrap();
    let found = module_iso(&l.module, &swapped).unwrap().unwrap();
    for g in l.module.generators() {
        let h = swapped.generator(&g.name).unwrap();
        assert_eq!(found.mul(&g.matrix), h.mul(&found));
    }
}

#[test]
fn l_objects_are_pairwise_non_isomorphic() {
    for t in [d2(), d3()] {
        let ls = all_l(t);
        for (i, a) in ls.iter().enumerate() {
            for (j, b) in ls.iter().enumerate() {
                let iso = module_iso(&a.module, &b.module).unwrap();
                assert_eq!(iso.is_some(), i == j, "pairs {i} and {j}");
                for f in intertwiners(&a.module, &b.module) {
                    assert!(f.is_zero() || f.inverse().is_some());
                }
            }
        }
    }
}

#[test]
fn unique_line_and_plane() {
    for t in [d2(), d3()] {
        for l in all_l(t) {
            assert_eq!(find_one_dim_a_submodules(&l.module).unwrap().len(), 1);
            assert_eq!(find_codim_one_u_submodules(&l.module).unwrap().len(), 1);
            assert_eq!(find_codim_one_u_submodules(&l.module).unwrap()[0], l.n);
        }
    }
}

#[test]
fn duality_matches_r() {
    let ctx = HModules::new(d2()).unwrap();
    for l in all_l(d2()) {
        let b = ctx.duality_bullet(&l).unwrap();
        assert_eq!(b.module.side(), Side::Right);
        let r = ctx.build_r(&l.chi, &l.rho).unwrap();
        assert_eq!(b.dim(), r.dim());
        assert!(ctx.duality_report(&b).unwrap().is_ok());
        // β(p·h, n) = β(p, h·n) for p ∈ M*, n ∈ M
        let (left, right) = (l.module.basis_actions().unwrap(), l.module.transpose());
        for (h, op) in left.iter().enumerate() {
            assert_eq!(right.basis_actions().unwrap()[h], op.transpose());
        }
    }
    let t2 = taft_algebra(2, &zeta(2)).unwrap();
    let plain = build_twisted(Pairing::trivial(t2.clone(), t2.clone()).unwrap()).unwrap();
    let pctx = HModules::new(&plain).unwrap();
    let eps = t2.counit().to_vec();
    let l = pctx.build_l(&eps, &eps).unwrap();
    let b = pctx.duality_bullet(&l).unwrap();
    assert_eq!(b.dim(), 1);
    assert!(pctx.duality_report(&b).unwrap().is_ok());
}

#[test]
fn classification_recovers_characters() {
    for t in [d2(), d3()] {
        let ctx = HModules::new(t).unwrap();
        for l in all_l(t) {
            assert_eq!(ctx.classify_triple(&l).unwrap(), (l.rho.clone(), l.chi.clone()));
            let moved = conjugate(&l, &unitriangular(l.dim()));
            assert_eq!(ctx.classify_triple(&moved).unwrap(), (l.rho.clone(), l.chi.clone()));
            let rebuilt = ctx.build_l(&l.rho, &l.chi).unwrap();
            assert!(module_iso(&moved.module, &rebuilt.module).unwrap().is_some());
        }
    }
}

#[test]
fn central_grouplikes_act_by_scalars() {
    let t = d2();
    let ctx = HModules::new(t).unwrap();
    let central = t.central_grouplike_scan(None).unwrap();
    assert!(central.iter().any(|(u, g)| u == t.u().unit() && g == t.a().unit()));
    assert!(central.len() >= 2);
    for (u, g) in &central {
        for (r, c) in ctx.pairs() {
            let (zero, scalar) = ctx.central_element_check(u, g, &ctx.rhos()[r], &ctx.chis()[c]).unwrap();
            assert_eq!(zero, scalar);
        }
    }
    let (rho, chi) = (&ctx.rhos()[0], &ctx.chis()[0]);
    assert_eq!(ctx.central_element_check(t.u().unit(), t.a().unit(), rho, chi).unwrap(), (true, true));
    let non_central = t
        .u()
        .grouplikes()
        .unwrap()
        .into_iter()
        .flat_map(|u| t.a().grouplikes().unwrap().into_iter().map(move |g| (u.clone(), g)))
        .find(|p| !central.contains(p));
    if let Some((u, g)) = non_central {
        assert!(ctx.central_element_check(&u, &g, rho, chi).is_err());
    }
}

#[test]
fn identity_lift() {
    let ctx = HModules::new(d2()).unwrap();
    let (f, g) = (Matrix::identity(4), Matrix::identity(4));
    for (r, c) in ctx.pairs() {
        let lifted = lift_morphism_l(&ctx, &ctx, &f, &g, &ctx.rhos()[r], &ctx.chis()[c]).unwrap();
        assert!(lifted.is_iso);
        assert_eq!(lifted.matrix, Matrix::identity(lifted.source.dim()));
    }
}

#[test]
fn surjective_lift_is_an_isomorphism() {
    let t2 = taft_algebra(2, &zeta(2)).unwrap();
    let z2 = group_algebra(&AbelianGroup::cyclic(2)).unwrap();
    let big_u = tensor_hopf(&t2.dual_cop(), &z2).unwrap();
    assert!(big_u.verify_hopf().unwrap().is_ok());
    // τ'(p⊗z, a) = p(a)ε(z)
    let tau = Matrix::from_fn(8, 4, |r, a| if r / 2 == a { Scalar::one() } else { Scalar::zero() });
    let big = build_twisted(Pairing::new(big_u, t2.clone(), tau).unwrap()).unwrap();
    let small = drinfeld_double(&t2).unwrap();
    let (src, dst) = (HModules::new(&big).unwrap(), HModules::new(&small).unwrap());
    let f = Matrix::from_fn(4, 8, |p, c| if c / 2 == p { Scalar::one() } else { Scalar::zero() });
    let g = Matrix::identity(4);
    for (r, c) in dst.pairs() {
        let lifted = lift_morphism_l(&src, &dst, &f, &g, &dst.rhos()[r], &dst.chis()[c]).unwrap();
        assert!(lifted.is_iso);
        assert_eq!(lifted.source.dim(), lifted.target.dim());
    }
}

#[test]
fn condition_c() {
    let (rep, _) = example_simple_rep(2, &s(-1)).unwrap();
    let g = rep.generator("g").unwrap();
    let x = rep.generator("x").unwrap();
    assert_eq!(g.mul(x).mul(g), x.scale(&s(-1)));
    assert!(skew_weight_check(&rep, &[vec![s(-1)]]).unwrap().is_ok());
    let bad = skew_weight_check(&rep, &[vec![s(1)]]).unwrap();
    assert!(bad.failures().iter().any(|f| f.contains("trivial")));
    let (rep3, _) = example_simple_rep(3, &zeta(3)).unwrap();
    assert!(skew_weight_check(&rep3, &[vec![zeta(3)]]).unwrap().is_ok());
    assert!(skew_weight_check(&rep3, &[]).is_err());
}

#[test]
fn annihilated_weight_vectors() {
    let zero_skew = Representation::new(
        2,
        Side::Left,
        vec![
            Generator::new("g", Matrix::diag(&[s(1), s(-1)]), Some(Role::Group)),
            Generator::new("x", Matrix::zeros(2, 2), Some(Role::Skew)),
        ],
    )
    .unwrap();
    let v = find_annihilated_weight_vector(&zero_skew).unwrap().unwrap();
    assert_eq!(submodule_generated(&zero_skew, &v).dim(), 1);

    let (rep, _) = example_simple_rep(2, &s(-1)).unwrap();
    assert_eq!(find_annihilated_weight_vector(&rep).unwrap(), None);

    let trivial = Representation::new(
        1,
        Side::Left,
        vec![
            Generator::new("g", Matrix::identity(1), Some(Role::Group)),
            Generator::new("x", Matrix::zeros(1, 1), Some(Role::Skew)),
        ],
    )
    .unwrap();
    let sum = trivial.direct_sum(&rep).unwrap();
    let v = find_annihilated_weight_vector(&sum).unwrap().unwrap();
    assert!(!v[0].is_zero() && v[1..].iter().all(|x| x.is_zero()));
    assert_eq!(find_one_dim_a_submodules(&l_of_pair(0, 0)).unwrap().len(), 1);
}

fn l_of_pair(r: usize, c: usize) -> Representation<Scalar> {
    let ctx = HModules::new(d2()).unwrap();
    ctx.build_l(&ctx.rhos()[r], &ctx.chis()[c]).unwrap().module
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn largest_submodule_matches_oracle_on_random_subspaces(
        pick in 0usize..4,
        vecs in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4),
    ) {
        let ctx = HModules::new(d2()).unwrap();
        let module = if pick < 2 {
            ctx.induced_u_chi(&ctx.chis()[pick]).unwrap()
        } else {
            ctx.induced_a_rho(&ctx.rhos()[pick - 2]).unwrap()
        };
        let w = Subspace::span(4, &vecs.iter().map(|v| v.iter().map(|&x| s(x)).collect()).collect::<Vec<_>>());
        let got = largest_submodule_within(&module, &w);
        prop_assert!(w.contains_space(&got));
        prop_assert_eq!(got, largest_within_oracle(&module, &w));
    }

    #[test]
    fn basis_change_preserves_iso_class(entries in prop::collection::vec(-3i64..=3, 4), pair in 0usize..4) {
        let p = Matrix::from_fn(2, 2, |i, j| s(entries[2 * i + j]));
        prop_assume!(p.inverse().is_some());
        let l = &all_l(d2())[pair];
        prop_assume!(l.dim() == 2);
        let moved = l.module.change_basis(&p).unwrap();
        prop_assert!(module_iso(&l.module, &moved).unwrap().is_some());
        prop_assert!(is_simple(&moved).unwrap());
    }
}
