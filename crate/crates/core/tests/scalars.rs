use hopf_pairs::poly::Poly;
use hopf_pairs::scalars::{euler_phi, CycloElem, Rational};
use hopf_pairs::{Field, One, Scalar, Zero};
use proptest::prelude::*;

fn cyclo(n: u32, c: &[i64]) -> CycloElem {
    let phi = euler_phi(n);
    CycloElem::new(n, (0..phi).map(|i| Rational::from_integer(*c.get(i).unwrap_or(&0))).collect())
}

fn int_poly(c: &[i64]) -> Poly<CycloElem> {
    Poly::new(c.iter().map(|&x| cyclo(1, &[x])).collect())
}

fn ratio(num: &[i64], den: &[i64]) -> Scalar {
    Scalar::normalize(int_poly(num), int_poly(den)).unwrap()
}

/// `Φ_n` over `Q`, by dividing `x^n - 1` by `Φ_d` for the proper divisors `d`.
fn cyclotomic(n: u32) -> Poly<Rational> {
    let mut c = vec![Rational::zero(); n as usize + 1];
    c[0] = Rational::from_integer(-1);
    c[n as usize] = Rational::one();
    let mut p = Poly::new(c);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = p.divrem(&cyclotomic(d));
        assert!(r.is_zero());
        p = q;
    }
    p
}

/// Numerator and denominator coefficients, all expressed at conductor `m`.
fn at(x: &Scalar, m: u32) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let (num, den) = x.parts();
    let lift = |p: &Poly<CycloElem>| p.coeffs().iter().map(|c| c.lift(m).coeffs().to_vec()).collect();
    (lift(&num), lift(&den))
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    let n = prop::sample::select(vec![1u32, 2, 3, 4, 6, 8]);
    (n, prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4), prop::collection::vec(-2i64..=2, 0..3))
        .prop_map(|(n, num, den)| {
            let num = Poly::new(num.iter().map(|c| cyclo(n, c)).collect());
            let mut d: Vec<CycloElem> = den.iter().map(|&c| cyclo(n, &[c])).collect();
            d.push(cyclo(n, &[1]));
            Scalar::normalize(num, Poly::new(d)).unwrap()
        })
}

fn arb_unit() -> impl Strategy<Value = Scalar> {
    (prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]), -30i64..30).prop_map(|(n, k)| Scalar::zeta_pow(n, k))
}

#[test]
fn normalize_examples() {
    assert_eq!(ratio(&[-1, 0, 1], &[-1, 1]), ratio(&[1, 1], &[1]));
    assert_eq!(ratio(&[-1, 0, 1], &[-1, 1]), Scalar::q() + Scalar::one());
    assert_eq!(ratio(&[0], &[0, 0, 0, 1]), Scalar::zero());
    assert_eq!(ratio(&[0, 2], &[4]), Scalar::q() * Scalar::from_rational(Rational::new(1, 2)));
    assert!(Scalar::normalize(int_poly(&[1]), int_poly(&[0])).is_err());
}

#[test]
fn root_of_unity_examples() {
    assert!(Scalar::zeta_pow(3, 1).is_root_of_unity());
    assert!(!Scalar::q().is_root_of_unity());
    assert!(Scalar::from_cyclo(cyclo(4, &[-1])).is_root_of_unity());
    assert!(!Scalar::from_int(2).is_root_of_unity());
    assert!(!Scalar::zero().is_root_of_unity());
    assert!(!(Scalar::zeta_pow(4, 1) + Scalar::one()).is_root_of_unity());
}

#[test]
fn pow_int_examples() {
    let q = Scalar::q();
    assert_eq!(q.pow_int(-2), (q.clone() * &q).inv().unwrap());
    assert_eq!(Scalar::zeta_pow(4, 1).pow_int(4), Scalar::one());
    let q1 = q.clone() + Scalar::one();
    assert_eq!(q1.pow_int(2), ratio(&[1, 2, 1], &[1]));
    assert_eq!(q1.pow_int(0), Scalar::one());
}

#[test]
fn zeta_has_exact_order_and_is_a_cyclotomic_root() {
    for n in 1..=24u32 {
        let z = Scalar::zeta_pow(n, 1);
        assert_eq!(z.pow_int(n as i64), Scalar::one(), "zeta_{n}^{n}");
        for k in 1..n {
            assert_ne!(z.pow_int(k as i64), Scalar::one(), "zeta_{n}^{k}");
        }
        let phi = cyclotomic(n);
        assert_eq!(phi.degree(), Some(euler_phi(n)));
        let zc = CycloElem::zeta(n);
        let value = phi
            .coeffs()
            .iter()
            .rev()
            .fold(CycloElem::zero(), |acc, c| acc * &zc + CycloElem::from_rational(n, c.clone()));
        assert!(value.is_zero(), "Phi_{n}(zeta_{n}) = {value}");
    }
}

#[test]
fn zeta_powers_agree_across_conductors() {
    for (n, m) in [(2u32, 4u32), (3, 6), (3, 12), (4, 8), (6, 12), (5, 10)] {
        for k in 0..n as i64 {
            let small = Scalar::zeta_pow(n, k);
            let big = Scalar::zeta_pow(m, k * (m / n) as i64);
            assert_eq!(small, big, "zeta_{n}^{k} vs zeta_{m}");
            assert_eq!(CycloElem::zeta_pow(n, k).lift(m), CycloElem::zeta_pow(m, k * (m / n) as i64));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_and_multiplication_are_associative(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b * &c));
    }

    #[test]
    fn operations_commute(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b * &a);
    }

    #[test]
    fn multiplication_distributes(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a * &c);
    }

    #[test]
    fn inverses(a in arb_scalar()) {
        prop_assert_eq!(a.clone() - &a, Scalar::zero());
        prop_assert_eq!(a.clone() + &(-a.clone()), Scalar::zero());
        match a.inv() {
            None => prop_assert!(a.is_zero()),
            Some(i) => {
                prop_assert_eq!(a.clone() * &i, Scalar::one());
                prop_assert_eq!(a.clone() / i.clone(), a.clone() * &a);
            }
        }
    }

    #[test]
    fn canonical_form_is_unique(a in arb_scalar(), p in prop::collection::vec(-2i64..=2, 1..3)) {
        let (num, den) = a.parts();
        prop_assert_eq!(Scalar::normalize(num.clone(), den.clone()).unwrap(), a.clone());
        let mut c: Vec<CycloElem> = p.iter().map(|&x| cyclo(1, &[x])).collect();
        c.push(cyclo(3, &[1, 1]));
        let f = Poly::new(c);
        let scaled = Scalar::normalize(num.mul(&f), den.mul(&f)).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(at(&scaled, 24), at(&a, 24));
    }

    #[test]
    fn pow_int_is_a_homomorphism(a in arb_scalar(), e in -3i64..=3, f in -3i64..=3) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.pow_int(e) * &a.pow_int(f), a.pow_int(e + f));
    }

    #[test]
    fn roots_of_unity_are_closed_under_products(a in arb_unit(), b in arb_unit()) {
        prop_assert!(a.is_root_of_unity() && b.is_root_of_unity());
        let ab = a.clone() * &b;
        prop_assert!(ab.is_root_of_unity());
        prop_assert!(a.inv().unwrap().is_root_of_unity());
        prop_assert_eq!(ab.pow_int((ab.conductor() * 2) as i64), Scalar::one());
    }

    #[test]
    fn q_terms_are_never_roots_of_unity(c in arb_unit(), k in 1i64..6) {
        let c = c.as_const().unwrap().clone();
        prop_assert!(!Scalar::q_pow(c.clone(), k).is_root_of_unity());
        prop_assert!(!Scalar::q_pow(c, -k).is_root_of_unity());
    }
}
