use hopf_pairs::groups::{enumerate_characters, AbelianGroup, Character, GroupElem};
use hopf_pairs::{Field, One, Scalar};
use proptest::prelude::*;

fn arb_torsion() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(2u32..=6, 0..3)
}

fn arb_group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..=2, arb_torsion()).prop_map(|(r, t)| AbelianGroup::new(r, t).unwrap())
}

fn arb_elem(g: &AbelianGroup) -> impl Strategy<Value = GroupElem> {
    let g = g.clone();
    prop::collection::vec(-20i64..20, g.ngens()).prop_map(move |e| g.elem(e).unwrap())
}

/// A character with values `q^{a_i}` on free generators and roots of unity
/// of the right order on torsion generators.
fn arb_character(g: &AbelianGroup) -> impl Strategy<Value = Character<Scalar>> {
    let g = g.clone();
    prop::collection::vec((-3i64..=3, 0i64..60), g.ngens()).prop_map(move |ks| {
        let values = ks
            .iter()
            .enumerate()
            .map(|(i, &(a, k))| match g.order_at(i) {
                Some(n) => Scalar::zeta_pow(n, k),
                None => Scalar::q().pow_int(a),
            })
            .collect();
        g.character(values).unwrap()
    })
}

fn group_with_pair() -> impl Strategy<Value = (AbelianGroup, Character<Scalar>, GroupElem, GroupElem)> {
    arb_group().prop_flat_map(|g| {
        let (c, a, b) = (arb_character(&g), arb_elem(&g), arb_elem(&g));
        (Just(g), c, a, b)
    })
}

fn divisors_lcm(t: &[u32]) -> u32 {
    t.iter().fold(1, |a, &b| num_integer::lcm(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn characters_are_homomorphisms((g, chi, a, b) in group_with_pair()) {
        let ab = g.mul(&a, &b);
        prop_assert_eq!(chi.eval(&ab).unwrap(), chi.eval(&a).unwrap() * &chi.eval(&b).unwrap());
        prop_assert_eq!(chi.eval(&g.identity()).unwrap(), Scalar::one());
        prop_assert_eq!(chi.eval(&g.inv(&a)).unwrap(), chi.eval(&a).unwrap().inv().unwrap());
        prop_assert_eq!(chi.eval(&g.pow(&a, 3)).unwrap(), chi.eval(&a).unwrap().pow_int(3));
    }

    #[test]
    fn group_law((g, _chi, a, b) in group_with_pair()) {
        prop_assert_eq!(g.mul(&a, &b), g.mul(&b, &a));
        prop_assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        prop_assert_eq!(g.mul(&a, &g.identity()), a.clone());
        prop_assert_eq!(g.pow(&a, -1), g.inv(&a));
    }

    #[test]
    fn enumeration_count_and_distinctness(t in arb_torsion(), extra in 1u32..=3) {
        let g = AbelianGroup::new(0, t.clone()).unwrap();
        let n = divisors_lcm(&t) * extra;
        let chars = enumerate_characters(&g, n).unwrap();
        prop_assert_eq!(chars.len() as u64, g.order().unwrap());
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                prop_assert_ne!(a, b);
            }
        }
        for c in &chars {
            prop_assert!(g.character(c.values().to_vec()).is_ok());
            prop_assert!(c.values().iter().all(|v| n.is_multiple_of(v.conductor())));
        }
        prop_assert_eq!(g.elements().unwrap().len() as u64, g.order().unwrap());
    }

    #[test]
    fn characters_form_a_group(t in arb_torsion()) {
        let g = AbelianGroup::new(0, t.clone()).unwrap();
        let chars = enumerate_characters(&g, divisors_lcm(&t)).unwrap();
        for a in chars.iter().take(6) {
            for b in chars.iter().take(6) {
                let ab = a.product(b).unwrap();
                prop_assert!(chars.contains(&ab));
            }
            prop_assert!(a.product(&a.power(-1)).unwrap().is_trivial());
        }
    }

    #[test]
    fn orthogonality(t in arb_torsion()) {
        // Sum over the group of a nontrivial character vanishes.
        let g = AbelianGroup::new(0, t.clone()).unwrap();
        let elems = g.elements().unwrap();
        for chi in enumerate_characters(&g, divisors_lcm(&t)).unwrap() {
            let sum = elems.iter().fold(Scalar::from_int(0), |s, x| s + chi.eval(x).unwrap());
            let expect = if chi.is_trivial() { Scalar::from_int(elems.len() as i64) } else { Scalar::from_int(0) };
            prop_assert_eq!(sum, expect);
        }
    }
}

#[test]
fn invalid_characters_are_rejected() {
    let g = AbelianGroup::new(1, vec![4]).unwrap();
    assert!(g.character(vec![Scalar::q(), Scalar::zeta_pow(3, 1)]).is_err());
    assert!(g.character(vec![Scalar::from_int(0), Scalar::one()]).is_err());
    assert!(g.character(vec![Scalar::q()]).is_err());
    assert!(g.character(vec![Scalar::q(), Scalar::zeta_pow(4, 1)]).is_ok());
    assert!(g.character(vec![Scalar::q(), Scalar::from_int(-1)]).is_ok());
}
