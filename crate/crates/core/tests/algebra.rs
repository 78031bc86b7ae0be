use hopf_pairs::algebra::{AlgebraData, HopfData};
use hopf_pairs::catalog::{group_algebra, taft_algebra};
use hopf_pairs::groups::AbelianGroup;
use hopf_pairs::linalg::Matrix;
use hopf_pairs::{One, Scalar};

fn taft(n: usize) -> HopfData<Scalar> {
    taft_algebra(n, &Scalar::zeta_pow(n as u32, 1)).unwrap()
}

#[test]
fn group_algebras_are_hopf() {
    for g in [AbelianGroup::cyclic(2), AbelianGroup::cyclic(3), AbelianGroup::new(0, vec![2, 2]).unwrap()] {
        let h = group_algebra(&g).unwrap();
        assert!(h.verify_hopf().unwrap().is_ok());
    }
}

#[test]
fn perturbed_product_is_reported() {
    let h = group_algebra(&AbelianGroup::cyclic(2)).unwrap();
    let mut entries = h.algebra.entries();
    entries[0].3 = entries[0].3.clone() + Scalar::one();
    let bad = AlgebraData::new(2, entries, h.unit().to_vec()).unwrap();
    let rep = bad.verify();
    assert!(!rep.is_ok());
    assert!(rep.failures().iter().any(|f| f.contains("e_0")), "{rep}");
}

#[test]
fn taft_algebras_are_hopf() {
    for n in [2, 3, 4] {
        let h = taft(n);
        assert_eq!(h.dim(), n * n);
        let rep = h.verify_hopf().unwrap();
        assert!(rep.is_ok(), "T_{n}: {rep}");
    }
    assert!(taft_algebra(2, &Scalar::one()).is_err());
}

#[test]
fn identity_antipode_fails() {
    let h = taft(2).with_antipode(Some(Matrix::identity(4)));
    let rep = h.verify_hopf().unwrap();
    assert!(rep.failures().iter().any(|f| f.contains("antipode")), "{rep}");
    assert!(taft(2).with_antipode(None).verify_hopf().is_err());
}

#[test]
fn duals_and_variants() {
    for h in [taft(2), taft(3), group_algebra(&AbelianGroup::cyclic(3)).unwrap()] {
        let d = h.dual();
        assert!(d.verify_hopf().unwrap().is_ok());
        assert_eq!(d.dual(), h);
        assert_eq!(h.op().op().algebra, h.algebra);
        assert_eq!(h.cop().cop().coalgebra, h.coalgebra);
        assert!(h.dual_cop().verify_hopf().unwrap().is_ok());
        assert!(h.op().verify_hopf().unwrap().is_ok());
    }
    let t = taft(2);
    assert_ne!(t.cop().coalgebra, t.coalgebra);
    let kz = group_algebra(&AbelianGroup::cyclic(2)).unwrap();
    assert_eq!(kz.op().algebra, kz.algebra);
}

#[test]
fn grouplike_counts() {
    for n in [2u32, 3, 4] {
        let h = group_algebra(&AbelianGroup::cyclic(n)).unwrap();
        assert_eq!(h.grouplikes().unwrap().len(), n as usize);
        assert_eq!(h.dual().grouplikes().unwrap().len(), n as usize);
    }
    let t = taft(2);
    let gs = t.grouplikes().unwrap();
    assert_eq!(gs.len(), 2);
    for g in &gs {
        for h in &gs {
            assert!(t.is_grouplike(&t.mul(g, h)));
        }
    }
    assert_eq!(taft(3).characters().unwrap().len(), 3);
}
