use hopf_pairs::catalog::{counterexample_datum, double_taft, example_simple_rep, finite_type_datum, taft_algebra};
use hopf_pairs::json::{parse_document, scalar_from_json, scalar_to_json, Document, Session};
use hopf_pairs::poly::Poly;
use hopf_pairs::scalars::{euler_phi, CycloElem, Rational};
use hopf_pairs::{Error, Field, Scalar};
use proptest::prelude::*;
use serde_json::json;

fn round_trip(doc: &Document) -> Document {
    let text = doc.to_string_pretty();
    let (session, back) = parse_document(&text).unwrap();
    assert_eq!(session, doc.session());
    assert_eq!(back.to_string_pretty(), text, "re-encoding is not byte-identical");
    back
}

#[test]
fn scalar_encoding_layout() {
    let s = Session { conductor: 4, q: true };
    let x = Scalar::q_pow(CycloElem::zeta(4), 2);
    let v = scalar_to_json(&x, 4);
    assert_eq!(
        v,
        json!({"conductor": 4, "num": [["0/1", "0/1"], ["0/1", "0/1"], ["0/1", "1/1"]], "den": [["1/1", "0/1"]]})
    );
    assert_eq!(scalar_from_json(&v, &s).unwrap(), x);
    let half = Scalar::from_rational(Rational::new(-1, 2));
    assert_eq!(scalar_to_json(&half, 1), json!({"conductor": 1, "num": [["-1/2"]], "den": [["1/1"]]}));
}

#[test]
fn session_is_enforced() {
    let v = scalar_to_json(&Scalar::q(), 2);
    let off = Session { conductor: 2, q: false };
    assert!(matches!(scalar_from_json(&v, &off), Err(Error::Invalid(_))));
    let other = Session { conductor: 4, q: true };
    assert!(matches!(scalar_from_json(&v, &other), Err(Error::Invalid(_))));
    let doc = Document::Hopf(taft_algebra(3, &Scalar::zeta_pow(3, 1)).unwrap());
    assert!(doc.to_json_in(Session { conductor: 2, q: false }).is_err());
    assert!(doc.to_json_in(Session { conductor: 6, q: true }).is_ok());
}

#[test]
fn malformed_files_are_rejected() {
    assert!(matches!(parse_document("{"), Err(Error::Parse(_))));
    let mut v = Document::Hopf(taft_algebra(2, &Scalar::from_int(-1)).unwrap()).to_json();
    v["schema"] = json!(2);
    assert!(parse_document(&v.to_string()).is_err());
    v["schema"] = json!(1);
    v["kind"] = json!("sheaf");
    assert!(parse_document(&v.to_string()).is_err());
}

#[test]
fn hopf_and_twisted_round_trip() {
    for n in [2u32, 3] {
        let t = taft_algebra(n as usize, &Scalar::zeta_pow(n, 1)).unwrap();
        match round_trip(&Document::Hopf(t.clone())) {
            Document::Hopf(back) => assert_eq!(back, t),
            _ => panic!("kind changed"),
        }
    }
    let d = double_taft(2, &Scalar::from_int(-1)).unwrap();
    match round_trip(&Document::Twisted(d.clone())) {
        Document::Twisted(back) => {
            assert_eq!(back.h(), d.h());
            assert_eq!(back.pairing().matrix(), d.pairing().matrix());
        }
        _ => panic!("kind changed"),
    }
}

#[test]
fn tampered_twisted_file_is_a_check_failure() {
    let d = double_taft(2, &Scalar::from_int(-1)).unwrap();
    let mut v = Document::Twisted(d).to_json();
    let n = v["session"]["conductor"].as_u64().unwrap() as u32;
    v["mult"][5][3] = scalar_to_json(&Scalar::from_int(7), n);
    let r = parse_document(&v.to_string());
    assert!(matches!(r, Err(Error::CheckFailed(_))), "{:?}", r.err());
}

#[test]
fn datum_and_representation_round_trip() {
    for d in [counterexample_datum().unwrap(), finite_type_datum("G2", &Scalar::q()).unwrap()] {
        match round_trip(&Document::Datum(d.clone())) {
            Document::Datum(back) => assert_eq!(back, d),
            _ => panic!("kind changed"),
        }
    }
    let (rep, datum) = example_simple_rep(4, &Scalar::zeta_pow(4, 1)).unwrap();
    match round_trip(&Document::Representation(rep.clone())) {
        Document::Representation(back) => assert_eq!(back, rep),
        _ => panic!("kind changed"),
    }
    let v = Document::Datum(datum).to_json();
    assert_eq!(v["group"], json!({"free": 0, "torsion": [4]}));
    assert_eq!(v["session"], json!({"conductor": 4, "q": false}));
}

fn cyclo(n: u32, c: &[i64]) -> CycloElem {
    let phi = euler_phi(n);
    CycloElem::new(n, (0..phi).map(|i| Rational::from_integer(*c.get(i).unwrap_or(&0))).collect())
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    let n = prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]);
    (n, prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4), prop::collection::vec(-2i64..=2, 1..3))
        .prop_map(|(n, num, den)| {
            let num = Poly::new(num.iter().map(|c| cyclo(n, c)).collect());
            let mut d: Vec<CycloElem> = den.iter().map(|&c| cyclo(n, &[c])).collect();
            d.push(cyclo(n, &[1]));
            Scalar::normalize(num, Poly::new(d)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_round_trip_is_exact(x in arb_scalar()) {
        let s = Session::of([&x]);
        prop_assert!(s.contains(&x));
        let v = scalar_to_json(&x, s.conductor);
        let back = scalar_from_json(&v, &s).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(scalar_to_json(&back, s.conductor), v);
    }

    #[test]
    fn scalar_round_trip_in_a_larger_session(x in arb_scalar(), k in 1u32..4) {
        let s = Session::of([&x]);
        let big = Session { conductor: s.conductor * k, q: true };
        let back = scalar_from_json(&scalar_to_json(&x, big.conductor), &big).unwrap();
        prop_assert_eq!(back, x);
    }
}
