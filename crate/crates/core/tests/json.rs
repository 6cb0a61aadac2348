use brake_index::ech::{verify_rech, Partition, RealGenerator};
use brake_index::fredholm::{CurveConfig, End, TrivialCylinderCover};
use brake_index::multicover::{Building, CoverAssignment, CoverEnd, EndCovers};
use brake_index::{HalfInt, OrbitClass, OrbitSpec, Rational};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::Debug;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(value: &T) -> String {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value);
    text
}

fn hyp(class: OrbitClass, twice: i64) -> OrbitSpec {
    OrbitSpec::hyperbolic(class, HalfInt::from_twice(twice)).unwrap()
}

#[test]
fn orbit_specs_use_exact_strings() {
    let e = OrbitSpec::elliptic(Rational::new(5, 17)).unwrap();
    assert_eq!(round_trip(&e), r#"{"class":"elliptic","theta":"5/17"}"#);
    let h = hyp(OrbitClass::NegHypTwo, -3);
    assert_eq!(round_trip(&h), r#"{"class":"neg-hyp-2","mu1":"-3/2"}"#);
}

#[test]
fn malformed_orbit_specs_are_rejected() {
    for bad in [
        r#"{"class":"elliptic","mu1":"1/2"}"#,
        r#"{"class":"neg-hyp-1","mu1":"1"}"#,
        r#"{"class":"elliptic","theta":"2"}"#,
        r#"{"class":"neg-hyp-3","mu1":"1/2"}"#,
        r#"{"class":"pos-hyp-1","mu1":"1/2","theta":"1/3"}"#,
    ] {
        assert!(serde_json::from_str::<OrbitSpec>(bad).is_err(), "{bad}");
    }
}

#[test]
fn curves_and_covers_round_trip() {
    let o = hyp(OrbitClass::PosHypOne, 1);
    let cfg = CurveConfig {
        genus: 1,
        c1: -2,
        sym_pos: vec![End::new(o, 2)],
        sym_neg: vec![End::new(o, 1)],
        pair_pos: vec![],
        pair_neg: vec![End::new(o, 1)],
    };
    round_trip(&cfg);
    let cover = TrivialCylinderCover { orbit: o, genus: 0, a: vec![2, 1], b: vec![3], c: vec![], d: vec![] };
    round_trip(&cover);
    let minimal: CurveConfig = serde_json::from_str(r#"{"genus":0,"c1":0}"#).unwrap();
    assert_eq!(minimal.puncture_count(), 0);
    assert!(serde_json::from_str::<CurveConfig>(r#"{"genus":0,"c1":0,"extra":1}"#).is_err());
}

#[test]
fn partitions_serialize_descending() {
    let p = Partition::new(vec![1, 5]).unwrap();
    assert_eq!(round_trip(&p), "[5,1]");
    assert!(serde_json::from_str::<Partition>("[0,2]").is_err());
    let report = verify_rech(&hyp(OrbitClass::NegHypOne, 1), 6).unwrap();
    let text = round_trip(&report);
    assert!(text.contains(r#""equality_partitions":[[5,1]]"#), "{text}");
}

#[test]
fn generators_reject_duplicates() {
    let o = hyp(OrbitClass::NegHypOne, 1);
    let two = serde_json::to_string(&vec![End::new(o, 1), End::new(o, 2)]).unwrap();
    assert!(serde_json::from_str::<RealGenerator>(&two).is_err());
    let one = serde_json::to_string(&vec![End::new(o, 3)]).unwrap();
    assert!(serde_json::from_str::<RealGenerator>(&one).is_ok());
}

#[test]
fn buildings_and_cover_assignments_round_trip() {
    let o = hyp(OrbitClass::NegHypOne, 3);
    let plane = CurveConfig::symmetric(vec![End::new(o, 1)], vec![]);
    let b = Building::new(vec![vec![plane.clone()]]);
    assert!(round_trip(&b).starts_with("[[{"));
    let assign = CoverAssignment {
        base: plane,
        degree: 2,
        branch: 1,
        covers: EndCovers { sym_pos: vec![vec![CoverEnd::sym(2)]], ..Default::default() },
    };
    round_trip(&assign);
}
