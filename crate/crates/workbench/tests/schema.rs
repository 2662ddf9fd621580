use csli_core::gallery::{admiss_csli_cocycle, admiss_csli_map, not_admiss2_certificate, not_admiss_seq_certificate};
use csli_core::rational::rat;
use csli_core::semigroup::MultiIndex;
use csli_workbench::gallery;
use csli_workbench::pipeline::{compare, interleavings, run_pipeline};
use csli_workbench::schema::{
    parse_certificate, CertificateDto, FunctionDto, MapDto, RationalDto, SchemaError, SystemDescription, Verdicts,
};
use proptest::prelude::*;

#[test]
fn gallery_round_trips() {
    for s in gallery::all() {
        let text = s.to_json();
        let back = SystemDescription::parse(&text).unwrap();
        assert_eq!(back, s, "{}", s.name);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn gallery_reports_are_deterministic() {
    for s in gallery::all() {
        let a = run_pipeline(&s).unwrap().to_json();
        let b = run_pipeline(&SystemDescription::parse(&s.to_json()).unwrap()).unwrap().to_json();
        assert_eq!(a, b, "{}", s.name);
    }
}

#[test]
fn core_objects_round_trip() {
    let map = admiss_csli_map();
    let dto = MapDto::from_core(&map).unwrap();
    let json = serde_json::to_string(&dto).unwrap();
    let back: MapDto = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_core(map.space(), "map").unwrap(), map);

    let f = admiss_csli_cocycle();
    let dto = FunctionDto::from_core(&f).unwrap();
    let back: FunctionDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
    assert!(back.to_core(f.space(), "f").unwrap().same_function(&f).unwrap());

    for c in [not_admiss2_certificate(), not_admiss_seq_certificate()] {
        let text = serde_json::to_string(&CertificateDto::from_core(&c).unwrap()).unwrap();
        assert_eq!(parse_certificate(&text).unwrap(), c);
    }
}

#[test]
fn rationals_and_points_use_the_documented_shape() {
    let q = RationalDto::from_core(&rat(-3, 4)).unwrap();
    assert_eq!(serde_json::to_value(&q).unwrap(), serde_json::json!({"num": -3, "den": 4}));
    let text = serde_json::to_string(&CertificateDto::from_core(&not_admiss2_certificate()).unwrap()).unwrap();
    assert!(text.contains(r#""side":"minus""#));
    assert!(text.contains(r#""side":"pos_inf""#));
}

#[test]
fn schema_errors_name_the_field() {
    let mut v: serde_json::Value = serde_json::from_str(&gallery::admiss_csli().to_json()).unwrap();
    v["dynamics"]["map"]["pieces"][1]["slope"]["den"] = serde_json::json!(0);
    let err = SystemDescription::parse(&v.to_string()).unwrap().map().unwrap_err();
    assert!(err.to_string().contains("dynamics.map.pieces[1].slope"), "{err}");

    let mut v: serde_json::Value = serde_json::from_str(&gallery::admiss_csli().to_json()).unwrap();
    v["expected"]["admissible"] = serde_json::json!("perhaps");
    match SystemDescription::parse(&v.to_string()) {
        Err(SchemaError::Json { line, .. }) => assert!(line >= 1),
        other => panic!("expected a JSON error, got {other:?}"),
    }

    let mut v: serde_json::Value = serde_json::from_str(&gallery::admiss_csli().to_json()).unwrap();
    v["space"]["components"][0]["left"] = serde_json::json!({"value": {"num": 1, "den": 1}, "side": "neg_inf"});
    let err = SystemDescription::parse(&v.to_string()).unwrap().cut_space().unwrap_err();
    assert!(err.to_string().contains("space.components[0].left"), "{err}");
}

#[test]
fn unknown_fields_are_rejected() {
    let mut v: serde_json::Value = serde_json::from_str(&gallery::not_admiss2().to_json()).unwrap();
    v["colour"] = serde_json::json!("blue");
    assert!(SystemDescription::parse(&v.to_string()).is_err());
}

#[test]
fn wrong_expectations_are_reported() {
    let mut s = gallery::admiss_csli();
    s.expected.local_homeo = Some(true);
    let r = run_pipeline(&s).unwrap();
    assert!(!r.matched());
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].field, "local_homeo");
}

#[test]
fn unset_expectations_are_not_checked() {
    let actual = Verdicts { csli: Some(true), ..Verdicts::default() };
    assert!(compare(&Verdicts::default(), &actual).is_empty());
    let expected = Verdicts { ddag: Some(true), ..Verdicts::default() };
    assert_eq!(compare(&expected, &actual)[0].actual, serde_json::Value::Null);
}

#[test]
fn interleavings_count_multinomials() {
    assert_eq!(interleavings(&MultiIndex::new(vec![2, 2])).len(), 6);
    assert_eq!(interleavings(&MultiIndex::new(vec![1, 1, 1])).len(), 6);
    assert_eq!(interleavings(&MultiIndex::new(vec![0, 0])), vec![Vec::<usize>::new()]);
}

proptest! {
    #[test]
    fn rationals_round_trip(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000) {
        let q = rat(num, den);
        let dto = RationalDto::from_core(&q).unwrap();
        let back: RationalDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
        prop_assert_eq!(back.to_core("q").unwrap(), q);
        prop_assert!(dto.den > 0);
    }
}
