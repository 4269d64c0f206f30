mod common;

use common::*;
use trider::{ComplexData, ComplexFixture, TriError};

#[test]
fn complexes_round_trip_through_json() {
    for f in ["z4", "dual", "f2"] {
        let fx = load(f);
        assert_eq!(fx.schema_version, 1);
        for name in fx.complexes.keys() {
            let x = fx.complex(name).unwrap();
            let back = ComplexData::from_complex(&x).to_complex().unwrap();
            assert_eq!(back, x, "{f}/{name}");
            let text = serde_json::to_string(&ComplexData::from_complex(&x)).unwrap();
            let again: ComplexData = serde_json::from_str(&text).unwrap();
            assert_eq!(again.to_complex().unwrap(), x);
        }
        for m in fx.maps.keys() {
            fx.map(m).unwrap();
        }
    }
}

#[test]
fn malformed_input() {
    let bad_field = r#"{"schema_version": 1, "complexes": {}, "extra": 1}"#;
    assert!(serde_json::from_str::<ComplexFixture>(bad_field).is_err());
    let data = |s: &str| serde_json::from_str::<ComplexData>(s).unwrap().to_complex();
    let ring = r#""ring": {"kind": "cyclic", "p": 2, "k": 2}"#;
    // wrong shape
    let e = data(&format!(r#"{{{ring}, "degrees": {{"0": {{"factors": [4]}}, "1": {{"factors": [4]}}}}, "differentials": {{"0": [[1, 1]]}}}}"#));
    assert!(matches!(e, Err(TriError::Malformed(_))));
    // d² ≠ 0
    let e = data(&format!(
        r#"{{{ring}, "degrees": {{"0": {{"factors": [4]}}, "1": {{"factors": [4]}}, "2": {{"factors": [4]}}}}, "differentials": {{"0": [[1]], "1": [[1]]}}}}"#
    ));
    assert!(e.is_err());
    // 3 is not a power of 2
    assert!(data(&format!(r#"{{{ring}, "degrees": {{"0": {{"factors": [3]}}}}}}"#)).is_err());
    // 8 exceeds the ring
    assert!(data(&format!(r#"{{{ring}, "degrees": {{"0": {{"factors": [8]}}}}}}"#)).is_err());
    let e = data(r#"{"ring": {"kind": "cyclic", "p": 4, "k": 1}, "degrees": {}}"#);
    assert!(matches!(e, Err(TriError::Ring(_))));
}
