use std::path::PathBuf;

use codiff_core::cochain::is_cyclic;
use codiff_core::io::*;
use codiff_core::structures::{check_structure, StructureKind};
use codiff_core::{fixtures, Kind};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn data(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap()
}

#[test]
fn shipped_structure_files_round_trip() {
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if text.contains("\"kind\"") {
            let s = parse_algebra(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let emitted = emit_algebra(&s);
            assert_eq!(parse_algebra(&emitted).unwrap(), s, "{}", path.display());
            assert_eq!(emit_algebra(&parse_algebra(&emitted).unwrap()), emitted);
            assert_eq!(emitted, text, "{} is not in canonical form", path.display());
        } else {
            let c = parse_cochain(&text, None).unwrap();
            assert_eq!(parse_cochain(&emit_cochain(&c), None).unwrap(), c);
        }
    }
}

#[test]
fn sl2_with_killing_form() {
    let s = parse_algebra(&data("sl2.json")).unwrap();
    assert_eq!(s.kind, StructureKind::Lie);
    assert_eq!(s.cochain, fixtures::sl2());
    assert!(is_cyclic(&s.cochain, s.inner_product.as_ref().unwrap()));
    assert!(check_structure(&s, 4).passes());
}

#[test]
fn graded_keys_follow_the_exterior_rules() {
    let s = parse_algebra(&data("osp12.json")).unwrap();
    assert_eq!(s.cochain, fixtures::osp12());
    // Odd elements commute in the exterior power: "x,x" is canonical, and
    // "y,x" must be written "x,y" with the same sign.
    let text = data("osp12.json").replace("\"x,y\"", "\"y,x\"");
    match parse_algebra(&text) {
        Err(IoError::NonCanonical { fix, .. }) => assert_eq!(fix, "write \"x,y\""),
        other => panic!("{other:?}"),
    }
}

#[test]
fn input_errors_name_the_problem() {
    let base = data("nonabelian2.json");
    let cases = [
        (base.replace("\"1\"", "\"1/0\""), "1/0"),
        (base.replace("\"1\"", "\"one\""), "one"),
        (base.replace("\"e2\": \"1\"", "\"e9\": \"1\""), "e9"),
        (base.replace("\"e1,e2\"", "\"e2,e1\""), "negate"),
        (base.replace("\"e1,e2\"", "\"e1,e1\""), "vanishes"),
        (base.replace("\"lie\"", "\"jordan\""), "jordan"),
    ];
    for (text, needle) in cases {
        let err = parse_algebra(&text).unwrap_err().to_string();
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn cochain_files_can_borrow_the_basis() {
    let s = parse_algebra(&data("sl2.json")).unwrap();
    let text = r#"{"flavor": "ext", "parity": 0, "operations": [{"arity": 1, "values": {"h": {"h": "1/2"}}}]}"#;
    let c = parse_cochain(text, Some(s.space())).unwrap();
    assert_eq!(c.flavor(), Kind::Ext);
    assert!(parse_cochain(text, None).is_err());
    let odd = text.replace("\"parity\": 0", "\"parity\": 1");
    assert!(matches!(parse_cochain(&odd, Some(s.space())), Err(IoError::Parity(_))));
}
