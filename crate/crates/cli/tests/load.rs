use std::io::Write;

use fockcat::{Error, SpaceObject};
use fockcat_cli::{load_matrix, ExprError};

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn column_vector_is_a_state() {
    let f = file(r#"{"rows": 2, "cols": 1, "data": [[1.0, 0.0], [0.5, -0.5]]}"#);
    let m = load_matrix(f.path()).unwrap();
    assert_eq!(m.dom(), &SpaceObject::unit());
    assert_eq!(m.cod(), &SpaceObject::base(2));
    assert_eq!(m.get(1, 0).im, -0.5);
}

#[test]
fn wrong_length_is_a_parse_error() {
    let f = file(r#"{"rows": 2, "cols": 1, "data": [[1.0, 0.0]]}"#);
    assert!(matches!(
        load_matrix(f.path()),
        Err(ExprError::Core(Error::Parse(_)))
    ));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let f = file(r#"{"rows": 2, "cols": 1, "data": "#);
    assert!(matches!(
        load_matrix(f.path()),
        Err(ExprError::Core(Error::Parse(_)))
    ));
}

#[test]
fn nan_is_an_invariant_violation() {
    let f = file(r#"{"rows": 2, "cols": 1, "data": [["NaN", 0.0], [1.0, 0.0]]}"#);
    assert!(matches!(
        load_matrix(f.path()),
        Err(ExprError::Core(Error::InvariantViolation(_)))
    ));
}

#[test]
fn missing_file_is_reported() {
    assert!(matches!(
        load_matrix("/nonexistent/phi.json"),
        Err(ExprError::Io { .. })
    ));
}
