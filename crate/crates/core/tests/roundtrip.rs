//! Parse/print round trip over a corpus covering every grammar production:
//! printing a parsed value and parsing it again gives the same value, and
//! the printed form is a fixed point.

use weylmod::parse::{parse_operator, parse_poly, parse_quasipolynomial, parse_verma};

#[path = "common/corpus.rs"]
mod corpus;

use corpus::{hw, params, round_trip_all};

#[test]
fn corpus_round_trips() {
    let n = round_trip_all();
    assert!(n >= 50, "corpus has {} expressions", n);
}

#[test]
fn canonical_forms() {
    let p = params();
    let op = |s: &str| parse_operator(s, &p, 1).unwrap().to_string();
    assert_eq!(op("D*t"), "t*D + t");
    assert_eq!(op("t*D - D*t"), "-t");
    assert_eq!(op("(t + t^-1)^2"), "t^2 + 2 + t^-2");
    assert_eq!(op("t^0*D^0"), "1");
    assert_eq!(parse_poly("(x + 1)^2", &p, 1).unwrap().to_string(), "x^2 + 2*x + 1");
}

#[test]
fn malformed_inputs_are_rejected() {
    let p = params();
    for s in ["", "t^", "D^-1", "t +", "(t", "t)", "q", "exp(x)", "t ** 2", "1/0", "a^-1", "C*t", "t^(1/2)"] {
        assert!(parse_operator(s, &p, 1).is_err(), "accepted {:?}", s);
    }
    for s in ["x^-1", "t", "x2", "D"] {
        assert!(parse_poly(s, &p, 1).is_err(), "accepted {:?}", s);
    }
    assert!(parse_quasipolynomial("exp(x^2)", &p).is_err());
    assert!(parse_verma("[t][t^-1]", &p, &hw()).is_err());
}
