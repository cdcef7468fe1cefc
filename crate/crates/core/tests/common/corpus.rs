//! Parse/print corpus covering every grammar production.

use weylmod::hwmod::{verma_basis, HWSpec, Quasipolynomial, TruncVerma};
use weylmod::parse::{parse_operator, parse_poly, parse_quasipolynomial, parse_scalar, parse_tensor, parse_verma};
use weylmod::scalars::Params;
use weylmod::umod::Poly;

pub const OPERATORS: &[&str] = &[
    "D^2",
    "t",
    "t^-3",
    "C",
    "3/2*t^-1*D + C",
    "-t^2*D^3",
    "t*D - D*t",
    "D*t",
    "(t + t^-1)^2",
    "(t^2)^-1",
    "lambda*t*D + lambda^-2*t^-2",
    "a*b*D^4 - 1/3*C",
    "2",
    "-1/7",
    "t^0*D^0",
    "(1 + D)*(1 - D)",
    "t*t*t^-1",
    "D/2",
    "t^-1*D^2*t*D^2",
    "  t ^ -2 * D  +  3  ",
    "-(t - D)",
    "(a - b)*t^5*D",
];

pub const RANK2: &[&str] =
    &["t1*D2", "t1^-1*D1^2 + t2^-1*D2^2", "D1*D2 - D2*D1", "lambda*t1*t2^-1*D1", "(t1 + t2)^2", "3*D2^3 - 1/2"];

pub const POLYNOMIALS: &[&str] = &["x", "x^3 - 2*x + 1", "(x + 1)^4", "a*x^2 - lambda^-1*x", "0", "-x*(x - 1)/3", "7"];

pub const POLY2: &[&str] = &["x1*x2", "x1^2 + x2^2 - 2*x1*x2", "(x1 - x2)^3", "a*x2"];

pub const QUASI: &[&str] = &[
    "x",
    "exp(a*x) - 1",
    "x*exp(a*x) - x",
    "(x^2 + 1)*exp(a*x) - x^2 - 1",
    "exp(x)*exp(x) - 1",
    "exp(0*x) - 1",
    "exp(-b*x) + x - 1",
    "0",
];

pub const SCALARS: &[&str] = &["1", "-3/4", "lambda^-2", "a*b - 1", "(a + b)^2", "lambda/lambda", "1/lambda^3"];

pub const VERMA: &[&str] = &[
    "v",
    "[t^-1]v",
    "[t^-1*D][t^-2]v",
    "[t^-2][t^-1*D]v",
    "2*[t^-1]v - c*v",
    "[D]v",
    "[t]v",
    "[t*D][t^-1]v",
    "[C]v",
    "[t^-1 + t^-1*D]v",
];

pub const TENSORS: &[&str] = &["1⊗v", "x⊗v", "3*x^2⊗[t^-1]v - 1⊗v", "x@[t^-1*D]v + x^2@v", "(x + 1)⊗[t^-2]v"];

pub fn params() -> Params {
    Params::parse("lambda:inv,a,b,c").unwrap()
}

pub fn hw() -> TruncVerma {
    let p = params();
    let spec = HWSpec::new(p.var("c").unwrap(), Quasipolynomial::poly(Poly::x_pow(1)).unwrap()).unwrap();
    verma_basis(&spec, 3, 2)
}

fn check<T: PartialEq + std::fmt::Debug + ToString>(corpus: &[&str], parse: impl Fn(&str) -> T) -> usize {
    for s in corpus {
        let v = parse(s);
        let printed = v.to_string();
        let again = parse(&printed);
        assert_eq!(again, v, "{} printed as {}", s, printed);
        assert_eq!(again.to_string(), printed, "print is not a fixed point for {}", s);
    }
    corpus.len()
}

/// Round-trips the whole corpus and returns the number of expressions.
pub fn round_trip_all() -> usize {
    let p = params();
    let tv = hw();
    let mut n = 0;
    n += check(OPERATORS, |s| parse_operator(s, &p, 1).unwrap());
    n += check(RANK2, |s| parse_operator(s, &p, 2).unwrap());
    n += check(POLYNOMIALS, |s| parse_poly(s, &p, 1).unwrap());
    n += check(POLY2, |s| parse_poly(s, &p, 2).unwrap());
    n += check(QUASI, |s| parse_quasipolynomial(s, &p).unwrap());
    n += check(SCALARS, |s| parse_scalar(s, &p).unwrap());
    n += check(VERMA, |s| parse_verma(s, &p, &tv).unwrap());
    n += check(TENSORS, |s| parse_tensor(s, &p, &tv).unwrap());
    n
}
