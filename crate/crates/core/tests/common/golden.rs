//! Golden-file cases shared by the CLI tests and the acceptance run.

use std::path::PathBuf;

pub const CASES: &[(&str, &[&str])] = &[
    ("bracket", &["bracket", "D^2", "t^3"]),
    ("bracket_central", &["bracket", "t^2*D", "t^-2*D"]),
    ("bracket_rank2", &["--rank", "2", "bracket", "t1^-1*D1^2", "t1*D2"]),
    ("bracket_json", &["--json", "bracket", "3/2*t^-1*D + C", "lambda*t^2"]),
    ("product", &["product", "t^-1*D^2", "t*D"]),
    ("product_central", &["product", "C", "t"]),
    ("cocycle", &["cocycle", "t^2*D", "t^-2*D"]),
    ("cocycle_json", &["--json", "cocycle", "t^3*D^2", "t^-3*D"]),
    ("act", &["act", "t^2*D", "x^2"]),
    ("act_eps0", &["act", "--eps", "0", "t^-1*D^2", "x + 1"]),
    ("act_vir", &["act", "--family", "vir", "t*D", "x"]),
    ("act_hv_json", &["--json", "act", "--family", "hv", "t^-2", "x^2"]),
    ("act_dnu", &["--rank", "2", "act", "--family", "dnu", "--lambda", "2,lambda", "t1*D2^2", "x1*x2"]),
    ("act_wrong_family", &["act", "--family", "vir", "t*D^2", "x"]),
    ("grade", &["grade", "t*D + t^-1 + D^2 + 3*C"]),
    ("grade_rank2", &["--rank", "2", "grade", "t1*D2 + t2^-1 - t1*t2^-1"]),
    ("span_probe", &["span-probe", "t", "t^-1", "D^2", "--bounds", "m=2,n=3,depth=8"]),
    ("span_probe_small", &["span-probe", "t", "--bounds", "m=2,n=2,depth=4"]),
    (
        "span_probe_json",
        &["--json", "--rank", "2", "span-probe", "t1", "t2", "t1^-1", "t2^-1", "D1^2", "--bounds", "m=1,n=2,depth=8"],
    ),
    ("verma", &["verma", "--bounds", "L=2,N=1"]),
    ("verma_json", &["--json", "verma", "--phi", "exp(a*x) - 1", "--params", "a,c", "--bounds", "L=1,N=2"]),
    ("act_verma", &["act-verma", "t*D", "[t^-1]v"]),
    ("act_verma_central", &["act-verma", "D^2 + 2*C", "[t^-2*D]v", "--bounds", "L=2,N=1"]),
    ("singular_trivial", &["singular", "1", "--phi", "0", "--c", "0"]),
    ("singular_generic", &["singular", "1"]),
    ("singular_json", &["--json", "singular", "1", "--phi", "0", "--c", "0", "--bounds", "L=1,N=0,M=3"]),
    ("hseq", &["hseq", "--bounds", "n=8"]),
    ("hseq_exp", &["hseq", "--phi", "exp(a*x) - 1", "--params", "a", "--bounds", "n=4"]),
    ("tensor_act", &["tensor-act", "t^2*D", "x⊗[t^-1]v"]),
    ("tensor_act_central", &["tensor-act", "C", "x^2@v"]),
    ("tensor_probe", &["tensor-probe", "--bounds", "deg=2,L=1,N=1,m=3,n=1"]),
    (
        "tensor_probe_control",
        &[
            "--json",
            "tensor-probe",
            "--family",
            "hv",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--bounds",
            "deg=1,L=1,N=0,m=1,n=0",
        ],
    ),
    ("intertwiner_same", &["intertwiner", "--lambda", "2"]),
    ("intertwiner_lambda", &["intertwiner", "--lambda", "2", "--lambda2", "3"]),
    ("intertwiner_eps", &["--json", "intertwiner", "--lambda", "2", "--eps", "0", "--eps2", "1"]),
    ("verify_brackets", &["verify", "--suite", "brackets"]),
    ("verify_cocycle_json", &["--json", "verify", "--suite", "cocycle", "--bounds", "m=2,n=2,deg=2"]),
    ("error_parse", &["bracket", "t + ", "t"]),
    ("error_suite", &["verify", "--suite", "nope"]),
    ("error_bound", &["verify", "--bounds", "m=-1"]),
    ("error_bound_key", &["bracket", "t", "D", "--bounds", "m=1"]),
    ("error_param", &["bracket", "q*t", "D"]),
    ("error_json", &["--json", "cocycle", "t", "t^-1", "--rank", "2"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.txt", name))
}

/// The recorded form of one run. `verify` prints timings on stderr once
/// suites have run, so its stderr is kept only for usage errors.
pub fn transcript(args: &[&str], code: i32, stdout: &str, stderr: &str) -> String {
    let mut s = format!("$ weylmod {}\nexit: {}\n--- stdout\n{}", args.join(" "), code, stdout);
    if !args.contains(&"verify") || code == 2 {
        s.push_str("--- stderr\n");
        s.push_str(stderr);
    }
    s
}
