//! The `weylmod` command line: argument parsing, dispatch and rendering.
//!
//! [`run`] does everything except touching the process, so the binary is a
//! thin wrapper and tests can drive the CLI in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::builder::BoolishValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::hwmod::{act_verma, h_sequence, pbw_label, singular_vectors, verma_basis, weight_space_dims, HWSpec};
use crate::json;
use crate::liealg::{assoc_product, bracket, cocycle_phi, generated_span_probe, AlgebraCtx, DiffOp, SpanBounds};
use crate::parse::{parse_operator, parse_poly, parse_quasipolynomial, parse_scalar, parse_tensor, parse_verma};
use crate::scalars::{Params, Scalar};
use crate::suites::{run_suite, SuiteBounds, SUITE_NAMES};
use crate::tensor::{act_tensor, intertwiner_dim, irreducibility_probe, TensorBounds, TensorSpec};
use crate::umod::{act_restricted, OmegaSpec};

/// Parameters declared when `--params` is not given.
pub const DEFAULT_PARAMS: &str = "lambda:inv,alpha,beta,c";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const H0_CONVENTION: &str = "h_0 is the eigenvalue of the identity t^0*D^0, read from the same series";

#[derive(Parser, Debug)]
#[command(
    name = "weylmod",
    version,
    about = "Exact computations with differential operators on the circle and their modules"
)]
pub struct Cli {
    /// Number of variables (t1..tN, D1..DN, x1..xN).
    #[arg(long, global = true, env = "WEYLMOD_RANK", default_value_t = 1)]
    rank: usize,
    /// Parameter declaration, e.g. `lambda:inv,a,b`.
    #[arg(long, global = true, default_value = DEFAULT_PARAMS)]
    params: String,
    /// Emit JSON documents instead of text.
    #[arg(long, global = true, env = "WEYLMOD_JSON", value_parser = BoolishValueParser::new())]
    json: bool,
    /// Bounds as `key=value,...`; the keys depend on the command.
    #[arg(long, global = true, value_name = "K=V,..")]
    bounds: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Quasipolynomial phi of the highest weight.
    #[arg(long, global = true, default_value = "x")]
    phi: String,
    /// Central charge of the highest weight.
    #[arg(long, global = true, default_value = "c")]
    c: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lie bracket [A, B].
    Bracket { a: String, b: String },
    /// Associative product A*B.
    Product { a: String, b: String },
    /// Central cocycle phi(A, B).
    Cocycle { a: String, b: String },
    /// Action of an operator on a polynomial module.
    Act {
        op: String,
        f: String,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Homogeneous components by degree.
    Grade { op: String },
    /// Basis monomials reached by brackets of generators (bounds m, n, depth).
    SpanProbe {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Truncated Verma basis and weight data (bounds L, N).
    Verma,
    /// Action on a Verma vector (bounds L, N).
    ActVerma { op: String, v: String },
    /// Singular vectors at a level (bounds L, N, M).
    Singular { level: u32 },
    /// Highest weights h_0.. from phi (bound n).
    Hseq,
    /// Action on a tensor f (x) v (bounds L, N).
    TensorAct {
        op: String,
        w: String,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Bounded cyclicity probe (bounds deg, L, N, m, n).
    TensorProbe {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Dimension of bounded intertwiners (bounds deg, L, N, m, n).
    Intertwiner {
        #[command(flatten)]
        module: ModuleArgs,
        /// lambda of the target module (defaults to --lambda).
        #[arg(long)]
        lambda2: Option<String>,
        /// eps of the target module (defaults to --eps).
        #[arg(long)]
        eps2: Option<u8>,
    },
    /// Verification suites (bounds m, n, deg).
    Verify {
        /// `all` or a suite name.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    D,
    Vir,
    Hv,
    Dnu,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Module family.
    #[arg(long, value_enum, default_value = "d")]
    family: FamilyArg,
    /// lambda, or a comma-separated list for dnu (one value is repeated).
    #[arg(long, default_value = "lambda")]
    lambda: String,
    #[arg(long, default_value_t = 1)]
    eps: u8,
    #[arg(long, default_value = "alpha")]
    alpha: String,
    #[arg(long, default_value = "beta")]
    beta: String,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct CliError {
    code: i32,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: EXIT_USAGE, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches the offending input and a caret to parse errors.
fn in_input<T>(input: &str, r: crate::Result<T>) -> CliResult<T> {
    r.map_err(|e| {
        let mut message = e.to_string();
        if let Error::Parse { pos, .. } = e {
            let _ = write!(message, "\n  {}\n  {}^", input, " ".repeat(pos));
        }
        CliError { code: EXIT_USAGE, message }
    })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.into() }
}

/// Bound keys with defaults; anything else is rejected.
struct Bounds(BTreeMap<String, u64>);

impl Bounds {
    fn parse(text: Option<&str>, defaults: &[(&str, u64)]) -> CliResult<Bounds> {
        let mut map: BTreeMap<String, u64> = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let Some(text) = text else { return Ok(Bounds(map)) };
        let allowed = || {
            if defaults.is_empty() {
                "this command takes no bounds".to_string()
            } else {
                format!("expected keys: {}", defaults.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(", "))
            }
        };
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| usage(format!("bound `{}` is not key=value", item)))?;
            let k = k.trim();
            if !defaults.iter().any(|(d, _)| *d == k) {
                return Err(usage(format!("unknown bound `{}`; {}", k, allowed())));
            }
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| usage(format!("bound `{}` needs a non-negative integer, got `{}`", k, v.trim())))?;
            map.insert(k.to_string(), v);
        }
        Ok(Bounds(map))
    }

    fn get(&self, k: &str) -> u64 {
        self.0[k]
    }

    fn u32(&self, k: &str) -> CliResult<u32> {
        u32::try_from(self.get(k)).map_err(|_| usage(format!("bound `{}` is too large", k)))
    }

    fn i64(&self, k: &str) -> CliResult<i64> {
        i64::try_from(self.get(k)).map_err(|_| usage(format!("bound `{}` is too large", k)))
    }
}

/// Runs one command line (including the program name) and returns its exit
/// code and output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(r) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&json::document(name, r.json)).expect("serializable");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome { code: r.code, stdout, stderr: r.stderr }
        }
        Err(e) => {
            let stdout = if cli.json {
                let doc = json!({ "schema": json::SCHEMA, "command": name, "error": e.message });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            } else {
                String::new()
            };
            Outcome { code: e.code, stdout, stderr: format!("error: {}\n", e.message) }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bracket { .. } => "bracket",
        Command::Product { .. } => "product",
        Command::Cocycle { .. } => "cocycle",
        Command::Act { .. } => "act",
        Command::Grade { .. } => "grade",
        Command::SpanProbe { .. } => "span-probe",
        Command::Verma => "verma",
        Command::ActVerma { .. } => "act-verma",
        Command::Singular { .. } => "singular",
        Command::Hseq => "hseq",
        Command::TensorAct { .. } => "tensor-act",
        Command::TensorProbe { .. } => "tensor-probe",
        Command::Intertwiner { .. } => "intertwiner",
        Command::Verify { .. } => "verify",
    }
}

struct Rendered {
    code: i32,
    text: String,
    json: Value,
    stderr: String,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Rendered { code: EXIT_OK, text, json, stderr: String::new() }
    }
}

struct Env {
    params: Params,
    rank: usize,
}

impl Env {
    fn op(&self, s: &str) -> CliResult<DiffOp> {
        in_input(s, parse_operator(s, &self.params, self.rank))
    }

    fn scalar(&self, s: &str) -> CliResult<Scalar> {
        in_input(s, parse_scalar(s, &self.params))
    }

    fn rank_one(&self, what: &str) -> CliResult<()> {
        if self.rank != 1 {
            return Err(usage(format!("{} works in rank 1", what)));
        }
        Ok(())
    }

    fn hw_spec(&self, cli: &Cli) -> CliResult<HWSpec> {
        let phi = in_input(&cli.phi, parse_quasipolynomial(&cli.phi, &self.params))?;
        Ok(HWSpec::new(self.scalar(&cli.c)?, phi)?)
    }

    fn omega(&self, m: &ModuleArgs) -> CliResult<OmegaSpec> {
        let lambdas: Vec<Scalar> = m.lambda.split(',').map(|s| self.scalar(s.trim())).collect::<CliResult<_>>()?;
        let one = |what: &str| -> CliResult<Scalar> {
            self.rank_one(what)?;
            match lambdas.as_slice() {
                [l] => Ok(l.clone()),
                _ => Err(usage("this family takes a single lambda")),
            }
        };
        let spec = match m.family {
            FamilyArg::D => OmegaSpec::d_module(one("family d")?, m.eps)?,
            FamilyArg::Vir => OmegaSpec::vir_module(one("family vir")?, self.scalar(&m.alpha)?)?,
            FamilyArg::Hv => OmegaSpec::hv_module(one("family hv")?, self.scalar(&m.alpha)?, self.scalar(&m.beta)?)?,
            FamilyArg::Dnu => {
                let lam = match lambdas.len() {
                    1 => vec![lambdas[0].clone(); self.rank],
                    n if n == self.rank => lambdas,
                    n => return Err(usage(format!("{} lambda values for rank {}", n, self.rank))),
                };
                OmegaSpec::dnu_module(lam, m.eps)?
            }
        };
        Ok(spec)
    }
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn execute(cli: &Cli) -> CliResult<Rendered> {
    if cli.rank == 0 {
        return Err(usage("--rank must be at least 1"));
    }
    let env = Env { params: Params::parse(&cli.params)?, rank: cli.rank };
    let bounds = |defaults: &[(&str, u64)]| Bounds::parse(cli.bounds.as_deref(), defaults);
    match &cli.command {
        Command::Bracket { a, b } => {
            bounds(&[])?;
            let r = bracket(&env.op(a)?, &env.op(b)?)?;
            Ok(Rendered::ok(format!("{}\n", r), json::diffop(&r)))
        }
        Command::Product { a, b } => {
            bounds(&[])?;
            let plain = AlgebraCtx::new(env.rank, false)?;
            let lift = |s: &str| -> CliResult<DiffOp> {
                let op = env.op(s)?;
                if !op.central_coeff().is_zero() {
                    return Err(Error::CentralOperand.into());
                }
                Ok(op.with_ctx(plain)?)
            };
            let r = assoc_product(&lift(a)?, &lift(b)?)?;
            Ok(Rendered::ok(format!("{}\n", r), json::diffop(&r)))
        }
        Command::Cocycle { a, b } => {
            bounds(&[])?;
            env.rank_one("cocycle")?;
            let r = cocycle_phi(&env.op(a)?, &env.op(b)?)?;
            Ok(Rendered::ok(format!("{}\n", r), json::scalar(&r)))
        }
        Command::Act { op, f, module } => {
            bounds(&[])?;
            let spec = env.omega(module)?;
            let f_poly = in_input(f, parse_poly(f, &env.params, spec.rank()))?;
            let r = act_restricted(&env.op(op)?, &spec.vector(f_poly)?)?;
            Ok(Rendered::ok(format!("{}\n", r), json::poly_vec(&spec, r.poly())))
        }
        Command::Grade { op } => {
            bounds(&[])?;
            let a = env.op(op)?;
            let comps = a.grade_components();
            let label = |m: &[i64]| {
                if m.len() == 1 {
                    m[0].to_string()
                } else {
                    format!("({})", m.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
                }
            };
            let text = if comps.is_empty() {
                "0\n".to_string()
            } else {
                lines(comps.iter().map(|(m, c)| format!("{}: {}", label(m), c)))
            };
            let js: Vec<Value> =
                comps.iter().map(|(m, c)| json!({ "degree": m, "component": json::diffop(c) })).collect();
            Ok(Rendered::ok(text, json!({ "components": js })))
        }
        Command::SpanProbe { generators } => {
            let b = bounds(&[("m", 2), ("n", 3), ("depth", 8)])?;
            let gens: Vec<_> = generators.iter().map(|g| env.op(g)).collect::<CliResult<_>>()?;
            let sb = SpanBounds { m_max: b.i64("m")?, n_max: b.u32("n")?, depth: b.get("depth") as usize };
            let r = generated_span_probe(&gens, sb)?;
            let total = r.reached.len() + r.missing.len();
            let missing = if r.missing.is_empty() {
                "none".to_string()
            } else {
                r.missing.iter().map(json::basis_text).collect::<Vec<_>>().join(" ")
            };
            let text = format!(
                "reached: {}/{}\nmissing: {}\nspan_dim: {}\ncentral: {}\nrounds: {}\nsaturated: {}\n",
                r.reached.len(),
                total,
                missing,
                r.span_dim,
                if r.central_reached { "yes" } else { "no" },
                r.rounds,
                if r.saturated { "yes" } else { "no" },
            );
            Ok(Rendered::ok(text, json::span_probe(&r)))
        }
        Command::Verma => {
            env.rank_one("verma")?;
            let b = bounds(&[("L", 2), ("N", 1)])?;
            let spec = env.hw_spec(cli)?;
            let tv = verma_basis(&spec, b.u32("L")?, b.u32("N")?);
            let dims = weight_space_dims(&tv, &[])?;
            let h: Vec<Scalar> = (0..=b.u32("N")? as usize).map(|n| spec.h(n)).collect::<crate::Result<_>>()?;
            let mut text = String::new();
            for (n, hn) in h.iter().enumerate() {
                let _ = writeln!(text, "h_{} = {}", n, hn);
            }
            let mut levels = Vec::new();
            for (k, d) in dims.iter().enumerate() {
                let labels: Vec<String> = tv.slice(k as u32).iter().map(pbw_label).collect();
                let _ = writeln!(text, "level {} ({}): {}", k, d, labels.join(" "));
                levels.push(json!({ "level": k, "dim": d, "basis": labels }));
            }
            let js = json!({
                "c": json::scalar(spec.c()),
                "phi": json::quasipolynomial(spec.phi(), None),
                "h": h.iter().map(json::scalar).collect::<Vec<_>>(),
                "levels": levels,
            });
            Ok(Rendered::ok(text, js))
        }
        Command::ActVerma { op, v } => {
            env.rank_one("act-verma")?;
            let b = bounds(&[("L", 3), ("N", 2)])?;
            let spec = env.hw_spec(cli)?;
            let tv = verma_basis(&spec, b.u32("L")?, b.u32("N")?);
            let vec = in_input(v, parse_verma(v, &env.params, &tv))?;
            let r = act_verma(&tv, &env.op(op)?, &vec)?;
            Ok(Rendered::ok(format!("{}\n", r), json::verma(&r)))
        }
        Command::Singular { level } => {
            env.rank_one("singular")?;
            let b = bounds(&[("L", *level as u64), ("N", 1), ("M", 3)])?;
            let spec = env.hw_spec(cli)?;
            let tv = verma_basis(&spec, b.u32("L")?, b.u32("N")?);
            let vs = singular_vectors(&tv, *level, b.u32("M")?)?;
            let mut text = format!("level {}: {} of {}\n", level, vs.len(), tv.slice(*level).len());
            text.push_str(&lines(vs.iter()));
            let js = json!({
                "level": level,
                "slice_dim": tv.slice(*level).len(),
                "count": vs.len(),
                "vectors": vs.iter().map(json::verma).collect::<Vec<_>>(),
            });
            Ok(Rendered::ok(text, js))
        }
        Command::Hseq => {
            let b = bounds(&[("n", 8)])?;
            let phi = in_input(&cli.phi, parse_quasipolynomial(&cli.phi, &env.params))?;
            let h = h_sequence(&phi, b.get("n") as usize)?;
            let text = lines(h.iter().enumerate().map(|(n, x)| format!("h_{} = {}", n, x)));
            let js = json!({
                "phi": json::quasipolynomial(&phi, None),
                "h": h.iter().map(json::scalar).collect::<Vec<_>>(),
                "h0_convention": H0_CONVENTION,
            });
            Ok(Rendered { stderr: format!("note: {}\n", H0_CONVENTION), ..Rendered::ok(text, js) })
        }
        Command::TensorAct { op, w, module } => {
            env.rank_one("tensor-act")?;
            let b = bounds(&[("L", 2), ("N", 1)])?;
            let tv = verma_basis(&env.hw_spec(cli)?, b.u32("L")?, b.u32("N")?);
            let spec = TensorSpec::new(env.omega(module)?, tv)?;
            let elem = in_input(w, parse_tensor(w, &env.params, spec.hw()))?;
            let r = act_tensor(&spec, &env.op(op)?, &elem)?;
            Ok(Rendered::ok(format!("{}\n", r), json::tensor(&r)))
        }
        Command::TensorProbe { module } => {
            env.rank_one("tensor-probe")?;
            let b = bounds(&[("deg", 3), ("L", 2), ("N", 1), ("m", 4), ("n", 2)])?;
            let tv = verma_basis(&env.hw_spec(cli)?, b.u32("L")?, b.u32("N")?);
            let spec = TensorSpec::new(env.omega(module)?, tv)?;
            let tb = TensorBounds { degree: b.u32("deg")?, m_max: b.i64("m")?, n_max: b.u32("n")? };
            let r = irreducibility_probe(&spec, tb)?;
            let mut text =
                format!("verdict: {}\nspace_dim: {}\nseeds_checked: {}\n", r.verdict, r.space_dim, r.seeds_checked);
            if let Some(s) = &r.failing_seed {
                let _ = writeln!(text, "failing_seed: {}", s);
            }
            if let Some(d) = r.closure_dim {
                let _ = writeln!(text, "closure_dim: {}", d);
            }
            if let Some(w) = &r.witness {
                text.push_str("witness:\n");
                for e in w {
                    let _ = writeln!(text, "  {}", e);
                }
            }
            Ok(Rendered::ok(text, json::probe_report(&r, cli.seed)))
        }
        Command::Intertwiner { module, lambda2, eps2 } => {
            env.rank_one("intertwiner")?;
            let b = bounds(&[("deg", 3), ("L", 1), ("N", 1), ("m", 3), ("n", 1)])?;
            let hw = env.hw_spec(cli)?;
            let (l, n) = (b.u32("L")?, b.u32("N")?);
            let source = env.omega(module)?;
            let target_args = ModuleArgs {
                family: module.family,
                lambda: lambda2.clone().unwrap_or_else(|| module.lambda.clone()),
                eps: eps2.unwrap_or(module.eps),
                alpha: module.alpha.clone(),
                beta: module.beta.clone(),
            };
            let target = env.omega(&target_args)?;
            let a = TensorSpec::new(source.clone(), verma_basis(&hw, l, n))?;
            let bspec = TensorSpec::new(target.clone(), verma_basis(&hw, l, n))?;
            let tb = TensorBounds { degree: b.u32("deg")?, m_max: b.i64("m")?, n_max: b.u32("n")? };
            let d = intertwiner_dim(&a, &bspec, tb)?;
            let js = json!({
                "source": json::omega_spec(&source),
                "target": json::omega_spec(&target),
                "bounds": { "deg": tb.degree, "m": tb.m_max, "n": tb.n_max, "L": l, "N": n },
                "dim": d,
            });
            Ok(Rendered::ok(format!("{}\n", d), js))
        }
        Command::Verify { suite } => {
            let b = bounds(&[("m", 3), ("n", 3), ("deg", 4)])?;
            let sb = SuiteBounds { m: b.i64("m")?, n: b.u32("n")?, deg: b.u32("deg")?, seed: cli.seed.unwrap_or(0) };
            let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite.as_str()] };
            let mut text = String::new();
            let mut stderr = String::new();
            let mut js = Vec::new();
            let mut failed = 0;
            for name in names {
                let r = run_suite(name, &sb)?;
                let _ = writeln!(text, "{}", r);
                for n in &r.notes {
                    let _ = writeln!(text, "  note: {}", n);
                }
                for f in &r.failures {
                    let _ = writeln!(text, "  failure: {}", f);
                }
                let _ = writeln!(stderr, "{}: {:.2?}", r.name, r.elapsed);
                if !r.passed() {
                    failed += 1;
                }
                js.push(json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "checks": r.checks,
                    "failures": r.failures,
                    "notes": r.notes,
                }));
            }
            if failed == 0 {
                text.push_str("all suites passed\n");
            } else {
                let _ = writeln!(text, "{} suite(s) failed", failed);
            }
            let code = if failed == 0 { EXIT_OK } else { EXIT_FAILED };
            Ok(Rendered { code, text, json: json!({ "passed": failed == 0, "suites": js }), stderr })
        }
    }
}
