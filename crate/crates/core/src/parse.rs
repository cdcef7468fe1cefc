//! Text syntax shared by every value type.
//!
//! ```text
//! expr    := ['+'|'-'] tensor (('+'|'-') tensor)*
//! tensor  := term ['⊗' term]                  (tensor mode; '@' also works)
//! term    := factor (('*'|'/') factor | factor)*   (juxtaposition before '[' or 'v')
//! factor  := '-' factor | primary ['^' ['-'] int]
//! primary := int | ident | '(' expr ')' | 'exp' '(' expr ')' | '[' expr ']'
//! ```
//!
//! Atoms depend on the mode: `t`, `D`, `C` (or `t1`, `D2`, ... in higher
//! rank) for operators, `x` or `x1`, ... for polynomials, `exp(a*x)` for
//! quasipolynomials, `v` and bracketed operators `[t^-1*D]` for Verma
//! vectors. Every other identifier is a declared parameter.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hwmod::{act_verma, Quasipolynomial, TruncVerma, VermaElem};
use crate::liealg::{assoc_product, AlgebraCtx, DiffOp};
use crate::scalars::{sparse_add, Params, Rat, Scalar, SparseVec};
use crate::tensor::TensorElem;
use crate::umod::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Operator,
    Polynomial,
    Quasipolynomial,
    Verma,
    Tensor,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Operator => "operator",
            Mode::Polynomial => "polynomial",
            Mode::Quasipolynomial => "quasipolynomial",
            Mode::Verma => "verma",
            Mode::Tensor => "tensor",
        })
    }
}

/// Mode-specific atoms. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    T(usize),
    D(usize),
    C,
    X(usize),
    Vacuum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rat),
    Param {
        name: String,
        pos: usize,
    },
    Atom(Atom),
    /// `exp(arg)`.
    Exp(Box<ExprAst>),
    /// A bracketed operator acting on what follows it.
    Gen(Box<ExprAst>),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    /// Factors, multiplied right to left.
    Product(Vec<ExprAst>),
    /// `1 / arg`, only for invertible scalars.
    Recip(Box<ExprAst>, usize),
    Pow(Box<ExprAst>, i64, usize),
    Tensor(Box<ExprAst>, Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()[]⊗@".contains(c) {
            out.push((Tok::Sym(if c == '@' { '⊗' } else { c }), i));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character `{}`", c)));
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    rank: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected `{}`", c)))
        }
    }

    fn expr(&mut self, mode: Mode) -> Result<ExprAst> {
        let mut acc = if self.eat('-') {
            ExprAst::Neg(Box::new(self.tensor(mode)?))
        } else {
            self.eat('+');
            self.tensor(mode)?
        };
        loop {
            if self.eat('+') {
                acc = ExprAst::Add(Box::new(acc), Box::new(self.tensor(mode)?));
            } else if self.eat('-') {
                acc = ExprAst::Sub(Box::new(acc), Box::new(self.tensor(mode)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn tensor(&mut self, mode: Mode) -> Result<ExprAst> {
        let left = self.term(mode)?;
        if *self.peek() == Tok::Sym('⊗') {
            if mode != Mode::Tensor {
                return Err(Error::parse(self.pos(), format!("`⊗` is not allowed in {} mode", mode)));
            }
            self.bump();
            let right = self.term(mode)?;
            return Ok(ExprAst::Tensor(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn starts_vector_factor(&self, mode: Mode) -> bool {
        matches!(mode, Mode::Verma | Mode::Tensor)
            && match self.peek() {
                Tok::Sym('[') => true,
                Tok::Ident(s) => s == "v",
                _ => false,
            }
    }

    fn term(&mut self, mode: Mode) -> Result<ExprAst> {
        let mut factors = vec![self.factor(mode)?];
        loop {
            if self.eat('*') {
                factors.push(self.factor(mode)?);
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.bump().1;
                factors.push(ExprAst::Recip(Box::new(self.factor(mode)?), pos));
            } else if self.starts_vector_factor(mode) {
                factors.push(self.factor(mode)?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { ExprAst::Product(factors) })
    }

    fn factor(&mut self, mode: Mode) -> Result<ExprAst> {
        if self.eat('-') {
            return Ok(ExprAst::Neg(Box::new(self.factor(mode)?)));
        }
        let base = self.primary(mode)?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.bump().1;
        let negative = self.eat('-');
        let (tok, npos) = self.bump();
        let Tok::Num(digits) = tok else {
            return Err(Error::parse(npos, "expected an integer exponent"));
        };
        let k: i64 = digits.parse().map_err(|_| Error::parse(npos, "exponent too large"))?;
        let k = if negative { -k } else { k };
        if k < 0 {
            match &base {
                ExprAst::Atom(Atom::D(_)) => return Err(Error::parse(pos, "negative exponent of D")),
                ExprAst::Atom(Atom::X(_)) => return Err(Error::parse(pos, "negative exponent of x")),
                _ => {}
            }
        }
        Ok(ExprAst::Pow(Box::new(base), k, pos))
    }

    fn indexed(&self, name: &str, letter: &str, pos: usize) -> Result<Option<usize>> {
        let Some(rest) = name.strip_prefix(letter) else {
            return Ok(None);
        };
        if rest.is_empty() {
            if self.rank != 1 {
                return Err(Error::parse(pos, format!("`{}` needs an index in rank {}", letter, self.rank)));
            }
            return Ok(Some(0));
        }
        match rest.parse::<usize>() {
            Ok(i) if i >= 1 && i <= self.rank && !rest.starts_with('0') => Ok(Some(i - 1)),
            Ok(_) => Err(Error::parse(pos, format!("`{}` is out of range for rank {}", name, self.rank))),
            Err(_) => Ok(None),
        }
    }

    fn primary(&mut self, mode: Mode) -> Result<ExprAst> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(digits) => Ok(ExprAst::Num(Rat::from_str(&digits).map_err(|_| Error::parse(pos, "bad number"))?)),
            Tok::Sym('(') => {
                let e = self.expr(mode)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                if !matches!(mode, Mode::Verma | Mode::Tensor) {
                    return Err(Error::parse(pos, format!("`[` is not allowed in {} mode", mode)));
                }
                let e = self.expr(Mode::Operator)?;
                self.expect(']')?;
                Ok(ExprAst::Gen(Box::new(e)))
            }
            Tok::Ident(name) => self.ident(name, pos, mode),
            Tok::End => Err(Error::parse(pos, "unexpected end of input")),
            Tok::Sym(c) => Err(Error::parse(pos, format!("unexpected `{}`", c))),
        }
    }

    fn ident(&mut self, name: String, pos: usize, mode: Mode) -> Result<ExprAst> {
        match mode {
            Mode::Operator => {
                if name == "C" {
                    if self.rank != 1 {
                        return Err(Error::parse(pos, "the central element exists only in rank 1"));
                    }
                    return Ok(ExprAst::Atom(Atom::C));
                }
                if let Some(i) = self.indexed(&name, "t", pos)? {
                    return Ok(ExprAst::Atom(Atom::T(i)));
                }
                if let Some(i) = self.indexed(&name, "D", pos)? {
                    return Ok(ExprAst::Atom(Atom::D(i)));
                }
            }
            Mode::Polynomial | Mode::Quasipolynomial | Mode::Tensor => {
                if mode == Mode::Quasipolynomial && name == "exp" {
                    self.expect('(')?;
                    let arg = self.expr(Mode::Polynomial)?;
                    self.expect(')')?;
                    return Ok(ExprAst::Exp(Box::new(arg)));
                }
                if mode == Mode::Tensor && name == "v" {
                    return Ok(ExprAst::Atom(Atom::Vacuum));
                }
                if let Some(i) = self.indexed(&name, "x", pos)? {
                    return Ok(ExprAst::Atom(Atom::X(i)));
                }
            }
            Mode::Verma => {
                if name == "v" {
                    return Ok(ExprAst::Atom(Atom::Vacuum));
                }
            }
        }
        if name == "exp" {
            return Err(Error::parse(pos, format!("`exp` is not allowed in {} mode", mode)));
        }
        Ok(ExprAst::Param { name, pos })
    }
}

/// Parses `input` in `mode` for an algebra or module of rank `rank`.
pub fn parse_expr(input: &str, mode: Mode, rank: usize) -> Result<ExprAst> {
    if rank == 0 {
        return Err(Error::Usage("rank must be at least 1".into()));
    }
    if matches!(mode, Mode::Quasipolynomial | Mode::Verma | Mode::Tensor) && rank != 1 {
        return Err(Error::Usage(format!("{} expressions live in rank 1", mode)));
    }
    let mut p = Parser { toks: tokenize(input)?, i: 0, rank };
    let e = p.expr(mode)?;
    if *p.peek() != Tok::End {
        return Err(Error::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Everything evaluation may need besides the tree.
#[derive(Clone, Copy)]
pub struct EvalCtx<'a> {
    pub params: &'a Params,
    pub rank: usize,
    /// Host module for Verma and tensor expressions.
    pub hw: Option<&'a TruncVerma>,
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    /// A central-free operator plus a multiple of `C`.
    Op(DiffOp, Scalar),
    Gen(DiffOp),
    Poly(Poly),
    Quasi(Quasipolynomial),
    Verma(VermaElem),
    Tensor(TensorElem),
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Scalar(_) => "scalar",
        Value::Op(..) | Value::Gen(_) => "operator",
        Value::Poly(_) => "polynomial",
        Value::Quasi(_) => "quasipolynomial",
        Value::Verma(_) => "Verma vector",
        Value::Tensor(_) => "tensor",
    }
}

fn mismatch(op: &str, a: &Value, b: &Value) -> Error {
    Error::Unsupported(format!("cannot {} a {} and a {}", op, kind(a), kind(b)))
}

impl EvalCtx<'_> {
    fn circle(&self) -> AlgebraCtx {
        AlgebraCtx::new(self.rank, false).expect("rank checked by the parser")
    }

    fn hw(&self) -> Result<&TruncVerma> {
        self.hw.ok_or_else(|| Error::Usage("Verma expressions need a highest weight".into()))
    }

    fn identity(&self) -> DiffOp {
        let r = self.rank;
        DiffOp::monomial(self.circle(), &vec![0; r], &vec![0; r], Scalar::one()).expect("rank matches")
    }

    fn eval(&self, e: &ExprAst) -> Result<Value> {
        Ok(match e {
            ExprAst::Num(r) => Value::Scalar(Scalar::from_rat(r.clone())),
            ExprAst::Param { name, pos } => Value::Scalar(
                self.params.var(name).map_err(|_| Error::parse(*pos, format!("undeclared parameter `{}`", name)))?,
            ),
            ExprAst::Atom(a) => self.atom(a)?,
            ExprAst::Exp(arg) => {
                let a = match self.eval(arg)? {
                    Value::Poly(p) if p.degree().unwrap_or(0) <= 1 && p.coeff(&[0]).is_zero() => p.coeff(&[1]),
                    Value::Scalar(s) if s.is_zero() => Scalar::zero(),
                    _ => return Err(Error::Unsupported("exp needs an argument of the form a*x".into())),
                };
                Value::Quasi(Quasipolynomial::new(vec![(Poly::one(1), a)])?)
            }
            ExprAst::Gen(inner) => match self.eval(inner)? {
                Value::Op(op, c) => Value::Gen(self.finish_op(op, c)?),
                Value::Scalar(s) => Value::Gen(self.finish_op(self.identity().scale(&s), Scalar::zero())?),
                other => return Err(Error::Unsupported(format!("brackets need an operator, got a {}", kind(&other)))),
            },
            ExprAst::Neg(x) => scale(self.eval(x)?, &Scalar::from_int(-1)),
            ExprAst::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, false)?,
            ExprAst::Sub(a, b) => self.add(self.eval(a)?, self.eval(b)?, true)?,
            ExprAst::Product(fs) => {
                let mut it = fs.iter().rev();
                let mut acc = self.eval(it.next().expect("nonempty product"))?;
                for f in it {
                    acc = self.mul(self.eval(f)?, acc)?;
                }
                acc
            }
            ExprAst::Recip(x, pos) => match self.eval(x)? {
                Value::Scalar(s) if s.is_zero() => return Err(Error::parse(*pos, "division by zero")),
                Value::Scalar(s) => Value::Scalar(s.inv().map_err(|e| Error::parse(*pos, e.to_string()))?),
                other => return Err(Error::parse(*pos, format!("cannot divide by a {}", kind(&other)))),
            },
            ExprAst::Pow(base, k, pos) => self.pow(self.eval(base)?, *k).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::parse(*pos, other.to_string()),
            })?,
            ExprAst::Tensor(a, b) => {
                let f = match self.eval(a)? {
                    Value::Scalar(s) => Poly::constant(1, s),
                    Value::Poly(p) => p,
                    other => {
                        return Err(Error::Unsupported(format!(
                            "left of ⊗ must be a polynomial, got a {}",
                            kind(&other)
                        )))
                    }
                };
                let v = match self.eval(b)? {
                    Value::Verma(v) => v,
                    Value::Scalar(s) if s.is_zero() => VermaElem::zero(),
                    other => {
                        return Err(Error::Unsupported(format!(
                            "right of ⊗ must be a Verma vector, got a {}",
                            kind(&other)
                        )))
                    }
                };
                let mut terms = SparseVec::new();
                for (e, a) in f.terms() {
                    for (p, c) in v.terms() {
                        sparse_add(&mut terms, &(e[0], p.clone()), &(a * c));
                    }
                }
                Value::Tensor(TensorElem::from_terms(terms))
            }
        })
    }

    fn atom(&self, a: &Atom) -> Result<Value> {
        let r = self.rank;
        let unit = |i: usize| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        };
        Ok(match a {
            Atom::T(i) => {
                let m: Vec<i64> = unit(*i).into_iter().map(i64::from).collect();
                Value::Op(DiffOp::monomial(self.circle(), &m, &vec![0; r], Scalar::one())?, Scalar::zero())
            }
            Atom::D(i) => {
                Value::Op(DiffOp::monomial(self.circle(), &vec![0; r], &unit(*i), Scalar::one())?, Scalar::zero())
            }
            Atom::C => Value::Op(DiffOp::zero(self.circle()), Scalar::one()),
            Atom::X(i) => Value::Poly(Poly::var(r, *i)),
            Atom::Vacuum => {
                self.hw()?;
                Value::Verma(VermaElem::vacuum())
            }
        })
    }

    fn finish_op(&self, op: DiffOp, central: Scalar) -> Result<DiffOp> {
        if self.rank == 1 {
            let mut out = op.with_ctx(AlgebraCtx::extended())?;
            if !central.is_zero() {
                out = out.add(&DiffOp::central(AlgebraCtx::extended(), central)?)?;
            }
            Ok(out)
        } else if central.is_zero() {
            Ok(op)
        } else {
            Err(Error::ContextMismatch("the central element exists only in rank 1".into()))
        }
    }

    fn promote_scalar(&self, s: Scalar, like: &Value) -> Result<Value> {
        Ok(match like {
            Value::Scalar(_) => Value::Scalar(s),
            Value::Op(..) => Value::Op(self.identity().scale(&s), Scalar::zero()),
            Value::Gen(_) => Value::Gen(self.finish_op(self.identity().scale(&s), Scalar::zero())?),
            Value::Poly(p) => Value::Poly(Poly::constant(p.nvars(), s)),
            Value::Quasi(_) => Value::Quasi(Quasipolynomial::poly(Poly::constant(1, s))?),
            Value::Verma(_) | Value::Tensor(_) => {
                if !s.is_zero() {
                    return Err(Error::Unsupported(format!("cannot add a nonzero scalar to a {}", kind(like))));
                }
                match like {
                    Value::Verma(_) => Value::Verma(VermaElem::zero()),
                    _ => Value::Tensor(TensorElem::zero()),
                }
            }
        })
    }

    fn add(&self, a: Value, b: Value, subtract: bool) -> Result<Value> {
        let b = if subtract { scale(b, &Scalar::from_int(-1)) } else { b };
        let (a, b) = match (a, b) {
            (Value::Scalar(s), other) if !matches!(other, Value::Scalar(_)) => (self.promote_scalar(s, &other)?, other),
            (other, Value::Scalar(s)) if !matches!(other, Value::Scalar(_)) => {
                let p = self.promote_scalar(s, &other)?;
                (other, p)
            }
            (Value::Poly(p), Value::Quasi(q)) => (Value::Quasi(Quasipolynomial::poly(p)?), Value::Quasi(q)),
            (Value::Quasi(q), Value::Poly(p)) => (Value::Quasi(q), Value::Quasi(Quasipolynomial::poly(p)?)),
            pair => pair,
        };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Op(x, c), Value::Op(y, d)) => Value::Op(x.add(&y)?, &c + &d),
            (Value::Gen(x), Value::Gen(y)) => Value::Gen(x.add(&y)?),
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(&y)?),
            (Value::Quasi(x), Value::Quasi(y)) => Value::Quasi(x.add(&y)?),
            (Value::Verma(x), Value::Verma(y)) => Value::Verma(x.add(&y)),
            (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.add(&y)),
            (x, y) => return Err(mismatch("add", &x, &y)),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(s), other) | (other, Value::Scalar(s)) => scale(other, &s),
            (Value::Op(x, c), Value::Op(y, d)) => {
                if !c.is_zero() || !d.is_zero() {
                    return Err(Error::CentralOperand);
                }
                Value::Op(assoc_product(&x, &y)?, Scalar::zero())
            }
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.mul(&y)?),
            (Value::Poly(p), Value::Quasi(q)) | (Value::Quasi(q), Value::Poly(p)) => {
                Value::Quasi(quasi_mul(&Quasipolynomial::poly(p)?, &q)?)
            }
            (Value::Quasi(x), Value::Quasi(y)) => Value::Quasi(quasi_mul(&x, &y)?),
            (Value::Gen(op), Value::Verma(v)) => Value::Verma(act_verma(self.hw()?, &op, &v)?),
            (Value::Gen(_), Value::Gen(_)) => {
                return Err(Error::Unsupported("bracketed operators act on a vector to their right".into()))
            }
            (x, y) => return Err(mismatch("multiply", &x, &y)),
        })
    }

    fn pow(&self, base: Value, k: i64) -> Result<Value> {
        if let Value::Scalar(s) = &base {
            return Ok(Value::Scalar(s.pow(k)?));
        }
        if k < 0 {
            // only invertible monomials t^m have inverses
            if let Value::Op(op, c) = &base {
                let mut terms = op.terms();
                if let (Some((b, coeff)), None) = (terms.next(), terms.next()) {
                    if c.is_zero() && b.n.iter().all(|&n| n == 0) {
                        let m: Vec<i64> = b.m.iter().map(|&m| m * k).collect();
                        let op = DiffOp::monomial(self.circle(), &m, &b.n, coeff.pow(k)?)?;
                        return Ok(Value::Op(op, Scalar::zero()));
                    }
                }
            }
            return Err(Error::Unsupported(format!("negative power of a {}", kind(&base))));
        }
        let mut acc = self.promote_scalar(Scalar::one(), &base)?;
        for _ in 0..k {
            acc = self.mul(base.clone(), acc)?;
        }
        Ok(acc)
    }
}

fn scale(v: Value, s: &Scalar) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(&x * s),
        Value::Op(op, c) => Value::Op(op.scale(s), &c * s),
        Value::Gen(op) => Value::Gen(op.scale(s)),
        Value::Poly(p) => Value::Poly(p.scale(s)),
        Value::Quasi(q) => Value::Quasi(q.scale(s).expect("scaling keeps exponents")),
        Value::Verma(v) => Value::Verma(v.scale(s)),
        Value::Tensor(t) => Value::Tensor(t.scale(s)),
    }
}

fn quasi_mul(a: &Quasipolynomial, b: &Quasipolynomial) -> Result<Quasipolynomial> {
    let mut terms = Vec::new();
    for (p, x) in a.terms() {
        for (q, y) in b.terms() {
            terms.push((p.mul(q)?, x + y));
        }
    }
    Quasipolynomial::new(terms)
}

fn parse_and_eval(input: &str, mode: Mode, ctx: &EvalCtx<'_>) -> Result<Value> {
    let ast = parse_expr(input, mode, ctx.rank)?;
    ctx.eval(&ast)
}

/// An operator; rank-one operators live in the centrally extended algebra.
pub fn parse_operator(input: &str, params: &Params, rank: usize) -> Result<DiffOp> {
    let ctx = EvalCtx { params, rank, hw: None };
    match parse_and_eval(input, Mode::Operator, &ctx)? {
        Value::Op(op, c) => ctx.finish_op(op, c),
        Value::Scalar(s) => ctx.finish_op(ctx.identity().scale(&s), Scalar::zero()),
        other => Err(Error::Unsupported(format!("expected an operator, got a {}", kind(&other)))),
    }
}

/// A polynomial in `x` (rank 1) or `x1, .., x_rank`.
pub fn parse_poly(input: &str, params: &Params, rank: usize) -> Result<Poly> {
    let ctx = EvalCtx { params, rank, hw: None };
    match parse_and_eval(input, Mode::Polynomial, &ctx)? {
        Value::Poly(p) => Ok(p),
        Value::Scalar(s) => Ok(Poly::constant(rank, s)),
        other => Err(Error::Unsupported(format!("expected a polynomial, got a {}", kind(&other)))),
    }
}

pub fn parse_quasipolynomial(input: &str, params: &Params) -> Result<Quasipolynomial> {
    let ctx = EvalCtx { params, rank: 1, hw: None };
    match parse_and_eval(input, Mode::Quasipolynomial, &ctx)? {
        Value::Quasi(q) => Ok(q),
        Value::Poly(p) => Quasipolynomial::poly(p),
        Value::Scalar(s) => Quasipolynomial::poly(Poly::constant(1, s)),
        other => Err(Error::Unsupported(format!("expected a quasipolynomial, got a {}", kind(&other)))),
    }
}

/// A vector of the Verma module `hw`, e.g. `[t^-1*D][t^-2]v - 2*v`.
pub fn parse_verma(input: &str, params: &Params, hw: &TruncVerma) -> Result<VermaElem> {
    let ctx = EvalCtx { params, rank: 1, hw: Some(hw) };
    match parse_and_eval(input, Mode::Verma, &ctx)? {
        Value::Verma(v) => Ok(v),
        Value::Scalar(s) if s.is_zero() => Ok(VermaElem::zero()),
        other => Err(Error::Unsupported(format!("expected a Verma vector, got a {}", kind(&other)))),
    }
}

/// A tensor `sum f_j ⊗ v_j`, e.g. `x^2⊗v + 1⊗[t^-1]v`.
pub fn parse_tensor(input: &str, params: &Params, hw: &TruncVerma) -> Result<TensorElem> {
    let ctx = EvalCtx { params, rank: 1, hw: Some(hw) };
    match parse_and_eval(input, Mode::Tensor, &ctx)? {
        Value::Tensor(t) => Ok(t),
        Value::Scalar(s) if s.is_zero() => Ok(TensorElem::zero()),
        other => Err(Error::Unsupported(format!("expected a tensor, got a {}", kind(&other)))),
    }
}

/// A scalar in the declared parameters.
pub fn parse_scalar(input: &str, params: &Params) -> Result<Scalar> {
    let ctx = EvalCtx { params, rank: 1, hw: None };
    match parse_and_eval(input, Mode::Polynomial, &ctx)? {
        Value::Scalar(s) => Ok(s),
        other => Err(Error::Unsupported(format!("expected a scalar, got a {}", kind(&other)))),
    }
}
