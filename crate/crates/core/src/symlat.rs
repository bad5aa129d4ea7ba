//! Terms over bounded distributive lattices and an equational decision
//! procedure under order hypotheses.
//!
//! Every bounded distributive lattice embeds into a power of the two-element
//! lattice, and lattice homomorphisms into `{0,1}` preserve order. So an
//! equation holds in all bounded distributive lattices under a set of
//! hypotheses `a ≥ b` exactly when it holds for every monotone 0/1 valuation
//! satisfying those hypotheses. [`decide_equal`] enumerates those valuations.
//!
//! Grammar:
//!
//! ```text
//! term  ::= disj
//! disj  ::= conj { "\/" conj }
//! conj  ::= atom { "/\" atom }
//! atom  ::= "0" | "1" | ident | "(" term ")"
//! ident ::= letter { letter | digit | "_" }
//! ```

use alloc::{
    boxed::Box,
    collections::BTreeMap,
    format,
    string::{String, ToString},
    vec::Vec,
};
use core::fmt;

use thiserror::Error;

use crate::lattice::{Elem, FiniteLattice};
use crate::obligation::{self, ObligationResult};

/// Most variables a context may declare.
pub const MAX_VARIABLES: usize = 24;

/// Largest dimension accepted by [`verify_retract_identity_symbolic`].
pub const DEFAULT_SYMBOLIC_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeTerm {
    Var(String),
    Top,
    Bot,
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
}

impl LatticeTerm {
    pub fn var(name: impl Into<String>) -> Self {
        LatticeTerm::Var(name.into())
    }

    pub fn meet(self, other: LatticeTerm) -> Self {
        LatticeTerm::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: LatticeTerm) -> Self {
        LatticeTerm::Join(Box::new(self), Box::new(other))
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        fn go<'a>(t: &'a LatticeTerm, out: &mut Vec<&'a str>) {
            match t {
                LatticeTerm::Var(v) => {
                    if !out.contains(&v.as_str()) {
                        out.push(v);
                    }
                }
                LatticeTerm::Top | LatticeTerm::Bot => {}
                LatticeTerm::Meet(l, r) | LatticeTerm::Join(l, r) => {
                    go(l, out);
                    go(r, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Evaluates in `alg`, resolving variables through `env`.
    pub fn eval<A: Algebra>(
        &self,
        alg: &A,
        env: &dyn Fn(&str) -> Option<A::Value>,
    ) -> Result<A::Value, SymlatError> {
        Ok(match self {
            LatticeTerm::Var(v) => env(v).ok_or_else(|| SymlatError::UndeclaredVariable(v.clone()))?,
            LatticeTerm::Top => alg.top(),
            LatticeTerm::Bot => alg.bottom(),
            LatticeTerm::Meet(l, r) => alg.meet(l.eval(alg, env)?, r.eval(alg, env)?),
            LatticeTerm::Join(l, r) => alg.join(l.eval(alg, env)?, r.eval(alg, env)?),
        })
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            LatticeTerm::Var(v) => f.write_str(v),
            LatticeTerm::Top => f.write_str("1"),
            LatticeTerm::Bot => f.write_str("0"),
            LatticeTerm::Join(l, r) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, 0)?;
                f.write_str(" \\/ ")?;
                r.fmt_prec(f, 1)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            LatticeTerm::Meet(l, r) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, 1)?;
                f.write_str(" /\\ ")?;
                r.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Canonical form: binary operators spaced, only necessary parentheses.
impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl core::str::FromStr for LatticeTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

/// A bounded lattice that terms can be evaluated in.
pub trait Algebra {
    type Value: Copy + PartialEq;
    fn top(&self) -> Self::Value;
    fn bottom(&self) -> Self::Value;
    fn meet(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn join(&self, a: Self::Value, b: Self::Value) -> Self::Value;
}

/// The two-element lattice `{0 < 1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TwoElement;

impl Algebra for TwoElement {
    type Value = bool;
    fn top(&self) -> bool {
        true
    }
    fn bottom(&self) -> bool {
        false
    }
    fn meet(&self, a: bool, b: bool) -> bool {
        a && b
    }
    fn join(&self, a: bool, b: bool) -> bool {
        a || b
    }
}

impl Algebra for FiniteLattice {
    type Value = Elem;
    fn top(&self) -> Elem {
        FiniteLattice::top(self)
    }
    fn bottom(&self) -> Elem {
        FiniteLattice::bottom(self)
    }
    fn meet(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::meet(self, a, b)
    }
    fn join(&self, a: Elem, b: Elem) -> Elem {
        FiniteLattice::join(self, a, b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at token {token} (offset {offset}): {message}")]
pub struct ParseError {
    /// Zero-based index of the offending token (the token count at end of input).
    pub token: usize,
    /// Byte offset into the source.
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymlatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` is not declared in the context")]
    UndeclaredVariable(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("context declares {0} variables, more than the limit of {MAX_VARIABLES}")]
    TooManyVariables(usize),
    #[error("the case list is present but empty")]
    EmptyCases,
    #[error("dimension/index out of range: n = {n}, k = {k} (need 1 ≤ n ≤ {bound}, k ≤ n)")]
    OutOfRange { n: usize, k: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Join,
    Meet,
    Zero,
    One,
    Ident(String),
    LParen,
    RParen,
    GreaterEq,
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Join => f.write_str("'\\/'"),
            Token::Meet => f.write_str("'/\\'"),
            Token::Zero => f.write_str("'0'"),
            Token::One => f.write_str("'1'"),
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::GreaterEq => f.write_str("'>='"),
            Token::Comma => f.write_str("','"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 2;
                Token::Join
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 2;
                Token::Meet
            }
            b'>' if bytes.get(i + 1) == Some(&b'=') => {
                i += 2;
                Token::GreaterEq
            }
            b'(' => {
                i += 1;
                Token::LParen
            }
            b')' => {
                i += 1;
                Token::RParen
            }
            b',' => {
                i += 1;
                Token::Comma
            }
            b'0' | b'1' if !bytes.get(i + 1).is_some_and(u8::is_ascii_alphanumeric) => {
                i += 1;
                if c == b'0' {
                    Token::Zero
                } else {
                    Token::One
                }
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Token::Ident(src[start..i].to_string())
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    token: tokens.len(),
                    offset: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        tokens.push((token, start));
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            token: self.pos,
            offset: self.tokens.get(self.pos).map_or(self.src.len(), |&(_, o)| o),
            message,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {t}")),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn disj(&mut self) -> Result<LatticeTerm, ParseError> {
        let mut lhs = self.conj()?;
        while self.peek() == Some(&Token::Join) {
            self.pos += 1;
            lhs = lhs.join(self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<LatticeTerm, ParseError> {
        let mut lhs = self.atom()?;
        while self.peek() == Some(&Token::Meet) {
            self.pos += 1;
            lhs = lhs.meet(self.atom()?);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<LatticeTerm, ParseError> {
        let term = match self.peek() {
            Some(Token::Zero) => LatticeTerm::Bot,
            Some(Token::One) => LatticeTerm::Top,
            Some(Token::Ident(name)) => LatticeTerm::Var(name.clone()),
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.disj()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected("')'"));
                }
                inner
            }
            _ => return Err(self.unexpected("a term")),
        };
        self.pos += 1;
        Ok(term)
    }

    fn bound(&mut self) -> Result<Bound, ParseError> {
        let b = match self.peek() {
            Some(Token::Zero) => Bound::Bot,
            Some(Token::One) => Bound::Top,
            Some(Token::Ident(name)) => Bound::Var(name.clone()),
            _ => return Err(self.unexpected("a variable, '0' or '1'")),
        };
        self.pos += 1;
        Ok(b)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

/// Parses a term; `/\` binds tighter than `\/`, both associate to the left.
pub fn parse_term(src: &str) -> Result<LatticeTerm, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
        src,
    };
    let t = p.disj()?;
    p.finish()?;
    Ok(t)
}

/// One side of an order hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Var(String),
    Top,
    Bot,
}

impl Bound {
    pub fn var(name: impl Into<String>) -> Self {
        Bound::Var(name.into())
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Var(v) => f.write_str(v),
            Bound::Top => f.write_str("1"),
            Bound::Bot => f.write_str("0"),
        }
    }
}

/// The hypothesis `greater ≥ lesser`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub greater: Bound,
    pub lesser: Bound,
}

impl Constraint {
    pub fn new(greater: Bound, lesser: Bound) -> Self {
        Constraint { greater, lesser }
    }

    /// `a ≥ b` between two variables.
    pub fn vars(a: &str, b: &str) -> Self {
        Constraint::new(Bound::var(a), Bound::var(b))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>={}", self.greater, self.lesser)
    }
}

/// Parses a comma-separated list such as `"x>=y, y>=0"`. Empty input is the
/// empty list.
pub fn parse_constraints(src: &str) -> Result<Vec<Constraint>, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
        src,
    };
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    loop {
        let greater = p.bound()?;
        if p.peek() != Some(&Token::GreaterEq) {
            return Err(p.unexpected("'>='"));
        }
        p.pos += 1;
        let lesser = p.bound()?;
        out.push(Constraint { greater, lesser });
        match p.peek() {
            Some(Token::Comma) => p.pos += 1,
            _ => break,
        }
    }
    p.finish()?;
    Ok(out)
}

/// Declared variables, global hypotheses, and an optional disjunctive case split.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderContext {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    /// When present, the equation must hold in every case; each case adds its
    /// constraints to the global ones.
    pub cases: Option<Vec<Vec<Constraint>>>,
}

impl OrderContext {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Self {
        OrderContext {
            variables: variables.into_iter().map(Into::into).collect(),
            ..OrderContext::default()
        }
    }

    pub fn with_constraints(mut self, constraints: Vec<Constraint>) -> Self {
        self.constraints = constraints;
        self
    }

    pub fn with_cases(mut self, cases: Vec<Vec<Constraint>>) -> Self {
        self.cases = Some(cases);
        self
    }

    /// The decreasing chain `v₀ ≥ v₁ ≥ … ≥ v_{m-1}`.
    pub fn chain<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Self {
        let ctx = OrderContext::new(variables);
        let constraints = ctx
            .variables
            .windows(2)
            .map(|w| Constraint::vars(&w[0], &w[1]))
            .collect();
        ctx.with_constraints(constraints)
    }

    fn index(&self) -> Result<BTreeMap<&str, usize>, SymlatError> {
        if self.variables.len() > MAX_VARIABLES {
            return Err(SymlatError::TooManyVariables(self.variables.len()));
        }
        let mut map = BTreeMap::new();
        for (i, v) in self.variables.iter().enumerate() {
            if map.insert(v.as_str(), i).is_some() {
                return Err(SymlatError::DuplicateVariable(v.clone()));
            }
        }
        Ok(map)
    }

    fn case_list(&self) -> Result<Vec<&[Constraint]>, SymlatError> {
        match &self.cases {
            None => Ok(alloc::vec![&[][..]]),
            Some(cases) if cases.is_empty() => Err(SymlatError::EmptyCases),
            Some(cases) => Ok(cases.iter().map(Vec::as_slice).collect()),
        }
    }
}

/// A 0/1 assignment to the context variables, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    pub variables: Vec<String>,
    pub values: Vec<bool>,
}

impl Valuation {
    pub fn get(&self, name: &str) -> Option<bool> {
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| self.values[i])
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.variables.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={}", u8::from(*value))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Var(usize),
    Const(bool),
}

struct CompiledConstraint {
    greater: Side,
    lesser: Side,
}

fn compile_bound(b: &Bound, index: &BTreeMap<&str, usize>) -> Result<Side, SymlatError> {
    match b {
        Bound::Var(v) => index
            .get(v.as_str())
            .map(|&i| Side::Var(i))
            .ok_or_else(|| SymlatError::UndeclaredVariable(v.clone())),
        Bound::Top => Ok(Side::Const(true)),
        Bound::Bot => Ok(Side::Const(false)),
    }
}

fn admissible_valuations(
    count: usize,
    index: &BTreeMap<&str, usize>,
    constraints: &[&Constraint],
) -> Result<Vec<Vec<bool>>, SymlatError> {
    let compiled = constraints
        .iter()
        .map(|c| {
            Ok(CompiledConstraint {
                greater: compile_bound(&c.greater, index)?,
                lesser: compile_bound(&c.lesser, index)?,
            })
        })
        .collect::<Result<Vec<_>, SymlatError>>()?;
    // Each constraint is checked as soon as its last variable is assigned.
    let mut due: Vec<Vec<&CompiledConstraint>> = (0..=count).map(|_| Vec::new()).collect();
    for c in &compiled {
        let last = [c.greater, c.lesser]
            .iter()
            .map(|s| match s {
                Side::Var(i) => i + 1,
                Side::Const(_) => 0,
            })
            .max()
            .unwrap_or(0);
        due[last].push(c);
    }
    let value = |s: Side, vals: &[bool]| match s {
        Side::Var(i) => vals[i],
        Side::Const(b) => b,
    };
    let ok = |level: usize, vals: &[bool]| {
        due[level]
            .iter()
            .all(|c| value(c.greater, vals) || !value(c.lesser, vals))
    };
    let mut out = Vec::new();
    if !ok(0, &[]) {
        return Ok(out);
    }
    let mut vals = Vec::with_capacity(count);
    fn go(
        vals: &mut Vec<bool>,
        count: usize,
        ok: &dyn Fn(usize, &[bool]) -> bool,
        out: &mut Vec<Vec<bool>>,
    ) {
        if vals.len() == count {
            out.push(vals.clone());
            return;
        }
        for b in [false, true] {
            vals.push(b);
            if ok(vals.len(), vals) {
                go(vals, count, ok, out);
            }
            vals.pop();
        }
    }
    go(&mut vals, count, &ok, &mut out);
    Ok(out)
}

/// All monotone 0/1 valuations satisfying the global constraints plus `extra`,
/// in lexicographic order (first variable most significant, 0 before 1).
pub fn monotone_valuations(
    ctx: &OrderContext,
    extra: &[Constraint],
) -> Result<Vec<Valuation>, SymlatError> {
    let index = ctx.index()?;
    let constraints: Vec<&Constraint> = ctx.constraints.iter().chain(extra).collect();
    Ok(admissible_valuations(ctx.variables.len(), &index, &constraints)?
        .into_iter()
        .map(|values| Valuation {
            variables: ctx.variables.clone(),
            values,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Index into the context's case list; `None` when the context has no cases.
    pub case: Option<usize>,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    /// Cases whose hypotheses admit no valuation at all; they hold vacuously.
    /// Without an explicit case list the single implicit case has index 0.
    pub vacuous_cases: Vec<usize>,
    pub valuations_checked: usize,
}

enum Compiled {
    Var(usize),
    Const(bool),
    Meet(Box<Compiled>, Box<Compiled>),
    Join(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(t: &LatticeTerm, index: &BTreeMap<&str, usize>) -> Result<Self, SymlatError> {
        Ok(match t {
            LatticeTerm::Var(v) => Compiled::Var(
                *index
                    .get(v.as_str())
                    .ok_or_else(|| SymlatError::UndeclaredVariable(v.clone()))?,
            ),
            LatticeTerm::Top => Compiled::Const(true),
            LatticeTerm::Bot => Compiled::Const(false),
            LatticeTerm::Meet(l, r) => {
                Compiled::Meet(Box::new(Compiled::new(l, index)?), Box::new(Compiled::new(r, index)?))
            }
            LatticeTerm::Join(l, r) => {
                Compiled::Join(Box::new(Compiled::new(l, index)?), Box::new(Compiled::new(r, index)?))
            }
        })
    }

    fn eval(&self, vals: &[bool]) -> bool {
        match self {
            Compiled::Var(i) => vals[*i],
            Compiled::Const(b) => *b,
            Compiled::Meet(l, r) => l.eval(vals) && r.eval(vals),
            Compiled::Join(l, r) => l.eval(vals) || r.eval(vals),
        }
    }
}

/// Decides whether `lhs = rhs` holds in every bounded distributive lattice for
/// every interpretation satisfying the context (in every case, when cases are
/// given).
pub fn decide_equal(
    lhs: &LatticeTerm,
    rhs: &LatticeTerm,
    ctx: &OrderContext,
) -> Result<Decision, SymlatError> {
    let index = ctx.index()?;
    let l = Compiled::new(lhs, &index)?;
    let r = Compiled::new(rhs, &index)?;
    let cases = ctx.case_list()?;
    let mut decision = Decision {
        holds: true,
        counterexample: None,
        vacuous_cases: Vec::new(),
        valuations_checked: 0,
    };
    for (case_idx, case) in cases.iter().enumerate() {
        let constraints: Vec<&Constraint> = ctx.constraints.iter().chain(case.iter()).collect();
        let valuations = admissible_valuations(ctx.variables.len(), &index, &constraints)?;
        if valuations.is_empty() {
            decision.vacuous_cases.push(case_idx);
            continue;
        }
        for vals in valuations {
            decision.valuations_checked += 1;
            if l.eval(&vals) != r.eval(&vals) {
                decision.holds = false;
                decision.counterexample = Some(Counterexample {
                    case: ctx.cases.as_ref().map(|_| case_idx),
                    valuation: Valuation {
                        variables: ctx.variables.clone(),
                        values: vals,
                    },
                });
                return Ok(decision);
            }
        }
    }
    Ok(decision)
}

/// Coordinate `i` of a padded `n`-simplex point: `x₀ = 1`, `x_{n+1} = 0`.
fn coord(i: usize, n: usize) -> LatticeTerm {
    if i == 0 {
        LatticeTerm::Top
    } else if i == n + 1 {
        LatticeTerm::Bot
    } else {
        LatticeTerm::var(format!("x{i}"))
    }
}

fn coord_bound(i: usize, n: usize) -> Bound {
    if i == 0 {
        Bound::Top
    } else if i == n + 1 {
        Bound::Bot
    } else {
        Bound::var(format!("x{i}"))
    }
}

/// Coordinate `i` of the retraction applied to `(x, (y₁, y₂))`.
fn retraction_coord(i: usize, n: usize, k: usize, y1: &LatticeTerm, y2: &LatticeTerm) -> LatticeTerm {
    if i <= k {
        coord(i, n).join(y1.clone())
    } else {
        coord(i, n).meet(y2.clone())
    }
}

/// `a ≥ b` as the equation `a ∨ b = a`.
fn geq(a: LatticeTerm, b: LatticeTerm) -> (LatticeTerm, LatticeTerm) {
    (a.clone().join(b), a)
}

/// `a = b` as the pair of hypotheses `a ≥ b`, `b ≥ a`.
fn equal_bounds(a: Bound, b: Bound) -> [Constraint; 2] {
    [Constraint::new(a.clone(), b.clone()), Constraint::new(b, a)]
}

/// Lattice-independent proof obligations of the inner-horn retract at `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicReport {
    pub n: usize,
    pub k: usize,
    pub obligations: Vec<ObligationResult>,
}

impl SymbolicReport {
    pub fn passed(&self) -> bool {
        self.obligations.iter().all(|o| o.passed)
    }

    pub fn failed_ids(&self) -> Vec<&'static str> {
        obligation::failed_ids(&self.obligations)
    }
}

fn check(
    result: &mut ObligationResult,
    label: &str,
    lhs: &LatticeTerm,
    rhs: &LatticeTerm,
    ctx: &OrderContext,
) -> Result<(), SymlatError> {
    let d = decide_equal(lhs, rhs, ctx)?;
    result.record(d.holds, || {
        let cex = d
            .counterexample
            .as_ref()
            .map(|c| format!(" at {}", c.valuation))
            .unwrap_or_default();
        format!("{label}: {lhs} = {rhs} fails{cex}")
    });
    Ok(())
}

/// Certifies, for all bounded distributive lattices at once, the algebraic
/// identities behind the retraction of `Δⁿ × Δ²` onto the `(n, k)` horn.
///
/// Variables are `x1..xn` (with `x0 := 1`, `x_{n+1} := 0`) and `y1 ≥ y2`.
/// Outer `k ∈ {0, n}` is accepted so the failing horn obligation can be
/// observed; `k > n` is an error.
pub fn verify_retract_identity_symbolic(n: usize, k: usize) -> Result<SymbolicReport, SymlatError> {
    verify_retract_identity_symbolic_bounded(n, k, DEFAULT_SYMBOLIC_BOUND)
}

pub fn verify_retract_identity_symbolic_bounded(
    n: usize,
    k: usize,
    bound: usize,
) -> Result<SymbolicReport, SymlatError> {
    if n == 0 || n > bound || k > n {
        return Err(SymlatError::OutOfRange { n, k, bound });
    }
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let chain = OrderContext::chain(xs.iter().cloned());
    let mut full_vars = xs.clone();
    full_vars.extend(["y1".to_string(), "y2".to_string()]);
    let mut full_constraints = chain.constraints.clone();
    full_constraints.push(Constraint::vars("y1", "y2"));
    let full = OrderContext::new(full_vars).with_constraints(full_constraints);
    let y1 = LatticeTerm::var("y1");
    let y2 = LatticeTerm::var("y2");
    let z = |i: usize| retraction_coord(i, n, k, &y1, &y2);
    let mut obligations = Vec::new();

    // s_cod lands in Δ²: x_k ≥ x_{k+1}.
    let mut s_valid = ObligationResult::new(obligation::S_COD_VALID);
    let (l, r) = geq(coord(k, n), coord(k + 1, n));
    check(&mut s_valid, "x_k >= x_{k+1}", &l, &r, &chain)?;
    obligations.push(s_valid);

    let mut endpoints = ObligationResult::new(obligation::R_COD_ENDPOINTS);
    check(&mut endpoints, "z_0", &z(0), &LatticeTerm::Top, &full)?;
    check(&mut endpoints, "z_{n+1}", &z(n + 1), &LatticeTerm::Bot, &full)?;
    obligations.push(endpoints);

    let mut monotone = ObligationResult::new(obligation::R_COD_MONOTONE);
    for i in 0..=n {
        let (l, r) = geq(z(i), z(i + 1));
        check(&mut monotone, &format!("z_{i} >= z_{}", i + 1), &l, &r, &full)?;
    }
    obligations.push(monotone);

    // Δⁿ × Λ²₁ component: y₁ = 1 gives face j = 0, y₂ = 0 gives face j = n.
    for (id, case, j) in [
        (obligation::R_DOM_HORN_CASE_Y1, Constraint::new(Bound::var("y1"), Bound::Top), 0),
        (obligation::R_DOM_HORN_CASE_Y2, Constraint::new(Bound::Bot, Bound::var("y2")), n),
    ] {
        let mut result = ObligationResult::new(id);
        result.record(j != k, || format!("chosen face j = {j} equals the missing face k = {k}"));
        let ctx = full.clone().with_cases(alloc::vec![alloc::vec![case]]);
        check(&mut result, &format!("face {j}"), &z(j), &z(j + 1), &ctx)?;
        obligations.push(result);
    }

    // Λⁿₖ × Δ² component: each degenerate face j ≠ k of x stays degenerate.
    let mut right = ObligationResult::new(obligation::R_DOM_HORN_RIGHT);
    for j in (0..=n).filter(|&j| j != k) {
        let ctx = full
            .clone()
            .with_cases(alloc::vec![equal_bounds(coord_bound(j, n), coord_bound(j + 1, n)).to_vec()]);
        check(&mut right, &format!("face {j}"), &z(j), &z(j + 1), &ctx)?;
    }
    obligations.push(right);

    // r ∘ s = id on Δⁿ, then on the horn (x with some degenerate face j ≠ k).
    let xk = coord(k, n);
    let xk1 = coord(k + 1, n);
    let rs = |i: usize| retraction_coord(i, n, k, &xk, &xk1);
    let mut rs_cod = ObligationResult::new(obligation::RS_IDENTITY_COD);
    for i in 0..=n + 1 {
        check(&mut rs_cod, &format!("coordinate {i}"), &rs(i), &coord(i, n), &chain)?;
    }
    obligations.push(rs_cod);

    let horn_cases: Vec<Vec<Constraint>> = (0..=n)
        .filter(|&j| j != k)
        .map(|j| equal_bounds(coord_bound(j, n), coord_bound(j + 1, n)).to_vec())
        .collect();
    let mut rs_dom = ObligationResult::new(obligation::RS_IDENTITY_DOM);
    if !horn_cases.is_empty() {
        let horn = chain.clone().with_cases(horn_cases);
        for i in 0..=n + 1 {
            check(&mut rs_dom, &format!("coordinate {i}"), &rs(i), &coord(i, n), &horn)?;
        }
    }
    obligations.push(rs_dom);

    Ok(SymbolicReport { n, k, obligations })
}
