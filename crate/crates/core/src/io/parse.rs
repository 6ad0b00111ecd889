//! Parser for `.bsys` system files and `.bsysmod` module files.
//!
//! ```text
//! file     = ring_line vars_line vars_line { law_line } ;
//! ring     = "ring" ("diff" | "shift") ident { ident } ;
//! vars     = "vars" ("w" | "c") ":" ident { ident } ;
//! law      = "law" expr | "lawvec" "(" expr { "," expr } ")" ;
//! expr     = [ "+" | "-" ] term { ("+" | "-") term } ;
//! term     = factor { "*" factor } ;
//! factor   = rational | ident [ "^" integer ] | "(" expr ")" ;
//! rational = integer [ "/" integer ] ;
//! ```
//!
//! `#` starts a comment. A `law` must be linear in the signal variables,
//! with operator polynomials as coefficients; `lawvec` lists the operator
//! polynomial for every signal position explicitly.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::lexer::{tokenize, Spanned, Tok};
use crate::behavior::{ControlSystem, Side, VariablePartition};
use crate::module::{ModuleVector, Submodule};
use crate::ring::{Exponent, OperatorKind, RingSpec};
use crate::{QPolynomial, QSubmodule, QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Lexical(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("signal variables must appear linearly")]
    NonlinearSignal,
    #[error("empty law")]
    EmptyLaw,
    #[error("term without a signal variable")]
    MissingSignal,
    #[error("missing `{0}` declaration")]
    MissingDeclaration(&'static str),
    #[error("duplicate `{0}` declaration")]
    DuplicateDeclaration(&'static str),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("exponent out of range")]
    ExponentOverflow,
    #[error("lawvec needs {expected} entries, found {found}")]
    LawvecArity { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("declaration does not match the system: {0}")]
    Mismatch(String),
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

/// Names visible inside law expressions.
struct Scope<'a> {
    ring: &'a RingSpec,
    signals: &'a [String],
}

/// A partially evaluated expression: an operator-only part plus one operator
/// coefficient per signal.
#[derive(Clone)]
struct Lin {
    op: QPolynomial,
    sig: Vec<QPolynomial>,
}

impl Lin {
    fn constant(scope: &Scope, p: QPolynomial) -> Self {
        Lin { op: p, sig: vec![QPolynomial::zero(scope.ring.nvars()); scope.signals.len()] }
    }

    fn has_signal(&self) -> bool {
        self.sig.iter().any(|p| !p.is_zero())
    }

    fn add(mut self, other: Lin, sign: bool) -> Lin {
        let combine = |a: &QPolynomial, b: &QPolynomial| if sign { a - b } else { a + b };
        self.op = combine(&self.op, &other.op);
        for (a, b) in self.sig.iter_mut().zip(&other.sig) {
            *a = combine(a, b);
        }
        self
    }

    fn mul(self, other: Lin) -> Option<Lin> {
        if self.has_signal() && other.has_signal() {
            return None;
        }
        let sig = self
            .sig
            .iter()
            .zip(&other.sig)
            .map(|(a, b)| &(&self.op * b) + &(a * &other.op))
            .collect();
        Some(Lin { op: &self.op * &other.op, sig })
    }
}

struct LineParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn next(&mut self) -> Option<&'a Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self.peek().map_or("end of line".to_string(), Tok::describe);
        err(self.line, self.col(), ParseErrorKind::Unexpected { expected: expected.into(), found })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some(Spanned { tok: Tok::Ident(s), col }) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn expr(&mut self, scope: &Scope) -> Result<Lin, ParseError> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term(scope)?;
        let mut acc = if negate {
            Lin::constant(scope, QPolynomial::zero(scope.ring.nvars())).add(first, true)
        } else {
            first
        };
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term(scope)?;
            acc = acc.add(rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self, scope: &Scope) -> Result<Lin, ParseError> {
        let mut acc = self.factor(scope)?;
        while self.peek() == Some(&Tok::Star) {
            let col = self.col();
            self.pos += 1;
            let rhs = self.factor(scope)?;
            acc = acc.mul(rhs).ok_or_else(|| err(self.line, col, ParseErrorKind::NonlinearSignal))?;
        }
        Ok(acc)
    }

    fn factor(&mut self, scope: &Scope) -> Result<Lin, ParseError> {
        let nvars = scope.ring.nvars();
        match self.toks.get(self.pos).cloned() {
            Some(Spanned { tok: Tok::Int(num), .. }) => {
                self.pos += 1;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let col = self.col();
                    match self.next() {
                        Some(Spanned { tok: Tok::Int(den), .. }) => {
                            if den.is_zero() {
                                return Err(err(self.line, col, ParseErrorKind::ZeroDenominator));
                            }
                            value /= Rational::from_integer(den.clone());
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("a positive integer denominator"));
                        }
                    }
                }
                Ok(Lin::constant(scope, QPolynomial::constant(nvars, value)))
            }
            Some(Spanned { tok: Tok::Ident(name), col }) => {
                self.pos += 1;
                let power = if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let pcol = self.col();
                    match self.next() {
                        Some(Spanned { tok: Tok::Int(n), .. }) => n
                            .to_u32()
                            .ok_or_else(|| err(self.line, pcol, ParseErrorKind::ExponentOverflow))?,
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("an integer exponent"));
                        }
                    }
                } else {
                    1
                };
                if let Some(v) = scope.ring.var_index(&name) {
                    let p = QPolynomial::monomial(nvars, Exponent::var(nvars, v, power), Rational::from_integer(1.into()));
                    return Ok(Lin::constant(scope, p));
                }
                if let Some(s) = scope.signals.iter().position(|n| *n == name) {
                    if power != 1 {
                        return Err(err(self.line, col, ParseErrorKind::NonlinearSignal));
                    }
                    let mut lin = Lin::constant(scope, QPolynomial::zero(nvars));
                    lin.sig[s] = QPolynomial::one(nvars);
                    return Ok(lin);
                }
                Err(err(self.line, col, ParseErrorKind::UnknownIdentifier(name)))
            }
            Some(Spanned { tok: Tok::LParen, .. }) => {
                self.pos += 1;
                let inner = self.expr(scope)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }

    /// Body of a `law` line.
    fn law(&mut self, scope: &Scope, directive_col: usize) -> Result<QVector, ParseError> {
        if self.at_end() {
            return Err(err(self.line, directive_col, ParseErrorKind::EmptyLaw));
        }
        let start = self.col();
        let lin = self.expr(scope)?;
        self.finish()?;
        if !lin.op.is_zero() {
            return Err(err(self.line, start, ParseErrorKind::MissingSignal));
        }
        Ok(ModuleVector::new(scope.ring.nvars(), lin.sig).expect("shared ring"))
    }

    /// Body of a `lawvec` line.
    fn lawvec(&mut self, scope: &Scope) -> Result<QVector, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut entries = Vec::new();
        loop {
            let col = self.col();
            let lin = self.expr(scope)?;
            if lin.has_signal() {
                return Err(err(self.line, col, ParseErrorKind::Invalid(
                    "lawvec entries are operator polynomials; signal names are not allowed".into(),
                )));
            }
            entries.push(lin.op);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::RParen) => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
        self.finish()?;
        if entries.len() != scope.signals.len() {
            return Err(err(self.line, 1, ParseErrorKind::LawvecArity {
                expected: scope.signals.len(),
                found: entries.len(),
            }));
        }
        Ok(ModuleVector::new(scope.ring.nvars(), entries).expect("shared ring"))
    }

    fn names(&mut self, what: &str) -> Result<Vec<(String, usize)>, ParseError> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.ident(what)?);
        }
        if out.is_empty() {
            return Err(self.unexpected(what));
        }
        Ok(out)
    }
}

/// Lines with their 1-based numbers, comments stripped, blank lines dropped.
fn tokenized_lines(text: &str) -> impl Iterator<Item = Result<(usize, Vec<Spanned>), ParseError>> + '_ {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = i + 1;
        let code = raw.split('#').next().unwrap_or("");
        match tokenize(code) {
            Ok(toks) if toks.is_empty() => None,
            Ok(toks) => Some(Ok((line, toks))),
            Err((col, c)) => Some(Err(err(line, col, ParseErrorKind::Lexical(c)))),
        }
    })
}

fn parse_ring(p: &mut LineParser) -> Result<RingSpec, ParseError> {
    let (kind_name, kcol) = p.ident("`diff` or `shift`")?;
    let kind = match kind_name.as_str() {
        "diff" => OperatorKind::Differential,
        "shift" => OperatorKind::Shift,
        other => {
            return Err(err(p.line, kcol, ParseErrorKind::Unexpected {
                expected: "`diff` or `shift`".into(),
                found: format!("identifier `{other}`"),
            }))
        }
    };
    let names = p.names("an operator variable name")?;
    check_unique(p.line, &names)?;
    RingSpec::new(kind, names.into_iter().map(|(n, _)| n))
        .map_err(|e| err(p.line, kcol, ParseErrorKind::Invalid(e.to_string())))
}

fn parse_vars(p: &mut LineParser) -> Result<(Side, Vec<(String, usize)>), ParseError> {
    let (block, bcol) = p.ident("`w` or `c`")?;
    let side = match block.as_str() {
        "w" => Side::W,
        "c" => Side::C,
        other => {
            return Err(err(p.line, bcol, ParseErrorKind::Unexpected {
                expected: "`w` or `c`".into(),
                found: format!("identifier `{other}`"),
            }))
        }
    };
    p.expect(Tok::Colon, "`:`")?;
    let names = p.names("a signal name")?;
    check_unique(p.line, &names)?;
    Ok((side, names))
}

fn check_unique(line: usize, names: &[(String, usize)]) -> Result<(), ParseError> {
    for (i, (n, col)) in names.iter().enumerate() {
        if names[..i].iter().any(|(m, _)| m == n) {
            return Err(err(line, *col, ParseErrorKind::Invalid(format!("`{n}` declared twice"))));
        }
    }
    Ok(())
}

/// Parses a `.bsys` system file.
pub fn parse_system(text: &str) -> Result<ControlSystem<Rational>, ParseError> {
    let mut ring: Option<RingSpec> = None;
    let mut w: Option<Vec<String>> = None;
    let mut c: Option<Vec<String>> = None;
    let mut signals: Vec<String> = Vec::new();
    let mut laws: Vec<QVector> = Vec::new();
    let mut last_line = 1;

    for item in tokenized_lines(text) {
        let (line, toks) = item?;
        last_line = line;
        let mut p = LineParser { toks: &toks, pos: 0, line, end_col: 1 + toks.last().map_or(0, |t| t.col) };
        let (directive, dcol) = p.ident("a directive (`ring`, `vars`, `law`, `lawvec`)")?;
        match directive.as_str() {
            "ring" => {
                if ring.is_some() {
                    return Err(err(line, dcol, ParseErrorKind::DuplicateDeclaration("ring")));
                }
                ring = Some(parse_ring(&mut p)?);
            }
            "vars" => {
                let r = ring.as_ref().ok_or_else(|| err(line, dcol, ParseErrorKind::MissingDeclaration("ring")))?;
                let (side, names) = parse_vars(&mut p)?;
                for (n, col) in &names {
                    if r.var_index(n).is_some() || signals.contains(n) {
                        return Err(err(line, *col, ParseErrorKind::Invalid(format!("`{n}` declared twice"))));
                    }
                }
                let names: Vec<String> = names.into_iter().map(|(n, _)| n).collect();
                let slot = match side {
                    Side::W => &mut w,
                    Side::C => &mut c,
                };
                if slot.is_some() {
                    let what = if side == Side::W { "vars w:" } else { "vars c:" };
                    return Err(err(line, dcol, ParseErrorKind::DuplicateDeclaration(what)));
                }
                signals.extend(names.iter().cloned());
                *slot = Some(names);
            }
            "law" | "lawvec" => {
                let r = ring.as_ref().ok_or_else(|| err(line, dcol, ParseErrorKind::MissingDeclaration("ring")))?;
                let (wn, cn) = match (&w, &c) {
                    (Some(wn), Some(cn)) => (wn, cn),
                    (None, _) => return Err(err(line, dcol, ParseErrorKind::MissingDeclaration("vars w:"))),
                    (_, None) => return Err(err(line, dcol, ParseErrorKind::MissingDeclaration("vars c:"))),
                };
                let ordered: Vec<String> = wn.iter().chain(cn).cloned().collect();
                let scope = Scope { ring: r, signals: &ordered };
                let v = if directive == "law" { p.law(&scope, dcol)? } else { p.lawvec(&scope)? };
                laws.push(v);
            }
            other => return Err(err(line, dcol, ParseErrorKind::UnknownDirective(other.into()))),
        }
    }

    let ring = ring.ok_or_else(|| err(last_line, 1, ParseErrorKind::MissingDeclaration("ring")))?;
    let w = w.ok_or_else(|| err(last_line, 1, ParseErrorKind::MissingDeclaration("vars w:")))?;
    let c = c.ok_or_else(|| err(last_line, 1, ParseErrorKind::MissingDeclaration("vars c:")))?;
    let partition = VariablePartition::new(w, c).map_err(|e| err(last_line, 1, ParseErrorKind::Invalid(e.to_string())))?;
    let module = Submodule::new(ring.nvars(), partition.rank(), laws).expect("laws built in scope");
    ControlSystem::new(ring, partition, module).map_err(|e| err(last_line, 1, ParseErrorKind::Invalid(e.to_string())))
}

/// Parses a `.bsysmod` file holding laws on one block of `sys`. The `ring`
/// and `vars` lines are optional; when present they must match the system.
pub fn parse_module(text: &str, sys: &ControlSystem<Rational>, side: Side) -> Result<QSubmodule, ParseError> {
    let ring = sys.ring();
    let names = sys.partition().block_names(side);
    let mut laws = Vec::new();
    let mut seen_ring = false;
    let mut seen_vars = false;
    for item in tokenized_lines(text) {
        let (line, toks) = item?;
        let mut p = LineParser { toks: &toks, pos: 0, line, end_col: 1 + toks.last().map_or(0, |t| t.col) };
        let (directive, dcol) = p.ident("a directive (`ring`, `vars`, `law`, `lawvec`)")?;
        match directive.as_str() {
            "ring" => {
                if seen_ring {
                    return Err(err(line, dcol, ParseErrorKind::DuplicateDeclaration("ring")));
                }
                seen_ring = true;
                let declared = parse_ring(&mut p)?;
                if &declared != ring {
                    return Err(err(line, dcol, ParseErrorKind::Mismatch(format!(
                        "ring differs from `ring {} {}`",
                        ring.kind().keyword(),
                        ring.var_names().join(" ")
                    ))));
                }
            }
            "vars" => {
                if seen_vars {
                    return Err(err(line, dcol, ParseErrorKind::DuplicateDeclaration("vars")));
                }
                seen_vars = true;
                let (declared_side, declared) = parse_vars(&mut p)?;
                let declared: Vec<String> = declared.into_iter().map(|(n, _)| n).collect();
                if declared_side != side || declared != names {
                    return Err(err(line, dcol, ParseErrorKind::Mismatch(format!(
                        "expected `vars {side}: {}`",
                        names.join(" ")
                    ))));
                }
            }
            "law" | "lawvec" => {
                let scope = Scope { ring, signals: names };
                let v = if directive == "law" { p.law(&scope, dcol)? } else { p.lawvec(&scope)? };
                laws.push(v);
            }
            other => return Err(err(line, dcol, ParseErrorKind::UnknownDirective(other.into()))),
        }
    }
    Ok(Submodule::new(ring.nvars(), names.len(), laws).expect("laws built in scope"))
}
