//! Text formats: presentations, element/polynomial expressions and
//! generator-image tables for endomorphisms.
//!
//! ```text
//! field 2;
//! family a(1); family b(1);
//! rule a[i]*b[j] -> 0;
//! rule b[j]*a[i] -> 0 when j >= i;
//! rule a[i]*b[0] -> sum(k = 1..i) a[i-k]*b[k] when i >= 1;
//! ```

use smallvec::SmallVec;

use super::{
    CmpOp, Comparison, Family, IndexPattern, LetterPattern, LetterTemplate, LinExpr, Presentation,
    RewriteRule, RhsTerm, SumRange,
};
use crate::element::RingElem;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::skew::{EndoKind, Endomorphism, SkewPoly};
use crate::word::{GeneratorId, Word, MAX_ARITY};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 20] = [
    "->", "..", ">=", "<=", "==", "!=", "&&", ";", "(", ")", "[", "]", ",", "*", "+", "-", "^",
    "=", ">", "<",
];

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<i64>().map_err(|_| Error::Parse {
                line,
                col,
                message: format!("integer literal `{s}` is too large"),
            })?;
            col += i - start;
            out.push(Token {
                tok: Tok::Int(v),
                line: start_line,
                col: start_col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: start_line,
                col: start_col,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push(Token {
                    tok: Tok::Sym(s),
                    line: start_line,
                    col: start_col,
                });
            }
            None => {
                return Err(Error::Parse {
                    line,
                    col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        &self.toks[(self.pos + ahead).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse {
            line,
            col,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(t) if *t == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", describe(self.peek())))
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(t) if t == k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            t => {
                self.pos -= 1;
                self.error(format!("expected identifier, found {}", describe(&t)))
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.bump() {
            Tok::Int(v) => Ok(v),
            t => {
                self.pos -= 1;
                self.error(format!("expected integer, found {}", describe(&t)))
            }
        }
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

/// Variable scope of one rule or map statement.
#[derive(Default)]
struct Scope {
    names: Vec<String>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn intern(&mut self, name: &str) -> usize {
        self.lookup(name).unwrap_or_else(|| {
            self.names.push(name.to_string());
            self.names.len() - 1
        })
    }
}

/// Families and field visible while parsing statements.
struct Context<'a> {
    field: PrimeField,
    families: &'a [Family],
}

impl Context<'_> {
    fn family(&self, name: &str) -> Result<(u16, usize)> {
        self.families
            .iter()
            .position(|f| f.name == name)
            .map(|i| (i as u16, self.families[i].arity))
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }
}

fn parse_linexpr(p: &mut Parser, scope: &Scope, extra: Option<(&str, usize)>) -> Result<LinExpr> {
    let mut e = LinExpr::default();
    let mut sign = 1i64;
    if p.eat_sym("-") {
        sign = -1;
    }
    loop {
        match p.peek().clone() {
            Tok::Int(v) => {
                p.bump();
                if p.eat_sym("*") {
                    let name = p.ident()?;
                    let var = resolve_var(p, scope, extra, &name)?;
                    e.terms.push((var, sign * v));
                } else {
                    e.constant += sign * v;
                }
            }
            Tok::Ident(name) => {
                p.bump();
                let var = resolve_var(p, scope, extra, &name)?;
                e.terms.push((var, sign));
            }
            t => return p.error(format!("expected index expression, found {}", describe(&t))),
        }
        // `..` lexes as one symbol, so a bare `-`/`+` here is arithmetic
        if p.eat_sym("+") {
            sign = 1;
        } else if p.eat_sym("-") {
            sign = -1;
        } else {
            return Ok(e);
        }
    }
}

fn resolve_var(
    p: &Parser,
    scope: &Scope,
    extra: Option<(&str, usize)>,
    name: &str,
) -> Result<usize> {
    if let Some((n, v)) = extra {
        if n == name {
            return Ok(v);
        }
    }
    match scope.lookup(name) {
        Some(v) => Ok(v),
        None => p.error(format!(
            "variable `{name}` is not bound by the left-hand side"
        )),
    }
}

fn parse_letter_pattern(p: &mut Parser, ctx: &Context, scope: &mut Scope) -> Result<LetterPattern> {
    let name = p.ident()?;
    let (family, arity) = ctx.family(&name)?;
    let mut indices = SmallVec::new();
    if p.eat_sym("[") {
        loop {
            match p.bump() {
                Tok::Int(v) if v >= 0 => indices.push(IndexPattern::Const(v as u32)),
                Tok::Ident(v) => indices.push(IndexPattern::Var(scope.intern(&v))),
                t => {
                    p.pos -= 1;
                    return p.error(format!(
                        "left-hand indices must be variables or constants, found {}",
                        describe(&t)
                    ));
                }
            }
            if !p.eat_sym(",") {
                break;
            }
        }
        p.expect_sym("]")?;
    }
    if indices.len() != arity {
        return p.error(format!(
            "family `{name}` has arity {arity}, got {} indices",
            indices.len()
        ));
    }
    Ok(LetterPattern { family, indices })
}

fn parse_letter_template(
    p: &mut Parser,
    ctx: &Context,
    scope: &Scope,
    extra: Option<(&str, usize)>,
) -> Result<LetterTemplate> {
    let name = p.ident()?;
    let (family, arity) = ctx.family(&name)?;
    let mut indices = SmallVec::new();
    if p.eat_sym("[") {
        loop {
            indices.push(parse_linexpr(p, scope, extra)?);
            if !p.eat_sym(",") {
                break;
            }
        }
        p.expect_sym("]")?;
    }
    if indices.len() != arity {
        return p.error(format!(
            "family `{name}` has arity {arity}, got {} indices",
            indices.len()
        ));
    }
    Ok(LetterTemplate { family, indices })
}

fn is_rhs_end(t: &Tok) -> bool {
    matches!(t, Tok::Sym(";") | Tok::Eof) || matches!(t, Tok::Ident(s) if s == "when")
}

/// `0` or a `+`/`-` separated list of (optionally summed) coefficient-word terms.
fn parse_rhs(p: &mut Parser, ctx: &Context, scope: &mut Scope) -> Result<Vec<RhsTerm>> {
    if matches!(p.peek(), Tok::Int(0)) && is_rhs_end(p.peek_at(1)) {
        p.bump();
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut sign = if p.eat_sym("-") { -1 } else { 1 };
    loop {
        let mut sum = None;
        let mut extra = None;
        if matches!(p.peek(), Tok::Ident(s) if s == "sum") && matches!(p.peek_at(1), Tok::Sym("("))
        {
            p.bump();
            p.expect_sym("(")?;
            let name = p.ident()?;
            if scope.lookup(&name).is_some() {
                return p.error(format!(
                    "summation variable `{name}` shadows a rule variable"
                ));
            }
            let var = scope.intern(&name);
            p.expect_sym("=")?;
            let lo = parse_linexpr(p, scope, None)?;
            p.expect_sym("..")?;
            let hi = parse_linexpr(p, scope, None)?;
            p.expect_sym(")")?;
            sum = Some(SumRange { var, lo, hi });
            extra = Some(var);
        }
        let mut coeff = 1i64;
        if let Tok::Int(v) = p.peek().clone() {
            p.bump();
            coeff = v;
            p.expect_sym("*")?;
        }
        let extra_binding = extra.map(|v| (scope.names[v].clone(), v));
        let mut word = Vec::new();
        loop {
            let extra_ref = extra_binding.as_ref().map(|(n, v)| (n.as_str(), *v));
            word.push(parse_letter_template(p, ctx, scope, extra_ref)?);
            if !p.eat_sym("*") {
                break;
            }
        }
        if let Some(v) = extra {
            // the summation variable is local to its term
            scope.names[v] = format!("#{}", scope.names[v]);
        }
        let c = ctx.field.scalar(sign * coeff);
        if !c.is_zero() {
            terms.push(RhsTerm {
                coeff: c,
                word,
                sum,
            });
        }
        if p.eat_sym("+") {
            sign = 1;
        } else if p.eat_sym("-") {
            sign = -1;
        } else {
            return Ok(terms);
        }
    }
}

fn parse_guard(p: &mut Parser, scope: &Scope) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    loop {
        let lhs = parse_linexpr(p, scope, None)?;
        let op = match p.bump() {
            Tok::Sym(">=") => CmpOp::Ge,
            Tok::Sym("<=") => CmpOp::Le,
            Tok::Sym(">") => CmpOp::Gt,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("==") | Tok::Sym("=") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            t => {
                p.pos -= 1;
                return p.error(format!(
                    "expected comparison operator, found {}",
                    describe(&t)
                ));
            }
        };
        let rhs = parse_linexpr(p, scope, None)?;
        out.push(Comparison { lhs, op, rhs });
        if !(p.eat_keyword("and") || p.eat_sym("&&") || p.eat_sym(",")) {
            return Ok(out);
        }
    }
}

/// Parses `lhs -> rhs [when guard]` (without the leading keyword).
fn parse_rule_body(
    p: &mut Parser,
    ctx: &Context,
    source: String,
    single_letter: bool,
) -> Result<RewriteRule> {
    let mut scope = Scope::default();
    let mut lhs = vec![parse_letter_pattern(p, ctx, &mut scope)?];
    while !single_letter && p.eat_sym("*") {
        lhs.push(parse_letter_pattern(p, ctx, &mut scope)?);
    }
    p.expect_sym("->")?;
    let lhs_vars = scope.names.len();
    let rhs = parse_rhs(p, ctx, &mut scope)?;
    let guard = if p.eat_keyword("when") {
        // guards may only use left-hand variables
        let lhs_scope = Scope {
            names: scope.names[..lhs_vars].to_vec(),
        };
        parse_guard(p, &lhs_scope)?
    } else {
        Vec::new()
    };
    Ok(RewriteRule {
        vars: scope.names,
        lhs,
        guard,
        rhs,
        source,
    })
}

fn statement_source(text: &str, p: &Parser, start: usize) -> String {
    let (l0, c0) = (p.toks[start].line, p.toks[start].col);
    let (l1, c1) = p.here();
    text.lines()
        .enumerate()
        .filter(|(i, _)| *i + 1 >= l0 && *i < l1)
        .map(|(i, l)| {
            let from = if i + 1 == l0 { c0 - 1 } else { 0 };
            let to = if i + 1 == l1 {
                (c1 - 1).min(l.len())
            } else {
                l.len()
            };
            l.get(from..to.max(from)).unwrap_or("").to_string()
        })
        .collect::<Vec<_>>()
        .join(" ")
        .trim()
        .to_string()
}

/// Parses a presentation. Rules keep their declaration order.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text)?;
    let mut field = PrimeField::new(2)?;
    let mut families: Vec<Family> = Vec::new();
    let mut rules = Vec::new();
    while !p.at_eof() {
        let (line, _) = p.here();
        let start = p.pos;
        if p.eat_keyword("field") {
            let v = p.int()?;
            if !rules.is_empty() {
                return p.error("`field` must precede all rules");
            }
            field = PrimeField::new(v.max(0) as u64)?;
            p.expect_sym(";")?;
        } else if p.eat_keyword("family") {
            let name = p.ident()?;
            if name == "x" || name == "sum" {
                return p.error(format!("`{name}` is reserved"));
            }
            if families.iter().any(|f| f.name == name) {
                return p.error(format!("family `{name}` declared twice"));
            }
            p.expect_sym("(")?;
            let arity = p.int()?;
            p.expect_sym(")")?;
            if !(0..=MAX_ARITY as i64).contains(&arity) {
                return p.error(format!("arity must be between 0 and {MAX_ARITY}"));
            }
            let fixed_bound = if p.eat_keyword("bound") {
                Some(p.int()?.max(0) as u32)
            } else {
                None
            };
            p.expect_sym(";")?;
            families.push(Family {
                name,
                arity: arity as usize,
                fixed_bound,
            });
        } else if p.eat_keyword("rule") {
            let ctx = Context {
                field,
                families: &families,
            };
            let mut rule = parse_rule_body(&mut p, &ctx, String::new(), false)?;
            rule.source = statement_source(text, &p, start + 1);
            let lhs = rule.lhs.len();
            if let Some(t) = rule.rhs.iter().find(|t| t.word.len() != lhs) {
                return Err(Error::InhomogeneousRule {
                    line,
                    lhs,
                    rhs: t.word.len(),
                });
            }
            p.expect_sym(";")?;
            rules.push(rule);
        } else {
            return p.error(format!(
                "expected `field`, `family` or `rule`, found {}",
                describe(p.peek())
            ));
        }
    }
    Ok(Presentation::new(field, families, rules))
}

/// Expression tree shared by element and polynomial literals.
#[derive(Clone, Debug)]
enum Expr {
    Int(i64),
    Gen(GeneratorId),
    X(u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

fn parse_expr(p: &mut Parser, pres: &Presentation, allow_x: bool) -> Result<Expr> {
    let mut lhs = if p.eat_sym("-") {
        Expr::Neg(Box::new(parse_term(p, pres, allow_x)?))
    } else {
        parse_term(p, pres, allow_x)?
    };
    loop {
        if p.eat_sym("+") {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(p, pres, allow_x)?));
        } else if p.eat_sym("-") {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(p, pres, allow_x)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(p: &mut Parser, pres: &Presentation, allow_x: bool) -> Result<Expr> {
    let mut lhs = parse_factor(p, pres, allow_x)?;
    while p.eat_sym("*") {
        lhs = Expr::Mul(Box::new(lhs), Box::new(parse_factor(p, pres, allow_x)?));
    }
    Ok(lhs)
}

fn parse_factor(p: &mut Parser, pres: &Presentation, allow_x: bool) -> Result<Expr> {
    match p.peek().clone() {
        Tok::Int(v) => {
            p.bump();
            Ok(Expr::Int(v))
        }
        Tok::Sym("(") => {
            p.bump();
            let e = parse_expr(p, pres, allow_x)?;
            p.expect_sym(")")?;
            Ok(e)
        }
        Tok::Sym("-") => {
            p.bump();
            Ok(Expr::Neg(Box::new(parse_factor(p, pres, allow_x)?)))
        }
        Tok::Ident(name) if name == "x" => {
            p.bump();
            if !allow_x {
                return p.error("the indeterminate `x` is not allowed in ring elements");
            }
            let k = if p.eat_sym("^") { p.int()? } else { 1 };
            if k < 0 {
                return p.error("negative power of x");
            }
            Ok(Expr::X(k as u32))
        }
        Tok::Ident(name) => {
            p.bump();
            let mut idx = Vec::new();
            if p.eat_sym("[") {
                loop {
                    let v = p.int()?;
                    if v < 0 {
                        return p.error("negative generator index");
                    }
                    idx.push(v as u32);
                    if !p.eat_sym(",") {
                        break;
                    }
                }
                p.expect_sym("]")?;
            }
            let id = pres.family_id(&name)?;
            let arity = pres.families()[id as usize].arity;
            if idx.len() != arity {
                return p.error(format!(
                    "family `{name}` has arity {arity}, got {} indices",
                    idx.len()
                ));
            }
            Ok(Expr::Gen(GeneratorId::new(id, &idx)))
        }
        t => p.error(format!("expected a term, found {}", describe(&t))),
    }
}

fn parse_complete(text: &str, pres: &Presentation, allow_x: bool) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = parse_expr(&mut p, pres, allow_x)?;
    if !p.at_eof() {
        return p.error(format!(
            "unexpected {} after expression",
            describe(p.peek())
        ));
    }
    Ok(e)
}

/// Free (unreduced) evaluation: products concatenate words.
fn eval_raw(e: &Expr, k: PrimeField) -> RingElem {
    match e {
        Expr::Int(v) => RingElem::scalar(k.scalar(*v)),
        Expr::Gen(g) => RingElem::from_word(Word::letter(*g)),
        Expr::X(_) => unreachable!("x rejected while parsing ring elements"),
        Expr::Neg(a) => eval_raw(a, k).neg(k),
        Expr::Add(a, b) => eval_raw(a, k).add(&eval_raw(b, k), k),
        Expr::Sub(a, b) => eval_raw(a, k).sub(&eval_raw(b, k), k),
        Expr::Mul(a, b) => {
            let (a, b) = (eval_raw(a, k), eval_raw(b, k));
            let mut out = RingElem::zero();
            for (u, c) in a.terms() {
                for (v, d) in b.terms() {
                    out.add_term(u.concat(v), k.mul(c, d), k);
                }
            }
            out
        }
    }
}

/// Parses an element expression such as `2*b[0]*a[1] + a[0]`.
///
/// The result is a raw combination of words; pass it through
/// [`Reducer::normal_form`](super::Reducer::normal_form) to reduce it.
pub fn parse_element(text: &str, pres: &Presentation) -> Result<RingElem> {
    let e = parse_complete(text, pres, false)?;
    Ok(eval_raw(&e, pres.field()))
}

/// Parses a polynomial literal such as `(a0[0] - a1[0]*x) * b1[0]` and
/// evaluates it in R[x; alpha] (identity when `alpha` is `None`).
pub fn parse_poly(
    text: &str,
    pres: &Presentation,
    alpha: Option<&Endomorphism>,
) -> Result<SkewPoly> {
    let e = parse_complete(text, pres, true)?;
    let identity = Endomorphism::identity();
    let alpha = alpha.unwrap_or(&identity);
    let mut red = pres.reducer();
    eval_poly(&e, pres, alpha, &mut red)
}

fn eval_poly(
    e: &Expr,
    pres: &Presentation,
    alpha: &Endomorphism,
    red: &mut super::Reducer,
) -> Result<SkewPoly> {
    let k = pres.field();
    Ok(match e {
        Expr::Int(v) => SkewPoly::constant(RingElem::scalar(k.scalar(*v))),
        Expr::Gen(g) => {
            SkewPoly::constant(red.normal_form(&RingElem::from_word(Word::letter(*g)))?)
        }
        Expr::X(n) => SkewPoly::monomial(RingElem::one(), *n as usize),
        Expr::Neg(a) => eval_poly(a, pres, alpha, red)?.neg(k),
        Expr::Add(a, b) => eval_poly(a, pres, alpha, red)?.add(&eval_poly(b, pres, alpha, red)?, k),
        Expr::Sub(a, b) => eval_poly(a, pres, alpha, red)?.sub(&eval_poly(b, pres, alpha, red)?, k),
        Expr::Mul(a, b) => {
            let (a, b) = (
                eval_poly(a, pres, alpha, red)?,
                eval_poly(b, pres, alpha, red)?,
            );
            crate::skew::skew_mul_poly_with(&a, &b, alpha, red)?
        }
    })
}

/// Parses a generator-image table:
///
/// ```text
/// kind automorphism;
/// map a[i] -> a[i+1];
/// inverse a[i] -> a[i-1] when i >= 1;
/// ```
///
/// Generators without a matching `map` line are fixed.
pub fn parse_endomorphism(text: &str, pres: &Presentation) -> Result<Endomorphism> {
    let mut p = Parser::new(text)?;
    let ctx = Context {
        field: pres.field(),
        families: pres.families(),
    };
    let mut kind = EndoKind::Endomorphism;
    let mut images = Vec::new();
    let mut inverse = Vec::new();
    while !p.at_eof() {
        let start = p.pos;
        if p.eat_keyword("kind") {
            let k = p.ident()?;
            kind = match k.as_str() {
                "endomorphism" => EndoKind::Endomorphism,
                "automorphism" => EndoKind::Automorphism,
                _ => return p.error(format!("unknown kind `{k}`")),
            };
            p.expect_sym(";")?;
        } else if p.eat_keyword("map") || p.eat_keyword("inverse") {
            let is_inverse = matches!(&p.toks[start].tok, Tok::Ident(s) if s == "inverse");
            let mut rule = parse_rule_body(&mut p, &ctx, String::new(), true)?;
            rule.source = statement_source(text, &p, start + 1);
            p.expect_sym(";")?;
            if is_inverse {
                inverse.push(rule);
            } else {
                images.push(rule);
            }
        } else {
            return p.error(format!(
                "expected `kind`, `map` or `inverse`, found {}",
                describe(p.peek())
            ));
        }
    }
    if kind == EndoKind::Automorphism && inverse.is_empty() && !images.is_empty() {
        return Err(Error::NoInverse);
    }
    Ok(Endomorphism::from_tables(kind, images, inverse))
}
