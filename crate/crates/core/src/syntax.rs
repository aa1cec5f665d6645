//! The `.qwa` text format: lexer, parser and printer.
//!
//! ```text
//! scalars { root zeta : 2 ; free q }
//! generators x1, y1, x2, y2
//! relations {
//!   x1 y1 = y1 x1 + 1
//!   y1 y2 = q * y2 y1
//!   [w, y] = y
//! }
//! qweyl { n = 2 ; q = 1, q ; Lambda = [[1, q], [q^-1, 1]] }
//! map { y1 -> y u ; w1 -> w }
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::scalar::{Scalar, ScalarGroup};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Arrow,
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        if c == '\n' {
            push(&mut out, Tok::Newline);
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Ident(s));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Int(s.parse().expect("digits")));
            continue;
        }
        if (c == '-' || c == '\u{2212}') && chars.get(i + 1) == Some(&'>') {
            push(&mut out, Tok::Arrow);
            i += 2;
            col += 2;
            continue;
        }
        let sym = match c {
            '\u{2212}' => '-',
            '{' | '}' | '[' | ']' | '(' | ')' | ',' | ';' | ':' | '=' | '*' | '^' | '+' | '-' | '/' => c,
            _ => {
                return Err(Error::Parse { line, col, msg: format!("unexpected character `{c}`") });
            }
        };
        push(&mut out, Tok::Sym(sym));
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A factor in an expression: a number or a name raised to a power.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Number(BigRational),
    Name { name: String, power: i64, line: usize, col: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawTerm {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

/// Unresolved sum of products; names are resolved against a scalar group
/// and a generator list by [`resolve_expr`].
#[derive(Clone, Debug, PartialEq)]
pub struct RawExpr {
    pub terms: Vec<RawTerm>,
    pub line: usize,
    pub col: usize,
}

/// One resolved summand `r · s · X_{i1}^{e1} X_{i2}^{e2} ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub rational: BigRational,
    pub scalar: Scalar,
    pub word: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QWeylSpec {
    pub n: usize,
    pub q: Vec<Scalar>,
    pub lambda: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub source: String,
    pub image: RawExpr,
}

/// Everything a `.qwa` file can declare.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub group: ScalarGroup,
    pub presentation: Option<Presentation>,
    pub qweyl: Option<QWeylSpec>,
    pub map: Option<Vec<MapEntry>>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn perr<T>(t: &Token, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line: t.line, col: t.col, msg: msg.into() })
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<Token> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            perr(&t, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            other => perr(&t, format!("expected a name, found {}", describe(other))),
        }
    }

    fn int(&mut self) -> Result<(BigInt, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => Ok((v.clone(), t)),
            other => perr(&t, format!("expected an integer, found {}", describe(other))),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.at_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let (v, t) = self.int()?;
        let v = if neg { -v } else { v };
        v.to_i64().map_or_else(|| perr(&t, "integer out of range"), Ok)
    }

    /// Item separator inside braces: `;` or line breaks.
    fn separator(&mut self) -> Result<bool> {
        let mut any = false;
        while matches!(self.peek().tok, Tok::Newline | Tok::Sym(';')) {
            self.next();
            any = true;
        }
        if !any && !self.at_sym('}') {
            let t = self.peek().clone();
            return perr(&t, format!("expected `;`, a line break or `}}`, found {}", describe(&t.tok)));
        }
        Ok(any)
    }

    fn expr(&mut self) -> Result<RawExpr> {
        let start = self.peek().clone();
        let mut terms = Vec::new();
        let mut negative = false;
        if self.at_sym('-') || self.at_sym('+') {
            negative = self.next().tok == Tok::Sym('-');
        }
        loop {
            let factors = self.term()?;
            terms.push(RawTerm { negative, factors });
            if self.at_sym('+') || self.at_sym('-') {
                negative = self.next().tok == Tok::Sym('-');
                // allow `+ -1`
                if self.at_sym('-') {
                    self.next();
                    negative = !negative;
                }
            } else {
                break;
            }
        }
        Ok(RawExpr { terms, line: start.line, col: start.col })
    }

    fn term(&mut self) -> Result<Vec<Factor>> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.at_sym('*') {
                self.next();
                factors.push(self.factor()?);
            } else if matches!(self.peek().tok, Tok::Ident(_) | Tok::Int(_)) {
                factors.push(self.factor()?);
            } else {
                return Ok(factors);
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Int(n) => {
                let mut value = BigRational::from_integer(n);
                if self.at_sym('/') {
                    self.next();
                    let (d, dt) = self.int()?;
                    if d.is_zero() {
                        return perr(&dt, "division by zero");
                    }
                    value /= BigRational::from_integer(d);
                }
                Ok(Factor::Number(value))
            }
            Tok::Ident(name) => {
                let power = if self.at_sym('^') {
                    self.next();
                    self.signed_int()?
                } else {
                    1
                };
                Ok(Factor::Name { name, power, line: t.line, col: t.col })
            }
            other => perr(&t, format!("expected a number or a name, found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Arrow => "`->`".into(),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

enum RawRelation {
    Plain { lhs: RawExpr, rhs: RawExpr },
    Bracket { w: (String, Token), y: (String, Token), rhs: RawExpr },
}

struct RawDocument {
    scalars: Option<(Option<(String, u32)>, Vec<String>)>,
    generators: Option<Vec<(String, Token)>>,
    relations: Vec<(RawRelation, Token)>,
    relations_seen: bool,
    qweyl: Option<(Vec<(String, Token, RawQWeylValue)>, Token)>,
    map: Option<Vec<(String, Token, RawExpr)>>,
}

enum RawQWeylValue {
    Int(i64),
    List(Vec<RawExpr>),
    Matrix(Vec<Vec<RawExpr>>),
}

fn parse_raw(text: &str) -> Result<RawDocument> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut doc = RawDocument {
        scalars: None,
        generators: None,
        relations: Vec::new(),
        relations_seen: false,
        qweyl: None,
        map: None,
    };
    loop {
        p.skip_newlines();
        let t = p.next();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(s) => s.clone(),
            other => return perr(&t, format!("expected a block keyword, found {}", describe(other))),
        };
        match kw.as_str() {
            "scalars" => {
                if doc.scalars.is_some() {
                    return perr(&t, "duplicate `scalars` block");
                }
                doc.scalars = Some(parse_scalars(&mut p)?);
            }
            "generators" => {
                if doc.generators.is_some() {
                    return perr(&t, "duplicate `generators` line");
                }
                let mut names = vec![p.ident()?];
                while p.at_sym(',') {
                    p.next();
                    p.skip_newlines();
                    names.push(p.ident()?);
                }
                doc.generators = Some(names);
            }
            "relations" => {
                if doc.relations_seen {
                    return perr(&t, "duplicate `relations` block");
                }
                doc.relations_seen = true;
                p.expect_sym('{')?;
                p.skip_newlines();
                while !p.at_sym('}') {
                    let start = p.peek().clone();
                    let rel = if p.at_sym('[') {
                        p.next();
                        let w = p.ident()?;
                        p.expect_sym(',')?;
                        let y = p.ident()?;
                        p.expect_sym(']')?;
                        p.expect_sym('=')?;
                        RawRelation::Bracket { w, y, rhs: p.expr()? }
                    } else {
                        let lhs = p.expr()?;
                        p.expect_sym('=')?;
                        RawRelation::Plain { lhs, rhs: p.expr()? }
                    };
                    doc.relations.push((rel, start));
                    p.separator()?;
                }
                p.expect_sym('}')?;
            }
            "qweyl" => {
                if doc.qweyl.is_some() {
                    return perr(&t, "duplicate `qweyl` block");
                }
                p.expect_sym('{')?;
                p.skip_newlines();
                let mut fields = Vec::new();
                while !p.at_sym('}') {
                    let (name, nt) = p.ident()?;
                    p.expect_sym('=')?;
                    p.skip_newlines();
                    let value = if p.at_sym('[') {
                        RawQWeylValue::Matrix(parse_matrix(&mut p)?)
                    } else if name == "n" {
                        RawQWeylValue::Int(p.signed_int()?)
                    } else {
                        let mut items = vec![p.expr()?];
                        while p.at_sym(',') {
                            p.next();
                            p.skip_newlines();
                            items.push(p.expr()?);
                        }
                        RawQWeylValue::List(items)
                    };
                    fields.push((name, nt, value));
                    p.separator()?;
                }
                p.expect_sym('}')?;
                doc.qweyl = Some((fields, t));
            }
            "map" => {
                if doc.map.is_some() {
                    return perr(&t, "duplicate `map` block");
                }
                p.expect_sym('{')?;
                p.skip_newlines();
                let mut entries = Vec::new();
                while !p.at_sym('}') {
                    let (name, nt) = p.ident()?;
                    let arrow = p.next();
                    if arrow.tok != Tok::Arrow {
                        return perr(&arrow, format!("expected `->`, found {}", describe(&arrow.tok)));
                    }
                    entries.push((name, nt, p.expr()?));
                    p.separator()?;
                }
                p.expect_sym('}')?;
                doc.map = Some(entries);
            }
            other => return perr(&t, format!("unknown block `{other}`")),
        }
    }
    Ok(doc)
}

fn parse_scalars(p: &mut Parser) -> Result<(Option<(String, u32)>, Vec<String>)> {
    p.expect_sym('{')?;
    p.skip_newlines();
    let mut root = None;
    let mut free = Vec::new();
    while !p.at_sym('}') {
        let (kw, t) = p.ident()?;
        match kw.as_str() {
            "root" => {
                if root.is_some() {
                    return perr(&t, "only one root of unity may be declared");
                }
                let (name, _) = p.ident()?;
                p.expect_sym(':')?;
                let (e, et) = p.int()?;
                let e = e.to_u32().filter(|&e| e >= 1).map_or_else(|| perr(&et, "root order must be a positive integer"), Ok)?;
                root = Some((name, e));
            }
            "free" => {
                free.push(p.ident()?.0);
                while p.at_sym(',') {
                    p.next();
                    free.push(p.ident()?.0);
                }
            }
            other => return perr(&t, format!("expected `root` or `free`, found `{other}`")),
        }
        p.separator()?;
    }
    p.expect_sym('}')?;
    Ok((root, free))
}

fn parse_matrix(p: &mut Parser) -> Result<Vec<Vec<RawExpr>>> {
    p.expect_sym('[')?;
    p.skip_newlines();
    let mut rows = Vec::new();
    loop {
        p.expect_sym('[')?;
        let mut row = vec![p.expr()?];
        while p.at_sym(',') {
            p.next();
            p.skip_newlines();
            row.push(p.expr()?);
        }
        p.expect_sym(']')?;
        rows.push(row);
        p.skip_newlines();
        if p.at_sym(',') {
            p.next();
            p.skip_newlines();
        } else {
            break;
        }
    }
    p.expect_sym(']')?;
    Ok(rows)
}

/// Resolve names: scalar symbols of `group` become scalar factors, names in
/// `generators` become letters (in order), anything else is an error.
pub fn resolve_expr(expr: &RawExpr, group: &ScalarGroup, generators: &[String]) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(expr.terms.len());
    for t in &expr.terms {
        let mut rational = if t.negative { -BigRational::one() } else { BigRational::one() };
        let mut scalar = group.one();
        let mut word: Vec<(usize, i64)> = Vec::new();
        for f in &t.factors {
            match f {
                Factor::Number(r) => rational *= r,
                Factor::Name { name, power, line, col } => {
                    if let Some(s) = group.symbol(name) {
                        scalar = &scalar * &s.pow(*power);
                    } else if let Some(g) = generators.iter().position(|x| x == name) {
                        match word.last_mut() {
                            Some((last, e)) if *last == g => *e += power,
                            _ => word.push((g, *power)),
                        }
                        if word.last().is_some_and(|&(_, e)| e == 0) {
                            word.pop();
                        }
                    } else {
                        return Err(Error::Parse { line: *line, col: *col, msg: format!("undeclared symbol `{name}`") });
                    }
                }
            }
        }
        out.push(Term { rational, scalar, word });
    }
    Ok(out)
}

/// Interpret an expression as a single group element (a scalar literal).
fn resolve_scalar(expr: &RawExpr, group: &ScalarGroup) -> Result<Scalar> {
    let err = |msg: &str| Error::Parse { line: expr.line, col: expr.col, msg: msg.into() };
    let terms = resolve_expr(expr, group, &[])?;
    let [term] = terms.as_slice() else { return Err(err("expected a single scalar literal")) };
    scalar_from_parts(&term.rational, &term.scalar, group).ok_or_else(|| {
        err(if term.rational == -BigRational::one() {
            "literal -1 requires a root of unity of even order"
        } else {
            "expected an element of the scalar group"
        })
    })
}

fn scalar_from_parts(r: &BigRational, s: &Scalar, group: &ScalarGroup) -> Option<Scalar> {
    if r.is_one() {
        Some(s.clone())
    } else if *r == -BigRational::one() {
        group.minus_one().map(|m| &m * s)
    } else {
        None
    }
}

fn build_group(raw: &RawDocument) -> Result<ScalarGroup> {
    match &raw.scalars {
        None => Ok(ScalarGroup::trivial()),
        Some((root, free)) => {
            let (e, name) = match root {
                Some((n, e)) => (*e, Some(n.clone())),
                None => (1, None),
            };
            ScalarGroup::from_owned(e, name, free.clone())
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let raw = parse_raw(text)?;
    let group = build_group(&raw)?;
    let presentation = match &raw.generators {
        None => {
            if let Some((_, t)) = raw.relations.first() {
                return perr(t, "relations given without a `generators` line");
            }
            None
        }
        Some(gens) => {
            let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
            for (k, (n, t)) in gens.iter().enumerate() {
                if names[..k].contains(n) {
                    return perr(t, format!("generator `{n}` declared twice"));
                }
                if group.has_symbol(n) {
                    return perr(t, format!("`{n}` is both a generator and a scalar symbol"));
                }
            }
            let mut pres = Presentation::new(group.clone(), names.clone())?;
            for (rel, t) in &raw.relations {
                let (i, j, r) = resolve_relation(rel, &group, &names, t)?;
                if i == j {
                    return perr(t, format!("generator `{}` cannot be related to itself", names[i]));
                }
                let key = (i.min(j), i.max(j));
                if pres.listed().any(|(a, b, _)| (a, b) == key) || raw_duplicates(&raw, rel, &names, &group, t)? {
                    return perr(t, format!("duplicate relation for the pair {{{}, {}}}", names[key.0], names[key.1]));
                }
                pres.set(i, j, r)?;
            }
            Some(pres)
        }
    };
    let qweyl = match &raw.qweyl {
        None => None,
        Some((fields, t)) => Some(resolve_qweyl(fields, t, &group)?),
    };
    let map = raw.map.as_ref().map(|entries| {
        entries.iter().map(|(n, _, e)| MapEntry { source: n.clone(), image: e.clone() }).collect()
    });
    Ok(Document { group, presentation, qweyl, map })
}

/// Commuting relations are not stored, so duplicates of them must be
/// detected on the raw list.
fn raw_duplicates(raw: &RawDocument, rel: &RawRelation, names: &[String], group: &ScalarGroup, at: &Token) -> Result<bool> {
    let pair = |r: &RawRelation, t: &Token| -> Result<(usize, usize)> {
        let (i, j, _) = resolve_relation(r, group, names, t)?;
        Ok((i.min(j), i.max(j)))
    };
    let me = pair(rel, at)?;
    for (other, t) in &raw.relations {
        if std::ptr::eq(other, rel) {
            return Ok(false);
        }
        if pair(other, t)? == me {
            return Ok(true);
        }
    }
    Ok(false)
}

fn resolve_relation(rel: &RawRelation, group: &ScalarGroup, names: &[String], at: &Token) -> Result<(usize, usize, Relation)> {
    let gen = |(n, t): &(String, Token)| -> Result<usize> {
        names.iter().position(|x| x == n).map_or_else(|| perr(t, format!("undeclared generator `{n}`")), Ok)
    };
    match rel {
        RawRelation::Bracket { w, y, rhs } => {
            let (wi, yi) = (gen(w)?, gen(y)?);
            let terms = resolve_expr(rhs, group, names)?;
            match terms.as_slice() {
                [t] if t.rational.is_one() && t.scalar.is_one() && t.word == [(yi, 1)] => {
                    Ok((wi, yi, Relation::Eulerian { w_is_first: true }))
                }
                _ => perr(at, "a bracket relation must read `[w, y] = y`"),
            }
        }
        RawRelation::Plain { lhs, rhs } => {
            let l = resolve_expr(lhs, group, names)?;
            let (a, b) = match l.as_slice() {
                [t] if t.rational.is_one() && t.scalar.is_one() && t.word.len() == 2 && t.word.iter().all(|w| w.1 == 1) => {
                    (t.word[0].0, t.word[1].0)
                }
                [t] if t.word.len() == 1 && t.word[0].1 == 2 => {
                    return perr(at, format!("generator `{}` cannot be related to itself", names[t.word[0].0]));
                }
                _ => return perr(at, "left-hand side must be a product of two generators"),
            };
            let r = resolve_expr(rhs, group, names)?;
            let swapped = |t: &Term| t.word == [(b, 1), (a, 1)];
            let constant = |t: &Term| t.word.is_empty() && t.scalar.is_one() && t.rational.is_integer();
            match r.as_slice() {
                [t] if swapped(t) => {
                    let lam = scalar_from_parts(&t.rational, &t.scalar, group).map_or_else(
                        || {
                            perr(
                                at,
                                if t.rational == -BigRational::one() {
                                    "literal -1 requires a root of unity of even order"
                                } else {
                                    "quantum weight must be an element of the scalar group"
                                },
                            )
                        },
                        Ok,
                    )?;
                    Ok((a, b, Relation::Multiplicative(lam).normalized()))
                }
                [s, c] | [c, s] if swapped(s) && s.rational.is_one() && s.scalar.is_one() && constant(c) => {
                    let p = c.rational.to_integer().to_i64().map_or_else(|| perr(at, "weight out of range"), Ok)?;
                    Ok((a, b, Relation::Additive(p)))
                }
                _ => perr(at, "expected `X Y = λ * Y X` or `X Y = Y X + p`"),
            }
        }
    }
}

fn resolve_qweyl(fields: &[(String, Token, RawQWeylValue)], at: &Token, group: &ScalarGroup) -> Result<QWeylSpec> {
    let mut n = None;
    let mut q = None;
    let mut lambda = None;
    for (name, t, value) in fields {
        match (name.as_str(), value) {
            ("n", RawQWeylValue::Int(v)) => {
                if *v < 1 {
                    return perr(t, "n must be at least 1");
                }
                n = Some(*v as usize);
            }
            ("q", RawQWeylValue::List(items)) => {
                q = Some(items.iter().map(|e| resolve_scalar(e, group)).collect::<Result<Vec<_>>>()?);
            }
            ("Lambda", RawQWeylValue::Matrix(rows)) => {
                lambda = Some(
                    rows.iter()
                        .map(|r| r.iter().map(|e| resolve_scalar(e, group)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            _ => return perr(t, format!("unexpected qweyl field `{name}`")),
        }
    }
    let Some(n) = n else { return perr(at, "qweyl block needs `n`") };
    let q = q.unwrap_or_else(|| vec![group.one(); n]);
    let lambda = lambda.unwrap_or_else(|| vec![vec![group.one(); n]; n]);
    if q.len() != n {
        return perr(at, format!("expected {n} values of q, found {}", q.len()));
    }
    if lambda.len() != n || lambda.iter().any(|r| r.len() != n) {
        return perr(at, format!("Lambda must be {n}x{n}"));
    }
    Ok(QWeylSpec { n, q, lambda })
}

/// Parse a file that must contain a presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_document(text)?.presentation.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "no `generators` line".into() })
}

fn group_header(group: &ScalarGroup) -> String {
    if *group == ScalarGroup::trivial() {
        String::new()
    } else {
        format!("{group}\n")
    }
}

fn presentation_body(p: &Presentation) -> String {
    let group = p.group();
    let mut out = format!("generators {}\n", p.generators().join(", "));
    out.push_str("relations {\n");
    for (i, j, rel) in p.listed() {
        let (a, b) = (&p.generators()[i], &p.generators()[j]);
        let line = match rel {
            Relation::Additive(v) if *v < 0 => format!("{a} {b} = {b} {a} - {}", -v),
            Relation::Additive(v) => format!("{a} {b} = {b} {a} + {v}"),
            Relation::Multiplicative(l) => format!("{a} {b} = {} * {b} {a}", group.format(l)),
            Relation::Eulerian { w_is_first: true } => format!("[{a}, {b}] = {b}"),
            Relation::Eulerian { w_is_first: false } => format!("[{b}, {a}] = {a}"),
        };
        out.push_str(&format!("  {line}\n"));
    }
    out.push_str("}\n");
    out
}

fn qweyl_line(group: &ScalarGroup, spec: &QWeylSpec) -> String {
    let q: Vec<String> = spec.q.iter().map(|s| group.format(s)).collect();
    let rows: Vec<String> = spec
        .lambda
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|s| group.format(s)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("qweyl {{ n = {} ; q = {} ; Lambda = [{}] }}\n", spec.n, q.join(", "), rows.join(", "))
}

pub fn print_presentation(p: &Presentation) -> String {
    group_header(p.group()) + &presentation_body(p)
}

pub fn print_qweyl(group: &ScalarGroup, spec: &QWeylSpec) -> String {
    group_header(group) + &qweyl_line(group, spec)
}

/// `map { g -> image ... }` with images over `generators`.
pub fn print_map(entries: &[(String, Vec<Term>)], group: &ScalarGroup, generators: &[String]) -> String {
    let mut out = String::from("map {\n");
    for (g, image) in entries {
        out.push_str(&format!("  {g} -> {}\n", format_expr(image, group, generators)));
    }
    out.push_str("}\n");
    out
}

/// Normal form of a whole document; map images are resolved against the
/// document's own generators.
pub fn print_document(doc: &Document) -> Result<String> {
    let mut out = group_header(&doc.group);
    let generators: &[String] = doc.presentation.as_ref().map_or(&[], |p| p.generators());
    if let Some(p) = &doc.presentation {
        out.push_str(&presentation_body(p));
    }
    if let Some(spec) = &doc.qweyl {
        out.push_str(&qweyl_line(&doc.group, spec));
    }
    if let Some(map) = &doc.map {
        let entries = map
            .iter()
            .map(|e| Ok((e.source.clone(), resolve_expr(&e.image, &doc.group, generators)?)))
            .collect::<Result<Vec<_>>>()?;
        out.push_str(&print_map(&entries, &doc.group, generators));
    }
    Ok(out)
}

/// Render a resolved term, e.g. `-2 * q * y1^-1 x2`.
pub fn format_term(term: &Term, group: &ScalarGroup, generators: &[String]) -> String {
    let mut parts = Vec::new();
    let mut r = term.rational.clone();
    let mut s = term.scalar.clone();
    if let Some(m) = group.minus_one() {
        if r.is_negative() && !s.is_one() {
            r = -r;
            s = &s * &m;
        }
    }
    let scalar = group.format(&s);
    let word: Vec<String> = term
        .word
        .iter()
        .map(|&(g, e)| if e == 1 { generators[g].clone() } else { format!("{}^{e}", generators[g]) })
        .collect();
    if !r.is_one() || (scalar == "1" && word.is_empty()) {
        parts.push(r.to_string());
    }
    if scalar != "1" {
        parts.push(scalar);
    }
    let mut out = parts.join(" * ");
    if !word.is_empty() {
        if !out.is_empty() {
            out.push_str(" * ");
        }
        out.push_str(&word.join(" "));
    }
    out
}

/// Render a sum of terms, e.g. `y1 u - 2 * q * v`.
pub fn format_expr(terms: &[Term], group: &ScalarGroup, generators: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let text = format_term(t, group, generators);
        match (k, text.strip_prefix('-')) {
            (0, _) => out.push_str(&text),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const S22Q: &str = "\
scalars { free q }
generators x1, y1, x2, y2
relations {
  x1 y1 = y1 x1 + 1
  x2 y2 = y2 x2 + 1
  y1 y2 = q * y2 y1
  x1 x2 = q * x2 x1
  x1 y2 = q^-1 * y2 x1
  x2 y1 = q^-1 * y1 x2
}
";

    #[test]
    fn parses_s22q() {
        let p = parse_presentation(S22Q).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.listed().count(), 6);
        let q = p.group().symbol("q").unwrap();
        assert_eq!(p.relation(0, 1), Relation::Additive(1));
        assert_eq!(p.relation(1, 3), Relation::Multiplicative(q.clone()));
        assert_eq!(p.relation(3, 1), Relation::Multiplicative(q.inv()));
    }

    #[test]
    fn empty_relations_block() {
        let p = parse_presentation("generators a, b, c\nrelations {\n}\n").unwrap();
        assert_eq!(p.listed().count(), 0);
        let p = parse_presentation("generators a, b, c\n").unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn weight_one_is_folded() {
        let p = parse_presentation("generators x, y\nrelations { x y = 1 * y x }\n").unwrap();
        assert_eq!(p.listed().count(), 0);
    }

    #[test]
    fn minus_one_needs_even_root() {
        let err = parse_presentation("generators x, y\nrelations { x y = -1 * y x }\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let p = parse_presentation("scalars { root z : 2 }\ngenerators x, y\nrelations { x y = -1 * y x }\n").unwrap();
        assert_eq!(p.relation(0, 1), Relation::Multiplicative(p.group().minus_one().unwrap()));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_presentation("generators x, y\nrelations {\n  x y = t * y x\n}\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, col: 9, msg: "undeclared symbol `t`".into() });
        let err = parse_presentation("generators x, y\nrelations {\n  x x = y x + 1\n}\n").unwrap_err();
        assert!(err.to_string().contains("itself"), "{err}");
        let err = parse_presentation("generators x, y\nrelations {\n  x y = y x + 1\n  y x = x y + 2\n}\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let err = parse_presentation("generators x, y\nrelations {\n  x y = y x\n  y x = x y + 2\n}\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let err = parse_presentation("generators x, y\nrelations { x y = ! }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 19, .. }), "{err:?}");
    }

    #[test]
    fn eulerian_and_negative_weyl() {
        let p = parse_presentation("generators w, y, z\nrelations {\n [w, y] = y\n z w = w z - 2\n}\n").unwrap();
        assert_eq!(p.relation(0, 1), Relation::Eulerian { w_is_first: true });
        assert_eq!(p.relation(1, 0), Relation::Eulerian { w_is_first: false });
        assert_eq!(p.relation(0, 2), Relation::Additive(2));
    }

    #[test]
    fn print_then_parse_round_trips() {
        let p = parse_presentation(S22Q).unwrap();
        let text = print_presentation(&p);
        let again = parse_presentation(&text).unwrap();
        assert_eq!(p, again);
        assert_eq!(print_presentation(&again), text);
    }

    #[test]
    fn qweyl_block() {
        let doc = parse_document("scalars { free q, l }\nqweyl { n = 2 ; q = 1, q ; Lambda = [[1, l], [l^-1, 1]] }\n").unwrap();
        let spec = doc.qweyl.unwrap();
        assert_eq!(spec.n, 2);
        assert!(spec.q[0].is_one());
        assert_eq!(spec.lambda[0][1], doc.group.symbol("l").unwrap());
        let text = print_qweyl(&doc.group, &spec);
        assert_eq!(parse_document(&text).unwrap().qweyl.unwrap(), spec);
    }

    #[test]
    fn map_block() {
        let doc = parse_document("map {\n y1 -> y u\n y2 -> v^-1 ; w1 -> 2 * w - 1/2\n}\n").unwrap();
        let map = doc.map.unwrap();
        assert_eq!(map.len(), 3);
        assert_eq!(map[2].image.terms.len(), 2);
    }
}
