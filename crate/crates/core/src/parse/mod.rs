//! The plain-text input language: numbers in `ℚ(θ)`, IETs, `G_n` elements
//! and whole files declaring a field, maps and relators. See
//! `docs/grammar.md` for the grammar.

mod lexer;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::gn::GnElem;
use crate::groups::{GeneratorSet, GroupError, Relation, Word};
use crate::iet::{restricted_rotation, Iet};
use crate::numfield::{AlgebraicNumber, Field, FieldSpec, Preset, Rat};

use lexer::{tokenize, Tok, Token};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Everything declared in an input file.
#[derive(Debug, Clone)]
pub struct Document {
    pub field: Field,
    /// `let` bindings in order.
    pub numbers: Vec<(String, AlgebraicNumber)>,
    /// Named maps in order.
    pub maps: Vec<(String, Iet)>,
    /// Maps given directly as `gn { … }`.
    pub gn: Vec<(String, GnElem)>,
    pub relations: Vec<Relation>,
    /// Names listed by a `generators` item, if any.
    pub generators: Option<Vec<String>>,
}

impl Document {
    pub fn map(&self, name: &str) -> Option<&Iet> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn number(&self, name: &str) -> Option<&AlgebraicNumber> {
        self.numbers.iter().find(|(n, _)| n == name).map(|(_, x)| x)
    }

    /// The listed generators, or every map when no list was given, with the
    /// relators whose letters they cover.
    pub fn generator_set(&self) -> Result<GeneratorSet, GroupError> {
        let names: Vec<String> = match &self.generators {
            Some(g) => g.clone(),
            None => self.maps.iter().map(|(n, _)| n.clone()).collect(),
        };
        let gens = names
            .iter()
            .map(|n| {
                self.map(n)
                    .map(|f| (n.clone(), f.clone()))
                    .ok_or_else(|| GroupError::Undeclared(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorSet::new(gens)?.with_relations(self.relations.clone())
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.field.spec();
        let list = |v: &[Rat]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(
            f,
            "field {{ minpoly: [{}]; interval: [{}, {}]; }};",
            list(&spec.minimal_polynomial),
            spec.isolating_interval.0,
            spec.isolating_interval.1
        )?;
        for (n, x) in &self.numbers {
            writeln!(f, "let {n} = {};", x.to_coeff_string())?;
        }
        for (n, m) in &self.maps {
            writeln!(f, "{n} = {};", iet_text(m))?;
        }
        if let Some(g) = &self.generators {
            writeln!(f, "generators {};", g.join(", "))?;
        }
        for r in &self.relations {
            writeln!(f, "relator {r};")?;
        }
        Ok(())
    }
}

/// `iet { cuts: [..]; translations: [..] }` with coefficient vectors, which
/// parses back to the same map.
pub fn iet_text(f: &Iet) -> String {
    let list = |v: &[AlgebraicNumber]| {
        v.iter()
            .map(AlgebraicNumber::to_coeff_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "iet {{ cuts: [{}]; translations: [{}] }}",
        list(f.cuts()),
        list(f.translations())
    )
}

pub fn gn_text(g: &GnElem) -> String {
    let alpha: Vec<String> = g
        .alpha()
        .iter()
        .map(AlgebraicNumber::to_coeff_string)
        .collect();
    let sigma: Vec<String> = g
        .sigma()
        .one_based()
        .iter()
        .map(ToString::to_string)
        .collect();
    format!(
        "gn {{ n: {}; alpha: [{}]; sigma: [{}] }}",
        g.n(),
        alpha.join(", "),
        sigma.join(", ")
    )
}

pub fn parse_number(field: &Field, src: &str) -> Result<AlgebraicNumber, ParseError> {
    let mut p = Parser::new(src, field.clone())?;
    let x = p.expr()?;
    p.finish()?;
    Ok(x)
}

pub fn parse_iet(field: &Field, src: &str) -> Result<Iet, ParseError> {
    let mut p = Parser::new(src, field.clone())?;
    let f = p.map_expr()?.0;
    p.finish()?;
    Ok(f)
}

pub fn parse_gn(field: &Field, src: &str) -> Result<GnElem, ParseError> {
    let mut p = Parser::new(src, field.clone())?;
    p.expect_ident("gn")?;
    let g = p.gn_body()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_word(src: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(src, Preset::Rational.field())?;
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// A preset name or a `{ minpoly: …; interval: … }` block.
pub fn parse_field(src: &str) -> Result<Field, ParseError> {
    let mut p = Parser::new(src, Preset::Rational.field())?;
    let f = p.field_decl()?;
    p.finish()?;
    Ok(f)
}

/// Parses a whole file. `default_field` applies when the file has no
/// `field` item; a file with neither is an error. Names must be declared
/// before use.
pub fn parse_document(src: &str, default_field: Option<&Field>) -> Result<Document, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        field: Preset::Rational.field(),
        scope: HashMap::new(),
        maps: HashMap::new(),
        in_document: true,
    };
    let field = if p.eat_ident("field") {
        let f = p.field_decl()?;
        p.expect_sym(';')?;
        f
    } else if let Some(f) = default_field {
        f.clone()
    } else {
        return Err(p.error_here("no field given: start the file with a field item or pass one"));
    };
    p.field = field.clone();
    let mut doc = Document {
        field,
        numbers: Vec::new(),
        maps: Vec::new(),
        gn: Vec::new(),
        relations: Vec::new(),
        generators: None,
    };
    while p.peek() != &Tok::Eof {
        let head = p.next_ident("an item")?;
        match head.as_str() {
            "field" => return Err(p.error_prev("the field item must come first")),
            "let" => {
                let name = p.fresh_name()?;
                p.expect_sym('=')?;
                let x = p.expr()?;
                p.scope.insert(name.clone(), x.clone());
                doc.numbers.push((name, x));
            }
            "relator" => {
                let lhs = p.word()?;
                let rhs = if p.eat_sym('=') {
                    p.word()?
                } else {
                    Word::identity()
                };
                doc.relations.push(Relation { lhs, rhs });
            }
            "generators" => {
                let mut names = Vec::new();
                loop {
                    let n = p.next_ident("a generator name")?;
                    if !p.maps.contains_key(&n) {
                        return Err(p.error_prev(format!("undeclared map '{n}'")));
                    }
                    names.push(n);
                    if !p.eat_sym(',') {
                        break;
                    }
                }
                doc.generators = Some(names);
            }
            _ => {
                p.pos -= 1;
                let name = p.fresh_name()?;
                p.expect_sym('=')?;
                let (f, g) = p.map_expr()?;
                if let Some(g) = g {
                    doc.gn.push((name.clone(), g));
                }
                p.maps.insert(name.clone(), f.clone());
                doc.maps.push((name, f));
            }
        }
        p.expect_sym(';')?;
    }
    Ok(doc)
}

const KEYWORDS: [&str; 10] = [
    "t",
    "let",
    "field",
    "relator",
    "generators",
    "iet",
    "gn",
    "rotation",
    "restricted",
    "identity",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    field: Field,
    scope: HashMap<String, AlgebraicNumber>,
    maps: HashMap<String, Iet>,
    /// Words must only use declared maps.
    in_document: bool,
}

impl Parser {
    fn new(src: &str, field: Field) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            field,
            scope: HashMap::new(),
            maps: HashMap::new(),
            in_document: false,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(t.line, t.column, msg)
    }

    fn error_prev(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos.saturating_sub(1)];
        ParseError::new(t.line, t.column, msg)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek()))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(x) if x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_ident(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{s}'")))
        }
    }

    fn next_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn fresh_name(&mut self) -> Result<String, ParseError> {
        let name = self.next_ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) {
            return Err(self.error_prev(format!("'{name}' is reserved")));
        }
        if self.scope.contains_key(&name) || self.maps.contains_key(&name) {
            return Err(self.error_prev(format!("'{name}' is already defined")));
        }
        Ok(name)
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        match self.bump() {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an integer"))
            }
        }
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let n = self.signed_int()?;
        n.to_i64()
            .filter(|k| k.unsigned_abs() <= 1 << 20)
            .ok_or_else(|| self.error_prev(format!("integer {n} is too large here")))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let k = self.small_int()?;
        usize::try_from(k).map_err(|_| self.error_prev("expected a nonnegative integer"))
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<AlgebraicNumber, ParseError> {
        let mut x = self.term()?;
        loop {
            if self.eat_sym('+') {
                x = &x + &self.term()?;
            } else if self.eat_sym('-') {
                x = &x - &self.term()?;
            } else {
                return Ok(x);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<AlgebraicNumber, ParseError> {
        let mut x = self.unary()?;
        loop {
            if self.eat_sym('*') {
                x = &x * &self.unary()?;
            } else if self.eat_sym('/') {
                let y = self.unary()?;
                if y.is_zero() {
                    return Err(self.error_prev("division by zero"));
                }
                x = &x / &y;
            } else {
                return Ok(x);
            }
        }
    }

    fn unary(&mut self) -> Result<AlgebraicNumber, ParseError> {
        if self.eat_sym('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let k = self.small_int()?;
            return base.pow(k).map_err(|e| self.error_prev(e.to_string()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlgebraicNumber, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(self.field.from_rational(Rat::from_integer(n)))
            }
            Tok::Ident(s) if s == "t" => {
                self.pos += 1;
                Ok(self.field.theta())
            }
            Tok::Ident(s) => {
                self.pos += 1;
                self.scope
                    .get(&s)
                    .cloned()
                    .ok_or_else(|| self.error_prev(format!("unknown number '{s}'")))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect_sym(')')?;
                Ok(x)
            }
            Tok::Sym('[') => self.coeff_vector(),
            _ => Err(self.unexpected("a number")),
        }
    }

    /// `[c0, c1, …]` meaning `c0 + c1 θ + …`, with rational entries.
    fn coeff_vector(&mut self) -> Result<AlgebraicNumber, ParseError> {
        self.expect_sym('[')?;
        let d = self.field.degree();
        let mut coeffs = Vec::with_capacity(d);
        if !self.eat_sym(']') {
            loop {
                coeffs.push(self.rational()?);
                if self.eat_sym(']') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        if coeffs.len() > d {
            return Err(self.error_prev(format!(
                "coefficient vector has {} entries, field degree is {d}",
                coeffs.len()
            )));
        }
        coeffs.resize(d, Rat::zero());
        self.field
            .from_coeffs(coeffs)
            .map_err(|e| self.error_prev(e.to_string()))
    }

    /// A number expression that must be rational.
    fn rational(&mut self) -> Result<Rat, ParseError> {
        let start = self.pos;
        let x = self.expr()?;
        x.as_rational().cloned().ok_or_else(|| {
            let t = &self.toks[start];
            ParseError::new(t.line, t.column, "expected a rational number")
        })
    }

    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_sym(']') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    /// `{ key: value; … }` where each key is read once by `field`.
    fn record(
        &mut self,
        keys: &[&str],
        mut field: impl FnMut(&mut Self, &str) -> Result<(), ParseError>,
    ) -> Result<(), ParseError> {
        self.expect_sym('{')?;
        let mut seen = Vec::new();
        while !self.eat_sym('}') {
            let key = self.next_ident("a field name")?;
            if !keys.contains(&key.as_str()) {
                return Err(self.error_prev(format!(
                    "unknown key '{key}', expected one of {}",
                    keys.join(", ")
                )));
            }
            if seen.contains(&key) {
                return Err(self.error_prev(format!("key '{key}' given twice")));
            }
            self.expect_sym(':')?;
            field(self, &key)?;
            seen.push(key);
            if !self.eat_sym(';') && !self.eat_sym(',') {
                self.expect_sym('}')?;
                break;
            }
        }
        if let Some(k) = keys.iter().find(|k| !seen.iter().any(|s| s == *k)) {
            return Err(self.error_prev(format!("missing key '{k}'")));
        }
        Ok(())
    }

    fn field_decl(&mut self) -> Result<Field, ParseError> {
        let start = self.pos;
        if let Tok::Ident(name) = self.peek().clone() {
            self.pos += 1;
            return Preset::from_name(&name)
                .map(Preset::field)
                .ok_or_else(|| self.error_prev(format!("unknown field preset '{name}'")));
        }
        let saved = std::mem::replace(&mut self.field, Preset::Rational.field());
        let mut poly = Vec::new();
        let mut interval = Vec::new();
        let res = self.record(&["minpoly", "interval"], |p, key| {
            let v = p.list(Parser::rational)?;
            if key == "minpoly" {
                poly = v;
            } else {
                interval = v;
            }
            Ok(())
        });
        self.field = saved;
        res?;
        let t = &self.toks[start];
        if interval.len() != 2 {
            return Err(ParseError::new(
                t.line,
                t.column,
                "interval needs exactly two endpoints",
            ));
        }
        let hi = interval.pop().expect("two");
        let lo = interval.pop().expect("two");
        Field::new(FieldSpec {
            minimal_polynomial: poly,
            isolating_interval: (lo, hi),
        })
        .map_err(|e| ParseError::new(t.line, t.column, e.to_string()))
    }

    fn gn_body(&mut self) -> Result<GnElem, ParseError> {
        let start = self.pos;
        let mut n = 0;
        let mut alpha = Vec::new();
        let mut sigma = Vec::new();
        self.record(&["n", "alpha", "sigma"], |p, key| {
            match key {
                "n" => n = p.index()?,
                "alpha" => alpha = p.list(Parser::expr)?,
                _ => sigma = p.list(Parser::index)?,
            }
            Ok(())
        })?;
        let t = &self.toks[start];
        let err = |m: String| ParseError::new(t.line, t.column, m);
        if alpha.len() != n || sigma.len() != n {
            return Err(err(format!(
                "n is {n} but alpha has {} entries and sigma {}",
                alpha.len(),
                sigma.len()
            )));
        }
        GnElem::from_parts(alpha, &sigma).map_err(|e| err(e.to_string()))
    }

    fn iet_body(&mut self) -> Result<Iet, ParseError> {
        let start = self.pos;
        let mut cuts = Vec::new();
        let mut translations = Vec::new();
        self.record(&["cuts", "translations"], |p, key| {
            let v = p.list(Parser::expr)?;
            if key == "cuts" {
                cuts = v;
            } else {
                translations = v;
            }
            Ok(())
        })?;
        let t = &self.toks[start];
        Iet::new(cuts, translations).map_err(|e| ParseError::new(t.line, t.column, e.to_string()))
    }

    /// A product of map factors, rightmost acting first. The `G_n` element
    /// is kept when the whole expression is a single `gn { … }`.
    fn map_expr(&mut self) -> Result<(Iet, Option<GnElem>), ParseError> {
        let (mut acc, mut gn) = self.map_factor()?;
        loop {
            self.eat_sym('*');
            if !matches!(self.peek(), Tok::Ident(_) | Tok::Sym('(')) {
                return Ok((acc, gn));
            }
            let (f, _) = self.map_factor()?;
            acc = acc.compose(&f);
            gn = None;
        }
    }

    fn map_factor(&mut self) -> Result<(Iet, Option<GnElem>), ParseError> {
        let (f, gn) = self.map_atom()?;
        if self.eat_sym('^') {
            let k = self.small_int()?;
            return Ok((f.power(k), None));
        }
        Ok((f, gn))
    }

    fn map_atom(&mut self) -> Result<(Iet, Option<GnElem>), ParseError> {
        if self.eat_sym('(') {
            let f = self.map_expr()?.0;
            self.expect_sym(')')?;
            return Ok((f, None));
        }
        let name = self.next_ident("a map")?;
        match name.as_str() {
            "iet" => Ok((self.iet_body()?, None)),
            "gn" => {
                let g = self.gn_body()?;
                Ok((g.embed(), Some(g)))
            }
            "identity" => Ok((Iet::identity(&self.field), None)),
            "rotation" => {
                self.expect_sym('(')?;
                let a = self.expr()?;
                self.expect_sym(')')?;
                Ok((Iet::rotation(&a), None))
            }
            "restricted" => {
                let at = self.pos - 1;
                self.expect_sym('(')?;
                let a = self.expr()?;
                self.expect_sym(',')?;
                let lo = self.expr()?;
                self.expect_sym(',')?;
                let hi = self.expr()?;
                self.expect_sym(')')?;
                let t = &self.toks[at];
                restricted_rotation(&a, &lo, &hi)
                    .map(|f| (f, None))
                    .map_err(|e| ParseError::new(t.line, t.column, e.to_string()))
            }
            _ => self
                .maps
                .get(&name)
                .cloned()
                .map(|f| (f, None))
                .ok_or_else(|| self.error_prev(format!("unknown map '{name}'"))),
        }
    }

    /// Letters `name` or `name^k`, optionally joined by `*` or `.`; `1` is
    /// the empty word. Inside a document every letter must name a map.
    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        let check = self.in_document;
        loop {
            match self.peek().clone() {
                Tok::Int(n) if n == BigInt::from(1) => {
                    self.pos += 1;
                }
                Tok::Ident(g) => {
                    self.pos += 1;
                    if check && !self.maps.contains_key(&g) {
                        return Err(self.error_prev(format!("undeclared map '{g}'")));
                    }
                    let e = if self.eat_sym('^') {
                        if self.eat_sym('(') {
                            let k = self.small_int()?;
                            self.expect_sym(')')?;
                            k
                        } else {
                            self.small_int()?
                        }
                    } else {
                        1
                    };
                    letters.push((g, e));
                }
                _ => break,
            }
            if !self.eat_sym('*') {
                self.eat_sym('.');
            }
            if matches!(self.peek_at(0), Tok::Sym(';') | Tok::Sym('=') | Tok::Eof) {
                break;
            }
        }
        if letters.is_empty() && self.toks[self.pos.saturating_sub(1)].tok != Tok::Int(1.into()) {
            return Err(self.unexpected("a word"));
        }
        Ok(Word::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Field {
        Preset::Sqrt2.field()
    }

    #[test]
    fn number_expressions() {
        let f = sqrt2();
        let x = parse_number(&f, "(t - 1)^2 / 3 + 1/2").unwrap();
        // (θ - 1)² = 3 - 2θ, so the value is 1 - 2θ/3 + 1/2
        assert_eq!(x, &f.ratio(3, 2) - &(&f.theta() * &f.ratio(2, 3)));
        assert_eq!(parse_number(&f, "[3/2, -2/3]").unwrap(), x);
        assert_eq!(parse_number(&f, "-t^2").unwrap(), f.from_int(-2));
        assert_eq!(parse_number(&f, "θ * θ").unwrap(), f.from_int(2));
        assert_eq!(
            parse_number(&f, "t^-1").unwrap(),
            &f.theta() / &f.from_int(2)
        );
        let err = parse_number(&f, "1 / (t - t)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 11));
        assert!(parse_number(&f, "[1, 2, 3]").is_err());
        assert!(parse_number(&f, "2 t").is_err());
    }

    #[test]
    fn maps_round_trip() {
        let f = sqrt2();
        let g = parse_iet(&f, "iet { cuts: [0, 2 - t]; translations: [t - 1, t - 2] }").unwrap();
        assert_eq!(g, Iet::rotation(&(&f.theta() - &f.one())));
        assert_eq!(parse_iet(&f, &iet_text(&g)).unwrap(), g);
        let e = parse_gn(&f, "gn { n: 3; alpha: [0, t/4, 1/5]; sigma: [2, 3, 1] }").unwrap();
        assert_eq!(parse_gn(&f, &gn_text(&e)).unwrap(), e);
        assert_eq!(parse_iet(&f, "rotation(t - 1)").unwrap(), g);
        let sq = parse_iet(&f, "rotation(1/4) rotation(1/4)^3").unwrap();
        assert!(sq.is_identity());
    }

    #[test]
    fn documents() {
        let src = "\
field { minpoly: [-2, 0, 1]; interval: [1, 2]; };
# the two generators
let a = (t - 1) / 4;
a1 = gn { n: 2; alpha: [a, -a]; sigma: [1, 2] };
b = restricted(a, 0, 1/2) ;
c = a1 b^-1;
generators a1, b;
relator a1 b a1^-1 b^-1;
relator b = b;
";
        let doc = parse_document(src, None).unwrap();
        assert_eq!(doc.field.degree(), 2);
        assert_eq!(doc.maps.len(), 3);
        assert_eq!(doc.gn.len(), 1);
        assert_eq!(doc.relations.len(), 2);
        let gens = doc.generator_set().unwrap();
        assert_eq!(gens.names(), &["a1".to_string(), "b".to_string()]);
        let again = parse_document(&doc.to_string(), None).unwrap();
        assert_eq!(again.maps, doc.maps);
        assert_eq!(again.relations, doc.relations);
    }

    #[test]
    fn document_errors() {
        let e = parse_document("a = rotation(1/3);", None).unwrap_err();
        assert!(e.message.contains("no field"));
        let e = parse_document("field sqrt2;\nlet a = 1;\nlet a = 2;", None).unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
        let e = parse_document("field sqrt2;\nrelator x y;", None).unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
        let e = parse_document("field nope;", None).unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        let e = parse_document(
            "field sqrt2;\nf = iet { cuts: [0, 1/2]; translations: [1/2, 0] };",
            None,
        )
        .unwrap_err();
        assert_eq!(e.line, 2);
        let q = Preset::Rational.field();
        assert!(parse_document("f = rotation(1/3);", Some(&q)).is_ok());
    }
}
