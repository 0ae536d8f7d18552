//! Text syntax for noncommutative polynomials and presentation files.
//!
//! Expressions use explicit `*` between factors; `x1x2` is a single (and
//! probably unknown) identifier. Division is allowed only by scalar
//! (generator-free) expressions. A single `=` is allowed and moves the right
//! side over: `a = b` parses as `a - b`.
//!
//! A presentation file has four sections, each opened by a header line:
//!
//! ```text
//! # comment
//! GENERATORS
//! x1, x2, x3, x4
//! PARAMS
//! alpha ~ alpha_bar
//! INVOLUTION
//! x1 -> x2; x2 -> x1; x3 -> x4; x4 -> x3
//! RELATIONS
//! x1*x2 - x2*x1 = alpha*(x3*x4 + x4*x3)
//! ```
//!
//! `PARAMS` and `INVOLUTION` are optional; a parameter declared without a
//! partner is real, and a missing `INVOLUTION` section means the identity map.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeff::{Coefficient, ConjugationSpec, Var};
use crate::ideal::{IdealError, Presentation};
use crate::ncpoly::{Alphabet, AlphabetError, Gen, InvolutionSpec, NcPoly, Word};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("unbalanced parentheses")]
    UnbalancedParens,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent must be an integer literal at most {MAX_EXPONENT}")]
    BadExponent,
    #[error("division by an expression containing generators")]
    NonScalarDivisor,
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("more than one '='")]
    MultipleEquals,
    #[error("empty expression")]
    Empty,
    #[error("malformed section header '{0}'")]
    BadSection(String),
    #[error("content before the first section header")]
    NoSection,
    #[error("section {0} appears twice")]
    DuplicateSection(&'static str),
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("invalid name '{0}'")]
    InvalidName(String),
    #[error("parameter '{0}' is paired twice")]
    ConflictingPair(String),
    #[error("malformed involution entry '{0}'")]
    BadInvolutionEntry(String),
    #[error("involution is not self-inverse at '{0}'")]
    NotInvolutive(String),
    #[error("involution does not map generator '{0}'")]
    InvolutionIncomplete(String),
    #[error("{0}")]
    Alphabet(String),
    #[error("{0}")]
    Presentation(String),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}

impl ParseError {
    fn new(kind: ParseErrorKind, line: usize, column: usize) -> Self {
        ParseError { kind, line, column }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Equals => "'='".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError::new(ParseErrorKind::UnexpectedChar(c), line, col));
        }
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    alphabet: &'a Alphabet,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(kind, self.line, self.col())
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Tok::RParen => self.err(ParseErrorKind::UnbalancedParens),
            Tok::End if self.depth > 0 => self.err(ParseErrorKind::UnbalancedParens),
            t => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
        }
    }

    fn equation(&mut self) -> Result<NcPoly, ParseError> {
        if *self.peek() == Tok::End {
            return Err(self.err(ParseErrorKind::Empty));
        }
        let left = self.expr()?;
        let out = if *self.peek() == Tok::Equals {
            self.bump();
            let right = self.expr()?;
            if *self.peek() == Tok::Equals {
                return Err(self.err(ParseErrorKind::MultipleEquals));
            }
            &left - &right
        } else {
            left
        };
        if *self.peek() != Tok::End {
            return Err(self.unexpected());
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let col = self.col();
                    let d = self.unary()?;
                    let at = |k| ParseError::new(k, self.line, col);
                    if d.is_zero() {
                        return Err(at(ParseErrorKind::ZeroDenominator));
                    }
                    if d.degree() > 0 || d.num_terms() != 1 {
                        return Err(at(ParseErrorKind::NonScalarDivisor));
                    }
                    let inv = d
                        .coeff(&Word::empty())
                        .inv()
                        .map_err(|_| at(ParseErrorKind::ZeroDenominator))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NcPoly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<NcPoly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek().clone() {
            Tok::Minus => return Err(self.err(ParseErrorKind::NegativeExponent)),
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.err(ParseErrorKind::BadExponent))?;
                self.bump();
                e
            }
            _ => return Err(self.err(ParseErrorKind::BadExponent)),
        };
        let mut acc = NcPoly::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        let col = self.col();
        if !matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen) {
            return Err(self.unexpected());
        }
        match self.bump() {
            Tok::Int(n) => Ok(NcPoly::constant(Coefficient::from_rational(
                num_rational::BigRational::from_integer(n),
            ))),
            Tok::Ident(name) => {
                if let Some(g) = self.alphabet.generator(&name) {
                    Ok(NcPoly::generator(g))
                } else if let Some(v) = self.alphabet.param(&name) {
                    Ok(NcPoly::constant(Coefficient::param(v)))
                } else {
                    Err(ParseError::new(ParseErrorKind::UnknownIdentifier(name), self.line, col))
                }
            }
            Tok::LParen => {
                self.depth += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(match self.peek() {
                        Tok::End => ParseError::new(ParseErrorKind::UnbalancedParens, self.line, col),
                        _ => self.unexpected(),
                    });
                }
                self.depth -= 1;
                self.bump();
                Ok(inner)
            }
            _ => unreachable!("checked above"),
        }
    }
}

fn parse_at(text: &str, alphabet: &Alphabet, line: usize, col0: usize) -> Result<NcPoly, ParseError> {
    let toks = tokenize(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        alphabet,
        depth: 0,
    };
    p.equation()
}

/// Parses a single expression; a top-level `a = b` yields `a − b`.
pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<NcPoly, ParseError> {
    parse_at(text, alphabet, 1, 1)
}

fn fmt_word(w: &Word, alphabet: &Alphabet) -> String {
    w.fmt_with(alphabet)
}

/// Canonical text: terms by decreasing degree, then increasing word order.
pub fn print_expr(p: &NcPoly, alphabet: &Alphabet) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = alphabet.params();
    let mut terms: Vec<(&Word, &Coefficient)> = p.terms().collect();
    terms.sort_by_key(|(w, _)| (Reverse(w.len()), *w));
    let mut out = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let negative = !c.is_compound() && c.looks_negative();
        let shown = if negative { -c } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let cs = shown.fmt_with(names);
        let cs = if shown.is_compound() { format!("({cs})") } else { cs };
        if w.is_empty() {
            out.push_str(&cs);
        } else if shown.is_one() {
            out.push_str(&fmt_word(w, alphabet));
        } else {
            out.push_str(&cs);
            out.push('*');
            out.push_str(&fmt_word(w, alphabet));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Generators,
    Params,
    Involution,
    Relations,
}

impl Section {
    fn from_header(word: &str) -> Option<Self> {
        match word {
            "GENERATORS" => Some(Section::Generators),
            "PARAMS" => Some(Section::Params),
            "INVOLUTION" => Some(Section::Involution),
            "RELATIONS" => Some(Section::Relations),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Section::Generators => "GENERATORS",
            Section::Params => "PARAMS",
            Section::Involution => "INVOLUTION",
            Section::Relations => "RELATIONS",
        }
    }
}

/// A non-empty piece of a line with its 1-based position.
#[derive(Debug, Clone)]
struct Item {
    text: String,
    line: usize,
    col: usize,
}

fn split_items(line: &str, line_no: usize, col0: usize, seps: &[char]) -> Vec<Item> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<char> = line.chars().collect();
    for i in 0..=chars.len() {
        if i == chars.len() || seps.contains(&chars[i]) {
            let raw: String = chars[start..i].iter().collect();
            let lead = raw.len() - raw.trim_start().len();
            let t = raw.trim();
            if !t.is_empty() {
                out.push(Item {
                    text: t.to_string(),
                    line: line_no,
                    col: col0 + start + raw[..lead].chars().count(),
                });
            }
            start = i + 1;
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut sections: BTreeMap<Section, Vec<Item>> = BTreeMap::new();
    let mut current: Option<Section> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let col0 = line.chars().count() - trimmed.chars().count() + 1;
        let head: String = trimmed
            .chars()
            .take_while(|c| c.is_ascii_alphabetic() || *c == '_')
            .collect();
        let is_upper_word = !head.is_empty() && head.chars().all(|c| c.is_ascii_uppercase() || c == '_');
        let rest_after_head = &trimmed[head.len()..];
        let looks_header =
            is_upper_word && (rest_after_head.trim().is_empty() || rest_after_head.trim_start().starts_with(':'));
        if looks_header {
            let sec = Section::from_header(&head).ok_or_else(|| {
                ParseError::new(ParseErrorKind::BadSection(trimmed.trim().to_string()), line_no, col0)
            })?;
            if sections.contains_key(&sec) {
                return Err(ParseError::new(
                    ParseErrorKind::DuplicateSection(sec.name()),
                    line_no,
                    col0,
                ));
            }
            sections.insert(sec, Vec::new());
            current = Some(sec);
            let rest = rest_after_head.trim_start();
            let rest = rest.strip_prefix(':').unwrap_or(rest);
            if !rest.trim().is_empty() {
                let off = trimmed.chars().count() - rest.chars().count();
                sections.get_mut(&sec).expect("inserted").push(Item {
                    text: rest.to_string(),
                    line: line_no,
                    col: col0 + off,
                });
            }
            continue;
        }
        let Some(sec) = current else {
            return Err(ParseError::new(ParseErrorKind::NoSection, line_no, col0));
        };
        sections.get_mut(&sec).expect("current section exists").push(Item {
            text: line.to_string(),
            line: line_no,
            col: 1,
        });
    }

    let missing = |s: Section| ParseError::new(ParseErrorKind::MissingSection(s.name()), 1, 1);
    let gen_lines = sections
        .get(&Section::Generators)
        .ok_or_else(|| missing(Section::Generators))?;
    let rel_lines = sections
        .get(&Section::Relations)
        .ok_or_else(|| missing(Section::Relations))?;

    // generators
    let mut gens: Vec<Item> = Vec::new();
    for it in gen_lines {
        gens.extend(split_items(&it.text, it.line, it.col, &[',', ' ', '\t']));
    }
    let mut seen: Vec<String> = Vec::new();
    for g in &gens {
        if !valid_name(&g.text) {
            return Err(ParseError::new(
                ParseErrorKind::InvalidName(g.text.clone()),
                g.line,
                g.col,
            ));
        }
        if seen.contains(&g.text) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateName(g.text.clone()),
                g.line,
                g.col,
            ));
        }
        seen.push(g.text.clone());
    }

    // params
    let mut params: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String, usize, usize)> = Vec::new();
    for it in sections.get(&Section::Params).into_iter().flatten() {
        for item in split_items(&it.text, it.line, it.col, &[',', ';']) {
            let err = |k| ParseError::new(k, item.line, item.col);
            let (a, b) = match item.text.split_once('~') {
                Some((a, b)) => (a.trim().to_string(), Some(b.trim().to_string())),
                None => (item.text.clone(), None),
            };
            for name in std::iter::once(&a).chain(b.iter()) {
                if !valid_name(name) {
                    return Err(err(ParseErrorKind::InvalidName(name.clone())));
                }
                if seen.contains(name) {
                    return Err(err(ParseErrorKind::DuplicateName(name.clone())));
                }
                seen.push(name.clone());
                params.push(name.clone());
            }
            if let Some(b) = b {
                if a == b {
                    return Err(err(ParseErrorKind::ConflictingPair(a)));
                }
                pairs.push((a, b, item.line, item.col));
            }
        }
    }

    let alphabet = Alphabet::new(gens.iter().map(|g| g.text.clone()).collect(), params.clone()).map_err(|e| {
        let at = gens.last().map(|g| (g.line, g.col)).unwrap_or((1, 1));
        ParseError::new(ParseErrorKind::Alphabet(e.to_string()), at.0, at.1)
    })?;
    let alphabet = Arc::new(alphabet);

    let var_pairs: Vec<(Var, Var)> = pairs
        .iter()
        .map(|(a, b, _, _)| {
            (
                alphabet.param(a).expect("declared"),
                alphabet.param(b).expect("declared"),
            )
        })
        .collect();
    let conjugation = ConjugationSpec::from_pairs(params.len(), &var_pairs).map_err(|e| {
        let (_, _, l, c) = &pairs[0];
        ParseError::new(ParseErrorKind::Alphabet(e.to_string()), *l, *c)
    })?;

    // involution
    let n = alphabet.num_generators();
    let involution = match sections.get(&Section::Involution) {
        None => InvolutionSpec::new((0..n as Gen).collect(), conjugation).expect("identity"),
        Some(lines) => {
            let mut map: Vec<Option<(Gen, usize, usize)>> = vec![None; n];
            for it in lines {
                for item in split_items(&it.text, it.line, it.col, &[';', ',']) {
                    let err = |k| ParseError::new(k, item.line, item.col);
                    let (a, b) = item
                        .text
                        .split_once("->")
                        .or_else(|| item.text.split_once('\u{2192}'))
                        .or_else(|| item.text.split_once("\u{21a6}"))
                        .ok_or_else(|| err(ParseErrorKind::BadInvolutionEntry(item.text.clone())))?;
                    let (a, b) = (a.trim(), b.trim());
                    let ga = alphabet
                        .generator(a)
                        .ok_or_else(|| err(ParseErrorKind::UnknownIdentifier(a.to_string())))?;
                    let gb = alphabet
                        .generator(b)
                        .ok_or_else(|| err(ParseErrorKind::UnknownIdentifier(b.to_string())))?;
                    match map[ga as usize] {
                        Some((prev, _, _)) if prev != gb => {
                            return Err(err(ParseErrorKind::NotInvolutive(a.to_string())));
                        }
                        _ => map[ga as usize] = Some((gb, item.line, item.col)),
                    }
                }
            }
            let mut perm = Vec::with_capacity(n);
            for (g, entry) in map.iter().enumerate() {
                match entry {
                    Some((t, _, _)) => perm.push(*t),
                    None => {
                        let at = lines.first().map(|l| (l.line, l.col)).unwrap_or((1, 1));
                        return Err(ParseError::new(
                            ParseErrorKind::InvolutionIncomplete(alphabet.generators()[g].clone()),
                            at.0,
                            at.1,
                        ));
                    }
                }
            }
            for (g, entry) in map.iter().enumerate() {
                let (t, l, c) = entry.expect("complete");
                if perm[t as usize] as usize != g {
                    return Err(ParseError::new(
                        ParseErrorKind::NotInvolutive(alphabet.generators()[g].clone()),
                        l,
                        c,
                    ));
                }
            }
            InvolutionSpec::new(perm, conjugation)
                .map_err(|e: AlphabetError| ParseError::new(ParseErrorKind::Alphabet(e.to_string()), 1, 1))?
        }
    };

    // relations
    let mut relations = Vec::new();
    let mut rel_pos = Vec::new();
    for it in rel_lines {
        let trimmed = it.text.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let col = it.col + it.text.chars().count() - trimmed.chars().count();
        relations.push(parse_at(trimmed, &alphabet, it.line, col)?);
        rel_pos.push((it.line, col));
    }

    Presentation::new(alphabet, relations, involution).map_err(|e| {
        let at = match &e {
            IdealError::ZeroRelation(i) => rel_pos[*i],
            _ => (1, 1),
        };
        ParseError::new(ParseErrorKind::Presentation(e.to_string()), at.0, at.1)
    })
}

/// Writes a presentation in the file format read by [`parse_presentation`].
pub fn print_presentation(p: &Presentation) -> String {
    let a = p.alphabet();
    let mut out = String::new();
    out.push_str("GENERATORS\n");
    out.push_str(&a.generators().join(", "));
    out.push('\n');
    if !a.params().is_empty() {
        out.push_str("PARAMS\n");
        let conj = p.involution().conjugation();
        let mut items = Vec::new();
        for (i, name) in a.params().iter().enumerate() {
            let v = i as Var;
            let partner = if (i) < conj.len() { conj.apply(v) } else { v };
            if partner == v {
                items.push(name.clone());
            } else if v < partner {
                items.push(format!("{name} ~ {}", a.params()[partner as usize]));
            }
        }
        out.push_str(&items.join(", "));
        out.push('\n');
    }
    out.push_str("INVOLUTION\n");
    let map = p.involution().generator_map();
    let entries: Vec<String> = map
        .iter()
        .enumerate()
        .map(|(g, t)| format!("{} -> {}", a.generators()[g], a.generators()[*t as usize]))
        .collect();
    out.push_str(&entries.join("; "));
    out.push('\n');
    out.push_str("RELATIONS\n");
    for r in p.relations() {
        out.push_str(&print_expr(r, a));
        out.push('\n');
    }
    out
}
