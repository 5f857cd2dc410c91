//! Concrete syntax for propositions.
//!
//! ```text
//! prop := or
//! or   := and ("\/" and)*
//! and  := star ("/\" star)*
//! star := atom ("*" atom)*
//! atom := "true" | ident "|->" int | ident "~" pmf | "(" prop ")"
//! pmf  := "ber(" rat ")" | "{" int ":" rat ("," int ":" rat)* "}"
//! rat  := int | int "/" int
//! ```
//!
//! `*` binds tighter than `/\`, which binds tighter than `\/`; all three are
//! left-associative. Store propositions use `|->` atoms only, probability
//! propositions `~` atoms only.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::prob::Pmf;
use crate::prop::{Dist, PointsTo, ProbProp, Prop, StoreProp};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    True,
    PointsTo,
    Tilde,
    Star,
    And,
    Or,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::True => "\"true\"".into(),
            Tok::PointsTo => "\"|->\"".into(),
            Tok::Tilde => "\"~\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::And => "\"/\\\"".into(),
            Tok::Or => "\"\\/\"".into(),
            Tok::Slash => "\"/\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::LBrace => "\"{\"".into(),
            Tok::RBrace => "\"}\"".into(),
            Tok::Colon => "\":\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
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
        let start = (line, col);
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            '|' if chars.get(i + 1..i + 3) == Some(&['-', '>']) => (Tok::PointsTo, 3),
            '/' if next == Some('\\') => (Tok::And, 2),
            '\\' if next == Some('/') => (Tok::Or, 2),
            '/' => (Tok::Slash, 1),
            '~' => (Tok::Tilde, 1),
            '*' => (Tok::Star, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ':' => (Tok::Colon, 1),
            ',' => (Tok::Comma, 1),
            c if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let n = text
                    .parse::<i64>()
                    .map_err(|_| parse_err(start.0, start.1, format!("integer {text} out of range")))?;
                (Tok::Int(n), j - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let tok = if text == "true" { Tok::True } else { Tok::Ident(text) };
                (tok, j - i)
            }
            c => return Err(parse_err(start.0, start.1, format!("unexpected character {c:?}"))),
        };
        out.push(Spanned { tok, line: start.0, column: start.1 });
        i += width;
        col += width;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Store,
    Prob,
}

enum AnyAtom {
    PointsTo(PointsTo),
    Dist(Dist),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    kind: Kind,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        parse_err(t.line, t.column, format!("expected {expected}, found {}", t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn rat(&mut self) -> Result<Rat> {
        let at = self.peek().clone();
        let n = self.int()?;
        if self.peek().tok != Tok::Slash {
            return Ok(Rat::int(n));
        }
        self.bump();
        let d = self.int()?;
        if d == 0 {
            return Err(parse_err(at.line, at.column, "zero denominator"));
        }
        Ok(Rat::new(n, d))
    }

    fn pmf(&mut self) -> Result<Pmf> {
        let at = self.peek().clone();
        let invalid = |e: Error| parse_err(at.line, at.column, format!("invalid distribution: {}", message(&e)));
        match &at.tok {
            Tok::Ident(s) if s == "ber" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let p = self.rat()?;
                self.expect(Tok::RParen)?;
                Pmf::ber(p).map_err(invalid)
            }
            Tok::LBrace => {
                self.bump();
                let mut entries = Vec::new();
                loop {
                    let k = self.int()?;
                    self.expect(Tok::Colon)?;
                    entries.push((k, self.rat()?));
                    match self.peek().tok {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrace => {
                            self.bump();
                            break;
                        }
                        _ => return Err(self.unexpected("\",\" or \"}\"")),
                    }
                }
                Pmf::new(entries).map_err(invalid)
            }
            _ => Err(self.unexpected("\"ber(\" or \"{\"")),
        }
    }

    fn atom(&mut self) -> Result<Prop<AnyAtom>> {
        let t = self.bump();
        match t.tok {
            Tok::True => Ok(Prop::Top),
            Tok::LParen => {
                let p = self.or()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Ident(var) => {
                let op = self.peek().clone();
                match (op.tok, self.kind) {
                    (Tok::PointsTo, Kind::Store) => {
                        self.bump();
                        Ok(Prop::Atom(AnyAtom::PointsTo(PointsTo { var, value: self.int()? })))
                    }
                    (Tok::Tilde, Kind::Prob) => {
                        self.bump();
                        Ok(Prop::Atom(AnyAtom::Dist(Dist { var, pmf: self.pmf()? })))
                    }
                    (Tok::PointsTo, Kind::Prob) => {
                        Err(parse_err(op.line, op.column, "\"|->\" is not allowed in a probability proposition"))
                    }
                    (Tok::Tilde, Kind::Store) => {
                        Err(parse_err(op.line, op.column, "\"~\" is not allowed in a store proposition"))
                    }
                    _ => Err(self.unexpected(if self.kind == Kind::Store { "\"|->\"" } else { "\"~\"" })),
                }
            }
            _ => {
                self.pos -= usize::from(t.tok != Tok::Eof);
                Err(self.unexpected("a proposition"))
            }
        }
    }

    fn star(&mut self) -> Result<Prop<AnyAtom>> {
        let mut p = self.atom()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            p = Prop::star(p, self.atom()?);
        }
        Ok(p)
    }

    fn and(&mut self) -> Result<Prop<AnyAtom>> {
        let mut p = self.star()?;
        while self.peek().tok == Tok::And {
            self.bump();
            p = Prop::and(p, self.star()?);
        }
        Ok(p)
    }

    fn or(&mut self) -> Result<Prop<AnyAtom>> {
        let mut p = self.and()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            p = Prop::or(p, self.and()?);
        }
        Ok(p)
    }
}

fn message(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        other => other.to_string(),
    }
}

fn parse_any(src: &str, kind: Kind) -> Result<Prop<AnyAtom>> {
    let mut p = Parser { toks: lex(src)?, pos: 0, kind };
    let prop = p.or()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(prop)
}

fn map_atoms<A, B>(p: Prop<A>, f: &impl Fn(A) -> B) -> Prop<B> {
    match p {
        Prop::Top => Prop::Top,
        Prop::Atom(a) => Prop::Atom(f(a)),
        Prop::Star(l, r) => Prop::star(map_atoms(*l, f), map_atoms(*r, f)),
        Prop::And(l, r) => Prop::and(map_atoms(*l, f), map_atoms(*r, f)),
        Prop::Or(l, r) => Prop::or(map_atoms(*l, f), map_atoms(*r, f)),
    }
}

pub fn parse_store_prop(src: &str) -> Result<StoreProp> {
    Ok(map_atoms(parse_any(src, Kind::Store)?, &|a| match a {
        AnyAtom::PointsTo(a) => a,
        AnyAtom::Dist(_) => unreachable!(),
    }))
}

pub fn parse_prob_prop(src: &str) -> Result<ProbProp> {
    Ok(map_atoms(parse_any(src, Kind::Prob)?, &|a| match a {
        AnyAtom::Dist(a) => a,
        AnyAtom::PointsTo(_) => unreachable!(),
    }))
}

/// Atoms that can be printed in the concrete syntax.
pub trait PrintAtom {
    fn print(&self, out: &mut String);
}

impl PrintAtom for PointsTo {
    fn print(&self, out: &mut String) {
        write!(out, "{} |-> {}", self.var, self.value).unwrap();
    }
}

impl PrintAtom for Dist {
    fn print(&self, out: &mut String) {
        write!(out, "{} ~ {{", self.var).unwrap();
        for (i, (k, m)) in self.pmf.support().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write!(out, "{k}: {m}").unwrap();
        }
        out.push('}');
    }
}

fn prec<A>(p: &Prop<A>) -> u8 {
    match p {
        Prop::Or(..) => 1,
        Prop::And(..) => 2,
        Prop::Star(..) => 3,
        Prop::Top | Prop::Atom(_) => 4,
    }
}

fn print_at<A: PrintAtom>(p: &Prop<A>, min: u8, out: &mut String) {
    let paren = prec(p) < min;
    if paren {
        out.push('(');
    }
    match p {
        Prop::Top => out.push_str("true"),
        Prop::Atom(a) => a.print(out),
        Prop::Star(l, r) | Prop::And(l, r) | Prop::Or(l, r) => {
            let (op, q) = match p {
                Prop::Star(..) => (" * ", 3),
                Prop::And(..) => (" /\\ ", 2),
                _ => (" \\/ ", 1),
            };
            print_at(l, q, out);
            out.push_str(op);
            print_at(r, q + 1, out);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Print with the fewest parentheses that reparse to the same tree.
pub fn print_prop<A: PrintAtom>(p: &Prop<A>) -> String {
    let mut out = String::new();
    print_at(p, 0, &mut out);
    out
}
