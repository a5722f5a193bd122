//! Lexer and recursive-descent parser shared by formulas, sequents and
//! hypersequents.
//!
//! ASCII connectives are `~ & | -> [] <>`, sequent arrows are `=>`, and
//! hypersequent components are separated by `;`. The Unicode glyphs
//! `¬ ∧ ∨ → □ ◇ ⇒` are accepted as aliases.

use std::fmt;
use std::sync::Arc;

use crate::formula::Formula;
use crate::sequent::{FormulaSet, Hypersequent, Sequent};

/// A parse failure with the byte offset where it happened and the tokens
/// that would have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Box,
    Dia,
    LParen,
    RParen,
    Comma,
    Arrow,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Box => "'[]'".into(),
            Tok::Dia => "'<>'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Arrow => "'=>'".into(),
            Tok::Semi => "';'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const EXPECT_OPERAND: &[&str] = &["identifier", "'('", "'~'", "'[]'", "'<>'"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match (c, two) {
            (_, Some(b"->")) => {
                i += 2;
                Tok::Imp
            }
            (_, Some(b"=>")) => {
                i += 2;
                Tok::Arrow
            }
            (_, Some(b"[]")) => {
                i += 2;
                Tok::Box
            }
            (_, Some(b"<>")) => {
                i += 2;
                Tok::Dia
            }
            ('a'..='z', _) => {
                let mut end = i + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                let name = src[i..end].to_string();
                i = end;
                Tok::Ident(name)
            }
            _ => {
                let tok = match c {
                    '~' | '¬' => Tok::Not,
                    '&' | '∧' => Tok::And,
                    '|' | '∨' => Tok::Or,
                    '→' => Tok::Imp,
                    '□' => Tok::Box,
                    '◇' | '◊' => Tok::Dia,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '⇒' => Tok::Arrow,
                    ';' => Tok::Semi,
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            expected: vec!["a formula token"],
                            found: format!("character {c:?}"),
                        })
                    }
                };
                i += c.len_utf8();
                tok
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (tok, offset) = &self.toks[self.pos];
        ParseError { offset: *offset, expected: expected.to_vec(), found: tok.describe() }
    }

    fn expect_end(&self, also: &[&'static str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            let mut expected = also.to_vec();
            expected.push("end of input");
            Err(self.error(&expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::Imp(Arc::new(lhs), Arc::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::Or(Arc::new(acc), Arc::new(rhs));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::And(Arc::new(acc), Arc::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::Not(Arc::new(self.unary()?)))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::Box(Arc::new(self.unary()?)))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::Dia(Arc::new(self.unary()?)))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Var(Arc::from(name.as_str())))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["'&'", "'|'", "'->'", "')'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(EXPECT_OPERAND)),
        }
    }

    /// A possibly empty comma-separated list, stopping before `stop`.
    fn formula_list(&mut self, stops: &[Tok]) -> Result<FormulaSet, ParseError> {
        let mut set = FormulaSet::new();
        if stops.contains(self.peek()) {
            return Ok(set);
        }
        loop {
            set.insert(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(set);
            }
        }
    }

    fn sequent(&mut self, allow_semi: bool) -> Result<Sequent, ParseError> {
        let ante = self.formula_list(&[Tok::Arrow])?;
        if *self.peek() != Tok::Arrow {
            return Err(self.error(&["'&'", "'|'", "'->'", "','", "'=>'"]));
        }
        self.bump();
        let succ = self.formula_list(&[Tok::Eof, Tok::Semi])?;
        match self.peek() {
            Tok::Eof => {}
            Tok::Semi if allow_semi => {}
            _ => {
                let mut expected = vec!["'&'", "'|'", "'->'", "','"];
                if allow_semi {
                    expected.push("';'");
                }
                expected.push("end of input");
                return Err(self.error(&expected));
            }
        }
        Ok(Sequent { ante, succ })
    }
}

pub(crate) fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect_end(&["'&'", "'|'", "'->'"])?;
    Ok(f)
}

pub(crate) fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src)?;
    p.sequent(false)
}

pub(crate) fn parse_hypersequent(src: &str) -> Result<Hypersequent, ParseError> {
    let mut p = Parser::new(src)?;
    let mut comps = vec![p.sequent(true)?];
    while *p.peek() == Tok::Semi {
        p.bump();
        comps.push(p.sequent(true)?);
    }
    Ok(Hypersequent::new(comps))
}
