//! Modal formulas: the AST, its canonical order, parsing and rendering.
//!
//! Children are reference counted so that cloning a formula into the many
//! sets built during proof search is cheap. The derived `Ord` is the
//! canonical order: constructors compare as
//! `Var < Not < And < Or < Imp < Box < Dia`, then children lexicographically.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use crate::syntax::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Arc<str>),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Dia(Arc<Formula>),
}

/// Output notation for formulas, sequents and proofs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    Ascii,
    Unicode,
    Latex,
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn neg(self) -> Formula {
        Formula::Not(Arc::new(self))
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Arc::new(self))
    }

    pub fn dia(self) -> Formula {
        Formula::Dia(Arc::new(self))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn parse(src: &str) -> Result<Formula, ParseError> {
        crate::syntax::parse_formula(src)
    }

    /// Number of AST nodes.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => 1 + a.degree(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.degree() + b.degree(),
        }
    }

    /// Height of the AST; a variable has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_modal_free(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Box(_) | Formula::Dia(_) => false,
            Formula::Not(a) => a.is_modal_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.is_modal_free() && b.is_modal_free(),
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Var(_) => {}
            Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => a.collect_subformulas(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let mut out = String::new();
        render_into(self, style, &mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Box(_) | Formula::Dia(_) => 4,
            Formula::Var(_) => 5,
        }
    }
}

/// Canonical comparison, exposed as a function for callers that sort
/// foreign collections.
pub fn compare(a: &Formula, b: &Formula) -> std::cmp::Ordering {
    a.cmp(b)
}

struct Glyphs {
    not: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
    bx: &'static str,
    dia: &'static str,
}

fn glyphs(style: RenderStyle) -> Glyphs {
    match style {
        RenderStyle::Ascii => Glyphs { not: "~", and: " & ", or: " | ", imp: " -> ", bx: "[]", dia: "<>" },
        RenderStyle::Unicode => Glyphs { not: "¬", and: " ∧ ", or: " ∨ ", imp: " → ", bx: "□", dia: "◇" },
        RenderStyle::Latex => Glyphs {
            not: "\\neg ",
            and: " \\land ",
            or: " \\lor ",
            imp: " \\to ",
            bx: "\\Box ",
            dia: "\\Diamond ",
        },
    }
}

fn render_child(f: &Formula, style: RenderStyle, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        render_into(f, style, out);
        out.push(')');
    } else {
        render_into(f, style, out);
    }
}

fn render_into(f: &Formula, style: RenderStyle, out: &mut String) {
    let g = glyphs(style);
    match f {
        Formula::Var(name) => {
            if style == RenderStyle::Latex {
                out.push_str(&name.replace('_', "\\_"));
            } else {
                out.push_str(name);
            }
        }
        Formula::Not(a) | Formula::Box(a) | Formula::Dia(a) => {
            out.push_str(match f {
                Formula::Not(_) => g.not,
                Formula::Box(_) => g.bx,
                _ => g.dia,
            });
            render_child(a, style, a.precedence() < 4, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let p = f.precedence();
            render_child(a, style, a.precedence() < p, out);
            out.push_str(if matches!(f, Formula::And(..)) { g.and } else { g.or });
            render_child(b, style, b.precedence() <= p, out);
        }
        Formula::Imp(a, b) => {
            render_child(a, style, a.precedence() <= 1, out);
            out.push_str(g.imp);
            render_child(b, style, b.precedence() < 1, out);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render(RenderStyle::Ascii))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Formula::parse(&s).map_err(serde::de::Error::custom)
    }
}
