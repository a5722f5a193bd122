//! Set-based sequents, hypersequents, modal kernels and initial sequents.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::calculi::CalculusId;
use crate::formula::{Formula, ParseError, RenderStyle};

pub type FormulaSet = BTreeSet<Formula>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// `ante ⇒ succ`, both sides duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ante: FormulaSet,
    pub succ: FormulaSet,
}

impl Sequent {
    pub fn new<L, R>(ante: L, succ: R) -> Sequent
    where
        L: IntoIterator<Item = Formula>,
        R: IntoIterator<Item = Formula>,
    {
        Sequent { ante: ante.into_iter().collect(), succ: succ.into_iter().collect() }
    }

    pub fn parse(src: &str) -> Result<Sequent, ParseError> {
        crate::syntax::parse_sequent(src)
    }

    pub fn side(&self, side: Side) -> &FormulaSet {
        match side {
            Side::Left => &self.ante,
            Side::Right => &self.succ,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut FormulaSet {
        match side {
            Side::Left => &mut self.ante,
            Side::Right => &mut self.succ,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ante.is_empty() && self.succ.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ante.len() + self.succ.len()
    }

    /// Componentwise inclusion.
    pub fn is_subset(&self, other: &Sequent) -> bool {
        self.ante.is_subset(&other.ante) && self.succ.is_subset(&other.succ)
    }

    pub fn with(&self, side: Side, f: Formula) -> Sequent {
        let mut s = self.clone();
        s.side_mut(side).insert(f);
        s
    }

    pub fn without(&self, side: Side, f: &Formula) -> Sequent {
        let mut s = self.clone();
        s.side_mut(side).remove(f);
        s
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ante.iter().chain(self.succ.iter())
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_vars(&mut out);
        }
        out
    }

    pub fn subformulas(&self) -> FormulaSet {
        let mut out = FormulaSet::new();
        for f in self.formulas() {
            f.collect_subformulas(&mut out);
        }
        out
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let list = |set: &FormulaSet| set.iter().map(|f| f.render(style)).collect::<Vec<_>>().join(", ");
        let arrow = match style {
            RenderStyle::Ascii => "=>",
            RenderStyle::Unicode => "⇒",
            RenderStyle::Latex => "\\Rightarrow",
        };
        let (l, r) = (list(&self.ante), list(&self.succ));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => arrow.to_string(),
            (true, false) => format!("{arrow} {r}"),
            (false, true) => format!("{l} {arrow}"),
            (false, false) => format!("{l} {arrow} {r}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequent::parse(s)
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Sequent::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite multiset of sequents, kept sorted so that equality is multiset
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypersequent {
    components: Vec<Sequent>,
}

impl Hypersequent {
    pub fn new(mut components: Vec<Sequent>) -> Hypersequent {
        components.sort();
        Hypersequent { components }
    }

    pub fn single(s: Sequent) -> Hypersequent {
        Hypersequent { components: vec![s] }
    }

    pub fn parse(src: &str) -> Result<Hypersequent, ParseError> {
        crate::syntax::parse_hypersequent(src)
    }

    pub fn components(&self) -> &[Sequent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// This multiset with one occurrence of `s` removed, if present.
    pub fn remove_one(&self, s: &Sequent) -> Option<Hypersequent> {
        let idx = self.components.iter().position(|c| c == s)?;
        let mut components = self.components.clone();
        components.remove(idx);
        Some(Hypersequent { components })
    }

    pub fn plus(&self, s: Sequent) -> Hypersequent {
        let mut components = self.components.clone();
        components.push(s);
        Hypersequent::new(components)
    }

    /// Multiset union.
    pub fn union(&self, other: &Hypersequent) -> Hypersequent {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Hypersequent::new(components)
    }

    pub fn subformulas(&self) -> FormulaSet {
        let mut out = FormulaSet::new();
        for c in &self.components {
            for f in c.formulas() {
                f.collect_subformulas(&mut out);
            }
        }
        out
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let sep = if style == RenderStyle::Latex { " \\mid " } else { " ; " };
        self.components.iter().map(|c| c.render(style)).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Hypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

impl std::str::FromStr for Hypersequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Hypersequent::parse(s)
    }
}

/// The conclusion of a proof node: a sequent, or a hypersequent for the
/// hypersequent calculus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Judgment {
    Sequent(Sequent),
    Hyper(Hypersequent),
}

impl Judgment {
    /// Parse in the syntax expected by calculus `c`.
    pub fn parse(src: &str, c: CalculusId) -> Result<Judgment, ParseError> {
        if c.is_hyper() {
            Hypersequent::parse(src).map(Judgment::Hyper)
        } else {
            Sequent::parse(src).map(Judgment::Sequent)
        }
    }

    pub fn as_sequent(&self) -> Option<&Sequent> {
        match self {
            Judgment::Sequent(s) => Some(s),
            Judgment::Hyper(_) => None,
        }
    }

    pub fn as_hyper(&self) -> Option<&Hypersequent> {
        match self {
            Judgment::Hyper(h) => Some(h),
            Judgment::Sequent(_) => None,
        }
    }

    /// The hypersequent view: a sequent is a one-component hypersequent.
    pub fn to_hyper(&self) -> Hypersequent {
        match self {
            Judgment::Sequent(s) => Hypersequent::single(s.clone()),
            Judgment::Hyper(h) => h.clone(),
        }
    }

    pub fn subformulas(&self) -> FormulaSet {
        match self {
            Judgment::Sequent(s) => s.subformulas(),
            Judgment::Hyper(h) => h.subformulas(),
        }
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match self {
            Judgment::Sequent(s) => s.render(style),
            Judgment::Hyper(h) => h.render(style),
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Ascii))
    }
}

impl From<Sequent> for Judgment {
    fn from(s: Sequent) -> Judgment {
        Judgment::Sequent(s)
    }
}

impl From<Hypersequent> for Judgment {
    fn from(h: Hypersequent) -> Judgment {
        Judgment::Hyper(h)
    }
}

/// Where a kernel formula sits: its side and outer shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// `□γ` on the left.
    LeftBox,
    /// `¬◇γ` on the left.
    LeftNegDia,
    /// `◇γ` on the left.
    LeftDia,
    /// `¬□γ` on the left.
    LeftNegBox,
    /// `◇δ` on the right.
    RightDia,
    /// `¬□δ` on the right.
    RightNegBox,
    /// `□δ` on the right.
    RightBox,
    /// `¬◇δ` on the right.
    RightNegDia,
}

impl Slot {
    pub const ALL: [Slot; 8] = [
        Slot::LeftBox,
        Slot::LeftNegDia,
        Slot::LeftDia,
        Slot::LeftNegBox,
        Slot::RightDia,
        Slot::RightNegBox,
        Slot::RightBox,
        Slot::RightNegDia,
    ];

    pub fn side(self) -> Side {
        match self {
            Slot::LeftBox | Slot::LeftNegDia | Slot::LeftDia | Slot::LeftNegBox => Side::Left,
            _ => Side::Right,
        }
    }

    /// Classify `f` on `side`, returning its slot and the formula under the
    /// modal prefix.
    pub fn classify(side: Side, f: &Formula) -> Option<(Slot, Formula)> {
        let (shape, inner) = match f {
            Formula::Box(a) => (0, a),
            Formula::Dia(a) => (1, a),
            Formula::Not(n) => match &**n {
                Formula::Box(a) => (2, a),
                Formula::Dia(a) => (3, a),
                _ => return None,
            },
            _ => return None,
        };
        let slot = match (side, shape) {
            (Side::Left, 0) => Slot::LeftBox,
            (Side::Left, 1) => Slot::LeftDia,
            (Side::Left, 2) => Slot::LeftNegBox,
            (Side::Left, _) => Slot::LeftNegDia,
            (Side::Right, 0) => Slot::RightBox,
            (Side::Right, 1) => Slot::RightDia,
            (Side::Right, 2) => Slot::RightNegBox,
            (Side::Right, _) => Slot::RightNegDia,
        };
        Some((slot, (**inner).clone()))
    }

    /// Put the modal prefix back around `inner`.
    pub fn wrap(self, inner: &Formula) -> Formula {
        let f = inner.clone();
        match self {
            Slot::LeftBox | Slot::RightBox => f.boxed(),
            Slot::LeftDia | Slot::RightDia => f.dia(),
            Slot::LeftNegBox | Slot::RightNegBox => f.boxed().neg(),
            Slot::LeftNegDia | Slot::RightNegDia => f.dia().neg(),
        }
    }
}

/// Which kernel shapes are recognised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `□Γ1, ¬◇Γ2 ⇒ ◇Δ1, ¬□Δ2`, used by the S4 and K families.
    S4,
    /// Same shapes as `S4`; kept distinct so callers can state intent.
    K,
    /// All eight slots, as needed by the S5 transition rules.
    S5,
    /// `□Γ ⇒ ◇Δ` only, the context of the classical kernel rules.
    Kripke,
}

impl KernelKind {
    pub fn allows(self, slot: Slot) -> bool {
        match self {
            KernelKind::S4 | KernelKind::K => {
                matches!(slot, Slot::LeftBox | Slot::LeftNegDia | Slot::RightDia | Slot::RightNegBox)
            }
            KernelKind::S5 => true,
            KernelKind::Kripke => matches!(slot, Slot::LeftBox | Slot::RightDia),
        }
    }
}

/// The modal kernel of a sequent: for each slot, the set of formulas found
/// under that slot's prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModalKernel {
    slots: [FormulaSet; 8],
}

impl ModalKernel {
    fn index(slot: Slot) -> usize {
        Slot::ALL.iter().position(|s| *s == slot).unwrap()
    }

    pub fn get(&self, slot: Slot) -> &FormulaSet {
        &self.slots[Self::index(slot)]
    }

    pub fn insert(&mut self, slot: Slot, inner: Formula) {
        self.slots[Self::index(slot)].insert(inner);
    }

    /// Formulas of `slot` rewrapped with the prefix of `as_slot`.
    pub fn wrapped(&self, slot: Slot, as_slot: Slot) -> impl Iterator<Item = Formula> + '_ {
        self.get(slot).iter().map(move |g| as_slot.wrap(g))
    }

    /// The kernel read back as a sequent.
    pub fn to_sequent(&self) -> Sequent {
        let mut s = Sequent::default();
        for slot in Slot::ALL {
            for g in self.get(slot) {
                s.side_mut(slot.side()).insert(slot.wrap(g));
            }
        }
        s
    }
}

/// Split `s` into its kernel and the residue that does not fit `kind`.
pub fn extract_kernel(s: &Sequent, kind: KernelKind) -> (ModalKernel, Sequent) {
    let mut kernel = ModalKernel::default();
    let mut residue = Sequent::default();
    for side in [Side::Left, Side::Right] {
        for f in s.side(side) {
            match Slot::classify(side, f) {
                Some((slot, inner)) if kind.allows(slot) => kernel.insert(slot, inner),
                _ => {
                    residue.side_mut(side).insert(f.clone());
                }
            }
        }
    }
    (kernel, residue)
}

/// The shapes of initial sequents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InitialKind {
    /// `p ⇒ p`
    Axiom,
    /// `¬p ⇒ ¬p`
    NegAxiom,
    /// `¬p, p ⇒`
    ContraLeft,
    /// `⇒ ¬p, p`
    ContraRight,
}

impl InitialKind {
    pub const ALL: [InitialKind; 4] =
        [InitialKind::Axiom, InitialKind::NegAxiom, InitialKind::ContraLeft, InitialKind::ContraRight];

    /// The exact initial sequent of this kind for variable `p`.
    pub fn pattern(self, p: &Formula) -> Sequent {
        let np = p.clone().neg();
        match self {
            InitialKind::Axiom => Sequent::new([p.clone()], [p.clone()]),
            InitialKind::NegAxiom => Sequent::new([np.clone()], [np]),
            InitialKind::ContraLeft => Sequent::new([np, p.clone()], []),
            InitialKind::ContraRight => Sequent::new([], [np, p.clone()]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InitialKind::Axiom => "axiom",
            InitialKind::NegAxiom => "neg-axiom",
            InitialKind::ContraLeft => "contra-left",
            InitialKind::ContraRight => "contra-right",
        }
    }

    /// The variable of an exact instance of this kind, if `s` is one.
    pub fn matches(self, s: &Sequent) -> Option<Formula> {
        let p = match self {
            InitialKind::Axiom => s.ante.iter().next()?.clone(),
            InitialKind::NegAxiom | InitialKind::ContraLeft => match s.ante.iter().find(|f| matches!(f, Formula::Not(_)))? {
                Formula::Not(a) => (**a).clone(),
                _ => unreachable!(),
            },
            InitialKind::ContraRight => s.succ.iter().find(|f| matches!(f, Formula::Var(_)))?.clone(),
        };
        (matches!(p, Formula::Var(_)) && self.pattern(&p) == *s).then_some(p)
    }

    /// Some instance of this kind contained in `s`, as `(variable)`.
    pub fn contained_in(self, s: &Sequent) -> Option<Formula> {
        let found = match self {
            InitialKind::Axiom => s.ante.iter().find(|f| matches!(f, Formula::Var(_)) && s.succ.contains(*f)),
            InitialKind::NegAxiom => s
                .ante
                .iter()
                .find(|f| matches!(f, Formula::Not(a) if matches!(**a, Formula::Var(_))) && s.succ.contains(*f)),
            InitialKind::ContraLeft => s
                .ante
                .iter()
                .find(|f| matches!(f, Formula::Var(_)) && s.ante.contains(&(*f).clone().neg())),
            InitialKind::ContraRight => s
                .succ
                .iter()
                .find(|f| matches!(f, Formula::Var(_)) && s.succ.contains(&(*f).clone().neg())),
        }?;
        Some(match self {
            InitialKind::NegAxiom => match found {
                Formula::Not(a) => (**a).clone(),
                _ => unreachable!(),
            },
            _ => found.clone(),
        })
    }
}

/// The initial kinds available in a calculus.
pub fn initial_kinds(c: CalculusId) -> &'static [InitialKind] {
    match c {
        CalculusId::GS4 => &[InitialKind::Axiom],
        _ => &InitialKind::ALL,
    }
}

/// Whether `s` is exactly an initial sequent of `c`.
pub fn is_initial(s: &Sequent, c: CalculusId) -> Option<InitialKind> {
    initial_kinds(c).iter().copied().find(|k| k.matches(s).is_some())
}

/// Whether `s` contains an initial sequent of `c`, i.e. is initial up to
/// weakening. Returns the first kind found together with its exact pattern.
pub fn contains_initial(s: &Sequent, c: CalculusId) -> Option<(InitialKind, Sequent)> {
    initial_kinds(c).iter().find_map(|k| k.contained_in(s).map(|p| (*k, k.pattern(&p))))
}

/// `a` subsumes `b` when `b` is `a` plus weakening.
pub fn subsumes(a: &Sequent, b: &Sequent) -> bool {
    a.is_subset(b)
}
