//! Rule identifiers, their external names and per-calculus inventories.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::Formula;
use crate::sequent::{InitialKind, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CalculusId {
    LTS4,
    GTS4,
    LTS4STAR,
    GS4,
    TCL,
    GTK,
    GTKT,
    GTS5,
    HTS5,
}

impl CalculusId {
    pub const ALL: [CalculusId; 9] = [
        CalculusId::LTS4,
        CalculusId::GTS4,
        CalculusId::LTS4STAR,
        CalculusId::GS4,
        CalculusId::TCL,
        CalculusId::GTK,
        CalculusId::GTKT,
        CalculusId::GTS5,
        CalculusId::HTS5,
    ];

    /// Lowercase identifier used on the command line and in JSON.
    pub fn key(self) -> &'static str {
        match self {
            CalculusId::LTS4 => "lts4",
            CalculusId::GTS4 => "gts4",
            CalculusId::LTS4STAR => "lts4star",
            CalculusId::GS4 => "gs4",
            CalculusId::TCL => "tcl",
            CalculusId::GTK => "gtk",
            CalculusId::GTKT => "gtkt",
            CalculusId::GTS5 => "gts5",
            CalculusId::HTS5 => "hts5",
        }
    }

    /// Conventional display name.
    pub fn display_name(self) -> &'static str {
        match self {
            CalculusId::LTS4 => "lTS4",
            CalculusId::GTS4 => "gTS4",
            CalculusId::LTS4STAR => "lTS4*",
            CalculusId::GS4 => "GS4",
            CalculusId::TCL => "TCL",
            CalculusId::GTK => "gTK",
            CalculusId::GTKT => "gTKT",
            CalculusId::GTS5 => "gTS5",
            CalculusId::HTS5 => "HTS5",
        }
    }

    pub fn from_key(s: &str) -> Option<CalculusId> {
        let lower = s.trim().to_ascii_lowercase().replace('*', "star");
        CalculusId::ALL.into_iter().find(|c| c.key() == lower)
    }

    pub fn is_hyper(self) -> bool {
        self == CalculusId::HTS5
    }

    /// Whether the calculus has twist rules for negated compound formulas.
    pub fn is_twist(self) -> bool {
        self != CalculusId::GS4
    }

    pub fn has(self, rule: RuleId) -> bool {
        rules_of(self).contains(&rule)
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl std::str::FromStr for CalculusId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CalculusId::from_key(s).ok_or_else(|| {
            let known: Vec<_> = CalculusId::ALL.iter().map(|c| c.key()).collect();
            format!("unknown calculus `{s}` (known: {})", known.join(", "))
        })
    }
}

macro_rules! rules {
    ($($variant:ident => $name:literal, $label:literal;)*) => {
        /// Every rule of every supported calculus.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum RuleId {
            Initial(InitialKind),
            $($variant,)*
        }

        impl RuleId {
            const NAMED: &'static [(RuleId, &'static str, &'static str)] = &[
                $((RuleId::$variant, $name, $label),)*
            ];
        }
    };
}

rules! {
    Cut => "cut", "(cut)";
    WeakenLeft => "we-left", "(we-left)";
    WeakenRight => "we-right", "(we-right)";
    Merge => "merge", "(merge)";
    InWeakenLeft => "in-we-left", "(in-we-left)";
    InWeakenRight => "in-we-right", "(in-we-right)";
    ExWeakenLeft => "ex-we-left", "(ex-we-left)";
    ExWeakenRight => "ex-we-right", "(ex-we-right)";
    AndLeft => "and-left", "(∧left)";
    AndRight => "and-right", "(∧right)";
    OrLeft => "or-left", "(∨left)";
    OrRight => "or-right", "(∨right)";
    ImpLeft => "imp-left", "(→left)";
    ImpRight => "imp-right", "(→right)";
    BoxLeft => "box-left", "(□left)";
    BoxRight => "box-right", "(□right)";
    DiaLeft => "dia-left", "(◇left)";
    DiaRight => "dia-right", "(◇right)";
    BoxRightK => "box-right-k", "(□right^k)";
    DiaLeftK => "dia-left-k", "(◇left^k)";
    NegLeft => "neg-left", "(¬left)";
    NegRight => "neg-right", "(¬right)";
    NegNegLeftT => "neg-neg-left-t", "(¬¬left^t)";
    NegNegRightT => "neg-neg-right-t", "(¬¬right^t)";
    NegAndLeftT => "neg-and-left-t", "(¬∧left^t)";
    NegAndRightT => "neg-and-right-t", "(¬∧right^t)";
    NegOrLeftT => "neg-or-left-t", "(¬∨left^t)";
    NegOrRightT => "neg-or-right-t", "(¬∨right^t)";
    NegImpLeftT => "neg-imp-left-t", "(¬→left^t)";
    NegImpRightT => "neg-imp-right-t", "(¬→right^t)";
    NegBoxLeftT => "neg-box-left-t", "(¬□left^t)";
    NegBoxRightT => "neg-box-right-t", "(¬□right^t)";
    NegDiaLeftT => "neg-dia-left-t", "(¬◇left^t)";
    NegDiaRightT => "neg-dia-right-t", "(¬◇right^t)";
    BoxRightG => "box-right-T", "(□right^T)";
    DiaLeftG => "dia-left-T", "(◇left^T)";
    NegBoxLeftG => "neg-box-left-T", "(¬□left^T)";
    NegDiaRightG => "neg-dia-right-T", "(¬◇right^T)";
    NegBoxLeftStar => "neg-box-left-tstar", "(¬□left^t*)";
    NegDiaRightStar => "neg-dia-right-tstar", "(¬◇right^t*)";
    BoxKRight => "box-K-right-T", "(□K-right^T)";
    DiaKLeft => "dia-K-left-T", "(◇K-left^T)";
    NegBoxKLeft => "neg-box-K-left-T", "(¬□K-left^T)";
    NegDiaKRight => "neg-dia-K-right-T", "(¬◇K-right^T)";
    BoxS5Right => "box-S5-right-T", "(□S5-right^T)";
    DiaS5Left => "dia-S5-left-T", "(◇S5-left^T)";
    NegBoxS5Left => "neg-box-S5-left-T", "(¬□S5-left^T)";
    NegDiaS5Right => "neg-dia-S5-right-T", "(¬◇S5-right^T)";
    NegNegLeft => "neg-neg-left", "(¬¬left)";
    NegNegRight => "neg-neg-right", "(¬¬right)";
    NegAndLeft => "neg-and-left", "(¬∧left)";
    NegAndRight => "neg-and-right", "(¬∧right)";
    NegOrLeft => "neg-or-left", "(¬∨left)";
    NegOrRight => "neg-or-right", "(¬∨right)";
    NegImpLeft => "neg-imp-left", "(¬→left)";
    NegImpRight => "neg-imp-right", "(¬→right)";
    NegBoxS5LeftH => "neg-box-S5-left-h", "(¬□S5-left^h)";
    NegBoxS5RightH => "neg-box-S5-right-h", "(¬□S5-right^h)";
    NegDiaS5LeftH => "neg-dia-S5-left-h", "(¬◇S5-left^h)";
    NegDiaS5RightH => "neg-dia-S5-right-h", "(¬◇S5-right^h)";
}

impl RuleId {
    /// Stable ASCII name used in JSON and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Initial(k) => k.name(),
            other => Self::NAMED.iter().find(|(r, _, _)| *r == other).map(|(_, n, _)| *n).unwrap(),
        }
    }

    /// Conventional label with logical symbols, e.g. `(¬□left^t)`.
    pub fn label(self) -> &'static str {
        match self {
            RuleId::Initial(_) => "(initial)",
            other => Self::NAMED.iter().find(|(r, _, _)| *r == other).map(|(_, _, l)| *l).unwrap(),
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        if let Some(k) = InitialKind::ALL.iter().find(|k| k.name() == name) {
            return Some(RuleId::Initial(*k));
        }
        Self::NAMED.iter().find(|(_, n, _)| *n == name).map(|(r, _, _)| *r)
    }

    pub fn is_initial(self) -> bool {
        matches!(self, RuleId::Initial(_))
    }

    /// Cut, weakening and merge. Everything else (except initial
    /// sequents) counts as a logical rule.
    pub fn is_structural(self) -> bool {
        use RuleId::*;
        matches!(
            self,
            Cut | WeakenLeft | WeakenRight | Merge | InWeakenLeft | InWeakenRight | ExWeakenLeft | ExWeakenRight
        )
    }

    pub fn is_logical(self) -> bool {
        !self.is_initial() && !self.is_structural()
    }

    /// Side of the principal formula in the conclusion, for logical rules.
    pub fn principal_side(self) -> Option<Side> {
        use RuleId::*;
        match self {
            AndLeft | OrLeft | ImpLeft | BoxLeft | DiaLeft | DiaLeftK | NegLeft | NegNegLeftT | NegAndLeftT
            | NegOrLeftT | NegImpLeftT | NegBoxLeftT | NegDiaLeftT | DiaLeftG | NegBoxLeftG | NegBoxLeftStar
            | DiaKLeft | NegBoxKLeft | DiaS5Left | NegBoxS5Left | NegNegLeft | NegAndLeft | NegOrLeft | NegImpLeft
            | NegBoxS5LeftH | NegDiaS5LeftH | WeakenLeft | InWeakenLeft | ExWeakenLeft => Some(Side::Left),
            AndRight | OrRight | ImpRight | BoxRight | DiaRight | BoxRightK | NegRight | NegNegRightT
            | NegAndRightT | NegOrRightT | NegImpRightT | NegBoxRightT | NegDiaRightT | BoxRightG | NegDiaRightG
            | NegDiaRightStar | BoxKRight | NegDiaKRight | BoxS5Right | NegDiaS5Right | NegNegRight | NegAndRight
            | NegOrRight | NegImpRight | NegBoxS5RightH | NegDiaS5RightH | WeakenRight | InWeakenRight
            | ExWeakenRight => Some(Side::Right),
            Initial(_) | Cut | Merge => None,
        }
    }

    /// Whether the rule involves a modal operator in its principal formula.
    pub fn is_modal(self) -> bool {
        let label = self.label();
        label.contains('□') || label.contains('◇')
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

use RuleId::*;

const INITIALS: [RuleId; 4] = [
    Initial(InitialKind::Axiom),
    Initial(InitialKind::NegAxiom),
    Initial(InitialKind::ContraLeft),
    Initial(InitialKind::ContraRight),
];

const LTS4_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxRight, DiaLeft, DiaRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxLeftT, NegBoxRightT, NegDiaLeftT, NegDiaRightT,
];

const GTS4_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxRightG, DiaLeftG, DiaRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxLeftG, NegBoxRightT, NegDiaLeftT, NegDiaRightG,
];

const LTS4STAR_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxRight, DiaLeft, DiaRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxLeftStar, NegBoxRightT, NegDiaLeftT, NegDiaRightStar,
];

const GS4_RULES: &[RuleId] = &[
    INITIALS[0],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxRightK, DiaLeftK, DiaRight,
    NegLeft, NegRight,
];

const TCL_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
];

const GTK_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxKRight, DiaKLeft,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxKLeft, NegDiaKRight,
];

const GTKT_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxKRight, DiaKLeft, DiaRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxKLeft, NegBoxRightT, NegDiaLeftT, NegDiaKRight,
];

const GTS5_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, WeakenLeft, WeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxS5Right, DiaS5Left, DiaRight,
    NegNegLeftT, NegNegRightT, NegAndLeftT, NegAndRightT, NegOrLeftT, NegOrRightT, NegImpLeftT, NegImpRightT,
    NegBoxS5Left, NegBoxRightT, NegDiaLeftT, NegDiaS5Right,
];

const HTS5_RULES: &[RuleId] = &[
    INITIALS[0], INITIALS[1], INITIALS[2], INITIALS[3],
    Cut, Merge, InWeakenLeft, InWeakenRight, ExWeakenLeft, ExWeakenRight,
    AndLeft, AndRight, OrLeft, OrRight, ImpLeft, ImpRight,
    BoxLeft, BoxRight, DiaLeft, DiaRight,
    NegNegLeft, NegNegRight, NegAndLeft, NegAndRight, NegOrLeft, NegOrRight, NegImpLeft, NegImpRight,
    NegBoxS5LeftH, NegBoxS5RightH, NegDiaS5LeftH, NegDiaS5RightH,
];

/// The exact rule inventory of a calculus.
pub fn rules_of(c: CalculusId) -> &'static [RuleId] {
    match c {
        CalculusId::LTS4 => LTS4_RULES,
        CalculusId::GTS4 => GTS4_RULES,
        CalculusId::LTS4STAR => LTS4STAR_RULES,
        CalculusId::GS4 => GS4_RULES,
        CalculusId::TCL => TCL_RULES,
        CalculusId::GTK => GTK_RULES,
        CalculusId::GTKT => GTKT_RULES,
        CalculusId::GTS5 => GTS5_RULES,
        CalculusId::HTS5 => HTS5_RULES,
    }
}

/// The logical rule of `c` whose principal formula is `f` on `side`, if
/// any. Each calculus has at most one such rule per shape and side.
pub fn rule_for(c: CalculusId, side: Side, f: &Formula) -> Option<RuleId> {
    use CalculusId as C;
    let modal = c != C::TCL;
    let rule = match (side, f) {
        (_, Formula::Var(_)) => return None,
        (Side::Left, Formula::And(..)) => AndLeft,
        (Side::Left, Formula::Or(..)) => OrLeft,
        (Side::Left, Formula::Imp(..)) => ImpLeft,
        (Side::Right, Formula::And(..)) => AndRight,
        (Side::Right, Formula::Or(..)) => OrRight,
        (Side::Right, Formula::Imp(..)) => ImpRight,
        (Side::Left, Formula::Box(_)) if modal && c != C::GTK => BoxLeft,
        (Side::Right, Formula::Dia(_)) if modal && c != C::GTK => DiaRight,
        (Side::Left, Formula::Box(_)) | (Side::Right, Formula::Dia(_)) => return None,
        (Side::Left, Formula::Dia(_)) => match c {
            C::LTS4 | C::LTS4STAR | C::HTS5 => DiaLeft,
            C::GTS4 => DiaLeftG,
            C::GS4 => DiaLeftK,
            C::GTK | C::GTKT => DiaKLeft,
            C::GTS5 => DiaS5Left,
            C::TCL => return None,
        },
        (Side::Right, Formula::Box(_)) => match c {
            C::LTS4 | C::LTS4STAR | C::HTS5 => BoxRight,
            C::GTS4 => BoxRightG,
            C::GS4 => BoxRightK,
            C::GTK | C::GTKT => BoxKRight,
            C::GTS5 => BoxS5Right,
            C::TCL => return None,
        },
        (side, Formula::Not(inner)) => {
            if c == C::GS4 {
                return Some(if side == Side::Left { NegLeft } else { NegRight });
            }
            let hyper = c == C::HTS5;
            let pick = |t: RuleId, h: RuleId| if hyper { h } else { t };
            match (side, &**inner) {
                (_, Formula::Var(_)) => return None,
                (Side::Left, Formula::Not(_)) => pick(NegNegLeftT, NegNegLeft),
                (Side::Right, Formula::Not(_)) => pick(NegNegRightT, NegNegRight),
                (Side::Left, Formula::And(..)) => pick(NegAndLeftT, NegAndLeft),
                (Side::Right, Formula::And(..)) => pick(NegAndRightT, NegAndRight),
                (Side::Left, Formula::Or(..)) => pick(NegOrLeftT, NegOrLeft),
                (Side::Right, Formula::Or(..)) => pick(NegOrRightT, NegOrRight),
                (Side::Left, Formula::Imp(..)) => pick(NegImpLeftT, NegImpLeft),
                (Side::Right, Formula::Imp(..)) => pick(NegImpRightT, NegImpRight),
                (Side::Left, Formula::Box(_)) => match c {
                    C::LTS4 => NegBoxLeftT,
                    C::GTS4 => NegBoxLeftG,
                    C::LTS4STAR => NegBoxLeftStar,
                    C::GTK | C::GTKT => NegBoxKLeft,
                    C::GTS5 => NegBoxS5Left,
                    C::HTS5 => NegBoxS5LeftH,
                    C::TCL | C::GS4 => return None,
                },
                (Side::Right, Formula::Box(_)) => match c {
                    C::LTS4 | C::GTS4 | C::LTS4STAR | C::GTKT | C::GTS5 => NegBoxRightT,
                    C::HTS5 => NegBoxS5RightH,
                    _ => return None,
                },
                (Side::Left, Formula::Dia(_)) => match c {
                    C::LTS4 | C::GTS4 | C::LTS4STAR | C::GTKT | C::GTS5 => NegDiaLeftT,
                    C::HTS5 => NegDiaS5LeftH,
                    _ => return None,
                },
                (Side::Right, Formula::Dia(_)) => match c {
                    C::LTS4 => NegDiaRightT,
                    C::GTS4 => NegDiaRightG,
                    C::LTS4STAR => NegDiaRightStar,
                    C::GTK | C::GTKT => NegDiaKRight,
                    C::GTS5 => NegDiaS5Right,
                    C::HTS5 => NegDiaS5RightH,
                    _ => return None,
                },
            }
        }
    };
    Some(rule)
}
