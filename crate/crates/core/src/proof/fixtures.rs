//! Reference derivations of `¬¬¬◇¬p ⇒ ¬◇¬¬◇¬¬¬p` in lTS4, gTS4 and GS4,
//! stored node for node.

use crate::calculi::{CalculusId, RuleId};
use crate::formula::Formula;
use crate::sequent::{InitialKind, Judgment, Sequent};

use super::Proof;

fn seq(src: &str) -> Judgment {
    Judgment::Sequent(Sequent::parse(src).expect("fixture sequent"))
}

/// A linear derivation from a list of `(conclusion, rule, principal)`
/// steps read top to bottom of the page, i.e. root first.
fn chain(steps: &[(&str, RuleId, &str)], leaf: &str, kind: InitialKind) -> Proof {
    let mut proof = Proof::leaf(seq(leaf), kind);
    for (conc, rule, principal) in steps.iter().rev() {
        let principal = Formula::parse(principal).expect("fixture principal");
        proof = Proof::node(seq(conc), *rule, Some(principal), vec![proof]);
    }
    proof
}

/// `¬¬¬◇¬p ⇒ ¬◇¬¬◇¬¬¬p`
pub fn example_sequent() -> Sequent {
    Sequent::parse("~~~<>~p => ~<>~~<>~~~p").unwrap()
}

pub fn lts4_example() -> Proof {
    use RuleId::*;
    chain(
        &[
            ("~~~<>~p => ~<>~~<>~~~p", NegNegLeftT, "~~~<>~p"),
            ("~<>~p => ~<>~~<>~~~p", NegDiaRightT, "~<>~~<>~~~p"),
            ("~~<>~~~p, ~<>~p =>", NegNegLeftT, "~~<>~~~p"),
            ("<>~~~p, ~<>~p =>", DiaLeft, "<>~~~p"),
            ("~~~p, ~<>~p =>", NegNegLeftT, "~~~p"),
            ("~p, ~<>~p =>", NegDiaLeftT, "~<>~p"),
        ],
        "~p => ~p",
        InitialKind::NegAxiom,
    )
}

pub fn gts4_example() -> Proof {
    use RuleId::*;
    chain(
        &[
            ("~~~<>~p => ~<>~~<>~~~p", NegNegLeftT, "~~~<>~p"),
            ("~<>~p => ~<>~~<>~~~p", NegDiaRightG, "~<>~~<>~~~p"),
            ("~~<>~~~p => <>~p", NegNegLeftT, "~~<>~~~p"),
            ("<>~~~p => <>~p", DiaLeftG, "<>~~~p"),
            ("~~~p => <>~p", NegNegLeftT, "~~~p"),
            ("~p => <>~p", DiaRight, "<>~p"),
        ],
        "~p => ~p",
        InitialKind::NegAxiom,
    )
}

pub fn gs4_example() -> Proof {
    use RuleId::*;
    chain(
        &[
            ("~~~<>~p => ~<>~~<>~~~p", NegRight, "~<>~~<>~~~p"),
            ("~~~<>~p, <>~~<>~~~p =>", NegLeft, "~~~<>~p"),
            ("<>~~<>~~~p => ~~<>~p", NegRight, "~~<>~p"),
            ("<>~~<>~~~p, ~<>~p =>", NegLeft, "~<>~p"),
            ("<>~~<>~~~p => <>~p", DiaLeftK, "<>~~<>~~~p"),
            ("~~<>~~~p => <>~p", NegLeft, "~~<>~~~p"),
            ("=> <>~p, ~<>~~~p", NegRight, "~<>~~~p"),
            ("<>~~~p => <>~p", DiaLeftK, "<>~~~p"),
            ("~~~p => <>~p", DiaRight, "<>~p"),
            ("~~~p => ~p", NegLeft, "~~~p"),
            ("=> ~p, ~~p", NegRight, "~~p"),
            ("~p => ~p", NegLeft, "~p"),
            ("=> ~p, p", NegRight, "~p"),
        ],
        "p => p",
        InitialKind::Axiom,
    )
}

/// The reference derivation for a calculus, if there is one.
pub fn fixture(c: CalculusId) -> Option<Proof> {
    match c {
        CalculusId::LTS4 => Some(lts4_example()),
        CalculusId::GTS4 => Some(gts4_example()),
        CalculusId::GS4 => Some(gs4_example()),
        _ => None,
    }
}
