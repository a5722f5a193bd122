//! Rule schemas for the sequent calculi, read bottom-up.
//!
//! Both the checker and the search build premises through these
//! functions, so a move found by search is an instance the checker accepts.

use crate::formula::Formula;
use crate::sequent::{ModalKernel, Sequent, Side, Slot};

use super::rules::{CalculusId, RuleId};

/// Formulas a premise adds on each side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Added {
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
}

fn l(fs: &[&Formula]) -> Added {
    Added { left: fs.iter().map(|f| (*f).clone()).collect(), right: vec![] }
}

fn r(fs: &[&Formula]) -> Added {
    Added { left: vec![], right: fs.iter().map(|f| (*f).clone()).collect() }
}

fn lr(a: &Formula, b: &Formula) -> Added {
    Added { left: vec![a.clone()], right: vec![b.clone()] }
}

/// How a rule acts, read bottom-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    Initial,
    Structural,
    /// Context-preserving rule; `persistent` rules are applied with the
    /// principal formula kept in the premise during search.
    Local { persistent: bool },
    /// Context-restricting rule of a sequent calculus.
    Transition(KernelPolicy),
    /// Hypersequent modal rule that adds to an existing component.
    HyperPropagate,
    /// Hypersequent modal rule that creates a new component.
    HyperCreate,
}

/// Which kernel formulas a transition keeps and how it rewrites them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum KernelPolicy {
    /// `□Γ1,¬◇Γ2 ⇒ ◇Δ1,¬□Δ2` kept as is.
    Local,
    /// Same context, rewritten to `□Γ1,□Δ2 ⇒ ◇Δ1,◇Γ2`.
    Global,
    /// `□Γ ⇒ ◇Δ` kept as is.
    Kripke,
    /// Same context as `Local`, stripped to `Γ1,Δ2 ⇒ Δ1,Γ2`.
    Strip,
    /// Right-principal S5 rules.
    S5Right,
    /// Left-principal S5 rules.
    S5Left,
}

impl KernelPolicy {
    pub fn allows(self, slot: Slot) -> bool {
        use Slot::*;
        match self {
            KernelPolicy::Local | KernelPolicy::Global | KernelPolicy::Strip => {
                matches!(slot, LeftBox | LeftNegDia | RightDia | RightNegBox)
            }
            KernelPolicy::Kripke => matches!(slot, LeftBox | RightDia),
            KernelPolicy::S5Right => matches!(slot, LeftBox | LeftNegDia | RightBox | RightNegDia | RightDia | RightNegBox),
            KernelPolicy::S5Left => matches!(slot, LeftBox | LeftNegDia | LeftDia | LeftNegBox | RightDia | RightNegBox),
        }
    }

    /// The premise context built from a kernel.
    pub fn rewrite(self, k: &ModalKernel) -> Sequent {
        use Slot::*;
        let mut s = Sequent::default();
        let mut put = |side: Side, it: &mut dyn Iterator<Item = Formula>| s.side_mut(side).extend(it);
        let strip = |slot| k.get(slot).iter().cloned();
        match self {
            KernelPolicy::Local | KernelPolicy::Kripke => return k.to_sequent(),
            KernelPolicy::Global => {
                put(Side::Left, &mut k.wrapped(LeftBox, LeftBox));
                put(Side::Left, &mut k.wrapped(RightNegBox, LeftBox));
                put(Side::Right, &mut k.wrapped(RightDia, RightDia));
                put(Side::Right, &mut k.wrapped(LeftNegDia, RightDia));
            }
            KernelPolicy::Strip => {
                put(Side::Left, &mut strip(LeftBox));
                put(Side::Left, &mut strip(RightNegBox));
                put(Side::Right, &mut strip(RightDia));
                put(Side::Right, &mut strip(LeftNegDia));
            }
            KernelPolicy::S5Right => {
                // □Γ1,¬◇Γ2 ⇒ □Δ1,¬◇Δ2,◇Λ1,¬□Λ2  becomes  □Γ1,◇Δ2,□Λ2 ⇒ □Δ1,◇Λ1,◇Γ2
                put(Side::Left, &mut k.wrapped(LeftBox, LeftBox));
                put(Side::Left, &mut k.wrapped(RightNegDia, LeftDia));
                put(Side::Left, &mut k.wrapped(RightNegBox, LeftBox));
                put(Side::Right, &mut k.wrapped(RightBox, RightBox));
                put(Side::Right, &mut k.wrapped(RightDia, RightDia));
                put(Side::Right, &mut k.wrapped(LeftNegDia, RightDia));
            }
            KernelPolicy::S5Left => {
                // □Γ1,¬◇Γ2,◇Σ1,¬□Σ2 ⇒ ◇Δ1,¬□Δ2  becomes  □Γ1,◇Σ1,□Δ2 ⇒ ◇Δ1,◇Γ2,□Σ2
                put(Side::Left, &mut k.wrapped(LeftBox, LeftBox));
                put(Side::Left, &mut k.wrapped(LeftDia, LeftDia));
                put(Side::Left, &mut k.wrapped(RightNegBox, LeftBox));
                put(Side::Right, &mut k.wrapped(RightDia, RightDia));
                put(Side::Right, &mut k.wrapped(LeftNegDia, RightDia));
                put(Side::Right, &mut k.wrapped(LeftNegBox, RightBox));
            }
        }
        s
    }
}

pub(crate) fn role(c: CalculusId, rule: RuleId) -> Role {
    use RuleId::*;
    if c.is_hyper() {
        return match rule {
            Initial(_) => Role::Initial,
            r if r.is_structural() => Role::Structural,
            BoxLeft | DiaRight | NegDiaS5LeftH | NegBoxS5RightH => Role::HyperPropagate,
            BoxRight | DiaLeft | NegBoxS5LeftH | NegDiaS5RightH => Role::HyperCreate,
            _ => Role::Local { persistent: false },
        };
    }
    match rule {
        Initial(_) => Role::Initial,
        r if r.is_structural() => Role::Structural,
        BoxLeft | DiaRight | NegBoxRightT | NegDiaLeftT => Role::Local { persistent: true },
        BoxRight | DiaLeft | NegBoxLeftT | NegDiaRightT => Role::Transition(KernelPolicy::Local),
        BoxRightG | DiaLeftG | NegBoxLeftG | NegDiaRightG => Role::Transition(KernelPolicy::Global),
        BoxRightK | DiaLeftK | NegBoxLeftStar | NegDiaRightStar => Role::Transition(KernelPolicy::Kripke),
        BoxKRight | DiaKLeft | NegBoxKLeft | NegDiaKRight => Role::Transition(KernelPolicy::Strip),
        BoxS5Right | NegDiaS5Right => Role::Transition(KernelPolicy::S5Right),
        DiaS5Left | NegBoxS5Left => Role::Transition(KernelPolicy::S5Left),
        _ => Role::Local { persistent: false },
    }
}

/// Premise additions of a local rule applied to principal `f`, or `None`
/// when `f` does not have the rule's shape.
pub(crate) fn decompose(rule: RuleId, f: &Formula) -> Option<Vec<Added>> {
    use Formula as F;
    use RuleId::*;
    Some(match (rule, f) {
        (AndLeft, F::And(a, b)) => vec![l(&[a, b])],
        (AndRight, F::And(a, b)) => vec![r(&[a]), r(&[b])],
        (OrLeft, F::Or(a, b)) => vec![l(&[a]), l(&[b])],
        (OrRight, F::Or(a, b)) => vec![r(&[a, b])],
        (ImpLeft, F::Imp(a, b)) => vec![r(&[a]), l(&[b])],
        (ImpRight, F::Imp(a, b)) => vec![lr(a, b)],
        (NegLeft, F::Not(a)) => vec![r(&[a])],
        (NegRight, F::Not(a)) => vec![l(&[a])],
        (BoxLeft, F::Box(a)) => vec![l(&[a])],
        (DiaRight, F::Dia(a)) => vec![r(&[a])],
        (_, F::Not(inner)) => match (rule, &**inner) {
            (NegNegLeftT | NegNegLeft, F::Not(a)) => vec![l(&[a])],
            (NegNegRightT | NegNegRight, F::Not(a)) => vec![r(&[a])],
            (NegAndLeftT | NegAndLeft, F::And(a, b)) => vec![r(&[a]), r(&[b])],
            (NegAndRightT | NegAndRight, F::And(a, b)) => vec![l(&[a, b])],
            (NegOrLeftT | NegOrLeft, F::Or(a, b)) => vec![r(&[a, b])],
            (NegOrRightT | NegOrRight, F::Or(a, b)) => vec![l(&[a]), l(&[b])],
            (NegImpLeftT | NegImpLeft, F::Imp(a, b)) => vec![lr(a, b)],
            (NegImpRightT | NegImpRight, F::Imp(a, b)) => vec![r(&[a]), l(&[b])],
            (NegBoxRightT, F::Box(a)) => vec![l(&[a])],
            (NegDiaLeftT, F::Dia(a)) => vec![r(&[a])],
            _ => return None,
        },
        _ => return None,
    })
}

/// For a transition rule: the formula `α` and the side it is added to.
pub(crate) fn transition_alpha(rule: RuleId, f: &Formula) -> Option<(Formula, Side)> {
    use Formula as F;
    use RuleId::*;
    let inner_of_neg = |f: &Formula| match f {
        F::Not(n) => Some((**n).clone()),
        _ => None,
    };
    match rule {
        BoxRight | BoxRightG | BoxRightK | BoxKRight | BoxS5Right => match f {
            F::Box(a) => Some(((**a).clone(), Side::Right)),
            _ => None,
        },
        DiaLeft | DiaLeftG | DiaLeftK | DiaKLeft | DiaS5Left => match f {
            F::Dia(a) => Some(((**a).clone(), Side::Left)),
            _ => None,
        },
        NegBoxLeftT | NegBoxLeftG | NegBoxLeftStar | NegBoxKLeft | NegBoxS5Left => match inner_of_neg(f)? {
            F::Box(a) => Some(((*a).clone(), Side::Right)),
            _ => None,
        },
        NegDiaRightT | NegDiaRightG | NegDiaRightStar | NegDiaKRight | NegDiaS5Right => match inner_of_neg(f)? {
            F::Dia(a) => Some(((*a).clone(), Side::Left)),
            _ => None,
        },
        _ => None,
    }
}

/// Premises of a local rule with principal `f` on its side of `conc`.
/// With `retain` the principal stays in the premise contexts.
pub(crate) fn local_premises(rule: RuleId, conc: &Sequent, f: &Formula, retain: bool) -> Option<Vec<Sequent>> {
    let side = rule.principal_side()?;
    if !conc.side(side).contains(f) {
        return None;
    }
    let parts = decompose(rule, f)?;
    let ctx = if retain { conc.clone() } else { conc.without(side, f) };
    Some(
        parts
            .into_iter()
            .map(|a| {
                let mut p = ctx.clone();
                p.ante.extend(a.left);
                p.succ.extend(a.right);
                p
            })
            .collect(),
    )
}

/// A transition applied to `conc` with principal `f`.
#[derive(Clone, Debug)]
pub(crate) struct TransitionStep {
    pub premise: Sequent,
    pub kernel: ModalKernel,
    /// Formulas outside the kernel, which must be weakened away first.
    pub residue: Sequent,
    /// The conclusion once the residue is removed.
    pub conclusion: Sequent,
}

/// Apply transition `rule` to `conc` with principal `f`. With
/// `principal_in_context` the principal also takes part in the kernel when
/// its shape fits a kernel slot (only the S5 rules have such slots).
pub(crate) fn transition(
    rule: RuleId,
    policy: KernelPolicy,
    conc: &Sequent,
    f: &Formula,
    principal_in_context: bool,
) -> Option<TransitionStep> {
    let side = rule.principal_side()?;
    if !conc.side(side).contains(f) {
        return None;
    }
    let (alpha, alpha_side) = transition_alpha(rule, f)?;
    let mut kernel = ModalKernel::default();
    let mut residue = Sequent::default();
    let mut conclusion = Sequent::default();
    conclusion.side_mut(side).insert(f.clone());
    for s in [Side::Left, Side::Right] {
        for g in conc.side(s) {
            if s == side && g == f && !principal_in_context {
                continue;
            }
            match Slot::classify(s, g) {
                Some((slot, inner)) if policy.allows(slot) => {
                    kernel.insert(slot, inner);
                    conclusion.side_mut(s).insert(g.clone());
                }
                _ if s == side && g == f => {}
                _ => {
                    residue.side_mut(s).insert(g.clone());
                }
            }
        }
    }
    let mut premise = policy.rewrite(&kernel);
    premise.side_mut(alpha_side).insert(alpha);
    Some(TransitionStep { premise, kernel, residue, conclusion })
}

/// Whether the principal can sit in a kernel slot of `policy`.
pub(crate) fn principal_fits(policy: KernelPolicy, side: Side, f: &Formula) -> bool {
    matches!(Slot::classify(side, f), Some((slot, _)) if policy.allows(slot))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> Sequent {
        Sequent::parse(src).unwrap()
    }
    fn f(src: &str) -> Formula {
        Formula::parse(src).unwrap()
    }

    #[test]
    fn twist_decompositions() {
        let p = local_premises(RuleId::NegAndLeftT, &s("~(a & b), c => d"), &f("~(a & b)"), false).unwrap();
        assert_eq!(p, vec![s("c => d, a"), s("c => d, b")]);
        let p = local_premises(RuleId::NegImpRightT, &s("c => ~(a -> b)"), &f("~(a -> b)"), false).unwrap();
        assert_eq!(p, vec![s("c => a"), s("b, c =>")]);
        let p = local_premises(RuleId::NegDiaLeftT, &s("~<>a => "), &f("~<>a"), true).unwrap();
        assert_eq!(p, vec![s("~<>a => a")]);
        assert!(local_premises(RuleId::NegAndLeftT, &s("~(a | b) =>"), &f("~(a | b)"), false).is_none());
    }

    #[test]
    fn local_kernel_transition() {
        let conc = s("[]g, ~<>h, q => <>d, ~[]e, []a, r");
        let t = transition(RuleId::BoxRight, KernelPolicy::Local, &conc, &f("[]a"), false).unwrap();
        assert_eq!(t.premise, s("[]g, ~<>h => <>d, ~[]e, a"));
        assert_eq!(t.residue, s("q => r"));
        assert_eq!(t.conclusion, s("[]g, ~<>h => <>d, ~[]e, []a"));
    }

    #[test]
    fn global_and_strip_transitions() {
        let conc = s("[]g, ~<>h => <>d, ~[]e, ~<>a");
        let t = transition(RuleId::NegDiaRightG, KernelPolicy::Global, &conc, &f("~<>a"), false).unwrap();
        assert_eq!(t.premise, s("a, []g, []e => <>d, <>h"));
        let t = transition(RuleId::NegDiaKRight, KernelPolicy::Strip, &conc, &f("~<>a"), false).unwrap();
        assert_eq!(t.premise, s("a, g, e => d, h"));
    }

    #[test]
    fn s5_transitions_can_keep_the_principal() {
        let conc = s("[]g, ~<>h => []b, ~<>c, <>d, ~[]e, []a");
        let t = transition(RuleId::BoxS5Right, KernelPolicy::S5Right, &conc, &f("[]a"), true).unwrap();
        assert_eq!(t.premise, s("[]g, <>c, []e => []a, []b, <>d, <>h, a"));
        assert!(t.residue.is_empty());
        let conc = s("<>a, []g, ~<>h, <>s, ~[]t => <>d, ~[]e");
        let t = transition(RuleId::DiaS5Left, KernelPolicy::S5Left, &conc, &f("<>a"), false).unwrap();
        assert_eq!(t.premise, s("a, []g, <>s, []e => <>d, <>h, []t"));
    }
}
