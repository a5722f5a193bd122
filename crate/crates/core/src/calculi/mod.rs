//! The nine calculi: rule inventories, single-step checking and backward
//! rule application.

pub mod hyper;
mod rules;
pub(crate) mod schema;

use std::fmt;

pub use rules::{rule_for, rules_of, CalculusId, RuleId};

use crate::formula::Formula;
use crate::sequent::{contains_initial, FormulaSet, Judgment, ModalKernel, Sequent, Side};
use schema::{local_premises, principal_fits, role, transition, transition_alpha, Role};

/// One rule application: conclusion below, premises above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub conclusion: Judgment,
    pub premises: Vec<Judgment>,
    pub principal: Option<Formula>,
    /// For transition rules found by search: the kernel that was kept.
    pub kernel: Option<ModalKernel>,
}

impl RuleInstance {
    pub fn new(rule: RuleId, conclusion: Judgment, premises: Vec<Judgment>, principal: Option<Formula>) -> Self {
        RuleInstance { rule, conclusion, premises, principal, kernel: None }
    }
}

/// Why a rule instance is not an instance of its rule.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("rule {rule} {} is not part of {calculus}", rule.label())]
    NotInCalculus { rule: RuleId, calculus: CalculusId },
    #[error("rule {rule} takes {expected} premise(s), found {found}")]
    Arity { rule: RuleId, expected: usize, found: usize },
    #[error("{calculus} works on {expected}s, found `{found}`")]
    WrongJudgment { calculus: CalculusId, expected: &'static str, found: String },
    #[error("rule {rule}: no principal formula of the required shape in `{conclusion}`")]
    NoPrincipal { rule: RuleId, conclusion: String },
    #[error("rule {rule}: context is not of kernel form, offending part `{residue}`")]
    KernelContext { rule: RuleId, residue: String },
    #[error("rule {rule}: premises do not match, expected `{expected}` but found `{found}`")]
    PremiseMismatch { rule: RuleId, expected: String, found: String },
    #[error("`{conclusion}` is not an initial sequent of kind {kind}")]
    NotInitial { conclusion: String, kind: &'static str },
}

/// Retention of persistent principals when rules are applied backwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RetentionPolicy {
    /// Keep the principal of persistent rules (`□left`, `◇right`,
    /// `¬◇left^t`, `¬□right^t`), drop it elsewhere.
    #[default]
    Persistent,
    /// Always drop the principal.
    Never,
}

fn show_list(items: &[Sequent]) -> String {
    items.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" | ")
}

/// Check one rule instance of calculus `c`.
pub fn check_instance(inst: &RuleInstance, c: CalculusId) -> Result<(), Violation> {
    if !c.has(inst.rule) {
        return Err(Violation::NotInCalculus { rule: inst.rule, calculus: c });
    }
    if c.is_hyper() {
        return hyper::check_instance(inst);
    }
    let wrong = |j: &Judgment| Violation::WrongJudgment { calculus: c, expected: "sequent", found: j.to_string() };
    let conc = inst.conclusion.as_sequent().ok_or_else(|| wrong(&inst.conclusion))?;
    let prems = inst
        .premises
        .iter()
        .map(|p| p.as_sequent().cloned().ok_or_else(|| wrong(p)))
        .collect::<Result<Vec<_>, _>>()?;
    check_sequent_instance(c, inst.rule, conc, &prems, inst.principal.as_ref())
}

fn arity(rule: RuleId, expected: usize, found: usize) -> Result<(), Violation> {
    if expected == found {
        Ok(())
    } else {
        Err(Violation::Arity { rule, expected, found })
    }
}

fn candidates<'a>(principal: Option<&'a Formula>, pool: &'a FormulaSet) -> Vec<&'a Formula> {
    match principal {
        Some(f) => vec![f],
        None => pool.iter().collect(),
    }
}

fn check_sequent_instance(
    c: CalculusId,
    rule: RuleId,
    conc: &Sequent,
    prems: &[Sequent],
    principal: Option<&Formula>,
) -> Result<(), Violation> {
    let no_principal = || Violation::NoPrincipal { rule, conclusion: conc.to_string() };
    match role(c, rule) {
        Role::Initial => {
            arity(rule, 0, prems.len())?;
            let RuleId::Initial(kind) = rule else { unreachable!() };
            match kind.matches(conc) {
                Some(_) => Ok(()),
                None => Err(Violation::NotInitial { conclusion: conc.to_string(), kind: kind.name() }),
            }
        }
        Role::Structural => match rule {
            RuleId::WeakenLeft | RuleId::WeakenRight => {
                arity(rule, 1, prems.len())?;
                let side = rule.principal_side().unwrap();
                let mut expected = None;
                for a in candidates(principal, conc.side(side)) {
                    if !conc.side(side).contains(a) {
                        continue;
                    }
                    let reduced = conc.without(side, a);
                    if prems[0] == reduced || prems[0] == *conc {
                        return Ok(());
                    }
                    expected = Some(reduced);
                }
                match expected {
                    None => Err(no_principal()),
                    Some(e) => Err(Violation::PremiseMismatch {
                        rule,
                        expected: e.to_string(),
                        found: prems[0].to_string(),
                    }),
                }
            }
            RuleId::Cut => {
                arity(rule, 2, prems.len())?;
                let alpha = match principal {
                    Some(a) => a.clone(),
                    None => match prems[0].succ.iter().collect::<Vec<_>>().as_slice() {
                        [a] => (*a).clone(),
                        _ => return Err(no_principal()),
                    },
                };
                let left = Sequent { ante: conc.ante.clone(), succ: [alpha.clone()].into() };
                let right = conc.with(Side::Left, alpha);
                if prems[0] == left && prems[1] == right {
                    Ok(())
                } else {
                    Err(Violation::PremiseMismatch {
                        rule,
                        expected: show_list(&[left, right]),
                        found: show_list(prems),
                    })
                }
            }
            _ => unreachable!("hypersequent structural rule in a sequent calculus"),
        },
        Role::Local { .. } => {
            let side = rule.principal_side().unwrap();
            let mut expected = None;
            for f in candidates(principal, conc.side(side)) {
                for retain in [false, true] {
                    if let Some(ps) = local_premises(rule, conc, f, retain) {
                        if ps.as_slice() == prems {
                            return Ok(());
                        }
                        expected.get_or_insert(ps);
                    }
                }
            }
            match expected {
                None => Err(no_principal()),
                Some(e) => {
                    arity(rule, e.len(), prems.len())?;
                    Err(Violation::PremiseMismatch { rule, expected: show_list(&e), found: show_list(prems) })
                }
            }
        }
        Role::Transition(policy) => {
            arity(rule, 1, prems.len())?;
            let side = rule.principal_side().unwrap();
            let mut err = None;
            for f in candidates(principal, conc.side(side)) {
                if transition_alpha(rule, f).is_none() {
                    continue;
                }
                let modes: &[bool] = if principal_fits(policy, side, f) { &[false, true] } else { &[false] };
                for &inside in modes {
                    let Some(t) = transition(rule, policy, conc, f, inside) else { continue };
                    if !t.residue.is_empty() {
                        err.get_or_insert(Violation::KernelContext { rule, residue: t.residue.to_string() });
                    } else if t.premise == prems[0] {
                        return Ok(());
                    } else {
                        err = Some(Violation::PremiseMismatch {
                            rule,
                            expected: t.premise.to_string(),
                            found: prems[0].to_string(),
                        });
                    }
                }
            }
            Err(err.unwrap_or_else(no_principal))
        }
        Role::HyperPropagate | Role::HyperCreate => unreachable!("hypersequent rule in a sequent calculus"),
    }
}

/// A backward move on a sequent, before weakening is made explicit.
#[derive(Clone, Debug)]
pub(crate) struct SequentMove {
    pub rule: RuleId,
    pub principal: Formula,
    pub premises: Vec<Sequent>,
    pub kernel: Option<ModalKernel>,
}

/// Apply `rule` to principal `f` of `s` the way proof search does.
pub(crate) fn apply_sequent_rule(
    c: CalculusId,
    rule: RuleId,
    s: &Sequent,
    f: &Formula,
    policy: RetentionPolicy,
) -> Option<SequentMove> {
    match role(c, rule) {
        Role::Local { persistent } => {
            let retain = persistent && policy == RetentionPolicy::Persistent;
            let premises = local_premises(rule, s, f, retain)?;
            Some(SequentMove { rule, principal: f.clone(), premises, kernel: None })
        }
        Role::Transition(kp) => {
            let side = rule.principal_side()?;
            let t = transition(rule, kp, s, f, principal_fits(kp, side, f))?;
            Some(SequentMove { rule, principal: f.clone(), premises: vec![t.premise], kernel: Some(t.kernel) })
        }
        _ => None,
    }
}

/// All logical moves applicable to `s`, ordered: single-premise rules,
/// then two-premise rules, then transitions by principal.
pub(crate) fn sequent_moves(s: &Sequent, c: CalculusId, policy: RetentionPolicy) -> Vec<SequentMove> {
    let mut single = Vec::new();
    let mut double = Vec::new();
    let mut transitions = Vec::new();
    for side in [Side::Left, Side::Right] {
        for f in s.side(side) {
            let Some(rule) = rule_for(c, side, f) else { continue };
            let Some(mv) = apply_sequent_rule(c, rule, s, f, policy) else { continue };
            if mv.kernel.is_some() {
                transitions.push((f.clone(), side, mv));
            } else if mv.premises.len() == 1 {
                single.push(mv);
            } else {
                double.push(mv);
            }
        }
    }
    transitions.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    single.into_iter().chain(double).chain(transitions.into_iter().map(|t| t.2)).collect()
}

/// Every backward move applicable to `goal`, in search order. An initial
/// sequent contained in the goal comes first. Instances may leave
/// weakening implicit; [`elaborate`] spells it out.
pub fn backward_moves(goal: &Judgment, c: CalculusId, policy: RetentionPolicy) -> Vec<RuleInstance> {
    match goal {
        Judgment::Hyper(h) => hyper::moves(h, policy),
        Judgment::Sequent(s) => {
            let mut out = Vec::new();
            if let Some((kind, _)) = contains_initial(s, c) {
                out.push(RuleInstance::new(RuleId::Initial(kind), goal.clone(), vec![], None));
            }
            for mv in sequent_moves(s, c, policy) {
                out.push(RuleInstance {
                    rule: mv.rule,
                    conclusion: goal.clone(),
                    premises: mv.premises.into_iter().map(Judgment::Sequent).collect(),
                    principal: Some(mv.principal),
                    kernel: mv.kernel,
                });
            }
            out
        }
    }
}

/// Weakening steps taking `from` down to its subsequent `to`, bottom-up.
pub(crate) fn weakening_chain(from: &Sequent, to: &Sequent) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    let mut cur = from.clone();
    for side in [Side::Left, Side::Right] {
        let extra: Vec<Formula> = from.side(side).difference(to.side(side)).cloned().collect();
        for f in extra {
            let next = cur.without(side, &f);
            let rule = if side == Side::Left { RuleId::WeakenLeft } else { RuleId::WeakenRight };
            out.push(RuleInstance::new(rule, cur.into(), vec![next.clone().into()], Some(f)));
            cur = next;
        }
    }
    out
}

/// Spell out a move from [`backward_moves`] as literal rule instances,
/// listed from the goal upwards. The last instance carries the move's
/// premises.
pub fn elaborate(inst: &RuleInstance, c: CalculusId) -> Vec<RuleInstance> {
    match &inst.conclusion {
        Judgment::Hyper(h) => hyper::elaborate_instance(inst, h),
        Judgment::Sequent(s) => match role(c, inst.rule) {
            Role::Initial => {
                let Some((kind, pattern)) = contains_initial(s, c) else { return vec![inst.clone()] };
                let mut chain = weakening_chain(s, &pattern);
                chain.push(RuleInstance::new(RuleId::Initial(kind), pattern.into(), vec![], None));
                chain
            }
            Role::Transition(kp) => {
                let f = inst.principal.as_ref().expect("transition without principal");
                let side = inst.rule.principal_side().unwrap();
                let Some(t) = transition(inst.rule, kp, s, f, principal_fits(kp, side, f)) else {
                    return vec![inst.clone()];
                };
                let mut chain = weakening_chain(s, &t.conclusion);
                chain.push(RuleInstance {
                    rule: inst.rule,
                    conclusion: t.conclusion.into(),
                    premises: inst.premises.clone(),
                    principal: Some(f.clone()),
                    kernel: Some(t.kernel),
                });
                chain
            }
            _ => vec![inst.clone()],
        },
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prems: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        write!(f, "{} / {}  [{}]", prems.join(" | "), self.conclusion, self.rule)
    }
}
