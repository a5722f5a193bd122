//! Backward proof search for the sequent calculi.
//!
//! Each branch alternates two phases. Saturation applies invertible rules
//! (propositional and twist rules, plus the persistent modal rules, which
//! keep their principal) until none makes progress. A saturated sequent
//! that contains no initial sequent then branches over its transitions.
//!
//! Every branch keeps a history of the formulas it has seen on each side
//! since its last transition. A persistent rule whose addition is already
//! in the history is skipped, and a transition premise contained in the
//! history of a saturated ancestor is pruned as a loop.

use std::collections::HashMap;
use std::rc::Rc;

use crate::calculi::schema::{principal_fits, role, transition, KernelPolicy, Role};
use crate::calculi::{apply_sequent_rule, rule_for, weakening_chain, CalculusId, RetentionPolicy, RuleId};
use crate::formula::Formula;
use crate::proof::Proof;
use crate::sequent::{contains_initial, FormulaSet, Sequent, Side};

use super::{Bound, SearchConfig, SearchStats};

#[derive(Debug)]
pub(crate) struct Trace {
    pub seq: Sequent,
    pub step: Step,
}

#[derive(Debug)]
pub(crate) enum Step {
    Initial,
    Apply { rule: RuleId, principal: Formula, premises: Vec<Rc<Trace>> },
}

pub(crate) enum Outcome {
    Proved(Option<Rc<Trace>>),
    /// `low` is the shallowest ancestor level a loop check relied on;
    /// `leaf` is a saturated sequent where search got stuck.
    Failed { low: usize, leaf: Sequent },
}

enum Memo {
    Proved(Option<Rc<Trace>>),
    Failed(Sequent),
}

pub(crate) struct Engine<'a> {
    c: CalculusId,
    cfg: &'a SearchConfig,
    build: bool,
    pub stats: SearchStats,
    memo: HashMap<Sequent, Memo>,
    /// Histories of the saturated sequents on the current path.
    path: Vec<(FormulaSet, FormulaSet)>,
}

fn is_branching(rule: RuleId) -> bool {
    use RuleId::*;
    matches!(rule, AndRight | OrLeft | ImpLeft | NegAndLeftT | NegOrRightT | NegImpRightT)
}

impl<'a> Engine<'a> {
    pub fn new(c: CalculusId, cfg: &'a SearchConfig, build: bool) -> Self {
        Engine { c, cfg, build, stats: SearchStats::default(), memo: HashMap::new(), path: Vec::new() }
    }

    pub fn run(&mut self, goal: &Sequent) -> Result<Outcome, Bound> {
        self.solve(goal.clone(), goal.ante.clone(), goal.succ.clone(), 0)
    }

    fn tick(&mut self, depth: usize) -> Result<(), Bound> {
        self.stats.visited += 1;
        self.stats.max_depth_reached = self.stats.max_depth_reached.max(depth);
        if self.stats.visited > self.cfg.max_visited || self.path.len() > self.cfg.max_depth {
            Err(Bound)
        } else {
            Ok(())
        }
    }

    /// The first single-premise invertible move, as (rule, principal,
    /// premise).
    fn next_single(&self, s: &Sequent, hl: &FormulaSet, hr: &FormulaSet) -> Option<(RuleId, Formula, Sequent)> {
        for side in [Side::Left, Side::Right] {
            for f in s.side(side) {
                let Some(rule) = rule_for(self.c, side, f) else { continue };
                let Role::Local { persistent } = role(self.c, rule) else { continue };
                if is_branching(rule) {
                    continue;
                }
                let Some(mv) = apply_sequent_rule(self.c, rule, s, f, RetentionPolicy::Persistent) else { continue };
                let Some(premise) = mv.premises.into_iter().next() else { continue };
                if persistent {
                    let fresh = premise.ante.iter().any(|g| !hl.contains(g)) || premise.succ.iter().any(|g| !hr.contains(g));
                    if !fresh {
                        continue;
                    }
                }
                return Some((rule, f.clone(), premise));
            }
        }
        None
    }

    fn next_double(&self, s: &Sequent) -> Option<(RuleId, Formula, Vec<Sequent>)> {
        for side in [Side::Left, Side::Right] {
            for f in s.side(side) {
                let Some(rule) = rule_for(self.c, side, f) else { continue };
                if !is_branching(rule) {
                    continue;
                }
                let Some(mv) = apply_sequent_rule(self.c, rule, s, f, RetentionPolicy::Persistent) else { continue };
                return Some((rule, f.clone(), mv.premises));
            }
        }
        None
    }

    fn solve(&mut self, mut cur: Sequent, mut hl: FormulaSet, mut hr: FormulaSet, depth: usize) -> Result<Outcome, Bound> {
        let level = self.path.len();
        let mut chain: Vec<(Sequent, RuleId, Formula)> = Vec::new();
        let outcome = loop {
            self.tick(depth + chain.len())?;
            match self.memo.get(&cur) {
                Some(Memo::Proved(t)) => break Outcome::Proved(t.clone()),
                Some(Memo::Failed(leaf)) => break Outcome::Failed { low: usize::MAX, leaf: leaf.clone() },
                None => {}
            }
            if contains_initial(&cur, self.c).is_some() {
                let t = self.build.then(|| Rc::new(Trace { seq: cur.clone(), step: Step::Initial }));
                break Outcome::Proved(t);
            }
            if let Some((rule, f, premise)) = self.next_single(&cur, &hl, &hr) {
                hl.extend(premise.ante.iter().cloned());
                hr.extend(premise.succ.iter().cloned());
                chain.push((std::mem::replace(&mut cur, premise), rule, f));
                continue;
            }
            let here = depth + chain.len();
            if let Some((rule, f, premises)) = self.next_double(&cur) {
                self.stats.branches += 1;
                let mut built = Vec::new();
                let mut failed = None;
                for p in premises {
                    let (mut l, mut r) = (hl.clone(), hr.clone());
                    l.extend(p.ante.iter().cloned());
                    r.extend(p.succ.iter().cloned());
                    match self.solve(p, l, r, here + 1)? {
                        Outcome::Proved(t) => built.push(t),
                        fail => {
                            failed = Some(fail);
                            break;
                        }
                    }
                }
                break match failed {
                    Some(fail) => fail,
                    None => Outcome::Proved(self.build.then(|| {
                        let premises = built.into_iter().map(|t| t.unwrap()).collect();
                        Rc::new(Trace { seq: cur.clone(), step: Step::Apply { rule, principal: f, premises } })
                    })),
                };
            }
            break self.saturated(&cur, &hl, &hr, here)?;
        };

        match outcome {
            Outcome::Failed { low, leaf } => {
                if low >= level {
                    for (s, _, _) in chain {
                        self.memo.insert(s, Memo::Failed(leaf.clone()));
                    }
                    self.memo.insert(cur, Memo::Failed(leaf.clone()));
                }
                Ok(Outcome::Failed { low, leaf })
            }
            Outcome::Proved(mut trace) => {
                self.memo.insert(cur, Memo::Proved(trace.clone()));
                for (s, rule, f) in chain.into_iter().rev() {
                    trace = trace.map(|t| {
                        Rc::new(Trace { seq: s.clone(), step: Step::Apply { rule, principal: f, premises: vec![t] } })
                    });
                    self.memo.insert(s, Memo::Proved(trace.clone()));
                }
                Ok(Outcome::Proved(trace))
            }
        }
    }

    /// Branch over the transitions of a saturated sequent.
    fn saturated(&mut self, cur: &Sequent, hl: &FormulaSet, hr: &FormulaSet, depth: usize) -> Result<Outcome, Bound> {
        let mut moves: Vec<(Formula, Side, RuleId, KernelPolicy)> = Vec::new();
        for side in [Side::Left, Side::Right] {
            for f in cur.side(side) {
                let Some(rule) = rule_for(self.c, side, f) else { continue };
                if let Role::Transition(kp) = role(self.c, rule) {
                    moves.push((f.clone(), side, rule, kp));
                }
            }
        }
        moves.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        self.path.push((hl.clone(), hr.clone()));
        let mut low = usize::MAX;
        let mut result = None;
        let mut deepest = None;
        for (f, side, rule, kp) in moves {
            let t = transition(rule, kp, cur, &f, principal_fits(kp, side, &f)).expect("transition applies");
            let p = t.premise;
            if let Some(i) = self.path.iter().position(|(l, r)| p.ante.is_subset(l) && p.succ.is_subset(r)) {
                low = low.min(i);
                continue;
            }
            self.stats.branches += 1;
            let (l, r) = (p.ante.clone(), p.succ.clone());
            match self.solve(p, l, r, depth + 1) {
                Err(b) => {
                    self.path.pop();
                    return Err(b);
                }
                Ok(Outcome::Proved(sub)) => {
                    result = Some(Outcome::Proved(self.build.then(|| {
                        Rc::new(Trace {
                            seq: cur.clone(),
                            step: Step::Apply { rule, principal: f.clone(), premises: vec![sub.unwrap()] },
                        })
                    })));
                    break;
                }
                Ok(Outcome::Failed { low: l, leaf }) => {
                    low = low.min(l);
                    deepest.get_or_insert(leaf);
                }
            }
        }
        self.path.pop();
        Ok(result.unwrap_or_else(|| Outcome::Failed { low, leaf: deepest.unwrap_or_else(|| cur.clone()) }))
    }
}

/// Replay the rule steps of `t` on `s`. Steps whose principal is missing
/// from `s` are skipped when they have one premise.
fn replay(c: CalculusId, t: &Trace, s: &Sequent) -> Option<Rc<Trace>> {
    if contains_initial(s, c).is_some() {
        return Some(Rc::new(Trace { seq: s.clone(), step: Step::Initial }));
    }
    let Step::Apply { rule, principal, premises } = &t.step else { return None };
    let side = rule.principal_side()?;
    if !s.side(side).contains(principal) {
        return match (premises.as_slice(), role(c, *rule)) {
            ([only], Role::Local { .. }) => replay(c, only, s),
            _ => None,
        };
    }
    let mv = apply_sequent_rule(c, *rule, s, principal, RetentionPolicy::Persistent)?;
    let children = premises
        .iter()
        .zip(mv.premises.iter())
        .map(|(sub, p)| replay(c, sub, p))
        .collect::<Option<Vec<_>>>()?;
    Some(Rc::new(Trace { seq: s.clone(), step: Step::Apply { rule: *rule, principal: principal.clone(), premises: children } }))
}

/// Remove rule steps that the rest of the derivation does not need: a step
/// is dropped when the subderivation above it replays on its conclusion.
pub(crate) fn trim(c: CalculusId, t: &Rc<Trace>) -> Rc<Trace> {
    let Step::Apply { rule, principal, premises } = &t.step else { return t.clone() };
    for p in premises {
        if let Some(r) = replay(c, p, &t.seq) {
            return trim(c, &r);
        }
    }
    Rc::new(Trace {
        seq: t.seq.clone(),
        step: Step::Apply { rule: *rule, principal: principal.clone(), premises: premises.iter().map(|p| trim(c, p)).collect() },
    })
}

/// Stack unary rule instances (listed from the bottom up) under `top`.
pub(crate) fn stack(chain: Vec<crate::calculi::RuleInstance>, top: Proof) -> Proof {
    chain.into_iter().rev().fold(top, |acc, inst| Proof::node(inst.conclusion, inst.rule, inst.principal, vec![acc]))
}

/// Turn a trace into a literal proof, adding the weakening steps that
/// initial sequents and transitions leave implicit.
pub(crate) fn emit(c: CalculusId, t: &Trace) -> Proof {
    match &t.step {
        Step::Initial => {
            let (kind, pattern) = contains_initial(&t.seq, c).expect("initial leaf");
            stack(weakening_chain(&t.seq, &pattern), Proof::leaf(pattern.into(), kind))
        }
        Step::Apply { rule, principal, premises } => {
            let children: Vec<Proof> = premises.iter().map(|p| emit(c, p)).collect();
            match role(c, *rule) {
                Role::Transition(kp) => {
                    let side = rule.principal_side().unwrap();
                    let tr = transition(*rule, kp, &t.seq, principal, principal_fits(kp, side, principal)).unwrap();
                    let node = Proof::node(tr.conclusion.clone().into(), *rule, Some(principal.clone()), children);
                    stack(weakening_chain(&t.seq, &tr.conclusion), node)
                }
                _ => Proof::node(t.seq.clone().into(), *rule, Some(principal.clone()), children),
            }
        }
    }
}
