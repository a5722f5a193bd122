//! Proof search for HTS5.
//!
//! Every move is invertible, so search never backtracks: it applies the
//! first available move until each branch closes or gets stuck. Components
//! keep a history of the formulas they have held; a modal move whose
//! addition is already in the relevant history is skipped. A stuck branch
//! describes an S5 countermodel with one world per component.

use std::rc::Rc;

use crate::calculi::hyper::{closing_chain, moves_with, HMove};
use crate::calculi::RuleInstance;
use crate::formula::Formula;
use crate::proof::Proof;
use crate::sequent::{contains_initial, FormulaSet, Hypersequent, Sequent, Side};
use crate::calculi::CalculusId;

use super::{Bound, SearchConfig, SearchStats};

pub(crate) struct HTrace {
    comps: Vec<Sequent>,
    step: HStep,
}

enum HStep {
    Initial(usize),
    Move(HMove, Vec<Rc<HTrace>>),
}

pub(crate) enum HOutcome {
    Proved(Option<Rc<HTrace>>),
    Failed(Hypersequent),
}

pub(crate) struct HEngine<'a> {
    cfg: &'a SearchConfig,
    build: bool,
    pub stats: SearchStats,
}

type History = Vec<(FormulaSet, FormulaSet)>;

impl<'a> HEngine<'a> {
    pub fn new(cfg: &'a SearchConfig, build: bool) -> Self {
        HEngine { cfg, build, stats: SearchStats::default() }
    }

    pub fn run(&mut self, goal: &Hypersequent) -> Result<HOutcome, Bound> {
        if goal.components().iter().any(Sequent::is_empty) {
            // No rule removes an empty component, so it survives on some branch.
            return Ok(HOutcome::Failed(goal.clone()));
        }
        let comps = goal.components().to_vec();
        let hist = comps.iter().map(|s| (s.ante.clone(), s.succ.clone())).collect();
        self.solve(comps, hist, 0)
    }

    fn solve(&mut self, mut comps: Vec<Sequent>, mut hist: History, depth: usize) -> Result<HOutcome, Bound> {
        let mut chain: Vec<(Vec<Sequent>, HMove)> = Vec::new();
        let outcome = loop {
            let here = depth + chain.len();
            self.stats.visited += 1;
            self.stats.max_depth_reached = self.stats.max_depth_reached.max(here);
            if self.stats.visited > self.cfg.max_visited || here > self.cfg.max_depth {
                return Err(Bound);
            }
            if let Some(i) = comps.iter().position(|s| contains_initial(s, CalculusId::HTS5).is_some()) {
                let t = self.build.then(|| Rc::new(HTrace { comps: comps.clone(), step: HStep::Initial(i) }));
                break HOutcome::Proved(t);
            }
            let seen = |j: usize, side: Side, a: &Formula| match side {
                Side::Left => hist[j].0.contains(a),
                Side::Right => hist[j].1.contains(a),
            };
            let Some(mv) = moves_with(&comps, &seen).into_iter().next() else {
                break HOutcome::Failed(Hypersequent::new(comps.clone()));
            };
            let premises = mv.premises(&comps);
            if premises.len() == 2 {
                self.stats.branches += 1;
                let mut built = Vec::new();
                let mut failed = None;
                for p in premises {
                    let h = extend_history(&hist, &p);
                    match self.solve(p, h, here + 1)? {
                        HOutcome::Proved(t) => built.push(t),
                        fail => {
                            failed = Some(fail);
                            break;
                        }
                    }
                }
                break match failed {
                    Some(f) => f,
                    None => HOutcome::Proved(self.build.then(|| {
                        Rc::new(HTrace {
                            comps: comps.clone(),
                            step: HStep::Move(mv, built.into_iter().map(Option::unwrap).collect()),
                        })
                    })),
                };
            }
            let next = premises.into_iter().next().unwrap();
            hist = extend_history(&hist, &next);
            chain.push((std::mem::replace(&mut comps, next), mv));
        };
        let HOutcome::Proved(mut trace) = outcome else { return Ok(outcome) };
        for (comps, mv) in chain.into_iter().rev() {
            trace = trace.map(|t| Rc::new(HTrace { comps, step: HStep::Move(mv, vec![t]) }));
        }
        Ok(HOutcome::Proved(trace))
    }
}

fn extend_history(hist: &History, comps: &[Sequent]) -> History {
    comps
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let (mut l, mut r) = hist.get(j).cloned().unwrap_or_default();
            l.extend(s.ante.iter().cloned());
            r.extend(s.succ.iter().cloned());
            (l, r)
        })
        .collect()
}

fn stack(chain: Vec<RuleInstance>, children: Vec<Proof>) -> Proof {
    let mut iter = chain.into_iter().rev();
    let last = iter.next().expect("empty chain");
    let top = Proof::node(last.conclusion, last.rule, last.principal, children);
    iter.fold(top, |acc, inst| Proof::node(inst.conclusion, inst.rule, inst.principal, vec![acc]))
}

/// Turn a trace into a literal HTS5 proof.
pub(crate) fn emit(t: &HTrace) -> Proof {
    match &t.step {
        HStep::Initial(i) => stack(closing_chain(&t.comps, *i), vec![]),
        HStep::Move(mv, subs) => stack(mv.elaborate(&t.comps), subs.iter().map(|s| emit(s)).collect()),
    }
}

/// An S5 countermodel read off a stuck hypersequent: one world per
/// component, every world sees every world, and an atom holds at a world
/// when it occurs on the left of its component or negated on the right.
pub(crate) fn stuck_valuation(h: &Hypersequent) -> Vec<Vec<String>> {
    h.components()
        .iter()
        .map(|s| {
            let mut atoms: Vec<String> = Vec::new();
            for f in &s.ante {
                if let Formula::Var(v) = f {
                    atoms.push(v.to_string());
                }
            }
            for f in &s.succ {
                if let Formula::Not(a) = f {
                    if let Formula::Var(v) = &**a {
                        atoms.push(v.to_string());
                    }
                }
            }
            atoms.sort();
            atoms.dedup();
            atoms
        })
        .collect()
}
