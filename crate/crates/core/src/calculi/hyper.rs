//! The hypersequent calculus HTS5: instance checking, backward moves and
//! their elaboration into literal rule instances.
//!
//! Search works with generalised moves that act on a whole component
//! (for example `□left` from a component that also holds other formulas).
//! Each one is a `merge` that splits off the principal as a singleton
//! component, followed by the literal rule.

use crate::formula::Formula;
use crate::sequent::{contains_initial, Hypersequent, Judgment, Sequent, Side};

use super::schema::{local_premises, role, Role};
use super::{CalculusId, RetentionPolicy, RuleId, RuleInstance, Violation};

/// `α` and the side it is added to by an HTS5 modal rule.
pub(crate) fn modal_addition(rule: RuleId, f: &Formula) -> Option<(Formula, Side)> {
    use Formula as F;
    use RuleId::*;
    let inner = |g: &F| -> Option<F> {
        match g {
            F::Not(n) => Some((**n).clone()),
            _ => None,
        }
    };
    match (rule, f) {
        (BoxLeft, F::Box(a)) => Some(((**a).clone(), Side::Left)),
        (DiaRight, F::Dia(a)) => Some(((**a).clone(), Side::Right)),
        (BoxRight, F::Box(a)) => Some(((**a).clone(), Side::Right)),
        (DiaLeft, F::Dia(a)) => Some(((**a).clone(), Side::Left)),
        (NegDiaS5LeftH, _) => match inner(f)? {
            F::Dia(a) => Some(((*a).clone(), Side::Right)),
            _ => None,
        },
        (NegDiaS5RightH, _) => match inner(f)? {
            F::Dia(a) => Some(((*a).clone(), Side::Left)),
            _ => None,
        },
        (NegBoxS5RightH, _) => match inner(f)? {
            F::Box(a) => Some(((*a).clone(), Side::Left)),
            _ => None,
        },
        (NegBoxS5LeftH, _) => match inner(f)? {
            F::Box(a) => Some(((*a).clone(), Side::Right)),
            _ => None,
        },
        _ => None,
    }
}

/// The one-formula component `f ⇒` or `⇒ f`.
pub(crate) fn singleton(side: Side, f: &Formula) -> Sequent {
    Sequent::default().with(side, f.clone())
}

fn replace(comps: &[Sequent], i: usize, s: Sequent) -> Vec<Sequent> {
    let mut v = comps.to_vec();
    v[i] = s;
    v
}

fn hyper(comps: Vec<Sequent>) -> Judgment {
    Judgment::Hyper(Hypersequent::new(comps))
}

/// A generalised backward move on an ordered list of components.
#[derive(Clone, Debug)]
pub(crate) enum HMove {
    /// A propositional rule inside component `comp`; the principal is
    /// dropped. Two-premise rules duplicate the remaining components.
    Local { comp: usize, rule: RuleId, principal: Formula, premises: Vec<Sequent> },
    /// A modal rule that adds `α` to component `to`, keeping the principal.
    Propagate { to: usize, rule: RuleId, principal: Formula, alpha: Formula, side: Side },
    /// A modal rule that adds a new component holding `α`.
    Create { rule: RuleId, principal: Formula, alpha: Formula, side: Side },
}

impl HMove {
    pub fn rule(&self) -> RuleId {
        match self {
            HMove::Local { rule, .. } | HMove::Propagate { rule, .. } | HMove::Create { rule, .. } => *rule,
        }
    }

    pub fn principal(&self) -> &Formula {
        match self {
            HMove::Local { principal, .. } | HMove::Propagate { principal, .. } | HMove::Create { principal, .. } => {
                principal
            }
        }
    }

    /// Premise component lists, in the same order as `comps` (new
    /// components are appended).
    pub fn premises(&self, comps: &[Sequent]) -> Vec<Vec<Sequent>> {
        match self {
            HMove::Local { comp, premises, .. } => premises.iter().map(|p| replace(comps, *comp, p.clone())).collect(),
            HMove::Propagate { to, alpha, side, .. } => {
                vec![replace(comps, *to, comps[*to].with(*side, alpha.clone()))]
            }
            HMove::Create { alpha, side, .. } => {
                let mut v = comps.to_vec();
                v.push(singleton(*side, alpha));
                vec![v]
            }
        }
    }

    /// Literal rule instances, from the goal upwards.
    pub fn elaborate(&self, comps: &[Sequent]) -> Vec<RuleInstance> {
        let prems = self.premises(comps);
        match self {
            HMove::Local { comp, rule, principal, .. } => {
                let mut out = Vec::new();
                let mut conc = comps.to_vec();
                if prems.len() == 2 {
                    for (j, c) in comps.iter().enumerate() {
                        if j == *comp {
                            continue;
                        }
                        let mut next = conc.clone();
                        next.push(c.clone());
                        out.push(RuleInstance::new(RuleId::Merge, hyper(conc), vec![hyper(next.clone())], None));
                        conc = next;
                    }
                }
                out.push(RuleInstance::new(
                    *rule,
                    hyper(conc),
                    prems.into_iter().map(hyper).collect(),
                    Some(principal.clone()),
                ));
                out
            }
            HMove::Propagate { rule, principal, .. } | HMove::Create { rule, principal, .. } => {
                let side = rule.principal_side().unwrap();
                let mut split = comps.to_vec();
                split.push(singleton(side, principal));
                vec![
                    RuleInstance::new(RuleId::Merge, hyper(comps.to_vec()), vec![hyper(split.clone())], None),
                    RuleInstance::new(*rule, hyper(split), prems.into_iter().map(hyper).collect(), Some(principal.clone())),
                ]
            }
        }
    }

    /// The move as one generalised instance.
    pub fn instance_on(&self, comps: &[Sequent]) -> RuleInstance {
        RuleInstance::new(
            self.rule(),
            hyper(comps.to_vec()),
            self.premises(comps).into_iter().map(hyper).collect(),
            Some(self.principal().clone()),
        )
    }
}

/// Moves on `comps`, ordered: single-premise propositional rules,
/// propagation, two-premise rules, then component creation. `seen(j, side,
/// α)` tells whether component `j` already had `α` on `side`; such
/// additions are skipped.
pub(crate) fn moves_with(comps: &[Sequent], seen: &dyn Fn(usize, Side, &Formula) -> bool) -> Vec<HMove> {
    let c = CalculusId::HTS5;
    let mut single = Vec::new();
    let mut propagate = Vec::new();
    let mut double = Vec::new();
    let mut create = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        for side in [Side::Left, Side::Right] {
            for f in comp.side(side) {
                let Some(rule) = super::rule_for(c, side, f) else { continue };
                match role(c, rule) {
                    Role::Local { .. } => {
                        let Some(ps) = local_premises(rule, comp, f, false) else { continue };
                        let two = ps.len() == 2;
                        let mv = HMove::Local { comp: i, rule, principal: f.clone(), premises: ps };
                        if two {
                            double.push(mv);
                        } else {
                            single.push(mv);
                        }
                    }
                    Role::HyperPropagate => {
                        let Some((alpha, add)) = modal_addition(rule, f) else { continue };
                        for to in 0..comps.len() {
                            if !seen(to, add, &alpha) {
                                propagate.push(HMove::Propagate {
                                    to,
                                    rule,
                                    principal: f.clone(),
                                    alpha: alpha.clone(),
                                    side: add,
                                });
                            }
                        }
                    }
                    Role::HyperCreate => {
                        let Some((alpha, add)) = modal_addition(rule, f) else { continue };
                        if !(0..comps.len()).any(|j| seen(j, add, &alpha)) {
                            create.push(HMove::Create { rule, principal: f.clone(), alpha, side: add });
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    single.into_iter().chain(propagate).chain(double).chain(create).collect()
}

/// Moves on a hypersequent as generalised instances, judging repetition by
/// current content. A component containing an initial sequent yields an
/// initial move first.
pub(crate) fn moves(h: &Hypersequent, _policy: RetentionPolicy) -> Vec<RuleInstance> {
    let comps = h.components();
    let seen = |j: usize, side: Side, a: &Formula| comps[j].side(side).contains(a);
    let mut out = Vec::new();
    if let Some((kind, _)) = comps.iter().find_map(|s| contains_initial(s, CalculusId::HTS5)) {
        out.push(RuleInstance::new(RuleId::Initial(kind), Judgment::Hyper(h.clone()), vec![], None));
    }
    out.extend(moves_with(comps, &seen).iter().map(|m| m.instance_on(comps)));
    out
}

/// Literal steps that close `comps` with the initial sequent inside
/// component `i`: every other component is weakened away, then component
/// `i` is reduced to the initial pattern. Listed from the goal upwards,
/// ending with the initial sequent itself.
pub(crate) fn closing_chain(comps: &[Sequent], i: usize) -> Vec<RuleInstance> {
    let (kind, pattern) = contains_initial(&comps[i], CalculusId::HTS5).expect("component is not initial");
    let mut out = Vec::new();
    let mut cur: Vec<Sequent> = comps.to_vec();
    let mut target = i;
    // Weaken away the other components, last first so `target` stays valid.
    for j in (0..comps.len()).rev() {
        if j == target {
            continue;
        }
        shrink_component(&mut cur, j, None, &mut out);
        let last = cur[j].clone();
        let side = if last.ante.is_empty() { Side::Right } else { Side::Left };
        let f = last.side(side).iter().next().unwrap().clone();
        let mut next = cur.clone();
        next.remove(j);
        let rule = if side == Side::Left { RuleId::ExWeakenLeft } else { RuleId::ExWeakenRight };
        out.push(RuleInstance::new(rule, hyper(cur.clone()), vec![hyper(next.clone())], Some(f)));
        cur = next;
        if j < target {
            target -= 1;
        }
    }
    shrink_component(&mut cur, target, Some(&pattern), &mut out);
    out.push(RuleInstance::new(RuleId::Initial(kind), hyper(cur), vec![], None));
    out
}

/// Internal weakening steps removing formulas from component `j` until it
/// equals `to`, or holds a single formula when `to` is `None`.
fn shrink_component(cur: &mut Vec<Sequent>, j: usize, to: Option<&Sequent>, out: &mut Vec<RuleInstance>) {
    loop {
        let comp = cur[j].clone();
        let victim = match to {
            Some(t) => comp
                .ante
                .difference(&t.ante)
                .next()
                .map(|f| (Side::Left, f.clone()))
                .or_else(|| comp.succ.difference(&t.succ).next().map(|f| (Side::Right, f.clone()))),
            None if comp.len() > 1 => comp
                .ante
                .iter()
                .next()
                .map(|f| (Side::Left, f.clone()))
                .or_else(|| comp.succ.iter().next().map(|f| (Side::Right, f.clone()))),
            None => None,
        };
        let Some((side, f)) = victim else { return };
        let next = replace(cur, j, comp.without(side, &f));
        let rule = if side == Side::Left { RuleId::InWeakenLeft } else { RuleId::InWeakenRight };
        out.push(RuleInstance::new(rule, hyper(cur.clone()), vec![hyper(next.clone())], Some(f)));
        *cur = next;
    }
}

/// Spell out a generalised instance produced by [`moves`].
pub(crate) fn elaborate_instance(inst: &RuleInstance, h: &Hypersequent) -> Vec<RuleInstance> {
    let comps = h.components();
    match role(CalculusId::HTS5, inst.rule) {
        Role::Initial => match comps.iter().position(|s| contains_initial(s, CalculusId::HTS5).is_some()) {
            Some(i) => closing_chain(comps, i),
            None => vec![inst.clone()],
        },
        Role::Local { .. } if inst.premises.len() == 2 => {
            let f = inst.principal.as_ref().unwrap();
            let side = inst.rule.principal_side().unwrap();
            for (i, comp) in comps.iter().enumerate() {
                if !comp.side(side).contains(f) {
                    continue;
                }
                let Some(ps) = local_premises(inst.rule, comp, f, false) else { continue };
                let mv = HMove::Local { comp: i, rule: inst.rule, principal: f.clone(), premises: ps };
                let generalised = mv.instance_on(comps);
                if generalised.premises == inst.premises {
                    return mv.elaborate(comps);
                }
            }
            vec![inst.clone()]
        }
        Role::HyperPropagate | Role::HyperCreate => {
            let f = inst.principal.as_ref().unwrap();
            let side = inst.rule.principal_side().unwrap();
            let mut split = comps.to_vec();
            split.push(singleton(side, f));
            vec![
                RuleInstance::new(RuleId::Merge, inst.conclusion.clone(), vec![hyper(split.clone())], None),
                RuleInstance::new(inst.rule, hyper(split), inst.premises.clone(), Some(f.clone())),
            ]
        }
        _ => vec![inst.clone()],
    }
}

fn mismatch(rule: RuleId, expected: &Hypersequent, found: &[Hypersequent]) -> Violation {
    Violation::PremiseMismatch {
        rule,
        expected: expected.to_string(),
        found: found.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" | "),
    }
}

/// Check an HTS5 instance; membership in the inventory is checked by the
/// caller.
pub(crate) fn check_instance(inst: &RuleInstance) -> Result<(), Violation> {
    let c = CalculusId::HTS5;
    let rule = inst.rule;
    let wrong = |j: &Judgment| Violation::WrongJudgment { calculus: c, expected: "hypersequent", found: j.to_string() };
    let conc = inst.conclusion.as_hyper().ok_or_else(|| wrong(&inst.conclusion))?;
    let prems = inst
        .premises
        .iter()
        .map(|p| p.as_hyper().cloned().ok_or_else(|| wrong(p)))
        .collect::<Result<Vec<_>, _>>()?;
    let arity = |n: usize| {
        if prems.len() == n {
            Ok(())
        } else {
            Err(Violation::Arity { rule, expected: n, found: prems.len() })
        }
    };
    let no_principal = || Violation::NoPrincipal { rule, conclusion: conc.to_string() };
    let comps = conc.components();
    let principal = inst.principal.as_ref();
    let pick = |pool: &Sequent, side: Side| -> Vec<Formula> {
        match principal {
            Some(f) => vec![f.clone()],
            None => pool.side(side).iter().cloned().collect(),
        }
    };
    match role(c, rule) {
        Role::Initial => {
            arity(0)?;
            let RuleId::Initial(kind) = rule else { unreachable!() };
            match comps {
                [only] if kind.matches(only).is_some() => Ok(()),
                _ => Err(Violation::NotInitial { conclusion: conc.to_string(), kind: kind.name() }),
            }
        }
        Role::Structural => match rule {
            RuleId::Merge => {
                arity(1)?;
                let p = prems[0].components();
                for a in 0..p.len() {
                    for b in a + 1..p.len() {
                        let merged = Sequent {
                            ante: p[a].ante.union(&p[b].ante).cloned().collect(),
                            succ: p[a].succ.union(&p[b].succ).cloned().collect(),
                        };
                        let mut rest: Vec<Sequent> = p.to_vec();
                        rest.remove(b);
                        rest.remove(a);
                        rest.push(merged);
                        if Hypersequent::new(rest) == *conc {
                            return Ok(());
                        }
                    }
                }
                Err(Violation::PremiseMismatch {
                    rule,
                    expected: "two components whose union gives the conclusion".into(),
                    found: prems[0].to_string(),
                })
            }
            RuleId::InWeakenLeft | RuleId::InWeakenRight => {
                arity(1)?;
                let side = rule.principal_side().unwrap();
                let mut last = None;
                for comp in comps {
                    for f in pick(comp, side) {
                        if !comp.side(side).contains(&f) {
                            continue;
                        }
                        let rest = conc.remove_one(comp).unwrap();
                        let expected = rest.plus(comp.without(side, &f));
                        if expected == prems[0] || prems[0] == *conc {
                            return Ok(());
                        }
                        last = Some(expected);
                    }
                }
                Err(last.map(|e| mismatch(rule, &e, &prems)).unwrap_or_else(no_principal))
            }
            RuleId::ExWeakenLeft | RuleId::ExWeakenRight => {
                arity(1)?;
                let side = rule.principal_side().unwrap();
                for comp in comps {
                    let [f] = comp.side(side).iter().collect::<Vec<_>>()[..] else { continue };
                    if !comp.side(side.flip()).is_empty() || principal.is_some_and(|p| p != f) {
                        continue;
                    }
                    let rest = conc.remove_one(comp).unwrap();
                    if rest.is_empty() {
                        continue;
                    }
                    if rest == prems[0] {
                        return Ok(());
                    }
                    return Err(mismatch(rule, &rest, &prems));
                }
                Err(no_principal())
            }
            RuleId::Cut => {
                arity(2)?;
                let (p0, p1) = (prems[0].components(), prems[1].components());
                for (ai, a) in p0.iter().enumerate() {
                    for alpha in pick(a, Side::Right) {
                        if !a.succ.contains(&alpha) {
                            continue;
                        }
                        for (bi, b) in p1.iter().enumerate() {
                            if !b.ante.contains(&alpha) {
                                continue;
                            }
                            for keep_a in [false, true] {
                                for keep_b in [false, true] {
                                    let a_ctx = if keep_a { a.clone() } else { a.without(Side::Right, &alpha) };
                                    let b_ctx = if keep_b { b.clone() } else { b.without(Side::Left, &alpha) };
                                    let merged = Sequent {
                                        ante: a_ctx.ante.union(&b_ctx.ante).cloned().collect(),
                                        succ: a_ctx.succ.union(&b_ctx.succ).cloned().collect(),
                                    };
                                    let mut all: Vec<Sequent> = Vec::new();
                                    all.extend(p0.iter().enumerate().filter(|(k, _)| *k != ai).map(|(_, s)| s.clone()));
                                    all.extend(p1.iter().enumerate().filter(|(k, _)| *k != bi).map(|(_, s)| s.clone()));
                                    all.push(merged);
                                    if Hypersequent::new(all) == *conc {
                                        return Ok(());
                                    }
                                }
                            }
                        }
                    }
                }
                Err(Violation::PremiseMismatch {
                    rule,
                    expected: "premises whose cut gives the conclusion".into(),
                    found: prems.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" | "),
                })
            }
            _ => unreachable!("sequent structural rule in HTS5"),
        },
        Role::Local { .. } => {
            let side = rule.principal_side().unwrap();
            let mut last = None;
            for comp in comps {
                let rest = conc.remove_one(comp).unwrap();
                for f in pick(comp, side) {
                    for retain in [false, true] {
                        let Some(ps) = local_premises(rule, comp, &f, retain) else { continue };
                        arity(ps.len())?;
                        if ps.len() == 1 {
                            let expected = rest.plus(ps[0].clone());
                            if expected == prems[0] {
                                return Ok(());
                            }
                            last = Some(expected);
                        } else {
                            let split = prems[0].remove_one(&ps[0]).zip(prems[1].remove_one(&ps[1]));
                            if let Some((h, g)) = split {
                                if h.union(&g) == rest {
                                    return Ok(());
                                }
                            }
                            last = Some(rest.plus(ps[0].clone()));
                        }
                    }
                }
            }
            Err(last.map(|e| mismatch(rule, &e, &prems)).unwrap_or_else(no_principal))
        }
        Role::HyperPropagate | Role::HyperCreate => {
            arity(1)?;
            let side = rule.principal_side().unwrap();
            let create = role(c, rule) == Role::HyperCreate;
            let mut last = None;
            for comp in comps {
                let [f] = comp.side(side).iter().collect::<Vec<_>>()[..] else { continue };
                if !comp.side(side.flip()).is_empty() || principal.is_some_and(|p| p != f) {
                    continue;
                }
                let Some((alpha, add)) = modal_addition(rule, f) else { continue };
                let rest = conc.remove_one(comp).unwrap();
                if create {
                    let expected = rest.plus(singleton(add, &alpha));
                    if expected == prems[0] {
                        return Ok(());
                    }
                    last = Some(expected);
                } else {
                    for target in rest.components() {
                        let expected = rest.remove_one(target).unwrap().plus(target.with(add, alpha.clone()));
                        if expected == prems[0] {
                            return Ok(());
                        }
                        last = Some(expected);
                    }
                }
            }
            Err(last.map(|e| mismatch(rule, &e, &prems)).unwrap_or_else(no_principal))
        }
        Role::Transition(_) => unreachable!("sequent transition in HTS5"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(src: &str) -> Hypersequent {
        Hypersequent::parse(src).unwrap()
    }
    fn f(src: &str) -> Formula {
        Formula::parse(src).unwrap()
    }
    fn inst(rule: RuleId, conc: &str, prems: &[&str], p: Option<&str>) -> RuleInstance {
        RuleInstance::new(rule, h(conc).into(), prems.iter().map(|s| h(s).into()).collect(), p.map(f))
    }

    #[test]
    fn modal_rules_check() {
        let ok = |i: RuleInstance| check_instance(&i).unwrap();
        ok(inst(RuleId::BoxLeft, "[]a => ; q => r", &["a, q => r"], Some("[]a")));
        ok(inst(RuleId::BoxRight, "=> []a ; q =>", &["=> a ; q =>"], None));
        ok(inst(RuleId::DiaRight, "q => r ; => <>a", &["q => r, a"], None));
        ok(inst(RuleId::NegBoxS5RightH, "q => r ; => ~[]a", &["a, q => r"], None));
        ok(inst(RuleId::NegDiaS5LeftH, "~<>a => ; q =>", &["q => a"], None));
        ok(inst(RuleId::Merge, "p, q => r", &["p => ; q => r"], None));
        ok(inst(RuleId::ExWeakenLeft, "a => ; q =>", &["q =>"], None));
        ok(inst(RuleId::AndRight, "=> a & b ; q => ; r =>", &["=> a ; q =>", "=> b ; r =>"], None));
        ok(inst(RuleId::Cut, "p => q", &["p => a", "a => q"], None));
        assert!(check_instance(&inst(RuleId::BoxLeft, "[]a, s => ; q => r", &["a, q => r"], None)).is_err());
        assert!(check_instance(&inst(RuleId::ExWeakenLeft, "a =>", &["a =>"], None)).is_err());
    }

    #[test]
    fn elaborated_moves_check() {
        let goal = h("[]a, p => <>b ; ~[]c => ; => ~<>d, q & r");
        for m in moves(&goal, RetentionPolicy::Persistent) {
            for step in elaborate_instance(&m, &goal) {
                check_instance(&step).unwrap_or_else(|e| panic!("{step}: {e}"));
            }
        }
    }

    #[test]
    fn closing_chain_checks() {
        let comps = vec![
            Sequent::parse("q => r").unwrap(),
            Sequent::parse("p, s => p, t").unwrap(),
            Sequent::parse("=> u").unwrap(),
        ];
        let chain = closing_chain(&comps, 1);
        for step in &chain {
            check_instance(step).unwrap_or_else(|e| panic!("{step}: {e}"));
        }
        assert!(chain.last().unwrap().rule.is_initial());
    }
}
