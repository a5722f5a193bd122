//! Proof trees, the proof checker and proof metrics.

mod fixtures;
mod render;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

pub use fixtures::{example_sequent, fixture, gs4_example, gts4_example, lts4_example};
pub use render::{parse_json, render, to_json, ProofFormat, ProofParseError};

use crate::calculi::{check_instance, CalculusId, RuleId, RuleInstance, Violation};
use crate::formula::Formula;
use crate::sequent::{FormulaSet, InitialKind, Judgment};

/// A derivation: the conclusion, the rule that yields it, and proofs of
/// the premises in rule order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub conclusion: Judgment,
    pub rule: RuleId,
    pub principal: Option<Formula>,
    pub premises: Vec<Proof>,
}

/// Size measures of a proof.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProofMetrics {
    /// Every inner node, structural rules included.
    pub rule_applications: usize,
    /// Inner nodes other than cut, weakening and merge.
    pub logical_rule_applications: usize,
    /// Edges on the longest root-to-leaf path.
    pub height: usize,
    pub distinct_sequents: usize,
}

/// A checker failure, located by a JSON-pointer path such as
/// `/premises/0/premises/1`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {}: {violation}", if path.is_empty() { "/" } else { path.as_str() })]
pub struct CheckError {
    pub path: String,
    pub violation: Violation,
}

/// A formula outside the subformulas of the end-sequent.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {path}: `{formula}` is not a subformula of the end-sequent")]
pub struct AuditError {
    pub path: String,
    pub formula: Formula,
}

impl Proof {
    pub fn leaf(conclusion: Judgment, kind: InitialKind) -> Proof {
        Proof { conclusion, rule: RuleId::Initial(kind), principal: None, premises: vec![] }
    }

    pub fn node(conclusion: Judgment, rule: RuleId, principal: Option<Formula>, premises: Vec<Proof>) -> Proof {
        Proof { conclusion, rule, principal, premises }
    }

    /// The rule application at the root.
    pub fn instance(&self) -> RuleInstance {
        RuleInstance::new(
            self.rule,
            self.conclusion.clone(),
            self.premises.iter().map(|p| p.conclusion.clone()).collect(),
            self.principal.clone(),
        )
    }

    /// Check every node against calculus `c`. Reports the first violation
    /// in pre-order.
    pub fn check(&self, c: CalculusId) -> Result<(), CheckError> {
        self.check_at(c, &mut String::new())
    }

    fn check_at(&self, c: CalculusId, path: &mut String) -> Result<(), CheckError> {
        check_instance(&self.instance(), c).map_err(|violation| CheckError { path: path.clone(), violation })?;
        for (i, p) in self.premises.iter().enumerate() {
            let len = path.len();
            path.push_str(&format!("/premises/{i}"));
            p.check_at(c, path)?;
            path.truncate(len);
        }
        Ok(())
    }

    pub fn metrics(&self) -> ProofMetrics {
        let mut seen = HashSet::new();
        let mut m = ProofMetrics::default();
        m.height = self.walk(&mut |p| {
            seen.insert(&p.conclusion);
            if !p.rule.is_initial() {
                m.rule_applications += 1;
                if p.rule.is_logical() {
                    m.logical_rule_applications += 1;
                }
            }
        });
        m.distinct_sequents = seen.len();
        m
    }

    /// Visit every node; returns the height.
    fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Proof)) -> usize {
        visit(self);
        self.premises.iter().map(|p| 1 + p.walk(visit)).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Proof::node_count).sum::<usize>()
    }

    /// Every formula in the proof is a subformula of the end-sequent.
    pub fn subformula_audit(&self) -> Result<(), AuditError> {
        let allowed = self.conclusion.subformulas();
        self.audit_at(&allowed, &mut String::new())
    }

    fn audit_at(&self, allowed: &FormulaSet, path: &mut String) -> Result<(), AuditError> {
        let here = self.conclusion.subformulas();
        if let Some(f) = here.difference(allowed).next() {
            return Err(AuditError { path: if path.is_empty() { "/".into() } else { path.clone() }, formula: f.clone() });
        }
        for (i, p) in self.premises.iter().enumerate() {
            let len = path.len();
            path.push_str(&format!("/premises/{i}"));
            p.audit_at(allowed, path)?;
            path.truncate(len);
        }
        Ok(())
    }

    /// Rules used, in pre-order.
    pub fn rules(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.walk(&mut |p| out.push(p.rule));
        out
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::text(self, crate::formula::RenderStyle::Ascii))
    }
}
