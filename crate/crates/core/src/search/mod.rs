//! Backward proof search for all nine calculi.
//!
//! Search is deterministic: the same goal, calculus and configuration
//! always give the same decision, statistics and proof.

mod hyper;
mod sequent;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::calculi::CalculusId;
use crate::proof::Proof;
use crate::sequent::{Judgment, Sequent};

pub const DEFAULT_MAX_VISITED: usize = 2_000_000;
pub const DEFAULT_MAX_DEPTH: usize = 200;
pub const MAX_VISITED_ENV: &str = "TWISTPROVER_MAX_VISITED";

/// Search limits. Exceeding either one yields [`Decision::Unknown`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// For HTS5, the number of moves on one branch; for the sequent
    /// calculi, the number of nested transitions.
    pub max_depth: usize,
    /// Total search nodes.
    pub max_visited: usize,
    /// Remove unneeded steps from found proofs.
    pub trim: bool,
}

impl Default for SearchConfig {
    /// Default limits; `TWISTPROVER_MAX_VISITED` overrides the node bound.
    fn default() -> Self {
        let max_visited = std::env::var(MAX_VISITED_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_VISITED);
        SearchConfig { max_depth: DEFAULT_MAX_DEPTH, max_visited, trim: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub visited: usize,
    pub branches: usize,
    pub max_depth_reached: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Provable,
    NotProvable,
    Unknown,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Provable => "provable",
            Decision::NotProvable => "not-provable",
            Decision::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub decision: Decision,
    pub proof: Option<Proof>,
    pub stats: SearchStats,
    /// For `NotProvable`: a saturated sequent (or hypersequent) on which
    /// search got stuck.
    pub stuck: Option<Judgment>,
}

/// Evidence for a `NotProvable` verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// The stuck saturated goal.
    pub stuck: String,
    /// For TCL: a classical valuation falsifying the goal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, bool>>,
    /// For HTS5: the atoms true at each world of a universal S5 model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worlds: Option<Vec<Vec<String>>>,
}

/// Signals that a search bound was hit.
#[derive(Debug)]
pub(crate) struct Bound;

fn as_sequent(goal: &Judgment) -> Sequent {
    match goal {
        Judgment::Sequent(s) => s.clone(),
        Judgment::Hyper(h) => match h.components() {
            [one] => one.clone(),
            _ => panic!("a sequent calculus cannot take the hypersequent `{h}` as a goal"),
        },
    }
}

fn run(goal: &Judgment, c: CalculusId, cfg: &SearchConfig, build: bool) -> SearchResult {
    if c.is_hyper() {
        let h = goal.to_hyper();
        let mut engine = hyper::HEngine::new(cfg, build);
        let out = engine.run(&h);
        let stats = engine.stats;
        return match out {
            Err(Bound) => SearchResult { decision: Decision::Unknown, proof: None, stats, stuck: None },
            Ok(hyper::HOutcome::Proved(t)) => SearchResult {
                decision: Decision::Provable,
                proof: t.map(|t| hyper::emit(&t)),
                stats,
                stuck: None,
            },
            Ok(hyper::HOutcome::Failed(leaf)) => SearchResult {
                decision: Decision::NotProvable,
                proof: None,
                stats,
                stuck: Some(Judgment::Hyper(leaf)),
            },
        };
    }
    let s = as_sequent(goal);
    let mut engine = sequent::Engine::new(c, cfg, build);
    let out = engine.run(&s);
    let stats = engine.stats;
    match out {
        Err(Bound) => SearchResult { decision: Decision::Unknown, proof: None, stats, stuck: None },
        Ok(sequent::Outcome::Proved(t)) => {
            let proof = t.map(|t| {
                let t = if cfg.trim { sequent::trim(c, &t) } else { t };
                sequent::emit(c, &t)
            });
            SearchResult { decision: Decision::Provable, proof, stats, stuck: None }
        }
        Ok(sequent::Outcome::Failed { leaf, .. }) => SearchResult {
            decision: Decision::NotProvable,
            proof: None,
            stats,
            stuck: Some(Judgment::Sequent(leaf)),
        },
    }
}

/// Search for a proof of `goal` in `c`. A `Provable` result carries a
/// proof that passes [`Proof::check`].
pub fn prove(goal: &Judgment, c: CalculusId, cfg: &SearchConfig) -> SearchResult {
    run(goal, c, cfg, true)
}

/// Decide `goal` without building a proof.
pub fn decide(goal: &Judgment, c: CalculusId, cfg: &SearchConfig) -> (Decision, SearchStats) {
    let r = run(goal, c, cfg, false);
    (r.decision, r.stats)
}

/// Convenience wrapper for sequent goals with default limits.
pub fn prove_sequent(goal: &Sequent, c: CalculusId) -> SearchResult {
    prove(&Judgment::Sequent(goal.clone()), c, &SearchConfig::default())
}

/// Convenience wrapper for sequent goals with default limits.
pub fn decide_sequent(goal: &Sequent, c: CalculusId) -> Decision {
    decide(&Judgment::Sequent(goal.clone()), c, &SearchConfig::default()).0
}

/// Evidence for a `NotProvable` result: the stuck goal, plus a falsifying
/// valuation for TCL and a universal S5 model for HTS5.
pub fn not_provable_certificate(result: &SearchResult, c: CalculusId) -> Option<Certificate> {
    if result.decision != Decision::NotProvable {
        return None;
    }
    let stuck = result.stuck.as_ref()?;
    let valuation = match (c, stuck) {
        (CalculusId::TCL, Judgment::Sequent(s)) => Some(literal_valuation(s)),
        _ => None,
    };
    let worlds = match stuck {
        Judgment::Hyper(h) if c.is_hyper() => Some(hyper::stuck_valuation(h)),
        _ => None,
    };
    Some(Certificate { stuck: stuck.to_string(), valuation, worlds })
}

/// Read a valuation off a stuck TCL sequent, which holds only literals:
/// atoms on the left and negated atoms on the right are true.
fn literal_valuation(s: &Sequent) -> BTreeMap<String, bool> {
    use crate::formula::Formula;
    let mut v = BTreeMap::new();
    for (side_is_left, set) in [(true, &s.ante), (false, &s.succ)] {
        for f in set {
            match f {
                Formula::Var(p) => {
                    v.insert(p.to_string(), side_is_left);
                }
                Formula::Not(a) => {
                    if let Formula::Var(p) = &**a {
                        v.insert(p.to_string(), !side_is_left);
                    }
                }
                _ => {}
            }
        }
    }
    v
}
