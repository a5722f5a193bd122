//! Seeded formula corpora, curated sequent lists and the proof-size
//! benchmark.

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculi::CalculusId;
use crate::formula::Formula;
use crate::proof::{example_sequent, ProofMetrics};
use crate::search::{prove, Decision, SearchConfig};
use crate::sequent::{Judgment, Sequent};

/// Parameters of a random corpus. The generator is ChaCha8 seeded with
/// `seed`, so a spec always yields the same formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub max_depth: usize,
    pub var_count: usize,
    /// Probability that an internal node is `¬`.
    pub neg_bias: f64,
    /// Probability that a non-negation internal node is `□` or `◇`.
    pub modal_bias: f64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { seed: 0, count: 100, max_depth: 4, var_count: 3, neg_bias: 0.5, modal_bias: 0.3 }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.count == 0 {
            return Err("count must be at least 1".into());
        }
        if self.var_count == 0 {
            return Err("at least one variable is needed".into());
        }
        for (name, x) in [("neg-bias", self.neg_bias), ("modal-bias", self.modal_bias)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(format!("{name} must lie in [0, 1], got {x}"));
            }
        }
        Ok(())
    }
}

const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// The name of the `i`-th corpus variable: `p`, `q`, ... then `p8`, `p9`, ...
pub fn var_name(i: usize) -> String {
    NAMES.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string())
}

fn gen_formula(rng: &mut ChaCha8Rng, spec: &CorpusSpec, depth: usize) -> Formula {
    let atom = |rng: &mut ChaCha8Rng| Formula::var(&var_name(rng.gen_range(0..spec.var_count)));
    if depth == 0 {
        return atom(rng);
    }
    if rng.gen_bool(spec.neg_bias) {
        return gen_formula(rng, spec, depth - 1).neg();
    }
    if rng.gen_bool(spec.modal_bias) {
        let a = gen_formula(rng, spec, depth - 1);
        return if rng.gen_bool(0.5) { a.boxed() } else { a.dia() };
    }
    match rng.gen_range(0..4) {
        0 => atom(rng),
        k => {
            let a = gen_formula(rng, spec, depth - 1);
            let b = gen_formula(rng, spec, depth - 1);
            match k {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            }
        }
    }
}

/// `spec.count` formulas of depth at most `spec.max_depth`.
pub fn generate(spec: &CorpusSpec) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count).map(|_| gen_formula(&mut rng, spec, spec.max_depth)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CuratedSet {
    S4Theorems,
    S4Nontheorems,
    KtSeparators,
    S5Separators,
}

impl CuratedSet {
    pub const ALL: [CuratedSet; 4] =
        [CuratedSet::S4Theorems, CuratedSet::S4Nontheorems, CuratedSet::KtSeparators, CuratedSet::S5Separators];

    pub fn key(self) -> &'static str {
        match self {
            CuratedSet::S4Theorems => "s4_theorems",
            CuratedSet::S4Nontheorems => "s4_nontheorems",
            CuratedSet::KtSeparators => "kt_separators",
            CuratedSet::S5Separators => "s5_separators",
        }
    }

    pub fn from_key(key: &str) -> Option<CuratedSet> {
        CuratedSet::ALL.into_iter().find(|s| s.key() == key)
    }
}

/// Fixed sequent lists.
///
/// * `s4_theorems`: the K, T and 4 axioms, both directions of both
///   dualities, and the sequent `¬¬¬◇¬p ⇒ ¬◇¬¬◇¬¬¬p`.
/// * `s4_nontheorems`: `p ⇒ □p`, `◇p ⇒ □p`, the B axiom and the 5 axiom.
/// * `kt_separators`: S4 theorems with reflexive countermodels (4 axiom).
/// * `s5_separators`: S5 theorems that S4 rejects.
pub fn curated(set: CuratedSet) -> Vec<Sequent> {
    let srcs: &[&str] = match set {
        CuratedSet::S4Theorems => &[
            "=> [](p -> q) -> ([]p -> []q)",
            "=> []p -> p",
            "=> []p -> [][]p",
            "[]p => ~<>~p",
            "~<>~p => []p",
            "<>p => ~[]~p",
            "~[]~p => <>p",
        ],
        CuratedSet::S4Nontheorems => &["p => []p", "<>p => []p", "=> p -> []<>p", "=> <>p -> []<>p"],
        CuratedSet::KtSeparators => &["=> []p -> [][]p", "=> <><>p -> <>p"],
        CuratedSet::S5Separators => &["<>p => []<>p", "p => []~[]~p", "=> p -> []<>p"],
    };
    let mut out: Vec<Sequent> = srcs.iter().map(|s| Sequent::parse(s).expect("curated sequent")).collect();
    if set == CuratedSet::S4Theorems {
        out.push(example_sequent());
    }
    out
}

/// One benchmark measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub index: usize,
    pub formula: String,
    pub calculus: String,
    pub decision: Decision,
    pub rules_total: Option<usize>,
    pub rules_logical: Option<usize>,
    pub visited: usize,
    pub millis: f64,
}

/// Size statistics for one calculus over the goals every benchmarked
/// calculus proved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Aggregate {
    pub calculus: String,
    pub provable: usize,
    pub not_provable: usize,
    pub unknown: usize,
    pub common: usize,
    pub mean_total: f64,
    pub median_total: f64,
    pub mean_logical: f64,
    pub median_logical: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<Aggregate>,
    /// Goal indices on which the calculi disagree.
    pub disagreements: Vec<usize>,
}

fn mean(xs: &[usize]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<usize>() as f64 / xs.len() as f64
    }
}

fn median(xs: &[usize]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_unstable();
    match v.len() {
        0 => 0.0,
        n if n % 2 == 1 => v[n / 2] as f64,
        n => (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0,
    }
}

fn measure(index: usize, goal: &Sequent, c: CalculusId, cfg: &SearchConfig) -> BenchRow {
    let start = Instant::now();
    let r = prove(&Judgment::Sequent(goal.clone()), c, cfg);
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    let m: Option<ProofMetrics> = r.proof.as_ref().map(|p| p.metrics());
    BenchRow {
        index,
        formula: goal.to_string(),
        calculus: c.key().to_string(),
        decision: r.decision,
        rules_total: m.map(|m| m.rule_applications),
        rules_logical: m.map(|m| m.logical_rule_applications),
        visited: r.stats.visited,
        millis,
    }
}

/// Prove every goal in every calculus. `jobs` sets the worker count
/// (0 lets rayon choose); rows come out in goal order, then calculus order.
pub fn run_benchmark(
    goals: &[Sequent],
    calculi: &[CalculusId],
    cfg: &SearchConfig,
    jobs: usize,
) -> Result<BenchReport, String> {
    if let Some(c) = calculi.iter().find(|c| c.is_hyper()) {
        return Err(format!("{c} is not a sequent calculus"));
    }
    let work: Vec<(usize, &Sequent, CalculusId)> =
        goals.iter().enumerate().flat_map(|(i, g)| calculi.iter().map(move |&c| (i, g, c))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
    let rows: Vec<BenchRow> = pool.install(|| work.par_iter().map(|&(i, g, c)| measure(i, g, c, cfg)).collect());

    let per_goal = |i: usize| rows.iter().filter(move |r| r.index == i);
    let common: Vec<usize> =
        (0..goals.len()).filter(|&i| per_goal(i).all(|r| r.decision == Decision::Provable)).collect();
    let disagreements =
        (0..goals.len()).filter(|&i| per_goal(i).map(|r| r.decision).collect::<std::collections::HashSet<_>>().len() > 1).collect();
    let aggregates = calculi
        .iter()
        .map(|c| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.calculus == c.key()).collect();
            let count = |d: Decision| mine.iter().filter(|r| r.decision == d).count();
            let shared: Vec<&&BenchRow> = mine.iter().filter(|r| common.contains(&r.index)).collect();
            let total: Vec<usize> = shared.iter().filter_map(|r| r.rules_total).collect();
            let logical: Vec<usize> = shared.iter().filter_map(|r| r.rules_logical).collect();
            Aggregate {
                calculus: c.key().to_string(),
                provable: count(Decision::Provable),
                not_provable: count(Decision::NotProvable),
                unknown: count(Decision::Unknown),
                common: shared.len(),
                mean_total: mean(&total),
                median_total: median(&total),
                mean_logical: mean(&logical),
                median_logical: median(&logical),
            }
        })
        .collect();
    Ok(BenchReport { rows, aggregates, disagreements })
}

impl BenchReport {
    /// CSV with columns `index, formula, calculus, decision, rules_total,
    /// rules_logical, visited, millis`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Write the CSV to `path` and the JSON mirror next to it with a
    /// `.json` extension.
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let csv = self.to_csv().map_err(std::io::Error::other)?;
        std::fs::write(path, csv)?;
        std::fs::write(path.with_extension("json"), self.to_json())
    }

    pub fn aggregate(&self, c: CalculusId) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.calculus == c.key())
    }
}
