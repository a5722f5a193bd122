//! Acceptance suite. Runs as a plain binary (`harness = false`) so that it
//! prints exactly one PASS/FAIL line per criterion.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twist_core::cli;
use twist_core::corpus::{generate, CorpusSpec};
use twist_core::proof::{example_sequent, fixture, render, ProofFormat};
use twist_core::search::{decide, prove, Decision, SearchConfig};
use twist_core::semantics::{classical_valid, find_countermodel, FrameClass};
use twist_core::{CalculusId, Formula, Judgment, Sequent};

use CalculusId::*;
use Decision::*;

/// Every proof the suite obtains passes through here: it is checked and
/// audited for the subformula property.
struct Audit {
    proofs: AtomicUsize,
    violations: Mutex<Vec<String>>,
}

static AUDIT: Audit = Audit { proofs: AtomicUsize::new(0), violations: Mutex::new(Vec::new()) };

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn run_prove(goal: &Judgment, c: CalculusId) -> Decision {
    let r = prove(goal, c, &cfg());
    if let Some(p) = &r.proof {
        AUDIT.proofs.fetch_add(1, Ordering::Relaxed);
        let mut bad = Vec::new();
        if let Err(e) = p.check(c) {
            bad.push(format!("{c} proof of {goal} fails the checker {e}"));
        }
        if let Err(e) = p.subformula_audit() {
            bad.push(format!("{c} proof of {goal}: {e}"));
        }
        let same = if c.is_hyper() { p.conclusion.to_hyper() == goal.to_hyper() } else { p.conclusion == *goal };
        if !same {
            bad.push(format!("{c} proof concludes {} instead of {goal}", p.conclusion));
        }
        if p.rules().iter().any(|r| r.name() == "cut") {
            bad.push(format!("{c} proof of {goal} uses cut"));
        }
        AUDIT.violations.lock().unwrap().extend(bad);
    }
    r.decision
}

fn goal(s: &Sequent) -> Judgment {
    Judgment::Sequent(s.clone())
}

fn prove_seq(s: &Sequent, c: CalculusId) -> Decision {
    run_prove(&goal(s), c)
}

fn prove_src(src: &str, c: CalculusId) -> Decision {
    run_prove(&Judgment::parse(src, c).unwrap(), c)
}

fn valid(f: &Formula) -> Sequent {
    Sequent::new([], [f.clone()])
}

fn expect(failures: &mut Vec<String>, what: impl std::fmt::Display, got: Decision, want: Decision) {
    if got != want {
        failures.push(format!("{what}: {got}, expected {want}"));
    }
}

type Verdict = Result<String, String>;

fn verdict(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Err(format!("{} failure(s): {}", failures.len(), shown.join("; ")))
    }
}

fn within(elapsed: Duration, limit: Duration, failures: &mut Vec<String>) {
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:.0?}"));
    }
}

fn cli_code(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["twistprover"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn worked_example() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dir = std::env::temp_dir().join(format!("twistprover-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut logical = Vec::new();
    for (c, want) in [(LTS4, 6), (GTS4, 6), (GS4, 13)] {
        let p = fixture(c).unwrap();
        let path = dir.join(format!("{}.json", c.key()));
        std::fs::write(&path, render(&p, c, ProofFormat::Json)).unwrap();
        let (code, text) = cli_code(&["check", path.to_str().unwrap()]);
        if code != 0 {
            failures.push(format!("check {c} fixture exited {code}: {text}"));
        }
        let m = p.metrics();
        if m.logical_rule_applications != want {
            failures.push(format!("{c} fixture has {} logical rules, expected {want}", m.logical_rule_applications));
        }
        let r = prove(&goal(&example_sequent()), c, &cfg());
        match &r.proof {
            Some(q) if q.check(c).is_ok() => logical.push(q.metrics().logical_rule_applications),
            _ => failures.push(format!("search in {c}: {}", r.decision)),
        }
        run_prove(&goal(&example_sequent()), c);
    }
    let _ = std::fs::remove_dir_all(&dir);
    if logical.len() == 3 && !(logical[0] < logical[2] && logical[1] < logical[2]) {
        failures.push(format!("search sizes {logical:?} are not twist < GS4"));
    }
    within(start.elapsed(), Duration::from_secs(1), &mut failures);
    verdict(failures, format!("fixtures 6/6/13 check; search sizes {logical:?} in {:.2?}", start.elapsed()))
}

fn suite_spec(seed: u64, count: usize) -> CorpusSpec {
    CorpusSpec { seed, count, max_depth: 4, var_count: 3, neg_bias: 0.5, modal_bias: 0.3 }
}

fn theorem_equivalence() -> Verdict {
    let start = Instant::now();
    let corpus = generate(&suite_spec(2024, 500));
    let rows: Vec<[Decision; 3]> = corpus
        .par_iter()
        .map(|f| {
            let g = goal(&valid(f));
            [LTS4, GTS4, GS4].map(|c| decide(&g, c, &cfg()).0)
        })
        .collect();
    let mut failures = Vec::new();
    let mut provable = 0;
    for (f, row) in corpus.iter().zip(&rows) {
        if row.contains(&Unknown) {
            failures.push(format!("unknown on => {f}: {row:?}"));
        } else if row[0] != row[1] || row[1] != row[2] {
            failures.push(format!("disagreement on => {f}: {row:?}"));
        }
        provable += (row[0] == Provable) as usize;
    }
    within(start.elapsed(), Duration::from_secs(300), &mut failures);
    verdict(failures, format!("500 goals agree ({provable} provable) in {:.2?}", start.elapsed()))
}

fn generalized_initials() -> Verdict {
    let corpus = generate(&suite_spec(7, 200));
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|a| {
            let na = a.clone().neg();
            let goals = [
                Sequent::new([a.clone()], [a.clone()]),
                Sequent::new([a.clone(), na.clone()], []),
                Sequent::new([], [a.clone(), na]),
            ];
            let mut bad = Vec::new();
            for c in [LTS4, GTS4] {
                for g in &goals {
                    let d = prove_seq(g, c);
                    if d != Provable {
                        bad.push(format!("{g} in {c}: {d}"));
                    }
                }
            }
            bad
        })
        .collect();
    verdict(failures, "600 sequents provable in each of lTS4 and gTS4".into())
}

/// Random small sequents for the admissibility checks.
struct Sampler {
    pool: Vec<Formula>,
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(seed: u64) -> Sampler {
        let spec = CorpusSpec { seed, count: 400, max_depth: 3, var_count: 2, neg_bias: 0.5, modal_bias: 0.3 };
        Sampler { pool: generate(&spec), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn next(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn formula(&mut self) -> Formula {
        let i = self.next(self.pool.len());
        self.pool[i].clone()
    }

    fn context(&mut self) -> Vec<Formula> {
        let k = self.next(3);
        (0..k).map(|_| self.formula()).collect()
    }
}

fn admissibility() -> Verdict {
    const WANT: usize = 200;
    const TRIES: usize = 40_000;
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for c in [LTS4, GTS4] {
        // (name, premise builder, conclusion builder)
        type Build = fn(&[Formula], &[Formula], &Formula) -> Sequent;
        let mk = |g: &[Formula], d: &[Formula], l: Option<Formula>, r: Option<Formula>| {
            Sequent::new(g.iter().cloned().chain(l), d.iter().cloned().chain(r))
        };
        let rules: [(&str, Build, Build); 4] = [
            ("neg-left", |g, d, a| Sequent::new(g.to_vec(), d.iter().cloned().chain([a.clone()])), |g, d, a| {
                Sequent::new(g.iter().cloned().chain([a.clone().neg()]), d.to_vec())
            }),
            ("neg-right", |g, d, a| Sequent::new(g.iter().cloned().chain([a.clone()]), d.to_vec()), |g, d, a| {
                Sequent::new(g.to_vec(), d.iter().cloned().chain([a.clone().neg()]))
            }),
            ("neg-left-inverse", |g, d, a| Sequent::new(g.iter().cloned().chain([a.clone().neg()]), d.to_vec()), |g, d, a| {
                Sequent::new(g.to_vec(), d.iter().cloned().chain([a.clone()]))
            }),
            ("neg-right-inverse", |g, d, a| Sequent::new(g.to_vec(), d.iter().cloned().chain([a.clone().neg()])), |g, d, a| {
                Sequent::new(g.iter().cloned().chain([a.clone()]), d.to_vec())
            }),
        ];
        for (i, (name, premise, conclusion)) in rules.iter().enumerate() {
            let mut s = Sampler::new(100 + i as u64 + 10 * (c == GTS4) as u64);
            let mut found = 0;
            for _ in 0..TRIES {
                if found == WANT {
                    break;
                }
                let (g, d, a) = (s.context(), s.context(), s.formula());
                let p = premise(&g, &d, &a);
                if prove_seq(&p, c) != Provable {
                    continue;
                }
                found += 1;
                let q = conclusion(&g, &d, &a);
                let got = prove_seq(&q, c);
                if got != Provable {
                    failures.push(format!("{name} in {c}: {p} provable but {q} is {got}"));
                }
            }
            if found < WANT {
                failures.push(format!("{name} in {c}: only {found} provable premises sampled"));
            }
            summary.push(found);
        }
        let mut s = Sampler::new(500 + c as u64);
        let mut found = 0;
        for _ in 0..TRIES * 5 {
            if found == WANT {
                break;
            }
            let (g, d, a) = (s.context(), s.context(), s.formula());
            let left = mk(&g, &[], None, Some(a.clone()));
            let right = mk(&g, &d, Some(a.clone()), None);
            if prove_seq(&left, c) != Provable || prove_seq(&right, c) != Provable {
                continue;
            }
            found += 1;
            let q = mk(&g, &d, None, None);
            let got = prove_seq(&q, c);
            if got != Provable {
                failures.push(format!("cut in {c}: {left} and {right} provable but {q} is {got}"));
            }
        }
        if found < WANT {
            failures.push(format!("cut in {c}: only {found} provable premise pairs sampled"));
        }
        summary.push(found);
    }
    verdict(failures, format!("instances per rule (lTS4 then gTS4, cut last): {summary:?}"))
}

fn lts4_star_defect() -> Verdict {
    let mut failures = Vec::new();
    for src in ["~[]p => ~[]p", "~<>p => ~<>p"] {
        expect(&mut failures, format!("{src} in lTS4*"), prove_src(src, LTS4STAR), NotProvable);
        expect(&mut failures, format!("{src} in lTS4"), prove_src(src, LTS4), Provable);
    }
    verdict(failures, "not provable in lTS4*, provable in lTS4".into())
}

fn duality() -> Verdict {
    let mut failures = Vec::new();
    let goals = ["[]p => ~<>~p", "~<>~p => []p", "<>p => ~[]~p", "~[]~p => <>p"];
    for c in [GS4, LTS4, GTS4] {
        for src in goals {
            expect(&mut failures, format!("{src} in {c}"), prove_src(src, c), Provable);
        }
    }
    verdict(failures, "4 duality sequents provable in GS4, lTS4, gTS4".into())
}

fn logic_separation() -> Verdict {
    let mut failures = Vec::new();
    let k_axiom = "=> [](p -> q) -> ([]p -> []q)";
    let cases = [
        (GTK, k_axiom, Provable),
        (GTK, "=> []p -> p", NotProvable),
        (GTKT, "=> []p -> p", Provable),
        (GTKT, "=> []p -> [][]p", NotProvable),
        (HTS5, "=> []p -> p", Provable),
        (HTS5, "=> []p -> [][]p", Provable),
        (HTS5, "=> <>p -> []<>p", Provable),
        (HTS5, "=> p -> []<>p", Provable),
        (HTS5, "p => []~[]~p", Provable),
        (GTS5, "p => []~[]~p", NotProvable),
    ];
    for (c, src, want) in cases {
        expect(&mut failures, format!("{src} in {c}"), prove_src(src, c), want);
    }
    verdict(failures, "K/KT/S5 separations hold; gTS5 rejects p => []~[]~p".into())
}

fn semantic_soundness() -> Verdict {
    let logics = [
        (FrameClass::All, vec![GTK]),
        (FrameClass::Reflexive, vec![GTKT]),
        (FrameClass::Preorder, vec![LTS4, GTS4, GS4]),
        (FrameClass::Equivalence, vec![HTS5, GTS5]),
    ];
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (i, (fc, calculi)) in logics.into_iter().enumerate() {
        let corpus = generate(&suite_spec(9000 + i as u64, 300));
        let results: Vec<Vec<String>> = corpus
            .par_iter()
            .map(|f| {
                let s = valid(f);
                let model = find_countermodel(&s, fc, 4);
                let mut bad = Vec::new();
                for &c in &calculi {
                    let d = prove_seq(&s, c);
                    match (&model, d) {
                        (Some(_), Provable) => bad.push(format!("{c} proves {s} but a {fc} countermodel exists")),
                        (Some(_), Unknown) if c != HTS5 => bad.push(format!("{c} unknown on {s}")),
                        (None, Unknown) if c != HTS5 => bad.push(format!("{c} unknown on {s}")),
                        _ => {}
                    }
                    if c == HTS5 && d == Unknown {
                        bad.push(String::from("hts5-unknown"));
                    }
                }
                bad
            })
            .collect();
        let mut unknowns = 0;
        for bad in results.into_iter().flatten() {
            if bad == "hts5-unknown" {
                unknowns += 1;
            } else {
                failures.push(bad);
            }
        }
        notes.push(format!("{fc}{}", if unknowns > 0 { format!(" ({unknowns} HTS5 unknown)") } else { String::new() }));
    }
    verdict(failures, format!("300 goals per logic, no violations [{}]", notes.join(", ")))
}

/// Every formula over `p`, `q` with depth at most `depth`, built from
/// `¬`, `∧`, `∨` and `→`.
fn propositional_formulas(depth: usize) -> Vec<Formula> {
    let mut level = vec![Formula::var("p"), Formula::var("q")];
    for _ in 0..depth {
        let mut next = level.clone();
        next.extend(level.iter().map(|a| a.clone().neg()));
        for a in &level {
            for b in &level {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
                next.push(Formula::imp(a.clone(), b.clone()));
            }
        }
        // Keep one copy of each formula; `level` only grows by depth.
        next.sort();
        next.dedup();
        level = next;
    }
    level
}

fn tcl_truth_tables() -> Verdict {
    let start = Instant::now();
    let formulas = propositional_formulas(3);
    let cfg = cfg();
    let bad: Vec<String> = formulas
        .par_iter()
        .filter_map(|f| {
            let s = valid(f);
            let d = decide(&goal(&s), TCL, &cfg).0;
            let want = if classical_valid(&s).unwrap() { Provable } else { NotProvable };
            (d != want).then(|| format!("=> {f}: {d}, truth table says {want}"))
        })
        .collect();
    let mut failures = bad;
    within(start.elapsed(), Duration::from_secs(120), &mut failures);
    verdict(failures, format!("{} formulas agree in {:.2?}", formulas.len(), start.elapsed()))
}

fn subformula_property() -> Verdict {
    let n = AUDIT.proofs.load(Ordering::Relaxed);
    let violations = AUDIT.violations.lock().unwrap().clone();
    if n == 0 {
        return Err("no proofs were audited".into());
    }
    verdict(violations, format!("{n} emitted proofs check and mention only end-sequent subformulas"))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Verdict); 10] = [
        (1, "worked example", worked_example),
        (2, "theorem equivalence lTS4/gTS4/GS4", theorem_equivalence),
        (3, "generalized initial sequents", generalized_initials),
        (4, "negation, converse and cut admissibility", admissibility),
        (6, "lTS4* defect", lts4_star_defect),
        (7, "modal duality", duality),
        (8, "logic separation", logic_separation),
        (9, "semantic soundness", semantic_soundness),
        (10, "TCL against truth tables", tcl_truth_tables),
        // Runs last so that it covers the proofs from every other criterion.
        (5, "subformula property", subformula_property),
    ];
    let mut failed = 0;
    let mut lines = Vec::new();
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        lines.push((n, format!("criterion {n:>2} {tag}  {name}: {detail} [{:.2?}]", start.elapsed())));
    }
    lines.sort_by_key(|(n, _)| *n);
    for (_, line) in lines {
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
