//! Kripke semantics and truth tables, used as oracles independent of the
//! proof calculi.
//!
//! [`find_countermodel`] enumerates every frame of a class up to four
//! worlds (one frame per isomorphism class) and every valuation of the
//! sequent's variables. Valuations are evaluated 64 at a time: bit `k` of
//! a word is the truth value under the `k`-th valuation of the chunk.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::calculi::CalculusId;
use crate::formula::Formula;
use crate::sequent::Sequent;

/// Largest frame size the enumerator supports.
pub const MAX_WORLDS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameClass {
    /// Arbitrary relations (K).
    #[serde(rename = "k")]
    All,
    /// Reflexive relations (KT).
    #[serde(rename = "kt")]
    Reflexive,
    /// Reflexive and transitive relations (S4).
    #[serde(rename = "s4")]
    Preorder,
    /// Equivalence relations (S5).
    #[serde(rename = "s5")]
    Equivalence,
}

impl FrameClass {
    pub const ALL: [FrameClass; 4] = [FrameClass::All, FrameClass::Reflexive, FrameClass::Preorder, FrameClass::Equivalence];

    pub fn key(self) -> &'static str {
        match self {
            FrameClass::All => "k",
            FrameClass::Reflexive => "kt",
            FrameClass::Preorder => "s4",
            FrameClass::Equivalence => "s5",
        }
    }

    pub fn from_key(key: &str) -> Option<FrameClass> {
        FrameClass::ALL.into_iter().find(|fc| fc.key() == key.to_ascii_lowercase())
    }

    /// The frame class a calculus is meant to be sound for. `None` for TCL.
    pub fn of_calculus(c: CalculusId) -> Option<FrameClass> {
        use CalculusId::*;
        match c {
            TCL => None,
            GTK => Some(FrameClass::All),
            GTKT => Some(FrameClass::Reflexive),
            LTS4 | LTS4STAR | GTS4 | GS4 => Some(FrameClass::Preorder),
            GTS5 | HTS5 => Some(FrameClass::Equivalence),
        }
    }

    /// Whether `r` (as a set of pairs over `n` worlds) belongs to the class.
    pub fn admits(self, n: usize, r: &BTreeSet<(usize, usize)>) -> bool {
        let refl = || (0..n).all(|w| r.contains(&(w, w)));
        let trans = || r.iter().all(|&(a, b)| r.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| r.contains(&(a, d))));
        let sym = || r.iter().all(|&(a, b)| r.contains(&(b, a)));
        match self {
            FrameClass::All => true,
            FrameClass::Reflexive => refl(),
            FrameClass::Preorder => refl() && trans(),
            FrameClass::Equivalence => refl() && trans() && sym(),
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A finite Kripke model. Worlds are `0..worlds`; a variable missing from
/// `valuation` is false everywhere.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: usize,
    pub relation: BTreeSet<(usize, usize)>,
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl KripkeModel {
    pub fn sees(&self, w: usize, u: usize) -> bool {
        self.relation.contains(&(w, u))
    }

    fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation.range((w, 0)..=(w, usize::MAX)).map(|&(_, u)| u)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

pub fn eval(m: &KripkeModel, w: usize, f: &Formula) -> bool {
    assert!(w < m.worlds, "world {w} out of range");
    match f {
        Formula::Var(p) => m.valuation.get(&**p).is_some_and(|ws| ws.contains(&w)),
        Formula::Not(a) => !eval(m, w, a),
        Formula::And(a, b) => eval(m, w, a) && eval(m, w, b),
        Formula::Or(a, b) => eval(m, w, a) || eval(m, w, b),
        Formula::Imp(a, b) => !eval(m, w, a) || eval(m, w, b),
        Formula::Box(a) => m.successors(w).all(|u| eval(m, u, a)),
        Formula::Dia(a) => m.successors(w).any(|u| eval(m, u, a)),
    }
}

/// Whether `s` holds at world `w`.
pub fn sequent_holds_at(m: &KripkeModel, w: usize, s: &Sequent) -> bool {
    !s.ante.iter().all(|f| eval(m, w, f)) || s.succ.iter().any(|f| eval(m, w, f))
}

pub fn sequent_valid(m: &KripkeModel, s: &Sequent) -> bool {
    (0..m.worlds).all(|w| sequent_holds_at(m, w, s))
}

/// A relation on at most four worlds: bit `i * n + j` means `i` sees `j`.
type Code = u16;

fn code_of(n: usize, r: &dyn Fn(usize, usize) -> bool) -> Code {
    let mut c = 0;
    for i in 0..n {
        for j in 0..n {
            if r(i, j) {
                c |= 1 << (i * n + j);
            }
        }
    }
    c
}

fn has(n: usize, c: Code, i: usize, j: usize) -> bool {
    c >> (i * n + j) & 1 == 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(n: usize, c: Code) -> BTreeSet<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| has(n, c, i, j)).collect()
}

/// One representative per isomorphism class of frames of class `fc` on
/// `n` worlds, in increasing code order.
fn frames(fc: FrameClass, n: usize) -> Arc<Vec<Code>> {
    static CACHE: OnceLock<[[OnceLock<Arc<Vec<Code>>>; MAX_WORLDS]; 4]> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let idx = FrameClass::ALL.iter().position(|&x| x == fc).unwrap();
    cache[idx][n - 1]
        .get_or_init(|| {
            let perms = permutations(n);
            let mut out = Vec::new();
            for c in 0..(1u32 << (n * n)) {
                let c = c as Code;
                if !fc.admits(n, &pairs(n, c)) {
                    continue;
                }
                let canonical = perms.iter().map(|p| code_of(n, &|i, j| has(n, c, p[i], p[j]))).min().unwrap();
                if canonical == c {
                    out.push(c);
                }
            }
            Arc::new(out)
        })
        .clone()
}

/// The number of non-isomorphic frames of class `fc` on `n` worlds.
pub fn frame_count(fc: FrameClass, n: usize) -> usize {
    assert!((1..=MAX_WORLDS).contains(&n));
    frames(fc, n).len()
}

enum Node {
    Var(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
    Dia(usize),
}

/// Formulas flattened into a DAG of shared subformulas, children first.
struct Compiled {
    nodes: Vec<Node>,
    ante: Vec<usize>,
    succ: Vec<usize>,
}

fn compile(s: &Sequent, vars: &[Arc<str>]) -> Compiled {
    fn go(f: &Formula, vars: &[Arc<str>], nodes: &mut Vec<Node>, seen: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = seen.get(f) {
            return i;
        }
        let node = match f {
            Formula::Var(p) => Node::Var(vars.iter().position(|v| v == p).unwrap()),
            Formula::Not(a) => Node::Not(go(a, vars, nodes, seen)),
            Formula::And(a, b) => Node::And(go(a, vars, nodes, seen), go(b, vars, nodes, seen)),
            Formula::Or(a, b) => Node::Or(go(a, vars, nodes, seen), go(b, vars, nodes, seen)),
            Formula::Imp(a, b) => Node::Imp(go(a, vars, nodes, seen), go(b, vars, nodes, seen)),
            Formula::Box(a) => Node::Box(go(a, vars, nodes, seen)),
            Formula::Dia(a) => Node::Dia(go(a, vars, nodes, seen)),
        };
        nodes.push(node);
        seen.insert(f.clone(), nodes.len() - 1);
        nodes.len() - 1
    }
    let (mut nodes, mut seen) = (Vec::new(), HashMap::new());
    let ante = s.ante.iter().map(|f| go(f, vars, &mut nodes, &mut seen)).collect();
    let succ = s.succ.iter().map(|f| go(f, vars, &mut nodes, &mut seen)).collect();
    Compiled { nodes, ante, succ }
}

/// Lane masks: bit `k` of `LANES[b]` is bit `b` of `k`.
const LANES: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Search frame `code` on `n` worlds for a valuation falsifying the
/// sequent. Valuation index `k` makes variable `i` true at world `w` iff
/// bit `i * n + w` of `k` is set. Returns the least such `k` and the least
/// world where the sequent fails under it.
fn falsify(prog: &Compiled, nvars: usize, n: usize, code: Code) -> Option<(u64, usize)> {
    let bits = nvars * n;
    assert!(bits < 64, "too many variables for exhaustive search");
    let total: u64 = 1 << bits;
    let chunks = total.div_ceil(64);
    let valid = if total >= 64 { !0 } else { (1u64 << total) - 1 };
    let succ: Vec<Vec<usize>> = (0..n).map(|w| (0..n).filter(|&u| has(n, code, w, u)).collect()).collect();
    let mut val = vec![0u64; prog.nodes.len() * n];
    for chunk in 0..chunks {
        for (k, node) in prog.nodes.iter().enumerate() {
            for w in 0..n {
                let at = |i: usize, u: usize| val[i * n + u];
                let x = match *node {
                    Node::Var(i) => {
                        let b = i * n + w;
                        if b < 6 {
                            LANES[b]
                        } else if chunk >> (b - 6) & 1 == 1 {
                            !0
                        } else {
                            0
                        }
                    }
                    Node::Not(a) => !at(a, w),
                    Node::And(a, b) => at(a, w) & at(b, w),
                    Node::Or(a, b) => at(a, w) | at(b, w),
                    Node::Imp(a, b) => !at(a, w) | at(b, w),
                    Node::Box(a) => succ[w].iter().fold(!0, |acc, &u| acc & at(a, u)),
                    Node::Dia(a) => succ[w].iter().fold(0, |acc, &u| acc | at(a, u)),
                };
                val[k * n + w] = x;
            }
        }
        let fails: Vec<u64> = (0..n)
            .map(|w| {
                let ante = prog.ante.iter().fold(!0, |acc, &i| acc & val[i * n + w]);
                let succ = prog.succ.iter().fold(0, |acc, &i| acc | val[i * n + w]);
                ante & !succ & valid
            })
            .collect();
        let any = fails.iter().fold(0, |a, b| a | b);
        if any != 0 {
            let lane = any.trailing_zeros() as u64;
            let world = fails.iter().position(|m| m >> lane & 1 == 1).unwrap();
            return Some((chunk * 64 + lane, world));
        }
    }
    None
}

/// The smallest countermodel to `s` in class `fc` with at most
/// `max_worlds` worlds (capped at [`MAX_WORLDS`]), with a world where `s`
/// fails. Frames are tried by size, then by relation code; valuations in
/// increasing index order.
pub fn find_countermodel(s: &Sequent, fc: FrameClass, max_worlds: usize) -> Option<(KripkeModel, usize)> {
    let vars: Vec<Arc<str>> = s.vars().into_iter().collect();
    let prog = compile(s, &vars);
    for n in 1..=max_worlds.min(MAX_WORLDS) {
        for &code in frames(fc, n).iter() {
            if let Some((k, world)) = falsify(&prog, vars.len(), n, code) {
                let valuation = vars
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.to_string(), (0..n).filter(|w| k >> (i * n + w) & 1 == 1).collect()))
                    .collect();
                let m = KripkeModel { worlds: n, relation: pairs(n, code), valuation };
                debug_assert!(!sequent_holds_at(&m, world, s), "countermodel fails re-evaluation");
                return Some((m, world));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("classical truth tables do not apply to modal formulas (found `{0}`)")]
pub struct ModalOperatorPresent(pub String);

fn classical(f: &Formula, v: &BTreeMap<&str, bool>) -> bool {
    match f {
        Formula::Var(p) => v[&**p],
        Formula::Not(a) => !classical(a, v),
        Formula::And(a, b) => classical(a, v) && classical(b, v),
        Formula::Or(a, b) => classical(a, v) || classical(b, v),
        Formula::Imp(a, b) => !classical(a, v) || classical(b, v),
        Formula::Box(_) | Formula::Dia(_) => unreachable!(),
    }
}

/// The first truth-table row falsifying a modal-free sequent, if any.
/// Rows are ordered by binary value with the first variable as bit 0.
pub fn classical_countermodel(s: &Sequent) -> Result<Option<BTreeMap<String, bool>>, ModalOperatorPresent> {
    if let Some(f) = s.formulas().find(|f| !f.is_modal_free()) {
        return Err(ModalOperatorPresent(f.to_string()));
    }
    let vars = s.vars();
    let names: Vec<&str> = vars.iter().map(|v| &**v).collect();
    for row in 0u64..(1 << names.len()) {
        let v: BTreeMap<&str, bool> = names.iter().enumerate().map(|(i, &p)| (p, row >> i & 1 == 1)).collect();
        let ante = s.ante.iter().all(|f| classical(f, &v));
        if ante && !s.succ.iter().any(|f| classical(f, &v)) {
            return Ok(Some(v.into_iter().map(|(p, b)| (p.to_string(), b)).collect()));
        }
    }
    Ok(None)
}

/// Truth-table validity of a modal-free sequent.
pub fn classical_valid(s: &Sequent) -> Result<bool, ModalOperatorPresent> {
    classical_countermodel(s).map(|m| m.is_none())
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

    fn model(worlds: usize, rel: &[(usize, usize)], p: &[usize]) -> KripkeModel {
        KripkeModel {
            worlds,
            relation: rel.iter().copied().collect(),
            valuation: [("p".to_string(), p.iter().copied().collect())].into(),
        }
    }

    #[test]
    fn eval_clauses() {
        let one = model(1, &[(0, 0)], &[0]);
        assert!(eval(&one, 0, &f("[]p")));
        let chain = model(2, &[(0, 1)], &[0]);
        assert!(!eval(&chain, 0, &f("[]p")));
        assert!(eval(&chain, 1, &f("[]p")));
        assert!(!eval(&chain, 1, &f("<>p")));
        for w in 0..2 {
            assert!(eval(&chain, w, &f("p | ~p")));
        }
        assert!(!sequent_valid(&chain, &s("=>")));
        assert!(sequent_valid(&chain, &s("p => p")));
        assert!(!sequent_valid(&chain, &s("p => []p")));
    }

    /// Counts of frames up to isomorphism (OEIS A000595, A000666 for
    /// reflexive relations, A001930, A000041).
    #[test]
    fn frame_counts() {
        let expect = [
            (FrameClass::All, [2, 10, 104, 3044]),
            (FrameClass::Reflexive, [1, 3, 16, 218]),
            (FrameClass::Preorder, [1, 3, 9, 33]),
            (FrameClass::Equivalence, [1, 2, 3, 5]),
        ];
        for (fc, counts) in expect {
            for (n, c) in counts.into_iter().enumerate() {
                assert_eq!(frame_count(fc, n + 1), c, "{fc} on {} worlds", n + 1);
            }
        }
    }

    #[test]
    fn countermodels() {
        let (m, w) = find_countermodel(&s("=> <>p -> []p"), FrameClass::Preorder, 4).unwrap();
        assert_eq!(m.worlds, 2);
        assert!(!sequent_holds_at(&m, w, &s("=> <>p -> []p")));
        assert!(FrameClass::Preorder.admits(m.worlds, &m.relation));
        assert!(find_countermodel(&s("=> []p -> p"), FrameClass::Reflexive, 4).is_none());
        assert!(find_countermodel(&s("=> []p -> p"), FrameClass::All, 4).is_some());
        assert!(find_countermodel(&s("=> p -> []<>p"), FrameClass::Equivalence, 4).is_none());
        assert!(find_countermodel(&s("=> p -> []<>p"), FrameClass::Preorder, 4).is_some());
        let (m, _) = find_countermodel(&s("=> []p -> [][]p"), FrameClass::Reflexive, 4).unwrap();
        assert!(!FrameClass::Preorder.admits(m.worlds, &m.relation));
        assert!(find_countermodel(&s("=>"), FrameClass::All, 4).is_some());
    }

    #[test]
    fn many_variables_span_chunks() {
        let goal = s("p, q, r => [](p & q & r)");
        let (m, w) = find_countermodel(&goal, FrameClass::Preorder, 4).unwrap();
        assert_eq!(m.worlds, 2);
        assert!(!sequent_holds_at(&m, w, &goal));
    }

    #[test]
    fn model_json() {
        let m = model(2, &[(0, 1)], &[0]);
        assert_eq!(m.to_json(), r#"{"worlds":2,"relation":[[0,1]],"valuation":{"p":[0]}}"#);
        let back: KripkeModel = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn truth_tables() {
        assert_eq!(classical_valid(&s("=> p | ~p")), Ok(true));
        assert_eq!(classical_valid(&s("=> p")), Ok(false));
        assert_eq!(classical_valid(&s("~(p & q) => ~p | ~q")), Ok(true));
        assert!(classical_valid(&s("=> []p")).is_err());
        let row = classical_countermodel(&s("p => q")).unwrap().unwrap();
        assert_eq!(row, [("p".to_string(), true), ("q".to_string(), false)].into());
    }
}
