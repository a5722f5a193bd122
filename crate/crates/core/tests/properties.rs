mod common;

use proptest::prelude::*;
use twist_core::corpus::{generate, CorpusSpec};
use twist_core::proof::{parse_json, render, ProofFormat};
use twist_core::search::{decide, not_provable_certificate, prove, Decision, SearchConfig};
use twist_core::semantics::{classical_valid, eval, find_countermodel, sequent_holds_at, FrameClass};
use twist_core::{CalculusId, Formula, Hypersequent, Judgment, RenderStyle, Sequent};

use CalculusId::*;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn decision(s: &Sequent, c: CalculusId) -> Decision {
    decide(&Judgment::Sequent(s.clone()), c, &cfg()).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rendering_parses_back(f in common::formula(3, 5)) {
        for style in [RenderStyle::Ascii, RenderStyle::Unicode] {
            let text = f.render(style);
            prop_assert_eq!(Formula::parse(&text).unwrap(), f.clone(), "{}", text);
        }
    }

    #[test]
    fn sequents_parse_back(s in common::sequent(3, 3)) {
        prop_assert_eq!(Sequent::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn hypersequent_order_is_irrelevant(a in common::sequent(2, 2), b in common::sequent(2, 2)) {
        prop_assert_eq!(Hypersequent::new(vec![a.clone(), b.clone()]), Hypersequent::new(vec![b, a]));
    }

    #[test]
    fn degree_bounds_subformula_count(f in common::formula(3, 5)) {
        prop_assert!(f.subformulas().len() <= f.degree());
        prop_assert!(f.subformulas().contains(&f));
    }

    /// Every proof search returns passes the checker, concludes the goal,
    /// has the subformula property and survives a JSON round trip.
    #[test]
    fn found_proofs_are_valid(s in common::sequent(2, 3)) {
        for c in CalculusId::ALL {
            let goal = Judgment::parse(&s.to_string(), c).unwrap();
            let r = prove(&goal, c, &cfg());
            prop_assert_ne!(r.decision, Decision::Unknown);
            let Some(p) = r.proof else { continue };
            prop_assert_eq!(&p.conclusion, &goal);
            if let Err(e) = p.check(c) {
                return Err(TestCaseError::fail(format!("{c} proof of {s}: {e}")));
            }
            prop_assert!(p.subformula_audit().is_ok());
            let (c2, q) = parse_json(&render(&p, c, ProofFormat::Json), None).unwrap();
            prop_assert_eq!(c2, c);
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn s4_calculi_agree(s in common::sequent(3, 3)) {
        let d = decision(&s, GS4);
        prop_assert_eq!(decision(&s, LTS4), d);
        prop_assert_eq!(decision(&s, GTS4), d);
    }

    /// The defective variant proves nothing beyond lTS4.
    #[test]
    fn lts4_star_is_weaker(s in common::sequent(2, 3)) {
        if decision(&s, LTS4STAR) == Decision::Provable {
            prop_assert_eq!(decision(&s, LTS4), Decision::Provable);
        }
    }

    /// A proof rules out countermodels in the matching frame class, and a
    /// countermodel rules out a proof. A missing countermodel within four
    /// worlds is not taken as validity.
    #[test]
    fn decisions_respect_bounded_models(s in common::sequent(2, 3)) {
        for c in [GTK, GTKT, LTS4, GTS4, GS4, GTS5, HTS5] {
            let fc = FrameClass::of_calculus(c).unwrap();
            let d = decision(&s, c);
            if find_countermodel(&s, fc, 4).is_some() {
                prop_assert_ne!(d, Decision::Provable, "{} proves {}", c, s);
            }
        }
    }

    #[test]
    fn gts5_proves_only_hts5_theorems(s in common::sequent(2, 3)) {
        if decision(&s, GTS5) == Decision::Provable {
            prop_assert_eq!(decision(&s, HTS5), Decision::Provable);
        }
    }

    #[test]
    fn countermodels_falsify(s in common::sequent(3, 3)) {
        for fc in FrameClass::ALL {
            if let Some((m, w)) = find_countermodel(&s, fc, 3) {
                prop_assert!(fc.admits(m.worlds, &m.relation));
                prop_assert!(s.ante.iter().all(|f| eval(&m, w, f)));
                prop_assert!(!s.succ.iter().any(|f| eval(&m, w, f)));
                prop_assert!(!sequent_holds_at(&m, w, &s));
            }
        }
    }

    #[test]
    fn tcl_matches_truth_tables(s in common::sequent_of(common::propositional(3, 4))) {
        let want = if classical_valid(&s).unwrap() { Decision::Provable } else { Decision::NotProvable };
        let r = prove(&Judgment::Sequent(s.clone()), TCL, &cfg());
        prop_assert_eq!(r.decision, want);
        if let Some(cert) = not_provable_certificate(&r, TCL) {
            let v = cert.valuation.unwrap();
            let m = twist_core::semantics::KripkeModel {
                worlds: 1,
                relation: Default::default(),
                valuation: v.iter().filter(|(_, &b)| b).map(|(p, _)| (p.clone(), [0].into())).collect(),
            };
            prop_assert!(!sequent_holds_at(&m, 0, &s), "valuation {:?} does not falsify {}", v, s);
        }
    }

    #[test]
    fn search_is_deterministic(s in common::sequent(2, 3)) {
        for c in [LTS4, GS4, HTS5] {
            let a = prove(&Judgment::parse(&s.to_string(), c).unwrap(), c, &cfg());
            let b = prove(&Judgment::parse(&s.to_string(), c).unwrap(), c, &cfg());
            prop_assert_eq!(a.decision, b.decision);
            prop_assert_eq!(a.proof, b.proof);
            prop_assert_eq!(a.stats, b.stats);
        }
    }

    #[test]
    fn corpus_is_reproducible(seed in any::<u64>(), neg in 0.0f64..=1.0, modal in 0.0f64..=1.0) {
        let spec = CorpusSpec { seed, count: 20, max_depth: 4, var_count: 3, neg_bias: neg, modal_bias: modal };
        let a = generate(&spec);
        prop_assert_eq!(&a, &generate(&spec));
        prop_assert!(a.iter().all(|f| f.depth() <= 4));
    }
}

/// S5 theorems that gTS5 cannot prove without cut.
#[test]
fn gts5_gaps() {
    for src in ["p => []~[]~p", "<>p => []<>p", "=> q -> []<>(q | p)", "=> p -> []<>p"] {
        let s = Sequent::parse(src).unwrap();
        assert!(find_countermodel(&s, FrameClass::Equivalence, 4).is_none());
        assert_eq!(decision(&s, GTS5), Decision::NotProvable, "{src}");
        assert_eq!(decision(&s, HTS5), Decision::Provable, "{src}");
    }
}
