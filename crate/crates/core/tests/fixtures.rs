use twist_core::proof::{fixture, parse_json};
use twist_core::CalculusId;

#[test]
fn stored_fixtures_match_the_builtin_ones() {
    for (c, file) in [
        (CalculusId::LTS4, include_str!("../fixtures/example_lts4.json")),
        (CalculusId::GTS4, include_str!("../fixtures/example_gts4.json")),
        (CalculusId::GS4, include_str!("../fixtures/example_gs4.json")),
    ] {
        let (declared, p) = parse_json(file, None).unwrap();
        assert_eq!(declared, c);
        assert_eq!(Some(p.clone()), fixture(c));
        p.check(c).unwrap();
        assert!(p.subformula_audit().is_ok());
    }
}

#[test]
fn fixture_sizes() {
    let sizes: Vec<(usize, usize)> = [CalculusId::LTS4, CalculusId::GTS4, CalculusId::GS4]
        .into_iter()
        .map(|c| {
            let m = fixture(c).unwrap().metrics();
            (m.rule_applications, m.height)
        })
        .collect();
    assert_eq!(sizes, vec![(6, 6), (6, 6), (13, 13)]);
}

#[test]
fn fixtures_do_not_transfer() {
    let gs4 = fixture(CalculusId::GS4).unwrap();
    for c in [CalculusId::LTS4, CalculusId::GTS4] {
        assert!(gs4.check(c).is_err());
    }
    assert!(fixture(CalculusId::LTS4).unwrap().check(CalculusId::GS4).is_err());
}
