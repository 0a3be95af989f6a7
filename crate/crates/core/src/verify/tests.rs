use super::*;
use crate::rootsys::Family;

fn cfg(check: CheckId, f: Family, l: usize, p: u32, r: u32) -> CheckConfig {
    let mut c = CheckConfig::new(check, CartanType::new(f, l).unwrap(), p, r);
    c.timing = false;
    c
}

fn run(c: &CheckConfig) -> Report {
    let rep = run_check(c).unwrap();
    for a in rep.failed() {
        eprintln!("FAILED {}: expected {} got {}", a.name, a.expected, a.actual);
    }
    rep
}

#[test]
fn check_ids_round_trip() {
    for id in CheckId::ALL {
        assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
        let v = serde_json::to_value(id).unwrap();
        assert_eq!(v, serde_json::json!(id.as_str()));
    }
    assert!("thm9.9".parse::<CheckId>().is_err());
}

#[test]
fn config_from_json_and_defaults() {
    let c = CheckConfig::from_value(serde_json::json!({"check": "thm4.11-basis", "type": "B", "rank": 2})).unwrap();
    assert_eq!((c.p, c.r, c.timing), (2, 1, true));
    assert!(CheckConfig::from_value(serde_json::json!({"check": "thm4.11-basis", "type": "B", "rank": 2, "bogus": 1})).is_err());
}

#[test]
fn small_checks_pass() {
    for c in [
        cfg(CheckId::Basis, Family::B, 2, 2, 1),
        cfg(CheckId::Minimal, Family::B, 2, 2, 1),
        cfg(CheckId::Equality, Family::A, 2, 3, 1),
        cfg(CheckId::Membership, Family::B, 2, 2, 2),
        cfg(CheckId::Generates, Family::C, 2, 2, 1),
        cfg(CheckId::G2Membership, Family::G, 2, 2, 1),
        cfg(CheckId::Minus, Family::B, 2, 2, 1),
        cfg(CheckId::Torus, Family::B, 2, 2, 2),
        cfg(CheckId::Triangular, Family::B, 2, 2, 1),
        cfg(CheckId::RootLemmas, Family::C, 3, 2, 1),
        cfg(CheckId::G2ClosedForms, Family::G, 2, 2, 1),
        cfg(CheckId::CommutatorShape, Family::B, 2, 2, 1),
    ] {
        let rep = run(&c);
        assert!(rep.pass, "{} on {}{}", c.check, c.family, c.rank);
        assert_eq!(rep.exit_code(), 0);
    }
}

#[test]
fn unsupported_and_budget() {
    assert!(matches!(run_check(&cfg(CheckId::Equality, Family::B, 2, 2, 1)), Err(Error::Config(_))));
    assert!(matches!(run_check(&cfg(CheckId::G2ClosedForms, Family::A, 2, 2, 1)), Err(Error::Config(_))));
    let mut c = cfg(CheckId::Basis, Family::A, 2, 3, 1);
    c.budget = Some(5);
    let rep = run_check(&c).unwrap();
    assert!(!rep.pass);
    assert!(rep.reason.as_deref().unwrap().starts_with("budget"));
    assert_eq!(rep.exit_code(), 2);
}

#[test]
fn reports_are_deterministic() {
    let c = cfg(CheckId::Basis, Family::G, 2, 2, 1);
    assert_eq!(run(&c).to_json_string(), run(&c).to_json_string());
}

#[test]
fn expectations_parse() {
    let e = Expectations::builtin();
    let t = CartanType::new(Family::G, 2).unwrap();
    assert_eq!(e.dimension(t, 3, 2).unwrap().value, 59049);
    assert_eq!(e.memberships(t, 2).count(), 4);
}
