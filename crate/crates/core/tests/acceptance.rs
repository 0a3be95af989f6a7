//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//! Exits non-zero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use hyperalg::chevalley::StructureConstants;
use hyperalg::pbw::ordinary::OrdinaryEngine;
use hyperalg::pbw::{Algebra, Element, Engine, Integers, Monomial, PrimeField, Rationals};
use hyperalg::rootsys::{CartanType, RootSystem};
use hyperalg::verify::{run_check, CheckConfig, CheckId, Report};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn t(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check(id: CheckId, ty: &str, p: u32, r: u32) -> Result<Report, String> {
    let mut cfg = CheckConfig::new(id, t(ty), p, r);
    cfg.timing = false;
    run_check(&cfg).map_err(|e| format!("{} {} p={} r={}: {}", id, ty, p, r, e))
}

fn passing(id: CheckId, ty: &str, p: u32, r: u32) -> Result<Report, String> {
    let report = check(id, ty, p, r)?;
    if report.pass {
        return Ok(report);
    }
    let why = match &report.reason {
        Some(reason) => reason.clone(),
        None => report.failed().map(|a| a.name.clone()).collect::<Vec<_>>().join("; "),
    };
    Err(format!("{} {} p={} r={} failed: {}", id, ty, p, r, why))
}

fn actual<'a>(report: &'a Report, prefix: &str) -> Option<&'a Value> {
    report.assertions.iter().find(|a| a.name.starts_with(prefix)).map(|a| &a.actual)
}

fn random_monomial(rng: &mut ChaCha8Rng, slots: &[usize], len: usize, max: u16, density: f64) -> Monomial {
    let mut m = Monomial(vec![0; len].into_boxed_slice());
    for &s in slots {
        if rng.gen_bool(density) {
            m.0[s] = rng.gen_range(1..=max);
        }
    }
    m
}

fn to_q(x: &Element<Integers>) -> Element<Rationals> {
    Element::from_terms(
        x.algebra(),
        Rationals,
        x.terms().iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
    )
}

// 1. Chevalley validity.
fn chevalley() -> Outcome {
    let types = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"];
    let mut pairs = 0;
    for ty in types {
        let rs = Arc::new(RootSystem::build(t(ty)).map_err(|e| e.to_string())?);
        let sc = StructureConstants::new(rs.clone()).map_err(|e| format!("{}: {}", ty, e))?;
        sc.verify_jacobi().map_err(|e| format!("{}: {}", ty, e))?;
        let m = rs.num_roots();
        let coords = |k: usize| rs.root(k).coords.clone();
        for a in 0..m {
            for b in 0..m {
                let sum: Vec<i32> = coords(a).iter().zip(coords(b)).map(|(x, y)| x + y).collect();
                let n = sc.n(a, b);
                if rs.id_of(&sum).is_none() {
                    ensure(n == 0, || format!("{}: N({},{}) = {} but the sum is not a root", ty, rs.name(a), rs.name(b), n))?;
                    continue;
                }
                // Length of the a-string through b below b, from coordinates alone.
                let mut below = 0;
                loop {
                    let v: Vec<i32> = coords(b).iter().zip(coords(a)).map(|(y, x)| y - (below + 1) * x).collect();
                    if rs.id_of(&v).is_none() {
                        break;
                    }
                    below += 1;
                }
                ensure(n.abs() == below + 1, || {
                    format!("{}: |N({},{})| = {}, string gives {}", ty, rs.name(a), rs.name(b), n.abs(), below + 1)
                })?;
                pairs += 1;
            }
        }
        if ty == "G2" {
            let id = |v: [i32; 2]| rs.id_of(&v).unwrap();
            let wanted = [
                ([1, 0], [0, 1], 1),
                ([1, 0], [1, 1], 2),
                ([1, 0], [2, 1], 3),
                ([0, 1], [3, 1], 1),
                ([2, 1], [1, 1], 3),
            ];
            for (a, b, v) in wanted {
                ensure(sc.n(id(a), id(b)) == v, || format!("G2: N({:?},{:?}) = {}, wanted {}", a, b, sc.n(id(a), id(b)), v))?;
            }
        }
    }
    Ok(format!("Jacobi on all basis triples of {} types, |N| = p+1 on {} pairs, G2 relations exact", types.len(), pairs))
}

// 2. Kostant integrality.
fn integrality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0;
    let mut crossed = 0;
    for ty in ["B3", "C3", "G2"] {
        let alg = Algebra::new(t(ty), None).map_err(|e| e.to_string())?;
        let l = alg.layout();
        let slots: Vec<usize> = (0..l.nu).map(|k| l.e_slot(k)).collect();
        let z = Engine::integers(&alg);
        let q = OrdinaryEngine::new(&alg);
        for i in 0..1000 {
            let a = random_monomial(&mut rng, &slots, l.len(), 8, 0.3);
            let b = random_monomial(&mut rng, &slots, l.len(), 8, 0.3);
            let x = Element::monomial(&alg, Integers, a.clone(), 1.into());
            let y = Element::monomial(&alg, Integers, b.clone(), 1.into());
            let xy = z.multiply(&x, &y).map_err(|e| format!("{}: {}", ty, e))?;
            total += 1;
            // The plain-power route over Q is independent of the divided-power engine.
            if i < 100 {
                let slow = q.to_divided(&q.multiply(&q.to_ordinary(&to_q(&x)), &q.to_ordinary(&to_q(&y))));
                ensure(slow.terms().values().all(|c| c.is_integer()), || {
                    format!("{}: non-integral coefficient in {} * {}", ty, a.to_text(l), b.to_text(l))
                })?;
                ensure(slow == to_q(&xy), || format!("{}: routes disagree on {} * {}", ty, a.to_text(l), b.to_text(l)))?;
                crossed += 1;
            }
        }
        z.clear_memo();
    }
    Ok(format!("{} products over Z, {} of them matched against the plain-power route over Q", total, crossed))
}

fn all_pass(id: CheckId, cases: &[(&str, u32, u32)]) -> Outcome {
    for &(ty, p, r) in cases {
        passing(id, ty, p, r)?;
    }
    Ok(format!("{} cases", cases.len()))
}

// Criterion 5 cases with the dimensions they must reach.
const BASIS_CASES: [(&str, u32, u32, u64); 18] = [
    ("A2", 2, 1, 8),
    ("A2", 2, 2, 64),
    ("A2", 3, 1, 27),
    ("A2", 3, 2, 729),
    ("A2", 5, 1, 125),
    ("A2", 5, 2, 15625),
    ("B2", 2, 1, 8),
    ("B2", 2, 2, 128),
    ("B3", 2, 1, 64),
    ("C2", 2, 1, 8),
    ("C2", 2, 2, 128),
    ("C3", 2, 1, 128),
    ("G2", 2, 1, 8),
    ("G2", 2, 2, 512),
    ("G2", 3, 1, 81),
    ("G2", 3, 2, 59049),
    ("G2", 5, 1, 15625),
    ("D4", 2, 1, 4096),
];

// 5. Dimensions.
fn dimensions(reports: &mut Vec<Report>) -> Outcome {
    for (ty, p, r, dim) in BASIS_CASES {
        let report = passing(CheckId::Basis, ty, p, r)?;
        let got = actual(&report, "dimension of the span").and_then(Value::as_u64);
        ensure(got == Some(dim), || format!("{} p={} r={}: dimension {:?}, wanted {}", ty, p, r, got, dim))?;
        reports.push(report);
    }
    let b3 = RootSystem::build(t("B3")).unwrap().exponent_table(2, 1).unwrap();
    ensure(b3.reduced_roots().len() == 3, || "B3 at p = 2 should reduce three roots".into())?;
    Ok(format!("{} cases, all equal to the product of p^a", BASIS_CASES.len()))
}

// 6. Basis, read off the criterion-5 reports.
fn basis(reports: &[Report]) -> Outcome {
    ensure(reports.len() == BASIS_CASES.len(), || "criterion 5 did not complete".into())?;
    for (report, (ty, p, r, dim)) in reports.iter().zip(BASIS_CASES) {
        let got = actual(report, "listed monomials").and_then(Value::as_u64);
        ensure(got == Some(dim), || format!("{} p={} r={}: {:?} listed monomials contained, wanted {}", ty, p, r, got, dim))?;
    }
    Ok(format!("{} cases, every listed monomial contained and count = dimension", reports.len()))
}

// 8. Previous level inside the span at r = 2.
fn containment() -> Outcome {
    for p in [2, 3, 5] {
        // The span is all of U_2^+ here, so it contains U_1^+.
        passing(CheckId::Equality, "A2", p, 2)?;
    }
    for ty in ["B2", "C2"] {
        let report = passing(CheckId::Membership, ty, 2, 2)?;
        ensure(actual(&report, "basis monomials of the previous level").is_some(), || format!("{}: no containment assertion", ty))?;
    }
    for p in [2, 3] {
        let report = passing(CheckId::G2Membership, "G2", p, 2)?;
        ensure(actual(&report, "basis monomials of the previous level").is_some(), || "G2: no containment assertion".into())?;
    }
    Ok("A2 p=2,3,5 by equality; B2, C2, G2 p=2,3 by monomial containment".into())
}

fn member(report: &Report, root: &str) -> Option<bool> {
    let prefix = format!("e[{}]^(", root);
    report
        .assertions
        .iter()
        .find(|a| a.name.starts_with(&prefix) && a.name.contains("in the span"))
        .and_then(|a| a.actual.as_bool())
}

// 9. Exact in/out lists.
fn memberships() -> Outcome {
    let lists: [(CheckId, &str, u32, &[(&str, bool)]); 6] = [
        (CheckId::G2Membership, "G2", 2, &[("a1+a2", true), ("2a1+a2", false), ("3a1+a2", false), ("3a1+2a2", false)]),
        (CheckId::G2Membership, "G2", 3, &[("a1+a2", true), ("2a1+a2", true), ("3a1+a2", false), ("3a1+2a2", false)]),
        (CheckId::Membership, "B2", 2, &[("a1+2a2", false), ("a1+a2", true)]),
        (CheckId::Membership, "C2", 2, &[("2a1+a2", false)]),
        (CheckId::Membership, "F4", 2, &[("a2+2a3", false), ("a1+a2", true)]),
        (CheckId::Membership, "B3", 2, &[]),
    ];
    let mut n = 0;
    for (id, ty, p, list) in lists {
        let report = passing(id, ty, p, 1)?;
        for &(root, want) in list {
            let got = member(&report, root);
            ensure(got == Some(want), || format!("{} p={}: {} in span = {:?}, wanted {}", ty, p, root, got, want))?;
            n += 1;
        }
    }
    passing(CheckId::Membership, "C3", 2, 1)?;
    Ok(format!("{} listed memberships exact; the C0-or-short rule holds on B2, B3, C2, C3, F4", n))
}

// 10. Torus.
fn torus() -> Outcome {
    let mut cases = Vec::new();
    for ty in ["B2", "G2"] {
        for p in [2, 3] {
            for r in [1, 2] {
                cases.push((ty, p, r));
            }
        }
    }
    all_pass(CheckId::Torus, &cases)
}

// 11. Triangular decomposition.
fn triangular() -> Outcome {
    for ty in ["B2", "G2"] {
        let r1 = passing(CheckId::Triangular, ty, 2, 1)?;
        let name = r1.assertions.iter().map(|a| a.name.as_str()).find(|n| n.starts_with("every monomial of S"));
        ensure(name.is_some_and(|n| n.contains("(S has 256 monomials)")), || format!("{}: r=1 was not a full enumeration of 256", ty))?;
        let r2 = passing(CheckId::Triangular, ty, 2, 2)?;
        let sampled = r2.assertions.iter().find(|a| a.name.starts_with("random monomials of S"));
        // Two products per sample, one on each side.
        let cases = sampled.and_then(|a| a.name.rsplit('(').next()).and_then(|s| s.split(' ').next()).and_then(|s| s.parse::<usize>().ok());
        ensure(cases.is_some_and(|c| c >= 20_000), || format!("{}: r=2 ran {:?} products", ty, cases))?;
        for report in [&r1, &r2] {
            ensure(actual(report, "generators e_i^(p^s), f_i^(p^s) inside S").is_some(), || "missing generator check".into())?;
        }
    }
    Ok("B2, G2: r=1 exhaustive over 256 monomials, r=2 with 10^4 samples".into())
}

// 12. Minus side.
fn minus() -> Outcome {
    for ty in ["B2", "G2"] {
        let report = passing(CheckId::Minus, ty, 2, 1)?;
        let got = actual(&report, "dimension of the span of the generators inside U_r^-").and_then(Value::as_u64);
        ensure(got == Some(8), || format!("{}: minus dimension {:?}", ty, got))?;
    }
    Ok("B2, G2 at p=2 r=1: dimension 8, basis and minimal generating set".into())
}

// 13. Properties.
fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);

    // Positive-part triples at the integrality scale, then small mixed triples.
    let mut assoc = 0;
    let mut weights = 0;
    for (positive, count, max, density) in [(true, 334, 8, 0.3), (false, 200, 2, 0.1)] {
        for ty in ["B3", "C3", "G2"] {
            let alg = Algebra::new(t(ty), None).unwrap();
            let l = alg.layout();
            let slots: Vec<usize> = if positive { (0..l.nu).map(|k| l.e_slot(k)).collect() } else { (0..l.len()).collect() };
            let z = Engine::integers(&alg);
            for _ in 0..count {
                let m: Vec<Monomial> = (0..3).map(|_| random_monomial(&mut rng, &slots, l.len(), max, density)).collect();
                let x: Vec<Element<Integers>> =
                    m.iter().map(|m| Element::monomial(&alg, Integers, m.clone(), 1.into())).collect();
                let xy = z.multiply(&x[0], &x[1]).unwrap();
                let left = z.multiply(&xy, &x[2]).unwrap();
                let right = z.multiply(&x[0], &z.multiply(&x[1], &x[2]).unwrap()).unwrap();
                ensure(left == right, || {
                    format!("{}: (xy)z != x(yz) for {:?}", ty, m.iter().map(|m| m.to_text(l)).collect::<Vec<_>>())
                })?;
                assoc += 1;
                let w: Vec<i32> = alg.weight_of(&m[0]).iter().zip(alg.weight_of(&m[1])).map(|(a, b)| a + b).collect();
                for term in xy.terms().keys() {
                    ensure(alg.weight_of(term) == w, || format!("{}: weight not additive in {}", ty, term.to_text(l)))?;
                }
                weights += 1;
            }
            z.clear_memo();
        }
    }

    let mut frob = 0;
    for (ty, p) in [("B2", 2), ("G2", 2), ("B2", 3), ("G2", 3)] {
        let alg = Algebra::new(t(ty), None).unwrap();
        let l = alg.layout();
        let field = PrimeField::new(p).unwrap();
        let engine = Engine::new(&alg, field);
        for _ in 0..250 {
            let mut pick = || {
                let mut m = Monomial::one(l);
                for x in m.0.iter_mut() {
                    if rng.gen_bool(0.2) {
                        // Mostly multiples of p so that Fr does not vanish.
                        let k = if rng.gen_bool(0.15) { 2 } else { 1 };
                        *x = if rng.gen_bool(0.8) { k * p as u16 } else { k };
                    }
                }
                Element::monomial(&alg, field, m, 1)
            };
            let (x, y) = (pick(), pick());
            let lhs = engine.multiply(&x, &y).unwrap().frobenius();
            let rhs = engine.multiply(&x.frobenius(), &y.frobenius()).unwrap();
            ensure(lhs == rhs, || format!("{} p={}: Fr(xy) != Fr(x)Fr(y) for {} and {}", ty, p, x.to_text(), y.to_text()))?;
            frob += 1;
        }
        engine.clear_memo();
    }

    let words: [(&str, [&str; 2]); 2] = [("B2", ["1212", "2121"]), ("A3", ["121321", "321323"])];
    for (ty, pair) in words {
        let dims: Vec<Option<u64>> = pair
            .iter()
            .map(|w| {
                let mut cfg = CheckConfig::new(CheckId::Basis, t(ty), 2, 1);
                cfg.word = Some(w.to_string());
                let report = run_check(&cfg).ok().filter(|r| r.pass)?;
                actual(&report, "dimension of the span").and_then(Value::as_u64)
            })
            .collect();
        ensure(dims[0].is_some() && dims[0] == dims[1], || format!("{}: dimensions {:?} for words {:?}", ty, dims, pair))?;
    }
    Ok(format!(
        "associativity on {} triples, weights on {} products, Fr on {} pairs (p=2,3), order invariance for B2 and A3",
        assoc, weights, frob
    ))
}

fn main() {
    let mut failed = 0;
    let mut run = |n: usize, title: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{} but took {:.1?}, limit {:?}", detail, took, limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {}: {} [{:.1?}]", n, title, detail, took),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {}: {} [{:.1?}]", n, title, why, took);
            }
        }
    };
    let min = |m: u64| Duration::from_secs(60 * m);
    let none = Duration::MAX;

    run(1, "Chevalley validity", Duration::from_secs(10), &mut chevalley);
    run(2, "Kostant integrality", min(2), &mut integrality);
    run(3, "commutator support shapes", min(5), &mut || {
        all_pass(CheckId::CommutatorShape, &[("A3", 2, 1), ("B3", 2, 1), ("C3", 2, 1), ("G2", 2, 1)])
    });
    run(4, "G2 closed forms", min(1), &mut || all_pass(CheckId::G2ClosedForms, &[("G2", 2, 1)]));
    let mut reports = Vec::new();
    run(5, "subalgebra dimensions", min(10), &mut || dimensions(&mut reports));
    run(6, "monomial basis", none, &mut || basis(&reports));
    run(7, "generating set and minimality", min(15), &mut || {
        all_pass(
            CheckId::Minimal,
            &[
                ("B2", 2, 1),
                ("B2", 2, 2),
                ("C2", 2, 1),
                ("C2", 2, 2),
                ("C3", 2, 1),
                ("C3", 2, 2),
                ("G2", 2, 1),
                ("G2", 2, 2),
                ("G2", 3, 1),
                ("G2", 3, 2),
            ],
        )
    });
    run(8, "previous level contained", none, &mut containment);
    run(9, "memberships", min(10), &mut memberships);
    run(10, "torus part contained", none, &mut torus);
    run(11, "triangular decomposition", none, &mut triangular);
    run(12, "negative side", none, &mut minus);
    run(13, "property suites", none, &mut properties);

    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
