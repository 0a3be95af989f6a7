use std::sync::Arc;

use super::*;
use crate::pbw::Algebra;
use crate::rootsys::{CartanType, Family};

fn setup(f: Family, l: usize, p: u32) -> (Arc<Algebra>, Engine<PrimeField>) {
    let alg = Algebra::new(CartanType::new(f, l).unwrap(), None).unwrap();
    let engine = Engine::new(&alg, PrimeField::new(p).unwrap());
    (alg, engine)
}

/// `1` and `e_i^(p^s)` (or `f`) for every simple `i` and `s < r`.
fn lambda(alg: &Arc<Algebra>, field: PrimeField, r: u32, plus: bool) -> Vec<Generator> {
    let rs = alg.root_system();
    let mut gens = vec![Generator::new("1", Element::one(alg, field))];
    for i in 0..rs.rank() {
        for s in 0..r {
            let n = field.p().pow(s) as u16;
            let id = if plus { i } else { rs.neg(i) };
            gens.push(Generator::new(format!("x{}^({})", i + 1, n), Element::root_power(alg, field, id, n)));
        }
    }
    gens
}

#[test]
fn box_codes() {
    let (alg, _) = setup(Family::B, 2, 2);
    let b = AmbientBox::new(alg.layout(), Mode::Plus, 2, 1).unwrap();
    assert_eq!(b.dimension(), 16);
    let m = Monomial::parse(alg.layout(), "e[1:1]*e[3:1]").unwrap();
    assert_eq!(b.decode(b.encode(&m).unwrap()), m);
    assert!(b.encode(&Monomial::parse(alg.layout(), "e[1:2]").unwrap()).is_err());
    assert!(b.encode(&Monomial::parse(alg.layout(), "f[1:1]").unwrap()).is_err());
    let full = AmbientBox::new(alg.layout(), Mode::Full, 2, 1).unwrap();
    assert_eq!(full.dimension(), 1024);
}

#[test]
fn b2_plus_level_one() {
    let (alg, engine) = setup(Family::B, 2, 2);
    let field = *engine.ring();
    let b = AmbientBox::new(alg.layout(), Mode::Plus, 2, 1).unwrap();
    let s = span_closure(&engine, &lambda(&alg, field, 1, true), &b, &ClosureOptions::default()).unwrap();
    assert_eq!(s.dimension(), 8);
    let theta = alg.root_system().parse_root("a1+2a2").unwrap();
    assert!(!s.contains(&engine, &Element::root_power(&alg, field, theta, 1)).unwrap());
    assert!(s.contains(&engine, &Element::one(&alg, field)).unwrap());
}

#[test]
fn empty_generators() {
    let (alg, engine) = setup(Family::A, 2, 3);
    let b = AmbientBox::new(alg.layout(), Mode::Plus, 3, 1).unwrap();
    let s = span_closure(&engine, &[], &b, &ClosureOptions::default()).unwrap();
    assert_eq!(s.dimension(), 1);
}

#[test]
fn a2_generation_and_minimality() {
    let (alg, engine) = setup(Family::A, 2, 3);
    let field = *engine.ring();
    let b = AmbientBox::new(alg.layout(), Mode::Plus, 3, 1).unwrap();
    let gens = lambda(&alg, field, 1, true);
    let opts = ClosureOptions::default();
    let g = check_generates(&engine, &gens, &b, &opts).unwrap();
    assert!(g.generates_all);
    assert_eq!(g.dimension, 27);
    let m = check_minimal(&engine, &gens, &b, &opts).unwrap();
    assert!(m.minimal);
    assert_eq!(m.without.iter().map(|x| x.1).collect::<Vec<_>>(), [3, 3]);
}

#[test]
fn minus_side_and_full_mode() {
    let (alg, engine) = setup(Family::B, 2, 2);
    let field = *engine.ring();
    let b = AmbientBox::new(alg.layout(), Mode::Minus, 2, 1).unwrap();
    let s = span_closure(&engine, &lambda(&alg, field, 1, false), &b, &ClosureOptions::default()).unwrap();
    assert_eq!(s.dimension(), 8);
    let full = AmbientBox::new(alg.layout(), Mode::Full, 2, 1).unwrap();
    let mut gens = lambda(&alg, field, 1, true);
    gens.extend(lambda(&alg, field, 1, false).into_iter().skip(1));
    let s = span_closure(&engine, &gens, &full, &ClosureOptions::default()).unwrap();
    assert!(s.contains(&engine, &Element::torus(&alg, field, 0, 1)).unwrap());
    assert_eq!(s.dimension(), 8 * 4 * 8);
}

#[test]
fn budget_is_reported() {
    let (alg, engine) = setup(Family::A, 2, 3);
    let field = *engine.ring();
    let b = AmbientBox::new(alg.layout(), Mode::Plus, 3, 1).unwrap();
    let opts = ClosureOptions { budget: 5, ..Default::default() };
    let s = span_closure(&engine, &lambda(&alg, field, 1, true), &b, &opts).unwrap();
    assert!(matches!(s.completeness, Completeness::Partial(_)));
}
