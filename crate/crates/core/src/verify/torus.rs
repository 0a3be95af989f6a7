//! Checks on the full algebra `𝒰_r`: the torus part and the triangular
//! decomposition.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pbw::{binom, Algebra, Element, Engine, Integers, Letter, Monomial, PrimeField};
use crate::rootsys::CartanType;
use crate::subalg::{span_closure, AmbientBox, ClosureOptions, Completeness, Mode};

use super::spans::{lambda, table_bounds};
use super::{run_check, CheckConfig, CheckId, Ctx, Report};

/// Full enumeration of the triangular span up to this many monomials.
const ENUMERATION_LIMIT: u128 = 1 << 16;

const DEFAULT_SAMPLES: usize = 10_000;

/// Runs the torus check for one configuration.
pub fn check_torus_containment(t: CartanType, p: u32, r: u32) -> Result<Report> {
    run_check(&CheckConfig::new(CheckId::Torus, t, p, r))
}

/// Runs the triangular-decomposition check; `samples` forces random sampling.
pub fn check_triangular(t: CartanType, p: u32, r: u32, samples: Option<usize>) -> Result<Report> {
    let mut cfg = CheckConfig::new(CheckId::Triangular, t, p, r);
    cfg.samples = samples;
    run_check(&cfg)
}

/// `(h_i + c choose n)` expanded over `(h_i choose d)`.
fn shifted_binomial(alg: &std::sync::Arc<Algebra>, i: usize, c: i64, n: u32) -> Element<Integers> {
    let terms = (0..=n).map(|d| {
        let coeff: BigInt = binom(c, n - d);
        (Monomial::from_letter(alg.layout(), Letter::H(i as u16, d as u16)), coeff)
    });
    Element::from_terms(alg, Integers, terms)
}

pub(super) fn torus(ctx: &mut Ctx) -> Result<()> {
    let alg = ctx.alg.clone();
    let (p, r) = (ctx.p(), ctx.r());
    let l = alg.layout().l;
    let field = PrimeField::new(p)?;
    let big_p = p.pow(r - 1);
    let zeng = Engine::integers(&alg);
    let pw = |id: usize, n: u32| Element::root_power(&alg, Integers, id, n as u16);
    let rs = alg.root_system().clone();

    // e^(P) f^(P) − f^(P) e^(P) − (h choose P) against the sum over s.
    let mut rhs_mod_p = Vec::new();
    let mut identity_ok = Vec::new();
    for i in 0..l {
        let (e, f) = (i, rs.neg(i));
        let lhs = zeng
            .multiply(&pw(e, big_p), &pw(f, big_p))?
            .sub(&zeng.multiply(&pw(f, big_p), &pw(e, big_p))?)?
            .sub(&Element::torus(&alg, Integers, i, big_p as u16))?;
        let mut rhs = Element::zero(&alg, Integers);
        for s in 1..big_p {
            let h = shifted_binomial(&alg, i, 2 * s as i64 - 2 * big_p as i64, s);
            rhs = rhs.add(&zeng.product(&[pw(f, big_p - s), h, pw(e, big_p - s)])?)?;
        }
        identity_ok.push(lhs == rhs);
        rhs_mod_p.push(rhs.reduce_mod_p(field));
    }
    zeng.clear_memo();
    ctx.record(
        format!("e_i^({0}) f_i^({0}) - f_i^({0}) e_i^({0}) - (h_i choose {0}) = sum of f_i^({0}-s) (h_i - {1} + 2s choose s) e_i^({0}-s) in the Z-form", big_p, 2 * big_p),
        vec![true; l],
        "commuting divided powers of e_i and f_i inside the sl2 they span",
        &identity_ok,
    );

    // The remainder must lie in the subalgebra one level down; at r = 1 it
    // is zero and the closure of Λ_1 is tested directly for h_i.
    let level = if r == 1 { 1 } else { r - 1 };
    let engine = Engine::new(&alg, field);
    let ambient = AmbientBox::new(alg.layout(), Mode::Full, p, level)?;
    let gens = lambda(&alg, field, level, Mode::Full);
    let opts = ClosureOptions { budget: ctx.budget, window: None, check_left: false };
    let s = span_closure(&engine, &gens, &ambient, &opts)?;
    let partial = match &s.completeness {
        Completeness::Partial(m) => Some(m.clone()),
        _ => None,
    };
    let mut found = Vec::new();
    for i in 0..l {
        let x = if r == 1 { Element::torus(&alg, field, i, 1) } else { rhs_mod_p[i].clone() };
        found.push(s.contains(&engine, &x)?);
    }
    engine.clear_memo();
    if found.iter().any(|&b| !b) {
        if let Some(m) = partial {
            return Err(Error::Budget(m));
        }
    }
    let what = if r == 1 {
        "(h_i choose 1) inside the span of 1, e_j, f_j".to_string()
    } else {
        format!("the sum over s inside the subalgebra generated at level {}", level)
    };
    ctx.record(
        what,
        vec![true; l],
        "h_i = e_i f_i - f_i e_i; at higher levels the remainder only involves indices below p^(r-1)",
        &found,
    );
    let contained: Vec<bool> = identity_ok.iter().zip(&found).map(|(a, b)| *a && *b).collect();
    ctx.record(
        format!("(h_i choose {}) in the subalgebra generated by 1, e_j^(p^s), f_j^(p^s), s < {}", big_p, r),
        vec![true; l],
        "e_i^(p^(r-1)) and f_i^(p^(r-1)) are generators and the remainder lies one level down",
        contained,
    );
    Ok(())
}

pub(super) fn triangular(ctx: &mut Ctx) -> Result<()> {
    let alg = ctx.alg.clone();
    let (p, r) = (ctx.p(), ctx.r());
    let layout = alg.layout();
    let field = PrimeField::new(p)?;
    let table = alg.root_system().exponent_table(p, r)?;
    let engine = Engine::new(&alg, field);
    let hbound = (p as u64).pow(r);
    let mut bounds = table_bounds(&alg, &table, Mode::Full);
    for i in 0..layout.l {
        bounds[layout.h_slot(i)] = hbound;
    }
    let in_s = |m: &Monomial| m.0.iter().zip(&bounds).all(|(&x, &b)| (x as u64) < b);
    let size: u128 = bounds.iter().map(|&b| b as u128).product();

    let gens: Vec<(String, Monomial)> = lambda(&alg, field, r, Mode::Full)
        .into_iter()
        .skip(1)
        .map(|g| (g.label, g.element.terms().keys().next().expect("monomial").clone()))
        .collect();
    let inside = gens.iter().filter(|(_, m)| in_s(m)).count();
    ctx.record(
        "generators e_i^(p^s), f_i^(p^s) inside S",
        gens.len(),
        "simple roots keep exponent r in every case",
        inside,
    );

    let e1 = Element::root_power(&alg, field, 0, 1);
    let f1 = Element::root_power(&alg, field, alg.root_system().neg(0), 1);
    let ef = engine.multiply(&e1, &f1)?;
    let expected = engine.multiply(&f1, &e1)?.add(&Element::torus(&alg, field, 0, 1))?;
    ctx.record("e_1 f_1 in normal form", expected.to_text(), "[e_1, f_1] = h_1", ef.to_text());

    let mut bad = Vec::new();
    let mut products = 0usize;
    let mut test = |m: &Monomial, g: &Monomial, bad: &mut Vec<String>| {
        for (x, y) in [(m, g), (g, m)] {
            products += 1;
            for (t, _) in engine.mul_monomials(x, y) {
                if !in_s(&t) {
                    bad.push(format!("{} * {} -> {}", x.to_text(layout), y.to_text(layout), t.to_text(layout)));
                }
            }
        }
    };
    let exhaustive = ctx.cfg.samples.is_none() && size <= ENUMERATION_LIMIT;
    if exhaustive {
        let all = AmbientBox::new(layout, Mode::Full, p, r)?.monomials_below(&bounds);
        for m in &all {
            for (_, g) in &gens {
                test(m, g, &mut bad);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
        for _ in 0..ctx.cfg.samples.unwrap_or(DEFAULT_SAMPLES) {
            let mut m = Monomial::one(layout);
            for (slot, &b) in bounds.iter().enumerate() {
                m.0[slot] = rng.gen_range(0..b) as u16;
            }
            let g = &gens[rng.gen_range(0..gens.len())].1;
            test(&m, g, &mut bad);
        }
    }
    engine.clear_memo();
    let how = if exhaustive { "every monomial of S" } else { "random monomials of S" };
    ctx.record_cases(
        &format!("{} times a generator on either side stays in S (S has {} monomials)", how, size),
        products,
        &bad,
        "the torus part commutes past root vectors with shifted arguments, and products of root vectors keep indices below p^a",
    );
    Ok(())
}
