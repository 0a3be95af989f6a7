//! Root-system facts behind the non-simply-laced cases: the shape of the
//! Hasse diagram and the length rules for sums of roots.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::pbw::{big, Element, Engine, Integers};
use crate::rootsys::{Family, RootSystem};

use super::Ctx;

/// Connected components of the Hasse diagram restricted to `vertices`.
fn components(rs: &RootSystem, vertices: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &v in vertices {
        if !seen.insert(v) {
            continue;
        }
        let mut comp = vec![v];
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for i in 0..rs.rank() {
                let ni = rs.neg(i);
                for y in [rs.add(x, i), rs.add(x, ni)].into_iter().flatten() {
                    if vertices.contains(&y) && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub(super) fn root_lemmas(ctx: &mut Ctx) -> Result<()> {
    let alg = ctx.alg.clone();
    let rs = alg.root_system().clone();
    let nu = rs.num_positive();
    let l = rs.rank();
    let positive: BTreeSet<usize> = (0..nu).collect();

    if rs.cartan_type().is_simply_laced() {
        let norms: BTreeSet<i32> = (0..rs.num_roots()).map(|a| rs.norm(a)).collect();
        ctx.record("distinct root lengths", 1, "simply-laced: all roots are conjugate", norms.len());
        ctx.record("Hasse diagram components", 1, "every positive root is reached from a simple root one simple root at a time", components(&rs, &positive).len());
        return Ok(());
    }

    let long: BTreeSet<usize> = positive.iter().copied().filter(|&a| rs.is_long(a)).collect();
    let short: BTreeSet<usize> = positive.iter().copied().filter(|&a| !rs.is_long(a)).collect();
    let long_comps = components(&rs, &long);
    let short_comps = components(&rs, &short);
    let is_long_simple = |i: usize| rs.is_long(i);

    let with_simple: Vec<&Vec<usize>> = long_comps.iter().filter(|c| c.iter().any(|&a| a < l && is_long_simple(a))).collect();
    ctx.record(
        "long components containing a long simple root",
        1,
        "long simple roots are joined through long roots only",
        with_simple.len(),
    );
    ctx.record("short subdiagram components", 1, "the short positive roots form one connected piece", short_comps.len());
    ctx.record(
        "short subdiagram contains a short simple root",
        true,
        "the short piece starts at a short simple root",
        short.iter().any(|&a| a < l),
    );
    let minimal_counts: Vec<usize> = long_comps
        .iter()
        .filter(|c| !c.iter().any(|&a| a < l && is_long_simple(a)))
        .map(|c| c.iter().filter(|&&v| !(0..l).any(|i| rs.add(v, rs.neg(i)).is_some_and(|u| c.contains(&u)))).count())
        .collect();
    ctx.record(
        "minimal vertices of each other long component",
        vec![1; minimal_counts.len()],
        "every long component away from the long simple roots has a unique minimal root",
        minimal_counts,
    );
    let mut short_labels = 0;
    for &a in &long {
        for i in 0..l {
            if rs.add(a, i).is_some_and(|b| rs.is_long(b)) && !rs.is_long(i) {
                short_labels += 1;
            }
        }
    }
    ctx.record("arrows between long roots labelled by a short simple root", 0, "arrows inside the long subdiagram carry long simple roots", short_labels);
    let c0: BTreeSet<usize> = with_simple.first().map(|c| c.iter().copied().collect()).unwrap_or_default();
    let supported: BTreeSet<usize> = long
        .iter()
        .copied()
        .filter(|&a| rs.root(a).coords.iter().enumerate().all(|(i, &c)| c == 0 || is_long_simple(i)))
        .collect();
    ctx.record(
        "component of the long simple roots equals the long roots supported on long simple roots",
        true,
        "arrows in the long subdiagram add long simple roots only",
        c0 == supported,
    );

    if ctx.family() == Family::G {
        return Ok(());
    }

    let n = rs.num_roots();
    let (mut string_cases, mut bad_string) = (0usize, vec![]);
    let mut identity_cases = Vec::new();
    for beta in 0..n {
        if !rs.is_long(beta) {
            continue;
        }
        for alpha in 0..n {
            let Some(gamma) = rs.add(beta, rs.neg(alpha)) else { continue };
            if rs.is_long(gamma) {
                continue;
            }
            string_cases += 1;
            let b = &rs.root(beta).coords;
            let a = &rs.root(alpha).coords;
            let shift = |k: i32| -> Vec<i32> { b.iter().zip(a).map(|(x, y)| x + k * y).collect() };
            let minus2 = rs.id_of(&shift(-2));
            let ok = !rs.is_long(alpha)
                && minus2.is_some_and(|m| rs.is_long(m))
                && rs.id_of(&shift(-3)).is_none()
                && rs.id_of(&shift(1)).is_none();
            if ok {
                identity_cases.push((alpha, gamma, minus2.unwrap(), beta));
            } else {
                bad_string.push(format!("beta={} alpha={}", rs.name(beta), rs.name(alpha)));
            }
        }
    }
    ctx.record_cases(
        "long beta with beta - alpha short: alpha short, beta - 2 alpha long, beta - 3 alpha and beta + alpha not roots",
        string_cases,
        &bad_string,
        "comparing squared lengths forces <beta - alpha, alpha^v> = 0 in types B, C, F",
    );

    let engine = Engine::integers(&alg);
    let sc = alg.constants().clone();
    let z = Integers;
    let pw = |id: usize, n: u16| Element::root_power(&alg, z, id, n);
    let mut bad_identity = vec![];
    for &(alpha, gamma, delta, beta) in &identity_cases {
        // gamma = beta - alpha, delta = beta - 2 alpha
        let n1 = sc.n(alpha, gamma);
        let c2 = sc.n(alpha, delta);
        let tag = || format!("alpha={} beta={}", rs.name(alpha), rs.name(beta));
        if n1.abs() != 2 || c2.abs() != 1 {
            bad_identity.push(format!("{}: N = {}, {}", tag(), n1, c2));
            continue;
        }
        let c1 = n1 / 2;
        let lhs = engine.multiply(&pw(alpha, 2), &pw(delta, 1))?.sub(&engine.multiply(&pw(delta, 1), &pw(alpha, 2))?)?;
        let first = pw(beta, 1).scale(&big((c1 * c2) as i64)).add(&engine.multiply(&pw(gamma, 1), &pw(alpha, 1))?.scale(&big(c2 as i64)))?;
        let second = pw(beta, 1).scale(&big((-c1 * c2) as i64)).add(&engine.multiply(&pw(alpha, 1), &pw(gamma, 1))?.scale(&big(c2 as i64)))?;
        if lhs != first || lhs != second {
            bad_identity.push(tag());
        }
    }
    ctx.record_cases(
        "e_alpha^(2) e_(beta-2alpha) - e_(beta-2alpha) e_alpha^(2) = c1 c2 e_beta + c2 e_(beta-alpha) e_alpha with c1, c2 = +-1",
        identity_cases.len(),
        &bad_identity,
        "the alpha-string through beta is beta - 2 alpha, beta - alpha, beta, so [e_alpha, e_(beta-alpha)] = +-2 e_beta and [e_alpha, e_(beta-2alpha)] = +-e_(beta-alpha)",
    );

    let (mut sum_cases, mut bad_sum) = (0usize, vec![]);
    for alpha in 0..n {
        if !rs.is_long(alpha) {
            continue;
        }
        for beta in 0..n {
            let Some(gamma) = rs.add(alpha, rs.neg(beta)) else { continue };
            sum_cases += 1;
            if rs.is_long(beta) != rs.is_long(gamma) {
                bad_sum.push(format!("{} = {} + {}", rs.name(alpha), rs.name(beta), rs.name(gamma)));
            }
        }
    }
    ctx.record_cases(
        "long alpha = beta + gamma: beta and gamma have the same length",
        sum_cases,
        &bad_sum,
        "squared-length comparison in types B, C, F",
    );

    let reached = |a: usize| c0.contains(&a) || !rs.is_long(a);
    let (mut c0_cases, mut bad_c0) = (0usize, vec![]);
    for &alpha in &long {
        if c0.contains(&alpha) {
            continue;
        }
        for beta in 0..nu {
            let Some(gamma) = rs.add(alpha, rs.neg(beta)) else { continue };
            if !rs.is_positive(gamma) || !reached(beta) || !reached(gamma) {
                continue;
            }
            c0_cases += 1;
            if rs.is_long(beta) || rs.is_long(gamma) {
                bad_c0.push(format!("{} = {} + {}", rs.name(alpha), rs.name(beta), rs.name(gamma)));
            }
        }
    }
    ctx.record_cases(
        "long alpha outside the long-simple component as a sum of two roots from that component or short roots: both short",
        c0_cases,
        &bad_c0,
        "two long summands would both be sums of long simple roots, putting alpha in that component",
    );
    engine.clear_memo();
    Ok(())
}
