//! Checks in `𝒰_ℤ^+`: support shapes of commutators of divided powers and
//! the G₂ closed forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::pbw::{big, Algebra, Element, Engine, Integers, Monomial};
use crate::rootsys::Family;

use super::Ctx;

/// Largest divided-power index in the pairwise commutator sweep.
const MAX_POWER: u16 = 4;

/// Random exponent vectors per position pair for the one-sided sweeps.
const DEFAULT_VECTOR_SAMPLES: usize = 8;

pub(super) fn e_monomial(alg: &Algebra, exps: &[(usize, u16)]) -> Monomial {
    let layout = alg.layout();
    let mut m = Monomial::one(layout);
    for &(k, n) in exps {
        m.0[layout.e_slot(k)] += n;
    }
    m
}

/// `xy − yx` in normal form.
fn commutator(engine: &Engine<Integers>, x: &Monomial, y: &Monomial) -> BTreeMap<Monomial, BigInt> {
    let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (m, c) in engine.mul_monomials(x, y) {
        *out.entry(m).or_default() += c;
    }
    for (m, c) in engine.mul_monomials(y, x) {
        *out.entry(m).or_default() -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The e-exponents of a monomial, or `None` if it has f or h factors.
fn e_part(alg: &Algebra, m: &Monomial) -> Option<Vec<u16>> {
    let layout = alg.layout();
    if m.f(layout).iter().chain(m.h(layout)).any(|&x| x > 0) {
        return None;
    }
    Some(m.e(layout).to_vec())
}

fn sum(v: &[u16], lo: usize, hi: usize) -> u32 {
    if lo > hi {
        return 0;
    }
    v[lo..=hi].iter().map(|&x| x as u32).sum()
}

fn outside(v: &[u16], lo: usize, hi: usize) -> bool {
    v.iter().enumerate().any(|(i, &x)| x > 0 && (i < lo || i > hi))
}

/// Support bounds for `e_k^(a) e_j^(b) − e_j^(b) e_k^(a)`.
fn pair_violation(v: &[u16], j: usize, k: usize, a: u16, b: u16) -> Option<&'static str> {
    if outside(v, j, k) {
        return Some("factor outside positions j..k");
    }
    if v[j] >= b || v[k] >= a {
        return Some("a_j < b or a_k < a fails");
    }
    if sum(v, j, k - 1) > b as u32 || sum(v, j + 1, k) > a as u32 {
        return Some("window sum bound fails");
    }
    None
}

/// The refinements when some interior exponent reaches `a` or `b`.
fn saturation_violation(alg: &Algebra, v: &[u16], j: usize, k: usize, a: u16, b: u16) -> Option<&'static str> {
    let rs = alg.root_system();
    for s in j + 1..k {
        let only = |keep: &[usize]| v.iter().enumerate().all(|(i, &x)| x == 0 || keep.contains(&i));
        if v[s] == b && !only(&[s, k]) {
            return Some("interior exponent b with extra factors besides e_k");
        }
        if v[s] == a && !only(&[j, s]) {
            return Some("interior exponent a with extra factors besides e_j");
        }
        if a == b && v[s] == a {
            if !only(&[s]) {
                return Some("interior exponent a = b is not alone");
            }
            if rs.add(alg.root_at(j), alg.root_at(k)) != Some(alg.root_at(s)) {
                return Some("interior root is not the sum of the outer roots");
            }
        }
    }
    None
}

pub(super) fn commutator_shapes(ctx: &mut Ctx) -> Result<()> {
    let alg = ctx.alg.clone();
    let engine = Engine::integers(&alg);
    let layout = alg.layout();
    let nu = layout.nu;
    let text = |m: &Monomial| m.to_text(layout);

    let (mut pairs, mut single_left, mut single_right) = (0usize, 0usize, 0usize);
    let (mut bad_pair, mut bad_sat, mut bad_left, mut bad_right) = (vec![], vec![], vec![], vec![]);
    for j in 0..nu {
        for k in j + 1..nu {
            for a in 1..=MAX_POWER {
                for b in 1..=MAX_POWER {
                    let x = e_monomial(&alg, &[(k, a)]);
                    let y = e_monomial(&alg, &[(j, b)]);
                    let c = commutator(&engine, &x, &y);
                    pairs += 1;
                    let tag = |m: &Monomial, why: &str| format!("j={} k={} a={} b={}: {} ({})", j + 1, k + 1, a, b, text(m), why);
                    for m in c.keys() {
                        let Some(v) = e_part(&alg, m) else {
                            bad_pair.push(tag(m, "not in the positive part"));
                            continue;
                        };
                        if let Some(why) = pair_violation(&v, j, k, a, b) {
                            bad_pair.push(tag(m, why));
                        }
                        if let Some(why) = saturation_violation(&alg, &v, j, k, a, b) {
                            bad_sat.push(tag(m, why));
                        }
                    }
                    // a = 1: terms e_j^(c) e_s with c < b and j < s < k
                    if a == 1 {
                        single_left += 1;
                        if k == j + 1 && !c.is_empty() {
                            bad_left.push(format!("j={} k={} b={}: adjacent roots do not commute", j + 1, k + 1, b));
                        }
                        for m in c.keys() {
                            let ok = e_part(&alg, m).is_some_and(|v| {
                                let inner: Vec<usize> = (j + 1..k).filter(|&s| v[s] > 0).collect();
                                !outside(&v, j, k - 1) && v[j] < b && inner.len() == 1 && v[inner[0]] == 1
                            });
                            if !ok {
                                bad_left.push(format!("j={} k={} b={}: {}", j + 1, k + 1, b, text(m)));
                            }
                        }
                    }
                    // b = 1: terms e_s e_k^(c) with c < a and j < s < k
                    if b == 1 {
                        single_right += 1;
                        if k == j + 1 && !c.is_empty() {
                            bad_right.push(format!("j={} k={} a={}: adjacent roots do not commute", j + 1, k + 1, a));
                        }
                        for m in c.keys() {
                            let ok = e_part(&alg, m).is_some_and(|v| {
                                let inner: Vec<usize> = (j + 1..k).filter(|&s| v[s] > 0).collect();
                                !outside(&v, j + 1, k) && v[k] < a && inner.len() == 1 && v[inner[0]] == 1
                            });
                            if !ok {
                                bad_right.push(format!("j={} k={} a={}: {}", j + 1, k + 1, a, text(m)));
                            }
                        }
                    }
                }
            }
        }
    }
    ctx.record_cases(
        "single root past a divided power: e_j^(c) e_s with c < b, j < s < k",
        single_left,
        &bad_left,
        "induction on b from [e_k, e_j] being a multiple of the root vector at position strictly between j and k",
    );
    ctx.record_cases(
        "divided power past a single root: e_s e_k^(c) with c < a, j < s < k",
        single_right,
        &bad_right,
        "mirror image of the single-root case",
    );
    ctx.record_cases(
        "pair commutator support: a_j < b, a_k < a and window sums bounded by b and a",
        pairs,
        &bad_pair,
        "induction on a using the single-root commutation rules in a convex order",
    );
    ctx.record_cases(
        "saturated interior exponents force two-factor or one-factor terms",
        pairs,
        &bad_sat,
        "the window sum bounds leave no room for other factors when an interior exponent equals a or b",
    );

    let samples = ctx.cfg.samples.unwrap_or(DEFAULT_VECTOR_SAMPLES);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let (mut left_cases, mut right_cases) = (0usize, 0usize);
    let (mut bad_l, mut bad_r) = (vec![], vec![]);
    for j in 0..nu {
        for k in j + 1..nu {
            let len = k - j;
            let max = if len <= 3 { 2 } else { 1 };
            let mut vectors: Vec<Vec<u16>> = all_vectors(len, max);
            for _ in 0..samples {
                vectors.push((0..len).map(|_| rng.gen_range(0..=3)).collect());
            }
            for vec in &vectors {
                // e_k · (e_j^(a_j) ⋯ e_{k−1}^(a_{k−1})) − (⋯) e_k
                let inner: Vec<(usize, u16)> = vec.iter().enumerate().map(|(i, &n)| (j + i, n)).collect();
                let m = e_monomial(&alg, &inner);
                let c = commutator(&engine, &e_monomial(&alg, &[(k, 1)]), &m);
                left_cases += 1;
                let a = m.e(layout).to_vec();
                for t in c.keys() {
                    let ok = e_part(&alg, t).is_some_and(|b| {
                        !outside(&b, j, k - 1)
                            && b[j] <= a[j]
                            && sum(&b, j, k - 1) <= sum(&a, j, k - 1)
                            && (len < 2 || sum(&b, j + 1, k - 1) <= sum(&a, j + 1, k - 1) + 1)
                    });
                    if !ok {
                        bad_l.push(format!("j={} k={} {:?}: {}", j + 1, k + 1, vec, text(t)));
                    }
                }
                // (e_{j+1}^(a_{j+1}) ⋯ e_k^(a_k)) · e_j − e_j (⋯)
                let inner: Vec<(usize, u16)> = vec.iter().enumerate().map(|(i, &n)| (j + 1 + i, n)).collect();
                let m = e_monomial(&alg, &inner);
                let c = commutator(&engine, &m, &e_monomial(&alg, &[(j, 1)]));
                right_cases += 1;
                let a = m.e(layout).to_vec();
                for t in c.keys() {
                    let ok = e_part(&alg, t).is_some_and(|b| {
                        !outside(&b, j + 1, k)
                            && b[k] <= a[k]
                            && sum(&b, j + 1, k) <= sum(&a, j + 1, k)
                            && (len < 2 || sum(&b, j + 1, k - 1) <= sum(&a, j + 1, k - 1) + 1)
                    });
                    if !ok {
                        bad_r.push(format!("j={} k={} {:?}: {}", j + 1, k + 1, vec, text(t)));
                    }
                }
            }
        }
    }
    ctx.record_cases(
        "e_k past a product over positions j..k-1: b_j <= a_j and sum bounds",
        left_cases,
        &bad_l,
        "induction on the number of factors, moving e_k past one divided power at a time",
    );
    ctx.record_cases(
        "e_j past a product over positions j+1..k: b_k <= a_k and sum bounds",
        right_cases,
        &bad_r,
        "mirror image of moving e_k to the left",
    );
    engine.clear_memo();
    Ok(())
}

fn all_vectors(len: usize, max: u16) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Index tuples `t ≥ 0` with `Σ t_i·row_i = target` for each row.
fn solutions(rows: &[Vec<u32>], target: &[u32]) -> Vec<Vec<u32>> {
    let n = rows[0].len();
    let mut out = Vec::new();
    let mut t = vec![0u32; n];
    fn go(i: usize, rows: &[Vec<u32>], target: &[u32], used: &mut Vec<u32>, t: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == t.len() {
            if used.as_slice() == target {
                out.push(t.clone());
            }
            return;
        }
        let mut x = 0;
        loop {
            if rows.iter().enumerate().any(|(r, row)| used[r] + x * row[i] > target[r]) {
                break;
            }
            t[i] = x;
            for (r, row) in rows.iter().enumerate() {
                used[r] += x * row[i];
            }
            go(i + 1, rows, target, used, t, out);
            for (r, row) in rows.iter().enumerate() {
                used[r] -= x * row[i];
            }
            if rows.iter().all(|row| row[i] == 0) {
                break;
            }
            x += 1;
        }
        t[i] = 0;
    }
    let mut used = vec![0u32; rows.len()];
    go(0, rows, target, &mut used, &mut t, &mut out);
    out
}

pub(super) fn g2_closed_forms(ctx: &mut Ctx) -> Result<()> {
    if ctx.family() != Family::G {
        return Err(ctx.unsupported("the closed forms are specific to G2"));
    }
    let alg = ctx.alg.clone();
    let rs = alg.root_system().clone();
    let sc = alg.constants().clone();
    let id = |s: &str| rs.parse_root(s).expect("G2 root");
    let (e1, e2, e12, e112, e1112, e11122) = (id("a1"), id("a2"), id("a1+a2"), id("2a1+a2"), id("3a1+a2"), id("3a1+2a2"));

    let relations = [(e1, e2, 1, e12), (e1, e12, 2, e112), (e1, e112, 3, e1112), (e2, e1112, 1, e11122), (e112, e12, 3, e11122)];
    let actual: Vec<i32> = relations.iter().map(|&(x, y, _, _)| sc.n(x, y)).collect();
    let expected: Vec<i32> = relations.iter().map(|&(_, _, n, _)| n).collect();
    let sums_ok = relations.iter().all(|&(x, y, _, z)| rs.add(x, y) == Some(z));
    ctx.record(
        "structure constants [e1,e2], [e1,e12], [e1,e112], [e2,e1112], [e112,e12]",
        &expected,
        "G2 Chevalley relations e12 = [e1,e2], 2e112 = [e1,e12], 3e1112 = [e1,e112], e11122 = [e2,e1112], 3e11122 = [e112,e12]",
        if sums_ok { actual } else { vec![] },
    );

    let engine = Engine::integers(&alg);
    let z = Integers;
    let pw = |id: usize, n: u32| Element::root_power(&alg, z, id, n as u16);
    let mut fails: [Vec<String>; 3] = Default::default();
    let mut cases = 0;
    for a in 1..=MAX_POWER as u32 {
        for b in 1..=MAX_POWER as u32 {
            cases += 1;
            // e1^(a) e2^(b)
            let lhs = engine.multiply(&pw(e1, a), &pw(e2, b))?;
            let rows = vec![vec![1, 1, 2, 1, 1, 0], vec![0, 1, 3, 2, 3, 1]];
            let mut rhs = Element::zero(&alg, z);
            for t in solutions(&rows, &[b, a]) {
                let order = [e2, e12, e11122, e112, e1112, e1];
                let factors: Vec<_> = order.iter().zip(&t).map(|(&r, &n)| pw(r, n)).collect();
                rhs = rhs.add(&engine.product(&factors)?)?;
            }
            if lhs != rhs {
                fails[0].push(format!("a={} b={}", a, b));
            }
            // e1^(a) e112^(b)
            let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
            let lhs = engine.multiply(&pw(e1, a), &pw(e112, b))?;
            let mut rhs = Element::zero(&alg, z);
            for t in solutions(&rows, &[b, a]) {
                let p = engine.product(&[pw(e112, t[0]), pw(e1112, t[1]), pw(e1, t[2])])?;
                rhs = rhs.add(&p.scale(&big(3).pow(t[1])))?;
            }
            if lhs != rhs {
                fails[1].push(format!("a={} b={}", a, b));
            }
            // e1112^(a) e2^(b)
            let lhs = engine.multiply(&pw(e1112, a), &pw(e2, b))?;
            let mut rhs = Element::zero(&alg, z);
            for t in solutions(&rows, &[b, a]) {
                let p = engine.product(&[pw(e2, t[0]), pw(e11122, t[1]), pw(e1112, t[2])])?;
                let sign = if t[1] % 2 == 0 { big(1) } else { big(-1) };
                rhs = rhs.add(&p.scale(&sign))?;
            }
            if lhs != rhs {
                fails[2].push(format!("a={} b={}", a, b));
            }
        }
    }
    ctx.record_cases(
        "e1^(a) e2^(b) as a sum over (t1..t6) of e2 e12 e11122 e112 e1112 e1 powers, 1 <= a, b <= 4",
        cases,
        &fails[0],
        "closed G2 formula: t1+t2+2t3+t4+t5 = b, t2+3t3+2t4+3t5+t6 = a, all coefficients 1",
    );
    ctx.record_cases(
        "e1^(a) e112^(b) = sum 3^t2 e112^(t1) e1112^(t2) e1^(t3), 1 <= a, b <= 4",
        cases,
        &fails[1],
        "closed G2 formula with t1+t2 = b, t2+t3 = a",
    );
    ctx.record_cases(
        "e1112^(a) e2^(b) = sum (-1)^t2 e2^(t1) e11122^(t2) e1112^(t3), 1 <= a, b <= 4",
        cases,
        &fails[2],
        "closed G2 formula with t1+t2 = b, t2+t3 = a",
    );
    engine.clear_memo();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_counts() {
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(solutions(&rows, &[2, 3]).len(), 3);
        assert_eq!(all_vectors(3, 1).len(), 8);
    }
}
